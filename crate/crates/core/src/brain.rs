//! Monster decision policies. Each brain picks one open passage per move
//! and keeps a little private memory (heading, visit counts, generator).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::maze::Maze;
use crate::model::{Direction, Position};
use crate::rng::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BrainKind {
    RandomWalk,
    WallFollower,
    GreedyChase,
    BfsChase,
    Explorer,
}

impl BrainKind {
    pub const ALL: [BrainKind; 5] =
        [BrainKind::RandomWalk, BrainKind::WallFollower, BrainKind::GreedyChase, BrainKind::BfsChase, BrainKind::Explorer];

    pub const fn token(self) -> &'static str {
        match self {
            BrainKind::RandomWalk => "random_walk",
            BrainKind::WallFollower => "wall_follower",
            BrainKind::GreedyChase => "greedy_chase",
            BrainKind::BfsChase => "bfs_chase",
            BrainKind::Explorer => "explorer",
        }
    }
}

impl fmt::Display for BrainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for BrainKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BrainKind::ALL.into_iter().find(|k| k.token() == s).ok_or_else(|| Error::UnknownToken { what: "brain", token: s.to_string() })
    }
}

/// What the monster is told each time it moves. The hero position is
/// ground truth; restricting it would happen here.
#[derive(Clone, Copy, Debug)]
pub struct Observation<'a> {
    pub maze: &'a Maze,
    pub monster: Position,
    pub hero: Position,
    pub tick: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BrainState {
    pub kind: BrainKind,
    pub last_direction: Option<Direction>,
    pub visited_counts: BTreeMap<Position, u32>,
    pub rng: Rng,
}

impl BrainState {
    pub fn new(kind: BrainKind, seed: u64) -> Self {
        BrainState { kind, last_direction: None, visited_counts: BTreeMap::new(), rng: Rng::new(seed) }
    }

    pub fn visits(&self, p: Position) -> u32 {
        self.visited_counts.get(&p).copied().unwrap_or(0)
    }

    /// Picks the next move and records it in the brain's memory.
    pub fn choose_direction(&mut self, obs: &Observation<'_>) -> Result<Direction> {
        let maze = obs.maze;
        let options: Vec<Direction> = maze.open_directions(obs.monster).collect();
        if options.is_empty() {
            return Err(Error::InvalidState(format!("monster at {} has no open passage", obs.monster)));
        }
        let dest = |d: Direction| maze.passage(obs.monster, d).expect("option is open");

        let choice = match self.kind {
            BrainKind::RandomWalk => {
                let back = self.last_direction.map(Direction::opposite);
                let forward: Vec<Direction> = options.iter().copied().filter(|&d| Some(d) != back).collect();
                let pool = if forward.is_empty() { &options } else { &forward };
                pool[self.rng.below(pool.len())?]
            }
            BrainKind::WallFollower => match self.last_direction {
                Some(h) => [h.left(), h, h.right(), h.opposite()].into_iter().find(|d| options.contains(d)).unwrap_or(options[0]),
                None => options[0],
            },
            BrainKind::GreedyChase => min_by_order(&options, |d| dest(d).manhattan(obs.hero)),
            BrainKind::BfsChase => {
                let dist = maze.distances_from(obs.hero);
                min_by_order(&options, |d| dist[maze.index(dest(d))].unwrap_or(u32::MAX))
            }
            BrainKind::Explorer => min_by_order(&options, |d| self.visits(dest(d))),
        };

        *self.visited_counts.entry(dest(choice)).or_insert(0) += 1;
        self.last_direction = Some(choice);
        Ok(choice)
    }
}

/// First option (in N,E,S,W order) with the smallest key.
fn min_by_order<K: Ord>(options: &[Direction], mut key: impl FnMut(Direction) -> K) -> Direction {
    let mut best = options[0];
    let mut best_key = key(best);
    for &d in &options[1..] {
        let k = key(d);
        if k < best_key {
            best = d;
            best_key = k;
        }
    }
    best
}

pub fn choose_direction(b: BrainState, obs: &Observation<'_>) -> Result<(BrainState, Direction)> {
    let mut b = b;
    let d = b.choose_direction(obs)?;
    Ok((b, d))
}

/// Resource key of the monster frame: `monster.<n|e|s|w>.<tick mod 2>`.
pub fn monster_sprite_key(facing: Direction, tick: u64) -> String {
    format!("monster.{}.{}", facing.letter().to_ascii_lowercase(), tick % 2)
}

pub fn shortest_path_len(m: &Maze, a: Position, b: Position) -> Option<u32> {
    m.distances_from(a)[m.index(b)]
}
