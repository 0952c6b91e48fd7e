use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use crate::brain::BrainKind;
use crate::config::GameConfig;
use crate::engine::{InputEvent, Phase, Session};
use crate::error::{Error, Result};
use crate::model::Direction;
use crate::rng::{mix, stream_value, Rng};
use crate::sensing::DifficultyName;

/// Episodes still running after this many steps count as escapes.
pub const EPISODE_TICK_CAP: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HeroKind {
    Stationary,
    RandomWalk,
    BfsToExit,
}

impl HeroKind {
    pub const ALL: [HeroKind; 3] = [HeroKind::Stationary, HeroKind::RandomWalk, HeroKind::BfsToExit];

    pub const fn token(self) -> &'static str {
        match self {
            HeroKind::Stationary => "stationary",
            HeroKind::RandomWalk => "random_walk",
            HeroKind::BfsToExit => "bfs_to_exit",
        }
    }
}

impl fmt::Display for HeroKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for HeroKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HeroKind::ALL.into_iter().find(|k| k.token() == s).ok_or_else(|| Error::UnknownToken { what: "hero policy", token: s.to_string() })
    }
}

/// Scripted stand-in for a player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeroPolicy {
    pub kind: HeroKind,
    pub rng: Rng,
    last: Option<Direction>,
}

impl HeroPolicy {
    pub fn new(kind: HeroKind, seed: u64) -> Self {
        HeroPolicy { kind, rng: Rng::new(seed), last: None }
    }

    /// Intent for the coming tick.
    pub fn intent(&mut self, s: &Session) -> Option<Direction> {
        let maze = s.maze();
        let hero = s.hero();
        let choice = match self.kind {
            HeroKind::Stationary => None,
            HeroKind::RandomWalk => {
                let open: Vec<Direction> = maze.open_directions(hero).collect();
                let back = self.last.map(Direction::opposite);
                let forward: Vec<Direction> = open.iter().copied().filter(|&d| Some(d) != back).collect();
                let pool = if forward.is_empty() { open } else { forward };
                if pool.is_empty() {
                    None
                } else {
                    let i = self.rng.below(pool.len()).ok()?;
                    Some(pool[i])
                }
            }
            HeroKind::BfsToExit => {
                let (exit, side) = maze.exit();
                if hero == exit {
                    Some(side)
                } else {
                    let dist = maze.distances_from(exit);
                    maze.open_directions(hero).min_by_key(|&d| dist[maze.index(maze.passage(hero, d).expect("open"))].unwrap_or(u32::MAX))
                }
            }
        };
        self.last = choice;
        choice
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Captured,
    Escaped,
    /// Hit [`EPISODE_TICK_CAP`]; tallied with the escapes.
    Capped,
}

impl Outcome {
    pub const fn token(self) -> &'static str {
        match self {
            Outcome::Captured => "captured",
            Outcome::Escaped => "escaped",
            Outcome::Capped => "capped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpisodeRecord {
    pub episode: u64,
    pub seed: u64,
    pub outcome: Outcome,
    /// Playing steps taken.
    pub ticks: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BatchStats {
    pub episodes: u64,
    pub captures: u64,
    pub escapes: u64,
    pub capture_rate: f64,
    pub mean_ticks: f64,
    pub records: Vec<EpisodeRecord>,
}

impl BatchStats {
    fn from_records(records: Vec<EpisodeRecord>) -> Self {
        let episodes = records.len() as u64;
        let captures = records.iter().filter(|r| r.outcome == Outcome::Captured).count() as u64;
        let total: u64 = records.iter().map(|r| r.ticks).sum();
        BatchStats {
            episodes,
            captures,
            escapes: episodes - captures,
            capture_rate: captures as f64 / episodes as f64,
            mean_ticks: total as f64 / episodes as f64,
            records,
        }
    }

    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["episode", "seed", "outcome", "ticks"])?;
        for r in &self.records {
            w.write_record([r.episode.to_string(), r.seed.to_string(), r.outcome.token().to_string(), r.ticks.to_string()])?;
        }
        w.flush()
    }
}

/// Plays one game to its end (or the tick cap) with `hero` supplying input.
/// Level transitions are acknowledged automatically.
pub fn run_episode(config: &GameConfig, difficulty: DifficultyName, hero: HeroKind, seed: u64) -> Result<(Outcome, u64)> {
    let mut s = Session::new(config.clone(), seed)?;
    s.apply_input(InputEvent::Advance)?;
    s.apply_input(InputEvent::SelectDifficulty(difficulty))?;
    let mut policy = HeroPolicy::new(hero, mix(seed));
    let mut steps = 0;
    while steps < EPISODE_TICK_CAP {
        match s.phase() {
            Phase::Playing => {
                if let Some(d) = policy.intent(&s) {
                    s.apply_input(InputEvent::Key(d))?;
                }
                s.step();
                steps += 1;
            }
            Phase::LevelFinished => {
                s.apply_input(InputEvent::Advance)?;
            }
            Phase::GameOver => return Ok((Outcome::Captured, steps)),
            Phase::GameFinished => return Ok((Outcome::Escaped, steps)),
            Phase::Splash | Phase::Instructions => unreachable!("episode started in play"),
        }
    }
    Ok((Outcome::Capped, steps))
}

/// Runs `episodes` independent games. Episode `i` is seeded with the `i`-th
/// output of `base_seed`'s stream, so results do not depend on thread count
/// and different base seeds give unrelated seed sets.
pub fn run_batch(
    config: &GameConfig,
    difficulty: DifficultyName,
    brain: BrainKind,
    hero: HeroKind,
    episodes: u64,
    base_seed: u64,
) -> Result<BatchStats> {
    if episodes == 0 {
        return Err(Error::invalid("episodes must be >= 1"));
    }
    let mut cfg = config.clone();
    cfg.brain_per_difficulty[difficulty.index()] = brain;
    cfg.validate()?;

    let records = (0..episodes)
        .into_par_iter()
        .map(|i| {
            let seed = stream_value(base_seed, i);
            let (outcome, ticks) = run_episode(&cfg, difficulty, hero, seed)?;
            Ok(EpisodeRecord { episode: i, seed, outcome, ticks })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BatchStats::from_records(records))
}
