//! Perfect-maze generation by recursive backtracking, plus the BFS helpers
//! that place the exit and the monster spawn.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::model::{Direction, Position};
use crate::rng::Rng;

pub const MAX_SIDE: u16 = 255;

const ALL_WALLS: u8 = 0b1111;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MazeSpec {
    pub width: u16,
    pub height: u16,
    pub seed: u64,
}

impl MazeSpec {
    pub fn new(width: u16, height: u16, seed: u64) -> Self {
        MazeSpec { width, height, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 || self.width > MAX_SIDE || self.height > MAX_SIDE {
            return Err(Error::invalid(format!("maze dimensions must be within 1..={MAX_SIDE}, got {}x{}", self.width, self.height)));
        }
        Ok(())
    }
}

/// Rectangular grid of cells. Each cell stores a wall mask (N=1, E=2,
/// S=4, W=8; set bit = wall present).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Maze {
    width: u16,
    height: u16,
    walls: Vec<u8>,
    exit: (Position, Direction),
    hero_start: Position,
    monster_start: Position,
}

impl Maze {
    /// Grid with every wall standing. Exit and spawns default to the
    /// origin; callers building fixtures set them explicitly.
    pub fn closed(width: u16, height: u16) -> Result<Self> {
        MazeSpec::new(width, height, 0).validate()?;
        Ok(Maze {
            width,
            height,
            walls: vec![ALL_WALLS; width as usize * height as usize],
            exit: (Position::new(0, 0), Direction::North),
            hero_start: Position::new(0, 0),
            monster_start: Position::new(0, 0),
        })
    }

    pub fn width(&self) -> u16 {
        self.width
    }

    pub fn height(&self) -> u16 {
        self.height
    }

    pub fn cell_count(&self) -> usize {
        self.walls.len()
    }

    pub fn exit(&self) -> (Position, Direction) {
        self.exit
    }

    pub fn hero_start(&self) -> Position {
        self.hero_start
    }

    pub fn monster_start(&self) -> Position {
        self.monster_start
    }

    /// Raw wall masks in row-major order.
    pub fn layout(&self) -> &[u8] {
        &self.walls
    }

    pub fn contains(&self, p: Position) -> bool {
        p.col < self.width && p.row < self.height
    }

    pub fn index(&self, p: Position) -> usize {
        p.row as usize * self.width as usize + p.col as usize
    }

    pub fn position(&self, index: usize) -> Position {
        let w = self.width as usize;
        Position::new((index % w) as u16, (index / w) as u16)
    }

    pub fn positions(&self) -> impl Iterator<Item = Position> + '_ {
        (0..self.walls.len()).map(|i| self.position(i))
    }

    pub fn wall_mask(&self, p: Position) -> u8 {
        self.walls[self.index(p)]
    }

    pub fn has_wall(&self, p: Position, d: Direction) -> bool {
        self.wall_mask(p) & d.bit() != 0
    }

    pub fn neighbor(&self, p: Position, d: Direction) -> Option<Position> {
        p.step(d, self.width, self.height)
    }

    /// Destination through an open internal passage. The exit opening is
    /// not a passage: it leads off the grid.
    pub fn passage(&self, p: Position, d: Direction) -> Option<Position> {
        if self.has_wall(p, d) {
            None
        } else {
            self.neighbor(p, d)
        }
    }

    pub fn open_directions(&self, p: Position) -> impl Iterator<Item = Direction> + '_ {
        Direction::ALL.into_iter().filter(move |&d| self.passage(p, d).is_some())
    }

    /// Removes the wall between `p` and its neighbor along `d` on both sides.
    pub fn carve(&mut self, p: Position, d: Direction) -> Result<Position> {
        let q = self.neighbor(p, d).ok_or_else(|| Error::invalid(format!("no cell {d} of {p}")))?;
        let (i, j) = (self.index(p), self.index(q));
        self.walls[i] &= !d.bit();
        self.walls[j] &= !d.opposite().bit();
        Ok(q)
    }

    /// Restores the wall between `p` and its neighbor along `d`.
    pub fn build_wall(&mut self, p: Position, d: Direction) -> Result<()> {
        let q = self.neighbor(p, d).ok_or_else(|| Error::invalid(format!("no cell {d} of {p}")))?;
        let (i, j) = (self.index(p), self.index(q));
        self.walls[i] |= d.bit();
        self.walls[j] |= d.opposite().bit();
        Ok(())
    }

    /// Opens the perimeter wall of `cell` on `side` and records it as the exit.
    /// Any previous exit opening is closed again.
    pub fn set_exit(&mut self, cell: Position, side: Direction) -> Result<()> {
        if !self.contains(cell) || self.neighbor(cell, side).is_some() {
            return Err(Error::invalid(format!("{cell} side {side} is not on the perimeter")));
        }
        let (old, old_side) = self.exit;
        if self.contains(old) && self.neighbor(old, old_side).is_none() {
            let i = self.index(old);
            self.walls[i] |= old_side.bit();
        }
        let i = self.index(cell);
        self.walls[i] &= !side.bit();
        self.exit = (cell, side);
        Ok(())
    }

    pub fn set_starts(&mut self, hero: Position, monster: Position) -> Result<()> {
        if !self.contains(hero) || !self.contains(monster) {
            return Err(Error::invalid("start position outside the grid"));
        }
        self.hero_start = hero;
        self.monster_start = monster;
        Ok(())
    }

    pub fn is_perimeter(&self, p: Position) -> bool {
        p.row == 0 || p.col == 0 || p.row + 1 == self.height || p.col + 1 == self.width
    }

    /// BFS distance from `from` to every cell (`None` for unreachable cells).
    pub fn distances_from(&self, from: Position) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.cell_count()];
        let mut queue = VecDeque::new();
        dist[self.index(from)] = Some(0);
        queue.push_back(from);
        while let Some(p) = queue.pop_front() {
            let here = dist[self.index(p)].unwrap_or(0);
            for d in Direction::ALL {
                if let Some(q) = self.passage(p, d) {
                    let slot = &mut dist[self.index(q)];
                    if slot.is_none() {
                        *slot = Some(here + 1);
                        queue.push_back(q);
                    }
                }
            }
        }
        dist
    }

    /// Number of open internal passages, each counted once.
    pub fn passage_count(&self) -> usize {
        self.positions().map(|p| [Direction::East, Direction::South].into_iter().filter(|&d| self.passage(p, d).is_some()).count()).sum()
    }

    /// Checks the structural invariants: mirrored shared walls and a
    /// perimeter closed everywhere except the recorded exit.
    pub fn check_walls(&self) -> std::result::Result<(), String> {
        for p in self.positions() {
            for d in Direction::ALL {
                match self.neighbor(p, d) {
                    Some(q) => {
                        if self.has_wall(p, d) != self.has_wall(q, d.opposite()) {
                            return Err(format!("wall {p} {d} disagrees with its neighbor"));
                        }
                    }
                    None => {
                        let is_exit = (p, d) == self.exit;
                        if self.has_wall(p, d) == is_exit {
                            return Err(format!("perimeter wall {p} {d} wrong (exit={is_exit})"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Text form used by the golden files: header lines then one row of
    /// hex wall masks per grid row.
    pub fn to_text(&self) -> String {
        let (exit, side) = self.exit;
        let mut out = format!(
            "size {} {}\nexit {} {} {}\nhero {} {}\nmonster {} {}\n",
            self.width,
            self.height,
            exit.col,
            exit.row,
            side,
            self.hero_start.col,
            self.hero_start.row,
            self.monster_start.col,
            self.monster_start.row
        );
        for row in self.walls.chunks(self.width as usize) {
            let cells: Vec<String> = row.iter().map(|m| format!("{m:x}")).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Carves a perfect maze with a randomized depth-first search from (0,0),
/// then opens the exit on the perimeter cell farthest from the hero and
/// spawns the monster on the farthest cell overall.
pub fn generate_maze(spec: MazeSpec) -> Result<Maze> {
    spec.validate()?;
    let mut maze = Maze::closed(spec.width, spec.height)?;
    let mut rng = Rng::new(spec.seed);
    let mut visited = vec![false; maze.cell_count()];
    let start = Position::new(0, 0);
    visited[0] = true;

    // Explicit stack; pops exactly where the recursive version returns.
    let mut stack = vec![start];
    let mut candidates = Vec::with_capacity(4);
    while let Some(&top) = stack.last() {
        candidates.clear();
        candidates.extend(Direction::ALL.into_iter().filter(|&d| maze.neighbor(top, d).is_some_and(|q| !visited[maze.index(q)])));
        if candidates.is_empty() {
            stack.pop();
            continue;
        }
        let d = candidates[rng.below(candidates.len())?];
        let next = maze.carve(top, d)?;
        visited[maze.index(next)] = true;
        stack.push(next);
    }

    let (exit_cell, side) = choose_exit(&maze, start);
    maze.set_exit(exit_cell, side)?;
    let (monster, _) = farthest_cell(&maze, start);
    maze.set_starts(start, monster)?;
    Ok(maze)
}

fn choose_exit(maze: &Maze, hero: Position) -> (Position, Direction) {
    let dist = maze.distances_from(hero);
    let best = maze
        .positions()
        .filter(|&p| maze.is_perimeter(p))
        .max_by_key(|&p| (dist[maze.index(p)], std::cmp::Reverse(p.row), std::cmp::Reverse(p.col)))
        .unwrap_or(hero);
    let side = Direction::ALL.into_iter().find(|&d| maze.neighbor(best, d).is_none()).unwrap_or(Direction::North);
    (best, side)
}

/// BFS-farthest reachable cell; ties go to the smaller row, then col.
pub fn farthest_cell(m: &Maze, from: Position) -> (Position, u32) {
    let dist = m.distances_from(from);
    let mut best = (from, 0u32);
    for (i, d) in dist.iter().enumerate() {
        // Row-major scan, so strict `>` keeps the earliest tie.
        if let Some(d) = *d {
            if d > best.1 {
                best = (m.position(i), d);
            }
        }
    }
    best
}

/// Connected and acyclic: a spanning tree has exactly `cells - 1` edges.
pub fn is_perfect(m: &Maze) -> bool {
    let connected = m.distances_from(Position::new(0, 0)).iter().all(Option::is_some);
    connected && m.passage_count() + 1 == m.cell_count()
}
