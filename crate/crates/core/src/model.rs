use std::fmt;

use serde::{Serialize, Serializer};

/// Cell coordinate. Origin is the top-left cell; rows grow southward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Position {
    pub col: u16,
    pub row: u16,
}

impl Position {
    pub const fn new(col: u16, row: u16) -> Self {
        Position { col, row }
    }

    /// Neighbor one step along `d`, or `None` when it would leave a
    /// `width` x `height` grid.
    pub fn step(self, d: Direction, width: u16, height: u16) -> Option<Position> {
        let (dc, dr) = d.delta();
        let c = self.col as i32 + dc;
        let r = self.row as i32 + dr;
        if c < 0 || r < 0 || c >= width as i32 || r >= height as i32 {
            None
        } else {
            Some(Position::new(c as u16, r as u16))
        }
    }

    pub fn manhattan(self, other: Position) -> u32 {
        self.col.abs_diff(other.col) as u32 + self.row.abs_diff(other.row) as u32
    }

    pub fn distance_sq(self, other: Position) -> u64 {
        let dc = self.col.abs_diff(other.col) as u64;
        let dr = self.row.abs_diff(other.row) as u64;
        dc * dc + dr * dr
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

impl Serialize for Position {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.col, self.row].serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    North,
    East,
    South,
    West,
}

impl Direction {
    /// Fixed tie-break order used everywhere a choice must be unique.
    pub const ALL: [Direction; 4] = [Direction::North, Direction::East, Direction::South, Direction::West];

    pub const fn delta(self) -> (i32, i32) {
        match self {
            Direction::North => (0, -1),
            Direction::East => (1, 0),
            Direction::South => (0, 1),
            Direction::West => (-1, 0),
        }
    }

    pub const fn opposite(self) -> Direction {
        match self {
            Direction::North => Direction::South,
            Direction::East => Direction::West,
            Direction::South => Direction::North,
            Direction::West => Direction::East,
        }
    }

    /// Counter-clockwise quarter turn.
    pub const fn left(self) -> Direction {
        match self {
            Direction::North => Direction::West,
            Direction::East => Direction::North,
            Direction::South => Direction::East,
            Direction::West => Direction::South,
        }
    }

    pub const fn right(self) -> Direction {
        self.left().opposite()
    }

    /// Bit used in wall masks: N=1, E=2, S=4, W=8.
    pub const fn bit(self) -> u8 {
        match self {
            Direction::North => 1,
            Direction::East => 2,
            Direction::South => 4,
            Direction::West => 8,
        }
    }

    pub const fn index(self) -> u8 {
        match self {
            Direction::North => 0,
            Direction::East => 1,
            Direction::South => 2,
            Direction::West => 3,
        }
    }

    pub const fn letter(self) -> char {
        match self {
            Direction::North => 'N',
            Direction::East => 'E',
            Direction::South => 'S',
            Direction::West => 'W',
        }
    }

    pub fn from_letter(s: &str) -> Option<Direction> {
        match s {
            "N" => Some(Direction::North),
            "E" => Some(Direction::East),
            "S" => Some(Direction::South),
            "W" => Some(Direction::West),
            _ => None,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl Serialize for Direction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut buf = [0u8; 4];
        s.serialize_str(self.letter().encode_utf8(&mut buf))
    }
}

pub fn direction_delta(d: Direction) -> (i32, i32) {
    d.delta()
}

pub fn opposite(d: Direction) -> Direction {
    d.opposite()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Growl,
    Caught,
    LevelFinished,
    GameFinished,
    Blocked,
    Moved,
}

impl EventKind {
    pub const fn token(self) -> &'static str {
        match self {
            EventKind::Growl => "growl",
            EventKind::Caught => "caught",
            EventKind::LevelFinished => "level_finished",
            EventKind::GameFinished => "game_finished",
            EventKind::Blocked => "blocked",
            EventKind::Moved => "moved",
        }
    }
}

/// Something clients may react to. Payloads only ever describe the hero
/// or the exit, never the monster, so events cannot leak fogged state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GameEvent {
    pub kind: EventKind,
    pub tick: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pos: Option<Position>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dir: Option<Direction>,
}

impl GameEvent {
    pub fn new(kind: EventKind, tick: u64) -> Self {
        GameEvent { kind, tick, pos: None, dir: None }
    }

    pub fn at(mut self, pos: Position) -> Self {
        self.pos = Some(pos);
        self
    }

    pub fn facing(mut self, dir: Direction) -> Self {
        self.dir = Some(dir);
        self
    }
}

impl fmt::Display for GameEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.tick, self.kind.token())?;
        if let Some(p) = self.pos {
            write!(f, " {p}")?;
        }
        if let Some(d) = self.dir {
            write!(f, " {d}")?;
        }
        Ok(())
    }
}
