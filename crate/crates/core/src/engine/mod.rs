//! The fixed-tick session state machine.
//!
//! A tick resolves in a fixed order: hero move, escape check, monster move
//! (every `monster_step_period` ticks), capture check, growl check, then
//! the tick counter advances. An escape ends the tick right after the
//! escape check, so an escaped hero can never be caught on the same tick.

mod replay;
mod view;

use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

pub use replay::{run_replay, ReplayFile};
pub use view::ClientView;

use crate::brain::{BrainState, Observation};
use crate::config::GameConfig;
use crate::error::{Error, Result};
use crate::maze::{generate_maze, Maze, MazeSpec};
use crate::model::{Direction, EventKind, GameEvent, Position};
use crate::rng::{derive_seed, stream_value, Rng};
use crate::sensing::{caught_check, hearing_check, DifficultyName, DifficultyPolicy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Splash,
    Instructions,
    Playing,
    LevelFinished,
    GameOver,
    GameFinished,
}

impl Phase {
    pub const fn token(self) -> &'static str {
        match self {
            Phase::Splash => "splash",
            Phase::Instructions => "instructions",
            Phase::Playing => "playing",
            Phase::LevelFinished => "level_finished",
            Phase::GameOver => "game_over",
            Phase::GameFinished => "finished_game",
        }
    }

    pub const fn is_terminal(self) -> bool {
        matches!(self, Phase::GameOver | Phase::GameFinished)
    }

    /// Whether the state machine allows moving from `self` to `to`.
    pub fn can_transition(self, to: Phase) -> bool {
        use Phase::*;
        matches!(
            (self, to),
            (Splash, Instructions)
                | (Instructions, Playing)
                | (Playing, LevelFinished | GameOver | GameFinished)
                | (LevelFinished, Playing)
                | (GameOver | GameFinished, Splash)
        )
    }

    const fn code(self) -> u8 {
        self as u8
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InputEvent {
    Key(Direction),
    Advance,
    SelectDifficulty(DifficultyName),
    Restart,
}

impl fmt::Display for InputEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputEvent::Key(d) => write!(f, "key {d}"),
            InputEvent::Advance => f.write_str("advance"),
            InputEvent::SelectDifficulty(n) => write!(f, "select {n}"),
            InputEvent::Restart => f.write_str("restart"),
        }
    }
}

impl FromStr for InputEvent {
    type Err = Error;

    /// Inverse of `Display`: `key N`, `advance`, `select medium`, `restart`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split_whitespace();
        let ev = match (parts.next(), parts.next()) {
            (Some("key"), Some(d)) => {
                InputEvent::Key(Direction::from_letter(d).ok_or_else(|| Error::invalid(format!("bad direction {d:?}")))?)
            }
            (Some("advance"), None) => InputEvent::Advance,
            (Some("restart"), None) => InputEvent::Restart,
            (Some("select"), Some(n)) => InputEvent::SelectDifficulty(n.parse()?),
            _ => return Err(Error::invalid(format!("bad input {s:?}"))),
        };
        if parts.next().is_some() {
            return Err(Error::invalid(format!("trailing text in {s:?}")));
        }
        Ok(ev)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Session {
    phase: Phase,
    config: GameConfig,
    difficulty: DifficultyName,
    level: u32,
    maze: Maze,
    hero: Position,
    monster: Position,
    monster_facing: Direction,
    tick: u64,
    pending_intent: Option<Direction>,
    brain: BrainState,
    rng: Rng,
    base_seed: u64,
    /// Number of restarts so far; selects the maze lineage.
    attempt: u64,
    input_log: Vec<(u64, InputEvent)>,
    /// Events not yet handed out by [`Session::snapshot`].
    unsent: Vec<GameEvent>,
}

/// Seed lineage for the n-th attempt: the base seed itself, then
/// successive outputs of the base seed's own stream.
fn attempt_seed(base: u64, attempt: u64) -> u64 {
    match attempt {
        0 => base,
        n => stream_value(base, n - 1),
    }
}

pub fn new_session(config: GameConfig, seed: u64) -> Result<Session> {
    Session::new(config, seed)
}

impl Session {
    pub fn new(config: GameConfig, seed: u64) -> Result<Self> {
        config.validate()?;
        let difficulty = config.default_difficulty;
        let brain = BrainState::new(config.brain_for(difficulty), 0);
        let placeholder = Maze::closed(1, 1)?;
        let mut s = Session {
            phase: Phase::Splash,
            difficulty,
            level: 1,
            maze: placeholder,
            hero: Position::default(),
            monster: Position::default(),
            monster_facing: Direction::South,
            tick: 0,
            pending_intent: None,
            brain,
            rng: Rng::new(seed),
            base_seed: seed,
            attempt: 0,
            input_log: Vec::new(),
            unsent: Vec::new(),
            config,
        };
        s.start_level(1)?;
        Ok(s)
    }

    fn start_level(&mut self, level: u32) -> Result<()> {
        let (w, h) = self.config.level_dimensions(level);
        let seed = derive_seed(attempt_seed(self.base_seed, self.attempt), level as u64);
        self.maze = generate_maze(MazeSpec::new(w, h, seed))?;
        self.level = level;
        self.hero = self.maze.hero_start();
        self.monster = self.maze.monster_start();
        self.monster_facing = Direction::South;
        self.pending_intent = None;
        self.reset_brain();
        Ok(())
    }

    fn reset_brain(&mut self) {
        let kind = self.config.brain_for(self.difficulty);
        self.brain = BrainState::new(kind, self.rng.next_u64());
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn config(&self) -> &GameConfig {
        &self.config
    }

    pub fn difficulty(&self) -> DifficultyName {
        self.difficulty
    }

    pub fn policy(&self) -> &DifficultyPolicy {
        self.config.policy(self.difficulty)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn maze(&self) -> &Maze {
        &self.maze
    }

    pub fn hero(&self) -> Position {
        self.hero
    }

    pub fn monster(&self) -> Position {
        self.monster
    }

    pub fn monster_facing(&self) -> Direction {
        self.monster_facing
    }

    pub fn tick(&self) -> u64 {
        self.tick
    }

    pub fn pending_intent(&self) -> Option<Direction> {
        self.pending_intent
    }

    pub fn brain(&self) -> &BrainState {
        &self.brain
    }

    pub fn base_seed(&self) -> u64 {
        self.base_seed
    }

    pub fn input_log(&self) -> &[(u64, InputEvent)] {
        &self.input_log
    }

    /// Applies one input. Returns whether it was accepted; combinations that
    /// make no sense in the current phase are silently ignored and not logged.
    pub fn apply_input(&mut self, e: InputEvent) -> Result<bool> {
        let accepted = match (self.phase, e) {
            (Phase::Playing, InputEvent::Key(d)) => {
                self.pending_intent = Some(d);
                true
            }
            (Phase::Splash, InputEvent::Advance) => {
                self.phase = Phase::Instructions;
                true
            }
            (Phase::Instructions, InputEvent::SelectDifficulty(name)) => {
                self.difficulty = name;
                self.reset_brain();
                self.phase = Phase::Playing;
                true
            }
            (Phase::LevelFinished, InputEvent::Advance) => {
                self.start_level(self.level + 1)?;
                self.phase = Phase::Playing;
                true
            }
            (Phase::GameOver | Phase::GameFinished, InputEvent::Restart) => {
                self.attempt += 1;
                self.difficulty = self.config.default_difficulty;
                self.start_level(1)?;
                self.phase = Phase::Splash;
                true
            }
            _ => false,
        };
        if accepted {
            self.input_log.push((self.tick, e));
        }
        Ok(accepted)
    }

    /// Advances one tick of play. Outside `Playing` this does nothing.
    pub fn step(&mut self) -> Vec<GameEvent> {
        if self.phase != Phase::Playing {
            return Vec::new();
        }
        let tick = self.tick;
        let hero_prev = self.hero;
        let monster_prev = self.monster;
        let mut events = Vec::new();

        let mut escaped = false;
        if let Some(d) = self.pending_intent.take() {
            if (self.hero, d) == self.maze.exit() {
                escaped = true;
            } else if let Some(next) = self.maze.passage(self.hero, d) {
                self.hero = next;
                events.push(GameEvent::new(EventKind::Moved, tick).at(next).facing(d));
            } else {
                events.push(GameEvent::new(EventKind::Blocked, tick).at(self.hero).facing(d));
            }
        }

        if escaped {
            let (exit, side) = self.maze.exit();
            let (kind, phase) = if self.level >= self.config.max_level {
                (EventKind::GameFinished, Phase::GameFinished)
            } else {
                (EventKind::LevelFinished, Phase::LevelFinished)
            };
            events.push(GameEvent::new(kind, tick).at(exit).facing(side));
            self.phase = phase;
        } else {
            let policy = *self.policy();
            if tick.is_multiple_of(policy.monster_step_period as u64) {
                let obs = Observation { maze: &self.maze, monster: self.monster, hero: self.hero, tick };
                // A perfect maze of two or more cells leaves no cell isolated.
                if let Ok(d) = self.brain.choose_direction(&obs) {
                    if let Some(next) = self.maze.passage(self.monster, d) {
                        self.monster = next;
                        self.monster_facing = d;
                    }
                }
            }
            if caught_check(hero_prev, self.hero, monster_prev, self.monster) {
                events.push(GameEvent::new(EventKind::Caught, tick).at(self.hero));
                self.phase = Phase::GameOver;
            }
            if hearing_check(self.hero, self.monster, policy.hearing_radius) {
                events.push(GameEvent::new(EventKind::Growl, tick));
            }
        }

        self.tick += 1;
        self.unsent.extend_from_slice(&events);
        events
    }

    /// Canonical byte encoding of the game state, hashed by [`Session::digest`].
    /// Sides are at most 255, so every coordinate fits one byte. The config
    /// and undelivered client events are not part of the state.
    pub fn state_bytes(&self) -> Vec<u8> {
        let mut b = Vec::with_capacity(256 + self.maze.cell_count());
        let pos = |b: &mut Vec<u8>, p: Position| {
            b.push(p.col as u8);
            b.push(p.row as u8);
        };
        let dir = |d: Option<Direction>| d.map_or(0xFF, Direction::index);

        b.extend_from_slice(b"labyrinth-state-v1");
        b.push(self.phase.code());
        b.push(self.difficulty.index() as u8);
        b.extend_from_slice(&self.level.to_le_bytes());
        b.extend_from_slice(&self.attempt.to_le_bytes());
        b.extend_from_slice(&self.tick.to_le_bytes());
        b.extend_from_slice(&self.base_seed.to_le_bytes());
        b.extend_from_slice(&self.rng.state().to_le_bytes());

        b.push(self.maze.width() as u8);
        b.push(self.maze.height() as u8);
        b.extend_from_slice(self.maze.layout());
        let (exit, side) = self.maze.exit();
        pos(&mut b, exit);
        b.push(side.index());
        pos(&mut b, self.maze.hero_start());
        pos(&mut b, self.maze.monster_start());

        pos(&mut b, self.hero);
        pos(&mut b, self.monster);
        b.push(self.monster_facing.index());
        b.push(dir(self.pending_intent));

        b.push(self.brain.kind as u8);
        b.push(dir(self.brain.last_direction));
        b.extend_from_slice(&self.brain.rng.state().to_le_bytes());
        b.extend_from_slice(&(self.brain.visited_counts.len() as u32).to_le_bytes());
        for (p, n) in &self.brain.visited_counts {
            pos(&mut b, *p);
            b.extend_from_slice(&n.to_le_bytes());
        }

        b.extend_from_slice(&(self.input_log.len() as u64).to_le_bytes());
        for (t, e) in &self.input_log {
            b.extend_from_slice(&t.to_le_bytes());
            match e {
                InputEvent::Key(d) => b.extend_from_slice(&[0, d.index()]),
                InputEvent::Advance => b.push(1),
                InputEvent::SelectDifficulty(n) => b.extend_from_slice(&[2, n.index() as u8]),
                InputEvent::Restart => b.push(3),
            }
        }
        b
    }

    pub fn digest(&self) -> [u8; 32] {
        Sha256::digest(self.state_bytes()).into()
    }

    pub fn digest_hex(&self) -> String {
        hex::encode(self.digest())
    }
}
