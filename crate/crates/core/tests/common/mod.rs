//! Helpers shared by the integration targets: the scripted transcript runner,
//! a seeded input fuzzer, and fog checks.
#![allow(dead_code)]

use std::fmt::Write as _;
use std::path::PathBuf;

use labyrinth::config::GameConfig;
use labyrinth::engine::{ClientView, InputEvent, Phase, Session};
use labyrinth::model::{Direction, Position};
use labyrinth::rng::Rng;
use labyrinth::sensing::DifficultyName;
use labyrinth::server::StateMessage;

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

pub fn read_golden(name: &str) -> String {
    std::fs::read_to_string(golden_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// One level of 2x1, the setting of the hand-simulated transcript.
pub fn two_by_one_config() -> GameConfig {
    GameConfig { level1_width: 2, level1_height: 1, max_level: 1, ..GameConfig::default() }
}

/// Replays the `>` commands of a transcript against a fresh session and
/// writes the outcome in the same format. Comment lines are echoed, the
/// expected output lines are dropped and regenerated.
pub fn run_transcript(config: GameConfig, seed: u64, script: &str) -> String {
    let mut s = Session::new(config, seed).unwrap();
    let mut out = String::new();
    for line in script.lines() {
        if line.starts_with('#') {
            writeln!(out, "{line}").unwrap();
            continue;
        }
        let Some(cmd) = line.strip_prefix("> ") else { continue };
        writeln!(out, "{line}").unwrap();
        if cmd == "step" {
            for e in s.step() {
                writeln!(out, "{e}").unwrap();
            }
            writeln!(out, "= {} {}", s.phase(), s.tick()).unwrap();
        } else {
            let e: InputEvent = cmd.parse().unwrap();
            assert!(s.apply_input(e).unwrap(), "`{cmd}` ignored in {}", s.phase());
        }
    }
    out
}

/// Seeded driver that keeps a session moving: keys while playing, the
/// right menu input elsewhere, and now and then an input the current phase
/// should ignore.
pub struct Fuzzer {
    rng: Rng,
}

impl Fuzzer {
    pub fn new(seed: u64) -> Self {
        Fuzzer { rng: Rng::new(seed) }
    }

    fn pick<T: Copy>(&mut self, xs: &[T]) -> T {
        xs[self.rng.below(xs.len()).unwrap()]
    }

    pub fn any_input(&mut self) -> InputEvent {
        match self.rng.below(4).unwrap() {
            0 => InputEvent::Key(self.pick(&Direction::ALL)),
            1 => InputEvent::Advance,
            2 => InputEvent::SelectDifficulty(self.pick(&DifficultyName::ALL)),
            _ => InputEvent::Restart,
        }
    }

    pub fn input(&mut self, s: &Session) -> Option<InputEvent> {
        if self.rng.below(10).unwrap() == 0 {
            return Some(self.any_input());
        }
        match s.phase() {
            Phase::Playing => (self.rng.below(3).unwrap() != 0).then(|| InputEvent::Key(self.pick(&Direction::ALL))),
            Phase::Splash | Phase::LevelFinished => Some(InputEvent::Advance),
            Phase::Instructions => Some(InputEvent::SelectDifficulty(self.pick(&DifficultyName::ALL))),
            Phase::GameOver | Phase::GameFinished => Some(InputEvent::Restart),
        }
    }

    /// Inputs then one step, repeated until the session reaches `ticks`.
    /// `each` sees the session after every step call.
    pub fn drive(&mut self, s: &mut Session, ticks: u64, mut each: impl FnMut(&mut Session)) {
        while s.tick() < ticks {
            if let Some(e) = self.input(s) {
                s.apply_input(e).unwrap();
            }
            s.step();
            each(s);
        }
    }
}

pub fn fuzzed_session(config: GameConfig, seed: u64, ticks: u64) -> Session {
    let mut s = Session::new(config, seed).unwrap();
    Fuzzer::new(seed ^ 0xF022).drive(&mut s, ticks, |_| {});
    s
}

fn inside(hero: Position, p: Position, radius: f64) -> bool {
    (hero.distance_sq(p) as f64) <= radius * radius
}

/// Cells or monster positions a view reveals outside the torch disc.
pub fn view_leaks(v: &ClientView, radius: f64) -> usize {
    let cells = v.visible.iter().filter(|(p, _)| !inside(v.hero, *p, radius)).count();
    let monster = v.monster.is_some_and(|m| !inside(v.hero, m, radius));
    cells + monster as usize
}

pub fn message_leaks(m: &StateMessage, radius: f64) -> usize {
    let cells = m.visible.iter().filter(|[c, r, _]| !inside(m.hero, Position::new(*c, *r), radius)).count();
    let monster = m.monster.is_some_and(|p| !inside(m.hero, p, radius));
    cells + monster as usize
}
