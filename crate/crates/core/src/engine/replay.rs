//! Replay files: a seed plus the accepted inputs, stamped with the tick
//! they arrived on.
//!
//! ```text
//! labyrinth-replay v1 seed=42 difficulty=medium levels=3
//! :0 advance
//! :0 select difficult
//! :3 key N
//! #ticks 17
//! #digest 5f0c…
//! ```
//!
//! `#ticks` records the final tick so trailing steps after the last input
//! are reproduced; `#digest` is the SHA-256 of the final state bytes.

use std::fmt::Write as _;

use crate::config::GameConfig;
use crate::error::{Error, Result};
use crate::sensing::DifficultyName;

use super::{InputEvent, Phase, Session};

const MAGIC: &str = "labyrinth-replay v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayFile {
    pub seed: u64,
    pub difficulty: DifficultyName,
    pub levels: u32,
    pub inputs: Vec<(u64, InputEvent)>,
    pub end_tick: Option<u64>,
    pub digest: Option<String>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Replay(msg.into())
}

impl ReplayFile {
    pub fn from_session(s: &Session) -> Self {
        ReplayFile {
            seed: s.base_seed(),
            difficulty: s.config().default_difficulty,
            levels: s.config().max_level,
            inputs: s.input_log().to_vec(),
            end_tick: Some(s.tick()),
            digest: Some(s.digest_hex()),
        }
    }

    /// The recorded header applied over `base`.
    pub fn config(&self, base: &GameConfig) -> GameConfig {
        let mut cfg = base.clone();
        cfg.default_difficulty = self.difficulty;
        cfg.max_level = self.levels;
        cfg
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{MAGIC} seed={} difficulty={} levels={}\n", self.seed, self.difficulty, self.levels);
        for (t, e) in &self.inputs {
            let _ = writeln!(out, ":{t} {e}");
        }
        if let Some(t) = self.end_tick {
            let _ = writeln!(out, "#ticks {t}");
        }
        if let Some(d) = &self.digest {
            let _ = writeln!(out, "#digest {d}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| bad("empty replay file"))?;
        let rest = header.trim().strip_prefix(MAGIC).ok_or_else(|| bad(format!("line 1: expected `{MAGIC} ...`")))?;

        let (mut seed, mut difficulty, mut levels) = (None, None, None);
        for field in rest.split_whitespace() {
            let (k, v) = field.split_once('=').ok_or_else(|| bad(format!("line 1: bad field {field:?}")))?;
            match k {
                "seed" => seed = Some(v.parse::<u64>().map_err(|_| bad(format!("line 1: bad seed {v:?}")))?),
                "difficulty" => difficulty = Some(v.parse::<DifficultyName>()?),
                "levels" => levels = Some(v.parse::<u32>().map_err(|_| bad(format!("line 1: bad levels {v:?}")))?),
                _ => return Err(bad(format!("line 1: unknown field {k:?}"))),
            }
        }
        let mut file = ReplayFile {
            seed: seed.ok_or_else(|| bad("line 1: missing seed"))?,
            difficulty: difficulty.ok_or_else(|| bad("line 1: missing difficulty"))?,
            levels: levels.ok_or_else(|| bad("line 1: missing levels"))?,
            inputs: Vec::new(),
            end_tick: None,
            digest: None,
        };

        for (i, line) in lines {
            let n = i + 1;
            let line = line.trim();
            if file.digest.is_some() {
                return Err(bad(format!("line {n}: content after the digest line")));
            }
            if let Some(hex) = line.strip_prefix("#digest ") {
                file.digest = Some(hex.trim().to_string());
            } else if let Some(t) = line.strip_prefix("#ticks ") {
                file.end_tick = Some(t.trim().parse().map_err(|_| bad(format!("line {n}: bad tick count")))?);
            } else if let Some(entry) = line.strip_prefix(':') {
                if file.end_tick.is_some() {
                    return Err(bad(format!("line {n}: input after #ticks")));
                }
                let (tick, event) = entry.split_once(' ').ok_or_else(|| bad(format!("line {n}: missing event")))?;
                let tick: u64 = tick.parse().map_err(|_| bad(format!("line {n}: bad tick {tick:?}")))?;
                file.inputs.push((tick, event.trim().parse::<InputEvent>().map_err(|e| bad(format!("line {n}: {e}")))?));
            } else {
                return Err(bad(format!("line {n}: unrecognized line {line:?}")));
            }
        }
        Ok(file)
    }
}

/// Rebuilds a session by stepping it to each input's tick and applying the
/// input there, then stepping on to `end_tick` when given.
pub fn run_replay(config: GameConfig, seed: u64, log: &[(u64, InputEvent)], end_tick: Option<u64>) -> Result<Session> {
    if log.windows(2).any(|w| w[0].0 > w[1].0) {
        return Err(bad("input log is not sorted by tick"));
    }
    let mut s = Session::new(config, seed)?;
    for &(tick, event) in log {
        while s.tick() < tick && s.phase() == Phase::Playing {
            s.step();
        }
        if s.tick() != tick {
            return Err(bad(format!("input `{event}` at tick {tick} unreachable: stalled at tick {} in {}", s.tick(), s.phase())));
        }
        if !s.apply_input(event)? {
            return Err(bad(format!("input `{event}` at tick {tick} ignored in phase {}", s.phase())));
        }
    }
    if let Some(end) = end_tick {
        while s.tick() < end && s.phase() == Phase::Playing {
            s.step();
        }
        if s.tick() != end {
            return Err(bad(format!("final tick {end} unreachable: stalled at {}", s.tick())));
        }
    }
    Ok(s)
}
