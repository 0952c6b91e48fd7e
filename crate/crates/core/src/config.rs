//! The properties file: a line-based `key=value` format mapping resource
//! names and tunables, resolved against defaults into a [`GameConfig`].
//!
//! Grammar: lines split on LF (a trailing CR is trimmed with the rest of
//! the whitespace), blank lines and lines starting with `#` are skipped,
//! everything else splits at the first `=` with both halves trimmed.
//! Duplicate keys are kept; lookups see the last one.

use std::collections::BTreeMap;
use std::path::Path;

use crate::brain::BrainKind;
use crate::error::{Error, Result};
use crate::maze::MAX_SIDE;
use crate::sensing::{DifficultyName, DifficultyPolicy, DifficultyTable};

pub const DEFAULT_PATH: &str = "labyrinth.properties";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyMap {
    entries: Vec<(String, String)>,
}

impl PropertyMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<String>) -> Result<()> {
        let key = key.into();
        if key.is_empty() || key.contains('=') {
            return Err(Error::invalid(format!("bad property key {key:?}")));
        }
        self.entries.push((key, value.into()));
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn parse_properties(text: &str) -> Result<PropertyMap> {
    let mut map = PropertyMap::new();
    for (i, raw) in text.split('\n').enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Parse { line: i + 1, msg: "expected `key=value`".into() });
        };
        let key = key.trim();
        if key.is_empty() {
            return Err(Error::Parse { line: i + 1, msg: "empty key".into() });
        }
        map.entries.push((key.to_string(), value.trim().to_string()));
    }
    Ok(map)
}

pub fn serialize_properties(p: &PropertyMap) -> String {
    let mut out = String::new();
    for (k, v) in &p.entries {
        out.push_str(k);
        out.push('=');
        out.push_str(v);
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct GameConfig {
    pub difficulty_table: DifficultyTable,
    /// Indexed by [`DifficultyName::index`].
    pub brain_per_difficulty: [BrainKind; 4],
    pub max_level: u32,
    pub level1_width: u16,
    pub level1_height: u16,
    /// Difficulty in effect before the player picks one.
    pub default_difficulty: DifficultyName,
    /// Opaque to the engine; only clients read it.
    pub resource_map: BTreeMap<String, String>,
}

impl Default for GameConfig {
    fn default() -> Self {
        GameConfig {
            difficulty_table: DifficultyTable::default(),
            brain_per_difficulty: [BrainKind::RandomWalk, BrainKind::WallFollower, BrainKind::GreedyChase, BrainKind::BfsChase],
            max_level: 3,
            level1_width: 13,
            level1_height: 9,
            default_difficulty: DifficultyName::Medium,
            resource_map: default_resources(),
        }
    }
}

fn default_resources() -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    m.insert("image.hero".to_string(), "images/hero.png".to_string());
    m.insert("image.wall".to_string(), "images/wall.png".to_string());
    m.insert("image.floor".to_string(), "images/floor.png".to_string());
    for d in ['n', 'e', 's', 'w'] {
        for frame in 0..2 {
            m.insert(format!("image.monster.{d}.{frame}"), format!("images/monster_{d}{frame}.png"));
        }
    }
    m.insert("sound.growl".to_string(), "sounds/growl.wav".to_string());
    m.insert("sound.footsteps".to_string(), "sounds/footsteps.wav".to_string());
    m
}

impl GameConfig {
    pub fn policy(&self, name: DifficultyName) -> &DifficultyPolicy {
        self.difficulty_table.get(name)
    }

    pub fn brain_for(&self, name: DifficultyName) -> BrainKind {
        self.brain_per_difficulty[name.index()]
    }

    /// Maze size for a 1-based level: both sides grow by two per level.
    pub fn level_dimensions(&self, level: u32) -> (u16, u16) {
        let grow = 2 * level.saturating_sub(1);
        let side = |base: u16| (base as u32 + grow).min(u16::MAX as u32) as u16;
        (side(self.level1_width), side(self.level1_height))
    }

    pub fn validate(&self) -> Result<()> {
        self.difficulty_table.validate()?;
        if self.max_level == 0 {
            return Err(Error::validation("engine.levels", "must be >= 1"));
        }
        for (key, v) in [("engine.width", self.level1_width), ("engine.height", self.level1_height)] {
            if v == 0 || v > MAX_SIDE {
                return Err(Error::validation(key, format!("must be within 1..={MAX_SIDE}")));
            }
        }
        if (self.level1_width as u32) * (self.level1_height as u32) < 2 {
            return Err(Error::validation("engine.width", "the maze needs at least two cells"));
        }
        let (w, h) = self.level_dimensions(self.max_level);
        if w > MAX_SIDE || h > MAX_SIDE {
            return Err(Error::validation("engine.levels", format!("level {} would be {w}x{h}, above {MAX_SIDE}", self.max_level)));
        }
        Ok(())
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::validation(key, format!("not a valid number: {value:?}")))
}

/// Applies every recognized key over the defaults. Unrecognized keys are
/// returned as warnings.
pub fn resolve_config(p: &PropertyMap) -> Result<(GameConfig, Vec<String>)> {
    let mut cfg = GameConfig::default();
    let mut warnings = Vec::new();

    for (key, value) in p.entries() {
        let parts: Vec<&str> = key.split('.').collect();
        match parts.as_slice() {
            ["difficulty", name, field] => {
                let Ok(name) = name.parse::<DifficultyName>() else {
                    warnings.push(key.clone());
                    continue;
                };
                let policy = cfg.difficulty_table.get_mut(name);
                match *field {
                    "searchlight" => policy.searchlight_radius = parse_num(key, value)?,
                    "hearing" => policy.hearing_radius = parse_num(key, value)?,
                    "period" => policy.monster_step_period = parse_num(key, value)?,
                    _ => warnings.push(key.clone()),
                }
            }
            ["brain", name] => {
                let Ok(name) = name.parse::<DifficultyName>() else {
                    warnings.push(key.clone());
                    continue;
                };
                let kind = value.parse::<BrainKind>().map_err(|_| Error::validation(key, format!("unknown brain {value:?}")))?;
                cfg.brain_per_difficulty[name.index()] = kind;
            }
            ["engine", "levels"] => cfg.max_level = parse_num(key, value)?,
            ["engine", "width"] => cfg.level1_width = parse_num(key, value)?,
            ["engine", "height"] => cfg.level1_height = parse_num(key, value)?,
            ["engine", "difficulty"] => {
                cfg.default_difficulty = value.parse().map_err(|_| Error::validation(key, format!("unknown difficulty {value:?}")))?;
            }
            ["image" | "sound", _, ..] => {
                cfg.resource_map.insert(key.clone(), value.clone());
            }
            _ => warnings.push(key.clone()),
        }
    }

    cfg.validate()?;
    Ok((cfg, warnings))
}

/// Reads and resolves a properties file. With no explicit path the default
/// `./labyrinth.properties` is used when present, else built-in defaults.
pub fn load_config(path: Option<&Path>) -> Result<(GameConfig, Vec<String>)> {
    let path = match path {
        Some(p) => p.to_path_buf(),
        None => {
            let p = Path::new(DEFAULT_PATH);
            if !p.exists() {
                return Ok((GameConfig::default(), Vec::new()));
            }
            p.to_path_buf()
        }
    };
    let text = std::fs::read_to_string(&path).map_err(|e| Error::validation(path.display().to_string(), e.to_string()))?;
    resolve_config(&parse_properties(&text)?)
}
