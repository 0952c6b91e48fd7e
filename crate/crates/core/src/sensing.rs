//! Difficulty settings and the geometric predicates behind them: the
//! torch disc, the growl radius, and the capture test.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::Position;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DifficultyName {
    SuperEasy,
    Easy,
    Medium,
    Difficult,
}

impl DifficultyName {
    /// Easiest first.
    pub const ALL: [DifficultyName; 4] =
        [DifficultyName::SuperEasy, DifficultyName::Easy, DifficultyName::Medium, DifficultyName::Difficult];

    pub const fn token(self) -> &'static str {
        match self {
            DifficultyName::SuperEasy => "super_easy",
            DifficultyName::Easy => "easy",
            DifficultyName::Medium => "medium",
            DifficultyName::Difficult => "difficult",
        }
    }

    pub const fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for DifficultyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for DifficultyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DifficultyName::ALL
            .into_iter()
            .find(|d| d.token() == s)
            .ok_or_else(|| Error::UnknownToken { what: "difficulty", token: s.to_string() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DifficultyPolicy {
    pub name: DifficultyName,
    /// Torch radius in cells.
    pub searchlight_radius: f64,
    /// Ticks between monster moves.
    pub monster_step_period: u32,
    pub hearing_radius: f64,
}

impl DifficultyPolicy {
    pub const fn new(name: DifficultyName, searchlight: f64, period: u32, hearing: f64) -> Self {
        DifficultyPolicy { name, searchlight_radius: searchlight, monster_step_period: period, hearing_radius: hearing }
    }
}

/// One policy per difficulty, indexed by [`DifficultyName::index`].
#[derive(Clone, Debug, PartialEq)]
pub struct DifficultyTable {
    policies: [DifficultyPolicy; 4],
}

impl Default for DifficultyTable {
    fn default() -> Self {
        use DifficultyName::*;
        DifficultyTable {
            policies: [
                DifficultyPolicy::new(SuperEasy, 8.0, 6, 12.0),
                DifficultyPolicy::new(Easy, 6.0, 5, 10.0),
                DifficultyPolicy::new(Medium, 4.0, 3, 8.0),
                DifficultyPolicy::new(Difficult, 2.5, 2, 6.0),
            ],
        }
    }
}

impl DifficultyTable {
    pub fn get(&self, name: DifficultyName) -> &DifficultyPolicy {
        &self.policies[name.index()]
    }

    pub fn get_mut(&mut self, name: DifficultyName) -> &mut DifficultyPolicy {
        &mut self.policies[name.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = &DifficultyPolicy> {
        self.policies.iter()
    }

    /// Harder settings must shrink the torch and speed up the monster, and
    /// the monster must always be audible before it is visible.
    pub fn validate(&self) -> Result<()> {
        for p in &self.policies {
            let key = |field: &str| format!("difficulty.{}.{field}", p.name);
            if !(p.searchlight_radius.is_finite() && p.searchlight_radius >= 0.0) {
                return Err(Error::validation(key("searchlight"), "must be a finite number >= 0"));
            }
            if !(p.hearing_radius.is_finite() && p.hearing_radius >= 0.0) {
                return Err(Error::validation(key("hearing"), "must be a finite number >= 0"));
            }
            if p.monster_step_period == 0 {
                return Err(Error::validation(key("period"), "must be >= 1"));
            }
            if p.hearing_radius < p.searchlight_radius {
                return Err(Error::validation(key("hearing"), "must be >= the searchlight radius"));
            }
        }
        for pair in self.policies.windows(2) {
            let (easier, harder) = (&pair[0], &pair[1]);
            if harder.searchlight_radius >= easier.searchlight_radius {
                return Err(Error::validation(
                    format!("difficulty.{}.searchlight", harder.name),
                    format!("must be strictly below {}'s {}", easier.name, easier.searchlight_radius),
                ));
            }
            if harder.monster_step_period >= easier.monster_step_period {
                return Err(Error::validation(
                    format!("difficulty.{}.period", harder.name),
                    format!("must be strictly below {}'s {}", easier.name, easier.monster_step_period),
                ));
            }
        }
        Ok(())
    }
}

fn within(a: Position, b: Position, radius: f64) -> bool {
    a.distance_sq(b) as f64 <= radius * radius
}

/// Every in-bounds cell whose center lies within `radius` of the hero.
/// Walls do not block light.
pub fn visible_cells(width: u16, height: u16, hero: Position, radius: f64) -> BTreeSet<Position> {
    let mut out = BTreeSet::new();
    out.insert(hero);
    if radius.is_nan() || radius < 0.0 {
        return out;
    }
    // Clamp the scan to the bounding box of the disc.
    let reach = radius.floor().min(u16::MAX as f64) as u16;
    let c0 = hero.col.saturating_sub(reach);
    let r0 = hero.row.saturating_sub(reach);
    let c1 = hero.col.saturating_add(reach).min(width.saturating_sub(1));
    let r1 = hero.row.saturating_add(reach).min(height.saturating_sub(1));
    for row in r0..=r1 {
        for col in c0..=c1 {
            let p = Position::new(col, row);
            if within(hero, p, radius) {
                out.insert(p);
            }
        }
    }
    out
}

pub fn in_searchlight(hero: Position, cell: Position, radius: f64) -> bool {
    within(hero, cell, radius)
}

pub fn hearing_check(hero: Position, monster: Position, hearing_radius: f64) -> bool {
    within(hero, monster, hearing_radius)
}

/// Co-location, or the two swapped cells during the same tick.
pub fn caught_check(hero_prev: Position, hero_now: Position, monster_prev: Position, monster_now: Position) -> bool {
    hero_now == monster_now || (hero_now == monster_prev && monster_now == hero_prev)
}
