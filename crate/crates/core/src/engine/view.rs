use crate::brain::monster_sprite_key;
use crate::model::{GameEvent, Position};
use crate::sensing::{hearing_check, in_searchlight, visible_cells};

use super::{Phase, Session};

/// What a client may see: only cells inside the torch disc, and the monster
/// only when it stands in one of them.
#[derive(Clone, Debug, PartialEq)]
pub struct ClientView {
    pub phase: Phase,
    pub tick: u64,
    pub level: u32,
    pub hero: Position,
    /// Lit cells with their wall masks (N=1, E=2, S=4, W=8).
    pub visible: Vec<(Position, u8)>,
    pub monster: Option<Position>,
    pub heard: bool,
    pub facing_sprite: String,
    pub events: Vec<GameEvent>,
}

impl Session {
    /// Fog-filtered view of the session. Hands out (and forgets) every event
    /// produced since the previous snapshot.
    pub fn snapshot(&mut self) -> ClientView {
        let policy = *self.policy();
        let maze = &self.maze;
        let visible = visible_cells(maze.width(), maze.height(), self.hero, policy.searchlight_radius)
            .into_iter()
            .map(|p| (p, maze.wall_mask(p)))
            .collect();
        let monster = in_searchlight(self.hero, self.monster, policy.searchlight_radius).then_some(self.monster);
        ClientView {
            phase: self.phase,
            tick: self.tick,
            level: self.level,
            hero: self.hero,
            visible,
            monster,
            heard: hearing_check(self.hero, self.monster, policy.hearing_radius),
            facing_sprite: monster_sprite_key(self.monster_facing, self.tick),
            events: std::mem::take(&mut self.unsent),
        }
    }
}
