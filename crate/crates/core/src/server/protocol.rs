use serde::{Deserialize, Serialize};

use crate::engine::ClientView;
use crate::model::{GameEvent, Position};

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ClientMessage {
    Start {
        difficulty: String,
        #[serde(default)]
        seed: u64,
    },
    Input {
        dir: String,
    },
    Advance,
    Restart,
}

pub fn parse_client_message(text: &str) -> Result<ClientMessage, String> {
    serde_json::from_str(text).map_err(|e| format!("malformed message: {e}"))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StateMessage {
    pub phase: &'static str,
    pub tick: u64,
    pub level: u32,
    pub hero: Position,
    /// `[col, row, wallmask]` with N=1, E=2, S=4, W=8.
    pub visible: Vec<[u16; 3]>,
    pub monster: Option<Position>,
    pub heard: bool,
    pub sprite: String,
    pub events: Vec<GameEvent>,
}

impl From<ClientView> for StateMessage {
    fn from(v: ClientView) -> Self {
        StateMessage {
            phase: v.phase.token(),
            tick: v.tick,
            level: v.level,
            hero: v.hero,
            visible: v.visible.iter().map(|(p, m)| [p.col, p.row, *m as u16]).collect(),
            monster: v.monster,
            heard: v.heard,
            sprite: v.facing_sprite,
            events: v.events,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ServerMessage {
    State(StateMessage),
    Error { msg: String },
}

impl ServerMessage {
    pub fn error(msg: impl Into<String>) -> Self {
        ServerMessage::Error { msg: msg.into() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("server messages always serialize")
    }
}
