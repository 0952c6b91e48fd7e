use crate::config::GameConfig;
use crate::engine::{InputEvent, Phase, Session};
use crate::model::Direction;
use crate::sensing::DifficultyName;

use super::protocol::{parse_client_message, ClientMessage, ServerMessage};

/// Protocol state for one client. Inputs are applied as they arrive; the
/// game only moves on [`Connection::on_tick`], which also decides when a
/// state message goes out: every tick of play, plus once after any other
/// phase change.
#[derive(Debug)]
pub struct Connection {
    config: GameConfig,
    session: Option<Session>,
    dirty: bool,
}

impl Connection {
    pub fn new(config: GameConfig) -> Self {
        Connection { config, session: None, dirty: false }
    }

    pub fn session(&self) -> Option<&Session> {
        self.session.as_ref()
    }

    /// Handles one inbound text frame; the return value is an error reply.
    pub fn handle_text(&mut self, text: &str) -> Option<ServerMessage> {
        let msg = match parse_client_message(text) {
            Ok(m) => m,
            Err(e) => return Some(ServerMessage::error(e)),
        };
        match self.handle(msg) {
            Ok(()) => None,
            Err(e) => Some(ServerMessage::error(e)),
        }
    }

    fn handle(&mut self, msg: ClientMessage) -> Result<(), String> {
        match msg {
            ClientMessage::Start { difficulty, seed } => {
                let name: DifficultyName = difficulty.parse().map_err(|e: crate::Error| e.to_string())?;
                // A session sitting on the title screens (e.g. after a restart)
                // continues its lineage; anything else starts a new game.
                let reuse = matches!(self.session.as_ref().map(Session::phase), Some(Phase::Splash | Phase::Instructions));
                if !reuse {
                    self.session = Some(Session::new(self.config.clone(), seed).map_err(|e| e.to_string())?);
                }
                let s = self.session.as_mut().expect("session exists");
                let apply = |s: &mut Session, e| s.apply_input(e).map_err(|e| e.to_string());
                if s.phase() == Phase::Splash {
                    apply(s, InputEvent::Advance)?;
                }
                apply(s, InputEvent::SelectDifficulty(name))?;
                self.dirty = true;
            }
            ClientMessage::Input { dir } => {
                let d = Direction::from_letter(&dir).ok_or_else(|| format!("bad direction {dir:?}; expected N, E, S or W"))?;
                self.session_mut()?.apply_input(InputEvent::Key(d)).map_err(|e| e.to_string())?;
            }
            ClientMessage::Advance => {
                let accepted = self.session_mut()?.apply_input(InputEvent::Advance).map_err(|e| e.to_string())?;
                self.dirty |= accepted;
            }
            ClientMessage::Restart => {
                let accepted = self.session_mut()?.apply_input(InputEvent::Restart).map_err(|e| e.to_string())?;
                self.dirty |= accepted;
            }
        }
        Ok(())
    }

    fn session_mut(&mut self) -> Result<&mut Session, String> {
        self.session.as_mut().ok_or_else(|| "no game in progress; send start first".to_string())
    }

    /// One server tick. Steps a game in play and returns the state message
    /// to send, if any.
    pub fn on_tick(&mut self) -> Option<ServerMessage> {
        let s = self.session.as_mut()?;
        if s.phase() == Phase::Playing {
            s.step();
            self.dirty = true;
        }
        if !std::mem::take(&mut self.dirty) {
            return None;
        }
        Some(ServerMessage::State(s.snapshot().into()))
    }
}
