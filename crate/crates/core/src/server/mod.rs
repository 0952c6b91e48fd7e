//! Session hosting over WebSocket text frames, one JSON object per frame.
//!
//! client -> server:
//! `{"type":"start","difficulty":"medium","seed":123}`, `{"type":"input","dir":"N"}`,
//! `{"type":"advance"}`, `{"type":"restart"}`
//!
//! server -> client: `{"type":"state",...}` built from a fog-filtered
//! snapshot, or `{"type":"error","msg":...}`.

mod connection;
mod net;
mod protocol;

pub use connection::Connection;
pub use net::{serve, serve_listener, DEFAULT_TICK_RATE};
pub use protocol::{parse_client_message, ClientMessage, ServerMessage, StateMessage};
