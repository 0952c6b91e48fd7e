//! Labyrinth: a deterministic maze-chase engine. A torch-carrying hero
//! flees a monster through a randomly carved maze and must leave through
//! its single exit.
//!
//! The pieces are independent and replaceable:
//! - [`rng`]: SplitMix64, the only source of randomness.
//! - [`maze`]: seeded perfect mazes via depth-first backtracking.
//! - [`sensing`]: difficulty table, torch disc, hearing and capture checks.
//! - [`brain`]: monster policies.
//! - [`engine`]: the tick-based session state machine, snapshots, replays.
//! - [`config`]: the properties file.
//! - [`sim`]: batch experiments and text rendering.
//! - [`server`]: WebSocket hosting for interactive clients.

pub mod brain;
pub mod config;
pub mod engine;
pub mod error;
pub mod maze;
pub mod model;
pub mod rng;
pub mod sensing;
pub mod server;
pub mod sim;

pub use error::{Error, Result};
