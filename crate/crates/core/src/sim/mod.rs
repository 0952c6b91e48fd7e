//! Headless drivers: scripted hero policies, batch experiments, and the
//! terminal renderer.

mod batch;
mod render;

pub use batch::{run_batch, run_episode, BatchStats, EpisodeRecord, HeroKind, HeroPolicy, Outcome, EPISODE_TICK_CAP};
pub use render::render_text;
