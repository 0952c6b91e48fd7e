use std::net::SocketAddr;
use std::time::Duration;

use futures_util::{SinkExt, StreamExt};
use log::{debug, info, warn};
use tokio::net::{TcpListener, TcpStream};
use tokio::time::MissedTickBehavior;
use tokio_tungstenite::tungstenite::Message;

use crate::config::GameConfig;

use super::connection::Connection;

pub const DEFAULT_TICK_RATE: f64 = 8.0;

/// Binds `0.0.0.0:port` and serves until the process ends.
pub async fn serve(config: GameConfig, port: u16, tick_rate: f64) -> std::io::Result<()> {
    let listener = TcpListener::bind(("0.0.0.0", port)).await?;
    info!("listening on {}", listener.local_addr()?);
    serve_listener(listener, config, tick_rate).await
}

/// Accept loop over an already-bound listener. Each connection gets its own
/// task and its own session.
pub async fn serve_listener(listener: TcpListener, config: GameConfig, tick_rate: f64) -> std::io::Result<()> {
    if !(tick_rate.is_finite() && tick_rate > 0.0) {
        return Err(std::io::Error::new(std::io::ErrorKind::InvalidInput, "tick rate must be > 0"));
    }
    let period = Duration::from_secs_f64(1.0 / tick_rate);
    loop {
        let (stream, peer) = listener.accept().await?;
        let config = config.clone();
        tokio::spawn(async move {
            if let Err(e) = handle(stream, peer, config, period).await {
                debug!("{peer}: {e}");
            }
        });
    }
}

async fn handle(
    stream: TcpStream,
    peer: SocketAddr,
    config: GameConfig,
    period: Duration,
) -> Result<(), tokio_tungstenite::tungstenite::Error> {
    let ws = tokio_tungstenite::accept_async(stream).await?;
    info!("{peer} connected");
    let (mut tx, mut rx) = ws.split();
    let mut conn = Connection::new(config);
    let mut ticker = tokio::time::interval(period);
    ticker.set_missed_tick_behavior(MissedTickBehavior::Delay);

    loop {
        tokio::select! {
            incoming = rx.next() => {
                let Some(msg) = incoming else { break };
                match msg? {
                    Message::Text(text) => {
                        if let Some(reply) = conn.handle_text(&text) {
                            tx.send(Message::Text(reply.to_json())).await?;
                        }
                    }
                    Message::Binary(_) => {
                        let reply = super::ServerMessage::error("binary frames are not supported");
                        tx.send(Message::Text(reply.to_json())).await?;
                    }
                    Message::Close(_) => break,
                    _ => {}
                }
            }
            _ = ticker.tick() => {
                if let Some(state) = conn.on_tick() {
                    tx.send(Message::Text(state.to_json())).await?;
                }
            }
        }
    }
    if conn.session().is_some() {
        info!("{peer} disconnected");
    } else {
        warn!("{peer} left without starting a game");
    }
    Ok(())
}
