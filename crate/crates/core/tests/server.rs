mod common;

use std::time::Duration;

use common::{message_leaks, read_golden, two_by_one_config};
use futures_util::{SinkExt, StreamExt};
use labyrinth::config::GameConfig;
use labyrinth::rng::Rng;
use labyrinth::sensing::DifficultyName;
use labyrinth::server::{serve_listener, Connection, ServerMessage, StateMessage};
use serde_json::Value;
use tokio_tungstenite::tungstenite::Message;

fn expect_state(m: Option<ServerMessage>) -> StateMessage {
    match m {
        Some(ServerMessage::State(s)) => s,
        other => panic!("expected a state message, got {other:?}"),
    }
}

fn send(c: &mut Connection, text: &str) {
    assert_eq!(c.handle_text(text), None, "{text}");
}

/// The golden engine transcript driven through the protocol layer instead
/// of the session API.
#[test]
fn dialogue_reproduces_the_golden_episode() {
    const START: &str = r#"{"type":"start","difficulty":"difficult","seed":0}"#;
    const RESTART: &str = r#"{"type":"restart"}"#;
    let input = |d: &str| format!(r#"{{"type":"input","dir":"{d}"}}"#);

    let mut c = Connection::new(two_by_one_config());
    let mut frames = Vec::new();
    send(&mut c, START);
    frames.push(expect_state(c.on_tick()));
    assert_eq!(c.on_tick(), None, "game over: no step, no frame");
    send(&mut c, RESTART);
    send(&mut c, START);
    frames.push(expect_state(c.on_tick()));
    send(&mut c, &input("N"));
    frames.push(expect_state(c.on_tick()));
    for d in ["E", "S"] {
        send(&mut c, RESTART);
        send(&mut c, START);
        send(&mut c, &input(d));
        frames.push(expect_state(c.on_tick()));
    }

    let got: Vec<(&str, u64)> = frames.iter().map(|f| (f.phase, f.tick)).collect();
    assert_eq!(got, [("game_over", 1), ("playing", 2), ("game_over", 3), ("game_over", 4), ("game_over", 5)]);

    let events: Vec<String> = frames.iter().flat_map(|f| &f.events).map(ToString::to_string).collect();
    let golden: Vec<String> =
        read_golden("episode_2x1.txt").lines().filter(|l| l.starts_with(|ch: char| ch.is_ascii_digit())).map(str::to_string).collect();
    assert_eq!(events, golden);
}

fn random_frame(rng: &mut Rng) -> String {
    match rng.below(12).unwrap() {
        0 => {
            let d = DifficultyName::ALL[rng.below(4).unwrap()];
            format!(r#"{{"type":"start","difficulty":"{d}","seed":{}}}"#, rng.next_u64())
        }
        1 => r#"{"type":"advance"}"#.to_string(),
        2 => r#"{"type":"restart"}"#.to_string(),
        3 => r#"{"type":"input","dir":"X"}"#.to_string(),
        _ => format!(r#"{{"type":"input","dir":"{}"}}"#, ["N", "E", "S", "W"][rng.below(4).unwrap()]),
    }
}

#[test]
fn served_frames_never_leak_fogged_state() {
    let mut rng = Rng::new(404);
    let mut c = Connection::new(GameConfig::default());
    send(&mut c, r#"{"type":"start","difficulty":"medium","seed":1}"#);
    let mut frames = 0;
    let mut hidden = 0;
    while frames < 1000 {
        if rng.below(3).unwrap() == 0 {
            c.handle_text(&random_frame(&mut rng));
        }
        let Some(msg) = c.on_tick() else { continue };
        let json: Value = serde_json::from_str(&msg.to_json()).unwrap();
        assert_eq!(json["type"], "state");
        let ServerMessage::State(state) = msg else { unreachable!() };
        let session = c.session().unwrap();
        let radius = session.policy().searchlight_radius;
        assert_eq!(message_leaks(&state, radius), 0, "{json}");
        if state.monster.is_none() {
            hidden += 1;
            assert!(json["monster"].is_null());
        }
        // Events only ever locate the hero.
        for e in &state.events {
            assert!(e.pos.is_none_or(|p| p == state.hero), "{e}");
        }
        frames += 1;
    }
    assert!(hidden > 0);
}

async fn next_text(ws: &mut tokio_tungstenite::WebSocketStream<tokio_tungstenite::MaybeTlsStream<tokio::net::TcpStream>>) -> Value {
    loop {
        let msg = tokio::time::timeout(Duration::from_secs(10), ws.next()).await.expect("server went quiet").unwrap().unwrap();
        if let Message::Text(t) = msg {
            return serde_json::from_str(&t).unwrap();
        }
    }
}

#[tokio::test]
async fn websocket_session_round_trip() {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    let server = tokio::spawn(serve_listener(listener, GameConfig::default(), 200.0));

    let (mut ws, _) = tokio_tungstenite::connect_async(format!("ws://{addr}")).await.unwrap();
    ws.send(Message::Text(r#"{"type":"jump"}"#.into())).await.unwrap();
    let err = next_text(&mut ws).await;
    assert_eq!(err["type"], "error");

    ws.send(Message::Text(r#"{"type":"start","difficulty":"super_easy","seed":9}"#.into())).await.unwrap();
    let mut last_tick = 0;
    for _ in 0..20 {
        let v = next_text(&mut ws).await;
        assert_eq!(v["type"], "state", "{v}");
        let tick = v["tick"].as_u64().unwrap();
        assert!(tick > last_tick);
        last_tick = tick;
        let hero = &v["hero"];
        for cell in v["visible"].as_array().unwrap() {
            let dc = cell[0].as_i64().unwrap() - hero[0].as_i64().unwrap();
            let dr = cell[1].as_i64().unwrap() - hero[1].as_i64().unwrap();
            assert!((dc * dc + dr * dr) as f64 <= 64.0);
        }
        if v["phase"] != "playing" {
            break;
        }
        ws.send(Message::Text(r#"{"type":"input","dir":"E"}"#.into())).await.unwrap();
    }
    ws.close(None).await.unwrap();
    server.abort();
}
