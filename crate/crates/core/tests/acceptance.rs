//! Acceptance suite. Runs each criterion at its stated size and time limit,
//! prints one PASS/FAIL line per criterion, and exits non-zero if any fail.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{message_leaks, read_golden, run_transcript, two_by_one_config, view_leaks, Fuzzer};
use labyrinth::brain::{shortest_path_len, BrainKind};
use labyrinth::config::{parse_properties, resolve_config, serialize_properties, GameConfig, PropertyMap};
use labyrinth::engine::{run_replay, InputEvent, Phase, ReplayFile, Session};
use labyrinth::maze::{generate_maze, is_perfect, MazeSpec};
use labyrinth::rng::Rng;
use labyrinth::sensing::DifficultyName;
use labyrinth::server::{Connection, ServerMessage};
use labyrinth::sim::{run_batch, HeroKind};
use labyrinth::Error;

type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { name: "maze perfectness", limit: Some(Duration::from_secs(10)), run: maze_perfectness },
        Criterion { name: "maze uniqueness", limit: Some(Duration::from_secs(30)), run: maze_uniqueness },
        Criterion { name: "determinism", limit: Some(Duration::from_secs(30)), run: determinism },
        Criterion { name: "fog soundness", limit: None, run: fog_soundness },
        Criterion { name: "pursuit correctness", limit: None, run: pursuit },
        Criterion { name: "brain ordering", limit: Some(Duration::from_secs(60)), run: brain_ordering },
        Criterion { name: "difficulty monotonicity", limit: None, run: difficulty_monotonicity },
        Criterion { name: "properties round-trip", limit: None, run: properties_round_trip },
        Criterion { name: "golden episode", limit: None, run: golden_episode },
    ];

    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(detail), Some(limit)) if elapsed > limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS  {:<24} {detail} [{elapsed:.2?}]", c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:<24} {why} [{elapsed:.2?}]", c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn maze_perfectness() -> Outcome {
    let mut rng = Rng::new(0xA11CE);
    for i in 0..1000 {
        let w = 2 + rng.below(29).unwrap() as u16;
        let h = 2 + rng.below(29).unwrap() as u16;
        let seed = rng.next_u64();
        let m = generate_maze(MazeSpec::new(w, h, seed)).map_err(|e| e.to_string())?;
        if !is_perfect(&m) {
            return Err(format!("maze #{i} ({w}x{h}, seed {seed}) is not perfect"));
        }
    }
    Ok("1000/1000 perfect, sides in [2,30]".into())
}

fn maze_uniqueness() -> Outcome {
    let mut seen = HashSet::with_capacity(10_000);
    for seed in 0..10_000u64 {
        let m = generate_maze(MazeSpec::new(20, 20, seed)).map_err(|e| e.to_string())?;
        if !seen.insert(m.layout().to_vec()) {
            return Err(format!("seed {seed} repeats an earlier 20x20 layout"));
        }
    }
    Ok("10000 seeds, 0 duplicate layouts".into())
}

fn determinism() -> Outcome {
    let base = GameConfig::default();
    for seed in 0..100u64 {
        let mut s = Session::new(base.clone(), seed).map_err(|e| e.to_string())?;
        Fuzzer::new(seed.wrapping_mul(31)).drive(&mut s, 1000, |_| {});
        let text = ReplayFile::from_session(&s).to_text();
        let file = ReplayFile::parse(&text).map_err(|e| e.to_string())?;
        let again = run_replay(file.config(&base), file.seed, &file.inputs, file.end_tick).map_err(|e| format!("seed {seed}: {e}"))?;
        if Some(again.digest_hex()) != file.digest {
            return Err(format!("seed {seed}: replay digest differs"));
        }
    }
    Ok("100/100 replays match".into())
}

fn fog_soundness() -> Outcome {
    let mut snapshots = 0;
    let mut leaks = 0;
    let mut seed = 0;
    while snapshots < 10_000 {
        let mut s = Session::new(GameConfig::default(), seed).map_err(|e| e.to_string())?;
        Fuzzer::new(seed).drive(&mut s, 500, |s| {
            if snapshots < 10_000 {
                let r = s.policy().searchlight_radius;
                leaks += view_leaks(&s.snapshot(), r);
                snapshots += 1;
            }
        });
        seed += 1;
    }

    let mut rng = Rng::new(77);
    let mut c = Connection::new(GameConfig::default());
    let mut frames = 0;
    let mut frame_leaks = 0;
    let mut games = 0;
    while frames < 1000 {
        let running = c.session().is_some_and(|s| !s.phase().is_terminal());
        if !running {
            let d = DifficultyName::ALL[rng.below(4).unwrap()];
            c.handle_text(&format!(r#"{{"type":"start","difficulty":"{d}","seed":{games}}}"#));
            games += 1;
        } else if rng.below(2).unwrap() == 0 {
            let d = ["N", "E", "S", "W"][rng.below(4).unwrap()];
            c.handle_text(&format!(r#"{{"type":"input","dir":"{d}"}}"#));
        }
        if c.session().is_some_and(|s| s.phase() == Phase::LevelFinished) {
            c.handle_text(r#"{"type":"advance"}"#);
        }
        if let Some(ServerMessage::State(m)) = c.on_tick() {
            frame_leaks += message_leaks(&m, c.session().unwrap().policy().searchlight_radius);
            frames += 1;
        }
    }
    if leaks + frame_leaks > 0 {
        return Err(format!("{leaks} leaks in snapshots, {frame_leaks} in frames"));
    }
    Ok(format!("{snapshots} snapshots, {frames} frames over {games} games, 0 leaks"))
}

/// The monster closes one cell per move and moves on ticks 0, p, 2p, ...,
/// so a hero D cells away is caught on tick (D - 1) * p, the
/// ((D - 1) * p + 1)-th step.
fn pursuit() -> Outcome {
    let cfg = GameConfig { brain_per_difficulty: [BrainKind::BfsChase; 4], ..GameConfig::default() };
    let mut exact = 0;
    for seed in 0..100u64 {
        let name = DifficultyName::ALL[seed as usize % 4];
        let p = cfg.policy(name).monster_step_period as i64;
        let mut s = Session::new(cfg.clone(), seed).map_err(|e| e.to_string())?;
        s.apply_input(InputEvent::Advance).unwrap();
        s.apply_input(InputEvent::SelectDifficulty(name)).unwrap();
        let d = shortest_path_len(s.maze(), s.monster(), s.hero()).unwrap() as i64;
        let mut steps = 0i64;
        while s.phase() == Phase::Playing && steps < 100_000 {
            s.step();
            steps += 1;
        }
        if s.phase() != Phase::GameOver {
            return Err(format!("seed {seed}: no capture"));
        }
        let expect = (d - 1) * p + 1;
        if (steps - expect).abs() > p {
            return Err(format!("seed {seed}: captured after {steps} steps, expected {expect} +- {p}"));
        }
        exact += (steps == expect) as u32;
    }
    Ok(format!("100/100 within one period, {exact}/100 exact"))
}

fn brain_ordering() -> Outcome {
    let cfg = GameConfig::default();
    let brains = [BrainKind::BfsChase, BrainKind::GreedyChase, BrainKind::RandomWalk];
    let mut rates = Vec::new();
    for brain in brains {
        let stats = run_batch(&cfg, DifficultyName::Medium, brain, HeroKind::BfsToExit, 1000, 2024).map_err(|e| e.to_string())?;
        rates.push(stats.capture_rate);
    }
    let report = brains.iter().zip(&rates).map(|(b, r)| format!("{b}={r:.3}")).collect::<Vec<_>>().join(" ");
    if rates[0] > rates[1] && rates[1] > rates[2] {
        Ok(report)
    } else {
        Err(format!("expected bfs_chase > greedy_chase > random_walk; got {report}"))
    }
}

fn difficulty_monotonicity() -> Outcome {
    let cfg = GameConfig::default();
    let policies: Vec<_> = DifficultyName::ALL.iter().map(|&n| *cfg.policy(n)).collect();
    for w in policies.windows(2) {
        if !(w[0].searchlight_radius > w[1].searchlight_radius && w[0].monster_step_period > w[1].monster_step_period) {
            return Err(format!("default table not strictly monotone at {} -> {}", w[0].name, w[1].name));
        }
    }
    let violations = [
        "difficulty.easy.searchlight=9",
        "difficulty.super_easy.searchlight=6",
        "difficulty.difficult.searchlight=5",
        "difficulty.medium.period=6",
        "difficulty.difficult.period=3",
        "difficulty.super_easy.period=1",
    ];
    for text in violations {
        let props = parse_properties(text).map_err(|e| e.to_string())?;
        match resolve_config(&props) {
            Err(Error::Validation { .. }) => {}
            other => return Err(format!("`{text}` gave {other:?}, expected a validation error")),
        }
    }
    let fine = parse_properties("difficulty.difficult.period=1\ndifficulty.super_easy.searchlight=10").unwrap();
    resolve_config(&fine).map_err(|e| format!("monotone override rejected: {e}"))?;
    Ok(format!("default strict; {} violating overrides rejected", violations.len()))
}

fn random_text(rng: &mut Rng, alphabet: &[char], min: usize, max: usize) -> String {
    let n = min + rng.below(max - min + 1).unwrap();
    (0..n).map(|_| alphabet[rng.below(alphabet.len()).unwrap()]).collect()
}

fn random_map(rng: &mut Rng) -> PropertyMap {
    const KEY: &[char] = &['a', 'b', 'z', 'K', '0', '9', '.', '_', '-', 'é', '#', ' '];
    const VALUE: &[char] = &['a', 'Q', '5', '.', '/', '\\', '=', '#', ' ', '\t', 'ü', '雪', ':'];
    let mut m = PropertyMap::new();
    for _ in 0..rng.below(12).unwrap() {
        // Keys and values may hold spaces, `#` and `=` inside, but no
        // surrounding whitespace, and keys cannot open with `#`.
        let key = loop {
            let k = random_text(rng, KEY, 1, 10);
            if k.trim() == k && !k.starts_with('#') {
                break k;
            }
        };
        let value = random_text(rng, VALUE, 0, 12).trim().to_string();
        m.push(key, value).unwrap();
    }
    m
}

fn properties_round_trip() -> Outcome {
    let mut rng = Rng::new(0x9A9);
    for i in 0..1000 {
        let m = random_map(&mut rng);
        let text = serialize_properties(&m);
        match parse_properties(&text) {
            Ok(back) if back == m => {}
            other => return Err(format!("map #{i} {text:?} came back as {other:?}")),
        }
    }
    let cases = [("orphan line", 1), ("a=b\n# note\n\n = value", 4), ("x=1\r\n\r\nstill no separator\r\n", 3)];
    for (text, line) in cases {
        match parse_properties(text) {
            Err(Error::Parse { line: got, .. }) if got == line => {}
            other => return Err(format!("{text:?}: expected a parse error on line {line}, got {other:?}")),
        }
    }
    Ok("1000/1000 maps survive; 3/3 parse errors carry line numbers".into())
}

fn golden_episode() -> Outcome {
    let golden = read_golden("episode_2x1.txt");
    let got = run_transcript(two_by_one_config(), 0, &golden);
    if got == golden {
        let events = golden.lines().filter(|l| l.starts_with(|c: char| c.is_ascii_digit())).count();
        Ok(format!("{events} events match"))
    } else {
        let at = got.lines().zip(golden.lines()).position(|(a, b)| a != b).unwrap_or(0);
        Err(format!("transcript diverges at line {}", at + 1))
    }
}
