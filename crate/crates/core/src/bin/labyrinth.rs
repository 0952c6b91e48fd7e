use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use labyrinth::brain::BrainKind;
use labyrinth::config::{load_config, GameConfig};
use labyrinth::engine::{run_replay, InputEvent, Phase, ReplayFile, Session};
use labyrinth::maze::{generate_maze, MazeSpec};
use labyrinth::model::Direction;
use labyrinth::rng::Rng;
use labyrinth::sensing::DifficultyName;
use labyrinth::server::DEFAULT_TICK_RATE;
use labyrinth::sim::{render_text, run_batch, HeroKind};
use labyrinth::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(name = "labyrinth", version, about = "Maze-chase engine: generate, simulate, replay and serve")]
struct Cli {
    /// Properties file (default: ./labyrinth.properties when present)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a maze and print it
    Gen {
        #[arg(long)]
        width: u16,
        #[arg(long)]
        height: u16,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draw with box-drawing glyphs instead of wall masks
        #[arg(long)]
        render: bool,
    },
    /// Run a batch of headless episodes
    Sim {
        #[arg(long)]
        brain: String,
        #[arg(long)]
        hero: String,
        #[arg(long)]
        difficulty: String,
        #[arg(long, default_value_t = 100)]
        episodes: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write per-episode rows here
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Replay a recorded session
    Replay {
        #[arg(long)]
        file: PathBuf,
        /// Compare the final state against the recorded digest
        #[arg(long)]
        verify: bool,
    },
    /// Record a random-input session to a replay file
    Record {
        #[arg(long)]
        difficulty: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        ticks: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Host sessions for WebSocket clients
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value_t = DEFAULT_TICK_RATE)]
        tick_rate: f64,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownToken { .. } | Error::InvalidArgument(_) => EXIT_USAGE,
            _ => EXIT_CONFIG,
        };
        Failure { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: EXIT_CONFIG, msg: e.to_string() }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (config, warnings) = load_config(cli.config.as_deref())?;
    for key in warnings {
        log::warn!("ignoring unknown property `{key}`");
    }

    match cli.command {
        Command::Gen { width, height, seed, render } => {
            let m = generate_maze(MazeSpec::new(width, height, seed))?;
            if render {
                print!("{}", render_text(&m, Some(m.hero_start()), Some(m.monster_start()), None));
            } else {
                print!("{}", m.to_text());
            }
        }
        Command::Sim { brain, hero, difficulty, episodes, seed, csv } => {
            let brain: BrainKind = brain.parse()?;
            let hero: HeroKind = hero.parse()?;
            let difficulty: DifficultyName = difficulty.parse()?;
            let stats = run_batch(&config, difficulty, brain, hero, episodes, seed)?;
            println!("difficulty={difficulty} brain={brain} hero={hero}");
            println!(
                "episodes={} captures={} escapes={} capture_rate={:.4} mean_ticks={:.2}",
                stats.episodes, stats.captures, stats.escapes, stats.capture_rate, stats.mean_ticks
            );
            if let Some(path) = csv {
                stats.write_csv(fs::File::create(path)?)?;
            }
        }
        Command::Replay { file, verify } => {
            let replay = ReplayFile::parse(&fs::read_to_string(&file)?)?;
            let s = run_replay(replay.config(&config), replay.seed, &replay.inputs, replay.end_tick)?;
            let digest = s.digest_hex();
            println!("phase={} level={} tick={} digest={digest}", s.phase(), s.level(), s.tick());
            if verify {
                match replay.digest.as_deref() {
                    Some(want) if want == digest => println!("digest ok"),
                    Some(want) => {
                        return Err(Failure { code: EXIT_MISMATCH, msg: format!("digest mismatch: recorded {want}, replayed {digest}") })
                    }
                    None => return Err(Failure { code: EXIT_CONFIG, msg: "replay file has no #digest line".into() }),
                }
            } else {
                print!("{}", render_text(s.maze(), Some(s.hero()), Some(s.monster()), None));
            }
        }
        Command::Record { difficulty, seed, ticks, out } => {
            let difficulty: DifficultyName = difficulty.parse()?;
            let s = record_random(config, difficulty, seed, ticks)?;
            fs::write(&out, ReplayFile::from_session(&s).to_text())?;
            println!("recorded {} inputs over {} ticks, final phase {}", s.input_log().len(), s.tick(), s.phase());
        }
        Command::Serve { port, tick_rate } => {
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(labyrinth::server::serve(config, port, tick_rate))?;
        }
    }
    Ok(())
}

/// Random key presses each tick; level ends are acknowledged, and the run
/// stops at `ticks` or when the game ends.
fn record_random(config: GameConfig, difficulty: DifficultyName, seed: u64, ticks: u64) -> Result<Session, Error> {
    let mut s = Session::new(config, seed)?;
    s.apply_input(InputEvent::Advance)?;
    s.apply_input(InputEvent::SelectDifficulty(difficulty))?;
    let mut rng = Rng::new(seed ^ 0x5EED);
    while s.tick() < ticks {
        match s.phase() {
            Phase::Playing => {
                let d = Direction::ALL[rng.below(4)?];
                s.apply_input(InputEvent::Key(d))?;
                s.step();
            }
            Phase::LevelFinished => {
                s.apply_input(InputEvent::Advance)?;
            }
            _ => break,
        }
    }
    Ok(s)
}
