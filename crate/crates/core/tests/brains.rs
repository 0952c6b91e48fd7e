mod common;

use std::collections::BTreeSet;

use labyrinth::brain::{shortest_path_len, BrainKind, BrainState, Observation};
use labyrinth::config::GameConfig;
use labyrinth::engine::{InputEvent, Phase, Session};
use labyrinth::maze::{generate_maze, Maze, MazeSpec};
use labyrinth::model::Position;
use labyrinth::rng::Rng;
use labyrinth::sensing::DifficultyName;
use labyrinth::sim::{run_batch, HeroKind};

fn random_maze(rng: &mut Rng, max_side: usize) -> Maze {
    let w = 2 + rng.below(max_side - 1).unwrap() as u16;
    let h = 1 + rng.below(max_side).unwrap() as u16;
    generate_maze(MazeSpec::new(w, h, rng.next_u64())).unwrap()
}

fn random_cell(rng: &mut Rng, m: &Maze) -> Position {
    m.position(rng.below(m.cell_count()).unwrap())
}

#[test]
fn every_brain_only_takes_open_passages() {
    let mut rng = Rng::new(2024);
    for trial in 0..10_000u64 {
        let maze = random_maze(&mut rng, 12);
        let kind = BrainKind::ALL[trial as usize % BrainKind::ALL.len()];
        let mut brain = BrainState::new(kind, rng.next_u64());
        let mut monster = random_cell(&mut rng, &maze);
        let hero = random_cell(&mut rng, &maze);
        for tick in 0..4 {
            let d = brain.choose_direction(&Observation { maze: &maze, monster, hero, tick }).unwrap();
            let next = maze.passage(monster, d).unwrap_or_else(|| panic!("{kind} walked through a wall at {monster} {d}"));
            assert_eq!(brain.last_direction, Some(d));
            monster = next;
        }
        assert_eq!(brain.visited_counts.values().sum::<u32>(), 4);
    }
}

#[test]
fn bfs_chase_always_closes_in() {
    let mut rng = Rng::new(7);
    for _ in 0..2000 {
        let maze = random_maze(&mut rng, 16);
        let mut brain = BrainState::new(BrainKind::BfsChase, 0);
        let hero = random_cell(&mut rng, &maze);
        let monster = random_cell(&mut rng, &maze);
        if monster == hero {
            continue;
        }
        let before = shortest_path_len(&maze, monster, hero).unwrap();
        let d = brain.choose_direction(&Observation { maze: &maze, monster, hero, tick: 0 }).unwrap();
        let after = shortest_path_len(&maze, maze.passage(monster, d).unwrap(), hero).unwrap();
        assert_eq!(after + 1, before);
    }
}

#[test]
fn explorer_covers_small_mazes() {
    let mut rng = Rng::new(31);
    for _ in 0..500 {
        let maze = random_maze(&mut rng, 8);
        let mut brain = BrainState::new(BrainKind::Explorer, 0);
        let mut monster = random_cell(&mut rng, &maze);
        let mut seen = BTreeSet::from([monster]);
        let budget = 20 * maze.cell_count();
        for tick in 0..budget as u64 {
            if seen.len() == maze.cell_count() {
                break;
            }
            let d = brain.choose_direction(&Observation { maze: &maze, monster, hero: Position::new(0, 0), tick }).unwrap();
            monster = maze.passage(monster, d).unwrap();
            seen.insert(monster);
        }
        assert_eq!(seen.len(), maze.cell_count(), "{}x{}", maze.width(), maze.height());
    }
}

#[test]
fn visit_counts_only_grow() {
    let mut rng = Rng::new(5);
    for kind in BrainKind::ALL {
        let maze = random_maze(&mut rng, 10);
        let mut brain = BrainState::new(kind, 1);
        let mut monster = maze.monster_start();
        for tick in 0..200 {
            let before = brain.visited_counts.clone();
            let d = brain.choose_direction(&Observation { maze: &maze, monster, hero: maze.hero_start(), tick }).unwrap();
            monster = maze.passage(monster, d).unwrap();
            for (p, n) in before {
                assert!(brain.visits(p) >= n);
            }
        }
    }
}

/// bfs_chase against a hero that never moves: the monster closes one cell
/// per move and moves on ticks 0, p, 2p, ..., so the capture lands on tick
/// (D - 1) * p and the episode lasts (D - 1) * p + 1 steps.
#[test]
fn pursuit_of_a_stationary_hero_takes_the_derived_time() {
    let cfg = GameConfig { brain_per_difficulty: [BrainKind::BfsChase; 4], ..GameConfig::default() };
    for seed in 0..100u64 {
        let name = DifficultyName::ALL[seed as usize % 4];
        let period = cfg.policy(name).monster_step_period as u64;
        let mut s = Session::new(cfg.clone(), seed).unwrap();
        s.apply_input(InputEvent::Advance).unwrap();
        s.apply_input(InputEvent::SelectDifficulty(name)).unwrap();
        let d = shortest_path_len(s.maze(), s.monster(), s.hero()).unwrap() as u64;
        let mut steps = 0;
        while s.phase() == Phase::Playing {
            s.step();
            steps += 1;
        }
        assert_eq!(s.phase(), Phase::GameOver);
        assert_eq!(steps, (d - 1) * period + 1, "seed {seed} D={d} p={period}");
    }
}

#[test]
fn bfs_chase_never_loses_to_a_stationary_hero() {
    let stats = run_batch(&GameConfig::default(), DifficultyName::Medium, BrainKind::BfsChase, HeroKind::Stationary, 200, 1).unwrap();
    assert_eq!(stats.capture_rate, 1.0);
}
