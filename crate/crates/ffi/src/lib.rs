//! C ABI over the labyrinth engine.
//!
//! Objects are opaque handles created by `lab_*_new`-style functions and
//! released with the matching `_free`. Every fallible call returns a
//! [`LabStatus`]; on failure [`lab_last_error`] describes what went wrong.
//! Strings handed out by the library must be released with
//! [`lab_string_free`].
//!
//! Enum-valued inputs are taken as `uint32_t` and checked, so an out-of-range
//! value from C is an error rather than undefined behavior.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use labyrinth::config::{parse_properties, resolve_config, GameConfig};
use labyrinth::engine::{run_replay, InputEvent, Phase, ReplayFile, Session};
use labyrinth::maze::{generate_maze, MazeSpec};
use labyrinth::model::Direction;
use labyrinth::sensing::DifficultyName;
use labyrinth::server::ServerMessage;
use labyrinth::sim::render_text;
use labyrinth::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    Config = 3,
    Replay = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabDirection {
    North = 0,
    East = 1,
    South = 2,
    West = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabDifficulty {
    SuperEasy = 0,
    Easy = 1,
    Medium = 2,
    Difficult = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabPhase {
    Splash = 0,
    Instructions = 1,
    Playing = 2,
    LevelFinished = 3,
    GameOver = 4,
    GameFinished = 5,
}

impl From<Phase> for LabPhase {
    fn from(p: Phase) -> Self {
        match p {
            Phase::Splash => LabPhase::Splash,
            Phase::Instructions => LabPhase::Instructions,
            Phase::Playing => LabPhase::Playing,
            Phase::LevelFinished => LabPhase::LevelFinished,
            Phase::GameOver => LabPhase::GameOver,
            Phase::GameFinished => LabPhase::GameFinished,
        }
    }
}

/// Game configuration handle.
pub struct LabConfig {
    inner: GameConfig,
}

/// Game session handle.
pub struct LabSession {
    inner: Session,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

type Fail = (LabStatus, String);

fn from_error(e: Error) -> Fail {
    let status = match e {
        Error::Parse { .. } | Error::Validation { .. } => LabStatus::Config,
        Error::Replay(_) => LabStatus::Replay,
        Error::InvalidState(_) => LabStatus::Internal,
        Error::InvalidArgument(_) | Error::UnknownToken { .. } => LabStatus::InvalidArgument,
    };
    (status, e.to_string())
}

fn null(what: &str) -> Fail {
    (LabStatus::NullArgument, format!("`{what}` is null"))
}

/// Runs `f`, turning errors and panics into a status plus the thread's
/// last error message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> LabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            LabStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            LabStatus::Internal
        }
    }
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn session<'a>(s: *mut LabSession) -> Result<&'a mut Session, Fail> {
    s.as_mut().map(|s| &mut s.inner).ok_or_else(|| null("session"))
}

fn give_string(s: String, out: &mut *mut c_char) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| (LabStatus::Internal, "string holds a nul byte".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

fn direction(v: u32) -> Result<Direction, Fail> {
    Direction::ALL.get(v as usize).copied().ok_or_else(|| (LabStatus::InvalidArgument, format!("bad direction {v}")))
}

fn difficulty(v: u32) -> Result<DifficultyName, Fail> {
    DifficultyName::ALL.get(v as usize).copied().ok_or_else(|| (LabStatus::InvalidArgument, format!("bad difficulty {v}")))
}

/// Message for the last failed call on this thread, or NULL after a
/// success. Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn lab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lab_config_default(out: *mut *mut LabConfig) -> LabStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = Box::into_raw(Box::new(LabConfig { inner: GameConfig::default() }));
        Ok(())
    })
}

/// Builds a configuration from properties text. Unknown keys are ignored.
///
/// # Safety
/// `text` must be a NUL-terminated UTF-8 string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lab_config_from_properties(text: *const c_char, out: *mut *mut LabConfig) -> LabStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text).to_str().map_err(|_| (LabStatus::InvalidArgument, "text is not UTF-8".to_string()))?;
        let (cfg, _warnings) = parse_properties(text).and_then(|p| resolve_config(&p)).map_err(from_error)?;
        *out = Box::into_raw(Box::new(LabConfig { inner: cfg }));
        Ok(())
    })
}

/// # Safety
/// `cfg` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lab_config_free(cfg: *mut LabConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Starts a session on the splash screen. The configuration is copied.
///
/// # Safety
/// `cfg` must be a live config handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lab_session_new(cfg: *const LabConfig, seed: u64, out: *mut *mut LabSession) -> LabStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let cfg = cfg.as_ref().ok_or_else(|| null("config"))?;
        let inner = Session::new(cfg.inner.clone(), seed).map_err(from_error)?;
        *out = Box::into_raw(Box::new(LabSession { inner }));
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lab_session_free(s: *mut LabSession) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

unsafe fn input(s: *mut LabSession, e: impl FnOnce() -> Result<InputEvent, Fail>, accepted: *mut bool) -> LabStatus {
    guard(|| {
        let s = session(s)?;
        let ok = s.apply_input(e()?).map_err(from_error)?;
        if let Some(a) = accepted.as_mut() {
            *a = ok;
        }
        Ok(())
    })
}

/// Queues a move for the next step. `dir` is a `LabDirection`. `accepted`
/// may be NULL; otherwise it receives whether the current phase took the input.
///
/// # Safety
/// `s` must be a live session handle; `accepted` NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lab_session_key(s: *mut LabSession, dir: u32, accepted: *mut bool) -> LabStatus {
    input(s, || direction(dir).map(InputEvent::Key), accepted)
}

/// # Safety
/// As for [`lab_session_key`].
#[no_mangle]
pub unsafe extern "C" fn lab_session_advance(s: *mut LabSession, accepted: *mut bool) -> LabStatus {
    input(s, || Ok(InputEvent::Advance), accepted)
}

/// `difficulty` is a `LabDifficulty`.
///
/// # Safety
/// As for [`lab_session_key`].
#[no_mangle]
pub unsafe extern "C" fn lab_session_select(s: *mut LabSession, difficulty: u32, accepted: *mut bool) -> LabStatus {
    input(s, || self::difficulty(difficulty).map(InputEvent::SelectDifficulty), accepted)
}

/// # Safety
/// As for [`lab_session_key`].
#[no_mangle]
pub unsafe extern "C" fn lab_session_restart(s: *mut LabSession, accepted: *mut bool) -> LabStatus {
    input(s, || Ok(InputEvent::Restart), accepted)
}

/// Advances one tick. `events` (may be NULL) receives how many events the
/// tick produced; they are delivered with the next snapshot.
///
/// # Safety
/// `s` must be a live session handle; `events` NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lab_session_step(s: *mut LabSession, events: *mut u32) -> LabStatus {
    guard(|| {
        let n = session(s)?.step().len();
        if let Some(e) = events.as_mut() {
            *e = n as u32;
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be a live session handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lab_session_phase(s: *const LabSession, out: *mut LabPhase) -> LabStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("session"))?;
        *out_ptr(out, "out")? = s.inner.phase().into();
        Ok(())
    })
}

/// # Safety
/// `s` must be a live session handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lab_session_tick(s: *const LabSession, out: *mut u64) -> LabStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("session"))?;
        *out_ptr(out, "out")? = s.inner.tick();
        Ok(())
    })
}

/// Fog-filtered state as the JSON `state` message the server sends. Drains
/// pending events. Free the result with [`lab_string_free`].
///
/// # Safety
/// `s` must be a live session handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lab_session_snapshot_json(s: *mut LabSession, out: *mut *mut c_char) -> LabStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let view = session(s)?.snapshot();
        give_string(ServerMessage::State(view.into()).to_json(), out)
    })
}

/// SHA-256 of the canonical state as 64 hex digits. Free the result with
/// [`lab_string_free`].
///
/// # Safety
/// `s` must be a live session handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lab_session_digest_hex(s: *const LabSession, out: *mut *mut c_char) -> LabStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let s = s.as_ref().ok_or_else(|| null("session"))?;
        give_string(s.inner.digest_hex(), out)
    })
}

/// Generates a maze and draws it with box glyphs, hero and monster at their
/// starts. Free the result with [`lab_string_free`].
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lab_maze_render(width: u16, height: u16, seed: u64, out: *mut *mut c_char) -> LabStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let m = generate_maze(MazeSpec::new(width, height, seed)).map_err(from_error)?;
        give_string(render_text(&m, Some(m.hero_start()), Some(m.monster_start()), None), out)
    })
}

/// Replays a recorded session file over `cfg` (its header overrides the
/// difficulty and level count) and writes the final state digest to `out`.
/// A file whose `#digest` disagrees with the replay fails with
/// `LAB_STATUS_REPLAY`. Free the result with [`lab_string_free`].
///
/// # Safety
/// `cfg` must be a live config handle, `text` a NUL-terminated UTF-8
/// string, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lab_replay_run(cfg: *const LabConfig, text: *const c_char, out: *mut *mut c_char) -> LabStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let cfg = cfg.as_ref().ok_or_else(|| null("config"))?;
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text).to_str().map_err(|_| (LabStatus::InvalidArgument, "text is not UTF-8".to_string()))?;
        let file = ReplayFile::parse(text).map_err(from_error)?;
        let s = run_replay(file.config(&cfg.inner), file.seed, &file.inputs, file.end_tick).map_err(from_error)?;
        let digest = s.digest_hex();
        if let Some(want) = file.digest.as_deref().filter(|w| *w != digest) {
            return Err((LabStatus::Replay, format!("digest mismatch: recorded {want}, replayed {digest}")));
        }
        give_string(digest, out)
    })
}
