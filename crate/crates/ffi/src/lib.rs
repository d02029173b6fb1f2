//! C interface to eqtransfer.
//!
//! Games cross the boundary as JSON documents in the format the CLI reads,
//! held behind an opaque [`EtGame`] handle. Results come back as JSON
//! strings owned by the caller and released with [`et_string_free`]. Every
//! entry point returns an [`EtStatus`]; on anything but `Ok` a message is
//! available from [`et_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde_json::{json, Value};

use eqtransfer::corpus::{self, Evidence, VerifyOptions};
use eqtransfer::extensive::kuhn_via_transfer;
use eqtransfer::graph::{multi_outcome_ne, zielonka, FiniteMemoryStrategy, GraphError, GraphProfile};
use eqtransfer::io::{self, Loaded};
use eqtransfer::normal_form::{DEFAULT_OUTCOME_CAP, DEFAULT_PROFILE_CAP};
use eqtransfer::transfer::{transfer_brute_force, OracleError};
use eqtransfer::{CallCounter, GameStructure, NormalFormGame, PreferenceProfile, StrategyProfile, TransferError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtStatus {
    Ok = 0,
    /// The answer is negative: no equilibrium was found, the structure is
    /// not determined, or a corpus claim failed.
    Negative = 1,
    InvalidInput = 2,
    NullArgument = 3,
    /// The operation does not apply to this kind of document.
    Unsupported = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtGameKind {
    NormalForm = 0,
    Tree = 1,
    Graph = 2,
    Arena = 3,
}

/// A loaded game document.
pub struct EtGame {
    doc: Loaded,
}

struct Fail(EtStatus, String);

impl Fail {
    fn input(e: impl ToString) -> Self {
        Fail(EtStatus::InvalidInput, e.to_string())
    }

    fn unsupported(what: &str) -> Self {
        Fail(EtStatus::Unsupported, format!("{what} does not apply to this document"))
    }

    fn transfer(e: TransferError) -> Self {
        match e {
            TransferError::NotDetermined(_) | TransferError::Oracle(OracleError::Undetermined(_)) => {
                Fail(EtStatus::Negative, e.to_string())
            }
            e => Fail::input(e),
        }
    }

    fn graph(e: GraphError) -> Self {
        match e {
            GraphError::Transfer(t) => Fail::transfer(t),
            e => Fail::input(e),
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<EtStatus, Fail>) -> EtStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {message}"));
            EtStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(EtStatus::NullArgument, format!("{what} is null"))
}

/// # Safety
/// `p` is null or points to a nul-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail::input(format!("{what} is not UTF-8: {e}")))
}

/// # Safety
/// `p` is null or points to a live [`EtGame`].
unsafe fn game<'a>(p: *const EtGame) -> Result<&'a EtGame, Fail> {
    p.as_ref().ok_or_else(|| null("game"))
}

/// # Safety
/// `out` is null or valid for a write of `T`.
unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// # Safety
/// `out` is null or valid for a pointer write.
unsafe fn write_json(out: *mut *mut c_char, value: Value) -> Result<(), Fail> {
    let text = CString::new(value.to_string()).expect("JSON escapes nul bytes");
    write(out, text.into_raw(), "output string")
}

fn need(prefs: &Option<PreferenceProfile>) -> Result<&PreferenceProfile, Fail> {
    prefs.as_ref().ok_or_else(|| Fail::input("document has no preferences"))
}

fn structure(doc: &Loaded) -> Result<(GameStructure, &Option<PreferenceProfile>), Fail> {
    match doc {
        Loaded::Game { structure, preferences } => Ok((structure.clone(), preferences)),
        Loaded::Tree { tree, preferences } => Ok((
            tree.to_normal_form(DEFAULT_PROFILE_CAP).map_err(Fail::input)?,
            preferences,
        )),
        _ => Err(Fail::unsupported("a normal-form operation")),
    }
}

fn counter_json(c: &CallCounter) -> Value {
    json!({ "winner_calls": c.winner_calls, "strategy_calls": c.strategy_calls })
}

fn memory_json(s: &FiniteMemoryStrategy) -> Value {
    json!({
        "player": s.player().index() + 1,
        "memory": s.memory(),
        "initial": s.initial(),
        "update": s.update_table(),
        "choice": s.choice_table(),
    })
}

/// Version string of the library, static and nul-terminated.
#[no_mangle]
pub extern "C" fn et_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn et_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn et_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a game, tree, graph or arena document.
///
/// # Safety
/// `json` is a nul-terminated string and `out` is valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn et_game_from_json(json: *const c_char, out: *mut *mut EtGame) -> EtStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output handle"));
        }
        let doc = io::load(read_str(json, "json")?).map_err(Fail::input)?;
        write(out, Box::into_raw(Box::new(EtGame { doc })), "output handle")?;
        Ok(EtStatus::Ok)
    })
}

/// Releases a game. Null is ignored.
///
/// # Safety
/// `game` is null or a handle from [`et_game_from_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn et_game_free(game: *mut EtGame) {
    if !game.is_null() {
        drop(Box::from_raw(game));
    }
}

/// # Safety
/// `game` is a live handle and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn et_game_kind(game: *const EtGame, out: *mut EtGameKind) -> EtStatus {
    guard(|| {
        let kind = match &self::game(game)?.doc {
            Loaded::Game { .. } => EtGameKind::NormalForm,
            Loaded::Tree { .. } => EtGameKind::Tree,
            Loaded::Graph(_) => EtGameKind::Graph,
            Loaded::Arena { .. } => EtGameKind::Arena,
        };
        write(out, kind, "output kind")?;
        Ok(EtStatus::Ok)
    })
}

/// Whether every derived win-lose game of a two-player normal-form game or
/// tree has a winner.
///
/// # Safety
/// `game` is a live handle and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn et_game_is_determined(game: *const EtGame, out: *mut bool) -> EtStatus {
    guard(|| {
        let (st, _) = structure(&self::game(game)?.doc)?;
        let determined = st.is_determined(DEFAULT_OUTCOME_CAP).map_err(Fail::input)?;
        write(out, determined, "output flag")?;
        Ok(EtStatus::Ok)
    })
}

/// Whether `profile` (one strategy index per player; tree strategies in
/// the normal-form numbering) is a Nash equilibrium.
///
/// # Safety
/// `game` is a live handle, `profile` points to `len` values and `out` is
/// valid for a write.
#[no_mangle]
pub unsafe extern "C" fn et_game_is_nash_equilibrium(
    game: *const EtGame,
    profile: *const usize,
    len: usize,
    out: *mut bool,
) -> EtStatus {
    guard(|| {
        let (st, prefs) = structure(&self::game(game)?.doc)?;
        let prefs = need(prefs)?.clone();
        if profile.is_null() && len > 0 {
            return Err(null("profile"));
        }
        let choices = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(profile, len).to_vec()
        };
        let g = NormalFormGame::new(st, prefs).map_err(Fail::input)?;
        let profile = StrategyProfile::new(choices);
        g.structure().check_profile(&profile).map_err(Fail::input)?;
        write(out, g.is_nash_equilibrium(&profile), "output flag")?;
        Ok(EtStatus::Ok)
    })
}

/// Runs the transfer algorithm with the oracle matching the document: brute
/// force for normal-form games, backward induction for trees, and the
/// parity or Muller solver for graph games. Writes a JSON result.
///
/// # Safety
/// `game` is a live handle and `out` is valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn et_game_transfer(game: *const EtGame, out: *mut *mut c_char) -> EtStatus {
    guard(|| {
        let value = match &self::game(game)?.doc {
            Loaded::Game { structure, preferences } => {
                let g = NormalFormGame::new(structure.clone(), need(preferences)?.clone()).map_err(Fail::input)?;
                let eq = transfer_brute_force(&g).map_err(Fail::transfer)?;
                json!({
                    "profile": eq.profile.choices(),
                    "outcome": eq.outcome,
                    "counter": counter_json(&eq.counter),
                })
            }
            Loaded::Tree { tree, preferences } => {
                let eq = kuhn_via_transfer(tree, need(preferences)?, DEFAULT_PROFILE_CAP).map_err(|e| match e {
                    eqtransfer::extensive::TreeError::Transfer(t) => Fail::transfer(t),
                    e => Fail::input(e),
                })?;
                json!({
                    "profile": eq.profile.choices(),
                    "outcome": eq.outcome,
                    "counter": counter_json(&eq.counter),
                })
            }
            Loaded::Graph(g) => {
                let eq = multi_outcome_ne(g).map_err(Fail::graph)?;
                let strategies: Vec<Value> = match &eq.profile {
                    GraphProfile::Positional(p) => p
                        .iter()
                        .map(|s| json!({ "player": s.player().index() + 1, "moves": s.moves() }))
                        .collect(),
                    GraphProfile::FiniteMemory(m) => m.iter().map(memory_json).collect(),
                };
                json!({
                    "strategies": strategies,
                    "outcome": eq.outcome,
                    "counter": counter_json(&eq.counter),
                })
            }
            Loaded::Arena { .. } => return Err(Fail::unsupported("transfer")),
        };
        write_json(out, value)?;
        Ok(EtStatus::Ok)
    })
}

/// Solves the arena of a graph or arena document as a parity game and
/// writes the winner from the start vertex, its positional strategy and the
/// winner of every vertex as JSON.
///
/// # Safety
/// `game` is a live handle and `out` is valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn et_game_solve_parity(game: *const EtGame, out: *mut *mut c_char) -> EtStatus {
    guard(|| {
        let (arena, start) = match &self::game(game)?.doc {
            Loaded::Graph(g) => (g.arena(), g.start()),
            Loaded::Arena { arena, start } => (arena, *start),
            _ => return Err(Fail::unsupported("parity solving")),
        };
        let regions = zielonka(arena);
        let winner = regions.winner[start];
        let strategy = &regions.strategies[winner.index()];
        let value = json!({
            "winner": winner.index() + 1,
            "moves": strategy.moves(),
            "regions": regions.winner.iter().map(|p| p.index() + 1).collect::<Vec<_>>(),
        });
        write_json(out, value)?;
        Ok(EtStatus::Ok)
    })
}

/// Verifies the claims of a corpus entry and writes the report as JSON.
/// Returns `Negative` when some claim fails.
///
/// # Safety
/// `name` is a nul-terminated string and `out` is valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn et_corpus_verify(
    name: *const c_char,
    seed: u64,
    samples: usize,
    out: *mut *mut c_char,
) -> EtStatus {
    guard(|| {
        let entry = corpus::build(read_str(name, "name")?).map_err(Fail::input)?;
        let options = VerifyOptions {
            seed,
            samples,
            ..VerifyOptions::default()
        };
        let report = corpus::verify(&entry, &options);
        let results: Vec<Value> = report
            .results
            .iter()
            .map(|r| {
                let evidence = match r.evidence {
                    Evidence::Exhaustive { cases } => json!({ "kind": "exhaustive", "cases": cases }),
                    Evidence::Sampled { samples, seed } => {
                        json!({ "kind": "sampled", "samples": samples, "seed": seed })
                    }
                };
                json!({ "label": r.label, "passed": r.passed, "detail": r.detail, "evidence": evidence })
            })
            .collect();
        let passed = report.all_passed();
        write_json(
            out,
            json!({ "entry": report.entry, "passed": passed, "results": results }),
        )?;
        Ok(if passed { EtStatus::Ok } else { EtStatus::Negative })
    })
}
