use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use eqtransfer::corpus::{self, Evidence, Report, VerifyOptions};
use eqtransfer::extensive::{BackwardInductionOracle, TreeStrategy};
use eqtransfer::graph::{
    multi_outcome_ne, solve_muller_with, solve_parity, zielonka, FiniteMemoryStrategy, GraphError, GraphProfile,
    MullerOracle, MultiOutcomeGraphGame, PositionalStrategy, PriorityOracle,
};
use eqtransfer::io::{self, Loaded, OutcomeRef};
use eqtransfer::normal_form::DEFAULT_PROFILE_CAP;
use eqtransfer::transfer::{transfer, BruteForceOracle, OracleError, TransferResult};
use eqtransfer::{
    CallCounter, GameStructure, NormalFormGame, OutcomeSet, PreferenceProfile, StrategyProfile, TransferError,
};

#[derive(Parser)]
#[command(name = "eqtransfer", version, about = "Nash equilibria from two-player determinacy")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Largest number of profiles or outcome subsets to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_PROFILE_CAP)]
    cap: usize,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a Nash equilibrium of a game, tree or graph game.
    Solve { file: PathBuf },
    /// Decide whether every derived win-lose game is determined.
    CheckDeterminacy { file: PathBuf },
    /// Run the transfer algorithm and show its intermediate data.
    Transfer {
        file: PathBuf,
        #[arg(long, value_enum)]
        oracle: Option<OracleKind>,
    },
    /// Solve the arena as a parity game (least even color wins for player 1).
    SolveParity { file: PathBuf },
    /// Solve the arena as a Muller game won by player 1 on the given outcomes.
    SolveMuller {
        file: PathBuf,
        /// Comma-separated outcome labels or indices that count as wins for player 1.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        win: Vec<String>,
    },
    /// Check whether a strategy profile is a Nash equilibrium.
    VerifyNe {
        file: PathBuf,
        /// Comma-separated strategy indices.
        #[arg(long, value_delimiter = ',', required = true)]
        profile: Vec<usize>,
    },
    /// Built-in example games.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List the entries.
    List,
    /// Print an entry's structure as a game document.
    Build { name: String },
    /// Check an entry's claims.
    Verify {
        /// Entry names; all executable entries when omitted.
        names: Vec<String>,
        /// Samples for claims too large to check exhaustively.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    Brute,
    Tree,
    Parity,
    Muller,
}

/// Exit status 1 reports a negative answer, 2 a problem with the input.
enum Failure {
    Negative(String),
    Input(String),
}

impl From<io::FormatError> for Failure {
    fn from(e: io::FormatError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<eqtransfer::Error> for Failure {
    fn from(e: eqtransfer::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn from_transfer(e: TransferError) -> Failure {
    match e {
        TransferError::NotDetermined(_) | TransferError::Oracle(OracleError::Undetermined(_)) => {
            Failure::Negative(e.to_string())
        }
        _ => Failure::Input(e.to_string()),
    }
}

fn from_graph(e: GraphError) -> Failure {
    match e {
        GraphError::Transfer(t) => from_transfer(t),
        e => Failure::Input(e.to_string()),
    }
}

struct Output {
    json: bool,
}

impl Output {
    fn emit(&self, value: Value, text: String) {
        if self.json {
            say(&serde_json::to_string_pretty(&value).expect("values serialize"));
        } else {
            say(&text);
        }
    }
}

/// Writes a line to stdout; a closed pipe ends the output quietly.
fn say(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn moves_text(s: &PositionalStrategy) -> String {
    let moves: Vec<String> = s
        .moves()
        .iter()
        .enumerate()
        .filter_map(|(v, m)| m.map(|w| format!("{v}->{w}")))
        .collect();
    format!("[{}]", moves.join(" "))
}

fn read(path: &Path) -> Result<Loaded, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(io::load(&text)?)
}

fn need(prefs: Option<PreferenceProfile>) -> Result<PreferenceProfile, Failure> {
    prefs.ok_or_else(|| Failure::Input("document has no preferences".into()))
}

fn counter_json(c: &CallCounter) -> Value {
    json!({ "winner_calls": c.winner_calls, "strategy_calls": c.strategy_calls })
}

fn positional_json(s: &PositionalStrategy) -> Value {
    json!({ "player": s.player().index() + 1, "moves": s.moves() })
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

fn tree_strategy_json(s: &TreeStrategy) -> Value {
    json!({ "player": s.player.index() + 1, "choices": s.choices })
}

fn name(set: &OutcomeSet, o: usize) -> String {
    set.name(o)
}

fn solve(loaded: Loaded, cap: usize, out: &Output) -> Result<(), Failure> {
    let (structure, preferences) = match loaded {
        Loaded::Game { structure, preferences } => (structure, preferences),
        Loaded::Tree { tree, preferences } => (tree.to_normal_form(cap).map_err(eqtransfer::Error::from)?, preferences),
        Loaded::Graph(game) => return solve_graph(&game, out),
        Loaded::Arena { .. } => return Err(Failure::Input("a bare arena has no outcomes to solve for".into())),
    };
    let set = structure.outcomes().clone();
    let game = NormalFormGame::new(structure, need(preferences)?).map_err(eqtransfer::Error::from)?;
    let all = game.find_all_ne(cap).map_err(eqtransfer::Error::from)?;
    let described: Vec<(String, String)> = all
        .iter()
        .map(|p| (p.to_string(), name(&set, game.structure().outcome(p.choices()))))
        .collect();
    out.emit(
        json!(all
            .iter()
            .map(|p| json!({
                "profile": p.choices(),
                "outcome": OutcomeRef::of(&set, game.structure().outcome(p.choices())),
            }))
            .collect::<Vec<_>>()),
        if all.is_empty() {
            "no Nash equilibrium".into()
        } else {
            described
                .iter()
                .map(|(p, o)| format!("equilibrium {p} with outcome {o}"))
                .collect::<Vec<_>>()
                .join("\n")
        },
    );
    if all.is_empty() {
        Err(Failure::Negative(String::new()))
    } else {
        Ok(())
    }
}

fn solve_graph(game: &MultiOutcomeGraphGame, out: &Output) -> Result<(), Failure> {
    let eq = multi_outcome_ne(game).map_err(from_graph)?;
    let set = game.preferences().get(0).outcomes().clone();
    let strategies = match &eq.profile {
        GraphProfile::Positional(p) => p.iter().map(positional_json).collect::<Vec<_>>(),
        GraphProfile::FiniteMemory(m) => m.iter().map(memory_json).collect(),
    };
    let text_strategies = match &eq.profile {
        GraphProfile::Positional(p) => format!("positional moves {} / {}", moves_text(&p[0]), moves_text(&p[1])),
        GraphProfile::FiniteMemory(m) => {
            format!(
                "finite-memory strategies with {} / {} states",
                m[0].memory(),
                m[1].memory()
            )
        }
    };
    out.emit(
        json!({
            "method": "transfer",
            "strategies": strategies,
            "outcome": OutcomeRef::of(&set, eq.outcome),
            "restricted": eq.restricted,
            "counter": counter_json(&eq.counter),
        }),
        format!(
            "equilibrium with outcome {}: {text_strategies} ({})",
            name(&set, eq.outcome),
            eq.counter
        ),
    );
    Ok(())
}

fn structure_of(loaded: Loaded, cap: usize) -> Result<GameStructure, Failure> {
    match loaded {
        Loaded::Game { structure, .. } => Ok(structure),
        Loaded::Tree { tree, .. } => Ok(tree.to_normal_form(cap).map_err(eqtransfer::Error::from)?),
        _ => Err(Failure::Input("expected a game or tree document".into())),
    }
}

fn check_determinacy(loaded: Loaded, cap: usize, out: &Output) -> Result<(), Failure> {
    let st = structure_of(loaded, cap)?;
    let cap_subsets = cap.min(usize::BITS as usize - 1);
    let determined = st.is_determined(cap_subsets).map_err(eqtransfer::Error::from)?;
    let text = if determined { "determined" } else { "not determined" };
    out.emit(json!({ "determined": determined }), text.into());
    if determined {
        Ok(())
    } else {
        Err(Failure::Negative(
            "some derived win-lose game has no winning strategy".into(),
        ))
    }
}

fn report_transfer<S>(
    run: &TransferResult<S>,
    set: &OutcomeSet,
    strategy: impl Fn(&S) -> Value,
    equilibrium: Option<(StrategyProfile, bool)>,
    out: &Output,
) -> Result<(), Failure> {
    let names = |w: &eqtransfer::SubsetWord| w.iter().map(|o| name(set, o)).collect::<Vec<_>>();
    let value = json!({
        "linear": run.linear.iter().map(|&o| OutcomeRef::of(set, o)).collect::<Vec<_>>(),
        "enforced": names(&run.enforced),
        "excluded": names(&run.excluded),
        "position": run.position,
        "outcome": OutcomeRef::of(set, run.outcome),
        "first": { "strategy": strategy(&run.first.strategy), "restricted": run.first.restricted },
        "second": { "strategy": strategy(&run.second.strategy), "restricted": run.second.restricted },
        "counter": counter_json(&run.counter),
        "outcome_count": set.size(),
        "profile": equilibrium.as_ref().map(|(p, _)| p.choices()),
        "equilibrium": equilibrium.as_ref().map(|(_, ok)| *ok),
    });
    let mut text = format!(
        "linear extension {:?}\nplayer 1 enforces {:?}\nplayer 2 enforces the complement of {:?}\noutcome {} at position {}\nplayer 1 plays {}\nplayer 2 plays {}\n{} (n={})",
        run.linear.iter().map(|&o| name(set, o)).collect::<Vec<_>>(),
        names(&run.enforced),
        names(&run.excluded),
        name(set, run.outcome),
        run.position,
        strategy(&run.first.strategy),
        strategy(&run.second.strategy),
        run.counter,
        set.size()
    );
    if let Some((p, ok)) = &equilibrium {
        let verdict = if *ok { "is" } else { "is not" };
        text.push_str(&format!("\nprofile {p} {verdict} a Nash equilibrium"));
    }
    out.emit(value, text);
    match equilibrium {
        Some((p, false)) => Err(Failure::Negative(format!("profile {p} is not a Nash equilibrium"))),
        _ => Ok(()),
    }
}

fn checked(
    st: &GameStructure,
    prefs: &PreferenceProfile,
    profile: StrategyProfile,
) -> Result<Option<(StrategyProfile, bool)>, Failure> {
    let game = NormalFormGame::new(st.clone(), prefs.clone()).map_err(eqtransfer::Error::from)?;
    let ok = game.is_nash_equilibrium(&profile);
    Ok(Some((profile, ok)))
}

fn run_transfer(loaded: Loaded, oracle: Option<OracleKind>, cap: usize, out: &Output) -> Result<(), Failure> {
    let mismatch = |k: &str| Failure::Input(format!("oracle {k} does not apply to this document"));
    match loaded {
        Loaded::Game { structure, preferences } => {
            if oracle.is_some_and(|k| k != OracleKind::Brute) {
                return Err(mismatch("other than brute"));
            }
            let prefs = need(preferences)?;
            let set = structure.outcomes().clone();
            let oracle = BruteForceOracle::new(structure.clone()).map_err(from_transfer)?;
            let run = transfer(&oracle, &prefs).map_err(from_transfer)?;
            let eq = checked(
                &structure,
                &prefs,
                StrategyProfile::new([run.first.strategy, run.second.strategy]),
            )?;
            report_transfer(&run, &set, |s| json!(s), eq, out)
        }
        Loaded::Tree { tree, preferences } => {
            let prefs = need(preferences)?;
            let set = tree.outcomes().clone();
            match oracle.unwrap_or(OracleKind::Tree) {
                OracleKind::Tree => {
                    let st = tree.to_normal_form(cap).map_err(eqtransfer::Error::from)?;
                    let run = transfer(&BackwardInductionOracle::new(tree.clone()), &prefs).map_err(from_transfer)?;
                    let profile = StrategyProfile::new([
                        tree.strategy_index(&run.first.strategy),
                        tree.strategy_index(&run.second.strategy),
                    ]);
                    let eq = checked(&st, &prefs, profile)?;
                    report_transfer(&run, &set, tree_strategy_json, eq, out)
                }
                OracleKind::Brute => {
                    let st = tree.to_normal_form(cap).map_err(eqtransfer::Error::from)?;
                    let oracle = BruteForceOracle::new(st.clone()).map_err(from_transfer)?;
                    let run = transfer(&oracle, &prefs).map_err(from_transfer)?;
                    let eq = checked(
                        &st,
                        &prefs,
                        StrategyProfile::new([run.first.strategy, run.second.strategy]),
                    )?;
                    report_transfer(&run, &set, |s| json!(s), eq, out)
                }
                _ => Err(mismatch("parity/muller")),
            }
        }
        Loaded::Graph(game) => {
            let set = game.preferences().get(0).outcomes().clone();
            let default = if game.is_priority() {
                OracleKind::Parity
            } else {
                OracleKind::Muller
            };
            match oracle.unwrap_or(default) {
                OracleKind::Parity => {
                    let oracle = PriorityOracle::new(&game).map_err(from_graph)?;
                    let run = transfer(&oracle, game.preferences()).map_err(from_transfer)?;
                    report_transfer(&run, &set, positional_json, None, out)
                }
                OracleKind::Muller => {
                    let run = transfer(&MullerOracle::new(&game), game.preferences()).map_err(from_transfer)?;
                    report_transfer(&run, &set, memory_json, None, out)
                }
                _ => Err(mismatch("brute/tree")),
            }
        }
        Loaded::Arena { .. } => Err(Failure::Input("a bare arena has no outcomes to transfer".into())),
    }
}

fn graph_of(loaded: Loaded) -> Result<MultiOutcomeGraphGame, Failure> {
    match loaded {
        Loaded::Graph(g) => Ok(g),
        _ => Err(Failure::Input("expected a graph document".into())),
    }
}

fn run_parity(loaded: Loaded, out: &Output) -> Result<(), Failure> {
    let (arena, start) = match loaded {
        Loaded::Graph(g) => (g.arena().clone(), g.start()),
        Loaded::Arena { arena, start } => (arena, start),
        _ => return Err(Failure::Input("expected a graph document".into())),
    };
    let arena = &arena;
    let regions = zielonka(arena);
    let sol = solve_parity(arena, start);
    let winners: Vec<usize> = regions.winner.iter().map(|p| p.index() + 1).collect();
    out.emit(
        json!({
            "winner": sol.winner.index() + 1,
            "strategy": positional_json(&sol.strategy),
            "regions": winners,
        }),
        format!(
            "{} wins from vertex {} with moves {}\nwinner per vertex {:?}",
            sol.winner,
            start,
            moves_text(&sol.strategy),
            winners
        ),
    );
    Ok(())
}

fn run_muller(game: MultiOutcomeGraphGame, win: &[String], out: &Output) -> Result<(), Failure> {
    let set = game.preferences().get(0).outcomes().clone();
    let win = win
        .iter()
        .map(|w| {
            let r = w
                .parse()
                .map(OutcomeRef::Index)
                .unwrap_or_else(|_| OutcomeRef::Label(w.clone()));
            r.resolve(&set)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let sol = solve_muller_with(game.arena(), game.start(), |c| {
        win.contains(&game.outcome_of_colors(&c.iter().collect::<Vec<_>>()))
    })
    .map_err(from_graph)?;
    out.emit(
        json!({ "winner": sol.winner.index() + 1, "strategy": memory_json(&sol.strategy) }),
        format!(
            "{} wins from vertex {} with a {}-state strategy",
            sol.winner,
            game.start(),
            sol.strategy.memory()
        ),
    );
    Ok(())
}

fn verify_ne(loaded: Loaded, profile: Vec<usize>, cap: usize, out: &Output) -> Result<(), Failure> {
    let (structure, preferences) = match loaded {
        Loaded::Game { structure, preferences } => (structure, preferences),
        Loaded::Tree { tree, preferences } => (tree.to_normal_form(cap).map_err(eqtransfer::Error::from)?, preferences),
        _ => return Err(Failure::Input("expected a game or tree document".into())),
    };
    let game = NormalFormGame::new(structure, need(preferences)?).map_err(eqtransfer::Error::from)?;
    let profile = StrategyProfile::new(profile);
    game.structure()
        .check_profile(&profile)
        .map_err(eqtransfer::Error::from)?;
    match game.improving_deviation(&profile) {
        None => {
            out.emit(
                json!({ "equilibrium": true }),
                format!("{profile} is a Nash equilibrium"),
            );
            Ok(())
        }
        Some((player, alt)) => {
            out.emit(
                json!({ "equilibrium": false, "deviation": { "player": player + 1, "strategy": alt } }),
                format!(
                    "{profile} is not a Nash equilibrium: player {} improves with strategy {alt}",
                    player + 1
                ),
            );
            Err(Failure::Negative(String::new()))
        }
    }
}

fn report_json(r: &Report) -> Value {
    json!({
        "entry": r.entry,
        "passed": r.all_passed(),
        "claims": r.results.iter().map(|c| {
            let evidence = match c.evidence {
                Evidence::Exhaustive { cases } => json!({ "kind": "exhaustive", "cases": cases }),
                Evidence::Sampled { samples, seed } => json!({ "kind": "sampled", "samples": samples, "seed": seed }),
            };
            json!({ "label": c.label, "passed": c.passed, "evidence": evidence, "detail": c.detail })
        }).collect::<Vec<_>>(),
    })
}

fn run_corpus(action: &CorpusAction, seed: u64, cap: usize, out: &Output) -> Result<(), Failure> {
    let corpus_err = |e: corpus::CorpusError| Failure::Input(e.to_string());
    match action {
        CorpusAction::List => {
            let value = corpus::INDEX
                .iter()
                .map(|e| json!({ "name": e.name, "executable": e.executable, "summary": e.summary }))
                .collect::<Vec<_>>();
            let text = corpus::INDEX
                .iter()
                .map(|e| {
                    let tag = if e.executable { "" } else { " [not executable]" };
                    format!("{:<24} {}{tag}", e.name, e.summary)
                })
                .collect::<Vec<_>>()
                .join("\n");
            out.emit(json!(value), text);
            Ok(())
        }
        CorpusAction::Build { name } => {
            let entry = corpus::build(name).map_err(corpus_err)?;
            say(&io::to_json(&io::structure_doc(&entry.structure, None)));
            Ok(())
        }
        CorpusAction::Verify { names, samples } => {
            let names: Vec<String> = if names.is_empty() {
                corpus::INDEX
                    .iter()
                    .filter(|e| e.executable)
                    .map(|e| e.name.to_string())
                    .collect()
            } else {
                names.clone()
            };
            let options = VerifyOptions {
                seed,
                samples: *samples,
                cap,
                ..VerifyOptions::default()
            };
            let mut reports = Vec::new();
            for name in &names {
                let entry = corpus::build(name).map_err(corpus_err)?;
                reports.push(corpus::verify(&entry, &options));
            }
            let ok = reports.iter().all(Report::all_passed);
            out.emit(
                json!(reports.iter().map(report_json).collect::<Vec<_>>()),
                reports
                    .iter()
                    .map(ToString::to_string)
                    .collect::<String>()
                    .trim_end()
                    .to_string(),
            );
            if ok {
                Ok(())
            } else {
                Err(Failure::Negative("some claims failed".into()))
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = Output { json: cli.json };
    let cap = cli.cap;
    match &cli.command {
        Command::Solve { file } => solve(read(file)?, cap, &out),
        Command::CheckDeterminacy { file } => check_determinacy(read(file)?, cap, &out),
        Command::Transfer { file, oracle } => run_transfer(read(file)?, *oracle, cap, &out),
        Command::SolveParity { file } => run_parity(read(file)?, &out),
        Command::SolveMuller { file, win } => run_muller(graph_of(read(file)?)?, win, &out),
        Command::VerifyNe { file, profile } => verify_ne(read(file)?, profile.clone(), cap, &out),
        Command::Corpus { action } => run_corpus(action, cli.seed, cap, &out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
