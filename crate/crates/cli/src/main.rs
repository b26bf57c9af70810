mod fixtures;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Mutex;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use poslab::algebra::{classify, syntactic_quotient, WilkeAlgebra};
use poslab::atl::{build_separator, model_check, Semantics, SeparatorKind, StateFormula};
use poslab::automata::{dpa_to_wilke, Dpa};
use poslab::families::{
    antidict_extend_letter, antidict_totally_ordered, fg_algebra, rabin_family, sr_to_dpa, AntiDictionary, FgFamily,
    RabinPair, SrFamily,
};
use poslab::format::{
    algebra_from_json, algebra_to_json, arena_doc, arena_from_json, cgs_doc, cgs_from_json, dpa_from_json, dpa_to_json,
    to_json,
};
use poslab::games::{
    build_gadget, solve_bounded_memory, solve_monitor_memory, solve_positional, Arena, GadgetKind, GadgetParams, Monitor, MonitorStrategy, Player,
};
use poslab::oracle::{self, Finding};
use poslab::words::Alphabet;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "poslab", version, about = "Positionality of omega-regular objectives, games and positional ATL")]
struct Cli {
    /// Worker threads for the oracle checks.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write output here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify an algebra or DPA file.
    Classify { input: PathBuf },
    /// Build an algebra or DPA.
    Compile {
        #[command(subcommand)]
        what: Compile,
    },
    /// Anti-dictionary operations.
    Antidict {
        #[command(subcommand)]
        op: Antidict,
    },
    /// Winning regions and strategies of an arena.
    Solve {
        arena: PathBuf,
        /// Algebra or DPA file.
        #[arg(long)]
        objective: PathBuf,
        /// `positional`, or `monitor:<trivial|previous-label|seen:L|parity:L:N|bounded:K>`.
        #[arg(long, default_value = "positional")]
        mode: String,
    },
    /// States of a CGS satisfying a formula.
    Mc {
        cgs: PathBuf,
        formula: String,
        #[arg(long, value_enum, default_value = "positional")]
        semantics: SemanticsArg,
    },
    /// Emit a gadget arena.
    Gadget {
        kind: GadgetKind,
        /// Comma-separated `key=value` pairs; words use the `prefix(period)` syntax.
        params: String,
        #[arg(long, default_value = "ab")]
        letters: String,
    },
    /// Emit a separator CGS.
    Separator { kind: SeparatorKind, depth: usize },
    /// Run the brute-force cross-checks, or check a fixture directory.
    Oracle {
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Run only the named checks.
        #[arg(long = "check")]
        only: Vec<String>,
    },
    /// Write the fixture corpus to a directory.
    Fixtures { dir: PathBuf },
}

#[derive(Subcommand)]
enum Compile {
    /// DPA file to its transition algebra.
    Dpa {
        input: PathBuf,
        /// Reduce to the syntactic algebra.
        #[arg(long)]
        syntactic: bool,
    },
    /// `Σ*(SR)^ω` family as a DPA.
    Sr {
        #[arg(long)]
        letters: String,
        /// Letters of S, e.g. `a`.
        #[arg(long)]
        s: String,
        /// Anti-dictionary words.
        words: Vec<String>,
        /// Emit the syntactic algebra instead of the DPA.
        #[arg(long)]
        algebra: bool,
    },
    /// Rabin condition from pairs `U:V`, e.g. `a:b`.
    Rabin {
        #[arg(long)]
        letters: String,
        #[arg(required = true)]
        pairs: Vec<String>,
    },
    /// `FG(A_1) ∪ … ∪ FG(A_n)` from letter sets, e.g. `ab c`.
    Fg {
        #[arg(long)]
        letters: String,
        #[arg(required = true)]
        sets: Vec<String>,
    },
}

#[derive(Subcommand)]
enum Antidict {
    /// Is the anti-dictionary's language residually totally ordered?
    Check {
        #[arg(long)]
        letters: String,
        words: Vec<String>,
    },
    /// Add a single-letter word and re-minimize.
    Extend {
        #[arg(long)]
        letters: String,
        #[arg(long)]
        letter: String,
        words: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SemanticsArg {
    Positional,
    Bipositional,
}

/// Outcome of a subcommand that ran to completion.
enum Outcome {
    Done(String),
    /// Output plus whether every finding passed.
    Findings(String, bool),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let (text, ok) = match outcome {
                Outcome::Done(t) => (t, true),
                Outcome::Findings(t, ok) => (t, ok),
            };
            let written = match &cli.output {
                Some(p) => fs::write(p, &text).with_context(|| format!("writing {}", p.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(2)
                }
                Ok(()) if ok => ExitCode::SUCCESS,
                Ok(()) => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(p: &Path) -> anyhow::Result<String> {
    fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
}

/// Algebra or DPA file, told apart by its keys.
fn load_objective(p: &Path) -> anyhow::Result<WilkeAlgebra> {
    let text = read(p)?;
    let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?;
    let a = if v.get("transitions").is_some() {
        dpa_to_wilke(&dpa_from_json(&text)?)?
    } else {
        algebra_from_json(&text)?
    };
    Ok(a)
}

fn letters(s: &str) -> anyhow::Result<Alphabet> {
    if s.contains(',') {
        Ok(Alphabet::new(s.split(',').map(str::to_string))?)
    } else {
        Ok(Alphabet::from_chars(s))
    }
}

fn letter_set(ab: &Alphabet, s: &str) -> anyhow::Result<Vec<usize>> {
    Ok(ab.parse_word(s)?.letters().to_vec())
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    Ok(Outcome::Done(match &cli.command {
        Command::Classify { input } => to_json(&classify(&load_objective(input)?)?)?,
        Command::Compile { what } => compile(what)?,
        Command::Antidict { op } => antidict(op)?,
        Command::Solve { arena, objective, mode } => {
            let arena = arena_from_json(&read(arena)?)?;
            let alg = load_objective(objective)?;
            if alg.alphabet() != arena.alphabet() {
                bail!("objective and arena use different letters");
            }
            to_json(&solve(&arena, &alg, mode)?)?
        }
        Command::Mc { cgs, formula, semantics } => {
            let g = cgs_from_json(&read(cgs)?)?;
            let f: StateFormula = formula.parse()?;
            let sem = match semantics {
                SemanticsArg::Positional => Semantics::Positional,
                SemanticsArg::Bipositional => Semantics::Bipositional,
            };
            let states: Vec<&str> = model_check(&g, &f, sem)?.into_iter().map(|x| g.states[x].as_str()).collect();
            to_json(&json!({ "formula": f.to_string(), "states": states }))?
        }
        Command::Gadget { kind, params, letters: l } => {
            let ab = letters(l)?;
            let g = build_gadget(&ab, &GadgetParams::parse(*kind, &ab, params)?)?;
            let mut doc = arena_doc(&g.arena);
            let starts: Vec<&str> = g.starts.iter().map(|&s| g.arena.nodes()[s].as_str()).collect();
            doc.annotations = Some(json!({ "params": params, "starts": starts }));
            to_json(&doc)?
        }
        Command::Separator { kind, depth } => {
            let s = build_separator(*kind, *depth)?;
            let mut doc = cgs_doc(&s.cgs);
            doc.annotations = Some(json!({
                "formula": s.formula().map(|f| f.to_string()),
                "satisfied": s.satisfied,
                "violated": s.violated,
            }));
            to_json(&doc)?
        }
        Command::Oracle { fixtures: Some(dir), .. } => {
            let (text, ok) = report(&check_fixture_dir(dir)?)?;
            return Ok(Outcome::Findings(text, ok));
        }
        Command::Oracle { fixtures: None, only } => {
            let (text, ok) = report(&run_suite(only, cli.seed, cli.threads)?)?;
            return Ok(Outcome::Findings(text, ok));
        }
        Command::Fixtures { dir } => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let files = fixtures::files()?;
            for (name, text) in &files {
                fs::write(dir.join(name), text).with_context(|| format!("writing {name}"))?;
            }
            format!("wrote {} files to {}\n", files.len(), dir.display())
        }
    }))
}

fn compile(what: &Compile) -> anyhow::Result<String> {
    Ok(match what {
        Compile::Dpa { input, syntactic } => {
            let a = dpa_to_wilke(&dpa_from_json(&read(input)?)?)?;
            algebra_to_json(&if *syntactic { syntactic_quotient(&a)? } else { a })?
        }
        Compile::Sr { letters: l, s, words, algebra } => {
            let ab = letters(l)?;
            let refs: Vec<&str> = words.iter().map(String::as_str).collect();
            let fam = SrFamily::new(letter_set(&ab, s)?, AntiDictionary::parse(ab, &refs)?)?;
            let d: Dpa = sr_to_dpa(&fam);
            if *algebra {
                algebra_to_json(&syntactic_quotient(&dpa_to_wilke(&d)?)?)?
            } else {
                dpa_to_json(&d)?
            }
        }
        Compile::Rabin { letters: l, pairs } => {
            let ab = letters(l)?;
            let pairs = pairs
                .iter()
                .map(|p| {
                    let (u, v) = p.split_once(':').ok_or_else(|| anyhow!("Rabin pair {p:?} must look like U:V"))?;
                    Ok(RabinPair { u: letter_set(&ab, u)?, v: letter_set(&ab, v)? })
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            algebra_to_json(&rabin_family(&ab, &pairs)?)?
        }
        Compile::Fg { letters: l, sets } => {
            let ab = letters(l)?;
            let refs: Vec<&str> = sets.iter().map(String::as_str).collect();
            algebra_to_json(&fg_algebra(&FgFamily::parse(ab, &refs)?)?)?
        }
    })
}

fn antidict(op: &Antidict) -> anyhow::Result<String> {
    let build = |l: &str, words: &[String]| -> anyhow::Result<AntiDictionary> {
        let refs: Vec<&str> = words.iter().map(String::as_str).collect();
        Ok(AntiDictionary::parse(letters(l)?, &refs)?)
    };
    let words_of = |d: &AntiDictionary| -> Vec<String> { d.words().iter().map(|w| d.alphabet().format_word(w)).collect() };
    Ok(match op {
        Antidict::Check { letters: l, words } => {
            let d = build(l, words)?;
            let (ordered, witness) = antidict_totally_ordered(&d)?;
            to_json(&json!({ "words": words_of(&d), "totally_ordered": ordered, "witness": witness }))?
        }
        Antidict::Extend { letters: l, letter, words } => {
            let d = build(l, words)?;
            let a = d.alphabet().index_of(letter)?;
            let e = antidict_extend_letter(&d, a)?;
            let (ordered, _) = antidict_totally_ordered(&e)?;
            to_json(&json!({ "words": words_of(&e), "totally_ordered": ordered }))?
        }
    })
}

fn parse_monitor(spec: &str, ab: &Alphabet) -> anyhow::Result<Monitor> {
    let parts: Vec<&str> = spec.split(':').collect();
    Ok(match parts.as_slice() {
        ["trivial"] => Monitor::trivial(ab.len()),
        ["previous-label"] => Monitor::previous_label(ab),
        ["seen", l] => Monitor::seen_letter(ab, ab.index_of(l)?),
        ["parity", l, n] => Monitor::block_parity(ab, ab.index_of(l)?, n.parse().context("block parity size")?),
        _ => bail!("unknown monitor {spec:?}"),
    })
}

fn solve(arena: &Arena, alg: &WilkeAlgebra, mode: &str) -> anyhow::Result<Value> {
    let game = arena.game();
    let names = arena.nodes();
    let ab = arena.alphabet();
    let edge = |e: usize| {
        let x = &game.edges[e];
        json!({ "letter": x.letter.map(|l| ab.name(l)), "tgt": names[x.tgt] })
    };
    if mode == "positional" {
        let mut out = serde_json::Map::new();
        for p in [Player::P1, Player::P2] {
            let res = solve_positional(&game, alg, p)?;
            let region: Vec<&str> = (0..game.len()).filter(|&v| res[v].wins).map(|v| names[v].as_str()).collect();
            let strategies: BTreeMap<&str, BTreeMap<&str, Value>> = (0..game.len())
                .filter_map(|v| {
                    let s = res[v].strategy.as_ref()?;
                    Some((names[v].as_str(), s.moves.iter().map(|(&n, &e)| (names[n].as_str(), edge(e))).collect()))
                })
                .collect();
            out.insert(format!("player{}", p.number()), json!({ "region": region, "strategies": strategies }));
        }
        out.insert("mode".into(), json!(mode));
        return Ok(Value::Object(out));
    }
    let spec = mode.strip_prefix("monitor:").ok_or_else(|| anyhow!("mode must be positional or monitor:<spec>"))?;
    let describe = |m: &MonitorStrategy| {
        let moves: BTreeMap<String, Value> =
            m.moves.iter().map(|(&(v, q), &e)| (format!("{}/{}", names[v], m.monitor.states[q]), edge(e))).collect();
        json!({ "monitor": m.monitor.states, "initial": m.monitor.states[m.monitor.initial], "moves": moves })
    };
    let strategies: Vec<(usize, Option<MonitorStrategy>)> = if let Some(k) = spec.strip_prefix("bounded:") {
        let k: usize = k.parse().context("monitor bound")?;
        (0..game.len()).map(|v| Ok((v, solve_bounded_memory(&game, alg, k, &[v])?))).collect::<poslab::Result<_>>()?
    } else {
        let monitor = parse_monitor(spec, ab)?;
        let wins = solve_monitor_memory(&game, alg, &monitor, Player::P1)?;
        wins.into_iter().enumerate().map(|(v, w)| (v, w.strategy.filter(|_| w.wins))).collect()
    };
    let region: Vec<&str> = strategies.iter().filter(|(_, s)| s.is_some()).map(|(v, _)| names[*v].as_str()).collect();
    let per_node: BTreeMap<&str, Value> =
        strategies.iter().filter_map(|(v, s)| Some((names[*v].as_str(), describe(s.as_ref()?)))).collect();
    Ok(json!({ "mode": mode, "player1": { "region": region, "strategies": per_node } }))
}

fn report(findings: &[Finding]) -> anyhow::Result<(String, bool)> {
    let ok = findings.iter().all(Finding::passed);
    let summary: Vec<Value> = findings
        .iter()
        .map(|f| json!({ "check": f.check, "cases": f.cases, "passed": f.passed(), "failures": f.failures }))
        .collect();
    Ok((to_json(&json!({ "passed": ok, "findings": summary }))?, ok))
}

fn run_suite(only: &[String], seed: u64, threads: usize) -> anyhow::Result<Vec<Finding>> {
    let suite = oracle::suite();
    for name in only {
        if !suite.iter().any(|(n, _)| n == name) {
            bail!("unknown check {name:?}; known: {}", suite.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", "));
        }
    }
    let jobs: Vec<(usize, oracle::CheckFn)> = suite
        .iter()
        .enumerate()
        .filter(|(_, (n, _))| only.is_empty() || only.iter().any(|o| o == n))
        .map(|(i, &(_, f))| (i, f))
        .collect();
    let queue = Mutex::new(jobs.into_iter());
    let results = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..threads.max(1) {
            scope.spawn(|| loop {
                let Some((i, f)) = queue.lock().expect("queue").next() else { break };
                let r = f(seed);
                results.lock().expect("results").push((i, r));
            });
        }
    });
    let mut results = results.into_inner().expect("results");
    results.sort_by_key(|(i, _)| *i);
    Ok(results.into_iter().map(|(_, r)| r).collect::<poslab::Result<_>>()?)
}

/// Revalidates a fixture directory: algebra files classify and agree with
/// the word-level closure check, arenas and DPAs parse, and CGS annotations
/// agree with model checking.
fn check_fixture_dir(dir: &Path) -> anyhow::Result<Vec<Finding>> {
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    entries.sort();
    let mut algebras = Finding::new("fixture algebras");
    let mut parsed = Finding::new("fixture documents");
    let mut cgs = Finding::new("fixture separators");
    for path in &entries {
        let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default().to_string();
        let text = read(path)?;
        if name.ends_with(".algebra.json") {
            let a = algebra_from_json(&text)?;
            classify(&a)?;
            if a.alphabet().len() == 2 {
                let c = poslab::algebra::check_closure_conditions(&a, poslab::algebra::ClosureMode::Edge)?;
                let w = oracle::word_closure_conditions(&a, poslab::algebra::ClosureMode::Edge, 3)?;
                algebras.record((c.cond1, c.cond2) == w, || format!("{name}: algebra and words disagree"));
            } else {
                algebras.record(true, String::new);
            }
        } else if name.ends_with(".dpa.json") {
            let d = dpa_from_json(&text)?;
            parsed.record(dpa_to_json(&d)? == text, || format!("{name} is not in normal form"));
        } else if name.ends_with(".arena.json") {
            let check = arena_from_json(&text)?;
            let mut doc = arena_doc(&check);
            doc.annotations = serde_json::from_str::<Value>(&text)?.get("annotations").cloned();
            parsed.record(to_json(&doc)? == text, || format!("{name} is not in normal form"));
        } else if name.ends_with(".cgs.json") {
            let g = cgs_from_json(&text)?;
            let v: Value = serde_json::from_str(&text)?;
            let ann = v.get("annotations").cloned().unwrap_or(Value::Null);
            let Some(f) = ann.get("formula").and_then(Value::as_str) else { continue };
            let f: StateFormula = f.parse()?;
            let sat = model_check(&g, &f, Semantics::Positional)?;
            for (key, want) in [("satisfied", true), ("violated", false)] {
                for id in ann.get(key).and_then(Value::as_array).into_iter().flatten().filter_map(Value::as_str) {
                    let got = sat.contains(&g.state_index(id)?);
                    cgs.record(got == want, || format!("{name} {id}: expected {want}"));
                }
            }
        }
    }
    Ok(vec![algebras, parsed, cgs])
}
