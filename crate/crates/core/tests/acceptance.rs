//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always show.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use poslab::algebra::classify;
use poslab::atl::SeparatorKind;
use poslab::oracle::{self, Finding};
use poslab::random::random_trim_algebra_of_size;
use poslab::Result;

const APERIODICITY_LIMIT: Duration = Duration::from_secs(60);
const LARGE_CLASSIFY_LIMIT: Duration = Duration::from_secs(10);
const ATL_LIMIT: Duration = Duration::from_secs(300);
const SEED: u64 = 20240601;

struct Outcome {
    ok: bool,
    detail: String,
}

fn findings(fs: Vec<Result<Finding>>) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for f in fs {
        match f {
            Ok(f) => {
                ok &= f.passed();
                parts.push(format!("{} {}/{}", f.check, f.cases - f.failures.len().min(f.cases), f.cases));
                for d in f.failures.iter().take(3) {
                    parts.push(format!("[{d}]"));
                }
            }
            Err(e) => {
                ok = false;
                parts.push(format!("error: {e}"));
            }
        }
    }
    Outcome { ok, detail: parts.join("; ") }
}

fn timed(limit: Duration, run: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = run();
    let took = start.elapsed();
    o.ok &= took < limit;
    o.detail = format!("{}; {:.1}s (limit {}s)", o.detail, took.as_secs_f64(), limit.as_secs());
    o
}

fn large_classify() -> Outcome {
    let mut ok = true;
    let mut times = Vec::new();
    for seed in [1, 2, 3] {
        let a = random_trim_algebra_of_size(30, seed);
        let start = Instant::now();
        ok &= classify(&a).is_ok();
        let took = start.elapsed();
        ok &= took < LARGE_CLASSIFY_LIMIT;
        times.push(format!("{:.2}s", took.as_secs_f64()));
    }
    Outcome { ok, detail: format!("|S+| = 30, seeds 1-3: {} (limit {}s each)", times.join(", "), LARGE_CLASSIFY_LIMIT.as_secs()) }
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Box<dyn FnOnce() -> Outcome>)> = vec![
        ("1 positional implies aperiodic", Box::new(|| timed(APERIODICITY_LIMIT, || findings(vec![oracle::aperiodicity(100, 6, SEED)])))),
        ("2 classification table", Box::new(|| findings(vec![oracle::classification_table()]))),
        ("3 closure conditions vs words", Box::new(|| findings(vec![oracle::closure_conditions_vs_words(3)]))),
        ("4 classify scales", Box::new(large_classify)),
        ("5 prefix-independent shortcut", Box::new(|| findings(vec![oracle::prefix_independent_check()]))),
        ("6 union closure", Box::new(|| findings(vec![oracle::unions(200, 50, SEED)]))),
        (
            "7 games",
            Box::new(|| {
                findings(vec![
                    oracle::gadgets(3),
                    oracle::determinacy(100, 5, 3, SEED),
                    oracle::determinacy(100, 5, 4, SEED + 100),
                    oracle::check_plays_vs_lassos(6),
                ])
            }),
        ),
        ("8 previous-label memory", Box::new(|| findings(vec![oracle::previous_label_memory(100, 4, SEED)]))),
        ("9 families", Box::new(|| findings(vec![oracle::families(1000, SEED)]))),
        (
            "10 ATL",
            Box::new(|| {
                timed(ATL_LIMIT, || {
                    findings(vec![
                        oracle::separators(&[(SeparatorKind::Gffg, 4), (SeparatorKind::Gu, 3)]),
                        oracle::rewrites(100, SEED),
                        oracle::positional_vs_monitor(50, SEED),
                    ])
                })
            }),
        ),
        ("11 product sanity", Box::new(|| findings(vec![oracle::product_sanity()]))),
    ];
    let mut all = true;
    for (name, run) in criteria {
        let o = run();
        all &= o.ok;
        println!("{} criterion {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
