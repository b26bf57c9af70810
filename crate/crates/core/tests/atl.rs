use poslab::atl::SeparatorKind;
use poslab::oracle::{self, Finding};

fn run(f: Finding) {
    println!("{}: {} cases, {} failures", f.check, f.cases, f.failures.len());
    for d in &f.failures {
        println!("  {d}");
    }
    assert!(f.passed(), "{}", f.check);
}

#[test]
fn separators_at_all_depths() {
    run(oracle::separators(&[(SeparatorKind::Gffg, 4), (SeparatorKind::Gu, 3), (SeparatorKind::Gfgf, 4)]).unwrap());
}

#[test]
fn rewrites_preserve_truth_sets() {
    run(oracle::rewrites(100, 500).unwrap());
}

#[test]
fn positional_matches_two_state_memory() {
    run(oracle::positional_vs_monitor(50, 900).unwrap());
}

#[test]
fn rabin_pairs() {
    run(oracle::rabin_encoding(50, 1300).unwrap());
}
