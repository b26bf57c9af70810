use poslab::oracle;

fn run(f: poslab::Result<oracle::Finding>) {
    let f = f.unwrap();
    println!("{}: {} cases", f.check, f.cases);
    assert!(f.passed(), "{:#?}", f.failures);
}

#[test]
fn gadgets() {
    run(oracle::gadgets(3));
}

#[test]
fn determinacy_rabin() {
    run(oracle::determinacy(100, 5, 3, 1));
}

#[test]
fn determinacy_parity() {
    run(oracle::determinacy(100, 5, 4, 101));
}

#[test]
fn check_plays_matches_lassos() {
    run(oracle::check_plays_vs_lassos(6));
}

#[test]
fn previous_label() {
    run(oracle::previous_label_memory(100, 4, 7));
}

#[test]
fn cond1_gadget_with_seen_a_monitor() {
    use poslab::games::{build_gadget, check_plays, solve_monitor_memory, solve_positional, GadgetKind, GadgetParams, Monitor, Player, Quantifier};
    use poslab::words::Alphabet;
    let ab = Alphabet::from_chars("ab");
    let g = build_gadget(&ab, &GadgetParams::parse(GadgetKind::Cond1, &ab, "u=,v=a,w=b,x=b").unwrap()).unwrap();
    let game = g.arena.game();
    let alg = poslab::fixtures::fa_fb();
    assert!(!check_plays(&game, &[], &alg, 0, Quantifier::AllIn).holds);
    assert!(check_plays(&game, &[], &alg, 0, Quantifier::ExistsIn).holds);
    assert!(!solve_positional(&game, &alg, Player::P1).unwrap()[0].wins);
    let seen_a = solve_monitor_memory(&game, &alg, &Monitor::seen_letter(&ab, 0), Player::P1).unwrap();
    assert!(seen_a[0].wins);
}
