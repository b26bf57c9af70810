//! Brute-force cross-checks between the algebraic deciders and direct
//! enumeration. Each check returns a [`Finding`] listing any disagreement.

use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{
    boolean_combine, check_closure_conditions, check_prefix_independent_positionality, classify, is_prefix_independent,
    product_with_images, residuals, syntactic_quotient, BoolOp, ClosureMode, WilkeAlgebra,
};
use crate::atl::{
    build_separator, coalition_game, encode_rabin, model_check, rewrite, template_algebra, RewriteDirection, Semantics,
    SeparatorKind, StateFormula, TemplateKind,
};
use crate::error::Result;
use crate::automata::{dfa_residual_order, dpa_to_wilke, dpa_up_membership};
use crate::families::{
    antidict_extend_letter, antidict_totally_ordered, fg_algebra, rabin_family, sr_membership, sr_to_dpa, subseq_dfa,
    AntiDictionary, FgFamily, RabinPair, SrFamily,
};
use crate::fixtures;
use crate::games::{
    brute_force_lassos, build_gadget, check_plays, edge_to_state, solve_bounded_memory, solve_monitor_memory,
    solve_positional, solve_uniform_positional, verify_monitor_strategy, Edge, Game, GadgetKind, GadgetParams,
    Monitor, Player, Quantifier,
};
use crate::random::{random_cgs, random_colouring, random_edge_arena, random_trim_algebra, random_up_words};
use crate::words::{subword_leq, Alphabet, UpWord, Word};

#[derive(Clone, Debug, Default, Serialize)]
pub struct Finding {
    pub check: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Finding {
    pub fn new(check: &str) -> Finding {
        Finding { check: check.into(), ..Finding::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }

    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(detail());
        }
    }
}

/// The four gadget instances: objective, kind and parameters.
pub fn gadget_instances() -> Vec<(GadgetKind, &'static str, &'static str, WilkeAlgebra)> {
    vec![
        (GadgetKind::Cond1, "u=,v=a,w=b,x=b", "fa_fb", fixtures::fa_fb()),
        (GadgetKind::Cond2, "u=,v=a,w=b,x=", "gfa_gfb", fixtures::gfa_gfb()),
        (GadgetKind::OmegaCf, "u=,v=,w=b,x=a,j=1,k=2", "odd_blocks", fixtures::odd_blocks()),
        (GadgetKind::ResidualOrder, "u=a,v=b,a=a,x=(a),y=(b)", "aw_babw", fixtures::aw_babw()),
    ]
}

/// Each gadget has no uniform positional win for `P1` from its starts but a
/// win with a monitor of at most `max_memory` states, which re-verifies.
pub fn gadgets(max_memory: usize) -> Result<Finding> {
    let mut f = Finding::new("gadgets");
    let ab = Alphabet::from_chars("ab");
    for (kind, params, name, alg) in gadget_instances() {
        let g = build_gadget(&ab, &GadgetParams::parse(kind, &ab, params)?)?;
        let game = g.arena.game();
        let positional = solve_uniform_positional(&game, &alg, &g.starts)?;
        let memory = solve_bounded_memory(&game, &alg, max_memory, &g.starts)?;
        let verified = memory.as_ref().is_some_and(|m| m.monitor.len() > 1 && verify_monitor_strategy(&game, &alg, m, &g.starts));
        f.record(positional.is_none() && verified, || {
            format!("{kind}({params}) with {name}: positional {}, memory {:?}", positional.is_some(), memory.map(|m| m.monitor.len()))
        });
    }
    Ok(f)
}

/// On random arenas with parity colourings (`priorities = 3` is a single
/// Rabin pair), every node is won positionally by exactly one player, and
/// each returned strategy re-checks against all opponent plays.
pub fn determinacy(arenas: usize, max_nodes: usize, priorities: u32, seed: u64) -> Result<Finding> {
    let mut f = Finding::new(&format!("positional determinacy, {priorities} priorities"));
    let letters = priorities as usize;
    for i in 0..arenas {
        let s = seed.wrapping_add(i as u64);
        let arena = random_edge_arena(max_nodes, letters, 2, s);
        let alg = crate::automata::dpa_to_wilke(&random_colouring(letters, priorities, s ^ 0x5eed))?;
        let game = arena.game();
        let p1 = solve_positional(&game, &alg, Player::P1)?;
        let p2 = solve_positional(&game, &alg, Player::P2)?;
        for q in 0..game.len() {
            let ok_split = p1[q].wins != p2[q].wins;
            let r = |st: &crate::games::PositionalStrategy| st.restriction(game.len());
            let ok_strats = p1[q].strategy.as_ref().map_or(true, |st| check_plays(&game, &r(st), &alg, q, Quantifier::AllIn).holds)
                && p2[q].strategy.as_ref().map_or(true, |st| !check_plays(&game, &r(st), &alg, q, Quantifier::ExistsIn).holds);
            f.record(ok_split && ok_strats, || format!("seed {s} node {q}: P1 {} P2 {}", p1[q].wins, p2[q].wins));
        }
    }
    Ok(f)
}

/// All total graphs on `1..=3` nodes with out-degree at most 2 over `{a, b}`,
/// rooted at node 0.
pub fn small_graphs() -> Vec<Game> {
    let mut out = Vec::new();
    for n in 1..=3usize {
        let moves: Vec<(usize, usize)> = (0..2).flat_map(|c| (0..n).map(move |t| (c, t))).collect();
        let mut choices: Vec<Vec<(usize, usize)>> = moves.iter().map(|&m| vec![m]).collect();
        for i in 0..moves.len() {
            for j in i + 1..moves.len() {
                choices.push(vec![moves[i], moves[j]]);
            }
        }
        let total = choices.len().pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let mut edges = Vec::new();
            for v in 0..n {
                for &(letter, tgt) in &choices[c % choices.len()] {
                    edges.push(Edge { src: v, letter: Some(letter), tgt });
                }
                c /= choices.len();
            }
            out.push(Game::new(vec![Player::P1; n], edges));
        }
    }
    out
}

/// `check_plays` against the normalised traces of all lassos with prefix and
/// cycle of at most `bound` edges, on [`small_graphs`] and the two-letter
/// corpus algebras with `|S_+| <= 4`. Witness plays must be real plays whose
/// trace has the reported membership.
pub fn check_plays_vs_lassos(bound: usize) -> Result<Finding> {
    let mut f = Finding::new("check_plays vs lasso enumeration");
    let algebras: Vec<(&str, WilkeAlgebra)> =
        fixtures::two_letter_corpus().into_iter().filter(|(_, a)| a.splus_len() <= 4).collect();
    for (gi, game) in small_graphs().iter().enumerate() {
        let traces = brute_force_lassos(game, 0, bound, bound);
        for (name, a) in &algebras {
            let member: Vec<bool> = traces.iter().map(|w| a.up_membership(w).expect("alphabet matches")).collect();
            for (quant, want) in [
                (Quantifier::AllIn, member.iter().all(|&m| m)),
                (Quantifier::ExistsIn, member.iter().any(|&m| m)),
            ] {
                let got = check_plays(game, &[], a, 0, quant);
                let witness_ok = got.witness.as_ref().map_or(true, |w| {
                    let trace_in = w.trace(game).and_then(|t| a.up_membership(&t).ok());
                    w.is_play_from(game, 0) && trace_in == Some(quant == Quantifier::ExistsIn)
                });
                f.record(got.holds == want && witness_ok, || format!("graph {gi} {name} {quant:?}: got {} want {want}", got.holds));
            }
        }
    }
    Ok(f)
}

/// With the `(abc)^ω` objective on random arenas over `{a, b, c}`: the
/// previous-label monitor wins exactly where some monitor of at most three
/// states wins, and positional wins on the state arena from `(c, v)` match
/// previous-label wins from `v` after `c` for the residual objective.
pub fn previous_label_memory(arenas: usize, max_nodes: usize, seed: u64) -> Result<Finding> {
    let mut f = Finding::new("previous-label memory");
    let alg = fixtures::abc_omega();
    let abc = alg.alphabet().clone();
    let prev = Monitor::previous_label(&abc);
    for i in 0..arenas {
        let s = seed.wrapping_add(i as u64);
        let arena = random_edge_arena(max_nodes, 3, 2, s);
        let game = arena.game();
        let by_prev = solve_monitor_memory(&game, &alg, &prev, Player::P1)?;
        for q in 0..game.len() {
            let small = solve_bounded_memory(&game, &alg, 3, &[q])?;
            f.record(by_prev[q].wins == small.is_some(), || {
                format!("seed {s} node {q}: previous-label {} three-state {}", by_prev[q].wins, small.is_some())
            });
        }
        let state = edge_to_state(&arena)?;
        let sgame = state.game();
        let positional = solve_positional(&sgame, &alg, Player::P1)?;
        for (x, (&c, name)) in state.label.iter().zip(&state.nodes).enumerate() {
            let v = arena.nodes.iter().position(|n| name.ends_with(&format!("@{n}"))).expect("named after its node");
            let residual = alg.with_accepting((0..alg.somega_len()).filter(|&y| alg.accepts(alg.mixed(alg.letter(c), y))));
            let mut after_c = prev.clone();
            after_c.initial = c + 1;
            let by_monitor = solve_monitor_memory(&game, &residual, &after_c, Player::P1)?;
            f.record(positional[x].wins == by_monitor[v].wins, || {
                format!("seed {s} state {name}: positional {} monitor {}", positional[x].wins, by_monitor[v].wins)
            });
        }
    }
    Ok(f)
}

/// Every separator annotation at depths `1..=depth` (capped per kind) agrees
/// with model checking.
pub fn separators(depth: &[(SeparatorKind, usize)]) -> Result<Finding> {
    let mut f = Finding::new("separators");
    for &(kind, max) in depth {
        for i in 1..=max.min(kind.max_depth()) {
            let s = build_separator(kind, i)?;
            let bad = s.verify()?;
            f.record(bad.is_empty(), || bad.join("; "));
        }
    }
    Ok(f)
}

fn random_formula(r: &mut impl Rng, kinds: &[TemplateKind], coalitions: &[Vec<&str>], depth: usize) -> StateFormula {
    const ATOMS: [&str; 3] = ["p", "q", "r"];
    let atom = |r: &mut dyn rand::RngCore| StateFormula::atom(ATOMS[r.gen_range(0..ATOMS.len())]);
    if depth == 0 {
        return atom(r);
    }
    match r.gen_range(0..6) {
        0 => StateFormula::not(random_formula(r, kinds, coalitions, depth - 1)),
        1 => StateFormula::or(random_formula(r, kinds, coalitions, depth - 1), random_formula(r, kinds, coalitions, depth - 1)),
        _ => {
            let kind = kinds[r.gen_range(0..kinds.len())];
            let args = (0..kind.arity()).map(|_| random_formula(r, kinds, coalitions, depth - 1)).collect();
            StateFormula::coal(&coalitions[r.gen_range(0..coalitions.len())], kind, args)
        }
    }
}

/// Both rewrite directions preserve truth sets on random two-agent CGSs.
/// Removing `GFFG`/`GFFGG` is only claimed for the grand coalition.
pub fn rewrites(structures: usize, seed: u64) -> Result<Finding> {
    use TemplateKind::*;
    let mut f = Finding::new("rewrites");
    let mut r = crate::random::rng(seed);
    let any: Vec<Vec<&str>> = vec![vec![], vec!["1"], vec!["2"], vec!["1", "2"]];
    let grand: Vec<Vec<&str>> = vec![vec!["1", "2"]];
    let plan = [
        (RewriteDirection::GuToGffgg, &[Next, Until, Release, Gu][..], &any),
        (RewriteDirection::GffggToGu, &[Next, Until, Release, Gffg, Gffgg][..], &grand),
    ];
    for i in 0..structures {
        let s = seed.wrapping_add(i as u64);
        let g = random_cgs(5, 2, 2, &["p", "q", "r"], s);
        for (dir, kinds, coalitions) in &plan {
            let phi = random_formula(&mut r, kinds, coalitions, 2);
            let psi = rewrite(&phi, *dir)?;
            let (a, b) = (model_check(&g, &phi, Semantics::Positional)?, model_check(&g, &psi, Semantics::Positional)?);
            f.record(a == b, || format!("seed {s} {dir:?}: {phi} on {a:?}, {psi} on {b:?}"));
        }
    }
    Ok(f)
}

/// For each template, positional model checking on random one-agent CGSs
/// matches a search over strategies with a two-state monitor.
pub fn positional_vs_monitor(structures: usize, seed: u64) -> Result<Finding> {
    let mut f = Finding::new("positional vs two-state memory");
    const ATOMS: [&str; 3] = ["p", "q", "r"];
    for i in 0..structures {
        let s = seed.wrapping_add(i as u64);
        let g = random_cgs(4, 1, 3, &ATOMS, s);
        for kind in TemplateKind::ALL {
            let w = kind.arity();
            let args = ATOMS[..w].iter().map(|p| StateFormula::atom(p)).collect();
            let phi = StateFormula::coal(&["1"], kind, args);
            let positional = model_check(&g, &phi, Semantics::Positional)?;
            let labels: Vec<usize> = (0..g.len())
                .map(|x| ATOMS[..w].iter().enumerate().fold(0, |acc, (j, p)| acc | (usize::from(g.props[x].contains(*p)) << j)))
                .collect();
            let game = coalition_game(&g, &[0], w, &labels).game();
            let alg = template_algebra(kind);
            for x in 0..g.len() {
                let memory = solve_bounded_memory(&game, &alg, 2, &[x])?.is_some();
                f.record(positional.contains(&x) == memory, || {
                    format!("seed {s} {kind:?} state {x}: positional {} memory {memory}", positional.contains(&x))
                });
            }
        }
    }
    Ok(f)
}

/// Two Rabin pairs encoded as coalition formulas over `u1 v1 u2 v2`: the
/// disjunction of verdicts matches a direct check of the Rabin algebra, where
/// `V_i` is the set of states without `v_i`.
pub fn rabin_encoding(structures: usize, seed: u64) -> Result<Finding> {
    let mut f = Finding::new("rabin encoding");
    const PROPS: [&str; 4] = ["u1", "v1", "u2", "v2"];
    let ab = Alphabet::truth_vectors(4);
    let with = |bit: usize, set: bool| (0..16).filter(|l| (l >> bit & 1 == 1) == set).collect::<Vec<usize>>();
    let pairs = [RabinPair { u: with(0, true), v: with(1, false) }, RabinPair { u: with(2, true), v: with(3, false) }];
    let alg = rabin_family(&ab, &pairs)?;
    let names: Vec<String> = PROPS.iter().map(|p| p.to_string()).collect();
    let formulas = encode_rabin(
        &[(names[0].clone(), names[1].clone()), (names[2].clone(), names[3].clone())],
        None,
        &["1".into()],
        &["1".into()],
    );
    for i in 0..structures {
        let s = seed.wrapping_add(i as u64);
        let g = random_cgs(5, 1, 3, &PROPS, s);
        let label: Vec<usize> = (0..g.len())
            .map(|x| PROPS.iter().enumerate().fold(0, |acc, (j, p)| acc | (usize::from(g.props[x].contains(*p)) << j)))
            .collect();
        let edges = (0..g.len())
            .flat_map(|x| g.successors(x).into_iter().map(move |t| (x, t)))
            .map(|(x, t)| Edge { src: x, letter: Some(label[x]), tgt: t })
            .collect();
        let game = Game::new(vec![Player::P1; g.len()], edges);
        let mut encoded = BTreeSet::new();
        for phi in &formulas {
            encoded.extend(model_check(&g, phi, Semantics::Positional)?);
        }
        for x in 0..g.len() {
            let direct = check_plays(&game, &[], &alg, x, Quantifier::ExistsIn).holds;
            f.record(encoded.contains(&x) == direct, || format!("seed {s} state {x}: encoded {} direct {direct}", encoded.contains(&x)));
        }
    }
    Ok(f)
}

/// Word-level reading of the closure conditions: `u, y` range over words of
/// length at most `max`, `v, w, x` over non-empty ones.
pub fn word_closure_conditions(a: &WilkeAlgebra, mode: ClosureMode, max: usize) -> Result<(bool, bool)> {
    let k = a.alphabet().len();
    let all = Word::all_up_to(k, 0, max);
    let plus = Word::all_up_to(k, 1, max);
    let mem = |p: Word, c: Word| -> Result<bool> { a.up_membership(&UpWord::new(p, c)?) };
    let head = |w: &Word| w.letters().first().copied();
    let branches = mode != ClosureMode::Edge;

    let mut cond1 = true;
    'c1: for u in &all {
        for v in &plus {
            for w in plus.iter().filter(|w| !branches || head(v) == head(w)) {
                for x in &plus {
                    if mem(u.concat(v).concat(w), x.clone())?
                        && !mem(u.clone(), v.clone())?
                        && !mem(u.concat(w), x.clone())?
                    {
                        cond1 = false;
                        break 'c1;
                    }
                }
            }
        }
    }
    let mut cond2 = true;
    'c2: for u in &all {
        for v in &plus {
            for w in &plus {
                if mem(u.concat(v), w.clone())? {
                    continue;
                }
                for y in &all {
                    let related = match mode {
                        ClosureMode::Edge => true,
                        ClosureMode::StateBranching if !y.is_empty() => head(w) == head(y),
                        _ => head(v) == head(w),
                    };
                    if !related || !mem(u.clone(), v.concat(w).concat(y))? {
                        continue;
                    }
                    let second = if mode == ClosureMode::StateAlt { w.concat(y) } else { v.concat(y) };
                    if !mem(u.clone(), second)? {
                        cond2 = false;
                        break 'c2;
                    }
                }
            }
        }
    }
    Ok((cond1, cond2))
}

/// Algebra-level closure verdicts equal the word-level ones on every
/// two-letter corpus algebra, in every mode.
pub fn closure_conditions_vs_words(max: usize) -> Result<Finding> {
    let mut f = Finding::new("closure conditions vs words");
    let modes = [ClosureMode::Edge, ClosureMode::State, ClosureMode::StateAlt, ClosureMode::StateBranching];
    for fx in fixtures::corpus().into_iter().filter(|fx| fx.algebra.alphabet().len() == 2) {
        for mode in modes {
            let alg = check_closure_conditions(&fx.algebra, mode)?;
            let words = word_closure_conditions(&fx.algebra, mode, max)?;
            f.record((alg.cond1, alg.cond2) == words, || {
                format!("{} {mode:?}: algebra {:?} words {words:?}", fx.name, (alg.cond1, alg.cond2))
            });
        }
    }
    Ok(f)
}

/// Positionality in either sense implies an aperiodic syntactic algebra, on
/// the corpus and on `random` algebras with `|S_+| ≤ max_splus`; `fa_fb` is
/// aperiodic without being positional.
pub fn aperiodicity(random: usize, max_splus: usize, seed: u64) -> Result<Finding> {
    let mut f = Finding::new("positional implies aperiodic");
    let corpus = fixtures::corpus().into_iter().map(|fx| (fx.name.to_string(), fx.algebra));
    let generated = (0..random as u64).map(|i| {
        let s = seed.wrapping_add(i);
        (format!("random seed {s}"), random_trim_algebra(max_splus, s))
    });
    for (name, a) in corpus.chain(generated) {
        let r = classify(&a)?;
        f.record(!(r.edge_positional || r.state_positional) || r.aperiodic_syntactic, || {
            format!("{name}: edge {} state {} but not aperiodic", r.edge_positional, r.state_positional)
        });
    }
    let r = classify(&fixtures::fa_fb())?;
    f.record(r.aperiodic_syntactic && !r.edge_positional, || "fa_fb is not an aperiodic non-positional witness".into());
    Ok(f)
}

/// The corpus classification table, plus the three-element residual chain of
/// `g_p_or_xp` and the incomparable residuals of `aw_bw`.
pub fn classification_table() -> Result<Finding> {
    let mut f = Finding::new("classification table");
    for fx in fixtures::corpus() {
        let r = classify(&fx.algebra)?;
        let e = &fx.expected;
        let got = [r.prefix_independent, r.one_player_positional, r.edge_positional, r.state_positional, r.aperiodic_syntactic];
        let want = [e.prefix_independent, e.one_player_positional, e.edge_positional, e.state_positional, e.aperiodic_syntactic];
        f.record(got == want, || format!("{}: got {got:?} want {want:?}", fx.name));
    }
    let chain = residuals(&fixtures::g_p_or_xp(), false)?;
    f.record(chain.totally_ordered && chain.distinct() == 3, || format!("g_p_or_xp residuals: {}", chain.distinct()));
    let r = classify(&fixtures::aw_bw())?;
    f.record(r.one_player_positional && !r.edge_positional && r.counterexamples.contains_key("residual_order"), || {
        "aw_bw should fail only on residual order".into()
    });
    Ok(f)
}

/// On prefix-independent corpus algebras the full edge check agrees with the
/// `(uv)^ω` check.
pub fn prefix_independent_check() -> Result<Finding> {
    let mut f = Finding::new("prefix-independent positionality");
    for fx in fixtures::corpus() {
        if !is_prefix_independent(&fx.algebra)?.0 {
            continue;
        }
        let full = classify(&fx.algebra)?.edge_positional;
        let short = check_prefix_independent_positionality(&fx.algebra)?.0;
        f.record(full == short, || format!("{}: full {full} (uv)^ω {short}", fx.name));
    }
    Ok(f)
}

fn one_player(a: &WilkeAlgebra) -> Result<bool> {
    let c = check_closure_conditions(a, ClosureMode::Edge)?;
    Ok(c.cond1 && c.cond2)
}

/// Two-letter algebras for union checks: the corpus plus SR and FG families.
pub fn union_pool() -> Result<Vec<(String, WilkeAlgebra)>> {
    let ab = Alphabet::from_chars("ab");
    let mut pool: Vec<(String, WilkeAlgebra)> = fixtures::two_letter_corpus()
        .into_iter()
        .filter(|(_, a)| a.alphabet() == &ab)
        .map(|(n, a)| (n.to_string(), a))
        .collect();
    for (s, d) in [(0, "bb"), (0, "b"), (1, "aa"), (1, "aaa")] {
        let fam = SrFamily::new([s], AntiDictionary::parse(ab.clone(), &[d])?)?;
        pool.push((format!("sr {}/{d}", ab.name(s)), syntactic_quotient(&dpa_to_wilke(&sr_to_dpa(&fam))?)?));
    }
    for sets in [&["a"][..], &["b"], &["a", "b"], &["ab"]] {
        let fam = FgFamily::parse(ab.clone(), sets)?;
        pool.push((format!("fg {sets:?}"), fg_algebra(&fam)?));
    }
    Ok(pool)
}

/// Unions of one-player positional algebras stay one-player positional on
/// `random` pairs, and the union of a positional algebra with a
/// prefix-independent positional one stays positional on up to
/// `corpus_pairs` pool pairs.
pub fn unions(random: usize, corpus_pairs: usize, seed: u64) -> Result<Finding> {
    let mut f = Finding::new("unions");
    let mut s = seed;
    let mut draw = |want: usize| -> Result<WilkeAlgebra> {
        loop {
            s = s.wrapping_add(1);
            let a = random_trim_algebra(6, s);
            if a.alphabet().len() == want && one_player(&a)? {
                return Ok(a);
            }
        }
    };
    for i in 0..random {
        let letters = 2 + i % 2;
        let (a, b) = (draw(letters)?, draw(letters)?);
        let u = boolean_combine(&a, &b, BoolOp::Union)?;
        f.record(one_player(&u)?, || format!("random pair {i}: union fails the closure conditions"));
    }

    let pool = union_pool()?;
    let reports = pool.iter().map(|(_, a)| classify(a)).collect::<Result<Vec<_>>>()?;
    let mut done = 0;
    'pairs: for (i, (n1, a)) in pool.iter().enumerate() {
        for (j, (n2, b)) in pool.iter().enumerate() {
            if done == corpus_pairs {
                break 'pairs;
            }
            if i == j || !reports[i].edge_positional || !(reports[j].edge_positional && reports[j].prefix_independent) {
                continue;
            }
            done += 1;
            let u = classify(&boolean_combine(a, b, BoolOp::Union)?)?;
            f.record(u.edge_positional, || format!("{n1} ∪ {n2} is not positional"));
        }
    }
    Ok(f)
}

/// Thirty SR families over `a, b, c` with small random anti-dictionaries.
pub fn sr_family_corpus(seed: u64) -> Result<Vec<SrFamily>> {
    let abc = Alphabet::from_chars("abc");
    let mut r = crate::random::rng(seed);
    let mut out: Vec<SrFamily> = Vec::new();
    while out.len() < 30 {
        let s: Vec<usize> = (0..3).filter(|_| r.gen_bool(0.5)).collect();
        if s.is_empty() {
            continue;
        }
        let rest: Vec<usize> = (0..3).filter(|a| !s.contains(a)).collect();
        let words: Vec<Word> = if rest.is_empty() {
            Vec::new()
        } else {
            (0..r.gen_range(1..=2))
                .map(|_| Word((0..r.gen_range(1..=3)).map(|_| rest[r.gen_range(0..rest.len())]).collect()))
                .collect()
        };
        let fam = SrFamily::new(s, AntiDictionary::new(abc.clone(), words)?)?;
        if !out.contains(&fam) {
            out.push(fam);
        }
    }
    Ok(out)
}

/// SR families: automaton agreement on random words, positionality when the
/// anti-dictionary is ordered, and the dictionary-level order test against
/// the automaton-level one.
pub fn families(words_per_family: usize, seed: u64) -> Result<Finding> {
    let mut f = Finding::new("families");
    for (i, fam) in sr_family_corpus(seed)?.iter().enumerate() {
        let d = sr_to_dpa(fam);
        for w in random_up_words(3, words_per_family, 6, 6, seed.wrapping_add(i as u64)) {
            let want = sr_membership(fam, &w);
            f.record(dpa_up_membership(&d, &w)? == want, || format!("family {i} word {w:?}"));
        }
        if antidict_totally_ordered(fam.antidict())?.0 {
            let r = classify(&dpa_to_wilke(&d)?)?;
            f.record(r.prefix_independent && r.edge_positional, || format!("family {i} is ordered but not positional"));
        }
    }

    // every minimal dictionary of words of length ≤ 3 over a, b
    let ab = Alphabet::from_chars("ab");
    let words = Word::all_up_to(2, 1, 3);
    for mask in 0u32..1 << words.len() {
        let chosen: Vec<Word> = (0..words.len()).filter(|i| mask >> i & 1 == 1).map(|i| words[i].clone()).collect();
        let minimal = chosen
            .iter()
            .enumerate()
            .all(|(i, u)| chosen.iter().enumerate().all(|(j, v)| i == j || !subword_leq(u.letters(), v.letters())));
        if !minimal {
            continue;
        }
        let d = AntiDictionary::new(ab.clone(), chosen)?;
        let (dict, _) = antidict_totally_ordered(&d)?;
        let dfa = dfa_residual_order(&subseq_dfa(&d));
        f.record(dict == dfa, || format!("{:?}: dictionary {dict} automaton {dfa}", d.words()));
    }

    // singletons of length ≤ 4, and their extensions by one letter
    let abc = Alphabet::from_chars("abc");
    for w in Word::all_up_to(3, 1, 4) {
        let d = AntiDictionary::new(abc.clone(), vec![w.clone()])?;
        f.record(antidict_totally_ordered(&d)?.0, || format!("singleton {w:?}"));
        for a in 0..3 {
            let e = antidict_extend_letter(&d, a)?;
            f.record(antidict_totally_ordered(&e)?.0, || format!("singleton {w:?} extended by {a}"));
        }
    }
    Ok(f)
}

/// Over the letters `S_+ × S_+` of `gf_a`, some accepting set of the product
/// gives a prefix-independent language that is not positional.
pub fn product_sanity() -> Result<Finding> {
    let mut f = Finding::new("product of gf_a with itself");
    let s = fixtures::gf_a();
    let n = s.splus_len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let names: Vec<String> = pairs.iter().map(|&(x, y)| format!("{}|{}", s.splus_names()[x], s.splus_names()[y])).collect();
    let p = product_with_images(&s, &s, Alphabet::new(names)?, pairs)?;
    let m = p.somega_pairs().len();
    let mut found = None;
    for acc in 0u32..1 << m {
        let a = p.with_accepting(|x, y| {
            let k = p.somega_pairs().iter().position(|&q| q == (x, y)).expect("listed");
            acc >> k & 1 == 1
        });
        if is_prefix_independent(&a)?.0 && !check_prefix_independent_positionality(&a)?.0 {
            found = Some(acc);
            break;
        }
    }
    f.record(found.is_some(), || "every prefix-independent language of the product is positional".into());
    Ok(f)
}

pub type CheckFn = fn(u64) -> Result<Finding>;

/// Every cross-check at its default size, keyed by name; each takes a seed.
pub fn suite() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("classification-table", |_| classification_table()),
        ("closure-vs-words", |_| closure_conditions_vs_words(3)),
        ("aperiodicity", |s| aperiodicity(100, 6, s)),
        ("prefix-independent", |_| prefix_independent_check()),
        ("unions", |s| unions(200, 50, s)),
        ("families", |s| families(1000, s)),
        ("product", |_| product_sanity()),
        ("gadgets", |_| gadgets(3)),
        ("determinacy-rabin", |s| determinacy(100, 5, 3, s)),
        ("determinacy-parity", |s| determinacy(100, 5, 4, s.wrapping_add(100))),
        ("plays-vs-lassos", |_| check_plays_vs_lassos(6)),
        ("previous-label", |s| previous_label_memory(100, 4, s)),
        ("separators", |_| separators(&[(SeparatorKind::Gffg, 4), (SeparatorKind::Gu, 3), (SeparatorKind::Gfgf, 4)])),
        ("rewrites", |s| rewrites(100, s)),
        ("positional-vs-memory", |s| positional_vs_monitor(50, s)),
        ("rabin-encoding", |s| rabin_encoding(50, s)),
    ]
}
