use std::collections::BTreeSet;

use super::cgs::{expand, Cgs, CoalitionArena};
use super::formula::{PathFormula, StateFormula};
use super::templates::template_algebra;
use crate::error::{Error, Result};
use crate::games::{check_plays, Game, Player, Quantifier, StrategySearch};
use crate::words::Alphabet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semantics {
    /// The coalition plays positionally; the opponents play arbitrarily.
    Positional,
    /// Both sides play positionally.
    Bipositional,
}

/// Turn-based expansion for `coalition` (agent indices) with each state
/// labelled by the truth vector `labels[state]` over `width` subformulas.
pub fn coalition_game(cgs: &Cgs, coalition: &[usize], width: usize, labels: &[usize]) -> CoalitionArena {
    expand(cgs, coalition, Alphabet::truth_vectors(width), labels)
}

fn strategy_cap() -> usize {
    crate::cap_from_env("POSLAB_CAP", crate::games::DEFAULT_STRATEGY_CAP)
}

/// The set of states satisfying `f`.
pub fn model_check(cgs: &Cgs, f: &StateFormula, semantics: Semantics) -> Result<BTreeSet<usize>> {
    Ok(eval(cgs, f, semantics)?.iter().enumerate().filter(|(_, &b)| b).map(|(x, _)| x).collect())
}

pub fn holds_at(cgs: &Cgs, f: &StateFormula, state: usize, semantics: Semantics) -> Result<bool> {
    Ok(eval(cgs, f, semantics)?[state])
}

fn eval(cgs: &Cgs, f: &StateFormula, sem: Semantics) -> Result<Vec<bool>> {
    let n = cgs.len();
    Ok(match f {
        StateFormula::True => vec![true; n],
        StateFormula::False => vec![false; n],
        StateFormula::Atom(p) => cgs.props.iter().map(|s| s.contains(p)).collect(),
        StateFormula::Not(a) => eval(cgs, a, sem)?.into_iter().map(|b| !b).collect(),
        StateFormula::Or(a, b) => eval(cgs, a, sem)?.into_iter().zip(eval(cgs, b, sem)?).map(|(x, y)| x || y).collect(),
        StateFormula::And(a, b) => eval(cgs, a, sem)?.into_iter().zip(eval(cgs, b, sem)?).map(|(x, y)| x && y).collect(),
        StateFormula::Coal(agents, path) => {
            let coalition = agents
                .iter()
                .map(|a| cgs.agent_index(a).map_err(|_| Error::Fragment(format!("agent {a:?} is not in the structure"))))
                .collect::<Result<BTreeSet<usize>>>()?;
            let coalition: Vec<usize> = coalition.into_iter().collect();
            coalition_truth(cgs, &coalition, path, sem)?
        }
    })
}

fn coalition_truth(cgs: &Cgs, coalition: &[usize], path: &PathFormula, sem: Semantics) -> Result<Vec<bool>> {
    let args = path.args.iter().map(|a| eval(cgs, a, sem)).collect::<Result<Vec<_>>>()?;
    let labels: Vec<usize> =
        (0..cgs.len()).map(|x| args.iter().enumerate().fold(0, |acc, (j, v)| acc | (usize::from(v[x]) << j))).collect();
    let arena = coalition_game(cgs, coalition, path.kind.arity(), &labels);
    let game = arena.game();
    let alg = template_algebra(path.kind);
    let p1_branches = (0..game.len()).any(|v| game.owner[v] == Player::P1 && game.out[v].len() > 1);
    let p2_branches = (0..game.len()).any(|v| game.owner[v] == Player::P2 && game.out[v].len() > 1);
    let cap = strategy_cap();
    (0..cgs.len())
        .map(|x| {
            if !p1_branches {
                return Ok(opponent_check(&game, &vec![None; game.len()], &alg, x, sem, cap)?);
            }
            if !p2_branches {
                // one-player game whose labels sit on states: every template is
                // one-player positional there, so a winning play suffices
                return Ok(check_plays(&game, &[], &alg, x, Quantifier::ExistsIn).holds);
            }
            let mut err = None;
            let mut search = StrategySearch::new(&game, Player::P1, cap, |c: &[Option<usize>]| {
                match opponent_check(&game, c, &alg, x, sem, cap) {
                    Ok(b) => b,
                    Err(e) => {
                        err.get_or_insert(e);
                        true
                    }
                }
            });
            let found = search.run(&[x])?.is_some();
            match err {
                Some(e) => Err(e),
                None => Ok(found),
            }
        })
        .collect()
}

/// Do all opponent behaviours against the fixed coalition choice `c` produce
/// traces in the objective? Under bipositional semantics only positional
/// opponent strategies count.
fn opponent_check(
    game: &Game,
    c: &[Option<usize>],
    alg: &crate::algebra::WilkeAlgebra,
    x: usize,
    sem: Semantics,
    cap: usize,
) -> Result<bool> {
    match sem {
        Semantics::Positional => Ok(check_plays(game, c, alg, x, Quantifier::AllIn).holds),
        Semantics::Bipositional => {
            let mut search = StrategySearch::new(game, Player::P2, cap, |d: &[Option<usize>]| {
                let both: Vec<Option<usize>> = c.iter().zip(d).map(|(a, b)| a.or(*b)).collect();
                !check_plays(game, &both, alg, x, Quantifier::AllIn).holds
            });
            Ok(search.run(&[x])?.is_none())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atl::TemplateKind;

    fn props(ps: &[&[&str]]) -> Vec<BTreeSet<String>> {
        ps.iter().map(|s| s.iter().map(|p| p.to_string()).collect()).collect()
    }

    fn line() -> Cgs {
        // x(p) -> y(q) -> y, x -> x
        Cgs::from_graph(vec!["x".into(), "y".into()], props(&[&["p"], &["q"]]), &[vec![0, 1], vec![1]]).unwrap()
    }

    #[test]
    fn empty_coalition_until_p_p_is_p() {
        let g = line();
        let f = StateFormula::coal(&[], TemplateKind::Until, vec![StateFormula::atom("p"), StateFormula::atom("p")]);
        assert_eq!(model_check(&g, &f, Semantics::Positional).unwrap(), BTreeSet::from([0]));
    }

    #[test]
    fn single_agent_choices() {
        let g = line();
        let eventually_q = StateFormula::coal(&["1"], TemplateKind::Until, vec![StateFormula::True, StateFormula::atom("q")]);
        assert_eq!(model_check(&g, &eventually_q, Semantics::Positional).unwrap(), BTreeSet::from([0, 1]));
        let forced = StateFormula::coal(&[], TemplateKind::Until, vec![StateFormula::True, StateFormula::atom("q")]);
        assert_eq!(model_check(&g, &forced, Semantics::Positional).unwrap(), BTreeSet::from([1]));
        let stay_p = StateFormula::coal(&["1"], TemplateKind::Gffgg, vec![StateFormula::True, StateFormula::True, StateFormula::atom("p")]);
        assert_eq!(model_check(&g, &stay_p, Semantics::Bipositional).unwrap(), BTreeSet::from([0]));
    }

    #[test]
    fn two_agent_matching_pennies() {
        // agent 1 picks h/t, agent 2 picks h/t; equal goes to win(p), else lose
        let transition = vec![vec![Some(1), Some(2), Some(2), Some(1)], vec![Some(1)], vec![Some(2)]];
        let ht = || vec!["h".to_string(), "t".to_string()];
        let g = Cgs::new(
            vec!["s".into(), "win".into(), "lose".into()],
            props(&[&[], &["p"], &[]]),
            vec!["1".into(), "2".into()],
            vec![vec![ht(), ht()], vec![vec!["-".into()], vec!["-".into()]], vec![vec!["-".into()], vec!["-".into()]]],
            transition,
        )
        .unwrap();
        let reach = |c: &[&str]| StateFormula::coal(c, TemplateKind::Until, vec![StateFormula::True, StateFormula::atom("p")]);
        for sem in [Semantics::Positional, Semantics::Bipositional] {
            assert!(!holds_at(&g, &reach(&["1"]), 0, sem).unwrap());
            assert!(!holds_at(&g, &reach(&["2"]), 0, sem).unwrap());
            assert!(holds_at(&g, &reach(&["1", "2"]), 0, sem).unwrap());
        }
        let bad = StateFormula::coal(&["3"], TemplateKind::Next, vec![StateFormula::True]);
        assert!(matches!(model_check(&g, &bad, Semantics::Positional), Err(Error::Fragment(_))));
    }
}
