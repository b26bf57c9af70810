use super::formula::{PathFormula, StateFormula, TemplateKind};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteDirection {
    /// `⟨C⟩G(ψ U φ)` becomes `⟨C⟩(GFφ ∧ FG⊤ ∧ G(ψ ∨ φ))`.
    GuToGffgg,
    /// `⟨C⟩(GFψ ∧ FGφ ∧ Gφ')` becomes `⟨C⟩(φ' U ⟨C⟩G((φ ∧ φ') U (ψ ∧ φ ∧ φ')))`.
    GffggToGu,
}

impl RewriteDirection {
    fn source(self) -> &'static [TemplateKind] {
        match self {
            RewriteDirection::GuToGffgg => &[TemplateKind::Next, TemplateKind::Until, TemplateKind::Release, TemplateKind::Gu],
            RewriteDirection::GffggToGu => {
                &[TemplateKind::Next, TemplateKind::Until, TemplateKind::Release, TemplateKind::Gffg, TemplateKind::Gffgg]
            }
        }
    }
}

pub fn rewrite(f: &StateFormula, direction: RewriteDirection) -> Result<StateFormula> {
    if let Some(k) = f.templates().into_iter().find(|k| !direction.source().contains(k)) {
        return Err(Error::Fragment(format!("{} is outside the source fragment of {direction:?}", k.name())));
    }
    Ok(go(f, direction))
}

fn go(f: &StateFormula, d: RewriteDirection) -> StateFormula {
    use StateFormula as S;
    match f {
        S::True | S::False | S::Atom(_) => f.clone(),
        S::Not(a) => S::not(go(a, d)),
        S::Or(a, b) => S::or(go(a, d), go(b, d)),
        S::And(a, b) => S::and(go(a, d), go(b, d)),
        S::Coal(c, p) => {
            let args: Vec<StateFormula> = p.args.iter().map(|a| go(a, d)).collect();
            let coal = |kind, args| S::Coal(c.clone(), Box::new(PathFormula { kind, args }));
            match (d, p.kind, args.as_slice()) {
                (RewriteDirection::GuToGffgg, TemplateKind::Gu, [psi, phi]) => {
                    coal(TemplateKind::Gffgg, vec![phi.clone(), S::True, S::or(psi.clone(), phi.clone())])
                }
                (RewriteDirection::GffggToGu, TemplateKind::Gffg, [psi, phi]) => gffgg_to_gu(&coal, psi, phi, &S::True),
                (RewriteDirection::GffggToGu, TemplateKind::Gffgg, [psi, phi, safe]) => gffgg_to_gu(&coal, psi, phi, safe),
                _ => coal(p.kind, args),
            }
        }
    }
}

fn gffgg_to_gu(
    coal: &dyn Fn(TemplateKind, Vec<StateFormula>) -> StateFormula,
    psi: &StateFormula,
    phi: &StateFormula,
    safe: &StateFormula,
) -> StateFormula {
    let stay = StateFormula::and(phi.clone(), safe.clone());
    let goal = StateFormula::and(psi.clone(), stay.clone());
    let inner = coal(TemplateKind::Gu, vec![stay, goal]);
    coal(TemplateKind::Until, vec![safe.clone(), inner])
}

/// One coalition formula per Rabin pair `(u_i, v_i)`, read as `GF u_i ∧ FG v_i`
/// and conjoined with `G w` when a safety proposition is given. Their
/// disjunction encodes the condition when the coalition is all agents.
pub fn encode_rabin(pairs: &[(String, String)], safety: Option<&str>, coalition: &[String], agents: &[String]) -> Vec<StateFormula> {
    let proper = agents.iter().any(|a| !coalition.contains(a));
    if proper && pairs.len() > 1 {
        log::warn!("disjunction over coalition formulas need not match the Rabin condition for a proper coalition");
    }
    let c: Vec<&str> = coalition.iter().map(String::as_str).collect();
    pairs
        .iter()
        .map(|(u, v)| {
            let (u, v) = (StateFormula::atom(u), StateFormula::atom(v));
            match safety {
                None => StateFormula::coal(&c, TemplateKind::Gffg, vec![u, v]),
                Some(w) => StateFormula::coal(&c, TemplateKind::Gffgg, vec![u, v, StateFormula::atom(w)]),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> StateFormula {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        let f = rewrite(&parse("(coal (1) (gu p q))"), RewriteDirection::GuToGffgg).unwrap();
        assert_eq!(f, parse("(coal (1) (gffgg q true (or p q)))"));
        let g = rewrite(&parse("(coal (1) (gffgg p q r))"), RewriteDirection::GffggToGu).unwrap();
        assert_eq!(g, parse("(coal (1) (until r (coal (1) (gu (and q r) (and p (and q r))))))"));
        assert!(rewrite(&parse("(coal (1) (gxor p))"), RewriteDirection::GuToGffgg).is_err());
        assert!(rewrite(&parse("(coal (1) (gu p q))"), RewriteDirection::GffggToGu).is_err());
    }

    #[test]
    fn rabin_shapes() {
        let one = vec![("u1".to_string(), "v1".to_string())];
        let ag = vec!["1".to_string()];
        assert_eq!(encode_rabin(&one, None, &ag, &ag), vec![parse("(coal (1) (gffg u1 v1))")]);
        assert_eq!(encode_rabin(&one, Some("w"), &ag, &ag), vec![parse("(coal (1) (gffgg u1 v1 w))")]);
    }

    #[test]
    fn removing_gffgg_needs_the_grand_coalition() {
        use crate::atl::{model_check, Cgs, Semantics};
        // agent 2 keeps s looping or leaves through t, where q fails, to u
        let props = |ps: &[&str]| ps.iter().map(|p| p.to_string()).collect();
        let stay_or_go = vec![vec!["a".to_string()], vec!["stay".to_string(), "go".to_string()]];
        let only = vec![vec!["a".to_string()], vec!["a".to_string()]];
        let g = Cgs::new(
            vec!["s".into(), "t".into(), "u".into()],
            vec![props(&["p", "q", "r"]), props(&["p", "r"]), props(&["p", "q", "r"])],
            vec!["1".into(), "2".into()],
            vec![stay_or_go, only.clone(), only],
            vec![vec![Some(0), Some(1)], vec![Some(2)], vec![Some(2)]],
        )
        .unwrap();
        let check = |f: &StateFormula| model_check(&g, f, Semantics::Positional).unwrap();
        for (coalition, same) in [("1", false), ("1 2", true)] {
            let f = parse(&format!("(coal ({coalition}) (gffgg p q r))"));
            let r = rewrite(&f, RewriteDirection::GffggToGu).unwrap();
            assert_eq!(check(&f) == check(&r), same, "{coalition}");
        }
    }
}
