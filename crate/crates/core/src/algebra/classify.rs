use std::collections::BTreeMap;

use serde::Serialize;

use super::checks::{
    check_closure_conditions, is_aperiodic, is_prefix_independent, residuals, ClosureMode,
};
use super::{syntactic_quotient, WilkeAlgebra, Witness};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub prefix_independent: bool,
    pub one_player_positional: bool,
    pub edge_positional: bool,
    pub state_positional: bool,
    pub aperiodic_syntactic: bool,
    /// Distinct global residuals.
    pub residual_count: usize,
    pub counterexamples: BTreeMap<String, Witness>,
}

/// Runs every check. State positionality uses [`ClosureMode::StateBranching`].
pub fn classify(a: &WilkeAlgebra) -> Result<ClassificationReport> {
    let violations = a.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidAlgebra(violations));
    }
    let mut cx = BTreeMap::new();
    let mut note = |key: &str, w: Option<Witness>| {
        if let Some(w) = w {
            cx.insert(key.to_string(), w);
        }
    };

    let (prefix_independent, w) = is_prefix_independent(a)?;
    note("prefix_independent", w);

    let global = residuals(a, false)?;
    note("residual_order", global.groups[0].witness.clone());
    let per_letter = residuals(a, true)?;
    note("letter_residual_order", per_letter.groups.iter().find_map(|g| g.witness.clone()));

    let edge = check_closure_conditions(a, ClosureMode::Edge)?;
    note("edge_condition1", edge.witness1.clone());
    note("edge_condition2", edge.witness2.clone());
    let state = check_closure_conditions(a, ClosureMode::StateBranching)?;
    note("state_condition1", state.witness1.clone());
    note("state_condition2", state.witness2.clone());

    let quotient = syntactic_quotient(a)?;
    let (aperiodic_syntactic, w) = is_aperiodic(&quotient);
    note("aperiodic", w);

    let one_player_positional = edge.cond1 && edge.cond2;
    Ok(ClassificationReport {
        prefix_independent,
        one_player_positional,
        edge_positional: global.totally_ordered && one_player_positional,
        state_positional: per_letter.totally_ordered && state.cond1 && state.cond2,
        aperiodic_syntactic,
        residual_count: global.distinct(),
        counterexamples: cx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_prefix_independent_positionality;
    use crate::fixtures;

    #[test]
    fn fixture_table() {
        for fx in fixtures::corpus() {
            let r = classify(&fx.algebra).unwrap();
            let e = &fx.expected;
            let got = (r.prefix_independent, r.one_player_positional, r.edge_positional, r.state_positional, r.aperiodic_syntactic);
            let want = (e.prefix_independent, e.one_player_positional, e.edge_positional, e.state_positional, e.aperiodic_syntactic);
            assert_eq!(got, want, "{}", fx.name);
        }
    }

    #[test]
    fn report_invariants() {
        for fx in fixtures::corpus() {
            let r = classify(&fx.algebra).unwrap();
            assert!(!r.edge_positional || r.one_player_positional, "{}", fx.name);
            assert!(!r.edge_positional || r.state_positional, "{}", fx.name);
            if r.prefix_independent {
                let (pip, _) = check_prefix_independent_positionality(&fx.algebra).unwrap();
                assert_eq!(pip, r.edge_positional, "{}", fx.name);
            }
        }
    }

    #[test]
    fn invalid_algebra_rejected() {
        let a = fixtures::gf_a();
        let broken = WilkeAlgebra::new(
            a.alphabet().clone(),
            a.splus_names().to_vec(),
            a.somega_names().to_vec(),
            vec![vec![0, 0], vec![0, 1]],
            vec![vec![0, 0], vec![0, 1]],
            vec![1, 1],
            a.letter_images().to_vec(),
            vec![0],
        )
        .unwrap();
        assert!(matches!(classify(&broken), Err(Error::InvalidAlgebra(_))));
    }
}
