//! Positionality of ω-regular objectives.
//!
//! Languages are carried by finite Wilke algebras ([`algebra::WilkeAlgebra`]).
//! On top of them the crate decides positionality over edge- and
//! state-labelled arenas, prefix independence and aperiodicity, solves small
//! games with positional and monitor-memory strategies, and model-checks the
//! positional fragments of ATL*.

pub mod algebra;
pub mod atl;
pub mod automata;
pub mod error;
pub mod families;
pub mod fixtures;
pub mod format;
pub mod games;
pub mod oracle;
pub mod random;
pub mod words;

pub use error::{Error, Result};

/// Reads a positive cap from the environment, falling back to `default`.
pub fn cap_from_env(var: &str, default: usize) -> usize {
    match std::env::var(var) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => n,
            _ => {
                log::warn!("ignoring {var}={v:?}: expected a positive integer");
                default
            }
        },
        Err(_) => default,
    }
}
