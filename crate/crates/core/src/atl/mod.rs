//! Concurrent game structures and the positional fragments of ATL*: state
//! formulas built from atoms, Boolean connectives and coalition modalities
//! over a fixed set of path templates.

mod check;
mod cgs;
mod formula;
mod rewrite;
mod separators;
mod templates;

pub use cgs::{Cgs, CoalitionArena};
pub use check::{coalition_game, holds_at, model_check, Semantics};
pub use formula::{PathFormula, StateFormula, TemplateKind};
pub use rewrite::{encode_rabin, rewrite, RewriteDirection};
pub use separators::{build_separator, gfgf_dpa, Separator, SeparatorKind};
pub use templates::{eval_path_on_lasso, template_algebra, template_dpa};
