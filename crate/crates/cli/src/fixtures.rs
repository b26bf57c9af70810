//! The shipped fixture corpus, generated from the library.

use poslab::atl::{build_separator, SeparatorKind};
use poslab::fixtures;
use poslab::format::{algebra_to_json, arena_doc, cgs_doc, dpa_to_json, to_json};
use poslab::games::{build_gadget, GadgetParams};
use poslab::oracle::gadget_instances;
use poslab::words::Alphabet;
use poslab::Result;
use serde_json::json;

/// `(file name, contents)` for every fixture, in a fixed order.
pub fn files() -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for fx in fixtures::corpus() {
        out.push((format!("{}.algebra.json", fx.name), algebra_to_json(&fx.algebra)?));
    }
    for (name, d) in fixtures::dpa_corpus() {
        out.push((format!("{name}.dpa.json"), dpa_to_json(&d)?));
    }
    let ab = Alphabet::from_chars("ab");
    for (kind, params, objective, _) in gadget_instances() {
        let g = build_gadget(&ab, &GadgetParams::parse(kind, &ab, params)?)?;
        let mut doc = arena_doc(&g.arena);
        let starts: Vec<&str> = g.starts.iter().map(|&s| g.arena.nodes()[s].as_str()).collect();
        doc.annotations = Some(json!({ "params": params, "objective": objective, "starts": starts }));
        out.push((format!("{}.arena.json", kind.name()), to_json(&doc)?));
    }
    for (kind, max) in [(SeparatorKind::Gffg, 4), (SeparatorKind::Gu, 3), (SeparatorKind::Gfgf, 4)] {
        for i in 1..=max {
            let s = build_separator(kind, i)?;
            let mut doc = cgs_doc(&s.cgs);
            doc.annotations = Some(json!({
                "formula": s.formula().map(|f| f.to_string()),
                "satisfied": s.satisfied,
                "violated": s.violated,
            }));
            out.push((format!("{}_sep_{i}.cgs.json", kind.name()), to_json(&doc)?));
        }
    }
    Ok(out)
}
