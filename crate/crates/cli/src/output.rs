use std::fmt::Write;

use klms_core::kl::SummandTriple;
use klms_core::multiseg::MsPoset;
use klms_core::poly::to_pairs;
use klms_core::{GenSet, HalfExpPoly, Multisegment, ReductionWitness};
use klms_core::BigInt;
use serde_json::{json, Value};

/// Coefficients fitting in `i64` are numbers, larger ones decimal strings.
pub fn bigint(c: &BigInt) -> Value {
    match i64::try_from(c) {
        Ok(v) => json!(v),
        Err(_) => json!(c.to_string()),
    }
}

pub fn poly(p: &HalfExpPoly) -> Value {
    Value::Array(to_pairs(p).iter().map(|(e, c)| json!([e, bigint(c)])).collect())
}

pub fn genset(j: &GenSet) -> Value {
    json!(j.iter().collect::<Vec<_>>())
}

pub fn multisegments(ms: &[Multisegment]) -> Value {
    json!(ms.iter().map(ToString::to_string).collect::<Vec<_>>())
}

pub fn poset(p: &MsPoset) -> Value {
    let covers: Vec<_> = p.covers().iter().map(|&(u, l)| json!([u, l])).collect();
    json!({
        "root": p.root().to_string(),
        "root_index": p.root_index(),
        "size": p.len(),
        "elements": multisegments(p.elements()),
        "covers": covers,
        "minimum": p.minimum().ok().map(ToString::to_string),
        "is_chain": p.is_chain(),
    })
}

pub fn witness(w: &ReductionWitness) -> Value {
    json!({
        "original": w.original.to_string(),
        "parabolic": w.parabolic.to_string(),
        "steps": multisegments(&w.steps),
        "chain": w.chain.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "ksequence": w.ksequence,
        "anchor": w.anchor.as_ref().map(ToString::to_string),
        "rep": w.rep.to_string(),
        "masks": { "j1": genset(&w.masks.0), "j2": genset(&w.masks.1) },
    })
}

pub fn triple(t: &SummandTriple) -> Value {
    json!({ "z": t.z.to_string(), "multiplicity": bigint(&t.multiplicity), "shift": t.shift })
}

/// Hasse diagram in DOT, edges from upper to lower cover, root filled.
pub fn dot(p: &MsPoset) -> String {
    let mut out = String::from("digraph S {\n  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, m) in p.elements().iter().enumerate() {
        let style = if i == p.root_index() { ", style=filled, fillcolor=\"#ffd27f\"" } else { "" };
        writeln!(out, "  n{i} [label=\"{m}\"{style}];").unwrap();
    }
    for &(u, l) in p.covers() {
        writeln!(out, "  n{u} -> n{l};").unwrap();
    }
    out.push_str("}\n");
    out
}
