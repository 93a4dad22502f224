use klms_core::verify::{
    check_realization, multisegment_corpus, verify_grassmannian, verify_parabolic_consistency, verify_param,
    verify_relations, verify_summands,
};
use klms_core::Result;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::output::genset;

pub const SUITES: &[&str] = &["relations", "param", "parabolic", "summands", "grassmannian", "realization", "all"];

#[derive(Debug, Clone)]
pub struct SuiteArgs {
    pub n: usize,
    pub max_segments: usize,
    pub span: (i64, i64),
}

pub struct SuiteResult {
    pub name: &'static str,
    pub failures: usize,
    pub summary: String,
    pub report: Value,
}

pub fn run(suite: &str, args: &SuiteArgs) -> Result<Vec<SuiteResult>> {
    let one = |name: &str| -> Result<SuiteResult> {
        match name {
            "relations" => Ok(relations(args.n)),
            "param" => param(args.n),
            "parabolic" => parabolic(args.n),
            "summands" => summands(args.n),
            "grassmannian" => grassmannian(args.n),
            "realization" => Ok(realization(args.max_segments, args.span)),
            _ => unreachable!("suite names are checked by the caller"),
        }
    };
    if suite == "all" {
        SUITES[..SUITES.len() - 1].iter().map(|s| one(s)).collect()
    } else {
        Ok(vec![one(suite)?])
    }
}

fn relations(n: usize) -> SuiteResult {
    let r = verify_relations(n);
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| json!({ "relation": f.relation, "x": f.x.to_string(), "y": f.y.to_string(), "s": f.s }))
        .collect();
    SuiteResult {
        name: "relations",
        failures: failures.len(),
        summary: format!("relations n={n}: {} checks {:?}, {} failures", r.total_checks(), r.checks, failures.len()),
        report: json!({ "n": n, "checks": r.checks, "failures": failures }),
    }
}

fn param(n: usize) -> Result<SuiteResult> {
    let entries = verify_param(n)?;
    let mut failures = 0;
    let rows: Vec<Value> = entries
        .iter()
        .map(|e| {
            let f = e.report.failures() + usize::from(!e.one_sided_count_ok);
            failures += f;
            json!({
                "j1": genset(&e.j1),
                "j2": genset(&e.j2),
                "baseline": e.baseline.to_string(),
                "representatives": e.report.representatives,
                "poset_size": e.report.poset_size,
                "pairs_checked": e.report.pairs_checked,
                "comparable_pairs": e.report.comparable_pairs,
                "failures": f,
            })
        })
        .collect();
    Ok(SuiteResult {
        name: "param",
        failures,
        summary: format!("param n={n}: {} (J1,J2) contexts, {failures} failures", rows.len()),
        report: json!({ "n": n, "contexts": rows }),
    })
}

fn parabolic(n: usize) -> Result<SuiteResult> {
    let r = verify_parabolic_consistency(n)?;
    Ok(SuiteResult {
        name: "parabolic",
        failures: r.mismatches.len(),
        summary: format!("parabolic n={n}: {} checks, {} mismatches", r.checks, r.mismatches.len()),
        report: json!({ "n": n, "checks": r.checks, "mismatches": r.mismatches }),
    })
}

fn summands(n: usize) -> Result<SuiteResult> {
    let r = verify_summands(n)?;
    Ok(SuiteResult {
        name: "summands",
        failures: r.failures.len(),
        summary: format!(
            "summands n={n}: {} instances, {} triples, {} failures",
            r.instances,
            r.triples,
            r.failures.len()
        ),
        report: json!({ "n": n, "instances": r.instances, "triples": r.triples, "failures": r.failures }),
    })
}

fn grassmannian(max_n: usize) -> Result<SuiteResult> {
    let entries = verify_grassmannian(max_n)?;
    let failures = entries.iter().filter(|e| !e.passed()).count();
    let rows: Vec<Value> = entries
        .iter()
        .map(|e| {
            json!({
                "n": e.n, "k": e.k, "size": e.size, "is_chain": e.is_chain,
                "kl_pairs": e.kl_pairs, "kl_ones": e.kl_ones, "kl_closed_form": e.kl_closed_form,
                "passed": e.passed(),
            })
        })
        .collect();
    Ok(SuiteResult {
        name: "grassmannian",
        failures,
        summary: format!("grassmannian n<={max_n}: {} cases, {failures} failures", rows.len()),
        report: json!({ "max_n": max_n, "cases": rows }),
    })
}

fn realization(max_segments: usize, span: (i64, i64)) -> SuiteResult {
    let corpus = multisegment_corpus(max_segments, span.0, span.1);
    let outcomes: Vec<_> = corpus.par_iter().map(check_realization).collect();
    let bad: Vec<Value> = outcomes
        .iter()
        .filter(|o| !o.passed())
        .map(|o| {
            json!({
                "input": o.input.to_string(),
                "error": o.error,
                "anchor_maps_to_minimum": o.anchor_maps_to_minimum,
                "hypothesis_agrees": o.hypothesis_agrees,
            })
        })
        .collect();
    let max_chain = outcomes.iter().map(|o| o.chain_len).max().unwrap_or(0);
    let max_size = outcomes.iter().map(|o| o.size).max().unwrap_or(0);
    let total_size: usize = outcomes.iter().map(|o| o.size).sum();
    SuiteResult {
        name: "realization",
        failures: bad.len(),
        summary: format!(
            "realization <= {max_segments} segments in [{}, {}]: {} multisegments, {} failures",
            span.0,
            span.1,
            corpus.len(),
            bad.len()
        ),
        report: json!({
            "max_segments": max_segments,
            "span": [span.0, span.1],
            "corpus_size": corpus.len(),
            "total_poset_size": total_size,
            "max_poset_size": max_size,
            "max_chain_len": max_chain,
            "failures": bad,
        }),
    }
}
