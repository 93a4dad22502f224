//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use klms_core::kl::DescentRule;
use klms_core::reduce::{masks, reduce_to_parabolic};
use klms_core::verify::{
    check_realization, kl_shape_violation, multisegment_corpus, verify_grassmannian, verify_parabolic_consistency,
    verify_param, verify_relations, verify_summands,
};
use klms_core::{BigInt, KLEngine, Permutation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn relations() -> Outcome {
    let mut total = 0;
    for n in 2..=5 {
        let r = verify_relations(n);
        if let Some(f) = r.failures.first() {
            return Err(format!("n={n}: {} failures, first {f:?}", r.failures.len()));
        }
        total += r.total_checks();
    }
    Ok(format!("{total} checks over n=2..5"))
}

fn kl_sanity() -> Outcome {
    let n = 4;
    let mut left = KLEngine::new(n);
    let mut right = KLEngine::with_rule(n, DescentRule::SmallestRight);
    let all = Permutation::all(n);
    let mut pairs = 0;
    for x in &all {
        for y in &all {
            let p = left.kl_poly(x, y).map_err(|e| e.to_string())?;
            if let Some(why) = kl_shape_violation(x, y, &p) {
                return Err(format!("P_{{{x},{y}}} = {p}: {why}"));
            }
            if right.kl_poly(x, y).unwrap() != p {
                return Err(format!("left and right recursions differ at ({x}, {y})"));
            }
            if left.kl_poly(&x.inverse(), &y.inverse()).unwrap() != p {
                return Err(format!("inverse symmetry fails at ({x}, {y})"));
            }
            pairs += usize::from(x.bruhat_leq(y).unwrap());
        }
    }
    let e = Permutation::identity(n);
    for y in ["3412", "4231"] {
        let p = left.kl_poly(&e, &Permutation::parse(n, y).unwrap()).unwrap();
        if p.to_string() != "1 + q" {
            return Err(format!("P_{{e,{y}}} = {p}"));
        }
    }
    Ok(format!("{pairs} pairs x ≤ y in S_4; P_{{e,3412}} = P_{{e,4231}} = 1 + q"))
}

fn parametrization() -> Outcome {
    let mut contexts = 0;
    for n in 1..=4 {
        for e in verify_param(n).map_err(|e| e.to_string())? {
            if !e.report.passed() || !e.one_sided_count_ok {
                return Err(format!("n={n} J1={{{}}} J2={{{}}}: {:?}", e.j1, e.j2, e.report));
            }
            contexts += 1;
        }
    }
    Ok(format!("{contexts} (J1, J2) contexts for n ≤ 4"))
}

fn parabolic() -> Outcome {
    let mut checks = 0;
    for n in 1..=4 {
        let r = verify_parabolic_consistency(n).map_err(|e| e.to_string())?;
        if let Some(m) = r.mismatches.first() {
            return Err(format!("n={n}: {m}"));
        }
        checks += r.checks;
    }
    Ok(format!("{checks} pairs for n ≤ 4"))
}

fn grassmannian() -> Outcome {
    let entries = verify_grassmannian(6).map_err(|e| e.to_string())?;
    if let Some(e) = entries.iter().find(|e| !e.passed()) {
        return Err(format!("{e:?}"));
    }
    let non_trivial = entries.iter().filter(|e| e.kl_ones < e.kl_pairs).count();
    Ok(format!(
        "{} cases are chains with min(k,n-k)+1 elements; KL values are Gaussian binomials ({} cases with a value other than 1)",
        entries.len(),
        non_trivial
    ))
}

fn reduction() -> Outcome {
    let corpus = multisegment_corpus(4, 0, 6);
    let mut sizes = 0;
    for a in &corpus {
        let w = reduce_to_parabolic(a).map_err(|e| format!("{a}: {e}"))?;
        let m = masks(a).map_err(|e| format!("{a}: {e}"))?;
        if let Some(s) = w.steps.iter().find(|s| masks(s).ok().as_ref() != Some(&m)) {
            return Err(format!("{a}: masks change at step {s}"));
        }
        let o = check_realization(a);
        if !o.passed() {
            return Err(format!("counterexample {a}: {o:?}"));
        }
        sizes += o.size;
    }
    Ok(format!("{} multisegments, {sizes} poset elements realized", corpus.len()))
}

fn summands() -> Outcome {
    let r = verify_summands(4).map_err(|e| e.to_string())?;
    if let Some(f) = r.failures.first() {
        return Err(f.clone());
    }
    let mut engine = KLEngine::new(3);
    let p = |s| Permutation::parse(3, s).unwrap();
    let t = engine.decomposition_summands(&p("213"), &p("321"), 2).map_err(|e| e.to_string())?;
    if t.len() != 1 || t[0].z != p("213") || t[0].multiplicity != BigInt::from(1) || t[0].shift != 2 {
        return Err(format!("S_3 instance gave {t:?}"));
    }
    Ok(format!("{} instances, {} triples, zero residual; S_3 gives {{(213, 1, 2)}}", r.instances, r.triples))
}

fn klms(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_klms"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let mut bytes = out.stdout;
    bytes.extend_from_slice(b"\n--\n");
    bytes.extend_from_slice(&out.stderr);
    bytes.push(out.status.code().unwrap_or(-1) as u8);
    Ok(bytes)
}

fn determinism() -> Outcome {
    let invocations: &[&[&str]] = &[
        &["kl", "--n", "4", "--x", "1234", "--y", "3412"],
        &["kl", "--n", "3", "--x", "213", "--y", "321", "--k1", "2"],
        &["pkl", "--n", "3", "--v1", "123", "--v2", "231", "--j", "1"],
        &["poset", "2*[0,1]+2*[1,2]"],
        &["poset", "[1,2]+[2,3]+[4,5]", "--dot", "-"],
        &["phi", "--n", "4", "--w", "2143", "--j1", "2"],
        &["reduce", "[1,2]+[2,3]+[4,5]"],
        &["verify", "--suite", "param", "--n", "3"],
    ];
    for args in invocations {
        if klms(args)? != klms(args)? {
            return Err(format!("output differs between runs of {args:?}"));
        }
    }
    let suite = ["verify", "--suite", "realization", "--max-segments", "3", "--span", "0..5"];
    let serial = klms(&[&suite[..], &["--threads", "1"]].concat())?;
    for threads in ["2", "4", "0"] {
        if klms(&[&suite[..], &["--threads", threads]].concat())? != serial {
            return Err(format!("realization suite differs with --threads {threads}"));
        }
    }
    Ok(format!("{} invocations repeated byte-identically; corpus suite equal for 1, 2, 4 and all threads", invocations.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("relations suite", relations),
        ("KL sanity", kl_sanity),
        ("parametrization suite", parametrization),
        ("parabolic KL consistency", parabolic),
        ("Grassmannian chain", grassmannian),
        ("reduction suite", reduction),
        ("decomposition summands", summands),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {} {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
