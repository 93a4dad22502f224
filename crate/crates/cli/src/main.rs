//! `klms`: Kazhdan–Lusztig polynomials, parabolic cosets and multisegment
//! posets. JSON goes to stdout, a human-readable summary to stderr.

mod output;
mod suites;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use klms_core::multiseg::{MsPoset, DEFAULT_ENUM_CAP};
use klms_core::perm::parabolic::max_double_coset_element;
use klms_core::reduce::{interval_realization, kl_multisegment};
use klms_core::{Error, GenSet, HalfExpPoly, KLEngine, KlPool, Multisegment, ParamContext, Permutation};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "klms", version, about)]
struct Cli {
    /// Suppress the human-readable summary on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// P_{x,y}, its double-parabolic analogue with --j1/--j2, or P_{b,c} for multisegments.
    Kl {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        /// Left generator set, e.g. "1,3".
        #[arg(long)]
        j1: Option<String>,
        /// Right generator set.
        #[arg(long)]
        j2: Option<String>,
        /// Lower multisegment (with --c instead of permutations).
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        c: Option<String>,
        /// Also list the decomposition summands for (w = x, v = y, k1).
        #[arg(long)]
        k1: Option<usize>,
    },
    /// One-sided parabolic P^J_{v1,v2}.
    Pkl {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        v1: String,
        #[arg(long)]
        v2: String,
        #[arg(long)]
        j: String,
        #[arg(long, value_enum, default_value_t = Side::Right)]
        side: Side,
    },
    /// The poset S(a) below a multisegment.
    Poset {
        multisegment: String,
        /// Write the Hasse diagram in DOT to this path ("-" for stdout instead of JSON).
        #[arg(long)]
        dot: Option<String>,
        /// Emit JSON (the default when --dot is not "-").
        #[arg(long)]
        json: bool,
    },
    /// Multisegment attached to a double coset representative.
    Phi {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        w: String,
        #[arg(long)]
        j1: Option<String>,
        #[arg(long)]
        j2: Option<String>,
        /// Use this baseline instead of the canonical one.
        #[arg(long)]
        baseline: Option<String>,
    },
    /// Inverse of `phi`.
    Phiinv {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        ms: String,
        #[arg(long)]
        j1: Option<String>,
        #[arg(long)]
        j2: Option<String>,
        #[arg(long)]
        baseline: Option<String>,
    },
    /// Reduction to parabolic type and the interval realization of S(a).
    Reduce { multisegment: String },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        /// Rank for the permutation suites (maximum rank for grassmannian).
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_segments: usize,
        /// Inclusive interval containing the corpus, as "lo..hi".
        #[arg(long, default_value = "0..5")]
        span: String,
        /// Worker threads for the corpus suite (0: one per core).
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Right,
    Left,
}

/// Failure with its exit code and the JSON printed for it.
struct Failure {
    code: u8,
    message: String,
    body: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::InvalidPermutation(_)
            | Error::InvalidGenSet(_)
            | Error::InvalidSegment { .. }
            | Error::RankMismatch { .. } => 2,
            Error::Precondition(_) | Error::NonUniqueMinimum { .. } => 3,
            Error::EnumerationCap { .. } => 4,
            Error::Realization { .. } | Error::IterationCap { .. } => 5,
        };
        let message = e.to_string();
        Failure { code, body: json!({ "error": message }), message }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    let message = message.into();
    Failure { code: 2, body: json!({ "error": message }), message }
}

struct Output {
    json: Value,
    text: String,
    code: u8,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, code: 0 }
    }
}

fn enum_cap() -> Result<usize, Failure> {
    match std::env::var("KLMS_ENUM_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("KLMS_ENUM_CAP is not a count: {v:?}"))),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

fn ms(s: &str) -> Result<Multisegment, Failure> {
    Ok(s.parse()?)
}

fn perm(n: usize, s: &str) -> Result<Permutation, Failure> {
    Ok(Permutation::parse(n, s)?)
}

fn genset(n: usize, s: Option<&str>) -> Result<GenSet, Failure> {
    Ok(GenSet::parse(n, s.unwrap_or(""))?)
}

fn poly_json(p: &HalfExpPoly, mu: Value) -> Value {
    json!({ "poly": output::poly(p), "pretty": p.to_string(), "mu": mu })
}

/// `μ` read off `p` as `P_{x,y}`.
fn mu_of(p: &HalfExpPoly, x: &Permutation, y: &Permutation) -> Value {
    let (lx, ly) = (x.length() as i64, y.length() as i64);
    if ly <= lx || (ly - lx) % 2 == 0 {
        return json!(0);
    }
    output::bigint(&p.coeff(ly - lx - 1))
}

fn param_context(
    n: Option<usize>,
    j1: Option<&str>,
    j2: Option<&str>,
    baseline: Option<&str>,
) -> Result<ParamContext, Failure> {
    if let Some(b) = baseline {
        if j1.is_some() || j2.is_some() {
            return Err(usage("--baseline fixes J1 and J2; drop --j1/--j2"));
        }
        return Ok(ParamContext::from_baseline(&ms(b)?)?);
    }
    let n = n.ok_or_else(|| usage("--n is required without --baseline"))?;
    Ok(ParamContext::canonical(n, &genset(n, j1)?, &genset(n, j2)?)?)
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Kl { n, x, y, j1, j2, b, c, k1 } => {
            if let (Some(b), Some(c)) = (&b, &c) {
                let (b, c) = (ms(b)?, ms(c)?);
                MsPoset::enumerate_with_cap(&c, enum_cap()?)?;
                let p = kl_multisegment(&mut KlPool::new(), &b, &c)?;
                let text = format!("P_{{{b}, {c}}} = {p}");
                return Ok(Output::ok(poly_json(&p, Value::Null), text));
            }
            let (Some(n), Some(x), Some(y)) = (n, x, y) else {
                return Err(usage("kl needs --n, --x and --y (or --b and --c)"));
            };
            let (x, y) = (perm(n, &x)?, perm(n, &y)?);
            let mut engine = KLEngine::new(n);
            if j1.is_none() && j2.is_none() {
                let p = engine.kl_poly(&x, &y)?;
                let mu = output::bigint(&engine.mu(&x, &y)?);
                let mut text = format!("P_{{{x},{y}}} = {p}");
                let mut body = poly_json(&p, mu);
                if let Some(k1) = k1 {
                    let triples = engine.decomposition_summands(&x, &y, k1)?;
                    for t in &triples {
                        text.push_str(&format!("\n  z={} mult={} shift={}", t.z, t.multiplicity, t.shift));
                    }
                    body["summands"] = Value::Array(triples.iter().map(output::triple).collect());
                }
                return Ok(Output::ok(body, text));
            }
            if k1.is_some() {
                return Err(usage("--k1 does not combine with --j1/--j2"));
            }
            let (j1, j2) = (genset(n, j1.as_deref())?, genset(n, j2.as_deref())?);
            let p = engine.double_parabolic_kl(&x, &y, &j1, &j2)?;
            let (w1, w2) = (max_double_coset_element(&x, &j1, &j2)?, max_double_coset_element(&y, &j1, &j2)?);
            let text = format!("P^{{{j1};{j2}}}_{{{x},{y}}} = P_{{{w1},{w2}}} = {p}");
            Ok(Output::ok(poly_json(&p, mu_of(&p, &w1, &w2)), text))
        }
        Command::Pkl { n, v1, v2, j, side } => {
            let (v1, v2, j) = (perm(n, &v1)?, perm(n, &v2)?, genset(n, Some(&j))?);
            let mut engine = KLEngine::new(n);
            let wj = klms_core::perm::parabolic::longest_element(&j);
            let (p, w1, w2) = match side {
                Side::Right => (engine.parabolic_kl(&v1, &v2, &j)?, v1.compose(&wj)?, v2.compose(&wj)?),
                Side::Left => (engine.left_parabolic_kl(&v1, &v2, &j)?, wj.compose(&v1)?, wj.compose(&v2)?),
            };
            let text = format!("P^{{{j}}}_{{{v1},{v2}}} = P_{{{w1},{w2}}} = {p}");
            Ok(Output::ok(poly_json(&p, mu_of(&p, &w1, &w2)), text))
        }
        Command::Poset { multisegment, dot, json: _ } => {
            let a = ms(&multisegment)?;
            let poset = MsPoset::enumerate_with_cap(&a, enum_cap()?)?;
            let mut text = format!("S({a}): {} elements, {} covers\n", poset.len(), poset.covers().len());
            for m in poset.elements() {
                text.push_str(&format!("  {m}\n"));
            }
            let mut out = Output::ok(output::poset(&poset), text);
            match dot.as_deref() {
                Some("-") => out.json = Value::String(output::dot(&poset)),
                Some(path) => std::fs::write(path, output::dot(&poset))
                    .map_err(|e| Failure { code: 1, message: format!("{path}: {e}"), body: json!({ "error": e.to_string() }) })?,
                None => {}
            }
            Ok(out)
        }
        Command::Phi { n, w, j1, j2, baseline } => {
            let ctx = param_context(n, j1.as_deref(), j2.as_deref(), baseline.as_deref())?;
            let w = perm(ctx.rank(), &w)?;
            let a = ctx.phi(&w)?;
            let text = format!("Phi({w}) = {a}");
            Ok(Output::ok(
                json!({
                    "w": w.to_string(), "multisegment": a.to_string(), "baseline": ctx.baseline().to_string(),
                    "j1": output::genset(ctx.j1()), "j2": output::genset(ctx.j2()),
                }),
                text,
            ))
        }
        Command::Phiinv { n, ms: m, j1, j2, baseline } => {
            let ctx = param_context(n, j1.as_deref(), j2.as_deref(), baseline.as_deref())?;
            let a = ms(&m)?;
            let w = ctx.phi_inverse(&a)?;
            let text = format!("Phi^-1({a}) = {w}");
            Ok(Output::ok(
                json!({
                    "w": w.to_string(), "multisegment": a.to_string(), "baseline": ctx.baseline().to_string(),
                    "j1": output::genset(ctx.j1()), "j2": output::genset(ctx.j2()),
                }),
                text,
            ))
        }
        Command::Reduce { multisegment } => {
            let a = ms(&multisegment)?;
            MsPoset::enumerate_with_cap(&a, enum_cap()?)?;
            let r = match interval_realization(&a) {
                Ok(r) => r,
                Err(e @ (Error::Realization { .. } | Error::IterationCap { .. })) => {
                    let message = e.to_string();
                    return Err(Failure {
                        code: 5,
                        body: json!({ "realization_verified": false, "counterexample": a.to_string(), "error": message }),
                        message,
                    });
                }
                Err(e) => return Err(e.into()),
            };
            let verified = r.anchor_maps_to_minimum && r.hypothesis_agrees;
            let mut body = output::witness(&r.witness);
            body["realization_verified"] = json!(verified);
            body["size"] = json!(r.target.len());
            body["ambient_size"] = json!(r.ambient.len());
            if !verified {
                body["counterexample"] = json!(a.to_string());
            }
            let text = format!(
                "{a} -> {} via chain [{}]; |S(a)| = {}, realization {}",
                r.witness.parabolic,
                r.witness.chain.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
                r.target.len(),
                if verified { "verified" } else { "FAILED" },
            );
            Ok(Output { json: body, text, code: if verified { 0 } else { 5 } })
        }
        Command::Verify { suite, n, max_segments, span, threads } => {
            if !suites::SUITES.contains(&suite.as_str()) {
                return Err(usage(format!("unknown suite {suite:?}; expected one of {}", suites::SUITES.join(", "))));
            }
            let span = parse_span(&span)?;
            let args = suites::SuiteArgs { n, max_segments, span };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| usage(e.to_string()))?;
            let results = pool.install(|| suites::run(&suite, &args))?;
            let failures: usize = results.iter().map(|r| r.failures).sum();
            let text = results.iter().map(|r| r.summary.as_str()).collect::<Vec<_>>().join("\n");
            let reports: serde_json::Map<String, Value> =
                results.into_iter().map(|r| (r.name.to_string(), r.report)).collect();
            Ok(Output {
                json: json!({ "suite": suite, "failures": failures, "reports": reports }),
                text,
                code: u8::from(failures > 0),
            })
        }
    }
}

fn parse_span(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || usage(format!("span must look like lo..hi, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let (lo, hi): (i64, i64) = (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let quiet = cli.quiet;
    match run(cli.command) {
        Ok(out) => {
            match &out.json {
                Value::String(s) => print!("{s}"),
                v => println!("{v}"),
            }
            if !quiet {
                eprintln!("{}", out.text.trim_end());
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            println!("{}", f.body);
            if !quiet {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
