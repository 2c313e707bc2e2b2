//! Machine-readable reports and the fuzz campaign.
//!
//! Reports are JSON with a plain-text rendering alongside. Every integer is
//! serialized as a decimal string so consumers with 53-bit number types
//! cannot corrupt exact values. The schema is versioned; identical inputs
//! and seed produce byte-identical JSON apart from the `timings` field.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::chern::{
    euler_char, verify_fundamental_lemma, verify_modified_koszul, ChernContext, ChernReport,
    RouteStatus, TheoremReport, Verdict,
};
use crate::error::{Error, Result};
use crate::hilbert::{HilbertCoefficients, HilbertTable};
use crate::parse::{validate_job, JobDoc, JobSpec};
use crate::reduction::Reduction;

pub const SCHEMA_VERSION: &str = "1";
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Decimal-string encoding for exact integers.
fn s(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

fn envelope(command: &str, job: &JobSpec, body: Map<String, Value>) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), s(SCHEMA_VERSION));
    m.insert("engine".into(), s(ENGINE_VERSION));
    m.insert("command".into(), Value::String(command.into()));
    m.insert("job".into(), serde_json::to_value(&job.doc).expect("job echo"));
    m.insert("seed".into(), s(job.seed));
    for (k, v) in body {
        m.insert(k, v);
    }
    Value::Object(m)
}

/// The `timings` field is additive noise on top of a deterministic report;
/// callers splice it in after the fact so tests can compare without it.
pub fn with_timings(mut report: Value, total_ms: u128) -> Value {
    if let Value::Object(m) = &mut report {
        m.insert("timings".into(), json!({ "total_ms": s(total_ms) }));
    }
    report
}

fn hilbert_body(table: &HilbertTable, coeffs: &HilbertCoefficients) -> Map<String, Value> {
    let d = coeffs.d;
    let mut m = Map::new();
    let values: Vec<Value> = (1..=table.n_max())
        .map(|n| json!({ "n": s(n), "h": s(table.values()[n as usize]) }))
        .collect();
    m.insert("hilbert".into(), Value::Array(values));
    let diffs: Vec<Value> = (1..=d)
        .map(|k| {
            Value::Array(table.differences(k).iter().map(|v| s(v)).collect())
        })
        .collect();
    m.insert("differences".into(), Value::Array(diffs));
    m.insert(
        "coefficients".into(),
        Value::Array(coeffs.e.iter().map(|e| s(e)).collect()),
    );
    m.insert("postulation".into(), s(coeffs.postulation));
    m
}

pub fn hilbert_json(job: &JobSpec, table: &HilbertTable, coeffs: &HilbertCoefficients) -> Value {
    envelope("hilbert", job, hilbert_body(table, coeffs))
}

pub fn hilbert_text(table: &HilbertTable, coeffs: &HilbertCoefficients) -> String {
    let mut out = String::new();
    out.push_str("  n  H(n)");
    for k in 1..=coeffs.d {
        out.push_str(&format!("  D^{k}H"));
    }
    out.push('\n');
    for n in 1..=table.n_max() {
        out.push_str(&format!("{:3}  {:4}", n, table.values()[n as usize]));
        for k in 1..=coeffs.d {
            // The k-th difference column starts at n = k.
            if n >= k as i64 {
                out.push_str(&format!("  {:4}", table.differences(k)[(n - k as i64) as usize]));
            } else {
                out.push_str("      ");
            }
        }
        out.push('\n');
    }
    let es: Vec<String> =
        coeffs.e.iter().enumerate().map(|(i, e)| format!("e{i} = {e}")).collect();
    out.push_str(&format!("{}\n", es.join(", ")));
    out.push_str(&format!("postulation index: {}\n", coeffs.postulation));
    out
}

fn reduction_value(red: &Option<Reduction>, vars: &[String]) -> Value {
    match red {
        None => Value::Null,
        Some(r) => json!({
            "gens": r.gens.iter().map(|g| Value::String(g.render(vars))).collect::<Vec<_>>(),
            "verified_at": s(r.verified_at),
            "window": s(r.window),
        }),
    }
}

pub fn chern_json(job: &JobSpec, ctx: &ChernContext, report: &ChernReport) -> Value {
    let mut body = hilbert_body(&ctx.table, &ctx.coeffs);
    body.insert("lambda_r_i1".into(), s(report.lambda_r_i1));
    body.insert("reduction".into(), reduction_value(&report.reduction, &job.vars));
    let routes: Vec<Value> = report
        .routes
        .iter()
        .map(|r| match &r.status {
            RouteStatus::Computed { value, columns, rows } => json!({
                "name": r.name,
                "value": s(value),
                "columns": columns,
                "rows": rows.iter().map(|row| json!({
                    "n": s(row.n),
                    "lengths": row.lengths.iter().map(|v| s(v)).collect::<Vec<_>>(),
                    "contribution": s(row.contribution),
                })).collect::<Vec<_>>(),
            }),
            RouteStatus::Unavailable { reason } => json!({
                "name": r.name,
                "unavailable": reason,
            }),
        })
        .collect();
    body.insert("routes".into(), Value::Array(routes));
    body.insert("e1".into(), s(ctx.e1()));
    body.insert("consistent".into(), Value::Bool(report.consistent));
    envelope("chern", job, body)
}

pub fn chern_text(job: &JobSpec, ctx: &ChernContext, report: &ChernReport) -> String {
    let mut out = hilbert_text(&ctx.table, &ctx.coeffs);
    if let Some(r) = &report.reduction {
        let gens: Vec<String> = r.gens.iter().map(|g| g.render(&job.vars)).collect();
        out.push_str(&format!(
            "reduction J = ({}), verified from n0 = {} over window {}\n",
            gens.join(", "),
            r.verified_at,
            r.window
        ));
    } else {
        out.push_str("reduction: none found\n");
    }
    for r in &report.routes {
        match &r.status {
            RouteStatus::Computed { value, columns, rows } => {
                out.push_str(&format!("route {}: e1 = {}\n", r.name, value));
                out.push_str(&format!("    n  [{}]  term\n", columns.join(", ")));
                for row in rows {
                    let lens: Vec<String> = row.lengths.iter().map(|v| v.to_string()).collect();
                    out.push_str(&format!(
                        "  {:3}  [{}]  {}\n",
                        row.n,
                        lens.join(", "),
                        row.contribution
                    ));
                }
            }
            RouteStatus::Unavailable { reason } => {
                out.push_str(&format!("route {}: unavailable ({})\n", r.name, reason));
            }
        }
    }
    out.push_str(&format!(
        "fitted e1 = {}; routes {}\n",
        ctx.e1(),
        if report.consistent { "agree" } else { "DISAGREE (engine bug)" }
    ));
    out
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Verified => "verified",
        Verdict::HypothesisNotMet => "hypothesis-not-met",
        Verdict::Violation => "VIOLATION",
    }
}

fn checks_value(items: &[crate::chern::CheckItem]) -> Value {
    Value::Array(
        items
            .iter()
            .map(|c| {
                json!({ "name": c.name, "passed": c.passed, "detail": c.detail })
            })
            .collect(),
    )
}

pub fn verify_json(job: &JobSpec, rep: &TheoremReport) -> Value {
    let mut body = Map::new();
    body.insert("id".into(), Value::String(rep.id.clone()));
    body.insert("verdict".into(), Value::String(verdict_str(rep.verdict).into()));
    body.insert("hypotheses".into(), checks_value(&rep.hypotheses));
    body.insert("conclusions".into(), checks_value(&rep.conclusions));
    envelope("verify", job, body)
}

pub fn verify_text(rep: &TheoremReport) -> String {
    let mut out = format!("{}: {}\n", rep.id, verdict_str(rep.verdict));
    let section = |title: &str, items: &[crate::chern::CheckItem], out: &mut String| {
        if items.is_empty() {
            return;
        }
        out.push_str(&format!("{title}:\n"));
        for c in items {
            let mark = if c.passed { "ok " } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("  [{mark}] {}\n", c.name));
            } else {
                out.push_str(&format!("  [{mark}] {} ({})\n", c.name, c.detail));
            }
        }
    };
    section("hypotheses", &rep.hypotheses, &mut out);
    section("conclusions", &rep.conclusions, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Fuzz campaign
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct FuzzCase {
    pub index: usize,
    pub case_seed: u64,
    pub doc: JobDoc,
    pub e: Vec<i64>,
    pub consistent: bool,
    pub identity_failures: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Campaign {
    pub dim: usize,
    pub count: usize,
    pub seed: u64,
    pub max_deg: u16,
    pub cases: Vec<FuzzCase>,
}

impl Campaign {
    pub fn violations(&self) -> usize {
        self.cases
            .iter()
            .filter(|c| !c.consistent || !c.identity_failures.is_empty())
            .count()
    }
}

/// A random m-primary monomial ideal: pure powers x^a, y^b plus a few
/// random monomials strictly inside the box.
fn random_monomial_job(rng: &mut ChaCha8Rng, dim: usize, max_deg: u16) -> JobDoc {
    let a = rng.gen_range(2..=max_deg);
    let b = rng.gen_range(2..=max_deg);
    let mut ideal = vec![format!("x^{a}"), format!("y^{b}")];
    for _ in 0..rng.gen_range(0..=3u32) {
        let i = rng.gen_range(1..a.max(2));
        let j = rng.gen_range(1..b.max(2));
        ideal.push(format!("x^{i}*y^{j}"));
    }
    ideal.sort();
    ideal.dedup();
    let quotient = if dim == 1 {
        // A monomial curve k[x,y]/(y^q - x^p) keeps the ambient ring
        // Cohen-Macaulay of dimension 1.
        let p = rng.gen_range(2..=4u32);
        let q = rng.gen_range(2..=4u32);
        vec![format!("y^{q} - x^{p}")]
    } else {
        vec![]
    };
    JobDoc {
        field: None,
        vars: vec!["x".into(), "y".into()],
        quotient,
        ideal,
        filtration: None,
        reduction: None,
        seed: None,
        max_n: Some(12),
    }
}

fn run_case(doc: &JobDoc, case_seed: u64) -> Result<FuzzCase> {
    let job = validate_job(doc.clone())?;
    let filtration = job.filtration()?;
    let ctx = ChernContext::new(filtration, job.max_n)?;
    let report = crate::chern::chern_report(&ctx, None, case_seed)?;
    let mut identity_failures = Vec::new();
    // Per-n identity: the homology Euler characteristic must match the
    // difference route whenever its hypotheses hold.
    if let Some(red) = &report.reduction {
        let bound = (ctx.coeffs.postulation.max(1) + ctx.dim() as i64 + 1).min(job.max_n);
        for n in 1..=bound {
            let chi = euler_char(&ctx, &red.gens, n)?;
            if let Ok(v) = chi.via_homology {
                if v != chi.via_difference {
                    identity_failures.push(format!(
                        "euler characteristic mismatch at n = {n}: {} vs {}",
                        chi.via_difference, v
                    ));
                }
            }
        }
        if ctx.dim() == 2 {
            for rep in [
                verify_fundamental_lemma(&ctx, &red.gens)?,
                verify_modified_koszul(&ctx, &red.gens)?,
            ] {
                if rep.verdict == Verdict::Violation {
                    identity_failures.push(format!("{}: VIOLATION", rep.id));
                }
            }
        }
    }
    Ok(FuzzCase {
        index: 0,
        case_seed,
        doc: doc.clone(),
        e: ctx.coeffs.e.clone(),
        consistent: report.consistent,
        identity_failures,
    })
}

/// Run `count` random cases. Deterministic given the campaign seed; each
/// case records its own derived seed for replay.
pub fn fuzz_campaign(dim: usize, count: usize, seed: u64, max_deg: u16) -> Result<Campaign> {
    if dim != 1 && dim != 2 {
        return Err(Error::WrongDimension { expected: 2, actual: dim });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(count);
    for index in 0..count {
        let case_seed: u64 = rng.gen();
        let mut case_rng = ChaCha8Rng::seed_from_u64(case_seed);
        let doc = random_monomial_job(&mut case_rng, dim, max_deg);
        let mut case = run_case(&doc, case_seed)?;
        case.index = index;
        cases.push(case);
    }
    Ok(Campaign { dim, count, seed, max_deg, cases })
}

pub fn fuzz_json(campaign: &Campaign) -> Value {
    json!({
        "schema": s(SCHEMA_VERSION),
        "engine": s(ENGINE_VERSION),
        "command": "fuzz",
        "dim": s(campaign.dim),
        "count": s(campaign.count),
        "seed": s(campaign.seed),
        "max_deg": s(campaign.max_deg),
        "violations": s(campaign.violations()),
        "cases": campaign.cases.iter().map(|c| json!({
            "index": s(c.index),
            "seed": s(c.case_seed),
            "job": serde_json::to_value(&c.doc).expect("job echo"),
            "e": c.e.iter().map(|e| s(e)).collect::<Vec<_>>(),
            "consistent": c.consistent,
            "identity_failures": c.identity_failures,
        })).collect::<Vec<_>>(),
    })
}

pub fn fuzz_text(campaign: &Campaign) -> String {
    let mut out = String::new();
    for c in &campaign.cases {
        let status = if c.consistent && c.identity_failures.is_empty() {
            "consistent"
        } else {
            "VIOLATION"
        };
        out.push_str(&format!(
            "case {:3} seed {:20} ideal ({}) e = {:?}: {}\n",
            c.index,
            c.case_seed,
            c.doc.ideal.join(", "),
            c.e,
            status
        ));
        for f in &c.identity_failures {
            out.push_str(&format!("      {f}\n"));
        }
    }
    out.push_str(&format!(
        "{}/{} consistent ({} violations)\n",
        campaign.count - campaign.violations(),
        campaign.count,
        campaign.violations()
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_job;

    #[test]
    fn chern_report_json_is_deterministic_and_stringly() {
        let job = parse_job(br#"{"vars":["x","y"],"ideal":["x^2","x*y","y^2"],"max_n":8}"#)
            .unwrap();
        let ctx = ChernContext::new(job.filtration().unwrap(), job.max_n).unwrap();
        let report = crate::chern::chern_report(&ctx, None, job.seed).unwrap();
        let a = serde_json::to_string(&chern_json(&job, &ctx, &report)).unwrap();
        let ctx2 = ChernContext::new(job.filtration().unwrap(), job.max_n).unwrap();
        let report2 = crate::chern::chern_report(&ctx2, None, job.seed).unwrap();
        let b = serde_json::to_string(&chern_json(&job, &ctx2, &report2)).unwrap();
        assert_eq!(a, b);
        // No bare JSON numbers in computed fields: every integer is a
        // decimal string. The job echo reproduces the input verbatim and is
        // exempt.
        let mut v: Value = serde_json::from_str(&a).unwrap();
        v.as_object_mut().unwrap().remove("job");
        fn no_numbers(v: &Value) -> bool {
            match v {
                Value::Number(_) => false,
                Value::Array(xs) => xs.iter().all(no_numbers),
                Value::Object(m) => m.values().all(no_numbers),
                _ => true,
            }
        }
        assert!(no_numbers(&v));
    }

    #[test]
    fn small_fuzz_campaigns_are_clean() {
        for dim in [1, 2] {
            let c = fuzz_campaign(dim, 4, 11, 5).unwrap();
            assert_eq!(c.violations(), 0, "dim {dim}: {}", fuzz_text(&c));
        }
    }

    #[test]
    fn fuzz_is_deterministic() {
        let a = fuzz_campaign(2, 3, 5, 5).unwrap();
        let b = fuzz_campaign(2, 3, 5, 5).unwrap();
        assert_eq!(
            serde_json::to_string(&fuzz_json(&a)).unwrap(),
            serde_json::to_string(&fuzz_json(&b)).unwrap()
        );
    }

    #[test]
    fn empty_campaign() {
        let c = fuzz_campaign(2, 0, 0, 5).unwrap();
        assert_eq!(c.violations(), 0);
        assert!(c.cases.is_empty());
    }

    #[test]
    fn dim1_fuzz_chern_numbers_nonnegative() {
        // Ambient monomial curves are Cohen-Macaulay, so e1 >= 0.
        let c = fuzz_campaign(1, 4, 3, 4).unwrap();
        for case in &c.cases {
            assert!(case.e[1] >= 0, "{:?}", case);
        }
    }
}
