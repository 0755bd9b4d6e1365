//! Verification suites for the catalog examples and the reports they
//! produce.
//!
//! Checks run on a bounded thread pool; results are collected in list order
//! so reports are identical for every parallelism setting.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{
    self, build_ellipsoid_cotangent, build_sphere_line_bundle, Expected, ELLIPSOID, SPHERE,
};
use crate::conn::{CurvatureReport, DeviationReport};
use crate::deriv::Derivation;
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::matring::MatrixA;
use crate::quotient::RingElement;

const ELLIPSOID_CHECKS: &[&str] = &[
    "M-display",
    "M-idempotent",
    "M-annihilates-dF",
    "dF-display",
    "tangent-1",
    "tangent-2",
    "tangent-3",
    "d1M-display",
    "d2M-display",
    "d3M-display",
    "formone-1",
    "formone-2",
    "formone-3",
    "kernel-stable-1",
    "kernel-stable-2",
    "kernel-stable-3",
    "nested-12",
    "nested-21",
    "bracket-term-12",
    "r12-on-dF",
    "bracket-12",
    "bracket-13",
    "bracket-23",
    "curvature-kills-dF-12",
    "curvature-kills-dF-13",
    "curvature-kills-dF-23",
    "trace-image-12",
    "trace-image-13",
    "trace-image-23",
    "trace-kernel-12",
    "trace-kernel-13",
    "trace-kernel-23",
    "non-flat-12",
    "non-flat-13",
    "non-flat-23",
    "deviation",
];

const SPHERE_CHECKS: &[&str] = &[
    "P-involution",
    "P-display",
    "P-printed",
    "M-idempotent",
    "L-idempotent",
    "tangent-1",
    "tangent-2",
    "tangent-3",
    "rank-split",
    "trace-sum-zero-12",
    "trace-sum-zero-13",
    "trace-sum-zero-23",
    "trace-image-nonzero-12",
    "trace-image-nonzero-13",
    "trace-image-nonzero-23",
    "deviation",
    // p = q = r = 1 only
    "D1M-display",
    "D2M-display",
    "D3M-display",
    "bracket-12",
    "R12-display",
    "R13-display",
    "R23-display",
    "trace-display",
];

/// Every check name a report for `example` may contain.
pub fn check_names(example: &str) -> Result<&'static [&'static str]> {
    match example {
        ELLIPSOID => Ok(ELLIPSOID_CHECKS),
        SPHERE => Ok(SPHERE_CHECKS),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Differs from a printed value by a documented sign, factor or typo.
    Discrepancy,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Discrepancy => "DISCREPANCY",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Outcome {
    pub status: Status,
    pub witness: String,
}

impl Outcome {
    fn pass(witness: impl Into<String>) -> Self {
        Outcome {
            status: Status::Pass,
            witness: witness.into(),
        }
    }

    fn fail(witness: impl Into<String>) -> Self {
        Outcome {
            status: Status::Fail,
            witness: witness.into(),
        }
    }

    fn discrepancy(witness: impl Into<String>) -> Self {
        Outcome {
            status: Status::Discrepancy,
            witness: witness.into(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub witness: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Parameters {
    pub p: u32,
    pub q: u32,
    pub r: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub discrepancy: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerificationReport {
    pub example: String,
    pub parameters: Parameters,
    pub checks: Vec<CheckResult>,
    pub curvature: Vec<CurvatureReport>,
    pub deviation: DeviationReport,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with an `elapsed_ms` field on every check. Not deterministic.
    pub fn to_json_with_timings(&self) -> String {
        let mut value = serde_json::to_value(self).expect("report serializes");
        if let Some(checks) = value.get_mut("checks").and_then(|c| c.as_array_mut()) {
            for (entry, c) in checks.iter_mut().zip(&self.checks) {
                entry["elapsed_ms"] = serde_json::json!(c.elapsed.as_secs_f64() * 1e3);
            }
        }
        serde_json::to_string_pretty(&value).expect("report serializes")
    }

    pub fn render_text(&self, style: &TextStyle) -> String {
        let mut out = String::new();
        let Parameters { p, q, r } = self.parameters;
        let _ = writeln!(out, "example {}  p={p} q={q} r={r}", self.example);
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let label = style.status(c.status);
            let _ = write!(
                out,
                "  {label}  {:<width$}  {}",
                c.name,
                truncate(&c.witness, 96)
            );
            if style.timings {
                let _ = write!(out, "  [{:.1} ms]", c.elapsed.as_secs_f64() * 1e3);
            }
            out.push('\n');
        }
        let _ = writeln!(out, "curvature");
        for cr in &self.curvature {
            let _ = writeln!(
                out,
                "  ({}, {})  trace_image = {}  trace_kernel = {}  flat = {}",
                cr.pair.0, cr.pair.1, cr.trace_image, cr.trace_kernel, !cr.induced_nonzero
            );
        }
        let d = self.deviation;
        let _ = writeln!(
            out,
            "deviation  n = {}  rank = {}  n - rank = {}",
            d.ambient, d.rank, d.deviation
        );
        let s = self.summary;
        let _ = writeln!(
            out,
            "summary  {} pass, {} fail, {} discrepancy",
            s.pass, s.fail, s.discrepancy
        );
        out
    }
}

/// Text rendering options.
#[derive(Clone, Copy, Debug, Default)]
pub struct TextStyle {
    pub color: bool,
    pub timings: bool,
}

impl TextStyle {
    fn status(&self, s: Status) -> String {
        let label = format!("{:<11}", s.label());
        if !self.color {
            return label;
        }
        let code = match s {
            Status::Pass => "32",
            Status::Fail => "31",
            Status::Discrepancy => "33",
        };
        format!("\x1b[{code}m{label}\x1b[0m")
    }
}

fn truncate(s: &str, max: usize) -> String {
    if s.chars().count() <= max {
        s.to_string()
    } else {
        let head: String = s.chars().take(max).collect();
        format!("{head}...")
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SweepSummary {
    pub triples: usize,
    pub passed: usize,
    pub failed: usize,
    pub discrepancies: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SweepReport {
    pub example: String,
    pub bounds: Parameters,
    pub reports: Vec<VerificationReport>,
    pub summary: SweepSummary,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self, style: &TextStyle) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "sweep {}  max p={} q={} r={}",
            self.example, self.bounds.p, self.bounds.q, self.bounds.r
        );
        for rep in &self.reports {
            let Parameters { p, q, r } = rep.parameters;
            let status = if rep.summary.fail > 0 {
                Status::Fail
            } else {
                Status::Pass
            };
            let s = rep.summary;
            let _ = writeln!(
                out,
                "  {}  ({p},{q},{r})  {} pass, {} fail, {} discrepancy",
                style.status(status),
                s.pass,
                s.fail,
                s.discrepancy
            );
            for c in rep.checks.iter().filter(|c| c.status == Status::Fail) {
                let _ = writeln!(out, "      {}: {}", c.name, truncate(&c.witness, 96));
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "summary  {} triples, {} passed, {} failed, {} discrepancies",
            s.triples, s.passed, s.failed, s.discrepancies
        );
        out
    }
}

type CheckFn<'a> = Box<dyn Fn() -> Result<Outcome> + Send + Sync + 'a>;

fn pool(parallelism: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism.max(1))
        .build()
        .expect("thread pool")
}

fn run_checks(checks: Vec<(&'static str, CheckFn<'_>)>, parallelism: usize) -> Vec<CheckResult> {
    let run = |(name, f): &(&'static str, CheckFn<'_>)| {
        let start = Instant::now();
        let outcome = f().unwrap_or_else(|e| Outcome::fail(format!("error: {e}")));
        CheckResult {
            name: name.to_string(),
            status: outcome.status,
            witness: outcome.witness,
            elapsed: start.elapsed(),
        }
    };
    if parallelism <= 1 {
        checks.iter().map(run).collect()
    } else {
        pool(parallelism).install(|| checks.par_iter().map(run).collect())
    }
}

fn summarize(checks: &[CheckResult]) -> Summary {
    let mut s = Summary::default();
    for c in checks {
        match c.status {
            Status::Pass => s.pass += 1,
            Status::Fail => s.fail += 1,
            Status::Discrepancy => s.discrepancy += 1,
        }
    }
    s
}

fn zero_matrix(m: &MatrixA) -> Outcome {
    match m.first_nonzero() {
        None => Outcome::pass("0"),
        Some((i, j, w)) => Outcome::fail(format!("entry ({},{}) = {w}", i + 1, j + 1)),
    }
}

fn zero_vector(v: &[RingElement]) -> Outcome {
    match v.iter().position(|e| !e.is_zero()) {
        None => Outcome::pass("0"),
        Some(k) => Outcome::fail(format!("component {} = {}", k + 1, v[k])),
    }
}

fn zero_scalar(a: &RingElement) -> Outcome {
    if a.is_zero() {
        Outcome::pass("0")
    } else {
        Outcome::fail(a.to_string())
    }
}

fn equal_matrix(computed: &MatrixA, expected: &MatrixA) -> Result<Outcome> {
    let diff = computed.try_sub(expected)?;
    Ok(match diff.first_nonzero() {
        None => Outcome::pass(computed.to_string()),
        Some((i, j, w)) => Outcome::fail(format!("entry ({},{}) differs by {w}", i + 1, j + 1)),
    })
}

/// `v - c * k`, checked for zero.
fn scalar_multiple(v: &[RingElement], c: &RingElement, k: &[RingElement]) -> Outcome {
    let rest: Vec<RingElement> = v.iter().zip(k).map(|(a, b)| a - &(c * b)).collect();
    match zero_vector(&rest) {
        o if o.status == Status::Pass => Outcome::pass(format!("({c}) * dF")),
        o => o,
    }
}

fn matrix_expected(e: Expected) -> Result<MatrixA> {
    match e {
        Expected::Matrix(m) => Ok(m),
        other => Err(Error::DimensionMismatch(format!(
            "expected a matrix golden, got {other:?}"
        ))),
    }
}

fn scalar_expected(e: Expected) -> Result<RingElement> {
    match e {
        Expected::Scalar(s) => Ok(s),
        other => Err(Error::DimensionMismatch(format!(
            "expected a scalar golden, got {other:?}"
        ))),
    }
}

/// Compares a computed matrix against a printed one, allowing a documented
/// scalar factor.
fn documented_matrix(
    computed: &MatrixA,
    printed: &MatrixA,
    factor: &GaussianRational,
    note: &str,
) -> Result<Outcome> {
    if computed == printed {
        return Ok(Outcome::pass(computed.to_string()));
    }
    let scaled = printed.scale_const(factor);
    Ok(match computed.try_sub(&scaled)?.first_nonzero() {
        None => Outcome::discrepancy(format!("computed = {factor} * printed ({note})")),
        Some((i, j, w)) => Outcome::fail(format!(
            "entry ({},{}) differs from {factor} * printed by {w}",
            i + 1,
            j + 1
        )),
    })
}

const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Runs the full check list for one example and parameter triple.
pub fn verify(
    example: &str,
    p: u32,
    q: u32,
    r: u32,
    parallelism: usize,
) -> Result<VerificationReport> {
    match example {
        ELLIPSOID => verify_ellipsoid(p, q, r, parallelism),
        SPHERE => verify_sphere(p, q, r, parallelism),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

fn surface_point() -> [GaussianRational; 3] {
    [1, 0, 0].map(GaussianRational::from_integer)
}

fn verify_ellipsoid(p: u32, q: u32, r: u32, parallelism: usize) -> Result<VerificationReport> {
    let ex = &build_ellipsoid_cotangent(p, q, r)?;
    let pres = &ex.presentation;
    let ds = &ex.derivations;
    let df = &ex.df;
    let golden = |id: &str| catalog::expected(ELLIPSOID, id, p, q, r);
    let dm: Vec<MatrixA> = ds
        .iter()
        .map(|d| pres.delta_phi(d))
        .collect::<Result<_>>()?;
    let commutators: Vec<MatrixA> = PAIRS
        .iter()
        .map(|&(i, j)| dm[i].commutator(&dm[j]))
        .collect::<Result<_>>()?;
    let a_df: Vec<Vec<RingElement>> = ds
        .iter()
        .map(|d| pres.connection_apply(d, df))
        .collect::<Result<_>>()?;
    let bracket_12 = ds[0].bracket(&ds[1])?;

    let mut checks: Vec<(&'static str, CheckFn)> = Vec::new();
    checks.push((
        "M-display",
        Box::new(|| equal_matrix(ex.m(), &matrix_expected(golden("M")?)?)),
    ));
    checks.push((
        "M-idempotent",
        Box::new(|| Ok(zero_matrix(&ex.m().try_mul(ex.m())?.try_sub(ex.m())?))),
    ));
    checks.push((
        "M-annihilates-dF",
        Box::new(|| Ok(zero_vector(&ex.m().mul_vec(df)?))),
    ));
    checks.push((
        "dF-display",
        Box::new(|| {
            let g = golden("dF")?;
            let text = df
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ");
            Ok(if g.as_vector() == Some(df.as_slice()) {
                Outcome::pass(format!("({text})"))
            } else {
                Outcome::fail(format!("computed ({text})"))
            })
        }),
    ));
    for (k, name) in ["tangent-1", "tangent-2", "tangent-3"]
        .into_iter()
        .enumerate()
    {
        checks.push((
            name,
            Box::new(move || {
                let d = &ds[k];
                Ok(zero_scalar(&d.apply(&ex.ring.nf(ex.ring.modulus())?)?)
                    .tap_pass(|| format!("{d} kills f")))
            }),
        ));
    }
    for (k, name) in ["d1M-display", "d2M-display", "d3M-display"]
        .into_iter()
        .enumerate()
    {
        let dm = &dm;
        checks.push((
            name,
            Box::new(move || {
                equal_matrix(&dm[k], &matrix_expected(golden(&format!("d{}M", k + 1))?)?)
            }),
        ));
    }
    for (k, name) in ["formone-1", "formone-2", "formone-3"]
        .into_iter()
        .enumerate()
    {
        let a_df = &a_df;
        checks.push((
            name,
            Box::new(move || {
                let c = scalar_expected(golden(&format!("formone-scalar-{}", k + 1))?)?;
                Ok(scalar_multiple(&a_df[k], &c, df))
            }),
        ));
    }
    for (k, name) in ["kernel-stable-1", "kernel-stable-2", "kernel-stable-3"]
        .into_iter()
        .enumerate()
    {
        let a_df = &a_df;
        checks.push((
            name,
            Box::new(move || Ok(zero_vector(&ex.m().mul_vec(&a_df[k])?))),
        ));
    }
    let a_df_ref = &a_df;
    checks.push((
        "nested-12",
        Box::new(move || {
            let v = pres.connection_apply(&ds[0], &a_df_ref[1])?;
            Ok(scalar_multiple(
                &v,
                &scalar_expected(golden("nested-12-scalar")?)?,
                df,
            ))
        }),
    ));
    checks.push((
        "nested-21",
        Box::new(move || {
            let v = pres.connection_apply(&ds[1], &a_df_ref[0])?;
            Ok(scalar_multiple(
                &v,
                &scalar_expected(golden("nested-21-scalar")?)?,
                df,
            ))
        }),
    ));
    let bracket_12_ref = &bracket_12;
    checks.push((
        "bracket-term-12",
        Box::new(move || {
            let v: Vec<RingElement> = pres
                .connection_apply(bracket_12_ref, df)?
                .iter()
                .map(|e| -e)
                .collect();
            Ok(scalar_multiple(
                &v,
                &scalar_expected(golden("bracket-term-12-scalar")?)?,
                df,
            ))
        }),
    ));
    checks.push((
        "r12-on-dF",
        Box::new(move || {
            let ab = pres.connection_apply(&ds[0], &a_df_ref[1])?;
            let ba = pres.connection_apply(&ds[1], &a_df_ref[0])?;
            let br = pres.connection_apply(bracket_12_ref, df)?;
            let v: Vec<RingElement> = ab
                .iter()
                .zip(&ba)
                .zip(&br)
                .map(|((a, b), c)| &(a - b) - c)
                .collect();
            Ok(zero_vector(&v))
        }),
    ));
    let bracket_cases: [(&'static str, usize, usize, usize, &'static str); 3] = [
        ("bracket-12", 0, 1, 2, "bracket-12-coefficient"),
        ("bracket-13", 0, 2, 1, "bracket-13-coefficient"),
        ("bracket-23", 1, 2, 0, "bracket-23-coefficient"),
    ];
    for (name, i, j, target, coeff) in bracket_cases {
        checks.push((
            name,
            Box::new(move || {
                let br = ds[i].bracket(&ds[j])?;
                let c = scalar_expected(golden(coeff)?)?;
                let want = ds[target].scale(&c)?;
                let diff: Vec<RingElement> = br
                    .images()
                    .iter()
                    .zip(want.images())
                    .map(|(a, b)| a - b)
                    .collect();
                Ok(zero_vector(&diff).tap_pass(|| format!("({c}) * d{}", target + 1)))
            }),
        ));
    }
    let names_kill = [
        "curvature-kills-dF-12",
        "curvature-kills-dF-13",
        "curvature-kills-dF-23",
    ];
    let names_img = ["trace-image-12", "trace-image-13", "trace-image-23"];
    let names_ker = ["trace-kernel-12", "trace-kernel-13", "trace-kernel-23"];
    let names_flat = ["non-flat-12", "non-flat-13", "non-flat-23"];
    for k in 0..3 {
        let c = &commutators[k];
        checks.push((
            names_kill[k],
            Box::new(move || Ok(zero_vector(&c.mul_vec(df)?))),
        ));
    }
    for k in 0..3 {
        let c = &commutators[k];
        checks.push((
            names_img[k],
            Box::new(move || Ok(zero_scalar(&pres.trace_over_image(c)?))),
        ));
    }
    for k in 0..3 {
        let c = &commutators[k];
        checks.push((
            names_ker[k],
            Box::new(move || Ok(zero_scalar(&pres.trace_over_kernel(c)?))),
        ));
    }
    for k in 0..3 {
        let c = &commutators[k];
        checks.push((
            names_flat[k],
            Box::new(move || {
                let induced = pres.induced_endomorphism(c)?;
                Ok(match induced.first_nonzero() {
                    Some((i, j, w)) => {
                        Outcome::pass(format!("induced entry ({},{}) = {w}", i + 1, j + 1))
                    }
                    None => Outcome::fail("induced endomorphism is zero"),
                })
            }),
        ));
    }
    checks.push((
        "deviation",
        Box::new(|| {
            let d = pres.deviation_report(&surface_point())?;
            let text = format!(
                "n = {}, rank = {}, deviation = {}",
                d.ambient, d.rank, d.deviation
            );
            Ok(if (d.ambient, d.rank, d.deviation) == (3, 2, 1) {
                Outcome::pass(text)
            } else {
                Outcome::fail(text)
            })
        }),
    ));

    let results = run_checks(checks, parallelism);
    let labels = ["d1", "d2", "d3"];
    let curvature = PAIRS
        .iter()
        .map(|&(i, j)| pres.curvature_report((labels[i], labels[j]), &ds[i], &ds[j]))
        .collect::<Result<Vec<_>>>()?;
    let deviation = pres.deviation_report(&surface_point())?;
    Ok(VerificationReport {
        example: ELLIPSOID.to_string(),
        parameters: Parameters { p, q, r },
        summary: summarize(&results),
        checks: results,
        curvature,
        deviation,
    })
}

fn verify_sphere(p: u32, q: u32, r: u32, parallelism: usize) -> Result<VerificationReport> {
    let ex = &build_sphere_line_bundle(p, q, r)?;
    let img = &ex.idempotent;
    let ds = &ex.derivations;
    let golden = |id: &str| catalog::expected(SPHERE, id, p, q, r);
    let dm: Vec<MatrixA> = ds.iter().map(|d| img.delta_phi(d)).collect::<Result<_>>()?;
    let commutators: Vec<MatrixA> = PAIRS
        .iter()
        .map(|&(i, j)| dm[i].commutator(&dm[j]))
        .collect::<Result<_>>()?;
    let unit = (p, q, r) == (1, 1, 1);

    let mut checks: Vec<(&'static str, CheckFn)> = Vec::new();
    checks.push((
        "P-involution",
        Box::new(|| {
            let id = MatrixA::identity(&ex.ring, 2);
            Ok(zero_matrix(
                &ex.involution.try_mul(&ex.involution)?.try_sub(&id)?,
            ))
        }),
    ));
    checks.push((
        "P-display",
        Box::new(|| equal_matrix(&ex.involution, &matrix_expected(golden("P")?)?)),
    ));
    checks.push((
        "P-printed",
        Box::new(|| {
            let printed = matrix_expected(golden("P-printed")?)?;
            Ok(if printed == ex.involution {
                Outcome::pass("printed entry (2,1) agrees since p = q")
            } else {
                Outcome::discrepancy(
                    "printed entry (2,1) reads y^p - i z^r; P^2 = I forces y^q - i z^r",
                )
            })
        }),
    ));
    checks.push((
        "M-idempotent",
        Box::new(|| Ok(zero_matrix(&ex.m().try_mul(ex.m())?.try_sub(ex.m())?))),
    ));
    checks.push((
        "L-idempotent",
        Box::new(|| {
            let l = ex.line_bundle.phi();
            Ok(zero_matrix(&l.try_mul(l)?.try_sub(l)?))
        }),
    ));
    for (k, name) in ["tangent-1", "tangent-2", "tangent-3"]
        .into_iter()
        .enumerate()
    {
        checks.push((
            name,
            Box::new(move || {
                let d = &ds[k];
                Ok(zero_scalar(&d.apply(&ex.ring.nf(ex.ring.modulus())?)?)
                    .tap_pass(|| format!("{d} kills f")))
            }),
        ));
    }
    checks.push((
        "rank-split",
        Box::new(|| {
            let pt = surface_point();
            let a = img.phi().rank_at_point(&pt)?;
            let b = img.psi().rank_at_point(&pt)?;
            let text = format!("rank M = {a}, rank (I - M) = {b}");
            Ok(if a + b == 2 && b == 1 {
                Outcome::pass(text)
            } else {
                Outcome::fail(text)
            })
        }),
    ));
    let names_sum = [
        "trace-sum-zero-12",
        "trace-sum-zero-13",
        "trace-sum-zero-23",
    ];
    let names_nz = [
        "trace-image-nonzero-12",
        "trace-image-nonzero-13",
        "trace-image-nonzero-23",
    ];
    for k in 0..3 {
        let c = &commutators[k];
        checks.push((
            names_sum[k],
            Box::new(move || {
                Ok(zero_scalar(
                    &(&img.trace_over_image(c)? + &img.trace_over_kernel(c)?),
                ))
            }),
        ));
    }
    for k in 0..3 {
        let c = &commutators[k];
        checks.push((
            names_nz[k],
            Box::new(move || {
                let t = img.trace_over_image(c)?;
                Ok(if t.is_zero() {
                    Outcome::fail("trace is zero")
                } else {
                    Outcome::pass(t.to_string())
                })
            }),
        ));
    }
    checks.push((
        "deviation",
        Box::new(|| {
            let d = ex.line_bundle.deviation_report(&surface_point())?;
            let text = format!(
                "n = {}, rank = {}, deviation = {}",
                d.ambient, d.rank, d.deviation
            );
            Ok(if (d.ambient, d.rank, d.deviation) == (2, 1, 1) {
                Outcome::pass(text)
            } else {
                Outcome::fail(text)
            })
        }),
    ));
    if unit {
        let dm = &dm;
        let commutators = &commutators;
        let minus_one = GaussianRational::from_integer(-1);
        checks.push((
            "D1M-display",
            Box::new(move || equal_matrix(&dm[0], &matrix_expected(golden("D1M")?)?)),
        ));
        checks.push((
            "D2M-display",
            Box::new(move || equal_matrix(&dm[1], &matrix_expected(golden("D2M")?)?)),
        ));
        let m1 = minus_one.clone();
        checks.push((
            "D3M-display",
            Box::new(move || {
                documented_matrix(
                    &dm[2],
                    &matrix_expected(golden("D3M")?)?,
                    &m1,
                    "sign of the printed D3(M)",
                )
            }),
        ));
        checks.push((
            "bracket-12",
            Box::new(move || {
                let br = ds[0].bracket(&ds[1])?;
                let want = ds[2].neg();
                Ok(if br == want {
                    Outcome::pass(format!("[D1, D2] = {br} = -D3"))
                } else {
                    Outcome::fail(format!("[D1, D2] = {br}"))
                })
            }),
        ));
        checks.push((
            "R12-display",
            Box::new(move || equal_matrix(&commutators[0], &matrix_expected(golden("R12")?)?)),
        ));
        let m1 = minus_one.clone();
        checks.push((
            "R13-display",
            Box::new(move || {
                documented_matrix(
                    &commutators[1],
                    &matrix_expected(golden("R13")?)?,
                    &m1,
                    "inherits the D3(M) sign",
                )
            }),
        ));
        let m1 = minus_one;
        checks.push((
            "R23-display",
            Box::new(move || {
                let printed = matrix_expected(golden("R23")?)?;
                if commutators[2] == printed {
                    return Ok(Outcome::pass(printed.to_string()));
                }
                let corrected = matrix_expected(golden("R23-corrected")?)?;
                let o =
                    documented_matrix(&commutators[2], &corrected, &m1, "inherits the D3(M) sign")?;
                Ok(match o.status {
                    Status::Fail => o,
                    _ => Outcome::discrepancy(format!(
                        "{}; printed entry (1,2) reads 2z(z-iz), read as 2z(z-iy)",
                        o.witness
                    )),
                })
            }),
        ));
        checks.push((
            "trace-display",
            Box::new(move || {
                let documented = [
                    GaussianRational::from_ratio(1, 2),
                    GaussianRational::from_ratio(-1, 2),
                ];
                let mut notes = Vec::new();
                let mut all_equal = true;
                for (k, id) in ["tr12", "tr13", "tr23"].into_iter().enumerate() {
                    let printed = scalar_expected(golden(id)?)?;
                    let t = img.trace_over_image(&commutators[k])?;
                    if t == printed {
                        notes.push(format!("{id} = printed"));
                        continue;
                    }
                    all_equal = false;
                    match documented.iter().find(|c| t == printed.scale(c)) {
                        Some(c) => notes.push(format!("{id} = {t} = {c} * printed")),
                        None => return Ok(Outcome::fail(format!("{id} = {t}, printed {printed}"))),
                    }
                }
                let text = notes.join("; ");
                Ok(if all_equal {
                    Outcome::pass(text)
                } else {
                    Outcome::discrepancy(text)
                })
            }),
        ));
    }

    let results = run_checks(checks, parallelism);
    let labels = ["D1", "D2", "D3"];
    let curvature = PAIRS
        .iter()
        .map(|&(i, j)| img.curvature_report((labels[i], labels[j]), &ds[i], &ds[j]))
        .collect::<Result<Vec<_>>>()?;
    let deviation = ex.line_bundle.deviation_report(&surface_point())?;
    Ok(VerificationReport {
        example: SPHERE.to_string(),
        parameters: Parameters { p, q, r },
        summary: summarize(&results),
        checks: results,
        curvature,
        deviation,
    })
}

trait TapPass {
    fn tap_pass(self, f: impl FnOnce() -> String) -> Self;
}

impl TapPass for Outcome {
    /// Replaces the witness of a passing outcome.
    fn tap_pass(self, f: impl FnOnce() -> String) -> Self {
        match self.status {
            Status::Pass => Outcome::pass(f()),
            _ => self,
        }
    }
}

/// Smallest parameter allowed for `example`.
pub fn min_parameter(example: &str) -> Result<u32> {
    match example {
        ELLIPSOID => Ok(2),
        SPHERE => Ok(1),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

/// Verifies every triple with `min <= p <= pmax` (etc.), ordered by `(p, q, r)`.
pub fn sweep(
    example: &str,
    pmax: u32,
    qmax: u32,
    rmax: u32,
    parallelism: usize,
) -> Result<SweepReport> {
    let lo = min_parameter(example)?;
    if pmax < lo || qmax < lo || rmax < lo {
        return Err(Error::InvalidParameter(format!(
            "{example} sweep bounds must be >= {lo}"
        )));
    }
    let mut triples = Vec::new();
    for p in lo..=pmax {
        for q in lo..=qmax {
            for r in lo..=rmax {
                triples.push((p, q, r));
            }
        }
    }
    let one = |&(p, q, r): &(u32, u32, u32)| verify(example, p, q, r, 1);
    let reports: Vec<VerificationReport> = if parallelism <= 1 {
        triples.iter().map(one).collect::<Result<_>>()?
    } else {
        pool(parallelism).install(|| triples.par_iter().map(one).collect::<Result<_>>())?
    };
    let summary = SweepSummary {
        triples: reports.len(),
        passed: reports.iter().filter(|r| r.passed()).count(),
        failed: reports.iter().filter(|r| !r.passed()).count(),
        discrepancies: reports.iter().map(|r| r.summary.discrepancy).sum(),
    };
    Ok(SweepReport {
        example: example.to_string(),
        bounds: Parameters {
            p: pmax,
            q: qmax,
            r: rmax,
        },
        reports,
        summary,
    })
}

/// Normal form of `expression` modulo `modulus` over the given variables.
pub fn eval(expression: &str, modulus: &str, vars: &crate::poly::Variables) -> Result<String> {
    let ring = crate::quotient::QuotientRing::from_text(modulus, vars)?;
    Ok(ring.parse(expression)?.to_string())
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn is<T: Send + Sync>() {}
    is::<Derivation>();
    is::<MatrixA>();
}
