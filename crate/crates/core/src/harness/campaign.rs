//! Campaign drivers: sample inputs, run the single-point checks, collect
//! reports, and replay reports from their recorded inputs.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::checks::{
    cqhr_point, deg2_point, logconcavity_point, mason_counts_point, mason_point, qhr_point, simplification_point,
    ulc_point, Outcome,
};
use super::config::CampaignConfig;
use super::corpus::CorpusEntry;
use super::report::{Check, Theorem, Verdict, VerificationReport};
use super::sampling::{
    admissible_alphas, boundary_points, coefficient_family, nonzero_integer_point, positive_points, q_values,
    random_q,
};
use crate::error::{Error, Result};
use crate::matroid::{Matroid, MatroidSpec};
use crate::potts::{CoeffSeq, EvalPoint, MultiIndex};
use crate::rng::rng_for;
use crate::scalar::{rational, Mode, Rational, Scalar};

fn name_stream(name: &str) -> u64 {
    // FNV-1a, so streams follow the matroid and not its corpus position.
    name.bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn theorem_stream(t: Theorem) -> u64 {
    Theorem::ALL.iter().position(|&x| x == t).unwrap_or(0) as u64
}

fn to_t<T: Scalar>(v: &[Rational]) -> Vec<T> {
    v.iter().map(T::from_rational).collect()
}

fn scalars_json<T: Scalar>(v: &[T]) -> Value {
    Value::Array(v.iter().map(T::to_json).collect())
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Exact => "exact",
        Mode::Float => "float",
    }
}

struct Inputs<'a> {
    entry: &'a CorpusEntry,
    mode: Mode,
    fields: Vec<(&'static str, Value)>,
}

impl<'a> Inputs<'a> {
    fn new(entry: &'a CorpusEntry, mode: Mode) -> Self {
        Inputs { entry, mode, fields: Vec::new() }
    }

    fn with(mut self, key: &'static str, v: Value) -> Self {
        self.fields.push((key, v));
        self
    }

    fn check(self, theorem: Theorem, o: Outcome) -> Check {
        let mut inputs = json!({
            "matroid": serde_json::to_value(self.entry.matroid.to_spec()).expect("specs serialize"),
            "mode": mode_name(self.mode),
        });
        for (k, v) in self.fields {
            inputs[k] = v;
        }
        Check {
            theorem,
            matroid: self.entry.name.clone(),
            inputs,
            verdict: o.verdict,
            witness: o.witness,
            annotations: o.annotations,
        }
    }
}

fn dispatch<F, G>(mode: Mode, exact: F, float: G) -> Result<VerificationReport>
where
    F: FnOnce() -> Result<VerificationReport>,
    G: FnOnce() -> Result<VerificationReport>,
{
    match mode {
        Mode::Exact => exact(),
        Mode::Float => float(),
    }
}

/// One positive eigenvalue of the Hessian of `Z_M` over the `q` grid and
/// seeded positive `w`.
pub fn verify_theorem1(entry: &CorpusEntry, config: &CampaignConfig) -> Result<VerificationReport> {
    dispatch(config.mode, || theorem1::<Rational>(entry, config), || theorem1::<f64>(entry, config))
}

fn theorem1<T: Scalar>(entry: &CorpusEntry, config: &CampaignConfig) -> Result<VerificationReport> {
    let m = &entry.matroid;
    let mut report = VerificationReport::new(&config.campaign);
    let stream = [theorem_stream(Theorem::QHr), name_stream(&entry.name)];
    let mut rng = rng_for(config.seed, &stream);
    let qs = q_values(config, &mut rng);
    if m.n() < 2 {
        let o = qhr_point::<T>(m, &T::one(), &EvalPoint::ones(m.n()))?;
        report.push(Inputs::new(entry, config.mode).check(Theorem::QHr, o));
        return Ok(report);
    }
    for (qi, q) in qs.iter().enumerate() {
        let mut rng = rng_for(config.seed, &[stream[0], stream[1], qi as u64]);
        for w in positive_points(&mut rng, m.n() + 1, config.w_samples, config) {
            let (qt, wt) = (T::from_rational(q), to_t::<T>(&w));
            let o = qhr_point(m, &qt, &EvalPoint::new(wt.clone()))?;
            let inputs = Inputs::new(entry, config.mode)
                .with("q", qt.to_json())
                .with("w", scalars_json(&wt));
            report.push(inputs.check(Theorem::QHr, o));
        }
    }
    Ok(report)
}

/// Nonsingularity and one positive eigenvalue for derivatives of
/// `Z_{M,c}` with strictly log-concave `c`.
pub fn verify_theorem2(entry: &CorpusEntry, config: &CampaignConfig) -> Result<VerificationReport> {
    dispatch(config.mode, || theorem2::<Rational>(entry, config), || theorem2::<f64>(entry, config))
}

fn theorem2<T: Scalar>(entry: &CorpusEntry, config: &CampaignConfig) -> Result<VerificationReport> {
    let m = &entry.matroid;
    let n = m.n();
    let mut report = VerificationReport::new(&config.campaign);
    let base = [theorem_stream(Theorem::CqHr), name_stream(&entry.name)];
    let grid = config.grid_with_one();
    for (ci, c) in coefficient_family(n, config)?.iter().enumerate() {
        let ct = CoeffSeq::new(to_t::<T>(c.values()))?;
        let mut rng = rng_for(config.seed, &[base[0], base[1], ci as u64]);
        let alphas = admissible_alphas(&mut rng, n, config.alpha_samples);
        for (ai, alpha) in alphas.iter().enumerate() {
            let mut rng = rng_for(config.seed, &[base[0], base[1], ci as u64, ai as u64]);
            let ws = positive_points(&mut rng, n + 1, config.qw_samples, config);
            for (k, w) in ws.iter().enumerate() {
                let q = if k < grid.len() { grid[k].clone() } else { random_q(&mut rng) };
                let (qt, wt) = (T::from_rational(&q), to_t::<T>(w));
                let o = cqhr_point(m, &ct, &qt, alpha, &EvalPoint::new(wt.clone()))?;
                let inputs = Inputs::new(entry, config.mode)
                    .with("c", ct.to_json())
                    .with("q", qt.to_json())
                    .with("alpha", serde_json::to_value(alpha).expect("indices serialize"))
                    .with("w", scalars_json(&wt));
                report.push(inputs.check(Theorem::CqHr, o));
            }
        }
    }
    if report.checks.is_empty() {
        let o = Outcome {
            verdict: Verdict::NotApplicable,
            witness: Value::Null,
            annotations: vec!["no multi-index leaves degree two or more".into()],
        };
        report.push(Inputs::new(entry, config.mode).check(Theorem::CqHr, o));
    }
    Ok(report)
}

/// The degree-two inequalities at one explicit point.
pub fn verify_degree_two(
    entry: &CorpusEntry,
    c: &CoeffSeq<Rational>,
    q: &Rational,
    w: &[Rational],
    mode: Mode,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("deg2");
    let check = |o: Outcome, c: Value, q: Value, w: Value| {
        Inputs::new(entry, mode)
            .with("c", c)
            .with("q", q)
            .with("w", w)
            .check(Theorem::DegreeTwo, o)
    };
    match mode {
        Mode::Exact => {
            let o = deg2_point(&entry.matroid, c, q, w)?;
            report.push(check(o, c.to_json(), q.to_json(), scalars_json(w)));
        }
        Mode::Float => {
            let (ct, qt, wt) = (CoeffSeq::new(to_t::<f64>(c.values()))?, q.to_f64(), to_t::<f64>(w));
            let o = deg2_point(&entry.matroid, &ct, &qt, &wt)?;
            report.push(check(o, ct.to_json(), qt.to_json(), scalars_json(&wt)));
        }
    }
    Ok(report.finish())
}

/// Sign-mixed point with `Z^1_M(q, w) = 0`, obtained by solving for one
/// coordinate. `None` when every other coordinate came out zero.
pub fn zero_z1_point(m: &Matroid, q: &Rational, rng: &mut impl Rng) -> Option<Vec<Rational>> {
    let n = m.n();
    let coef: Vec<Rational> = (1..=n)
        .map(|i| {
            if m.loops().contains(i) {
                rational(1, 1)
            } else {
                rational(1, 1) / q.clone()
            }
        })
        .collect();
    let mut w = nonzero_integer_point(rng, n);
    let j = rng.gen_range(0..n);
    let rest = (0..n)
        .filter(|&i| i != j)
        .fold(rational(0, 1), |a, i| a + coef[i].clone() * w[i].clone());
    w[j] = -rest / coef[j].clone();
    w.iter().any(|x| *x != rational(0, 1)).then_some(w)
}

/// Degree-two campaign: for each `q` and each strictly log-concave `c`,
/// seeded sign-mixed points plus points on `Z^1 = 0`.
pub fn degree_two_campaign(entry: &CorpusEntry, config: &CampaignConfig) -> Result<VerificationReport> {
    let m = &entry.matroid;
    let n = m.n();
    let mut report = VerificationReport::new(&config.campaign);
    let base = [theorem_stream(Theorem::DegreeTwo), name_stream(&entry.name)];
    let mut rng = rng_for(config.seed, &base);
    let qs = q_values(config, &mut rng);
    let cs = coefficient_family(n, config)?;
    if n < 2 {
        let o = Outcome {
            verdict: Verdict::NotApplicable,
            witness: Value::Null,
            annotations: vec!["ground set needs at least two elements".into()],
        };
        report.push(Inputs::new(entry, config.mode).check(Theorem::DegreeTwo, o));
        return Ok(report);
    }
    for (qi, q) in qs.iter().enumerate() {
        let c = &cs[qi % cs.len()];
        let mut rng = rng_for(config.seed, &[base[0], base[1], qi as u64]);
        let mut points: Vec<Vec<Rational>> = (0..config.w_samples)
            .map(|_| nonzero_integer_point(&mut rng, n))
            .collect();
        points.extend(zero_z1_point(m, q, &mut rng));
        for w in points {
            report.extend(verify_degree_two(entry, c, q, &w, config.mode)?);
        }
    }
    Ok(report)
}

/// Ultra log-concavity of the rank strata at nonnegative `w`.
pub fn verify_ulc(entry: &CorpusEntry, config: &CampaignConfig) -> Result<VerificationReport> {
    dispatch(config.mode, || ulc::<Rational>(entry, config), || ulc::<f64>(entry, config))
}

fn ulc<T: Scalar>(entry: &CorpusEntry, config: &CampaignConfig) -> Result<VerificationReport> {
    let m = &entry.matroid;
    let mut report = VerificationReport::new(&config.campaign);
    let base = [theorem_stream(Theorem::Ulc), name_stream(&entry.name)];
    let mut rng = rng_for(config.seed, &base);
    for (qi, q) in q_values(config, &mut rng).iter().enumerate() {
        let mut rng = rng_for(config.seed, &[base[0], base[1], qi as u64]);
        for w in boundary_points(&mut rng, m.n(), config.w_samples.max(1), config) {
            let (qt, wt) = (T::from_rational(q), to_t::<T>(&w));
            let o = ulc_point(m, &qt, &wt)?;
            let inputs = Inputs::new(entry, config.mode)
                .with("q", qt.to_json())
                .with("w", scalars_json(&wt));
            report.push(inputs.check(Theorem::Ulc, o));
        }
    }
    Ok(report)
}

/// Mason's inequality on counts (two enumeration paths) plus the weighted
/// form at seeded nonnegative `w`.
pub fn verify_mason(entry: &CorpusEntry, config: &CampaignConfig) -> Result<VerificationReport> {
    let m = &entry.matroid;
    let mut report = VerificationReport::new(&config.campaign);
    report.push(Inputs::new(entry, Mode::Exact).check(Theorem::Mason, mason_counts_point(m)?));
    let mut rng = rng_for(config.seed, &[theorem_stream(Theorem::Mason), name_stream(&entry.name)]);
    let points = boundary_points(&mut rng, m.n(), config.w_samples, config);
    for w in points.into_iter().skip(1) {
        let (o, wj) = match config.mode {
            Mode::Exact => (mason_point(m, &w)?, scalars_json(&w)),
            Mode::Float => {
                let wt = to_t::<f64>(&w);
                (mason_point(m, &wt)?, scalars_json(&wt))
            }
        };
        report.push(Inputs::new(entry, config.mode).with("w", wj).check(Theorem::Mason, o));
    }
    Ok(report)
}

/// The inequality chain through the simplification at `w = 1` and at
/// seeded nonnegative `w`.
pub fn verify_simplification_bound(entry: &CorpusEntry, config: &CampaignConfig) -> Result<VerificationReport> {
    let m = &entry.matroid;
    let mut report = VerificationReport::new(&config.campaign);
    let mut rng = rng_for(
        config.seed,
        &[theorem_stream(Theorem::Simplification), name_stream(&entry.name)],
    );
    let points = boundary_points(&mut rng, m.n(), config.w_samples.max(1), config);
    for w in points {
        let (o, wj) = match config.mode {
            Mode::Exact => (simplification_point(m, &w)?, scalars_json(&w)),
            Mode::Float => {
                let wt = to_t::<f64>(&w);
                (simplification_point(m, &wt)?, scalars_json(&wt))
            }
        };
        report.push(Inputs::new(entry, config.mode).with("w", wj).check(Theorem::Simplification, o));
    }
    Ok(report)
}

/// Negative semidefiniteness of the Hessian of `log Z_M` at positive `w`.
pub fn verify_logz_concavity(entry: &CorpusEntry, config: &CampaignConfig) -> Result<VerificationReport> {
    dispatch(config.mode, || logz::<Rational>(entry, config), || logz::<f64>(entry, config))
}

fn logz<T: Scalar>(entry: &CorpusEntry, config: &CampaignConfig) -> Result<VerificationReport> {
    let m = &entry.matroid;
    let mut report = VerificationReport::new(&config.campaign);
    let base = [theorem_stream(Theorem::LogConcavity), name_stream(&entry.name)];
    let mut rng = rng_for(config.seed, &base);
    for (qi, q) in q_values(config, &mut rng).iter().enumerate() {
        let mut rng = rng_for(config.seed, &[base[0], base[1], qi as u64]);
        for w in positive_points(&mut rng, m.n() + 1, config.w_samples, config) {
            let (qt, wt) = (T::from_rational(q), to_t::<T>(&w));
            let o = logconcavity_point(m, &qt, &EvalPoint::new(wt.clone()))?;
            let inputs = Inputs::new(entry, config.mode)
                .with("q", qt.to_json())
                .with("w", scalars_json(&wt));
            report.push(inputs.check(Theorem::LogConcavity, o));
        }
    }
    Ok(report)
}

/// Runs one theorem's campaign on one corpus entry.
pub fn verify_entry(theorem: Theorem, entry: &CorpusEntry, config: &CampaignConfig) -> Result<VerificationReport> {
    match theorem {
        Theorem::QHr => verify_theorem1(entry, config),
        Theorem::CqHr => verify_theorem2(entry, config),
        Theorem::DegreeTwo => degree_two_campaign(entry, config),
        Theorem::Ulc => verify_ulc(entry, config),
        Theorem::Mason => verify_mason(entry, config),
        Theorem::Simplification => verify_simplification_bound(entry, config),
        Theorem::LogConcavity => verify_logz_concavity(entry, config),
    }
}

/// Runs the given theorems over the corpus. Work is spread over
/// `config.workers` threads; the report lists checks in corpus order for
/// each theorem regardless of scheduling.
pub fn run_campaign(
    corpus: &[CorpusEntry],
    theorems: &[Theorem],
    config: &CampaignConfig,
) -> Result<VerificationReport> {
    config.validate()?;
    let start = Instant::now();
    let tasks: Vec<(Theorem, &CorpusEntry)> = theorems
        .iter()
        .flat_map(|&t| corpus.iter().map(move |e| (t, e)))
        .collect();
    let run = || -> Vec<Result<VerificationReport>> {
        tasks
            .par_iter()
            .map(|&(t, e)| verify_entry(t, e, config))
            .collect()
    };
    let results = match config.workers {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::Config(format!("cannot start {k} workers: {e}")))?
            .install(run),
        None => run(),
    };
    let mut report = VerificationReport::new(&config.campaign);
    for r in results {
        report.extend(r?);
    }
    let mut report = report.finish();
    report.elapsed = Some(start.elapsed());
    Ok(report)
}

fn field<'a>(inputs: &'a Value, key: &str) -> Result<&'a Value> {
    inputs
        .get(key)
        .ok_or_else(|| Error::Parse(format!("check inputs lack {key:?}")))
}

fn parse_list<T: Scalar>(v: &Value) -> Result<Vec<T>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected an array of scalars".into()))?
        .iter()
        .map(T::from_json)
        .collect()
}

fn replay_typed<T: Scalar>(check: &Check, m: &Matroid) -> Result<Outcome> {
    let inputs = &check.inputs;
    let q = || T::from_json(field(inputs, "q")?);
    let w = || parse_list::<T>(field(inputs, "w")?);
    match check.theorem {
        Theorem::QHr => match inputs.get("q") {
            Some(_) => qhr_point(m, &q()?, &EvalPoint::new(w()?)),
            None => qhr_point::<T>(m, &T::one(), &EvalPoint::ones(m.n())),
        },
        Theorem::CqHr => {
            if inputs.get("alpha").is_none() {
                return Ok(Outcome {
                    verdict: Verdict::NotApplicable,
                    witness: Value::Null,
                    annotations: check.annotations.clone(),
                });
            }
            let c = CoeffSeq::new(parse_list::<T>(field(inputs, "c")?)?)?;
            let alpha: MultiIndex = serde_json::from_value(field(inputs, "alpha")?.clone())
                .map_err(|e| Error::Parse(e.to_string()))?;
            cqhr_point(m, &c, &q()?, &alpha, &EvalPoint::new(w()?))
        }
        Theorem::DegreeTwo => {
            if inputs.get("w").is_none() {
                return Ok(Outcome {
                    verdict: Verdict::NotApplicable,
                    witness: Value::Null,
                    annotations: check.annotations.clone(),
                });
            }
            let c = CoeffSeq::new(parse_list::<T>(field(inputs, "c")?)?)?;
            deg2_point(m, &c, &q()?, &w()?)
        }
        Theorem::Ulc => ulc_point(m, &q()?, &w()?),
        Theorem::Mason => match inputs.get("w") {
            Some(_) => mason_point(m, &w()?),
            None => mason_counts_point(m),
        },
        Theorem::Simplification => simplification_point(m, &w()?),
        Theorem::LogConcavity => logconcavity_point(m, &q()?, &EvalPoint::new(w()?)),
    }
}

/// Re-runs a recorded check from its inputs.
pub fn replay_check(check: &Check) -> Result<Outcome> {
    let spec: MatroidSpec = serde_json::from_value(field(&check.inputs, "matroid")?.clone())
        .map_err(|e| Error::Parse(format!("matroid: {e}")))?;
    let m = spec.build()?;
    match field(&check.inputs, "mode")?.as_str() {
        Some("exact") => replay_typed::<Rational>(check, &m),
        Some("float") => replay_typed::<f64>(check, &m),
        other => Err(Error::Parse(format!("unknown mode {other:?}"))),
    }
}

/// Verdicts obtained by replaying every check of a report.
pub fn reverify(report: &VerificationReport) -> Result<Vec<Verdict>> {
    report.checks.iter().map(|c| replay_check(c).map(|o| o.verdict)).collect()
}
