use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use potts_hodge::harness::{
    generate_corpus, run_campaign, CampaignConfig, CorpusEntry, Theorem, VerificationReport,
};
use potts_hodge::potts::{active_variables, hessian, is_identically_zero, partial_eval, zk_eval, WeightedPotts};
use potts_hodge::scalar::{parse_rational, parse_scalar, parse_scalar_list};
use potts_hodge::spectral::{float_eigenvalues, signature};
use potts_hodge::{CoeffSeq, Error, EvalPoint, Matroid, Mode, MultiIndex, Rational, Scalar};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

/// Multivariate Tutte polynomials of matroids and the one-positive-eigenvalue
/// property of their Hessians.
///
/// Exit codes: 0 success, 1 a verification check failed, 2 usage,
/// configuration, parse or not-a-matroid error, 3 ground set above the
/// enumeration cap (POTTS_HODGE_MAX_N).
#[derive(Parser)]
#[command(name = "potts-hodge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Z^k_M(q, w), Z_{M,c}(q, w) or a partial derivative.
    Eval(EvalArgs),
    /// Print the Hessian of a partial derivative of Z_{M,c}.
    Hessian(PointArgs),
    /// Inertia of the Hessian plus diagnostic float eigenvalues.
    Spectrum(PointArgs),
    /// Run verification campaigns and write a report.
    Verify(VerifyArgs),
    /// List the matroids of a corpus spec.
    Corpus(CorpusArgs),
    /// Independent-set counts and the strong Mason inequality.
    Mason(MasonArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct PointArgs {
    /// Matroid JSON file, or inline JSON starting with '{'.
    matroid: String,
    /// Positive rational `num/den`.
    #[arg(long, default_value = "1")]
    q: String,
    /// Comma-separated point (w_0, ..., w_n); defaults to all ones.
    #[arg(long)]
    w: Option<String>,
    /// Comma-separated coefficients c_0, ..., c_n; defaults to all ones.
    #[arg(long)]
    c: Option<String>,
    /// Comma-separated derivative orders alpha_0, ..., alpha_n.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Evaluate the rank stratum Z^k_M; `--w` then holds w_1, ..., w_n.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Corpus spec (e.g. `default`, `uniform:max_n=4;graphic:K3`) or a
    /// matroid JSON file.
    #[arg(default_value = "default")]
    target: String,
    /// qHR, cqHR, deg2, ulc, mason, simplification, logconcavity or all.
    #[arg(long, default_value = "all")]
    theorem: String,
    /// Sample points per (matroid, q); also (q, w) pairs per multi-index.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated q values in (0, 1].
    #[arg(long)]
    q_grid: Option<String>,
    /// Explicit strictly log-concave coefficients for cqHR and deg2.
    #[arg(long)]
    c: Option<String>,
    /// Report file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Format of the `--out` file.
    #[arg(long, value_enum, default_value = "json")]
    format: ReportFormat,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
    /// Print the JSON report instead of the summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(default_value = "default")]
    spec: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct MasonArgs {
    matroid: String,
    #[arg(long)]
    json: bool,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit { .. } => EXIT_RESOURCE,
        Error::ImpossibleState(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Hessian(a) => cmd_hessian(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Corpus(a) => cmd_corpus(a),
        Command::Mason(a) => cmd_mason(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn load_matroid(arg: &str) -> Result<Matroid, Error> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Config(format!("cannot read {arg}: {e}")))?
    };
    Matroid::from_json(&text)
}

struct Point<T> {
    c: CoeffSeq<T>,
    q: T,
    w: EvalPoint<T>,
    alpha: MultiIndex,
}

fn parse_point<T: Scalar>(m: &Matroid, a: &PointArgs) -> Result<Point<T>, Error> {
    let n = m.n();
    let q: T = parse_scalar(&a.q)?;
    if !q.is_positive() {
        return Err(Error::InvalidParameters(format!("q must be > 0, got {}", a.q)));
    }
    let c = match &a.c {
        Some(s) => CoeffSeq::new(parse_scalar_list(s)?)?,
        None => CoeffSeq::ones(n),
    };
    let w = match &a.w {
        Some(s) => EvalPoint::new(parse_scalar_list(s)?),
        None => EvalPoint::ones(n),
    };
    if w.len() != n + 1 {
        return Err(Error::InvalidParameters(format!(
            "--w needs {} values (w_0, ..., w_n), got {}",
            n + 1,
            w.len()
        )));
    }
    let alpha = match &a.alpha {
        Some(s) => {
            let v = s
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse(format!("invalid --alpha {s:?}: {e}")))?;
            if v.len() != n + 1 {
                return Err(Error::InvalidParameters(format!(
                    "--alpha needs {} entries, got {}",
                    n + 1,
                    v.len()
                )));
            }
            MultiIndex::new(v)
        }
        None => MultiIndex::zero(n),
    };
    Ok(Point { c, q, w, alpha })
}

fn print_value<T: Scalar>(value: &T, json: bool) {
    let exact = render(value);
    if json {
        println!("{}", json!({"value": exact, "float": value.to_f64()}));
    } else if T::MODE == Mode::Exact && exact.contains('/') {
        println!("{exact} ≈ {}", value.to_f64());
    } else {
        println!("{exact}");
    }
}

fn cmd_eval(a: EvalArgs) -> Result<u8, Error> {
    match a.point.mode {
        ModeArg::Exact => eval_typed::<Rational>(&a),
        ModeArg::Float => eval_typed::<f64>(&a),
    }
}

fn eval_typed<T: Scalar>(a: &EvalArgs) -> Result<u8, Error> {
    let m = load_matroid(&a.point.matroid)?;
    let value = match a.k {
        Some(k) => {
            let q: T = parse_scalar(&a.point.q)?;
            let w: Vec<T> = match &a.point.w {
                Some(s) => parse_scalar_list(s)?,
                None => vec![T::one(); m.n()],
            };
            if w.len() != m.n() {
                return Err(Error::InvalidParameters(format!(
                    "--w with --k needs {} values (w_1, ..., w_n), got {}",
                    m.n(),
                    w.len()
                )));
            }
            zk_eval(&m, k, &q, &w)?
        }
        None => {
            let p = parse_point::<T>(&m, &a.point)?;
            partial_eval(&m, &p.c, &p.q, &p.alpha, &p.w)?
        }
    };
    print_value(&value, a.point.json);
    Ok(0)
}

fn cmd_hessian(a: PointArgs) -> Result<u8, Error> {
    match a.mode {
        ModeArg::Exact => hessian_typed::<Rational>(&a),
        ModeArg::Float => hessian_typed::<f64>(&a),
    }
}

fn hessian_typed<T: Scalar>(a: &PointArgs) -> Result<u8, Error> {
    let m = load_matroid(&a.matroid)?;
    let p = parse_point::<T>(&m, a)?;
    let h = hessian(&m, &p.c, &p.q, &p.alpha, &p.w)?;
    if a.json {
        println!("{}", h.to_json());
    } else {
        for row in h.rows() {
            let cells: Vec<String> = row.iter().map(render).collect();
            println!("{}", cells.join("\t"));
        }
    }
    Ok(0)
}

fn render<T: Scalar>(v: &T) -> String {
    match v.to_json() {
        Value::Object(map) => {
            let part = |k: &str| map.get(k).and_then(Value::as_str).unwrap_or_default().to_string();
            match part("den").as_str() {
                "1" => part("num"),
                den => format!("{}/{den}", part("num")),
            }
        }
        other => other.to_string(),
    }
}

fn cmd_spectrum(a: PointArgs) -> Result<u8, Error> {
    match a.mode {
        ModeArg::Exact => spectrum_typed::<Rational>(&a),
        ModeArg::Float => spectrum_typed::<f64>(&a),
    }
}

fn spectrum_typed<T: Scalar>(a: &PointArgs) -> Result<u8, Error> {
    let m = load_matroid(&a.matroid)?;
    let p = parse_point::<T>(&m, a)?;
    let degree = WeightedPotts::new(&m, &p.c, &p.q)?.derivative_degree(&p.alpha);
    if is_identically_zero(&m, &p.c, &p.q, &p.alpha) || degree.is_none() {
        if a.json {
            println!("{}", json!({"identically_zero": true}));
        } else {
            println!("derivative is identically zero");
        }
        return Ok(0);
    }
    let h = hessian(&m, &p.c, &p.q, &p.alpha, &p.w)?;
    let sig = signature(&h)?;
    let eig = float_eigenvalues(&h.to_f64());
    let active = active_variables(m.n(), &p.alpha);
    let restricted = if active.len() < h.dim() {
        Some(signature(&h.principal(&active))?)
    } else {
        None
    };
    if a.json {
        let mut out = json!({
            "signature": sig,
            "eigenvalues": eig,
            "degree": degree,
        });
        if let Some(r) = restricted {
            out["active"] = json!(active);
            out["active_signature"] = json!(r);
        }
        println!("{out}");
    } else {
        println!("({},{},{})", sig.n_pos, sig.n_neg, sig.n_zero);
        let eig: Vec<String> = eig.iter().map(|l| format!("{:.6}", l + 0.0)).collect();
        println!("eigenvalues: {}", eig.join(" "));
        if let Some(r) = restricted {
            println!("on active variables {active:?}: ({},{},{})", r.n_pos, r.n_neg, r.n_zero);
        }
    }
    Ok(0)
}

fn parse_theorems(s: &str) -> Result<Vec<Theorem>, Error> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(Theorem::ALL.to_vec());
    }
    s.split(',').map(|t| Theorem::parse(t.trim())).collect()
}

fn cmd_verify(a: VerifyArgs) -> Result<u8, Error> {
    let theorems = parse_theorems(&a.theorem)?;
    let mut config = CampaignConfig {
        campaign: a.target.clone(),
        seed: a.seed,
        mode: a.mode.into(),
        workers: a.workers,
        ..Default::default()
    };
    if let Some(t) = a.trials {
        config.w_samples = t;
        config.qw_samples = t;
    }
    if let Some(g) = &a.q_grid {
        config.q_grid = g.split(',').map(parse_rational).collect::<Result<_, _>>()?;
    }
    if let Some(c) = &a.c {
        config.c_override = Some(c.split(',').map(parse_rational).collect::<Result<_, _>>()?);
    }
    config.validate()?;
    let corpus = if Path::new(&a.target).is_file() || a.target.trim_start().starts_with('{') {
        vec![CorpusEntry::new(a.target.clone(), load_matroid(&a.target)?)]
    } else {
        generate_corpus(&a.target)?
    };
    if let Some(c) = &config.c_override {
        if let Some(e) = corpus.iter().find(|e| e.matroid.n() + 1 != c.len()) {
            return Err(Error::Config(format!(
                "--c has {} entries but {} has {} elements",
                c.len(),
                e.name,
                e.matroid.n()
            )));
        }
    }
    let report = run_campaign(&corpus, &theorems, &config)?;
    if let Some(path) = &a.out {
        let text = match a.format {
            ReportFormat::Json => report.to_json() + "\n",
            ReportFormat::Csv => report_csv(&report)?,
        };
        std::fs::write(path, text).map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
    }
    if a.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.summary_text());
        print_failures(&report);
    }
    Ok(if report.all_passed() { 0 } else { EXIT_FAIL })
}

/// One row per check; inputs and witness are embedded as JSON text.
fn report_csv(report: &VerificationReport) -> Result<String, Error> {
    let csv_err = |e: csv::Error| Error::Config(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["theorem", "matroid", "verdict", "inputs", "witness", "annotations"])
        .map_err(csv_err)?;
    for c in &report.checks {
        let verdict = serde_json::to_value(c.verdict).expect("verdicts serialize");
        w.write_record([
            c.theorem.name(),
            &c.matroid,
            verdict.as_str().unwrap_or_default(),
            &c.inputs.to_string(),
            &c.witness.to_string(),
            &c.annotations.join("; "),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn print_failures(report: &VerificationReport) {
    for c in report.failures().take(10) {
        println!("FAIL {} on {}: inputs {}", c.theorem.name(), c.matroid, c.inputs);
        if !c.witness.is_null() {
            println!("     witness {}", c.witness);
        }
    }
}

fn cmd_corpus(a: CorpusArgs) -> Result<u8, Error> {
    let corpus = generate_corpus(&a.spec)?;
    if a.json {
        let entries: Vec<Value> = corpus
            .iter()
            .map(|e| {
                json!({
                    "name": e.name,
                    "n": e.matroid.n(),
                    "rank": e.matroid.full_rank(),
                    "matroid": e.matroid.to_spec(),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&entries).expect("corpus serializes"));
    } else {
        for e in &corpus {
            println!("{:<28} n={} rank={}", e.name, e.matroid.n(), e.matroid.full_rank());
        }
        println!("{} matroids", corpus.len());
    }
    Ok(0)
}

fn cmd_mason(a: MasonArgs) -> Result<u8, Error> {
    let m = load_matroid(&a.matroid)?;
    let entry = CorpusEntry::new(a.matroid.clone(), m);
    let config = CampaignConfig {
        campaign: "mason".into(),
        w_samples: 1,
        ..Default::default()
    };
    let report = run_campaign(&[entry], &[Theorem::Mason], &config)?;
    let counts = report.checks[0].witness.get("counts").cloned().unwrap_or(Value::Null);
    if a.json {
        println!("{}", report.to_json());
    } else {
        println!("independent sets by size: {counts}");
        for c in &report.checks {
            println!("{:?}: {}", c.verdict, c.annotations.join("; "));
        }
    }
    Ok(if report.all_passed() { 0 } else { EXIT_FAIL })
}
