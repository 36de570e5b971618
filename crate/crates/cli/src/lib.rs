//! Argument parsing, dispatch and rendering for the `rankone` binary.
//!
//! Every command produces one serializable record. `--json` prints it inside
//! a versioned envelope, otherwise it is rendered as a plain table.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use rankone_core::compact_picture::{composition_factors, scaled_compact_eigenvalue, FactorRecord, DEFAULT_BOUND};
use rankone_core::fourier_picture::{a_f, ordered_map};
use rankone_core::restriction::{branch_to_pbar, whittaker_space, ConstituentRecord};
use rankone_core::unitary_dual::{classify, enumerate_unitary_dual, Classification, DualItemRecord};
use rankone_core::weight_lattice::{enumerate_ktypes, enumerate_tau};
use rankone_core::{Error as CoreError, HighestWeight, LambdaSpec, ParamContext, PrincipalSeriesPoint, Rational};
use rankone_numeric::suite::{run_suite, Suite};
use rankone_numeric::{Report, Tolerances};

pub const SCHEMA: &str = "1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "rankone", version, about = "Principal series of SO0(n+1,1): exact tables and numeric checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct PointArgs {
    #[arg(long)]
    pub n: usize,
    /// Highest weight of M = SO(n) as comma separated integers; zero if omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<String>,
    /// Rational such as 3/2, or i3/2 for a pure imaginary value.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Picture {
    Compact,
    Fourier,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Unitarity verdict for a point, with one line per constituent when reducible.
    Classify(PointArgs),
    /// Composition series at a point.
    Factors(PointArgs),
    /// K-type eigenvalues (compact) or M_xi-type multipliers (fourier).
    Eigenvalues {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value = "compact")]
        picture: Picture,
        /// Restrict to one K-type (compact) or M_xi-type (fourier).
        #[arg(long, alias = "tau", allow_hyphen_values = true)]
        alpha: Option<String>,
        /// Largest first entry of the listed K-types.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Unitary dual up to a bound on sigma and j.
    Dual {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: i64,
        #[arg(long)]
        json: bool,
    },
    /// Restriction of each unitarizable constituent to the minimal parabolic.
    Branch(PointArgs),
    /// Whittaker vectors of each constituent.
    Whittaker(PointArgs),
    /// Numeric verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: String,
    pub command: String,
    pub result: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub n: usize,
    pub sigma: String,
    pub lambda: LambdaSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub factor: FactorRecord,
    pub unitarizable: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyRecord {
    pub point: PointRecord,
    pub classification: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constituents: Vec<VerdictRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub factor: FactorRecord,
    pub subrepresentation: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorsRecord {
    pub point: PointRecord,
    pub factors: Vec<FactorEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenvalueRecord {
    pub point: PointRecord,
    pub picture: Picture,
    #[serde(with = "ordered_map")]
    pub values: Vec<(String, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualRecord {
    pub n: usize,
    pub bound: i64,
    pub items: Vec<DualItemRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchEntry {
    pub factor: FactorRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constituents: Option<Vec<ConstituentRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchRecord {
    pub point: PointRecord,
    pub constituents: Vec<BranchEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhittakerEntry {
    pub factor: FactorRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub taus: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_dim: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhittakerRecord {
    pub point: PointRecord,
    pub constituents: Vec<WhittakerEntry>,
}

/// Rejected input; the message names the violated invariant.
#[derive(Debug)]
pub struct Invalid(pub String);

impl From<CoreError> for Invalid {
    fn from(e: CoreError) -> Self {
        Invalid(e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Invalid>;

pub fn parse_point(a: &PointArgs) -> Outcome<PrincipalSeriesPoint> {
    let ctx = ParamContext::new(a.n)?;
    let sigma = match &a.sigma {
        Some(s) => ctx.sigma(s).map_err(|e| Invalid(format!("--sigma {s:?}: {e}")))?,
        None => HighestWeight::zero(a.n)?,
    };
    let lambda: LambdaSpec = a
        .lambda
        .parse()
        .map_err(|e| Invalid(format!("--lambda {:?}: {e}; expected p/q or i<p/q>", a.lambda)))?;
    Ok(PrincipalSeriesPoint::new(ctx, sigma, lambda)?)
}

fn point_record(p: &PrincipalSeriesPoint) -> PointRecord {
    PointRecord {
        n: p.ctx.n(),
        sigma: p.sigma.to_csv(),
        lambda: p.lambda.clone(),
    }
}

pub fn classify_record(p: &PrincipalSeriesPoint) -> Outcome<ClassifyRecord> {
    let c = classify(p)?;
    let constituents = match &c {
        Classification::ReduciblePoint(v) => v
            .iter()
            .map(|x| VerdictRecord {
                factor: x.factor.record(),
                unitarizable: x.unitarizable,
                reason: x.reason.clone(),
            })
            .collect(),
        _ => Vec::new(),
    };
    Ok(ClassifyRecord {
        point: point_record(p),
        classification: c.name().to_string(),
        constituents,
    })
}

pub fn factors_record(p: &PrincipalSeriesPoint) -> Outcome<FactorsRecord> {
    let factors = composition_factors(p)?
        .iter()
        .map(|f| FactorEntry {
            factor: f.record(),
            subrepresentation: f.is_subrepresentation(),
        })
        .collect();
    Ok(FactorsRecord {
        point: point_record(p),
        factors,
    })
}

pub fn eigenvalue_record(
    p: &PrincipalSeriesPoint,
    picture: Picture,
    only: Option<&str>,
    bound: Option<i64>,
) -> Outcome<EigenvalueRecord> {
    let weights = match picture {
        Picture::Compact => match only {
            Some(s) => vec![HighestWeight::parse(p.ctx.n() + 1, s).map_err(|e| Invalid(format!("--alpha {s:?}: {e}")))?],
            None => enumerate_ktypes(&p.sigma, &p.ctx, bound.unwrap_or(p.sigma.get(1) + DEFAULT_BOUND))?,
        },
        Picture::Fourier => match only {
            Some(s) => vec![HighestWeight::parse(p.ctx.n() - 1, s).map_err(|e| Invalid(format!("--tau {s:?}: {e}")))?],
            None => enumerate_tau(&p.sigma, &p.ctx)?,
        },
    };
    let values = weights
        .iter()
        .map(|w| {
            let v = match picture {
                Picture::Compact => scaled_compact_eigenvalue(p, w)?,
                Picture::Fourier => a_f(p, w)?,
            };
            Ok((w.to_csv(), v))
        })
        .collect::<Outcome<Vec<_>>>()?;
    Ok(EigenvalueRecord {
        point: point_record(p),
        picture,
        values,
    })
}

pub fn dual_record(n: usize, bound: i64) -> Outcome<DualRecord> {
    let ctx = ParamContext::new(n)?;
    if bound < 0 {
        return Err(Invalid(format!("--bound {bound}: must be nonnegative")));
    }
    let items = enumerate_unitary_dual(&ctx, bound, bound)?
        .iter()
        .map(|d| d.record())
        .collect();
    Ok(DualRecord { n, bound, items })
}

fn soft(e: CoreError) -> Outcome<String> {
    match e {
        CoreError::NotUnitarizable(_) | CoreError::NotCovered(_) | CoreError::NotFourierRealizable(_) => {
            Ok(e.to_string())
        }
        other => Err(other.into()),
    }
}

pub fn branch_record(p: &PrincipalSeriesPoint) -> Outcome<BranchRecord> {
    let mut out = Vec::new();
    for f in composition_factors(p)? {
        let entry = match branch_to_pbar(&f) {
            Ok(b) => BranchEntry {
                factor: f.record(),
                constituents: Some(
                    b.constituents
                        .iter()
                        .map(|(t, m)| ConstituentRecord {
                            tau: t.to_csv(),
                            mult: *m,
                        })
                        .collect(),
                ),
                note: None,
            },
            Err(e) => BranchEntry {
                factor: f.record(),
                constituents: None,
                note: Some(soft(e)?),
            },
        };
        out.push(entry);
    }
    Ok(BranchRecord {
        point: point_record(p),
        constituents: out,
    })
}

pub fn whittaker_record(p: &PrincipalSeriesPoint) -> Outcome<WhittakerRecord> {
    let mut out = Vec::new();
    for f in composition_factors(p)? {
        let entry = match whittaker_space(&f) {
            Ok(w) => WhittakerEntry {
                factor: f.record(),
                taus: Some(w.taus.iter().map(|t| t.to_csv()).collect()),
                total_dim: Some(w.total_dim),
                note: None,
            },
            Err(e) => WhittakerEntry {
                factor: f.record(),
                taus: None,
                total_dim: None,
                note: Some(soft(e)?),
            },
        };
        out.push(entry);
    }
    Ok(WhittakerRecord {
        point: point_record(p),
        constituents: out,
    })
}

fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for r in rows {
        for (k, c) in r.iter().enumerate() {
            width[k] = width[k].max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let s: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(k, c)| format!("{:<w$}", c, w = width[k]))
            .collect();
        s.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    out += &line(width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(|s| s.as_str()).collect());
    for r in rows {
        out += &line(r.iter().map(|s| s.as_str()).collect());
    }
    out
}

fn describe(f: &FactorRecord) -> String {
    let mut s = f.tag.clone();
    if f.dual {
        s.push('*');
    }
    if let (Some(i), Some(j)) = (f.i, f.j) {
        s += &format!("(i={i}, j={j})");
    }
    s
}

fn header(p: &PointRecord) -> String {
    format!("n = {}  sigma = ({})  lambda = {}\n", p.n, p.sigma, p.lambda)
}

/// Plain-text rendering of a record.
pub trait Render {
    fn render(&self) -> String;
}

impl Render for ClassifyRecord {
    fn render(&self) -> String {
        let mut s = header(&self.point) + &format!("classification: {}\n", self.classification);
        if !self.constituents.is_empty() {
            let rows: Vec<Vec<String>> = self
                .constituents
                .iter()
                .map(|c| vec![describe(&c.factor), c.unitarizable.to_string(), c.reason.clone()])
                .collect();
            s += &table(&["constituent", "unitarizable", "reason"], &rows);
        }
        s
    }
}

impl Render for FactorsRecord {
    fn render(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .factors
            .iter()
            .map(|f| vec![describe(&f.factor), if f.subrepresentation { "sub" } else { "quotient" }.to_string()])
            .collect();
        header(&self.point) + &table(&["constituent", "role"], &rows)
    }
}

impl Render for EigenvalueRecord {
    fn render(&self) -> String {
        let key = match self.picture {
            Picture::Compact => "alpha",
            Picture::Fourier => "tau",
        };
        let rows: Vec<Vec<String>> = self.values.iter().map(|(k, v)| vec![k.clone(), v.to_string()]).collect();
        header(&self.point) + &table(&[key, "value"], &rows)
    }
}

impl Render for DualRecord {
    fn render(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .items
            .iter()
            .map(|d| match d {
                DualItemRecord::PrincipalFamily { sigma, nu_range } => {
                    vec!["principal".into(), sigma.clone(), format!("lambda = i nu, nu in {nu_range}")]
                }
                DualItemRecord::ComplementaryInterval { sigma, lower, upper } => {
                    vec!["complementary".into(), sigma.clone(), format!("{lower} < lambda < {upper}")]
                }
                DualItemRecord::Sub { factor } => vec!["sub".into(), factor.sigma.clone(), format!("{} at {}", describe(factor), factor.lambda)],
                DualItemRecord::Quotient { factor } => vec!["quotient".into(), factor.sigma.clone(), format!("{} at {}", describe(factor), factor.lambda)],
            })
            .collect();
        format!("n = {}  bound = {}\n", self.n, self.bound) + &table(&["kind", "sigma", "parameter"], &rows)
    }
}

impl Render for BranchRecord {
    fn render(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .constituents
            .iter()
            .map(|b| {
                let body = match (&b.constituents, &b.note) {
                    (Some(cs), _) => cs.iter().map(|c| format!("({})x{}", c.tau, c.mult)).collect::<Vec<_>>().join(" "),
                    (None, Some(n)) => n.clone(),
                    (None, None) => String::new(),
                };
                vec![describe(&b.factor), body]
            })
            .collect();
        header(&self.point) + &table(&["constituent", "restriction"], &rows)
    }
}

impl Render for WhittakerRecord {
    fn render(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .constituents
            .iter()
            .map(|w| match (&w.taus, &w.note) {
                (Some(t), _) => vec![
                    describe(&w.factor),
                    w.total_dim.unwrap_or(0).to_string(),
                    t.iter().map(|x| format!("({x})")).collect::<Vec<_>>().join(" "),
                ],
                (None, n) => vec![describe(&w.factor), "-".into(), n.clone().unwrap_or_default()],
            })
            .collect();
        header(&self.point) + &table(&["constituent", "dim", "tau"], &rows)
    }
}

impl Render for Report {
    fn render(&self) -> String {
        let params = serde_json::to_string(&self.params).unwrap_or_default();
        format!(
            "{} {} measured={:.3e} tol={:.1e} {}\n",
            if self.pass { "PASS" } else { "FAIL" },
            self.check,
            self.measured,
            self.tolerance,
            params
        )
    }
}

fn emit<T: Serialize + Render>(out: &mut dyn Write, command: &str, json: bool, r: &T) -> std::io::Result<()> {
    if json {
        let env = Envelope {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            result: r,
        };
        writeln!(out, "{}", serde_json::to_string(&env).expect("records serialize"))
    } else {
        write!(out, "{}", r.render())
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> Outcome<i32> {
    let io = |e: std::io::Error| Invalid(format!("write failed: {e}"));
    match cmd {
        Command::Classify(a) => emit(out, "classify", a.json, &classify_record(&parse_point(a)?)?).map_err(io)?,
        Command::Factors(a) => emit(out, "factors", a.json, &factors_record(&parse_point(a)?)?).map_err(io)?,
        Command::Eigenvalues { point, picture, alpha, bound } => {
            let p = parse_point(point)?;
            let r = eigenvalue_record(&p, *picture, alpha.as_deref(), *bound)?;
            emit(out, "eigenvalues", point.json, &r).map_err(io)?
        }
        Command::Dual { n, bound, json } => emit(out, "dual", *json, &dual_record(*n, *bound)?).map_err(io)?,
        Command::Branch(a) => emit(out, "branch", a.json, &branch_record(&parse_point(a)?)?).map_err(io)?,
        Command::Whittaker(a) => emit(out, "whittaker", a.json, &whittaker_record(&parse_point(a)?)?).map_err(io)?,
        Command::Verify { suite, seed, json } => {
            let s: Suite = suite.parse().map_err(|e| Invalid(format!("--suite: {e}")))?;
            let reports = match run_suite(s, *seed, &Tolerances::default()) {
                Ok(r) => r,
                Err(e) => {
                    let r = Report::failed("suite", Default::default(), 0.0, 0.0, e.to_string());
                    emit(out, "verify", *json, &r).map_err(io)?;
                    return Ok(EXIT_FAILED);
                }
            };
            for r in &reports {
                emit(out, "verify", *json, r).map_err(io)?;
            }
            if reports.iter().any(|r| !r.pass) {
                return Ok(EXIT_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(&cli.command, out) {
        Ok(code) => code,
        Err(Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INVALID
        }
    }
}
