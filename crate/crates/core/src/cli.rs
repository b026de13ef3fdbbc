//! Command-line front end.
//!
//! Every runner returns an [`Outcome`] instead of printing, so the binary is
//! a thin wrapper and tests can inspect output and exit status directly.
//!
//! Exit statuses: 0 when every requested verdict is certified, 2 for invalid
//! input (bad spec, out-of-range point, bad grid or flags), 3 when a verdict
//! is inconclusive or a computation ran out of budget, 1 for internal
//! inconsistencies.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::enclosure::Enclosure;
use crate::error::Error;
use crate::legendre::{conjugate_value, holder_gap, legendre_gap_report, LegendrePair, PowerFamily};
use crate::monotone::ConjugatePair;
use crate::quadrature::QuadratureConfig;
use crate::spec::{parse_spec, FunctionSpec, SpecError};
use crate::young_gap::{certify, sweep, EqualityVerdict, GapReport, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Exit status plus everything the command would print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self::with_status(EXIT_OK, stdout)
    }

    fn with_status(status: i32, stdout: String) -> Self {
        Self {
            status,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(status: i32, message: impl std::fmt::Display) -> Self {
        Self {
            status,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

fn status_of(e: &Error) -> i32 {
    match e {
        Error::Domain { .. }
        | Error::GridDomain { .. }
        | Error::UnsupportedOrigin { .. }
        | Error::InvalidFunction(_)
        | Error::InvalidArgument(_) => EXIT_INVALID,
        Error::Convergence { .. } | Error::BudgetExceeded { .. } => EXIT_INCONCLUSIVE,
        Error::Inconsistent { .. } => EXIT_INTERNAL,
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::fail(status_of(&e), e)
    }
}

impl From<SpecError> for Outcome {
    fn from(e: SpecError) -> Self {
        Outcome::fail(EXIT_INVALID, e)
    }
}

/// Numerical settings shared by all commands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flags {
    pub tol: f64,
    pub target_width: f64,
    pub max_panels: usize,
    pub inverse_tol: f64,
    pub machine: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Self {
            tol: crate::young_gap::DEFAULT_CERT_TOL,
            target_width: 1e-9,
            max_panels: 1 << 20,
            inverse_tol: crate::monotone::DEFAULT_INVERSE_TOL,
            machine: false,
        }
    }
}

impl Flags {
    fn config(&self) -> Result<QuadratureConfig, Error> {
        let d = QuadratureConfig::default();
        QuadratureConfig::new(d.initial_panels.min(self.max_panels), self.max_panels, self.target_width)
    }

    fn pair(&self, spec: &FunctionSpec) -> Result<ConjugatePair, Outcome> {
        let phi = spec.build()?;
        Ok(ConjugatePair::new(phi).with_inverse_tol(self.inverse_tol)?)
    }

    fn check_tol(&self) -> Result<(), Error> {
        if self.tol > 0.0 && self.tol.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "--tol must be positive, got {}",
                self.tol
            )))
        }
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Certified => "Certified",
        Verdict::Inconclusive => "Inconclusive",
    }
}

fn equality_name(v: EqualityVerdict) -> &'static str {
    match v {
        EqualityVerdict::Equality => "Equality",
        EqualityVerdict::StrictInequality => "StrictInequality",
        EqualityVerdict::Inconclusive => "Inconclusive",
    }
}

fn bounds_status(lower: Verdict, upper: Verdict) -> i32 {
    if lower == Verdict::Certified && upper == Verdict::Certified {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    }
}

fn report_text(out: &mut String, r: &GapReport) {
    let _ = writeln!(out, "point      a = {}, b = {}", r.a, r.b);
    let _ = writeln!(out, "remainder  F(a,b)  in {}", r.remainder);
    let _ = writeln!(out, "bound      UB(a,b) in {}", r.upper_bound);
    match r.merkle_bound {
        Some(m) => {
            let _ = writeln!(out, "merkle     {m:.17e}");
        }
        None => {
            let _ = writeln!(out, "merkle     n/a (intervals do not start at 0)");
        }
    }
    let _ = writeln!(out, "phi(a)     {:.17e}", r.phi_a);
    let _ = writeln!(out, "psi(b)     in {}", r.psi_b);
}

/// Certifies the two-sided bound at `(a, b)`.
pub fn run_certify(spec: &FunctionSpec, a: f64, b: f64, flags: &Flags) -> Outcome {
    let result = (|| {
        flags.check_tol()?;
        let pair = flags.pair(spec)?;
        let cfg = flags.config()?;
        Ok::<_, Outcome>(certify(&pair, a, b, flags.tol, &cfg)?)
    })();
    let c = match result {
        Ok(c) => c,
        Err(o) => return o,
    };
    let (cert, r) = (c.certificate, c.report);
    let status = bounds_status(cert.lower_holds, cert.upper_holds);
    let stdout = if flags.machine {
        let doc = json!({
            "a": r.a,
            "b": r.b,
            "F_lo": r.remainder.lo(),
            "F_hi": r.remainder.hi(),
            "ub_lo": r.upper_bound.lo(),
            "ub_hi": r.upper_bound.hi(),
            "merkle": r.merkle_bound,
            "verdicts": {
                "lower": verdict_name(cert.lower_holds),
                "upper": verdict_name(cert.upper_holds),
                "equality": equality_name(cert.equality_case),
                "upper_conservative": cert.upper_conservative,
            },
            "effort": cert.effort,
        });
        format!("{doc}\n")
    } else {
        let mut out = String::new();
        report_text(&mut out, &r);
        let _ = writeln!(out, "lower      {}", verdict_name(cert.lower_holds));
        let _ = writeln!(out, "upper      {}", verdict_name(cert.upper_holds));
        let _ = writeln!(out, "equality   {}", equality_name(cert.equality_case));
        let e = cert.effort;
        let _ = writeln!(
            out,
            "effort     {} panels, width {:.3e} after {} stage(s), tol {:.1e}",
            e.panels, e.achieved_width, e.stages, e.cert_tol
        );
        out
    };
    Outcome::with_status(status, stdout)
}

/// A uniform grid: `steps` points from `min` to `max`, ends exact. One step
/// means the single point `min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Grid {
    pub fn points(&self, name: &str) -> Result<Vec<f64>, Error> {
        if self.steps == 0 {
            return Err(Error::InvalidArgument(format!(
                "--{name}-steps must be at least 1"
            )));
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.min <= self.max) {
            return Err(Error::InvalidArgument(format!(
                "--{name}-min/--{name}-max must be finite with min <= max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.steps == 1 {
            return Ok(vec![self.min]);
        }
        let last = (self.steps - 1) as f64;
        Ok((0..self.steps)
            .map(|i| {
                if i == self.steps - 1 {
                    self.max
                } else {
                    self.min + (self.max - self.min) * (i as f64 / last)
                }
            })
            .collect())
    }
}

/// Header of the sweep CSV.
pub const SWEEP_HEADER: &str = "a,b,F_lo,F_hi,ub_lo,ub_hi,merkle,equality";

/// One CSV row per report, numbers with 17 significant digits.
pub fn sweep_csv(reports: &[GapReport]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in reports {
        let merkle = r.merkle_bound.map(|m| format!("{m:.16e}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{},{}",
            r.a,
            r.b,
            r.remainder.lo(),
            r.remainder.hi(),
            r.upper_bound.lo(),
            r.upper_bound.hi(),
            merkle,
            r.equality_detected
        );
    }
    out
}

/// Sweeps a grid and writes the CSV to `output`, or returns it as stdout.
pub fn run_sweep(
    spec: &FunctionSpec,
    grid_a: Grid,
    grid_b: Grid,
    output: Option<&std::path::Path>,
    flags: &Flags,
) -> Outcome {
    let result = (|| {
        flags.check_tol()?;
        let pair = flags.pair(spec)?;
        let cfg = flags.config()?;
        let ga = grid_a.points("a")?;
        let gb = grid_b.points("b")?;
        Ok::<_, Outcome>(sweep(&pair, &ga, &gb, flags.tol, &cfg)?)
    })();
    let reports = match result {
        Ok(r) => r,
        Err(o) => return o,
    };
    let inconclusive = reports
        .iter()
        .filter(|r| {
            let (lo, up, _) = r.verdicts(flags.tol);
            bounds_status(lo, up) != EXIT_OK
        })
        .count();
    let status = if inconclusive == 0 {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    };
    let csv = sweep_csv(&reports);
    let mut outcome = match output {
        Some(path) => match std::fs::write(path, &csv) {
            Ok(()) => Outcome::with_status(
                status,
                format!("wrote {} rows to {}\n", reports.len(), path.display()),
            ),
            Err(e) => return Outcome::fail(EXIT_INVALID, format!("{}: {e}", path.display())),
        },
        None => Outcome::with_status(status, csv),
    };
    if inconclusive > 0 {
        outcome.stderr = format!("{inconclusive} point(s) inconclusive\n");
    }
    outcome
}

/// `Ψ(b)` for each `b`, and optionally the two-sided report at `check`.
pub fn run_conjugate(
    spec: &FunctionSpec,
    phi_anchor: f64,
    bs: &[f64],
    check: Option<(f64, f64)>,
    flags: &Flags,
) -> Outcome {
    let result = (|| {
        flags.check_tol()?;
        let pair = LegendrePair::from_pair(flags.pair(spec)?, phi_anchor)?;
        let cfg = flags.config()?;
        let values = bs
            .iter()
            .map(|&b| conjugate_value(&pair, b, &cfg).map(|e| (b, e)))
            .collect::<Result<Vec<(f64, Enclosure)>, Error>>()?;
        let report = match check {
            Some((a, b)) => Some(legendre_gap_report(&pair, a, b, &cfg)?),
            None => None,
        };
        Ok::<_, Outcome>((pair, values, report))
    })();
    let (pair, values, report) = match result {
        Ok(v) => v,
        Err(o) => return o,
    };
    let verdicts = report.map(|r| r.verdicts(flags.tol));
    let status = verdicts.map_or(EXIT_OK, |(lo, up, _)| bounds_status(lo, up));
    let stdout = if flags.machine {
        let vals: Vec<_> = values
            .iter()
            .map(|(b, e)| json!({"b": b, "lo": e.lo(), "hi": e.hi()}))
            .collect();
        let check = report.zip(verdicts).map(|(r, (lo, up, eq))| {
            json!({
                "a": r.a,
                "b": r.b,
                "F_lo": r.remainder.lo(),
                "F_hi": r.remainder.hi(),
                "ub_lo": r.upper_bound.lo(),
                "ub_hi": r.upper_bound.hi(),
                "merkle": r.merkle_bound,
                "verdicts": {
                    "lower": verdict_name(lo),
                    "upper": verdict_name(up),
                    "equality": equality_name(eq),
                },
            })
        });
        let doc = json!({
            "phi_anchor": phi_anchor,
            "psi_anchor": [pair.psi_anchor().lo(), pair.psi_anchor().hi()],
            "values": vals,
            "legendre_check": check,
        });
        format!("{doc}\n")
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "Phi(alpha1) = {phi_anchor}");
        for (b, e) in &values {
            let _ = writeln!(out, "Psi({b}) in {e}");
        }
        if let (Some(r), Some((lo, up, eq))) = (report, verdicts) {
            let _ = writeln!(out, "two-sided bound Phi(a) + Psi(b) - ab:");
            report_text(&mut out, &r);
            let _ = writeln!(out, "lower      {}", verdict_name(lo));
            let _ = writeln!(out, "upper      {}", verdict_name(up));
            let _ = writeln!(out, "equality   {}", equality_name(eq));
        }
        out
    };
    Outcome::with_status(status, stdout)
}

/// The gap in the power-family inequality `b^(β−1)·a^(α−1) <= b^β/α + a^α/β`.
pub fn run_holder(fam: &PowerFamily, a: f64, b: f64, machine: bool) -> Outcome {
    let gap = match holder_gap(fam, a, b) {
        Ok(g) => g,
        Err(e) => return e.into(),
    };
    let status = if gap >= -1e-12 {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    };
    let stdout = if machine {
        let doc = json!({
            "alpha": fam.alpha(),
            "beta": fam.beta(),
            "a": a,
            "b": b,
            "holder_gap": gap,
        });
        format!("{doc}\n")
    } else {
        format!(
            "alpha = {}, beta = {}, a = {a}, b = {b}\nholder gap = {gap:.17e}\n",
            fam.alpha(),
            fam.beta()
        )
    };
    Outcome::with_status(status, stdout)
}

#[derive(Debug, Parser)]
#[command(
    name = "young-cert",
    version,
    about = "Certified two-sided bounds for the Young remainder",
    allow_negative_numbers = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SpecSource {
    /// Spec file, or `-` for stdin.
    #[arg(long, value_name = "PATH")]
    pub spec: Option<PathBuf>,
    /// Spec given inline as JSON.
    #[arg(long, value_name = "JSON")]
    pub spec_json: Option<String>,
}

impl SpecSource {
    fn load(&self) -> Result<FunctionSpec, Outcome> {
        let text = match (&self.spec, &self.spec_json) {
            (_, Some(json)) => json.clone(),
            (Some(path), None) if path.as_os_str() == "-" => {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Outcome::fail(EXIT_INVALID, format!("stdin: {e}")))?;
                s
            }
            (Some(path), None) => std::fs::read_to_string(path)
                .map_err(|e| Outcome::fail(EXIT_INVALID, format!("{}: {e}", path.display())))?,
            (None, None) => unreachable!("clap requires one spec source"),
        };
        Ok(parse_spec(&text)?)
    }
}

#[derive(Debug, Args)]
pub struct NumericArgs {
    /// Certification tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Enclosure width to refine towards.
    #[arg(long, default_value_t = 1e-9)]
    pub target_width: f64,
    /// Panel budget per integral.
    #[arg(long, default_value_t = 1 << 20)]
    pub max_panels: usize,
    /// Width of each inverse enclosure.
    #[arg(long, default_value_t = 1e-12)]
    pub inverse_tol: f64,
    /// Emit a single JSON document instead of text.
    #[arg(long)]
    pub machine: bool,
}

impl From<&NumericArgs> for Flags {
    fn from(n: &NumericArgs) -> Self {
        Flags {
            tol: n.tol,
            target_width: n.target_width,
            max_panels: n.max_panels,
            inverse_tol: n.inverse_tol,
            machine: n.machine,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify 0 <= F(a,b) <= UB(a,b) at one point.
    Certify {
        #[command(flatten)]
        source: SpecSource,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Certify every point of a grid and write a CSV.
    Sweep {
        #[command(flatten)]
        source: SpecSource,
        #[arg(long)]
        a_min: f64,
        #[arg(long)]
        a_max: f64,
        #[arg(long)]
        a_steps: usize,
        #[arg(long)]
        b_min: f64,
        #[arg(long)]
        b_max: f64,
        #[arg(long)]
        b_steps: usize,
        /// Output file; stdout when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Conjugate potential values, treating the spec as the derivative.
    Conjugate {
        #[command(flatten)]
        source: SpecSource,
        /// Points at which to evaluate the conjugate.
        #[arg(long = "b", num_args = 1.., required = true)]
        bs: Vec<f64>,
        /// Value of the potential at the left end of its interval.
        #[arg(long, default_value_t = 0.0)]
        anchor: f64,
        /// Also report Phi(a) + Psi(b) - ab against its upper bound.
        #[arg(
            long = "check-legendre",
            alias = "check-theorem31",
            num_args = 2,
            value_names = ["A", "B"]
        )]
        check: Option<Vec<f64>>,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Gap of the power-family inequality for conjugate exponents.
    Holder {
        #[arg(long)]
        alpha: f64,
        /// Defaults to alpha/(alpha - 1).
        #[arg(long)]
        beta: Option<f64>,
        /// Upper end of the a interval.
        #[arg(long, default_value_t = crate::legendre::DEFAULT_POWER_CAP)]
        cap: f64,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        machine: bool,
    },
    /// Print a spec in canonical form.
    Canonical {
        #[command(flatten)]
        source: SpecSource,
    },
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Certify {
            source,
            a,
            b,
            numeric,
        } => match source.load() {
            Ok(spec) => run_certify(&spec, *a, *b, &numeric.into()),
            Err(o) => o,
        },
        Command::Sweep {
            source,
            a_min,
            a_max,
            a_steps,
            b_min,
            b_max,
            b_steps,
            output,
            numeric,
        } => match source.load() {
            Ok(spec) => run_sweep(
                &spec,
                Grid {
                    min: *a_min,
                    max: *a_max,
                    steps: *a_steps,
                },
                Grid {
                    min: *b_min,
                    max: *b_max,
                    steps: *b_steps,
                },
                output.as_deref(),
                &numeric.into(),
            ),
            Err(o) => o,
        },
        Command::Conjugate {
            source,
            bs,
            anchor,
            check,
            numeric,
        } => match source.load() {
            Ok(spec) => {
                let check = check.as_ref().map(|v| (v[0], v[1]));
                run_conjugate(&spec, *anchor, bs, check, &numeric.into())
            }
            Err(o) => o,
        },
        Command::Holder {
            alpha,
            beta,
            cap,
            a,
            b,
            machine,
        } => {
            let fam = PowerFamily::new(*alpha, beta.unwrap_or(alpha / (alpha - 1.0)), *cap);
            match fam {
                Ok(fam) => run_holder(&fam, *a, *b, *machine),
                Err(e) => e.into(),
            }
        }
        Command::Canonical { source } => match source.load() {
            Ok(spec) => Outcome::ok(format!("{}\n", spec.to_canonical_json())),
            Err(o) => o,
        },
    }
}

/// Parses `args` (including the program name) and runs the command. Usage
/// errors map to status 2.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let status = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            if status == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    status,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}
