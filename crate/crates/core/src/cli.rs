//! Batch front end: parse polynomials, dispatch to the library, emit
//! machine-readable reports.
//!
//! Polynomials travel as `{"coeffs": [[re, im], …], "nominal_degree": n}`
//! with `nominal_degree` optional (defaults to `coeffs.len() - 1`); index k
//! is the coefficient of `z^k`. Complex scalars on the command line are
//! `a+bi` strings. JSON reports carry `"schema": "koebe-poly/1"`, embed the
//! normalized inputs and every tolerance actually used, and re-run to an
//! identical report.
//!
//! Exit codes: 0 success (verdicts like `unstable` or `REFUTED` are data,
//! not errors), 1 usage/parse error, 2 numeric failure, 3 precondition
//! violation.

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::covering::{
    covering_certificate, extremal_corollary3, extremal_lemma3, inradius_oracle,
    lemma3_bound_check, membership, MembershipVerdict,
};
use crate::distortion::distortion_witness;
use crate::poly::{Complex, Disk, Polynomial};
use crate::stability::{is_schur_stable, Stability, StabilityWitness, DEFAULT_MARGIN};
use crate::Error;

pub const SCHEMA: &str = "koebe-poly/1";
pub const DEFAULT_DEGREE_CAP: usize = 64;
const DEFAULT_GRID: usize = 4096;
const BOUNDARY_GRID_DEFAULT: usize = 1024;

/// CLI-level failure with the documented exit code attached.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError { code: 1, message: msg.into() }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Precondition(_) | Error::ZeroPolynomial | Error::NonFinite(_) => 3,
            Error::NonConvergence | Error::NumericRange(_) | Error::OracleFailure(_) => 2,
        };
        CliError { code, message: e.to_string() }
    }
}

/// Wire format for a polynomial.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PolyWire {
    pub coeffs: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nominal_degree: Option<usize>,
}

impl PolyWire {
    pub fn from_polynomial(p: &Polynomial) -> Self {
        PolyWire {
            coeffs: p.coeffs().iter().map(|c| [c.re, c.im]).collect(),
            nominal_degree: Some(p.nominal_degree()),
        }
    }

    pub fn to_polynomial(&self, degree_cap: usize) -> Result<Polynomial, CliError> {
        for c in &self.coeffs {
            if !c[0].is_finite() || !c[1].is_finite() {
                return Err(CliError::usage("non-finite coefficient in polynomial input"));
            }
        }
        let n = self
            .nominal_degree
            .unwrap_or_else(|| self.coeffs.len().saturating_sub(1));
        if n > degree_cap {
            return Err(CliError::usage(format!(
                "nominal degree {n} exceeds the cap {degree_cap}"
            )));
        }
        let coeffs = self.coeffs.iter().map(|c| Complex::new(c[0], c[1])).collect();
        Polynomial::new(coeffs, n).map_err(CliError::from)
    }
}

/// Parse an `a+bi` complex literal. Accepts pure reals (`-1.5`), pure
/// imaginaries (`2i`, `-i`), and full forms (`1.5-2e-3i`).
pub fn parse_complex(s: &str) -> Result<Complex, CliError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(CliError::usage("empty complex literal"));
    }
    let bad = || CliError::usage(format!("cannot parse complex literal '{s}'"));
    let parse_real = |t: &str| -> Result<f64, CliError> {
        let v: f64 = t.parse().map_err(|_| bad())?;
        if !v.is_finite() {
            return Err(bad());
        }
        Ok(v)
    };
    let parse_imag_part = |t: &str| -> Result<f64, CliError> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => parse_real(t),
        }
    };
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // Split at the last top-level sign (not an exponent sign).
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let ch = bytes[idx];
            if (ch == b'+' || ch == b'-')
                && bytes[idx - 1] != b'e'
                && bytes[idx - 1] != b'E'
            {
                split = Some(idx);
                break;
            }
        }
        match split {
            Some(idx) => {
                let re = parse_real(&body[..idx])?;
                let im = parse_imag_part(&body[idx..])?;
                Ok(Complex::new(re, im))
            }
            None => Ok(Complex::new(0.0, parse_imag_part(body)?)),
        }
    } else {
        Ok(Complex::new(parse_real(s)?, 0.0))
    }
}

pub fn format_complex(z: Complex) -> String {
    if z.im >= 0.0 || z.im.is_nan() {
        format!("{}+{}i", z.re, z.im)
    } else {
        format!("{}{}i", z.re, z.im)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Inverse,
    Stability,
    Norm,
    Covering,
    Inradius,
    Membership,
    Lemma3,
    Distortion,
    Sharpness,
    Boundary,
}

impl CommandKind {
    fn name(self) -> &'static str {
        match self {
            CommandKind::Inverse => "inverse",
            CommandKind::Stability => "stability",
            CommandKind::Norm => "norm",
            CommandKind::Covering => "covering",
            CommandKind::Inradius => "inradius",
            CommandKind::Membership => "membership",
            CommandKind::Lemma3 => "lemma3",
            CommandKind::Distortion => "distortion",
            CommandKind::Sharpness => "sharpness",
            CommandKind::Boundary => "boundary",
        }
    }
}

/// A fully normalized, validated job: what actually runs.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JobSpec {
    pub command: CommandKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<PolyWire>,
    pub radius: f64,
    pub grid: usize,
    pub margin: f64,
    pub degree_cap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z1: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z2: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub format: Format,
}

impl JobSpec {
    fn validate(&self) -> Result<(), CliError> {
        if self.grid < 256 {
            return Err(CliError::usage("grid must be >= 256"));
        }
        if !(self.margin > 0.0 && self.margin.is_finite()) {
            return Err(CliError::usage("margin must be > 0 and finite"));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(CliError::usage("radius must be > 0 and finite"));
        }
        for v in [self.w, self.z1, self.z2].into_iter().flatten() {
            if !v[0].is_finite() || !v[1].is_finite() {
                return Err(CliError::usage("complex parameters must be finite"));
            }
        }
        if self.format == Format::Csv && self.command != CommandKind::Boundary {
            return Err(CliError::usage("csv output is only available for `boundary`"));
        }
        Ok(())
    }

    fn poly(&self) -> Result<Polynomial, CliError> {
        self.polynomial
            .as_ref()
            .ok_or_else(|| CliError::usage("this command requires a polynomial input"))?
            .to_polynomial(self.degree_cap)
    }

    fn complex(&self, field: Option<[f64; 2]>, name: &str) -> Result<Complex, CliError> {
        field
            .map(|v| Complex::new(v[0], v[1]))
            .ok_or_else(|| CliError::usage(format!("this command requires --{name}")))
    }
}

fn cx(z: Complex) -> Value {
    json!([z.re, z.im])
}

fn membership_value(q: &Polynomial, w: Complex, d: &Disk, margin: f64) -> Result<Value, CliError> {
    let m = membership(q, w, d, margin)?;
    let verdict = match m.verdict {
        MembershipVerdict::Inside => "inside",
        MembershipVerdict::Outside => "outside",
        MembershipVerdict::BoundaryMarginal => "boundary_marginal",
        MembershipVerdict::Indeterminate => "indeterminate",
    };
    Ok(json!({
        "verdict": verdict,
        "witness_preimage": m.witness_preimage.map(cx),
    }))
}

/// Execute one job and return the serialized report (JSON object for every
/// command except `boundary` with csv format, which yields CSV text).
pub fn run(job: &JobSpec) -> Result<String, CliError> {
    job.validate()?;
    let result: Value = match job.command {
        CommandKind::Inverse => {
            let p = job.poly()?;
            let inv = p.n_inverse();
            json!({ "polynomial": PolyWire::from_polynomial(&inv) })
        }
        CommandKind::Norm => {
            let p = job.poly()?;
            json!({ "norm_nq": p.norm_nq(), "nominal_degree": p.nominal_degree() })
        }
        CommandKind::Stability => {
            let p = job.poly()?;
            let v = is_schur_stable(&p, job.margin)?;
            let verdict = match v.verdict {
                Stability::Stable => "stable",
                Stability::Unstable => "unstable",
                Stability::Marginal => "marginal",
            };
            let witness = match v.witness {
                StabilityWitness::OffendingRoot(r) => json!({ "offending_root": cx(r) }),
                StabilityWitness::MinBoundaryModulus(m) => {
                    json!({ "min_boundary_modulus": m })
                }
                StabilityWitness::None => Value::Null,
            };
            json!({ "verdict": verdict, "witness": witness })
        }
        CommandKind::Covering => {
            let p = job.poly()?;
            let cert = covering_certificate(&p, job.radius, job.grid)?;
            json!({
                "bound": cert.bound,
                "oracle_inradius": cert.oracle_inradius,
                "grid_size": cert.grid_size,
                "status": cert.status,
                "uncovered_count": cert.uncovered_boundary_samples.len(),
            })
        }
        CommandKind::Inradius => {
            let p = job.poly()?;
            let est = inradius_oracle(&p, job.radius, job.grid)?;
            json!({
                "inradius": if est.value.is_finite() { json!(est.value) } else { json!("unbounded") },
                "grid": est.grid,
                "kept_samples": est.kept.len(),
                "argmin_theta": est.argmin_theta,
            })
        }
        CommandKind::Membership => {
            let p = job.poly()?;
            let w = job.complex(job.w, "w")?;
            let d = Disk::origin_open(job.radius);
            membership_value(&p, w, &d, job.margin)?
        }
        CommandKind::Lemma3 => {
            let p = job.poly()?;
            let w = job.complex(job.w, "w")?;
            let rep = lemma3_bound_check(&p, w)?;
            json!({ "pass": rep.pass, "rows": rep.rows })
        }
        CommandKind::Distortion => {
            let p = job.poly()?;
            let z1 = job.complex(job.z1, "z1")?;
            let z2 = job.complex(job.z2, "z2")?;
            let wit = distortion_witness(&p, z1, z2)?;
            json!({
                "zeta": cx(wit.zeta),
                "residual": wit.residual,
                "lhs": wit.lhs,
                "rhs": wit.rhs,
                "slack": wit.slack,
                "w": cx(wit.w),
                "R": wit.big_r,
                "eta": cx(wit.eta),
                "branch": wit.branch,
            })
        }
        CommandKind::Sharpness => {
            let n = job.n.ok_or_else(|| CliError::usage("sharpness requires --n"))?;
            if n > job.degree_cap {
                return Err(CliError::usage(format!(
                    "n = {n} exceeds the degree cap {}",
                    job.degree_cap
                )));
            }
            match job.kind.as_deref() {
                Some("lemma3") => {
                    let w = job.complex(job.w, "w")?;
                    let q = extremal_lemma3(n, w)?;
                    let rep = lemma3_bound_check(&q, w)?;
                    json!({
                        "polynomial": PolyWire::from_polynomial(&q),
                        "pass": rep.pass,
                        "rows": rep.rows,
                    })
                }
                Some("corollary3") => {
                    let q = extremal_corollary3(n, job.radius)?;
                    let cert = covering_certificate(&q, job.radius, job.grid)?;
                    json!({
                        "polynomial": PolyWire::from_polynomial(&q),
                        "expected_bound": job.radius / n as f64,
                        "bound": cert.bound,
                        "oracle_inradius": cert.oracle_inradius,
                        "status": cert.status,
                    })
                }
                _ => {
                    return Err(CliError::usage(
                        "sharpness requires --kind lemma3|corollary3",
                    ))
                }
            }
        }
        CommandKind::Boundary => {
            let p = job.poly()?;
            let mut rows = Vec::with_capacity(job.grid);
            for j in 0..job.grid {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / job.grid as f64;
                let v = p.evaluate(Complex::from_polar(job.radius, theta))?;
                rows.push((theta, v.re, v.im));
            }
            if job.format == Format::Csv {
                let mut out = String::from("theta,re,im\n");
                for (t, re, im) in rows {
                    out.push_str(&format!("{t},{re},{im}\n"));
                }
                return Ok(out);
            }
            json!({ "rows": rows.iter().map(|(t, re, im)| json!([t, re, im])).collect::<Vec<_>>() })
        }
    };
    let report = json!({
        "schema": SCHEMA,
        "command": job.command.name(),
        "inputs": job,
        "result": result,
    });
    Ok(serde_json::to_string_pretty(&report).expect("report serialization") + "\n")
}

/// Re-parse an emitted report and execute it again; the output must be
/// byte-identical to the original (end-to-end determinism).
pub fn rerun(report: &str) -> Result<String, CliError> {
    let value: Value = serde_json::from_str(report)
        .map_err(|e| CliError::usage(format!("report does not parse: {e}")))?;
    if value.get("schema").and_then(Value::as_str) != Some(SCHEMA) {
        return Err(CliError::usage(format!("expected schema '{SCHEMA}'")));
    }
    let inputs = value
        .get("inputs")
        .ok_or_else(|| CliError::usage("report lacks an 'inputs' object"))?;
    let job: JobSpec = serde_json::from_value(inputs.clone())
        .map_err(|e| CliError::usage(format!("inputs do not parse: {e}")))?;
    run(&job)
}

// ---- clap surface ---------------------------------------------------------

#[derive(Debug, Args)]
pub struct JobArgs {
    /// Polynomial input: a JSON file path, or `-` for stdin.
    #[arg(long, default_value = "-")]
    pub input: String,
    /// Source-disk radius R.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Complex value `a+bi`.
    #[arg(long)]
    pub w: Option<String>,
    #[arg(long)]
    pub z1: Option<String>,
    #[arg(long)]
    pub z2: Option<String>,
    /// Sample count for grid-based operations (>= 256).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Margin band for boundary classifications.
    #[arg(long)]
    pub margin: Option<f64>,
    /// Degree for the sharpness generators.
    #[arg(long)]
    pub n: Option<usize>,
    /// Sharpness family: lemma3 or corollary3.
    #[arg(long)]
    pub kind: Option<String>,
    /// Output: a file path, or `-` for stdout.
    #[arg(long, default_value = "-")]
    pub out: String,
    /// Output format.
    #[arg(long)]
    pub format: Option<String>,
    /// Largest accepted nominal degree.
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    pub max_degree: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficient reversal at the nominal degree.
    Inverse(JobArgs),
    /// Schur stability verdict with witness.
    Stability(JobArgs),
    /// The combinatorial norm max_k |q̂(k)|/C(n,k).
    Norm(JobArgs),
    /// Guaranteed covering radius with oracle cross-check.
    Covering(JobArgs),
    /// Brute-force inradius estimate of q(Δ_R).
    Inradius(JobArgs),
    /// Is w in the image q(Δ_R)?
    Membership(JobArgs),
    /// Coefficient bounds |q̂(k)| <= C(n,k)|w| for an omitted w.
    Lemma3(JobArgs),
    /// Distortion witness ζ with p(ζ) = p(z2).
    Distortion(JobArgs),
    /// Run a sharpness extremal through its check.
    Sharpness(JobArgs),
    /// Emit the image curve of the source circle as CSV.
    Boundary(JobArgs),
}

#[derive(Debug, Parser)]
#[command(name = "koebe-poly", version, about = "Covering and distortion bounds for complex polynomials")]
pub struct CliApp {
    #[command(subcommand)]
    pub command: Command,
}

fn needs_input(kind: CommandKind) -> bool {
    kind != CommandKind::Sharpness
}

/// Turn parsed arguments into a validated job plus its output destination.
pub fn build_job(app: &CliApp) -> Result<(JobSpec, String), CliError> {
    let (kind, args) = match &app.command {
        Command::Inverse(a) => (CommandKind::Inverse, a),
        Command::Stability(a) => (CommandKind::Stability, a),
        Command::Norm(a) => (CommandKind::Norm, a),
        Command::Covering(a) => (CommandKind::Covering, a),
        Command::Inradius(a) => (CommandKind::Inradius, a),
        Command::Membership(a) => (CommandKind::Membership, a),
        Command::Lemma3(a) => (CommandKind::Lemma3, a),
        Command::Distortion(a) => (CommandKind::Distortion, a),
        Command::Sharpness(a) => (CommandKind::Sharpness, a),
        Command::Boundary(a) => (CommandKind::Boundary, a),
    };
    let polynomial = if needs_input(kind) {
        let text = if args.input == "-" {
            use std::io::Read;
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::usage(format!("cannot read stdin: {e}")))?;
            buf
        } else {
            std::fs::read_to_string(&args.input)
                .map_err(|e| CliError::usage(format!("cannot read '{}': {e}", args.input)))?
        };
        let wire: PolyWire = serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("polynomial input does not parse: {e}")))?;
        Some(wire)
    } else {
        None
    };
    let to_pair = |s: &Option<String>| -> Result<Option<[f64; 2]>, CliError> {
        s.as_deref()
            .map(|t| parse_complex(t).map(|z| [z.re, z.im]))
            .transpose()
    };
    let format = match args.format.as_deref() {
        None => {
            if kind == CommandKind::Boundary {
                Format::Csv
            } else {
                Format::Json
            }
        }
        Some("json") => Format::Json,
        Some("csv") => Format::Csv,
        Some(other) => return Err(CliError::usage(format!("unknown format '{other}'"))),
    };
    let default_grid = if kind == CommandKind::Boundary { BOUNDARY_GRID_DEFAULT } else { DEFAULT_GRID };
    let job = JobSpec {
        command: kind,
        polynomial,
        radius: args.radius.unwrap_or(1.0),
        grid: args.grid.unwrap_or(default_grid),
        margin: args.margin.unwrap_or(DEFAULT_MARGIN),
        degree_cap: args.max_degree,
        w: to_pair(&args.w)?,
        z1: to_pair(&args.z1)?,
        z2: to_pair(&args.z2)?,
        n: args.n,
        kind: args.kind.clone(),
        format,
    };
    Ok((job, args.out.clone()))
}

/// Full CLI entry point: parse, run, write. Returns the process exit code.
pub fn main_impl<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let app = match CliApp::try_parse_from(argv) {
        Ok(app) => app,
        Err(e) => {
            // Help and version requests are successes, not usage errors.
            use clap::error::ErrorKind;
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if ok { 0 } else { 1 };
        }
    };
    let out = match build_job(&app).and_then(|(job, out)| run(&job).map(|r| (r, out))) {
        Ok((report, out)) => {
            if out == "-" {
                print!("{report}");
                0
            } else if let Err(e) = std::fs::write(&out, &report) {
                eprintln!("error: cannot write '{out}': {e}");
                1
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    };
    out
}
