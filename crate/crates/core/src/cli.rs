//! Command-line front end. Every subcommand builds an [`Artifact`], a JSON
//! document plus an equivalent list of `table,key,value` rows for CSV.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::fourth_order::{
    boundary_values, certify, krall_polynomial, triangular_solve, y_m_polynomial, FourthOrderProblem,
};
use crate::poly::RationalPolynomial;
use crate::scalar::{format_rational, parse_rational, parse_real};
use crate::schrodinger::{
    coulomb_ansatz, coulomb_coefficients, coulomb_phase, coulomb_recurrence_argument, default_residual_grid,
    max_grid_residual, morse_ansatz, morse_coefficients, morse_phase, ode_residual_coulomb, ode_residual_morse,
    reconstruct_psi, CoulombParams, MorseParams, SinArgument, SolutionAnsatz, DEFAULT_N_TERMS,
};
use crate::seq_algebra::CoefficientSequence;
use crate::special_fn::{laguerre_eval, norm_h};
use crate::suites::{oracle_nodes, run_suites, Suite, DEFAULT_ORACLE_NODES};
use crate::transform::{forward_transform, inverse_transform};

#[derive(Parser, Debug)]
#[command(name = "lagspec", version, about = "Laguerre transform solvers and certificates")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Forward transform of a built-in polynomial and its round-trip error.
    Transform {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        /// one, x, x2 or laguerre:k
        #[arg(long = "fn")]
        function: String,
        #[arg(long, default_value_t = 10)]
        n_terms: usize,
        #[arg(long, default_value = "20")]
        x_max: String,
        #[arg(long, default_value_t = 21)]
        samples: usize,
    },
    /// Coulomb coefficients, ψ samples and the reduced-equation residual grid.
    Coulomb {
        #[arg(long = "Z", allow_hyphen_values = true)]
        charge: String,
        #[arg(long = "E", allow_hyphen_values = true)]
        energy: String,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = DEFAULT_N_TERMS)]
        n_terms: usize,
        #[arg(long, default_value = "8")]
        x_max: String,
        #[arg(long, default_value_t = 33)]
        samples: usize,
    },
    /// Morse coefficients, ψ samples and residual grid.
    Morse {
        #[arg(long = "V1", allow_hyphen_values = true)]
        v1: String,
        #[arg(long = "V2", allow_hyphen_values = true)]
        v2: String,
        #[arg(long = "E", allow_hyphen_values = true)]
        energy: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = DEFAULT_N_TERMS)]
        n_terms: usize,
        #[arg(long, default_value = "8")]
        x_max: String,
        #[arg(long, default_value_t = 33)]
        samples: usize,
    },
    /// Fourth-order problem: coefficients, y_m, R_m and certificates.
    Krall {
        #[arg(long = "R", allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        m: usize,
    },
    /// Oracle-equivalence suites.
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Artifact {
    pub json: Value,
    pub rows: Vec<[String; 3]>,
}

impl Artifact {
    fn new(command: &str) -> Self {
        let mut json = Map::new();
        json.insert("command".into(), json!(command));
        json.insert("metadata".into(), json!({ "version": env!("CARGO_PKG_VERSION") }));
        Self { json: Value::Object(json), rows: Vec::new() }
    }

    fn set(&mut self, key: &str, v: Value) {
        self.json.as_object_mut().expect("artifact root is an object").insert(key.into(), v);
    }

    fn row(&mut self, table: &str, key: impl ToString, value: impl ToString) {
        self.rows.push([table.to_string(), key.to_string(), value.to_string()]);
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).map_err(|e| Error::Parse(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Error::Parse(e.to_string());
                w.write_record(["table", "key", "value"]).map_err(io)?;
                for r in &self.rows {
                    w.write_record(r).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
            }
        }
    }
}

fn check_sampling(x_max: f64, samples: usize) -> Result<()> {
    if !(x_max > 0.0 && x_max.is_finite()) {
        return Err(Error::domain(format!("x-max must be > 0, got {x_max}")));
    }
    if samples < 2 {
        return Err(Error::domain(format!("samples must be at least 2, got {samples}")));
    }
    Ok(())
}

fn check_terms(n_terms: usize) -> Result<()> {
    if n_terms == 0 {
        return Err(Error::domain("n-terms must be at least 1"));
    }
    Ok(())
}

fn sample_points(x_max: f64, samples: usize) -> Vec<f64> {
    (0..samples).map(|i| x_max * i as f64 / (samples - 1) as f64).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Builtin {
    Power(u32),
    Laguerre(usize),
}

fn parse_builtin(s: &str) -> Result<Builtin> {
    match s {
        "one" => Ok(Builtin::Power(0)),
        "x" => Ok(Builtin::Power(1)),
        "x2" => Ok(Builtin::Power(2)),
        _ => s
            .strip_prefix("laguerre:")
            .and_then(|k| k.parse().ok())
            .map(Builtin::Laguerre)
            .ok_or_else(|| Error::domain(format!("unknown function {s:?}; expected one, x, x2 or laguerre:k"))),
    }
}

impl Builtin {
    fn eval(self, nu: f64, x: f64) -> Result<f64> {
        match self {
            Builtin::Power(p) => Ok(x.powi(p as i32)),
            Builtin::Laguerre(k) => laguerre_eval(k, nu, x),
        }
    }

    /// Closed forms: `T^ν[x^p]_n = Γ(ν+p+1)(−p)_n/n!` and `T^ν[L_k^ν] = h_k^ν δ_{nk}`.
    fn exact_transform(self, nu: f64, n_terms: usize) -> Result<CoefficientSequence<f64>> {
        let terms = (0..n_terms)
            .map(|n| match self {
                Builtin::Laguerre(k) => Ok(if n == k { norm_h(k, nu)? } else { 0.0 }),
                Builtin::Power(p) => {
                    let p = p as usize;
                    if n > p {
                        return Ok(0.0);
                    }
                    // Γ(ν+p+1) = h_p^ν · p!, and (−p)_n/n! = (−1)^n C(p, n)
                    let fact: f64 = (1..=p).map(|j| j as f64).product();
                    let binom: f64 = (0..n).map(|j| (p - j) as f64 / (j + 1) as f64).product();
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    Ok(norm_h(p, nu)? * fact * sign * binom)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CoefficientSequence::of_order(nu, terms))
    }
}

fn run_transform(nu: f64, function: &str, n_terms: usize, x_max: f64, samples: usize) -> Result<Artifact> {
    check_terms(n_terms)?;
    check_sampling(x_max, samples)?;
    let f = parse_builtin(function)?;
    let exact = f.exact_transform(nu, n_terms)?;
    let nodes = oracle_nodes(DEFAULT_ORACLE_NODES)?;
    let oracle = forward_transform(|x| f.eval(nu, x).unwrap_or(f64::NAN), nu, n_terms, nodes)?;
    let oracle_dev = (0..n_terms as isize)
        .map(|i| (oracle.get(i) - exact.get(i)).abs())
        .fold(0.0, f64::max);

    let mut a = Artifact::new("transform");
    a.set("parameters", json!({ "nu": nu, "fn": function, "n_terms": n_terms, "oracle_nodes": nodes }));
    for (i, c) in exact.terms().iter().enumerate() {
        a.row("coefficients", i, c);
    }
    a.set("coefficients", json!(exact.terms()));
    a.set("oracle_max_deviation", json!(oracle_dev));

    let mut rt = Vec::new();
    let mut max_err: f64 = 0.0;
    for x in sample_points(x_max, samples) {
        let want = f.eval(nu, x)?;
        let got = inverse_transform(&exact, x)?;
        let err = (got - want).abs();
        max_err = max_err.max(err);
        a.row("round_trip", x, err);
        rt.push(json!({ "x": x, "f": want, "reconstructed": got, "error": err }));
    }
    a.set("round_trip", Value::Array(rt));
    a.set("round_trip_max_error", json!(max_err));
    Ok(a)
}

fn psi_and_residual_tables(
    a: &mut Artifact,
    ansatz: &SolutionAnsatz,
    seq: &CoefficientSequence<f64>,
    x_max: f64,
    samples: usize,
    residual: impl Fn(f64) -> Result<f64>,
) -> Result<()> {
    a.set("ansatz", json!({ "alpha": ansatz.alpha, "beta": ansatz.beta, "nu": ansatz.nu }));
    for (i, c) in seq.terms().iter().enumerate() {
        a.row("coefficients", i, c);
    }
    a.set("coefficients", json!(seq.terms()));

    let mut psi = Vec::new();
    for x in sample_points(x_max, samples) {
        let v = reconstruct_psi(ansatz, seq, x)?;
        a.row("samples", x, v);
        psi.push(json!({ "x": x, "psi": v }));
    }
    a.set("samples", Value::Array(psi));

    let grid = default_residual_grid();
    let mut res = Vec::new();
    for &x in &grid {
        let r = residual(x)?;
        a.row("residuals", x, r);
        res.push(json!({ "x": x, "residual": r }));
    }
    a.set("residuals", Value::Array(res));
    a.set("max_grid_residual", json!(max_grid_residual(&grid, &residual)?));
    Ok(())
}

fn run_coulomb(p: CoulombParams, n_terms: usize, x_max: f64, samples: usize) -> Result<Artifact> {
    check_terms(n_terms)?;
    check_sampling(x_max, samples)?;
    let (phi, z) = coulomb_phase(&p)?;
    let ansatz = coulomb_ansatz(&p);
    let seq = coulomb_coefficients(&p, n_terms)?;
    let mut a = Artifact::new("coulomb");
    a.set(
        "parameters",
        json!({
            "Z": p.charge, "E": p.energy, "l": p.l, "lambda": p.lambda_scale, "n_terms": n_terms,
            "A0": p.a_zero(), "A_minus": p.a_minus(), "A_plus": p.a_plus(),
        }),
    );
    a.set(
        "phase",
        json!({
            "phi": phi,
            "z": z,
            "recurrence_argument": coulomb_recurrence_argument(&p, SinArgument::Derived),
            "printed_argument": coulomb_recurrence_argument(&p, SinArgument::Printed),
        }),
    );
    a.row("phase", "phi", phi);
    psi_and_residual_tables(&mut a, &ansatz, &seq, x_max, samples, |x| {
        ode_residual_coulomb(&p, &ansatz, &seq, x)
    })?;
    Ok(a)
}

fn run_morse(p: MorseParams, n_terms: usize, x_max: f64, samples: usize) -> Result<Artifact> {
    check_terms(n_terms)?;
    check_sampling(x_max, samples)?;
    let ansatz = morse_ansatz(&p)?;
    let (phi, w) = morse_phase(&p)?;
    let seq = morse_coefficients(&p, n_terms)?;
    let mut a = Artifact::new("morse");
    a.set(
        "parameters",
        json!({
            "V1": p.v1, "V2": p.v2, "E": p.energy, "lambda": p.lambda_scale, "n_terms": n_terms,
            "A0": p.a_zero(), "A_minus": p.a_minus(), "A_plus": p.a_plus(),
        }),
    );
    a.set("phase", json!({ "phi": phi, "recurrence_argument": w }));
    a.row("phase", "phi", phi);
    psi_and_residual_tables(&mut a, &ansatz, &seq, x_max, samples, |x| {
        ode_residual_morse(&p, &ansatz, &seq, x)
    })?;
    Ok(a)
}

fn rational_strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn poly_strings(p: &RationalPolynomial) -> Vec<String> {
    rational_strings(p.coeffs())
}

fn run_krall(r: BigRational, m: usize) -> Result<Artifact> {
    let problem = FourthOrderProblem::new(r.clone(), m)?;
    let coeffs = rational_strings(triangular_solve(&r, m)?.terms());
    let y_m = poly_strings(&y_m_polynomial(&r, m)?);
    let krall = poly_strings(&krall_polynomial(&r, m));
    let bv = boundary_values(&r, m)?;
    let cert = certify(&r, m)?;

    let mut a = Artifact::new("krall");
    a.set(
        "parameters",
        json!({ "R": format_rational(&r), "m": m, "lambda_m": format_rational(problem.lambda_m()) }),
    );
    for (table, list) in [("coefficients", &coeffs), ("y_m", &y_m), ("krall_R_m", &krall)] {
        for (i, c) in list.iter().enumerate() {
            a.row(table, i, c);
        }
    }
    a.set("coefficients", json!(coeffs));
    a.set("y_m", json!(y_m));
    a.set("krall_R_m", json!(krall));
    a.set(
        "boundary",
        json!({
            "y0": format_rational(&bv.y0),
            "yp0": format_rational(&bv.yp0),
            "yp0_paper": format_rational(&bv.yp0_paper),
            "paper_stated_consistent": bv.paper_stated_consistent,
        }),
    );
    let certs = [
        ("closed_form", cert.closed_form),
        ("eigen_identity", cert.eigen_identity),
        ("krall_equality", cert.krall_equality),
        ("transform_space", cert.transform_space),
    ];
    for (k, v) in certs {
        a.row("certificates", k, v);
    }
    a.set("certificates", Value::Object(certs.iter().map(|(k, v)| (k.to_string(), json!(v))).collect()));
    a.set("all_certified", json!(cert.all()));
    Ok(a)
}

fn run_check(suite: &str) -> Result<(Artifact, bool)> {
    let reports = run_suites(suite.parse::<Suite>()?)?;
    let mut a = Artifact::new("check");
    let passed = reports.iter().all(|r| r.passed());
    for r in &reports {
        a.row("suites", &r.name, if r.passed() { "PASS" } else { "FAIL" });
        a.row("max_deviation", &r.name, r.max_deviation);
    }
    a.set("suites", Value::Array(reports.iter().map(|r| r.to_json()).collect()));
    a.set("passed", json!(passed));
    Ok((a, passed))
}

/// The artifact and whether every check in it passed.
pub fn run(command: &Command) -> Result<(Artifact, bool)> {
    match command {
        Command::Transform { nu, function, n_terms, x_max, samples } => {
            Ok((run_transform(parse_real(nu)?, function, *n_terms, parse_real(x_max)?, *samples)?, true))
        }
        Command::Coulomb { charge, energy, l, lambda, n_terms, x_max, samples } => {
            let p = CoulombParams::new(parse_real(charge)?, parse_real(energy)?, *l, parse_real(lambda)?)?;
            Ok((run_coulomb(p, *n_terms, parse_real(x_max)?, *samples)?, true))
        }
        Command::Morse { v1, v2, energy, lambda, n_terms, x_max, samples } => {
            let p = MorseParams::new(parse_real(v1)?, parse_real(v2)?, parse_real(energy)?, parse_real(lambda)?)?;
            Ok((run_morse(p, *n_terms, parse_real(x_max)?, *samples)?, true))
        }
        Command::Krall { r, m } => {
            let a = run_krall(parse_rational(r)?, *m)?;
            let ok = a.json["all_certified"] == json!(true);
            Ok((a, ok))
        }
        Command::Check { suite } => run_check(suite),
    }
}

pub fn error_json(e: &Error) -> Value {
    let kind = if e.is_domain() { "domain" } else { "numerical" };
    json!({ "error": { "kind": kind, "message": e.to_string() } })
}

fn exit_code(e: &Error) -> u8 {
    if e.is_domain() {
        2
    } else {
        3
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::Parse(format!("write failed: {e}"));
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(io),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(io),
    }
}

pub fn main_with(cli: Cli) -> ExitCode {
    let outcome = run(&cli.command).and_then(|(a, ok)| {
        emit(&cli, &a.render(cli.format)?)?;
        Ok(ok)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        // a check that ran but did not pass is a numerical failure
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("{}", error_json(&e));
            ExitCode::from(exit_code(&e))
        }
    }
}
