//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; the process exits nonzero if any fail.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lagspec::fourth_order::{check_eigen_identity, check_krall_equality, closed_form_coefficients, transform_space_check, triangular_solve};
use lagspec::quadrature::gauss_laguerre_rule;
use lagspec::scalar::rational;
use lagspec::schrodinger::{
    coulomb_ansatz, coulomb_coefficients, coulomb_phase, coulomb_recurrence_argument, default_residual_grid,
    max_grid_residual, morse_ansatz, morse_coefficients, morse_phase, ode_residual_coulomb, ode_residual_morse,
    transform_equation_coulomb, CoulombParams, MorseParams, SinArgument,
};
use lagspec::seq_algebra::CoefficientSequence;
use lagspec::special_fn::{laguerre_eval, mp_table, norm_h, MPParams};
use lagspec::suites::{eigen_relation_lhs, theorem1_suite, DEFAULT_ORACLE_NODES};
use lagspec::transform::{forward_transform_with, inverse_transform, lower_order, TransformPair};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

const COULOMB_POINTS: [(f64, f64, u32, f64); 2] = [(1.0, 0.5, 0, 1.0), (2.0, 1.0, 1, 1.0)];
// (V1, V2, E, λ): A₊ = 1, A₀ = 1, ν = 2 and A₊ = 2, A₀ = 2, ν = 4
const MORSE_POINTS: [(f64, f64, f64, f64); 2] = [(-0.5, -0.5, -0.5, 1.0), (-1.0, -1.0, -2.0, 1.0)];
const DECAY_TERMS: [usize; 3] = [6, 12, 24];
const DECAY_SLACK: f64 = 1.10;

fn criterion_1() -> Outcome {
    let mut worst_off: f64 = 0.0;
    let mut worst_diag: f64 = 0.0;
    for &nu in &[0.0, 1.0, 2.5] {
        let rule = gauss_laguerre_rule(64, nu).unwrap();
        for n in 0..=12 {
            let h = norm_h(n, nu).unwrap();
            for m in 0..=12 {
                let v = rule
                    .integrate(|x| laguerre_eval(n, nu, x).unwrap() * laguerre_eval(m, nu, x).unwrap())
                    .unwrap();
                if n == m {
                    worst_diag = worst_diag.max((v - h).abs() / h);
                } else {
                    worst_off = worst_off.max(v.abs() / h);
                }
            }
        }
    }
    outcome(
        worst_off < 1e-10 && worst_diag < 1e-9,
        format!("max off-diagonal/h {worst_off:.2e} (< 1e-10), max diagonal rel {worst_diag:.2e} (< 1e-9)"),
    )
}

fn criterion_2() -> Outcome {
    let r = theorem1_suite(DEFAULT_ORACLE_NODES).unwrap();
    let mut detail = format!("{} comparisons, max deviation {:.2e} (< 1e-9)", r.checks, r.max_deviation);
    if let Some(f) = r.failures.first() {
        detail.push_str(&format!("; first failure {f}"));
    }
    outcome(r.passed(), detail)
}

fn criterion_3() -> Outcome {
    let mut worst: f64 = 0.0;
    for &nu in &[1.0, 2.0] {
        let rule = gauss_laguerre_rule(DEFAULT_ORACLE_NODES, nu).unwrap();
        let lower_rule = gauss_laguerre_rule(DEFAULT_ORACLE_NODES, nu - 1.0).unwrap();
        for n in 0..=8 {
            let f = |x: f64| laguerre_eval(n, nu, x).unwrap();
            let tp = TransformPair::with_lower(
                forward_transform_with(&rule, f, 12).unwrap(),
                forward_transform_with(&lower_rule, f, 12).unwrap(),
            )
            .unwrap();
            let lhs = eigen_relation_lhs(&tp).unwrap();
            for i in 0..lhs.len() as isize {
                worst = worst.max((lhs.get(i) + n as f64 * tp.seq().get(i)).abs());
            }
        }
    }
    outcome(worst < 1e-9, format!("max |T[L[L_n]] + n T[L_n]| {worst:.2e} (< 1e-9)"))
}

/// Max-grid residuals at each truncation and whether each is within 10% of
/// (or below) the previous one.
fn decay(residuals: &[f64]) -> bool {
    residuals.windows(2).all(|w| w[1] <= DECAY_SLACK * w[0])
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|r| format!("{r:.3}")).collect::<Vec<_>>().join(" -> ")
}

fn coulomb_residuals(p: &CoulombParams) -> Vec<f64> {
    let a = coulomb_ansatz(p);
    let grid = default_residual_grid();
    DECAY_TERMS
        .iter()
        .map(|&n| {
            let s = coulomb_coefficients(p, n).unwrap();
            max_grid_residual(&grid, |x| ode_residual_coulomb(p, &a, &s, x)).unwrap()
        })
        .collect()
}

fn morse_residuals(p: &MorseParams) -> Vec<f64> {
    let a = morse_ansatz(p).unwrap();
    let grid = default_residual_grid();
    DECAY_TERMS
        .iter()
        .map(|&n| {
            let s = morse_coefficients(p, n).unwrap();
            max_grid_residual(&grid, |x| ode_residual_morse(p, &a, &s, x)).unwrap()
        })
        .collect()
}

fn criterion_4() -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for &(z, e, l, lam) in &COULOMB_POINTS {
        let p = CoulombParams::new(z, e, l, lam).unwrap();
        let a = coulomb_ansatz(&p);
        let (phi, _) = coulomb_phase(&p).unwrap();
        let w = coulomb_recurrence_argument(&p, SinArgument::Derived);
        let c = coulomb_coefficients(&p, 52).unwrap();
        let mut rec: f64 = 0.0;
        for n in 0..=50isize {
            let nf = n as f64;
            let r = (nf + 1.0) * c.get(n + 1) - 2.0 * (w * phi.sin() + (nf + a.alpha) * phi.cos()) * c.get(n)
                + (nf + 2.0 * a.alpha - 1.0) * c.get(n - 1);
            rec = rec.max(r.abs());
        }
        let mut eq: f64 = 0.0;
        for &n in &DECAY_TERMS {
            let s = coulomb_coefficients(&p, n).unwrap();
            let lower = lower_order(&s).unwrap();
            let t = transform_equation_coulomb(&p, &a, &s, &lower).unwrap();
            eq = eq.max(t.truncated(n - 1).max_abs());
        }
        let res = coulomb_residuals(&p);
        let ok = rec < 1e-12 && eq < 1e-8 && decay(&res);
        passed &= ok;
        parts.push(format!(
            "(Z,E,l,λ)=({z},{e},{l},{lam}): recurrence {rec:.1e}, transformed eq {eq:.1e}, grid residual {}{}",
            fmt_list(&res),
            if decay(&res) { "" } else { " NOT non-increasing" }
        ));
    }
    outcome(passed, parts.join("; "))
}

fn criterion_5() -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for &(v1, v2, e, lam) in &MORSE_POINTS {
        let p = MorseParams::new(v1, v2, e, lam).unwrap();
        let a = morse_ansatz(&p).unwrap();
        let (phi, w) = morse_phase(&p).unwrap();
        let c = morse_coefficients(&p, 51).unwrap();
        let mp = mp_table(50, &MPParams::new((a.nu + 1.0) / 2.0, phi, w).unwrap());
        let mut dev: f64 = 0.0;
        for (x, y) in c.terms().iter().zip(&mp) {
            dev = dev.max((x - y).abs() / y.abs().max(1.0));
        }
        let res = morse_residuals(&p);
        let ok = dev < 1e-13 && decay(&res);
        passed &= ok;
        parts.push(format!(
            "(V1,V2,E,λ)=({v1},{v2},{e},{lam}) A+={} A0={} ν={}: vs MP recurrence {dev:.1e}, grid residual {}{}",
            p.a_plus(),
            p.a_zero(),
            a.nu,
            fmt_list(&res),
            if decay(&res) { "" } else { " NOT non-increasing" }
        ));
    }
    outcome(passed, parts.join("; "))
}

fn criterion_6() -> Outcome {
    let rs = [rational(1, 3), rational(1, 1), rational(2, 1), rational(7, 2), rational(10, 1)];
    let mut failures = Vec::new();
    let mut count = 0;
    for r in &rs {
        for m in 0..=25 {
            count += 1;
            let closed = triangular_solve(r, m).unwrap() == closed_form_coefficients(r, m);
            let eigen = check_eigen_identity(r, m).unwrap().residual.is_zero();
            let krall = check_krall_equality(r, m).unwrap();
            let tspace = transform_space_check(r, m).unwrap();
            if !(closed && eigen && krall && tspace) {
                failures.push(format!("R={r} m={m}"));
            }
        }
    }
    outcome(failures.is_empty(), format!("{count} (R, m) points, failures {failures:?}"))
}

fn criterion_7() -> Outcome {
    // ascending coefficients, rescaled to unit sup-norm on [0, 20] so that an
    // absolute tolerance is meaningful (x^8 is 2.6e10 at x = 20)
    let mut polys: Vec<Vec<f64>> = (0..=8).map(|d| (0..=d).map(|k| if k == d { 1.0 } else { 0.0 }).collect()).collect();
    polys.push(vec![0.5, -1.25, 0.75, 0.1, -0.3, 0.02, 0.01, -0.004, 0.0005]);
    polys.push(vec![1.0; 9]);
    let xs: Vec<f64> = (0..=200).map(|i| 0.1 * i as f64).collect();
    let eval = |p: &[f64], x: f64| p.iter().rev().fold(0.0, |acc, c| acc * x + c);
    let mut worst: f64 = 0.0;
    for &nu in &[0.0, 1.0, 3.0] {
        let rule = gauss_laguerre_rule(DEFAULT_ORACLE_NODES, nu).unwrap();
        for p in &polys {
            let sup = xs.iter().map(|&x| eval(p, x).abs()).fold(0.0, f64::max);
            let p: Vec<f64> = p.iter().map(|c| c / sup).collect();
            let seq = forward_transform_with(&rule, |x| eval(&p, x), 9).unwrap();
            for &x in &xs {
                worst = worst.max((inverse_transform(&seq, x).unwrap() - eval(&p, x)).abs());
            }
        }
    }
    outcome(worst < 1e-9, format!("max pointwise error {worst:.2e} (< 1e-9) on x in [0, 20], unit sup-norm polynomials"))
}

fn criterion_8() -> Outcome {
    let grid = default_residual_grid();
    let n = 24;
    let mut non_increasing = Vec::new();
    let mut checks = 0;
    let mut transform_space_min: f64 = f64::INFINITY;

    let mut perturb = |label: String, seq: &CoefficientSequence<f64>, residual: &dyn Fn(&CoefficientSequence<f64>) -> f64| {
        let base = residual(seq);
        let mut bad = Vec::new();
        for k in 0..seq.len() {
            let mut t = seq.terms().to_vec();
            t[k] *= 1.1;
            let q = CoefficientSequence::new(seq.order(), t);
            checks += 1;
            if !(residual(&q) > base) {
                bad.push(k);
            }
        }
        if !bad.is_empty() {
            non_increasing.push(format!("{label} k={bad:?}"));
        }
    };

    for &(z, e, l, lam) in &COULOMB_POINTS {
        let p = CoulombParams::new(z, e, l, lam).unwrap();
        let a = coulomb_ansatz(&p);
        let s = coulomb_coefficients(&p, n).unwrap();
        perturb(format!("Coulomb Z={z}"), &s, &|q| {
            max_grid_residual(&grid, |x| ode_residual_coulomb(&p, &a, q, x)).unwrap()
        });
        // the same perturbations seen through the transformed equation
        for k in 0..n - 1 {
            let mut t = s.terms().to_vec();
            t[k] *= 1.1;
            let q = CoefficientSequence::new(s.order(), t);
            let te = transform_equation_coulomb(&p, &a, &q, &lower_order(&q).unwrap()).unwrap();
            transform_space_min = transform_space_min.min(te.truncated(n - 1).max_abs());
        }
    }
    for &(v1, v2, e, lam) in &MORSE_POINTS {
        let p = MorseParams::new(v1, v2, e, lam).unwrap();
        let a = morse_ansatz(&p).unwrap();
        let s = morse_coefficients(&p, n).unwrap();
        perturb(format!("Morse V1={v1}"), &s, &|q| {
            max_grid_residual(&grid, |x| ode_residual_morse(&p, &a, q, x)).unwrap()
        });
    }

    let p = CoulombParams::new(1.0, 0.5, 0, 1.0).unwrap();
    let a = coulomb_ansatz(&p);
    let random: Vec<f64> = (0..n).map(|k| ((k as f64 + 1.0) * 0.754_877_666_2).fract() - 0.5).collect();
    let random = CoefficientSequence::of_order(a.nu, random);
    let te = transform_equation_coulomb(&p, &a, &random, &lower_order(&random).unwrap()).unwrap();
    let random_rejected = te.max_abs() > 1e-3;

    outcome(
        non_increasing.is_empty() && random_rejected,
        format!(
            "random sequence rejected: {random_rejected} (max |eq| {:.2e}); {checks} single-coefficient perturbations, \
             grid residual not increased for {}; transformed-equation min max|entry| under perturbation {transform_space_min:.2e}",
            te.max_abs(),
            if non_increasing.is_empty() { "none".to_string() } else { non_increasing.join(", ") }
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("1 orthogonality", criterion_1, Duration::from_secs(5)),
        ("2 theorem 1 oracle equivalence", criterion_2, Duration::from_secs(10)),
        ("3 eigen-relation assembly", criterion_3, Duration::from_secs(10)),
        ("4 Coulomb end-to-end", criterion_4, Duration::from_secs(10)),
        ("5 Morse end-to-end", criterion_5, Duration::from_secs(10)),
        ("6 Theorem 2 certificates", criterion_6, Duration::from_secs(30)),
        ("7 round trip", criterion_7, Duration::from_secs(10)),
        ("8 negative controls", criterion_8, Duration::from_secs(10)),
    ];
    let mut all = true;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let ok = o.passed && elapsed <= limit;
        all &= ok;
        println!(
            "{} criterion {name}: {} [{:.2}s, limit {}s]",
            if ok { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
