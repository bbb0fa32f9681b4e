//! Coulomb and Morse instances of the one-dimensional Schrödinger equation
//! solved in the Laguerre basis.
//!
//! With `ψ(x) = x^α e^{-βx} y(x)` the reduced equation for `y` is transformed
//! with the order-ν operators; the choice of `(α, β, ν)` removes the partial
//! sums and leaves a Meixner–Pollaczek type three-term recurrence for the
//! transform coefficients `c_n = T^ν[y]_n`. Expansions are reconstructed as
//! `y = Σ (c_k / h_k^ν) L_k^ν`, the inverse of the unnormalized transform.
//!
//! The sin-term argument of the recurrence is the one that follows from the
//! reduced equation: `-Z/√(2E)` for Coulomb and `-A₀/(2√A₊)` for Morse. The
//! printed forms `-Z/(4E)` and `+A₀/(2√A₊)` are available through
//! [`SinArgument::Printed`] for comparison; they do not annihilate the
//! transformed equation.

use crate::error::{Error, Result};
use crate::seq_algebra::{CoefficientSequence, Order};
use crate::special_fn::{laguerre_table, norm_h};
use crate::transform::{
    op_derivative, op_div_by_x, op_mul_by_x, op_x_derivative, op_x_second_derivative, TransformPair,
};

/// Which sin-term argument the coefficient recurrence uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SinArgument {
    /// The argument obtained by expanding the transformed reduced equation.
    #[default]
    Derived,
    /// The argument as printed in the trigonometric form of the recurrence.
    Printed,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoulombParams {
    pub charge: f64,
    pub energy: f64,
    pub l: u32,
    pub lambda_scale: f64,
}

impl CoulombParams {
    pub fn new(charge: f64, energy: f64, l: u32, lambda_scale: f64) -> Result<Self> {
        if !(charge > 0.0 && charge.is_finite()) {
            return Err(Error::domain(format!("charge Z must be > 0, got {charge}")));
        }
        if !(energy != 0.0 && energy.is_finite()) {
            return Err(Error::domain("energy E must be finite and nonzero"));
        }
        if !(lambda_scale > 0.0 && lambda_scale.is_finite()) {
            return Err(Error::domain(format!("lambda must be > 0, got {lambda_scale}")));
        }
        Ok(Self { charge, energy, l, lambda_scale })
    }

    /// `A₀ = 2Z/λ`
    pub fn a_zero(&self) -> f64 {
        2.0 * self.charge / self.lambda_scale
    }

    /// `A₋ = −l(l+1)`
    pub fn a_minus(&self) -> f64 {
        let l = self.l as f64;
        -l * (l + 1.0)
    }

    /// `A₊ = 2E/λ²`
    pub fn a_plus(&self) -> f64 {
        2.0 * self.energy / (self.lambda_scale * self.lambda_scale)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MorseParams {
    pub v1: f64,
    pub v2: f64,
    pub energy: f64,
    pub lambda_scale: f64,
}

impl MorseParams {
    pub fn new(v1: f64, v2: f64, energy: f64, lambda_scale: f64) -> Result<Self> {
        if !(v1.is_finite() && v2.is_finite() && energy.is_finite()) {
            return Err(Error::domain("Morse parameters must be finite"));
        }
        if !(lambda_scale > 0.0 && lambda_scale.is_finite()) {
            return Err(Error::domain(format!("lambda must be > 0, got {lambda_scale}")));
        }
        Ok(Self { v1, v2, energy, lambda_scale })
    }

    /// `A₀ = −2V₁/λ²`
    pub fn a_zero(&self) -> f64 {
        -2.0 * self.v1 / (self.lambda_scale * self.lambda_scale)
    }

    /// `A₋ = 2E/λ²`
    pub fn a_minus(&self) -> f64 {
        2.0 * self.energy / (self.lambda_scale * self.lambda_scale)
    }

    /// `A₊ = −2V₂/λ²`
    pub fn a_plus(&self) -> f64 {
        -2.0 * self.v2 / (self.lambda_scale * self.lambda_scale)
    }
}

/// `ψ(x) = x^α e^{-βx} y(x)` with `y` expanded in `L_k^ν`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolutionAnsatz {
    pub alpha: f64,
    pub beta: f64,
    pub nu: f64,
}

/// `α = l+1`, `β = 1/2`, `ν = 2l+1`; these satisfy `α² − α + A₋ = 0`.
pub fn coulomb_ansatz(p: &CoulombParams) -> SolutionAnsatz {
    let l = p.l as f64;
    let a = SolutionAnsatz { alpha: l + 1.0, beta: 0.5, nu: 2.0 * l + 1.0 };
    debug_assert_eq!(a.alpha * a.alpha - a.alpha + p.a_minus(), 0.0);
    a
}

/// `α = √(−A₋)`, `ν = 2α`, `β = 1/2`.
pub fn morse_ansatz(p: &MorseParams) -> Result<SolutionAnsatz> {
    if p.energy >= 0.0 {
        return Err(Error::domain(format!(
            "Morse order nu = 2 sqrt(-2E)/lambda needs E < 0, got E = {}",
            p.energy
        )));
    }
    let alpha = (-p.a_minus()).sqrt();
    Ok(SolutionAnsatz { alpha, beta: 0.5, nu: 2.0 * alpha })
}

/// `(φ, z)` with `cos φ = (8E − λ²)/(8E + λ²)` and `z = −Z/(2E)`.
pub fn coulomb_phase(p: &CoulombParams) -> Result<(f64, f64)> {
    let lam2 = p.lambda_scale * p.lambda_scale;
    let cos_phi = (8.0 * p.energy - lam2) / (8.0 * p.energy + lam2);
    if !(cos_phi.abs() < 1.0) {
        return Err(Error::domain("phase undefined for these parameters"));
    }
    Ok((cos_phi.acos(), -p.charge / (2.0 * p.energy)))
}

/// The coefficient multiplying `sin φ` in the Coulomb recurrence.
pub fn coulomb_recurrence_argument(p: &CoulombParams, which: SinArgument) -> f64 {
    match which {
        SinArgument::Derived => -p.charge / (2.0 * p.energy).sqrt(),
        SinArgument::Printed => -p.charge / (4.0 * p.energy),
    }
}

/// `(φ, z)` with `cos φ = (A₊ − 1/4)/(A₊ + 1/4)` and `z` the derived recurrence argument.
pub fn morse_phase(p: &MorseParams) -> Result<(f64, f64)> {
    let ap = p.a_plus();
    if !(ap > 0.0) {
        return Err(Error::domain(format!("Morse phase needs A+ > 0 (V2 < 0), got A+ = {ap}")));
    }
    let cos_phi = (ap - 0.25) / (ap + 0.25);
    Ok((cos_phi.acos(), morse_recurrence_argument(p, SinArgument::Derived)))
}

pub fn morse_recurrence_argument(p: &MorseParams, which: SinArgument) -> f64 {
    let w = p.a_zero() / (2.0 * p.a_plus().sqrt());
    match which {
        SinArgument::Derived => -w,
        SinArgument::Printed => w,
    }
}

/// `c_0 = 1`, `(n+1)c_{n+1} = 2[(n+shift) cos φ + w sin φ] c_n − (n+ν) c_{n−1}`.
fn three_term(n_terms: usize, shift: f64, nu: f64, phi: f64, w: f64) -> Vec<f64> {
    let (s, c) = phi.sin_cos();
    let mut out = Vec::with_capacity(n_terms);
    if n_terms == 0 {
        return out;
    }
    out.push(1.0);
    let mut prev = 0.0;
    for n in 0..n_terms - 1 {
        let nf = n as f64;
        let next = (2.0 * ((nf + shift) * c + w * s) * out[n] - (nf + nu) * prev) / (nf + 1.0);
        prev = out[n];
        out.push(next);
    }
    out
}

pub fn coulomb_coefficients(p: &CoulombParams, n_terms: usize) -> Result<CoefficientSequence<f64>> {
    coulomb_coefficients_with(p, n_terms, SinArgument::Derived)
}

pub fn coulomb_coefficients_with(
    p: &CoulombParams,
    n_terms: usize,
    which: SinArgument,
) -> Result<CoefficientSequence<f64>> {
    if n_terms == 0 {
        return Err(Error::domain("n_terms must be at least 1"));
    }
    let (phi, _) = coulomb_phase(p)?;
    let a = coulomb_ansatz(p);
    let w = coulomb_recurrence_argument(p, which);
    Ok(CoefficientSequence::of_order(a.nu, three_term(n_terms, a.alpha, a.nu, phi, w)))
}

pub fn morse_coefficients(p: &MorseParams, n_terms: usize) -> Result<CoefficientSequence<f64>> {
    morse_coefficients_with(p, n_terms, SinArgument::Derived)
}

pub fn morse_coefficients_with(
    p: &MorseParams,
    n_terms: usize,
    which: SinArgument,
) -> Result<CoefficientSequence<f64>> {
    if n_terms == 0 {
        return Err(Error::domain("n_terms must be at least 1"));
    }
    let (phi, _) = morse_phase(p)?;
    let a = morse_ansatz(p)?;
    let w = morse_recurrence_argument(p, which);
    Ok(CoefficientSequence::of_order(a.nu, three_term(n_terms, (a.nu + 1.0) / 2.0, a.nu, phi, w)))
}

fn check_seq_order(a: &SolutionAnsatz, seq: &CoefficientSequence<f64>) -> Result<()> {
    match seq.order() {
        Order::Nu(v) if v == a.nu => Ok(()),
        other => Err(Error::IncompatibleOrder {
            left: other.to_string(),
            right: Order::Nu(a.nu).to_string(),
        }),
    }
}

/// `(y, y', y'')` of `y = Σ (c_k/h_k^ν) L_k^ν` at `x`, using
/// `d/dx L_k^ν = −L_{k−1}^{ν+1}` and `d²/dx² L_k^ν = L_{k−2}^{ν+2}`.
pub fn expansion_with_derivatives(seq: &CoefficientSequence<f64>, nu: f64, x: f64) -> Result<(f64, f64, f64)> {
    if seq.is_empty() {
        return Ok((0.0, 0.0, 0.0));
    }
    let n = seq.len() - 1;
    let l0 = laguerre_table(n, nu, x)?;
    let l1 = laguerre_table(n, nu + 1.0, x)?;
    let l2 = laguerre_table(n, nu + 2.0, x)?;
    let (mut y, mut yp, mut ypp) = (0.0, 0.0, 0.0);
    for (k, c) in seq.terms().iter().enumerate() {
        let a = c / norm_h(k, nu)?;
        y += a * l0[k];
        if k >= 1 {
            yp -= a * l1[k - 1];
        }
        if k >= 2 {
            ypp += a * l2[k - 2];
        }
    }
    Ok((y, yp, ypp))
}

/// `x^α e^{−βx} Σ (c_k/h_k^ν) L_k^ν(x)`.
pub fn reconstruct_psi(a: &SolutionAnsatz, seq: &CoefficientSequence<f64>, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::domain(format!("psi is defined for x >= 0, got {x}")));
    }
    if x == 0.0 && a.alpha < 0.0 {
        return Err(Error::domain("x^alpha is singular at 0 for alpha < 0"));
    }
    check_seq_order(a, seq)?;
    let (y, _, _) = expansion_with_derivatives(seq, a.nu, x)?;
    Ok(x.powf(a.alpha) * (-a.beta * x).exp() * y)
}

/// `x y'' + (2α − 2βx) y' + (β²+A₊) x y + (α²−α+A₋) y/x − (A₀+2αβ) y`.
pub fn ode_residual_coulomb(
    p: &CoulombParams,
    a: &SolutionAnsatz,
    seq: &CoefficientSequence<f64>,
    x: f64,
) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("residual is evaluated at x > 0, got {x}")));
    }
    check_seq_order(a, seq)?;
    let (y, yp, ypp) = expansion_with_derivatives(seq, a.nu, x)?;
    let (al, be) = (a.alpha, a.beta);
    Ok(x * ypp + (2.0 * al - 2.0 * be * x) * yp + (be * be + p.a_plus()) * x * y
        + (al * al - al + p.a_minus()) * y / x
        - (p.a_zero() + 2.0 * al * be) * y)
}

/// `x y'' + (1+2α−2βx) y' + ((β²+A₊)x − (β+2αβ+A₀) + (α²+A₋)/x) y`.
pub fn ode_residual_morse(
    p: &MorseParams,
    a: &SolutionAnsatz,
    seq: &CoefficientSequence<f64>,
    x: f64,
) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("residual is evaluated at x > 0, got {x}")));
    }
    check_seq_order(a, seq)?;
    let (y, yp, ypp) = expansion_with_derivatives(seq, a.nu, x)?;
    let (al, be) = (a.alpha, a.beta);
    Ok(x * ypp
        + (1.0 + 2.0 * al - 2.0 * be * x) * yp
        + ((be * be + p.a_plus()) * x - (be + 2.0 * al * be + p.a_zero()) + (al * al + p.a_minus()) / x) * y)
}

/// `Σ_i k_i s_i`, truncated to the shortest input.
fn linear_combination(order: f64, parts: &[(f64, &CoefficientSequence<f64>)]) -> CoefficientSequence<f64> {
    let len = parts.iter().map(|(_, s)| s.len()).min().unwrap_or(0);
    let terms = (0..len)
        .map(|n| parts.iter().map(|(k, s)| k * s.get(n as isize)).sum())
        .collect();
    CoefficientSequence::of_order(order, terms)
}

struct TransformedTerms {
    x_second: CoefficientSequence<f64>,
    deriv: CoefficientSequence<f64>,
    x_deriv: CoefficientSequence<f64>,
    times_x: CoefficientSequence<f64>,
    over_x: CoefficientSequence<f64>,
}

fn transformed_terms(
    a: &SolutionAnsatz,
    seq: &CoefficientSequence<f64>,
    seq_lower: &CoefficientSequence<f64>,
) -> Result<TransformedTerms> {
    check_seq_order(a, seq)?;
    let tp = TransformPair::with_lower(seq.clone(), seq_lower.clone())?;
    Ok(TransformedTerms {
        x_second: op_x_second_derivative(&tp)?,
        deriv: op_derivative(&tp)?,
        x_deriv: op_x_derivative(seq),
        times_x: op_mul_by_x(seq)?,
        over_x: op_div_by_x(seq_lower),
    })
}

/// Order-ν transform of the reduced Coulomb equation applied to the function
/// whose transforms are `seq` (order ν) and `seq_lower` (order ν−1).
pub fn transform_equation_coulomb(
    p: &CoulombParams,
    a: &SolutionAnsatz,
    seq: &CoefficientSequence<f64>,
    seq_lower: &CoefficientSequence<f64>,
) -> Result<CoefficientSequence<f64>> {
    let t = transformed_terms(a, seq, seq_lower)?;
    let (al, be) = (a.alpha, a.beta);
    Ok(linear_combination(
        a.nu,
        &[
            (1.0, &t.x_second),
            (2.0 * al, &t.deriv),
            (-2.0 * be, &t.x_deriv),
            (be * be + p.a_plus(), &t.times_x),
            (al * al - al + p.a_minus(), &t.over_x),
            (-(p.a_zero() + 2.0 * al * be), seq),
        ],
    ))
}

/// Order-ν transform of the reduced Morse equation.
pub fn transform_equation_morse(
    p: &MorseParams,
    a: &SolutionAnsatz,
    seq: &CoefficientSequence<f64>,
    seq_lower: &CoefficientSequence<f64>,
) -> Result<CoefficientSequence<f64>> {
    let t = transformed_terms(a, seq, seq_lower)?;
    let (al, be) = (a.alpha, a.beta);
    Ok(linear_combination(
        a.nu,
        &[
            (1.0, &t.x_second),
            (1.0 + 2.0 * al, &t.deriv),
            (-2.0 * be, &t.x_deriv),
            (be * be + p.a_plus(), &t.times_x),
            (al * al + p.a_minus(), &t.over_x),
            (-(be + 2.0 * al * be + p.a_zero()), seq),
        ],
    ))
}

/// `count` points spaced evenly in `ln x` over `[lo, hi]`.
pub fn log_grid(count: usize, lo: f64, hi: f64) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Ten log-spaced points on `[0.5, 8]`.
pub fn default_residual_grid() -> Vec<f64> {
    log_grid(10, 0.5, 8.0)
}

pub const DEFAULT_N_TERMS: usize = 24;

/// `max_x |r(x)|` over the grid.
pub fn max_grid_residual(grid: &[f64], residual: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    grid.iter().try_fold(0.0f64, |m, &x| Ok(m.max(residual(x)?.abs())))
}
