//! Scalar special functions: Laguerre norms and polynomials, Pochhammer
//! symbols, Meixner–Pollaczek polynomials and the terminating ₂F₁ sum.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use statrs::function::gamma::{gamma, ln_gamma};

use crate::error::{Error, Result};
use crate::poly::RationalPolynomial;

fn check_nu(nu: f64) -> Result<()> {
    if nu.is_finite() && nu > -1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("Laguerre order must exceed -1, got {nu}")))
    }
}

fn as_small_nonneg_integer(nu: f64) -> Option<u32> {
    (nu >= 0.0 && nu.fract() == 0.0 && nu <= 1000.0).then_some(nu as u32)
}

/// `h_n^ν = Γ(n+ν+1)/n!`, the squared weighted norm of `L_n^ν`.
pub fn norm_h(n: usize, nu: f64) -> Result<f64> {
    check_nu(nu)?;
    if let Some(k) = as_small_nonneg_integer(nu) {
        // (n+1)(n+2)...(n+k)
        return Ok((1..=k).map(|j| (n as f64) + j as f64).product());
    }
    // Γ(ν+1) Π_{j≤n} (1 + ν/j) keeps full relative accuracy where Γ is representable
    let direct = gamma(nu + 1.0) * (1..=n).map(|j| 1.0 + nu / j as f64).product::<f64>();
    if direct.is_finite() && direct > 0.0 {
        return Ok(direct);
    }
    Ok((ln_gamma(n as f64 + nu + 1.0) - ln_gamma(n as f64 + 1.0)).exp())
}

/// Exact `h_n^ν` for a nonnegative integer order.
pub fn norm_h_exact(n: usize, nu: u32) -> BigRational {
    let mut h = BigInt::one();
    for j in 1..=nu as usize {
        h *= BigInt::from(n + j);
    }
    BigRational::from_integer(h)
}

/// Rising factorial `r(r+1)...(r+k-1)`; the empty product is 1.
pub fn pochhammer(r: f64, k: usize) -> f64 {
    (0..k).map(|j| r + j as f64).product()
}

pub fn pochhammer_complex(r: Complex64, k: usize) -> Complex64 {
    (0..k).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (r + j as f64))
}

/// `L_n^ν(x)` by the forward three-term recurrence.
pub fn laguerre_eval(n: usize, nu: f64, x: f64) -> Result<f64> {
    Ok(*laguerre_table(n, nu, x)?.last().expect("non-empty table"))
}

/// `[L_0^ν(x), ..., L_{n_max}^ν(x)]`.
pub fn laguerre_table(n_max: usize, nu: f64, x: f64) -> Result<Vec<f64>> {
    check_nu(nu)?;
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::domain(format!("Laguerre argument must be finite and >= 0, got {x}")));
    }
    Ok(laguerre_table_unchecked(n_max, nu, x))
}

/// Recurrence without argument checks. Callers guarantee the order is admissible.
pub(crate) fn laguerre_table_unchecked(n_max: usize, nu: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    if n_max == 0 {
        return out;
    }
    out.push(nu + 1.0 - x);
    for n in 1..n_max {
        let nf = n as f64;
        let next = ((2.0 * nf + nu + 1.0 - x) * out[n] - (nf + nu) * out[n - 1]) / (nf + 1.0);
        out.push(next);
    }
    out
}

/// Exact coefficients of `L_n^ν` from the defining sum
/// `Σ_m C(n+ν, n-m) (-x)^m / m!`.
pub fn laguerre_poly(n: usize, nu: &BigRational) -> RationalPolynomial {
    let int = |k: usize| BigRational::from_integer(BigInt::from(k));
    let mut coeffs = Vec::with_capacity(n + 1);
    for m in 0..=n {
        // C(n+ν, n-m) = Π_{j=1}^{n-m} (m+ν+j)/j
        let mut binom = BigRational::one();
        for j in 1..=(n - m) {
            binom = binom * (int(m + j) + nu) / int(j);
        }
        let mut m_fact = BigRational::one();
        for j in 1..=m {
            m_fact *= int(j);
        }
        let c = binom / m_fact;
        coeffs.push(if m % 2 == 0 { c } else { -c });
    }
    RationalPolynomial::new(coeffs)
}

/// Parameters of the Meixner–Pollaczek polynomial `P_n^{(order)}(z; φ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MPParams {
    pub order: f64,
    pub phi: f64,
    pub z: f64,
}

impl MPParams {
    pub fn new(order: f64, phi: f64, z: f64) -> Result<Self> {
        if !(order > 0.0 && order.is_finite()) {
            return Err(Error::domain(format!("Meixner-Pollaczek order must be > 0, got {order}")));
        }
        if !(phi > 0.0 && phi < std::f64::consts::PI) {
            return Err(Error::domain(format!("Meixner-Pollaczek angle must lie in (0, pi), got {phi}")));
        }
        if !z.is_finite() {
            return Err(Error::domain("Meixner-Pollaczek argument must be finite"));
        }
        Ok(Self { order, phi, z })
    }
}

/// `P_n^{(order)}(z; φ)` from the forward recurrence
/// `(n+1)P_{n+1} = 2[z sin φ + (n+order) cos φ]P_n - (n+2·order-1)P_{n-1}`.
pub fn mp_eval(n: usize, p: &MPParams) -> f64 {
    *mp_table(n, p).last().expect("non-empty table")
}

pub fn mp_table(n_max: usize, p: &MPParams) -> Vec<f64> {
    let (s, c) = p.phi.sin_cos();
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(1.0);
    let mut prev = 0.0;
    for n in 0..n_max {
        let nf = n as f64;
        let next = (2.0 * (p.z * s + (nf + p.order) * c) * out[n]
            - (nf + 2.0 * p.order - 1.0) * prev)
            / (nf + 1.0);
        prev = out[n];
        out.push(next);
    }
    out
}

/// Closed form `(2λ)_n/n! e^{inφ} ₂F₁(-n, λ+iz; 2λ; 1-e^{-2iφ})`.
///
/// The result is real up to rounding; the imaginary part is returned so callers
/// can check it.
pub fn mp_closed_form(n: usize, p: &MPParams) -> Result<Complex64> {
    let lambda = p.order;
    let prefactor = pochhammer(2.0 * lambda, n) / factorial(n);
    let phase = Complex64::from_polar(1.0, n as f64 * p.phi);
    let arg = Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, -2.0 * p.phi);
    let f = hyp2f1_terminating(
        n,
        Complex64::new(lambda, p.z),
        Complex64::new(2.0 * lambda, 0.0),
        arg,
    )?;
    Ok(phase * f * prefactor)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `₂F₁(-n, a; c; zz) = Σ_{k=0}^{n} (-n)_k (a)_k / ((c)_k k!) zz^k`.
pub fn hyp2f1_terminating(n: usize, a: Complex64, c: Complex64, zz: Complex64) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 0..n {
        let kf = k as f64;
        let denom = (c + kf) * (kf + 1.0);
        if denom.norm() == 0.0 || (c + kf).is_zero() {
            return Err(Error::domain(format!("(c)_{} vanishes in the 2F1 denominator", k + 1)));
        }
        term = term * (kf - n as f64) * (a + kf) / denom * zz;
        sum += term;
    }
    Ok(sum)
}
