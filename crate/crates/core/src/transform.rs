//! The finite Laguerre transform of order ν and its operational calculus.
//!
//! `forward_transform` returns the unnormalized coefficients
//! `c_n^ν = ∫₀^∞ e^{-x} x^ν L_n^ν(x) f(x) dx`; `inverse_transform` divides by
//! `h_n^ν = Γ(n+ν+1)/n!` so the pair inverts on polynomials.
//!
//! The operators map the transform of `f` to the transform of `f'`, `f/x`,
//! `x f`, `x f'` and `x f''`. Operators that read `c_{n+1}` return one entry
//! fewer than they receive. For the derivative formula at order ν the
//! partial sums of both the order-ν and order-(ν−1) coefficients run to `n`;
//! the quadrature oracle rejects the variant that stops the first sum at
//! `n−1`.
//!
//! At order 0 the derivative carries a boundary term `-f(0)`, so `f'` and
//! `x f''` are computed with [`op_d0`] and [`op_d0_squared`], which take the
//! boundary values explicitly.

use crate::error::{Error, Result};
use crate::quadrature::{gauss_laguerre_rule, QuadratureRule};
use crate::scalar::Scalar;
use crate::seq_algebra::{CoefficientSequence, Order};
use crate::special_fn::{laguerre_table, norm_h};

/// Order-ν coefficients of a function, optionally with its order ν−1 coefficients.
#[derive(Clone, Debug)]
pub struct TransformPair<S> {
    order: f64,
    seq: CoefficientSequence<S>,
    seq_lower: Option<CoefficientSequence<S>>,
}

impl<S: Scalar> TransformPair<S> {
    pub fn new(seq: CoefficientSequence<S>) -> Result<Self> {
        let order = typed_order(&seq)?;
        Ok(Self { order, seq, seq_lower: None })
    }

    pub fn with_lower(seq: CoefficientSequence<S>, seq_lower: CoefficientSequence<S>) -> Result<Self> {
        let order = typed_order(&seq)?;
        let lower = typed_order(&seq_lower)?;
        if lower != order - 1.0 {
            return Err(Error::IncompatibleOrder {
                left: seq.order().to_string(),
                right: seq_lower.order().to_string(),
            });
        }
        Ok(Self { order, seq, seq_lower: Some(seq_lower) })
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn seq(&self) -> &CoefficientSequence<S> {
        &self.seq
    }

    pub fn seq_lower(&self) -> Option<&CoefficientSequence<S>> {
        self.seq_lower.as_ref()
    }
}

fn typed_order<S: Scalar>(seq: &CoefficientSequence<S>) -> Result<f64> {
    seq.order()
        .value()
        .ok_or_else(|| Error::domain("operator needs an order-tagged sequence"))
}

fn require_order_zero<S: Scalar>(seq: &CoefficientSequence<S>) -> Result<()> {
    match seq.order() {
        Order::Untyped | Order::Nu(0.0) => Ok(()),
        other => Err(Error::IncompatibleOrder {
            left: other.to_string(),
            right: Order::Nu(0.0).to_string(),
        }),
    }
}

fn int<S: Scalar>(n: usize) -> S {
    S::from_i64(n as i64)
}

fn partial_sums<S: Scalar>(terms: &[S]) -> Vec<S> {
    terms
        .iter()
        .scan(S::zero(), |acc, t| {
            *acc = acc.clone() + t.clone();
            Some(acc.clone())
        })
        .collect()
}

/// `c_n^ν` for `n < n_terms`, integrating against a fresh `oracle_count`-point rule.
pub fn forward_transform<F: Fn(f64) -> f64>(
    f: F,
    nu: f64,
    n_terms: usize,
    oracle_count: usize,
) -> Result<CoefficientSequence<f64>> {
    let rule = gauss_laguerre_rule(oracle_count, nu)?;
    forward_transform_with(&rule, f, n_terms)
}

pub fn forward_transform_with<F: Fn(f64) -> f64>(
    rule: &QuadratureRule,
    f: F,
    n_terms: usize,
) -> Result<CoefficientSequence<f64>> {
    if n_terms == 0 {
        return Err(Error::domain("n_terms must be at least 1"));
    }
    let nu = rule.nu();
    let mut terms = vec![0.0; n_terms];
    for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::NonFinite { node: x });
        }
        let table = laguerre_table(n_terms - 1, nu, x)?;
        for (t, l) in terms.iter_mut().zip(&table) {
            *t += w * l * v;
        }
    }
    Ok(CoefficientSequence::of_order(nu, terms))
}

/// `Σ_k (c_k / h_k^ν) L_k^ν(x)`.
pub fn inverse_transform(seq: &CoefficientSequence<f64>, x: f64) -> Result<f64> {
    let nu = typed_order(seq)?;
    if seq.is_empty() {
        return Ok(0.0);
    }
    let table = laguerre_table(seq.len() - 1, nu, x)?;
    let mut total = 0.0;
    for (k, (c, l)) in seq.terms().iter().zip(&table).enumerate() {
        total += c / norm_h(k, nu)? * l;
    }
    Ok(total)
}

/// `T^ν[f']`: term n is `Σ_{k≤n} c_k^ν − ν Σ_{k≤n} c_k^{ν−1}`.
pub fn op_derivative<S: Scalar>(tp: &TransformPair<S>) -> Result<CoefficientSequence<S>> {
    let nu = tp.order;
    if nu == 0.0 {
        return Err(Error::BoundaryRequired);
    }
    let lower = tp.seq_lower.as_ref().ok_or(Error::MissingLowerOrder { order: nu, lower: nu - 1.0 })?;
    let upper_sums = partial_sums(tp.seq.terms());
    let lower_sums = partial_sums(lower.terms());
    let nu_s = S::from_f64(nu);
    let terms = upper_sums
        .into_iter()
        .zip(lower_sums)
        .map(|(a, b)| a - nu_s.clone() * b)
        .collect();
    Ok(CoefficientSequence::of_order(nu, terms))
}

/// `T^ν[f/x]` from `T^{ν−1}[f]`: term n is `Σ_{k≤n} c_k^{ν−1}`.
pub fn op_div_by_x<S: Scalar>(seq_lower: &CoefficientSequence<S>) -> CoefficientSequence<S> {
    let order = match seq_lower.order() {
        Order::Nu(v) => Order::Nu(v + 1.0),
        Order::Untyped => Order::Untyped,
    };
    CoefficientSequence::new(order, partial_sums(seq_lower.terms()))
}

/// `T^ν[x f]`: term n is `(2n+ν+1)c_n − (n+1)c_{n+1} − (n+ν)c_{n−1}`.
pub fn op_mul_by_x<S: Scalar>(seq: &CoefficientSequence<S>) -> Result<CoefficientSequence<S>> {
    let nu = typed_order(seq)?;
    let nu_s = S::from_f64(nu);
    let out = seq.len().saturating_sub(1);
    let terms = (0..out)
        .map(|n| {
            let i = n as isize;
            (int::<S>(2 * n + 1) + nu_s.clone()) * seq.get(i)
                - int::<S>(n + 1) * seq.get(i + 1)
                - (int::<S>(n) + nu_s.clone()) * seq.get(i - 1)
        })
        .collect();
    Ok(CoefficientSequence::new(seq.order(), terms))
}

/// `T^ν[x f']`: term n is `n c_n − (n+1) c_{n+1}`.
pub fn op_x_derivative<S: Scalar>(seq: &CoefficientSequence<S>) -> CoefficientSequence<S> {
    let out = seq.len().saturating_sub(1);
    let terms = (0..out)
        .map(|n| {
            let i = n as isize;
            int::<S>(n) * seq.get(i) - int::<S>(n + 1) * seq.get(i + 1)
        })
        .collect();
    CoefficientSequence::new(seq.order(), terms)
}

/// `T^ν[x f'']`: term n is `−(ν+1) T^ν[f']_n − (n+1) c_{n+1}`.
pub fn op_x_second_derivative<S: Scalar>(tp: &TransformPair<S>) -> Result<CoefficientSequence<S>> {
    let deriv = op_derivative(tp)?;
    let nu_plus_one = S::from_f64(tp.order) + S::one();
    let out = deriv.len().min(tp.seq.len().saturating_sub(1));
    let terms = (0..out)
        .map(|n| {
            -(nu_plus_one.clone() * deriv.get(n as isize)) - int::<S>(n + 1) * tp.seq.get(n as isize + 1)
        })
        .collect();
    Ok(CoefficientSequence::of_order(tp.order, terms))
}

/// Order-0 Laguerre operator `L[y] = x y'' + (1−x) y'`: term n is `−n c_n`.
pub fn op_l0<S: Scalar>(seq: &CoefficientSequence<S>) -> Result<CoefficientSequence<S>> {
    require_order_zero(seq)?;
    let terms = seq
        .terms()
        .iter()
        .enumerate()
        .map(|(n, c)| -(int::<S>(n) * c.clone()))
        .collect();
    Ok(CoefficientSequence::new(seq.order(), terms))
}

/// `T[L²[y]]`: term n is `n² c_n`.
pub fn op_l0_squared<S: Scalar>(seq: &CoefficientSequence<S>) -> Result<CoefficientSequence<S>> {
    require_order_zero(seq)?;
    let terms = seq
        .terms()
        .iter()
        .enumerate()
        .map(|(n, c)| int::<S>(n * n) * c.clone())
        .collect();
    Ok(CoefficientSequence::new(seq.order(), terms))
}

/// `T[y']` at order 0: term n is `Σ_{k≤n} c_k − y(0)`.
pub fn op_d0<S: Scalar>(seq: &CoefficientSequence<S>, y0: &S) -> Result<CoefficientSequence<S>> {
    require_order_zero(seq)?;
    let terms = partial_sums(seq.terms()).into_iter().map(|s| s - y0.clone()).collect();
    Ok(CoefficientSequence::new(seq.order(), terms))
}

/// `T[y'']` at order 0: term n is `Σ_{k≤n} (k+1) c_{n−k} − (n+1) y(0) − y'(0)`.
pub fn op_d0_squared<S: Scalar>(seq: &CoefficientSequence<S>, y0: &S, yp0: &S) -> Result<CoefficientSequence<S>> {
    require_order_zero(seq)?;
    let terms = (0..seq.len())
        .map(|n| {
            let conv = (0..=n).fold(S::zero(), |acc, k| acc + int::<S>(k + 1) * seq.get((n - k) as isize));
            conv - int::<S>(n + 1) * y0.clone() - yp0.clone()
        })
        .collect();
    Ok(CoefficientSequence::new(seq.order(), terms))
}

/// Order ν−1 coefficients of a polynomial given by its order-ν coefficients,
/// solving `c_n^ν = (n+ν) c_n^{ν−1} − (n+1) c_{n+1}^{ν−1}` downward from
/// `c_N^{ν−1} = 0`. Exact when the function is a polynomial of degree below
/// the sequence length.
pub fn lower_order<S: Scalar>(seq: &CoefficientSequence<S>) -> Result<CoefficientSequence<S>> {
    let nu = typed_order(seq)?;
    if nu <= 0.0 {
        return Err(Error::domain(format!("lowering needs order > 0, got {nu}")));
    }
    let nu_s = S::from_f64(nu);
    let mut lower = vec![S::zero(); seq.len()];
    let mut next = S::zero();
    for n in (0..seq.len()).rev() {
        let v = (seq.get(n as isize) + int::<S>(n + 1) * next) / (int::<S>(n) + nu_s.clone());
        lower[n] = v.clone();
        next = v;
    }
    Ok(CoefficientSequence::of_order(nu - 1.0, lower))
}

/// Order ν+1 coefficients: `c_n^{ν+1} = (n+ν+1) c_n^ν − (n+1) c_{n+1}^ν`.
pub fn raise_order<S: Scalar>(seq: &CoefficientSequence<S>) -> Result<CoefficientSequence<S>> {
    let nu = typed_order(seq)?;
    let nu_s = S::from_f64(nu);
    let out = seq.len().saturating_sub(1);
    let terms = (0..out)
        .map(|n| {
            (int::<S>(n + 1) + nu_s.clone()) * seq.get(n as isize) - int::<S>(n + 1) * seq.get(n as isize + 1)
        })
        .collect();
    Ok(CoefficientSequence::of_order(nu + 1.0, terms))
}

/// Convenience: the pair `(T^ν[f], T^{ν−1}[f])` by quadrature.
pub fn transform_pair<F: Fn(f64) -> f64>(
    f: F,
    nu: f64,
    n_terms: usize,
    oracle_count: usize,
) -> Result<TransformPair<f64>> {
    let upper = forward_transform(&f, nu, n_terms, oracle_count)?;
    let lower = forward_transform(&f, nu - 1.0, n_terms, oracle_count)?;
    TransformPair::with_lower(upper, lower)
}
