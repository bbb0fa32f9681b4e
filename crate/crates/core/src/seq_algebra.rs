//! Order-tagged coefficient sequences with the sum and Cauchy product of the
//! formal sequence algebra. A finite sequence stands for an infinite one whose
//! entries beyond the stored length are zero.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The Laguerre order a sequence of transform coefficients belongs to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Order {
    /// A formal sequence with no order attached; combines with any order.
    Untyped,
    Nu(f64),
}

impl Order {
    fn combine(self, other: Order) -> Result<Order> {
        match (self, other) {
            (Order::Untyped, o) | (o, Order::Untyped) => Ok(o),
            (Order::Nu(a), Order::Nu(b)) if a == b => Ok(Order::Nu(a)),
            (a, b) => Err(Error::IncompatibleOrder {
                left: a.to_string(),
                right: b.to_string(),
            }),
        }
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Order::Untyped => None,
            Order::Nu(v) => Some(v),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Untyped => write!(f, "untyped"),
            Order::Nu(v) => write!(f, "nu={v}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CoefficientSequence<S> {
    order: Order,
    terms: Vec<S>,
}

impl<S: Scalar> CoefficientSequence<S> {
    pub fn new(order: Order, terms: Vec<S>) -> Self {
        Self { order, terms }
    }

    pub fn untyped(terms: Vec<S>) -> Self {
        Self::new(Order::Untyped, terms)
    }

    pub fn of_order(nu: f64, terms: Vec<S>) -> Self {
        Self::new(Order::Nu(nu), terms)
    }

    pub fn zeros(order: Order, len: usize) -> Self {
        Self::new(order, vec![S::zero(); len])
    }

    /// The shift monomial `s^n`: `n` zeros followed by a one.
    pub fn monomial(n: usize) -> Self {
        let mut terms = vec![S::zero(); n + 1];
        terms[n] = S::one();
        Self::untyped(terms)
    }

    /// The constant sequence `{k, 0, 0, ...}`.
    pub fn scalar(k: S) -> Self {
        Self::untyped(vec![k])
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn terms(&self) -> &[S] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<S> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Entry `n`, zero beyond the stored length; negative indices are zero too.
    pub fn get(&self, n: isize) -> S {
        if n < 0 {
            return S::zero();
        }
        self.terms.get(n as usize).cloned().unwrap_or_else(S::zero)
    }

    pub fn with_order(mut self, order: Order) -> Self {
        self.order = order;
        self
    }

    pub fn truncated(&self, len: usize) -> Self {
        Self::new(self.order, self.terms.iter().take(len).cloned().collect())
    }

    pub fn scaled(&self, k: &S) -> Self {
        Self::new(self.order, self.terms.iter().map(|t| k.clone() * t.clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_zero())
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order.value(),
            "terms": self.terms.iter().map(Scalar::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let order = match v.get("order") {
            None | Some(Value::Null) => Order::Untyped,
            Some(o) => Order::Nu(f64::from_json(o)?),
        };
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse(v.to_string()))?
            .iter()
            .map(S::from_json)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(order, terms))
    }
}

/// Entrywise equality after zero padding, with compatible order tags.
impl<S: Scalar> PartialEq for CoefficientSequence<S> {
    fn eq(&self, other: &Self) -> bool {
        if self.order.combine(other.order).is_err() {
            return false;
        }
        let n = self.len().max(other.len());
        (0..n as isize).all(|i| self.get(i) == other.get(i))
    }
}

pub fn seq_add<S: Scalar>(a: &CoefficientSequence<S>, b: &CoefficientSequence<S>) -> Result<CoefficientSequence<S>> {
    let order = a.order.combine(b.order)?;
    let n = a.len().max(b.len());
    let terms = (0..n as isize).map(|i| a.get(i) + b.get(i)).collect();
    Ok(CoefficientSequence::new(order, terms))
}

/// Term `n` is `Σ_{τ=0}^{n} a_τ b_{n-τ}`.
pub fn cauchy_product<S: Scalar>(
    a: &CoefficientSequence<S>,
    b: &CoefficientSequence<S>,
) -> Result<CoefficientSequence<S>> {
    let order = a.order.combine(b.order)?;
    if a.is_empty() || b.is_empty() {
        return Ok(CoefficientSequence::new(order, Vec::new()));
    }
    let mut terms = vec![S::zero(); a.len() + b.len() - 1];
    for (i, x) in a.terms.iter().enumerate() {
        for (j, y) in b.terms.iter().enumerate() {
            terms[i + j] = terms[i + j].clone() + x.clone() * y.clone();
        }
    }
    Ok(CoefficientSequence::new(order, terms))
}

pub fn monomial<S: Scalar>(n: usize) -> CoefficientSequence<S> {
    CoefficientSequence::monomial(n)
}
