//! The fourth-order Laguerre-type eigenproblem
//! `L²[y] − (2R+1)L[y] + 2y′ − 2y″ = λ_m y`, `y(0) = R`, with
//! `L[y] = x y″ + (1−x) y′`, solved in the order-0 transform space and
//! certified against Krall's polynomials in exact rational arithmetic.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::RationalPolynomial;
use crate::scalar::rational;
use crate::seq_algebra::CoefficientSequence;
use crate::special_fn::laguerre_poly;
use crate::transform::{op_d0, op_d0_squared, op_l0, op_l0_squared};

type Q = BigRational;

fn int(n: usize) -> Q {
    rational(n as i64, 1)
}

fn check_r(r: &Q) -> Result<()> {
    if !r.is_positive() {
        return Err(Error::domain(format!("R must be > 0, got {r}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct FourthOrderProblem {
    r: Q,
    m: usize,
    lambda_m: Q,
}

impl FourthOrderProblem {
    pub fn new(r: Q, m: usize) -> Result<Self> {
        check_r(&r)?;
        let lambda_m = int(m) * (int(m) + int(2) * &r + Q::one());
        Ok(Self { r, m, lambda_m })
    }

    pub fn r(&self) -> &Q {
        &self.r
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `λ_m = m(m + 2R + 1)`
    pub fn lambda_m(&self) -> &Q {
        &self.lambda_m
    }
}

/// Solves `(m−n)(2R+n+m+1) c_n = −2 Σ_{k>n} (k−n) c_k` for `n < m` by back
/// substitution from `c_m = 1`, then rescales so that `Σ c_k = R`.
pub fn triangular_solve(r: &Q, m: usize) -> Result<CoefficientSequence<Q>> {
    check_r(r)?;
    let mut c = vec![Q::zero(); m + 1];
    c[m] = Q::one();
    for n in (0..m).rev() {
        let rhs = (n + 1..=m).fold(Q::zero(), |acc, k| acc + int(k - n) * &c[k]);
        let diag = int(m - n) * (int(2) * r + int(n + m + 1));
        c[n] = -(int(2) * rhs) / diag;
    }
    let total = c.iter().fold(Q::zero(), |acc, v| acc + v);
    let scale = r / total;
    Ok(CoefficientSequence::of_order(0.0, c.into_iter().map(|v| v * &scale).collect()))
}

/// `{−1, …, −1, R+m}`
pub fn closed_form_coefficients(r: &Q, m: usize) -> CoefficientSequence<Q> {
    let mut c = vec![-Q::one(); m];
    c.push(r + int(m));
    CoefficientSequence::of_order(0.0, c)
}

fn laguerre_combination(coeffs: &[Q]) -> RationalPolynomial {
    let zero = Q::zero();
    coeffs.iter().enumerate().fold(RationalPolynomial::zero(), |acc, (k, c)| {
        &acc + &laguerre_poly(k, &zero).scale(c)
    })
}

/// `y_m = Σ c_k L_k` with the solved coefficients.
pub fn y_m_polynomial(r: &Q, m: usize) -> Result<RationalPolynomial> {
    Ok(laguerre_combination(triangular_solve(r, m)?.terms()))
}

/// `R_n(x) = Σ_k (−1)^k/(k+1)! · C(n,k) · [k(R+n+1)+R] · x^k`
pub fn krall_polynomial(r: &Q, n: usize) -> RationalPolynomial {
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut binom = Q::one();
    let mut fact = Q::one(); // (k+1)!
    for k in 0..=n {
        if k > 0 {
            binom = binom * int(n - k + 1) / int(k);
            fact *= int(k + 1);
        }
        let sign = if k % 2 == 0 { Q::one() } else { -Q::one() };
        let bracket = int(k) * (r + int(n + 1)) + r;
        coeffs.push(sign * &binom * bracket / &fact);
    }
    RationalPolynomial::new(coeffs)
}

/// `L[y] = x y″ + (1−x) y′`
pub fn operator_l(y: &RationalPolynomial) -> RationalPolynomial {
    let d1 = y.derivative();
    let d2 = d1.derivative();
    &(&d2.mul_x() + &d1) - &d1.mul_x()
}

/// `L²[y] − (2R+1)L[y] + 2y′ − 2y″` applied to `y`.
pub fn fourth_order_operator(r: &Q, y: &RationalPolynomial) -> RationalPolynomial {
    let ly = operator_l(y);
    let l2y = operator_l(&ly);
    let d1 = y.derivative();
    let d2 = d1.derivative();
    let two = int(2);
    &(&(&l2y - &ly.scale(&(&two * r + Q::one()))) + &d1.scale(&two)) - &d2.scale(&two)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenCheck {
    pub holds: bool,
    pub residual: RationalPolynomial,
}

pub fn check_eigen_identity(r: &Q, m: usize) -> Result<EigenCheck> {
    let problem = FourthOrderProblem::new(r.clone(), m)?;
    let y = y_m_polynomial(r, m)?;
    let residual = &fourth_order_operator(r, &y) - &y.scale(problem.lambda_m());
    Ok(EigenCheck { holds: residual.is_zero(), residual })
}

pub fn check_krall_equality(r: &Q, m: usize) -> Result<bool> {
    Ok(y_m_polynomial(r, m)? == krall_polynomial(r, m))
}

/// `y(0) = Σ c_k` and `y′(0) = −Σ k c_k` from the solved coefficients, next to
/// the value `−λ_m` stated alongside the boundary condition.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryValues {
    pub y0: Q,
    pub yp0: Q,
    pub yp0_paper: Q,
    pub paper_stated_consistent: bool,
}

pub fn boundary_values(r: &Q, m: usize) -> Result<BoundaryValues> {
    let problem = FourthOrderProblem::new(r.clone(), m)?;
    let c = triangular_solve(r, m)?;
    let y0 = c.terms().iter().fold(Q::zero(), |acc, v| acc + v);
    let yp0 = -c.terms().iter().enumerate().fold(Q::zero(), |acc, (k, v)| acc + int(k) * v);
    let yp0_paper = -problem.lambda_m().clone();
    let paper_stated_consistent = yp0 == yp0_paper;
    Ok(BoundaryValues { y0, yp0, yp0_paper, paper_stated_consistent })
}

/// Transform of the equation assembled from the order-0 operators, compared
/// with `λ_m c_n` for `n ≤ m+2` (the two entries past the support must vanish too).
pub fn transform_space_check(r: &Q, m: usize) -> Result<bool> {
    let problem = FourthOrderProblem::new(r.clone(), m)?;
    let solved = triangular_solve(r, m)?;
    let mut padded = solved.terms().to_vec();
    padded.resize(m + 3, Q::zero());
    let seq = CoefficientSequence::of_order(0.0, padded);

    let bv = boundary_values(r, m)?;
    let l2 = op_l0_squared(&seq)?;
    let l1 = op_l0(&seq)?;
    let d1 = op_d0(&seq, &bv.y0)?;
    let d2 = op_d0_squared(&seq, &bv.y0, &bv.yp0)?;
    let two = int(2);
    let k = &two * r + Q::one();
    Ok((0..seq.len() as isize).all(|n| {
        let lhs = l2.get(n) - &k * l1.get(n) + &two * d1.get(n) - &two * d2.get(n);
        lhs == problem.lambda_m() * seq.get(n)
    }))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificates {
    pub closed_form: bool,
    pub eigen_identity: bool,
    pub krall_equality: bool,
    pub transform_space: bool,
}

impl Certificates {
    pub fn all(&self) -> bool {
        self.closed_form && self.eigen_identity && self.krall_equality && self.transform_space
    }
}

pub fn certify(r: &Q, m: usize) -> Result<Certificates> {
    Ok(Certificates {
        closed_form: triangular_solve(r, m)? == closed_form_coefficients(r, m),
        eigen_identity: check_eigen_identity(r, m)?.holds,
        krall_equality: check_krall_equality(r, m)?,
        transform_space: transform_space_check(r, m)?,
    })
}
