//! An n-point Gauss–Laguerre rule integrates polynomials of degree ≤ 2n−1
//! against x^ν e^{−x} exactly: Σ p_k Γ(ν+k+1).

use lagspec::quadrature::gauss_laguerre_rule;
use proptest::prelude::*;
use statrs::function::gamma::gamma;

proptest! {
    #[test]
    fn polynomial_exactness(
        count in 1usize..=24,
        nu in prop::sample::select(vec![-0.5, 0.0, 0.5, 1.0, 2.5, 4.0]),
        raw in prop::collection::vec(-1.0f64..1.0, 48),
        degree_pick in 0usize..48,
    ) {
        let degree = degree_pick % (2 * count);
        let coeffs = &raw[..=degree];
        let rule = gauss_laguerre_rule(count, nu).unwrap();
        let got = rule.integrate(|x| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)).unwrap();
        let moments: Vec<f64> = (0..=degree).map(|k| gamma(nu + k as f64 + 1.0)).collect();
        let want: f64 = coeffs.iter().zip(&moments).map(|(c, m)| c * m).sum();
        let scale: f64 = coeffs.iter().zip(&moments).map(|(c, m)| c.abs() * m).sum();
        prop_assert!((got - want).abs() <= 1e-11 * scale.max(f64::MIN_POSITIVE), "got {got} want {want} scale {scale}");
    }
}
