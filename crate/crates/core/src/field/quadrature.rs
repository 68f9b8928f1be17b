use crate::error::{Error, Result};

/// Quadrature on a reference simplex. Nodes are barycentric tuples and the
/// weights sum to one; multiply by the cell volume at use.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub dim: usize,
    pub degree: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

/// Three-point Gauss–Legendre on `[0, 1]`: `(nodes, weights)`, exact to
/// degree 5.
pub fn gauss_legendre_3() -> ([f64; 3], [f64; 3]) {
    let d = 0.5 * (0.6f64).sqrt();
    ([0.5 - d, 0.5, 0.5 + d], [5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0])
}

/// Degree-5 rule for the reference simplex of dimension `n`: three-point
/// Gauss–Legendre on the segment, the seven-point symmetric rule on the
/// triangle. Any requested degree up to 5 is served by it.
pub fn quadrature_rule(n: usize, degree: usize) -> Result<QuadratureRule> {
    if degree > 5 {
        return Err(Error::Unsupported(format!("quadrature degree {degree}")));
    }
    match n {
        1 => {
            let (x, w) = gauss_legendre_3();
            Ok(QuadratureRule {
                dim: 1,
                degree: 5,
                nodes: x.iter().map(|&t| vec![1.0 - t, t]).collect(),
                weights: w.to_vec(),
            })
        }
        2 => {
            let s = 15f64.sqrt();
            let a1 = (6.0 - s) / 21.0;
            let b1 = (9.0 + 2.0 * s) / 21.0;
            let a2 = (6.0 + s) / 21.0;
            let b2 = (9.0 - 2.0 * s) / 21.0;
            let w1 = (155.0 - s) / 1200.0;
            let w2 = (155.0 + s) / 1200.0;
            Ok(QuadratureRule {
                dim: 2,
                degree: 5,
                nodes: vec![
                    vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
                    vec![b1, a1, a1],
                    vec![a1, b1, a1],
                    vec![a1, a1, b1],
                    vec![b2, a2, a2],
                    vec![a2, b2, a2],
                    vec![a2, a2, b2],
                ],
                weights: vec![9.0 / 40.0, w1, w1, w1, w2, w2, w2],
            })
        }
        _ => Err(Error::Unsupported(format!("quadrature in dimension {n}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_integral(rule: &QuadratureRule, f: impl Fn(f64, f64) -> f64) -> f64 {
        let vol = if rule.dim == 1 { 1.0 } else { 0.5 };
        rule.nodes
            .iter()
            .zip(&rule.weights)
            .map(|(l, w)| w * f(l[1], l.get(2).copied().unwrap_or(0.0)))
            .sum::<f64>()
            * vol
    }

    #[test]
    fn weights_sum_to_one() {
        for n in [1, 2] {
            let r = quadrature_rule(n, 5).unwrap();
            assert!((r.weights.iter().sum::<f64>() - 1.0).abs() < 1e-15);
            for l in &r.nodes {
                assert!((l.iter().sum::<f64>() - 1.0).abs() < 1e-15);
                assert!(l.iter().all(|&x| x >= 0.0));
            }
        }
    }

    #[test]
    fn segment_rule_is_degree_five() {
        let r = quadrature_rule(1, 5).unwrap();
        assert!((reference_integral(&r, |x, _| x.powi(5)) - 1.0 / 6.0).abs() < 1e-15);
        for k in 0..=5 {
            let exact = 1.0 / (k as f64 + 1.0);
            assert!((reference_integral(&r, |x, _| x.powi(k)) - exact).abs() < 1e-15);
        }
    }

    #[test]
    fn triangle_rule_examples() {
        let r = quadrature_rule(2, 5).unwrap();
        assert!((reference_integral(&r, |_, _| 1.0) - 0.5).abs() < 1e-15);
        assert!((reference_integral(&r, |x, y| x * x * y * y) - 1.0 / 180.0).abs() < 1e-15);
    }

    #[test]
    fn triangle_rule_exact_to_degree_five() {
        // ∫_T x^a y^b = a! b! / (a + b + 2)!
        let fact = |n: u32| (1..=n).map(f64::from).product::<f64>();
        let r = quadrature_rule(2, 5).unwrap();
        for a in 0..=5u32 {
            for b in 0..=(5 - a) {
                let exact = fact(a) * fact(b) / fact(a + b + 2);
                let got = reference_integral(&r, |x, y| x.powi(a as i32) * y.powi(b as i32));
                assert!((got - exact).abs() < 1e-15, "x^{a} y^{b}");
            }
        }
    }

    #[test]
    fn unsupported_requests() {
        assert!(quadrature_rule(1, 6).is_err());
        assert!(quadrature_rule(3, 2).is_err());
    }
}
