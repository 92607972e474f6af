//! Gauss-Legendre quadrature on the reference cell [-1,1]^2 and edge [-1,1].
//!
//! A tensor rule of order q integrates polynomials of degree <= 2q-1 per
//! axis exactly; the 1D rules carry the same exactness on edges.

use super::SpacesError;

/// Tensor-product rule on the reference square; weights sum to 4.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub order: usize,
    pub points: Vec<[f64; 2]>,
    pub weights: Vec<f64>,
}

/// 1D Gauss rule on [-1,1]; weights sum to 2.
#[derive(Clone, Debug)]
pub struct EdgeQuadratureRule {
    pub order: usize,
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
}

fn gauss_1d(order: usize) -> Result<(Vec<f64>, Vec<f64>), SpacesError> {
    match order {
        2 => {
            let a = 1.0 / 3f64.sqrt();
            Ok((vec![-a, a], vec![1.0, 1.0]))
        }
        3 => {
            let a = (3.0f64 / 5.0).sqrt();
            Ok((vec![-a, 0.0, a], vec![5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0]))
        }
        4 => {
            let b = (6.0f64 / 5.0).sqrt();
            let p1 = ((3.0 - 2.0 * b) / 7.0).sqrt();
            let p2 = ((3.0 + 2.0 * b) / 7.0).sqrt();
            let w1 = (18.0 + 30f64.sqrt()) / 36.0;
            let w2 = (18.0 - 30f64.sqrt()) / 36.0;
            Ok((vec![-p2, -p1, p1, p2], vec![w2, w1, w1, w2]))
        }
        _ => Err(SpacesError::UnsupportedQuadratureOrder(order)),
    }
}

/// Tensor Gauss rule on the reference cell.
pub fn cell_rule(order: usize) -> Result<QuadratureRule, SpacesError> {
    let (p, w) = gauss_1d(order)?;
    let mut points = Vec::with_capacity(order * order);
    let mut weights = Vec::with_capacity(order * order);
    for (py, wy) in p.iter().zip(&w) {
        for (px, wx) in p.iter().zip(&w) {
            points.push([*px, *py]);
            weights.push(wx * wy);
        }
    }
    Ok(QuadratureRule { order, points, weights })
}

/// 1D Gauss rule for edge integrals.
pub fn edge_rule(order: usize) -> Result<EdgeQuadratureRule, SpacesError> {
    let (points, weights) = gauss_1d(order)?;
    Ok(EdgeQuadratureRule { order, points, weights })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn integrate_cell(rule: &QuadratureRule, f: impl Fn(f64, f64) -> f64) -> f64 {
        rule.points.iter().zip(&rule.weights).map(|(p, w)| w * f(p[0], p[1])).sum()
    }

    #[test]
    fn weights_are_positive_and_sum_to_reference_measure() {
        for order in [2, 3, 4] {
            let cell = cell_rule(order).unwrap();
            assert!(cell.weights.iter().all(|&w| w > 0.0));
            let s: f64 = cell.weights.iter().sum();
            assert!((s - 4.0).abs() < 1e-14);
            let edge = edge_rule(order).unwrap();
            let s: f64 = edge.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn unsupported_order_rejected() {
        assert!(cell_rule(1).is_err());
        assert!(cell_rule(5).is_err());
        assert!(edge_rule(7).is_err());
    }

    #[test]
    fn odd_monomials_vanish() {
        let rule = cell_rule(2).unwrap();
        let v = integrate_cell(&rule, |x, y| x.powi(3) * y.powi(3));
        assert!(v.abs() < 1e-15);
        let edge = edge_rule(3).unwrap();
        let v: f64 = edge.points.iter().zip(&edge.weights).map(|(t, w)| w * t.powi(5)).sum();
        assert!(v.abs() < 1e-15);
    }

    #[test]
    fn monomial_exactness_against_closed_forms() {
        // int_{-1}^{1} x^k dx = 2/(k+1) for even k; oracle for the tensor rule.
        let exact_1d = |k: u32| if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
        for order in [2usize, 3, 4] {
            let rule = cell_rule(order).unwrap();
            let max_deg = 2 * order as u32 - 1;
            for kx in 0..=max_deg {
                for ky in 0..=max_deg {
                    let num = integrate_cell(&rule, |x, y| x.powi(kx as i32) * y.powi(ky as i32));
                    let exact = exact_1d(kx) * exact_1d(ky);
                    assert!(
                        (num - exact).abs() < 1e-13,
                        "order {order}, x^{kx} y^{ky}: {num} vs {exact}"
                    );
                }
            }
        }
        // Order 3 handles x^4 exactly: 2/5 per axis times the y-measure 2.
        let rule = cell_rule(3).unwrap();
        let v = integrate_cell(&rule, |x, _| x.powi(4));
        assert!((v - 0.4 * 2.0).abs() < 1e-14);
    }
}
