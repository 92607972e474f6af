//! Local shape functions on the reference square [-1,1]^2.
//!
//! Two element types are supported:
//!
//! - bilinear Q11 = span{1, x, y, xy} with nodal degrees of freedom at the
//!   four corners (counter-clockwise from bottom-left), and
//! - the rotated-Q1 element span{1, x, y, x^2, y^2} whose degrees of freedom
//!   are the four edge means (bottom, right, top, left) plus the cell mean.
//!
//! The rotated-Q1 coefficients below solve the 5x5 duality system against the
//! edge-mean/cell-mean functionals; the unit tests verify the duality.

use super::SpacesError;

/// Finite element space selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    /// Continuous piecewise-bilinear elements, vertex DOFs.
    ConformingQ11,
    /// Rotated-Q1 elements with edge-mean continuity only.
    NonconformingEQ1rot,
}

impl SpaceKind {
    pub fn dofs_per_element(self) -> usize {
        match self {
            SpaceKind::ConformingQ11 => 4,
            SpaceKind::NonconformingEQ1rot => 5,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SpaceKind::ConformingQ11 => "conforming",
            SpaceKind::NonconformingEQ1rot => "nonconforming",
        }
    }
}

/// Reference corner coordinates in local vertex order.
pub const REF_CORNERS: [[f64; 2]; 4] = [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]];

#[inline]
fn q11_value(i: usize, p: [f64; 2]) -> f64 {
    let c = REF_CORNERS[i];
    0.25 * (1.0 + c[0] * p[0]) * (1.0 + c[1] * p[1])
}

#[inline]
fn q11_gradient(i: usize, p: [f64; 2]) -> [f64; 2] {
    let c = REF_CORNERS[i];
    [0.25 * c[0] * (1.0 + c[1] * p[1]), 0.25 * c[1] * (1.0 + c[0] * p[0])]
}

// Rotated-Q1 basis dual to (bottom, right, top, left) edge means and the
// cell mean: coefficients of 1, x, y, x^2, y^2.
const EQ1ROT_COEFFS: [[f64; 5]; 5] = [
    [-0.25, 0.0, -0.5, 0.0, 0.75],  // bottom edge
    [-0.25, 0.5, 0.0, 0.75, 0.0],   // right edge
    [-0.25, 0.0, 0.5, 0.0, 0.75],   // top edge
    [-0.25, -0.5, 0.0, 0.75, 0.0],  // left edge
    [2.0, 0.0, 0.0, -1.5, -1.5],    // cell mean
];

#[inline]
fn eq1rot_value(i: usize, p: [f64; 2]) -> f64 {
    let c = EQ1ROT_COEFFS[i];
    c[0] + c[1] * p[0] + c[2] * p[1] + c[3] * p[0] * p[0] + c[4] * p[1] * p[1]
}

#[inline]
fn eq1rot_gradient(i: usize, p: [f64; 2]) -> [f64; 2] {
    let c = EQ1ROT_COEFFS[i];
    [c[1] + 2.0 * c[3] * p[0], c[2] + 2.0 * c[4] * p[1]]
}

/// Value and reference gradient of one local basis function.
pub fn local_basis(
    kind: SpaceKind,
    local_index: usize,
    ref_point: [f64; 2],
) -> Result<(f64, [f64; 2]), SpacesError> {
    let n = kind.dofs_per_element();
    if local_index >= n {
        return Err(SpacesError::InvalidLocalIndex { index: local_index, count: n });
    }
    Ok(match kind {
        SpaceKind::ConformingQ11 => (q11_value(local_index, ref_point), q11_gradient(local_index, ref_point)),
        SpaceKind::NonconformingEQ1rot => {
            (eq1rot_value(local_index, ref_point), eq1rot_gradient(local_index, ref_point))
        }
    })
}

/// Basis values and reference gradients tabulated at a fixed set of points.
///
/// On a uniform mesh the reference-point table is identical for every
/// element, so assembly loops tabulate once and reuse.
#[derive(Clone, Debug)]
pub struct BasisTable {
    pub kind: SpaceKind,
    /// `values[q][l]` = value of local basis `l` at point `q`.
    pub values: Vec<Vec<f64>>,
    /// `gradients[q][l]` = reference gradient of local basis `l` at point `q`.
    pub gradients: Vec<Vec<[f64; 2]>>,
}

impl BasisTable {
    pub fn tabulate(kind: SpaceKind, points: &[[f64; 2]]) -> Self {
        let n = kind.dofs_per_element();
        let mut values = Vec::with_capacity(points.len());
        let mut gradients = Vec::with_capacity(points.len());
        for &p in points {
            let mut v = Vec::with_capacity(n);
            let mut g = Vec::with_capacity(n);
            for l in 0..n {
                let (val, grad) = local_basis(kind, l, p).expect("local index in range");
                v.push(val);
                g.push(grad);
            }
            values.push(v);
            gradients.push(g);
        }
        Self { kind, values, gradients }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::quadrature::{cell_rule, edge_rule};

    #[test]
    fn q11_is_nodal_at_corners() {
        for i in 0..4 {
            for k in 0..4 {
                let (v, _) = local_basis(SpaceKind::ConformingQ11, i, REF_CORNERS[k]).unwrap();
                let expected = if i == k { 1.0 } else { 0.0 };
                assert!((v - expected).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn invalid_local_index_rejected() {
        assert!(local_basis(SpaceKind::ConformingQ11, 4, [0.0, 0.0]).is_err());
        assert!(local_basis(SpaceKind::NonconformingEQ1rot, 5, [0.0, 0.0]).is_err());
    }

    #[test]
    fn eq1rot_duality_against_moment_functionals() {
        // Edge means over the four reference edges followed by the cell mean.
        let edge = edge_rule(3).unwrap();
        let cell = cell_rule(3).unwrap();
        for j in 0..5 {
            for k in 0..4 {
                // Parametrize edge k by t in [-1,1].
                let mut mean = 0.0;
                for (t, w) in edge.points.iter().zip(&edge.weights) {
                    let p = match k {
                        0 => [*t, -1.0],
                        1 => [1.0, *t],
                        2 => [*t, 1.0],
                        _ => [-1.0, *t],
                    };
                    let (v, _) = local_basis(SpaceKind::NonconformingEQ1rot, j, p).unwrap();
                    mean += 0.5 * w * v;
                }
                let expected = if j == k { 1.0 } else { 0.0 };
                assert!((mean - expected).abs() < 1e-14, "edge moment j={j} k={k}: {mean}");
            }
            let mut cell_mean = 0.0;
            for (p, w) in cell.points.iter().zip(&cell.weights) {
                let (v, _) = local_basis(SpaceKind::NonconformingEQ1rot, j, *p).unwrap();
                cell_mean += 0.25 * w * v;
            }
            let expected = if j == 4 { 1.0 } else { 0.0 };
            assert!((cell_mean - expected).abs() < 1e-14, "cell moment j={j}: {cell_mean}");
        }
    }

    #[test]
    fn partition_of_unity_at_random_points() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        for kind in [SpaceKind::ConformingQ11, SpaceKind::NonconformingEQ1rot] {
            for _ in 0..100 {
                let p = [next(), next()];
                let sum: f64 = (0..kind.dofs_per_element())
                    .map(|l| local_basis(kind, l, p).unwrap().0)
                    .sum();
                assert!((sum - 1.0).abs() <= 1e-14, "{kind:?} at {p:?}: {sum}");
            }
        }
    }

    #[test]
    fn gradients_match_finite_differences() {
        let pts = [[-0.7, 0.3], [0.1, -0.9], [0.5, 0.5], [0.0, 0.0]];
        let h = 1e-6;
        for kind in [SpaceKind::ConformingQ11, SpaceKind::NonconformingEQ1rot] {
            for l in 0..kind.dofs_per_element() {
                for &p in &pts {
                    let (_, g) = local_basis(kind, l, p).unwrap();
                    let vxp = local_basis(kind, l, [p[0] + h, p[1]]).unwrap().0;
                    let vxm = local_basis(kind, l, [p[0] - h, p[1]]).unwrap().0;
                    let vyp = local_basis(kind, l, [p[0], p[1] + h]).unwrap().0;
                    let vym = local_basis(kind, l, [p[0], p[1] - h]).unwrap().0;
                    assert!((g[0] - (vxp - vxm) / (2.0 * h)).abs() < 1e-6);
                    assert!((g[1] - (vyp - vym) / (2.0 * h)).abs() < 1e-6);
                }
            }
        }
    }
}
