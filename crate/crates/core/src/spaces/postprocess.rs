//! Interpolated postprocessing on 2x2 macro-elements.
//!
//! For a conforming Q11 field on a mesh with even element counts, each 2x2
//! patch of cells carries nine vertex values. The postprocessed field is the
//! biquadratic through those nine nodes, patch by patch; it reproduces
//! global biquadratics exactly and lifts the gradient accuracy of smooth
//! fields from first to second order.

use num_complex::Complex64;

use super::basis::SpaceKind;
use super::dofmap::DofMap;
use super::SpacesError;

/// Piecewise-biquadratic field obtained from a Q11 coefficient vector.
#[derive(Clone, Debug)]
pub struct PostprocessedField {
    nx_macro: usize,
    ny_macro: usize,
    x0: f64,
    y0: f64,
    /// Macro-cell widths (two mesh cells).
    wx: f64,
    wy: f64,
    /// 9 nodal values per macro cell, row-major 3x3 within the patch.
    nodes: Vec<[Complex64; 9]>,
}

/// 1D quadratic Lagrange basis on nodes {-1, 0, 1}.
#[inline]
fn lagrange3(t: f64) -> [f64; 3] {
    [0.5 * t * (t - 1.0), 1.0 - t * t, 0.5 * t * (t + 1.0)]
}

#[inline]
fn lagrange3_deriv(t: f64) -> [f64; 3] {
    [t - 0.5, -2.0 * t, t + 0.5]
}

impl PostprocessedField {
    /// Build the macro-patch interpolant of a conforming field.
    pub fn new(dofs: &DofMap, coeffs: &[Complex64]) -> Result<Self, SpacesError> {
        if dofs.kind != SpaceKind::ConformingQ11 {
            return Err(SpacesError::ConformingOnly("postprocess_I2h"));
        }
        let mesh = &*dofs.mesh;
        if mesh.nx % 2 != 0 || mesh.ny % 2 != 0 {
            return Err(SpacesError::OddMacroMesh { nx: mesh.nx, ny: mesh.ny });
        }
        let vertex_values = dofs.vertex_values(coeffs)?;
        let nx_macro = mesh.nx / 2;
        let ny_macro = mesh.ny / 2;
        let mut nodes = Vec::with_capacity(nx_macro * ny_macro);
        for mj in 0..ny_macro {
            for mi in 0..nx_macro {
                let mut patch = [Complex64::default(); 9];
                for b in 0..3 {
                    for a in 0..3 {
                        let v = (2 * mj + b) * (mesh.nx + 1) + (2 * mi + a);
                        patch[b * 3 + a] = vertex_values[v];
                    }
                }
                nodes.push(patch);
            }
        }
        Ok(Self {
            nx_macro,
            ny_macro,
            x0: mesh.domain.x_min,
            y0: mesh.domain.y_min,
            wx: 2.0 * mesh.hx,
            wy: 2.0 * mesh.hy,
            nodes,
        })
    }

    #[inline]
    fn locate(&self, x: f64, y: f64) -> (usize, f64, f64) {
        let fx = (x - self.x0) / self.wx;
        let fy = (y - self.y0) / self.wy;
        let mi = (fx.floor().max(0.0) as usize).min(self.nx_macro - 1);
        let mj = (fy.floor().max(0.0) as usize).min(self.ny_macro - 1);
        // Patch-local coordinates in [-1, 1].
        let tx = 2.0 * (fx - mi as f64) - 1.0;
        let ty = 2.0 * (fy - mj as f64) - 1.0;
        (mj * self.nx_macro + mi, tx, ty)
    }

    pub fn value(&self, x: f64, y: f64) -> Complex64 {
        let (patch, tx, ty) = self.locate(x, y);
        let lx = lagrange3(tx);
        let ly = lagrange3(ty);
        let nodes = &self.nodes[patch];
        let mut v = Complex64::default();
        for b in 0..3 {
            for a in 0..3 {
                v += nodes[b * 3 + a] * (lx[a] * ly[b]);
            }
        }
        v
    }

    pub fn gradient(&self, x: f64, y: f64) -> [Complex64; 2] {
        let (patch, tx, ty) = self.locate(x, y);
        let lx = lagrange3(tx);
        let ly = lagrange3(ty);
        let dx = lagrange3_deriv(tx);
        let dy = lagrange3_deriv(ty);
        // d t / d x = 2 / wx.
        let sx = 2.0 / self.wx;
        let sy = 2.0 / self.wy;
        let nodes = &self.nodes[patch];
        let mut g = [Complex64::default(); 2];
        for b in 0..3 {
            for a in 0..3 {
                let c = nodes[b * 3 + a];
                g[0] += c * (dx[a] * ly[b] * sx);
                g[1] += c * (lx[a] * dy[b] * sy);
            }
        }
        g
    }
}
