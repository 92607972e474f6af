//! Complex-valued analytic fields over the plane.
//!
//! A [`ScalarField2D`] wraps a value callable plus optional gradient,
//! Hessian and Laplacian callables. Initial data, trapping potentials and
//! manufactured exact solutions are all supplied this way; derivative
//! callables are hand-derived expressions, guarded by the finite-difference
//! consistency check below.

use num_complex::Complex64;
use std::sync::Arc;

type ValueFn = dyn Fn(f64, f64) -> Complex64 + Send + Sync;
type GradFn = dyn Fn(f64, f64) -> [Complex64; 2] + Send + Sync;
/// Hessian entries ordered (f_xx, f_xy, f_yy).
type HessFn = dyn Fn(f64, f64) -> [Complex64; 3] + Send + Sync;
type LaplFn = dyn Fn(f64, f64) -> Complex64 + Send + Sync;

#[derive(Clone)]
pub struct ScalarField2D {
    value: Arc<ValueFn>,
    gradient: Option<Arc<GradFn>>,
    hessian: Option<Arc<HessFn>>,
    laplacian: Option<Arc<LaplFn>>,
}

impl std::fmt::Debug for ScalarField2D {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScalarField2D")
            .field("gradient", &self.gradient.is_some())
            .field("hessian", &self.hessian.is_some())
            .field("laplacian", &self.laplacian.is_some())
            .finish()
    }
}

impl ScalarField2D {
    pub fn new(value: impl Fn(f64, f64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self { value: Arc::new(value), gradient: None, hessian: None, laplacian: None }
    }

    /// Real-valued field from a real callable.
    pub fn from_real(value: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::new(move |x, y| Complex64::new(value(x, y), 0.0))
    }

    pub fn zero() -> Self {
        Self::new(|_, _| Complex64::new(0.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        let mut f = Self::new(move |_, _| c);
        f.gradient = Some(Arc::new(|_, _| [Complex64::default(); 2]));
        f.hessian = Some(Arc::new(|_, _| [Complex64::default(); 3]));
        f
    }

    pub fn with_gradient(
        mut self,
        gradient: impl Fn(f64, f64) -> [Complex64; 2] + Send + Sync + 'static,
    ) -> Self {
        self.gradient = Some(Arc::new(gradient));
        self
    }

    pub fn with_hessian(
        mut self,
        hessian: impl Fn(f64, f64) -> [Complex64; 3] + Send + Sync + 'static,
    ) -> Self {
        self.hessian = Some(Arc::new(hessian));
        self
    }

    pub fn with_laplacian(
        mut self,
        laplacian: impl Fn(f64, f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        self.laplacian = Some(Arc::new(laplacian));
        self
    }

    #[inline]
    pub fn value(&self, x: f64, y: f64) -> Complex64 {
        (self.value)(x, y)
    }

    pub fn has_gradient(&self) -> bool {
        self.gradient.is_some()
    }

    pub fn has_hessian(&self) -> bool {
        self.hessian.is_some()
    }

    #[inline]
    pub fn gradient(&self, x: f64, y: f64) -> Option<[Complex64; 2]> {
        self.gradient.as_ref().map(|g| g(x, y))
    }

    #[inline]
    pub fn hessian(&self, x: f64, y: f64) -> Option<[Complex64; 3]> {
        self.hessian.as_ref().map(|h| h(x, y))
    }

    /// Laplacian, falling back to the Hessian trace when no dedicated
    /// callable was supplied.
    #[inline]
    pub fn laplacian(&self, x: f64, y: f64) -> Option<Complex64> {
        if let Some(l) = &self.laplacian {
            return Some(l(x, y));
        }
        self.hessian(x, y).map(|h| h[0] + h[2])
    }

    /// Angular derivative (x d/dy - y d/dx) from the gradient callable.
    #[inline]
    pub fn angular_derivative(&self, x: f64, y: f64) -> Option<Complex64> {
        self.gradient(x, y).map(|g| x * g[1] - y * g[0])
    }

    /// Second angular derivative (x d/dy - y d/dx)^2, needing gradient and
    /// Hessian:  x^2 f_yy + y^2 f_xx - 2xy f_xy - x f_x - y f_y.
    #[inline]
    pub fn angular_derivative2(&self, x: f64, y: f64) -> Option<Complex64> {
        let g = self.gradient(x, y)?;
        let h = self.hessian(x, y)?;
        Some(x * x * h[2] + y * y * h[0] - 2.0 * x * y * h[1] - x * g[0] - y * g[1])
    }

    /// Worst deviation of the gradient callable from central differences of
    /// the value over the given points.
    pub fn gradient_consistency(&self, points: &[[f64; 2]], step: f64) -> f64 {
        let mut worst = 0.0f64;
        for &[x, y] in points {
            if let Some(g) = self.gradient(x, y) {
                let fx = (self.value(x + step, y) - self.value(x - step, y)) / (2.0 * step);
                let fy = (self.value(x, y + step) - self.value(x, y - step)) / (2.0 * step);
                worst = worst.max((g[0] - fx).norm()).max((g[1] - fy).norm());
            }
        }
        worst
    }

    /// Worst deviation of the Hessian callable from second central
    /// differences. Second differences lose ~eps/step^2 to rounding, so the
    /// step here should be coarser than for first derivatives (1e-4 works
    /// for O(1) fields).
    pub fn hessian_consistency(&self, points: &[[f64; 2]], step: f64) -> f64 {
        let mut worst = 0.0f64;
        for &[x, y] in points {
            if let Some(h) = self.hessian(x, y) {
                let f0 = self.value(x, y);
                let fxx = (self.value(x + step, y) - 2.0 * f0 + self.value(x - step, y)) / (step * step);
                let fyy = (self.value(x, y + step) - 2.0 * f0 + self.value(x, y - step)) / (step * step);
                let fxy = (self.value(x + step, y + step) - self.value(x + step, y - step)
                    - self.value(x - step, y + step)
                    + self.value(x - step, y - step))
                    / (4.0 * step * step);
                worst = worst
                    .max((h[0] - fxx).norm())
                    .max((h[1] - fxy).norm())
                    .max((h[2] - fyy).norm());
            }
        }
        worst
    }
}

/// Gaussian e^{-(ax x^2 + ay y^2)} with exact derivatives, optionally scaled.
pub fn gaussian(scale: Complex64, ax: f64, ay: f64) -> ScalarField2D {
    let val = move |x: f64, y: f64| scale * (-(ax * x * x + ay * y * y)).exp();
    ScalarField2D::new(val)
        .with_gradient(move |x, y| {
            let v = scale * (-(ax * x * x + ay * y * y)).exp();
            [-2.0 * ax * x * v, -2.0 * ay * y * v]
        })
        .with_hessian(move |x, y| {
            let v = scale * (-(ax * x * x + ay * y * y)).exp();
            [
                (4.0 * ax * ax * x * x - 2.0 * ax) * v,
                4.0 * ax * ay * x * y * v,
                (4.0 * ay * ay * y * y - 2.0 * ay) * v,
            ]
        })
}

/// A(x+iy) e^{-(x^2+y^2)/2} for a holomorphic polynomial A given by its
/// coefficients (lowest order first), with exact derivatives.
pub fn holomorphic_times_gaussian(coeffs: Vec<Complex64>) -> ScalarField2D {
    let eval = move |w: Complex64| {
        // Horner evaluation of A, A', A''.
        let mut a = Complex64::default();
        let mut da = Complex64::default();
        let mut dda = Complex64::default();
        for &c in coeffs.iter().rev() {
            dda = dda * w + 2.0 * da;
            da = da * w + a;
            a = a * w + c;
        }
        (a, da, dda)
    };
    let eval_v = eval.clone();
    let eval_g = eval.clone();
    let eval_h = eval;
    ScalarField2D::new(move |x, y| {
        let (a, _, _) = eval_v(Complex64::new(x, y));
        a * (-(x * x + y * y) / 2.0).exp()
    })
    .with_gradient(move |x, y| {
        let (a, da, _) = eval_g(Complex64::new(x, y));
        let g = (-(x * x + y * y) / 2.0).exp();
        [(da - x * a) * g, (Complex64::i() * da - y * a) * g]
    })
    .with_hessian(move |x, y| {
        let (a, da, dda) = eval_h(Complex64::new(x, y));
        let g = (-(x * x + y * y) / 2.0).exp();
        let i = Complex64::i();
        [
            (dda - a - 2.0 * x * da + x * x * a) * g,
            (i * dda - i * x * da - y * da + x * y * a) * g,
            (-dda - a - 2.0 * i * y * da + y * y * a) * g,
        ]
    })
}
