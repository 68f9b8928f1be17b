use std::fmt;
use std::sync::Arc;

use super::quadrature::{gauss_legendre_3, quadrature_rule};
use super::{EnergyWeights, ScalarField};
use crate::error::{Error, Result};
use crate::mesh::{barycentric_gradients, from_barycentric, Point, Triangulation};

/// Per-cell `(‖e‖², ‖∇e‖²)` for `e = I_h f − f`, by the degree-5 rule.
///
/// Fails if the field and mesh dimensions differ or if any cell has
/// nonpositive oriented volume.
pub fn cell_energies(mesh: &Triangulation, f: &ScalarField) -> Result<Vec<(f64, f64)>> {
    let d = mesh.dim();
    if f.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: f.dim() });
    }
    let rule = quadrature_rule(d, 5)?;
    let mut out = Vec::with_capacity(mesh.cells().len());
    for (c, cell) in mesh.cells().iter().enumerate() {
        let pts = mesh.cell_points(c)?;
        let vol = mesh.signed_cell_volume(c)?;
        if !(vol > 0.0) {
            return Err(Error::InvalidMesh(format!("cell {c} has signed volume {vol:e}")));
        }
        let grads = barycentric_gradients(&pts, d)?;
        let nodal: Vec<f64> = cell.vertices().iter().map(|&v| f.value(mesh.vertices()[v])).collect();
        let mut gu = [0.0; 2];
        for (u, g) in nodal.iter().zip(&grads) {
            gu[0] += u * g[0];
            gu[1] += u * g[1];
        }
        let (mut l2, mut h1) = (0.0, 0.0);
        for (bary, w) in rule.nodes.iter().zip(&rule.weights) {
            let x = from_barycentric(&pts, bary);
            let uh: f64 = nodal.iter().zip(bary).map(|(u, l)| u * l).sum();
            let e = uh - f.value(x);
            let gf = f.gradient(x);
            let (ex, ey) = (gu[0] - gf[0], gu[1] - gf[1]);
            l2 += w * e * e;
            h1 += w * (ex * ex + ey * ey);
        }
        out.push((vol * l2, vol * h1));
    }
    Ok(out)
}

/// `Φ(mesh) = Σ_cells ∫ c0·e² + c1·|∇e|²` with `e = I_h f − f`.
pub fn phi(mesh: &Triangulation, f: &ScalarField, w: &EnergyWeights) -> Result<f64> {
    Ok(cell_energies(mesh, f)?
        .into_iter()
        .map(|(l2, h1)| w.c0() * l2 + w.c1() * h1)
        .sum())
}

/// Smooth increasing map of `[0, 1]` onto itself with its derivative.
#[derive(Clone)]
pub struct Parametrization1D {
    name: String,
    map: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    derivative: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for Parametrization1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Parametrization1D").field("name", &self.name).finish()
    }
}

impl Parametrization1D {
    pub fn new(
        name: impl Into<String>,
        map: impl Fn(f64) -> f64 + Send + Sync + 'static,
        derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Parametrization1D {
            name: name.into(),
            map: Arc::new(map),
            derivative: Arc::new(derivative),
        }
    }

    pub fn identity() -> Self {
        Self::new("identity", |t| t, |_| 1.0)
    }

    /// `t ↦ f(t)` for a 1D catalog field.
    pub fn from_field(f: &ScalarField) -> Self {
        let (fv, fd) = (f.clone(), f.clone());
        Self::new(
            f.to_string(),
            move |t| fv.value(Point::on_line(t)),
            move |t| fd.gradient(Point::on_line(t))[0],
        )
    }

    /// Inverse of `(x + x²)/2` on `[0, 1]`: the positive root of `x² + x − 2t`.
    pub fn paper1d_inverse() -> Self {
        Self::new(
            "paper1d^-1",
            |t| 0.5 * (-1.0 + (1.0 + 8.0 * t).sqrt()),
            |t| 2.0 / (1.0 + 8.0 * t).sqrt(),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn map(&self, t: f64) -> f64 {
        (self.map)(t)
    }

    pub fn derivative(&self, t: f64) -> f64 {
        (self.derivative)(t)
    }
}

const REPARAM_PANELS: usize = 64;
const ENDPOINT_TOL: f64 = 1e-12;

/// Φ for the one-chart curved triangulation `σ: [0,1] → [0,1]`.
///
/// The interpolant is affine in the chart parameter and matches `f` at the
/// endpoints, so `f_σ(σ(t)) = t`. Substituting `x = σ(t)` gives
/// `∫₀¹ [c0·(t − f(σ))² + c1·(1/σ' − f'(σ))²] σ' dt`, evaluated with the
/// three-point Gauss rule on 64 panels.
pub fn phi_reparam_1d(f: &ScalarField, sigma: &Parametrization1D, w: &EnergyWeights) -> Result<f64> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: f.dim() });
    }
    let f0 = f.value(Point::on_line(0.0));
    let f1 = f.value(Point::on_line(1.0));
    if f0.abs() > ENDPOINT_TOL || (f1 - 1.0).abs() > ENDPOINT_TOL {
        return Err(Error::InvalidArgument(format!(
            "field must satisfy f(0) = 0 and f(1) = 1, got {f0} and {f1}"
        )));
    }
    let s0 = sigma.map(0.0);
    let s1 = sigma.map(1.0);
    if s0.abs() > ENDPOINT_TOL || (s1 - 1.0).abs() > ENDPOINT_TOL {
        return Err(Error::InvalidArgument(format!(
            "parametrization `{}` must fix 0 and 1, got {s0} and {s1}",
            sigma.name()
        )));
    }
    let (nodes, weights) = gauss_legendre_3();
    let h = 1.0 / REPARAM_PANELS as f64;
    let mut total = 0.0;
    for k in 0..REPARAM_PANELS {
        let mut panel = 0.0;
        for (s, wq) in nodes.iter().zip(&weights) {
            let t = (k as f64 + s) * h;
            let x = sigma.map(t);
            let ds = sigma.derivative(t);
            if !(ds > 0.0) || !x.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "parametrization `{}` is not strictly increasing at t = {t}",
                    sigma.name()
                )));
            }
            let p = Point::on_line(x);
            if !(f.gradient(p)[0] > 0.0) {
                return Err(Error::InvalidArgument(format!("field {f} is not increasing at x = {x}")));
            }
            let e = t - f.value(p);
            let de = 1.0 / ds - f.gradient(p)[0];
            panel += wq * (w.c0() * e * e + w.c1() * de * de) * ds;
        }
        total += panel * h;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReparamRow {
    pub sigma: String,
    pub phi: f64,
}

/// The three charts of the reparametrization example for `f = (x + x²)/2`:
/// identity, `f⁻¹` and `f` itself.
pub fn reparam_demo(w: &EnergyWeights) -> Result<Vec<ReparamRow>> {
    let f = ScalarField::Paper1d;
    [
        Parametrization1D::identity(),
        Parametrization1D::paper1d_inverse(),
        Parametrization1D::from_field(&f),
    ]
    .iter()
    .map(|s| {
        Ok(ReparamRow {
            sigma: s.name().to_string(),
            phi: phi_reparam_1d(&f, s, w)?,
        })
    })
    .collect()
}
