use super::ScalarField;
use crate::error::{Error, Result};
use crate::mesh::{barycentric_gradients, Triangulation};

/// Continuous piecewise-affine function given by its vertex values.
#[derive(Debug, Clone)]
pub struct InterpolantP1<'m> {
    mesh: &'m Triangulation,
    nodal_values: Vec<f64>,
}

impl<'m> InterpolantP1<'m> {
    pub fn from_values(mesh: &'m Triangulation, nodal_values: Vec<f64>) -> Result<Self> {
        if nodal_values.len() != mesh.vertices().len() {
            return Err(Error::DimensionMismatch {
                expected: mesh.vertices().len(),
                got: nodal_values.len(),
            });
        }
        Ok(InterpolantP1 { mesh, nodal_values })
    }

    pub fn mesh(&self) -> &'m Triangulation {
        self.mesh
    }

    pub fn nodal_values(&self) -> &[f64] {
        &self.nodal_values
    }

    /// Value `Σ λ_i u_i` and the constant cell gradient `Σ u_i ∇λ_i` at a
    /// barycentric point of `cell`.
    pub fn eval(&self, cell: usize, bary: &[f64]) -> Result<(f64, [f64; 2])> {
        let points = self.mesh.cell_points(cell)?;
        let d = self.mesh.dim();
        if bary.len() != d + 1 {
            return Err(Error::DimensionMismatch {
                expected: d + 1,
                got: bary.len(),
            });
        }
        let sum: f64 = bary.iter().sum();
        if bary.iter().any(|&l| l < -1e-12) || (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "{bary:?} is not a point of the reference simplex"
            )));
        }
        let ids = self.mesh.cells()[cell].vertices();
        let grads = barycentric_gradients(&points, d)?;
        let mut value = 0.0;
        let mut grad = [0.0; 2];
        for (k, &v) in ids.iter().enumerate() {
            let u = self.nodal_values[v];
            value += bary[k] * u;
            grad[0] += u * grads[k][0];
            grad[1] += u * grads[k][1];
        }
        Ok((value, grad))
    }
}

/// Nodal interpolant: matches `f` at every vertex, affine on every cell.
pub fn interpolate_p1<'m>(f: &ScalarField, mesh: &'m Triangulation) -> Result<InterpolantP1<'m>> {
    if f.dim() != mesh.dim() {
        return Err(Error::DimensionMismatch {
            expected: mesh.dim(),
            got: f.dim(),
        });
    }
    let nodal_values = mesh.vertices().iter().map(|&p| f.value(p)).collect();
    Ok(InterpolantP1 { mesh, nodal_values })
}
