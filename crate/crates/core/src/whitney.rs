//! Lowest-order Whitney edge elements for 1-forms on planar triangulations.
//!
//! Degrees of freedom are circulations along edges oriented from the lower
//! to the higher vertex index. On a cell the interpolant is
//! `Σ_e dof_e · (λ_lo ∇λ_hi − λ_hi ∇λ_lo)`, its exterior derivative the
//! constant `Σ_e dof_e · 2 ∇λ_lo × ∇λ_hi`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{gauss_legendre_3, quadrature_rule, EnergyWeights};
use crate::mesh::{barycentric_gradients, edges, from_barycentric, Edge, Point, Triangulation};

/// Analytic 1-form `a·dx + b·dy`.
#[derive(Debug, Clone, PartialEq)]
pub enum OneForm {
    /// `dx`
    Dx,
    /// `x dy`
    XDy,
    /// `−y dx + x dy`
    Rot,
    /// `d(x² + y²) = 2x dx + 2y dy`
    DgQuad,
    /// `a dx + b dy` with constant coefficients.
    Constant(f64, f64),
}

impl OneForm {
    pub fn components(&self, p: Point) -> [f64; 2] {
        match *self {
            OneForm::Dx => [1.0, 0.0],
            OneForm::XDy => [0.0, p.x],
            OneForm::Rot => [-p.y, p.x],
            OneForm::DgQuad => [2.0 * p.x, 2.0 * p.y],
            OneForm::Constant(a, b) => [a, b],
        }
    }

    /// Coefficient of `dx∧dy` in `dα`, i.e. `∂b/∂x − ∂a/∂y`.
    pub fn d_coefficient(&self, _p: Point) -> f64 {
        match self {
            OneForm::XDy => 1.0,
            OneForm::Rot => 2.0,
            OneForm::Dx | OneForm::DgQuad | OneForm::Constant(..) => 0.0,
        }
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OneForm::Dx => write!(f, "dx"),
            OneForm::XDy => write!(f, "x_dy"),
            OneForm::Rot => write!(f, "rot"),
            OneForm::DgQuad => write!(f, "dg_quad"),
            OneForm::Constant(a, b) => write!(f, "const:{a},{b}"),
        }
    }
}

impl FromStr for OneForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "dx" => OneForm::Dx,
            "x_dy" => OneForm::XDy,
            "rot" => OneForm::Rot,
            "dg_quad" => OneForm::DgQuad,
            other => {
                let parsed = other.strip_prefix("const:").and_then(|rest| {
                    let v: Vec<f64> = rest.split(',').map(|t| t.trim().parse().ok()).collect::<Option<_>>()?;
                    (v.len() == 2 && v.iter().all(|x| x.is_finite())).then(|| OneForm::Constant(v[0], v[1]))
                });
                return parsed.ok_or_else(|| Error::UnknownName(other.to_string()));
            }
        })
    }
}

/// `∫ α` along the segment `from → to` by three-point Gauss.
pub fn line_integral(from: Point, to: Point, alpha: impl Fn(Point) -> [f64; 2]) -> f64 {
    let (nodes, weights) = gauss_legendre_3();
    let t = to.minus(from);
    nodes
        .iter()
        .zip(&weights)
        .map(|(&s, w)| {
            let a = alpha(Point::new(from.x + s * t[0], from.y + s * t[1]));
            w * (a[0] * t[0] + a[1] * t[1])
        })
        .sum()
}

/// Edge degree of freedom: the circulation of `alpha` from `lo` to `hi`.
pub fn dof_edge(alpha: &OneForm, lo: Point, hi: Point) -> f64 {
    line_integral(lo, hi, |p| alpha.components(p))
}

/// Local edge `k` of a triangle joins local vertices `k` and `k + 1 mod 3`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct LocalEdge {
    edge: usize,
    lo: usize,
    hi: usize,
    sign: f64,
}

#[derive(Debug, Clone)]
pub struct WhitneyInterpolant<'m> {
    mesh: &'m Triangulation,
    edges: Vec<Edge>,
    edge_dofs: Vec<f64>,
    cell_edges: Vec<[LocalEdge; 3]>,
}

impl<'m> WhitneyInterpolant<'m> {
    /// Interpolant with prescribed DOFs, one per entry of [`edges`].
    pub fn from_dofs(mesh: &'m Triangulation, edge_dofs: Vec<f64>) -> Result<Self> {
        if mesh.dim() != 2 {
            return Err(Error::Unsupported("Whitney forms need a 2D mesh".into()));
        }
        let edges = edges(mesh);
        if edge_dofs.len() != edges.len() {
            return Err(Error::DimensionMismatch {
                expected: edges.len(),
                got: edge_dofs.len(),
            });
        }
        let mut cell_edges = vec![[LocalEdge { edge: 0, lo: 0, hi: 0, sign: 0.0 }; 3]; mesh.cells().len()];
        for (e, edge) in edges.iter().enumerate() {
            for &(c, sign) in &edge.incident_cells {
                let ids = mesh.cells()[c].vertices();
                let pos = |v: usize| ids.iter().position(|&x| x == v).expect("edge vertex in cell");
                let (lo, hi) = (pos(edge.lo), pos(edge.hi));
                let k = if sign > 0 { lo } else { hi };
                cell_edges[c][k] = LocalEdge { edge: e, lo, hi, sign: f64::from(sign) };
            }
        }
        Ok(WhitneyInterpolant {
            mesh,
            edges,
            edge_dofs,
            cell_edges,
        })
    }

    pub fn mesh(&self) -> &'m Triangulation {
        self.mesh
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_dofs(&self) -> &[f64] {
        &self.edge_dofs
    }

    fn cell_gradients(&self, cell: usize) -> Result<Vec<[f64; 2]>> {
        barycentric_gradients(&self.mesh.cell_points(cell)?, 2)
    }

    /// Value of the interpolant at a barycentric point of `cell`.
    pub fn eval(&self, cell: usize, bary: &[f64]) -> Result<[f64; 2]> {
        let grads = self.cell_gradients(cell)?;
        if bary.len() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, got: bary.len() });
        }
        Ok(self.eval_with(cell, &grads, bary))
    }

    fn eval_with(&self, cell: usize, grads: &[[f64; 2]], bary: &[f64]) -> [f64; 2] {
        let mut out = [0.0; 2];
        for le in &self.cell_edges[cell] {
            let dof = self.edge_dofs[le.edge];
            let (l_lo, l_hi) = (bary[le.lo], bary[le.hi]);
            let (g_lo, g_hi) = (grads[le.lo], grads[le.hi]);
            out[0] += dof * (l_lo * g_hi[0] - l_hi * g_lo[0]);
            out[1] += dof * (l_lo * g_hi[1] - l_hi * g_lo[1]);
        }
        out
    }

    /// Constant `dx∧dy` coefficient of the exterior derivative on `cell`.
    pub fn d(&self, cell: usize) -> Result<f64> {
        let grads = self.cell_gradients(cell)?;
        Ok(self.d_with(cell, &grads))
    }

    fn d_with(&self, cell: usize, grads: &[[f64; 2]]) -> f64 {
        self.cell_edges[cell]
            .iter()
            .map(|le| {
                let (a, b) = (grads[le.lo], grads[le.hi]);
                self.edge_dofs[le.edge] * 2.0 * (a[0] * b[1] - a[1] * b[0])
            })
            .sum()
    }

    /// Circulation around the cell boundary in its induced orientation.
    pub fn boundary_circulation(&self, cell: usize) -> Result<f64> {
        let le = self.cell_edges.get(cell).ok_or(Error::OutOfRange {
            index: cell,
            len: self.cell_edges.len(),
        })?;
        Ok(le.iter().map(|l| l.sign * self.edge_dofs[l.edge]).sum())
    }

    /// Circulation of the interpolant along `edge` (lo → hi), integrated
    /// inside `cell`, which must contain the edge.
    pub fn edge_circulation_in(&self, edge: usize, cell: usize) -> Result<f64> {
        let grads = self.cell_gradients(cell)?;
        let le = self.cell_edges[cell]
            .iter()
            .find(|l| l.edge == edge)
            .ok_or_else(|| Error::InvalidArgument(format!("edge {edge} is not an edge of cell {cell}")))?;
        let pts = self.mesh.cell_points(cell)?;
        let (from, to) = (pts[le.lo], pts[le.hi]);
        let t = to.minus(from);
        let (nodes, weights) = gauss_legendre_3();
        Ok(nodes
            .iter()
            .zip(&weights)
            .map(|(&s, w)| {
                let mut bary = [0.0; 3];
                bary[le.lo] = 1.0 - s;
                bary[le.hi] = s;
                let v = self.eval_with(cell, &grads, &bary);
                w * (v[0] * t[0] + v[1] * t[1])
            })
            .sum())
    }
}

/// Interpolant whose DOFs are the exact edge circulations of `alpha`.
pub fn interpolate_whitney<'m>(alpha: &OneForm, mesh: &'m Triangulation) -> Result<WhitneyInterpolant<'m>> {
    if mesh.dim() != 2 {
        return Err(Error::Unsupported("Whitney forms need a 2D mesh".into()));
    }
    let dofs = edges(mesh)
        .iter()
        .map(|e| dof_edge(alpha, mesh.vertices()[e.lo], mesh.vertices()[e.hi]))
        .collect();
    WhitneyInterpolant::from_dofs(mesh, dofs)
}

/// Per-cell `(‖Iα − α‖², ‖d(Iα) − dα‖²)` by the degree-5 rule.
pub fn form_cell_energies(mesh: &Triangulation, alpha: &OneForm) -> Result<Vec<(f64, f64)>> {
    let interp = interpolate_whitney(alpha, mesh)?;
    let rule = quadrature_rule(2, 5)?;
    let mut out = Vec::with_capacity(mesh.cells().len());
    for c in 0..mesh.cells().len() {
        let vol = mesh.signed_cell_volume(c)?;
        if !(vol > 0.0) {
            return Err(Error::InvalidMesh(format!("cell {c} has signed volume {vol:e}")));
        }
        let pts = mesh.cell_points(c)?;
        let grads = interp.cell_gradients(c)?;
        let dih = interp.d_with(c, &grads);
        let (mut l2, mut dd) = (0.0, 0.0);
        for (bary, w) in rule.nodes.iter().zip(&rule.weights) {
            let x = from_barycentric(&pts, bary);
            let v = interp.eval_with(c, &grads, bary);
            let a = alpha.components(x);
            let (ex, ey) = (v[0] - a[0], v[1] - a[1]);
            let de = dih - alpha.d_coefficient(x);
            l2 += w * (ex * ex + ey * ey);
            dd += w * de * de;
        }
        out.push((vol * l2, vol * dd));
    }
    Ok(out)
}

/// `Σ_cells ∫ c0·|Iα − α|² + c1·|d(Iα) − dα|²`.
pub fn phi_form(mesh: &Triangulation, alpha: &OneForm, w: &EnergyWeights) -> Result<f64> {
    Ok(form_cell_energies(mesh, alpha)?
        .into_iter()
        .map(|(l2, dd)| w.c0() * l2 + w.c1() * dd)
        .sum())
}
