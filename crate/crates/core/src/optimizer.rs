//! Gradient descent over free-vertex positions with a feasibility-preserving
//! backtracking line search.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::field::{phi, EnergyWeights, ScalarField};
use crate::mesh::{validate, Triangulation};
use crate::whitney::{phi_form, OneForm};

/// Free-vertex coordinates in mesh order, `x` then `y` per vertex in 2D.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignVector(Vec<f64>);

impl DesignVector {
    pub fn new(values: Vec<f64>) -> Self {
        DesignVector(values)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for DesignVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

pub fn pack_free(mesh: &Triangulation) -> DesignVector {
    let d = mesh.dim();
    let mut x = Vec::with_capacity(d * mesh.num_free());
    for (p, _) in mesh.vertices().iter().zip(mesh.free_mask()).filter(|(_, &f)| f) {
        for axis in 0..d {
            x.push(p.coord(axis));
        }
    }
    DesignVector(x)
}

/// Copy of `mesh` with the free vertices moved to `x`.
pub fn unpack_free(mesh: &Triangulation, x: &[f64]) -> Result<Triangulation> {
    let d = mesh.dim();
    let expected = d * mesh.num_free();
    if x.len() != expected {
        return Err(Error::DimensionMismatch { expected, got: x.len() });
    }
    let mut vertices = mesh.vertices().to_vec();
    let mut k = 0;
    for (p, _) in vertices.iter_mut().zip(mesh.free_mask()).filter(|(_, &f)| f) {
        for axis in 0..d {
            *p.coord_mut(axis) = x[k];
            k += 1;
        }
    }
    mesh.with_vertices(vertices)
}

/// Central-difference gradient with step `fd_step·max(1, |x_i|)`.
///
/// `objective` returns `None` at infeasible points; a coordinate with one
/// infeasible probe falls back to the one-sided difference on the feasible
/// side, and fails if both probes are infeasible.
pub fn fd_gradient(objective: impl Fn(&[f64]) -> Option<f64>, x: &[f64], fd_step: f64) -> Result<Vec<f64>> {
    let mut probe = x.to_vec();
    let mut center: Option<Option<f64>> = None;
    let mut g = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        let h = fd_step * x[i].abs().max(1.0);
        probe[i] = x[i] + h;
        let plus = objective(&probe);
        probe[i] = x[i] - h;
        let minus = objective(&probe);
        probe[i] = x[i];
        let gi = match (plus, minus) {
            (Some(p), Some(m)) => (p - m) / (2.0 * h),
            (Some(p), None) => {
                let f0 = center.get_or_insert_with(|| objective(x)).ok_or(Error::InfeasibleProbe(i))?;
                (p - f0) / h
            }
            (None, Some(m)) => {
                let f0 = center.get_or_insert_with(|| objective(x)).ok_or(Error::InfeasibleProbe(i))?;
                (f0 - m) / h
            }
            (None, None) => return Err(Error::InfeasibleProbe(i)),
        };
        g.push(gi);
    }
    Ok(g)
}

/// What is being approximated on the mesh.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    Field(ScalarField),
    Form(OneForm),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub target: Target,
    pub weights: EnergyWeights,
}

impl Problem {
    pub fn scalar(field: ScalarField, weights: EnergyWeights) -> Self {
        Problem {
            target: Target::Field(field),
            weights,
        }
    }

    pub fn form(alpha: OneForm, weights: EnergyWeights) -> Self {
        Problem {
            target: Target::Form(alpha),
            weights,
        }
    }

    pub fn energy(&self, mesh: &Triangulation) -> Result<f64> {
        match &self.target {
            Target::Field(f) => phi(mesh, f, &self.weights),
            Target::Form(a) => phi_form(mesh, a, &self.weights),
        }
    }

    /// Energy as a function of the design vector of `base`; `None` when a
    /// cell loses positive volume.
    pub fn objective<'a>(&'a self, base: &'a Triangulation) -> impl Fn(&[f64]) -> Option<f64> + 'a {
        move |x| {
            let m = unpack_free(base, x).ok()?;
            if m.min_cell_volume() <= 0.0 {
                return None;
            }
            self.energy(&m).ok()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    /// Max-norm gradient tolerance.
    pub gtol: f64,
    /// Relative decrease of Φ below which the run stops.
    pub ftol: f64,
    pub max_iters: usize,
    pub fd_step: f64,
    pub armijo_c: f64,
    pub backtrack_factor: f64,
    pub initial_step: f64,
    /// A trial step is rejected if a cell shrinks below this fraction of its
    /// current volume.
    pub vol_floor_factor: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            gtol: 1e-6,
            ftol: 1e-12,
            max_iters: 500,
            fd_step: 1e-6,
            armijo_c: 1e-4,
            backtrack_factor: 0.5,
            initial_step: 1.0,
            vol_floor_factor: 0.1,
        }
    }
}

impl OptimizerConfig {
    pub fn check(&self) -> Result<()> {
        let positive = [
            ("gtol", self.gtol),
            ("ftol", self.ftol),
            ("fd_step", self.fd_step),
            ("initial_step", self.initial_step),
            ("vol_floor_factor", self.vol_floor_factor),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
            }
        }
        for (name, v) in [("armijo_c", self.armijo_c), ("backtrack_factor", self.backtrack_factor)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidArgument(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidArgument("max_iters must be positive".into()));
        }
        Ok(())
    }
}

/// Trial steps tried per line search before giving up.
pub const MAX_BACKTRACKS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    GradientTolerance,
    FDecrease,
    MaxIters,
    LineSearchFailure,
}

impl Termination {
    pub fn converged(self) -> bool {
        matches!(self, Termination::GradientTolerance | Termination::FDecrease)
    }
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Termination::GradientTolerance => "gradient_tolerance",
            Termination::FDecrease => "f_decrease",
            Termination::MaxIters => "max_iters",
            Termination::LineSearchFailure => "line_search_failure",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEntry {
    pub iter: usize,
    pub phi: f64,
    pub grad_inf: f64,
    pub min_volume: f64,
    /// Step length that produced this iterate (0 for the start).
    pub step: f64,
}

#[derive(Debug, Clone)]
pub struct OptResult {
    pub trace: Vec<TraceEntry>,
    /// Design vector of every accepted iterate, aligned with `trace`.
    pub iterates: Vec<DesignVector>,
    pub final_mesh: Triangulation,
    pub final_gradient: Vec<f64>,
    pub termination: Termination,
}

impl OptResult {
    pub fn final_phi(&self) -> f64 {
        self.trace.last().map_or(f64::NAN, |e| e.phi)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("iter,phi,grad_inf,min_volume,step\n");
        for e in &self.trace {
            out.push_str(&format!(
                "{},{:?},{:?},{:?},{:?}\n",
                e.iter, e.phi, e.grad_inf, e.min_volume, e.step
            ));
        }
        out
    }
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Minimizes the problem energy over the free vertices of `mesh`.
///
/// Each iteration steps along `−g` with backtracking until the Armijo
/// condition `Φ(x − t g) ≤ Φ(x) − c·t·‖g‖²` holds and no cell drops below
/// `vol_floor_factor` times its current volume.
pub fn optimize(mesh: &Triangulation, problem: &Problem, config: &OptimizerConfig) -> Result<OptResult> {
    config.check()?;
    let report = validate(mesh);
    if !report.is_valid() {
        return Err(Error::InvalidMesh(report.to_string().trim_end().to_string()));
    }
    let objective = problem.objective(mesh);

    let mut x = pack_free(mesh);
    let mut current = mesh.clone();
    let mut energy = problem.energy(&current)?;
    let mut volumes = current.signed_cell_volumes();
    let mut step = 0.0;
    let mut trace = Vec::new();
    let mut iterates = Vec::new();
    let mut stalled = false;

    let (termination, gradient) = loop {
        let iter = trace.len();
        let g = fd_gradient(&objective, &x, config.fd_step)?;
        let grad_inf = inf_norm(&g);
        trace.push(TraceEntry {
            iter,
            phi: energy,
            grad_inf,
            min_volume: volumes.iter().copied().fold(f64::INFINITY, f64::min),
            step,
        });
        iterates.push(x.clone());
        if grad_inf <= config.gtol {
            break (Termination::GradientTolerance, g);
        }
        if stalled {
            break (Termination::FDecrease, g);
        }
        if iter >= config.max_iters {
            break (Termination::MaxIters, g);
        }

        let g2: f64 = g.iter().map(|v| v * v).sum();
        let mut t = config.initial_step;
        let mut accepted = None;
        for _ in 0..MAX_BACKTRACKS {
            let trial: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi - t * gi).collect();
            let candidate = unpack_free(mesh, &trial)?;
            let trial_volumes = candidate.signed_cell_volumes();
            let feasible = trial_volumes
                .iter()
                .zip(&volumes)
                .all(|(v, v0)| *v > config.vol_floor_factor * v0);
            if feasible {
                let trial_energy = problem.energy(&candidate)?;
                if trial_energy <= energy - config.armijo_c * t * g2 {
                    accepted = Some((trial, candidate, trial_volumes, trial_energy));
                    break;
                }
            }
            t *= config.backtrack_factor;
        }
        let Some((trial, candidate, trial_volumes, trial_energy)) = accepted else {
            break (Termination::LineSearchFailure, g);
        };
        stalled = energy - trial_energy <= config.ftol * energy.abs();
        x = DesignVector(trial);
        current = candidate;
        volumes = trial_volumes;
        energy = trial_energy;
        step = t;
    };

    Ok(OptResult {
        trace,
        iterates,
        final_mesh: current,
        final_gradient: gradient,
        termination,
    })
}

/// Max-norm of the finite-difference gradient at the final mesh, and
/// whether it is within `tol`.
pub fn stationarity_check(
    result: &OptResult,
    problem: &Problem,
    config: &OptimizerConfig,
    tol: f64,
) -> Result<(f64, bool)> {
    let objective = problem.objective(&result.final_mesh);
    let g = fd_gradient(objective, &pack_free(&result.final_mesh), config.fd_step)?;
    let residual = inf_norm(&g);
    Ok((residual, residual <= tol))
}
