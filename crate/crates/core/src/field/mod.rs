//! Scalar test fields, P1 interpolation and the weighted H¹ interpolation
//! error `Φ = c0·‖e‖² + c1·‖∇e‖²` with `e = f_h − f`.

mod energy;
mod interp;
mod quadrature;
mod study;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mesh::Point;

pub use energy::{cell_energies, phi, phi_reparam_1d, reparam_demo, Parametrization1D, ReparamRow};
pub use interp::{interpolate_p1, InterpolantP1};
pub use quadrature::{gauss_legendre_3, quadrature_rule, QuadratureRule};
pub use study::{convergence_study, ConvergenceTable, MeshFamily, StudyRow};

/// Built-in analytic fields with exact gradients.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarField {
    /// `x²`
    Quad1d,
    /// `x³`
    Cubic1d,
    /// `(x + x²) / 2`
    Paper1d,
    /// `Σ c_k x^k`, constant term first.
    Poly1d(Vec<f64>),
    /// `x + y`
    Affine2d,
    /// `x² + y²`
    Quadsum2d,
    /// `sin(πx)·sin(πy)`
    Sinprod2d,
}

impl ScalarField {
    pub fn dim(&self) -> usize {
        match self {
            ScalarField::Quad1d | ScalarField::Cubic1d | ScalarField::Paper1d | ScalarField::Poly1d(_) => 1,
            ScalarField::Affine2d | ScalarField::Quadsum2d | ScalarField::Sinprod2d => 2,
        }
    }

    pub fn value(&self, p: Point) -> f64 {
        let (x, y) = (p.x, p.y);
        match self {
            ScalarField::Quad1d => x * x,
            ScalarField::Cubic1d => x * x * x,
            ScalarField::Paper1d => 0.5 * (x + x * x),
            ScalarField::Poly1d(c) => c.iter().rev().fold(0.0, |acc, &ck| acc * x + ck),
            ScalarField::Affine2d => x + y,
            ScalarField::Quadsum2d => x * x + y * y,
            ScalarField::Sinprod2d => (PI * x).sin() * (PI * y).sin(),
        }
    }

    pub fn gradient(&self, p: Point) -> [f64; 2] {
        let (x, y) = (p.x, p.y);
        match self {
            ScalarField::Quad1d => [2.0 * x, 0.0],
            ScalarField::Cubic1d => [3.0 * x * x, 0.0],
            ScalarField::Paper1d => [0.5 + x, 0.0],
            ScalarField::Poly1d(c) => {
                let d = c
                    .iter()
                    .enumerate()
                    .skip(1)
                    .rev()
                    .fold(0.0, |acc, (k, &ck)| acc * x + k as f64 * ck);
                [d, 0.0]
            }
            ScalarField::Affine2d => [1.0, 1.0],
            ScalarField::Quadsum2d => [2.0 * x, 2.0 * y],
            ScalarField::Sinprod2d => [
                PI * (PI * x).cos() * (PI * y).sin(),
                PI * (PI * x).sin() * (PI * y).cos(),
            ],
        }
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Quad1d => write!(f, "quad1d"),
            ScalarField::Cubic1d => write!(f, "cubic1d"),
            ScalarField::Paper1d => write!(f, "paper1d"),
            ScalarField::Poly1d(c) => {
                let cs: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                write!(f, "poly1d:{}", cs.join(","))
            }
            ScalarField::Affine2d => write!(f, "affine2d"),
            ScalarField::Quadsum2d => write!(f, "quadsum2d"),
            ScalarField::Sinprod2d => write!(f, "sinprod2d"),
        }
    }
}

impl FromStr for ScalarField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "quad1d" => ScalarField::Quad1d,
            "cubic1d" => ScalarField::Cubic1d,
            "paper1d" => ScalarField::Paper1d,
            "affine2d" => ScalarField::Affine2d,
            "quadsum2d" => ScalarField::Quadsum2d,
            "sinprod2d" => ScalarField::Sinprod2d,
            other => {
                let Some(coeffs) = other.strip_prefix("poly1d:") else {
                    return Err(Error::UnknownName(other.to_string()));
                };
                let c: std::result::Result<Vec<f64>, _> =
                    coeffs.split(',').map(|t| t.trim().parse::<f64>()).collect();
                match c {
                    Ok(c) if !c.is_empty() && c.iter().all(|v| v.is_finite()) => ScalarField::Poly1d(c),
                    _ => return Err(Error::UnknownName(other.to_string())),
                }
            }
        })
    }
}

/// Weights of `A = c0·Id + c1·(−Δ)`, so that `(Ae, e) = c0‖e‖² + c1‖∇e‖²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyWeights {
    c0: f64,
    c1: f64,
}

impl EnergyWeights {
    pub const L2: EnergyWeights = EnergyWeights { c0: 1.0, c1: 0.0 };
    pub const H1_SEMI: EnergyWeights = EnergyWeights { c0: 0.0, c1: 1.0 };
    pub const H1: EnergyWeights = EnergyWeights { c0: 1.0, c1: 1.0 };

    pub fn new(c0: f64, c1: f64) -> Result<Self> {
        if !(c0.is_finite() && c1.is_finite() && c0 >= 0.0 && c1 >= 0.0 && c0 + c1 > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "energy weights must be nonnegative and not both zero, got ({c0}, {c1})"
            )));
        }
        Ok(EnergyWeights { c0, c1 })
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }
}
