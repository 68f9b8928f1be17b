use std::fmt::Write as _;

use super::{cell_energies, ScalarField};
use crate::error::{Error, Result};
use crate::mesh::{structured_square_mesh, uniform_interval_mesh, Triangulation};

/// Errors at or below this are treated as exact reproduction and get no rate.
pub const NEGLIGIBLE_ERROR: f64 = 1e-12;

/// A uniformly refinable family of generated meshes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeshFamily {
    Interval { a: f64, b: f64 },
    UnitSquare,
}

impl MeshFamily {
    pub fn build(&self, level: usize) -> Result<Triangulation> {
        match *self {
            MeshFamily::Interval { a, b } => uniform_interval_mesh(a, b, level),
            MeshFamily::UnitSquare => structured_square_mesh(level),
        }
    }

    pub fn mesh_size(&self, level: usize) -> f64 {
        match *self {
            MeshFamily::Interval { a, b } => (b - a) / level as f64,
            MeshFamily::UnitSquare => 1.0 / level as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyRow {
    pub level: usize,
    pub h: f64,
    pub err_l2: f64,
    pub err_h1: f64,
    pub rate_l2: Option<f64>,
    pub rate_h1: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub rows: Vec<StudyRow>,
}

impl ConvergenceTable {
    /// `h,err_l2,err_h1,rate_l2,rate_h1`, with `NA` where no rate applies.
    pub fn to_csv(&self) -> String {
        let fmt_rate = |r: Option<f64>| r.map_or_else(|| "NA".to_string(), |v| format!("{v:?}"));
        let mut out = String::from("h,err_l2,err_h1,rate_l2,rate_h1\n");
        for r in &self.rows {
            writeln!(
                out,
                "{:?},{:?},{:?},{},{}",
                r.h,
                r.err_l2,
                r.err_h1,
                fmt_rate(r.rate_l2),
                fmt_rate(r.rate_h1)
            )
            .unwrap();
        }
        out
    }
}

fn rate(e_coarse: f64, e_fine: f64, h_coarse: f64, h_fine: f64) -> Option<f64> {
    if e_coarse <= NEGLIGIBLE_ERROR || e_fine <= NEGLIGIBLE_ERROR {
        return None;
    }
    Some((e_coarse / e_fine).ln() / (h_coarse / h_fine).ln())
}

/// L² and H¹-seminorm interpolation errors over a refinement sequence with
/// observed orders between consecutive levels.
pub fn convergence_study(f: &ScalarField, family: MeshFamily, levels: &[usize]) -> Result<ConvergenceTable> {
    if levels.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "a convergence study needs at least 3 levels, got {}",
            levels.len()
        )));
    }
    let mut rows: Vec<StudyRow> = Vec::with_capacity(levels.len());
    for &level in levels {
        let mesh = family.build(level)?;
        let (l2, h1) = cell_energies(&mesh, f)?
            .into_iter()
            .fold((0.0, 0.0), |(a, b), (l2, h1)| (a + l2, b + h1));
        let h = family.mesh_size(level);
        let (err_l2, err_h1) = (l2.sqrt(), h1.sqrt());
        let (rate_l2, rate_h1) = match rows.last() {
            Some(prev) => (
                rate(prev.err_l2, err_l2, prev.h, h),
                rate(prev.err_h1, err_h1, prev.h, h),
            ),
            None => (None, None),
        };
        rows.push(StudyRow {
            level,
            h,
            err_l2,
            err_h1,
            rate_l2,
            rate_h1,
        });
    }
    Ok(ConvergenceTable { rows })
}
