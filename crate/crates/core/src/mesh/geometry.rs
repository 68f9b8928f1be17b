//! Affine simplex primitives: signed volume, barycentric coordinates and
//! gradients of the barycentric coordinate functions.

use crate::error::{Error, Result};

/// A point of a flat 1D or 2D domain. In 1D only `x` is meaningful and `y`
/// is kept at zero.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub const fn on_line(x: f64) -> Self {
        Point { x, y: 0.0 }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn minus(self, other: Point) -> [f64; 2] {
        [self.x - other.x, self.y - other.y]
    }

    pub fn coord(&self, axis: usize) -> f64 {
        if axis == 0 {
            self.x
        } else {
            self.y
        }
    }

    pub fn coord_mut(&mut self, axis: usize) -> &mut f64 {
        if axis == 0 {
            &mut self.x
        } else {
            &mut self.y
        }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
    Degenerate,
}

impl Orientation {
    fn of(det: f64) -> Self {
        if det > 0.0 {
            Orientation::Positive
        } else if det < 0.0 {
            Orientation::Negative
        } else {
            Orientation::Degenerate
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
            Orientation::Degenerate => 0,
        }
    }
}

/// Determinant of the edge-vector matrix `[p1 - p0, ..., pd - p0]`.
pub fn edge_determinant(points: &[Point], dim: usize) -> Result<f64> {
    if !(1..=2).contains(&dim) {
        return Err(Error::Unsupported(format!("dimension {dim}")));
    }
    if points.len() != dim + 1 {
        return Err(Error::DimensionMismatch {
            expected: dim + 1,
            got: points.len(),
        });
    }
    Ok(match dim {
        1 => points[1].x - points[0].x,
        _ => {
            let a = points[1].minus(points[0]);
            let b = points[2].minus(points[0]);
            a[0] * b[1] - a[1] * b[0]
        }
    })
}

/// Unsigned volume `|det| / d!` of the simplex spanned by `points`, together
/// with the orientation given by the sign of the determinant.
pub fn simplex_volume(points: &[Point], dim: usize) -> Result<(f64, Orientation)> {
    let det = edge_determinant(points, dim)?;
    let factorial = if dim == 2 { 2.0 } else { 1.0 };
    Ok((det.abs() / factorial, Orientation::of(det)))
}

/// Signed volume `det / d!`.
pub fn signed_volume(points: &[Point], dim: usize) -> Result<f64> {
    let det = edge_determinant(points, dim)?;
    Ok(if dim == 2 { 0.5 * det } else { det })
}

fn is_degenerate(points: &[Point], det: f64) -> bool {
    let scale = points
        .iter()
        .skip(1)
        .map(|p| p.dist(points[0]))
        .fold(0.0f64, f64::max);
    det == 0.0 || !det.is_finite() || det.abs() <= 1e3 * f64::EPSILON * scale.powi(points.len() as i32 - 1)
}

/// Barycentric coordinates of `p` with respect to the cell spanned by
/// `cell_points` (`d + 1` points in dimension `d`).
pub fn barycentric_coords(cell_points: &[Point], dim: usize, p: Point) -> Result<Vec<f64>> {
    let det = edge_determinant(cell_points, dim)?;
    if is_degenerate(cell_points, det) {
        return Err(Error::DegenerateCell);
    }
    let r = p.minus(cell_points[0]);
    Ok(match dim {
        1 => {
            let l1 = r[0] / det;
            vec![1.0 - l1, l1]
        }
        _ => {
            let a = cell_points[1].minus(cell_points[0]);
            let b = cell_points[2].minus(cell_points[0]);
            let l1 = (r[0] * b[1] - r[1] * b[0]) / det;
            let l2 = (a[0] * r[1] - a[1] * r[0]) / det;
            vec![1.0 - l1 - l2, l1, l2]
        }
    })
}

/// Affine reconstruction `Σ λ_i v_i`.
pub fn from_barycentric(cell_points: &[Point], bary: &[f64]) -> Point {
    let mut out = Point::default();
    for (p, &l) in cell_points.iter().zip(bary) {
        out.x += l * p.x;
        out.y += l * p.y;
    }
    out
}

/// Constant gradients of the barycentric coordinate functions of an affine
/// cell, one 2-vector per vertex (the `y` component is zero in 1D).
pub fn barycentric_gradients(cell_points: &[Point], dim: usize) -> Result<Vec<[f64; 2]>> {
    let det = edge_determinant(cell_points, dim)?;
    if is_degenerate(cell_points, det) {
        return Err(Error::DegenerateCell);
    }
    Ok(match dim {
        1 => vec![[-1.0 / det, 0.0], [1.0 / det, 0.0]],
        _ => {
            let a = cell_points[1].minus(cell_points[0]);
            let b = cell_points[2].minus(cell_points[0]);
            let g1 = [b[1] / det, -b[0] / det];
            let g2 = [-a[1] / det, a[0] / det];
            vec![[-g1[0] - g2[0], -g1[1] - g2[1]], g1, g2]
        }
    })
}
