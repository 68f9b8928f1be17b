use super::{Cell, DomainSpec, Point, Triangulation};
use crate::error::{Error, Result};

/// `n` equal cells on `[a, b]`; endpoints fixed, interior vertices free.
pub fn uniform_interval_mesh(a: f64, b: f64, n: usize) -> Result<Triangulation> {
    if n == 0 {
        return Err(Error::InvalidArgument("interval mesh needs at least one cell".into()));
    }
    let domain = DomainSpec::interval(a, b)?;
    let vertices: Vec<Point> = (0..=n)
        .map(|i| {
            if i == n {
                Point::on_line(b)
            } else {
                Point::on_line(a + (b - a) * i as f64 / n as f64)
            }
        })
        .collect();
    let cells = (0..n).map(|i| Cell::new(vec![i, i + 1])).collect();
    let free_mask = (0..=n).map(|i| i != 0 && i != n).collect();
    Triangulation::new(1, vertices, cells, free_mask, domain)
}

/// `(m+1)²` grid vertices on the unit square, each grid square split along
/// its lower-left to upper-right diagonal into two counterclockwise
/// triangles. Vertex `(i, j)` has index `j·(m+1) + i`.
pub fn structured_square_mesh(m: usize) -> Result<Triangulation> {
    if m == 0 {
        return Err(Error::InvalidArgument("square mesh needs m >= 1".into()));
    }
    let side = m + 1;
    let mut vertices = Vec::with_capacity(side * side);
    let mut free_mask = Vec::with_capacity(side * side);
    for j in 0..side {
        for i in 0..side {
            vertices.push(Point::new(i as f64 / m as f64, j as f64 / m as f64));
            free_mask.push(i != 0 && j != 0 && i != m && j != m);
        }
    }
    let mut cells = Vec::with_capacity(2 * m * m);
    for j in 0..m {
        for i in 0..m {
            let v00 = j * side + i;
            let v10 = v00 + 1;
            let v01 = v00 + side;
            let v11 = v01 + 1;
            cells.push(Cell::new(vec![v00, v10, v11]));
            cells.push(Cell::new(vec![v00, v11, v01]));
        }
    }
    Triangulation::new(2, vertices, cells, free_mask, DomainSpec::unit_square())
}
