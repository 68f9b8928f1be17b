//! Affine simplicial triangulations of flat 1D and 2D domains.
//!
//! A [`Triangulation`] is immutable once built. Geometry changes go through
//! [`Triangulation::with_vertices`], which produces a new mesh sharing the
//! connectivity of the old one.

mod domain;
mod generate;
mod geometry;
mod io;
mod validate;

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub use domain::DomainSpec;
pub use generate::{structured_square_mesh, uniform_interval_mesh};
pub use geometry::{
    barycentric_coords, barycentric_gradients, edge_determinant, from_barycentric,
    signed_volume, simplex_volume, Orientation, Point,
};
pub use io::{read_mesh, write_mesh};
pub use validate::{validate, Condition, ValidationReport, Violation};

/// One chart of the family: `dim + 1` ordered, distinct vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cell {
    vertices: Vec<usize>,
}

impl Cell {
    pub fn new(vertices: Vec<usize>) -> Self {
        Cell { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Faces of codimension one, each as the ordered list of its vertex
    /// indices with the orientation induced by the cell.
    pub fn oriented_faces(&self) -> Vec<Vec<usize>> {
        let v = &self.vertices;
        match v.len() {
            2 => vec![vec![v[1]], vec![v[0]]],
            3 => vec![vec![v[0], v[1]], vec![v[1], v[2]], vec![v[2], v[0]]],
            _ => Vec::new(),
        }
    }
}

/// An undirected edge oriented low index to high index, with the cells
/// containing it and the sign of each cell's induced orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub lo: usize,
    pub hi: usize,
    pub incident_cells: Vec<(usize, i8)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Triangulation {
    dim: usize,
    vertices: Vec<Point>,
    cells: Vec<Cell>,
    free_mask: Vec<bool>,
    domain: DomainSpec,
}

impl Triangulation {
    /// Builds a triangulation after checking its structural invariants:
    /// supported dimension, finite coordinates, cell arity, distinct
    /// in-range indices and a mask entry per vertex. Geometric conditions
    /// are left to [`validate`].
    pub fn new(
        dim: usize,
        vertices: Vec<Point>,
        cells: Vec<Cell>,
        free_mask: Vec<bool>,
        domain: DomainSpec,
    ) -> Result<Self> {
        if !(1..=2).contains(&dim) {
            return Err(Error::Unsupported(format!("mesh dimension {dim}")));
        }
        if domain.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: domain.dim(),
            });
        }
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidMesh(format!("vertex {i} is not finite")));
        }
        if dim == 1 {
            if let Some(i) = vertices.iter().position(|p| p.y != 0.0) {
                return Err(Error::InvalidMesh(format!("vertex {i} has a y coordinate in 1D")));
            }
        }
        if free_mask.len() != vertices.len() {
            return Err(Error::DimensionMismatch {
                expected: vertices.len(),
                got: free_mask.len(),
            });
        }
        for (c, cell) in cells.iter().enumerate() {
            if cell.vertices.len() != dim + 1 {
                return Err(Error::InvalidMesh(format!(
                    "cell {c} has {} vertices, expected {}",
                    cell.vertices.len(),
                    dim + 1
                )));
            }
            for (k, &v) in cell.vertices.iter().enumerate() {
                if v >= vertices.len() {
                    return Err(Error::OutOfRange {
                        index: v,
                        len: vertices.len(),
                    });
                }
                if cell.vertices[..k].contains(&v) {
                    return Err(Error::InvalidMesh(format!("cell {c} repeats vertex {v}")));
                }
            }
        }
        Ok(Triangulation {
            dim,
            vertices,
            cells,
            free_mask,
            domain,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn free_mask(&self) -> &[bool] {
        &self.free_mask
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn num_free(&self) -> usize {
        self.free_mask.iter().filter(|&&f| f).count()
    }

    /// Same connectivity, mask and domain with new vertex positions.
    pub fn with_vertices(&self, vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() != self.vertices.len() {
            return Err(Error::DimensionMismatch {
                expected: self.vertices.len(),
                got: vertices.len(),
            });
        }
        Triangulation::new(
            self.dim,
            vertices,
            self.cells.clone(),
            self.free_mask.clone(),
            self.domain.clone(),
        )
    }

    /// Same geometry with a different cell list.
    pub fn with_cells(&self, cells: Vec<Cell>) -> Result<Self> {
        Triangulation::new(
            self.dim,
            self.vertices.clone(),
            cells,
            self.free_mask.clone(),
            self.domain.clone(),
        )
    }

    pub fn cell_points(&self, cell: usize) -> Result<Vec<Point>> {
        let c = self.cells.get(cell).ok_or(Error::OutOfRange {
            index: cell,
            len: self.cells.len(),
        })?;
        Ok(c.vertices.iter().map(|&v| self.vertices[v]).collect())
    }

    pub fn signed_cell_volume(&self, cell: usize) -> Result<f64> {
        signed_volume(&self.cell_points(cell)?, self.dim)
    }

    pub fn signed_cell_volumes(&self) -> Vec<f64> {
        (0..self.cells.len())
            .map(|c| self.signed_cell_volume(c).expect("cell arity checked at construction"))
            .collect()
    }

    pub fn min_cell_volume(&self) -> f64 {
        self.signed_cell_volumes().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Codimension-one faces keyed by their sorted vertex set, each with the
    /// cells that contain it.
    pub(crate) fn face_incidence(&self) -> BTreeMap<Vec<usize>, Vec<(usize, Vec<usize>)>> {
        let mut faces: BTreeMap<Vec<usize>, Vec<(usize, Vec<usize>)>> = BTreeMap::new();
        for (c, cell) in self.cells.iter().enumerate() {
            for face in cell.oriented_faces() {
                let mut key = face.clone();
                key.sort_unstable();
                faces.entry(key).or_default().push((c, face));
            }
        }
        faces
    }

    /// Vertices lying on a codimension-one face that belongs to one cell only.
    pub fn boundary_vertices(&self) -> Vec<bool> {
        let mut on_boundary = vec![false; self.vertices.len()];
        for (key, cells) in self.face_incidence() {
            if cells.len() == 1 {
                for v in key {
                    on_boundary[v] = true;
                }
            }
        }
        on_boundary
    }
}

/// Every undirected edge of the mesh, sorted by `(lo, hi)`.
///
/// In 1D the edges are the cells themselves. The local sign of an incident
/// cell is `+1` when the cell's induced orientation runs `lo → hi`.
pub fn edges(mesh: &Triangulation) -> Vec<Edge> {
    let mut map: BTreeMap<(usize, usize), Vec<(usize, i8)>> = BTreeMap::new();
    for (c, cell) in mesh.cells.iter().enumerate() {
        let v = &cell.vertices;
        let directed: Vec<(usize, usize)> = match v.len() {
            2 => vec![(v[0], v[1])],
            _ => vec![(v[0], v[1]), (v[1], v[2]), (v[2], v[0])],
        };
        for (a, b) in directed {
            let (key, sign) = if a < b { ((a, b), 1) } else { ((b, a), -1) };
            map.entry(key).or_default().push((c, sign));
        }
    }
    map.into_iter()
        .map(|((lo, hi), incident_cells)| Edge {
            lo,
            hi,
            incident_cells,
        })
        .collect()
}
