//! Checks a triangulation against the four defining conditions of a
//! triangulation (embedded cells, covering, intersection along borders,
//! affine transitions) plus the fixed-boundary rule of the optimizer.

use std::fmt;

use super::geometry::barycentric_coords;
use super::{Point, Triangulation};

/// Relative tolerance on `Σ|vol| = measure(domain)`.
pub const COVERING_RTOL: f64 = 1e-9;
/// Geometric slack for incidence tests, relative to the domain diameter.
const GEOM_RTOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Condition {
    /// (1) each cell is an embedding: positive oriented volume.
    Embedding,
    /// (2) the cells cover the domain.
    Covering,
    /// (3) two cells meet only along a common sub-face.
    BorderIntersection,
    /// (4) shared faces are identified consistently from both sides.
    AffineTransition,
    /// A vertex on the mesh boundary is marked free.
    FreeBoundaryVertex,
}

impl Condition {
    pub fn number(self) -> Option<u8> {
        match self {
            Condition::Embedding => Some(1),
            Condition::Covering => Some(2),
            Condition::BorderIntersection => Some(3),
            Condition::AffineTransition => Some(4),
            Condition::FreeBoundaryVertex => None,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Embedding => write!(f, "condition (1) embedding"),
            Condition::Covering => write!(f, "condition (2) covering"),
            Condition::BorderIntersection => write!(f, "condition (3) intersection along borders"),
            Condition::AffineTransition => write!(f, "condition (4) affine transition"),
            Condition::FreeBoundaryVertex => write!(f, "fixed boundary"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub condition: Condition,
    pub cells: Vec<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.condition, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, condition: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }

    fn push(&mut self, condition: Condition, cells: Vec<usize>, message: String) {
        self.violations.push(Violation {
            condition,
            cells,
            message,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid: no violations");
        }
        writeln!(f, "{} violation(s)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

pub fn validate(mesh: &Triangulation) -> ValidationReport {
    let mut report = ValidationReport::default();
    let tol = GEOM_RTOL * mesh.domain().diameter();
    let volumes = mesh.signed_cell_volumes();

    for (c, &v) in volumes.iter().enumerate() {
        if v == 0.0 {
            report.push(Condition::Embedding, vec![c], format!("cell {c} is degenerate (volume 0)"));
        } else if v < 0.0 {
            report.push(
                Condition::Embedding,
                vec![c],
                format!("cell {c} is inverted (signed volume {v:e})"),
            );
        }
    }

    let total: f64 = volumes.iter().map(|v| v.abs()).sum();
    let measure = mesh.domain().measure();
    if (total - measure).abs() > COVERING_RTOL * measure {
        report.push(
            Condition::Covering,
            Vec::new(),
            format!("cell volumes sum to {total:e}, domain measure is {measure:e}"),
        );
    }
    for (i, p) in mesh.vertices().iter().enumerate() {
        if !mesh.domain().contains(*p, tol) {
            report.push(
                Condition::Covering,
                Vec::new(),
                format!("vertex {i} at ({}, {}) lies outside the domain", p.x, p.y),
            );
        }
    }

    let degenerate: Vec<bool> = volumes.iter().map(|v| v.abs() <= tol * tol).collect();
    match mesh.dim() {
        1 => pairwise_1d(mesh, &degenerate, tol, &mut report),
        _ => pairwise_2d(mesh, &degenerate, tol, &mut report),
    }

    for (key, incident) in mesh.face_incidence() {
        if incident.len() > 2 {
            let cells: Vec<usize> = incident.iter().map(|(c, _)| *c).collect();
            report.push(
                Condition::AffineTransition,
                cells.clone(),
                format!("face {key:?} is shared by {} cells {cells:?}", cells.len()),
            );
        } else if incident.len() == 2 && incident[0].1 == incident[1].1 && key.len() > 1 {
            let (a, b) = (incident[0].0, incident[1].0);
            report.push(
                Condition::AffineTransition,
                vec![a, b],
                format!("cells {a} and {b} induce the same orientation on face {key:?}"),
            );
        }
    }
    coincident_vertices(mesh, tol, &mut report);

    let boundary = mesh.boundary_vertices();
    for (v, (&on_b, &free)) in boundary.iter().zip(mesh.free_mask()).enumerate() {
        if on_b && free {
            report.push(
                Condition::FreeBoundaryVertex,
                Vec::new(),
                format!("boundary vertex {v} is marked free"),
            );
        }
    }
    report
}

fn shared_count(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|v| b.contains(v)).count()
}

fn pairwise_1d(mesh: &Triangulation, degenerate: &[bool], tol: f64, report: &mut ValidationReport) {
    let mut spans: Vec<(f64, f64, usize)> = mesh
        .cells()
        .iter()
        .enumerate()
        .filter(|(c, _)| !degenerate[*c])
        .map(|(c, cell)| {
            let a = mesh.vertices()[cell.vertices()[0]].x;
            let b = mesh.vertices()[cell.vertices()[1]].x;
            (a.min(b), a.max(b), c)
        })
        .collect();
    spans.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.2.cmp(&q.2)));
    for (k, &(lo_i, hi_i, ci)) in spans.iter().enumerate() {
        for &(lo_j, hi_j, cj) in &spans[k + 1..] {
            if lo_j > hi_i + tol {
                break;
            }
            let (a, b) = (ci.min(cj), ci.max(cj));
            let shared = shared_count(mesh.cells()[a].vertices(), mesh.cells()[b].vertices());
            if shared == 2 {
                report.push(
                    Condition::BorderIntersection,
                    vec![a, b],
                    format!("cells {a} and {b} are duplicates"),
                );
            } else if hi_i.min(hi_j) - lo_i.max(lo_j) > tol {
                report.push(
                    Condition::BorderIntersection,
                    vec![a, b],
                    format!("cells {a} and {b} overlap"),
                );
            }
        }
    }
}

struct Tri {
    cell: usize,
    pts: [Point; 3],
    ids: [usize; 3],
    bbox: [f64; 4],
}

fn interiors_overlap(a: &Tri, b: &Tri, tol: f64) -> bool {
    for t in [a, b] {
        for k in 0..3 {
            let e = t.pts[(k + 1) % 3].minus(t.pts[k]);
            let len = e[0].hypot(e[1]);
            if len == 0.0 {
                continue;
            }
            let n = [-e[1] / len, e[0] / len];
            let proj = |p: &Point| p.x * n[0] + p.y * n[1];
            let (amin, amax) = a.pts.iter().map(proj).fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), x| (l.min(x), h.max(x)));
            let (bmin, bmax) = b.pts.iter().map(proj).fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), x| (l.min(x), h.max(x)));
            if amax <= bmin + tol || bmax <= amin + tol {
                return false;
            }
        }
    }
    true
}

/// A non-shared vertex of `a` that touches the closed cell `b` away from
/// every vertex of `b` (a hanging node).
fn foreign_touch(a: &Tri, b: &Tri, tol: f64) -> Option<usize> {
    let scale = tol / (b.bbox[2] - b.bbox[0]).max(b.bbox[3] - b.bbox[1]).max(f64::MIN_POSITIVE);
    for k in 0..3 {
        if b.ids.contains(&a.ids[k]) {
            continue;
        }
        let p = a.pts[k];
        if b.pts.iter().any(|q| q.dist(p) <= tol) {
            continue;
        }
        let Ok(l) = barycentric_coords(&b.pts, 2, p) else {
            continue;
        };
        if l.iter().all(|&x| x >= -scale) {
            return Some(a.ids[k]);
        }
    }
    None
}

fn pairwise_2d(mesh: &Triangulation, degenerate: &[bool], tol: f64, report: &mut ValidationReport) {
    let mut tris: Vec<Tri> = mesh
        .cells()
        .iter()
        .enumerate()
        .filter(|(c, _)| !degenerate[*c])
        .map(|(c, cell)| {
            let v = cell.vertices();
            let pts = [mesh.vertices()[v[0]], mesh.vertices()[v[1]], mesh.vertices()[v[2]]];
            let bbox = [
                pts.iter().map(|p| p.x).fold(f64::INFINITY, f64::min),
                pts.iter().map(|p| p.y).fold(f64::INFINITY, f64::min),
                pts.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max),
                pts.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max),
            ];
            Tri {
                cell: c,
                pts,
                ids: [v[0], v[1], v[2]],
                bbox,
            }
        })
        .collect();
    tris.sort_by(|p, q| p.bbox[0].total_cmp(&q.bbox[0]).then(p.cell.cmp(&q.cell)));

    for (k, a) in tris.iter().enumerate() {
        for b in &tris[k + 1..] {
            if b.bbox[0] > a.bbox[2] + tol {
                break;
            }
            if b.bbox[1] > a.bbox[3] + tol || a.bbox[1] > b.bbox[3] + tol {
                continue;
            }
            let (ci, cj) = (a.cell.min(b.cell), a.cell.max(b.cell));
            if shared_count(&a.ids, &b.ids) == 3 {
                report.push(
                    Condition::BorderIntersection,
                    vec![ci, cj],
                    format!("cells {ci} and {cj} are duplicates"),
                );
            } else if interiors_overlap(a, b, tol) {
                report.push(
                    Condition::BorderIntersection,
                    vec![ci, cj],
                    format!("cells {ci} and {cj} overlap"),
                );
            } else if let Some(v) = foreign_touch(a, b, tol).or_else(|| foreign_touch(b, a, tol)) {
                report.push(
                    Condition::BorderIntersection,
                    vec![ci, cj],
                    format!("cells {ci} and {cj} meet at vertex {v}, which is not a common vertex"),
                );
            }
        }
    }
}

fn coincident_vertices(mesh: &Triangulation, tol: f64, report: &mut ValidationReport) {
    let mut used = vec![false; mesh.vertices().len()];
    for cell in mesh.cells() {
        for &v in cell.vertices() {
            used[v] = true;
        }
    }
    let mut order: Vec<usize> = (0..used.len()).filter(|&v| used[v]).collect();
    let pts = mesh.vertices();
    order.sort_by(|&i, &j| pts[i].x.total_cmp(&pts[j].x).then(i.cmp(&j)));
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if pts[j].x > pts[i].x + tol {
                break;
            }
            if pts[i].dist(pts[j]) <= tol {
                let (a, b) = (i.min(j), i.max(j));
                report.push(
                    Condition::AffineTransition,
                    Vec::new(),
                    format!("vertices {a} and {b} coincide but are identified as distinct"),
                );
            }
        }
    }
}
