use std::collections::HashMap;

use super::geometry::Point;
use crate::error::{Error, Result};

/// The flat region a triangulation is supposed to cover.
#[derive(Debug, Clone, PartialEq)]
pub enum DomainSpec {
    Interval { a: f64, b: f64 },
    /// Simple, counterclockwise boundary loop (first vertex not repeated).
    Polygon(Vec<Point>),
}

impl DomainSpec {
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidArgument(format!("empty interval [{a}, {b}]")));
        }
        Ok(DomainSpec::Interval { a, b })
    }

    pub fn polygon(boundary: Vec<Point>) -> Result<Self> {
        if boundary.len() < 3 {
            return Err(Error::InvalidArgument("polygon needs at least 3 vertices".into()));
        }
        if boundary.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidArgument("polygon vertex is not finite".into()));
        }
        let area = shoelace(&boundary);
        if !(area > 0.0) {
            return Err(Error::InvalidArgument(
                "polygon must be counterclockwise with positive area".into(),
            ));
        }
        if !is_simple(&boundary) {
            return Err(Error::InvalidArgument("polygon is not simple".into()));
        }
        Ok(DomainSpec::Polygon(boundary))
    }

    pub fn unit_square() -> Self {
        DomainSpec::Polygon(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
    }

    pub fn dim(&self) -> usize {
        match self {
            DomainSpec::Interval { .. } => 1,
            DomainSpec::Polygon(_) => 2,
        }
    }

    /// Length of the interval or area of the polygon.
    pub fn measure(&self) -> f64 {
        match self {
            DomainSpec::Interval { a, b } => b - a,
            DomainSpec::Polygon(p) => shoelace(p),
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            DomainSpec::Interval { a, b } => b - a,
            DomainSpec::Polygon(p) => {
                let mut d = 0.0f64;
                for (i, a) in p.iter().enumerate() {
                    for b in &p[i + 1..] {
                        d = d.max(a.dist(*b));
                    }
                }
                d
            }
        }
    }

    /// Closed-set membership with absolute slack `tol`.
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        match self {
            DomainSpec::Interval { a, b } => p.x >= a - tol && p.x <= b + tol,
            DomainSpec::Polygon(poly) => {
                let n = poly.len();
                for i in 0..n {
                    if segment_distance(p, poly[i], poly[(i + 1) % n]) <= tol {
                        return true;
                    }
                }
                // even-odd ray cast
                let mut inside = false;
                for i in 0..n {
                    let (u, v) = (poly[i], poly[(i + 1) % n]);
                    if (u.y > p.y) != (v.y > p.y) {
                        let x = u.x + (p.y - u.y) / (v.y - u.y) * (v.x - u.x);
                        if x > p.x {
                            inside = !inside;
                        }
                    }
                }
                inside
            }
        }
    }

    /// Domain enclosed by a mesh: the vertex range in 1D, the outer
    /// boundary loop in 2D (falling back to the convex hull when the
    /// boundary edges do not form clean loops).
    pub(crate) fn infer(dim: usize, vertices: &[Point], cells: &[Vec<usize>]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidMesh("no vertices".into()));
        }
        if dim == 1 {
            let lo = vertices.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
            let hi = vertices.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
            return DomainSpec::interval(lo, hi);
        }
        if let Some(loop_pts) = outer_boundary_loop(vertices, cells) {
            if let Ok(d) = DomainSpec::polygon(loop_pts) {
                return Ok(d);
            }
        }
        DomainSpec::polygon(convex_hull(vertices))
    }
}

fn shoelace(p: &[Point]) -> f64 {
    let n = p.len();
    let mut s = 0.0;
    for i in 0..n {
        let (u, v) = (p[i], p[(i + 1) % n]);
        s += u.x * v.y - v.x * u.y;
    }
    0.5 * s
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b.minus(a);
    let ap = p.minus(a);
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len2 > 0.0 {
        ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    p.dist(Point::new(a.x + t * ab[0], a.y + t * ab[1]))
}

pub(crate) fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on = |p: Point, q: Point, r: Point| {
        r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
    };
    (d1 == 0.0 && on(c, d, a))
        || (d2 == 0.0 && on(c, d, b))
        || (d3 == 0.0 && on(a, b, c))
        || (d4 == 0.0 && on(a, b, d))
}

fn is_simple(p: &[Point]) -> bool {
    let n = p.len();
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                if p[i] == p[j] {
                    return false;
                }
                continue;
            }
            if segments_intersect(p[i], p[(i + 1) % n], p[j], p[(j + 1) % n]) {
                return false;
            }
        }
    }
    true
}

fn outer_boundary_loop(vertices: &[Point], cells: &[Vec<usize>]) -> Option<Vec<Point>> {
    let mut count: HashMap<(usize, usize), usize> = HashMap::new();
    let mut directed = Vec::new();
    for c in cells {
        if c.len() != 3 {
            return None;
        }
        for k in 0..3 {
            let (a, b) = (c[k], c[(k + 1) % 3]);
            *count.entry((a.min(b), a.max(b))).or_default() += 1;
            directed.push((a, b));
        }
    }
    let mut next: HashMap<usize, usize> = HashMap::new();
    for (a, b) in directed {
        if count[&(a.min(b), a.max(b))] == 1 && next.insert(a, b).is_some() {
            return None;
        }
    }
    let mut starts: Vec<usize> = next.keys().copied().collect();
    starts.sort_unstable();
    let mut seen = vec![false; vertices.len()];
    let mut best: Option<(f64, Vec<Point>)> = None;
    for s in starts {
        if seen[s] {
            continue;
        }
        let mut lp = Vec::new();
        let mut v = s;
        loop {
            if seen[v] {
                return None;
            }
            seen[v] = true;
            lp.push(vertices[v]);
            v = *next.get(&v)?;
            if v == s {
                break;
            }
        }
        let area = shoelace(&lp).abs();
        if best.as_ref().is_none_or(|(a, _)| area > *a) {
            best = Some((area, lp));
        }
    }
    let (_, mut lp) = best?;
    if shoelace(&lp) < 0.0 {
        lp.reverse();
    }
    Some(lp)
}

fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut p = points.to_vec();
    p.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0.0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0.0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
