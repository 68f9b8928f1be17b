//! Independent reference computations for the integration tests. Nothing
//! here calls into the quadrature, interpolation or energy code under test.
#![allow(dead_code)]

use trimopt::mesh::{structured_square_mesh, Triangulation};

/// Gauss–Legendre nodes and weights on `[0, 1]` by Newton iteration on
/// the Legendre polynomial.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = Vec::with_capacity(n);
    let mut ws = Vec::with_capacity(n);
    for i in 0..n {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        xs.push(0.5 * (1.0 - z));
        ws.push(1.0 / ((1.0 - z * z) * dp * dp));
    }
    (xs, ws)
}

/// Composite Gauss–Legendre on `[a, b]` with `panels` panels of `order` nodes.
pub fn composite(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize, order: usize) -> f64 {
    let (xs, ws) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|k| {
            let lo = a + k as f64 * h;
            xs.iter().zip(&ws).map(|(x, w)| w * f(lo + x * h)).sum::<f64>() * h
        })
        .sum()
}

/// `∫_T g` over the triangle `p0 p1 p2` through the collapsed map
/// `(u, v) ↦ p0 + u(1−v)(p1−p0) + uv(p2−p0)`, with `panels`² tensor panels.
pub fn triangle_integral(g: impl Fn(f64, f64) -> f64, p: [[f64; 2]; 3], panels: usize) -> f64 {
    let jac = ((p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[1][1] - p[0][1]) * (p[2][0] - p[0][0])).abs();
    composite(
        |u| {
            composite(
                |v| {
                    let (l1, l2) = (u * (1.0 - v), u * v);
                    let x = p[0][0] + l1 * (p[1][0] - p[0][0]) + l2 * (p[2][0] - p[0][0]);
                    let y = p[0][1] + l1 * (p[1][1] - p[0][1]) + l2 * (p[2][1] - p[0][1]);
                    g(x, y) * jac * u
                },
                0.0,
                1.0,
                panels,
                3,
            )
        },
        0.0,
        1.0,
        panels,
        3,
    )
}

/// Squared L² error of the linear interpolant of `f` on `[a, b]`.
pub fn l2_sq_chord(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (fa, fb) = (f(a), f(b));
    composite(|x| {
        let e = fa + (fb - fa) * (x - a) / (b - a) - f(x);
        e * e
    }, a, b, 1, 10)
}

/// L² energy of the interpolant of `x³` with one interior knot.
pub fn cubic_one_knot_energy(knot: f64) -> f64 {
    let f = |x: f64| x * x * x;
    l2_sq_chord(f, 0.0, knot) + l2_sq_chord(f, knot, 1.0)
}

/// Brute-force scan of the cubic one-knot energy over `(0.01, 0.99)`.
pub fn cubic_scan_minimizer(step: f64) -> f64 {
    let n = ((0.99 - 0.01) / step).round() as usize;
    (0..=n)
        .map(|i| 0.01 + i as f64 * step)
        .map(|k| (k, cubic_one_knot_energy(k)))
        .fold((f64::NAN, f64::INFINITY), |best, (k, e)| if e < best.1 { (k, e) } else { best })
        .0
}

/// Exact minimizer of the cubic one-knot L² energy, from a symbolic
/// root-find of its derivative (30 significant digits).
pub const CUBIC_KNOT_EXACT: f64 = 0.593676956624920554656762893571;

pub fn two_triangle_square() -> Triangulation {
    structured_square_mesh(1).unwrap()
}

pub fn alternating(mesh: &Triangulation, delta: f64) -> Triangulation {
    let x: Vec<f64> = trimopt::optimizer::pack_free(mesh)
        .iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { v + delta } else { v - delta })
        .collect();
    trimopt::optimizer::unpack_free(mesh, &x).unwrap()
}

/// Uniform N=4 interval mesh with vertex 1 pushed past vertex 2.
pub fn inverted_interval() -> Triangulation {
    let m = trimopt::mesh::uniform_interval_mesh(0.0, 1.0, 4).unwrap();
    let mut v = m.vertices().to_vec();
    v[1].x = 0.6;
    m.with_vertices(v).unwrap()
}

/// Unit square fanned around (0.2, 0.5) with the cell `[0, 4, 3]` of area
/// 0.1 left out.
pub fn square_with_gap() -> Triangulation {
    use trimopt::mesh::{Cell, DomainSpec, Point};
    let verts = vec![
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(1.0, 1.0),
        Point::new(0.0, 1.0),
        Point::new(0.2, 0.5),
    ];
    let cells = vec![Cell::new(vec![0, 1, 4]), Cell::new(vec![1, 2, 4]), Cell::new(vec![2, 3, 4])];
    Triangulation::new(2, verts, cells, vec![false, false, false, false, true], DomainSpec::unit_square()).unwrap()
}
