mod common;

use common::{composite, l2_sq_chord, triangle_integral};
use trimopt::field::*;
use trimopt::mesh::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn closed_forms_agree_with_composite_quadrature() {
    // independent confirmation of h⁵/30 and h³/3 on one cell
    let (a, b) = (0.25, 0.375);
    let h: f64 = b - a;
    let l2 = l2_sq_chord(|x| x * x, a, b);
    let semi = composite(|x| (a + b - 2.0 * x).powi(2), a, b, 10, 10);
    assert!(rel(l2, h.powi(5) / 30.0) < 1e-12);
    assert!(rel(semi, h.powi(3) / 3.0) < 1e-12);
}

#[test]
fn quad1d_energy_on_uniform_mesh() {
    let m = uniform_interval_mesh(0.0, 1.0, 8).unwrap();
    let l2 = phi(&m, &ScalarField::Quad1d, &EnergyWeights::L2).unwrap();
    let h1 = phi(&m, &ScalarField::Quad1d, &EnergyWeights::H1).unwrap();
    assert!(rel(l2, 1.0 / 122880.0) < 1e-12);
    assert!(rel(h1, 1.0 / 122880.0 + 1.0 / 192.0) < 1e-12);
}

#[test]
fn energy_is_linear_in_weights() {
    let meshes = [uniform_interval_mesh(0.0, 1.0, 5).unwrap(), structured_square_mesh(4).unwrap()];
    for mesh in &meshes {
        let fields: &[ScalarField] = if mesh.dim() == 1 {
            &[ScalarField::Quad1d, ScalarField::Cubic1d, ScalarField::Paper1d]
        } else {
            &[ScalarField::Quadsum2d, ScalarField::Sinprod2d]
        };
        for f in fields {
            let a = phi(mesh, f, &EnergyWeights::L2).unwrap();
            let b = phi(mesh, f, &EnergyWeights::H1_SEMI).unwrap();
            for (c0, c1) in [(0.5, 2.0), (3.0, 0.1), (1.0, 1.0)] {
                let w = EnergyWeights::new(c0, c1).unwrap();
                assert!(rel(phi(mesh, f, &w).unwrap(), c0 * a + c1 * b) < 1e-12);
            }
        }
    }
}

/// Oracle: the P1 interpolant rebuilt from explicit barycentric formulas,
/// integrated with a 16×16-panel collapsed tensor rule per cell.
fn sinprod_l2_oracle(mesh: &Triangulation) -> f64 {
    let f = |x: f64, y: f64| (std::f64::consts::PI * x).sin() * (std::f64::consts::PI * y).sin();
    let mut oracle = 0.0;
    for c in 0..mesh.cells().len() {
        let p = mesh.cell_points(c).unwrap();
        let pts = [[p[0].x, p[0].y], [p[1].x, p[1].y], [p[2].x, p[2].y]];
        let det = (pts[1][0] - pts[0][0]) * (pts[2][1] - pts[0][1]) - (pts[1][1] - pts[0][1]) * (pts[2][0] - pts[0][0]);
        let vals = [f(pts[0][0], pts[0][1]), f(pts[1][0], pts[1][1]), f(pts[2][0], pts[2][1])];
        oracle += triangle_integral(
            |x, y| {
                let l1 = ((x - pts[0][0]) * (pts[2][1] - pts[0][1]) - (y - pts[0][1]) * (pts[2][0] - pts[0][0])) / det;
                let l2 = ((pts[1][0] - pts[0][0]) * (y - pts[0][1]) - (pts[1][1] - pts[0][1]) * (x - pts[0][0])) / det;
                let u = (1.0 - l1 - l2) * vals[0] + l1 * vals[1] + l2 * vals[2];
                (u - f(x, y)).powi(2)
            },
            pts,
            16,
        );
    }
    oracle
}

#[test]
fn sinprod_energy_matches_brute_force_quadrature() {
    // The degree-5 rule is inexact for this integrand; its relative error
    // falls like h², so quadrupling the resolution cuts it by about 16.
    let mut errs = Vec::new();
    for m in [2, 8] {
        let mesh = structured_square_mesh(m).unwrap();
        let got = phi(&mesh, &ScalarField::Sinprod2d, &EnergyWeights::L2).unwrap();
        errs.push(rel(got, sinprod_l2_oracle(&mesh)));
    }
    assert!(errs[0] < 5e-3 && errs[1] < 5e-4, "{errs:?}");
    assert!(errs[0] / errs[1] > 12.0, "{errs:?}");
}

#[test]
fn affine_reproduction_on_all_generated_squares() {
    for m in 1..=16 {
        let mesh = structured_square_mesh(m).unwrap();
        for w in [EnergyWeights::L2, EnergyWeights::H1_SEMI, EnergyWeights::H1] {
            assert!(phi(&mesh, &ScalarField::Affine2d, &w).unwrap() <= 1e-14);
        }
    }
}

#[test]
fn interpolation_property_at_vertices() {
    let mesh = structured_square_mesh(3).unwrap();
    let f = ScalarField::Quadsum2d;
    let u = interpolate_p1(&f, &mesh).unwrap();
    for (v, p) in mesh.vertices().iter().enumerate() {
        assert_eq!(u.nodal_values()[v], f.value(*p));
    }
}

#[test]
fn reparam_against_symbolic_values() {
    let f = ScalarField::Paper1d;
    let id = Parametrization1D::identity();
    // ∫((x²−x)/2)² = 1/120 and ∫((2x−1)/2)² = 1/12
    assert!((phi_reparam_1d(&f, &id, &EnergyWeights::L2).unwrap() - 1.0 / 120.0).abs() < 1e-12);
    assert!((phi_reparam_1d(&f, &id, &EnergyWeights::H1_SEMI).unwrap() - 1.0 / 12.0).abs() < 1e-12);
    // σ = f: the brute-force integral of the same substitution
    let lit = phi_reparam_1d(&f, &Parametrization1D::from_field(&f), &EnergyWeights::L2).unwrap();
    let fv = |x: f64| 0.5 * (x + x * x);
    let oracle = composite(|t| (t - fv(fv(t))).powi(2) * (0.5 + t), 0.0, 1.0, 200, 6);
    assert!(rel(lit, oracle) < 1e-10);
}

#[test]
fn study_rates() {
    let t = convergence_study(&ScalarField::Quad1d, MeshFamily::Interval { a: 0.0, b: 1.0 }, &[4, 8, 16]).unwrap();
    for r in &t.rows[1..] {
        assert!((r.rate_l2.unwrap() - 2.0).abs() < 1e-12);
        assert!((r.rate_h1.unwrap() - 1.0).abs() < 1e-12);
    }
    let t = convergence_study(&ScalarField::Quadsum2d, MeshFamily::UnitSquare, &[2, 4, 8]).unwrap();
    for r in &t.rows[1..] {
        assert!((r.rate_l2.unwrap() - 2.0).abs() < 0.1);
        assert!((r.rate_h1.unwrap() - 1.0).abs() < 0.1);
    }
}
