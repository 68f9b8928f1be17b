//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;

use common::{alternating, composite, cubic_scan_minimizer, inverted_interval, square_with_gap, two_triangle_square};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trimopt::field::*;
use trimopt::mesh::*;
use trimopt::optimizer::*;
use trimopt::whitney::{interpolate_whitney, phi_form, OneForm};

struct Outcome {
    pass: bool,
    details: String,
}

impl Outcome {
    fn new(pass: bool, details: impl Into<String>) -> Self {
        Outcome { pass, details: details.into() }
    }
}

type Check = fn(&mut Vec<(String, OptResult)>) -> Result<Outcome, trimopt::Error>;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn energy_oracle(_: &mut Vec<(String, OptResult)>) -> Result<Outcome, trimopt::Error> {
    let h: f64 = 1.0 / 8.0;
    // per-cell closed forms, confirmed against 10-point composite quadrature
    let cell_l2 = composite(|x| (x * (h - x)).powi(2), 0.0, h, 4, 10);
    let cell_semi = composite(|x| (h - 2.0 * x).powi(2), 0.0, h, 4, 10);
    let oracle_ok = rel(cell_l2, h.powi(5) / 30.0) < 1e-12 && rel(cell_semi, h.powi(3) / 3.0) < 1e-12;
    let mesh = uniform_interval_mesh(0.0, 1.0, 8)?;
    let l2 = phi(&mesh, &ScalarField::Quad1d, &EnergyWeights::L2)?;
    let h1 = phi(&mesh, &ScalarField::Quad1d, &EnergyWeights::H1)?;
    let (e0, e1) = (rel(l2, 1.0 / 122880.0), rel(h1, 1.0 / 122880.0 + 1.0 / 192.0));
    Ok(Outcome::new(
        oracle_ok && e0 < 1e-12 && e1 < 1e-12,
        format!("rel err (1,0) {e0:.2e}, (1,1) {e1:.2e}, oracle confirmed {oracle_ok}"),
    ))
}

fn symmetric_optimum(runs: &mut Vec<(String, OptResult)>) -> Result<Outcome, trimopt::Error> {
    let start = alternating(&uniform_interval_mesh(0.0, 1.0, 8)?, 0.02);
    let p = Problem::scalar(ScalarField::Quad1d, EnergyWeights::H1);
    let r = optimize(&start, &p, &OptimizerConfig::default())?;
    let dev = r
        .final_mesh
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.x - i as f64 / 8.0).abs())
        .fold(0.0, f64::max);
    let grad = r.trace.last().unwrap().grad_inf;
    let iters = r.trace.len() - 1;
    let out = Outcome::new(
        dev < 1e-3 && grad < 1e-5 && iters <= 500,
        format!("max vertex offset {dev:.2e}, |g|∞ {grad:.2e}, {iters} iterations, {}", r.termination),
    );
    runs.push(("quad1d N=8".into(), r));
    Ok(out)
}

fn asymmetric_optimum(runs: &mut Vec<(String, OptResult)>) -> Result<Outcome, trimopt::Error> {
    let scan = cubic_scan_minimizer(1e-5);
    let mesh = uniform_interval_mesh(0.0, 1.0, 2)?;
    let p = Problem::scalar(ScalarField::Cubic1d, EnergyWeights::L2);
    let r = optimize(&mesh, &p, &OptimizerConfig::default())?;
    let knot = r.final_mesh.vertices()[1].x;
    let out = Outcome::new(
        (knot - scan).abs() < 1e-3,
        format!("knot {knot:.6}, scan minimizer {scan:.5}, diff {:.2e}", (knot - scan).abs()),
    );
    runs.push(("cubic1d N=2".into(), r));
    Ok(out)
}

fn reparametrization(_: &mut Vec<(String, OptResult)>) -> Result<Outcome, trimopt::Error> {
    let f = ScalarField::Paper1d;
    let w = EnergyWeights::L2;
    let id = phi_reparam_1d(&f, &Parametrization1D::identity(), &w)?;
    let inv = phi_reparam_1d(&f, &Parametrization1D::paper1d_inverse(), &w)?;
    let lit = phi_reparam_1d(&f, &Parametrization1D::from_field(&f), &w)?;
    Ok(Outcome::new(
        (id - 1.0 / 120.0).abs() < 1e-9 && inv <= 1e-10 && lit > 0.0,
        format!("identity {id:.12}, inverse {inv:.2e}, sigma=f {lit:.4e}"),
    ))
}

fn p1_reproduction(_: &mut Vec<(String, OptResult)>) -> Result<Outcome, trimopt::Error> {
    let mut worst: f64 = 0.0;
    for m in 1..=16 {
        let mesh = structured_square_mesh(m)?;
        for w in [EnergyWeights::L2, EnergyWeights::H1_SEMI, EnergyWeights::H1] {
            worst = worst.max(phi(&mesh, &ScalarField::Affine2d, &w)?);
        }
    }
    Ok(Outcome::new(worst <= 1e-14, format!("max phi {worst:.2e} over m=1..16")))
}

fn convergence_rates(_: &mut Vec<(String, OptResult)>) -> Result<Outcome, trimopt::Error> {
    let rates = |t: &ConvergenceTable| -> Vec<(f64, f64)> {
        t.rows[1..].iter().map(|r| (r.rate_l2.unwrap_or(f64::NAN), r.rate_h1.unwrap_or(f64::NAN))).collect()
    };
    let q = rates(&convergence_study(&ScalarField::Quad1d, MeshFamily::Interval { a: 0.0, b: 1.0 }, &[4, 8, 16])?);
    let s = rates(&convergence_study(&ScalarField::Sinprod2d, MeshFamily::UnitSquare, &[4, 8, 16])?);
    let q_ok = q.iter().all(|(a, b)| (a - 2.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
    let s_ok = s.iter().all(|(a, b)| (a - 2.0).abs() <= 0.1 && (b - 1.0).abs() <= 0.1);
    Ok(Outcome::new(q_ok && s_ok, format!("quad1d {q:.12?}, sinprod2d {s:.4?}")))
}

fn whitney_properties(_: &mut Vec<(String, OptResult)>) -> Result<Outcome, trimopt::Error> {
    let square = two_triangle_square();
    let mut projection: f64 = 0.0;
    for f in [OneForm::Dx, OneForm::XDy, OneForm::Rot, OneForm::DgQuad] {
        let w = interpolate_whitney(&f, &square)?;
        for (e, edge) in w.edges().iter().enumerate() {
            for &(c, _) in &edge.incident_cells {
                projection = projection.max((w.edge_circulation_in(e, c)? - w.edge_dofs()[e]).abs());
            }
        }
    }
    let constant = phi_form(&square, &OneForm::Dx, &EnergyWeights::H1)?;
    let mut stokes: f64 = 0.0;
    let mut green: f64 = 0.0;
    for mesh in [square, alternating(&structured_square_mesh(4)?, 0.05)] {
        let w = interpolate_whitney(&OneForm::Rot, &mesh)?;
        for c in 0..mesh.cells().len() {
            let area = mesh.signed_cell_volume(c)?;
            let integral = w.d(c)? * area;
            stokes = stokes.max((integral - w.boundary_circulation(c)?).abs());
            green = green.max((integral - 2.0 * area).abs());
        }
    }
    Ok(Outcome::new(
        projection < 1e-12 && constant <= 1e-13 && stokes < 1e-12 && green < 1e-12,
        format!("projection {projection:.1e}, phi_form(dx) {constant:.1e}, stokes {stokes:.1e}, green {green:.1e}"),
    ))
}

fn gradient_consistency(_: &mut Vec<(String, OptResult)>) -> Result<Outcome, trimopt::Error> {
    let base = uniform_interval_mesh(0.0, 1.0, 8)?;
    let p = Problem::scalar(ScalarField::Quad1d, EnergyWeights::H1);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = f64::INFINITY;
    for _ in 0..3 {
        let x: Vec<f64> = pack_free(&base).iter().map(|v| v + rng.gen_range(-0.03..0.03)).collect();
        let mesh = unpack_free(&base, &x)?;
        let obj = p.objective(&mesh);
        let g = fd_gradient(&obj, &x, OptimizerConfig::default().fd_step)?;
        for _ in 0..3 {
            let v: Vec<f64> = (0..x.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let gv: f64 = g.iter().zip(&v).map(|(a, b)| a * b).sum();
            let mut errs = Vec::new();
            for t in [1e-2, 1e-3, 1e-4] {
                let shift = |s: f64| -> Vec<f64> { x.iter().zip(&v).map(|(a, b)| a + s * t * b).collect() };
                let (fp, fm) = (obj(&shift(1.0)), obj(&shift(-1.0)));
                let (Some(fp), Some(fm)) = (fp, fm) else {
                    return Ok(Outcome::new(false, "probe left the feasible set"));
                };
                errs.push(((fp - fm) / (2.0 * t) - gv).abs());
            }
            worst = worst.min(errs[0] / errs[1]).min(errs[1] / errs[2]);
        }
    }
    Ok(Outcome::new(worst >= 3.5, format!("smallest error reduction per decade {worst:.2}")))
}

fn validation_fixtures(_: &mut Vec<(String, OptResult)>) -> Result<Outcome, trimopt::Error> {
    let inverted = inverted_interval();
    let flagged_inverted = validate(&inverted).has(Condition::Embedding);
    let mut v = inverted.vertices().to_vec();
    v[1].x = 0.25;
    let inverted_repaired = validate(&inverted.with_vertices(v)?).is_valid();

    let gap = square_with_gap();
    let flagged_gap = validate(&gap).has(Condition::Covering);
    let mut cells = gap.cells().to_vec();
    cells.push(Cell::new(vec![0, 4, 3]));
    let gap_repaired = validate(&gap.with_cells(cells)?).is_valid();
    Ok(Outcome::new(
        flagged_inverted && inverted_repaired && flagged_gap && gap_repaired,
        format!(
            "inverted flagged {flagged_inverted} repaired {inverted_repaired}, gap flagged {flagged_gap} repaired {gap_repaired}"
        ),
    ))
}

fn trace_monotonicity(runs: &mut Vec<(String, OptResult)>) -> Result<Outcome, trimopt::Error> {
    let extra = [
        (
            "sinprod2d m=4",
            alternating(&structured_square_mesh(4)?, 0.04),
            Problem::scalar(ScalarField::Sinprod2d, EnergyWeights::H1),
        ),
        (
            "rot m=3",
            alternating(&structured_square_mesh(3)?, 0.04),
            Problem::form(OneForm::Rot, EnergyWeights::H1),
        ),
    ];
    for (name, start, p) in extra {
        runs.push((name.into(), optimize(&start, &p, &OptimizerConfig::default())?));
    }
    let bad: Vec<&str> = runs
        .iter()
        .filter(|(_, r)| {
            !(r.trace.windows(2).all(|w| w[1].phi <= w[0].phi) && r.trace.iter().all(|e| e.min_volume > 0.0))
        })
        .map(|(n, _)| n.as_str())
        .collect();
    let names: Vec<&str> = runs.iter().map(|(n, _)| n.as_str()).collect();
    Ok(Outcome::new(bad.is_empty(), format!("runs {names:?}, violating {bad:?}")))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        ("energy oracle (1D)", energy_oracle),
        ("optimizer, symmetric 1D", symmetric_optimum),
        ("optimizer, asymmetric 1D", asymmetric_optimum),
        ("reparametrization demo", reparametrization),
        ("P1 reproduction", p1_reproduction),
        ("convergence rates", convergence_rates),
        ("Whitney properties", whitney_properties),
        ("gradient consistency", gradient_consistency),
        ("validation fixtures", validation_fixtures),
        ("trace monotonicity and feasibility", trace_monotonicity),
    ];
    let mut runs = Vec::new();
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = std::time::Instant::now();
        let outcome = check(&mut runs).unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        if !outcome.pass {
            failures += 1;
        }
        println!("{tag} [{}] {name}: {} ({:.2?})", i + 1, outcome.details, started.elapsed());
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
