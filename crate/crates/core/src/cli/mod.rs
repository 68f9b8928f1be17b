//! The `trimopt` command-line front end.
//!
//! Exit codes: 0 success, 1 usage/parse/config error, 2 validation
//! failure, 3 optimization did not converge.

mod config;
mod svg;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::field::{convergence_study, reparam_demo, ScalarField};
use crate::mesh::{read_mesh, validate, write_mesh, Triangulation};
use crate::optimizer::{optimize, pack_free, stationarity_check, unpack_free, Problem};
use crate::whitney::OneForm;

pub use config::{parse_config, Generator, MeshSource, RunConfig};
pub use svg::{convergence_svg, mesh_svg};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INVALID_MESH: u8 = 2;
pub const EXIT_NOT_CONVERGED: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "trimopt", version, about = "Optimize vertex positions of affine simplicial meshes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a mesh file against the triangulation conditions
    Validate { mesh: PathBuf },
    /// Minimize the H1 interpolation error of a scalar field
    Optimize(RunFlags),
    /// Minimize the interpolation error of a 1-form with Whitney elements
    WhitneyOptimize(RunFlags),
    /// Interpolation errors and observed rates under uniform refinement
    Study(RunFlags),
    /// Energy of the one-chart reparametrizations of (x + x^2)/2
    DemoReparam(RunFlags),
}

#[derive(Debug, Args, Default)]
struct RunFlags {
    /// flat `key = value` file; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    /// mesh file in meshtri format
    #[arg(long)]
    mesh: Option<String>,
    /// generated mesh: interval:N[:a:b] or square:M
    #[arg(long)]
    gen: Option<String>,
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    form: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c1: Option<String>,
    #[arg(long)]
    gtol: Option<String>,
    #[arg(long)]
    ftol: Option<String>,
    #[arg(long)]
    max_iters: Option<String>,
    #[arg(long)]
    fd_step: Option<String>,
    /// refinement levels for `study`, e.g. 4,8,16
    #[arg(long)]
    levels: Option<String>,
    /// shift free coordinates alternately by +d and -d before optimizing
    #[arg(long, allow_hyphen_values = true)]
    perturb: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

impl RunFlags {
    fn resolve(&self) -> Result<RunConfig> {
        let mut map = match &self.config {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", p.display())))?;
                parse_config(&text)?
            }
            None => BTreeMap::new(),
        };
        let flags = [
            ("mesh", &self.mesh),
            ("gen", &self.gen),
            ("field", &self.field),
            ("form", &self.form),
            ("c0", &self.c0),
            ("c1", &self.c1),
            ("gtol", &self.gtol),
            ("ftol", &self.ftol),
            ("max-iters", &self.max_iters),
            ("fd-step", &self.fd_step),
            ("levels", &self.levels),
            ("perturb", &self.perturb),
            ("out", &self.out),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                // a flag source replaces a file source of the other kind
                if k == "mesh" {
                    map.remove("gen");
                } else if k == "gen" && self.mesh.is_none() {
                    map.remove("mesh");
                }
                map.insert(k.to_string(), v.clone());
            }
        }
        RunConfig::from_map(&map)
    }
}

/// Runs one command and returns its exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Validate { mesh } => cmd_validate(mesh),
        Command::Optimize(f) => f.resolve().and_then(|c| cmd_optimize(&c, false)),
        Command::WhitneyOptimize(f) => f.resolve().and_then(|c| cmd_optimize(&c, true)),
        Command::Study(f) => f.resolve().and_then(|c| cmd_study(&c)),
        Command::DemoReparam(f) => f.resolve().and_then(|c| cmd_demo_reparam(&c)),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn write_out(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))
}

pub fn cmd_validate(path: &Path) -> Result<u8> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    let mesh = read_mesh(&text)?;
    let report = validate(&mesh);
    print!("{report}");
    Ok(if report.is_valid() { EXIT_OK } else { EXIT_INVALID_MESH })
}

fn perturbed(mesh: &Triangulation, delta: f64) -> Result<Triangulation> {
    if delta == 0.0 {
        return Ok(mesh.clone());
    }
    let x: Vec<f64> = pack_free(mesh)
        .iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { v + delta } else { v - delta })
        .collect();
    unpack_free(mesh, &x)
}

fn load_mesh(cfg: &RunConfig) -> Result<Triangulation> {
    cfg.mesh
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("no mesh source: use --mesh or --gen".into()))?
        .load()
}

pub fn cmd_optimize(cfg: &RunConfig, forms: bool) -> Result<u8> {
    let mesh = load_mesh(cfg)?;
    let problem = if forms {
        let name = cfg.form.as_deref().ok_or_else(|| Error::InvalidArgument("--form is required".into()))?;
        if mesh.dim() != 2 {
            return Err(Error::Unsupported("Whitney forms need a 2D mesh".into()));
        }
        Problem::form(name.parse::<OneForm>()?, cfg.weights)
    } else {
        let name = cfg.field.as_deref().ok_or_else(|| Error::InvalidArgument("--field is required".into()))?;
        let field: ScalarField = name.parse()?;
        if field.dim() != mesh.dim() {
            return Err(Error::DimensionMismatch {
                expected: mesh.dim(),
                got: field.dim(),
            });
        }
        Problem::scalar(field, cfg.weights)
    };
    let start = perturbed(&mesh, cfg.perturb)?;
    let report = validate(&start);
    if !report.is_valid() {
        eprint!("starting mesh is not a valid triangulation\n{report}");
        return Ok(EXIT_INVALID_MESH);
    }
    let out = cfg.prepare_out()?;
    let result = optimize(&start, &problem, &cfg.optimizer)?;
    let (residual, _) = stationarity_check(&result, &problem, &cfg.optimizer, cfg.optimizer.gtol)?;

    write_out(out, "final.meshtri", &write_mesh(&result.final_mesh))?;
    write_out(out, "trace.csv", &result.to_csv())?;
    if start.dim() == 2 {
        write_out(out, "mesh.svg", &mesh_svg(&start, &result.final_mesh))?;
    }
    write_out(out, "convergence.svg", &convergence_svg(&result.trace))?;

    println!("iterations: {}", result.trace.len() - 1);
    println!("final phi: {:e}", result.final_phi());
    println!("gradient residual: {residual:e}");
    println!("termination: {}", result.termination);
    Ok(if result.termination.converged() {
        EXIT_OK
    } else {
        EXIT_NOT_CONVERGED
    })
}

pub fn cmd_study(cfg: &RunConfig) -> Result<u8> {
    let name = cfg.field.as_deref().ok_or_else(|| Error::InvalidArgument("--field is required".into()))?;
    let field: ScalarField = name.parse()?;
    let family = match &cfg.mesh {
        Some(MeshSource::Generated(g)) => g.family,
        Some(MeshSource::File(_)) => {
            return Err(Error::InvalidArgument("study needs a generator family, not a mesh file".into()))
        }
        None if field.dim() == 1 => crate::field::MeshFamily::Interval { a: 0.0, b: 1.0 },
        None => crate::field::MeshFamily::UnitSquare,
    };
    let table = convergence_study(&field, family, &cfg.levels)?;
    let out = cfg.prepare_out()?;
    let csv = table.to_csv();
    write_out(out, "rates.csv", &csv)?;
    print!("{csv}");
    Ok(EXIT_OK)
}

pub fn cmd_demo_reparam(cfg: &RunConfig) -> Result<u8> {
    let rows = reparam_demo(&cfg.weights)?;
    println!("f(x) = (x + x^2)/2, weights c0 = {}, c1 = {}", cfg.weights.c0(), cfg.weights.c1());
    println!("{:<12} {:>24}", "sigma", "phi");
    for r in &rows {
        println!("{:<12} {:>24e}", r.sigma, r.phi);
    }
    println!(
        "note: the interpolation error vanishes for sigma = f^-1 (the chart that straightens f), \
         not for sigma = f"
    );
    Ok(EXIT_OK)
}
