//! Flat `key = value` run configuration, merged under command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::field::{EnergyWeights, MeshFamily};
use crate::mesh::{read_mesh, structured_square_mesh, uniform_interval_mesh, Triangulation};
use crate::optimizer::OptimizerConfig;

/// Parses `key = value` lines; `#` comments and blank lines are skipped and
/// `_` in keys is read as `-`.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: i + 1,
            message: format!("expected `key = value`, found `{line}`"),
        })?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() {
            return Err(Error::Parse {
                line: i + 1,
                message: "empty key".into(),
            });
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

/// `interval:N`, `interval:N:a:b` or `square:M`. The size may be omitted
/// where only the family matters (refinement studies).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Generator {
    pub family: MeshFamily,
    pub size: Option<usize>,
}

impl Generator {
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("invalid generator `{s}`"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let size = |t: Option<&&str>| -> Result<Option<usize>> {
            t.map(|t| t.parse::<usize>().map_err(|_| bad())).transpose()
        };
        match parts.first().copied() {
            Some("interval") => {
                let (a, b) = match parts.len() {
                    1 | 2 => (0.0, 1.0),
                    4 => (
                        parts[2].parse().map_err(|_| bad())?,
                        parts[3].parse().map_err(|_| bad())?,
                    ),
                    _ => return Err(bad()),
                };
                Ok(Generator {
                    family: MeshFamily::Interval { a, b },
                    size: size(parts.get(1))?,
                })
            }
            Some("square") if parts.len() <= 2 => Ok(Generator {
                family: MeshFamily::UnitSquare,
                size: size(parts.get(1))?,
            }),
            _ => Err(bad()),
        }
    }

    pub fn build(&self) -> Result<Triangulation> {
        let n = self
            .size
            .ok_or_else(|| Error::InvalidArgument("generator needs a size, e.g. interval:8".into()))?;
        match self.family {
            MeshFamily::Interval { a, b } => uniform_interval_mesh(a, b, n),
            MeshFamily::UnitSquare => structured_square_mesh(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MeshSource {
    File(PathBuf),
    Generated(Generator),
}

impl MeshSource {
    pub fn load(&self) -> Result<Triangulation> {
        match self {
            MeshSource::File(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", p.display())))?;
                read_mesh(&text)
            }
            MeshSource::Generated(g) => g.build(),
        }
    }
}

/// Everything a command needs, after merging the config file and flags.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mesh: Option<MeshSource>,
    pub field: Option<String>,
    pub form: Option<String>,
    pub weights: EnergyWeights,
    pub optimizer: OptimizerConfig,
    pub out: PathBuf,
    pub levels: Vec<usize>,
    pub perturb: f64,
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::InvalidArgument(format!("invalid value `{v}` for `{key}`")))
}

impl RunConfig {
    /// Builds the configuration from `key → value` pairs (flags already
    /// layered over file entries).
    pub fn from_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let known = [
            "mesh", "gen", "field", "form", "c0", "c1", "gtol", "ftol", "max-iters", "fd-step",
            "out", "levels", "perturb",
        ];
        if let Some(k) = map.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(Error::InvalidArgument(format!("unknown configuration key `{k}`")));
        }
        let get = |k: &str| map.get(k).map(String::as_str);

        let mesh = match (get("mesh"), get("gen")) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidArgument("give either a mesh file or a generator, not both".into()))
            }
            (Some(p), None) => Some(MeshSource::File(PathBuf::from(p))),
            (None, Some(g)) => Some(MeshSource::Generated(Generator::parse(g)?)),
            (None, None) => None,
        };
        let c0 = get("c0").map(|v| num("c0", v)).transpose()?.unwrap_or(1.0);
        let c1 = get("c1").map(|v| num("c1", v)).transpose()?.unwrap_or(1.0);
        let weights = EnergyWeights::new(c0, c1)?;

        let mut optimizer = OptimizerConfig::default();
        if let Some(v) = get("gtol") {
            optimizer.gtol = num("gtol", v)?;
        }
        if let Some(v) = get("ftol") {
            optimizer.ftol = num("ftol", v)?;
        }
        if let Some(v) = get("max-iters") {
            optimizer.max_iters = num("max-iters", v)?;
        }
        if let Some(v) = get("fd-step") {
            optimizer.fd_step = num("fd-step", v)?;
        }
        optimizer.check()?;

        let levels = match get("levels") {
            Some(v) => v
                .split(',')
                .map(|t| num::<usize>("levels", t.trim()))
                .collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
        };
        let perturb = get("perturb").map(|v| num("perturb", v)).transpose()?.unwrap_or(0.0);
        if !f64::is_finite(perturb) {
            return Err(Error::InvalidArgument("perturb must be finite".into()));
        }
        Ok(RunConfig {
            mesh,
            field: get("field").map(str::to_string),
            form: get("form").map(str::to_string),
            weights,
            optimizer,
            out: PathBuf::from(get("out").unwrap_or("out")),
            levels,
            perturb,
        })
    }

    pub fn prepare_out(&self) -> Result<&Path> {
        std::fs::create_dir_all(&self.out)
            .map_err(|e| Error::InvalidArgument(format!("cannot create {}: {e}", self.out.display())))?;
        Ok(&self.out)
    }
}
