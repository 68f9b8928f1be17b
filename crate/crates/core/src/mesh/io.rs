//! Line-oriented `meshtri` text format.
//!
//! ```text
//! meshtri 1
//! dim <d> vertices <nv> cells <nc>
//! <nv lines of d coordinates>
//! <nc lines of d+1 zero-based vertex indices>
//! <nv lines: 0 = free, 1 = fixed>
//! ```
//!
//! `#` starts a comment. The writer appends a `# domain ...` comment that
//! this reader understands; without it the domain is inferred from the mesh.

use std::fmt::Write as _;

use super::{Cell, DomainSpec, Point, Triangulation};
use crate::error::{Error, Result};

const MAGIC: &str = "meshtri";
const VERSION: &str = "1";

pub fn write_mesh(mesh: &Triangulation) -> String {
    let mut out = String::new();
    let d = mesh.dim();
    writeln!(out, "{MAGIC} {VERSION}").unwrap();
    writeln!(
        out,
        "dim {d} vertices {} cells {}",
        mesh.vertices().len(),
        mesh.cells().len()
    )
    .unwrap();
    for p in mesh.vertices() {
        if d == 1 {
            writeln!(out, "{:?}", p.x).unwrap();
        } else {
            writeln!(out, "{:?} {:?}", p.x, p.y).unwrap();
        }
    }
    for c in mesh.cells() {
        let ids: Vec<String> = c.vertices().iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", ids.join(" ")).unwrap();
    }
    for &free in mesh.free_mask() {
        writeln!(out, "{}", if free { 0 } else { 1 }).unwrap();
    }
    match mesh.domain() {
        DomainSpec::Interval { a, b } => writeln!(out, "# domain interval {a:?} {b:?}").unwrap(),
        DomainSpec::Polygon(pts) => {
            write!(out, "# domain polygon").unwrap();
            for p in pts {
                write!(out, " {:?} {:?}", p.x, p.y).unwrap();
            }
            writeln!(out).unwrap();
        }
    }
    out
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_f64(tok: &str, line: usize) -> Result<f64> {
    let v: f64 = tok
        .parse()
        .map_err(|_| perr(line, format!("invalid number `{tok}`")))?;
    if !v.is_finite() {
        return Err(perr(line, format!("non-finite coordinate `{tok}`")));
    }
    Ok(v)
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| perr(line, format!("invalid index `{tok}`")))
}

fn parse_domain(rest: &str, line: usize) -> Result<DomainSpec> {
    let toks: Vec<&str> = rest.split_whitespace().collect();
    let nums = |ts: &[&str]| -> Result<Vec<f64>> { ts.iter().map(|t| parse_f64(t, line)).collect() };
    let d = match toks.first() {
        Some(&"interval") => {
            let v = nums(&toks[1..])?;
            if v.len() != 2 {
                return Err(perr(line, "interval domain needs 2 numbers"));
            }
            DomainSpec::interval(v[0], v[1])
        }
        Some(&"polygon") => {
            let v = nums(&toks[1..])?;
            if v.len() % 2 != 0 {
                return Err(perr(line, "polygon domain needs coordinate pairs"));
            }
            DomainSpec::polygon(v.chunks(2).map(|c| Point::new(c[0], c[1])).collect())
        }
        _ => return Err(perr(line, "unknown domain kind")),
    };
    d.map_err(|e| perr(line, e.to_string()))
}

pub fn read_mesh(text: &str) -> Result<Triangulation> {
    let mut domain = None;
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        if let Some(rest) = raw.trim_start().strip_prefix('#') {
            if let Some(spec) = rest.trim_start().strip_prefix("domain ") {
                domain = Some((no, spec.to_string()));
            }
            continue;
        }
        let content = raw.split('#').next().unwrap_or("").trim();
        if !content.is_empty() {
            lines.push((no, content));
        }
    }
    let last_line = text.lines().count().max(1);
    let mut it = lines.into_iter();
    let mut next = |what: &str| {
        it.next()
            .ok_or_else(|| perr(last_line, format!("unexpected end of file, expected {what}")))
    };

    let (no, magic) = next("header")?;
    let toks: Vec<&str> = magic.split_whitespace().collect();
    if toks != [MAGIC, VERSION] {
        return Err(perr(no, format!("expected `{MAGIC} {VERSION}`")));
    }

    let (no, header) = next("size line")?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 6 || toks[0] != "dim" || toks[2] != "vertices" || toks[4] != "cells" {
        return Err(perr(no, "expected `dim <d> vertices <nv> cells <nc>`"));
    }
    let dim = parse_usize(toks[1], no)?;
    if !(1..=2).contains(&dim) {
        return Err(perr(no, format!("unsupported dimension {dim}")));
    }
    let nv = parse_usize(toks[3], no)?;
    let nc = parse_usize(toks[5], no)?;

    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (no, l) = next("vertex coordinates")?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != dim {
            return Err(perr(no, format!("expected {dim} coordinates, found {}", toks.len())));
        }
        let x = parse_f64(toks[0], no)?;
        let y = if dim == 2 { parse_f64(toks[1], no)? } else { 0.0 };
        vertices.push(Point::new(x, y));
    }

    let mut cells = Vec::with_capacity(nc);
    for _ in 0..nc {
        let (no, l) = next("cell indices")?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != dim + 1 {
            return Err(perr(no, format!("expected {} indices, found {}", dim + 1, toks.len())));
        }
        let mut ids = Vec::with_capacity(dim + 1);
        for t in toks {
            let v = parse_usize(t, no)?;
            if v >= nv {
                return Err(perr(no, format!("vertex index {v} out of range ({nv} vertices)")));
            }
            if ids.contains(&v) {
                return Err(perr(no, format!("repeated vertex index {v}")));
            }
            ids.push(v);
        }
        cells.push(ids);
    }

    let mut free_mask = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (no, l) = next("fixed flag")?;
        free_mask.push(match l {
            "0" => true,
            "1" => false,
            other => return Err(perr(no, format!("fixed flag must be 0 or 1, found `{other}`"))),
        });
    }
    if let Some((no, _)) = it.next() {
        return Err(perr(no, "unexpected trailing content"));
    }

    let domain = match domain {
        Some((no, spec)) => parse_domain(&spec, no)?,
        None => DomainSpec::infer(dim, &vertices, &cells).map_err(|e| perr(last_line, e.to_string()))?,
    };
    if domain.dim() != dim {
        return Err(perr(last_line, "domain dimension does not match mesh"));
    }
    Triangulation::new(dim, vertices, cells.into_iter().map(Cell::new).collect(), free_mask, domain)
        .map_err(|e| perr(last_line, e.to_string()))
}
