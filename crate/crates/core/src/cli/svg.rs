//! Static SVG plots: mesh wireframes and Φ against iteration.

use std::fmt::Write as _;

use crate::mesh::{edges, Triangulation};
use crate::optimizer::TraceEntry;

const PANEL: f64 = 320.0;
const MARGIN: f64 = 20.0;

fn wireframe(out: &mut String, mesh: &Triangulation, x0: f64, title: &str) {
    let v = mesh.vertices();
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in v {
        lo_x = lo_x.min(p.x);
        lo_y = lo_y.min(p.y);
        hi_x = hi_x.max(p.x);
        hi_y = hi_y.max(p.y);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(f64::MIN_POSITIVE);
    let s = (PANEL - 2.0 * MARGIN) / span;
    let map = |px: f64, py: f64| (x0 + MARGIN + (px - lo_x) * s, PANEL - MARGIN - (py - lo_y) * s);
    writeln!(out, r#"  <text x="{:.2}" y="14" font-size="12" font-family="sans-serif">{title}</text>"#, x0 + MARGIN).unwrap();
    writeln!(out, r#"  <g stroke="black" stroke-width="0.8" fill="none">"#).unwrap();
    for e in edges(mesh) {
        let (ax, ay) = map(v[e.lo].x, v[e.lo].y);
        let (bx, by) = map(v[e.hi].x, v[e.hi].y);
        writeln!(out, r#"    <line x1="{ax:.3}" y1="{ay:.3}" x2="{bx:.3}" y2="{by:.3}"/>"#).unwrap();
    }
    writeln!(out, "  </g>").unwrap();
}

/// Initial and final wireframes side by side.
pub fn mesh_svg(initial: &Triangulation, last: &Triangulation) -> String {
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{PANEL}" viewBox="0 0 {} {PANEL}">"#,
        2.0 * PANEL,
        2.0 * PANEL
    )
    .unwrap();
    wireframe(&mut out, initial, 0.0, "initial");
    wireframe(&mut out, last, PANEL, "final");
    out.push_str("</svg>\n");
    out
}

/// `log10 Φ` against iteration.
pub fn convergence_svg(trace: &[TraceEntry]) -> String {
    let (w, h) = (480.0, 320.0);
    let (left, right, top, bottom) = (60.0, 20.0, 20.0, 40.0);
    let logs: Vec<f64> = trace.iter().map(|e| e.phi.max(1e-300).log10()).collect();
    let lo = logs.iter().copied().fold(f64::INFINITY, f64::min).floor();
    let mut hi = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max).ceil();
    if hi <= lo {
        hi = lo + 1.0;
    }
    let last = trace.len().saturating_sub(1).max(1) as f64;
    let px = |i: usize| left + (w - left - right) * i as f64 / last;
    let py = |l: f64| top + (h - top - bottom) * (hi - l) / (hi - lo);

    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    writeln!(
        out,
        r#"  <g stroke="gray" stroke-width="1"><line x1="{left}" y1="{}" x2="{}" y2="{}"/><line x1="{left}" y1="{top}" x2="{left}" y2="{}"/></g>"#,
        h - bottom,
        w - right,
        h - bottom,
        h - bottom
    )
    .unwrap();
    writeln!(out, r#"  <g font-size="11" font-family="sans-serif">"#).unwrap();
    writeln!(out, r#"    <text x="4" y="{:.2}">1e{hi}</text>"#, py(hi) + 4.0).unwrap();
    writeln!(out, r#"    <text x="4" y="{:.2}">1e{lo}</text>"#, py(lo) + 4.0).unwrap();
    writeln!(out, r#"    <text x="{left}" y="{}">0</text>"#, h - bottom + 16.0).unwrap();
    writeln!(out, r#"    <text x="{:.2}" y="{}">{}</text>"#, w - right - 20.0, h - bottom + 16.0, last as usize).unwrap();
    writeln!(out, r#"    <text x="{:.2}" y="{}">iteration (phi on log scale)</text>"#, w / 2.0 - 70.0, h - 6.0).unwrap();
    writeln!(out, "  </g>").unwrap();
    let pts: Vec<String> = logs.iter().enumerate().map(|(i, &l)| format!("{:.3},{:.3}", px(i), py(l))).collect();
    writeln!(out, r#"  <polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#, pts.join(" ")).unwrap();
    out.push_str("</svg>\n");
    out
}
