//! SVG rendering: left pane the tropical curve (twisted edges dashed red),
//! right pane the four axially-reflected copies of the Newton polygon
//! carrying the patchworking arcs of each quadrant. Fixed viewbox; exact
//! coordinates are converted to floats only here.

use std::collections::BTreeSet;
use std::fmt::Write;

use num::ToPrimitive;
use twistspace::graph::EdgeId;
use twistspace::tropical::{ArcSet, TropicalCurve, QUADRANTS};

const VIEW_W: f64 = 1000.0;
const VIEW_H: f64 = 520.0;
const RAY_LEN: f64 = 1.5;

struct Fit {
    scale: f64,
    x0: f64,
    y0: f64,
    tx: f64,
    ty: f64,
}

impl Fit {
    /// map data bounds into the target rectangle, preserving aspect ratio
    /// and flipping y (SVG grows downward)
    fn new(points: &[(f64, f64)], rect: (f64, f64, f64, f64)) -> Fit {
        let (rx, ry, rw, rh) = rect;
        let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
        let min = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
        let max = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let (x0, x1, y0, y1) = (min(&xs), max(&xs), min(&ys), max(&ys));
        let w = (x1 - x0).max(1e-9);
        let h = (y1 - y0).max(1e-9);
        let scale = (rw / w).min(rh / h);
        Fit {
            scale,
            x0,
            y0: y1,
            tx: rx + (rw - scale * w) / 2.0,
            ty: ry + (rh - scale * h) / 2.0,
        }
    }

    fn map(&self, p: (f64, f64)) -> (f64, f64) {
        (
            self.tx + self.scale * (p.0 - self.x0),
            self.ty + self.scale * (self.y0 - p.1),
        )
    }
}

fn line(out: &mut String, fit: &Fit, a: (f64, f64), b: (f64, f64), style: &str) {
    let (ax, ay) = fit.map(a);
    let (bx, by) = fit.map(b);
    writeln!(
        out,
        r#"  <line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" {style}/>"#
    )
    .expect("writing to a string cannot fail");
}

fn circle(out: &mut String, fit: &Fit, c: (f64, f64), r: f64, style: &str) {
    let (cx, cy) = fit.map(c);
    writeln!(out, r#"  <circle cx="{cx:.2}" cy="{cy:.2}" r="{r}" {style}/>"#)
        .expect("writing to a string cannot fail");
}

fn pos_f64(c: &TropicalCurve, cell: usize) -> (f64, f64) {
    let p = &c.vertices[cell].pos;
    (
        p.0.to_f64().expect("coordinates fit in f64"),
        p.1.to_f64().expect("coordinates fit in f64"),
    )
}

pub fn render_patchwork(c: &TropicalCurve, twists: &BTreeSet<EdgeId>, arcs: &ArcSet) -> String {
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {VIEW_W} {VIEW_H}">"#
    )
    .unwrap();
    writeln!(out, r#"  <rect width="{VIEW_W}" height="{VIEW_H}" fill="white"/>"#).unwrap();

    // -------------------------------------------------- left: the curve
    let mut pts: Vec<(f64, f64)> = (0..c.vertices.len()).map(|i| pos_f64(c, i)).collect();
    for ray in &c.rays {
        let (x, y) = pos_f64(c, ray.cell);
        pts.push((x + RAY_LEN * ray.dir.0 as f64, y + RAY_LEN * ray.dir.1 as f64));
    }
    let fit = Fit::new(&pts, (30.0, 30.0, 440.0, 460.0));
    let plain = r#"stroke="black" stroke-width="2""#;
    let twisted = r#"stroke="red" stroke-width="3" stroke-dasharray="6 4""#;
    for (i, e) in c.edges.iter().enumerate() {
        let style = if twists.contains(&EdgeId(i)) { twisted } else { plain };
        line(&mut out, &fit, pos_f64(c, e.cells.0), pos_f64(c, e.cells.1), style);
    }
    for ray in &c.rays {
        let (x, y) = pos_f64(c, ray.cell);
        let end = (x + RAY_LEN * ray.dir.0 as f64, y + RAY_LEN * ray.dir.1 as f64);
        line(&mut out, &fit, (x, y), end, plain);
    }
    for i in 0..c.vertices.len() {
        circle(&mut out, &fit, pos_f64(c, i), 3.0, r#"fill="black""#);
    }

    // ------------------------- right: reflected polygon copies with arcs
    let reflect = |q: (i8, i8), p: (i64, i64)| -> (f64, f64) {
        (q.0 as f64 * p.0 as f64, q.1 as f64 * p.1 as f64)
    };
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for q in QUADRANTS {
        for &p in &c.subdivision.points {
            pts.push(reflect(q, p));
        }
    }
    let fit = Fit::new(&pts, (530.0, 30.0, 440.0, 460.0));
    let grid = r##"stroke="#bbbbbb" stroke-width="0.7""##;
    for q in QUADRANTS {
        for tri in &c.subdivision.cells {
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                line(
                    &mut out,
                    &fit,
                    reflect(q, c.subdivision.points[tri[i]]),
                    reflect(q, c.subdivision.points[tri[j]]),
                    grid,
                );
            }
        }
    }
    let strand = r##"stroke="#0050c8" stroke-width="2.5""##;
    for arc in &arcs.arcs {
        let tri = &c.subdivision.cells[arc.cell];
        let others: Vec<usize> = tri.iter().copied().filter(|&i| i != arc.odd).collect();
        let odd = c.subdivision.points[arc.odd];
        let mid = |other: usize| {
            let p = c.subdivision.points[other];
            let m = ((odd.0 + p.0) as f64 / 2.0, (odd.1 + p.1) as f64 / 2.0);
            (arc.quadrant.0 as f64 * m.0, arc.quadrant.1 as f64 * m.1)
        };
        line(&mut out, &fit, mid(others[0]), mid(others[1]), strand);
    }

    writeln!(out, "</svg>").unwrap();
    out
}
