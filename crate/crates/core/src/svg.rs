//! Deterministic SVG drawings of grids with their covering paths and trees.

use std::collections::BTreeSet;
use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::verify::{is_noncrossing, Witness};
use crate::{Grid, Point, Rational};

/// User units per coordinate unit.
pub const SCALE: f64 = 40.0;
pub const MARGIN: f64 = 20.0;

fn num(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

struct Frame {
    min_x: f64,
    max_y: f64,
}

impl Frame {
    fn x(&self, p: &Point) -> String {
        fmt(MARGIN + (num(&p.x) - self.min_x) * SCALE)
    }

    fn y(&self, p: &Point) -> String {
        fmt(MARGIN + (self.max_y - num(&p.y)) * SCALE)
    }
}

/// Grid and witness drawing; row 0 is at the bottom.
pub fn render(g: &Grid, w: &Witness, title: &str) -> String {
    let grid_points = g.points();
    let mut vertices: BTreeSet<Point> = BTreeSet::new();
    match w {
        Witness::Path(p) => vertices.extend(p.vertices().iter().cloned()),
        Witness::Set(s) => {
            for seg in &s.segments {
                vertices.insert(seg.p().clone());
                vertices.insert(seg.q().clone());
            }
        }
    }
    let all: Vec<&Point> = grid_points.iter().chain(vertices.iter()).collect();
    let min_x = all.iter().map(|p| num(&p.x)).fold(f64::INFINITY, f64::min);
    let max_x = all.iter().map(|p| num(&p.x)).fold(f64::NEG_INFINITY, f64::max);
    let min_y = all.iter().map(|p| num(&p.y)).fold(f64::INFINITY, f64::min);
    let max_y = all.iter().map(|p| num(&p.y)).fold(f64::NEG_INFINITY, f64::max);
    let f = Frame { min_x, max_y };
    let width = fmt((max_x - min_x) * SCALE + 2.0 * MARGIN);
    let height = fmt((max_y - min_y) * SCALE + 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, "  <title>{title}</title>");
    let _ = writeln!(
        out,
        "  <desc>segments={} noncrossing={}</desc>",
        w.segment_count(),
        is_noncrossing(w)
    );
    let _ = writeln!(out, r##"  <g fill="none" stroke="#1f4e9c" stroke-width="2" stroke-linejoin="round">"##);
    match w {
        Witness::Path(p) => {
            let pts: Vec<String> = p.vertices().iter().map(|v| format!("{},{}", f.x(v), f.y(v))).collect();
            let _ = writeln!(out, r#"    <polyline points="{}"/>"#, pts.join(" "));
        }
        Witness::Set(s) => {
            for seg in &s.segments {
                let (a, b) = (seg.p(), seg.q());
                let _ = writeln!(
                    out,
                    r#"    <line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                    f.x(a),
                    f.y(a),
                    f.x(b),
                    f.y(b)
                );
            }
        }
    }
    let _ = writeln!(out, "  </g>");
    let _ = writeln!(out, r#"  <g fill="black">"#);
    for p in &grid_points {
        let _ = writeln!(out, r#"    <circle cx="{}" cy="{}" r="4"/>"#, f.x(p), f.y(p));
    }
    let _ = writeln!(out, "  </g>");
    let grid_set: BTreeSet<&Point> = grid_points.iter().collect();
    let steiner: Vec<&Point> = vertices.iter().filter(|v| !grid_set.contains(v)).collect();
    if !steiner.is_empty() {
        let _ = writeln!(out, r##"  <g class="steiner" fill="white" stroke="#c0392b" stroke-width="2">"##);
        for p in steiner {
            let _ = writeln!(out, r#"    <circle cx="{}" cy="{}" r="5"/>"#, f.x(p), f.y(p));
        }
        let _ = writeln!(out, "  </g>");
    }
    out.push_str("</svg>\n");
    out
}
