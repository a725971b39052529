//! SVG panels for one- and two-dimensional decompositions: the weighted
//! polytope first, then one panel per term clipped to a window around it.

use std::fmt::Write;

use gramcal_core::exact::int;
use gramcal_core::{AffineForm, Indicator, Poly, Rational};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::decompose::Decomposition;
use crate::error::{input, Result};

const PANEL_W: f64 = 220.0;
const PANEL_H: f64 = 240.0;
const PLOT: f64 = 180.0;
const COLUMNS: usize = 4;

/// The clipping window: bounding box of the polytope grown by one unit.
fn window(d: &Decomposition) -> Result<Vec<(Rational, Rational)>> {
    let vertices = d.wp.polyhedron.vertices()?;
    (0..d.wp.dim())
        .map(|k| {
            let coords = vertices.iter().map(|v| &v.point[k]);
            let lo = coords
                .clone()
                .min()
                .ok_or_else(|| input("polytope has no vertices"))?;
            let hi = coords.max().expect("nonempty");
            Ok((lo - int(1), hi + int(1)))
        })
        .collect()
}

fn window_forms(win: &[(Rational, Rational)]) -> Vec<AffineForm> {
    let dim = win.len();
    let mut out = Vec::new();
    for (k, (lo, hi)) in win.iter().enumerate() {
        let unit = AffineForm::coordinate(dim, k);
        out.push(unit.shifted(&-lo.clone()));
        out.push((-&unit).shifted(hi));
    }
    out
}

/// Vertices of `body ∩ window` (exact), in no particular order.
fn clipped_vertices(body: &Indicator, win: &[(Rational, Rational)]) -> Vec<Vec<Rational>> {
    let mut forms = body.halfspaces.clone();
    forms.extend(window_forms(win));
    let inside = |x: &[Rational]| forms.iter().all(|f| !f.eval(x).is_negative());
    let mut pts: Vec<Vec<Rational>> = Vec::new();
    let mut push = |x: Vec<Rational>| {
        if inside(&x) && !pts.contains(&x) {
            pts.push(x);
        }
    };
    match win.len() {
        1 => {
            for f in &forms {
                push(vec![-&f.offset / &f.normal[0]]);
            }
        }
        _ => {
            for (i, f) in forms.iter().enumerate() {
                for g in &forms[i + 1..] {
                    let det = &f.normal[0] * &g.normal[1] - &f.normal[1] * &g.normal[0];
                    if det.is_zero() {
                        continue;
                    }
                    let x = (&f.normal[1] * &g.offset - &g.normal[1] * &f.offset) / &det;
                    let y = (&g.normal[0] * &f.offset - &f.normal[0] * &g.offset) / &det;
                    push(vec![x, y]);
                }
            }
        }
    }
    pts
}

struct Frame {
    x0: f64,
    y0: f64,
    lo: Vec<f64>,
    scale: Vec<f64>,
}

impl Frame {
    fn map(&self, p: &[Rational]) -> (f64, f64) {
        let fx = p[0].to_f64().unwrap_or(0.0);
        let x = self.x0 + (fx - self.lo[0]) * self.scale[0];
        let y = match p.get(1) {
            Some(py) => self.y0 + PLOT - (py.to_f64().unwrap_or(0.0) - self.lo[1]) * self.scale[1],
            None => self.y0 + PLOT / 2.0,
        };
        (x, y)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn coeff_label(c: &Poly) -> String {
    if c.is_one() {
        "+1".into()
    } else if (-c).is_one() {
        "\u{2212}1".into()
    } else {
        format!("({c}) \u{00d7}")
    }
}

/// Sorts the vertices of a convex polygon counter-clockwise (display only).
fn around_centroid(pts: &mut [(f64, f64)]) {
    let n = pts.len() as f64;
    let cx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let cy = pts.iter().map(|p| p.1).sum::<f64>() / n;
    pts.sort_by(|a, b| {
        let ta = (a.1 - cy).atan2(a.0 - cx);
        let tb = (b.1 - cy).atan2(b.0 - cx);
        ta.total_cmp(&tb)
    });
}

fn extremes(pts: &[Vec<Rational>]) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let lo = pts.iter().min()?.clone();
    let hi = pts.iter().max()?.clone();
    Some((lo, hi))
}

fn collinear(pts: &[Vec<Rational>]) -> bool {
    if pts.len() < 3 || pts[0].len() < 2 {
        return true;
    }
    let (a, b) = (&pts[0], &pts[1]);
    pts[2..].iter().all(|c| {
        let cross = (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0]);
        cross.is_zero()
    })
}

fn draw_body(svg: &mut String, frame: &Frame, body: &Indicator, win: &[(Rational, Rational)]) {
    let pts = clipped_vertices(body, win);
    if pts.is_empty() {
        return;
    }
    if collinear(&pts) {
        let (a, b) = extremes(&pts).expect("nonempty");
        let (ax, ay) = frame.map(&a);
        let (bx, by) = frame.map(&b);
        if a == b {
            let _ = writeln!(
                svg,
                r##"<circle cx="{ax:.2}" cy="{ay:.2}" r="4" fill="#3182bd"/>"##
            );
        } else {
            let _ = writeln!(
                svg,
                r##"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="#3182bd" stroke-width="5"/>"##
            );
        }
    } else {
        let mut mapped: Vec<(f64, f64)> = pts.iter().map(|p| frame.map(p)).collect();
        around_centroid(&mut mapped);
        let path: Vec<String> = mapped.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            svg,
            r##"<polygon points="{}" fill="#9ecae1" fill-opacity="0.7" stroke="none"/>"##,
            path.join(" ")
        );
    }
    // Facet strokes with their weights.
    for (form, w) in body.halfspaces.iter().zip(&body.weights) {
        let on: Vec<Vec<Rational>> = pts.iter().filter(|p| form.eval(p).is_zero()).cloned().collect();
        let Some((a, b)) = extremes(&on) else { continue };
        let (ax, ay) = frame.map(&a);
        let (bx, by) = frame.map(&b);
        if a != b {
            let _ = writeln!(
                svg,
                r##"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="#08519c" stroke-width="2"/>"##
            );
        } else {
            let _ = writeln!(
                svg,
                r##"<circle cx="{ax:.2}" cy="{ay:.2}" r="3" fill="#08519c"/>"##
            );
        }
        if !w.is_one() {
            let (mx, my) = ((ax + bx) / 2.0, (ay + by) / 2.0 - 6.0);
            let _ = writeln!(
                svg,
                r##"<text x="{mx:.2}" y="{my:.2}" font-size="11" fill="#a50f15" text-anchor="middle">{}</text>"##,
                escape(&w.to_string())
            );
        }
    }
}

fn panel(svg: &mut String, index: usize, title: &str, body: &Indicator, win: &[(Rational, Rational)]) {
    let col = index % COLUMNS;
    let row = index / COLUMNS;
    let (px, py) = (col as f64 * PANEL_W, row as f64 * PANEL_H);
    let frame = Frame {
        x0: px + (PANEL_W - PLOT) / 2.0,
        y0: py + 40.0,
        lo: win.iter().map(|(a, _)| a.to_f64().unwrap_or(0.0)).collect(),
        scale: win
            .iter()
            .map(|(a, b)| PLOT / (b - a).to_f64().unwrap_or(1.0).max(f64::MIN_POSITIVE))
            .collect(),
    };
    let _ = writeln!(svg, r#"<g class="panel" id="panel-{index}">"#);
    let height = if win.len() == 1 { 12.0 } else { PLOT };
    let top = if win.len() == 1 {
        frame.y0 + PLOT / 2.0 - 6.0
    } else {
        frame.y0
    };
    let _ = writeln!(
        svg,
        r##"<rect x="{:.2}" y="{top:.2}" width="{PLOT:.2}" height="{height:.2}" fill="none" stroke="#bdbdbd"/>"##,
        frame.x0
    );
    if win.len() == 1 {
        let y = frame.y0 + PLOT / 2.0;
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#d9d9d9"/>"##,
            frame.x0,
            frame.x0 + PLOT
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle">{}</text>"#,
        px + PANEL_W / 2.0,
        py + 24.0,
        escape(title)
    );
    draw_body(svg, &frame, body, win);
    let _ = writeln!(svg, "</g>");
}

/// SVG 1.1 document with `terms + 1` panels.
pub fn render_svg(d: &Decomposition) -> Result<String> {
    let dim = d.wp.dim();
    if dim > 2 {
        return Err(input(format!(
            "cannot render a {dim}-dimensional polytope; only dimensions 1 and 2 are drawn (projections are out of scope)"
        )));
    }
    let win = window(d)?;
    let panels = d.sum.len() + 1;
    let cols = panels.min(COLUMNS);
    let rows = panels.div_ceil(COLUMNS);
    let (w, h) = (cols as f64 * PANEL_W, rows as f64 * PANEL_H);
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif">"#
    );
    let _ = writeln!(svg, "<title>{} decomposition</title>", d.mode);
    panel(&mut svg, 0, "weighted polytope", &d.wp.indicator(), &win);
    for (k, t) in d.sum.terms().iter().enumerate() {
        let mut title = coeff_label(&t.coeff);
        if let Some(info) = d.info.get(k) {
            if let Some(f) = info.flips {
                title += &format!(", {f} flipped");
            }
            if let Some(p) = info.part {
                title += &format!(", {p}");
            }
        }
        panel(&mut svg, k + 1, &title, &t.body, &win);
    }
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}
