//! Deterministic static SVG rendering of the geometry: the numerical-range
//! ellipse, the inscribed image ellipse, the thirteen labeled partition
//! points, per-arc orientation arrows, and (optionally) an embedded orbit.

use std::fmt::Write as _;

use nrdyn_core::embedding::{omega, z_eval};
use nrdyn_core::numrange::{coefficient_matrix, numerical_range_2x2};
use nrdyn_core::partition::{arc_table, build_partition, sign_table};
use nrdyn_core::ratmap::{iterate, ExtReal, Params};
use nrdyn_core::Result;

const WIDTH: f64 = 800.0;

/// Fixed-precision coordinate formatting keeps the byte output reproducible.
fn fmt(v: f64) -> String {
    let v = if v.abs() < 5e-4 { 0.0 } else { v };
    format!("{v:.3}")
}

struct Frame {
    scale: f64,
    x0: f64,
    y0: f64,
    height: f64,
}

impl Frame {
    /// Mathematical plane to SVG pixels, y axis flipped.
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (
            (x - self.x0) * self.scale,
            self.height - (y - self.y0) * self.scale,
        )
    }
}

pub fn render(p: &Params, x0: Option<ExtReal>, n: usize) -> Result<String> {
    let om = omega(p);
    let a2 = coefficient_matrix(p.a(), p.b());
    let range = numerical_range_2x2(&a2)?;
    let pp = build_partition(p)?;
    let arcs = arc_table(p, &pp)?;
    let signs = sign_table();

    // world window: numerical-range ellipse (major axis vertical) + margin
    let cx = range.center.re;
    let half_w = range.semi_axis_v;
    let half_h = range.semi_axis_u;
    let margin = 0.15 * half_w.max(half_h);
    let (wx0, wx1) = (cx - half_w - margin, cx + half_w + margin);
    let (wy0, wy1) = (-half_h - margin, half_h + margin);
    let scale = WIDTH / (wx1 - wx0);
    let frame = Frame {
        scale,
        x0: wx0,
        y0: wy0,
        height: (wy1 - wy0) * scale,
    };

    let mut doc = String::new();
    let _ = writeln!(
        doc,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        fmt(WIDTH),
        fmt(frame.height),
        fmt(WIDTH),
        fmt(frame.height)
    );
    let _ = writeln!(
        doc,
        "<title>a = {}, b = {}</title>",
        p.a(),
        p.b()
    );
    let _ = writeln!(doc, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");

    // numerical range W(A2): vertical major axis, so axis-aligned here
    let (ex, ey) = frame.map(cx, 0.0);
    let _ = writeln!(
        doc,
        "<ellipse cx=\"{}\" cy=\"{}\" rx=\"{}\" ry=\"{}\" fill=\"none\" stroke=\"#2b6cb0\" stroke-width=\"2\"/>",
        fmt(ex),
        fmt(ey),
        fmt(range.semi_axis_v * scale),
        fmt(range.semi_axis_u * scale)
    );

    // image ellipse Omega, inscribed and tangent at the vertical vertices
    let (ox, oy) = frame.map(om.center_x, 0.0);
    let _ = writeln!(
        doc,
        "<ellipse cx=\"{}\" cy=\"{}\" rx=\"{}\" ry=\"{}\" fill=\"none\" stroke=\"#c05621\" stroke-width=\"2\"/>",
        fmt(ox),
        fmt(oy),
        fmt(om.rx * scale),
        fmt(om.ry * scale)
    );

    // orientation arrows at arc midpoints
    for i in 0..14 {
        let (start, span) = arcs[i];
        let t = start + 0.5 * span;
        let w = om.point(t);
        // CCW tangent direction in the plane, flipped by the sign table
        let dir = signs[i] as f64;
        let (tx, ty) = (-om.rx * t.sin() * dir, om.ry * t.cos() * dir);
        let norm = (tx * tx + ty * ty).sqrt().max(1e-12);
        let (ux, uy) = (tx / norm, ty / norm);
        let tip = frame.map(w.re + 0.06 * ux * half_h, w.im + 0.06 * uy * half_h);
        let left = frame.map(
            w.re - 0.03 * ux * half_h - 0.025 * uy * half_h,
            w.im - 0.03 * uy * half_h + 0.025 * ux * half_h,
        );
        let right = frame.map(
            w.re - 0.03 * ux * half_h + 0.025 * uy * half_h,
            w.im - 0.03 * uy * half_h - 0.025 * ux * half_h,
        );
        let _ = writeln!(
            doc,
            "<polygon points=\"{},{} {},{} {},{}\" fill=\"#c05621\"/>",
            fmt(tip.0),
            fmt(tip.1),
            fmt(left.0),
            fmt(left.1),
            fmt(right.0),
            fmt(right.1)
        );
    }

    // vertex markers: z(inf) = (1, 0) and z(+-sqrt(b)) = (-b, 0)
    for (x, label) in [(1.0, "z(inf)"), (-p.b(), "z(pole)")] {
        let (px, py) = frame.map(x, 0.0);
        let _ = writeln!(
            doc,
            "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"#2f855a\"/>",
            fmt(px),
            fmt(py)
        );
        let _ = writeln!(
            doc,
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"#2f855a\">{}</text>",
            fmt(px + 6.0),
            fmt(py - 6.0),
            label
        );
    }

    // the thirteen labeled partition-point images S1..S13
    for i in 1..=13usize {
        let s = pp.s(i);
        let (px, py) = frame.map(s.re, s.im);
        let _ = writeln!(
            doc,
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#1a202c\"/>",
            fmt(px),
            fmt(py)
        );
        let _ = writeln!(
            doc,
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"#1a202c\">S{}</text>",
            fmt(px + 5.0),
            fmt(py + 4.0),
            i
        );
    }

    // optional embedded orbit polyline
    if let Some(x0) = x0 {
        let orbit = iterate(p, x0, n);
        let mut points = String::new();
        for &x in &orbit.points {
            let w = z_eval(p, x);
            let (px, py) = frame.map(w.re, w.im);
            let _ = write!(points, "{},{} ", fmt(px), fmt(py));
        }
        let _ = writeln!(
            doc,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"#805ad5\" stroke-width=\"1\"/>",
            points.trim_end()
        );
    }

    doc.push_str("</svg>\n");
    Ok(doc)
}
