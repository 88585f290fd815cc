//! SVG 1.1 drawings of bodies and witnesses. Output depends only on the scene.

use std::fmt::Write as _;

use carousel_core::carousel::Triangle;
use carousel_core::convex_kernel::{ConvexBody, DirectedLine, Point};

const SIZE: f64 = 640.0;
const PAD: f64 = 24.0;
const BOUNDARY_POINTS: usize = 360;
const PALETTE: [&str; 4] = ["#1f5fa8", "#c0392b", "#2e8b57", "#8e44ad"];

#[derive(Debug, Clone, Default)]
pub struct Scene {
    pub bodies: Vec<(String, ConvexBody)>,
    pub triangle: Option<Triangle>,
    /// Dashed outlines, e.g. the hulls tested by the carousel check.
    pub outlines: Vec<ConvexBody>,
    pub lines: Vec<(String, DirectedLine)>,
    pub points: Vec<(String, Point)>,
}

struct View {
    min: Point,
    max: Point,
    scale: f64,
}

impl View {
    fn new(pts: impl Iterator<Item = Point>) -> Self {
        let (mut min, mut max) = (Point::new(f64::MAX, f64::MAX), Point::new(f64::MIN, f64::MIN));
        for q in pts.filter(|q| q.is_finite()) {
            min = Point::new(min.x.min(q.x), min.y.min(q.y));
            max = Point::new(max.x.max(q.x), max.y.max(q.y));
        }
        if min.x > max.x {
            min = Point::new(-1.0, -1.0);
            max = Point::new(1.0, 1.0);
        }
        let span = (max.x - min.x).max(max.y - min.y).max(1e-9);
        let margin = 0.08 * span;
        min = min - Point::new(margin, margin);
        max += Point::new(margin, margin);
        Self { min, max, scale: (SIZE - 2.0 * PAD) / (span + 2.0 * margin) }
    }

    fn map(&self, q: Point) -> (String, String) {
        let x = PAD + (q.x - self.min.x) * self.scale;
        let y = PAD + (self.max.y - q.y) * self.scale;
        (num(x), num(y))
    }

    fn span(&self) -> f64 {
        (self.max.x - self.min.x).max(self.max.y - self.min.y)
    }
}

/// Two decimals with negative zero folded.
fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn outline(k: &ConvexBody) -> Vec<Point> {
    match k.vertices() {
        Some(v) => v.to_vec(),
        None => k.boundary_polyline(BOUNDARY_POINTS),
    }
}

fn polygon(out: &mut String, v: &View, pts: &[Point], style: &str) {
    let coords: Vec<String> = pts
        .iter()
        .map(|&q| {
            let (x, y) = v.map(q);
            format!("{x},{y}")
        })
        .collect();
    let _ = writeln!(out, "  <polygon points=\"{}\" {style}/>", coords.join(" "));
}

pub fn render_svg(scene: &Scene) -> String {
    let mut all: Vec<Point> = Vec::new();
    let outlines: Vec<Vec<Point>> = scene.bodies.iter().map(|(_, k)| outline(k)).collect();
    all.extend(outlines.iter().flatten());
    if let Some(t) = &scene.triangle {
        all.extend(t.a);
    }
    all.extend(scene.points.iter().map(|p| p.1));
    let v = View::new(all.into_iter());

    let mut out = String::new();
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(out, "  <!-- geom {} -->", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "  <rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>");
    let _ = writeln!(out, "  <clipPath id=\"frame\"><rect width=\"{SIZE}\" height=\"{SIZE}\"/></clipPath>");

    if let Some(t) = &scene.triangle {
        polygon(&mut out, &v, &t.a, "class=\"triangle\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"");
        for (i, &a) in t.a.iter().enumerate() {
            let (x, y) = v.map(a);
            let _ = writeln!(out, "  <text x=\"{x}\" y=\"{y}\" dx=\"4\" dy=\"-4\" font-size=\"13\">A{i}</text>");
        }
    }
    for k in &scene.outlines {
        polygon(
            &mut out,
            &v,
            &outline(k),
            "class=\"hull\" fill=\"none\" stroke=\"#777777\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\"",
        );
    }
    for (i, ((name, _), pts)) in scene.bodies.iter().zip(&outlines).enumerate() {
        let c = PALETTE[i % PALETTE.len()];
        polygon(
            &mut out,
            &v,
            pts,
            &format!("class=\"body\" fill=\"{c}\" fill-opacity=\"0.15\" stroke=\"{c}\" stroke-width=\"1.5\""),
        );
        if let Some(&top) = pts.iter().max_by(|a, b| a.y.total_cmp(&b.y).then(b.x.total_cmp(&a.x))) {
            let (x, y) = v.map(top);
            let _ = writeln!(
                out,
                "  <text x=\"{x}\" y=\"{y}\" dy=\"-6\" font-size=\"13\" fill=\"{c}\">{}</text>",
                escape(name)
            );
        }
    }
    let reach = 3.0 * v.span();
    for (name, l) in &scene.lines {
        let (a, b) = (l.point_at(-reach), l.point_at(reach));
        let ((x1, y1), (x2, y2)) = (v.map(a), v.map(b));
        let _ = writeln!(
            out,
            "  <line class=\"tangent\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"black\" stroke-width=\"1\" clip-path=\"url(#frame)\"/>"
        );
        let (x, y) = v.map(l.anchor);
        let _ =
            writeln!(out, "  <text x=\"{x}\" y=\"{y}\" dx=\"6\" dy=\"14\" font-size=\"12\">{}</text>", escape(name));
    }
    for (name, q) in &scene.points {
        let (x, y) = v.map(*q);
        let _ = writeln!(out, "  <circle class=\"point\" cx=\"{x}\" cy=\"{y}\" r=\"3\" fill=\"black\"/>");
        let _ =
            writeln!(out, "  <text x=\"{x}\" y=\"{y}\" dx=\"5\" dy=\"-5\" font-size=\"12\">{}</text>", escape(name));
    }
    out.push_str("</svg>\n");
    out
}
