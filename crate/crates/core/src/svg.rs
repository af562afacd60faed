//! Small deterministic SVG writers for the three artifact kinds: prime
//! scatters, triangulation/spanning-tree overlays, and moat growth charts.
//! All numbers are formatted with fixed precision so reruns are
//! byte-identical.

use std::fmt::Write;

use crate::delaunay::WeightedEdge;
use crate::field::QuadField;
use crate::sector::{PrimePoint, ScaledPoint};

const W: f64 = 860.0;
const H: f64 = 860.0;
const MARGIN: f64 = 50.0;

const PALETTE: [&str; 9] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
    "#bcbd22",
];

struct Frame {
    min_x: f64,
    min_y: f64,
    scale: f64,
    height: f64,
}

impl Frame {
    fn fit(xs: impl Iterator<Item = (f64, f64)>) -> Frame {
        let mut min_x = f64::INFINITY;
        let mut max_x = f64::NEG_INFINITY;
        let mut min_y = f64::INFINITY;
        let mut max_y = f64::NEG_INFINITY;
        for (x, y) in xs {
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
        if !min_x.is_finite() {
            (min_x, max_x, min_y, max_y) = (0.0, 1.0, 0.0, 1.0);
        }
        let span_x = (max_x - min_x).max(1e-9);
        let span_y = (max_y - min_y).max(1e-9);
        let scale = ((W - 2.0 * MARGIN) / span_x).min((H - 2.0 * MARGIN) / span_y);
        Frame {
            min_x,
            min_y,
            scale,
            height: H,
        }
    }

    fn x(&self, x: f64) -> f64 {
        MARGIN + (x - self.min_x) * self.scale
    }

    /// SVG y grows downward; flip.
    fn y(&self, y: f64) -> f64 {
        self.height - MARGIN - (y - self.min_y) * self.scale
    }
}

fn open_svg(out: &mut String, comment: &str) {
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">"
    );
    if !comment.is_empty() {
        let _ = writeln!(out, "<!-- {} -->", comment.replace("--", "- -"));
    }
    let _ = writeln!(
        out,
        "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>"
    );
}

fn label(out: &mut String, x: f64, y: f64, size: u32, text: &str) {
    let _ = writeln!(
        out,
        "<text x=\"{x:.1}\" y=\"{y:.1}\" font-family=\"monospace\" font-size=\"{size}\">{text}</text>"
    );
}

/// Scatter of sector primes in true coordinates; canonical representatives
/// are darker than mirror copies.
pub fn prime_scatter(field: QuadField, pts: &[PrimePoint], comment: &str) -> String {
    let coords: Vec<(f64, f64)> = pts.iter().map(|p| p.point.xy(field)).collect();
    let frame = Frame::fit(coords.iter().copied());
    let mut out = String::new();
    open_svg(&mut out, comment);
    // axes through the origin, when visible
    let _ = writeln!(
        out,
        "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#cccccc\"/>",
        frame.x(frame.min_x),
        frame.y(0.0),
        W - MARGIN / 2.0,
        frame.y(0.0)
    );
    let _ = writeln!(
        out,
        "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#cccccc\"/>",
        frame.x(0.0),
        MARGIN / 2.0,
        frame.x(0.0),
        frame.y(frame.min_y)
    );
    let r = if pts.len() > 20_000 { 1.0 } else { 2.0 };
    for (p, (x, y)) in pts.iter().zip(&coords) {
        let fill = if p.primary { "#1f77b4" } else { "#aec7e8" };
        let _ = writeln!(
            out,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{r}\" fill=\"{fill}\"/>",
            frame.x(*x),
            frame.y(*y)
        );
    }
    label(
        &mut out,
        MARGIN,
        H - 12.0,
        14,
        &format!("{} sector primes, n={}", field, pts.len()),
    );
    out.push_str("</svg>\n");
    out
}

/// Triangulation edges in light gray with the spanning tree drawn on top.
pub fn triangulation_figure(
    field: QuadField,
    points: &[ScaledPoint],
    edges: &[WeightedEdge],
    tree: &[WeightedEdge],
    comment: &str,
) -> String {
    let coords: Vec<(f64, f64)> = points.iter().map(|p| p.xy(field)).collect();
    let frame = Frame::fit(coords.iter().copied());
    let mut out = String::new();
    open_svg(&mut out, comment);
    let path = |set: &[WeightedEdge], style: &str, out: &mut String| {
        for e in set {
            let (x1, y1) = coords[e.i as usize];
            let (x2, y2) = coords[e.j as usize];
            let _ = writeln!(
                out,
                "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" {style}/>",
                frame.x(x1),
                frame.y(y1),
                frame.x(x2),
                frame.y(y2)
            );
        }
    };
    path(edges, "stroke=\"#dddddd\" stroke-width=\"0.6\"", &mut out);
    path(tree, "stroke=\"#d62728\" stroke-width=\"1.4\"", &mut out);
    for (x, y) in &coords {
        let _ = writeln!(
            out,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"1.6\" fill=\"#1f77b4\"/>",
            frame.x(*x),
            frame.y(*y)
        );
    }
    label(
        &mut out,
        MARGIN,
        H - 12.0,
        14,
        &format!(
            "{}: {} points, {} edges, tree {}",
            field,
            points.len(),
            edges.len(),
            tree.len()
        ),
    );
    out.push_str("</svg>\n");
    out
}

/// One labelled line of a growth chart.
pub struct ChartSeries {
    pub label: String,
    /// (step bound k, farthest distance) pairs, ascending in k.
    pub points: Vec<(f64, f64)>,
}

/// Step chart of farthest reachable distance against the walker's bound.
pub fn moat_chart(series: &[ChartSeries], comment: &str) -> String {
    let all = series.iter().flat_map(|s| s.points.iter().copied());
    let frame = Frame::fit(all.clone().chain([(0.0, 0.0)]));
    let mut out = String::new();
    open_svg(&mut out, comment);
    // light grid with tick labels
    let (max_x, max_y) = all.fold((1.0f64, 1.0f64), |(mx, my), (x, y)| (mx.max(x), my.max(y)));
    for i in 0..=4 {
        let gx = max_x * i as f64 / 4.0;
        let gy = max_y * i as f64 / 4.0;
        let _ = writeln!(
            out,
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#eeeeee\"/>",
            frame.x(gx),
            frame.y(0.0),
            frame.x(gx),
            frame.y(max_y)
        );
        let _ = writeln!(
            out,
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#eeeeee\"/>",
            frame.x(0.0),
            frame.y(gy),
            frame.x(max_x),
            frame.y(gy)
        );
        label(&mut out, frame.x(gx) - 8.0, frame.y(0.0) + 18.0, 11, &format!("{gx:.2}"));
        label(&mut out, frame.x(0.0) - 42.0, frame.y(gy) + 4.0, 11, &format!("{gy:.1}"));
    }
    for (si, s) in series.iter().enumerate() {
        let color = PALETTE[si % PALETTE.len()];
        // staircase: distance holds until the next bound
        let mut dpath = String::new();
        for (i, (x, y)) in s.points.iter().enumerate() {
            if i == 0 {
                let _ = write!(dpath, "M {:.2} {:.2}", frame.x(*x), frame.y(*y));
            } else {
                let (_, py) = s.points[i - 1];
                let _ = write!(
                    dpath,
                    " L {:.2} {:.2} L {:.2} {:.2}",
                    frame.x(*x),
                    frame.y(py),
                    frame.x(*x),
                    frame.y(*y)
                );
            }
        }
        if !dpath.is_empty() {
            let _ = writeln!(
                out,
                "<path d=\"{dpath}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>"
            );
        }
        for (x, y) in &s.points {
            let _ = writeln!(
                out,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{color}\"/>",
                frame.x(*x),
                frame.y(*y)
            );
        }
        let ly = MARGIN + 16.0 * si as f64;
        let _ = writeln!(
            out,
            "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"10\" height=\"10\" fill=\"{color}\"/>",
            W - 180.0,
            ly - 9.0
        );
        label(&mut out, W - 164.0, ly, 12, &s.label);
    }
    label(&mut out, W / 2.0 - 60.0, H - 12.0, 13, "step bound k");
    label(&mut out, 8.0, MARGIN - 16.0, 13, "farthest distance");
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RingElement;

    #[test]
    fn scatter_is_deterministic_and_wellformed() {
        let f = QuadField::new(-1).unwrap();
        let pts: Vec<PrimePoint> = [(1i64, 1i64), (2, 1), (3, 0)]
            .iter()
            .map(|&(a, b)| {
                let e = RingElement::new(a, b);
                PrimePoint {
                    element: e,
                    point: f.embed(e),
                    norm: f.norm(e) as u64,
                    primary: true,
                }
            })
            .collect();
        let one = prime_scatter(f, &pts, "primes d=-1 boundary=3");
        let two = prime_scatter(f, &pts, "primes d=-1 boundary=3");
        assert_eq!(one, two);
        assert!(one.starts_with("<svg"));
        assert!(one.ends_with("</svg>\n"));
        assert!(one.contains("primes d=-1 boundary=3"));
        assert_eq!(one.matches("<circle").count(), 3);
    }

    #[test]
    fn chart_handles_empty_and_filled_series() {
        let empty = moat_chart(&[], "");
        assert!(empty.starts_with("<svg") && empty.ends_with("</svg>\n"));
        let s = ChartSeries {
            label: "d = -1".into(),
            points: vec![(1.0, 2.236), (1.414, 11.705), (2.0, 45.31)],
        };
        let svg = moat_chart(&[s], "");
        assert!(svg.contains("d = -1"));
        assert_eq!(svg.matches("<path").count(), 1);
    }

    #[test]
    fn comment_cannot_break_out() {
        let f = QuadField::new(-3).unwrap();
        let svg = prime_scatter(f, &[], "weird -- -->");
        assert!(!svg.contains("-- -->"));
    }
}
