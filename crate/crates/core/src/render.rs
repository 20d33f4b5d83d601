//! Deterministic SVG pictures of arc systems.
//!
//! `l` is drawn horizontally with the punctures evenly spaced. Crossings are
//! spread evenly inside their interval, and crossings of the interval through
//! infinity go to the right of the last puncture. Every excursion is a
//! semicircle on its side of `l`. Chords of one hemisphere never interleave,
//! so neither do their semicircles.

use std::fmt::Write;

use crate::arcs::{ArcSystem, Hemisphere};

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

#[derive(Clone, Debug)]
pub struct RenderOptions {
    /// Distance between consecutive punctures, in pixels.
    pub unit: f64,
    pub margin: f64,
    pub title: Option<String>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            unit: 120.0,
            margin: 40.0,
            title: None,
        }
    }
}

/// Horizontal position of every point, relative to `p_1` at 0.
fn offsets(arcs: &ArcSystem) -> Vec<f64> {
    let counts = arcs.crossing_counts();
    let mut interval = 0;
    let mut rank = 0;
    arcs.points
        .iter()
        .map(|p| {
            if p.is_puncture() {
                interval = p.puncture as usize;
                rank = 0;
                interval as f64
            } else {
                rank += 1;
                interval as f64 + rank as f64 / (counts[interval] + 1) as f64
            }
        })
        .collect()
}

fn stroke(label: usize) -> String {
    let color = PALETTE[(label - 1) % PALETTE.len()];
    if label > PALETTE.len() {
        format!("stroke=\"{color}\" stroke-dasharray=\"6 3\"")
    } else {
        format!("stroke=\"{color}\"")
    }
}

pub fn render_svg(arcs: &ArcSystem, options: &RenderOptions) -> String {
    let n = arcs.n();
    let unit = options.unit;
    let m = options.margin;
    let xs: Vec<f64> = offsets(arcs).iter().map(|x| m + x * unit).collect();
    let reach = |h: Hemisphere| {
        arcs.chords(h)
            .iter()
            .map(|&(a, b)| (xs[b] - xs[a]) / 2.0)
            .fold(0.0f64, f64::max)
    };
    let above = reach(Hemisphere::Upper).max(unit / 2.0);
    let below = reach(Hemisphere::Lower).max(unit / 2.0);
    let title_room = if options.title.is_some() { 24.0 } else { 0.0 };
    let axis = m + title_room + above;
    let width = 2.0 * m + 2.0 * n as f64 * unit;
    let height = axis + below + m;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.3}\" height=\"{height:.3}\" viewBox=\"0 0 {width:.3} {height:.3}\">"
    );
    let _ = writeln!(svg, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    if let Some(title) = &options.title {
        let _ = writeln!(
            svg,
            "<text x=\"{m:.3}\" y=\"{:.3}\" font-family=\"sans-serif\" font-size=\"16\">{}</text>",
            m,
            escape(title)
        );
    }
    let _ = writeln!(
        svg,
        "<line x1=\"0.000\" y1=\"{axis:.3}\" x2=\"{width:.3}\" y2=\"{axis:.3}\" stroke=\"#888888\" stroke-width=\"1\"/>"
    );

    let labels = arcs.point_labels();
    let positions = arcs.puncture_positions();
    for (k, &start) in positions.iter().enumerate() {
        let path = arcs.walk(start);
        let end = *path.last().unwrap();
        if (arcs.points[end].puncture as usize) < k {
            continue;
        }
        let mut h = arcs.leaving_hemisphere(start);
        let mut d = format!("M {:.3} {axis:.3}", xs[start]);
        for w in path.windows(2) {
            let r = (xs[w[1]] - xs[w[0]]).abs() / 2.0;
            // sweep 1 turns clockwise on screen: over the top when moving right
            let rightward = w[1] > w[0];
            let sweep = u8::from((h == Hemisphere::Upper) == rightward);
            let _ = write!(d, " A {r:.3} {r:.3} 0 0 {sweep} {:.3} {axis:.3}", xs[w[1]]);
            h = h.opposite();
        }
        let _ = writeln!(
            svg,
            "<path class=\"arc\" data-label=\"{}\" d=\"{d}\" fill=\"none\" {} stroke-width=\"2\"/>",
            labels[start],
            stroke(labels[start])
        );
    }

    for k in 0..2 * n {
        let x = xs[positions[k]];
        let _ = writeln!(
            svg,
            "<circle cx=\"{x:.3}\" cy=\"{axis:.3}\" r=\"4\" fill=\"black\"/>"
        );
        let _ = writeln!(
            svg,
            "<text x=\"{x:.3}\" y=\"{:.3}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">p{}</text>",
            axis + 16.0,
            k + 1
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
