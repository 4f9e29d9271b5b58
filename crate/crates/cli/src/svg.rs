//! Minimal hand-rolled SVG plots: polylines, dot markers, and grid
//! heatmaps inside a fixed 800x600 viewbox. Output is deterministic;
//! coordinates are rounded to hundredths and elements appear in call
//! order.

use std::fmt::Write as _;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 60.0;

/// Small rotating palette for families of lines.
pub const PALETTE: [&str; 6] = [
    "#2a6fbb", "#cc7722", "#338855", "#aa3377", "#777733", "#336677",
];

pub const LINE: &str = "#2a6fbb";
pub const MARKER: &str = "#cc3333";

/// Data-space rectangle mapped onto the drawing area.
#[derive(Clone, Copy, Debug)]
pub struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    /// Tight bounds around the points, padded so nothing sits on the
    /// border and degenerate spans still render.
    pub fn around(points: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut x0 = f64::INFINITY;
        let mut x1 = f64::NEG_INFINITY;
        let mut y0 = f64::INFINITY;
        let mut y1 = f64::NEG_INFINITY;
        for (x, y) in points {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if !(x0.is_finite() && y0.is_finite()) {
            return Self {
                x0: 0.0,
                x1: 1.0,
                y0: 0.0,
                y1: 1.0,
            };
        }
        let pad = |lo: f64, hi: f64| {
            let span = hi - lo;
            let pad = if span == 0.0 { 0.5 } else { 0.04 * span };
            (lo - pad, hi + pad)
        };
        let (x0, x1) = pad(x0, x1);
        let (y0, y1) = pad(y0, y1);
        Self { x0, x1, y0, y1 }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let px = MARGIN + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN);
        let py = HEIGHT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2.0 * MARGIN);
        (px, py)
    }
}

pub struct Plot {
    frame: Frame,
    body: String,
}

impl Plot {
    pub fn new(frame: Frame) -> Self {
        let mut body = String::new();
        let _ = writeln!(
            body,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH:.0} {HEIGHT:.0}">"#
        );
        let _ = writeln!(
            body,
            r#"<rect x="0" y="0" width="{WIDTH:.0}" height="{HEIGHT:.0}" fill="white"/>"#
        );
        let _ = writeln!(
            body,
            r##"<rect x="{m:.0}" y="{m:.0}" width="{w:.0}" height="{h:.0}" fill="none" stroke="#999999"/>"##,
            m = MARGIN,
            w = WIDTH - 2.0 * MARGIN,
            h = HEIGHT - 2.0 * MARGIN,
        );
        Self { frame, body }
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], color: &str) {
        if points.len() < 2 {
            return;
        }
        let coords: Vec<String> = points
            .iter()
            .map(|&(x, y)| {
                let (px, py) = self.frame.map(x, y);
                format!("{px:.2},{py:.2}")
            })
            .collect();
        let _ = writeln!(
            self.body,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            coords.join(" ")
        );
    }

    pub fn dots(&mut self, points: &[(f64, f64)], radius: f64, color: &str) {
        for &(x, y) in points {
            let (px, py) = self.frame.map(x, y);
            let _ = writeln!(
                self.body,
                r#"<circle cx="{px:.2}" cy="{py:.2}" r="{radius:.1}" fill="{color}"/>"#
            );
        }
    }

    /// One shaded cell per grid sample; values[i][j] belongs to the
    /// point (xs[i], ys[j]). Cells meet halfway between samples.
    pub fn heatmap(&mut self, xs: &[f64], ys: &[f64], values: &[Vec<f64>]) {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for row in values {
            for &v in row {
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        if !lo.is_finite() {
            return;
        }
        let scale = if hi > lo { hi - lo } else { 1.0 };
        let edges = |axis: &[f64]| -> Vec<f64> {
            let mut e = Vec::with_capacity(axis.len() + 1);
            e.push(axis[0] - 0.5 * (axis.get(1).copied().unwrap_or(axis[0] + 1.0) - axis[0]));
            for w in axis.windows(2) {
                e.push(0.5 * (w[0] + w[1]));
            }
            let last = axis[axis.len() - 1];
            let prev = if axis.len() > 1 { axis[axis.len() - 2] } else { last - 1.0 };
            e.push(last + 0.5 * (last - prev));
            e
        };
        let xe = edges(xs);
        let ye = edges(ys);
        for (i, row) in values.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let (px0, py0) = self.frame.map(xe[i], ye[j + 1]);
                let (px1, py1) = self.frame.map(xe[i + 1], ye[j]);
                let t = (v - lo) / scale;
                let _ = writeln!(
                    self.body,
                    r#"<rect x="{px0:.2}" y="{py0:.2}" width="{w:.2}" height="{h:.2}" fill="{}"/>"#,
                    heat_color(t),
                    w = px1 - px0,
                    h = py1 - py0,
                );
            }
        }
    }

    pub fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

/// Cold-to-warm ramp from deep blue through near-white to deep red.
fn heat_color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let lerp = |a: f64, b: f64, t: f64| a + (b - a) * t;
    let (r, g, b) = if t < 0.5 {
        let u = t / 0.5;
        (lerp(40.0, 245.0, u), lerp(70.0, 245.0, u), lerp(160.0, 235.0, u))
    } else {
        let u = (t - 0.5) / 0.5;
        (lerp(245.0, 180.0, u), lerp(245.0, 40.0, u), lerp(235.0, 50.0, u))
    };
    format!("rgb({},{},{})", r.round() as u8, g.round() as u8, b.round() as u8)
}
