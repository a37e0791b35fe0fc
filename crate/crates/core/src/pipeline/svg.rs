//! Minimal deterministic SVG charts: polylines, stems and scatter points
//! over a shared linear axis box.

use std::fmt::Write;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;

#[derive(Debug, Clone, Copy)]
pub enum Style {
    Line,
    Stem,
    Points,
}

#[derive(Debug, Clone)]
pub struct Layer {
    pub label: String,
    pub color: &'static str,
    pub style: Style,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Default)]
pub struct Chart {
    pub title: String,
    pub layers: Vec<Layer>,
    /// Dashed horizontal reference lines.
    pub hlines: Vec<f64>,
}

impl Chart {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            ..Self::default()
        }
    }

    pub fn layer(mut self, label: &str, color: &'static str, style: Style, points: Vec<(f64, f64)>) -> Self {
        self.layers.push(Layer {
            label: label.into(),
            color,
            style,
            points: points.into_iter().filter(|(x, y)| x.is_finite() && y.is_finite()).collect(),
        });
        self
    }

    pub fn hline(mut self, y: f64) -> Self {
        self.hlines.push(y);
        self
    }

    fn bounds(&self) -> (f64, f64, f64, f64) {
        let mut xs = self.layers.iter().flat_map(|l| l.points.iter().map(|p| p.0));
        let first = xs.next().unwrap_or(0.0);
        let (mut x0, mut x1) = (first, first);
        for x in xs {
            x0 = x0.min(x);
            x1 = x1.max(x);
        }
        let ys = self
            .layers
            .iter()
            .flat_map(|l| {
                let stem_base = matches!(l.style, Style::Stem).then_some(0.0);
                l.points.iter().map(|p| p.1).chain(stem_base)
            })
            .chain(self.hlines.iter().copied());
        let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
        for y in ys {
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if !y0.is_finite() {
            (y0, y1) = (0.0, 1.0);
        }
        if x1 == x0 {
            x1 = x0 + 1.0;
        }
        if y1 == y0 {
            y1 = y0 + 1.0;
        }
        (x0, x1, y0, y1)
    }

    pub fn render(&self) -> String {
        let (x0, x1, y0, y1) = self.bounds();
        let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
        let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="20" text-anchor="middle" font-size="14">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            s,
            r#"<rect x="{MARGIN}" y="{MARGIN}" width="{:.1}" height="{:.1}" fill="none" stroke="black"/>"#,
            WIDTH - 2.0 * MARGIN,
            HEIGHT - 2.0 * MARGIN
        );
        for (value, anchor_y) in [(y0, HEIGHT - MARGIN), (y1, MARGIN)] {
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
                MARGIN - 4.0,
                anchor_y + 4.0,
                tick(value)
            );
        }
        for (value, anchor_x) in [(x0, MARGIN), (x1, WIDTH - MARGIN)] {
            let _ = writeln!(
                s,
                r#"<text x="{anchor_x:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
                HEIGHT - MARGIN + 16.0,
                tick(value)
            );
        }
        for &h in &self.hlines {
            let _ = writeln!(
                s,
                r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#1f77b4" stroke-dasharray="4 3"/>"##,
                sx(x0),
                sy(h),
                sx(x1),
                sy(h)
            );
        }
        for layer in &self.layers {
            match layer.style {
                Style::Line => {
                    let pts: Vec<String> = layer
                        .points
                        .iter()
                        .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                        .collect();
                    let _ = writeln!(
                        s,
                        r#"<polyline fill="none" stroke="{}" stroke-width="1.2" points="{}"/>"#,
                        layer.color,
                        pts.join(" ")
                    );
                }
                Style::Stem => {
                    for &(x, y) in &layer.points {
                        let _ = writeln!(
                            s,
                            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-width="2"/>"#,
                            sx(x),
                            sy(0.0),
                            sx(x),
                            sy(y),
                            layer.color
                        );
                    }
                }
                Style::Points => {
                    for &(x, y) in &layer.points {
                        let _ = writeln!(
                            s,
                            r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{}"/>"#,
                            sx(x),
                            sy(y),
                            layer.color
                        );
                    }
                }
            }
        }
        for (i, layer) in self.layers.iter().enumerate() {
            let y = MARGIN + 14.0 + 14.0 * i as f64;
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{y:.1}" fill="{}">{}</text>"#,
                MARGIN + 8.0,
                layer.color,
                escape(&layer.label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn tick(v: f64) -> String {
    if v.abs() >= 1e4 || (v != 0.0 && v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else {
        format!("{v:.2}")
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
