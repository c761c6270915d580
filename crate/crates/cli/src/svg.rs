//! Minimal self-contained SVG plotting: axes, polylines, scatter markers
//! and a legend. No external assets; coordinates are printed with fixed
//! precision so output bytes are reproducible.

use std::fmt::Write as _;

const WIDTH: f64 = 820.0;
const HEIGHT: f64 = 620.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 170.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 55.0;

/// Fixed palette cycled by contour levels and curves.
pub const PALETTE: [&str; 12] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
    "#e377c2", "#17becf", "#bcbd22", "#7f7f7f", "#aec7e8", "#98df8a",
];

pub struct Plot {
    title: String,
    x_label: String,
    y_label: String,
    x_range: (f64, f64),
    y_range: (f64, f64),
    body: String,
    legend: Vec<(String, String)>,
    config_comment: String,
}

impl Plot {
    pub fn new(title: &str, x_label: &str, y_label: &str, x_range: (f64, f64), y_range: (f64, f64)) -> Self {
        Self {
            title: title.to_string(),
            x_label: x_label.to_string(),
            y_label: y_label.to_string(),
            x_range: pad_range(x_range),
            y_range: pad_range(y_range),
            body: String::new(),
            legend: Vec::new(),
            config_comment: String::new(),
        }
    }

    /// Embed the resolved run configuration as an XML comment.
    pub fn set_config_comment(&mut self, config: &serde_json::Value) {
        self.config_comment = config.to_string().replace("--", "- -");
    }

    fn mx(&self, x: f64) -> f64 {
        MARGIN_L + (x - self.x_range.0) / (self.x_range.1 - self.x_range.0)
            * (WIDTH - MARGIN_L - MARGIN_R)
    }

    fn my(&self, y: f64) -> f64 {
        HEIGHT - MARGIN_B
            - (y - self.y_range.0) / (self.y_range.1 - self.y_range.0)
                * (HEIGHT - MARGIN_T - MARGIN_B)
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], color: &str, width: f64) {
        if points.len() < 2 {
            return;
        }
        let coords: Vec<String> = points
            .iter()
            .map(|&(x, y)| format!("{:.3},{:.3}", self.mx(x), self.my(y)))
            .collect();
        let _ = writeln!(
            self.body,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="{:.2}"/>"#,
            coords.join(" "),
            color,
            width
        );
    }

    pub fn circle(&mut self, x: f64, y: f64, radius: f64, color: &str, filled: bool) {
        let fill = if filled { color } else { "none" };
        let _ = writeln!(
            self.body,
            r#"<circle cx="{:.3}" cy="{:.3}" r="{:.2}" fill="{}" stroke="{}" stroke-width="1.2"/>"#,
            self.mx(x),
            self.my(y),
            radius,
            fill,
            color
        );
    }

    pub fn cross(&mut self, x: f64, y: f64, size: f64, color: &str) {
        let (px, py) = (self.mx(x), self.my(y));
        let _ = writeln!(
            self.body,
            r#"<path d="M {:.3} {:.3} L {:.3} {:.3} M {:.3} {:.3} L {:.3} {:.3}" stroke="{}" stroke-width="1.4"/>"#,
            px - size, py - size, px + size, py + size,
            px - size, py + size, px + size, py - size,
            color
        );
    }

    pub fn legend_entry(&mut self, label: &str, color: &str) {
        self.legend.push((label.to_string(), color.to_string()));
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
        );
        if !self.config_comment.is_empty() {
            let _ = writeln!(out, "<!-- config: {} -->", self.config_comment);
        }
        let _ = writeln!(
            out,
            r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
        );
        let (x0, x1) = (MARGIN_L, WIDTH - MARGIN_R);
        let (y0, y1) = (HEIGHT - MARGIN_B, MARGIN_T);
        let _ = writeln!(
            out,
            r#"<rect x="{x0:.1}" y="{y1:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="#333" stroke-width="1"/>"#,
            x1 - x0,
            y0 - y1
        );
        // Ticks: five per axis.
        for i in 0..=4 {
            let t = i as f64 / 4.0;
            let xv = self.x_range.0 + t * (self.x_range.1 - self.x_range.0);
            let yv = self.y_range.0 + t * (self.y_range.1 - self.y_range.0);
            let px = self.mx(xv);
            let py = self.my(yv);
            let _ = writeln!(
                out,
                r#"<line x1="{px:.2}" y1="{y0:.1}" x2="{px:.2}" y2="{:.1}" stroke="#333"/>"#,
                y0 + 5.0
            );
            let _ = writeln!(
                out,
                r#"<text x="{px:.2}" y="{:.1}" font-size="12" text-anchor="middle" font-family="monospace">{}</text>"#,
                y0 + 20.0,
                tick_label(xv)
            );
            let _ = writeln!(
                out,
                r#"<line x1="{:.1}" y1="{py:.2}" x2="{x0:.1}" y2="{py:.2}" stroke="#333"/>"#,
                x0 - 5.0
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.1}" y="{:.2}" font-size="12" text-anchor="end" font-family="monospace">{}</text>"#,
                x0 - 8.0,
                py + 4.0,
                tick_label(yv)
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="24" font-size="15" text-anchor="middle" font-family="sans-serif">{}</text>"#,
            (x0 + x1) / 2.0,
            xml_escape(&self.title)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="13" text-anchor="middle" font-family="sans-serif">{}</text>"#,
            (x0 + x1) / 2.0,
            HEIGHT - 12.0,
            xml_escape(&self.x_label)
        );
        let _ = writeln!(
            out,
            r#"<text x="18" y="{:.1}" font-size="13" text-anchor="middle" font-family="sans-serif" transform="rotate(-90 18 {:.1})">{}</text>"#,
            (y0 + y1) / 2.0,
            (y0 + y1) / 2.0,
            xml_escape(&self.y_label)
        );
        out.push_str(&self.body);
        for (i, (label, color)) in self.legend.iter().enumerate() {
            let ly = MARGIN_T + 14.0 + 18.0 * i as f64;
            let lx = WIDTH - MARGIN_R + 14.0;
            let _ = writeln!(
                out,
                r#"<line x1="{lx:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="2"/>"#,
                lx + 22.0
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.1}" y="{:.1}" font-size="12" font-family="monospace">{}</text>"#,
                lx + 28.0,
                ly + 4.0,
                xml_escape(label)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

fn pad_range((lo, hi): (f64, f64)) -> (f64, f64) {
    if lo < hi {
        (lo, hi)
    } else {
        (lo - 0.5, lo + 0.5)
    }
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if a >= 0.01 && a < 10000.0 {
        format!("{v:.3}")
    } else {
        format!("{v:.2e}")
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_self_contained_document() {
        let mut plot = Plot::new("title", "x", "y", (0.0, 1.0), (0.0, 2.0));
        plot.polyline(&[(0.0, 0.0), (1.0, 2.0)], PALETTE[0], 1.5);
        plot.circle(0.5, 1.0, 3.0, PALETTE[1], true);
        plot.cross(0.25, 0.5, 3.0, PALETTE[2]);
        plot.legend_entry("data", PALETTE[0]);
        plot.set_config_comment(&serde_json::json!({"N": 4}));
        let svg = plot.render();
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("<svg xmlns"));
        assert!(svg.ends_with("</svg>\n"));
        assert!(svg.contains("config:"));
        assert!(!svg.contains("http://")
            || svg.matches("http://www.w3.org/2000/svg").count() == svg.matches("http://").count());
    }

    #[test]
    fn deterministic_bytes() {
        let build = || {
            let mut p = Plot::new("t", "x", "y", (0.0, 1.0), (0.0, 1.0));
            p.polyline(&[(0.1, 0.9), (0.7, 0.3)], PALETTE[3], 1.0);
            p.render()
        };
        assert_eq!(build(), build());
    }
}
