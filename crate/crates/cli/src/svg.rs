//! Minimal self-contained SVG line and arrow plots (800 x 600).

use std::fmt::Write as _;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;

#[derive(Debug, Clone, Default)]
pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub polylines: Vec<Vec<(f64, f64)>>,
    /// (tail, vector) in data units.
    pub arrows: Vec<((f64, f64), (f64, f64))>,
    pub vlines: Vec<f64>,
    pub hlines: Vec<f64>,
    /// Values above this are drawn at the clamp.
    pub y_clamp: Option<f64>,
}

struct Axes {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Axes {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn span(lo: f64, hi: f64) -> (f64, f64) {
    if !(lo.is_finite() && hi.is_finite()) {
        return (0.0, 1.0);
    }
    if hi > lo {
        let pad = 0.03 * (hi - lo);
        (lo - pad, hi + pad)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

fn tick_label(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

impl Plot {
    fn clamp_y(&self, y: f64) -> f64 {
        match self.y_clamp {
            Some(c) if y > c => c,
            _ => y,
        }
    }

    fn axes(&self) -> Axes {
        let mut xs: Vec<f64> = Vec::new();
        let mut ys: Vec<f64> = Vec::new();
        for line in &self.polylines {
            for &(x, y) in line {
                xs.push(x);
                ys.push(self.clamp_y(y));
            }
        }
        for &((x, y), (dx, dy)) in &self.arrows {
            xs.extend([x, x + dx]);
            ys.extend([y, y + dy]);
        }
        xs.extend(&self.vlines);
        ys.extend(&self.hlines);
        let fold = |v: &[f64]| v.iter().filter(|a| a.is_finite()).fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &c| (a.min(c), b.max(c)));
        let (x0, x1) = span(fold(&xs).0, fold(&xs).1);
        let (y0, y1) = span(fold(&ys).0, fold(&ys).1);
        Axes { x0, x1, y0, y1 }
    }

    pub fn render(&self) -> String {
        let ax = self.axes();
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
        );
        let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="30" text-anchor="middle" font-family="sans-serif" font-size="18">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        );

        // frame and ticks
        let (l, r, t, b) = (LEFT, WIDTH - RIGHT, TOP, HEIGHT - BOTTOM);
        let _ = writeln!(s, r#"<g id="axes" stroke="black" fill="none"><rect x="{l}" y="{t}" width="{}" height="{}"/></g>"#, r - l, b - t);
        let _ = writeln!(s, r#"<g id="ticks" font-family="sans-serif" font-size="12" fill="black">"#);
        for i in 0..=5 {
            let f = i as f64 / 5.0;
            let xv = ax.x0 + f * (ax.x1 - ax.x0);
            let yv = ax.y0 + f * (ax.y1 - ax.y0);
            let (px, py) = (ax.px(xv), ax.py(yv));
            let _ = writeln!(s, r#"<line x1="{px:.2}" y1="{b}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#, b + 5.0);
            let _ = writeln!(s, r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, b + 20.0, tick_label(xv));
            let _ = writeln!(s, r#"<line x1="{:.2}" y1="{py:.2}" x2="{l}" y2="{py:.2}" stroke="black"/>"#, l - 5.0);
            let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, l - 8.0, py + 4.0, tick_label(yv));
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
            (l + r) / 2.0,
            HEIGHT - 15.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="20" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="14" transform="rotate(-90 20 {:.2})">{}</text>"#,
            (t + b) / 2.0,
            (t + b) / 2.0,
            escape(&self.y_label)
        );

        let _ = writeln!(s, r#"<g id="asymptotes" stroke="gray" stroke-dasharray="6 4">"#);
        for &x in &self.vlines {
            let _ = writeln!(s, r#"<line x1="{0:.2}" y1="{t}" x2="{0:.2}" y2="{b}"/>"#, ax.px(x));
        }
        for &y in &self.hlines {
            let _ = writeln!(s, r#"<line x1="{l}" y1="{0:.2}" x2="{r}" y2="{0:.2}"/>"#, ax.py(y));
        }
        let _ = writeln!(s, "</g>");

        for line in &self.polylines {
            let pts: Vec<String> = line
                .iter()
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .map(|&(x, y)| format!("{:.2},{:.2}", ax.px(x), ax.py(self.clamp_y(y))))
                .collect();
            let _ = writeln!(s, r#"<polyline fill="none" stroke="steelblue" stroke-width="2" points="{}"/>"#, pts.join(" "));
        }

        if !self.arrows.is_empty() {
            let _ = writeln!(s, r#"<g id="arrows" stroke="darkred" stroke-width="1">"#);
            for &((x, y), (dx, dy)) in &self.arrows {
                let (x1, y1) = (ax.px(x), ax.py(y));
                let (x2, y2) = (ax.px(x + dx), ax.py(y + dy));
                let _ = writeln!(s, r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#);
                let len = ((x2 - x1).powi(2) + (y2 - y1).powi(2)).sqrt();
                if len > 1e-9 {
                    let (ux, uy) = ((x2 - x1) / len, (y2 - y1) / len);
                    let head = 4.0f64.min(0.5 * len);
                    let (hx, hy) = (x2 - head * ux, y2 - head * uy);
                    let _ = writeln!(
                        s,
                        r#"<polygon fill="darkred" points="{x2:.2},{y2:.2} {:.2},{:.2} {:.2},{:.2}"/>"#,
                        hx - 0.5 * head * uy,
                        hy + 0.5 * head * ux,
                        hx + 0.5 * head * uy,
                        hy - 0.5 * head * ux
                    );
                }
            }
            let _ = writeln!(s, "</g>");
        }
        s.push_str("</svg>\n");
        s
    }
}
