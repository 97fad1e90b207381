//! Minimal SVG 1.1 plots: axes, polylines and a heat map.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 130.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 55.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// One curve; `None` entries break the line.
pub struct Series {
    pub label: String,
    pub points: Vec<Option<(f64, f64)>>,
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    if !(lo.is_finite() && hi.is_finite()) {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        return (lo - 0.5, hi + 0.5);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn header(out: &mut String, title: &str) {
    let _ = write!(
        out,
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    );
}

fn axes(out: &mut String, f: &Frame, xlabel: &str, ylabel: &str) {
    let (x0, x1, y0, y1) = (LEFT, WIDTH - RIGHT, TOP, HEIGHT - BOTTOM);
    let _ = writeln!(
        out,
        "<rect x=\"{x0}\" y=\"{y0}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>",
        x1 - x0,
        y1 - y0
    );
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let xv = f.x.0 + t * (f.x.1 - f.x.0);
        let yv = f.y.0 + t * (f.y.1 - f.y.0);
        let (px, py) = (f.px(xv), f.py(yv));
        let _ = writeln!(
            out,
            "<line x1=\"{px:.2}\" y1=\"{y1}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\
             <text x=\"{px:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{xv:.3}</text>",
            y1 + 5.0,
            y1 + 18.0
        );
        let _ = writeln!(
            out,
            "<line x1=\"{x0}\" y1=\"{py:.2}\" x2=\"{:.2}\" y2=\"{py:.2}\" stroke=\"black\"/>\
             <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{yv:.3}</text>",
            x0 - 5.0,
            x0 - 8.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
        0.5 * (x0 + x1),
        HEIGHT - 12.0,
        escape(xlabel)
    );
    let _ = writeln!(
        out,
        "<text x=\"16\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2})\">{}</text>",
        0.5 * (y0 + y1),
        0.5 * (y0 + y1),
        escape(ylabel)
    );
}

pub fn line_plot(title: &str, xlabel: &str, ylabel: &str, series: &[Series]) -> String {
    let finite = || series.iter().flat_map(|s| s.points.iter().flatten());
    let fold = |f: fn(&(f64, f64)) -> f64| {
        finite()
            .map(f)
            .filter(|v| v.is_finite())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            })
    };
    let (xl, xh) = fold(|p| p.0);
    let (yl, yh) = fold(|p| p.1);
    let frame = Frame {
        x: padded(xl, xh),
        y: padded(yl, yh),
    };
    let mut out = String::new();
    header(&mut out, title);
    axes(&mut out, &frame, xlabel, ylabel);
    for (i, s) in series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        for run in s
            .points
            .split(|p| p.is_none_or(|(x, y)| !(x.is_finite() && y.is_finite())))
        {
            if run.is_empty() {
                continue;
            }
            let pts: Vec<String> = run
                .iter()
                .flatten()
                .map(|&(x, y)| format!("{:.2},{:.2}", frame.px(x), frame.py(y)))
                .collect();
            let _ = writeln!(
                out,
                "<polyline fill=\"none\" stroke=\"{colour}\" stroke-width=\"1.5\" points=\"{}\"/>",
                pts.join(" ")
            );
        }
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let lx = WIDTH - RIGHT + 10.0;
        let _ = writeln!(
            out,
            "<line x1=\"{lx}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{colour}\" stroke-width=\"2\"/>\
             <text x=\"{}\" y=\"{}\">{}</text>",
            lx + 20.0,
            lx + 25.0,
            ly + 4.0,
            escape(&s.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Piecewise-linear blue-to-yellow colour map on `t in [0, 1]`.
fn colour(t: f64) -> String {
    const STOPS: [(f64, f64, f64); 5] = [
        (68.0, 1.0, 84.0),
        (59.0, 82.0, 139.0),
        (33.0, 145.0, 140.0),
        (94.0, 201.0, 98.0),
        (253.0, 231.0, 37.0),
    ];
    let t = t.clamp(0.0, 1.0) * (STOPS.len() - 1) as f64;
    let i = (t.floor() as usize).min(STOPS.len() - 2);
    let f = t - i as f64;
    let (a, b) = (STOPS[i], STOPS[i + 1]);
    let mix = |x: f64, y: f64| (x + f * (y - x)).round() as u8;
    format!(
        "#{:02x}{:02x}{:02x}",
        mix(a.0, b.0),
        mix(a.1, b.1),
        mix(a.2, b.2)
    )
}

/// Heat map of `values[i * ys.len() + j]` at `(xs[i], ys[j])`; missing
/// cells are grey.
pub fn heat_map(
    title: &str,
    xlabel: &str,
    ylabel: &str,
    xs: &[f64],
    ys: &[f64],
    values: &[Option<f64>],
    range: (f64, f64),
) -> String {
    let step = |v: &[f64]| {
        if v.len() > 1 {
            (v[v.len() - 1] - v[0]) / (v.len() - 1) as f64
        } else {
            1.0
        }
    };
    let (dx, dy) = (step(xs), step(ys));
    let span = |v: &[f64], d: f64| match (v.first(), v.last()) {
        (Some(&a), Some(&b)) => (a - 0.5 * d, b + 0.5 * d),
        _ => (0.0, 1.0),
    };
    let frame = Frame {
        x: span(xs, dx),
        y: span(ys, dy),
    };
    let mut out = String::new();
    header(&mut out, title);
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            let fill = match values.get(i * ys.len() + j).copied().flatten() {
                Some(v) if v.is_finite() => {
                    let width = range.1 - range.0;
                    colour(if width > 0.0 {
                        (v - range.0) / width
                    } else {
                        0.5
                    })
                }
                _ => "#bdbdbd".to_string(),
            };
            let (x0, x1) = (frame.px(x - 0.5 * dx), frame.px(x + 0.5 * dx));
            let (y0, y1) = (frame.py(y + 0.5 * dy), frame.py(y - 0.5 * dy));
            let _ = writeln!(
                out,
                "<rect x=\"{x0:.2}\" y=\"{y0:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{fill}\"/>",
                x1 - x0,
                y1 - y0
            );
        }
    }
    axes(&mut out, &frame, xlabel, ylabel);
    let (bx, by, bh) = (WIDTH - RIGHT + 20.0, TOP, HEIGHT - TOP - BOTTOM);
    for s in 0..50 {
        let t = s as f64 / 49.0;
        let _ = writeln!(
            out,
            "<rect x=\"{bx}\" y=\"{:.2}\" width=\"16\" height=\"{:.2}\" fill=\"{}\"/>",
            by + (1.0 - t) * bh - bh / 50.0,
            bh / 50.0 + 0.5,
            colour(t)
        );
    }
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\">{:.3}</text><text x=\"{}\" y=\"{}\">{:.3}</text>",
        bx + 20.0,
        by + 10.0,
        range.1,
        bx + 20.0,
        by + bh,
        range.0
    );
    out.push_str("</svg>\n");
    out
}
