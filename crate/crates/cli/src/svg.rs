//! Minimal self-contained SVG line plots for sweep outputs.

const WIDTH: f64 = 840.0;
const HEIGHT: f64 = 520.0;
const MARGIN_L: f64 = 80.0;
const MARGIN_R: f64 = 24.0;
const MARGIN_T: f64 = 46.0;
const MARGIN_B: f64 = 56.0;

const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

struct Axis {
    log: bool,
    min: f64,
    max: f64,
}

impl Axis {
    fn from_values<'a>(values: impl Iterator<Item = &'a f64>) -> Axis {
        let finite: Vec<f64> = values.copied().filter(|v| v.is_finite()).collect();
        if finite.is_empty() {
            return Axis {
                log: false,
                min: 0.0,
                max: 1.0,
            };
        }
        let min = finite.iter().copied().fold(f64::INFINITY, f64::min);
        let max = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let log = min > 0.0 && max / min > 1e3;
        if min == max {
            Axis {
                log: false,
                min: min - 0.5 * min.abs().max(1.0),
                max: max + 0.5 * max.abs().max(1.0),
            }
        } else {
            Axis { log, min, max }
        }
    }

    fn fraction(&self, v: f64) -> Option<f64> {
        if !v.is_finite() {
            return None;
        }
        if self.log {
            if v <= 0.0 {
                return None;
            }
            Some((v / self.min).ln() / (self.max / self.min).ln())
        } else {
            Some((v - self.min) / (self.max - self.min))
        }
    }

    fn ticks(&self) -> Vec<f64> {
        let n = 5usize;
        (0..=n)
            .map(|i| {
                let t = i as f64 / n as f64;
                if self.log {
                    self.min * (self.max / self.min).powf(t)
                } else {
                    self.min + (self.max - self.min) * t
                }
            })
            .collect()
    }
}

/// Render one plot with shared x values and several named series.
pub fn render_lines(title: &str, x_label: &str, xs: &[f64], series: &[(String, &[f64])]) -> String {
    let x_axis = Axis::from_values(xs.iter());
    let y_axis = Axis::from_values(series.iter().flat_map(|(_, ys)| ys.iter()));
    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let px = |fx: f64| MARGIN_L + fx * plot_w;
    let py = |fy: f64| HEIGHT - MARGIN_B - fy * plot_h;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    out.push_str(&format!(
        "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));
    out.push_str(&format!(
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    ));

    // frame
    out.push_str(&format!(
        "<rect x=\"{MARGIN_L}\" y=\"{MARGIN_T}\" width=\"{plot_w}\" height=\"{plot_h}\" \
         fill=\"none\" stroke=\"#444\"/>\n"
    ));

    for tick in x_axis.ticks() {
        if let Some(fx) = x_axis.fraction(tick) {
            let x = px(fx);
            out.push_str(&format!(
                "<line x1=\"{x:.1}\" y1=\"{}\" x2=\"{x:.1}\" y2=\"{}\" stroke=\"#bbb\" \
                 stroke-dasharray=\"3 3\"/>\n",
                MARGIN_T,
                HEIGHT - MARGIN_B
            ));
            out.push_str(&format!(
                "<text x=\"{x:.1}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                HEIGHT - MARGIN_B + 18.0,
                tick_label(tick)
            ));
        }
    }
    for tick in y_axis.ticks() {
        if let Some(fy) = y_axis.fraction(tick) {
            let y = py(fy);
            out.push_str(&format!(
                "<line x1=\"{}\" y1=\"{y:.1}\" x2=\"{}\" y2=\"{y:.1}\" stroke=\"#bbb\" \
                 stroke-dasharray=\"3 3\"/>\n",
                MARGIN_L,
                WIDTH - MARGIN_R
            ));
            out.push_str(&format!(
                "<text x=\"{}\" y=\"{y:.1}\" text-anchor=\"end\" dy=\"4\">{}</text>\n",
                MARGIN_L - 6.0,
                tick_label(tick)
            ));
        }
    }
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        HEIGHT - 14.0,
        escape(x_label)
    ));

    for (i, (label, ys)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut points = String::new();
        for (x, y) in xs.iter().zip(ys.iter()) {
            if let (Some(fx), Some(fy)) = (x_axis.fraction(*x), y_axis.fraction(*y)) {
                points.push_str(&format!("{:.1},{:.1} ", px(fx), py(fy)));
            }
        }
        out.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.6\" points=\"{}\"/>\n",
            points.trim_end()
        ));
        let ly = MARGIN_T + 16.0 + 16.0 * i as f64;
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{ly:.1}\" x2=\"{}\" y2=\"{ly:.1}\" stroke=\"{color}\" \
             stroke-width=\"2\"/>\n",
            MARGIN_L + 8.0,
            MARGIN_L + 34.0
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{ly:.1}\" dy=\"4\">{}</text>\n",
            MARGIN_L + 40.0,
            escape(label)
        ));
    }

    out.push_str("</svg>\n");
    out
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 0.01 && v.abs() < 1e4 {
        format!("{v:.3}")
    } else {
        format!("{v:.2e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
