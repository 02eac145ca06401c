//! Static SVG figures. Coordinates are decimal approximations of exact data
//! and are meant for display only.

use std::fmt::Write;

use crate::bounds;
use crate::rational::{self, Rational};
use crate::walls::{DestabilizerCandidate, WallLocus};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2.0 * MARGIN)
    }

    fn open(&self, title: &str, x_label: &str, y_label: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<title>{}</title>"#, escape(title));
        let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let (l, r, b, t) = (MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN, MARGIN);
        let _ = writeln!(s, r#"<path d="M{l:.4} {t:.4} V{b:.4} H{r:.4}" fill="none" stroke="black"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.4}" y="{:.4}" text-anchor="middle">{}</text>"#,
            WIDTH / 2.0,
            HEIGHT - 8.0,
            escape(x_label)
        );
        let _ = writeln!(
            s,
            r#"<text x="12" y="{:.4}" transform="rotate(-90 12 {:.4})" text-anchor="middle">{}</text>"#,
            HEIGHT / 2.0,
            HEIGHT / 2.0,
            escape(y_label)
        );
        let _ = writeln!(s, r#"<text x="{l:.4}" y="{:.4}" text-anchor="middle">{:.4}</text>"#, b + 14.0, self.x0);
        let _ = writeln!(s, r#"<text x="{r:.4}" y="{:.4}" text-anchor="middle">{:.4}</text>"#, b + 14.0, self.x1);
        let _ = writeln!(s, r#"<text x="{:.4}" y="{:.4}" text-anchor="end">{:.4}</text>"#, l - 4.0, t + 4.0, self.y1);
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn polyline(frame: &Frame, pts: &[(f64, f64)], colour: &str, dashed: bool) -> String {
    let mut d = String::new();
    for (i, (x, y)) in pts.iter().enumerate() {
        let _ = write!(d, "{}{:.4} {:.4} ", if i == 0 { 'M' } else { 'L' }, frame.px(*x), frame.py(*y));
    }
    let dash = if dashed { r#" stroke-dasharray="4 3""# } else { "" };
    format!("<path d=\"{}\" fill=\"none\" stroke=\"{colour}\"{dash}/>\n", d.trim_end())
}

/// Semicircular walls of candidate destabilisers in the `(b, a)` half-plane,
/// together with the strip `b_d <= b < 0` and the hyperbola `mu_{a,b} = 0` of
/// an ideal sheaf of degree `d` on a threefold of degree `n`.
pub fn walls_svg(n: u32, d: u32, b: &Rational, candidates: &[DestabilizerCandidate]) -> String {
    let circles: Vec<(f64, f64)> = candidates
        .iter()
        .filter_map(|c| match &c.wall {
            WallLocus::Semicircle { center, radius_sq } => {
                Some((rational::to_f64(center), rational::to_f64(radius_sq).sqrt()))
            }
            _ => None,
        })
        .collect();
    let bd = -(d as f64 / n as f64).sqrt();
    let left = circles.iter().map(|(c, r)| c - r).fold(bd, f64::min).min(rational::to_f64(b));
    let top = circles.iter().map(|(_, r)| *r).fold(1.0, f64::max);
    let frame = Frame { x0: (left - 0.5).floor(), x1: 0.5, y0: 0.0, y1: (top * 1.1).ceil() };
    let mut s = frame.open(&format!("Candidate walls for n = {n}, d = {d}, b = {b}"), "b", "a");
    let (xa, xb) = (frame.px(bd), frame.px(0.0));
    let _ = writeln!(
        s,
        r##"<rect x="{xa:.4}" y="{MARGIN:.4}" width="{:.4}" height="{:.4}" fill="#eeeeee"/>"##,
        xb - xa,
        HEIGHT - 2.0 * MARGIN
    );
    let beta = 2.0 * d as f64 / n as f64;
    let hyper: Vec<(f64, f64)> = (0..=200)
        .map(|i| frame.x0 + (frame.x1 - frame.x0) * i as f64 / 200.0)
        .filter_map(|x| {
            let a2 = x * x - beta;
            (a2 > 0.0 && x < 0.0).then(|| (x, a2.sqrt().min(frame.y1)))
        })
        .collect();
    if hyper.len() > 1 {
        s.push_str(&polyline(&frame, &hyper, "#555555", true));
    }
    let bx = frame.px(rational::to_f64(b));
    let _ = writeln!(
        s,
        r##"<line x1="{bx:.4}" y1="{MARGIN:.4}" x2="{bx:.4}" y2="{:.4}" stroke="#000000" stroke-dasharray="2 2"/>"##,
        HEIGHT - MARGIN
    );
    for (idx, ((c, r), cand)) in circles.iter().zip(candidates).enumerate() {
        let colour = PALETTE[cand.k as usize % PALETTE.len()];
        let pts: Vec<(f64, f64)> = (0..=90)
            .map(|i| {
                let t = std::f64::consts::PI * i as f64 / 90.0;
                (c + r * t.cos(), r * t.sin())
            })
            .collect();
        let _ = writeln!(s, "<g id=\"wall-{idx}\"><desc>k={} d1={}</desc>", cand.k, cand.d1);
        s.push_str(&polyline(&frame, &pts, colour, false));
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}

/// Genus bounds as functions of the degree: the Castelnuovo-type threshold,
/// the hypersurface bound for `n` and the bound for curves off hyperplane
/// sections.
pub fn bound_curves_svg(n: u32, d_max: u32) -> Result<String, bounds::BoundsError> {
    let mut series: Vec<(&str, Vec<(f64, f64)>)> = Vec::new();
    let mut hyp = Vec::new();
    let mut non = Vec::new();
    let mut thr = Vec::new();
    for d in 1..=d_max {
        let x = d as f64;
        hyp.push((x, rational::to_f64(&bounds::genus_bound_hypersurface(n, d)?.bound)));
        non.push((x, rational::to_f64(&bounds::genus_bound_nonhyperplane(n, d)?.bound)));
        thr.push((x, rational::to_f64(&bounds::castelnuovo_threshold(d))));
    }
    series.push(("hypersurface", hyp));
    series.push(("off hyperplanes", non));
    if n == 5 {
        series.push(("threshold B(d)", thr));
    }
    let y1 = series.iter().flat_map(|(_, p)| p.iter().map(|q| q.1)).fold(1.0, f64::max);
    let frame = Frame { x0: 0.0, x1: d_max.max(1) as f64, y0: 0.0, y1: y1.ceil() };
    let mut s = frame.open(&format!("Genus bounds on a degree {n} threefold"), "d", "g");
    for (i, (name, pts)) in series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        s.push_str(&polyline(&frame, pts, colour, i == 2));
        let _ = writeln!(
            s,
            r#"<text x="{:.4}" y="{:.4}" fill="{colour}">{}</text>"#,
            MARGIN + 10.0,
            MARGIN + 14.0 * (i as f64 + 1.0),
            escape(name)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::walls::enumerate_destabilizers;

    #[test]
    fn wall_figure_has_one_group_per_wall() {
        let c = enumerate_destabilizers(5, 20, &int(-2)).unwrap();
        let s = walls_svg(5, 20, &int(-2), &c);
        assert!(s.starts_with("<svg"));
        assert!(s.trim_end().ends_with("</svg>"));
        assert_eq!(s.matches("<g id=\"wall-").count(), 9);
        assert_eq!(s, walls_svg(5, 20, &int(-2), &c));
    }

    #[test]
    fn bound_figure() {
        let s = bound_curves_svg(5, 30).unwrap();
        assert_eq!(s.matches("<path").count(), 4);
        assert!(bound_curves_svg(7, 30).is_err());
    }
}
