//! SVG scatter plot with the two g-correlation separators.
//!
//! Output is a pure function of the input: fixed canvas, fixed number
//! formatting, points in input order. The only `<line>` elements are the
//! two separators (class `separator`); axes are drawn as a `<rect>`.

use std::fmt::Write as _;

use crate::gcorr::GCorrFit;
use crate::sample::PairedSample;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 48.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn around(lo: f64, hi: f64) -> (f64, f64) {
        let pad = if hi > lo { (hi - lo) * 0.05 } else { 1.0 };
        (lo - pad, hi + pad)
    }

    fn sx(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN)
    }

    fn sy(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn bounds(v: &[f64]) -> (f64, f64) {
    v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders all points of `s` with the fitted `x = c` and `y = ỹ` lines and
/// the quadrant counts of `fit` in the corresponding corners.
pub fn render_svg(s: &PairedSample, fit: &GCorrFit, title: &str) -> String {
    let (xl, xh) = bounds(s.xs());
    let (yl, yh) = bounds(s.ys());
    // the sentinel cut may lie left of every point
    let (x0, x1) = Frame::around(xl.min(fit.c), xh.max(fit.c));
    let (y0, y1) = Frame::around(yl, yh);
    let f = Frame { x0, x1, y0, y1 };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##);
    let _ = writeln!(
        out,
        r##"<rect class="axes" x="{MARGIN}" y="{MARGIN}" width="{:.2}" height="{:.2}" fill="none" stroke="#000000"/>"##,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-family="sans-serif" font-size="14">{} (omega = {:.4})</text>"#,
        WIDTH / 2.0,
        escape(title),
        fit.omega
    );

    let _ = writeln!(out, r##"<g class="points" fill="#1f77b4">"##);
    for (&x, &y) in s.xs().iter().zip(s.ys()) {
        let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5"/>"#, f.sx(x), f.sy(y));
    }
    let _ = writeln!(out, "</g>");

    let cx = f.sx(fit.c);
    let my = f.sy(fit.y_median);
    let _ = writeln!(
        out,
        r##"<line class="separator" x1="{:.2}" y1="{my:.2}" x2="{:.2}" y2="{my:.2}" stroke="#d62728"/>"##,
        MARGIN,
        WIDTH - MARGIN
    );
    let _ = writeln!(
        out,
        r##"<line class="separator" x1="{cx:.2}" y1="{:.2}" x2="{cx:.2}" y2="{:.2}" stroke="#d62728"/>"##,
        MARGIN,
        HEIGHT - MARGIN
    );

    let q = &fit.counts;
    let (left, right) = (MARGIN + 6.0, WIDTH - MARGIN - 6.0);
    let (top, bottom) = (MARGIN + 16.0, HEIGHT - MARGIN - 8.0);
    for (label, count, x, y, anchor) in [
        ("C1-", q.c1_minus, left, top, "start"),
        ("C1+", q.c1_plus, right, top, "end"),
        ("C2-", q.c2_minus, left, bottom, "start"),
        ("C2+", q.c2_plus, right, bottom, "end"),
    ] {
        let _ = writeln!(
            out,
            r#"<text class="quadrant" x="{x:.2}" y="{y:.2}" text-anchor="{anchor}" font-family="sans-serif" font-size="12">{label}: {count}</text>"#
        );
    }
    out.push_str("</svg>\n");
    out
}
