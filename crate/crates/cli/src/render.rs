//! SVG 1.1 drawings of pairings (chords on a circle) and lattice paths.
//! Coordinates are printed with three decimals so output is byte-stable.

use std::f64::consts::PI;
use std::fmt::Write as _;

use ncpair::bitstring::heights;
use ncpair::{Pairing, Word};

const PANEL: f64 = 240.0;
const RADIUS: f64 = 90.0;
const COLUMNS: usize = 4;

fn header(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(out, r##"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"##);
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"##
    );
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{width:.3}" height="{height:.3}" fill="white"/>"##);
}

/// Position `k` (0-based) of `len` points, clockwise from the top.
fn point_on_circle(cx: f64, cy: f64, k: usize, len: usize) -> (f64, f64) {
    let theta = 2.0 * PI * k as f64 / len as f64 - PI / 2.0;
    (cx + RADIUS * theta.cos(), cy + RADIUS * theta.sin())
}

/// Path data for the arc between two circle points that meets the circle at
/// right angles. Such arcs cross exactly when their endpoints interleave.
fn chord_path(cx: f64, cy: f64, a: (f64, f64), b: (f64, f64)) -> String {
    let (ua, ub) = (((a.0 - cx) / RADIUS, (a.1 - cy) / RADIUS), ((b.0 - cx) / RADIUS, (b.1 - cy) / RADIUS));
    let mid = (ua.0 + ub.0, ua.1 + ub.1);
    let norm = (mid.0 * mid.0 + mid.1 * mid.1).sqrt();
    let half_cos = norm / 2.0;
    if half_cos < 1e-9 {
        return format!("M {:.3} {:.3} L {:.3} {:.3}", a.0, a.1, b.0, b.1);
    }
    let half_sin = (1.0 - half_cos * half_cos).max(0.0).sqrt();
    let arc_radius = RADIUS * half_sin / half_cos;
    let dist = RADIUS / half_cos;
    let center = (cx + dist * mid.0 / norm, cy + dist * mid.1 / norm);
    let cross = (b.0 - a.0) * (center.1 - a.1) - (b.1 - a.1) * (center.0 - a.0);
    let sweep = u8::from(cross > 0.0);
    format!(
        "M {:.3} {:.3} A {:.3} {:.3} 0 0 {sweep} {:.3} {:.3}",
        a.0, a.1, arc_radius, arc_radius, b.0, b.1
    )
}

fn chord_panel(out: &mut String, word: &Word, pairing: Option<&Pairing>, index: usize, ox: f64, oy: f64) {
    let (cx, cy) = (ox + PANEL / 2.0, oy + PANEL / 2.0);
    let len = word.len();
    let _ = writeln!(out, r##"<g class="panel" id="panel-{index}">"##);
    let _ = writeln!(
        out,
        r##"<circle cx="{cx:.3}" cy="{cy:.3}" r="{RADIUS:.3}" fill="none" stroke="#bbbbbb" stroke-dasharray="4 3"/>"##
    );
    if let Some(p) = pairing {
        let _ = writeln!(
            out,
            r##"<text x="{:.3}" y="{:.3}" font-family="monospace" font-size="11" text-anchor="middle">{p}</text>"##,
            cx,
            oy + 16.0
        );
        for &(i, j) in p.pairs() {
            let a = point_on_circle(cx, cy, i - 1, len);
            let b = point_on_circle(cx, cy, j - 1, len);
            let _ = writeln!(
                out,
                r##"<path class="chord" data-pair="{i}-{j}" d="{}" fill="none" stroke="#1f4e8c" stroke-width="1.6"/>"##,
                chord_path(cx, cy, a, b)
            );
        }
    }
    for (k, &bit) in word.bits().iter().enumerate() {
        let (x, y) = point_on_circle(cx, cy, k, len);
        let fill = if bit { "#222222" } else { "white" };
        let _ = writeln!(
            out,
            r##"<circle class="point" data-position="{}" data-bit="{}" cx="{x:.3}" cy="{y:.3}" r="4.500" fill="{fill}" stroke="#222222"/>"##,
            k + 1,
            u8::from(bit)
        );
        let (lx, ly) = {
            let theta = 2.0 * PI * k as f64 / len as f64 - PI / 2.0;
            (cx + (RADIUS + 14.0) * theta.cos(), cy + (RADIUS + 14.0) * theta.sin() + 4.0)
        };
        let _ = writeln!(
            out,
            r##"<text x="{lx:.3}" y="{ly:.3}" font-family="monospace" font-size="10" text-anchor="middle">{}</text>"##,
            k + 1
        );
    }
    let _ = writeln!(out, "</g>");
}

/// One panel per pairing, four to a row. With no pairings, draws the bare points.
pub fn chord_svg(word: &Word, pairings: &[Pairing]) -> String {
    let panels = pairings.len().max(1);
    let columns = panels.min(COLUMNS);
    let rows = panels.div_ceil(COLUMNS);
    let mut out = String::new();
    header(&mut out, columns as f64 * PANEL, rows as f64 * PANEL);
    if pairings.is_empty() {
        chord_panel(&mut out, word, None, 1, 0.0, 0.0);
    }
    for (idx, p) in pairings.iter().enumerate() {
        let (col, row) = (idx % COLUMNS, idx / COLUMNS);
        chord_panel(&mut out, word, Some(p), idx + 1, col as f64 * PANEL, row as f64 * PANEL);
    }
    out.push_str("</svg>\n");
    out
}

/// The lattice path of `word` (1 up, 0 down) with each step labeled by its height.
pub fn path_svg(word: &Word) -> String {
    const STEP: f64 = 28.0;
    const MARGIN: f64 = 30.0;
    let profile = heights(word);
    let mut ys = vec![0i64];
    for &bit in word.bits() {
        ys.push(ys.last().copied().unwrap_or(0) + if bit { 1 } else { -1 });
    }
    let (lo, hi) = (ys.iter().copied().min().unwrap_or(0), ys.iter().copied().max().unwrap_or(0));
    let width = 2.0 * MARGIN + STEP * word.len() as f64;
    let height = 2.0 * MARGIN + STEP * (hi - lo) as f64;
    let at = |i: usize| (MARGIN + STEP * i as f64, MARGIN + STEP * (hi - ys[i]) as f64);

    let mut out = String::new();
    header(&mut out, width, height);
    for level in lo..=hi {
        let y = MARGIN + STEP * (hi - level) as f64;
        let _ = writeln!(
            out,
            r##"<line x1="{MARGIN:.3}" y1="{y:.3}" x2="{:.3}" y2="{y:.3}" stroke="#eeeeee"/>"##,
            width - MARGIN
        );
    }
    let mut d = String::new();
    for i in 0..ys.len() {
        let (x, y) = at(i);
        let _ = write!(d, "{}{x:.3} {y:.3}", if i == 0 { "M " } else { " L " });
    }
    let _ = writeln!(out, r##"<path class="lattice" d="{d}" fill="none" stroke="#1f4e8c" stroke-width="2"/>"##);
    for (i, &h) in profile.heights.iter().enumerate() {
        let ((x0, y0), (x1, y1)) = (at(i), at(i + 1));
        let _ = writeln!(
            out,
            r##"<text class="height" data-step="{}" x="{:.3}" y="{:.3}" font-family="monospace" font-size="10" text-anchor="middle">{h}</text>"##,
            i + 1,
            (x0 + x1) / 2.0 - 6.0,
            (y0 + y1) / 2.0 - 4.0
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn opposite_points_use_a_segment() {
        let d = chord_path(0.0, 0.0, (0.0, -RADIUS), (0.0, RADIUS));
        assert!(d.contains(" L "));
    }

    #[test]
    fn adjacent_points_bend_inward() {
        let a = point_on_circle(0.0, 0.0, 0, 4);
        let b = point_on_circle(0.0, 0.0, 1, 4);
        let d = chord_path(0.0, 0.0, a, b);
        // Quarter circle: the orthogonal arc has the same radius as the circle.
        assert!(d.contains(&format!("A {RADIUS:.3} {RADIUS:.3}")), "{d}");
    }
}
