//! Deterministic SVG output for chord diagrams and wire diagrams.
//!
//! Every decision (which chords are solid, which crossings get a dot) is made
//! in exact arithmetic first and stored in a diagram model. Floating point only
//! appears when the model is mapped onto the canvas.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::charge::CentralCharge;
use crate::error::{Error, Result};
use crate::quiver::{Quiver, QuiverKind, StringModule};
use crate::rational::Rational;
use crate::stability::{spliced_stable_set, stable_set, ChargeView, Criterion, SplicedPath};

pub const WIDTH: f64 = 960.0;
pub const HEIGHT: f64 = 540.0;
const MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Chord,
    Wire,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Style {
    pub positive: String,
    pub negative: String,
    pub endpoint: String,
    pub stroke_width: f64,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            positive: "#1f4fd8".into(),
            negative: "#c0392b".into(),
            endpoint: "#000000".into(),
            stroke_width: 1.5,
        }
    }
}

/// What to draw. `index_window` bounds the dual vertices or wires; `t_window`
/// bounds the horizontal axis of a wire diagram. Both default to a range that
/// covers every stable module.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub mode: Mode,
    pub index_window: Option<(i64, i64)>,
    pub t_window: Option<(Rational, Rational)>,
    pub style: Style,
}

impl RenderSpec {
    pub fn new(mode: Mode) -> RenderSpec {
        RenderSpec {
            mode,
            index_window: None,
            t_window: None,
            style: Style::default(),
        }
    }
}

/// A linear charge or a spliced path.
#[derive(Debug, Clone, Copy)]
pub enum Source<'a> {
    Linear(&'a CentralCharge),
    Spliced(&'a SplicedPath),
}

/// A chord of the diagram and whether its module is stable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ChordModel {
    pub module: StringModule,
    pub stable: bool,
}

/// One panel of a chord diagram.
#[derive(Debug, Clone)]
pub struct ChordPanel {
    pub vertices: Vec<(i64, Rational, Rational)>,
    pub chords: Vec<ChordModel>,
}

/// One wire and the two ends of its graph inside the `t` window.
#[derive(Debug, Clone)]
pub struct WireModel {
    pub index: i64,
    pub sign: i8,
    /// Breakpoints `(t, f(t))`, left to right.
    pub points: Vec<(Rational, Rational)>,
}

#[derive(Debug, Clone)]
pub struct WireDiagram {
    pub t_window: (Rational, Rational),
    pub wires: Vec<WireModel>,
    /// Stable crossings `(module, t, f(t))`.
    pub crossings: Vec<(StringModule, Rational, Rational)>,
}

fn stable_modules(q: &Quiver, src: Source) -> Result<BTreeSet<StringModule>> {
    Ok(match src {
        Source::Linear(z) => stable_set(q, z)?.into_iter().collect(),
        Source::Spliced(p) => spliced_stable_set(q, p)?.into_iter().collect(),
    })
}

/// Default index window covering all candidates: `[0, n]` on `A_n`, otherwise
/// from 0 to the largest right endpoint of a candidate module.
fn default_window(q: &Quiver) -> (i64, i64) {
    let n = q.n() as i64;
    match q.kind() {
        QuiverKind::FiniteA => (0, n),
        QuiverKind::CycleNilpotent => (0, 2 * n - 2),
        QuiverKind::AffineA => (0, 3 * n - 2),
    }
}

fn panel(
    q: &Quiver,
    z: &CentralCharge,
    window: (i64, i64),
    explicit: bool,
    stable: &dyn Fn(StringModule) -> bool,
) -> Result<ChordPanel> {
    let view = ChargeView::new(q, z)?;
    let (lo, hi) = window;
    let vertices = (lo..=hi)
        .map(|t| {
            let (x, y) = z.dual_vertex(q, t);
            (t, x, y)
        })
        .collect();
    let mods: Vec<StringModule> = if explicit {
        (lo..hi)
            .flat_map(|i| ((i + 1)..=hi).map(move |j| StringModule::new(i, j)))
            .filter(|m| q.is_valid_interval(m.i, m.j))
            .collect()
    } else {
        crate::stability::candidates(q)
    };
    let chords = mods
        .into_iter()
        .map(|m| ChordModel {
            module: m,
            stable: if explicit {
                view.classify(m, Criterion::Oracle).is_stable()
            } else {
                stable(m)
            },
        })
        .collect();
    Ok(ChordPanel { vertices, chords })
}

/// Exact model of the chord diagram: one panel, or two for a spliced path.
pub fn chord_model(q: &Quiver, src: Source, spec: &RenderSpec) -> Result<Vec<ChordPanel>> {
    let explicit = spec.index_window.is_some();
    let window = spec.index_window.unwrap_or_else(|| default_window(q));
    if window.0 >= window.1 {
        return Err(Error::Precondition(format!("empty index window {window:?}")));
    }
    if !q.kind().is_periodic() && (window.0 < 0 || window.1 > q.n() as i64) {
        return Err(Error::Precondition(format!("index window {window:?} leaves 0..={}", q.n())));
    }
    match src {
        Source::Linear(z) => {
            let set = if explicit { BTreeSet::new() } else { stable_modules(q, src)? };
            Ok(vec![panel(q, z, window, explicit, &|m| set.contains(&m))?])
        }
        Source::Spliced(p) => {
            let mut out = Vec::new();
            for (c, want) in [(&p.z, std::cmp::Ordering::Less), (&p.z_prime, std::cmp::Ordering::Greater)] {
                let view = ChargeView::new(q, c)?;
                let set: BTreeSet<StringModule> = if explicit {
                    BTreeSet::new()
                } else {
                    stable_set(q, c)?.into_iter().collect()
                };
                let mut pn = panel(q, c, window, explicit, &|m| set.contains(&m))?;
                for ch in &mut pn.chords {
                    ch.stable = ch.stable && view.slope_sign(ch.module) == want;
                }
                out.push(pn);
            }
            Ok(out)
        }
    }
}

/// Exact model of the wire diagram.
pub fn wire_model(q: &Quiver, src: Source, spec: &RenderSpec) -> Result<WireDiagram> {
    let stable = stable_modules(q, src)?;
    let (z_left, z_right) = match src {
        Source::Linear(z) => (z, z),
        Source::Spliced(p) => (&p.z, &p.z_prime),
    };
    let charge_at = |t: &Rational| if t.is_negative() { z_left } else { z_right };
    // on a splice, a module stable for `z'` with positive slope is crossed on the right segment
    let right: BTreeSet<StringModule> = match src {
        Source::Linear(_) => BTreeSet::new(),
        Source::Spliced(p) => stable_set(q, &p.z_prime)?
            .into_iter()
            .filter(|m| p.z_prime.slope(q, *m).is_positive())
            .collect(),
    };
    let crossings: Vec<(StringModule, Rational, Rational)> = stable
        .iter()
        .map(|&m| {
            let z = if right.contains(&m) { z_right } else { z_left };
            let t = z.slope(q, m);
            let f = z.wire_value(q, m.i, &t);
            (m, t, f)
        })
        .collect();
    let t_window = match &spec.t_window {
        Some((a, b)) if a < b => (a.clone(), b.clone()),
        Some(w) => return Err(Error::Precondition(format!("empty t window {w:?}"))),
        None => {
            let ts: Vec<&Rational> = crossings.iter().map(|c| &c.1).collect();
            match (ts.iter().min(), ts.iter().max()) {
                (Some(&lo), Some(&hi)) => {
                    let pad = if lo == hi {
                        Rational::one()
                    } else {
                        (hi - lo) / Rational::from(10)
                    };
                    (lo - &pad, hi + &pad)
                }
                _ => (Rational::from(-1), Rational::one()),
            }
        }
    };
    let (lo, hi) = match spec.index_window {
        Some(w) => w,
        None if stable.is_empty() => default_window(q),
        None => (
            stable.iter().map(|m| m.i).min().unwrap_or(0),
            stable.iter().map(|m| m.j).max().unwrap_or(0),
        ),
    };
    let mut breaks = vec![t_window.0.clone()];
    if matches!(src, Source::Spliced(_)) && t_window.0.is_negative() && t_window.1.is_positive() {
        breaks.push(Rational::zero());
    }
    breaks.push(t_window.1.clone());
    let wires = (lo..=hi)
        .map(|i| WireModel {
            index: i,
            sign: q.eps(i),
            points: breaks
                .iter()
                .map(|t| (t.clone(), charge_at(t).wire_value(q, i, t)))
                .collect(),
        })
        .collect();
    Ok(WireDiagram {
        t_window,
        wires,
        crossings,
    })
}

/// Formats a coordinate with 12 significant digits and no trailing zeros.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (11 - mag).clamp(0, 12) as usize;
    let mut s = format!("{v:.decimals$}");
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// Affine map from a content box onto a canvas region, `y` pointing up.
struct Frame {
    x0: f64,
    y0: f64,
    sx: f64,
    sy: f64,
    left: f64,
    bottom: f64,
}

impl Frame {
    fn new(xs: &[f64], ys: &[f64], left: f64, width: f64) -> Frame {
        let fold = |v: &[f64], f: fn(f64, f64) -> f64, init: f64| v.iter().copied().fold(init, f);
        let (mut x0, mut x1) = (fold(xs, f64::min, f64::INFINITY), fold(xs, f64::max, f64::NEG_INFINITY));
        let (mut y0, mut y1) = (fold(ys, f64::min, f64::INFINITY), fold(ys, f64::max, f64::NEG_INFINITY));
        if x1.partial_cmp(&x0) != Some(std::cmp::Ordering::Greater) {
            x0 -= 1.0;
            x1 += 1.0;
        }
        if y1.partial_cmp(&y0) != Some(std::cmp::Ordering::Greater) {
            y0 -= 1.0;
            y1 += 1.0;
        }
        let mx = width * MARGIN;
        let my = HEIGHT * MARGIN;
        Frame {
            x0,
            y0,
            sx: (width - 2.0 * mx) / (x1 - x0),
            sy: (HEIGHT - 2.0 * my) / (y1 - y0),
            left: left + mx,
            bottom: HEIGHT - my,
        }
    }

    fn map(&self, x: f64, y: f64) -> (String, String) {
        (
            fmt_num(self.left + (x - self.x0) * self.sx),
            fmt_num(self.bottom - (y - self.y0) * self.sy),
        )
    }
}

fn header(out: &mut String) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        WIDTH, HEIGHT, WIDTH, HEIGHT
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
}

fn color(style: &Style, sign: i8) -> &str {
    match sign {
        1 => &style.positive,
        -1 => &style.negative,
        _ => &style.endpoint,
    }
}

fn label(m: StringModule) -> String {
    if (0..10).contains(&m.i) && (0..10).contains(&m.j) {
        format!("{}{}", m.i, m.j)
    } else {
        format!("{},{}", m.i, m.j)
    }
}

/// Chord diagram: dual vertices coloured by sign, stable chords solid, the other
/// candidate chords dashed, boundary polylines through the positive and through
/// the negative vertices drawn thicker.
pub fn render_chord_svg(q: &Quiver, src: Source, spec: &RenderSpec) -> Result<String> {
    let panels = chord_model(q, src, spec)?;
    let style = &spec.style;
    let mut out = String::new();
    header(&mut out);
    let pw = WIDTH / panels.len() as f64;
    for (p, pn) in panels.iter().enumerate() {
        let xs: Vec<f64> = pn.vertices.iter().map(|v| v.1.to_f64()).collect();
        let ys: Vec<f64> = pn.vertices.iter().map(|v| v.2.to_f64()).collect();
        let fr = Frame::new(&xs, &ys, p as f64 * pw, pw);
        let at = |t: i64| {
            let v = &pn.vertices[pn.vertices.iter().position(|v| v.0 == t).expect("vertex in window")];
            fr.map(v.1.to_f64(), v.2.to_f64())
        };
        let _ = writeln!(out, r#"<g class="panel" data-panel="{p}">"#);
        for sign in [1i8, -1] {
            let pts: Vec<String> = pn
                .vertices
                .iter()
                .filter(|v| q.eps(v.0) == sign || q.eps(v.0) == 0 || v.0 == pn.vertices[0].0 || v.0 == pn.vertices.last().unwrap().0)
                .map(|v| {
                    let (x, y) = fr.map(v.1.to_f64(), v.2.to_f64());
                    format!("{x},{y}")
                })
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline class="boundary" points="{}" fill="none" stroke="{}" stroke-width="{}" stroke-opacity="0.35"/>"#,
                pts.join(" "),
                color(style, sign),
                fmt_num(style.stroke_width * 3.0)
            );
        }
        for ch in &pn.chords {
            let (x1, y1) = at(ch.module.i);
            let (x2, y2) = at(ch.module.j);
            let dash = if ch.stable { "" } else { r#" stroke-dasharray="4 3""# };
            let _ = writeln!(
                out,
                r#"<line class="chord {}" data-module="{},{}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{}" stroke-width="{}"{dash}/>"#,
                if ch.stable { "stable" } else { "unstable" },
                ch.module.i,
                ch.module.j,
                if ch.stable { "#333333" } else { "#aaaaaa" },
                fmt_num(style.stroke_width)
            );
        }
        for v in &pn.vertices {
            let (x, y) = fr.map(v.1.to_f64(), v.2.to_f64());
            let c = if q.kind() == QuiverKind::FiniteA && (v.0 == 0 || v.0 == q.n() as i64) {
                &style.endpoint
            } else {
                color(style, q.eps(v.0))
            };
            let _ = writeln!(out, r#"<circle class="vertex" data-index="{}" cx="{x}" cy="{y}" r="4" fill="{c}"/>"#, v.0);
            let _ = writeln!(
                out,
                r#"<text x="{x}" y="{y}" dx="5" dy="-6" font-family="sans-serif" font-size="11" fill="{c}">{}</text>"#,
                v.0
            );
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Wire diagram: each wire `f_i(t) = y_i - t x_i` over the `t` window, coloured by
/// sign, with a labelled dot on every stable crossing.
pub fn render_wire_svg(q: &Quiver, src: Source, spec: &RenderSpec) -> Result<String> {
    let d = wire_model(q, src, spec)?;
    let style = &spec.style;
    let xs: Vec<f64> = vec![d.t_window.0.to_f64(), d.t_window.1.to_f64()];
    let ys: Vec<f64> = d
        .wires
        .iter()
        .flat_map(|w| w.points.iter().map(|p| p.1.to_f64()))
        .collect();
    let fr = Frame::new(&xs, &ys, 0.0, WIDTH);
    let mut out = String::new();
    header(&mut out);
    for w in &d.wires {
        let pts: Vec<String> = w
            .points
            .iter()
            .map(|(t, f)| {
                let (x, y) = fr.map(t.to_f64(), f.to_f64());
                format!("{x},{y}")
            })
            .collect();
        let c = if q.kind() == QuiverKind::FiniteA && (w.index == 0 || w.index == q.n() as i64) {
            &style.endpoint
        } else {
            color(style, w.sign)
        };
        let _ = writeln!(
            out,
            r#"<polyline class="wire" data-index="{}" points="{}" fill="none" stroke="{c}" stroke-width="{}"/>"#,
            w.index,
            pts.join(" "),
            fmt_num(style.stroke_width)
        );
    }
    for (m, t, f) in &d.crossings {
        let (x, y) = fr.map(t.to_f64(), f.to_f64());
        let _ = writeln!(
            out,
            r##"<circle class="crossing" data-module="{},{}" cx="{x}" cy="{y}" r="4" fill="#000000"/>"##,
            m.i, m.j
        );
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{y}" dx="5" dy="-6" font-family="sans-serif" font-size="11">{}</text>"#,
            label(*m)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Renders in the mode named by `spec`.
pub fn render(q: &Quiver, src: Source, spec: &RenderSpec) -> Result<String> {
    match spec.mode {
        Mode::Chord => render_chord_svg(q, src, spec),
        Mode::Wire => render_wire_svg(q, src, spec),
    }
}

pub fn write_svg(path: &Path, svg: &str) -> Result<()> {
    std::fs::write(path, svg)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver;
    use crate::rational::q;

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(48.0), "48");
        assert_eq!(fmt_num(-0.5), "-0.5");
        assert_eq!(fmt_num(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_num(912.123_456_789_012), "912.123456789");
    }

    #[test]
    fn a3_example_chords() {
        let a3 = parse_quiver("A:-+").unwrap();
        let z = CentralCharge::new(vec![q(1, 2), q(3, 2), q(-2, 1)], vec![q(1, 1); 3]).unwrap();
        let spec = RenderSpec::new(Mode::Chord);
        let svg = render_chord_svg(&a3, Source::Linear(&z), &spec).unwrap();
        assert_eq!(svg.matches(r#"class="chord "#).count(), 6);
        assert_eq!(svg.matches("stroke-dasharray").count(), 1);
        assert!(svg.contains(r#"class="chord unstable" data-module="0,3""#));
        assert_eq!(svg, render_chord_svg(&a3, Source::Linear(&z), &spec).unwrap());
    }

    #[test]
    fn a3_example_wires() {
        let a3 = parse_quiver("A:-+").unwrap();
        let z = CentralCharge::new(vec![q(1, 2), q(3, 2), q(-2, 1)], vec![q(1, 1); 3]).unwrap();
        let svg = render_wire_svg(&a3, Source::Linear(&z), &RenderSpec::new(Mode::Wire)).unwrap();
        assert_eq!(svg.matches(r#"class="crossing""#).count(), 5);
        assert!(!svg.contains(r#"data-module="0,3""#));
    }

    #[test]
    fn kronecker_wires() {
        let kr = parse_quiver("At:+-").unwrap();
        let z = CentralCharge::from_ints(&[0, 1], &[1, 1]).unwrap();
        let d = wire_model(&kr, Source::Linear(&z), &RenderSpec::new(Mode::Wire)).unwrap();
        let ts: Vec<Rational> = d.crossings.iter().map(|c| c.1.clone()).collect();
        assert_eq!(ts, vec![q(0, 1), q(1, 1)]);
    }
}
