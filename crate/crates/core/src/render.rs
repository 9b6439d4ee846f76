//! Static SVG pictures of rotor configurations and boundary measures.
//!
//! Output depends only on the input values: coordinates are printed with a
//! fixed number of decimals and elements are emitted in vertex order.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::engine::EngineState;
use crate::geometry::{ClusterShape, Vertex};
use crate::harmonic::BoundaryMeasure;

const CELL: f64 = 28.0;
const MARGIN: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RenderOptions {
    /// Print odometer values above the cells.
    pub labels: bool,
}

struct Frame {
    x0: i64,
    x1: i64,
    y0: i64,
    y1: i64,
}

impl Frame {
    fn around(vertices: impl IntoIterator<Item = Vertex>) -> Frame {
        let mut f = Frame { x0: 0, x1: 0, y0: 0, y1: 0 };
        for v in vertices {
            f.x0 = f.x0.min(v.x);
            f.x1 = f.x1.max(v.x);
            f.y0 = f.y0.min(v.y);
            f.y1 = f.y1.max(v.y);
        }
        f
    }

    fn width(&self) -> f64 {
        ((self.x1 - self.x0) as f64 + 2.0 * MARGIN) * CELL
    }

    fn height(&self) -> f64 {
        ((self.y1 - self.y0) as f64 + 2.0 * MARGIN) * CELL
    }

    /// Pixel centre of `v`; y grows upwards in lattice coordinates.
    fn px(&self, v: Vertex) -> (f64, f64) {
        (
            ((v.x - self.x0) as f64 + MARGIN) * CELL,
            ((self.y1 - v.y) as f64 + MARGIN) * CELL,
        )
    }

    fn open(&self, out: &mut String) {
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.1}" height="{:.1}" viewBox="0 0 {:.1} {:.1}">"#,
            self.width(),
            self.height(),
            self.width(),
            self.height()
        );
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    }

    /// Dotted comb edges: every column and the backbone.
    fn grid(&self, out: &mut String) {
        let _ = writeln!(out, r##"<g stroke="#999" stroke-width="1" stroke-dasharray="1 3">"##);
        for x in self.x0..=self.x1 {
            let (px, top) = self.px(Vertex::new(x, self.y1));
            let (_, bottom) = self.px(Vertex::new(x, self.y0));
            let _ = writeln!(out, r#"<line x1="{px:.1}" y1="{top:.1}" x2="{px:.1}" y2="{bottom:.1}"/>"#);
        }
        let (left, py) = self.px(Vertex::new(self.x0, 0));
        let (right, _) = self.px(Vertex::new(self.x1, 0));
        let _ = writeln!(out, r#"<line x1="{left:.1}" y1="{py:.1}" x2="{right:.1}" y2="{py:.1}"/>"#);
        let _ = writeln!(out, "</g>");
    }
}

fn arrow(out: &mut String, (cx, cy): (f64, f64), (dx, dy): (i64, i64)) {
    let len = 0.38 * CELL;
    let (ux, uy) = (dx as f64, -dy as f64);
    let (tx, ty) = (cx + ux * len, cy + uy * len);
    let head = 0.14 * CELL;
    let (lx, ly) = (tx - ux * head - uy * head * 0.6, ty - uy * head + ux * head * 0.6);
    let (rx, ry) = (tx - ux * head + uy * head * 0.6, ty - uy * head - ux * head * 0.6);
    let _ = writeln!(
        out,
        r#"<line x1="{cx:.1}" y1="{cy:.1}" x2="{tx:.1}" y2="{ty:.1}"/><polygon points="{tx:.1},{ty:.1} {lx:.1},{ly:.1} {rx:.1},{ry:.1}"/>"#
    );
}

/// Grey level for `value` on a linear scale up to `max`.
fn shade(value: u64, max: u64) -> u8 {
    if max == 0 {
        return 255;
    }
    (235.0 - 175.0 * value as f64 / max as f64).round() as u8
}

/// Cells with a particle or a toppling, shaded by odometer, with an arrow
/// for every rotor that has moved.
pub fn render_state(state: &EngineState, options: RenderOptions) -> String {
    let odometer = state.odometer_map();
    let particles = state.particles.support();
    let cells: BTreeSet<Vertex> = odometer.keys().chain(particles.keys()).copied().collect();
    let frame = Frame::around(cells.iter().copied().chain([Vertex::ORIGIN]));
    let max = odometer.values().copied().max().unwrap_or(0);

    let mut out = String::new();
    frame.open(&mut out);
    frame.grid(&mut out);
    let half = 0.42 * CELL;
    let _ = writeln!(out, r##"<g stroke="#333" stroke-width="0.6">"##);
    for &v in &cells {
        let (cx, cy) = frame.px(v);
        let g = shade(odometer.get(&v).copied().unwrap_or(0), max);
        let _ = writeln!(
            out,
            r#"<rect x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="rgb({g},{g},{g})"/>"#,
            cx - half,
            cy - half,
            2.0 * half,
            2.0 * half
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r##"<g stroke="#b00" fill="#b00" stroke-width="1.6">"##);
    for &v in odometer.keys() {
        arrow(&mut out, frame.px(v), state.rotors.get(v).delta());
    }
    let _ = writeln!(out, "</g>");
    if options.labels {
        let _ = writeln!(out, r#"<g font-family="monospace" font-size="9" text-anchor="middle" fill="black">"#);
        for (&v, u) in &odometer {
            let (cx, cy) = frame.px(v);
            let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}">{u}</text>"#, cx, cy - half - 2.0);
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}

/// The shape in light grey with a disc on every boundary vertex whose area
/// is proportional to its mass.
pub fn render_measure(shape: &ClusterShape, measure: &BoundaryMeasure) -> String {
    let vertices = shape.vertices();
    let frame = Frame::around(vertices.iter().copied());
    let mut out = String::new();
    frame.open(&mut out);
    frame.grid(&mut out);
    let _ = writeln!(out, r##"<g fill="#ddd">"##);
    for &v in &vertices {
        let (cx, cy) = frame.px(v);
        let _ = writeln!(out, r#"<circle cx="{cx:.1}" cy="{cy:.1}" r="{:.1}"/>"#, 0.12 * CELL);
    }
    let _ = writeln!(out, "</g>");
    let max = measure.vertices().map(|v| measure.nu_f64(v)).fold(0.0, f64::max);
    let _ = writeln!(out, r##"<g fill="#1f5fa8">"##);
    for v in measure.vertices() {
        let nu = measure.nu_f64(v);
        let r = if max > 0.0 { 0.45 * CELL * (nu / max).sqrt() } else { 0.0 };
        let (cx, cy) = frame.px(v);
        let _ = writeln!(
            out,
            r#"<circle cx="{cx:.1}" cy="{cy:.1}" r="{r:.2}"><title>{v} {}</title></circle>"#,
            measure.nu(v)
        );
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}
