//! Deterministic SVG drawings of diagrams and certificate trees.
//!
//! Diagrams are drawn with `α` horizontal: `L`-feet on the bottom edge and
//! `R`-feet on the top edge, both at `x` proportional to their height.

use std::fmt::Write;

use crate::bypass::CertificateTree;
use crate::diagram::{Foot, Side, StrandKind, StrandModel};

const STEP: i64 = 40;
const MARGIN: i64 = 30;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RenderOptions {
    /// Draw the meridian circle `γ₂` around `z` and a dashed push-off `γ₁` of `β`.
    pub sutures: bool,
}

fn color(kind: StrandKind) -> &'static str {
    match kind {
        StrandKind::ZRainbow => "#c0392b",
        StrandKind::WRainbow => "#2471a3",
        StrandKind::Middle => "#7d3c98",
        StrandKind::Lower => "#1e8449",
    }
}

struct Frame {
    width: i64,
    top: i64,
    bottom: i64,
}

impl Frame {
    fn at(&self, f: Foot, offset: i64) -> (i64, i64) {
        let x = MARGIN + STEP * f.pos + offset;
        match f.side {
            Side::L => (x, self.bottom),
            Side::R => (x, self.top),
        }
    }

    fn path(&self, from: Foot, to: Foot, offset: i64) -> String {
        let (x1, y1) = self.at(from, offset);
        let (x2, y2) = self.at(to, offset);
        if from.side == to.side {
            let rx = (x2 - x1).abs() / 2;
            let ry = rx.min((self.bottom - self.top) / 3);
            // bottom arcs bulge up, top arcs bulge down
            let sweep = match (from.side, x2 > x1) {
                (Side::L, true) | (Side::R, false) => 1,
                _ => 0,
            };
            format!("M {x1} {y1} A {rx} {ry} 0 0 {sweep} {x2} {y2}")
        } else {
            let mid = (self.top + self.bottom) / 2;
            format!("M {x1} {y1} C {x1} {mid}, {x2} {mid}, {x2} {y2}")
        }
    }
}

pub fn render_diagram(model: &StrandModel, options: RenderOptions) -> String {
    let p = model.p();
    let side = STEP * (p + 1);
    let frame = Frame { width: side + 2 * MARGIN, top: MARGIN, bottom: MARGIN + side };
    let mut out = String::new();
    let w = frame.width;
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{w}" viewBox="0 0 {w} {w}">"#);
    let _ = writeln!(out, "<title>{}</title>", model.params);
    out.push_str(concat!(
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto-start-reverse">"#,
        r#"<path d="M 0 0 L 10 5 L 0 10 z" fill="context-stroke"/></marker></defs>"#,
        "\n"
    ));
    let (l, r, t, b) = (MARGIN, MARGIN + side, frame.top, frame.bottom);
    let _ = writeln!(
        out,
        r##"<rect x="{l}" y="{t}" width="{side}" height="{side}" fill="none" stroke="#999" stroke-dasharray="4 4"/>"##
    );
    for y in [t, b] {
        let _ = writeln!(out, r#"<line x1="{l}" y1="{y}" x2="{r}" y2="{y}" stroke="black" stroke-width="2"/>"#);
    }
    for k in 1..=p {
        for f in [Foot::l(k), Foot::r(k)] {
            let (x, y) = frame.at(f, 0);
            let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="3" fill="black"/>"#);
        }
    }
    for comp in &model.components {
        for arc in comp {
            let d = frame.path(arc.from, arc.to, 0);
            let c = color(arc.kind);
            let _ =
                writeln!(out, r#"<path d="{d}" fill="none" stroke="{c}" stroke-width="2" marker-end="url(#arrow)"/>"#);
        }
    }
    let q = model.params.q;
    let zx = MARGIN + STEP * if q > 0 { q } else { p } + STEP / 2;
    let wx = MARGIN + STEP * (model.params.r + q) + STEP / 2;
    let zy = b - STEP / 4;
    let wy = t + STEP / 4;
    let _ = writeln!(out, r#"<text x="{zx}" y="{zy}" text-anchor="middle" font-size="14">z</text>"#);
    let _ = writeln!(
        out,
        r#"<text x="{wx}" y="{wy}" text-anchor="middle" dominant-baseline="hanging" font-size="14">w</text>"#
    );
    if options.sutures {
        let zc = b - STEP / 3;
        let _ = writeln!(
            out,
            r##"<circle cx="{zx}" cy="{zc}" r="{}" fill="none" stroke="#d68910" stroke-width="1.5"/>"##,
            STEP / 4
        );
        for comp in &model.components {
            for arc in comp {
                let d = frame.path(arc.from, arc.to, STEP / 6);
                let _ = writeln!(
                    out,
                    r##"<path d="{d}" fill="none" stroke="#d68910" stroke-width="1" stroke-dasharray="3 3"/>"##
                );
            }
        }
        let tr = model.suture_triple();
        let _ = writeln!(
            out,
            r#"<text x="{l}" y="{}" font-size="12">|γ1∩α1|={} |γ1∩α2|={} |γ3∩α1|={} |γ3∩α2|={}</text>"#,
            frame.width - 8,
            tr.gamma1_alpha1,
            tr.gamma1_alpha2,
            tr.gamma3_alpha1,
            tr.gamma3_alpha2
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Leaves in order along the bottom; parents centred over their children.
pub fn render_tree(tree: &CertificateTree) -> String {
    struct Placed {
        x: i64,
        y: i64,
        label: String,
        parent: Option<usize>,
    }
    fn place(
        t: &CertificateTree,
        depth: i64,
        parent: Option<usize>,
        next_leaf: &mut i64,
        out: &mut Vec<Placed>,
    ) -> i64 {
        let me = out.len();
        let label = format!("{} : {}", t.params, t.bound);
        out.push(Placed { x: 0, y: 40 + 70 * depth, label, parent });
        let x = if t.children.is_empty() {
            *next_leaf += 1;
            *next_leaf * 130
        } else {
            let xs: Vec<i64> = t.children.iter().map(|c| place(c, depth + 1, Some(me), next_leaf, out)).collect();
            xs.iter().sum::<i64>() / xs.len() as i64
        };
        out[me].x = x;
        x
    }
    let mut nodes = Vec::new();
    let mut leaves = 0;
    place(tree, 0, None, &mut leaves, &mut nodes);
    let width = 130 * (leaves + 1);
    let height = nodes.iter().map(|n| n.y).max().unwrap_or(0) + 40;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, "<title>certificate for {}</title>", tree.params);
    for n in &nodes {
        if let Some(p) = n.parent {
            let (x1, y1, x2, y2) = (nodes[p].x, nodes[p].y + 10, n.x, n.y - 14);
            let _ = writeln!(out, r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#555"/>"##);
        }
    }
    for n in &nodes {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle" font-family="monospace" font-size="12">{}</text>"#,
            n.x, n.y, n.label
        );
    }
    out.push_str("</svg>\n");
    out
}
