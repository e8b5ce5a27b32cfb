//! Deterministic SVG rendering of a patchworked curve on the diamond
//! `|x| + |y| <= d`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use patchwork_lab_core::haas::HaasPlan;
use patchwork_lab_core::patchwork::{PatchworkCurve, Point};

const UNIT: i64 = 24;
const MARGIN: i64 = 16;

/// Maps doubled diamond coordinates to pixels.
fn px(d: i64, p: Point) -> (i64, i64) {
    (MARGIN + (p.0 + 2 * d) * UNIT / 2, MARGIN + (2 * d - p.1) * UNIT / 2)
}

fn doubled(p: Point) -> Point {
    (2 * p.0, 2 * p.1)
}

pub fn render_curve(curve: &PatchworkCurve) -> String {
    render(curve, None)
}

/// Also outlines the zones of the plan in the positive quadrant.
pub fn render_haas(curve: &PatchworkCurve, plan: &HaasPlan) -> String {
    render(curve, Some(plan))
}

fn render(curve: &PatchworkCurve, plan: Option<&HaasPlan>) -> String {
    let d = i64::from(curve.d);
    let size = 2 * MARGIN + 2 * d * UNIT;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    )
    .unwrap();
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    let mut edges = BTreeSet::new();
    let mut vertices = BTreeMap::new();
    for cell in &curve.cells {
        for i in 0..3 {
            let (p, q) = (cell.points[i], cell.points[(i + 1) % 3]);
            edges.insert(if p < q { (p, q) } else { (q, p) });
            vertices.insert(cell.points[i], cell.signs[i]);
        }
    }
    out.push_str("<g stroke=\"#c8c8c8\" stroke-width=\"1\">\n");
    for (p, q) in edges {
        let (a, b) = (px(d, doubled(p)), px(d, doubled(q)));
        writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, a.0, a.1, b.0, b.1).unwrap();
    }
    out.push_str("</g>\n");

    if let Some(plan) = plan {
        out.push_str("<g fill=\"none\" stroke=\"#3060c0\" stroke-width=\"1.5\" stroke-dasharray=\"4 3\">\n");
        for zone in &plan.zones {
            let pts: Vec<String> = zone
                .polygon
                .iter()
                .map(|&p| {
                    let (x, y) = px(d, doubled(p));
                    format!("{x},{y}")
                })
                .collect();
            writeln!(out, r#"<polygon points="{}"/>"#, pts.join(" ")).unwrap();
        }
        out.push_str("</g>\n");
    }

    out.push_str("<g stroke=\"#d02020\" stroke-width=\"2.5\" stroke-linecap=\"round\">\n");
    for seg in &curve.segments {
        let (a, b) = (px(d, seg.from), px(d, seg.to));
        writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, a.0, a.1, b.0, b.1).unwrap();
    }
    out.push_str("</g>\n");

    out.push_str("<g stroke=\"black\" stroke-width=\"1\">\n");
    for (p, sign) in vertices {
        let (x, y) = px(d, doubled(p));
        let fill = if sign > 0 { "black" } else { "white" };
        writeln!(out, r#"<circle cx="{x}" cy="{y}" r="3" fill="{fill}"/>"#).unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use patchwork_lab_core::patchwork::{build_patchwork, random_convex_primitive_triangulation, SignDistribution};

    #[test]
    fn renders_every_segment() {
        let t = random_convex_primitive_triangulation(3, 2).unwrap();
        let s = SignDistribution::from_bits(t.vertices.len(), 0b1011_0110);
        let curve = build_patchwork(&t, &s).unwrap();
        let svg = render_curve(&curve);
        assert_eq!(svg, render_curve(&curve));
        let red = svg.split("stroke=\"#d02020\"").nth(1).unwrap().split("</g>").next().unwrap();
        assert_eq!(red.matches("<line").count(), curve.segments.len());
        // lattice points of the diamond |x| + |y| <= 3
        assert_eq!(svg.matches("<circle").count(), 25);
    }
}
