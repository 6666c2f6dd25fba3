//! Deterministic SVG drawings of planar projections: joints as labeled
//! circles, bars as segments, viewBox fitted with a 10% margin. All floats
//! are printed with six decimals and nothing varies between runs, so output
//! is byte-identical for identical input.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::geometry::Framework;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("axis {axis} is out of range for dimension {dim}")]
    BadAxis { axis: usize, dim: usize },
}

const SCALE: f64 = 100.0;
const JOINT_RADIUS: f64 = 7.0;

/// Renders the framework projected onto the two 1-based coordinate axes.
pub fn render_svg(framework: &Framework, axes: (usize, usize)) -> Result<String, RenderError> {
    let dim = framework.dim();
    for axis in [axes.0, axes.1] {
        if axis == 0 || axis > dim {
            return Err(RenderError::BadAxis { axis, dim });
        }
    }
    let (ax, ay) = (axes.0 - 1, axes.1 - 1);

    let projected: Vec<(u32, f64, f64)> = framework
        .config()
        .points()
        .iter()
        .map(|(&id, p)| {
            let x = p[ax].to_f64().expect("coordinate fits in an f64");
            let y = p[ay].to_f64().expect("coordinate fits in an f64");
            (id, x, y)
        })
        .collect();

    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for &(_, x, y) in &projected {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    if projected.is_empty() {
        min_x = 0.0;
        max_x = 1.0;
        min_y = 0.0;
        max_y = 1.0;
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let margin = 0.1 * span;

    // Flip the vertical axis so the drawing follows the usual mathematical
    // orientation.
    let to_px = |x: f64, y: f64| {
        (
            (x - min_x + margin) * SCALE,
            (max_y + margin - y) * SCALE,
        )
    };
    let width = (max_x - min_x + 2.0 * margin) * SCALE;
    let height = (max_y - min_y + 2.0 * margin) * SCALE;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width:.6} {height:.6}" width="{width:.6}" height="{height:.6}">"#
    );

    let _ = writeln!(svg, r##"  <g stroke="#374151" stroke-width="2.000000">"##);
    for edge in framework.graph().edges() {
        let (u, v) = edge.endpoints();
        let &(_, ux, uy) = projected
            .iter()
            .find(|(id, _, _)| *id == u)
            .expect("edge endpoint is projected");
        let &(_, vx, vy) = projected
            .iter()
            .find(|(id, _, _)| *id == v)
            .expect("edge endpoint is projected");
        let (x1, y1) = to_px(ux, uy);
        let (x2, y2) = to_px(vx, vy);
        let _ = writeln!(
            svg,
            r#"    <line x1="{x1:.6}" y1="{y1:.6}" x2="{x2:.6}" y2="{y2:.6}"/>"#
        );
    }
    let _ = writeln!(svg, "  </g>");

    let _ = writeln!(
        svg,
        r##"  <g fill="#ffffff" stroke="#111827" stroke-width="1.500000">"##
    );
    for &(_, x, y) in &projected {
        let (cx, cy) = to_px(x, y);
        let _ = writeln!(
            svg,
            r#"    <circle cx="{cx:.6}" cy="{cy:.6}" r="{JOINT_RADIUS:.6}"/>"#
        );
    }
    let _ = writeln!(svg, "  </g>");

    let _ = writeln!(
        svg,
        r##"  <g font-family="Helvetica,Arial,sans-serif" font-size="11.000000" fill="#111827" text-anchor="middle">"##
    );
    for &(id, x, y) in &projected {
        let (cx, cy) = to_px(x, y);
        let ty = cy + 3.5;
        let _ = writeln!(svg, r#"    <text x="{cx:.6}" y="{ty:.6}">{id}</text>"#);
    }
    let _ = writeln!(svg, "  </g>");
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}
