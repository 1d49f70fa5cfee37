//! SVG rendering of Kronecker graph layouts.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::Result;
use crate::layout::{EdgeSegment, LayoutResult};
use crate::scalar::Scalar;

/// Rendering options. Vertex and stroke sizes are expressed relative to the
/// smallest inter-vertex distance at the deepest layout level, so drawings
/// stay legible at any scale.
#[derive(Debug, Clone)]
pub struct SvgStyle {
    pub stroke_opacity: f64,
    /// Draw arrowheads on directed edges; off by default.
    pub arrowheads: bool,
    pub edge_color: String,
    pub vertex_color: String,
    /// Vertex radius as a fraction of the smallest inter-vertex distance.
    pub vertex_radius_factor: f64,
    /// Stroke width as a fraction of the vertex radius.
    pub stroke_width_factor: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle {
            stroke_opacity: 0.6,
            arrowheads: false,
            edge_color: "#555555".to_string(),
            vertex_color: "#1f78b4".to_string(),
            vertex_radius_factor: 0.3,
            stroke_width_factor: 0.25,
        }
    }
}

/// Writes vertices and edges as a standalone SVG; byte-identical output for
/// identical inputs and style.
pub fn write_svg<T: Scalar>(
    layout: &LayoutResult<T>,
    segments: &[EdgeSegment<T>],
    style: &SvgStyle,
    path: &Path,
) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_svg_to(layout, segments, style, &mut w)
}

pub fn write_svg_to<T: Scalar>(
    layout: &LayoutResult<T>,
    segments: &[EdgeSegment<T>],
    style: &SvgStyle,
    w: &mut impl Write,
) -> Result<()> {
    let to_f64 = |v: T| v.to_f64().expect("coordinate fits f64");
    let points: Vec<(f64, f64)> = layout
        .positions()
        .iter()
        .map(|&(x, y)| (to_f64(x), to_f64(y)))
        .collect();

    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &points {
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    }
    let radius = style.vertex_radius_factor * to_f64(layout.min_spacing());
    let stroke = style.stroke_width_factor * radius;

    // Bounding box of the drawn geometry (vertex markers included, which
    // also keeps a one-vertex layout non-degenerate), plus a 5% margin.
    let loop_reach = 1.6 * radius + stroke;
    min_x -= loop_reach;
    min_y -= loop_reach;
    max_x += loop_reach;
    max_y += loop_reach;
    let extent = (max_x - min_x).max(max_y - min_y);
    let margin = 0.05 * extent;

    writeln!(w, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>")?;
    writeln!(
        w,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        min_x - margin,
        min_y - margin,
        (max_x - min_x) + 2.0 * margin,
        (max_y - min_y) + 2.0 * margin
    )?;
    if style.arrowheads {
        writeln!(
            w,
            "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" \
             markerWidth=\"4\" markerHeight=\"4\" orient=\"auto-start-reverse\">\
             <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"{}\"/></marker></defs>",
            style.edge_color
        )?;
    }
    writeln!(
        w,
        "<g stroke=\"{}\" stroke-width=\"{}\" stroke-opacity=\"{}\" fill=\"none\">",
        style.edge_color, stroke, style.stroke_opacity
    )?;
    let marker = if style.arrowheads {
        " marker-end=\"url(#arrow)\""
    } else {
        ""
    };
    for s in segments {
        if s.self_loop {
            // Loops are degenerate segments; drawn as a ring around the vertex.
            writeln!(
                w,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                to_f64(s.from.0),
                to_f64(s.from.1),
                1.6 * radius
            )?;
        } else {
            writeln!(
                w,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"{}/>",
                to_f64(s.from.0),
                to_f64(s.from.1),
                to_f64(s.to.0),
                to_f64(s.to.1),
                marker
            )?;
        }
    }
    writeln!(w, "</g>")?;
    writeln!(w, "<g fill=\"{}\" stroke=\"none\">", style.vertex_color)?;
    for &(x, y) in &points {
        writeln!(w, "<circle cx=\"{x}\" cy=\"{y}\" r=\"{radius}\"/>")?;
    }
    writeln!(w, "</g>")?;
    writeln!(w, "</svg>")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{edge_segments, layout_positions, LayoutConfig};
    use crate::pattern::BinaryPattern;

    fn render(sizes: &[u64], a: &BinaryPattern) -> String {
        let layout =
            layout_positions(&LayoutConfig::<f64>::with_default_radii(sizes.to_vec()).unwrap());
        let segments = edge_segments(a, &layout).unwrap();
        let mut buffer = Vec::new();
        write_svg_to(&layout, &segments, &SvgStyle::default(), &mut buffer).unwrap();
        String::from_utf8(buffer).unwrap()
    }

    #[test]
    fn element_counts_match_layout() {
        let a1 = BinaryPattern::from_coordinates(
            4,
            [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 4)],
        )
        .unwrap();
        let a2 = BinaryPattern::from_coordinates(3, [(1, 1), (2, 1), (2, 2), (3, 3)]).unwrap();
        let a3 = BinaryPattern::from_coordinates(2, [(1, 2), (2, 1)]).unwrap();
        let adjacency = a1.kron(&a2).kron(&a3);
        let svg = render(&[4, 3, 2], &adjacency);
        assert_eq!(svg.matches("<circle").count(), 24);
        assert_eq!(svg.matches("<line").count(), 56);
    }

    #[test]
    fn self_loops_render_as_rings() {
        let eye = BinaryPattern::identity(4).unwrap();
        let svg = render(&[2, 2], &eye);
        // 4 vertex dots + 4 loop rings, no line segments.
        assert_eq!(svg.matches("<circle").count(), 8);
        assert_eq!(svg.matches("<line").count(), 0);
    }

    #[test]
    fn output_is_byte_identical_across_runs() {
        let a = BinaryPattern::identity(6).unwrap();
        assert_eq!(render(&[3, 2], &a), render(&[3, 2], &a));
    }

    #[test]
    fn arrowheads_are_optional() {
        let a = BinaryPattern::from_coordinates(6, [(1, 2)]).unwrap();
        let layout =
            layout_positions(&LayoutConfig::<f64>::with_default_radii(vec![3, 2]).unwrap());
        let segments = edge_segments(&a, &layout).unwrap();
        let style = SvgStyle {
            arrowheads: true,
            ..SvgStyle::default()
        };
        let mut buffer = Vec::new();
        write_svg_to(&layout, &segments, &style, &mut buffer).unwrap();
        let svg = String::from_utf8(buffer).unwrap();
        assert!(svg.contains("marker-end"));
    }
}
