//! DOT export of the decomposition graph.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::branch::DecompositionGraph;
use crate::error::Result;

/// Fixed palette cycled by branch id (ColorBrewer "Paired").
const PALETTE: [&str; 12] = [
    "#a6cee3", "#1f78b4", "#b2df8a", "#33a02c", "#fb9a99", "#e31a1c", "#fdbf6f", "#ff7f00",
    "#cab2d6", "#6a3d9a", "#ffff99", "#b15928",
];

/// Writes the graph as a deterministic DOT digraph: one line per vertex in
/// ascending order, one line per edge sorted by (branch, chain position),
/// each edge labeled `"p (branch k)"` and colored by its branch.
pub fn write_dot(graph: &DecompositionGraph, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_dot_to(graph, &mut w)
}

pub fn write_dot_to(graph: &DecompositionGraph, w: &mut impl Write) -> Result<()> {
    writeln!(w, "digraph decomposition {{")?;
    writeln!(w, "    rankdir=LR;")?;
    writeln!(w, "    node [shape=circle];")?;
    for v in graph.vertices() {
        writeln!(w, "    {v};")?;
    }
    for e in graph.edges() {
        let color = PALETTE[e.branch % PALETTE.len()];
        writeln!(
            w,
            "    {} -> {} [label=\"{} (branch {})\", color=\"{}\"];",
            e.from,
            e.to,
            e.weight,
            e.branch + 1,
            color
        )?;
    }
    writeln!(w, "}}")?;
    Ok(())
}
