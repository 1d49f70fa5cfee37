//! Readers and writers for all external formats.
//!
//! Matrix Market covers matrix exchange (pattern and real, coordinate and
//! array); a whitespace edge list is accepted for graph inputs. DOT, SVG
//! and JSON writers are byte-deterministic given identical inputs.

mod dot;
mod matrix_market;
mod report;
mod svg;

pub use dot::{write_dot, write_dot_to};
pub use matrix_market::{
    read_edge_list, read_edge_list_from, read_matrix_market, read_matrix_market_from, read_pattern,
    write_pattern_coordinate, write_pattern_coordinate_to, write_real_array, write_real_array_to,
    MatrixMarketData,
};
pub use report::{
    to_canonical_json, BranchReport, DecompositionReport, FactorReport, FactorizationReport,
    LayoutReport, NkpReport, PairReport, PositionReport,
};
pub use svg::{write_svg, write_svg_to, SvgStyle};

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::Result;

/// Serializes `value` as canonical JSON (sorted keys, trailing newline) and
/// writes it to `path`.
pub fn write_json<T: serde::Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut file = BufWriter::new(File::create(path)?);
    file.write_all(to_canonical_json(value)?.as_bytes())?;
    Ok(())
}
