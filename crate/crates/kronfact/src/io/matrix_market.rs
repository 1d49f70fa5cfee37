//! Matrix Market and edge-list parsing.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::pattern::{BinaryPattern, Coordinate};

/// Contents of a Matrix Market file.
#[derive(Debug, Clone)]
pub enum MatrixMarketData {
    Pattern(BinaryPattern),
    Real(DenseMatrix<f64>),
}

impl MatrixMarketData {
    /// The sparsity pattern of the data: identity for pattern files, the
    /// positions of the nonzero entries for real files.
    pub fn into_pattern(self) -> Result<BinaryPattern> {
        match self {
            MatrixMarketData::Pattern(p) => Ok(p),
            MatrixMarketData::Real(m) => m.sparsity_pattern(),
        }
    }

    pub fn into_real(self) -> Result<DenseMatrix<f64>> {
        match self {
            MatrixMarketData::Real(m) => Ok(m),
            MatrixMarketData::Pattern(_) => Err(Error::domain(
                "expected a real matrix, found a pattern file",
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Coordinate,
    Array,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Pattern,
    Real,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
}

struct Header {
    format: Format,
    field: Field,
    symmetry: Symmetry,
}

fn parse_header(line: &str) -> Result<Header> {
    let mut words = line.split_whitespace();
    if words.next() != Some("%%MatrixMarket") {
        return Err(Error::parse(1, "file must start with %%MatrixMarket"));
    }
    if words.next() != Some("matrix") {
        return Err(Error::parse(1, "object must be \"matrix\""));
    }
    let format = match words.next() {
        Some("coordinate") => Format::Coordinate,
        Some("array") => Format::Array,
        other => {
            return Err(Error::parse(
                1,
                format!("format must be \"coordinate\" or \"array\", got {other:?}"),
            ))
        }
    };
    let field = match words.next() {
        Some("pattern") => Field::Pattern,
        Some("real") => Field::Real,
        other => {
            return Err(Error::parse(
                1,
                format!("field must be \"pattern\" or \"real\", got {other:?}"),
            ))
        }
    };
    let symmetry = match words.next() {
        Some("general") => Symmetry::General,
        Some("symmetric") => Symmetry::Symmetric,
        other => {
            return Err(Error::parse(
                1,
                format!("symmetry must be \"general\" or \"symmetric\", got {other:?}"),
            ))
        }
    };
    if format == Format::Array && field == Field::Pattern {
        return Err(Error::parse(
            1,
            "pattern matrices require coordinate format",
        ));
    }
    Ok(Header {
        format,
        field,
        symmetry,
    })
}

/// Reads a Matrix Market file: `coordinate pattern`, `coordinate real` or
/// `array real`, each `general` or `symmetric`. Symmetric data is expanded;
/// duplicate pattern entries collapse, duplicate real entries are summed.
/// Only square matrices are accepted.
pub fn read_matrix_market(path: &Path) -> Result<MatrixMarketData> {
    let file = File::open(path)?;
    read_matrix_market_from(BufReader::new(file))
}

pub fn read_matrix_market_from(reader: impl BufRead) -> Result<MatrixMarketData> {
    let mut lines = reader.lines().enumerate();
    let (_, first) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let header = parse_header(&first?)?;

    // Data lines with their 1-based line numbers; comments and blanks skipped.
    let mut data = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        data.push((idx + 1, trimmed.to_string()));
    }
    let (&(dims_line, ref dims), entries) = data
        .split_first()
        .ok_or_else(|| Error::parse(1, "missing dimension line"))?;

    match header.format {
        Format::Coordinate => {
            let (rows, cols, nnz) = parse_coordinate_dims(dims_line, dims)?;
            require_square(rows, cols)?;
            if entries.len() != nnz {
                return Err(Error::parse(
                    dims_line,
                    format!("expected {nnz} entries, found {}", entries.len()),
                ));
            }
            match header.field {
                Field::Pattern => {
                    read_coordinate_pattern(rows, entries, header.symmetry == Symmetry::Symmetric)
                }
                Field::Real => {
                    read_coordinate_real(rows, entries, header.symmetry == Symmetry::Symmetric)
                }
            }
        }
        Format::Array => {
            let (rows, cols) = parse_array_dims(dims_line, dims)?;
            require_square(rows, cols)?;
            read_array_real(
                rows,
                entries,
                header.symmetry == Symmetry::Symmetric,
                dims_line,
            )
        }
    }
}

fn require_square(rows: usize, cols: usize) -> Result<()> {
    if rows != cols {
        return Err(Error::domain(format!(
            "only square matrices are supported, got {rows}x{cols}"
        )));
    }
    Ok(())
}

fn parse_coordinate_dims(line_no: usize, line: &str) -> Result<(usize, usize, usize)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(Error::parse(
            line_no,
            "dimension line must be \"rows cols nnz\"",
        ));
    }
    Ok((
        parse_number(line_no, fields[0], "rows")?,
        parse_number(line_no, fields[1], "cols")?,
        parse_number::<usize>(line_no, fields[2], "nnz")?,
    ))
}

fn parse_array_dims(line_no: usize, line: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::parse(
            line_no,
            "dimension line must be \"rows cols\"",
        ));
    }
    Ok((
        parse_number(line_no, fields[0], "rows")?,
        parse_number(line_no, fields[1], "cols")?,
    ))
}

fn parse_number<T: std::str::FromStr>(line_no: usize, text: &str, what: &str) -> Result<T> {
    text.parse()
        .map_err(|_| Error::parse(line_no, format!("cannot parse {what} from {text:?}")))
}

fn parse_entry_index(line_no: usize, text: &str, n: usize, what: &str) -> Result<usize> {
    let value: usize = parse_number(line_no, text, what)?;
    if value < 1 || value > n {
        return Err(Error::parse(
            line_no,
            format!("{what} {value} out of range 1..={n}"),
        ));
    }
    Ok(value)
}

fn read_coordinate_pattern(
    n: usize,
    entries: &[(usize, String)],
    symmetric: bool,
) -> Result<MatrixMarketData> {
    let mut coords = Vec::with_capacity(entries.len() * if symmetric { 2 } else { 1 });
    for &(line_no, ref line) in entries {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(line_no, "pattern entry must be \"row col\""));
        }
        let i = parse_entry_index(line_no, fields[0], n, "row")?;
        let j = parse_entry_index(line_no, fields[1], n, "col")?;
        coords.push(Coordinate::new(i as u64, j as u64));
        if symmetric && i != j {
            coords.push(Coordinate::new(j as u64, i as u64));
        }
    }
    Ok(MatrixMarketData::Pattern(BinaryPattern::from_coordinates(
        n as u64, coords,
    )?))
}

fn read_coordinate_real(
    n: usize,
    entries: &[(usize, String)],
    symmetric: bool,
) -> Result<MatrixMarketData> {
    let mut m = DenseMatrix::<f64>::zeros(n, n);
    for &(line_no, ref line) in entries {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::parse(
                line_no,
                "real entry must be \"row col value\"",
            ));
        }
        let i = parse_entry_index(line_no, fields[0], n, "row")?;
        let j = parse_entry_index(line_no, fields[1], n, "col")?;
        let v: f64 = parse_number(line_no, fields[2], "value")?;
        if !v.is_finite() {
            return Err(Error::parse(line_no, "value must be finite"));
        }
        m.set(i - 1, j - 1, m.get(i - 1, j - 1) + v);
        if symmetric && i != j {
            m.set(j - 1, i - 1, m.get(j - 1, i - 1) + v);
        }
    }
    Ok(MatrixMarketData::Real(m))
}

fn read_array_real(
    n: usize,
    entries: &[(usize, String)],
    symmetric: bool,
    dims_line: usize,
) -> Result<MatrixMarketData> {
    let mut values = Vec::new();
    for &(line_no, ref line) in entries {
        for field in line.split_whitespace() {
            let v: f64 = parse_number(line_no, field, "value")?;
            if !v.is_finite() {
                return Err(Error::parse(line_no, "value must be finite"));
            }
            values.push(v);
        }
    }
    let mut m = DenseMatrix::<f64>::zeros(n, n);
    if symmetric {
        // Lower triangle, column by column.
        let expected = n * (n + 1) / 2;
        if values.len() != expected {
            return Err(Error::parse(
                dims_line,
                format!("expected {expected} values, found {}", values.len()),
            ));
        }
        let mut it = values.into_iter();
        for j in 0..n {
            for i in j..n {
                let v = it.next().expect("length checked");
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
    } else {
        if values.len() != n * n {
            return Err(Error::parse(
                dims_line,
                format!("expected {} values, found {}", n * n, values.len()),
            ));
        }
        for (idx, v) in values.into_iter().enumerate() {
            m.set(idx % n, idx / n, v);
        }
    }
    Ok(MatrixMarketData::Real(m))
}

/// Reads a whitespace edge list (`u v` per line, `%` or `#` comments); the
/// matrix size is the largest index seen.
pub fn read_edge_list(path: &Path) -> Result<BinaryPattern> {
    let file = File::open(path)?;
    read_edge_list_from(BufReader::new(file))
}

pub fn read_edge_list_from(reader: impl BufRead) -> Result<BinaryPattern> {
    let mut edges = Vec::new();
    let mut max = 0u64;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') || trimmed.starts_with('#') {
            continue;
        }
        let line_no = idx + 1;
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(line_no, "edge must be \"u v\""));
        }
        let u: u64 = parse_number(line_no, fields[0], "u")?;
        let v: u64 = parse_number(line_no, fields[1], "v")?;
        if u < 1 || v < 1 {
            return Err(Error::parse(line_no, "vertex indices are 1-based"));
        }
        max = max.max(u).max(v);
        edges.push(Coordinate::new(u, v));
    }
    if edges.is_empty() {
        return Err(Error::parse(1, "edge list contains no edges"));
    }
    BinaryPattern::from_coordinates(max, edges)
}

/// Reads a pattern from either format: Matrix Market (real files are
/// reduced to their sparsity pattern) or a plain edge list.
pub fn read_pattern(path: &Path) -> Result<BinaryPattern> {
    let file = File::open(path)?;
    let mut reader = BufReader::new(file);
    let mut first = String::new();
    reader.read_line(&mut first)?;
    let rest = reader;
    if first.starts_with("%%MatrixMarket") {
        let chained = std::io::Cursor::new(first).chain(rest);
        read_matrix_market_from(BufReader::new(chained))?.into_pattern()
    } else {
        let chained = std::io::Cursor::new(first).chain(rest);
        read_edge_list_from(BufReader::new(chained))
    }
}

/// Writes a pattern as `coordinate pattern general`, entries in column-major
/// order.
pub fn write_pattern_coordinate(pattern: &BinaryPattern, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_pattern_coordinate_to(pattern, &mut w)
}

pub fn write_pattern_coordinate_to(pattern: &BinaryPattern, w: &mut impl Write) -> Result<()> {
    writeln!(w, "%%MatrixMarket matrix coordinate pattern general")?;
    writeln!(w, "{} {} {}", pattern.size(), pattern.size(), pattern.nnz())?;
    for c in pattern.coordinates() {
        writeln!(w, "{} {}", c.row, c.col)?;
    }
    Ok(())
}

/// Writes a dense matrix as `array real general` with 17 significant
/// digits, enough for an exact `f64` round trip.
pub fn write_real_array(m: &DenseMatrix<f64>, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_real_array_to(m, &mut w)
}

pub fn write_real_array_to(m: &DenseMatrix<f64>, w: &mut impl Write) -> Result<()> {
    writeln!(w, "%%MatrixMarket matrix array real general")?;
    writeln!(w, "{} {}", m.rows(), m.cols())?;
    for v in m.values() {
        writeln!(w, "{v:.16e}")?;
    }
    Ok(())
}
