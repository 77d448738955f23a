//! Text formats: decoherence matrices, count vectors, Table-1 style CSV,
//! OEIS b-files and complement-measure tables. Every writer has a matching
//! reader that reproduces the exact values.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::combinatorics::SequenceQuad;
use crate::decoherence::DecoherenceMatrix;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::pathspace::CountVector;

/// Significant digits used for decimal renderings next to exact values.
pub const DECIMAL_DIGITS: usize = 12;

/// First line of an exported matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixHeader {
    pub level: u32,
    pub scale_exponent: u32,
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

/// `# {"level":n,"scale_exponent":n}` followed by one CSV row of signs per
/// matrix row. Entry `(j,k)` is `sign / 2^scale_exponent`.
pub fn write_matrix(m: &DecoherenceMatrix) -> String {
    let header = MatrixHeader {
        level: m.level(),
        scale_exponent: m.scale_exponent(),
    };
    let mut out = format!(
        "# {}\n",
        serde_json::to_string(&header).expect("header serializes")
    );
    for j in 0..m.dim() {
        let row = m.row(j);
        for (k, s) in row.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            write!(out, "{s}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn read_matrix(text: &str) -> Result<DecoherenceMatrix> {
    let mut lines = text.lines();
    let first = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty matrix file"))?;
    let json = first
        .strip_prefix('#')
        .ok_or_else(|| parse_err(1, "missing '#' JSON header"))?;
    let header: MatrixHeader = serde_json::from_str(json.trim()).map_err(|e| parse_err(1, e))?;
    if header.scale_exponent != header.level {
        return Err(parse_err(
            1,
            format!(
                "scale exponent {} does not match level {}",
                header.scale_exponent, header.level
            ),
        ));
    }
    let mut signs = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        for field in line.split(',') {
            let s: i8 = field
                .trim()
                .parse()
                .map_err(|e| parse_err(i + 2, format!("{field:?}: {e}")))?;
            signs.push(s);
        }
    }
    DecoherenceMatrix::from_signs(header.level, signs)
}

/// `index,value` CSV.
pub fn write_count_vector_csv(v: &CountVector) -> String {
    let mut out = String::from("index,value\n");
    for (j, x) in v.values().iter().enumerate() {
        writeln!(out, "{j},{x}").unwrap();
    }
    out
}

pub fn read_count_vector_csv(text: &str) -> Result<CountVector> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let (idx, val) = line
            .split_once(',')
            .ok_or_else(|| parse_err(i + 1, "expected index,value"))?;
        let idx: usize = idx.trim().parse().map_err(|e| parse_err(i + 1, e))?;
        if idx != values.len() {
            return Err(parse_err(i + 1, format!("index {idx} out of order")));
        }
        values.push(val.trim().parse::<u8>().map_err(|e| parse_err(i + 1, e))?);
    }
    let len = values.len();
    if !len.is_power_of_two() || len < 2 {
        return Err(Error::Parse(format!(
            "vector length {len} is not 2^n with n ≥ 1"
        )));
    }
    CountVector::new(len.trailing_zeros(), values)
}

pub const TABLE_HEADER: &str = "n,s,t,u,v,2^(n-2)";

/// Table-1 layout: `n,s,t,u,v,2^(n-2)`, the last column as an exact dyadic.
pub fn write_table_csv(rows: &[SequenceQuad]) -> String {
    let mut out = format!("{TABLE_HEADER}\n");
    for q in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            q.n,
            q.s,
            q.t,
            q.u,
            q.v,
            q.reference()
        )
        .unwrap();
    }
    out
}

pub fn read_table_csv(text: &str) -> Result<Vec<SequenceQuad>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == TABLE_HEADER => {}
        _ => return Err(parse_err(1, format!("expected header {TABLE_HEADER:?}"))),
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 6 {
            return Err(parse_err(i + 2, "expected 6 fields"));
        }
        let n: u64 = fields[0].parse().map_err(|e| parse_err(i + 2, e))?;
        let mut vals: [BigUint; 4] = Default::default();
        for (slot, f) in vals.iter_mut().zip(&fields[1..5]) {
            *slot = f.parse().map_err(|e| parse_err(i + 2, e))?;
        }
        let q = SequenceQuad::from_array(n, vals);
        let reference: Dyadic = fields[5].parse()?;
        if reference != q.reference() {
            return Err(parse_err(
                i + 2,
                format!("2^(n-2) column {reference} is wrong for n = {n}"),
            ));
        }
        rows.push(q);
    }
    Ok(rows)
}

/// OEIS b-file: one `index value` pair per line.
pub fn write_bfile<'a, I>(entries: I) -> String
where
    I: IntoIterator<Item = (u64, &'a BigUint)>,
{
    let mut out = String::new();
    for (n, v) in entries {
        writeln!(out, "{n} {v}").unwrap();
    }
    out
}

pub fn read_bfile(text: &str) -> Result<Vec<(u64, BigUint)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(n), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(parse_err(i + 1, "expected `index value`"));
        };
        out.push((
            n.parse().map_err(|e| parse_err(i + 1, e))?,
            v.parse().map_err(|e| parse_err(i + 1, e))?,
        ));
    }
    Ok(out)
}

/// One row of a complement-measure export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementRecord {
    pub n: u32,
    pub mu: Dyadic,
    pub decimal: String,
}

pub const COMPLEMENT_HEADER: &str = "n,mu,decimal";

pub fn write_complement_csv(rows: &[ComplementRecord]) -> String {
    let mut out = format!("{COMPLEMENT_HEADER}\n");
    for r in rows {
        writeln!(out, "{},{},{}", r.n, r.mu, r.decimal).unwrap();
    }
    out
}

pub fn read_complement_csv(text: &str) -> Result<Vec<ComplementRecord>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(parse_err(i + 1, "expected n,mu,decimal"));
        }
        rows.push(ComplementRecord {
            n: fields[0].parse().map_err(|e| parse_err(i + 1, e))?,
            mu: fields[1].parse()?,
            decimal: fields[2].to_string(),
        });
    }
    Ok(rows)
}
