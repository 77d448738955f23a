use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use qwalk::io::DECIMAL_DIGITS;
use qwalk::Dyadic;
use serde::Serialize;

/// Send `text` to the `--out` file, or stdout when none was given.
pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn decimal(d: &Dyadic) -> String {
    d.to_decimal_string(DECIMAL_DIGITS)
}

/// Exact value followed by its decimal, e.g. `5/2^2 (1.25)`.
pub fn exact_and_decimal(d: &Dyadic) -> String {
    format!("{d} ({})", decimal(d))
}

/// Right-aligned plain-text table.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}", w = *w))
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_alignment() {
        let t = text_table(&["n", "value"], &[vec!["1".into(), "10".into()]]);
        assert_eq!(t, "n  value\n1     10\n");
    }

    #[test]
    fn exact_first() {
        assert_eq!(exact_and_decimal(&Dyadic::new(5, 2)), "5/2^2 (1.25)");
    }
}
