//! CSV and JSON writers. Floats use the shortest decimal that round-trips.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

/// Shortest round-trip decimal; empty for `None`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// Accumulates CSV text in memory so a file is written in one go.
pub struct Csv {
    buf: String,
    width: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut buf = header.join(",");
        buf.push('\n');
        Csv { buf, width: header.len() }
    }

    pub fn row<S: AsRef<str>>(&mut self, cells: &[S]) {
        debug_assert_eq!(cells.len(), self.width);
        for (k, c) in cells.iter().enumerate() {
            if k > 0 {
                self.buf.push(',');
            }
            self.buf.push_str(c.as_ref());
        }
        self.buf.push('\n');
    }

    pub fn push_point(&mut self, u: f64, v: f64) {
        let _ = writeln!(self.buf, "{},{}", fmt_f64(u), fmt_f64(v));
    }

    pub fn as_str(&self) -> &str {
        &self.buf
    }
}

pub fn ensure_dir(dir: &Path) -> io::Result<()> {
    fs::create_dir_all(dir)
}

pub fn write_text(path: &Path, text: &str) -> io::Result<()> {
    let mut f = io::BufWriter::new(fs::File::create(path)?);
    f.write_all(text.as_bytes())?;
    f.flush()
}

pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0, -2.5e-17, 1.0 / 3.0, 6.02214076e23, f64::MIN_POSITIVE] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_f64(0.1), "0.1");
        assert_eq!(fmt_opt(None), "");
    }

    #[test]
    fn csv_rows() {
        let mut c = Csv::new(&["u", "v"]);
        c.push_point(0.5, -1.0);
        c.row(&["a", "b"]);
        assert_eq!(c.as_str(), "u,v\n0.5,-1.0\na,b\n");
    }
}
