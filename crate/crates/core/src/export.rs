//! CSV and JSON serialization of complex matrices and vectors.

use std::io::Write;

use serde::Serialize;

use crate::error::{JetError, Result};
use crate::kernel::C64;
use crate::linalg::CMat;

/// `"re,im"` with shortest round-trip formatting.
pub fn format_cell(c: C64) -> String {
    format!("{},{}", c.re, c.im)
}

/// Row-major CSV, one quoted `"re,im"` cell per entry.
pub fn write_matrix_csv<W: Write>(m: &CMat, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format_cell(m[(i, j)])).collect();
        w.write_record(&row).map_err(|e| JetError::InvalidArgument(format!("csv: {e}")))?;
    }
    w.flush().map_err(|e| JetError::InvalidArgument(format!("csv: {e}")))?;
    Ok(())
}

pub fn matrix_to_csv_string(m: &CMat) -> Result<String> {
    let mut buf = Vec::new();
    write_matrix_csv(m, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

pub fn read_matrix_csv(s: &str) -> Result<CMat> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(s.as_bytes());
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| JetError::InvalidArgument(format!("csv: {e}")))?;
        let row = rec
            .iter()
            .map(|cell| {
                let (re, im) = cell
                    .split_once(',')
                    .ok_or_else(|| JetError::InvalidArgument(format!("bad cell {cell:?}")))?;
                let p = |t: &str| t.trim().parse::<f64>().map_err(|e| JetError::InvalidArgument(format!("bad number {t:?}: {e}")));
                Ok(C64::new(p(re)?, p(im)?))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let n = rows.len();
    let k = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != k) {
        return Err(JetError::InvalidArgument("ragged csv".into()));
    }
    Ok(CMat::from_fn(n, k, |i, j| rows[i][j]))
}

/// Complex numbers as `[re, im]` pairs.
pub fn complex_pairs(v: &[C64]) -> Vec<[f64; 2]> {
    v.iter().map(|c| [c.re, c.im]).collect()
}

pub fn matrix_pairs(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}

pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| JetError::InvalidArgument(format!("json: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let m = CMat::from_row_slice(2, 2, &[C64::new(1.0, 0.0), C64::new(0.1, -2.5), C64::new(-3e-17, 1.0), C64::new(0.0, 0.0)]);
        let s = matrix_to_csv_string(&m).unwrap();
        assert!(s.starts_with("\"1,0\",\"0.1,-2.5\""));
        assert_eq!(read_matrix_csv(&s).unwrap(), m);
    }
}
