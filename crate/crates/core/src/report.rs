//! CSV and JSON emission. Exact rationals are written as `num/den` strings
//! and never pass through floating point.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::satotate::MomentReport;

/// `num/den` in lowest terms, with `den` always written.
pub fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn serialize_ratio<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}

/// Column order of the moments CSV.
pub const MOMENT_COLUMNS: [&str; 8] =
    ["coefficient", "order", "theoretical_num", "theoretical_den", "empirical", "stderr", "n_primes", "pass"];

#[derive(Debug, Serialize)]
struct MomentRow<'a> {
    coefficient: &'a str,
    order: u32,
    theoretical_num: String,
    theoretical_den: String,
    empirical: f64,
    stderr: f64,
    n_primes: usize,
    pass: bool,
}

impl<'a> From<&'a MomentReport> for MomentRow<'a> {
    fn from(r: &'a MomentReport) -> Self {
        MomentRow {
            coefficient: &r.coefficient,
            order: r.order,
            theoretical_num: r.theoretical.numer().to_string(),
            theoretical_den: r.theoretical.denom().to_string(),
            empirical: r.empirical,
            stderr: r.stderr,
            n_primes: r.n_primes,
            pass: r.pass,
        }
    }
}

/// Writes the header, then one row per record. An empty record set gives a
/// header-only file.
pub fn write_csv<T: Serialize, W: Write>(out: W, header: &[&str], rows: &[T]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_moments_csv<W: Write>(out: W, reports: &[MomentReport]) -> Result<()> {
    let rows: Vec<MomentRow> = reports.iter().map(MomentRow::from).collect();
    write_csv(out, &MOMENT_COLUMNS, &rows)
}

pub fn moments_csv_string(reports: &[MomentReport]) -> Result<String> {
    let mut buf = Vec::new();
    write_moments_csv(&mut buf, reports)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// Pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut f = File::create(path)?;
    serde_json::to_writer_pretty(&mut f, value)?;
    f.write_all(b"\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn report(th: (i64, i64)) -> MomentReport {
        MomentReport {
            coefficient: "a1".into(),
            order: 4,
            theoretical: BigRational::new(BigInt::from(th.0), BigInt::from(th.1)),
            empirical: 8.01,
            stderr: 0.00001,
            n_primes: 9590,
            pass: true,
        }
    }

    #[test]
    fn empty_set_is_header_only() {
        let s = moments_csv_string(&[]).unwrap();
        assert_eq!(s, format!("{}\n", MOMENT_COLUMNS.join(",")));
    }

    #[test]
    fn exact_columns_are_plain_integers() {
        let s = moments_csv_string(&[report((10_000_000_000_000_000, 3))]).unwrap();
        let row = s.lines().nth(1).unwrap();
        assert!(row.starts_with("a1,4,10000000000000000,3,"), "{row}");
        let json = serde_json::to_string(&report((16, 2))).unwrap();
        assert!(json.contains(r#""theoretical":"8/1""#), "{json}");
    }
}
