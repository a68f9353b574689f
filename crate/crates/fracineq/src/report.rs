//! CSV and JSON report files.
//!
//! The CSV holds one row per inequality report with the columns in
//! [`CSV_HEADER`]; absent exponents are empty cells. The JSON document is
//! the whole [`SweepResult`].

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use fracineq_core::InequalityReport;

use crate::sweep::SweepResult;

pub const CSV_HEADER: [&str; 12] = [
    "theorem_id",
    "function",
    "alpha",
    "s",
    "p",
    "q",
    "x",
    "lhs",
    "rhs",
    "margin",
    "holds",
    "quad_error_budget",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn from_path(path: &Path) -> Option<Format> {
        match path.extension()?.to_str()? {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn row(r: &InequalityReport) -> [String; 12] {
    [
        r.theorem_id.to_string(),
        r.function.clone(),
        r.prm.alpha.to_string(),
        r.prm.s.to_string(),
        opt(r.prm.p),
        opt(r.prm.q),
        r.prm.x.to_string(),
        r.lhs.to_string(),
        r.rhs.to_string(),
        r.margin.to_string(),
        r.holds.to_string(),
        r.quad_error_budget.to_string(),
    ]
}

pub fn write_csv<W: Write>(res: &SweepResult, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in &res.reports {
        w.write_record(row(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(res: &SweepResult) -> String {
    let mut buf = Vec::new();
    write_csv(res, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

pub fn write_json<W: Write>(res: &SweepResult, out: W) -> serde_json::Result<()> {
    serde_json::to_writer_pretty(out, res)
}

pub fn read_json(text: &str) -> serde_json::Result<SweepResult> {
    serde_json::from_str(text)
}

/// Writes `res` to `path` in the given format.
pub fn emit_report(res: &SweepResult, format: Format, path: &Path) -> io::Result<()> {
    let mut file = BufWriter::new(File::create(path)?);
    match format {
        Format::Csv => write_csv(res, &mut file).map_err(io::Error::other)?,
        Format::Json => {
            write_json(res, &mut file).map_err(io::Error::other)?;
            file.write_all(b"\n")?;
        }
    }
    file.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{SweepConfig, XPoints};
    use crate::sweep::{run_sweep, RunOptions};

    fn tiny() -> SweepResult {
        let cfg = SweepConfig {
            functions: vec!["affine".into()],
            theorems: vec!["e1".into()],
            x_points: XPoints::List(vec![0.0]),
            ..SweepConfig::default()
        };
        run_sweep(&cfg, &RunOptions::default()).unwrap()
    }

    #[test]
    fn header_is_fixed() {
        let res = tiny();
        assert_eq!(res.reports.len(), 1);
        let text = csv_string(&res);
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "theorem_id,function,alpha,s,p,q,x,lhs,rhs,margin,holds,quad_error_budget"
        );
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row[0], "e1");
        assert_eq!(row[1], "affine");
        assert_eq!((row[4], row[5]), ("", ""));
        assert_eq!(row[10], "true");
        assert!(lines.next().is_none());
    }

    #[test]
    fn json_round_trips() {
        let res = tiny();
        let mut buf = Vec::new();
        write_json(&res, &mut buf).unwrap();
        assert_eq!(read_json(std::str::from_utf8(&buf).unwrap()).unwrap(), res);
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(Format::from_path(Path::new("a/b.csv")), Some(Format::Csv));
        assert_eq!(Format::from_path(Path::new("b.json")), Some(Format::Json));
        assert_eq!(Format::from_path(Path::new("b.txt")), None);
    }
}
