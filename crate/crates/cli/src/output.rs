use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use krylov_core::BigRational;
use serde::Serialize;

/// A columnar result: one header row and one record per `n` or `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.header)?;
        for r in &self.rows {
            out.write_record(r)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// 17 significant digits, enough to round-trip every double.
pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Serialize)]
pub struct Manifest<'a, P: Serialize> {
    pub command: &'a str,
    pub params: &'a P,
    pub outputs: Vec<String>,
    pub version: &'static str,
    /// Outputs depend on the arguments only.
    pub deterministic: bool,
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Writes the table to `out` (or stdout) and, for file output, the JSON
/// manifest next to it.
pub fn emit<P: Serialize>(table: &Table, out: Option<&Path>, command: &str, params: &P) -> io::Result<()> {
    match out {
        None => table.write_csv(io::stdout().lock()).map_err(io::Error::other),
        Some(path) => {
            table.write_csv(File::create(path)?).map_err(io::Error::other)?;
            let m = Manifest {
                command,
                params,
                outputs: vec![path.display().to_string()],
                version: env!("CARGO_PKG_VERSION"),
                deterministic: true,
            };
            let mut f = File::create(manifest_path(path))?;
            serde_json::to_writer_pretty(&mut f, &m)?;
            writeln!(f)
        }
    }
}
