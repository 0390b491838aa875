//! CSV output with the fixed column schema.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

use super::run::{ExperimentResult, ExperimentRow};

pub const CSV_HEADER: [&str; 11] = [
    "estimator",
    "snr_db",
    "L",
    "M",
    "N",
    "trials",
    "mse_channel",
    "mse_doa",
    "mse_fading",
    "avg_real_mults",
    "seed",
];

fn csv_err(path: &Path, source: csv::Error) -> Error {
    Error::Csv { path: path.to_path_buf(), source }
}

/// Writes `result` as CSV to any writer; floats use the shortest round-trip form.
pub fn write_csv_to<W: Write>(result: &ExperimentResult, out: W, path: &Path) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    wtr.write_record(CSV_HEADER).map_err(|e| csv_err(path, e))?;
    for row in &result.rows {
        wtr.serialize(row).map_err(|e| csv_err(path, e))?;
    }
    wtr.flush().map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

pub fn write_csv(result: &ExperimentResult, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    write_csv_to(result, file, path)
}

/// Reads rows written by [`write_csv`], checking the header.
pub fn read_csv(path: &Path) -> Result<Vec<ExperimentRow>> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| csv_err(path, e))?;
    let header = rdr.headers().map_err(|e| csv_err(path, e))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Config(format!("{}: unexpected CSV header {header:?}", path.display())));
    }
    rdr.deserialize().collect::<std::result::Result<_, _>>().map_err(|e| csv_err(path, e))
}
