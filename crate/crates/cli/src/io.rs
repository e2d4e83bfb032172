//! Data readers and atomic file writes.
//!
//! Supported inputs: CSV (rows are observations, header optional), a
//! binary column-major float64 format with an 8-byte `(n, p)` header of
//! two little-endian u32s, and eigenvalue lists (an `n p` header line
//! followed by one descending eigenvalue per line; `#` starts a comment).

use crate::{CliError, CliResult};
use rankspectra_core::spectra::{DataMatrix, EigenSpectrum, SpectrumSource};
use std::fs;
use std::io::Read;
use std::path::Path;

/// Data format selection for `estimate` inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataFormat {
    Auto,
    Csv,
    Binary,
}

pub fn read_data(path: &Path, format: DataFormat) -> CliResult<DataMatrix> {
    let format = match format {
        DataFormat::Auto => {
            if path.extension().is_some_and(|e| e == "bin") {
                DataFormat::Binary
            } else {
                DataFormat::Csv
            }
        }
        other => other,
    };
    match format {
        DataFormat::Csv => read_data_csv(path),
        DataFormat::Binary => read_data_binary(path),
        DataFormat::Auto => unreachable!(),
    }
}

pub fn read_data_csv(path: &Path) -> CliResult<DataMatrix> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parsed: Result<Vec<f64>, _> =
            line.split(',').map(|f| f.trim().parse::<f64>()).collect();
        match parsed {
            Ok(vals) => rows.push(vals),
            Err(e) => {
                // a non-numeric first row is treated as a header
                if rows.is_empty() && lineno == 0 {
                    continue;
                }
                return Err(CliError::validation(format!(
                    "{}:{}: {e}",
                    path.display(),
                    lineno + 1
                )));
            }
        }
    }
    let n = rows.len();
    let p = rows.first().map(|r| r.len()).unwrap_or(0);
    if rows.iter().any(|r| r.len() != p) {
        return Err(CliError::validation(format!(
            "{}: rows have inconsistent column counts",
            path.display()
        )));
    }
    let values = rows.into_iter().flatten().collect();
    DataMatrix::new(n, p, values).map_err(CliError::from)
}

pub fn read_data_binary(path: &Path) -> CliResult<DataMatrix> {
    let mut file = fs::File::open(path)
        .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?;
    let mut header = [0u8; 8];
    file.read_exact(&mut header)
        .map_err(|e| CliError::validation(format!("{}: header: {e}", path.display())))?;
    let n = u32::from_le_bytes(header[0..4].try_into().unwrap()) as usize;
    let p = u32::from_le_bytes(header[4..8].try_into().unwrap()) as usize;
    let mut raw = Vec::new();
    file.read_to_end(&mut raw)?;
    if raw.len() != n * p * 8 {
        return Err(CliError::validation(format!(
            "{}: expected {} bytes for a {n} x {p} matrix, found {}",
            path.display(),
            n * p * 8,
            raw.len()
        )));
    }
    // column-major on disk -> row-major in memory
    let mut values = vec![0.0f64; n * p];
    for j in 0..p {
        for i in 0..n {
            let off = (j * n + i) * 8;
            values[i * p + j] = f64::from_le_bytes(raw[off..off + 8].try_into().unwrap());
        }
    }
    DataMatrix::new(n, p, values).map_err(CliError::from)
}

pub fn write_data_binary(path: &Path, data: &DataMatrix) -> CliResult<()> {
    let (n, p) = (data.n(), data.p());
    let mut bytes = Vec::with_capacity(8 + n * p * 8);
    bytes.extend_from_slice(&(n as u32).to_le_bytes());
    bytes.extend_from_slice(&(p as u32).to_le_bytes());
    for j in 0..p {
        for i in 0..n {
            bytes.extend_from_slice(&data.values()[i * p + j].to_le_bytes());
        }
    }
    atomic_write(path, &bytes)
}

pub fn read_eigenvalues(path: &Path) -> CliResult<EigenSpectrum> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?;
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| CliError::validation(format!("{}: empty file", path.display())))?;
    let parts: Vec<&str> = header
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    if parts.len() != 2 {
        return Err(CliError::validation(format!(
            "{}: expected an 'n p' header line, got {header:?}",
            path.display()
        )));
    }
    let n: usize = parts[0]
        .parse()
        .map_err(|e| CliError::validation(format!("{}: bad n: {e}", path.display())))?;
    let p: usize = parts[1]
        .parse()
        .map_err(|e| CliError::validation(format!("{}: bad p: {e}", path.display())))?;
    let eigenvalues: Vec<f64> = lines
        .map(|l| {
            l.parse::<f64>()
                .map_err(|e| CliError::validation(format!("{}: {e} in {l:?}", path.display())))
        })
        .collect::<CliResult<_>>()?;
    EigenSpectrum::new(eigenvalues, n, p, SpectrumSource::External).map_err(CliError::from)
}

/// Write through a temporary file and rename, so failed runs leave no
/// partial outputs.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty());
    if let Some(dir) = dir {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!(
        "{}.tmp-{}",
        path.extension().and_then(|e| e.to_str()).unwrap_or("out"),
        std::process::id()
    ));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}
