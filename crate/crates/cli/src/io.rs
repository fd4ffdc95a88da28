use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use simplex_ball::{
    Ball, BallRecord, Ellipsoid, EllipsoidRecord, Simplex, SimplexRecord, Tolerances,
};

use crate::error::{CliError, CliResult};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(path, e))
}

pub fn read_simplex(path: &Path, tol: Tolerances) -> CliResult<Simplex> {
    Ok(read_json::<SimplexRecord>(path)?.into_simplex(tol)?)
}

pub fn read_ball(path: &Path) -> CliResult<Ball> {
    Ok(Ball::try_from(read_json::<BallRecord>(path)?)?)
}

pub fn read_ellipsoid(path: &Path, tol: Tolerances) -> CliResult<Ellipsoid> {
    Ok(read_json::<EllipsoidRecord>(path)?.into_ellipsoid(tol)?)
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> CliResult<String> {
    let mut text =
        serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

pub fn to_csv<R: AsRef<[String]>>(header: &[&str], rows: &[R]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Output(e.to_string());
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(row.as_ref()).map_err(err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

pub fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Writes to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => write_file(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
    }
}
