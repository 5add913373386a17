//! CSV and JSON serialization of sequences and curves.
//!
//! CSV numbers are written in scientific notation with enough digits to
//! round-trip exactly (17 significant digits for `f64`).

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::CurveGrid;
use crate::process::EventSequence;
use crate::scalar::{format_round_trip, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Format(format!("unknown format `{other}` (csv|json)"))),
        }
    }
}

/// One epoch per record under the header `t`.
pub fn write_sequence_csv<T: Real, W: Write>(seq: &EventSequence<T>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t"])?;
    for &e in &seq.epochs {
        w.write_record([format_round_trip(e)])?;
    }
    w.flush()?;
    Ok(())
}

/// Epochs from a CSV written by [`write_sequence_csv`].
pub fn read_sequence_csv<T: Real, R: Read>(input: R) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_reader(input);
    if r.headers()?.iter().collect::<Vec<_>>() != ["t"] {
        return Err(Error::Format("event CSV must have the single header `t`".into()));
    }
    r.records()
        .map(|rec| parse_field(&rec?, 0))
        .collect()
}

/// `{params, horizon, seed, epochs}`.
pub fn write_sequence_json<T: Real, W: Write>(seq: &EventSequence<T>, out: W) -> Result<()> {
    serde_json::to_writer_pretty(out, seq)?;
    Ok(())
}

pub fn read_sequence_json<T: Real, R: Read>(input: R) -> Result<EventSequence<T>> {
    let seq: EventSequence<T> = serde_json::from_reader(input)?;
    seq.validate()?;
    Ok(seq)
}

/// Records `x,y`.
pub fn write_curve_csv<T: Real, W: Write>(curve: &CurveGrid<T>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "y"])?;
    for (x, y) in curve.points() {
        w.write_record([format_round_trip(x), format_round_trip(y)])?;
    }
    w.flush()?;
    Ok(())
}

/// `(abscissa, ordinate)` from a CSV written by [`write_curve_csv`].
pub fn read_curve_csv<T: Real, R: Read>(input: R) -> Result<(Vec<T>, Vec<T>)> {
    let mut r = csv::Reader::from_reader(input);
    if r.headers()?.iter().collect::<Vec<_>>() != ["x", "y"] {
        return Err(Error::Format("curve CSV must have the header `x,y`".into()));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        xs.push(parse_field(&rec, 0)?);
        ys.push(parse_field(&rec, 1)?);
    }
    Ok((xs, ys))
}

fn parse_field<T: Real>(rec: &csv::StringRecord, i: usize) -> Result<T> {
    let field = rec
        .get(i)
        .ok_or_else(|| Error::Format(format!("missing column {i}")))?;
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| Error::Format(format!("not a number: `{field}`")))?;
    T::from_f64(v).ok_or_else(|| Error::Format(format!("not representable: `{field}`")))
}

/// Metadata file written next to a curve CSV: `fig.csv` -> `fig.meta.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("meta.json")
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Writes a sequence to `path`; returns the files created.
pub fn save_sequence<T: Real>(seq: &EventSequence<T>, path: &Path, format: Format) -> Result<Vec<PathBuf>> {
    let mut out = create(path)?;
    match format {
        Format::Csv => write_sequence_csv(seq, &mut out)?,
        Format::Json => write_sequence_json(seq, &mut out)?,
    }
    out.flush()?;
    Ok(vec![path.to_path_buf()])
}

/// Writes a curve to `path`. As CSV, the metadata goes to a sidecar; as
/// JSON, the whole curve is one document. Returns the files created.
pub fn save_curve<T: Real>(curve: &CurveGrid<T>, path: &Path, format: Format) -> Result<Vec<PathBuf>> {
    curve.validate()?;
    let mut out = create(path)?;
    match format {
        Format::Csv => {
            write_curve_csv(curve, &mut out)?;
            out.flush()?;
            let meta = sidecar_path(path);
            let mut side = create(&meta)?;
            serde_json::to_writer_pretty(&mut side, &curve.meta)?;
            side.flush()?;
            Ok(vec![path.to_path_buf(), meta])
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, curve)?;
            out.flush()?;
            Ok(vec![path.to_path_buf()])
        }
    }
}

/// Reads a curve saved by [`save_curve`].
pub fn load_curve<T: Real>(path: &Path, format: Format) -> Result<CurveGrid<T>> {
    match format {
        Format::Csv => {
            let (x, y) = read_curve_csv(open(path)?)?;
            let meta = serde_json::from_reader(open(&sidecar_path(path))?)?;
            CurveGrid::new(x, y, meta)
        }
        Format::Json => {
            let curve: CurveGrid<T> = serde_json::from_reader(open(path)?)?;
            curve.validate()?;
            Ok(curve)
        }
    }
}

/// Reads a sequence saved by [`save_sequence`]. A CSV carries only epochs,
/// so the remaining fields come from `template`.
pub fn load_sequence<T: Real>(
    path: &Path,
    format: Format,
    template: Option<&EventSequence<T>>,
) -> Result<EventSequence<T>> {
    match format {
        Format::Json => read_sequence_json(open(path)?),
        Format::Csv => {
            let template = template.ok_or_else(|| {
                Error::Format("an event CSV has no parameters; load the JSON form instead".into())
            })?;
            let seq = EventSequence {
                epochs: read_sequence_csv(open(path)?)?,
                ..template.clone()
            };
            seq.validate()?;
            Ok(seq)
        }
    }
}
