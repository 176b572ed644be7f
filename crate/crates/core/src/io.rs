//! Point-set files and result logs.
//!
//! A point-set file is a JSON object
//!
//! ```json
//! {"ring":{"kind":"prime-field","p":5,"exponent":1},"d":2,"points":[[1,2],[3,4]]}
//! ```
//!
//! Coordinates are integers in `[0, q)`. Over an extension field each
//! coordinate is an array of `k` base-p digits, most significant first, and
//! `modulus_poly` holds all `k + 1` modulus coefficients, highest first.
//!
//! Result logs are JSON Lines plus a CSV projection with a fixed column order.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Elem, Ring, RingSpec};
use crate::bounds::ExperimentRecord;
use crate::error::{Error, Result};
use crate::pointset::PointSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Int(u64),
    Digits(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSetFile {
    pub ring: RingSpec,
    pub d: usize,
    pub points: Vec<Vec<Coord>>,
}

impl PointSetFile {
    pub fn from_point_set(set: &PointSet) -> Self {
        let ring = set.ring();
        let coord = |c: Elem| match ring.kind() {
            crate::RingKind::ExtensionField => {
                Coord::Digits(ring.digits(c).into_iter().map(u64::from).collect())
            }
            _ => Coord::Int(c as u64),
        };
        Self {
            ring: ring.spec().clone(),
            d: set.dim(),
            points: set
                .iter()
                .map(|p| p.iter().map(|&c| coord(c)).collect())
                .collect(),
        }
    }

    /// Validates into a point set. Out-of-range coordinates are rejected
    /// unless `reduce` is set; duplicates are always rejected.
    pub fn into_point_set(self, reduce: bool) -> Result<PointSet> {
        let malformed = |e: Error| Error::Malformed(e.to_string());
        let ring =
            Arc::new(Ring::new(self.ring).map_err(|e| Error::Malformed(format!("ring: {e}")))?);
        let is_ext = ring.kind() == crate::RingKind::ExtensionField;
        let mut set = PointSet::empty(ring.clone(), self.d).map_err(malformed)?;
        for (i, point) in self.points.iter().enumerate() {
            if point.len() != self.d {
                return Err(Error::Malformed(format!(
                    "point {i} has {} coordinates, expected {}",
                    point.len(),
                    self.d
                )));
            }
            let coords = point
                .iter()
                .map(|c| match (c, is_ext) {
                    (Coord::Int(v), false) => ring.from_digits(&[*v], reduce),
                    (Coord::Digits(ds), true) => ring.from_digits(ds, reduce),
                    (Coord::Int(_), true) => Err(Error::Malformed(
                        "extension-field coordinates must be digit arrays".into(),
                    )),
                    (Coord::Digits(_), false) => Err(Error::Malformed(
                        "coordinates must be integers for this ring".into(),
                    )),
                })
                .collect::<Result<Vec<Elem>>>()
                .map_err(|e| Error::Malformed(format!("point {i}: {e}")))?;
            set.insert(&coords)
                .map_err(|e| Error::Malformed(format!("point {i}: {e}")))?;
        }
        Ok(set)
    }
}

pub fn parse_point_set(text: &str, reduce: bool) -> Result<PointSet> {
    let file: PointSetFile =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    file.into_point_set(reduce)
}

pub fn read_point_set(path: &Path, reduce: bool) -> Result<PointSet> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    parse_point_set(&text, reduce)
}

/// Canonical text form: compact JSON and a trailing newline.
pub fn serialize_point_set(set: &PointSet) -> String {
    let mut out = serde_json::to_string(&PointSetFile::from_point_set(set))
        .expect("point-set files always serialize");
    out.push('\n');
    out
}

pub fn write_point_set(path: &Path, set: &PointSet) -> Result<()> {
    std::fs::write(path, serialize_point_set(set))?;
    Ok(())
}

pub const CSV_COLUMNS: [&str; 15] = [
    "seed",
    "q",
    "p",
    "l",
    "d",
    "n",
    "alpha",
    "beta",
    "count",
    "main_num",
    "main_den",
    "remainder",
    "bound",
    "rel_err",
    "elapsed_ms",
];

#[derive(Serialize)]
struct CsvRow<'a> {
    seed: u64,
    q: u32,
    p: u32,
    l: u32,
    d: usize,
    n: usize,
    alpha: &'a str,
    beta: &'a str,
    count: u64,
    main_num: u64,
    main_den: u64,
    remainder: String,
    bound: f64,
    rel_err: f64,
    elapsed_ms: u64,
}

impl<'a> From<&'a ExperimentRecord> for CsvRow<'a> {
    fn from(r: &'a ExperimentRecord) -> Self {
        Self {
            seed: r.seed,
            q: r.q,
            p: r.p,
            l: r.l,
            d: r.d,
            n: r.n,
            alpha: &r.alpha,
            beta: &r.beta,
            count: r.count,
            main_num: r.main_num,
            main_den: r.main_den,
            remainder: r.remainder.to_string(),
            bound: r.remainder_bound,
            rel_err: r.relative_error,
            elapsed_ms: r.elapsed_ms,
        }
    }
}

/// Header plus one row per record, columns in [`CSV_COLUMNS`] order.
pub fn write_csv<W: Write>(out: W, records: &[ExperimentRecord]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in records {
        w.serialize(CsvRow::from(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_jsonl<W: Write, T: Serialize>(mut out: W, records: &[T]) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Appends one JSON line, creating the file if needed.
pub fn append_jsonl<T: Serialize>(path: &Path, record: &T) -> Result<()> {
    let mut line = serde_json::to_vec(record)?;
    line.push(b'\n');
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    f.write_all(&line)?;
    Ok(())
}
