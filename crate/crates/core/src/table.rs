//! Tables of `A_v(0,d)` or `A_v(d)` for `d = 1..=d_max`, and their CSV forms.

use std::fmt;
use std::path::Path;

use rayon::prelude::*;

use crate::apsolver::{ap_from, pattern_cap, ApQuery, GlobalSolver, StagePlan};
use crate::error::{Error, Result};
use crate::patseq::{Pattern, SequenceHandle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableKind {
    FromZero,
    Global,
}

impl std::str::FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "from-zero" | "from_zero" => Ok(TableKind::FromZero),
            "global" => Ok(TableKind::Global),
            other => Err(Error::Domain(format!("unknown table kind {other:?}"))),
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableKind::FromZero => "from-zero",
            TableKind::Global => "global",
        })
    }
}

/// Values for one pattern, indexed by `d - 1`. `d_max = 0` yields no values.
pub fn compute_values(v: &Pattern, kind: TableKind, d_max: u128, plan: &StagePlan) -> Result<Vec<u64>> {
    if d_max == 0 {
        return Ok(Vec::new());
    }
    pattern_cap(v, d_max)?;
    let ds: Vec<u128> = (1..=d_max).collect();
    match kind {
        TableKind::FromZero => {
            let h = SequenceHandle::pattern(v.clone());
            ds.par_iter()
                .map(|&d| ap_from(&ApQuery::new(h.clone(), 0, d)))
                .collect()
        }
        TableKind::Global => {
            let solver = GlobalSolver::new(v)?;
            ds.par_iter()
                .map(|&d| solver.solve(d, plan).map(|g| g.value))
                .collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApTable {
    patterns: Vec<Pattern>,
    kind: TableKind,
    values: Vec<Vec<u64>>,
}

impl ApTable {
    /// Checks shape and that each value lies in `1..=cap(v,d)`.
    pub fn new(patterns: Vec<Pattern>, kind: TableKind, values: Vec<Vec<u64>>) -> Result<Self> {
        if patterns.is_empty() {
            return Err(Error::Domain("a table needs at least one pattern".into()));
        }
        if values.len() != patterns.len() {
            return Err(Error::Domain("one value column per pattern is required".into()));
        }
        let d_max = values[0].len();
        for (v, col) in patterns.iter().zip(&values) {
            if col.len() != d_max {
                return Err(Error::Domain("columns differ in length".into()));
            }
            for (idx, &a) in col.iter().enumerate() {
                let d = idx as u128 + 1;
                let cap = pattern_cap(v, d)?;
                if a == 0 || a > cap {
                    return Err(Error::Domain(format!(
                        "value {a} for pattern {v}, d={d} is outside 1..={cap}"
                    )));
                }
            }
        }
        Ok(ApTable {
            patterns,
            kind,
            values,
        })
    }

    pub fn compute(patterns: &[Pattern], kind: TableKind, d_max: u128, plan: &StagePlan) -> Result<Self> {
        if d_max == 0 {
            return Err(Error::Domain("d_max must be at least 1".into()));
        }
        let values = patterns
            .iter()
            .map(|v| compute_values(v, kind, d_max, plan))
            .collect::<Result<Vec<_>>>()?;
        ApTable::new(patterns.to_vec(), kind, values)
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn d_max(&self) -> usize {
        self.values[0].len()
    }

    pub fn column(&self, pattern_idx: usize) -> &[u64] {
        &self.values[pattern_idx]
    }

    pub fn value(&self, pattern_idx: usize, d: usize) -> u64 {
        self.values[pattern_idx][d - 1]
    }

    /// Header row of pattern strings, then row `d + 1` holding the values for `d`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv_writer();
        w.write_record(self.patterns.iter().map(|v| v.to_string()))?;
        for idx in 0..self.d_max() {
            w.write_record(self.values.iter().map(|col| col[idx].to_string()))?;
        }
        finish(w)
    }

    pub fn from_csv(text: &str, kind: TableKind) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
        let patterns = r
            .headers()?
            .iter()
            .map(|h| h.parse::<Pattern>())
            .collect::<Result<Vec<_>>>()?;
        let mut values = vec![Vec::new(); patterns.len()];
        for (idx, rec) in r.records().enumerate() {
            let rec = rec?;
            for (col, cell) in values.iter_mut().zip(rec.iter()) {
                col.push(cell.parse::<u64>().map_err(|_| Error::Parse {
                    line: idx + 2,
                    msg: format!("{cell:?} is not a nonnegative integer"),
                })?);
            }
        }
        ApTable::new(patterns, kind, values)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()?).map_err(|e| Error::io(path, e))
    }

    pub fn read_csv(path: &Path, kind: TableKind) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        ApTable::from_csv(&text, kind)
    }
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Internal(format!("csv buffer: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

/// `(value, count)` pairs in increasing value order.
pub fn histogram(values: &[u64]) -> Vec<(u64, usize)> {
    let mut counts = std::collections::BTreeMap::new();
    for &a in values {
        *counts.entry(a).or_insert(0usize) += 1;
    }
    counts.into_iter().collect()
}

pub fn histogram_csv(values: &[u64]) -> Result<String> {
    let mut w = csv_writer();
    w.write_record(["value", "count"])?;
    for (a, n) in histogram(values) {
        w.write_record([a.to_string(), n.to_string()])?;
    }
    finish(w)
}

/// `(d, log2(A/d))` rows, values indexed by `d - 1`.
pub fn scatter_csv(values: &[u64]) -> Result<String> {
    let mut w = csv_writer();
    w.write_record(["d", "log2_ratio"])?;
    for (idx, &a) in values.iter().enumerate() {
        let d = idx as f64 + 1.0;
        w.write_record([(idx + 1).to_string(), format!("{:.6}", (a as f64 / d).log2())])?;
    }
    finish(w)
}
