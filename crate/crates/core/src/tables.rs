//! Sparse tables of enumerative invariants with explicit truncation windows.
//!
//! Genus-indexed tables ([`GvTable`], [`GwTable`]) are keyed by `(g, d)`;
//! Euler-characteristic tables ([`PtTable`], [`DtTable`]) by `(n, d)`.
//! Inside the window an absent entry is zero; outside it is unknown.
//! Both serialise to CSV (`g,d,value` / `n,d,value`) and to a JSON mirror
//! carrying the window metadata.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::marker::PhantomData;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bounds::castelnuovo_threshold;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("entry ({0}, {1}) lies outside the table window")]
    OutOfWindow(i64, u32),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("csv: {0}")]
    Csv(String),
    #[error("json: {0}")]
    Json(String),
    #[error("expected a {expected} table, found {found}")]
    KindMismatch { expected: &'static str, found: String },
    #[error("empty q-window [{0}, {1}]")]
    EmptyWindow(i64, i64),
}

pub trait TableKind {
    const NAME: &'static str;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gv;
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gw;
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pt;
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dt;

impl TableKind for Gv {
    const NAME: &'static str = "gv";
}
impl TableKind for Gw {
    const NAME: &'static str = "gw";
}
impl TableKind for Pt {
    const NAME: &'static str = "pt";
}
impl TableKind for Dt {
    const NAME: &'static str = "dt";
}

/// Invariants indexed by genus `0..=g_max` and degree `1..=d_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusTable<K> {
    entries: BTreeMap<(u32, u32), Rational>,
    g_max: u32,
    d_max: u32,
    genus_complete: bool,
    castelnuovo_valid: bool,
    kind: PhantomData<K>,
}

pub type GvTable = GenusTable<Gv>;
pub type GwTable = GenusTable<Gw>;

#[derive(Serialize, Deserialize)]
struct GenusEntry {
    g: u32,
    d: u32,
    #[serde(with = "rational::serde_str")]
    value: Rational,
}

#[derive(Serialize, Deserialize)]
struct GenusRepr {
    kind: String,
    g_max: u32,
    d_max: u32,
    #[serde(default)]
    genus_complete: bool,
    #[serde(default)]
    castelnuovo_valid: bool,
    entries: Vec<GenusEntry>,
}

fn read_rows<R: Read>(reader: R, first: &str) -> Result<Vec<(String, u32, Rational)>, TableError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(|e| TableError::Csv(e.to_string()))?.clone();
    let expected = [first, "d", "value"];
    if headers.len() != 3 || headers.iter().zip(expected).any(|(h, e)| h != e) {
        return Err(TableError::Parse {
            line: 1,
            msg: format!("expected header {first},d,value, found {}", headers.iter().collect::<Vec<_>>().join(",")),
        });
    }
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| TableError::Parse { line, msg: e.to_string() })?;
        if rec.len() != 3 {
            return Err(TableError::Parse { line, msg: format!("expected 3 fields, found {}", rec.len()) });
        }
        let d = rec[1].parse::<u32>().map_err(|e| TableError::Parse { line, msg: format!("degree: {e}") })?;
        let value = rational::parse(&rec[2]).map_err(|e| TableError::Parse { line, msg: e.to_string() })?;
        rows.push((rec[0].to_string(), d, value));
    }
    Ok(rows)
}

fn write_rows<W: Write>(
    writer: W,
    first: &str,
    rows: impl Iterator<Item = (String, u32, String)>,
) -> Result<(), TableError> {
    let mut w = csv::Writer::from_writer(writer);
    let err = |e: csv::Error| TableError::Csv(e.to_string());
    w.write_record([first, "d", "value"]).map_err(err)?;
    for (k, d, v) in rows {
        w.write_record([k, d.to_string(), v]).map_err(err)?;
    }
    w.flush().map_err(|e| TableError::Csv(e.to_string()))
}

impl<K: TableKind> GenusTable<K> {
    pub fn new(g_max: u32, d_max: u32) -> Self {
        GenusTable {
            entries: BTreeMap::new(),
            g_max,
            d_max,
            genus_complete: false,
            castelnuovo_valid: false,
            kind: PhantomData,
        }
    }

    pub fn kind(&self) -> &'static str {
        K::NAME
    }

    pub fn g_max(&self) -> u32 {
        self.g_max
    }

    pub fn d_max(&self) -> u32 {
        self.d_max
    }

    /// Sets entry `(g, d)`; zero values are removed.
    pub fn insert(&mut self, g: u32, d: u32, value: Rational) -> Result<(), TableError> {
        if g > self.g_max || d == 0 || d > self.d_max {
            return Err(TableError::OutOfWindow(g as i64, d));
        }
        if value.is_zero() {
            self.entries.remove(&(g, d));
        } else {
            self.entries.insert((g, d), value);
        }
        Ok(())
    }

    /// Zero inside the window when absent; `None` outside it.
    pub fn get(&self, g: u32, d: u32) -> Option<Rational> {
        if d == 0 || d > self.d_max {
            return None;
        }
        if g > self.g_max {
            let known_zero = self.genus_complete
                || (self.castelnuovo_valid && Rational::from_integer((g as i64).into()) > castelnuovo_threshold(d));
            return known_zero.then(Rational::zero);
        }
        Some(self.entries.get(&(g, d)).cloned().unwrap_or_else(Rational::zero))
    }

    /// Nonzero entries ordered by `(g, d)`.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, &Rational)> + '_ {
        self.entries.iter().map(|(&(g, d), v)| (g, d, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Declares that every invariant of genus above `g_max` vanishes.
    pub fn set_genus_complete(&mut self, complete: bool) {
        self.genus_complete = complete;
    }

    pub fn genus_complete(&self) -> bool {
        self.genus_complete
    }

    pub fn castelnuovo_valid(&self) -> bool {
        self.castelnuovo_valid
    }

    pub(crate) fn set_castelnuovo_valid(&mut self, v: bool) {
        self.castelnuovo_valid = v;
    }

    /// Whether every genus is known for degree `d`.
    pub fn covers_all_genera(&self, d: u32) -> bool {
        self.genus_complete
            || (self.castelnuovo_valid
                && Rational::from_integer((self.g_max as i64).into()) >= castelnuovo_threshold(d).floor())
    }

    /// Reads `g,d,value` rows. Missing bounds are taken from the largest keys.
    pub fn read_csv<R: Read>(reader: R, g_max: Option<u32>, d_max: Option<u32>) -> Result<Self, TableError> {
        let rows = read_rows(reader, "g")?;
        let mut parsed = Vec::with_capacity(rows.len());
        for (i, (g, d, v)) in rows.into_iter().enumerate() {
            let g = g.parse::<u32>().map_err(|e| TableError::Parse { line: i + 2, msg: format!("genus: {e}") })?;
            parsed.push((g, d, v));
        }
        let g_max = g_max.unwrap_or_else(|| parsed.iter().map(|r| r.0).max().unwrap_or(0));
        let d_max = d_max.unwrap_or_else(|| parsed.iter().map(|r| r.1).max().unwrap_or(0));
        let mut t = Self::new(g_max, d_max);
        for (g, d, v) in parsed {
            if t.entries.contains_key(&(g, d)) {
                return Err(TableError::Parse { line: 0, msg: format!("duplicate entry ({g}, {d})") });
            }
            t.insert(g, d, v)?;
        }
        Ok(t)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<(), TableError> {
        write_rows(writer, "g", self.entries().map(|(g, d, v)| (g.to_string(), d, v.to_string())))
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    pub fn to_json(&self) -> String {
        let repr = GenusRepr {
            kind: K::NAME.to_string(),
            g_max: self.g_max,
            d_max: self.d_max,
            genus_complete: self.genus_complete,
            castelnuovo_valid: self.castelnuovo_valid,
            entries: self.entries().map(|(g, d, v)| GenusEntry { g, d, value: v.clone() }).collect(),
        };
        serde_json::to_string_pretty(&repr).expect("serialisable")
    }

    pub fn from_json(s: &str) -> Result<Self, TableError> {
        let repr: GenusRepr = serde_json::from_str(s).map_err(|e| TableError::Json(e.to_string()))?;
        if repr.kind != K::NAME {
            return Err(TableError::KindMismatch { expected: K::NAME, found: repr.kind });
        }
        let mut t = Self::new(repr.g_max, repr.d_max);
        t.genus_complete = repr.genus_complete;
        t.castelnuovo_valid = repr.castelnuovo_valid;
        for e in repr.entries {
            t.insert(e.g, e.d, e.value)?;
        }
        Ok(t)
    }
}

/// Invariants indexed by Euler characteristic `n in [n_min, n_max]` and
/// degree `1..=d_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiTable<K> {
    entries: BTreeMap<(u32, i64), Rational>,
    d_max: u32,
    n_min: i64,
    n_max: i64,
    castelnuovo_valid: bool,
    kind: PhantomData<K>,
}

pub type PtTable = ChiTable<Pt>;
pub type DtTable = ChiTable<Dt>;

#[derive(Serialize, Deserialize)]
struct ChiEntry {
    n: i64,
    d: u32,
    #[serde(with = "rational::serde_str")]
    value: Rational,
}

#[derive(Serialize, Deserialize)]
struct ChiRepr {
    kind: String,
    d_max: u32,
    n_min: i64,
    n_max: i64,
    #[serde(default)]
    castelnuovo_valid: bool,
    entries: Vec<ChiEntry>,
}

impl<K: TableKind> ChiTable<K> {
    pub fn new(d_max: u32, n_min: i64, n_max: i64) -> Result<Self, TableError> {
        if n_max < n_min {
            return Err(TableError::EmptyWindow(n_min, n_max));
        }
        Ok(ChiTable { entries: BTreeMap::new(), d_max, n_min, n_max, castelnuovo_valid: false, kind: PhantomData })
    }

    pub fn kind(&self) -> &'static str {
        K::NAME
    }

    pub fn d_max(&self) -> u32 {
        self.d_max
    }

    pub fn q_window(&self) -> (i64, i64) {
        (self.n_min, self.n_max)
    }

    pub fn insert(&mut self, n: i64, d: u32, value: Rational) -> Result<(), TableError> {
        if n < self.n_min || n > self.n_max || d == 0 || d > self.d_max {
            return Err(TableError::OutOfWindow(n, d));
        }
        if value.is_zero() {
            self.entries.remove(&(d, n));
        } else {
            self.entries.insert((d, n), value);
        }
        Ok(())
    }

    /// Zero inside the window when absent; `None` above `n_max` or outside
    /// the degree range. Below `n_min` the entry is zero.
    pub fn get(&self, n: i64, d: u32) -> Option<Rational> {
        if d == 0 || d > self.d_max || n > self.n_max {
            return None;
        }
        Some(self.entries.get(&(d, n)).cloned().unwrap_or_else(Rational::zero))
    }

    /// Nonzero entries ordered by degree, then `n`.
    pub fn entries(&self) -> impl Iterator<Item = (i64, u32, &Rational)> + '_ {
        self.entries.iter().map(|(&(d, n), v)| (n, d, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn castelnuovo_valid(&self) -> bool {
        self.castelnuovo_valid
    }

    pub(crate) fn set_castelnuovo_valid(&mut self, v: bool) {
        self.castelnuovo_valid = v;
    }

    pub fn read_csv<R: Read>(reader: R, d_max: Option<u32>, window: Option<(i64, i64)>) -> Result<Self, TableError> {
        let rows = read_rows(reader, "n")?;
        let mut parsed = Vec::with_capacity(rows.len());
        for (i, (n, d, v)) in rows.into_iter().enumerate() {
            let n = n.parse::<i64>().map_err(|e| TableError::Parse { line: i + 2, msg: format!("n: {e}") })?;
            parsed.push((n, d, v));
        }
        let d_max = d_max.unwrap_or_else(|| parsed.iter().map(|r| r.1).max().unwrap_or(0));
        let (lo, hi) = window.unwrap_or_else(|| {
            let lo = parsed.iter().map(|r| r.0).min().unwrap_or(0);
            let hi = parsed.iter().map(|r| r.0).max().unwrap_or(0);
            (lo, hi)
        });
        let mut t = Self::new(d_max, lo, hi)?;
        for (n, d, v) in parsed {
            t.insert(n, d, v)?;
        }
        Ok(t)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<(), TableError> {
        write_rows(writer, "n", self.entries().map(|(n, d, v)| (n.to_string(), d, v.to_string())))
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    pub fn to_json(&self) -> String {
        let repr = ChiRepr {
            kind: K::NAME.to_string(),
            d_max: self.d_max,
            n_min: self.n_min,
            n_max: self.n_max,
            castelnuovo_valid: self.castelnuovo_valid,
            entries: self.entries().map(|(n, d, v)| ChiEntry { n, d, value: v.clone() }).collect(),
        };
        serde_json::to_string_pretty(&repr).expect("serialisable")
    }

    pub fn from_json(s: &str) -> Result<Self, TableError> {
        let repr: ChiRepr = serde_json::from_str(s).map_err(|e| TableError::Json(e.to_string()))?;
        if repr.kind != K::NAME {
            return Err(TableError::KindMismatch { expected: K::NAME, found: repr.kind });
        }
        let mut t = Self::new(repr.d_max, repr.n_min, repr.n_max)?;
        t.castelnuovo_valid = repr.castelnuovo_valid;
        for e in repr.entries {
            t.insert(e.n, e.d, e.value)?;
        }
        Ok(t)
    }
}
