//! Exact maps between Gopakumar–Vafa, Gromov–Witten and stable-pair
//! invariants of the quintic, and the Castelnuovo vanishing filters.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::bounds::castelnuovo_threshold;
use crate::rational::{self, int, Rational};
use crate::series::{BivariateSeries, LaurentSeries, SeriesError, Var};
use crate::tables::{DtTable, GvTable, GwTable, PtTable, TableError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),
    #[error("q-window starts at {n_min} but genus {g}, degree {d}, cover {r} contributes q^{lowest}")]
    WindowTooSmall { g: u32, d: u32, r: u32, lowest: i64, n_min: i64 },
    #[error("q-window [{0}, {1}] is empty")]
    EmptyWindow(i64, i64),
    #[error("degree-zero series must be 1 + O(q) with no negative powers")]
    BadDegreeZero,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Table(#[from] TableError),
}

/// Coefficients `[lambda^(2g-2)] (2 - 2 cos lambda)^(h-1)` for `h, g <= g_max`.
#[derive(Debug, Clone)]
pub struct CoverKernel {
    g_max: u32,
    coeffs: Vec<Vec<Rational>>,
}

impl CoverKernel {
    pub fn new(g_max: u32) -> Result<Self, SeriesError> {
        let top = 2 * g_max as i64 + 2;
        let mut terms = Vec::new();
        for k in 1..=(top / 2) {
            let c = int(2) * rational::sign(k + 1) / Rational::from_integer(rational::factorial(2 * k as u64));
            terms.push((2 * k, c));
        }
        let s = LaurentSeries::from_terms(Var::Lambda, 2, top, terms);
        let mut coeffs = Vec::with_capacity(g_max as usize + 1);
        for h in 0..=g_max {
            let row = if h == 1 {
                (0..=g_max).map(|g| if g == 1 { Rational::one() } else { Rational::zero() }).collect()
            } else {
                let p = s.pow(h as i64 - 1)?;
                (0..=g_max).map(|g| p.coeff(2 * g as i64 - 2).expect("kernel window covers all genera")).collect()
            };
            coeffs.push(row);
        }
        Ok(CoverKernel { g_max, coeffs })
    }

    pub fn g_max(&self) -> u32 {
        self.g_max
    }

    /// `[lambda^(2g-2)] (2 sin(lambda/2))^(2h-2)`.
    pub fn coeff(&self, h: u32, g: u32) -> &Rational {
        &self.coeffs[h as usize][g as usize]
    }

    /// Contribution weight of `n_h^(d/r)` to `N_{g,d}`: `r^(2g-3)` times
    /// the kernel coefficient.
    fn weight(&self, h: u32, g: u32, r: u32) -> Rational {
        rational::pow(&int(r as i64), 2 * g as i64 - 3) * self.coeff(h, g)
    }
}

fn divisors(d: u32) -> impl Iterator<Item = u32> {
    (1..=d).filter(move |r| d.is_multiple_of(*r))
}

/// Gromov–Witten invariants `N_{g,d}` for `g <= g_out`, `d <= d_out` from
/// Gopakumar–Vafa invariants via the multiple-cover formula.
pub fn gv_to_gw(gv: &GvTable, g_out: u32, d_out: u32) -> Result<GwTable, TransformError> {
    if gv.g_max() < g_out || gv.d_max() < d_out {
        return Err(TransformError::InsufficientTruncation(format!(
            "GV table covers g <= {}, d <= {}; need g <= {g_out}, d <= {d_out}",
            gv.g_max(),
            gv.d_max()
        )));
    }
    let kernel = CoverKernel::new(g_out)?;
    let mut gw = GwTable::new(g_out, d_out);
    for d in 1..=d_out {
        for g in 0..=g_out {
            let mut acc = Rational::zero();
            for r in divisors(d) {
                for h in 0..=g {
                    let n = gv.get(h, d / r).expect("checked window");
                    if !n.is_zero() {
                        acc += n * kernel.weight(h, g, r);
                    }
                }
            }
            gw.insert(g, d, acc)?;
        }
    }
    Ok(gw)
}

/// Inverse of [`gv_to_gw`] by triangular elimination, degree then genus
/// ascending.
pub fn gw_to_gv(gw: &GwTable, g_out: u32, d_out: u32) -> Result<GvTable, TransformError> {
    if gw.g_max() < g_out || gw.d_max() < d_out {
        return Err(TransformError::InsufficientTruncation(format!(
            "GW table covers g <= {}, d <= {}; every divisor class up to g <= {g_out}, d <= {d_out} is required",
            gw.g_max(),
            gw.d_max()
        )));
    }
    let kernel = CoverKernel::new(g_out)?;
    let mut gv = GvTable::new(g_out, d_out);
    for d in 1..=d_out {
        for g in 0..=g_out {
            let mut acc = gw.get(g, d).expect("checked window");
            for r in divisors(d) {
                for h in 0..=g {
                    if r == 1 && h == g {
                        continue;
                    }
                    let n = gv.get(h, d / r).expect("filled in order");
                    if !n.is_zero() {
                        acc -= n * kernel.weight(h, g, r);
                    }
                }
            }
            gv.insert(g, d, acc)?;
        }
    }
    Ok(gv)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlaggedEntry {
    pub key: i64,
    pub d: u32,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegralityReport {
    pub checked: usize,
    pub non_integral: Vec<FlaggedEntry>,
}

impl IntegralityReport {
    pub fn is_clean(&self) -> bool {
        self.non_integral.is_empty()
    }
}

pub fn integrality_check(gv: &GvTable) -> IntegralityReport {
    let non_integral = gv
        .entries()
        .filter(|(_, _, v)| !v.is_integer())
        .map(|(g, d, v)| FlaggedEntry { key: g as i64, d, value: v.clone() })
        .collect();
    IntegralityReport { checked: gv.len(), non_integral }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    /// Nonzero entries that were set to zero.
    pub zeroed: Vec<FlaggedEntry>,
}

impl VanishingReport {
    pub fn is_clean(&self) -> bool {
        self.zeroed.is_empty()
    }
}

/// Zeroes `n_g^d` for `g > B(d)` and marks the table Castelnuovo-valid.
pub fn apply_castelnuovo_vanishing(gv: &GvTable) -> (GvTable, VanishingReport) {
    let mut out = gv.clone();
    let mut zeroed = Vec::new();
    for (g, d, v) in gv.entries() {
        if int(g as i64) > castelnuovo_threshold(d) {
            zeroed.push(FlaggedEntry { key: g as i64, d, value: v.clone() });
            out.insert(g, d, Rational::zero()).expect("inside window");
        }
    }
    out.set_castelnuovo_valid(true);
    (out, VanishingReport { zeroed })
}

/// Zeroes `P_{n,d}` for `n < 1 - B(d)` and marks the table Castelnuovo-valid.
pub fn apply_pt_vanishing(pt: &PtTable) -> (PtTable, VanishingReport) {
    let mut out = pt.clone();
    let mut zeroed = Vec::new();
    for (n, d, v) in pt.entries() {
        if int(n) < int(1) - castelnuovo_threshold(d) {
            zeroed.push(FlaggedEntry { key: n, d, value: v.clone() });
            out.insert(n, d, Rational::zero()).expect("inside window");
        }
    }
    out.set_castelnuovo_valid(true);
    (out, VanishingReport { zeroed })
}

/// `((u^r) / (1 - u^r)^2)^(1-g)` on `[lo, hi]`, in the variable `u = -q`.
fn cover_expansion(g: u32, r: u32, lo: i64, hi: i64) -> LaurentSeries {
    let r = r as i64;
    if g == 0 {
        let terms = (1..).map(|k| (k * r, int(k))).take_while(|(e, _)| *e <= hi);
        return LaurentSeries::from_terms(Var::Q, lo, hi, terms.collect::<Vec<_>>());
    }
    let m = 2 * g as i64 - 2;
    let terms = (0..=m).map(|j| {
        let c = Rational::from_integer(rational::binomial(m, j)) * rational::sign(j);
        (r * (j - g as i64 + 1), c)
    });
    LaurentSeries::from_terms(Var::Q, lo, hi, terms.collect::<Vec<_>>())
}

/// Connected stable-pair series `F = log PT` through `t^d_out` on the
/// q-window `[n_min, n_max]`. The degree-d block is
/// `sum n_g^(d/r) (-1)^(g-1)/r ((-q)^r / (1 - (-q)^r)^2)^(1-g)`.
pub fn gv_to_pt_connected(gv: &GvTable, d_out: u32, window: (i64, i64)) -> Result<BivariateSeries, TransformError> {
    let (lo, hi) = window;
    if hi < lo {
        return Err(TransformError::EmptyWindow(lo, hi));
    }
    if gv.d_max() < d_out {
        return Err(TransformError::InsufficientTruncation(format!(
            "GV table stops at degree {}, need {d_out}",
            gv.d_max()
        )));
    }
    if let Some(d) = (1..=d_out).find(|&d| !gv.covers_all_genera(d)) {
        return Err(TransformError::InsufficientTruncation(format!(
            "genera of degree {d} are not all known; mark the table genus-complete or apply Castelnuovo vanishing with g_max >= floor(B(d))"
        )));
    }
    let mut blocks = vec![LaurentSeries::zero(Var::Q, lo, hi)];
    for d in 1..=d_out {
        let mut block = LaurentSeries::zero(Var::Q, lo, hi);
        for r in divisors(d) {
            let dd = d / r;
            for (g, _, n) in gv.entries().filter(|(_, e, _)| *e == dd) {
                let lowest = if g == 0 { r as i64 } else { r as i64 * (1 - g as i64) };
                if lowest < lo {
                    return Err(TransformError::WindowTooSmall { g, d, r, lowest, n_min: lo });
                }
                let w = n * rational::sign(g as i64 - 1) / int(r as i64);
                block = block.add(&cover_expansion(g, r, lo, hi).scale(&w))?;
            }
        }
        blocks.push(block.rescale(&int(-1)));
    }
    Ok(BivariateSeries::new(Var::Q, blocks)?)
}

/// Stable-pair table `PT = exp(F)`, read off on the widest q-window shared
/// by all degrees.
pub fn pt_connected_to_table(f: &BivariateSeries) -> Result<PtTable, TransformError> {
    let pt = f.exp()?;
    series_to_table(&pt)
}

fn series_to_table<K: crate::tables::TableKind>(
    s: &BivariateSeries,
) -> Result<crate::tables::ChiTable<K>, TransformError> {
    let blocks = &s.blocks()[1..];
    let lo = blocks.iter().map(LaurentSeries::min_exp).min().unwrap_or(0);
    let hi = blocks.iter().map(LaurentSeries::trunc).min().unwrap_or(0);
    if hi < lo {
        return Err(TransformError::EmptyWindow(lo, hi));
    }
    let mut table = crate::tables::ChiTable::<K>::new(s.t_trunc() as u32, lo, hi)?;
    for (i, b) in blocks.iter().enumerate() {
        for (e, c) in b.terms().filter(|(e, _)| *e <= hi) {
            table.insert(e, i as u32 + 1, c.clone())?;
        }
    }
    Ok(table)
}

fn table_blocks<K: crate::tables::TableKind>(t: &crate::tables::ChiTable<K>) -> Vec<LaurentSeries> {
    let (lo, hi) = t.q_window();
    (1..=t.d_max())
        .map(|d| {
            let terms = t.entries().filter(|(_, e, _)| *e == d).map(|(n, _, v)| (n, v.clone()));
            LaurentSeries::from_terms(Var::Q, lo, hi, terms.collect::<Vec<_>>())
        })
        .collect()
}

/// `F = log PT` from a stable-pair table.
pub fn pt_table_to_connected(pt: &PtTable) -> Result<BivariateSeries, TransformError> {
    let (_, hi) = pt.q_window();
    let mut blocks = vec![LaurentSeries::one(Var::Q, hi.max(0))];
    blocks.extend(table_blocks(pt));
    Ok(BivariateSeries::new(Var::Q, blocks)?.log()?)
}

/// `I_{n,d} = sum_{m >= 0} P_{n-m,d} I_{m,0}` for a degree-zero series
/// `dt0 = 1 + O(q)`.
pub fn pt_to_dt(pt: &PtTable, dt0: &LaurentSeries) -> Result<DtTable, TransformError> {
    if dt0.var() != Var::Q || dt0.coeff(0) != Some(Rational::one()) || dt0.valuation() < 0 {
        return Err(TransformError::BadDegreeZero);
    }
    let mut blocks = vec![dt0.clone()];
    for b in table_blocks(pt) {
        blocks.push(b.mul(dt0)?);
    }
    let s = BivariateSeries::new(Var::Q, blocks)?;
    let mut dt: DtTable = series_to_table(&s)?;
    let (lo, _) = pt.q_window();
    if dt.q_window().0 > lo {
        let (_, hi) = dt.q_window();
        let mut wide = DtTable::new(dt.d_max(), lo, hi)?;
        for (n, d, v) in dt.entries() {
            wide.insert(n, d, v.clone())?;
        }
        dt = wide;
    }
    Ok(dt)
}

/// Coefficients `[q^m t^d] F` with `m < 1 - B(d)` that fail to vanish.
pub fn connected_vanishing_check(f: &BivariateSeries) -> Vec<FlaggedEntry> {
    let mut bad = Vec::new();
    for (d, b) in f.blocks().iter().enumerate().skip(1) {
        let threshold = int(1) - castelnuovo_threshold(d as u32);
        for (m, c) in b.terms() {
            if int(m) < threshold {
                bad.push(FlaggedEntry { key: m, d: d as u32, value: c.clone() });
            }
        }
    }
    bad
}

/// Smallest `n` at which a Castelnuovo-valid degree-d table may be nonzero.
pub fn lowest_euler_characteristic(d: u32) -> i64 {
    rational::ceil_i64(&(int(1) - castelnuovo_threshold(d)))
}
