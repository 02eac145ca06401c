//! Castelnuovo-type genus bounds for curves on threefolds and the quintic
//! vanishing threshold `B(d) = (d^2 + 5d + 10) / 10`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::rational::{self, int, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("invalid threefold profile: {0}")]
    InvalidProfile(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileKind {
    Quintic,
    Hypersurface,
    GeneralBmt,
}

/// A smooth projective threefold with `Pic = Z H`, `H^3 = degree` and
/// `K = -index H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ThreefoldProfile {
    pub degree: u32,
    pub index: i32,
    pub kind: ProfileKind,
}

impl ThreefoldProfile {
    pub fn quintic() -> Self {
        ThreefoldProfile { degree: 5, index: 0, kind: ProfileKind::Quintic }
    }

    /// Smooth hypersurface of degree `n <= 5` in `P^4`; index `5 - n`. The
    /// case `n = 5` is the quintic.
    pub fn hypersurface(n: u32) -> Result<Self, BoundsError> {
        match n {
            5 => Ok(Self::quintic()),
            1..=4 => Ok(ThreefoldProfile { degree: n, index: 5 - n as i32, kind: ProfileKind::Hypersurface }),
            _ => Err(BoundsError::InvalidProfile(format!("hypersurface degree {n} not in 1..=5"))),
        }
    }

    pub fn projective_space() -> Self {
        ThreefoldProfile { degree: 1, index: 4, kind: ProfileKind::Hypersurface }
    }

    /// Any threefold satisfying the BMT inequality, with `n >= 1`, `i >= 0`.
    pub fn general(n: u32, i: i32) -> Result<Self, BoundsError> {
        if n == 0 || i < 0 {
            return Err(BoundsError::InvalidProfile(format!("n = {n}, i = {i}")));
        }
        Ok(ThreefoldProfile { degree: n, index: i, kind: ProfileKind::GeneralBmt })
    }

    pub fn n(&self) -> Rational {
        int(self.degree as i64)
    }

    pub fn i(&self) -> Rational {
        int(self.index as i64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundFormula {
    General,
    Hypersurface,
    NonHyperplane,
    Divisor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub d: u32,
    #[serde(with = "rational::serde_str")]
    pub bound: Rational,
    pub floor: i64,
    pub formula: BoundFormula,
}

impl BoundReport {
    fn new(d: u32, bound: Rational, formula: BoundFormula) -> Self {
        let floor = rational::floor_i64(&bound);
        BoundReport { d, bound, floor, formula }
    }
}

/// `B(d) = (d^2 + 5d + 10) / 10`.
pub fn castelnuovo_threshold(d: u32) -> Rational {
    let d = d as i64;
    ratio(d * d + 5 * d + 10, 10)
}

/// Largest `d >= 0` with `B(d) < g`, or 0 when there is none.
pub fn max_vanishing_degree(g: u32) -> u32 {
    let g = int(g as i64);
    let mut d = 0;
    while castelnuovo_threshold(d + 1) < g {
        d += 1;
    }
    d
}

fn check_n(n: u32) -> Result<Rational, BoundsError> {
    if n == 0 {
        return Err(BoundsError::OutOfRange("n must be positive".into()));
    }
    Ok(int(n as i64))
}

fn check_hypersurface(n: u32) -> Result<Rational, BoundsError> {
    if !(1..=5).contains(&n) {
        return Err(BoundsError::OutOfRange(format!("hypersurface degree {n} not in 1..=5")));
    }
    Ok(int(n as i64))
}

/// `d^2 / (2n) + (1 - i) d / 2 + 1`.
pub fn genus_bound_general(n: u32, i: i32, d: u32) -> Result<BoundReport, BoundsError> {
    let nq = check_n(n)?;
    let dq = int(d as i64);
    let b = &dq * &dq / (int(2) * nq) + (int(1) - int(i as i64)) * &dq / int(2) + int(1);
    Ok(BoundReport::new(d, b, BoundFormula::General))
}

/// `d^2 / (2n) + (n - 4) d / 2 + 1` for a smooth hypersurface of degree `n <= 5`.
pub fn genus_bound_hypersurface(n: u32, d: u32) -> Result<BoundReport, BoundsError> {
    let nq = check_hypersurface(n)?;
    let dq = int(d as i64);
    let b = &dq * &dq / (int(2) * &nq) + (&nq - int(4)) * &dq / int(2) + int(1);
    Ok(BoundReport::new(d, b, BoundFormula::Hypersurface))
}

/// `d^2 / (2n) + (n/2 - 1/n - 2) d + 2 + 1/n` for curves not contained in a
/// hyperplane section.
pub fn genus_bound_nonhyperplane(n: u32, d: u32) -> Result<BoundReport, BoundsError> {
    let nq = check_hypersurface(n)?;
    let dq = int(d as i64);
    let b = &dq * &dq / (int(2) * &nq) + (&nq / int(2) - nq.recip() - int(2)) * &dq + int(2) + nq.recip();
    Ok(BoundReport::new(d, b, BoundFormula::NonHyperplane))
}

/// `d^2 / (2nm) + (m - i) d / 2 + 1` for curves on a divisor in `|O(m)|`.
pub fn genus_bound_divisor(n: u32, i: i32, m: u32, d: u32) -> Result<BoundReport, BoundsError> {
    let nq = check_n(n)?;
    if m == 0 {
        return Err(BoundsError::OutOfRange("m must be positive".into()));
    }
    let mq = int(m as i64);
    let dq = int(d as i64);
    let b = &dq * &dq / (int(2) * nq * &mq) + (mq - int(i as i64)) * &dq / int(2) + int(1);
    Ok(BoundReport::new(d, b, BoundFormula::Divisor))
}

/// `h^0(D, O_D(m))` for a quintic surface `D` in `P^3`.
fn quintic_surface_sections(m: u32) -> BigInt {
    let m = m as i64;
    rational::binomial(m + 3, 3) - rational::binomial(m - 2, 3)
}

/// GV invariant of the extremal class `d = 5m`, `g = B(5m)`.
pub fn extremal_gv(m: u32) -> Result<BigInt, BoundsError> {
    match m {
        0 => Err(BoundsError::OutOfRange("m must be positive".into())),
        1 => Ok(BigInt::from(10)),
        _ => {
            let n = quintic_surface_sections(m);
            let sign_exp: BigInt = &n + 3;
            let v = BigInt::from(5) * n;
            Ok(if (sign_exp % 2u32).is_zero() { v } else { -v })
        }
    }
}

/// Euler characteristic and dimension of the smooth moduli of extremal
/// curves of degree `5m`: a projective bundle over `P^4`.
pub fn extremal_moduli_euler(m: u32) -> Result<(BigInt, u64), BoundsError> {
    if m < 2 {
        return Err(BoundsError::OutOfRange("moduli description needs m >= 2".into()));
    }
    let fibre_points = quintic_surface_sections(m);
    let euler = BigInt::from(5) * &fibre_points;
    let dim = u64::try_from(fibre_points + 3).expect("dimension fits u64");
    Ok((euler, dim))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalRow {
    pub m: u32,
    pub d: u32,
    pub g: i64,
    pub gv: String,
}

pub fn extremal_row(m: u32) -> Result<ExtremalRow, BoundsError> {
    let d = 5 * m;
    let g = castelnuovo_threshold(d);
    Ok(ExtremalRow { m, d, g: rational::floor_i64(&g), gv: extremal_gv(m)?.to_string() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryFailure {
    pub g: u32,
    pub d: u32,
    #[serde(with = "rational::serde_str")]
    pub threshold: Rational,
    pub equality: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub g_max: u32,
    pub pairs_checked: usize,
    pub failures: Vec<CorollaryFailure>,
    /// True when the only failure is the boundary equality `B(20) = 51`.
    pub only_boundary_equality: bool,
}

/// Checks `g > B(d)` for all `1 <= g <= g_max` and `1 <= d <= floor((2g-2)/5)`.
pub fn castelnuovo_corollary_check(g_max: u32) -> CorollaryReport {
    let mut failures = Vec::new();
    let mut pairs = 0;
    for g in 1..=g_max {
        let gq = int(g as i64);
        for d in 1..=(2 * g - 2) / 5 {
            pairs += 1;
            let b = castelnuovo_threshold(d);
            if gq <= b {
                failures.push(CorollaryFailure { g, d, equality: gq == b, threshold: b });
            }
        }
    }
    let only_boundary_equality = failures.iter().all(|f| f.g == 51 && f.d == 20 && f.equality);
    CorollaryReport { g_max, pairs_checked: pairs, failures, only_boundary_equality }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertiesReport {
    pub d_max: u32,
    pub max_parts: usize,
    pub partitions_checked: usize,
    pub superadditivity_violations: Vec<Vec<u32>>,
    pub covers_checked: usize,
    pub cover_violations: Vec<(u32, u32)>,
}

impl PropertiesReport {
    pub fn holds(&self) -> bool {
        self.superadditivity_violations.is_empty() && self.cover_violations.is_empty()
    }
}

fn partitions(d: u32, max_part: u32, parts_left: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if d == 0 {
        out.push(prefix.clone());
        return;
    }
    if parts_left == 0 {
        return;
    }
    for p in (1..=max_part.min(d)).rev() {
        prefix.push(p);
        partitions(d - p, p, parts_left - 1, prefix, out);
        prefix.pop();
    }
}

/// Superadditivity of `B(d) - 1` over partitions with at most `max_parts`
/// parts, and the cover inequality `(B(d) - 1)/r + 1 >= B(d/r)` (strict for
/// `r >= 2`), for every `d <= d_max`.
pub fn bound_function_properties(d_max: u32, max_parts: usize) -> PropertiesReport {
    let mut checked = 0;
    let mut super_bad = Vec::new();
    let mut covers = 0;
    let mut cover_bad = Vec::new();
    for d in 1..=d_max {
        let lhs = castelnuovo_threshold(d) - int(1);
        let mut parts = Vec::new();
        partitions(d, d, max_parts, &mut Vec::new(), &mut parts);
        for p in parts.into_iter().filter(|p| p.len() >= 2) {
            checked += 1;
            let rhs: Rational = p.iter().map(|&x| castelnuovo_threshold(x) - int(1)).sum();
            if lhs < rhs {
                super_bad.push(p);
            }
        }
        for r in (1..=d).filter(|r| d % r == 0) {
            covers += 1;
            let left = &lhs / int(r as i64) + int(1);
            let right = castelnuovo_threshold(d / r);
            let ok = if r >= 2 { left > right } else { left >= right };
            if !ok {
                cover_bad.push((d, r));
            }
        }
    }
    PropertiesReport {
        d_max,
        max_parts,
        partitions_checked: checked,
        superadditivity_violations: super_bad,
        covers_checked: covers,
        cover_violations: cover_bad,
    }
}
