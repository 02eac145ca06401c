//! Truncated Laurent series with exact rational coefficients.
//!
//! A [`LaurentSeries`] stores a dense window of coefficients from `min_exp`
//! to `trunc` (inclusive). Coefficients below `min_exp` are exactly zero and
//! coefficients above `trunc` are unknown. Every operation returns the widest
//! window on which its result is still fully determined by its inputs.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    #[serde(rename = "lambda")]
    Lambda,
    #[serde(rename = "q")]
    Q,
    #[serde(rename = "t")]
    T,
    #[serde(rename = "Delta")]
    BigDelta,
    #[serde(rename = "delta")]
    SmallDelta,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::Lambda => "lambda",
            Var::Q => "q",
            Var::T => "t",
            Var::BigDelta => "Delta",
            Var::SmallDelta => "delta",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("variable mismatch: {left} vs {right}")]
    VariableMismatch { left: Var, right: Var },
    #[error("series has no nonzero coefficient in its known window")]
    ZeroLeading,
    #[error("logarithm needs constant term 1 and no negative powers")]
    NotUnitConstant,
    #[error("exponential needs a series with zero constant term and no negative powers")]
    NonzeroConstant,
    #[error("substituted series must have positive valuation")]
    NotPositiveValuation,
    #[error("series reversion needs valuation exactly 1")]
    NotInvertibleLinearTerm,
    #[error("composition needs an outer series without negative powers")]
    NegativePowers,
    #[error("malformed series: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct LaurentSeries {
    var: Var,
    min_exp: i64,
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    variable: Var,
    min_exp: i64,
    trunc: i64,
    #[serde(with = "rational::serde_vec")]
    coeffs: Vec<Rational>,
}

impl TryFrom<SeriesRepr> for LaurentSeries {
    type Error = SeriesError;

    fn try_from(r: SeriesRepr) -> Result<Self, Self::Error> {
        let expected = r.trunc - r.min_exp + 1;
        if expected < 0 || expected as usize != r.coeffs.len() {
            return Err(SeriesError::Malformed(format!(
                "window [{}, {}] needs {} coefficients, found {}",
                r.min_exp,
                r.trunc,
                expected.max(0),
                r.coeffs.len()
            )));
        }
        Ok(LaurentSeries::new(r.variable, r.min_exp, r.coeffs))
    }
}

impl From<LaurentSeries> for SeriesRepr {
    fn from(s: LaurentSeries) -> Self {
        SeriesRepr { variable: s.var, min_exp: s.min_exp, trunc: s.trunc(), coeffs: s.coeffs }
    }
}

fn check_var(a: Var, b: Var) -> Result<(), SeriesError> {
    if a == b {
        Ok(())
    } else {
        Err(SeriesError::VariableMismatch { left: a, right: b })
    }
}

impl LaurentSeries {
    /// Dense coefficients starting at `min_exp`; the window ends at
    /// `min_exp + coeffs.len() - 1`.
    pub fn new(var: Var, min_exp: i64, coeffs: Vec<Rational>) -> Self {
        LaurentSeries { var, min_exp, coeffs }
    }

    /// Known-zero series on `[min_exp, trunc]`. An empty window is allowed.
    pub fn zero(var: Var, min_exp: i64, trunc: i64) -> Self {
        let len = (trunc - min_exp + 1).max(0) as usize;
        let min_exp = if len == 0 { trunc + 1 } else { min_exp };
        LaurentSeries::new(var, min_exp, vec![Rational::zero(); len])
    }

    pub fn constant(var: Var, c: Rational, trunc: i64) -> Self {
        Self::monomial(var, 0, c, trunc)
    }

    pub fn one(var: Var, trunc: i64) -> Self {
        Self::constant(var, Rational::one(), trunc)
    }

    /// `c x^exp` known up to `trunc`.
    pub fn monomial(var: Var, exp: i64, c: Rational, trunc: i64) -> Self {
        let mut s = Self::zero(var, exp, trunc);
        if exp <= trunc {
            s.coeffs[0] = c;
        }
        s
    }

    /// Builds a series on `[min_exp, trunc]` from `(exponent, coefficient)`
    /// pairs. Terms outside the window are dropped; repeated exponents add.
    pub fn from_terms<I>(var: Var, min_exp: i64, trunc: i64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut s = Self::zero(var, min_exp, trunc);
        for (e, c) in terms {
            if e >= s.min_exp && e <= trunc {
                s.coeffs[(e - s.min_exp) as usize] += c;
            }
        }
        s
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn trunc(&self) -> i64 {
        self.min_exp + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^e`: zero below the window, `None` above `trunc`.
    pub fn coeff(&self, e: i64) -> Option<Rational> {
        if e > self.trunc() {
            None
        } else if e < self.min_exp {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(e - self.min_exp) as usize].clone())
        }
    }

    fn at(&self, e: i64) -> &Rational {
        &self.coeffs[(e - self.min_exp) as usize]
    }

    /// Exponent of the first nonzero known coefficient, or `trunc + 1` when the
    /// whole window is zero.
    pub fn valuation(&self) -> i64 {
        self.coeffs.iter().position(|c| !c.is_zero()).map_or(self.trunc() + 1, |i| self.min_exp + i as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    /// Restricts the known window to `e <= trunc`.
    pub fn truncate(&self, trunc: i64) -> Self {
        if trunc >= self.trunc() {
            return self.clone();
        }
        let mut s = Self::zero(self.var, self.min_exp, trunc);
        for e in s.min_exp..=trunc {
            s.coeffs[(e - s.min_exp) as usize] = self.at(e).clone();
        }
        s
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries::new(self.var, self.min_exp + k, self.coeffs.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LaurentSeries::new(self.var, self.min_exp, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `f(c x)` for nonzero `c`: the coefficient of `x^e` gains a factor `c^e`.
    pub fn rescale(&self, c: &Rational) -> Self {
        let coeffs =
            self.coeffs.iter().enumerate().map(|(i, a)| a * rational::pow(c, self.min_exp + i as i64)).collect();
        LaurentSeries::new(self.var, self.min_exp, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries::new(self.var, self.min_exp, self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        check_var(self.var, other.var)?;
        let lo = self.min_exp.min(other.min_exp);
        let hi = self.trunc().min(other.trunc());
        let mut s = Self::zero(self.var, lo, hi);
        for e in s.min_exp..=hi {
            let v = self.coeff(e).unwrap() + other.coeff(e).unwrap();
            s.coeffs[(e - s.min_exp) as usize] = v;
        }
        Ok(s)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    /// Product on the tightest valid window. If `f` is known to `A` with
    /// valuation `v` and `g` to `B` with valuation `w`, the product is known
    /// to `min(A + w, B + v)`.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        check_var(self.var, other.var)?;
        let (va, vb) = (self.valuation(), other.valuation());
        let hi = (self.trunc() + vb).min(other.trunc() + va);
        let mut s = Self::zero(self.var, va + vb, hi);
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                if i + j > hi {
                    break;
                }
                s.coeffs[(i + j - s.min_exp) as usize] += a * b;
            }
        }
        Ok(s)
    }

    /// Multiplicative inverse. The relative precision is preserved, so a
    /// series with valuation `v` known to `A` inverts to one with lowest
    /// exponent `-v` known to `A - 2v`.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let v = self.valuation();
        let top = self.trunc();
        if v > top {
            return Err(SeriesError::ZeroLeading);
        }
        let n = (top - v) as usize;
        let g: Vec<Rational> = (0..=n).map(|i| self.at(v + i as i64).clone()).collect();
        let inv0 = g[0].recip();
        let mut h = Vec::with_capacity(n + 1);
        h.push(inv0.clone());
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                acc += &g[k] * &h[m - k];
            }
            h.push(-acc * &inv0);
        }
        Ok(LaurentSeries::new(self.var, -v, h))
    }

    /// Integer power; negative exponents go through [`invert`](Self::invert).
    /// `f^0` is the constant 1 carrying the relative precision of `f`.
    pub fn pow(&self, n: i64) -> Result<Self, SeriesError> {
        if n < 0 {
            return self.invert()?.pow(-n);
        }
        if n == 0 {
            let v = self.valuation();
            return Ok(Self::one(self.var, self.trunc() - v));
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base)?,
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc.expect("n > 0"))
    }

    fn nonnegative_part(&self) -> Option<Vec<Rational>> {
        let top = self.trunc();
        if top < 0 || (self.min_exp..0).any(|e| e <= top && !self.at(e).is_zero()) {
            return None;
        }
        Some((0..=top).map(|e| self.coeff(e).unwrap()).collect())
    }

    /// Logarithm of a series `1 + O(x)`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        let f = self.nonnegative_part().ok_or(SeriesError::NotUnitConstant)?;
        if !f[0].is_one() {
            return Err(SeriesError::NotUnitConstant);
        }
        let mut g = vec![Rational::zero(); f.len()];
        for n in 1..f.len() {
            let mut acc = rational::int(n as i64) * &f[n];
            for k in 1..n {
                acc -= rational::int(k as i64) * &g[k] * &f[n - k];
            }
            g[n] = acc / rational::int(n as i64);
        }
        Ok(LaurentSeries::new(self.var, 0, g))
    }

    /// Exponential of a series `O(x)`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        let g = self.nonnegative_part().ok_or(SeriesError::NonzeroConstant)?;
        if !g[0].is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let mut h = vec![Rational::zero(); g.len()];
        h[0] = Rational::one();
        for n in 1..g.len() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                acc += rational::int(k as i64) * &g[k] * &h[n - k];
            }
            h[n] = acc / rational::int(n as i64);
        }
        Ok(LaurentSeries::new(self.var, 0, h))
    }

    /// `f(m(y))` for a power series `f` and `m` of positive valuation. The
    /// result is in the variable of `m`.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        let f = self.nonnegative_part().ok_or(SeriesError::NegativePowers)?;
        let vm = inner.valuation();
        if vm < 1 || vm > inner.trunc() {
            return Err(SeriesError::NotPositiveValuation);
        }
        let tail = vm * f.len() as i64 - 1;
        let mut acc = Self::constant(inner.var, f[0].clone(), tail);
        let mut power = inner.clone();
        for (e, c) in f.iter().enumerate().skip(1) {
            if !c.is_zero() {
                acc = acc.add(&power.scale(c))?;
            }
            if e + 1 < f.len() {
                power = power.mul(inner)?;
            }
        }
        Ok(acc)
    }

    /// Compositional inverse of a series `c x + O(x^2)` with `c != 0`, known to
    /// the same order.
    pub fn reversion(&self) -> Result<Self, SeriesError> {
        let top = self.trunc();
        if self.valuation() != 1 || top < 1 {
            return Err(SeriesError::NotInvertibleLinearTerm);
        }
        self.nonnegative_part().ok_or(SeriesError::NotInvertibleLinearTerm)?;
        let c1 = self.at(1).clone();
        let mut g = Self::zero(self.var, 1, top);
        g.coeffs[0] = c1.recip();
        for n in 2..=top {
            let composed = self.compose(&g.truncate(n - 1).extend_zero(n))?;
            let c = composed.coeff(n).unwrap();
            g.coeffs[(n - 1) as usize] = -c / &c1;
        }
        Ok(g)
    }

    /// Treats the series as exact below `trunc` and pads it with zeros up to
    /// `new_trunc`. Only meaningful when the caller knows the tail vanishes.
    pub fn extend_zero(&self, new_trunc: i64) -> Self {
        let mut s = self.clone();
        while s.trunc() < new_trunc {
            s.coeffs.push(Rational::zero());
        }
        s
    }

    /// Whether two series agree on every exponent known to both.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.var != other.var {
            return false;
        }
        let lo = self.min_exp.min(other.min_exp);
        let hi = self.trunc().min(other.trunc());
        (lo..=hi).all(|e| self.coeff(e) == other.coeff(e))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({}){}^{}", c, self.var, e)?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{})", self.var, self.trunc() + 1)
    }
}

/// A series in `t` whose coefficients are Laurent series in a second
/// variable, truncated at `t^t_trunc`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BivariateRepr", into = "BivariateRepr")]
pub struct BivariateSeries {
    var: Var,
    blocks: Vec<LaurentSeries>,
}

#[derive(Serialize, Deserialize)]
struct BivariateRepr {
    variable: Var,
    t_trunc: usize,
    blocks: Vec<LaurentSeries>,
}

impl TryFrom<BivariateRepr> for BivariateSeries {
    type Error = SeriesError;

    fn try_from(r: BivariateRepr) -> Result<Self, Self::Error> {
        if r.blocks.len() != r.t_trunc + 1 {
            return Err(SeriesError::Malformed(format!(
                "t_trunc {} needs {} blocks, found {}",
                r.t_trunc,
                r.t_trunc + 1,
                r.blocks.len()
            )));
        }
        BivariateSeries::new(r.variable, r.blocks)
    }
}

impl From<BivariateSeries> for BivariateRepr {
    fn from(s: BivariateSeries) -> Self {
        BivariateRepr { variable: s.var, t_trunc: s.t_trunc(), blocks: s.blocks }
    }
}

impl BivariateSeries {
    /// `blocks[d]` is the coefficient of `t^d`.
    pub fn new(var: Var, blocks: Vec<LaurentSeries>) -> Result<Self, SeriesError> {
        if blocks.is_empty() {
            return Err(SeriesError::Malformed("no t-blocks".into()));
        }
        for b in &blocks {
            check_var(var, b.var)?;
        }
        Ok(BivariateSeries { var, blocks })
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn t_trunc(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn block(&self, d: usize) -> Option<&LaurentSeries> {
        self.blocks.get(d)
    }

    pub fn blocks(&self) -> &[LaurentSeries] {
        &self.blocks
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        check_var(self.var, other.var)?;
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect::<Result<_, _>>()?;
        Self::new(self.var, blocks)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        check_var(self.var, other.var)?;
        let n = self.t_trunc().min(other.t_trunc());
        let mut blocks = Vec::with_capacity(n + 1);
        for d in 0..=n {
            let mut acc = self.blocks[0].mul(&other.blocks[d])?;
            for i in 1..=d {
                acc = acc.add(&self.blocks[i].mul(&other.blocks[d - i])?)?;
            }
            blocks.push(acc);
        }
        Self::new(self.var, blocks)
    }

    /// Product of two series with vanishing `t^0` blocks, restricted to
    /// blocks `1..=n`; `None` marks an exactly zero block.
    fn nil_mul(
        x: &[Option<LaurentSeries>],
        y: &[Option<LaurentSeries>],
    ) -> Result<Vec<Option<LaurentSeries>>, SeriesError> {
        let n = x.len() - 1;
        let mut out = vec![None; n + 1];
        for d in 2..=n {
            let mut acc: Option<LaurentSeries> = None;
            for i in 1..d {
                if let (Some(a), Some(b)) = (&x[i], &y[d - i]) {
                    let p = a.mul(b)?;
                    acc = Some(match acc {
                        None => p,
                        Some(s) => s.add(&p)?,
                    });
                }
            }
            out[d] = acc;
        }
        Ok(out)
    }

    fn positive_blocks(&self) -> Vec<Option<LaurentSeries>> {
        std::iter::once(None).chain(self.blocks[1..].iter().cloned().map(Some)).collect()
    }

    /// Logarithm of a series whose `t^0` block is exactly 1, via
    /// `log(1 + x) = sum (-1)^(k-1) x^k / k`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        let b0 = &self.blocks[0];
        let unit = b0.coeff(0) == Some(Rational::one()) && b0.terms().all(|(e, _)| e == 0);
        if !unit {
            return Err(SeriesError::NotUnitConstant);
        }
        let x = self.positive_blocks();
        self.power_sum(&x, |k| rational::sign(k - 1) / rational::int(k))
            .map(|mut blocks| {
                blocks[0] = LaurentSeries::zero(self.var, 0, b0.trunc().max(0));
                blocks
            })
            .and_then(|blocks| Self::new(self.var, blocks))
    }

    /// Exponential of a series whose `t^0` block is exactly zero.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.blocks[0].is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let x = self.positive_blocks();
        let mut blocks = self.power_sum(&x, |k| Rational::from_integer(rational::factorial(k as u64)).recip())?;
        let top = blocks[1..].iter().map(LaurentSeries::trunc).max().unwrap_or(0);
        blocks[0] = LaurentSeries::one(self.var, top.max(0));
        Self::new(self.var, blocks)
    }

    fn power_sum(
        &self,
        x: &[Option<LaurentSeries>],
        weight: impl Fn(i64) -> Rational,
    ) -> Result<Vec<LaurentSeries>, SeriesError> {
        let n = self.t_trunc();
        let mut sums: Vec<Option<LaurentSeries>> = vec![None; n + 1];
        let mut power = x.to_vec();
        for k in 1..=n as i64 {
            let w = weight(k);
            for d in 1..=n {
                if let Some(p) = &power[d] {
                    let term = p.scale(&w);
                    sums[d] = Some(match sums[d].take() {
                        None => term,
                        Some(s) => s.add(&term)?,
                    });
                }
            }
            if (k as usize) < n {
                power = Self::nil_mul(&power, x)?;
            }
        }
        Ok(sums.into_iter().map(|s| s.unwrap_or_else(|| LaurentSeries::zero(self.var, 0, 0))).collect())
    }

    /// Substitutes `t := m(x)` where `m` is a series in the block variable
    /// with positive valuation, returning `sum_d f_d(x) m(x)^d`.
    pub fn substitute_t(&self, m: &LaurentSeries) -> Result<LaurentSeries, SeriesError> {
        check_var(self.var, m.var)?;
        let vm = m.valuation();
        if vm < 1 || vm > m.trunc() {
            return Err(SeriesError::NotPositiveValuation);
        }
        let tail = vm * (self.t_trunc() as i64 + 1) - 1 + self.min_valuation();
        let mut acc = self.blocks[0].truncate(tail);
        let mut power = m.clone();
        for d in 1..=self.t_trunc() {
            acc = acc.add(&self.blocks[d].mul(&power)?)?;
            if d < self.t_trunc() {
                power = power.mul(m)?;
            }
        }
        Ok(acc)
    }

    fn min_valuation(&self) -> i64 {
        self.blocks.iter().map(|b| b.valuation().min(b.min_exp())).min().unwrap_or(0).min(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn s(var: Var, min_exp: i64, c: &[i64]) -> LaurentSeries {
        LaurentSeries::new(var, min_exp, c.iter().map(|&x| int(x)).collect())
    }

    /// Schoolbook product of two exact Laurent polynomials.
    fn naive_product(a: &LaurentSeries, b: &LaurentSeries) -> Vec<(i64, Rational)> {
        let mut out = std::collections::BTreeMap::new();
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                let e = a.min_exp + b.min_exp + (i + j) as i64;
                *out.entry(e).or_insert_with(Rational::zero) += x * y;
            }
        }
        out.into_iter().collect()
    }

    #[test]
    fn shifted_product() {
        let a = s(Var::Q, -1, &[1, 0, 0, 0]);
        let b = s(Var::Q, 1, &[1, 0, 0]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coeff(0), Some(int(1)));
        assert_eq!(p.trunc(), 2);
    }

    #[test]
    fn mixed_variables_rejected() {
        let a = s(Var::Q, 0, &[1]);
        let b = s(Var::T, 0, &[1]);
        assert!(matches!(a.mul(&b), Err(SeriesError::VariableMismatch { .. })));
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn geometric_inverse() {
        let f = s(Var::Q, 0, &[1, -1, 0, 0, 0, 0]);
        let inv = f.invert().unwrap();
        assert_eq!(inv.coeffs(), vec![int(1); 6].as_slice());
        assert_eq!(inv.trunc(), 5);
    }

    #[test]
    fn sine_square_inverse() {
        // 2 - 2 cos x = x^2 - x^4/12 + x^6/360 - ...
        let f = LaurentSeries::new(
            Var::Lambda,
            2,
            vec![int(1), int(0), ratio(-1, 12), int(0), ratio(1, 360), int(0), ratio(-1, 20160)],
        );
        let inv = f.invert().unwrap();
        assert_eq!(inv.min_exp(), -2);
        assert_eq!(inv.coeff(-2), Some(int(1)));
        assert_eq!(inv.coeff(0), Some(ratio(1, 12)));
        assert_eq!(inv.coeff(2), Some(ratio(1, 240)));
        assert_eq!(inv.trunc(), 4);
    }

    #[test]
    fn zero_window_cannot_invert() {
        assert_eq!(LaurentSeries::zero(Var::Q, 0, 4).invert(), Err(SeriesError::ZeroLeading));
    }

    #[test]
    fn log_of_geometric() {
        // log(1/(1-q)) = sum q^n / n
        let f = s(Var::Q, 0, &[1; 7]);
        let g = f.log().unwrap();
        for n in 1..=6 {
            assert_eq!(g.coeff(n), Some(ratio(1, n)));
        }
    }

    #[test]
    fn exp_of_identity() {
        let g = s(Var::Q, 0, &[0, 1, 0, 0, 0, 0]);
        let h = g.exp().unwrap();
        for n in 0..=5u64 {
            let expect = Rational::from_integer(rational::factorial(n)).recip();
            assert_eq!(h.coeff(n as i64), Some(expect));
        }
    }

    #[test]
    fn bivariate_substitution() {
        let one = LaurentSeries::one(Var::Q, 3);
        let zero = LaurentSeries::zero(Var::Q, 0, 3);
        let f = BivariateSeries::new(Var::Q, vec![zero.clone(), zero.clone(), one, zero]).unwrap();
        let m = s(Var::Q, 1, &[1, 1, 0]);
        let out = f.substitute_t(&m).unwrap();
        assert_eq!(out.coeff(2), Some(int(1)));
        assert_eq!(out.coeff(3), Some(int(2)));
    }

    #[test]
    fn json_layout() {
        let f = LaurentSeries::new(Var::Q, -2, vec![ratio(1, 6), int(0), ratio(-3, 5)]);
        let j = serde_json::to_string(&f).unwrap();
        assert_eq!(j, r#"{"variable":"q","min_exp":-2,"trunc":0,"coeffs":["1/6","0","-3/5"]}"#);
        let back: LaurentSeries = serde_json::from_str(&j).unwrap();
        assert_eq!(back, f);
        let bad = r#"{"variable":"q","min_exp":0,"trunc":3,"coeffs":["1"]}"#;
        assert!(serde_json::from_str::<LaurentSeries>(bad).is_err());
    }

    /// Lagrange inversion: `[y^n] m^{-1}(y) = (1/n) [x^(n-1)] (x / m(x))^n`.
    fn lagrange_coefficient(m: &LaurentSeries, n: i64) -> Rational {
        let x_over_m = m.shift(-1).invert().unwrap();
        let p = x_over_m.pow(n).unwrap();
        p.coeff(n - 1).unwrap() / int(n)
    }

    #[test]
    fn reversion_matches_lagrange() {
        let m = s(Var::T, 1, &[2, -3, 5, 1, -4, 7]);
        let r = m.reversion().unwrap();
        for n in 1..=r.trunc() {
            assert_eq!(r.coeff(n).unwrap(), lagrange_coefficient(&m, n), "n = {n}");
        }
    }

    fn arb_series(var: Var) -> impl Strategy<Value = LaurentSeries> {
        (-3i64..3, proptest::collection::vec(-5i64..6, 1..8))
            .prop_map(move |(lo, c)| LaurentSeries::new(var, lo, c.into_iter().map(int).collect()))
    }

    fn arb_unit_series() -> impl Strategy<Value = LaurentSeries> {
        proptest::collection::vec(-4i64..5, 1..8).prop_map(|mut c| {
            c[0] = 1;
            LaurentSeries::new(Var::Q, 0, c.into_iter().map(int).collect())
        })
    }

    proptest! {
        #[test]
        fn product_matches_schoolbook(a in arb_series(Var::Q), b in arb_series(Var::Q)) {
            let p = a.mul(&b).unwrap();
            for (e, c) in naive_product(&a, &b) {
                if let Some(v) = p.coeff(e) {
                    prop_assert_eq!(v, c);
                }
            }
        }

        #[test]
        fn product_commutes(a in arb_series(Var::Q), b in arb_series(Var::Q)) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        }

        #[test]
        fn product_associates(a in arb_series(Var::Q), b in arb_series(Var::Q), c in arb_series(Var::Q)) {
            let l = a.mul(&b).unwrap().mul(&c).unwrap();
            let r = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert!(l.agrees_with(&r));
        }

        #[test]
        fn product_distributes(a in arb_series(Var::Q), b in arb_series(Var::Q), c in arb_series(Var::Q)) {
            let l = a.mul(&b.add(&c).unwrap()).unwrap();
            let r = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert!(l.agrees_with(&r));
        }

        #[test]
        fn inverse_is_inverse(a in arb_series(Var::Q)) {
            prop_assume!(!a.is_zero());
            let inv = a.invert().unwrap();
            prop_assert_eq!(inv.min_exp(), -a.valuation());
            let one = a.mul(&inv).unwrap();
            prop_assert!(one.agrees_with(&LaurentSeries::one(Var::Q, one.trunc())));
            prop_assert!(inv.invert().unwrap().agrees_with(&a));
        }

        #[test]
        fn exp_log_round_trip(f in arb_unit_series()) {
            let back = f.log().unwrap().exp().unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn compose_with_reversion(f in arb_series(Var::Q), c in proptest::collection::vec(-3i64..4, 5)) {
            let mut m = vec![int(1)];
            m.extend(c.into_iter().map(int));
            let m = LaurentSeries::new(Var::T, 1, m);
            let r = m.reversion().unwrap();
            let id = m.compose(&r).unwrap();
            prop_assert!(id.agrees_with(&LaurentSeries::monomial(Var::T, 1, int(1), id.trunc())));
            prop_assume!(f.valuation() >= 0 && f.trunc() >= 0);
            let g = f.with_var(Var::T);
            let back = g.compose(&m).unwrap().compose(&r).unwrap();
            prop_assert!(back.agrees_with(&g));
        }

        #[test]
        fn bivariate_exp_log(blocks in proptest::collection::vec(arb_series(Var::Q), 1..5)) {
            let mut all = vec![LaurentSeries::zero(Var::Q, 0, 6)];
            all.extend(blocks);
            let f = BivariateSeries::new(Var::Q, all).unwrap();
            let back = f.exp().unwrap().log().unwrap();
            for d in 1..=f.t_trunc() {
                prop_assert!(back.block(d).unwrap().agrees_with(f.block(d).unwrap()));
            }
        }
    }
}
