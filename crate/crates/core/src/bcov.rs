//! Fixing the holomorphic ambiguity of the genus `g` free energy.
//!
//! The ambiguity `f_g = sum_{i=0}^{3g-3} a_i Y^i` is pinned down by three
//! linear conditions: regularity at the orbifold point kills the lowest
//! coefficients, the gap condition at the conifold fixes `a_g, ..., a_{3g-3}`
//! and low-degree Gromov-Witten data fix the remaining middle coefficients.
//! Inputs describing the anomaly recursion ("known terms") and the conifold
//! frame are treated as opaque series.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bernoulli::bernoulli;
use crate::bounds::{self, castelnuovo_threshold, max_vanishing_degree};
use crate::rational::{self, int, Rational};
use crate::series::{LaurentSeries, SeriesError, Var};

/// `5^5`, the conifold value of the large radius coordinate.
pub const CONIFOLD_Q: i64 = 3125;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BcovError {
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(u32),
    #[error("invalid conifold frame: {0}")]
    InvalidFrame(String),
    #[error("{what} is known only up to exponent {have}, need {need}")]
    WindowTooSmall { what: &'static str, have: i64, need: i64 },
    #[error("zero pivot at row {0}")]
    Singular(usize),
    #[error("known terms have a pole of order {0} beyond the gap")]
    InconsistentPole(i64),
    #[error("genus {g}: data up to degree {e} cannot fix the {unknowns} Castelnuovo unknowns")]
    Unresolved { g: u32, e: u32, unknowns: u32 },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("coefficient a_{0} is not determined")]
    Undetermined(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

fn check_genus(g: u32) -> Result<(), BcovError> {
    if g < 2 {
        Err(BcovError::GenusTooSmall(g))
    } else {
        Ok(())
    }
}

/// Highest index killed by orbifold regularity: `ceil((3g - 3) / 5)`.
pub fn regularity_top(g: u32) -> usize {
    (3 * g as usize - 3).div_ceil(5)
}

/// `{0, ..., ceil((3g - 3) / 5)}`.
pub fn regularity_indices(g: u32) -> std::ops::RangeInclusive<usize> {
    0..=regularity_top(g)
}

/// Indices fixed by the gap condition: `g, ..., 3g - 3`.
pub fn gap_indices(g: u32) -> std::ops::RangeInclusive<usize> {
    g as usize..=3 * g as usize - 3
}

/// Indices left to low-degree data: `ceil((3g - 3) / 5) + 1, ..., g - 1`.
pub fn castelnuovo_indices(g: u32) -> std::ops::RangeInclusive<usize> {
    regularity_top(g) + 1..=g as usize - 1
}

/// `floor(2(g - 1) / 5)`, the number of Castelnuovo unknowns.
pub fn castelnuovo_count(g: u32) -> u32 {
    2 * (g - 1) / 5
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoeffStatus {
    Unknown,
    FixedRegularity,
    FixedGap,
    FixedCastelnuovo,
    Supplied,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbiguityCoeff {
    pub index: usize,
    pub status: CoeffStatus,
    #[serde(default, with = "opt_rational", skip_serializing_if = "Option::is_none")]
    pub value: Option<Rational>,
}

mod opt_rational {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_str(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| crate::rational::parse(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Coefficients `a_0, ..., a_{3g-3}` with their provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HolomorphicAmbiguity {
    pub g: u32,
    pub coeffs: Vec<AmbiguityCoeff>,
}

impl HolomorphicAmbiguity {
    /// Fresh ambiguity with the regularity zeros in place.
    pub fn new(g: u32) -> Result<Self, BcovError> {
        check_genus(g)?;
        let top = regularity_top(g);
        let coeffs = (0..=3 * g as usize - 3)
            .map(|index| {
                if index <= top {
                    AmbiguityCoeff { index, status: CoeffStatus::FixedRegularity, value: Some(Rational::zero()) }
                } else {
                    AmbiguityCoeff { index, status: CoeffStatus::Unknown, value: None }
                }
            })
            .collect();
        Ok(HolomorphicAmbiguity { g, coeffs })
    }

    /// Fully supplied coefficients, for building synthetic data.
    pub fn from_values(g: u32, values: Vec<Rational>) -> Result<Self, BcovError> {
        check_genus(g)?;
        let expected = 3 * g as usize - 2;
        if values.len() != expected {
            return Err(BcovError::LengthMismatch { expected, got: values.len() });
        }
        let coeffs = values
            .into_iter()
            .enumerate()
            .map(|(index, v)| AmbiguityCoeff { index, status: CoeffStatus::Supplied, value: Some(v) })
            .collect();
        Ok(HolomorphicAmbiguity { g, coeffs })
    }

    pub fn value(&self, i: usize) -> Option<&Rational> {
        self.coeffs.get(i).and_then(|c| c.value.as_ref())
    }

    pub fn values(&self) -> Result<Vec<Rational>, BcovError> {
        self.coeffs.iter().map(|c| c.value.clone().ok_or(BcovError::Undetermined(c.index))).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.coeffs.iter().all(|c| c.value.is_some())
    }

    pub fn count(&self, status: CoeffStatus) -> usize {
        self.coeffs.iter().filter(|c| c.status == status).count()
    }

    pub fn supply(&mut self, i: usize, value: Rational) {
        self.coeffs[i].status = CoeffStatus::Supplied;
        self.coeffs[i].value = Some(value);
    }

    /// Records `a_g, ..., a_{3g-3}` from [`gap_solve`].
    pub fn apply_gap(&mut self, values: &[Rational]) -> Result<(), BcovError> {
        let idx = gap_indices(self.g);
        if values.len() != idx.clone().count() {
            return Err(BcovError::LengthMismatch { expected: idx.count(), got: values.len() });
        }
        for (i, v) in idx.zip(values) {
            self.coeffs[i].status = CoeffStatus::FixedGap;
            self.coeffs[i].value = Some(v.clone());
        }
        Ok(())
    }

    /// Records the Castelnuovo unknowns from [`castelnuovo_solve`].
    pub fn apply_castelnuovo(&mut self, sol: &CastelnuovoSolution) {
        for i in castelnuovo_indices(self.g) {
            self.coeffs[i].status = CoeffStatus::FixedCastelnuovo;
            self.coeffs[i].value = Some(sol.value(i).clone());
        }
    }
}

/// Conifold data: `delta(q)`, the flat coordinate `Delta(delta)` and the
/// propagator `Y(Delta) = 1/Delta + O(1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConifoldFrame {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_of_q: Option<LaurentSeries>,
    pub big_delta_of_delta: LaurentSeries,
    pub y_of_big_delta: LaurentSeries,
}

impl ConifoldFrame {
    /// `Delta = delta` and `Y = 1 + 1/Delta`. Not a physical frame; it only
    /// exercises the solver.
    pub fn toy(trunc: i64) -> Self {
        let delta = LaurentSeries::monomial(Var::SmallDelta, 1, Rational::one(), trunc.max(1));
        let y = LaurentSeries::from_terms(Var::BigDelta, -1, trunc, [(-1, Rational::one()), (0, Rational::one())]);
        ConifoldFrame { delta_of_q: Some(delta_of_q_default()), big_delta_of_delta: delta, y_of_big_delta: y }
    }

    /// Derives `Y = 1 + 1/delta(Delta)` by inverting `Delta(delta)`, which must
    /// be `delta + O(delta^2)`.
    pub fn from_flat_coordinate(big_delta_of_delta: LaurentSeries) -> Result<Self, BcovError> {
        if big_delta_of_delta.var() != Var::SmallDelta {
            return Err(BcovError::InvalidFrame("flat coordinate must be a series in delta".into()));
        }
        if big_delta_of_delta.valuation() != 1 || big_delta_of_delta.coeff(1) != Some(Rational::one()) {
            return Err(BcovError::InvalidFrame("flat coordinate must be delta + O(delta^2)".into()));
        }
        let delta = big_delta_of_delta.reversion()?.with_var(Var::BigDelta);
        let inv = delta.invert()?;
        let y = inv.add(&LaurentSeries::one(Var::BigDelta, inv.trunc()))?;
        Ok(ConifoldFrame { delta_of_q: Some(delta_of_q_default()), big_delta_of_delta, y_of_big_delta: y })
    }

    pub fn validate(&self) -> Result<(), BcovError> {
        let y = &self.y_of_big_delta;
        if y.var() != Var::BigDelta {
            return Err(BcovError::InvalidFrame("Y must be a series in Delta".into()));
        }
        if y.valuation() != -1 || y.coeff(-1) != Some(Rational::one()) {
            return Err(BcovError::InvalidFrame("Y must be 1/Delta + O(1)".into()));
        }
        Ok(())
    }
}

/// `delta = 1 - q / 5^5`.
pub fn delta_of_q_default() -> LaurentSeries {
    LaurentSeries::from_terms(Var::Q, 0, 1, [(0, Rational::one()), (1, -rational::ratio(1, CONIFOLD_Q))])
}

/// `Y = (1 - 5^5 q)^{-1}` near large radius, known to `q^trunc`.
pub fn large_radius_y(trunc: i64) -> LaurentSeries {
    let terms = (0..=trunc).map(|k| (k, rational::pow(&int(CONIFOLD_Q), k)));
    LaurentSeries::from_terms(Var::Q, 0, trunc, terms)
}

/// Prescribed leading singularity `(-1)^{g-1} B_{2g} / (2g (2g - 2))`.
pub fn gap_target(g: u32) -> Rational {
    let g = g as i64;
    rational::sign(g - 1) * bernoulli(2 * g as usize) / int(2 * g * (2 * g - 2))
}

/// Solves the gap condition for `a_g, ..., a_{3g-3}`: the principal part of
/// `sum_{i=1}^{2g-2} a_{i+g-1} Y^i + known` must equal
/// `gap_target(g) Delta^{-(2g-2)}`.
pub fn gap_solve(g: u32, known_terms: &LaurentSeries, frame: &ConifoldFrame) -> Result<Vec<Rational>, BcovError> {
    check_genus(g)?;
    frame.validate()?;
    if known_terms.var() != Var::BigDelta {
        return Err(BcovError::Series(SeriesError::VariableMismatch { left: known_terms.var(), right: Var::BigDelta }));
    }
    let n = 2 * g as i64 - 2;
    if known_terms.trunc() < -1 {
        return Err(BcovError::WindowTooSmall { what: "known terms", have: known_terms.trunc(), need: -1 });
    }
    if let Some((e, _)) = known_terms.terms().find(|(e, c)| *e < -n && !c.is_zero()) {
        return Err(BcovError::InconsistentPole(-e));
    }
    let y = &frame.y_of_big_delta;
    let need = n - 2;
    if y.trunc() < need {
        return Err(BcovError::WindowTooSmall { what: "propagator", have: y.trunc(), need });
    }
    // powers[i] = Y^i for i = 1..=n
    let mut powers = vec![LaurentSeries::one(Var::BigDelta, n)];
    for i in 1..=n as usize {
        let next = powers[i - 1].mul(y)?;
        powers.push(next);
    }
    let mut rhs: Vec<Rational> = (1..=n)
        .map(|j| {
            let target = if j == n { gap_target(g) } else { Rational::zero() };
            target - known_terms.coeff(-j).unwrap_or_default()
        })
        .collect();
    // rhs[j-1] is the equation at Delta^{-j}; unknown x_i multiplies Y^i.
    let mut x = vec![Rational::zero(); n as usize];
    for j in (1..=n).rev() {
        let pivot = powers[j as usize].coeff(-j).unwrap_or_default();
        if pivot.is_zero() {
            return Err(BcovError::Singular(j as usize));
        }
        let xj = &rhs[j as usize - 1] / &pivot;
        for k in 1..j {
            let c = powers[j as usize].coeff(-k).unwrap_or_default();
            rhs[k as usize - 1] -= &c * &xj;
        }
        x[j as usize - 1] = xj;
    }
    Ok(x)
}

/// Solves `sum_k x_k (1 - 5^5 q)^k = known` on `q^0, ..., q^count-1` for
/// `x_0, ..., x_{count-1}`.
pub fn solve_binomial_basis(known: &LaurentSeries, count: usize) -> Result<Vec<Rational>, BcovError> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let top = count as i64 - 1;
    if known.trunc() < top {
        return Err(BcovError::WindowTooSmall { what: "known polynomial", have: known.trunc(), need: top });
    }
    let c = int(-CONIFOLD_Q);
    let entry = |j: i64, k: i64| Rational::from(rational::binomial(k, j)) * rational::pow(&c, j);
    let mut x = vec![Rational::zero(); count];
    for j in (0..=top).rev() {
        let mut acc = known.coeff(j).unwrap_or_default();
        for k in j + 1..=top {
            acc -= entry(j, k) * &x[k as usize];
        }
        x[j as usize] = acc / entry(j, j);
    }
    Ok(x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CastelnuovoSolution {
    pub g: u32,
    /// Highest degree whose data was used.
    pub e: u32,
    /// `a_{g-1-k}` for `k = 0, ..., floor(2(g-1)/5)`.
    #[serde(with = "rational::serde_vec")]
    pub values: Vec<Rational>,
    /// Whether the coefficient at the regularity boundary came out as zero.
    pub regular: bool,
}

impl CastelnuovoSolution {
    /// The solved `a_i`.
    pub fn value(&self, i: usize) -> &Rational {
        &self.values[self.g as usize - 1 - i]
    }
}

/// Fixes `a_{g-1-k}`, `k = 0, ..., floor(2(g-1)/5)`, from the expansion
/// `sum_k a_{g-1-k} (1 - 5^5 q)^k` known up to `q^dg`.
pub fn castelnuovo_solve(g: u32, known_poly_q: &LaurentSeries, dg: u32) -> Result<CastelnuovoSolution, BcovError> {
    check_genus(g)?;
    let m = castelnuovo_count(g);
    let e = dg.min(m);
    if e < m {
        return Err(BcovError::Unresolved { g, e, unknowns: m - e });
    }
    let values = solve_binomial_basis(known_poly_q, m as usize + 1)?;
    let regular = values[m as usize].is_zero();
    Ok(CastelnuovoSolution { g, e, values, regular })
}

/// `f_g = sum_i a_i Y^i` on the window of `Y`.
pub fn assemble_fg(amb: &HolomorphicAmbiguity, y: &LaurentSeries) -> Result<LaurentSeries, BcovError> {
    let values = amb.values()?;
    let deg = values.len() as i64 - 1;
    let v = y.valuation();
    let hi = if v < 0 { y.trunc() + (deg - 1) * v } else { y.trunc() };
    let lo = (v * deg).min(0);
    let mut acc = LaurentSeries::zero(y.var(), lo, hi);
    let mut power = LaurentSeries::one(y.var(), y.trunc() - v);
    for (i, a) in values.iter().enumerate() {
        if i > 0 {
            power = power.mul(y)?;
        }
        if !a.is_zero() {
            acc = acc.add(&power.scale(a))?;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum PlanStatus {
    Closes,
    ClosesWithExtremal,
    Fails { first_failure: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalInput {
    pub g: u32,
    pub d: u32,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusStep {
    pub g: u32,
    pub vanishing_degree: u32,
    pub castelnuovo_unknowns: u32,
    pub closes_alone: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extremal: Option<ExtremalInput>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionPlan {
    pub g: u32,
    pub ambiguity_size: usize,
    pub regularity: Vec<usize>,
    pub castelnuovo: Vec<usize>,
    pub gap: Vec<usize>,
    pub vanishing_degree: u32,
    pub unresolved_without_extremal: u32,
    pub status: PlanStatus,
    pub steps: Vec<GenusStep>,
}

fn genus_step(h: u32) -> GenusStep {
    let m = castelnuovo_count(h);
    let dv = max_vanishing_degree(h);
    let closes = dv >= m;
    let extremal = (!closes && dv + 1 == m && m.is_multiple_of(5) && castelnuovo_threshold(m) == int(h as i64))
        .then(|| bounds::extremal_gv(m / 5).ok())
        .flatten()
        .map(|v| ExtremalInput { g: h, d: m, value: v.to_string() });
    GenusStep { g: h, vanishing_degree: dv, castelnuovo_unknowns: m, closes_alone: closes, extremal }
}

/// Which coefficients each condition fixes at genus `g`, and whether the
/// induction through genera `2, ..., g` closes.
pub fn resolution_plan(g: u32) -> Result<ResolutionPlan, BcovError> {
    check_genus(g)?;
    let steps: Vec<GenusStep> = (2..=g).map(genus_step).collect();
    let status = match steps.iter().find(|s| !s.closes_alone && s.extremal.is_none()) {
        Some(s) => PlanStatus::Fails { first_failure: s.g },
        None if steps.iter().any(|s| s.extremal.is_some()) => PlanStatus::ClosesWithExtremal,
        None => PlanStatus::Closes,
    };
    let last = steps.last().expect("g >= 2");
    Ok(ResolutionPlan {
        g,
        ambiguity_size: 3 * g as usize - 2,
        regularity: regularity_indices(g).collect(),
        castelnuovo: castelnuovo_indices(g).collect(),
        gap: gap_indices(g).collect(),
        vanishing_degree: last.vanishing_degree,
        unresolved_without_extremal: last.castelnuovo_unknowns.saturating_sub(last.vanishing_degree),
        status,
        steps,
    })
}
