//! Numerical walls for tilt stability on threefolds with Picard rank one.
//!
//! Chern characters are normalised by the polarisation: a [`ChernCharacter`]
//! stores `(H^3 ch_0, H^2 ch_1, H ch_2, ch_3) / H^3`. All wall geometry is
//! exact; radii are carried squared and square roots are only compared after
//! squaring.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::bounds::{ProfileKind, ThreefoldProfile};
use crate::rational::{self, int, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WallError {
    #[error("tilt slope needs a > 0")]
    NonPositiveA,
    #[error("b must be negative")]
    NonNegativeB,
    #[error("(a, b) = ({a}, {b}) is outside the admissible quintic domain")]
    NotAdmissible { a: Box<Rational>, b: Box<Rational> },
    #[error("b = {0} lies outside [b_d, 0)")]
    OutsideStrip(Box<Rational>),
    #[error("Chern characters live on different threefolds")]
    ProfileMismatch,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChernCharacter {
    pub profile: ThreefoldProfile,
    #[serde(serialize_with = "ser_ch")]
    pub c: [Rational; 4],
}

fn ser_ch<S: serde::Serializer>(c: &[Rational; 4], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(|x| x.to_string()))
}

impl ChernCharacter {
    pub fn new(profile: ThreefoldProfile, c: [Rational; 4]) -> Self {
        ChernCharacter { profile, c }
    }

    /// Ideal sheaf of a curve of degree `d` and arithmetic genus `g`:
    /// `(1, 0, -d/n, (g - 1 + i d / 2) / n)`.
    pub fn ideal_sheaf(profile: ThreefoldProfile, d: u32, g: i64) -> Self {
        let n = profile.n();
        let dq = int(d as i64);
        let c3 = (int(g) - int(1) + profile.i() * &dq / int(2)) / &n;
        ChernCharacter::new(profile, [int(1), int(0), -dq / n, c3])
    }

    /// `O(k)`: `(1, k, k^2/2, k^3/6)`.
    pub fn line_bundle(profile: ThreefoldProfile, k: &Rational) -> Self {
        let c = [int(1), k.clone(), k * k / int(2), k * k * k / int(6)];
        ChernCharacter::new(profile, c)
    }

    /// `ch^b = e^(-bH) ch`.
    pub fn twist(&self, b: &Rational) -> [Rational; 4] {
        let [c0, c1, c2, c3] = &self.c;
        let b2 = b * b;
        let b3 = &b2 * b;
        [c0.clone(), c1 - b * c0, c2 - b * c1 + &b2 * c0 / int(2), c3 - b * c2 + &b2 * c1 / int(2) - b3 * c0 / int(6)]
    }

    /// `Delta_H = c1^2 - 2 c0 c2`.
    pub fn discriminant(&self) -> Rational {
        let [c0, c1, c2, _] = &self.c;
        c1 * c1 - int(2) * c0 * c2
    }

    pub fn sub(&self, other: &Self) -> Result<Self, WallError> {
        if self.profile != other.profile {
            return Err(WallError::ProfileMismatch);
        }
        let c = std::array::from_fn(|i| &self.c[i] - &other.c[i]);
        Ok(ChernCharacter::new(self.profile, c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slope {
    Finite(Rational),
    Infinite,
}

/// `mu_{a,b} = (ch_2^b - a^2 ch_0 / 2) / ch_1^b`, or `+inf` when `ch_1^b = 0`.
pub fn slope_tilt(ch: &ChernCharacter, a: &Rational, b: &Rational) -> Result<Slope, WallError> {
    if !a.is_positive() {
        return Err(WallError::NonPositiveA);
    }
    let t = ch.twist(b);
    if !t[1].is_positive() {
        return Ok(Slope::Infinite);
    }
    Ok(Slope::Finite((&t[2] - a * a * &t[0] / int(2)) / &t[1]))
}

/// `Q_{a,b} = a^2 Delta + 4 (ch_2^b)^2 - 6 ch_1^b ch_3^b`.
pub fn bg_quadratic(ch: &ChernCharacter, a: &Rational, b: &Rational) -> Rational {
    let t = ch.twist(b);
    a * a * ch.discriminant() + int(4) * &t[2] * &t[2] - int(6) * &t[1] * &t[3]
}

/// `a^2 >= (b - floor b)(floor b + 1 - b)`.
pub fn quintic_domain_check(a: &Rational, b: &Rational) -> bool {
    let fl = b.floor();
    a * a >= (b - &fl) * (fl + int(1) - b)
}

/// Largest genus allowed by `Q_{a,b}(I_C) >= 0` for a curve of degree `d`.
pub fn genus_bound_from_q(
    profile: ThreefoldProfile,
    d: u32,
    a: &Rational,
    b: &Rational,
) -> Result<Rational, WallError> {
    if !b.is_negative() {
        return Err(WallError::NonNegativeB);
    }
    if profile.kind == ProfileKind::Quintic && !quintic_domain_check(a, b) {
        return Err(WallError::NotAdmissible { a: Box::new(a.clone()), b: Box::new(b.clone()) });
    }
    let mut ch = ChernCharacter::ideal_sheaf(profile, d, 0);
    ch.c[3] = int(0);
    let q0 = bg_quadratic(&ch, a, b);
    ch.c[3] = int(1);
    let slope = bg_quadratic(&ch, a, b) - &q0;
    let c3 = -q0 / slope;
    Ok(profile.n() * c3 + int(1) - profile.i() * int(d as i64) / int(2))
}

/// Exact value `rational + coeff * sqrt(radicand)` with `radicand >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticSurd {
    #[serde(with = "rational::serde_str")]
    pub rational: Rational,
    #[serde(with = "rational::serde_str")]
    pub coeff: Rational,
    #[serde(with = "rational::serde_str")]
    pub radicand: Rational,
}

impl QuadraticSurd {
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        let x = r - &self.rational;
        let b = &self.coeff;
        if b.is_zero() || self.radicand.is_zero() {
            return Rational::zero().cmp(&x);
        }
        let lhs_sq = b * b * &self.radicand;
        let x_sq = &x * &x;
        if b.is_positive() {
            if !x.is_positive() {
                Ordering::Greater
            } else {
                lhs_sq.cmp(&x_sq)
            }
        } else if !x.is_negative() {
            Ordering::Less
        } else {
            x_sq.cmp(&lhs_sq)
        }
    }

    pub fn to_f64(&self) -> f64 {
        rational::to_f64(&self.rational) + rational::to_f64(&self.coeff) * rational::to_f64(&self.radicand).sqrt()
    }
}

/// The genus bound from `Q_{0,b_d}(I_C) >= 0` at `b_d = -sqrt(d/n)`, which is
/// `1 - i d / 2 + d sqrt(d/n)`.
pub fn genus_bound_at_bd(profile: ThreefoldProfile, d: u32) -> QuadraticSurd {
    let dq = int(d as i64);
    QuadraticSurd { rational: int(1) - profile.i() * &dq / int(2), radicand: &dq / profile.n(), coeff: dq }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WallLocus {
    Vertical {
        #[serde(with = "rational::serde_str")]
        b: Rational,
    },
    /// `a^2 + (b - center)^2 = radius_sq` in the half-plane `a > 0`.
    Semicircle {
        #[serde(with = "rational::serde_str")]
        center: Rational,
        #[serde(with = "rational::serde_str")]
        radius_sq: Rational,
    },
    Empty,
    Everywhere,
}

fn semicircle(center: Rational, radius_sq: Rational) -> WallLocus {
    if radius_sq.is_positive() {
        WallLocus::Semicircle { center, radius_sq }
    } else {
        WallLocus::Empty
    }
}

/// Locus where `mu_{a,b}(v) = mu_{a,b}(w)`.
pub fn numerical_wall(v: &ChernCharacter, w: &ChernCharacter) -> Result<WallLocus, WallError> {
    if v.profile != w.profile {
        return Err(WallError::ProfileMismatch);
    }
    let [v0, v1, v2, _] = &v.c;
    let [w0, w1, w2, _] = &w.c;
    let det = v0 * w1 - w0 * v1;
    let lin = w2 * v0 - v2 * w0;
    let constant = v2 * w1 - w2 * v1;
    if det.is_zero() {
        return Ok(if !lin.is_zero() {
            WallLocus::Vertical { b: -constant / lin }
        } else if constant.is_zero() {
            WallLocus::Everywhere
        } else {
            WallLocus::Empty
        });
    }
    let center = lin / &det;
    let radius_sq = &center * &center + int(2) * constant / det;
    Ok(semicircle(center, radius_sq))
}

/// Wall of `I_C` (degree `d` on a threefold of degree `n`) induced by
/// `I_{C_1}(-k) -> I_C` with `deg C_1 = d1`.
pub fn ideal_wall_circle(n: u32, d: u32, k: u32, d1: u32) -> WallLocus {
    let (nq, dq, kq) = (int(n as i64), int(d as i64), int(k as i64));
    let s = (&dq - int(d1 as i64)) / (&kq * &nq) + kq / int(2);
    let radius_sq = &s * &s - int(2) * dq / nq;
    semicircle(-s, radius_sq)
}

/// `x < 2 sqrt(p q)` for `p, q >= 0`.
fn lt_twice_root(x: &Rational, p: &Rational, q: &Rational) -> bool {
    x.is_negative() || x * x < int(4) * p * q
}

/// Whether two walls avoid crossing in the upper half-plane.
pub fn nested_or_disjoint(w1: &WallLocus, w2: &WallLocus) -> bool {
    match (w1, w2) {
        (WallLocus::Semicircle { center: c1, radius_sq: r1 }, WallLocus::Semicircle { center: c2, radius_sq: r2 }) => {
            let dist = (c1 - c2) * (c1 - c2);
            let within_sum = lt_twice_root(&(&dist - r1 - r2), r1, r2);
            let beyond_diff = lt_twice_root(&(r1 + r2 - &dist), r1, r2);
            !(within_sum && beyond_diff)
        }
        _ => true,
    }
}

/// Whether the top of a semicircular wall lies on `mu_{a,b}(v) = 0`.
pub fn apex_on_hyperbola(v: &ChernCharacter, wall: &WallLocus) -> bool {
    match wall {
        WallLocus::Semicircle { center, radius_sq } => {
            let [v0, v1, v2, _] = &v.c;
            (v2 - center * v1 + (center * center - radius_sq) * v0 / int(2)).is_zero()
        }
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DestabilizerCandidate {
    pub k: u32,
    pub d1: u32,
    pub wall: WallLocus,
}

impl DestabilizerCandidate {
    pub fn center_and_radius_sq(&self) -> Option<(&Rational, &Rational)> {
        match &self.wall {
            WallLocus::Semicircle { center, radius_sq } => Some((center, radius_sq)),
            _ => None,
        }
    }
}

/// `b >= b_d = -sqrt(d/n)` and `b < 0`.
pub fn in_strip(n: u32, d: u32, b: &Rational) -> bool {
    b.is_negative() && b * b <= ratio(d as i64, n as i64)
}

/// Candidate destabilising subobjects `I_{C_1}(-k)` of `I_C` at `b` in
/// `[b_d, 0)`: `1 <= k <= -ceil(b)` and
/// `1 <= d1 < min(d - k^2 n / 2, d + k^2 n / 2 - k sqrt(2 n d))`.
pub fn enumerate_destabilizers(n: u32, d: u32, b: &Rational) -> Result<Vec<DestabilizerCandidate>, WallError> {
    if n == 0 || d == 0 {
        return Err(WallError::OutOfRange("n and d must be positive".into()));
    }
    if !in_strip(n, d, b) {
        return Err(WallError::OutsideStrip(Box::new(b.clone())));
    }
    let (nq, dq) = (int(n as i64), int(d as i64));
    let k_max = -rational::ceil_i64(b);
    let mut out = Vec::new();
    for k in 1..=k_max.max(0) as u32 {
        let kq = int(k as i64);
        let half = &kq * &kq * &nq / int(2);
        for d1 in 1..d {
            let d1q = int(d1 as i64);
            if d1q >= &dq - &half {
                break;
            }
            let x = &dq + &half - &d1q;
            if !x.is_positive() || &x * &x <= int(2) * &nq * &dq * &kq * &kq {
                break;
            }
            out.push(DestabilizerCandidate { k, d1, wall: ideal_wall_circle(n, d, k, d1) });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscriminantSplit {
    #[serde(with = "rational::serde_str")]
    pub sub: Rational,
    #[serde(with = "rational::serde_str")]
    pub quotient: Rational,
    #[serde(with = "rational::serde_str")]
    pub total: Rational,
}

impl DiscriminantSplit {
    pub fn holds(&self) -> bool {
        &self.sub + &self.quotient <= self.total
    }
}

/// Discriminants of `A = I_{C_1}(-k)`, the quotient `I_C / A` and `I_C`.
pub fn discriminant_split(profile: ThreefoldProfile, d: u32, k: u32, d1: u32) -> DiscriminantSplit {
    let n = profile.n();
    let kq = int(k as i64);
    let a = ChernCharacter::new(profile, [int(1), -kq.clone(), &kq * &kq / int(2) - int(d1 as i64) / &n, int(0)]);
    let total = ChernCharacter::ideal_sheaf(profile, d, 0);
    let quotient = total.sub(&a).expect("same profile");
    DiscriminantSplit { sub: a.discriminant(), quotient: quotient.discriminant(), total: total.discriminant() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankBound {
    pub meets_strip: bool,
    /// Largest rank a destabilising subobject may have along this wall.
    pub max_rank: Option<u32>,
    /// Whether the radius exceeds `rho_d = sqrt(d / 4n)`.
    pub radius_exceeds_rho_d: bool,
}

/// Rank bound for a semicircular wall of an ideal sheaf meeting the strip
/// `b_d <= b < 0`.
pub fn rank_bound_check(n: u32, d: u32, wall: &WallLocus) -> Result<RankBound, WallError> {
    let WallLocus::Semicircle { center, radius_sq } = wall else {
        return Err(WallError::OutOfRange("rank bound needs a semicircular wall".into()));
    };
    let beta_sq = ratio(d as i64, n as i64);
    let left_of_zero = center.is_negative() || center * center < *radius_sq;
    let reaches_bd =
        !center.is_negative() || lt_twice_root(&(center * center - radius_sq - &beta_sq), radius_sq, &beta_sq);
    let meets = left_of_zero && reaches_bd;
    let exceeds = *radius_sq > ratio(d as i64, 4 * n as i64);
    Ok(RankBound { meets_strip: meets, max_rank: meets.then_some(1), radius_exceeds_rho_d: exceeds })
}

/// Rank bound for destabilisers of a torsion sheaf supported on a divisor in
/// `|O(m)|` carrying a curve of degree `d`.
pub fn rank_bound_torsion(n: u32, d: u32, m: u32, b: &Rational) -> Option<u32> {
    let edge = -ratio(d as i64, (n * m) as i64);
    if *b >= edge {
        Some(0)
    } else if *b >= edge - ratio(m as i64, 4) {
        Some(1)
    } else {
        None
    }
}

/// Genus of `C` from the pieces of a destabilising sequence.
pub fn genus_decomposition(g1: i64, g2: i64, k: i64, d1: i64) -> i64 {
    g1 + g2 + k * d1 - 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalWallReport {
    pub n: u32,
    pub d: u32,
    #[serde(with = "rational::serde_str")]
    pub tangent_center: Rational,
    #[serde(with = "rational::serde_str")]
    pub tangent_radius_sq: Rational,
    /// `(x, y)` with `ch_{<=2}(A) = (1, x, y)` solving the wall constraints.
    #[serde(serialize_with = "ser_pairs")]
    pub rank_one_solution: Option<(Rational, Rational)>,
    /// Integral `x` solving the constraints, found by enumeration.
    pub integral_solutions: Vec<i64>,
    /// Upper bound on `ch_3(A)` from `Q(A) >= 0`, equal to `ch_3(O(-d/n))`.
    #[serde(serialize_with = "ser_opt")]
    pub ch3_bound: Option<Rational>,
    #[serde(with = "rational::serde_str")]
    pub extremal_genus: Rational,
    pub complete_intersection: bool,
}

fn ser_pairs<S: serde::Serializer>(p: &Option<(Rational, Rational)>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        Some((x, y)) => s.collect_seq([x.to_string(), y.to_string()]),
        None => s.serialize_none(),
    }
}

fn ser_opt<S: serde::Serializer>(p: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// Whether `ch_{<=2}(A) = (1, x, y)` satisfies the four constraints of a
/// destabilising sequence `A -> I_{C/D} -> B` on the tangent wall.
fn extremal_constraints(n: &Rational, d: &Rational, x: &Rational) -> Option<Rational> {
    let s = d / n + n / int(2);
    let y = -(&s * x + d * d / (int(2) * n * n) + d / int(2));
    let disc_a = x * x - int(2) * &y;
    let disc_b = (n - x) * (n - x) - int(2) * (d + n * n / int(2) + &y);
    let im = x + &s;
    let ok = !disc_a.is_negative() && !disc_b.is_negative() && im.is_positive() && im < *n;
    ok.then_some(y)
}

/// Analysis of the wall tangent to `b = -d/n` for a curve of degree `d` on
/// an integral surface of degree `n <= 5` in `P^3`.
pub fn extremal_wall_analysis(n: u32, d: u32) -> Result<ExtremalWallReport, WallError> {
    if !(1..=5).contains(&n) || d == 0 {
        return Err(WallError::OutOfRange(format!("need 1 <= n <= 5 and d >= 1, got n = {n}, d = {d}")));
    }
    let (nq, dq) = (int(n as i64), int(d as i64));
    let center = -(&dq / &nq) - &nq / int(2);
    let radius_sq = &nq * &nq / int(4);
    let x0 = -(&dq / &nq);
    let rank_one_solution = extremal_constraints(&nq, &dq, &x0).map(|y| (x0.clone(), y));
    let lo = rational::floor_i64(&(&x0 - &nq));
    let hi = rational::ceil_i64(&(&x0 + &nq));
    let integral_solutions: Vec<i64> =
        (lo..=hi).filter(|&x| extremal_constraints(&nq, &dq, &int(x)).is_some()).collect();
    let p3 = ThreefoldProfile::projective_space();
    let ch3_bound = rank_one_solution.as_ref().map(|(x, y)| {
        let a = &nq / int(2);
        let b = center.clone();
        let mut ch = ChernCharacter::new(p3, [int(1), x.clone(), y.clone(), int(0)]);
        let q0 = bg_quadratic(&ch, &a, &b);
        ch.c[3] = int(1);
        let slope = bg_quadratic(&ch, &a, &b) - &q0;
        -q0 / slope
    });
    let extremal_genus = &dq * &dq / (int(2) * &nq) + (&nq - int(4)) * &dq / int(2) + int(1);
    Ok(ExtremalWallReport {
        n,
        d,
        tangent_center: center,
        tangent_radius_sq: radius_sq,
        complete_intersection: !integral_solutions.is_empty(),
        rank_one_solution,
        integral_solutions,
        ch3_bound,
        extremal_genus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn quintic() -> ThreefoldProfile {
        ThreefoldProfile::quintic()
    }

    #[test]
    fn slope_of_ideal_sheaf() {
        let ch = ChernCharacter::ideal_sheaf(quintic(), 5, 0);
        assert_eq!(slope_tilt(&ch, &int(1), &int(-1)).unwrap(), Slope::Finite(int(-1)));
        assert_eq!(slope_tilt(&ch, &int(1), &int(0)).unwrap(), Slope::Infinite);
        assert_eq!(slope_tilt(&ch, &int(0), &int(-1)), Err(WallError::NonPositiveA));
    }

    #[test]
    fn structure_sheaf_quadratic_vanishes() {
        let o = ChernCharacter::line_bundle(quintic(), &int(0));
        for b in [-3, -1, 2] {
            assert_eq!(bg_quadratic(&o, &ratio(1, 3), &int(b)), ratio(0, 1) + ratio(1, 9) * o.discriminant());
        }
        assert_eq!(ChernCharacter::ideal_sheaf(quintic(), 20, 0).discriminant(), int(8));
    }

    #[test]
    fn twisted_ideal_sheaf() {
        for d in [1u32, 5, 20] {
            let t = ChernCharacter::ideal_sheaf(quintic(), d, 3).twist(&int(-1));
            assert_eq!(t[1], int(1));
            assert_eq!(t[2], ratio(1, 2) - ratio(d as i64, 5));
        }
    }

    #[test]
    fn small_degree_bound_matches_closed_forms() {
        for d in 1..=30u32 {
            let dq = int(d as i64);
            let at_one = genus_bound_from_q(quintic(), d, &int(0), &int(-1)).unwrap();
            assert_eq!(at_one, ratio(2, 15) * &dq * &dq + &dq / int(3) + int(1));
            let at_two = genus_bound_from_q(quintic(), d, &int(0), &int(-2)).unwrap();
            assert_eq!(at_two, &dq * &dq / int(15) + int(2) * &dq / int(3) + int(1));
        }
        assert_eq!(genus_bound_from_q(quintic(), 5, &int(0), &int(-1)).unwrap(), int(6));
    }

    #[test]
    fn no_destabilisers_for_small_degree() {
        assert!(enumerate_destabilizers(5, 4, &ratio(-1, 2)).unwrap().is_empty());
    }

    #[test]
    fn quintic_domain() {
        assert!(quintic_domain_check(&ratio(1, 2), &ratio(-3, 2)));
        assert!(!quintic_domain_check(&ratio(1, 4), &ratio(-3, 2)));
        assert!(quintic_domain_check(&int(0), &int(-2)));
    }

    #[test]
    fn genus_bounds_from_quadratic() {
        assert_eq!(genus_bound_from_q(quintic(), 20, &int(0), &int(-2)).unwrap(), int(41));
        assert_eq!(genus_bound_from_q(quintic(), 5, &int(0), &int(-2)).unwrap(), ratio(25, 15) + ratio(10, 3) + int(1));
        assert!(genus_bound_from_q(quintic(), 5, &int(0), &int(0)).is_err());
        assert!(genus_bound_from_q(quintic(), 5, &int(0), &ratio(-3, 2)).is_err());
    }

    #[test]
    fn surd_bound_at_perfect_square() {
        let s = genus_bound_at_bd(quintic(), 20);
        let rational = genus_bound_from_q(quintic(), 20, &int(0), &int(-2)).unwrap();
        assert_eq!(s.cmp_rational(&rational), Ordering::Equal);
        assert_eq!(s.cmp_rational(&(rational.clone() + ratio(1, 1000))), Ordering::Less);
    }

    #[test]
    fn ideal_walls() {
        assert_eq!(
            ideal_wall_circle(5, 20, 1, 5),
            WallLocus::Semicircle { center: ratio(-7, 2), radius_sq: ratio(17, 4) }
        );
        assert_eq!(ideal_wall_circle(5, 20, 1, 18), WallLocus::Empty);
        let v = ChernCharacter::ideal_sheaf(quintic(), 20, 0);
        let w = ChernCharacter::new(quintic(), [int(1), int(-1), ratio(1, 2) - int(1), int(0)]);
        assert_eq!(numerical_wall(&v, &w).unwrap(), ideal_wall_circle(5, 20, 1, 5));
    }

    #[test]
    fn proportional_classes_wall_everywhere() {
        let v = ChernCharacter::new(quintic(), [int(1), int(0), int(-4), int(0)]);
        let w = ChernCharacter::new(quintic(), [int(2), int(0), int(-8), ratio(1, 7)]);
        assert_eq!(numerical_wall(&v, &w).unwrap(), WallLocus::Everywhere);
    }

    #[test]
    fn destabilisers_at_twenty() {
        let c = enumerate_destabilizers(5, 20, &int(-2)).unwrap();
        let pairs: Vec<_> = c.iter().map(|c| (c.k, c.d1)).collect();
        let mut expect: Vec<_> = (1..=8).map(|d1| (1, d1)).collect();
        expect.push((2, 1));
        assert_eq!(pairs, expect);
        assert!(enumerate_destabilizers(5, 20, &int(-3)).is_err());
    }

    #[test]
    fn torsion_rank() {
        assert_eq!(rank_bound_torsion(5, 20, 1, &int(-4)), Some(0));
        assert_eq!(rank_bound_torsion(5, 20, 1, &ratio(-17, 4)), Some(1));
        assert_eq!(rank_bound_torsion(5, 20, 1, &int(-5)), None);
    }

    #[test]
    fn rank_bound_on_wall() {
        let w = ideal_wall_circle(5, 20, 1, 5);
        let r = rank_bound_check(5, 20, &w).unwrap();
        assert!(r.meets_strip && r.radius_exceeds_rho_d);
        assert_eq!(r.max_rank, Some(1));
    }

    #[test]
    fn genus_decomposition_formula() {
        assert_eq!(genus_decomposition(3, 4, 2, 5), 16);
    }

    #[test]
    fn extremal_walls() {
        let r = extremal_wall_analysis(5, 20).unwrap();
        assert_eq!(r.tangent_center, ratio(-13, 2));
        assert_eq!(r.tangent_radius_sq, ratio(25, 4));
        assert_eq!(r.rank_one_solution, Some((int(-4), int(8))));
        assert_eq!(r.integral_solutions, vec![-4]);
        assert_eq!(r.ch3_bound, Some(ratio(-64, 6)));
        assert_eq!(r.extremal_genus, int(51));
        let r = extremal_wall_analysis(1, 2).unwrap();
        assert_eq!(r.extremal_genus, int(0));
        let r = extremal_wall_analysis(5, 19).unwrap();
        assert_eq!(r.rank_one_solution.as_ref().map(|p| p.0.clone()), Some(ratio(-19, 5)));
        assert!(!rational::is_integer(&r.extremal_genus));
        let r = extremal_wall_analysis(5, 21).unwrap();
        assert!(r.integral_solutions.is_empty() && !r.complete_intersection);
    }

    #[test]
    fn tangent_wall_is_numerical_wall() {
        let p3 = ThreefoldProfile::projective_space();
        for (n, m) in [(1u32, 2i64), (3, 2), (5, 4)] {
            let d = n as i64 * m;
            let torsion = ChernCharacter::new(p3, [int(0), int(n as i64), int(-d) - ratio((n * n) as i64, 2), int(0)]);
            let sub = ChernCharacter::line_bundle(p3, &int(-m));
            let r = extremal_wall_analysis(n, d as u32).unwrap();
            assert_eq!(
                numerical_wall(&torsion, &sub).unwrap(),
                WallLocus::Semicircle { center: r.tangent_center, radius_sq: r.tangent_radius_sq }
            );
        }
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-30i64..30, 1i64..7).prop_map(|(p, q)| ratio(p, q))
    }

    fn arb_ch() -> impl Strategy<Value = ChernCharacter> {
        proptest::array::uniform4(arb_rational()).prop_map(|c| ChernCharacter::new(quintic(), c))
    }

    proptest! {
        #[test]
        fn twist_preserves_discriminant(v in arb_ch(), b in arb_rational()) {
            let t = ChernCharacter::new(quintic(), v.twist(&b));
            prop_assert_eq!(t.discriminant(), v.discriminant());
            prop_assert_eq!(ChernCharacter::new(quintic(), t.twist(&-b)), v);
        }

        #[test]
        fn walls_of_ideal_sheaf_never_cross(d in 1u32..60, b_num in 1i64..40) {
            let b = -ratio(b_num, 10);
            prop_assume!(in_strip(5, d, &b));
            let c = enumerate_destabilizers(5, d, &b).unwrap();
            let v = ChernCharacter::ideal_sheaf(quintic(), d, 0);
            for x in &c {
                prop_assert!(apex_on_hyperbola(&v, &x.wall));
                prop_assert!(discriminant_split(quintic(), d, x.k, x.d1).holds());
                let rb = rank_bound_check(5, d, &x.wall).unwrap();
                if rb.meets_strip {
                    prop_assert!(rb.radius_exceeds_rho_d);
                }
                for y in &c {
                    prop_assert!(nested_or_disjoint(&x.wall, &y.wall));
                }
            }
        }

        #[test]
        fn numerical_walls_share_apex_hyperbola(v in arb_ch(), w in arb_ch()) {
            if let WallLocus::Semicircle { .. } = numerical_wall(&v, &w).unwrap() {
                let wall = numerical_wall(&v, &w).unwrap();
                prop_assert!(apex_on_hyperbola(&v, &wall));
                prop_assert!(apex_on_hyperbola(&w, &wall));
            }
        }

        #[test]
        fn walls_for_fixed_class_do_not_cross(v in arb_ch(), w1 in arb_ch(), w2 in arb_ch()) {
            prop_assume!(!v.discriminant().is_negative());
            let a = numerical_wall(&v, &w1).unwrap();
            let b = numerical_wall(&v, &w2).unwrap();
            prop_assert!(nested_or_disjoint(&a, &b));
        }

        #[test]
        fn vertical_wall_at_slope(v in arb_ch(), t in arb_rational(), e in arb_rational()) {
            prop_assume!(!v.c[0].is_zero());
            let w = ChernCharacter::new(quintic(), [v.c[0].clone() * &t, v.c[1].clone() * &t, v.c[2].clone() * &t + &e, int(0)]);
            prop_assume!(!t.is_zero() && !e.is_zero());
            prop_assert_eq!(numerical_wall(&v, &w).unwrap(), WallLocus::Vertical { b: &v.c[1] / &v.c[0] });
        }

        #[test]
        fn slope_equality_on_wall(v in arb_ch(), w in arb_ch(), t in 1i64..99) {
            if let WallLocus::Semicircle { center, radius_sq } = numerical_wall(&v, &w).unwrap() {
                let off = ratio(t, 100);
                prop_assume!(&off * &off < radius_sq);
                let a_sq = &radius_sq - &off * &off;
                let b = &center + &off;
                let tv = v.twist(&b);
                let tw = w.twist(&b);
                let lhs = (&tv[2] - &a_sq * &tv[0] / int(2)) * &tw[1];
                let rhs = (&tw[2] - &a_sq * &tw[0] / int(2)) * &tv[1];
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn ideal_sheaf_bound_case_two(d in 1u32..=80) {
            let s = genus_bound_at_bd(quintic(), d);
            let dq = int(d as i64);
            let target = &dq * &dq / int(10) + &dq / int(2) + int(1);
            prop_assert!(s.cmp_rational(&target) != Ordering::Greater);
        }

        #[test]
        fn genus_split_estimate(n in 1u32..=5, d1 in 1u32..40, d2 in 1u32..40) {
            prop_assume!(d2 > n && d1 + d2 <= 40);
            let g = |d: u32| crate::bounds::genus_bound_general(n, 0, d).unwrap().bound;
            let nq = int(n as i64);
            let lhs = g(d1 + d2) + int(d1 as i64) * (int(1) - int(d2 as i64) / nq);
            let rhs = g(d1) + g(d2) + int(d1 as i64) - int(1);
            prop_assert!(lhs >= rhs);
        }
    }
}
