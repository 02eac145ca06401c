//! Exact curve-counting invariants of the quintic threefold.
//!
//! The crate is organised bottom-up:
//!
//! * [`rational`] and [`series`]: exact rationals and truncated Laurent series
//!   with honest truncation windows, plus bivariate `(q, t)` series.
//! * [`bernoulli`]: memoised Bernoulli numbers.
//! * [`tables`] and [`transforms`]: Gopakumar–Vafa, Gromov–Witten and
//!   stable-pair tables and the exact maps between them.
//! * [`bounds`]: Castelnuovo-type genus bounds and the vanishing threshold.
//! * [`walls`]: numerical tilt-stability walls and the destabiliser search.
//! * [`bcov`]: holomorphic-ambiguity bookkeeping and the triangular solves
//!   that fix it.
//! * [`svg`]: deterministic SVG rendering of wall diagrams.

pub mod bcov;
pub mod bernoulli;
pub mod bounds;
pub mod rational;
pub mod series;
pub mod svg;
pub mod tables;
pub mod transforms;
pub mod walls;

pub use rational::Rational;
pub use series::{BivariateSeries, LaurentSeries, SeriesError, Var};
