//! Exact computation of Witt-rank lower bounds for hermitian forms over the
//! rational function field `Q(t)` with the involution `t -> 1/t`.
//!
//! The crate works entirely in exact rational arithmetic. Symmetric Laurent
//! polynomials are handled through the change of coordinates `x = t + 1/t`,
//! under which sign questions on the unit circle become sign questions for
//! ordinary rational polynomials on the interval `(-2, 2)`.
//!
//! Main entry points:
//!
//! * [`laurent`] / [`expr`] — Laurent polynomials, rational functions and the
//!   input expression grammar.
//! * [`factor`] — exact factorization over the rationals.
//! * [`angle`] — algebraic points on the upper unit circle, ordered exactly
//!   by Sturm-sequence root isolation.
//! * [`hermitian`] — congruence diagonalization and the Witt normal form.
//! * [`profile`] — exact signature step functions.
//! * [`rank`] — the rank lower bound `r`, the norms `s` and `rho_s`, and
//!   exact unit-ball polygons.
//! * [`step`] — validation and realization of prescribed step functions.
//! * [`knot`] — Seifert matrices and 4-genus lower bounds.

pub mod angle;
pub mod error;
pub mod expr;
pub mod factor;
pub mod hermitian;
pub mod knot;
pub mod laurent;
pub mod profile;
pub mod rank;
pub mod rational;
pub mod step;

pub use angle::{AlgebraicAngle, AnglePos};
pub use error::Error;
pub use factor::IrreducibleFactor;
pub use hermitian::{HermitianMatrix, NormalizedEntry, Sign, WittDiagonal};
pub use laurent::{ChebPoly, LaurentPoly, RationalFunction};
pub use profile::{Breakpoint, GroupPoint, SignatureProfile};
pub use rank::{BallPolygon, Norm, RankReport};
pub use rational::Rational;
pub use step::StepSpec;

/// Convenience alias used throughout.
pub type Result<T> = std::result::Result<T, Error>;
