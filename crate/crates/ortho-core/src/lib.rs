//! Exact computation of ortho cosh-length spectra of hyperbolic pairs of
//! pants and one-holed tori, together with the arithmetic invariants of
//! their genus-2 doubles.
//!
//! Everything that is rational in cosh-coordinates (squared boundary
//! traces, spectrum entries, Markoff data, Hilbert symbols) is computed
//! over arbitrary-precision rationals; floating point appears only where
//! an actual hyperbolic length (an arcosh) is needed.
//!
//! The main layers, bottom up:
//!
//! * [`exact`] — big rationals, factorization, Legendre/Hilbert symbols.
//! * [`geometry`] — closed-form hexagon/pants/torus identities.
//! * [`orbit`] — the quadratic form of a right-angled hexagon, the
//!   associated matrix groups, and the breadth-first spectrum enumeration.
//! * [`classify`] — bounded exhaustive searches for ortho-integral
//!   surfaces, plus `(1/d)`-integrality checks.
//! * [`arithmetic`] — quaternion algebras, ramification sets, and the
//!   trace checks for the doubled surfaces.
//! * [`glue`] — reflection-group orbit integrality and the glued-family
//!   counting formulas.
//! * [`golden`] — embedded reference tables the CLI diffs against.

pub mod arithmetic;
pub mod classify;
pub mod exact;
pub mod geometry;
pub mod glue;
pub mod golden;
pub mod orbit;
