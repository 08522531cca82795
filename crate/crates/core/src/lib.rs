//! Twisted Alexander invariants of finitely presented groups.
//!
//! Given a presentation, an epimorphism ε onto ℤ^d and a matrix
//! representation γ, this crate assembles the Fox Jacobian under
//! Φ = γ ⊗ ε and computes the Alexander-Lin polynomial (the gcd of its
//! maximal minors), Wada's invariant, and the fibering obstruction on the
//! extreme coefficients.

pub mod coeff;
pub mod expr;
pub mod fibered;
pub mod foxcalc;
pub mod laurent;
pub mod matrices;
pub mod presentation;
pub mod rep;
pub mod repsearch;
pub mod sysfile;
pub mod twisted;
pub mod words;
