//! Exact arithmetic over Q, Hilbert symbols, two-torsion Brauer classes,
//! quadratic forms, and decision procedures for self-dual normal bases of
//! G-Galois algebras over the rationals.

pub mod arith;
pub mod batch;
pub mod brauer;
pub mod error;
pub mod forms;
pub mod groups;
pub mod local;
pub mod poly;
pub mod primes;
pub mod sdnb;

pub use arith::{Rational, SquareClass};
pub use brauer::{cup, BrauerClass};
pub use error::{Error, Result};
pub use forms::{DiagonalForm, GramMatrix};
pub use groups::{FactorDescriptor, FactorKind, GroupDescriptor};
pub use local::{hilbert, Place};
pub use poly::Polynomial;
pub use sdnb::{
    decide_global, decide_local, Decision, Family, GaloisAlgebraSpec, InvariantReport, Verdict,
};
