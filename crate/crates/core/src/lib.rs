//! Analysis of finite partial dynamical systems dual to crossed products by
//! endomorphisms.
//!
//! Given a finite space `X`, a partial map `φ : Δ → X` and a hull set
//! `Y ⊆ X`, the crate computes:
//!
//! - the reversible extension of the system as a strand space, with an
//!   inverse-limit cross-check ([`extension`]);
//! - the full lattice of gauge-invariant ideals of the associated crossed
//!   product, encoded as pairs of point sets, together with quotients and
//!   the repair of inadmissible hulls ([`lattice`]);
//! - topological freeness outside the hull and a simplicity classifier with
//!   concrete witnesses ([`freeness`]);
//! - explicit finite-dimensional matrix models and numerical verification of
//!   the covariance, grading and kernel identities they satisfy ([`matrep`]).
//!
//! All types are immutable after construction and every operation is a pure
//! function; results are deterministic, with enumeration orders fixed by
//! cardinality-then-bit-value keys.

pub mod dynsys;
pub mod enumeration;
pub mod error;
pub mod extension;
pub mod freeness;
pub mod lattice;
pub mod matrep;
pub mod point_set;

pub use dynsys::{PartialMap, SystemWithHull};
pub use error::{Error, Result};
pub use point_set::PointSet;
