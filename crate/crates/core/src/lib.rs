//! Exact Newton stratification of the adjoint quotient `A/W` of a split
//! reductive group with simply connected derived group.
//!
//! * [`root_datum`]: root data in the `omega`-basis, Weyl group, Levi
//!   subsystems, component groups.
//! * [`chamber`]: the retraction onto the dominant chamber and Newton points.
//! * [`strata`]: stratum conditions, dimensions, codimensions, `d_G`.
//! * [`affine`]: extended affine Weyl group, the section `s`, defect.
//! * [`torus_eval`]: valued-field evaluation of the invariants `c_i`.

pub mod affine;
pub mod chamber;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod rational;
pub mod root_datum;
pub mod strata;
pub mod torus_eval;

pub use error::{Error, Result};
pub use rational::{ExtRational, Rational};
pub use root_datum::{APoint, LeviDescriptor, RootDatum, ValuationVector, Weight, WeylElement};
