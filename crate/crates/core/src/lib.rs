//! Exact computation of string-net state spaces for the pivotal category
//! of `Z_r`-graded vector spaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`cyclotomic`] and [`linalg`] provide exact arithmetic in `Q(ζ_n)` and
//!   sparse matrices over it.
//! * [`graded_category`] models the category, its duality maps and traces.
//! * [`diagrams`] evaluates slice diagrams layer by layer.
//! * [`coends`] builds the central hulls `A(X)`, the object `H` and the
//!   coend inclusions.
//! * [`stringnet_spaces`] computes closed-surface, sphere and annulus
//!   state spaces and the puncture projector.
//! * [`centre`] covers the Drinfeld-centre simples and the induction functor.
//! * [`rspin`] handles marked polygonal decompositions and r-spin structures.
//! * [`frobenius`] builds the group-algebra Frobenius algebra and the
//!   state-sum vectors.
//! * [`modular`] evaluates the background-charge sphere formula.

pub mod centre;
pub mod coends;
pub mod cyclotomic;
pub mod diagrams;
pub mod error;
pub mod frobenius;
pub mod graded_category;
pub mod linalg;
pub mod modular;
pub mod rspin;
pub mod stringnet_spaces;

pub use cyclotomic::CycNum;
pub use error::{Error, Result};

