//! Exact-plus-numeric engine for Macdonald polynomials of weakly increasing
//! weights, their separated one-variable counterparts, and the contour
//! integral operators that factorise one into the other.
//!
//! The crate is layered:
//!
//! * [`exact`] implements sparse Laurent polynomials and rational functions
//!   over the field generated by `q` and `tau` (a formal square root of
//!   `t`), with canonical forms and exact division;
//! * [`weights`] provides dominance-ordered weights and the symmetric
//!   monomial basis;
//! * [`qseries`] implements Pochhammer symbols and basic hypergeometric
//!   series, exactly for terminating series and numerically otherwise;
//! * [`macdonald`] builds the commuting difference operators and solves the
//!   triangular eigenproblem for the polynomials `P`;
//! * [`separated`] constructs the separated one-variable polynomials `phi`
//!   and checks the difference equation they satisfy;
//! * [`factorise`] evaluates the integral operators (forward and inverse)
//!   on the unit circle and its residue-corrected deformations, the
//!   integer-coupling finite sums, and the torus orthogonality pairing;
//! * [`suites`] packages all of the above into named verification suites.

pub mod error;
pub mod exact;
pub mod factorise;
pub mod macdonald;
pub mod qseries;
pub mod separated;
pub mod suites;
pub mod weights;

pub use error::{Error, Result};
