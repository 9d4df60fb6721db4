//! Integral transforms that factorise symmetric polynomials into products
//! of separated one-variable polynomials, and their inverses.
//!
//! The forward transforms send a two- or three-variable Macdonald
//! polynomial to a normalisation constant times a product of separated
//! polynomials, one per remaining variable; the inverse transforms undo
//! this.  Four pieces cooperate:
//!
//! * [`contour`]: a residue-corrected contour integration engine whose
//!   calibration case is the classical Askey-Wilson integral,
//! * [`kernels`]: the forward and inverse kernels together with the exact
//!   normalisation constants and round-trip compositions,
//! * [`integerg`]: the exact finite-difference form the inverse takes when
//!   `t` is an integer power of `q`,
//! * [`orthogonality`]: torus inner products that witness orthogonality of
//!   the two-variable family.

pub mod contour;
pub mod integerg;
pub mod kernels;
pub mod orthogonality;

pub use contour::{
    aw_closed_form, aw_continued, aw_integral, contour_integral, AWParams, QuadratureConfig,
};
pub use integerg::{integer_g_inverse, macdonald_at_integer_g};
pub use kernels::{
    apply_m_n3, apply_m_n3_inverse, apply_m_xi, apply_m_xi_inverse, factorisation_sides_n2,
    factorisation_sides_n3, normalisation_n2, normalisation_n3, normalisation_n3_exact,
    reconstruction_n2, reconstruction_n3, round_trip_n2, round_trip_n3, split_pair,
};
pub use orthogonality::{torus_gram, torus_inner_product};
