//! Exact arithmetic layer: Laurent polynomials and rational functions over
//! the field generated by `q` and `tau = t^(1/2)`.

mod gcd;
pub mod laurent;
pub mod ratfunc;
pub mod vars;

pub use laurent::{rat, rat_to_f64, LaurentPoly, Mono, Rat};
pub use ratfunc::{gens, RatFunc};
pub use vars::{same_vars, VarSet, Vars, Q, TAU};
