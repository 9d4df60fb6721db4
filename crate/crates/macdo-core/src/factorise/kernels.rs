//! Integral operators that factorise two- and three-variable Macdonald
//! polynomials into products of separated polynomials, and their inverses.
//!
//! Each operator is a single contour integral against a kernel built from
//! the four-factor products
//! ```text
//!     Lambda(nu; x, y) = (nu x y, nu x / y, nu y / x, nu / (x y); q)_oo
//! ```
//! and normalised by a q-beta value at exponents proportional to
//! `g = ln t / ln q`.  Acting on `P_lambda` the forward operators yield
//! `c_lambda phi_lambda(y_1) phi_lambda(y_2)` (times `y_3^|lambda|` in the
//! three-variable case); the inverse operators map that product back to
//! `P_lambda`.  The inverse kernels always have at least one induced
//! parameter outside the unit circle (the first two multiply to `1/t`),
//! so their integrals rely on the residue-corrected cycle of
//! [`contour_integral`].
//!
//! Coordinates are split multiplicatively throughout: for a pair
//! `(u_1, u_2)` write `u_± = (u_1 u_2^±1)^(1/2)`.  Public entry points
//! take the original coordinates, require them positive real, and take
//! principal roots; the `*_at` variants accept the split coordinates
//! directly so that compositions can keep a consistent branch at complex
//! quadrature nodes.

use num_complex::Complex64;

use super::contour::{contour_integral, QuadratureConfig};
use crate::error::{Error, Result};
use crate::exact::{gens, RatFunc, VarSet};
use crate::macdonald::macdonald_p;
use crate::qseries::{poch_exact, poch_inf, poch_num, q_beta};
use crate::separated::phi_via_chi;
use crate::weights::DominantWeight;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn check_qt(q: f64, t: f64) -> Result<()> {
    if !(0.0 < q && q < 1.0) {
        return Err(Error::Invalid(format!("q must lie in (0, 1), got {q}")));
    }
    if !(0.0 < t && t < 1.0) {
        return Err(Error::Invalid(format!("t must lie in (0, 1), got {t}")));
    }
    Ok(())
}

/// Demand a positive real coordinate so that square roots are principal
/// and unambiguous.
fn positive_real(name: &str, v: Complex64) -> Result<f64> {
    if v.im.abs() > 1e-12 * v.norm().max(1.0) || v.re <= 0.0 {
        return Err(Error::BranchAmbiguity {
            name: name.into(),
            value: format!("{v}"),
        });
    }
    Ok(v.re)
}

/// `(y_1 y_2)^(1/2)` and `(y_1 / y_2)^(1/2)` for positive real inputs.
pub fn split_pair(
    name1: &str,
    y1: Complex64,
    name2: &str,
    y2: Complex64,
) -> Result<(Complex64, Complex64)> {
    let a = positive_real(name1, y1)?;
    let b = positive_real(name2, y2)?;
    Ok((c((a * b).sqrt()), c((a / b).sqrt())))
}

/// The four-factor product `Lambda(nu; x, y)`, symmetric in `x` and `y`
/// and invariant under inverting either.
pub fn lambda_prod(
    nu: Complex64,
    x: Complex64,
    y: Complex64,
    q: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let qc = c(q);
    Ok(poch_inf(nu * x * y, qc, cfg.trunc, cfg.tol)?
        * poch_inf(nu * x / y, qc, cfg.trunc, cfg.tol)?
        * poch_inf(nu * y / x, qc, cfg.trunc, cfg.tol)?
        * poch_inf(nu / (x * y), qc, cfg.trunc, cfg.tol)?)
}

/// `B_q(ca g, cb g)` with `g = ln t / ln q`.
fn beta_at(q: f64, t: f64, ca: f64, cb: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let g = t.ln() / q.ln();
    q_beta(ca * g, cb * g, q, cfg.trunc, cfg.tol)
}

/// `(1 - q)(q; q)_oo^2 * lam / (2 B_q(ca g, cb g))`, the part of every
/// kernel that does not involve the integration variable.
fn kernel_prefactor(
    q: f64,
    t: f64,
    ca: f64,
    cb: f64,
    lam: Complex64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    let qc = c(q);
    let pq = poch_inf(qc, qc, cfg.trunc, cfg.tol)?;
    let beta = beta_at(q, t, ca, cb, cfg)?;
    if beta.abs() < 1e-12 {
        return Err(Error::PoleCollision {
            point: format!("B_q({ca}g, {cb}g)"),
            detail: "kernel normalisation vanishes; t is too close to an integer power of q"
                .into(),
        });
    }
    Ok(c(1.0 - q) * pq * pq * lam / c(2.0 * beta))
}

/// Two-variable separating transform applied to `f` at `(y_1, y_2)`.
///
/// Integrates `f(t^(-1/2) xi y_+ z, t^(-1/2) xi y_+ / z)` against the
/// kernel with numerator `Lambda(t; y_-, t^-1 y_+)`, denominator
/// `Lambda(t^(1/2); y_-, z) Lambda(t^(1/2); z, t^-1 y_+)` and constant
/// `B_q(g, g)`.  The induced parameter quadruple is
/// `(t^(1/2) y_-^±1, t^(-1/2) y_+, t^(3/2) / y_+)`.
pub fn apply_m_xi<F>(
    f: F,
    y1: Complex64,
    y2: Complex64,
    xi: Complex64,
    q: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64>
where
    F: Fn(Complex64, Complex64) -> Result<Complex64> + Sync,
{
    let (y_plus, y_minus) = split_pair("y1", y1, "y2", y2)?;
    apply_m_xi_at(f, y_plus, y_minus, xi, q, t, cfg)
}

/// [`apply_m_xi`] in split coordinates `y_± = (y_1 y_2^±1)^(1/2)`.
pub fn apply_m_xi_at<F>(
    f: F,
    y_plus: Complex64,
    y_minus: Complex64,
    xi: Complex64,
    q: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64>
where
    F: Fn(Complex64, Complex64) -> Result<Complex64> + Sync,
{
    check_qt(q, t)?;
    let tau = t.sqrt();
    let far = y_plus / t;
    let pref = kernel_prefactor(q, t, 1.0, 1.0, lambda_prod(c(t), y_minus, far, q, cfg)?, cfg)?;
    let quad = [
        y_minus * tau,
        c(tau) / y_minus,
        y_plus / tau,
        c(tau.powi(3)) / y_plus,
    ];
    let s = xi * y_plus / tau;
    let value = contour_integral(quad, q, cfg, |z| f(s * z, s / z))?;
    Ok(pref * value)
}

/// Inverse of the two-variable separating transform, applied to a
/// function `f` of the separated pair, at `(x_1, x_2)`.
///
/// Integrates `f(t^(1/2) xi^-1 x_+ z, t^(1/2) xi^-1 x_+ / z)` against the
/// kernel with numerator `Lambda(t^(1/2); x_-, t^(-1/2) xi^-1 x_+)`,
/// denominator `Lambda(t^(-1/2); z, x_-) Lambda(t; z, t^(-1/2) xi^-1 x_+)`
/// and constant `B_q(-g, 2g)`.  The induced quadruple is
/// `(t^(-1/2) x_-^±1, t^(1/2) xi^-1 x_+, t^(3/2) xi / x_+)`; its first two
/// entries multiply to `1/t`, so at least one escaped pole is always
/// corrected for.
pub fn apply_m_xi_inverse<F>(
    f: F,
    x1: Complex64,
    x2: Complex64,
    xi: Complex64,
    q: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64>
where
    F: Fn(Complex64, Complex64) -> Result<Complex64> + Sync,
{
    let (x_plus, x_minus) = split_pair("x1", x1, "x2", x2)?;
    apply_m_xi_inverse_at(f, x_plus, x_minus, xi, q, t, cfg)
}

/// [`apply_m_xi_inverse`] in split coordinates `x_± = (x_1 x_2^±1)^(1/2)`.
pub fn apply_m_xi_inverse_at<F>(
    f: F,
    x_plus: Complex64,
    x_minus: Complex64,
    xi: Complex64,
    q: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64>
where
    F: Fn(Complex64, Complex64) -> Result<Complex64> + Sync,
{
    check_qt(q, t)?;
    let tau = t.sqrt();
    let far = x_plus / (xi * tau);
    let pref = kernel_prefactor(
        q,
        t,
        -1.0,
        2.0,
        lambda_prod(c(tau), x_minus, far, q, cfg)?,
        cfg,
    )?;
    let quad = [
        x_minus / tau,
        (x_minus * tau).inv(),
        x_plus * tau / xi,
        c(tau.powi(3)) * xi / x_plus,
    ];
    let s = x_plus * tau / xi;
    let value = contour_integral(quad, q, cfg, |z| f(s * z, s / z))?;
    Ok(pref * value)
}

/// Three-variable separating transform applied to `f` at `(y_1, y_2, y_3)`.
///
/// The third coordinate passes through: the integrand is
/// `f(t^(-3/2) y_3 y_+ z, t^(-3/2) y_3 y_+ / z, y_3)` with
/// `y_± = (y_1 y_2^±1)^(1/2)`, kernel numerator
/// `Lambda(t^(3/2); y_-, t^(-3/2) y_+)`, denominator
/// `Lambda(t^(1/2); y_-, z) Lambda(t; z, t^(-3/2) y_+)` and constant
/// `B_q(g, 2g)`.  The induced quadruple is
/// `(t^(1/2) y_-^±1, t^(-1/2) y_+, t^(5/2) / y_+)`.
pub fn apply_m_n3<F>(
    f: F,
    y1: Complex64,
    y2: Complex64,
    y3: Complex64,
    q: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64>
where
    F: Fn(Complex64, Complex64, Complex64) -> Result<Complex64> + Sync,
{
    let (y_plus, y_minus) = split_pair("y1", y1, "y2", y2)?;
    positive_real("y3", y3)?;
    apply_m_n3_at(f, y_plus, y_minus, y3, q, t, cfg)
}

/// [`apply_m_n3`] in split coordinates `y_± = (y_1 y_2^±1)^(1/2)`.
pub fn apply_m_n3_at<F>(
    f: F,
    y_plus: Complex64,
    y_minus: Complex64,
    y3: Complex64,
    q: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64>
where
    F: Fn(Complex64, Complex64, Complex64) -> Result<Complex64> + Sync,
{
    check_qt(q, t)?;
    let tau = t.sqrt();
    let far = y_plus / tau.powi(3);
    let pref = kernel_prefactor(
        q,
        t,
        1.0,
        2.0,
        lambda_prod(c(tau.powi(3)), y_minus, far, q, cfg)?,
        cfg,
    )?;
    let quad = [
        y_minus * tau,
        c(tau) / y_minus,
        y_plus / tau,
        c(tau.powi(5)) / y_plus,
    ];
    let s = y3 * y_plus / tau.powi(3);
    let value = contour_integral(quad, q, cfg, |z| f(s * z, s / z, y3))?;
    Ok(pref * value)
}

/// Inverse of the three-variable separating transform at `(x_1, x_2, x_3)`.
///
/// Splits as `x_+ = (x_1 x_2)^(1/2) / x_3`, `x_- = (x_1 / x_2)^(1/2)`; the
/// integrand is `f(t^(3/2) x_+ z, t^(3/2) x_+ / z, x_3)`, kernel numerator
/// `Lambda(t; x_-, x_+)`, denominator
/// `Lambda(t^(-1/2); z, x_-) Lambda(t^(3/2); z, x_+)` and constant
/// `B_q(-g, 3g)`.  The induced quadruple is
/// `(t^(-1/2) x_-^±1, t^(3/2) x_+^±1)`, whose first two entries again
/// multiply to `1/t`.
pub fn apply_m_n3_inverse<F>(
    f: F,
    x1: Complex64,
    x2: Complex64,
    x3: Complex64,
    q: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64>
where
    F: Fn(Complex64, Complex64, Complex64) -> Result<Complex64> + Sync,
{
    let (pair_root, x_minus) = split_pair("x1", x1, "x2", x2)?;
    let x3r = positive_real("x3", x3)?;
    apply_m_n3_inverse_at(f, pair_root / x3r, x_minus, x3, q, t, cfg)
}

/// [`apply_m_n3_inverse`] in split coordinates `x_+ = (x_1 x_2)^(1/2)/x_3`,
/// `x_- = (x_1 / x_2)^(1/2)`.
pub fn apply_m_n3_inverse_at<F>(
    f: F,
    x_plus: Complex64,
    x_minus: Complex64,
    x3: Complex64,
    q: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64>
where
    F: Fn(Complex64, Complex64, Complex64) -> Result<Complex64> + Sync,
{
    check_qt(q, t)?;
    let tau = t.sqrt();
    let pref = kernel_prefactor(
        q,
        t,
        -1.0,
        3.0,
        lambda_prod(c(t), x_minus, x_plus, q, cfg)?,
        cfg,
    )?;
    let quad = [
        x_minus / tau,
        (x_minus * tau).inv(),
        x_plus * tau.powi(3),
        c(tau.powi(3)) / x_plus,
    ];
    let s = x_plus * tau.powi(3);
    let value = contour_integral(quad, q, cfg, |z| f(s * z, s / z, x3))?;
    Ok(pref * value)
}

/// Factorisation constant for the two-variable transform,
/// `t^(-2 lambda_1 + lambda_2) xi^|lambda| (t; q)_d / (t^2; q)_d` with
/// `d = lambda_2 - lambda_1`.
pub fn normalisation_n2(
    lambda: &DominantWeight,
    xi: Complex64,
    q: f64,
    t: f64,
) -> Result<Complex64> {
    if lambda.n() != 2 {
        return Err(Error::InvalidWeight {
            detail: format!("two-variable constant needs two parts, got {lambda}"),
        });
    }
    let d = lambda.diff(2, 1);
    let qc = c(q);
    let num = poch_num(c(t), qc, d);
    let den = poch_num(c(t * t), qc, d);
    let power = t.powi((-2 * lambda.part(1) + lambda.part(2)) as i32);
    Ok(c(power) * xi.powi(lambda.size() as i32) * num / den)
}

/// Factorisation constant for the three-variable transform,
/// ```text
///     t^(lambda_2 - 4 lambda_1)
///     (t^2; q)_d31 (t^2; q)_d32 (t; q)_d21
///     / ( (t^3; q)_d31 (t; q)_d32 (t^2; q)_d21 )
/// ```
/// with `dij = lambda_i - lambda_j`.
pub fn normalisation_n3(lambda: &DominantWeight, q: f64, t: f64) -> Result<Complex64> {
    if lambda.n() != 3 {
        return Err(Error::InvalidWeight {
            detail: format!("three-variable constant needs three parts, got {lambda}"),
        });
    }
    let (d31, d32, d21) = (lambda.diff(3, 1), lambda.diff(3, 2), lambda.diff(2, 1));
    let qc = c(q);
    let (t1, t2, t3) = (c(t), c(t * t), c(t * t * t));
    let num = poch_num(t2, qc, d31) * poch_num(t2, qc, d32) * poch_num(t1, qc, d21);
    let den = poch_num(t3, qc, d31) * poch_num(t1, qc, d32) * poch_num(t2, qc, d21);
    let power = t.powi((lambda.part(2) - 4 * lambda.part(1)) as i32);
    Ok(c(power) * num / den)
}

/// Exact counterpart of [`normalisation_n3`] over the coefficient field.
pub fn normalisation_n3_exact(lambda: &DominantWeight) -> Result<RatFunc> {
    if lambda.n() != 3 {
        return Err(Error::InvalidWeight {
            detail: format!("three-variable constant needs three parts, got {lambda}"),
        });
    }
    let vars = VarSet::coefficients();
    let (d31, d32, d21) = (lambda.diff(3, 1), lambda.diff(3, 2), lambda.diff(2, 1));
    let (t1, t2, t3) = (
        gens::t_pow(&vars, 1),
        gens::t_pow(&vars, 2),
        gens::t_pow(&vars, 3),
    );
    let num = &(&poch_exact(&t2, d31)? * &poch_exact(&t2, d32)?) * &poch_exact(&t1, d21)?;
    let den = &(&poch_exact(&t3, d31)? * &poch_exact(&t1, d32)?) * &poch_exact(&t2, d21)?;
    let power = gens::q_t_monomial(&vars, 0, lambda.part(2) - 4 * lambda.part(1));
    Ok(&(&power * &num) / &den)
}

/// Both sides of the two-variable factorisation at a sample point:
/// the transform applied to `P_lambda`, and
/// `c_{lambda,xi} phi_lambda(y_1) phi_lambda(y_2)`.
pub fn factorisation_sides_n2(
    lambda: &DominantWeight,
    y1: f64,
    y2: f64,
    xi: Complex64,
    q: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<(Complex64, Complex64)> {
    let p = macdonald_p(lambda)?;
    let (qc, tauc) = (c(q), c(t.sqrt()));
    let lhs = apply_m_xi(
        |u1, u2| p.eval_complex(qc, tauc, &[u1, u2]),
        c(y1),
        c(y2),
        xi,
        q,
        t,
        cfg,
    )?;
    let phi = phi_via_chi(lambda)?;
    let rhs = normalisation_n2(lambda, xi, q, t)? * phi.eval(c(y1), q, t)? * phi.eval(c(y2), q, t)?;
    Ok((lhs, rhs))
}

/// Both sides of the three-variable factorisation at a sample point:
/// the transform applied to `P_lambda`, and
/// `c_lambda y_3^|lambda| phi_lambda(y_1) phi_lambda(y_2)`.
pub fn factorisation_sides_n3(
    lambda: &DominantWeight,
    y1: f64,
    y2: f64,
    y3: f64,
    q: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<(Complex64, Complex64)> {
    let p = macdonald_p(lambda)?;
    let (qc, tauc) = (c(q), c(t.sqrt()));
    let lhs = apply_m_n3(
        |u1, u2, u3| p.eval_complex(qc, tauc, &[u1, u2, u3]),
        c(y1),
        c(y2),
        c(y3),
        q,
        t,
        cfg,
    )?;
    let phi = phi_via_chi(lambda)?;
    let rhs = normalisation_n3(lambda, q, t)?
        * c(y3).powi(lambda.size() as i32)
        * phi.eval(c(y1), q, t)?
        * phi.eval(c(y2), q, t)?;
    Ok((lhs, rhs))
}

/// Round trip of the two-variable transform on `P_lambda`: the inverse
/// applied to the forward image, against `P_lambda(x_1, x_2)` itself.
pub fn round_trip_n2(
    lambda: &DominantWeight,
    x1: f64,
    x2: f64,
    xi: Complex64,
    q: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<(Complex64, Complex64)> {
    let p = macdonald_p(lambda)?;
    let (qc, tauc) = (c(q), c(t.sqrt()));
    let tau = t.sqrt();
    let x_plus = (x1 * x2).sqrt();
    let x_minus = (x1 / x2).sqrt();
    let s = c(x_plus * tau) / xi;
    let pf = |u1: Complex64, u2: Complex64| p.eval_complex(qc, tauc, &[u1, u2]);
    // The forward image is evaluated at points (s z, s / z), whose split
    // coordinates are exactly (s, z); recovering z as u1 / s keeps the
    // branch consistent at complex nodes.
    let transformed =
        |u1: Complex64, _u2: Complex64| apply_m_xi_at(&pf, s, u1 / s, xi, q, t, cfg);
    let lhs = apply_m_xi_inverse_at(transformed, c(x_plus), c(x_minus), xi, q, t, cfg)?;
    let rhs = p.eval_complex(qc, tauc, &[c(x1), c(x2)])?;
    Ok((lhs, rhs))
}

/// Reconstruction of `P_lambda(x_1, x_2)` by the inverse transform from
/// the separated product `c_{lambda,xi} phi(y_1) phi(y_2)`.
pub fn reconstruction_n2(
    lambda: &DominantWeight,
    x1: f64,
    x2: f64,
    xi: Complex64,
    q: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<(Complex64, Complex64)> {
    let phi = phi_via_chi(lambda)?;
    let cst = normalisation_n2(lambda, xi, q, t)?;
    let separated = |u1: Complex64, u2: Complex64| -> Result<Complex64> {
        Ok(cst * phi.eval(u1, q, t)? * phi.eval(u2, q, t)?)
    };
    let lhs = apply_m_xi_inverse(separated, c(x1), c(x2), xi, q, t, cfg)?;
    let p = macdonald_p(lambda)?;
    let rhs = p.eval_complex(c(q), c(t.sqrt()), &[c(x1), c(x2)])?;
    Ok((lhs, rhs))
}

/// Round trip of the three-variable transform on `P_lambda`.
pub fn round_trip_n3(
    lambda: &DominantWeight,
    x1: f64,
    x2: f64,
    x3: f64,
    q: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<(Complex64, Complex64)> {
    let p = macdonald_p(lambda)?;
    let (qc, tauc) = (c(q), c(t.sqrt()));
    let tau = t.sqrt();
    let x_plus = (x1 * x2).sqrt() / x3;
    let x_minus = (x1 / x2).sqrt();
    let s = c(x_plus * tau.powi(3));
    let pf =
        |u1: Complex64, u2: Complex64, u3: Complex64| p.eval_complex(qc, tauc, &[u1, u2, u3]);
    let transformed = |u1: Complex64, _u2: Complex64, u3: Complex64| {
        apply_m_n3_at(&pf, s, u1 / s, u3, q, t, cfg)
    };
    let lhs = apply_m_n3_inverse_at(transformed, c(x_plus), c(x_minus), c(x3), q, t, cfg)?;
    let rhs = p.eval_complex(qc, tauc, &[c(x1), c(x2), c(x3)])?;
    Ok((lhs, rhs))
}

/// Reconstruction of `P_lambda(x_1, x_2, x_3)` from the separated product
/// `c_lambda y_3^|lambda| phi(y_1) phi(y_2)`.
pub fn reconstruction_n3(
    lambda: &DominantWeight,
    x1: f64,
    x2: f64,
    x3: f64,
    q: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<(Complex64, Complex64)> {
    let phi = phi_via_chi(lambda)?;
    let cst = normalisation_n3(lambda, q, t)?;
    let size = lambda.size() as i32;
    let separated = |u1: Complex64, u2: Complex64, u3: Complex64| -> Result<Complex64> {
        Ok(cst * u3.powi(size) * phi.eval(u1, q, t)? * phi.eval(u2, q, t)?)
    };
    let lhs = apply_m_n3_inverse(separated, c(x1), c(x2), c(x3), q, t, cfg)?;
    let p = macdonald_p(lambda)?;
    let rhs = p.eval_complex(c(q), c(t.sqrt()), &[c(x1), c(x2), c(x3)])?;
    Ok((lhs, rhs))
}
