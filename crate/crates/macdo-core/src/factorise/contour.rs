//! Contour quadrature for integrals of Askey-Wilson type.
//!
//! Every integral handled here has the shape
//! ```text
//!     (1 / 2 pi i) \oint dz/z
//!         (z^2, z^-2; q)_oo * extra(z)
//!         / prod_{w in quad} (w z, w z^-1; q)_oo
//! ```
//! over a cycle separating the pole ladders `{w q^k}` (to be enclosed) from
//! `{w^-1 q^-k}` (to be excluded).  When every `|w| < 1` the cycle is the
//! unit circle and the trapezoid rule on `N` equispaced nodes converges
//! geometrically.  When some `|w| >= 1` the enclosed ladder pokes through
//! the circle and its mirror intrudes; the cycle then picks up a small
//! positively oriented circle around each escaped pole `w q^k` with
//! `|w q^k| > 1` and a negatively oriented one around the mirror point.
//! By the `z -> 1/z` symmetry of the integrand both circles contribute the
//! same amount, so the value is the unit-circle average plus twice the sum
//! of residues at the escaped poles.

use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qseries::poch_inf;

/// Node count and truncation budget for all quadratures.
#[derive(Debug, Clone)]
pub struct QuadratureConfig {
    /// Trapezoid nodes on the unit circle.
    pub points: usize,
    /// Hard cap on factors of each infinite product.
    pub trunc: usize,
    /// Certified tail tolerance for infinite products.
    pub tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            points: 2048,
            trunc: 300,
            tol: 1e-9,
        }
    }
}

impl QuadratureConfig {
    /// Same budget with a different node count.
    pub fn with_points(&self, points: usize) -> Self {
        QuadratureConfig {
            points,
            ..self.clone()
        }
    }
}

/// Minimal allowed distance, in log-modulus, between any pole of the
/// integrand and the unit circle.  Inside this band the trapezoid rule
/// loses its geometric convergence, so integration is refused.
const LOG_MARGIN: f64 = 0.02;

/// Escaped poles `(index into quad, ladder step k)` with `|w q^k| > 1`,
/// after checking that no ladder point of any parameter comes close to the
/// circle.  Ladders of zero parameters are empty.
fn escaped_poles(quad: &[Complex64; 4], q: f64) -> Result<Vec<(usize, u32)>> {
    let mut escaped = Vec::new();
    for (i, w) in quad.iter().enumerate() {
        let a = w.norm();
        if a == 0.0 {
            continue;
        }
        let mut k = 0u32;
        loop {
            let log_mod = a.ln() + f64::from(k) * q.ln();
            if log_mod.abs() < LOG_MARGIN {
                return Err(Error::PoleNearContour {
                    dist: log_mod.abs(),
                    min: LOG_MARGIN,
                });
            }
            if log_mod < 0.0 {
                break;
            }
            escaped.push((i, k));
            k += 1;
            if k > 10_000 {
                return Err(Error::Invalid(format!(
                    "pole ladder of parameter {w} never descends below the unit circle"
                )));
            }
        }
    }
    Ok(escaped)
}

/// Twice the sum of residues of the integrand at the escaped poles.
///
/// At `p = w q^k` the vanishing factor of `(w / z; q)_oo` contributes
/// `(q; q)_oo prod_{m=1..k} (1 - q^-m)` from its siblings, so the residue
/// of the integrand (including the `1/z` of the measure) is
/// ```text
///     (p^2, p^-2; q)_oo * extra(p)
///     / ( D_k * prod_v (v p; q)_oo * prod_{v != w} (v / p; q)_oo )
/// ```
fn residue_correction<F>(
    quad: &[Complex64; 4],
    q: f64,
    cfg: &QuadratureConfig,
    extra: &F,
    escaped: &[(usize, u32)],
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    if escaped.is_empty() {
        return Ok(Complex64::zero());
    }
    let qc = Complex64::new(q, 0.0);
    let locations: Vec<Complex64> = escaped
        .iter()
        .map(|&(i, k)| quad[i] * q.powi(k as i32))
        .collect();
    for (a, pa) in locations.iter().enumerate() {
        for pb in &locations[a + 1..] {
            if (pa - pb).norm() < 1e-9 * pa.norm().max(1.0) {
                return Err(Error::PoleCollision {
                    point: format!("{pa}"),
                    detail: "two escaped poles coincide, so the pole is not simple".into(),
                });
            }
        }
    }
    let mut total = Complex64::zero();
    for (&(i, k), &p) in escaped.iter().zip(locations.iter()) {
        let mut siblings = poch_inf(qc, qc, cfg.trunc, cfg.tol)?;
        for m in 1..=i64::from(k) {
            siblings *= Complex64::one() - q.powi(-(m as i32));
        }
        let numerator = poch_inf(p * p, qc, cfg.trunc, cfg.tol)?
            * poch_inf((p * p).inv(), qc, cfg.trunc, cfg.tol)?;
        let mut denominator = siblings;
        for (j, v) in quad.iter().enumerate() {
            denominator *= poch_inf(v * p, qc, cfg.trunc, cfg.tol)?;
            if j != i {
                denominator *= poch_inf(v / p, qc, cfg.trunc, cfg.tol)?;
            }
        }
        if denominator.norm() < 1e-12 {
            return Err(Error::PoleCollision {
                point: format!("{p}"),
                detail: "residue denominator vanishes (a parameter pair sits on a pole)".into(),
            });
        }
        total += numerator * extra(p)? / denominator;
    }
    Ok(2.0 * total)
}

/// The integral described in the module docs, for an arbitrary extra
/// factor.  `extra` must be analytic away from the origin and symmetric
/// under `z -> 1/z` on the relevant annulus; all four kernel applications
/// and the plain Askey-Wilson integrand satisfy this.
pub fn contour_integral<F>(
    quad: [Complex64; 4],
    q: f64,
    cfg: &QuadratureConfig,
    extra: F,
) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    if !(0.0 < q && q < 1.0) {
        return Err(Error::Invalid(format!("q must lie in (0, 1), got {q}")));
    }
    if cfg.points == 0 {
        return Err(Error::Invalid("quadrature needs at least one node".into()));
    }
    let escaped = escaped_poles(&quad, q)?;
    let qc = Complex64::new(q, 0.0);
    let n = cfg.points;
    let node_values: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|j| -> Result<Complex64> {
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / (n as f64);
            let z = Complex64::from_polar(1.0, theta);
            let numerator = poch_inf(z * z, qc, cfg.trunc, cfg.tol)?
                * poch_inf((z * z).inv(), qc, cfg.trunc, cfg.tol)?;
            let mut denominator = Complex64::one();
            for w in &quad {
                denominator *= poch_inf(w * z, qc, cfg.trunc, cfg.tol)?;
                denominator *= poch_inf(w / z, qc, cfg.trunc, cfg.tol)?;
            }
            Ok(numerator * extra(z)? / denominator)
        })
        .collect::<Result<Vec<_>>>()?;
    let average = node_values.iter().sum::<Complex64>() / (n as f64);
    let correction = residue_correction(&quad, q, cfg, &extra, &escaped)?;
    Ok(average + correction)
}

/// Parameters of the Askey-Wilson integral.
#[derive(Debug, Clone)]
pub struct AWParams {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub q: f64,
}

impl AWParams {
    fn quadruple(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Moduli of the four parameters followed by `q`.
    pub fn moduli(&self) -> Vec<f64> {
        vec![
            self.a.norm(),
            self.b.norm(),
            self.c.norm(),
            self.d.norm(),
            self.q,
        ]
    }
}

/// Closed product form of the Askey-Wilson integral,
/// `2 (abcd; q)_oo / (q, ab, ac, ad, bc, bd, cd; q)_oo`.
pub fn aw_closed_form(p: &AWParams, cfg: &QuadratureConfig) -> Result<Complex64> {
    let qc = Complex64::new(p.q, 0.0);
    let pairs = [
        p.a * p.b,
        p.a * p.c,
        p.a * p.d,
        p.b * p.c,
        p.b * p.d,
        p.c * p.d,
    ];
    let numerator = 2.0 * poch_inf(p.a * p.b * p.c * p.d, qc, cfg.trunc, cfg.tol)?;
    let mut denominator = poch_inf(qc, qc, cfg.trunc, cfg.tol)?;
    for pair in pairs {
        denominator *= poch_inf(pair, qc, cfg.trunc, cfg.tol)?;
    }
    if denominator.norm() < 1e-12 {
        return Err(Error::PoleCollision {
            point: "closed form".into(),
            detail: "a pairwise product of parameters equals a nonpositive power of q".into(),
        });
    }
    Ok(numerator / denominator)
}

/// Both sides of the Askey-Wilson identity in the plain unit-circle
/// regime: the quadrature value and the closed product form.
///
/// Any parameter modulus at or beyond 1 is refused; use
/// [`aw_continued`] for the analytically continued cycle.
pub fn aw_integral(p: &AWParams, cfg: &QuadratureConfig) -> Result<(Complex64, Complex64)> {
    let moduli = p.moduli();
    if moduli.iter().any(|&m| m >= 1.0) {
        return Err(Error::ContourNotCircle { moduli });
    }
    let lhs = contour_integral(p.quadruple(), p.q, cfg, |_| Ok(Complex64::one()))?;
    let rhs = aw_closed_form(p, cfg)?;
    Ok((lhs, rhs))
}

/// Both sides of the Askey-Wilson identity on the deformed cycle, valid
/// for parameters of any modulus whose pole ladders stay clear of the
/// unit circle.  The closed form continues analytically as the same
/// product.
pub fn aw_continued(p: &AWParams, cfg: &QuadratureConfig) -> Result<(Complex64, Complex64)> {
    let lhs = contour_integral(p.quadruple(), p.q, cfg, |_| Ok(Complex64::one()))?;
    let rhs = aw_closed_form(p, cfg)?;
    Ok((lhs, rhs))
}
