//! Torus inner products for the two-variable symmetric family.
//!
//! The scalar product integrates over the unit torus `|x1| = |x2| = 1`
//! against the density
//! ```text
//!     Delta(x1, x2) = W(x1 / x2) W(x2 / x1) ,
//!     W(u) = (u; q)_inf / (t u; q)_inf ,
//! ```
//! with the left factor star-conjugated, which on the torus is the
//! substitution `x -> 1/x`.  Polynomials attached to distinct weights pair
//! to zero.  The double integral is approximated by the trapezoid rule on
//! an `N x N` grid of roots of unity; the density depends only on the
//! difference of the two node indices, so it is tabulated once per call,
//! and each polynomial is evaluated on the grid once regardless of how
//! many pairings it enters.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qseries::poch_inf;
use crate::weights::SymmetricPoly;

use super::contour::QuadratureConfig;

fn node(n: usize, j: usize) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n as f64)
}

fn density(q: f64, t: f64, n: usize, cfg: &QuadratureConfig) -> Result<Vec<Complex64>> {
    let qc = Complex64::new(q, 0.0);
    (0..n)
        .into_par_iter()
        .map(|d| {
            let u = node(n, d);
            let w = |v: Complex64| -> Result<Complex64> {
                Ok(poch_inf(v, qc, cfg.trunc, cfg.tol)?
                    / poch_inf(t * v, qc, cfg.trunc, cfg.tol)?)
            };
            Ok(w(u)? * w(u.conj())?)
        })
        .collect()
}

fn grid(p: &SymmetricPoly, q: f64, t: f64, n: usize) -> Result<Vec<Complex64>> {
    let qc = Complex64::new(q, 0.0);
    let tauc = Complex64::new(t.sqrt(), 0.0);
    (0..n * n)
        .into_par_iter()
        .map(|idx| p.eval_complex(qc, tauc, &[node(n, idx / n), node(n, idx % n)]))
        .collect()
}

/// Pair two node grids against the tabulated density.  The star conjugate
/// of the left factor is taken as the complex conjugate of its node values,
/// which agrees with `x -> 1/x` because the coefficients are real once `q`
/// and `t` are.
fn pair(fg: &[Complex64], gg: &[Complex64], density: &[Complex64], n: usize) -> Complex64 {
    let total: Complex64 = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut row = Complex64::new(0.0, 0.0);
            for m in 0..n {
                row += fg[j * n + m].conj() * gg[j * n + m] * density[(n + j - m) % n];
            }
            row
        })
        .sum();
    total / (n * n) as f64
}

fn check_regime(q: f64, t: f64, fs: &[&SymmetricPoly]) -> Result<()> {
    if !(q > 0.0 && q < 1.0 && t > 0.0 && t < 1.0) {
        return Err(Error::Invalid(format!(
            "torus inner product needs 0 < q, t < 1; got q = {q}, t = {t}"
        )));
    }
    for f in fs {
        if f.n() != 2 {
            return Err(Error::InvalidWeight {
                detail: format!(
                    "torus inner product is a two-variable pairing; got {} variables",
                    f.n()
                ),
            });
        }
    }
    Ok(())
}

/// Inner product of two symmetric polynomials in two variables over the
/// torus.
pub fn torus_inner_product(
    f: &SymmetricPoly,
    g: &SymmetricPoly,
    q: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    check_regime(q, t, &[f, g])?;
    let n = cfg.points;
    assert!(n > 0, "quadrature needs at least one node");
    let dens = density(q, t, n, cfg)?;
    let fg = grid(f, q, t, n)?;
    let gg = grid(g, q, t, n)?;
    Ok(pair(&fg, &gg, &dens, n))
}

/// The full matrix of pairwise torus inner products.
pub fn torus_gram(
    polys: &[SymmetricPoly],
    q: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<Vec<Vec<Complex64>>> {
    check_regime(q, t, &polys.iter().collect::<Vec<_>>())?;
    let n = cfg.points;
    assert!(n > 0, "quadrature needs at least one node");
    let dens = density(q, t, n, cfg)?;
    let grids = polys
        .iter()
        .map(|p| grid(p, q, t, n))
        .collect::<Result<Vec<_>>>()?;
    let mut out = vec![vec![Complex64::new(0.0, 0.0); polys.len()]; polys.len()];
    for i in 0..polys.len() {
        for j in 0..polys.len() {
            if j < i {
                out[i][j] = out[j][i].conj();
            } else {
                out[i][j] = pair(&grids[i], &grids[j], &dens, n);
            }
        }
    }
    Ok(out)
}
