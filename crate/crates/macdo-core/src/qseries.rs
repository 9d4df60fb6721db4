//! q-Pochhammer symbols and basic hypergeometric series.
//!
//! Terminating series are summed exactly over the rational function field;
//! non-terminating ones are summed numerically for `|q| < 1` with certified
//! truncation of infinite products.  A series
//! ```text
//!     rphi_s(a_1..a_r; b_1..b_s; q, z)
//!         = sum_k  (a_1..a_r; q)_k / ((q, b_1..b_s; q)_k)
//!           * ((-1)^k q^(k(k-1)/2))^(1+s-r) * z^k
//! ```
//! terminates when some upper parameter is an exact nonpositive power of
//! `q`.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{gens, LaurentPoly, RatFunc, VarSet, Q};

/// Exact shifted factorial `(a; q)_k`.
///
/// Negative order uses `(a; q)_{-m} = 1 / (a q^{-m}; q)_m` and fails when a
/// factor of that product vanishes identically.
pub fn poch_exact(a: &RatFunc, k: i64) -> Result<RatFunc> {
    let vars = a.vars().clone();
    let one = RatFunc::one(&vars);
    if k >= 0 {
        let mut acc = one.clone();
        let mut aq = a.clone();
        let q = gens::q(&vars);
        for _ in 0..k {
            acc = &acc * &(&one - &aq);
            aq = &aq * &q;
        }
        Ok(acc)
    } else {
        let m = -k;
        let shifted = a * &gens::q_pow(&vars, -m);
        let p = poch_exact(&shifted, m)?;
        if p.is_zero() {
            return Err(Error::PochhammerPole {
                base: a.to_string(),
                offset: -m,
            });
        }
        p.inverse()
    }
}

/// Exact product `(a_1; q)_k (a_2; q)_k ...`.
pub fn poch_many(bases: &[RatFunc], k: i64) -> Result<RatFunc> {
    let vars = bases
        .first()
        .map(|b| b.vars().clone())
        .unwrap_or_else(VarSet::coefficients);
    let mut acc = RatFunc::one(&vars);
    for b in bases {
        acc = &acc * &poch_exact(b, k)?;
    }
    Ok(acc)
}

/// Parameters of a basic hypergeometric series over the exact field.
#[derive(Debug, Clone)]
pub struct SeriesSpec {
    pub upper: Vec<RatFunc>,
    pub lower: Vec<RatFunc>,
    pub arg: RatFunc,
}

impl SeriesSpec {
    /// Smallest `m` such that some upper parameter equals `q^{-m}` exactly,
    /// which truncates the series at `k = m`.
    pub fn termination_order(&self) -> Option<i64> {
        self.upper
            .iter()
            .filter_map(|u| u.as_pure_q_power())
            .filter(|&k| k <= 0)
            .map(|k| -k)
            .min()
    }
}

/// Exact sum of a terminating series.
///
/// Fails with [`Error::NonTerminatingSeries`] when no upper parameter is an
/// exact nonpositive power of `q`, and with [`Error::LowerParameterPole`]
/// when a lower parameter `q^{-j}` with `0 <= j < m` makes a denominator
/// factor vanish before the series truncates.
pub fn phi_terminating(spec: &SeriesSpec) -> Result<RatFunc> {
    let m = spec.termination_order().ok_or(Error::NonTerminatingSeries)?;
    for (index, l) in spec.lower.iter().enumerate() {
        if let Some(k) = l.as_pure_q_power() {
            let j = -k;
            if (0..m).contains(&j) {
                return Err(Error::LowerParameterPole { index, m: j });
            }
        }
    }
    let vars = spec.arg.vars().clone();
    let e = 1 + spec.lower.len() as i64 - spec.upper.len() as i64;

    // Numerators accumulate over one running unreduced denominator, so the
    // whole sum costs a single canonicalising reduction at the end instead
    // of a gcd per operation.
    let mut sum_num = LaurentPoly::one(&vars);
    let mut term_num = LaurentPoly::one(&vars);
    let mut den = LaurentPoly::one(&vars);
    for k in 0..m {
        // Ratio term_{k+1} / term_k as the unreduced pair (nr, dr).
        let qk = LaurentPoly::var_pow(&vars, Q, k as i32);
        let mut nr = spec.arg.num().clone();
        let mut dr = spec.arg.den().clone();
        for u in &spec.upper {
            nr = &nr * &(u.den() - &(u.num() * &qk));
            dr = &dr * u.den();
        }
        for l in &spec.lower {
            let f = l.den() - &(l.num() * &qk);
            if f.is_zero() {
                return Err(Error::PochhammerPole {
                    base: l.to_string(),
                    offset: k,
                });
            }
            nr = &nr * l.den();
            dr = &dr * &f;
        }
        dr = &dr * &(&LaurentPoly::one(&vars) - &LaurentPoly::var_pow(&vars, Q, k as i32 + 1));
        if e != 0 {
            // ((-1)^{k+1} q^{C(k+1,2)})^e / ((-1)^k q^{C(k,2)})^e
            //   = (-1)^e q^{k e}
            let mut f = LaurentPoly::var_pow(&vars, Q, (k * e) as i32);
            if e.rem_euclid(2) == 1 {
                f = -&f;
            }
            nr = &nr * &f;
        }
        term_num = &term_num * &nr;
        sum_num = &(&sum_num * &dr) + &term_num;
        den = &den * &dr;
    }
    RatFunc::new(sum_num, den)
}

/// Gaussian binomial coefficient `[g k]_q` as a polynomial in `q`, built
/// from the Pascal recurrence
/// ```text
///     [n k]_q = [n-1 k-1]_q + q^k [n-1 k]_q .
/// ```
pub fn gauss_binomial(g: i64, k: i64) -> Result<RatFunc> {
    if k < 0 || k > g {
        return Err(Error::BinomialOutOfRange { g, k });
    }
    let vars = VarSet::coefficients();
    let mut row: Vec<LaurentPoly> = vec![LaurentPoly::one(&vars)];
    for n in 1..=g {
        let mut next = Vec::with_capacity(n as usize + 1);
        for j in 0..=n {
            let left = if j >= 1 {
                row[(j - 1) as usize].clone()
            } else {
                LaurentPoly::zero(&vars)
            };
            let right = if j <= n - 1 {
                let qj = LaurentPoly::var_pow(&vars, Q, j as i32);
                &qj * &row[j as usize]
            } else {
                LaurentPoly::zero(&vars)
            };
            next.push(&left + &right);
        }
        row = next;
    }
    Ok(RatFunc::from_poly(row[k as usize].clone()))
}

/// Numeric shifted factorial `(a; q)_k` for integer `k` of either sign.
pub fn poch_num(a: Complex64, q: Complex64, k: i64) -> Complex64 {
    if k >= 0 {
        let mut acc = Complex64::one();
        let mut aq = a;
        for _ in 0..k {
            acc *= Complex64::one() - aq;
            aq *= q;
        }
        acc
    } else {
        let m = -k;
        let shifted = a * q.powi(-(m as i32));
        Complex64::one() / poch_num(shifted, q, m)
    }
}

/// Numeric infinite product `(a; q)_inf` with a certified tail.
///
/// Truncating after `trunc` factors leaves a logarithmic tail bounded by
/// `|a| |q|^trunc / (1 - |q|)`; the call fails when that bound exceeds
/// `tol`.
pub fn poch_inf(a: Complex64, q: Complex64, trunc: usize, tol: f64) -> Result<Complex64> {
    let qn = q.norm();
    if qn >= 1.0 {
        return Err(Error::Invalid(format!(
            "infinite product needs |q| < 1, got |q| = {qn}"
        )));
    }
    let bound = a.norm() * qn.powi(trunc as i32) / (1.0 - qn);
    if !(bound <= tol) {
        return Err(Error::TruncationBudget { bound, tol });
    }
    let mut acc = Complex64::one();
    let mut aq = a;
    for _ in 0..trunc {
        if aq.norm() < 1e-18 {
            break;
        }
        acc *= Complex64::one() - aq;
        aq *= q;
    }
    Ok(acc)
}

/// Numeric basic hypergeometric series for `|q| < 1`.
///
/// Sums until three consecutive terms fall below `tol` relative to the
/// partial sum, failing with [`Error::SeriesBudget`] when `trunc` terms do
/// not suffice.
pub fn phi_numeric(
    upper: &[Complex64],
    lower: &[Complex64],
    q: Complex64,
    z: Complex64,
    trunc: usize,
    tol: f64,
) -> Result<Complex64> {
    if q.norm() >= 1.0 {
        return Err(Error::Invalid(format!(
            "series needs |q| < 1, got |q| = {}",
            q.norm()
        )));
    }
    let e = 1 + lower.len() as i64 - upper.len() as i64;
    let mut sum = Complex64::zero();
    let mut term = Complex64::one();
    let mut qk = Complex64::one();
    let mut small = 0;
    for k in 0..trunc {
        sum += term;
        if term.norm() <= tol * (1.0 + sum.norm()) {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
        let mut ratio = z;
        for &u in upper {
            ratio *= Complex64::one() - u * qk;
        }
        let qk1 = qk * q;
        for &l in lower {
            ratio /= Complex64::one() - l * qk;
        }
        ratio /= Complex64::one() - qk1;
        if e != 0 {
            let sgn = if e.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
            ratio *= sgn * qk.powi(e as i32);
        }
        term *= ratio;
        qk = qk1;
        let _ = k;
    }
    Err(Error::SeriesBudget { terms: trunc })
}

/// Numeric order reduction for a series whose last upper parameter is
/// `b q^m` with `b` also present below.  With upper row
/// `a_1, ..., a_{p-1}, b_{p-1} q^m` and lower row `b_1, ..., b_{p-1}`, the
/// value equals
/// ```text
///     sum_{k=0}^{m} (q^{-m}, a_1..a_{p-1}; q)_k / (q, b_1..b_{p-1}; q)_k
///       * (-y q^m)^k q^{-k(k-1)/2}
///       * phi(a_1 q^k .. a_{p-1} q^k; b_1 q^k .. b_{p-2} q^k; q, y q^{m-k})
/// ```
/// which has one fewer parameter on each row.
pub fn order_reduce_numeric(
    a: &[Complex64],
    b: &[Complex64],
    m: i64,
    y: Complex64,
    q: Complex64,
    trunc: usize,
    tol: f64,
) -> Result<Complex64> {
    assert_eq!(a.len(), b.len(), "need as many a's as b's");
    assert!(m >= 0);
    let p = a.len() + 1;
    let qm = q.powi(m as i32);
    let mut total = Complex64::zero();
    for k in 0..=m {
        let ki = k as i32;
        let mut coeff = poch_num(q.powi(-(m as i32)), q, k);
        for &ai in a {
            coeff *= poch_num(ai, q, k);
        }
        coeff /= poch_num(q, q, k);
        for &bi in b {
            coeff /= poch_num(bi, q, k);
        }
        coeff *= (-y * qm).powi(ki) * q.powi(-ki * (ki - 1) / 2);
        let qk = q.powi(ki);
        let upper: Vec<Complex64> = a.iter().map(|&ai| ai * qk).collect();
        let lower: Vec<Complex64> = b[..p - 2].iter().map(|&bi| bi * qk).collect();
        let inner = phi_numeric(&upper, &lower, q, y * q.powi((m - k) as i32), trunc, tol)?;
        total += coeff * inner;
    }
    Ok(total)
}

/// Numeric q-gamma function for real `0 < q < 1`:
/// `(1-q)^{1-x} (q; q)_inf / (q^x; q)_inf`, with poles at nonpositive
/// integers.
pub fn q_gamma(x: f64, q: f64, trunc: usize, tol: f64) -> Result<f64> {
    if x <= 0.0 && (x - x.round()).abs() < 1e-12 {
        return Err(Error::QGammaPole { x });
    }
    let qc = Complex64::new(q, 0.0);
    let num = poch_inf(qc, qc, trunc, tol)?;
    let den = poch_inf(Complex64::new(q.powf(x), 0.0), qc, trunc, tol)?;
    Ok((1.0 - q).powf(1.0 - x) * (num / den).re)
}

/// Numeric q-beta function `B_q(a, b) = Gamma_q(a) Gamma_q(b) / Gamma_q(a+b)`.
pub fn q_beta(a: f64, b: f64, q: f64, trunc: usize, tol: f64) -> Result<f64> {
    Ok(q_gamma(a, q, trunc, tol)? * q_gamma(b, q, trunc, tol)? / q_gamma(a + b, q, trunc, tol)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Vars;

    fn qt() -> Vars {
        VarSet::coefficients()
    }

    #[test]
    fn poch_splits_multiplicatively() {
        // (a; q)_{m+n} = (a; q)_m (a q^m; q)_n
        let v = qt();
        let a = gens::t_pow(&v, 1);
        let lhs = poch_exact(&a, 5).unwrap();
        let rhs = &poch_exact(&a, 2).unwrap()
            * &poch_exact(&(&a * &gens::q_pow(&v, 2)), 3).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn poch_negative_inverts() {
        let v = qt();
        let a = gens::t_pow(&v, 1);
        let m = poch_exact(&a, -2).unwrap();
        let back = poch_exact(&(&a * &gens::q_pow(&v, -2)), 2).unwrap();
        assert!((&m * &back).is_one());
        // (q; q)_{-1} hits the vanishing factor (1 - q q^{-1})
        assert!(poch_exact(&gens::q(&v), -1).is_err());
    }

    #[test]
    fn termination_detection_is_syntactic() {
        let v = qt();
        let spec = SeriesSpec {
            upper: vec![gens::q_pow(&v, -3), gens::t_pow(&v, 1)],
            lower: vec![gens::t_pow(&v, 2)],
            arg: gens::q(&v),
        };
        assert_eq!(spec.termination_order(), Some(3));
        let spec2 = SeriesSpec {
            upper: vec![gens::t_pow(&v, -1)],
            lower: vec![],
            arg: gens::q(&v),
        };
        assert_eq!(spec2.termination_order(), None);
        assert!(matches!(
            phi_terminating(&spec2),
            Err(Error::NonTerminatingSeries)
        ));
    }

    #[test]
    fn lower_parameter_pole_is_reported() {
        let v = qt();
        let spec = SeriesSpec {
            upper: vec![gens::q_pow(&v, -3)],
            lower: vec![gens::q_pow(&v, -1)],
            arg: gens::q(&v),
        };
        assert!(matches!(
            phi_terminating(&spec),
            Err(Error::LowerParameterPole { index: 0, m: 1 })
        ));
    }

    #[test]
    fn gauss_binomial_small_values() {
        let v = qt();
        let q = gens::q(&v);
        let one = RatFunc::one(&v);
        assert_eq!(gauss_binomial(2, 1).unwrap(), &one + &q);
        // [4 2]_q = 1 + q + 2q^2 + q^3 + q^4
        let q2 = gens::q_pow(&v, 2);
        let q3 = gens::q_pow(&v, 3);
        let q4 = gens::q_pow(&v, 4);
        let expected = &(&(&(&one + &q) + &(&q2 + &q2)) + &q3) + &q4;
        assert_eq!(gauss_binomial(4, 2).unwrap(), expected);
        assert!(gauss_binomial(3, 4).is_err());
    }

    #[test]
    fn gauss_binomial_matches_factorial_form() {
        let v = qt();
        let q = gens::q(&v);
        for g in 0..=6i64 {
            for k in 0..=g {
                let num = poch_exact(&q, g).unwrap();
                let den = &poch_exact(&q, k).unwrap() * &poch_exact(&q, g - k).unwrap();
                assert_eq!(gauss_binomial(g, k).unwrap(), &num / &den);
            }
        }
    }

    #[test]
    fn q_vandermonde_sum() {
        // 2phi1(q^-n, q^-m; c; q, q) = (c q^m; q)_n / (c; q)_n * q^{-mn}
        // for m >= n, checked for generic c = t.
        let v = qt();
        let c = gens::t_pow(&v, 1);
        for (n, m) in [(1i64, 1i64), (1, 2), (2, 2), (2, 3), (3, 4)] {
            let spec = SeriesSpec {
                upper: vec![gens::q_pow(&v, -n), gens::q_pow(&v, -m)],
                lower: vec![c.clone()],
                arg: gens::q(&v),
            };
            let lhs = phi_terminating(&spec).unwrap();
            let rhs = &(&poch_exact(&(&c * &gens::q_pow(&v, m)), n).unwrap()
                / &poch_exact(&c, n).unwrap())
                * &gens::q_pow(&v, -m * n);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn poch_inf_tail_is_certified() {
        let q = Complex64::new(0.5, 0.0);
        let a = Complex64::new(0.7, 0.1);
        let v = poch_inf(a, q, 200, 1e-12).unwrap();
        // Compare against a much deeper truncation.
        let w = poch_inf(a, q, 400, 1e-12).unwrap();
        assert!((v - w).norm() < 1e-14);
        // An absurd budget is rejected, not silently truncated.
        assert!(matches!(
            poch_inf(a, q, 2, 1e-12),
            Err(Error::TruncationBudget { .. })
        ));
    }

    #[test]
    fn q_binomial_theorem() {
        // 1phi0(a; ; q, z) = (a z; q)_inf / (z; q)_inf
        let q = Complex64::new(0.4, 0.0);
        let a = Complex64::new(0.3, 0.2);
        let z = Complex64::new(0.55, -0.1);
        let lhs = phi_numeric(&[a], &[], q, z, 500, 1e-13).unwrap();
        let rhs = poch_inf(a * z, q, 300, 1e-13).unwrap() / poch_inf(z, q, 300, 1e-13).unwrap();
        assert!((lhs - rhs).norm() < 1e-11);
    }

    #[test]
    fn terminating_series_matches_numeric_sum() {
        let v = qt();
        let spec = SeriesSpec {
            upper: vec![gens::q_pow(&v, -2), gens::t_pow(&v, 1)],
            lower: vec![gens::t_pow(&v, 2)],
            arg: gens::q(&v),
        };
        let exact = phi_terminating(&spec).unwrap();
        let (qv, tv): (f64, f64) = (0.3, 0.45);
        let tau = Complex64::new(tv.sqrt(), 0.0);
        let qc = Complex64::new(qv, 0.0);
        let lhs = exact.eval_complex(&[qc, tau]).unwrap();
        let rhs = phi_numeric(
            &[qc.powi(-2), Complex64::new(tv, 0.0)],
            &[Complex64::new(tv * tv, 0.0)],
            qc,
            qc,
            100,
            1e-13,
        )
        .unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn order_reduction_agrees_with_direct_sum() {
        // 2phi1(a, b q^m; b; q, y) via the reduction against the direct
        // series, in a regime where both converge.
        let q = Complex64::new(0.3, 0.0);
        let a = Complex64::new(0.2, 0.1);
        let b = Complex64::new(0.7, 0.0);
        let y = Complex64::new(0.4, -0.2);
        for m in [0i64, 1, 2, 3] {
            let direct =
                phi_numeric(&[a, b * q.powi(m as i32)], &[b], q, y, 500, 1e-13).unwrap();
            let reduced = order_reduce_numeric(&[a], &[b], m, y, q, 500, 1e-13).unwrap();
            assert!(
                (direct - reduced).norm() < 1e-10,
                "m = {m}: {direct} vs {reduced}"
            );
        }
    }

    #[test]
    fn order_reduction_three_by_two() {
        // 3phi2(a1, a2, b2 q^m; b1, b2; q, y) against the direct series.
        let q = Complex64::new(0.25, 0.0);
        let a1 = Complex64::new(0.15, 0.05);
        let a2 = Complex64::new(0.6, 0.0);
        let b1 = Complex64::new(0.45, 0.0);
        let b2 = Complex64::new(0.8, 0.0);
        let y = Complex64::new(0.35, 0.1);
        for m in [1i64, 2] {
            let direct = phi_numeric(
                &[a1, a2, b2 * q.powi(m as i32)],
                &[b1, b2],
                q,
                y,
                500,
                1e-13,
            )
            .unwrap();
            let reduced = order_reduce_numeric(&[a1, a2], &[b1, b2], m, y, q, 500, 1e-13).unwrap();
            assert!(
                (direct - reduced).norm() < 1e-10,
                "m = {m}: {direct} vs {reduced}"
            );
        }
    }

    #[test]
    fn q_gamma_fixed_points_and_recurrence() {
        let q = 0.37;
        let g1 = q_gamma(1.0, q, 400, 1e-12).unwrap();
        let g2 = q_gamma(2.0, q, 400, 1e-12).unwrap();
        assert!((g1 - 1.0).abs() < 1e-12);
        assert!((g2 - 1.0).abs() < 1e-12);
        // Gamma_q(x+1) = (1-q^x)/(1-q) Gamma_q(x)
        let x = 1.7;
        let lhs = q_gamma(x + 1.0, q, 400, 1e-12).unwrap();
        let rhs = (1.0 - q.powf(x)) / (1.0 - q) * q_gamma(x, q, 400, 1e-12).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
        assert!(q_gamma(0.0, q, 400, 1e-12).is_err());
        assert!(q_gamma(-3.0, q, 400, 1e-12).is_err());
    }

    #[test]
    fn q_beta_is_symmetric() {
        let q = 0.41;
        let a = 0.8;
        let b = 1.9;
        let ab = q_beta(a, b, q, 400, 1e-12).unwrap();
        let ba = q_beta(b, a, q, 400, 1e-12).unwrap();
        assert!((ab - ba).abs() < 1e-13);
    }
}
