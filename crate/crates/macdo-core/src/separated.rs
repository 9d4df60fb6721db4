//! Separated one-variable polynomials attached to a dominant weight.
//!
//! For a weight `lambda` with `n` parts, set `m_j = lambda_{j+1} - lambda_j`
//! and
//! ```text
//!     b_j = q^(lambda_1 - lambda_{j+1} + 1) t^-j ,   j = 1..n-1 ,
//!     a_j = b_j q^(m_j) = q^(lambda_1 - lambda_j + 1) t^-j ,   j = 1..n .
//! ```
//! The separated polynomial is the terminating part of
//! ```text
//!     phi_lambda(y) = y^(lambda_1) (y; q)_{1-ng}
//!         nphi_{n-1}(a_1, ..., a_n; b_1, ..., b_{n-1}; q, y) ,
//! ```
//! a polynomial `sum_{k=lambda_1}^{lambda_n} chi_k y^k` whose coefficients
//! are computed here by three independent routes: a terminating
//! `(n+1)phi_n` per coefficient, a finite multiple sum of Lauricella type
//! for the whole polynomial, and closed products for the edge coefficients.
//! The polynomial satisfies one q-difference equation driven by the full
//! eigenvalue vector of `lambda`; products of separated polynomials solve
//! the spectral problem of the commuting operator family.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::{gens, LaurentPoly, RatFunc, VarSet, Vars};
use crate::macdonald::eigenvalues;
use crate::qseries::{phi_numeric, phi_terminating, poch_exact, poch_inf, SeriesSpec};
use crate::weights::DominantWeight;

/// The exponent differences and series parameters of a weight.
#[derive(Debug, Clone)]
pub struct SeparationParams {
    /// `m_j = lambda_{j+1} - lambda_j`, length `n - 1`.
    pub m: Vec<i64>,
    /// `b_1 .. b_{n-1}` over the coefficient field.
    pub b: Vec<RatFunc>,
    /// `a_1 .. a_n` over the coefficient field.
    pub a: Vec<RatFunc>,
}

/// Series parameters of `lambda` over the coefficient generators.
pub fn separation_params(lambda: &DominantWeight) -> SeparationParams {
    let n = lambda.n();
    let v = VarSet::coefficients();
    let m: Vec<i64> = (1..n).map(|j| lambda.part(j + 1) - lambda.part(j)).collect();
    let b: Vec<RatFunc> = (1..n)
        .map(|j| gens::q_t_monomial(&v, lambda.part(1) - lambda.part(j + 1) + 1, -(j as i64)))
        .collect();
    let a: Vec<RatFunc> = (1..=n)
        .map(|j| gens::q_t_monomial(&v, lambda.part(1) - lambda.part(j) + 1, -(j as i64)))
        .collect();
    SeparationParams { m, b, a }
}

/// Series parameters of a three-part weight in their reduced form, written
/// against the top exponent differences.  Agrees with
/// [`separation_params`] as an unordered pair of parameter multisets.
pub fn reduced_params_n3(lambda: &DominantWeight) -> Result<(Vec<RatFunc>, Vec<RatFunc>)> {
    if lambda.n() != 3 {
        return Err(Error::InvalidWeight {
            detail: format!("reduced parameters need three parts, got {}", lambda.n()),
        });
    }
    let v = VarSet::coefficients();
    let d31 = lambda.part(3) - lambda.part(1);
    let d21 = lambda.part(2) - lambda.part(1);
    let a = vec![
        gens::q_t_monomial(&v, 1 - d31, -3),
        gens::q_t_monomial(&v, 1 - d21, -2),
        gens::q_t_monomial(&v, 1, -1),
    ];
    let b = vec![
        gens::q_t_monomial(&v, 1 - d31, -2),
        gens::q_t_monomial(&v, 1 - d21, -1),
    ];
    Ok((a, b))
}

/// A separated polynomial: exact coefficients `chi_k` for
/// `k = lambda_1 ..= lambda_n`.
#[derive(Debug, Clone)]
pub struct SeparatedPoly {
    lambda: DominantWeight,
    chi: Vec<RatFunc>,
}

impl SeparatedPoly {
    pub fn lambda(&self) -> &DominantWeight {
        &self.lambda
    }

    /// Lowest represented power of `y`.
    pub fn k_min(&self) -> i64 {
        self.lambda.part(1)
    }

    /// Highest represented power of `y`.
    pub fn k_max(&self) -> i64 {
        self.lambda.part(self.lambda.n())
    }

    /// Coefficient of `y^k`, zero outside the window.
    pub fn chi(&self, k: i64) -> RatFunc {
        let v = VarSet::coefficients();
        if k < self.k_min() || k > self.k_max() {
            return RatFunc::zero(&v);
        }
        self.chi[(k - self.k_min()) as usize].clone()
    }

    pub fn coefficients(&self) -> &[RatFunc] {
        &self.chi
    }

    /// The polynomial as a rational function over generators that include a
    /// main variable named `name`.
    pub fn as_ratfunc(&self, vars: &Vars, name: &str) -> RatFunc {
        let idx = vars
            .index_of(name)
            .unwrap_or_else(|| panic!("no generator named {name}"));
        let mut acc = RatFunc::zero(vars);
        for (i, c) in self.chi.iter().enumerate() {
            let k = self.k_min() + i as i64;
            let yk = RatFunc::from_poly(LaurentPoly::var_pow(vars, idx, k as i32));
            acc = &acc + &(&c.promote(vars) * &yk);
        }
        acc
    }

    /// Numeric evaluation at complex `y` with real `0 < q, t`.
    pub fn eval(&self, y: Complex64, q: f64, t: f64) -> Result<Complex64> {
        let qc = Complex64::new(q, 0.0);
        let tau = Complex64::new(t.sqrt(), 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.chi.iter().enumerate() {
            let k = self.k_min() + i as i64;
            acc += c.eval_complex(&[qc, tau])? * y.powi(k as i32);
        }
        Ok(acc)
    }

    /// Exact evaluation at `y = t^n`, by substituting into the coefficients.
    pub fn eval_at_t_power(&self, power: i64) -> RatFunc {
        let v = VarSet::coefficients();
        let mut acc = RatFunc::zero(&v);
        for (i, c) in self.chi.iter().enumerate() {
            let k = self.k_min() + i as i64;
            acc = &acc + &(c * &gens::t_pow(&v, power * k));
        }
        acc
    }
}

impl fmt::Display for SeparatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut wrote = false;
        for (i, c) in self.chi.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.k_min() + i as i64;
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            wrote = true;
            let ypow = match k {
                0 => String::new(),
                1 => "y".to_string(),
                _ => format!("y^{k}"),
            };
            if ypow.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{ypow}")?;
            } else {
                write!(f, "({c})*{ypow}")?;
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A value lies in the coefficient field proper (only integer powers of
/// `t`) exactly when it is invariant under `tau -> -tau`.
fn check_even_tau(r: &RatFunc, context: &str) -> Result<()> {
    if r.negate_tau() != *r {
        return Err(Error::OddTauExponent {
            context: context.to_string(),
        });
    }
    Ok(())
}

/// Expansion coefficient `chi_k` as a terminating series:
/// ```text
///     chi_k = (q^-1 t^n)^(lambda_1 - k)
///             (q^-1 t^n; q)_(k - lambda_1) / (q; q)_(k - lambda_1)
///             (n+1)phi_n(q^(lambda_1 - k), a_1..a_n;
///                        q^(lambda_1 - k + 2) t^-n, b_1..b_{n-1}; q, q)
/// ```
pub fn chi_coefficient(lambda: &DominantWeight, k: i64) -> Result<RatFunc> {
    let n = lambda.n() as i64;
    let l1 = lambda.part(1);
    let ln = lambda.part(lambda.n());
    if k < l1 || k > ln {
        return Ok(RatFunc::zero(&VarSet::coefficients()));
    }
    let v = VarSet::coefficients();
    let params = separation_params(lambda);
    let qtn = gens::q_t_monomial(&v, -1, n); // q^-1 t^n
    let mut upper = vec![gens::q_pow(&v, l1 - k)];
    upper.extend(params.a.iter().cloned());
    let mut lower = vec![gens::q_t_monomial(&v, l1 - k + 2, -n)];
    lower.extend(params.b.iter().cloned());
    let spec = SeriesSpec {
        upper,
        lower,
        arg: gens::q(&v),
    };
    let series = phi_terminating(&spec)?;
    let pre = &qtn.powi(l1 - k)?
        * &(&poch_exact(&qtn, k - l1)? / &poch_exact(&gens::q(&v), k - l1)?);
    let chi = &pre * &series;
    check_even_tau(&chi, &format!("chi_{k} of weight {lambda}"))?;
    Ok(chi)
}

/// The separated polynomial, one terminating series per coefficient.
pub fn phi_via_chi(lambda: &DominantWeight) -> Result<SeparatedPoly> {
    let l1 = lambda.part(1);
    let ln = lambda.part(lambda.n());
    let mut chi = Vec::with_capacity((ln - l1 + 1) as usize);
    for k in l1..=ln {
        chi.push(chi_coefficient(lambda, k)?);
    }
    let phi = SeparatedPoly {
        lambda: lambda.clone(),
        chi,
    };
    if !phi.chi(l1).is_one() {
        return Err(Error::Invalid(format!(
            "lowest coefficient of phi_{lambda} is not one"
        )));
    }
    Ok(phi)
}

/// The separated polynomial as one finite Lauricella-type multiple sum:
/// ```text
///     phi_lambda(y) = y^(lambda_1)
///       [ prod_{j=1}^{n-1} (q^(lambda_1 - lambda_{n-j+1} + 1) t^(j-n); q)_(lambda_{n-j+1} - lambda_{n-j}) ]^-1
///       sum_{k_1=0}^{lambda_n - lambda_{n-1}} ... sum_{k_{n-1}=0}^{lambda_2 - lambda_1}
///         (q t^-n q^(lambda_1 - lambda_n + K) y; q)_(lambda_n - lambda_1 - K) (y; q)_K
///         prod_{j=1}^{n-1} (q^(lambda_{n-j} - lambda_{n-j+1}); q)_(k_j)
///                          (q t^(j-n) q^(lambda_1 - lambda_{n-j}))^(k_j) / (q; q)_(k_j)
/// ```
/// with `K = k_1 + ... + k_{n-1}`.
pub fn phi_via_lauricella(lambda: &DominantWeight) -> Result<SeparatedPoly> {
    let n = lambda.n();
    let l1 = lambda.part(1);
    let ln = lambda.part(n);
    let yv = VarSet::with_mains(&["y"]);
    let y = gens::var(&yv, "y");
    let q = gens::q(&yv);

    // Constant prefactor.
    let mut pref = RatFunc::one(&yv);
    for j in 1..n {
        let base = gens::q_t_monomial(
            &yv,
            l1 - lambda.part(n - j + 1) + 1,
            j as i64 - n as i64,
        );
        pref = &pref * &poch_exact(&base, lambda.part(n - j + 1) - lambda.part(n - j))?;
    }
    if pref.is_zero() {
        return Err(Error::Invalid(format!(
            "vanishing normalisation in the multiple-sum form for {lambda}"
        )));
    }
    let pref_inv = pref.inverse()?;

    // Odometer over k_1 .. k_{n-1}, k_j <= lambda_{n-j+1} - lambda_{n-j}.
    // Every term denominator (q; q)_(k_1) ... (q; q)_(k_{n-1}) divides the
    // one at the bounds, so the sum accumulates plain polynomials over that
    // common denominator and reduces once at the end.
    let bounds: Vec<i64> = (1..n)
        .map(|j| lambda.part(n - j + 1) - lambda.part(n - j))
        .collect();
    let mut ks = vec![0i64; n - 1];
    let mut sum_num = LaurentPoly::zero(&yv);
    loop {
        let kk: i64 = ks.iter().sum();
        // (q t^-n q^(lambda_1 - lambda_n + K) y; q)_(lambda_n - lambda_1 - K)
        let base1 = &gens::q_t_monomial(&yv, 1 + l1 - ln + kk, -(n as i64)) * &y;
        let mut term = poch_exact(&base1, ln - l1 - kk)?;
        term = &term * &poch_exact(&y, kk)?;
        for ((j, &kj), &bound) in (1..n).zip(ks.iter()).zip(bounds.iter()) {
            let upper = gens::q_pow(&yv, lambda.part(n - j) - lambda.part(n - j + 1));
            term = &term * &poch_exact(&upper, kj)?;
            let z = gens::q_t_monomial(&yv, 1 + l1 - lambda.part(n - j), j as i64 - n as i64);
            term = &term * &z.powi(kj)?;
            // (q^(k_j + 1); q)_(bound - k_j) = (q; q)_(bound) / (q; q)_(k_j)
            term = &term * &poch_exact(&gens::q_pow(&yv, kj + 1), bound - kj)?;
        }
        if !term.den().is_one() {
            return Err(Error::Invalid(format!(
                "unexpected denominator in a multiple-sum term for {lambda}"
            )));
        }
        sum_num = &sum_num + term.num();

        // Advance the odometer.
        let mut pos = 0;
        loop {
            if pos == ks.len() {
                break;
            }
            ks[pos] += 1;
            if ks[pos] <= bounds[pos] {
                break;
            }
            ks[pos] = 0;
            pos += 1;
        }
        if pos == ks.len() {
            break;
        }
    }

    let mut common = LaurentPoly::one(&yv);
    for &bound in &bounds {
        common = &common * poch_exact(&q, bound)?.num();
    }
    let y_l1 = RatFunc::from_poly(LaurentPoly::var_pow(&yv, 2, l1 as i32));
    let sum = RatFunc::new(sum_num, common)?;
    let full = &(&y_l1 * &pref_inv) * &sum;

    // Extract coefficients of powers of y; the window must be
    // lambda_1 ..= lambda_n.
    if !full.den().is_free_of(2) {
        return Err(Error::Invalid(format!(
            "denominator of the multiple-sum form for {lambda} involves y"
        )));
    }
    let mut chi = vec![RatFunc::zero(&VarSet::coefficients()); (ln - l1 + 1) as usize];
    let cvars = VarSet::coefficients();
    for (mono, c) in full.num().terms() {
        let k = mono.0[2] as i64;
        if k < l1 || k > ln {
            return Err(Error::Invalid(format!(
                "power y^{k} outside the window [{l1}, {ln}] for {lambda}"
            )));
        }
        let mut e = vec![0i32; cvars.len()];
        e[0] = mono.0[0];
        e[1] = mono.0[1];
        let piece = RatFunc::new(
            LaurentPoly::monomial(&cvars, e, c.clone()),
            full.den().promote(&cvars),
        )?;
        chi[(k - l1) as usize] = &chi[(k - l1) as usize] + &piece;
    }
    for (i, c) in chi.iter().enumerate() {
        check_even_tau(c, &format!("multiple-sum chi_{} of {lambda}", l1 + i as i64))?;
    }
    Ok(SeparatedPoly {
        lambda: lambda.clone(),
        chi,
    })
}

/// Closed products for the edge coefficients `(chi_{lambda_1}, chi_{lambda_n})`:
/// the lowest is one, the highest is
/// ```text
///     chi_(lambda_n) = t^(n lambda_1 - |lambda|)
///       prod_{j=1}^{n-1} (t^j; q)_(lambda_j - lambda_1) (t^j; q)_(lambda_n - lambda_{n-j})
///                      / (t^j; q)_(lambda_{j+1} - lambda_1) / (t^j; q)_(lambda_n - lambda_{n-j+1})
/// ```
pub fn chi_closed_forms(lambda: &DominantWeight) -> Result<(RatFunc, RatFunc)> {
    let n = lambda.n();
    let v = VarSet::coefficients();
    let mut top = gens::t_pow(&v, n as i64 * lambda.part(1) - lambda.size());
    for j in 1..n {
        let tj = gens::t_pow(&v, j as i64);
        top = &top * &poch_exact(&tj, lambda.part(j) - lambda.part(1))?;
        top = &top * &poch_exact(&tj, lambda.part(n) - lambda.part(n - j))?;
        top = &top / &poch_exact(&tj, lambda.part(j + 1) - lambda.part(1))?;
        top = &top / &poch_exact(&tj, lambda.part(n) - lambda.part(n - j + 1))?;
    }
    Ok((RatFunc::one(&v), top))
}

/// Closed product for the principal value
/// ```text
///     phi_lambda(t^n) = t^(n lambda_1) (t^n; q)_(lambda_n - lambda_1)
///       prod_{j=1}^{n-1} (t^j; q)_(lambda_j - lambda_1)
///                      / (t^j; q)_(lambda_{j+1} - lambda_1)
/// ```
pub fn phi_at_t_power_n(lambda: &DominantWeight) -> Result<RatFunc> {
    let n = lambda.n();
    let v = VarSet::coefficients();
    let mut acc = gens::t_pow(&v, n as i64 * lambda.part(1));
    acc = &acc
        * &poch_exact(
            &gens::t_pow(&v, n as i64),
            lambda.part(n) - lambda.part(1),
        )?;
    for j in 1..n {
        let tj = gens::t_pow(&v, j as i64);
        acc = &acc * &poch_exact(&tj, lambda.part(j) - lambda.part(1))?;
        acc = &acc / &poch_exact(&tj, lambda.part(j + 1) - lambda.part(1))?;
    }
    Ok(acc)
}

/// Residual of the q-difference equation
/// ```text
///     sum_{k=0}^{n} (-1)^k t^(-(n-1)k/2) (1 - q^k t^-k y)
///         (y; q)_k (q^(k+1) t^-n y; q)_(n-k)
///         h_{n-k;lambda} phi_lambda(q^k y)  =  0 ,
/// ```
/// returned as an exact rational function in `q, tau, y` (zero iff the
/// equation holds).
pub fn separation_residual(lambda: &DominantWeight) -> Result<RatFunc> {
    let n = lambda.n();
    let yv = VarSet::with_mains(&["y"]);
    let yidx = 2;
    let y = gens::var(&yv, "y");
    let one = RatFunc::one(&yv);
    let phi = phi_via_chi(lambda)?.as_ratfunc(&yv, "y");
    let h = eigenvalues(lambda);
    let h_at = |k: usize| -> RatFunc {
        if k == 0 {
            RatFunc::one(&VarSet::coefficients())
        } else {
            h[k - 1].clone()
        }
    };

    let mut acc = RatFunc::zero(&yv);
    for k in 0..=n {
        let ki = k as i64;
        let sign = if k % 2 == 1 { -1 } else { 1 };
        let mut term = RatFunc::int(&yv, sign);
        term = &term * &gens::tau_pow(&yv, -((n as i64 - 1) * ki));
        term = &term * &(&one - &(&gens::q_t_monomial(&yv, ki, -ki) * &y));
        term = &term * &poch_exact(&y, ki)?;
        let base = &gens::q_t_monomial(&yv, ki + 1, -(n as i64)) * &y;
        term = &term * &poch_exact(&base, n as i64 - ki)?;
        term = &term * &h_at(n - k).promote(&yv);
        term = &term * &phi.q_shift(yidx, ki);
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Check the spectral problem for the product
/// `Phi(y_1..y_n) = y_n^(|lambda|) prod_{k=1}^{n-1} phi_lambda(y_k)`:
/// shifting `y_n` multiplies `Phi` by `h_{n;lambda} = q^(|lambda|)`, and for
/// each `j < n` the difference equation in `y_j` annihilates `Phi`.
pub fn spectral_equations_hold(lambda: &DominantWeight) -> Result<bool> {
    let n = lambda.n();
    assert!(n >= 2, "spectral problem needs at least two variables");
    let names: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let vars = VarSet::with_mains(&refs);
    let one = RatFunc::one(&vars);

    let phi = phi_via_chi(lambda)?;
    let mut big = RatFunc::from_poly(LaurentPoly::var_pow(
        &vars,
        2 + n - 1,
        lambda.size() as i32,
    ));
    for k in 0..n - 1 {
        big = &big * &phi.as_ratfunc(&vars, &names[k]);
    }

    let h = eigenvalues(lambda);
    let h_at = |k: usize| -> RatFunc {
        if k == 0 {
            RatFunc::one(&VarSet::coefficients())
        } else {
            h[k - 1].clone()
        }
    };

    // y_n shift: Phi(.., q y_n) = q^(|lambda|) Phi.
    let shifted = big.q_shift(2 + n - 1, 1);
    if &shifted - &(&big * &h_at(n).promote(&vars)) != RatFunc::zero(&vars) {
        return Ok(false);
    }

    // Difference equation in each separation variable.
    for j in 0..n - 1 {
        let yj = gens::var(&vars, &names[j]);
        let mut acc = RatFunc::zero(&vars);
        for k in 0..=n {
            let ki = k as i64;
            let sign = if k % 2 == 1 { -1 } else { 1 };
            let mut term = RatFunc::int(&vars, sign);
            term = &term * &gens::tau_pow(&vars, -((n as i64 - 1) * ki));
            term = &term * &(&one - &(&gens::q_t_monomial(&vars, ki, -ki) * &yj));
            term = &term * &poch_exact(&yj, ki)?;
            let base = &gens::q_t_monomial(&vars, ki + 1, -(n as i64)) * &yj;
            term = &term * &poch_exact(&base, n as i64 - ki)?;
            term = &term * &h_at(n - k).promote(&vars);
            term = &term * &big.q_shift(2 + j, ki);
            acc = &acc + &term;
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Numeric evaluation of the defining product-and-series form
/// ```text
///     y^(lambda_1) (y; q)_inf / (q t^-n y; q)_inf
///         nphi_{n-1}(a_1..a_n; b_1..b_{n-1}; q, y)
/// ```
/// valid for `|y| < 1`, `0 < q < 1`.
pub fn phi_numeric_definition(
    lambda: &DominantWeight,
    y: Complex64,
    q: f64,
    t: f64,
    trunc: usize,
    tol: f64,
) -> Result<Complex64> {
    let n = lambda.n();
    let params = separation_params(lambda);
    let qc = Complex64::new(q, 0.0);
    let tau = Complex64::new(t.sqrt(), 0.0);
    let assign = [qc, tau];
    let upper: Vec<Complex64> = params
        .a
        .iter()
        .map(|a| a.eval_complex(&assign))
        .collect::<Result<_>>()?;
    let lower: Vec<Complex64> = params
        .b
        .iter()
        .map(|b| b.eval_complex(&assign))
        .collect::<Result<_>>()?;
    let series = phi_numeric(&upper, &lower, qc, y, trunc, tol)?;
    let num = poch_inf(y, qc, trunc, tol)?;
    let den = poch_inf(Complex64::new(q * t.powi(-(n as i32)), 0.0) * y, qc, trunc, tol)?;
    Ok(y.powi(lambda.part(1) as i32) * num / den * series)
}
