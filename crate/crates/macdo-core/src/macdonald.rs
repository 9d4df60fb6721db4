//! Commuting q-difference operators and their polynomial eigenfunctions.
//!
//! For `n` variables the operator of order `i` acts on symmetric Laurent
//! polynomials as
//! ```text
//!     H_i = sum_{|J| = i}  prod_{j in J, k notin J} v_jk
//!                          prod_{j in J} T_{q,x_j} ,
//!     v_jk = (t^(1/2) x_j - t^(-1/2) x_k) / (x_j - x_k) ,
//! ```
//! where `T_{q,x_j}` scales `x_j` by `q`.  The polynomials `P_lambda` are
//! the unique eigenfunctions that are triangular in the monomial basis with
//! unit leading coefficient; the eigenvalue of `H_i` is the elementary
//! symmetric function `e_i` of
//! ```text
//!     mu_j = q^(lambda_j) t^(j - (n+1)/2) ,     j = 1..n .
//! ```

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, Rat, RatFunc, VarSet, Q, TAU};
use crate::weights::{
    dominance_leq, to_monomial_basis, weights_below, DominantWeight, SymmetricPoly,
};

/// Eigenvalues `h_{1;lambda}, ..., h_{n;lambda}` of `H_1, ..., H_n`.
///
/// `mu_j = q^(lambda_j) tau^(2j - n - 1)` is a Laurent monomial, so each
/// elementary symmetric function is an exact Laurent polynomial in `q` and
/// `tau`.
pub fn eigenvalues(lambda: &DominantWeight) -> Vec<RatFunc> {
    let n = lambda.n();
    let vars = VarSet::coefficients();
    let mus: Vec<LaurentPoly> = (1..=n)
        .map(|j| {
            let mut e = vec![0i32; vars.len()];
            e[Q] = lambda.part(j) as i32;
            e[TAU] = (2 * j as i64 - n as i64 - 1) as i32;
            LaurentPoly::monomial(&vars, e, Rat::from_integer(1.into()))
        })
        .collect();
    // Build all e_k at once from prod_j (1 + mu_j z).
    let mut es: Vec<LaurentPoly> = vec![LaurentPoly::zero(&vars); n + 1];
    es[0] = LaurentPoly::one(&vars);
    for mu in &mus {
        for k in (1..=n).rev() {
            let bump = &es[k - 1] * mu;
            es[k] = &es[k] + &bump;
        }
    }
    es.into_iter().skip(1).map(RatFunc::from_poly).collect()
}

fn subsets_of_size(n: usize, i: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(i);
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for j in start..=n - left {
            cur.push(j);
            rec(j + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(0, n, i, &mut cur, &mut out);
    out
}

/// Apply `H_i` to a symmetric polynomial in the monomial basis.
///
/// The computation is fraction free: with `D = prod_{j != k} (x_j - x_k)`
/// over ordered pairs, each summand is multiplied by `D`, shifts are applied
/// to the numerator polynomial, and the final sum is divided by `D` exactly.
/// Failure of that division, or of symmetry or triangular support in the
/// result, is reported as an error rather than repaired.
pub fn apply_h(n: usize, i: usize, f: &SymmetricPoly) -> Result<SymmetricPoly> {
    assert!(n >= 1 && (1..=n).contains(&i), "operator order out of range");
    assert_eq!(f.n(), n);
    let vars = VarSet::x_vars(n);
    let x = |j: usize| 2 + j; // main index -> generator index

    let (fpoly, fden) = f.expand(&vars);

    // D = prod over ordered pairs (j, k), j != k, of (x_j - x_k).
    let mut dpoly = LaurentPoly::one(&vars);
    for j in 0..n {
        for k in 0..n {
            if j != k {
                let xj = LaurentPoly::var_pow(&vars, x(j), 1);
                let xk = LaurentPoly::var_pow(&vars, x(k), 1);
                dpoly = &dpoly * &(&xj - &xk);
            }
        }
    }

    let mut sum = LaurentPoly::zero(&vars);
    for subset in subsets_of_size(n, i) {
        let in_j = |v: usize| subset.contains(&v);
        // N_J carries tau x_j - tau^{-1} x_k on crossing pairs and plain
        // x_j - x_k on all others, so N_J / D = prod v_jk.
        let mut nj = LaurentPoly::one(&vars);
        for j in 0..n {
            for k in 0..n {
                if j == k {
                    continue;
                }
                let factor = if in_j(j) && !in_j(k) {
                    let mut ej = vec![0i32; vars.len()];
                    ej[TAU] = 1;
                    ej[x(j)] = 1;
                    let mut ek = vec![0i32; vars.len()];
                    ek[TAU] = -1;
                    ek[x(k)] = 1;
                    &LaurentPoly::monomial(&vars, ej, Rat::from_integer(1.into()))
                        - &LaurentPoly::monomial(&vars, ek, Rat::from_integer(1.into()))
                } else {
                    let xj = LaurentPoly::var_pow(&vars, x(j), 1);
                    let xk = LaurentPoly::var_pow(&vars, x(k), 1);
                    &xj - &xk
                };
                nj = &nj * &factor;
            }
        }
        let mut shifted = fpoly.clone();
        for &j in &subset {
            shifted = shifted.q_shift(x(j), 1);
        }
        sum = &sum + &(&nj * &shifted);
    }

    let quotient = sum.exact_div(&dpoly).ok_or_else(|| Error::CancellationFailure {
        detail: format!("H_{i} on n = {n} left a remainder after dividing by the Vandermonde product"),
    })?;

    let mut result = to_monomial_basis(&quotient, n)?;
    let fden_rf = RatFunc::new(LaurentPoly::one(fden.vars()), fden)?;
    result = result.scale(&fden_rf);
    Ok(result)
}

/// Check triangularity of an operator image: every weight in `image` must
/// lie below some weight of `input` in dominance order.
fn check_triangular(
    input: &SymmetricPoly,
    image: &SymmetricPoly,
) -> Result<()> {
    for w in image.support() {
        let mut ok = false;
        for v in input.support() {
            if dominance_leq(w, v)? {
                ok = true;
                break;
            }
        }
        if !ok {
            let inputs: Vec<String> = input.support().iter().map(|v| v.to_string()).collect();
            return Err(Error::TriangularityViolation {
                input: inputs.join(" | "),
                output: w.to_string(),
            });
        }
    }
    Ok(())
}

/// The Macdonald polynomial `P_lambda` in the monomial basis.
///
/// Solved by triangular elimination of `(H_1 - h_{1;lambda}) P = 0` over the
/// dominance ideal of `lambda`, with unit coefficient on `m_lambda`.  When
/// two weights share the `H_1` eigenvalue, the first higher operator that
/// separates them is used for that row; if the whole eigenvalue vector
/// coincides the weights are genuinely degenerate and an error is returned.
/// The result is verified to be an `H_2` eigenfunction before it is handed
/// back (for `n >= 2`).
pub fn macdonald_p(lambda: &DominantWeight) -> Result<SymmetricPoly> {
    let n = lambda.n();
    let below = weights_below(lambda);
    let h_lambda = eigenvalues(lambda);

    // Operator images of the basis elements, computed lazily per order k.
    let mut images: BTreeMap<usize, BTreeMap<DominantWeight, SymmetricPoly>> = BTreeMap::new();
    let mut image = |k: usize, mu: &DominantWeight| -> Result<SymmetricPoly> {
        let per_k = images.entry(k).or_default();
        if let Some(hit) = per_k.get(mu) {
            return Ok(hit.clone());
        }
        let img = apply_h(n, k, &SymmetricPoly::basis(mu.clone()))?;
        check_triangular(&SymmetricPoly::basis(mu.clone()), &img)?;
        per_k.insert(mu.clone(), img.clone());
        Ok(img)
    };

    let cvars = VarSet::coefficients();
    let mut coeffs: BTreeMap<DominantWeight, RatFunc> = BTreeMap::new();
    coeffs.insert(lambda.clone(), RatFunc::one(&cvars));

    for nu in below.iter().skip(1) {
        // Find an operator order whose eigenvalues separate nu from lambda.
        let h_nu = eigenvalues(nu);
        let mut sep = None;
        for k in 1..=n {
            if h_nu[k - 1] != h_lambda[k - 1] {
                sep = Some(k);
                break;
            }
        }
        let k = sep.ok_or_else(|| Error::DegenerateEigenvalue {
            a: lambda.to_string(),
            b: nu.to_string(),
        })?;
        // Row nu of (H_k - h_{k;lambda}) P = 0:
        //   kappa_nu (h_{k;nu} - h_{k;lambda}) + sum_{mu > nu} A_k[nu][mu] kappa_mu = 0.
        let mut rhs = RatFunc::zero(&cvars);
        for (mu, kappa_mu) in coeffs.iter() {
            if mu == nu {
                continue;
            }
            let img = image(k, mu)?;
            if let Some(a) = img.coeff(nu) {
                rhs = &rhs + &(a * kappa_mu);
            }
        }
        let gap = &h_lambda[k - 1] - &h_nu[k - 1];
        debug_assert!(!gap.is_zero());
        coeffs.insert(nu.clone(), &rhs / &gap);
    }

    let mut p = SymmetricPoly::zero(n);
    for (w, c) in coeffs {
        p.set(w, c);
    }

    // Diagonal sanity: H_1 m_mu must carry coefficient h_{1;mu} on m_mu.
    let img_l = image(1, lambda)?;
    if img_l.coeff(lambda) != Some(&eigenvalues(lambda)[0]) {
        return Err(Error::CancellationFailure {
            detail: format!("diagonal of H_1 at {lambda} is not the eigenvalue"),
        });
    }

    if n >= 2 {
        let hp = apply_h(n, 2, &p)?;
        if hp != p.scale(&h_lambda[1]) {
            return Err(Error::CancellationFailure {
                detail: format!("P_{lambda} failed the H_2 eigenfunction check"),
            });
        }
    }
    Ok(p)
}

/// True when `H_i` and `H_j` commute on `f`.
pub fn commutes_on(n: usize, i: usize, j: usize, f: &SymmetricPoly) -> Result<bool> {
    let ij = apply_h(n, i, &apply_h(n, j, f)?)?;
    let ji = apply_h(n, j, &apply_h(n, i, f)?)?;
    Ok(ij == ji)
}
