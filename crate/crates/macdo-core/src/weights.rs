//! Dominant weights in weakly increasing convention and the monomial
//! symmetric basis.
//!
//! A weight `lambda = (lambda_1 <= ... <= lambda_n)` of nonnegative integers
//! indexes both the symmetric polynomials and their separated counterparts.
//! Dominance compares tail sums: `mu <= lambda` iff `|mu| = |lambda|` and
//! ```text
//!     mu_k + mu_{k+1} + ... + mu_n <= lambda_k + ... + lambda_n
//! ```
//! for every `k >= 2`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, Rat, RatFunc, VarSet, Vars};

/// Weakly increasing weight with nonnegative integer parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DominantWeight {
    parts: Vec<i64>,
}

impl DominantWeight {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidWeight {
                detail: "weight must have at least one part".into(),
            });
        }
        for w in parts.windows(2) {
            if w[0] > w[1] {
                return Err(Error::InvalidWeight {
                    detail: format!("parts must be weakly increasing, got {parts:?}"),
                });
            }
        }
        if parts[0] < 0 {
            return Err(Error::InvalidWeight {
                detail: format!("parts must be nonnegative, got {parts:?}"),
            });
        }
        Ok(DominantWeight { parts })
    }

    /// Parse a comma-separated list like `0,0,2`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: std::result::Result<Vec<i64>, _> =
            s.split(',').map(|p| p.trim().parse::<i64>()).collect();
        match parts {
            Ok(parts) => Self::new(parts),
            Err(e) => Err(Error::InvalidWeight {
                detail: format!("cannot parse {s:?}: {e}"),
            }),
        }
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// 1-based part access, matching the index convention of the formulas.
    pub fn part(&self, i: usize) -> i64 {
        self.parts[i - 1]
    }

    /// `lambda_i - lambda_j` with 1-based indices.
    pub fn diff(&self, i: usize, j: usize) -> i64 {
        self.part(i) - self.part(j)
    }

    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// Tail sum `lambda_k + ... + lambda_n` with 1-based `k`.
    pub fn tail_sum(&self, k: usize) -> i64 {
        self.parts[k - 1..].iter().sum()
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

/// Dominance comparison; errors when the weights have different lengths.
pub fn dominance_leq(mu: &DominantWeight, lambda: &DominantWeight) -> Result<bool> {
    if mu.n() != lambda.n() {
        return Err(Error::WeightLengthMismatch {
            left: mu.n(),
            right: lambda.n(),
        });
    }
    if mu.size() != lambda.size() {
        return Ok(false);
    }
    for k in 2..=mu.n() {
        if mu.tail_sum(k) > lambda.tail_sum(k) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All dominant weights `mu <= lambda` in dominance order, `lambda` included.
///
/// The result is sorted so that dominance-larger weights come first; any
/// linear extension of dominance works for triangular elimination, and the
/// tail-sum vector in reverse lexicographic order is one.
pub fn weights_below(lambda: &DominantWeight) -> Vec<DominantWeight> {
    let n = lambda.n();
    let total = lambda.size();
    let mut out = Vec::new();
    // Enumerate weakly increasing nonnegative vectors of length n summing to
    // `total`: choose parts from the largest (last) position downwards.
    let mut parts = vec![0i64; n];
    enumerate(&mut parts, n, total, i64::MAX, &mut |candidate| {
        let w = DominantWeight {
            parts: candidate.to_vec(),
        };
        if dominance_leq(&w, lambda).unwrap() {
            out.push(w);
        }
    });
    out.sort_by(|a, b| {
        let ta: Vec<i64> = (2..=n).map(|k| a.tail_sum(k)).collect();
        let tb: Vec<i64> = (2..=n).map(|k| b.tail_sum(k)).collect();
        tb.cmp(&ta).then_with(|| a.parts.cmp(&b.parts))
    });
    out
}

/// All dominant weights with `n` parts and size at most `total`, ordered by
/// size then lexicographically.
pub fn weights_up_to_size(n: usize, total: i64) -> Vec<DominantWeight> {
    let mut out = Vec::new();
    for s in 0..=total {
        let mut batch = Vec::new();
        let mut parts = vec![0i64; n];
        enumerate(&mut parts, n, s, i64::MAX, &mut |candidate| {
            batch.push(DominantWeight {
                parts: candidate.to_vec(),
            });
        });
        batch.sort_by(|a, b| a.parts.cmp(&b.parts));
        out.extend(batch);
    }
    out
}

/// All dominant weights with `n` parts, each at most `cap`, in
/// lexicographic order.
pub fn weights_with_max_part(n: usize, cap: i64) -> Vec<DominantWeight> {
    let mut out = Vec::new();
    let mut parts = vec![0i64; n];
    fn fill(parts: &mut Vec<i64>, idx: usize, min: i64, cap: i64, out: &mut Vec<DominantWeight>) {
        if idx == parts.len() {
            out.push(DominantWeight {
                parts: parts.clone(),
            });
            return;
        }
        for v in min..=cap {
            parts[idx] = v;
            fill(parts, idx + 1, v, cap, out);
        }
    }
    fill(&mut parts, 0, 0, cap, &mut out);
    out
}

fn enumerate(
    parts: &mut Vec<i64>,
    pos: usize,
    remaining: i64,
    cap: i64,
    emit: &mut impl FnMut(&[i64]),
) {
    if pos == 0 {
        if remaining == 0 {
            emit(parts);
        }
        return;
    }
    if pos == 1 {
        if remaining <= cap {
            parts[0] = remaining;
            emit(parts);
        }
        return;
    }
    // Part at `pos - 1` is the largest remaining; it must carry at least an
    // equal share of the remainder and at most `cap`.
    let min = (remaining + pos as i64 - 1) / pos as i64;
    for v in (min..=remaining.min(cap)).rev() {
        parts[pos - 1] = v;
        enumerate(parts, pos - 1, remaining - v, v, emit);
    }
}

/// Distinct permutations of the multiset of parts of `mu`.
fn distinct_permutations(mu: &DominantWeight) -> Vec<Vec<i64>> {
    let mut values: Vec<i64> = mu.parts.clone();
    values.dedup();
    let mut counts: Vec<(i64, usize)> = values
        .iter()
        .map(|&v| (v, mu.parts.iter().filter(|&&p| p == v).count()))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(mu.n());
    fn rec(
        counts: &mut Vec<(i64, usize)>,
        current: &mut Vec<i64>,
        n: usize,
        out: &mut Vec<Vec<i64>>,
    ) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i].1 == 0 {
                continue;
            }
            counts[i].1 -= 1;
            current.push(counts[i].0);
            rec(counts, current, n, out);
            current.pop();
            counts[i].1 += 1;
        }
    }
    rec(&mut counts, &mut current, mu.n(), &mut out);
    out
}

/// The monomial symmetric polynomial `m_mu` expanded over `vars`, which must
/// carry exactly `mu.n()` main variables.
pub fn monomial_expand(mu: &DominantWeight, vars: &Vars) -> LaurentPoly {
    assert_eq!(vars.main_count(), mu.n(), "variable count mismatch");
    let mut acc = LaurentPoly::zero(vars);
    for perm in distinct_permutations(mu) {
        let mut e = vec![0i32; vars.len()];
        for (i, &p) in perm.iter().enumerate() {
            e[2 + i] = p as i32;
        }
        acc = &acc + &LaurentPoly::monomial(vars, e, Rat::from_integer(1.into()));
    }
    acc
}

/// A symmetric polynomial stored in the monomial basis with coefficients in
/// the field generated by `q` and `tau`.
#[derive(Debug, Clone)]
pub struct SymmetricPoly {
    n: usize,
    coeffs: BTreeMap<DominantWeight, RatFunc>,
}

impl SymmetricPoly {
    pub fn zero(n: usize) -> Self {
        SymmetricPoly {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    /// The single basis element `m_mu` with coefficient one.
    pub fn basis(mu: DominantWeight) -> Self {
        let mut coeffs = BTreeMap::new();
        let vars = VarSet::coefficients();
        coeffs.insert(mu.clone(), RatFunc::one(&vars));
        SymmetricPoly { n: mu.n(), coeffs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn set(&mut self, mu: DominantWeight, c: RatFunc) {
        assert_eq!(mu.n(), self.n);
        if c.is_zero() {
            self.coeffs.remove(&mu);
        } else {
            self.coeffs.insert(mu, c);
        }
    }

    pub fn coeff(&self, mu: &DominantWeight) -> Option<&RatFunc> {
        self.coeffs.get(mu)
    }

    /// Supported weights in print order: dominance-larger weights first.
    pub fn support(&self) -> Vec<&DominantWeight> {
        let mut keys: Vec<&DominantWeight> = self.coeffs.keys().collect();
        keys.sort_by(|a, b| {
            let ta: Vec<i64> = (1..=self.n).map(|k| a.tail_sum(k)).collect();
            let tb: Vec<i64> = (1..=self.n).map(|k| b.tail_sum(k)).collect();
            tb.cmp(&ta).then_with(|| a.parts.cmp(&b.parts))
        });
        keys
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DominantWeight, &RatFunc)> {
        self.coeffs.iter()
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        SymmetricPoly {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(w, v)| (w.clone(), v * c))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            let next = match out.coeffs.get(w) {
                Some(prev) => prev + c,
                None => c.clone(),
            };
            out.set(w.clone(), next);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RatFunc::int(&VarSet::coefficients(), -1)))
    }

    /// Expand into a Laurent polynomial over `vars` together with the common
    /// denominator that was cleared: the value is `poly / den`.
    pub fn expand(&self, vars: &Vars) -> (LaurentPoly, LaurentPoly) {
        assert_eq!(vars.main_count(), self.n);
        let cvars = VarSet::coefficients();
        let mut den = LaurentPoly::one(&cvars);
        let mut dens: Vec<LaurentPoly> = Vec::new();
        for c in self.coeffs.values() {
            if !dens.iter().any(|d| d == c.den()) {
                dens.push(c.den().clone());
            }
        }
        for d in &dens {
            den = &den * d;
        }
        let mut acc = LaurentPoly::zero(vars);
        for (w, c) in &self.coeffs {
            let mut scale = c.num().clone();
            for d in &dens {
                if d != c.den() {
                    scale = &scale * d;
                }
            }
            acc = &acc + &(&scale.promote(vars) * &monomial_expand(w, vars));
        }
        (acc, den)
    }

    pub fn eval_complex(&self, q: Complex64, tau: Complex64, xs: &[Complex64]) -> Result<Complex64> {
        assert_eq!(xs.len(), self.n);
        let vars = VarSet::x_vars(self.n);
        let mut assign = vec![q, tau];
        assign.extend_from_slice(xs);
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, c) in &self.coeffs {
            let cv = c.eval_complex(&[q, tau])?;
            let mv = monomial_expand(w, &vars).eval_complex(&assign);
            acc += cv * mv;
        }
        Ok(acc)
    }
}

impl PartialEq for SymmetricPoly {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.sub(other).is_zero()
    }
}

impl Eq for SymmetricPoly {}

impl fmt::Display for SymmetricPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for w in self.support() {
            let c = &self.coeffs[w];
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "m[{w}]")?;
            } else {
                write!(f, "({c})*m[{w}]")?;
            }
        }
        Ok(())
    }
}

/// Express a symmetric Laurent polynomial over `q, tau, x1..xn` in the
/// monomial basis.  Errors when the polynomial is not symmetric, naming a
/// violated transposition.
pub fn to_monomial_basis(p: &LaurentPoly, n: usize) -> Result<SymmetricPoly> {
    assert_eq!(p.vars().main_count(), n);
    for i in 0..n.saturating_sub(1) {
        if p.swap_mains(i, i + 1) != *p {
            return Err(Error::NotSymmetric { i: i + 1, j: i + 2 });
        }
    }
    let cvars = VarSet::coefficients();
    let mut groups: BTreeMap<DominantWeight, LaurentPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let xpart: Vec<i64> = m.0[2..].iter().map(|&e| e as i64).collect();
        let mut sorted = xpart.clone();
        sorted.sort_unstable();
        if sorted != xpart {
            continue; // handled by its sorted representative
        }
        if sorted[0] < 0 {
            return Err(Error::InvalidWeight {
                detail: format!("negative exponent {sorted:?} cannot index a dominant weight"),
            });
        }
        let w = DominantWeight { parts: sorted };
        let mut e = vec![0i32; 2];
        e[0] = m.0[0];
        e[1] = m.0[1];
        let mono = LaurentPoly::monomial(&cvars, e, c.clone());
        let entry = groups.remove(&w);
        groups.insert(
            w,
            match entry {
                Some(acc) => &acc + &mono,
                None => mono,
            },
        );
    }
    let mut out = SymmetricPoly::zero(n);
    for (w, c) in groups {
        out.set(w, RatFunc::from_poly(c));
    }
    Ok(out)
}
