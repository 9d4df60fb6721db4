//! Sparse multivariate Laurent polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector, ordered in
//! graded lexicographic order: larger total degree wins, ties break on the
//! first differing exponent with earlier generators weighing more.  All
//! arithmetic is exact over `BigRational` coefficients; exponents may be
//! negative.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::BigRational;
use num::bigint::BigInt;
use num::integer::Integer;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use super::vars::{same_vars, Vars, Q, TAU};

/// Exact rational coefficient.
pub type Rat = BigRational;

/// Convenience constructor for small rational constants.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector of one term, compared in graded lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<i32>);

impl Mono {
    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse Laurent polynomial attached to a generator set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Mono, Rat>,
}

impl LaurentPoly {
    pub fn zero(vars: &Vars) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rat::one())
    }

    pub fn constant(vars: &Vars, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(vec![0; vars.len()]), c);
        }
        LaurentPoly {
            vars: vars.clone(),
            terms,
        }
    }

    /// The single term `c * prod_i gen_i^exps[i]`.
    pub fn monomial(vars: &Vars, exps: Vec<i32>, c: Rat) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(exps), c);
        }
        LaurentPoly {
            vars: vars.clone(),
            terms,
        }
    }

    /// The generator at `idx` raised to `exp`.
    pub fn var_pow(vars: &Vars, idx: usize, exp: i32) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[idx] = exp;
        Self::monomial(vars, exps, Rat::one())
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.0.iter().all(|&e| e == 0) && c.is_one())
    }

    /// True when the polynomial is a single term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    /// Leading term in graded lexicographic order.
    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    fn check_vars(&self, other: &Self) {
        assert!(
            same_vars(&self.vars, &other.vars),
            "mixed generator sets: {:?} vs {:?}",
            self.vars.names(),
            other.vars.names()
        );
    }

    fn insert_add(terms: &mut BTreeMap<Mono, Rat>, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn mul_rat(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Componentwise minimum exponent over all terms (zero vector if empty).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut mins = vec![0; self.vars.len()];
        let mut first = true;
        for m in self.terms.keys() {
            if first {
                mins.copy_from_slice(&m.0);
                first = false;
            } else {
                for (acc, &e) in mins.iter_mut().zip(m.0.iter()) {
                    *acc = (*acc).min(e);
                }
            }
        }
        mins
    }

    /// Multiply by the monomial with exponent vector `delta`.
    pub fn shift_exponents(&self, delta: &[i32]) -> Self {
        assert_eq!(delta.len(), self.vars.len());
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let e: Vec<i32> = m.0.iter().zip(delta).map(|(a, b)| a + b).collect();
                    (Mono(e), c.clone())
                })
                .collect(),
        }
    }

    /// Rational `g` such that `self / g` has integer-coprime coefficients
    /// and a positive lowest term (the first term printed).  Dividing by
    /// this value normalises content and sign at once.
    pub fn signed_content(&self) -> Rat {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Rat::one();
        }
        let mut g = Rat::new(num_gcd, den_lcm);
        if let Some((_, c0)) = self.terms.iter().next() {
            if c0.is_negative() {
                g = -g;
            }
        }
        g
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        self.check_vars(d);
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(&self.vars));
        }
        // Shift both operands into the ordinary polynomial ring, divide by
        // leading terms there, and shift the quotient back.
        let sf = self.min_exponents();
        let sd = d.min_exponents();
        let neg = |v: &[i32]| v.iter().map(|&e| -e).collect::<Vec<_>>();
        let mut r = self.shift_exponents(&neg(&sf));
        let d0 = d.shift_exponents(&neg(&sd));
        let (dm, dc) = {
            let (m, c) = d0.leading().unwrap();
            (m.clone(), c.clone())
        };
        let mut q = Self::zero(&self.vars);
        while !r.is_zero() {
            let (rm, rc) = {
                let (m, c) = r.leading().unwrap();
                (m.clone(), c.clone())
            };
            let mut e = Vec::with_capacity(rm.0.len());
            for (a, b) in rm.0.iter().zip(dm.0.iter()) {
                let diff = a - b;
                if diff < 0 {
                    return None;
                }
                e.push(diff);
            }
            let t = Self::monomial(&self.vars, e, rc / &dc);
            r = &r - &(&t * &d0);
            q = &q + &t;
        }
        let back: Vec<i32> = sf.iter().zip(sd.iter()).map(|(a, b)| a - b).collect();
        Some(q.shift_exponents(&back))
    }

    /// Substitute `gen -> q^k * gen` (the q-shift operator on one variable).
    pub fn q_shift(&self, idx: usize, k: i64) -> Self {
        self.map_exponents(|e| {
            let mut e = e.to_vec();
            e[Q] += (k * e[idx] as i64) as i32;
            e
        })
    }

    /// Substitute `tau -> -tau`.
    pub fn negate_tau(&self) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = if m.0[TAU].rem_euclid(2) == 1 {
                        -c.clone()
                    } else {
                        c.clone()
                    };
                    (m.clone(), c)
                })
                .collect(),
        }
    }

    /// Substitute `t = q^g`, i.e. `tau^2 -> q^g`.  Every term must carry an
    /// exponent of `tau` that keeps `g * e_tau / 2` an integer.
    pub fn tau_to_q_power(&self, g: i64) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let et = m.0[TAU] as i64;
            if (g * et) % 2 != 0 {
                return Err(Error::OddTauExponent {
                    context: format!("substituting t = q^{g} into tau^{et}"),
                });
            }
            let mut e = m.0.clone();
            e[TAU] = 0;
            e[Q] += ((g * et) / 2) as i32;
            Self::insert_add(&mut terms, Mono(e), c.clone());
        }
        Ok(LaurentPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Apply a permutation to the main variables: new exponent of main `i`
    /// is the old exponent of main `perm[i]`.
    pub fn permute_mains(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.vars.main_count());
        self.map_exponents(|e| {
            let mut out = e.to_vec();
            for (i, &p) in perm.iter().enumerate() {
                out[2 + i] = e[2 + p];
            }
            out
        })
    }

    /// Swap two main variables (0-based main indices).
    pub fn swap_mains(&self, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.vars.main_count()).collect();
        perm.swap(i, j);
        self.permute_mains(&perm)
    }

    /// Rewrite every exponent vector through `f`, merging collisions.
    pub fn map_exponents<F>(&self, f: F) -> Self
    where
        F: Fn(&[i32]) -> Vec<i32>,
    {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = f(&m.0);
            assert_eq!(e.len(), self.vars.len());
            Self::insert_add(&mut terms, Mono(e), c.clone());
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Rewrite exponent vectors into a different generator set.
    pub fn map_exponents_into<F>(&self, target: &Vars, f: F) -> Self
    where
        F: Fn(&[i32]) -> Vec<i32>,
    {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = f(&m.0);
            assert_eq!(e.len(), target.len());
            Self::insert_add(&mut terms, Mono(e), c.clone());
        }
        LaurentPoly {
            vars: target.clone(),
            terms,
        }
    }

    /// Re-express over a different generator set, matching by name.  A
    /// generator absent from the target must appear with exponent zero in
    /// every term.
    pub fn promote(&self, target: &Vars) -> Self {
        if same_vars(&self.vars, target) {
            return self.clone();
        }
        let map: Vec<Option<usize>> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &exp) in m.0.iter().enumerate() {
                match map[i] {
                    Some(j) => e[j] = exp,
                    None => assert_eq!(
                        exp,
                        0,
                        "generator {} does not exist in the target set",
                        self.vars.name(i)
                    ),
                }
            }
            terms.insert(Mono(e), c.clone());
        }
        LaurentPoly {
            vars: target.clone(),
            terms,
        }
    }

    /// True when no term uses any main variable.
    pub fn is_coefficient_only(&self) -> bool {
        self.terms.keys().all(|m| m.0[2..].iter().all(|&e| e == 0))
    }

    /// True when no term uses the generator at `idx`.
    pub fn is_free_of(&self, idx: usize) -> bool {
        self.terms.keys().all(|m| m.0[idx] == 0)
    }

    /// Gcd over the coefficient polynomials obtained by grouping terms with
    /// the same main-variable exponents.  The result involves only `q` and
    /// `tau`; it is zero exactly when `self` is zero.
    pub(crate) fn coefficient_content(&self) -> LaurentPoly {
        let mut groups: BTreeMap<Vec<i32>, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut coeff_exps = vec![0; self.vars.len()];
            coeff_exps[..2].copy_from_slice(&m.0[..2]);
            let part = LaurentPoly::monomial(&self.vars, coeff_exps, c.clone());
            groups
                .entry(m.0[2..].to_vec())
                .and_modify(|acc| *acc = &*acc + &part)
                .or_insert(part);
        }
        let mut content = LaurentPoly::zero(&self.vars);
        for coeff in groups.values() {
            content = super::gcd::qt_gcd(&content, coeff);
            if content.is_monomial() {
                break;
            }
        }
        content
    }

    /// Largest total degree in the main variables (`None` for the zero
    /// polynomial).
    pub fn main_degree(&self) -> Option<i64> {
        self.terms
            .keys()
            .map(|m| m.0[2..].iter().map(|&e| e as i64).sum())
            .max()
    }

    /// Evaluate at a full complex assignment (one value per generator).
    pub fn eval_complex(&self, assign: &[Complex64]) -> Complex64 {
        assert_eq!(assign.len(), self.vars.len());
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut term = Complex64::new(rat_to_f64(c), 0.0);
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    term *= assign[i].powi(e);
                }
            }
            acc += term;
        }
        acc
    }
}

pub fn rat_to_f64(c: &Rat) -> f64 {
    let num = c.numer();
    let den = c.denom();
    // Exact when the operands fit in f64; otherwise falls back to a scaled
    // division that stays accurate for the magnitudes seen here.
    let nf = bigint_to_f64(num);
    let df = bigint_to_f64(den);
    nf / df
}

fn bigint_to_f64(v: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_vars(rhs);
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            LaurentPoly::insert_add(&mut terms, m.clone(), c.clone());
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms,
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_vars(rhs);
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            LaurentPoly::insert_add(&mut terms, m.clone(), -c.clone());
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms,
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_vars(rhs);
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let e: Vec<i32> = ma.0.iter().zip(mb.0.iter()).map(|(a, b)| a + b).collect();
                LaurentPoly::insert_add(&mut terms, Mono(e), ca * cb);
            }
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms,
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let mono = format_monomial(&self.vars, &m.0);
            if mono.is_empty() {
                write!(f, "{}", format_rat(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_rat(&mag))?;
            }
        }
        Ok(())
    }
}

fn format_rat(c: &Rat) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Render one monomial: `tau` powers print as powers of `t`, with odd
/// exponents shown as explicit half powers like `t^(3/2)`.
fn format_monomial(vars: &Vars, exps: &[i32]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if i == TAU {
            if e % 2 == 0 {
                let m = e / 2;
                parts.push(if m == 1 {
                    "t".to_string()
                } else {
                    format!("t^{m}")
                });
            } else {
                parts.push(format!("t^({e}/2)"));
            }
        } else {
            let name = vars.name(i);
            parts.push(if e == 1 {
                name.to_string()
            } else {
                format!("{name}^{e}")
            });
        }
    }
    parts.join("*")
}
