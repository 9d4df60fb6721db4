//! Rational functions in `q`, `tau`, and main variables.
//!
//! A value is an exact quotient of two Laurent polynomials kept in a
//! canonical form: the denominator has minimum exponent zero in every
//! generator, unit content, and a positive leading coefficient; the zero
//! function is `0/1`.  Fractions involving only `q` and `tau` are also
//! reduced to lowest terms.  Equality is decided by cross-multiplication,
//! so it never depends on the reduction.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::One;

use crate::error::{Error, Result};
use super::gcd::{qt_gcd, reduce_pair};
use super::laurent::{LaurentPoly, Rat};
use super::vars::{same_vars, Vars, Q, TAU};

#[derive(Debug, Clone)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    /// Build `num / den`, canonicalising.  Fails when `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(mut num: LaurentPoly, mut den: LaurentPoly) -> Self {
        let vars = num.vars().clone();
        assert!(same_vars(&vars, den.vars()), "mixed generator sets");
        if num.is_zero() {
            return RatFunc {
                num: LaurentPoly::zero(&vars),
                den: LaurentPoly::one(&vars),
            };
        }
        if num.is_coefficient_only() && den.is_coefficient_only() {
            let (n, d) = reduce_pair(&num, &den);
            num = n;
            den = d;
        } else if den.is_coefficient_only() && !den.is_monomial() {
            // The numerator involves main variables but the denominator does
            // not: strip the common coefficient factor so repeated sums over
            // a shared denominator do not pile up duplicate factors.
            let content = num.coefficient_content();
            if !content.is_monomial() {
                let g = qt_gcd(&content, &den);
                if g.num_terms() > 1 {
                    num = num.exact_div(&g).expect("gcd must divide numerator");
                    den = den.exact_div(&g).expect("gcd must divide denominator");
                }
            }
        }
        // Shift so the denominator is an ordinary polynomial touching every
        // axis, then normalise its content and leading sign.
        let shift: Vec<i32> = den.min_exponents().iter().map(|&e| -e).collect();
        num = num.shift_exponents(&shift);
        den = den.shift_exponents(&shift);
        let c = den.signed_content();
        let inv = Rat::one() / &c;
        num = num.mul_rat(&inv);
        den = den.mul_rat(&inv);
        RatFunc { num, den }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let one = LaurentPoly::one(p.vars());
        RatFunc { num: p, den: one }
    }

    pub fn zero(vars: &Vars) -> Self {
        Self::from_poly(LaurentPoly::zero(vars))
    }

    pub fn one(vars: &Vars) -> Self {
        Self::from_poly(LaurentPoly::one(vars))
    }

    pub fn int(vars: &Vars, n: i64) -> Self {
        Self::from_poly(LaurentPoly::constant(vars, Rat::from_integer(n.into())))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    /// Integer power, with negative exponents through the inverse.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.vars());
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Substitute `gen -> q^k * gen` in numerator and denominator.
    pub fn q_shift(&self, idx: usize, k: i64) -> Self {
        Self::canonical(self.num.q_shift(idx, k), self.den.q_shift(idx, k))
    }

    pub fn negate_tau(&self) -> Self {
        Self::canonical(self.num.negate_tau(), self.den.negate_tau())
    }

    pub fn tau_to_q_power(&self, g: i64) -> Result<Self> {
        Self::new(self.num.tau_to_q_power(g)?, self.den.tau_to_q_power(g)?)
    }

    pub fn promote(&self, target: &Vars) -> Self {
        RatFunc {
            num: self.num.promote(target),
            den: self.den.promote(target),
        }
    }

    /// When the value is exactly `q^k` for an integer `k`, return `k`.
    pub fn as_pure_q_power(&self) -> Option<i64> {
        if !self.den.is_one() || !self.num.is_monomial() {
            return None;
        }
        let (m, c) = self.num.leading()?;
        if !c.is_one() {
            return None;
        }
        let mut k = None;
        for (i, &e) in m.0.iter().enumerate() {
            if i == Q {
                k = Some(e as i64);
            } else if e != 0 {
                return None;
            }
        }
        k
    }

    /// Evaluate at a complex assignment; fails when the denominator
    /// evaluates to (numerically) zero.
    pub fn eval_complex(&self, assign: &[Complex64]) -> Result<Complex64> {
        let d = self.den.eval_complex(assign);
        if d.norm() < 1e-300 {
            return Err(Error::DenominatorVanishes {
                detail: format!("{}", self.den),
            });
        }
        Ok(self.num.eval_complex(assign) / d)
    }
}

/// Cross-multiplication equality: `a/b == c/d` iff `a*d == c*b`.
impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFunc {}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::canonical(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::canonical(&self.num - &rhs.num, self.den.clone());
        }
        RatFunc::canonical(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFunc::canonical(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Generator shorthands used throughout the crate.
pub mod gens {
    use super::*;

    /// The generator `q`.
    pub fn q(vars: &Vars) -> RatFunc {
        RatFunc::from_poly(LaurentPoly::var_pow(vars, Q, 1))
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(vars: &Vars, k: i64) -> RatFunc {
        RatFunc::from_poly(LaurentPoly::var_pow(vars, Q, k as i32))
    }

    /// The generator `tau` (square root of `t`).
    pub fn tau_pow(vars: &Vars, k: i64) -> RatFunc {
        RatFunc::from_poly(LaurentPoly::var_pow(vars, TAU, k as i32))
    }

    /// `t^k = tau^{2k}` for any integer `k`.
    pub fn t_pow(vars: &Vars, k: i64) -> RatFunc {
        tau_pow(vars, 2 * k)
    }

    /// A main variable by name.
    pub fn var(vars: &Vars, name: &str) -> RatFunc {
        let idx = vars
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown generator {name}"));
        RatFunc::from_poly(LaurentPoly::var_pow(vars, idx, 1))
    }

    /// `q^a * t^b` as a single monomial.
    pub fn q_t_monomial(vars: &Vars, a: i64, b: i64) -> RatFunc {
        let mut e = vec![0; vars.len()];
        e[Q] = a as i32;
        e[TAU] = (2 * b) as i32;
        RatFunc::from_poly(LaurentPoly::monomial(vars, e, Rat::one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::vars::VarSet;

    fn qt() -> Vars {
        VarSet::coefficients()
    }

    #[test]
    fn cross_multiplication_equality() {
        let v = qt();
        let one = RatFunc::one(&v);
        let t = gens::t_pow(&v, 1);
        // (1 - t^2)/(1 - t) == 1 + t
        let lhs = &(&one - &(&t * &t)) / &(&one - &t);
        let rhs = &one + &t;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn denominator_is_normalised() {
        let v = qt();
        let one = RatFunc::one(&v);
        let t = gens::t_pow(&v, 1);
        let q = gens::q(&v);
        // (1 - t) / (t^2 - q t^4): denominator becomes 1 - q t^2
        let den = &gens::t_pow(&v, 2) - &(&q * &gens::t_pow(&v, 4));
        let r = &(&one - &t) / &den;
        assert_eq!(r.den().to_string(), "1 - q*t^2");
        assert_eq!(r.num().to_string(), "t^-2 - t^-1");
    }

    #[test]
    fn zero_is_zero_over_one() {
        let v = qt();
        let t = gens::t_pow(&v, 1);
        let r = &t - &t;
        assert!(r.is_zero());
        assert!(r.den().is_one());
    }

    #[test]
    fn pure_q_power_detection() {
        let v = qt();
        assert_eq!(gens::q_pow(&v, -3).as_pure_q_power(), Some(-3));
        assert_eq!(gens::q_pow(&v, 0).as_pure_q_power(), Some(0));
        assert_eq!(gens::t_pow(&v, 1).as_pure_q_power(), None);
        let one = RatFunc::one(&v);
        let sum = &gens::q(&v) + &one;
        assert_eq!(sum.as_pure_q_power(), None);
    }

    #[test]
    fn eval_and_pole() {
        let v = qt();
        let one = RatFunc::one(&v);
        let t = gens::t_pow(&v, 1);
        let q = gens::q(&v);
        let r = &(&one - &t) / &(&one - &(&q * &t));
        // q = 0.5, t = 0.4: (1 - 0.4)/(1 - 0.2) = 0.75
        let val = r
            .eval_complex(&[
                Complex64::new(0.5, 0.0),
                Complex64::new(0.4f64.sqrt(), 0.0),
            ])
            .unwrap();
        assert!((val.re - 0.75).abs() < 1e-12);
        let err = r.eval_complex(&[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]);
        assert!(err.is_err());
    }

    #[test]
    fn powi_handles_negative_exponents() {
        let v = qt();
        let one = RatFunc::one(&v);
        let t = gens::t_pow(&v, 1);
        let r = &one + &t;
        let p = r.powi(-2).unwrap();
        let recon = &(&p * &r) * &r;
        assert!(recon.is_one());
    }
}
