//! Gcd reduction for fractions whose entries involve only `q` and `tau`.
//!
//! Coefficient-field values (eigenvalues, expansion coefficients, prefactors)
//! live in the two generators `q` and `tau`.  Reducing those fractions to
//! lowest terms keeps canonical strings stable across different computation
//! routes.  The gcd runs a primitive Euclidean remainder sequence on
//! polynomials in `tau` with coefficients in `Q[q]`.

use num::bigint::BigInt;
use num::integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::{LaurentPoly, Rat};
use super::vars::{Q, TAU};

/// Dense univariate polynomial in `q` over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
struct QPoly(Vec<Rat>);

impl QPoly {
    fn zero() -> Self {
        QPoly(Vec::new())
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn trim(mut self) -> Self {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &Rat {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] += c;
        }
        QPoly(out).trim()
    }

    fn neg(&self) -> Self {
        QPoly(self.0.iter().map(|c| -c.clone()).collect())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly(out).trim()
    }

    /// Exact quotient, or `None` when division leaves a remainder.
    fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero());
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut r = self.clone();
        let mut q = vec![Rat::zero(); self.0.len()];
        while !r.is_zero() {
            if r.degree() < d.degree() {
                return None;
            }
            let shift = r.degree() - d.degree();
            let f = r.lead() / d.lead();
            q[shift] = f.clone();
            let mut sub = vec![Rat::zero(); shift];
            sub.extend(d.0.iter().map(|c| c * &f));
            r = r.add(&QPoly(sub).neg());
        }
        Some(QPoly(q).trim())
    }

    /// Normalise to integer-coprime coefficients with positive leading one.
    fn normalise(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in &self.0 {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut g = Rat::new(num_gcd, den_lcm);
        if self.lead().is_negative() {
            g = -g;
        }
        QPoly(self.0.iter().map(|c| c / &g).collect())
    }

    /// Clear denominators to a primitive integer polynomial.  Gcds are only
    /// defined up to a scalar, so the dropped factor never matters.
    fn to_int(&self) -> ZPoly {
        let mut lcm = BigInt::one();
        for c in &self.0 {
            lcm = lcm.lcm(c.denom());
        }
        ZPoly(
            self.0
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect(),
        )
        .primitive()
    }

    fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone().normalise();
        }
        if other.is_zero() {
            return self.clone().normalise();
        }
        let g = self.to_int().gcd(&other.to_int());
        QPoly(g.0.into_iter().map(Rat::from_integer).collect()).normalise()
    }
}

/// Dense univariate integer polynomial.  The remainder sequences run here:
/// a Euclidean sequence over the rationals doubles coefficient bit-length
/// at every step, while the primitive sequence divides out the integer
/// content after each pseudo-remainder and stays small.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ZPoly(Vec<BigInt>);

impl ZPoly {
    fn zero() -> Self {
        ZPoly(Vec::new())
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn is_unit(&self) -> bool {
        self.0.len() == 1 && self.0[0].abs().is_one()
    }

    fn trim(mut self) -> Self {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    fn int_content(&self) -> BigInt {
        let mut content = BigInt::zero();
        for c in &self.0 {
            content = content.gcd(c);
            if content.is_one() {
                break;
            }
        }
        content
    }

    fn div_int(self, k: &BigInt) -> Self {
        ZPoly(self.0.into_iter().map(|c| c / k).collect())
    }

    fn primitive(self) -> Self {
        let content = self.int_content();
        if content.is_zero() || content.is_one() {
            return self;
        }
        self.div_int(&content)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly(out).trim()
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] = c.clone();
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] -= c;
        }
        ZPoly(out).trim()
    }

    /// Exact quotient in `Z[q]`; panics when the division leaves a
    /// remainder or a fractional coefficient, so it is only for divisors
    /// known to divide (contents and gcds).
    fn div_exact(&self, d: &Self) -> Self {
        assert!(!d.is_zero());
        if self.is_zero() {
            return Self::zero();
        }
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.0.len()];
        while !r.is_zero() {
            assert!(r.degree() >= d.degree(), "inexact polynomial division");
            let shift = r.degree() - d.degree();
            let (f, rem) = r.lead().div_rem(d.lead());
            assert!(rem.is_zero(), "inexact polynomial division");
            for (i, c) in d.0.iter().enumerate() {
                r.0[i + shift] -= c * &f;
            }
            q[shift] = f;
            r = r.trim();
        }
        ZPoly(q).trim()
    }

    fn pseudo_rem(&self, d: &Self) -> Self {
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= d.degree() {
            let shift = r.degree() - d.degree();
            let lr = r.lead().clone();
            let ld = d.lead().clone();
            let n = r.0.len().max(d.0.len() + shift);
            let mut out = vec![BigInt::zero(); n];
            for (i, c) in r.0.iter().enumerate() {
                out[i] = c * &ld;
            }
            for (i, c) in d.0.iter().enumerate() {
                out[i + shift] -= c * &lr;
            }
            r = ZPoly(out).trim();
        }
        r
    }

    /// Primitive-sequence gcd of primitive inputs; the result is primitive.
    fn gcd_primitive(a: Self, b: Self) -> Self {
        let (mut a, mut b) = (a, b);
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    /// True gcd in `Z[q]` up to sign, integer content included.
    fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let ca = self.int_content();
        let cb = other.int_content();
        let c = ca.gcd(&cb);
        let pp = Self::gcd_primitive(self.clone().div_int(&ca), other.clone().div_int(&cb));
        if c.is_one() {
            pp
        } else {
            ZPoly(pp.0.into_iter().map(|x| x * &c).collect())
        }
    }
}

/// Polynomial in `tau` over `Z[q]`, the representation the bivariate
/// remainder sequence actually runs on.
#[derive(Debug, Clone)]
struct ZTauPoly(Vec<ZPoly>);

impl ZTauPoly {
    /// Clears every denominator at once; gcds ignore the dropped scale.
    fn from_tau(p: &TauPoly) -> Self {
        let mut lcm = BigInt::one();
        for qp in &p.0 {
            for c in &qp.0 {
                lcm = lcm.lcm(c.denom());
            }
        }
        ZTauPoly(
            p.0.iter()
                .map(|qp| {
                    ZPoly(
                        qp.0.iter()
                            .map(|c| c.numer() * (&lcm / c.denom()))
                            .collect(),
                    )
                    .trim()
                })
                .collect(),
        )
    }

    fn to_tau(&self) -> TauPoly {
        TauPoly(
            self.0
                .iter()
                .map(|zp| QPoly(zp.0.iter().cloned().map(Rat::from_integer).collect()))
                .collect(),
        )
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn trim(mut self) -> Self {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &ZPoly {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    fn content(&self) -> ZPoly {
        let mut g = ZPoly::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_unit() {
                break;
            }
        }
        g
    }

    fn primitive(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let c = self.content();
        if c.is_unit() {
            return self;
        }
        ZTauPoly(self.0.into_iter().map(|p| p.div_exact(&c)).collect())
    }

    fn pseudo_rem(&self, d: &Self) -> Self {
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= d.degree() {
            let shift = r.degree() - d.degree();
            let lr = r.lead().clone();
            let ld = d.lead().clone();
            let n = r.0.len().max(d.0.len() + shift);
            let mut out = vec![ZPoly::zero(); n];
            for (i, c) in r.0.iter().enumerate() {
                out[i] = c.mul(&ld);
            }
            for (i, c) in d.0.iter().enumerate() {
                out[i + shift] = out[i + shift].sub(&c.mul(&lr));
            }
            r = ZTauPoly(out).trim();
        }
        r
    }

    fn gcd(a: Self, b: Self) -> Self {
        let mut a = a.primitive();
        let mut b = b.primitive();
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.normalise_sign()
    }

    /// Fixes the scale-free sign ambiguity of the remainder sequence: the
    /// lowest nonzero coefficient comes out positive.
    fn normalise_sign(self) -> Self {
        let trailing = self
            .0
            .iter()
            .find(|p| !p.is_zero())
            .and_then(|p| p.0.iter().find(|c| !c.is_zero()));
        match trailing {
            Some(c) if c.is_negative() => ZTauPoly(
                self.0
                    .into_iter()
                    .map(|p| ZPoly(p.0.into_iter().map(|x| -x).collect()))
                    .collect(),
            ),
            _ => self,
        }
    }
}

/// Polynomial in `tau` with `Q[q]` coefficients, dense in the `tau` degree.
#[derive(Debug, Clone)]
struct TauPoly(Vec<QPoly>);

impl TauPoly {
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn trim(mut self) -> Self {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn scale(&self, f: &QPoly) -> Self {
        TauPoly(self.0.iter().map(|c| c.mul(f)).collect()).trim()
    }

    fn content(&self) -> QPoly {
        let mut g = QPoly::zero();
        for c in &self.0 {
            g = g.gcd(c);
        }
        g
    }

    fn primitive(&self) -> Self {
        if self.is_zero() {
            return TauPoly(Vec::new());
        }
        let c = self.content();
        TauPoly(
            self.0
                .iter()
                .map(|p| p.exact_div(&c).expect("content must divide"))
                .collect(),
        )
    }

    fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let a = ZTauPoly::from_tau(self);
        let b = ZTauPoly::from_tau(other);
        ZTauPoly::gcd(a, b).to_tau()
    }

    /// Makes the lowest nonzero coefficient positive, fixing the sign left
    /// over from the remainder sequence so quotients are reproducible.
    fn normalise_sign(self) -> Self {
        let trailing = self
            .0
            .iter()
            .find(|p| !p.is_zero())
            .and_then(|p| p.0.iter().find(|c| !c.is_zero()));
        match trailing {
            Some(c) if c.is_negative() => TauPoly(self.0.iter().map(|p| p.neg()).collect()),
            _ => self,
        }
    }
}

fn to_tau_poly(p: &LaurentPoly) -> TauPoly {
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (m, c) in p.terms() {
        let et = m.0[TAU] as usize;
        let eq = m.0[Q] as usize;
        if rows.len() <= et {
            rows.resize(et + 1, Vec::new());
        }
        if rows[et].len() <= eq {
            rows[et].resize(eq + 1, Rat::zero());
        }
        rows[et][eq] = c.clone();
    }
    TauPoly(rows.into_iter().map(|r| QPoly(r).trim()).collect()).trim()
}

fn from_tau_poly(p: &TauPoly, like: &LaurentPoly) -> LaurentPoly {
    let vars = like.vars();
    let mut acc = LaurentPoly::zero(vars);
    for (et, qp) in p.0.iter().enumerate() {
        for (eq, c) in qp.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0; vars.len()];
            e[Q] = eq as i32;
            e[TAU] = et as i32;
            acc = &acc + &LaurentPoly::monomial(vars, e, c.clone());
        }
    }
    acc
}

/// Divide the pair `(num, den)` by their gcd.  Both inputs must involve only
/// `q` and `tau`; exponents may be negative (a monomial shift is applied and
/// undone around the gcd).
pub(crate) fn reduce_pair(num: &LaurentPoly, den: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    debug_assert!(num.is_coefficient_only() && den.is_coefficient_only());
    if num.is_zero() || den.is_monomial() || num.is_monomial() {
        // A monomial factor is already handled by the canonical scaling; a
        // gcd with a monomial can only be a monomial.
        return (num.clone(), den.clone());
    }
    let neg = |v: &[i32]| v.iter().map(|&e| -e).collect::<Vec<_>>();
    let n0 = num.shift_exponents(&neg(&num.min_exponents()));
    let d0 = den.shift_exponents(&neg(&den.min_exponents()));

    let tn = to_tau_poly(&n0);
    let td = to_tau_poly(&d0);
    let g_pp = tn.gcd(&td);
    let g_cont = tn.content().gcd(&td.content());
    let g = g_pp.scale(&g_cont).normalise_sign();
    if g.degree() == 0 && g.0[0].degree() == 0 {
        return (num.clone(), den.clone());
    }
    let g_poly = from_tau_poly(&g, num);
    let rn = num
        .shift_exponents(&num.min_exponents().iter().map(|&e| -e).collect::<Vec<_>>());
    let rd = den
        .shift_exponents(&den.min_exponents().iter().map(|&e| -e).collect::<Vec<_>>());
    let qn = rn.exact_div(&g_poly).expect("gcd must divide numerator");
    let qd = rd.exact_div(&g_poly).expect("gcd must divide denominator");
    (
        qn.shift_exponents(&num.min_exponents()),
        qd.shift_exponents(&den.min_exponents()),
    )
}

/// Gcd of two coefficient-only polynomials, up to a monomial factor and a
/// rational scale.  Exponents may be negative; the result is a polynomial
/// with nonnegative exponents in `q` and `tau` only.
pub(crate) fn qt_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    debug_assert!(a.is_coefficient_only() && b.is_coefficient_only());
    let neg = |v: &[i32]| v.iter().map(|&e| -e).collect::<Vec<_>>();
    let a0 = a.shift_exponents(&neg(&a.min_exponents()));
    let b0 = b.shift_exponents(&neg(&b.min_exponents()));
    let ta = to_tau_poly(&a0);
    let tb = to_tau_poly(&b0);
    let g_pp = ta.gcd(&tb);
    let g_cont = ta.content().gcd(&tb.content());
    from_tau_poly(&g_pp.scale(&g_cont).normalise_sign(), a)
}
