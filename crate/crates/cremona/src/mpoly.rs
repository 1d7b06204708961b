//! Sparse multivariate polynomials over an exact coefficient field.
//!
//! One engine backs the three polynomial flavours used by the library:
//! parameter polynomials (two slots), affine local curves (two chart
//! variables) and homogeneous forms in x, y, z. Exponent vectors are the
//! map keys, so iteration order is lexicographic and deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact field operations needed by the polynomial engine.
pub trait Field: Clone + Eq + Ord + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
}

/// Sparse polynomial in `N` variables; only nonzero coefficients are stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MPoly<C: Field, const N: usize> {
    pub terms: BTreeMap<[u32; N], C>,
}

impl<C: Field, const N: usize> MPoly<C, N> {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; N], c);
        }
        MPoly { terms }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        Self::monomial(e, C::one())
    }

    pub fn monomial(exp: [u32; N], c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&[0; N]))
    }

    pub fn constant_value(&self) -> Option<C> {
        if self.terms.is_empty() {
            return Some(C::zero());
        }
        if self.is_constant() {
            return self.terms.get(&[0; N]).cloned();
        }
        None
    }

    /// Total degree; zero polynomial reports 0.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Minimal total degree among terms (order of vanishing at the origin).
    pub fn min_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .min()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    fn insert_add(terms: &mut BTreeMap<[u32; N], C>, exp: [u32; N], c: C) {
        if c.is_zero() {
            return;
        }
        match terms.get_mut(&exp) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    terms.remove(&exp);
                } else {
                    *existing = s;
                }
            }
            None => {
                terms.insert(exp, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_add(&mut terms, *e, c.clone());
        }
        MPoly { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_add(&mut terms, *e, c.neg());
        }
        MPoly { terms }
    }

    pub fn neg(&self) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = *e1;
                for i in 0..N {
                    e[i] += e2[i];
                }
                Self::insert_add(&mut terms, e, c1.mul(c2));
            }
        }
        MPoly { terms }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, k)| (*e, k.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, exp: [u32; N], c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| {
                    let mut ne = *e;
                    for i in 0..N {
                        ne[i] += exp[i];
                    }
                    (ne, k.mul(c))
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        result
    }

    /// Exact square root when the polynomial is a perfect square and the
    /// coefficient square roots exist.
    pub fn sqrt_with(&self, coeff_sqrt: impl Fn(&C) -> Option<C>) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (le, lc) = self.leading()?;
        let mut root_e = *le;
        for v in root_e.iter_mut() {
            if *v % 2 != 0 {
                return None;
            }
            *v /= 2;
        }
        let root_c = coeff_sqrt(lc)?;
        let mut q = Self::monomial(root_e, root_c);
        let mut guard = self.terms.len() * self.terms.len() + 4;
        loop {
            let r = self.sub(&q.mul(&q));
            if r.is_zero() {
                return Some(q);
            }
            guard = guard.checked_sub(1)?;
            let (re, rc) = r.leading()?;
            let (qe, qc) = q.leading()?;
            let mut te = [0u32; N];
            for i in 0..N {
                te[i] = re[i].checked_sub(qe[i])?;
            }
            let two = C::one().add(&C::one());
            let tc = rc.div(&two.mul(qc));
            q = q.add(&Self::monomial(te, tc));
        }
    }

    /// Graded-lex leading term (max by total degree, then exponent order).
    pub fn leading(&self) -> Option<(&[u32; N], &C)> {
        self.terms
            .iter()
            .max_by_key(|(e, _)| (e.iter().sum::<u32>(), **e))
    }

    /// Scale so the graded-lex leading coefficient becomes 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv()),
            None => Self::zero(),
        }
    }

    /// Exact division; `None` if the division does not come out even.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (dlead_e, dlead_c) = divisor.leading().unwrap();
        let dlead_e = *dlead_e;
        let dlead_c = dlead_c.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rlead_e, rlead_c)) = rem.leading() {
            let mut qe = [0u32; N];
            for i in 0..N {
                qe[i] = rlead_e[i].checked_sub(dlead_e[i])?;
            }
            let qc = rlead_c.div(&dlead_c);
            let qterm = Self::monomial(qe, qc);
            quot = quot.add(&qterm);
            rem = rem.sub(&qterm.mul(divisor));
        }
        Some(quot)
    }

    /// Divide by `var(v)^k`, exactly.
    pub fn div_var_power(&self, v: usize, k: u32) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[v] < k {
                return None;
            }
            let mut ne = *e;
            ne[v] -= k;
            terms.insert(ne, c.clone());
        }
        Some(MPoly { terms })
    }

    /// Substitute each variable by the given polynomial.
    pub fn substitute(&self, images: &[Self; N]) -> Self {
        // cache powers per variable as they appear
        let mut pow_cache: Vec<Vec<Self>> = (0..N).map(|i| vec![Self::one(), images[i].clone()]).collect();
        let power = |v: usize, k: u32, cache: &mut Vec<Vec<Self>>| -> Self {
            while cache[v].len() <= k as usize {
                let step = cache[v][1].clone();
                let last = cache[v].last().unwrap().clone();
                cache[v].push(last.mul(&step));
            }
            cache[v][k as usize].clone()
        };
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for v in 0..N {
                if e[v] > 0 {
                    term = term.mul(&power(v, e[v], &mut pow_cache));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// View as univariate in `v`: map from v-degree to the coefficient
    /// polynomial (with the v-slot zeroed).
    pub fn coeffs_in(&self, v: usize) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e[v];
            let mut ne = *e;
            ne[v] = 0;
            let entry = out.entry(d).or_insert_with(Self::zero);
            Self::insert_add(&mut entry.terms, ne, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    fn lead_coeff_in(&self, v: usize) -> Self {
        let d = self.degree_in(v);
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[v] == d {
                let mut ne = *e;
                ne[v] = 0;
                Self::insert_add(&mut out.terms, ne, c.clone());
            }
        }
        out
    }

    /// Pseudo-remainder of `self` by `other` w.r.t. variable `v`.
    fn prem(&self, other: &Self, v: usize) -> Self {
        let db = other.degree_in(v);
        let lb = other.lead_coeff_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lr = r.lead_coeff_in(v);
            let shift = Self::var(v).pow(dr - db);
            r = r.mul(&lb).sub(&other.mul(&lr).mul(&shift));
            debug_assert!(r.is_zero() || r.degree_in(v) < dr);
        }
        r
    }

    fn content_in(&self, v: usize) -> Self {
        let mut g = Self::zero();
        for (_, coeff) in self.coeffs_in(v) {
            g = Self::gcd(&g, &coeff);
            if g.is_constant() && !g.is_zero() {
                return Self::one();
            }
        }
        g
    }

    /// Greatest common divisor, monic-normalized. Content/primitive-part
    /// recursion over variables with a primitive pseudo-remainder sequence;
    /// degrees stay tiny here so simplicity wins over asymptotics.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Self::one();
        }
        // main variable: highest index occurring in either
        let mut v = None;
        for i in (0..N).rev() {
            if a.degree_in(i) > 0 || b.degree_in(i) > 0 {
                v = Some(i);
                break;
            }
        }
        let v = v.expect("nonconstant polynomial has a variable");
        if a.degree_in(v) == 0 || b.degree_in(v) == 0 {
            // v occurs in only one argument: gcd divides the v-content
            let (with_v, without) = if a.degree_in(v) > 0 { (a, b) } else { (b, a) };
            return Self::gcd(&with_v.content_in(v), without);
        }
        let cont_a = a.content_in(v);
        let cont_b = b.content_in(v);
        let g_cont = Self::gcd(&cont_a, &cont_b);
        let mut p = a.div_exact(&cont_a).expect("content divides");
        let mut q = b.div_exact(&cont_b).expect("content divides");
        if p.degree_in(v) < q.degree_in(v) {
            std::mem::swap(&mut p, &mut q);
        }
        loop {
            let r = p.prem(&q, v);
            if r.is_zero() {
                break;
            }
            let r = if r.degree_in(v) == 0 {
                r.monic()
            } else {
                let c = r.content_in(v);
                r.div_exact(&c).expect("content divides").monic()
            };
            p = q;
            q = r;
            if q.degree_in(v) == 0 {
                break;
            }
        }
        let pp = if q.degree_in(v) == 0 {
            Self::one()
        } else {
            let c = q.content_in(v);
            q.div_exact(&c).expect("content divides")
        };
        g_cont.mul(&pp).monic()
    }
}

impl<C: Field, const N: usize> fmt::Debug for MPoly<C, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly{:?}", self.terms)
    }
}

/// Clear denominators and common integer content; result has coprime integer
/// coefficients with positive leading sign.
pub fn primitive_integer(p: &MPoly<BigRational, 2>) -> MPoly<BigRational, 2> {
    if p.is_zero() {
        return p.clone();
    }
    let mut denom_lcm = BigInt::one();
    for c in p.terms.values() {
        denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
    }
    let mut numer_gcd = BigInt::zero();
    for c in p.terms.values() {
        let scaled = c * BigRational::from_integer(denom_lcm.clone());
        numer_gcd = num_integer::gcd(numer_gcd, scaled.numer().clone());
    }
    if numer_gcd.is_zero() {
        numer_gcd = BigInt::one();
    }
    let factor = BigRational::new(denom_lcm, numer_gcd);
    let scaled = p.scale(&factor);
    match scaled.leading() {
        Some((_, c)) if c.is_negative() => scaled.scale(&BigRational::from_integer(BigInt::from(-1))),
        _ => scaled,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = MPoly<BigRational, 2>;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn x() -> P {
        P::var(0)
    }
    fn y() -> P {
        P::var(1)
    }

    #[test]
    fn ring_basics() {
        let p = x().add(&y());
        let sq = p.mul(&p);
        let expect = x()
            .pow(2)
            .add(&x().mul(&y()).scale(&q(2)))
            .add(&y().pow(2));
        assert_eq!(sq, expect);
        assert!(sq.sub(&expect).is_zero());
    }

    #[test]
    fn exact_division() {
        let p = x().pow(2).sub(&y().pow(2));
        let d = x().sub(&y());
        let quotient = p.div_exact(&d).unwrap();
        assert_eq!(quotient, x().add(&y()));
        assert!(p.div_exact(&x().add(&P::one())).is_none());
    }

    #[test]
    fn gcd_of_products() {
        let a = x().add(&y()).mul(&x());
        let b = x().add(&y()).mul(&y().sub(&P::one()));
        let g = P::gcd(&a, &b);
        assert_eq!(g, x().add(&y()));
    }

    #[test]
    fn gcd_coprime_is_one() {
        let a = x().pow(2).add(&y());
        let b = y().clone();
        assert_eq!(P::gcd(&a, &b), P::one());
    }

    #[test]
    fn gcd_with_zero() {
        let a = x().scale(&q(3));
        assert_eq!(P::gcd(&a, &P::zero()), x());
    }
}
