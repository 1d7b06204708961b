//! Exact root extraction for the resolution machinery.
//!
//! Rational polynomials use the classical divisor search on a primitive
//! integer model. Polynomials with parameter coefficients go through a
//! verified dictionary of candidate rational functions plus a
//! specialization/interpolation fallback; every reported root is checked by
//! exact substitution, so the only failure mode is an honest
//! `UnsupportedField` error.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{specialize, Scalar};

/// Univariate polynomial as coefficients by ascending degree.
pub type UPoly = Vec<Scalar>;

pub fn eval_upoly(p: &[Scalar], t: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in p.iter().rev() {
        acc = acc.mul(t).add(c);
    }
    acc
}

pub fn upoly_degree(p: &[Scalar]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn trim(p: &mut UPoly) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

/// Synthetic division by (t - r); remainder must vanish.
fn deflate(p: &[Scalar], r: &Scalar) -> UPoly {
    let mut out = vec![Scalar::zero(); p.len().saturating_sub(1)];
    let mut carry = Scalar::zero();
    for i in (0..p.len()).rev() {
        let v = p[i].add(&carry);
        if i == 0 {
            debug_assert!(v.is_zero(), "deflation by a non-root");
            break;
        }
        out[i - 1] = v.clone();
        carry = v.mul(r);
    }
    out
}

/// All roots of `p` in the coefficient field, with the guarantee that the
/// polynomial splits completely; otherwise an unsupported-field error.
pub fn field_roots_complete(p: &[Scalar]) -> Result<Vec<Scalar>> {
    let mut p = p.to_vec();
    trim(&mut p);
    let mut roots = Vec::new();
    loop {
        let Some(d) = upoly_degree(&p) else {
            return Err(Error::Internal("zero polynomial has no root set".into()));
        };
        if d == 0 {
            break;
        }
        if p[0].is_zero() {
            roots.push(Scalar::zero());
            p.remove(0);
            continue;
        }
        if d == 1 {
            roots.push(p[0].neg().div(&p[1]));
            break;
        }
        // peel off one field root and deflate; the quadratic formula with an
        // exact square root is the fallback at degree 2
        match one_field_root(&p)? {
            Some(r) => {
                p = deflate(&p, &r);
                roots.push(r);
            }
            None if d == 2 => {
                let (a, b, c) = (p[2].clone(), p[1].clone(), p[0].clone());
                let disc = b.mul(&b).sub(&a.mul(&c).mul(&Scalar::from_int(4)));
                let sq = disc.sqrt_exact().ok_or_else(|| {
                    Error::UnsupportedField(format!(
                        "roots require a square root of {}",
                        disc.render(&["g", "b"])
                    ))
                })?;
                let two_a = a.mul(&Scalar::from_int(2));
                roots.push(b.neg().add(&sq).div(&two_a));
                roots.push(b.neg().sub(&sq).div(&two_a));
                break;
            }
            None => {
                return Err(Error::UnsupportedField(
                    "polynomial does not split over the coefficient field".into(),
                ))
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// All roots lying in the field, without requiring a complete split.
/// Also reports whether the polynomial did split completely.
pub fn field_roots_partial(p: &[Scalar]) -> Result<(Vec<Scalar>, bool)> {
    let mut p = p.to_vec();
    trim(&mut p);
    let mut roots = Vec::new();
    let complete = loop {
        let Some(d) = upoly_degree(&p) else {
            return Err(Error::Internal("zero polynomial".into()));
        };
        if d == 0 {
            break true;
        }
        if p[0].is_zero() {
            roots.push(Scalar::zero());
            p.remove(0);
            continue;
        }
        if d == 1 {
            roots.push(p[0].neg().div(&p[1]));
            break true;
        }
        match one_field_root(&p)? {
            Some(r) => {
                p = deflate(&p, &r);
                roots.push(r);
            }
            None => break false,
        }
    };
    roots.sort();
    roots.dedup();
    Ok((roots, complete))
}

fn one_field_root(p: &[Scalar]) -> Result<Option<Scalar>> {
    if p.iter().all(|c| c.is_rational()) {
        Ok(one_rational_root(p))
    } else {
        one_symbolic_root(p)
    }
}

// ---------------------------------------------------------------------------
// rational path: factorization-free root extraction. Real roots of the
// square-free part are isolated with an integer Sturm chain; each isolating
// interval is then searched for a rational point by the Stern-Brocot walk,
// which terminates because root denominators divide the leading coefficient.
// ---------------------------------------------------------------------------

fn one_rational_root(p: &[Scalar]) -> Option<Scalar> {
    let rats: Vec<BigRational> = p.iter().map(|c| c.as_rational().unwrap().clone()).collect();
    rational_roots_integer(&rats)
        .into_iter()
        .next()
        .map(Scalar::from_big)
}

type ZPoly = Vec<BigInt>;

fn zpoly_trim(p: &mut ZPoly) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn zpoly_content(p: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
    }
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}

fn zpoly_primitive(mut p: ZPoly) -> ZPoly {
    zpoly_trim(&mut p);
    if p.is_empty() {
        return p;
    }
    let c = zpoly_content(&p);
    for v in p.iter_mut() {
        *v /= &c;
    }
    p
}

/// Pseudo-remainder with a positive multiplier, so signs are usable in
/// Sturm-like chains; the result is made primitive.
fn zpoly_prem_primitive(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let lb_abs: BigInt = lb.abs();
    let mut r = a.clone();
    zpoly_trim(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // |lb| * r - sign(lb) * lr * x^(dr-db) * b keeps the leading
        // multiplier positive
        let sgn_lb = if lb >= BigInt::zero() { BigInt::one() } else { -BigInt::one() };
        for c in r.iter_mut() {
            *c *= &lb_abs;
        }
        for k in 0..=db {
            let delta = &b[k] * &lr * &sgn_lb;
            r[dr - db + k] -= delta;
        }
        zpoly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    zpoly_primitive(r)
}

fn zpoly_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut a = zpoly_primitive(a.clone());
    let mut b = zpoly_primitive(b.clone());
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = zpoly_prem_primitive(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn zpoly_div_exact(a: &ZPoly, b: &ZPoly) -> ZPoly {
    // division over the rationals, known exact; result has integer content
    // only up to a rational scale, so re-primitivize at the end
    let mut r: Vec<BigRational> = a.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let db = b.len() - 1;
    let blead = BigRational::from_integer(b[db].clone());
    let mut q = vec![BigRational::zero(); a.len() - db];
    while r.iter().rposition(|c| !Zero::is_zero(c)).map(|d| d >= db).unwrap_or(false) {
        let dr = r.iter().rposition(|c| !Zero::is_zero(c)).unwrap();
        let factor = &r[dr] / &blead;
        q[dr - db] = factor.clone();
        for k in 0..=db {
            let delta = BigRational::from_integer(b[k].clone()) * &factor;
            r[dr - db + k] -= delta;
        }
    }
    // clear denominators and strip content
    let mut lcm = BigInt::one();
    for c in &q {
        lcm = lcm.lcm(c.denom());
    }
    let ints: ZPoly = q
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    zpoly_primitive(ints)
}

/// Sign of f(num/den) for den > 0, via the homogeneous integer evaluation.
fn zpoly_sign_at(f: &ZPoly, num: &BigInt, den: &BigInt) -> i8 {
    let n = f.len() - 1;
    let mut acc = BigInt::zero();
    // sum f_i num^i den^(n-i) by Horner in num with a running den power
    for (i, c) in f.iter().enumerate().rev() {
        if i == n {
            acc = c.clone();
        } else {
            acc = acc * num + c * den.pow((n - i) as u32);
        }
    }
    match acc.sign() {
        num_bigint::Sign::Plus => 1,
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
    }
}

fn chain_variations(chain: &[ZPoly], num: &BigInt, den: &BigInt) -> usize {
    let mut vars = 0usize;
    let mut last = 0i8;
    for p in chain {
        let s = zpoly_sign_at(p, num, den);
        if s != 0 {
            if last != 0 && s != last {
                vars += 1;
            }
            last = s;
        }
    }
    vars
}

/// All rational roots of a rational-coefficient polynomial.
fn rational_roots_integer(coeffs: &[BigRational]) -> Vec<BigRational> {
    let mut lcm = BigInt::one();
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let ints: ZPoly = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let f = zpoly_primitive(ints);
    if f.len() <= 1 {
        return Vec::new();
    }
    // square-free part
    let deriv: ZPoly = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let g = zpoly_gcd(&f, &deriv);
    let sf = if g.len() <= 1 { f.clone() } else { zpoly_div_exact(&f, &g) };
    let qmax: BigInt = sf.last().unwrap().abs();
    // Cauchy bound as an integer: 1 + max |a_i| / |a_n| <= 1 + max|a_i| (lead is at least 1)
    let mut maxc = BigInt::zero();
    for c in &sf {
        let a = c.abs();
        if a > maxc {
            maxc = a;
        }
    }
    let lead_abs: BigInt = sf.last().unwrap().abs();
    let bound = BigInt::one() + maxc / &lead_abs + BigInt::one();
    let chain = sturm_chain_z(&sf);
    let mut out: Vec<BigRational> = Vec::new();
    let one = BigInt::one();
    // explicit endpoint checks
    for endpoint in [-bound.clone(), bound.clone()] {
        if zpoly_sign_at(&sf, &endpoint, &one) == 0 {
            out.push(BigRational::from_integer(endpoint));
        }
    }
    let mut stack = vec![(-bound.clone(), one.clone(), bound, one)];
    while let Some((ln, ld, hn, hd)) = stack.pop() {
        let vars_lo = chain_variations(&chain, &ln, &ld);
        let vars_hi = chain_variations(&chain, &hn, &hd);
        let n = vars_lo.saturating_sub(vars_hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            if let Some(root) = stern_brocot_root(&sf, &qmax, (&ln, &ld), (&hn, &hd)) {
                out.push(root);
            }
            continue;
        }
        // bisect at the mediant-free midpoint
        let mn = &ln * &hd + &hn * &ld;
        let md = BigInt::from(2) * &ld * &hd;
        let (mn, md) = reduce_fraction(mn, md);
        if zpoly_sign_at(&sf, &mn, &md) == 0 {
            out.push(BigRational::new(mn.clone(), md.clone()));
        }
        stack.push((ln, ld, mn.clone(), md.clone()));
        stack.push((mn, md, hn, hd));
    }
    out.sort();
    out.dedup();
    out
}

fn reduce_fraction(n: BigInt, d: BigInt) -> (BigInt, BigInt) {
    let g = n.gcd(&d);
    if g.is_zero() {
        (n, d)
    } else {
        (n / &g, d / &g)
    }
}

fn sturm_chain_z(f: &ZPoly) -> Vec<ZPoly> {
    let mut chain = Vec::new();
    let mut a = f.clone();
    let mut b: ZPoly = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    b = zpoly_primitive(b);
    chain.push(a.clone());
    while !b.is_empty() {
        chain.push(b.clone());
        let mut r = zpoly_prem_primitive(&a, &b);
        for c in r.iter_mut() {
            *c = -c.clone();
        }
        a = b;
        b = r;
    }
    chain
}

/// Search the unique real root of an isolating open interval for
/// rationality: repeatedly test the simplest fraction in the interval and
/// shrink towards the root. Root denominators divide the leading
/// coefficient, so once the simplest denominator exceeds it the root is
/// irrational.
fn stern_brocot_root(
    f: &ZPoly,
    qmax: &BigInt,
    lo: (&BigInt, &BigInt),
    hi: (&BigInt, &BigInt),
) -> Option<BigRational> {
    let mut lo = BigRational::new(lo.0.clone(), lo.1.clone());
    let mut hi = BigRational::new(hi.0.clone(), hi.1.clone());
    let sign_at = |x: &BigRational| zpoly_sign_at(f, x.numer(), x.denom());
    let mut s_lo = sign_at(&lo);
    if s_lo == 0 {
        return Some(lo);
    }
    if sign_at(&hi) == 0 {
        return Some(hi);
    }
    loop {
        let c = simplest_in_interval(&lo, &hi)?;
        if c.denom() > qmax {
            return None;
        }
        let s = sign_at(&c);
        if s == 0 {
            return Some(c);
        }
        if s == s_lo {
            lo = c;
            s_lo = s;
        } else {
            hi = c;
        }
    }
}

/// The rational with the smallest denominator strictly inside (lo, hi).
fn simplest_in_interval(lo: &BigRational, hi: &BigRational) -> Option<BigRational> {
    if lo >= hi {
        return None;
    }
    fn rec(lo: &BigRational, hi: &BigRational) -> BigRational {
        let fl = lo.floor();
        let candidate = &fl + BigRational::one();
        if &candidate < hi && &candidate > lo {
            return candidate;
        }
        let a = fl;
        let lo_f = lo - &a;
        let hi_f = hi - &a;
        if Zero::is_zero(&lo_f) {
            let inv = (&hi_f).recip();
            let n = inv.floor() + BigRational::one();
            return a + n.recip();
        }
        let r = rec(&hi_f.recip(), &lo_f.recip());
        a + r.recip()
    }
    Some(rec(lo, hi))
}

// ---------------------------------------------------------------------------
// parameter-coefficient path
// ---------------------------------------------------------------------------

fn one_symbolic_root(p: &[Scalar]) -> Result<Option<Scalar>> {
    for cand in candidate_dictionary() {
        if eval_upoly(p, &cand).is_zero() {
            return Ok(Some(cand));
        }
    }
    interpolated_root(p)
}

fn candidate_dictionary() -> Vec<Scalar> {
    let mut out = Vec::new();
    for n in [0i64, 1, -1, 2, -2, 3, -3] {
        out.push(Scalar::from_int(n));
    }
    for (n, d) in [(1i64, 2i64), (-1, 2), (1, 3), (-1, 3), (3, 2), (-3, 2), (2, 3)] {
        out.push(Scalar::from_ratio(n, d));
    }
    let one = Scalar::one();
    let params = [Scalar::param(0), Scalar::param(1)];
    for p in &params {
        let pm1 = p.sub(&one);
        for v in [
            p.clone(),
            p.neg(),
            p.inv(),
            p.inv().neg(),
            pm1.clone(),
            pm1.neg(),
            pm1.inv(),
            pm1.inv().neg(),
            p.div(&pm1),
            p.div(&pm1).neg(),
            pm1.div(p),
            pm1.div(p).neg(),
            p.add(&one),
            p.add(&one).neg(),
            p.add(&one).inv(),
        ] {
            out.push(v);
        }
    }
    let (a, b) = (&params[0], &params[1]);
    for v in [
        a.div(b),
        b.div(a),
        a.div(b).neg(),
        b.div(a).neg(),
        a.mul(b),
        a.mul(b).inv(),
        a.sub(b),
        b.sub(a),
        a.mul(b).neg(),
        a.sub(b).inv(),
        b.sub(a).inv(),
    ] {
        out.push(v);
    }
    out
}

/// Reconstruct a one-parameter rational-function root from specializations.
/// Two-parameter polynomials rely on the dictionary alone.
fn interpolated_root(p: &[Scalar]) -> Result<Option<Scalar>> {
    let uses_slot = |slot: usize| -> bool {
        p.iter().any(|c| match c {
            Scalar::Q(_) => false,
            Scalar::F { num, den } => num.degree_in(slot) > 0 || den.degree_in(slot) > 0,
        })
    };
    if uses_slot(1) {
        return Ok(None);
    }
    const MAX_DEG: usize = 4;
    let needed = 2 * MAX_DEG + 2;
    let sample_pool: Vec<i64> = vec![5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    let mut samples: Vec<(BigRational, Vec<BigRational>)> = Vec::new();
    for &s in &sample_pool {
        let val = BigRational::from_integer(BigInt::from(s));
        let vals = [val.clone(), BigRational::zero()];
        let spec: Option<Vec<Scalar>> = p
            .iter()
            .map(|c| specialize(c, &vals).map(Scalar::from_big))
            .collect();
        let Some(spec) = spec else { continue };
        if upoly_degree(&spec) != upoly_degree(&p.to_vec()) {
            continue; // leading coefficient vanished at this sample
        }
        let (roots, _) = field_roots_partial(&spec)?;
        let roots: Vec<BigRational> = roots
            .into_iter()
            .filter_map(|r| r.as_rational().cloned())
            .collect();
        samples.push((val, roots));
        if samples.len() >= needed {
            break;
        }
    }
    if samples.len() < needed {
        return Ok(None);
    }
    // align roots by sorted position within each specialization
    let max_roots = samples.iter().map(|(_, r)| r.len()).max().unwrap_or(0);
    for idx in 0..max_roots {
        let mut points = Vec::new();
        for (x, roots) in &samples {
            if let Some(r) = roots.get(idx) {
                points.push((x.clone(), r.clone()));
            }
        }
        if points.len() < needed {
            continue;
        }
        if let Some(cand) = fit_rational_function(&points, MAX_DEG) {
            if eval_upoly(p, &cand).is_zero() {
                return Ok(Some(cand));
            }
        }
    }
    Ok(None)
}

/// Find u(g)/v(g), deg <= d, with u(x_i) - r_i v(x_i) = 0 for all samples.
fn fit_rational_function(points: &[(BigRational, BigRational)], d: usize) -> Option<Scalar> {
    use crate::proj::kernel_basis;
    let width = 2 * (d + 1);
    let rows: Vec<Vec<Scalar>> = points
        .iter()
        .map(|(x, r)| {
            let mut row = Vec::with_capacity(width);
            let mut pow = BigRational::one();
            let mut xpows = Vec::with_capacity(d + 1);
            for _ in 0..=d {
                xpows.push(pow.clone());
                pow *= x;
            }
            for xp in &xpows {
                row.push(Scalar::from_big(xp.clone()));
            }
            for xp in &xpows {
                row.push(Scalar::from_big(-(r * xp)));
            }
            row
        })
        .collect();
    let basis = kernel_basis(&rows, width);
    for v in basis {
        let g = Scalar::param(0);
        let mut num = Scalar::zero();
        let mut den = Scalar::zero();
        for (k, c) in v.iter().take(d + 1).enumerate() {
            num = num.add(&c.mul(&g.pow(k as i64)));
        }
        for (k, c) in v.iter().skip(d + 1).enumerate() {
            den = den.add(&c.mul(&g.pow(k as i64)));
        }
        if den.is_zero() {
            continue;
        }
        return Some(num.div(&den));
    }
    None
}

/// Roots in P^1 of a binary form of degree `coeffs.len() - 1`, given by
/// coefficients of y^k against x^(deg-k). Returns the finite roots t (where
/// form(1, t) = 0) and whether [0:1] (t = infinity) is a root. The caller
/// must pass the full coefficient vector, trailing zeros included.
pub fn binary_form_roots_complete(coeffs_by_ydeg: &[Scalar]) -> Result<(Vec<Scalar>, bool)> {
    let mut v = coeffs_by_ydeg.to_vec();
    trim(&mut v);
    let m = match upoly_degree(&v) {
        Some(d) => d,
        None => return Err(Error::Internal("zero binary form".into())),
    };
    let inf = m < coeffs_by_ydeg.len() - 1;
    let finite = field_roots_complete(&v)?;
    Ok((finite, inf))
}

pub fn to_f64(r: &BigRational) -> Option<f64> {
    r.to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn rational_cubic_roots() {
        // (t-2)(2t+1)(t-1/3) * 3 = 6 t^3 - 13 t^2 ... build by multiplication
        let p = multiply(&[vec![s(-2), s(1)], vec![s(1), s(2)], vec![Scalar::from_ratio(-1, 3), s(1)]]);
        let roots = field_roots_complete(&p).unwrap();
        assert_eq!(
            roots,
            {
                let mut v = vec![s(2), Scalar::from_ratio(-1, 2), Scalar::from_ratio(1, 3)];
                v.sort();
                v
            }
        );
    }

    #[test]
    fn incomplete_split_detected() {
        // t^2 - 2 has no rational roots
        let p = vec![s(-2), s(0), s(1)];
        assert!(field_roots_complete(&p).is_err());
        let (roots, complete) = field_roots_partial(&p).unwrap();
        assert!(roots.is_empty());
        // degree-2 partial path stops without splitting
        assert!(!complete);
    }

    #[test]
    fn symbolic_linear_and_dictionary() {
        let g = Scalar::param(0);
        // (t - 1/g)(t - 2): dictionary finds 1/g, deflation finds 2
        let p = multiply(&[vec![g.inv().neg(), s(1)], vec![s(-2), s(1)]]);
        let mut roots = field_roots_complete(&p).unwrap();
        roots.sort();
        let mut expect = vec![g.inv(), s(2)];
        expect.sort();
        assert_eq!(roots, expect);
    }

    #[test]
    fn interpolation_recovers_unusual_root() {
        let g = Scalar::param(0);
        // root (3g^2+1)/(g+5) is far outside the dictionary
        let root = g
            .mul(&g)
            .mul(&s(3))
            .add(&Scalar::one())
            .div(&g.add(&s(5)));
        let p = multiply(&[vec![root.neg(), s(1)], vec![s(-1), s(1)], vec![s(-2), s(1)]]);
        let roots = field_roots_complete(&p).unwrap();
        assert!(roots.contains(&root));
        assert!(roots.contains(&s(1)));
        assert!(roots.contains(&s(2)));
    }

    fn multiply(factors: &[UPoly]) -> UPoly {
        let mut acc = vec![Scalar::one()];
        for f in factors {
            let mut next = vec![Scalar::zero(); acc.len() + f.len() - 1];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in f.iter().enumerate() {
                    next[i + j] = next[i + j].add(&a.mul(b));
                }
            }
            acc = next;
        }
        acc
    }
}
