//! Elements of the exact coefficient field: arbitrary-precision rationals,
//! optionally extended by up to two transcendental parameter symbols (so
//! values are ratios of parameter polynomials over the rationals).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::mpoly::MPoly;

/// Polynomial in the parameter symbols (slot 0 and slot 1).
pub type PP = MPoly<BigRational, 2>;

/// An exact field element: a rational number, or a reduced ratio of
/// parameter polynomials when parameter symbols are involved.
#[derive(Clone, PartialEq, Eq)]
pub enum Scalar {
    Q(BigRational),
    F { num: PP, den: PP },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Q(<BigRational as Zero>::zero())
    }

    pub fn one() -> Self {
        Scalar::Q(<BigRational as One>::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Q(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0);
        Scalar::Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_big(r: BigRational) -> Self {
        Scalar::Q(r)
    }

    /// The parameter symbol in slot 0 or 1.
    pub fn param(slot: usize) -> Self {
        assert!(slot < 2, "at most two parameter symbols");
        Scalar::F {
            num: PP::var(slot),
            den: PP::one(),
        }
        .normalized()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => Zero::is_zero(r),
            Scalar::F { num, .. } => num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self == &Scalar::one()
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Q(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::F { .. } => None,
        }
    }

    fn to_fraction(&self) -> (PP, PP) {
        match self {
            Scalar::Q(r) => (PP::constant(r.clone()), PP::one()),
            Scalar::F { num, den } => (num.clone(), den.clone()),
        }
    }

    /// Reduce by the gcd and make the denominator monic (graded-lex leading
    /// coefficient 1); constants collapse back to plain rationals.
    fn normalized(self) -> Self {
        match self {
            Scalar::Q(r) => Scalar::Q(r),
            Scalar::F { num, den } => {
                assert!(!den.is_zero(), "zero denominator");
                if num.is_zero() {
                    return Scalar::zero();
                }
                if let (Some(n), Some(d)) = (num.constant_value(), den.constant_value()) {
                    return Scalar::Q(n / d);
                }
                let g = PP::gcd(&num, &den);
                let num = num.div_exact(&g).expect("gcd divides");
                let den = den.div_exact(&g).expect("gcd divides");
                let lead = den.leading().expect("nonzero").1.clone();
                let inv_lead = lead.recip();
                let num = num.scale(&inv_lead);
                let den = den.scale(&inv_lead);
                if let (Some(n), Some(d)) = (num.constant_value(), den.constant_value()) {
                    return Scalar::Q(n / d);
                }
                Scalar::F { num, den }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            _ => {
                let (an, ad) = self.to_fraction();
                let (bn, bd) = other.to_fraction();
                Scalar::F {
                    num: an.mul(&bd).add(&bn.mul(&ad)),
                    den: ad.mul(&bd),
                }
                .normalized()
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            _ => {
                let (an, ad) = self.to_fraction();
                let (bn, bd) = other.to_fraction();
                Scalar::F {
                    num: an.mul(&bn),
                    den: ad.mul(&bd),
                }
                .normalized()
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::F { num, den } => Scalar::F {
                num: num.neg(),
                den: den.clone(),
            },
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::F { num, den } => Scalar::F {
                num: den.clone(),
                den: num.clone(),
            }
            .normalized(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, n: i64) -> Self {
        if n < 0 {
            return self.inv().pow(-n);
        }
        let mut result = Scalar::one();
        let mut base = self.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        result
    }

    /// Exact rational n-th root, when one exists.
    pub fn nth_root(&self, n: u32) -> Option<Scalar> {
        let r = self.as_rational()?;
        if Zero::is_zero(r) {
            return Some(Scalar::zero());
        }
        if r.is_negative() && n % 2 == 0 {
            return None;
        }
        let num = integer_nth_root(r.numer(), n)?;
        let den = integer_nth_root(r.denom(), n)?;
        Some(Scalar::Q(BigRational::new(num, den)))
    }

    /// Exact square root, covering rationals and perfect-square ratios of
    /// parameter polynomials.
    pub fn sqrt_exact(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(_) => self.nth_root(2),
            Scalar::F { num, den } => {
                let coeff_sqrt = |c: &BigRational| -> Option<BigRational> {
                    let n = integer_nth_root(c.numer(), 2)?;
                    let d = integer_nth_root(c.denom(), 2)?;
                    Some(BigRational::new(n, d))
                };
                let n = num.sqrt_with(&coeff_sqrt)?;
                let d = den.sqrt_with(&coeff_sqrt)?;
                Some(
                    Scalar::F { num: n, den: d }.normalized(),
                )
            }
        }
    }

    /// Key for the canonical orbit representative: reduced fraction ordered
    /// lexicographically by (numerator, denominator).
    pub fn canonical_key(&self) -> Option<(BigInt, BigInt)> {
        self.as_rational()
            .map(|r| (r.numer().clone(), r.denom().clone()))
    }

    pub fn render(&self, names: &[&str]) -> String {
        match self {
            Scalar::Q(r) => format_rational(r),
            Scalar::F { num, den } => {
                let n = format_pp(num, names);
                if den.is_constant() && den.constant_value().map(|c| c.is_one()).unwrap_or(false) {
                    n
                } else {
                    format!("({})/({})", n, format_pp(den, names))
                }
            }
        }
    }
}

/// Exact n-th root of an integer (sign-aware for odd n).
fn integer_nth_root(v: &BigInt, n: u32) -> Option<BigInt> {
    if v.is_zero() {
        return Some(BigInt::zero());
    }
    let negative = v.is_negative();
    if negative && n % 2 == 0 {
        return None;
    }
    let mag = v.abs();
    let root = mag.nth_root(n);
    if num_traits::pow(root.clone(), n as usize) == mag {
        Some(if negative { -root } else { root })
    } else {
        None
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn format_pp(p: &PP, names: &[&str]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    // render in descending graded-lex order
    let mut terms: Vec<(&[u32; 2], &BigRational)> = p.terms.iter().collect();
    terms.sort_by_key(|(e, _)| std::cmp::Reverse((e.iter().sum::<u32>(), **e)));
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let mut parts: Vec<String> = Vec::new();
        let is_const = e[0] == 0 && e[1] == 0;
        let abs = c.abs();
        if !abs.is_one() || is_const {
            parts.push(format_rational(&abs));
        }
        for (slot, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let name = names.get(slot).copied().unwrap_or(["p", "q"][slot]);
            if k == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{}^{}", name, k));
            }
        }
        let body = parts.join("*");
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    out
}

impl crate::mpoly::Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Scalar::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Scalar::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Scalar::mul(self, other)
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn inv(&self) -> Self {
        Scalar::inv(self)
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => a.cmp(b),
            (Scalar::Q(_), Scalar::F { .. }) => Ordering::Less,
            (Scalar::F { .. }, Scalar::Q(_)) => Ordering::Greater,
            (Scalar::F { num: an, den: ad }, Scalar::F { num: bn, den: bd }) => {
                ad.cmp(bd).then_with(|| an.cmp(bn))
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&["g", "b"]))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&["g", "b"]))
    }
}

/// Specialize the parameter slots to rational values.
pub fn specialize(s: &Scalar, values: &[BigRational; 2]) -> Option<BigRational> {
    match s {
        Scalar::Q(r) => Some(r.clone()),
        Scalar::F { num, den } => {
            let eval = |p: &PP| -> BigRational {
                let mut acc: BigRational = Zero::zero();
                for (e, c) in &p.terms {
                    let mut t = c.clone();
                    for slot in 0..2 {
                        for _ in 0..e[slot] {
                            t *= &values[slot];
                        }
                    }
                    acc += t;
                }
                acc
            };
            let d = eval(den);
            if Zero::is_zero(&d) {
                return None;
            }
            Some(eval(num) / d)
        }
    }
}

/// Convenience: a Scalar that may still be converted to f64 for diagnostics.
pub fn approx(s: &Scalar) -> Option<f64> {
    s.as_rational().and_then(|r| r.to_f64())
}

/// Substitute scalar values for the parameter slots.
pub fn subst_params(s: &Scalar, values: &[Scalar; 2]) -> crate::error::Result<Scalar> {
    match s {
        Scalar::Q(_) => Ok(s.clone()),
        Scalar::F { num, den } => {
            let eval = |p: &PP| -> Scalar {
                let mut acc = Scalar::zero();
                for (e, c) in &p.terms {
                    let term = Scalar::Q(c.clone())
                        .mul(&values[0].pow(e[0] as i64))
                        .mul(&values[1].pow(e[1] as i64));
                    acc = acc.add(&term);
                }
                acc
            };
            let d = eval(den);
            if d.is_zero() {
                return Err(crate::error::Error::Degenerate(
                    "parameter substitution hits a pole".into(),
                ));
            }
            Ok(eval(num).div(&d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_on_samples() {
        let samples = [
            Scalar::from_int(0),
            Scalar::from_int(2),
            Scalar::from_ratio(-3, 7),
            Scalar::param(0),
            Scalar::param(0).add(&Scalar::one()),
            Scalar::param(1).mul(&Scalar::param(0)).sub(&Scalar::from_int(4)),
        ];
        for a in &samples {
            for b in &samples {
                for c in &samples {
                    let lhs = a.add(b).mul(c);
                    let rhs = a.mul(c).add(&b.mul(c));
                    assert_eq!(lhs, rhs);
                }
                assert_eq!(a.add(b), b.add(a));
                assert_eq!(a.mul(b), b.mul(a));
                if !b.is_zero() {
                    assert_eq!(a.div(b).mul(b), *a);
                }
            }
            assert_eq!(a.sub(a), Scalar::zero());
        }
    }

    #[test]
    fn normalization_idempotent_and_reducing() {
        let g = Scalar::param(0);
        // (g^2 - 1)/(g - 1) reduces to g + 1
        let num = g.mul(&g).sub(&Scalar::one());
        let den = g.sub(&Scalar::one());
        let v = num.div(&den);
        assert_eq!(v, g.add(&Scalar::one()));
        // constant ratios collapse to rationals
        let c = Scalar::param(0).div(&Scalar::param(0));
        assert!(c.is_rational());
        assert!(c.is_one());
    }

    #[test]
    fn exact_roots() {
        assert_eq!(
            Scalar::from_ratio(-27, 8).nth_root(3),
            Some(Scalar::from_ratio(-3, 2))
        );
        assert_eq!(Scalar::from_int(2).nth_root(2), None);
        assert_eq!(Scalar::from_ratio(9, 4).nth_root(2), Some(Scalar::from_ratio(3, 2)));
    }

    #[test]
    fn rendering() {
        let g = Scalar::param(0);
        let two_g = g.mul(&Scalar::from_int(2));
        let v = g.mul(&g).sub(&Scalar::one()).div(&two_g);
        assert_eq!(v.render(&["g"]), "(1/2*g^2 - 1/2)/(g)");
    }
}
