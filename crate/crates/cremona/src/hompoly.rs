//! Homogeneous polynomials in x, y, z with exact coefficients.

use std::fmt;

use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::scalar::Scalar;

/// Raw trivariate polynomial; exponent order is (x, y, z).
pub type Form = MPoly<Scalar, 3>;

/// Local curve in two affine chart coordinates.
pub type LocalPoly = MPoly<Scalar, 2>;

/// A homogeneous polynomial together with its degree. The zero polynomial
/// carries degree 0 and is permitted only transiently (sums, kernels).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HomPoly {
    form: Form,
    degree: u32,
}

impl HomPoly {
    pub fn zero() -> Self {
        HomPoly {
            form: Form::zero(),
            degree: 0,
        }
    }

    pub fn from_form(form: Form) -> Result<Self> {
        if form.is_zero() {
            return Ok(Self::zero());
        }
        let degree = form.total_degree();
        if form.min_degree() != degree {
            return Err(Error::Inhomogeneous);
        }
        Ok(HomPoly { form, degree })
    }

    pub fn monomial(i: u32, j: u32, k: u32, c: Scalar) -> Self {
        HomPoly {
            degree: i + j + k,
            form: Form::monomial([i, j, k], c),
        }
    }

    pub fn variable(v: usize) -> Self {
        HomPoly {
            form: Form::var(v),
            degree: 1,
        }
    }

    /// Linear form a*x + b*y + c*z.
    pub fn linear(coeffs: &[Scalar; 3]) -> Self {
        let mut form = Form::zero();
        for (v, c) in coeffs.iter().enumerate() {
            form = form.add(&Form::var(v).scale(c));
        }
        HomPoly { form, degree: 1 }
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !self.is_zero() && !other.is_zero() && self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Self::from_form(self.form.add(&other.form))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        HomPoly {
            form: self.form.neg(),
            degree: self.degree,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let form = self.form.mul(&other.form);
        if form.is_zero() {
            return Self::zero();
        }
        HomPoly {
            degree: self.degree + other.degree,
            form,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        HomPoly {
            form: self.form.scale(c),
            degree: if c.is_zero() { 0 } else { self.degree },
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        HomPoly {
            form: self.form.pow(n),
            degree: self.degree * n,
        }
    }

    /// Substitute a triple of equal-degree homogeneous polynomials.
    pub fn substitute(&self, gx: &Self, gy: &Self, gz: &Self) -> Result<Self> {
        let e = gx.degree;
        if gy.degree != e || gz.degree != e {
            return Err(Error::DegreeMismatch(e, if gy.degree != e { gy.degree } else { gz.degree }));
        }
        if gx.is_zero() || gy.is_zero() || gz.is_zero() {
            return Err(Error::ZeroComponent);
        }
        let form = self
            .form
            .substitute(&[gx.form.clone(), gy.form.clone(), gz.form.clone()]);
        Self::from_form(form)
    }

    /// Normalized gcd; gcd with zero returns the other argument normalized.
    /// Homogeneity is exploited: common variable powers are stripped first
    /// and the rest reduces to a bivariate gcd of the dehomogenizations.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let var_min = |f: &HomPoly, v: usize| f.form.terms.keys().map(|e| e[v]).min().unwrap();
        let mut common = [0u32; 3];
        for v in 0..3 {
            common[v] = var_min(self, v).min(var_min(other, v));
        }
        let strip = |f: &HomPoly, mins: &dyn Fn(usize) -> u32| -> Form {
            let mut out = Form::zero();
            for (e, c) in &f.form.terms {
                let mut ne = *e;
                for v in 0..3 {
                    ne[v] -= mins(v);
                }
                out = out.add(&Form::monomial(ne, c.clone()));
            }
            out
        };
        let a_min: Vec<u32> = (0..3).map(|v| var_min(self, v)).collect();
        let b_min: Vec<u32> = (0..3).map(|v| var_min(other, v)).collect();
        let a = strip(self, &|v| a_min[v]);
        let b = strip(other, &|v| b_min[v]);
        // stripped forms have no z factor, so dehomogenizing at z = 1 is a
        // multiplicative bijection onto bivariate polynomials
        let dehom = |f: &Form| -> LocalPoly {
            let mut out = LocalPoly::zero();
            for (e, c) in &f.terms {
                out = out.add(&LocalPoly::monomial([e[0], e[1]], c.clone()));
            }
            out
        };
        let g2 = LocalPoly::gcd(&dehom(&a), &dehom(&b));
        let deg = g2.total_degree();
        let mut form = Form::zero();
        for (e, c) in &g2.terms {
            form = form.add(&Form::monomial([e[0], e[1], deg - e[0] - e[1]], c.clone()));
        }
        let monomial = Form::monomial(common, Scalar::one());
        let g = form.mul(&monomial).monic();
        Self::from_form(g).expect("gcd of homogeneous forms is homogeneous")
    }

    /// Scale so the first nonzero coefficient in descending graded-lex order
    /// equals 1.
    pub fn normalized(&self) -> Self {
        HomPoly {
            form: self.form.monic(),
            degree: self.degree,
        }
    }

    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let q = self.form.div_exact(&divisor.form)?;
        Some(Self::from_form(q).expect("quotient of homogeneous forms"))
    }

    pub fn eval(&self, p: &[Scalar; 3]) -> Scalar {
        let mut acc = Scalar::zero();
        for (e, c) in &self.form.terms {
            let t = c
                .mul(&p[0].pow(e[0] as i64))
                .mul(&p[1].pow(e[1] as i64))
                .mul(&p[2].pow(e[2] as i64));
            acc = acc.add(&t);
        }
        acc
    }

    pub fn partial(&self, v: usize) -> Self {
        let mut form = Form::zero();
        for (e, c) in &self.form.terms {
            if e[v] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[v] -= 1;
            form = form.add(&Form::monomial(ne, c.mul(&Scalar::from_int(e[v] as i64))));
        }
        Self::from_form(form).expect("derivative of homogeneous form")
    }

    /// Multiplicity at a coordinate-free point is handled in the bubble
    /// module; this is the raw coefficient access used there.
    pub fn coefficient(&self, e: [u32; 3]) -> Scalar {
        self.form.terms.get(&e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn render(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&[u32; 3], &Scalar)> = self.form.terms.iter().collect();
        terms.sort_by_key(|(e, _)| std::cmp::Reverse(**e));
        let mut out = String::new();
        for (i, (e, c)) in terms.iter().enumerate() {
            let (sign, abs) = render_signed(c, names);
            if i == 0 {
                if sign {
                    out.push('-');
                }
            } else {
                out.push_str(if sign { " - " } else { " + " });
            }
            let mut parts: Vec<String> = Vec::new();
            let is_const = e[0] == 0 && e[1] == 0 && e[2] == 0;
            if abs != "1" || is_const {
                parts.push(abs);
            }
            for (v, name) in ["x", "y", "z"].iter().enumerate() {
                match e[v] {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    k => parts.push(format!("{}^{}", name, k)),
                }
            }
            out.push_str(&parts.join("*"));
        }
        out
    }
}

/// Split a coefficient into (is_negative, absolute rendering). Non-rational
/// coefficients render in parentheses and never claim a sign.
fn render_signed(c: &Scalar, names: &[&str]) -> (bool, String) {
    if let Some(r) = c.as_rational() {
        use num_traits::Signed;
        if r.is_negative() {
            return (true, Scalar::from_big(r.abs()).render(names));
        }
        return (false, c.render(names));
    }
    (false, format!("({})", c.render(names)))
}

impl fmt::Debug for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&["g", "b"]))
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&["g", "b"]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(v: usize) -> HomPoly {
        HomPoly::variable(v)
    }

    #[test]
    fn homogeneity_enforced() {
        let x = var(0);
        let y2 = var(1).mul(&var(1));
        assert!(x.add(&y2).is_err());
        assert!(x.add(&var(1)).is_ok());
    }

    #[test]
    fn monomial_gcd() {
        // gcd(x^2 y, x y^2) = x y
        let a = var(0).pow(2).mul(&var(1));
        let b = var(0).mul(&var(1).pow(2));
        assert_eq!(a.gcd(&b), var(0).mul(&var(1)));
    }

    #[test]
    fn gcd_with_mixed_factor() {
        // gcd(x y z^2, y^2 z^2) = y z^2
        let a = var(0).mul(&var(1)).mul(&var(2).pow(2));
        let b = var(1).pow(2).mul(&var(2).pow(2));
        assert_eq!(a.gcd(&b), var(1).mul(&var(2).pow(2)));
    }

    #[test]
    fn gcd_coprime() {
        // gcd(x^2 + y z, y) = 1
        let a = var(0).pow(2).add(&var(1).mul(&var(2))).unwrap();
        let g = a.gcd(&var(1));
        assert_eq!(g, HomPoly::monomial(0, 0, 0, Scalar::one()));
    }

    #[test]
    fn substitution_examples() {
        let (x, y, z) = (var(0), var(1), var(2));
        // substitute(x, yz, xz, xy) = yz
        let s = x.substitute(&y.mul(&z), &x.mul(&z), &x.mul(&y)).unwrap();
        assert_eq!(s, y.mul(&z));
        // substitute(xy, yz, xz, xy) = x y z^2
        let s = x
            .mul(&y)
            .substitute(&y.mul(&z), &x.mul(&z), &x.mul(&y))
            .unwrap();
        assert_eq!(s, x.mul(&y).mul(&z.pow(2)));
        // substitute(x+y, x, y, z) = x+y
        let s = x.add(&y).unwrap().substitute(&x, &y, &z).unwrap();
        assert_eq!(s, x.add(&y).unwrap());
    }
}
