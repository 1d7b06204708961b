//! Elimination helpers for locating proper base points: resultants of two
//! homogeneous forms with respect to z, computed by evaluation and exact
//! interpolation rather than symbolic determinants.

use crate::hompoly::HomPoly;
use crate::scalar::Scalar;

/// Coefficients of `f` as a polynomial in z, each evaluated at (x0, y0).
pub fn z_slice(f: &HomPoly, x0: &Scalar, y0: &Scalar) -> Vec<Scalar> {
    let dz = f.form().degree_in(2) as usize;
    let mut out = vec![Scalar::zero(); dz + 1];
    for (e, c) in &f.form().terms {
        let v = c
            .mul(&x0.pow(e[0] as i64))
            .mul(&y0.pow(e[1] as i64));
        out[e[2] as usize] = out[e[2] as usize].add(&v);
    }
    out
}

/// Determinant by Gaussian elimination over the field.
fn det(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut acc = Scalar::one();
    for col in 0..n {
        let mut pivot = None;
        for (r, row) in m.iter().enumerate().skip(col) {
            if !row[col].is_zero() {
                pivot = Some(r);
                break;
            }
        }
        let Some(p) = pivot else {
            return Scalar::zero();
        };
        if p != col {
            m.swap(col, p);
            acc = acc.neg();
        }
        let inv = m[col][col].inv();
        acc = acc.mul(&m[col][col]);
        for r in (col + 1)..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].mul(&inv);
            for c in col..n {
                let delta = m[col][c].mul(&factor);
                m[r][c] = m[r][c].sub(&delta);
            }
        }
    }
    acc
}

/// Sylvester resultant in z of the two z-slices, with fixed generic sizes.
fn sylvester_at(a: &[Scalar], b: &[Scalar], da: usize, db: usize) -> Scalar {
    let n = da + db;
    if n == 0 {
        return Scalar::one();
    }
    let mut m = vec![vec![Scalar::zero(); n]; n];
    for row in 0..db {
        for k in 0..=da {
            m[row][row + k] = a[da - k].clone();
        }
    }
    for row in 0..da {
        for k in 0..=db {
            m[db + row][row + k] = b[db - k].clone();
        }
    }
    det(m)
}

/// The resultant in z of two forms, as the univariate restriction
/// r(t) = Res_z(A, B)(t, 1), together with the value Res_z(A, B)(1, 0).
/// Computed by evaluation/interpolation; exactness comes from interpolating
/// at more points than the degree bound.
pub fn resultant_z_profile(a: &HomPoly, b: &HomPoly) -> (Vec<Scalar>, Scalar) {
    let da = a.form().degree_in(2) as usize;
    let db = b.form().degree_in(2) as usize;
    let bound = (a.degree() as usize) * (b.degree() as usize) + 1;
    let mut xs = Vec::with_capacity(bound);
    let mut ys = Vec::with_capacity(bound);
    for i in 0..bound {
        let t = Scalar::from_int(i as i64);
        let av = z_slice(a, &t, &Scalar::one());
        let bv = z_slice(b, &t, &Scalar::one());
        ys.push(sylvester_at(&av, &bv, da, db));
        xs.push(t);
    }
    let coeffs = newton_interpolate(&xs, &ys);
    let at_infinity = {
        let av = z_slice(a, &Scalar::one(), &Scalar::zero());
        let bv = z_slice(b, &Scalar::one(), &Scalar::zero());
        sylvester_at(&av, &bv, da, db)
    };
    (coeffs, at_infinity)
}

/// Newton interpolation returning monomial coefficients by ascending degree.
fn newton_interpolate(xs: &[Scalar], ys: &[Scalar]) -> Vec<Scalar> {
    let n = xs.len();
    let mut dd: Vec<Scalar> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let denom = xs[i].sub(&xs[i - level]);
            dd[i] = dd[i].sub(&dd[i - 1]).div(&denom);
        }
    }
    // expand the Newton form
    let mut coeffs = vec![Scalar::zero(); n];
    let mut basis = vec![Scalar::one()];
    for (i, c) in dd.iter().enumerate() {
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] = coeffs[k].add(&c.mul(b));
        }
        if i + 1 < n {
            // basis *= (t - xs[i])
            let mut next = vec![Scalar::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] = next[k + 1].add(b);
                next[k] = next[k].sub(&b.mul(&xs[i]));
            }
            basis = next;
        }
    }
    while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
        coeffs.pop();
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hompoly::HomPoly;

    fn var(v: usize) -> HomPoly {
        HomPoly::variable(v)
    }

    #[test]
    fn resultant_of_transverse_lines() {
        // Res_z(x - z, y - 2z) picks up the common point [1:2:1] at t = 1/2
        let a = var(0).sub(&var(2)).unwrap();
        let b = var(1).sub(&var(2).mul(&HomPoly::monomial(0, 0, 0, Scalar::from_int(2)))).unwrap();
        let (r, _inf) = resultant_z_profile(&a, &b);
        // r(t) = R(t, 1) vanishes where a common zero with y != 0 projects
        let val = crate::roots::eval_upoly(&r, &Scalar::from_ratio(1, 2));
        assert!(val.is_zero());
    }

    #[test]
    fn resultant_nonzero_for_coprime() {
        let a = var(0);
        let b = var(2);
        let (r, inf) = resultant_z_profile(&a, &b);
        // Res_z(x, z) = x: r(t) = t, infinity value nonzero
        assert_eq!(r.len(), 2);
        assert!(r[0].is_zero());
        assert!(!inf.is_zero() || !r.iter().all(|c| c.is_zero()));
    }
}
