//! Transport of infinitely near points along maps, via curve germs.
//!
//! A bubble point of order k is represented by a parametrized branch through
//! its chart chain; pushing the branch forward through a map and reading off
//! the standard coordinates of the image branch gives the image point. All
//! arithmetic is with exact polynomial germs and valuations, so the reading
//! is exact.

use crate::bubble::{BubblePoint, Tail};
use crate::error::{Error, Result};
use crate::proj::ProjPoint;
use crate::scalar::Scalar;

/// Polynomial germ in the branch parameter s, dense by ascending degree.
pub type Germ = Vec<Scalar>;

fn germ_trim(g: &mut Germ) {
    while g.last().map(|c| c.is_zero()).unwrap_or(false) {
        g.pop();
    }
}

fn germ_is_zero(g: &Germ) -> bool {
    g.iter().all(|c| c.is_zero())
}

fn germ_val(g: &Germ) -> Option<usize> {
    g.iter().position(|c| !c.is_zero())
}

fn germ_add(a: &Germ, b: &Germ) -> Germ {
    let mut out = vec![Scalar::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = out[i].add(c);
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = out[i].add(c);
    }
    germ_trim(&mut out);
    out
}

fn germ_scale(a: &Germ, c: &Scalar) -> Germ {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|k| k.mul(c)).collect()
}

fn germ_mul(a: &Germ, b: &Germ) -> Germ {
    if germ_is_zero(a) || germ_is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&ca.mul(cb));
        }
    }
    germ_trim(&mut out);
    out
}

fn germ_shift_down(a: &Germ, k: usize) -> Germ {
    a.iter().skip(k).cloned().collect()
}

/// Truncated inverse of a germ with nonzero constant term.
fn germ_inv(a: &Germ, prec: usize) -> Germ {
    let a0 = a[0].inv();
    let mut out = vec![Scalar::zero(); prec];
    out[0] = a0.clone();
    for n in 1..prec {
        // sum_{i=1..n} a_i * out_{n-i} = 0 constraint
        let mut acc = Scalar::zero();
        for i in 1..=n {
            let ai = a.get(i).cloned().unwrap_or_else(Scalar::zero);
            acc = acc.add(&ai.mul(&out[n - i]));
        }
        out[n] = acc.neg().mul(&a0);
    }
    out
}

fn germ_truncate(a: &Germ, prec: usize) -> Germ {
    a.iter().take(prec).cloned().collect()
}

/// A branch germ through a bubble point: the parametrized curve in the
/// deepest chart is (s, 0) bent by `bend * s`, unwound through the chart
/// transitions back to homogeneous coordinates.
pub fn branch_through(p: &BubblePoint, bend: i64) -> [Germ; 3] {
    let s = vec![Scalar::zero(), Scalar::one()];
    let bent = vec![Scalar::zero(), Scalar::from_int(bend)];
    let (mut u, mut v) = (s, bent);
    for t in p.tail.iter().rev() {
        let (pu, pv) = match t {
            // x_old = X, y_old = X (Y + t)
            Tail::Value(c) => (
                u.clone(),
                germ_mul(&u, &germ_add(&v, &vec![c.clone()])),
            ),
            // x_old = X Y, y_old = X
            Tail::Inf => (germ_mul(&u, &v), u.clone()),
        };
        u = pu;
        v = pv;
    }
    let [a, b, c] = p.base.coords();
    let one = vec![Scalar::one()];
    if !c.is_zero() {
        // chart (x/z - a, y/z - b)
        [
            germ_add(&u, &vec![a.clone()]),
            germ_add(&v, &vec![b.clone()]),
            one,
        ]
    } else if !b.is_zero() {
        // chart (x/y - a, z/y)
        [germ_add(&u, &vec![a.clone()]), one, v]
    } else {
        // chart (y/x, z/x)
        [one, u, v]
    }
}

/// Read the standard coordinates of the image branch for `levels` levels.
/// `None` entries in the result signal that the branch could not be read
/// (degenerate germ).
pub fn read_branch(coords: &[Germ; 3], levels: usize) -> Result<BubblePoint> {
    let mut coords = coords.clone();
    // strip the common s-power (contracted-curve correction)
    let vals: Vec<usize> = coords
        .iter()
        .filter(|g| !germ_is_zero(g))
        .map(|g| germ_val(g).unwrap())
        .collect();
    if vals.is_empty() {
        return Err(Error::Internal("zero branch germ".into()));
    }
    let strip = *vals.iter().min().unwrap();
    for g in coords.iter_mut() {
        *g = germ_shift_down(g, strip);
    }
    let prec = 8 * (levels + 2) + 8;
    let at0: Vec<Scalar> = coords
        .iter()
        .map(|g| g.first().cloned().unwrap_or_else(Scalar::zero))
        .collect();
    let base = ProjPoint::new([at0[0].clone(), at0[1].clone(), at0[2].clone()])?;
    let [a, b, c] = base.coords();
    // localize the germ in the affine chart of the base point
    let (mut u, mut v) = if !c.is_zero() {
        let zinv = germ_inv(&coords[2], prec);
        let x = germ_truncate(&germ_mul(&coords[0], &zinv), prec);
        let y = germ_truncate(&germ_mul(&coords[1], &zinv), prec);
        (
            germ_add(&x, &vec![a.neg()]),
            germ_add(&y, &vec![b.neg()]),
        )
    } else if !b.is_zero() {
        let yinv = germ_inv(&coords[1], prec);
        let x = germ_truncate(&germ_mul(&coords[0], &yinv), prec);
        let z = germ_truncate(&germ_mul(&coords[2], &yinv), prec);
        (germ_add(&x, &vec![a.neg()]), z)
    } else {
        let xinv = germ_inv(&coords[0], prec);
        let y = germ_truncate(&germ_mul(&coords[1], &xinv), prec);
        let z = germ_truncate(&germ_mul(&coords[2], &xinv), prec);
        (y, z)
    };
    let mut point = BubblePoint::proper(base);
    for _ in 0..levels {
        let vu = germ_val(&u);
        let vv = germ_val(&v);
        match (vu, vv) {
            (None, None) => {
                return Err(Error::UnsupportedCase(
                    "branch germ too degenerate to read".into(),
                ))
            }
            (Some(a_ord), Some(b_ord)) if b_ord < a_ord => {
                // direction at infinity; swap chart: X = y, Y = x / y
                let vinv = germ_inv(&germ_shift_down(&v, b_ord), prec);
                let ratio = germ_truncate(
                    &germ_mul(&germ_shift_down(&u, b_ord), &vinv),
                    prec,
                );
                point = point.child(Tail::Inf);
                let new_u = v.clone();
                let new_v = ratio;
                u = new_u;
                v = new_v;
            }
            (Some(a_ord), _) => {
                let uinv = germ_inv(&germ_shift_down(&u, a_ord), prec);
                let shifted_v = match vv {
                    Some(b_ord) if b_ord >= a_ord => germ_shift_down(&v, a_ord),
                    None => Vec::new(),
                    _ => unreachable!("covered by the infinity case"),
                };
                let ratio = germ_truncate(&germ_mul(&shifted_v, &uinv), prec);
                let t = ratio.first().cloned().unwrap_or_else(Scalar::zero);
                point = point.child(Tail::Value(t.clone()));
                let new_v = germ_add(&ratio, &vec![t.neg()]);
                v = new_v;
            }
            (None, Some(_)) => {
                // u identically zero: the branch lies in the axis; direction
                // at infinity forever
                let vinv = germ_inv(&germ_shift_down(&v, vv.unwrap()), prec);
                let _ = vinv;
                point = point.child(Tail::Inf);
                std::mem::swap(&mut u, &mut v);
                // after swap u = old v (nonzero), v = 0 ratio
                v = Vec::new();
            }
        }
    }
    Ok(point)
}

/// Image of a bubble point under a projective automorphism.
pub fn aut_image(aut: &crate::proj::ProjAut, p: &BubblePoint) -> BubblePoint {
    if p.is_proper() {
        return BubblePoint::proper(aut.apply_point(&p.base));
    }
    for bend in [0i64, 1, -1, 2, 3] {
        let branch = branch_through(p, bend);
        let image: [Germ; 3] = std::array::from_fn(|i| {
            let mut acc: Germ = Vec::new();
            for (j, coord) in branch.iter().enumerate() {
                acc = germ_add(&acc, &germ_scale(coord, &aut.matrix().rows[i][j]));
            }
            acc
        });
        if let Ok(q) = read_branch(&image, p.order()) {
            // double-check with a second bend for stability
            let branch2 = branch_through(p, bend + 5);
            let image2: [Germ; 3] = std::array::from_fn(|i| {
                let mut acc: Germ = Vec::new();
                for (j, coord) in branch2.iter().enumerate() {
                    acc = germ_add(&acc, &germ_scale(coord, &aut.matrix().rows[i][j]));
                }
                acc
            });
            if let Ok(q2) = read_branch(&image2, p.order()) {
                if q == q2 {
                    return q;
                }
            }
        }
    }
    unreachable!("automorphisms transport every bubble point");
}

/// Push a branch through a polynomial triple (the germ of a rational map).
pub fn map_branch(triple: [&crate::hompoly::HomPoly; 3], branch: &[Germ; 3]) -> [Germ; 3] {
    std::array::from_fn(|i| {
        let f = triple[i];
        let mut acc: Germ = Vec::new();
        for (e, coeff) in &f.form().terms {
            let mut term: Germ = vec![coeff.clone()];
            for (v, g) in branch.iter().enumerate() {
                for _ in 0..e[v] {
                    term = germ_mul(&term, g);
                }
            }
            acc = germ_add(&acc, &term);
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proj::{Mat3, ProjAut};

    fn pt(a: i64, b: i64, c: i64) -> ProjPoint {
        ProjPoint::from_ints(a, b, c)
    }

    #[test]
    fn identity_fixes_chains() {
        let id = ProjAut::identity();
        let p = BubblePoint {
            base: pt(1, 0, 0),
            tail: vec![
                Tail::Value(Scalar::from_int(0)),
                Tail::Inf,
                Tail::Value(Scalar::from_int(-1)),
                Tail::Value(Scalar::from_int(0)),
            ],
        };
        assert_eq!(aut_image(&id, &p), p);
    }

    #[test]
    fn diagonal_scales_direction() {
        // diag(1,1,2) on base [1:0:0]: direction z = t y maps to z = 2 t y
        let aut = ProjAut::new(Mat3::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, 2]])).unwrap();
        let p = BubblePoint {
            base: pt(1, 0, 0),
            tail: vec![Tail::Value(Scalar::from_int(3))],
        };
        let q = aut_image(&aut, &p);
        assert_eq!(q.base, pt(1, 0, 0));
        assert_eq!(q.tail, vec![Tail::Value(Scalar::from_int(6))]);
    }

    #[test]
    fn swap_moves_infinity_direction() {
        // [x:z:y] on base [1:0:0]: direction y = 0 (t = inf) maps to z = 0 (t = 0)
        let aut = ProjAut::new(Mat3::from_ints([[1, 0, 0], [0, 0, 1], [0, 1, 0]])).unwrap();
        let p = BubblePoint {
            base: pt(1, 0, 0),
            tail: vec![Tail::Inf],
        };
        let q = aut_image(&aut, &p);
        assert_eq!(q.base, pt(1, 0, 0));
        assert_eq!(q.tail, vec![Tail::Value(Scalar::zero())]);
    }
}
