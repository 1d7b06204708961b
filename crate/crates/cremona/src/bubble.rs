//! The bubble space of the plane: proper and infinitely near points in
//! standard coordinates, chart transitions, strict transforms, curve
//! membership, multiplicities, proximity, and conics through five points.
//!
//! An infinitely near point is stored as a normalized proper base point plus
//! the list of blow-up chart values t_2, ..., t_r, each a field element or
//! the infinity tag. In every chart the tracked point sits at the origin and
//! the exceptional curve of the previous blow-up is the first coordinate
//! axis; the two transition substitutions keep that invariant.

use std::fmt;

use crate::error::{Error, Result};
use crate::hompoly::{HomPoly, LocalPoly};
use crate::proj::{kernel_basis, solve_4pt, Line, ProjAut, ProjPoint};
use crate::scalar::Scalar;

/// A chart value: an element of the field, or the origin of the second
/// blow-up chart.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tail {
    Value(Scalar),
    Inf,
}

impl Tail {
    pub fn value(&self) -> Option<&Scalar> {
        match self {
            Tail::Value(s) => Some(s),
            Tail::Inf => None,
        }
    }

    pub fn render(&self, names: &[&str]) -> String {
        match self {
            Tail::Value(s) => s.render(names),
            Tail::Inf => "inf".to_string(),
        }
    }
}

impl fmt::Debug for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&["g", "b"]))
    }
}

/// A point of the bubble space in standard coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BubblePoint {
    pub base: ProjPoint,
    pub tail: Vec<Tail>,
}

impl BubblePoint {
    pub fn proper(base: ProjPoint) -> Self {
        BubblePoint {
            base,
            tail: Vec::new(),
        }
    }

    pub fn is_proper(&self) -> bool {
        self.tail.is_empty()
    }

    /// Infinitesimal order: 0 for proper points.
    pub fn order(&self) -> usize {
        self.tail.len()
    }

    pub fn prefix(&self, tail_len: usize) -> BubblePoint {
        BubblePoint {
            base: self.base.clone(),
            tail: self.tail[..tail_len].to_vec(),
        }
    }

    pub fn parent(&self) -> Option<BubblePoint> {
        if self.tail.is_empty() {
            None
        } else {
            Some(self.prefix(self.tail.len() - 1))
        }
    }

    pub fn child(&self, t: Tail) -> BubblePoint {
        let mut tail = self.tail.clone();
        tail.push(t);
        BubblePoint {
            base: self.base.clone(),
            tail,
        }
    }

    pub fn render(&self, names: &[&str]) -> String {
        if self.tail.is_empty() {
            return self.base.render(names);
        }
        let mut out = format!("({}", self.base.render(names));
        for t in &self.tail {
            out.push_str(", ");
            out.push_str(&t.render(names));
        }
        out.push(')');
        out
    }
}

impl fmt::Debug for BubblePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&["g", "b"]))
    }
}

/// Localize a curve in the affine chart where `base` is the origin,
/// following the three-case normalization of proper points.
pub fn affine_localize(curve: &HomPoly, base: &ProjPoint) -> LocalPoly {
    let [a, b, c] = base.coords();
    let x0 = LocalPoly::var(0);
    let y0 = LocalPoly::var(1);
    let one = LocalPoly::one();
    let (ix, iy, iz) = if !c.is_zero() {
        // [a:b:1]
        (
            x0.add(&LocalPoly::constant(a.clone())),
            y0.add(&LocalPoly::constant(b.clone())),
            one,
        )
    } else if !b.is_zero() {
        // [a:1:0]
        (
            x0.add(&LocalPoly::constant(a.clone())),
            one,
            y0,
        )
    } else {
        // [1:0:0]
        (one, x0, y0)
    };
    let mut out = LocalPoly::zero();
    for (e, coeff) in &curve.form().terms {
        let term = ix.pow(e[0]).mul(&iy.pow(e[1])).mul(&iz.pow(e[2]));
        out = out.add(&term.scale(coeff));
    }
    out
}

/// One blow-up chart transition. Substitutes the chart map for `t` and
/// divides by the exceptional coordinate `divide` times (exactly).
pub fn transition(local: &LocalPoly, t: &Tail, divide: u32) -> LocalPoly {
    let x = LocalPoly::var(0);
    let y = LocalPoly::var(1);
    let images = match t {
        // x_old = X, y_old = X (Y + t)
        Tail::Value(v) => [
            x.clone(),
            x.mul(&y.add(&LocalPoly::constant(v.clone()))),
        ],
        // x_old = X Y, y_old = X
        Tail::Inf => [x.mul(&y), x],
    };
    let substituted = local.substitute(&images);
    substituted
        .div_var_power(0, divide)
        .expect("strict transform division is exact")
}

/// Order of vanishing at the chart origin.
pub fn local_mult(p: &LocalPoly) -> u32 {
    if p.is_zero() {
        u32::MAX
    } else {
        p.min_degree()
    }
}

/// Strict transform of `curve` in the chart where `p` is the origin. The
/// division count at each level is the multiplicity of the previous strict
/// transform, so a unit result means the curve misses `p`.
pub fn localize(curve: &HomPoly, p: &BubblePoint) -> LocalPoly {
    assert!(!curve.is_zero(), "localize of the zero curve");
    let mut local = affine_localize(curve, &p.base);
    for t in &p.tail {
        let m = local_mult(&local);
        local = transition(&local, t, m);
    }
    local
}

/// Multiplicity of the strict transform of `curve` at `p`.
pub fn multiplicity(curve: &HomPoly, p: &BubblePoint) -> u32 {
    local_mult(&localize(curve, p))
}

/// A curve passes through an infinitely near point when its iterated strict
/// transform vanishes at the chart origin.
pub fn passes_through(curve: &HomPoly, p: &BubblePoint) -> bool {
    multiplicity(curve, p) >= 1
}

/// p is proximate to q when p lies on the (strict transform of the)
/// exceptional curve of q. In standard coordinates this is checked by
/// transporting that exceptional curve through the charts.
pub fn proximate(p: &BubblePoint, q: &BubblePoint) -> bool {
    if p.base != q.base {
        return false;
    }
    let k = p.tail.len();
    let j = q.tail.len();
    if j >= k {
        return false;
    }
    if p.tail[..j] != q.tail[..j] {
        return false;
    }
    // in the chart after blowing up q, its exceptional curve is {x = 0}
    let mut e = LocalPoly::var(0);
    for t in &p.tail[(j + 1)..k] {
        let m = local_mult(&e);
        e = transition(&e, t, m);
        if local_mult(&e) == 0 {
            return false;
        }
    }
    local_mult(&e) >= 1
}

/// Satellite: proximate with an infinitesimal-order gap larger than one.
pub fn satellite(p: &BubblePoint, q: &BubblePoint) -> bool {
    p.tail.len() >= q.tail.len() + 2 && proximate(p, q)
}

/// The unique line through a proper point and a first-neighborhood
/// direction, per the standard-coordinate case table.
pub fn direction_line(base: &ProjPoint, t: &Tail) -> Line {
    let [a, b, c] = base.coords();
    let one = Scalar::one();
    let zero = Scalar::zero();
    if !c.is_zero() {
        // [a:b:1]
        match t {
            Tail::Value(v) => Line([v.neg(), one, v.mul(a).sub(b)]),
            Tail::Inf => Line([one, zero, a.neg()]),
        }
    } else if !b.is_zero() {
        // [a:1:0]
        match t {
            Tail::Value(v) => Line([v.neg(), v.mul(a), one]),
            Tail::Inf => Line([one, a.neg(), zero]),
        }
    } else {
        // [1:0:0]
        match t {
            Tail::Value(v) => Line([zero, v.neg(), one]),
            Tail::Inf => Line([zero.clone(), one, zero]),
        }
    }
}

/// Inverse of `direction_line`: the chart value of a line through `base`.
pub fn line_direction(base: &ProjPoint, line: &Line) -> Result<Tail> {
    if !line.contains(base) {
        return Err(Error::Degenerate(
            "line does not pass through the point".into(),
        ));
    }
    let [a, b, c] = base.coords();
    let [u, v, w] = &line.0;
    if !c.is_zero() {
        if v.is_zero() {
            Ok(Tail::Inf)
        } else {
            Ok(Tail::Value(u.neg().div(v)))
        }
    } else if !b.is_zero() {
        if w.is_zero() {
            Ok(Tail::Inf)
        } else {
            Ok(Tail::Value(u.neg().div(w)))
        }
    } else {
        let _ = a;
        if w.is_zero() {
            Ok(Tail::Inf)
        } else {
            Ok(Tail::Value(v.neg().div(w)))
        }
    }
}

/// Image of a curve under an automorphism: substitute the inverse map.
pub fn transform_curve(curve: &HomPoly, aut: &ProjAut) -> HomPoly {
    let inv = aut.inverse();
    let rows = &inv.matrix().rows;
    let lin = |r: &[Scalar; 3]| HomPoly::linear(r);
    curve
        .substitute(&lin(&rows[0]), &lin(&rows[1]), &lin(&rows[2]))
        .expect("linear substitution of a form")
}

// ---------------------------------------------------------------------------
// curves through bubble points
// ---------------------------------------------------------------------------

fn monomials_of_degree(deg: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for i in (0..=deg).rev() {
        for j in (0..=(deg - i)).rev() {
            out.push([i, j, deg - i - j]);
        }
    }
    out
}

/// The curves of the given degree passing through all listed bubble points
/// (with multiplicity >= 1 at every chain prefix), as a basis of coefficient
/// vectors. Division along chains is by the exceptional coordinate once per
/// level, which is the correct strict-transform count for curves that are
/// smooth along the chain.
pub fn curves_through(deg: u32, pts: &[BubblePoint]) -> Vec<HomPoly> {
    let monos = monomials_of_degree(deg);
    let dim = monos.len();
    let gens: Vec<HomPoly> = monos
        .iter()
        .map(|&[i, j, k]| HomPoly::monomial(i, j, k, Scalar::one()))
        .collect();
    // basis of coefficient vectors, kept alongside nothing else; local forms
    // are recomputed per point
    let mut basis: Vec<Vec<Scalar>> = (0..dim)
        .map(|i| {
            let mut v = vec![Scalar::zero(); dim];
            v[i] = Scalar::one();
            v
        })
        .collect();
    let poly_of = |v: &[Scalar]| -> HomPoly {
        let mut p = HomPoly::zero();
        for (c, g) in v.iter().zip(&gens) {
            p = p.add(&g.scale(c)).expect("same degree");
        }
        p
    };
    for pt in pts {
        if basis.is_empty() {
            break;
        }
        let mut locals: Vec<LocalPoly> = basis
            .iter()
            .map(|v| affine_localize(&poly_of(v), &pt.base))
            .collect();
        for level in 0..=pt.tail.len() {
            // impose vanishing at the current origin
            let values: Vec<Scalar> = locals
                .iter()
                .map(|l| l.terms.get(&[0, 0]).cloned().unwrap_or_else(Scalar::zero))
                .collect();
            if values.iter().any(|v| !v.is_zero()) {
                let combos = kernel_basis(&[values], basis.len());
                let new_basis: Vec<Vec<Scalar>> = combos
                    .iter()
                    .map(|k| {
                        let mut v = vec![Scalar::zero(); dim];
                        for (c, b) in k.iter().zip(&basis) {
                            for (vi, bi) in v.iter_mut().zip(b) {
                                *vi = vi.add(&c.mul(bi));
                            }
                        }
                        v
                    })
                    .collect();
                let new_locals: Vec<LocalPoly> = combos
                    .iter()
                    .map(|k| {
                        let mut l = LocalPoly::zero();
                        for (c, old) in k.iter().zip(&locals) {
                            l = l.add(&old.scale(c));
                        }
                        l
                    })
                    .collect();
                basis = new_basis;
                locals = new_locals;
                if basis.is_empty() {
                    break;
                }
            }
            if level < pt.tail.len() {
                locals = locals
                    .iter()
                    .map(|l| transition(l, &pt.tail[level], 1))
                    .collect();
            }
        }
    }
    basis.iter().map(|v| poly_of(v)).collect()
}

/// The unique line through three bubble points, if one exists.
pub fn line_through(pts: &[BubblePoint; 3]) -> Option<HomPoly> {
    let sols = curves_through(1, pts);
    if sols.len() != 1 {
        return None;
    }
    let line = sols[0].normalized();
    if pts.iter().all(|p| passes_through(&line, p)) {
        Some(line)
    } else {
        None
    }
}

/// Whether a single line passes through all three bubble points.
pub fn bubble_collinear(a: &BubblePoint, b: &BubblePoint, c: &BubblePoint) -> bool {
    line_through(&[a.clone(), b.clone(), c.clone()]).is_some()
}

fn conic_matrix_det(c: &HomPoly) -> Scalar {
    // symmetric matrix determinant of c0 x^2 + c1 xy + c2 xz + c3 y^2 + c4 yz + c5 z^2
    let g = |i: u32, j: u32, k: u32| c.coefficient([i, j, k]);
    let two = Scalar::from_int(2);
    let m = [
        [g(2, 0, 0), g(1, 1, 0).div(&two), g(1, 0, 1).div(&two)],
        [g(1, 1, 0).div(&two), g(0, 2, 0), g(0, 1, 1).div(&two)],
        [g(1, 0, 1).div(&two), g(0, 1, 1).div(&two), g(0, 0, 2)],
    ];
    let det = |m: &[[Scalar; 3]; 3]| -> Scalar {
        let c0 = m[1][1].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][1]));
        let c1 = m[1][0].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][0]));
        let c2 = m[1][0].mul(&m[2][1]).sub(&m[1][1].mul(&m[2][0]));
        m[0][0].mul(&c0).sub(&m[0][1].mul(&c1)).add(&m[0][2].mul(&c2))
    };
    det(&m)
}

pub fn conic_is_irreducible(c: &HomPoly) -> bool {
    c.degree() == 2 && !conic_matrix_det(c).is_zero()
}

/// The unique irreducible conic through five bubble points. The accepted
/// configurations are: five proper points, or one of the five shapes with
/// infinitely near points (a single first-neighborhood point; one chain of
/// length 2; two first-neighborhood points over different bases; chains of
/// lengths 2 and 1 over different bases; one chain of length 3; one chain of
/// length 4). Hypotheses (no satellite members, no three on a line, no two
/// directions at one point) are checked and violations reported.
pub fn conic_through(pts: &[BubblePoint; 5]) -> Result<HomPoly> {
    // every member must be the extension of another member or proper;
    // collect chain structure by base point
    let mut sorted: Vec<BubblePoint> = pts.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != 5 {
        return Err(Error::Configuration("five distinct points required".into()));
    }
    // chain closure: each non-proper point's parent must be among the points
    for p in &sorted {
        if let Some(parent) = p.parent() {
            if !sorted.contains(&parent) {
                return Err(Error::Configuration(format!(
                    "point {} is infinitely near a point outside the configuration",
                    p.render(&["g", "b"])
                )));
            }
        }
    }
    // no satellites: a chart value of infinity past the first entry makes the
    // point satellite to an earlier one, and no smooth curve passes it
    for p in &sorted {
        for q in &sorted {
            if satellite(p, q) {
                return Err(Error::Configuration(format!(
                    "{} is satellite to {}; no irreducible conic exists",
                    p.render(&["g", "b"]),
                    q.render(&["g", "b"])
                )));
            }
        }
    }
    // no two distinct points in the first neighborhood of the same point
    for i in 0..sorted.len() {
        for j in (i + 1)..sorted.len() {
            let (p, q) = (&sorted[i], &sorted[j]);
            if p.order() == q.order()
                && p.order() >= 1
                && p.prefix(p.order() - 1) == q.prefix(q.order() - 1)
            {
                return Err(Error::Configuration(format!(
                    "{} and {} are distinct directions at the same point",
                    p.render(&["g", "b"]),
                    q.render(&["g", "b"])
                )));
            }
        }
    }
    // shape vetting: chains per proper base
    let propers: Vec<&BubblePoint> = sorted.iter().filter(|p| p.is_proper()).collect();
    let mut chain_lens: Vec<usize> = propers
        .iter()
        .map(|base| {
            sorted
                .iter()
                .filter(|p| p.base == base.base && !p.is_proper())
                .count()
        })
        .collect();
    chain_lens.sort_unstable();
    chain_lens.reverse();
    let accepted = matches!(
        (propers.len(), chain_lens.as_slice()),
        (5, [0, 0, 0, 0, 0])
            | (4, [1, 0, 0, 0])
            | (3, [2, 0, 0])
            | (3, [1, 1, 0])
            | (2, [2, 1])
            | (2, [3, 0])
            | (1, [4])
    );
    if !accepted {
        return Err(Error::Configuration(
            "configuration is not one of the supported five-point shapes".into(),
        ));
    }
    // no three on a line (covers proper collinearity and strict-transform
    // alignment along chains)
    for i in 0..5 {
        for j in (i + 1)..5 {
            for k in (j + 1)..5 {
                if bubble_collinear(&sorted[i], &sorted[j], &sorted[k]) {
                    return Err(Error::Configuration(format!(
                        "collinear triple {}, {}, {}",
                        sorted[i].render(&["g", "b"]),
                        sorted[j].render(&["g", "b"]),
                        sorted[k].render(&["g", "b"])
                    )));
                }
            }
        }
    }
    let sols = curves_through(2, &sorted);
    match sols.len() {
        1 => {
            let conic = sols[0].normalized();
            if !conic_is_irreducible(&conic) {
                return Err(Error::Configuration("the conic degenerates".into()));
            }
            for p in &sorted {
                if !passes_through(&conic, p) {
                    return Err(Error::Internal("conic misses an input point".into()));
                }
            }
            Ok(conic)
        }
        0 => Err(Error::Configuration("no conic through the points".into())),
        _ => Err(Error::Degenerate("conic system has rank < 5".into())),
    }
}

/// Tangent line of a conic at a point on it.
pub fn conic_tangent(conic: &HomPoly, p: &ProjPoint) -> Result<Line> {
    let grad = [
        conic.partial(0).eval(p.coords()),
        conic.partial(1).eval(p.coords()),
        conic.partial(2).eval(p.coords()),
    ];
    if grad.iter().all(|g| g.is_zero()) {
        return Err(Error::Degenerate("singular point of the conic".into()));
    }
    Ok(Line(grad))
}

/// Deterministic rational points on an irreducible conic, avoiding `avoid`.
fn conic_points(conic: &HomPoly, seed: &ProjPoint, avoid: &[ProjPoint], count: usize) -> Result<Vec<ProjPoint>> {
    let mut found = Vec::new();
    // chord through the seed in varying directions; the second intersection
    // of a rational line with a conic through a rational point is rational
    let candidates = (-12i64..=12).flat_map(|a| (-3i64..=3).map(move |b| (a, b)));
    for (a, b) in candidates {
        if found.len() >= count {
            break;
        }
        let dir = [
            Scalar::from_int(a),
            Scalar::from_int(b),
            Scalar::from_int(1),
        ];
        // parametrize seed + s * dir and find the other root
        let s0 = conic.eval(seed.coords());
        debug_assert!(s0.is_zero());
        // conic(seed + s dir) = q2 s^2 + q1 s
        let xs = |s: &Scalar| -> [Scalar; 3] {
            std::array::from_fn(|i| seed.coords()[i].add(&s.mul(&dir[i])))
        };
        let at1 = conic.eval(&xs(&Scalar::one()));
        let at2 = conic.eval(&xs(&Scalar::from_int(2)));
        // solve q2 + q1 = at1, 4 q2 + 2 q1 = at2
        let q2 = at2.sub(&at1.mul(&Scalar::from_int(2))).div(&Scalar::from_int(2));
        let q1 = at1.sub(&q2);
        if q2.is_zero() {
            continue; // line meets the conic only at the seed
        }
        let s_other = q1.neg().div(&q2);
        if s_other.is_zero() {
            continue; // tangent line
        }
        let p = ProjPoint::new(xs(&s_other))?;
        if p == *seed || avoid.contains(&p) || found.contains(&p) {
            continue;
        }
        found.push(p);
    }
    if found.len() < count {
        return Err(Error::UnsupportedField(
            "not enough rational points on the conic".into(),
        ));
    }
    Ok(found)
}

/// A rational point on a conic from a small deterministic pool.
fn some_conic_point(conic: &HomPoly) -> Result<ProjPoint> {
    let pool: Vec<ProjPoint> = {
        let mut v = vec![
            ProjPoint::from_ints(1, 0, 0),
            ProjPoint::from_ints(0, 1, 0),
            ProjPoint::from_ints(0, 0, 1),
        ];
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                v.push(ProjPoint::from_ints(a, b, 1));
            }
        }
        v
    };
    for p in pool {
        if conic.eval(p.coords()).is_zero() {
            return Ok(p);
        }
    }
    Err(Error::UnsupportedField(
        "no rational point found on the conic".into(),
    ))
}

/// Normalize an irreducible conic with up to three marked points to the
/// standard conic xz - y^2 = 0, sending the marks to e1, e3, e4. The fourth
/// frame point is the intersection of the tangents at the first two marks.
fn conic_frame(conic: &HomPoly, marks: &[ProjPoint]) -> Result<ProjAut> {
    let mut ms: Vec<ProjPoint> = marks.to_vec();
    if ms.is_empty() {
        ms.push(some_conic_point(conic)?);
    }
    if ms.len() < 3 {
        let extra = conic_points(conic, &ms[0], &ms, 3 - ms.len())?;
        ms.extend(extra);
    }
    let t1 = conic_tangent(conic, &ms[0])?;
    let t2 = conic_tangent(conic, &ms[1])?;
    let m4 = t1.meet(&t2)?;
    let src = [ms[0].clone(), ms[1].clone(), ms[2].clone(), m4];
    let dst = [
        ProjPoint::from_ints(1, 0, 0),
        ProjPoint::from_ints(0, 0, 1),
        ProjPoint::from_ints(1, 1, 1),
        ProjPoint::from_ints(0, 1, 0),
    ];
    solve_4pt(&src, &dst)
}

/// Automorphism mapping one irreducible conic to another while sending the
/// marked points of the first (at most three) to those of the second.
pub fn conic_marked_aut(
    c1: &HomPoly,
    marks1: &[ProjPoint],
    c2: &HomPoly,
    marks2: &[ProjPoint],
) -> Result<ProjAut> {
    if marks1.len() != marks2.len() || marks1.len() > 3 {
        return Err(Error::Degenerate("need matching mark lists of size <= 3".into()));
    }
    for c in [c1, c2] {
        if !conic_is_irreducible(c) {
            return Err(Error::Degenerate("conic is reducible".into()));
        }
    }
    for (c, marks) in [(c1, marks1), (c2, marks2)] {
        for m in marks {
            if !c.eval(m.coords()).is_zero() {
                return Err(Error::Degenerate("mark is not on its conic".into()));
            }
        }
    }
    let b1 = conic_frame(c1, marks1)?;
    let b2 = conic_frame(c2, marks2)?;
    let alpha = b2.inverse().compose(&b1);
    // verification: image of c1 equals c2 projectively
    let image = transform_curve(c1, &alpha).normalized();
    if image != c2.normalized() {
        return Err(Error::Internal("conic normalization failed to match".into()));
    }
    for (m1, m2) in marks1.iter().zip(marks2) {
        if alpha.apply_point(m1) != *m2 {
            return Err(Error::Internal("conic marks failed to match".into()));
        }
    }
    Ok(alpha)
}
