//! Projective points, lines and 3x3 projective linear algebra.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point of the projective plane, normalized by the three-case scheme:
/// last nonzero among (z, y, x) is scaled to 1, i.e. [a:b:1], [a:1:0] or
/// [1:0:0].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [Scalar; 3],
}

impl ProjPoint {
    pub fn new(coords: [Scalar; 3]) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::Degenerate("all-zero projective point".into()));
        }
        Ok(ProjPoint {
            coords: normalize_triple(coords),
        })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        ProjPoint::new([
            Scalar::from_int(a),
            Scalar::from_int(b),
            Scalar::from_int(c),
        ])
        .expect("nonzero point")
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.coords
    }

    pub fn render(&self, names: &[&str]) -> String {
        format!(
            "[{}:{}:{}]",
            self.coords[0].render(names),
            self.coords[1].render(names),
            self.coords[2].render(names)
        )
    }
}

fn normalize_triple(coords: [Scalar; 3]) -> [Scalar; 3] {
    let pivot = if !coords[2].is_zero() {
        2
    } else if !coords[1].is_zero() {
        1
    } else {
        0
    };
    let inv = coords[pivot].inv();
    [
        coords[0].mul(&inv),
        coords[1].mul(&inv),
        coords[2].mul(&inv),
    ]
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&["g", "b"]))
    }
}

/// A line as a covector (a, b, c), meaning a*x + b*y + c*z = 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Line(pub [Scalar; 3]);

impl Line {
    pub fn through(p: &ProjPoint, q: &ProjPoint) -> Result<Line> {
        let c = cross(p.coords(), q.coords());
        if c.iter().all(|v| v.is_zero()) {
            return Err(Error::Degenerate("line through equal points".into()));
        }
        Ok(Line(c))
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        dot(&self.0, p.coords()).is_zero()
    }

    /// Intersection point of two distinct lines.
    pub fn meet(&self, other: &Line) -> Result<ProjPoint> {
        ProjPoint::new(cross(&self.0, &other.0))
    }
}

pub fn cross(a: &[Scalar; 3], b: &[Scalar; 3]) -> [Scalar; 3] {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

pub fn dot(a: &[Scalar; 3], b: &[Scalar; 3]) -> Scalar {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

pub fn collinear(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> bool {
    dot(&cross(p.coords(), q.coords()), r.coords()).is_zero()
}

/// 3x3 matrix over the scalar field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat3 {
    pub rows: [[Scalar; 3]; 3],
}

impl Mat3 {
    pub fn identity() -> Self {
        let mut rows = Mat3::zero_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = Scalar::one();
        }
        Mat3 { rows }
    }

    fn zero_rows() -> [[Scalar; 3]; 3] {
        std::array::from_fn(|_| std::array::from_fn(|_| Scalar::zero()))
    }

    pub fn from_ints(rows: [[i64; 3]; 3]) -> Self {
        Mat3 {
            rows: rows.map(|r| r.map(Scalar::from_int)),
        }
    }

    pub fn det(&self) -> Scalar {
        let r = &self.rows;
        dot(&cross(&r[0], &r[1]), &r[2])
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        let mut rows = Mat3::zero_rows();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Scalar::zero();
                for (k, other_row) in other.rows.iter().enumerate() {
                    acc = acc.add(&self.rows[i][k].mul(&other_row[j]));
                }
                rows[i][j] = acc;
            }
        }
        Mat3 { rows }
    }

    pub fn transpose(&self) -> Mat3 {
        let mut rows = Mat3::zero_rows();
        for i in 0..3 {
            for j in 0..3 {
                rows[i][j] = self.rows[j][i].clone();
            }
        }
        Mat3 { rows }
    }

    /// Adjugate, which inverts up to the determinant factor.
    pub fn adjugate(&self) -> Mat3 {
        let r = &self.rows;
        let cof = |i: usize, j: usize| -> Scalar {
            let (a, b) = ((i + 1) % 3, (i + 2) % 3);
            let (c, d) = ((j + 1) % 3, (j + 2) % 3);
            r[a][c].mul(&r[b][d]).sub(&r[a][d].mul(&r[b][c]))
        };
        let mut rows = Mat3::zero_rows();
        for i in 0..3 {
            for j in 0..3 {
                rows[i][j] = cof(j, i);
            }
        }
        Mat3 { rows }
    }

    pub fn apply(&self, v: &[Scalar; 3]) -> [Scalar; 3] {
        std::array::from_fn(|i| dot(&self.rows[i], v))
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:?}; {:?}; {:?}]",
            self.rows[0], self.rows[1], self.rows[2]
        )
    }
}

/// An automorphism of the projective plane: an invertible matrix with the
/// canonical scaling (first nonzero entry in row-major order equals 1).
#[derive(Clone, PartialEq, Eq)]
pub struct ProjAut {
    mat: Mat3,
}

impl ProjAut {
    pub fn new(mat: Mat3) -> Result<Self> {
        if mat.det().is_zero() {
            return Err(Error::Degenerate("singular matrix".into()));
        }
        Ok(ProjAut {
            mat: canonical_scale(mat),
        })
    }

    pub fn identity() -> Self {
        ProjAut {
            mat: Mat3::identity(),
        }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.mat
    }

    pub fn inverse(&self) -> ProjAut {
        ProjAut {
            mat: canonical_scale(self.mat.adjugate()),
        }
    }

    pub fn compose(&self, inner: &ProjAut) -> ProjAut {
        ProjAut {
            mat: canonical_scale(self.mat.mul(&inner.mat)),
        }
    }

    pub fn apply_point(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(self.mat.apply(p.coords())).expect("automorphism preserves nonzero")
    }

    /// Image of a line: covectors transform by the inverse transpose, for
    /// which the adjugate transpose is a projective representative.
    pub fn apply_line(&self, l: &Line) -> Line {
        Line(self.mat.adjugate().transpose().apply(&l.0))
    }
}

impl fmt::Debug for ProjAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.mat)
    }
}

fn canonical_scale(mat: Mat3) -> Mat3 {
    let mut scale = None;
    'outer: for row in &mat.rows {
        for entry in row {
            if !entry.is_zero() {
                scale = Some(entry.inv());
                break 'outer;
            }
        }
    }
    let scale = scale.expect("nonzero matrix");
    Mat3 {
        rows: mat.rows.map(|r| r.map(|e| e.mul(&scale))),
    }
}

/// The unique automorphism sending the standard frame e1, e2, e3, e4 to the
/// given four points, no three of which may be collinear.
pub fn frame_aut(pts: &[ProjPoint; 4]) -> Result<ProjAut> {
    for (i, j, k) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
        if collinear(&pts[i], &pts[j], &pts[k]) {
            return Err(Error::Degenerate(format!(
                "points {}, {}, {} are collinear",
                i + 1,
                j + 1,
                k + 1
            )));
        }
    }
    // Solve p4 = l1 p1 + l2 p2 + l3 p3; columns are li * pi.
    let m = Mat3 {
        rows: std::array::from_fn(|i| std::array::from_fn(|j| pts[j].coords()[i].clone())),
    };
    let adj = m.adjugate();
    let lambda = adj.apply(pts[3].coords());
    let mut rows = Mat3::zero_rows();
    for i in 0..3 {
        for j in 0..3 {
            rows[i][j] = pts[j].coords()[i].mul(&lambda[j]);
        }
    }
    ProjAut::new(Mat3 { rows })
}

/// The unique automorphism mapping one general-position quadruple onto
/// another, in order.
pub fn solve_4pt(src: &[ProjPoint; 4], dst: &[ProjPoint; 4]) -> Result<ProjAut> {
    let a = frame_aut(src).map_err(|e| match e {
        Error::Degenerate(msg) => Error::Degenerate(format!("source: {msg}")),
        other => other,
    })?;
    let b = frame_aut(dst).map_err(|e| match e {
        Error::Degenerate(msg) => Error::Degenerate(format!("target: {msg}")),
        other => other,
    })?;
    Ok(b.compose(&a.inverse()))
}

/// Gaussian elimination over the scalar field. Returns a basis of the
/// kernel of the given matrix (rows are equations).
pub fn kernel_basis(rows: &[Vec<Scalar>], width: usize) -> Vec<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        let mut pivot = None;
        for (r, row) in m.iter().enumerate().skip(rank) {
            if !row[col].is_zero() {
                pivot = Some(r);
                break;
            }
        }
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].inv();
        for c in col..width {
            m[rank][c] = m[rank][c].mul(&inv);
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..width {
                    let delta = m[rank][c].mul(&factor);
                    m[r][c] = m[r][c].sub(&delta);
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    let free_cols: Vec<usize> = (0..width).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![Scalar::zero(); width];
        v[fc] = Scalar::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = m[r][fc].neg();
        }
        basis.push(v);
    }
    basis
}

/// Solve M x = b over the scalar field (unique solution expected).
pub fn solve_linear(rows: &[Vec<Scalar>], rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    let width = rows.first()?.len();
    let mut m: Vec<Vec<Scalar>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        let mut pivot = None;
        for (r, row) in m.iter().enumerate().skip(rank) {
            if !row[col].is_zero() {
                pivot = Some(r);
                break;
            }
        }
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].inv();
        for c in col..=width {
            m[rank][c] = m[rank][c].mul(&inv);
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=width {
                    let delta = m[rank][c].mul(&factor);
                    m[r][c] = m[r][c].sub(&delta);
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    // inconsistent?
    for row in m.iter().skip(rank) {
        if !row[width].is_zero() {
            return None;
        }
    }
    if pivot_cols.len() < width {
        return None; // underdetermined
    }
    let mut x = vec![Scalar::zero(); width];
    for (r, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = m[r][width].clone();
    }
    Some(x)
}

/// A matching constraint for building an automorphism.
pub enum Anchor {
    /// Send this point to that point.
    Point(ProjPoint, ProjPoint),
    /// Send this line to that line.
    LineMap(Line, Line),
}

/// Build some automorphism satisfying all anchors. Point and line images
/// give linear conditions on the matrix entries; an invertible element of
/// the solution space is selected deterministically.
pub fn aut_matching(anchors: &[Anchor]) -> Result<ProjAut> {
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let entry = |i: usize, j: usize| i * 3 + j;
    for anchor in anchors {
        match anchor {
            Anchor::Point(p, q) => {
                // (M p) x q = 0: three rows, rank two
                let p = p.coords();
                let q = q.coords();
                for (a, b) in [(1usize, 2usize), (2, 0), (0, 1)] {
                    // q[b] * (M p)[a] - q[a] * (M p)[b] = 0
                    let mut row = vec![Scalar::zero(); 9];
                    for k in 0..3 {
                        row[entry(a, k)] = row[entry(a, k)].add(&q[b].mul(&p[k]));
                        row[entry(b, k)] = row[entry(b, k)].sub(&q[a].mul(&p[k]));
                    }
                    rows.push(row);
                }
            }
            Anchor::LineMap(src, dst) => {
                // M^T dst proportional to src
                let s = &src.0;
                let d = &dst.0;
                for (a, b) in [(1usize, 2usize), (2, 0), (0, 1)] {
                    // s[b] * (M^T d)[a] - s[a] * (M^T d)[b] = 0
                    let mut row = vec![Scalar::zero(); 9];
                    for k in 0..3 {
                        row[entry(k, a)] = row[entry(k, a)].add(&s[b].mul(&d[k]));
                        row[entry(k, b)] = row[entry(k, b)].sub(&s[a].mul(&d[k]));
                    }
                    rows.push(row);
                }
            }
        }
    }
    let basis = kernel_basis(&rows, 9);
    if basis.is_empty() {
        return Err(Error::Degenerate("no automorphism matches anchors".into()));
    }
    let to_mat = |v: &[Scalar]| Mat3 {
        rows: std::array::from_fn(|i| std::array::from_fn(|j| v[i * 3 + j].clone())),
    };
    // deterministic search for an invertible combination
    for v in &basis {
        let m = to_mat(v);
        if !m.det().is_zero() {
            return ProjAut::new(m);
        }
    }
    let coeffs = [1i64, -1, 2, -2, 3, 5, 7];
    for &c1 in &coeffs {
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                let v: Vec<Scalar> = basis[i]
                    .iter()
                    .zip(&basis[j])
                    .map(|(a, b)| a.add(&b.mul(&Scalar::from_int(c1))))
                    .collect();
                let m = to_mat(&v);
                if !m.det().is_zero() {
                    return ProjAut::new(m);
                }
            }
        }
    }
    for &c1 in &coeffs {
        for &c2 in &coeffs {
            for i in 0..basis.len() {
                for j in (i + 1)..basis.len() {
                    for k in (j + 1)..basis.len() {
                        let v: Vec<Scalar> = (0..9)
                            .map(|t| {
                                basis[i][t]
                                    .add(&basis[j][t].mul(&Scalar::from_int(c1)))
                                    .add(&basis[k][t].mul(&Scalar::from_int(c2)))
                            })
                            .collect();
                        let m = to_mat(&v);
                        if !m.det().is_zero() {
                            return ProjAut::new(m);
                        }
                    }
                }
            }
        }
    }
    Err(Error::Degenerate(
        "anchor solution space contains no invertible matrix".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> ProjPoint {
        match i {
            1 => ProjPoint::from_ints(1, 0, 0),
            2 => ProjPoint::from_ints(0, 1, 0),
            3 => ProjPoint::from_ints(0, 0, 1),
            _ => ProjPoint::from_ints(1, 1, 1),
        }
    }

    #[test]
    fn solve_4pt_identity() {
        let frame = [e(1), e(2), e(3), e(4)];
        let a = solve_4pt(&frame, &frame).unwrap();
        assert_eq!(a, ProjAut::identity());
    }

    #[test]
    fn solve_4pt_swap() {
        // e1 <-> e2 fixed e3, e4 is [y:x:z]
        let src = [e(1), e(2), e(3), e(4)];
        let dst = [e(2), e(1), e(3), e(4)];
        let a = solve_4pt(&src, &dst).unwrap();
        let expect = ProjAut::new(Mat3::from_ints([[0, 1, 0], [1, 0, 0], [0, 0, 1]])).unwrap();
        assert_eq!(a, expect);
    }

    #[test]
    fn solve_4pt_scaling() {
        // e4 -> [1:1:2] with frame fixed gives diag(1,1,2) up to scale
        let src = [e(1), e(2), e(3), e(4)];
        let dst = [e(1), e(2), e(3), ProjPoint::from_ints(1, 1, 2)];
        let a = solve_4pt(&src, &dst).unwrap();
        let expect = ProjAut::new(Mat3::from_ints([[1, 0, 0], [0, 1, 0], [0, 0, 2]])).unwrap();
        assert_eq!(a, expect);
    }

    #[test]
    fn solve_4pt_rejects_collinear() {
        let src = [e(1), e(2), ProjPoint::from_ints(1, 1, 0), e(4)];
        let err = solve_4pt(&src, &src).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("1, 2, 3"), "got: {msg}");
    }

    #[test]
    fn round_trip_fixes_points() {
        let src = [e(1), e(2), e(3), e(4)];
        let dst = [
            ProjPoint::from_ints(1, 2, 3),
            ProjPoint::from_ints(-1, 0, 1),
            ProjPoint::from_ints(2, 1, 1),
            ProjPoint::from_ints(0, 1, 1),
        ];
        let a = solve_4pt(&src, &dst).unwrap();
        let back = a.inverse();
        for p in &src {
            assert_eq!(back.apply_point(&a.apply_point(p)), *p);
        }
    }

    #[test]
    fn anchors_with_line_condition() {
        // send e3 to e1 and line z=0 to line x=0 (e3 off the source line,
        // e1 off the target line, as consistency requires)
        let z_axis = Line([Scalar::zero(), Scalar::zero(), Scalar::one()]);
        let x_axis = Line([Scalar::one(), Scalar::zero(), Scalar::zero()]);
        let a = aut_matching(&[
            Anchor::Point(e(3), e(1)),
            Anchor::LineMap(z_axis.clone(), x_axis.clone()),
        ])
        .unwrap();
        assert_eq!(a.apply_point(&e(3)), e(1));
        let img = a.apply_line(&z_axis);
        // image line must be proportional to x=0
        assert!(img.0[1].is_zero() && img.0[2].is_zero() && !img.0[0].is_zero());
    }
}
