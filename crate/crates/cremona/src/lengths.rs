//! Heights and loads of base points, lower bounds for the ordinary
//! quadratic length, decomposition verification, and the point transport
//! along involutory ordinary quadratic maps.

use crate::bubble::{direction_line, line_direction, BubblePoint};
use crate::catalog;
use crate::classify::Params;
use crate::error::{Error, Result};
use crate::germ::{branch_through, map_branch, read_branch};
use crate::hompoly::HomPoly;
use crate::lang::Factor;
use crate::maps::{resolve_base_points, CremonaMap};
use crate::proj::{Line, ProjPoint};
use crate::scalar::Scalar;

/// Heights of all base points and loads of the proper ones.
#[derive(Clone, Debug)]
pub struct HeightReport {
    pub heights: Vec<(BubblePoint, u32)>,
    pub max_height: u32,
    pub loads: Vec<(BubblePoint, u32)>,
}

pub fn heights(map: &CremonaMap) -> Result<HeightReport> {
    let tree = resolve_base_points(map)?;
    let heights: Vec<(BubblePoint, u32)> = tree
        .entries
        .iter()
        .map(|e| (e.point.clone(), e.point.order() as u32 + 1))
        .collect();
    let max_height = heights.iter().map(|(_, h)| *h).max().unwrap_or(0);
    let loads = tree
        .entries
        .iter()
        .filter(|e| e.point.is_proper())
        .map(|e| {
            let over = tree
                .entries
                .iter()
                .filter(|f| !f.point.is_proper() && f.point.base == e.point.base)
                .count() as u32;
            (e.point.clone(), over + 1)
        })
        .collect();
    Ok(HeightReport {
        heights,
        max_height,
        loads,
    })
}

/// Lower bound for the ordinary quadratic length: the maximum base-point
/// height, sharpened by the degree bounds and the de Jonquieres bound.
pub fn oq_lower_bound(map: &CremonaMap) -> Result<u32> {
    let tree = resolve_base_points(map)?;
    let d = map.degree();
    let mut bound = tree
        .entries
        .iter()
        .map(|e| e.point.order() as u32 + 1)
        .max()
        .unwrap_or(0);
    if d >= 2 {
        bound = bound.max(1);
    }
    if d >= 3 {
        bound = bound.max(2);
    }
    if d >= 5 {
        bound = bound.max(3);
    }
    let de_jonquieres = d >= 2 && tree.entries.iter().any(|e| e.mult == d - 1);
    if de_jonquieres && d <= 5 {
        bound = bound.max(d - 1);
    }
    Ok(bound)
}

/// Kind of a quadratic map by its count of proper base points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadraticKind {
    Ordinary,
    SecondKind,
    ThirdKind,
}

pub fn quadratic_kind(map: &CremonaMap) -> Result<QuadraticKind> {
    if map.degree() != 2 {
        return Err(Error::Degenerate("not a quadratic map".into()));
    }
    let tree = resolve_base_points(map)?;
    let propers = tree.entries.iter().filter(|e| e.point.is_proper()).count();
    Ok(match propers {
        3 => QuadraticKind::Ordinary,
        2 => QuadraticKind::SecondKind,
        1 => QuadraticKind::ThirdKind,
        _ => return Err(Error::Internal("quadratic with bad base count".into())),
    })
}

/// Outcome of checking a decomposition script against a target map.
#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub composed: CremonaMap,
    pub matches: bool,
    /// degrees of the partial compositions, innermost first
    pub partial_degrees: Vec<u32>,
    pub quadratic_factors: usize,
    pub ordinary: usize,
    pub second_kind: usize,
    pub third_kind: usize,
}

/// Compose the factors (listed outermost first) and compare with the target.
pub fn verify_decomposition(
    target: &CremonaMap,
    factors: &[Factor],
) -> Result<DecompositionReport> {
    if factors.is_empty() {
        return Err(Error::Degenerate("empty decomposition".into()));
    }
    let mut partial_degrees = Vec::new();
    let mut composed: Option<CremonaMap> = None;
    for f in factors.iter().rev() {
        let m = f.to_map();
        composed = Some(match composed {
            None => m,
            Some(inner) => CremonaMap::compose(&m, &inner)?,
        });
        partial_degrees.push(composed.as_ref().unwrap().degree());
    }
    let composed = composed.unwrap();
    let (mut ordinary, mut second, mut third) = (0usize, 0usize, 0usize);
    for f in factors {
        match f {
            Factor::Aut(_) => {}
            quad => match quadratic_kind(&quad.to_map())? {
                QuadraticKind::Ordinary => ordinary += 1,
                QuadraticKind::SecondKind => second += 1,
                QuadraticKind::ThirdKind => third += 1,
            },
        }
    }
    Ok(DecompositionReport {
        matches: composed == *target,
        composed,
        partial_degrees,
        quadratic_factors: ordinary + second + third,
        ordinary,
        second_kind: second,
        third_kind: third,
    })
}

/// Reverse a decomposition: automorphisms invert, the three quadratic
/// involutions stay. Verified against the original by composition.
pub fn inverse_from_decomposition(factors: &[Factor]) -> Result<CremonaMap> {
    let mut inverted: Vec<Factor> = factors
        .iter()
        .map(|f| match f {
            Factor::Aut(a) => Factor::Aut(a.inverse()),
            other => other.clone(),
        })
        .collect();
    inverted.reverse();
    let forward = verify_decomposition(&CremonaMap::identity(), factors)?.composed;
    let backward = verify_decomposition(&CremonaMap::identity(), &inverted)?.composed;
    let check = CremonaMap::compose(&forward, &backward)?;
    if check != CremonaMap::identity() {
        return Err(Error::Internal(
            "inverse decomposition failed the identity check".into(),
        ));
    }
    Ok(backward)
}

/// Length facts of a catalog type.
#[derive(Clone, Debug)]
pub struct LengthFacts {
    pub type_id: usize,
    pub q: u32,
    pub oq: u32,
    pub lower_bound: u32,
    pub bound_is_sharp: bool,
}

pub fn default_params(id: usize) -> Params {
    match catalog::record(id).param_kind {
        catalog::ParamKind::None => Params::None,
        catalog::ParamKind::Gamma => Params::Gamma(Scalar::from_int(3)),
        catalog::ParamKind::AB => Params::AB(Scalar::from_int(2), Scalar::from_int(3)),
    }
}

pub fn length_facts(id: usize) -> Result<LengthFacts> {
    if !(1..=31).contains(&id) {
        return Err(Error::Degenerate(format!("no type {id}")));
    }
    let rec = catalog::record(id);
    let map = crate::classify::catalog_instance(id, &default_params(id))?;
    let lower = oq_lower_bound(&map)?;
    Ok(LengthFacts {
        type_id: id,
        q: rec.q,
        oq: rec.oq,
        lower_bound: lower,
        bound_is_sharp: lower == rec.oq,
    })
}

/// An involutory ordinary quadratic map with its three proper base points
/// and the triangle of lines through pairs of them.
#[derive(Clone, Debug)]
pub struct InvolutoryQuadratic {
    pub map: CremonaMap,
    pub base: [ProjPoint; 3],
    /// side i is the line through the two base points other than i
    pub sides: [Line; 3],
}

impl InvolutoryQuadratic {
    pub fn new(map: CremonaMap) -> Result<Self> {
        if map.degree() != 2 {
            return Err(Error::Degenerate("not a quadratic map".into()));
        }
        if CremonaMap::compose(&map, &map)? != CremonaMap::identity() {
            return Err(Error::Degenerate("quadratic map is not involutory".into()));
        }
        let tree = resolve_base_points(&map)?;
        let propers: Vec<ProjPoint> = tree
            .entries
            .iter()
            .filter(|e| e.point.is_proper())
            .map(|e| e.point.base.clone())
            .collect();
        if propers.len() != 3 {
            return Err(Error::Degenerate(
                "ordinary quadratic needs three proper base points".into(),
            ));
        }
        let base: [ProjPoint; 3] = [propers[0].clone(), propers[1].clone(), propers[2].clone()];
        let sides = [
            Line::through(&base[1], &base[2])?,
            Line::through(&base[0], &base[2])?,
            Line::through(&base[0], &base[1])?,
        ];
        Ok(InvolutoryQuadratic { map, base, sides })
    }

    fn side_through(&self, p: &ProjPoint) -> Option<usize> {
        (0..3).find(|&i| self.sides[i].contains(p))
    }

    /// Strict transform of a line through base point i.
    fn strict_line(&self, line: &HomPoly, i: usize) -> Result<HomPoly> {
        let [gx, gy, gz] = self.map.components();
        let image = line.substitute(gx, gy, gz)?;
        let side = HomPoly::linear(&self.sides[i].0);
        image
            .div_exact(&side)
            .ok_or_else(|| Error::Internal("contracted side does not divide".into()))
            .map(|l| l.normalized())
    }
}

/// The induced bijection of the bubble space for an involutory ordinary
/// quadratic map, on the supported cases.
pub fn transport_point(q: &InvolutoryQuadratic, p: &BubblePoint) -> Result<BubblePoint> {
    // fixed base points
    if p.is_proper() {
        if q.base.contains(&p.base) {
            return Ok(p.clone());
        }
        return match q.side_through(&p.base) {
            None => {
                // generic point: just apply the map
                Ok(BubblePoint::proper(q.map.apply(&p.base)?))
            }
            Some(i) => {
                // point of a contracted side: the image is the direction at
                // base i of the strict transform of the line joining them
                let join = Line::through(&q.base[i], &p.base)?;
                let strict = q.strict_line(&HomPoly::linear(&join.0), i)?;
                let coeffs = [
                    strict.coefficient([1, 0, 0]),
                    strict.coefficient([0, 1, 0]),
                    strict.coefficient([0, 0, 1]),
                ];
                let t = line_direction(&q.base[i], &Line(coeffs))?;
                Ok(BubblePoint::proper(q.base[i].clone()).child(t))
            }
        };
    }
    if p.order() == 1 && q.base.contains(&p.base) {
        let i = q.base.iter().position(|b| *b == p.base).unwrap();
        let dir = direction_line(&p.base, &p.tail[0]);
        // direction along a triangle side swaps to the opposite base point
        for j in 0..3 {
            if j != i && lines_proportional(&dir, &q.sides[j]) {
                let t = line_direction(&q.base[j], &q.sides[i])?;
                return Ok(BubblePoint::proper(q.base[j].clone()).child(t));
            }
        }
        // off-triangle direction: the strict transform meets the opposite side
        let strict = q.strict_line(&HomPoly::linear(&dir.0), i)?;
        let coeffs = [
            strict.coefficient([1, 0, 0]),
            strict.coefficient([0, 1, 0]),
            strict.coefficient([0, 0, 1]),
        ];
        let target = Line(coeffs).meet(&q.sides[i])?;
        return Ok(BubblePoint::proper(target));
    }
    // general infinitely near point: transport a branch germ and read
    transport_by_germ(q, p)
}

fn lines_proportional(a: &Line, b: &Line) -> bool {
    let c = crate::proj::cross(&a.0, &b.0);
    c.iter().all(|v| v.is_zero())
}

fn transport_by_germ(q: &InvolutoryQuadratic, p: &BubblePoint) -> Result<BubblePoint> {
    let comps = q.map.components();
    let triple = [&comps[0], &comps[1], &comps[2]];
    let mut answers = Vec::new();
    for bend in [0i64, 1, 2, -1, 3] {
        let branch = branch_through(p, bend);
        let image = map_branch(triple, &branch);
        match read_branch(&image, p.order()) {
            Ok(pt) => {
                if !answers.contains(&pt) {
                    answers.push(pt);
                }
                if answers.len() >= 2 {
                    break;
                }
            }
            Err(_) => continue,
        }
        if answers.len() == 1 && bend >= 1 {
            // two distinct seeds agreeing is enough
            break;
        }
    }
    match answers.as_slice() {
        [one] => Ok(one.clone()),
        [] => Err(Error::UnsupportedCase(
            "no branch germ through the point could be read".into(),
        )),
        _ => Err(Error::UnsupportedCase(
            "transported direction depends on the chosen curve".into(),
        )),
    }
}
