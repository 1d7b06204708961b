//! Classification of cubic maps into the 31 catalog types: resolve the base
//! points, identify the enriched graph row, normalize the configuration onto
//! the canonical one, extract parameters, and assemble an exact equivalence
//! witness.

use itertools::Itertools;

use crate::bubble::{conic_through, direction_line, BubblePoint, Tail};
use crate::catalog::{
    self, instantiate_map, instantiate_point, ParamKind, Plan, ResidualAction, ResidualStep,
};
use crate::error::{Error, Result};
use crate::graph::EnrichedGraph;
use crate::lang::parse_map;
use crate::maps::{resolve_base_points, BasePointTree, CremonaMap};
use crate::proj::{aut_matching, solve_linear, Anchor, Mat3, ProjAut, ProjPoint};
use crate::scalar::{subst_params, Scalar};

/// Parameters of a classified map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Params {
    None,
    Gamma(Scalar),
    AB(Scalar, Scalar),
}

impl Params {
    pub fn values(&self) -> [Scalar; 2] {
        match self {
            Params::None => [Scalar::zero(), Scalar::zero()],
            Params::Gamma(g) => [g.clone(), Scalar::zero()],
            Params::AB(a, b) => [a.clone(), b.clone()],
        }
    }

    pub fn render(&self) -> String {
        match self {
            Params::None => String::new(),
            Params::Gamma(g) => format!("g={}", g.render(&["g"])),
            Params::AB(a, b) => format!(
                "a={}, b={}",
                a.render(&["a", "b"]),
                b.render(&["a", "b"])
            ),
        }
    }
}

/// Result of classifying a cubic map: the type, its parameters, and the
/// witness pair with post o map o pre equal to the catalog formula at those
/// parameters.
#[derive(Clone, Debug)]
pub struct Classification {
    pub type_id: usize,
    pub params: Params,
    pub pre: ProjAut,
    pub post: ProjAut,
    pub canonical: CremonaMap,
}

/// The catalog formula at given parameters.
pub fn catalog_instance(id: usize, params: &Params) -> Result<CremonaMap> {
    let symbolic = catalog::formula(id);
    match params {
        Params::None => Ok(symbolic),
        _ => instantiate_map(&symbolic, &params.values()),
    }
}

/// Canonical base points of a type at given parameters.
pub fn catalog_points(id: usize, params: &Params) -> Result<Vec<BubblePoint>> {
    let pts = catalog::canonical_points(id);
    match params {
        Params::None => Ok(pts),
        _ => pts
            .iter()
            .map(|p| instantiate_point(p, &params.values()))
            .collect(),
    }
}

fn check_domain(id: usize, params: &Params) -> Result<()> {
    let bad = |s: &Scalar| s.is_zero() || s.is_one();
    match (catalog::record(id).param_kind, params) {
        (ParamKind::None, Params::None) => Ok(()),
        (ParamKind::Gamma, Params::Gamma(g)) => {
            if bad(g) {
                Err(Error::Degenerate(format!(
                    "parameter {} outside the domain",
                    g.render(&["g"])
                )))
            } else {
                Ok(())
            }
        }
        (ParamKind::AB, Params::AB(a, b)) => {
            if bad(a) || bad(b) || a == b {
                Err(Error::Degenerate("parameters outside the domain".into()))
            } else {
                Ok(())
            }
        }
        _ => Err(Error::Degenerate("wrong parameter shape for type".into())),
    }
}

/// Identify the catalog row of a resolved cubic tree.
pub fn identify_type(tree: &BasePointTree) -> Result<usize> {
    let enriched = EnrichedGraph::from_tree(tree);
    let cf = enriched.canonical_form();
    for (id, form) in catalog::role_graph_forms() {
        if *form == cf {
            return Ok(*id);
        }
    }
    Err(Error::NotBirational(
        "enriched proximity graph matches no catalog row".into(),
    ))
}

/// All bijections entry-index -> role preserving weights, arcs and the line.
fn role_isomorphisms(tree: &BasePointTree, id: usize) -> Vec<Vec<usize>> {
    let rec = catalog::record(id);
    let n = tree.entries.len();
    let mut out = Vec::new();
    if n != 5 {
        return out;
    }
    let input_arcs: std::collections::BTreeSet<(usize, usize)> =
        tree.arcs.iter().copied().collect();
    let role_arcs: std::collections::BTreeSet<(usize, usize)> =
        rec.role_arcs.iter().copied().collect();
    let input_line: Option<std::collections::BTreeSet<usize>> = tree
        .line
        .as_ref()
        .map(|l| l.members.iter().copied().collect());
    let role_line: Option<std::collections::BTreeSet<usize>> =
        rec.role_line.map(|l| l.iter().copied().collect());
    for perm in (0..n).permutations(n) {
        // perm[i] = role of entry i
        let weights_ok = (0..n).all(|i| {
            let expect = if perm[i] == 0 { 2 } else { 1 };
            tree.entries[i].mult == expect
        });
        if !weights_ok {
            continue;
        }
        let mapped: std::collections::BTreeSet<(usize, usize)> =
            input_arcs.iter().map(|(a, b)| (perm[*a], perm[*b])).collect();
        if mapped != role_arcs {
            continue;
        }
        let mapped_line = input_line
            .as_ref()
            .map(|l| l.iter().map(|&m| perm[m]).collect::<std::collections::BTreeSet<_>>());
        if mapped_line != role_line {
            continue;
        }
        out.push(perm);
    }
    out
}

/// Classify a cubic map.
pub fn classify(map: &CremonaMap) -> Result<Classification> {
    if map.degree() != 3 {
        return Err(Error::Degenerate(format!(
            "classification covers cubic maps; degree is {}",
            map.degree()
        )));
    }
    let tree = resolve_base_points(map)?;
    let id = identify_type(&tree)?;
    let isos = role_isomorphisms(&tree, id);
    if isos.is_empty() {
        return Err(Error::Internal("graph row matched but no isomorphism".into()));
    }
    let mut last_err = None;
    for iso in &isos {
        match normalize(map, &tree, id, iso) {
            Ok(c) => return Ok(c),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Internal("no isomorphism normalizes".into())))
}

/// Entry index playing a given role under the isomorphism.
fn entry_of_role(iso: &[usize], role: usize) -> usize {
    iso.iter().position(|&r| r == role).expect("role is hit")
}

fn normalize(
    map: &CremonaMap,
    tree: &BasePointTree,
    id: usize,
    iso: &[usize],
) -> Result<Classification> {
    let rec = catalog::record(id);
    let canon_pts = catalog::canonical_points(id);
    match &rec.plan {
        Plan::Anchors { anchors, residuals } => normalize_anchors(
            map, tree, id, iso, &canon_pts, anchors, residuals,
        ),
        Plan::Conic { marks } => normalize_conic(map, tree, id, iso, &canon_pts, marks),
    }
}

fn anchor_for_role(canon: &BubblePoint, input: &BubblePoint) -> Result<Vec<Anchor>> {
    if canon.is_proper() {
        if !input.is_proper() {
            return Err(Error::Internal("anchor role shape mismatch".into()));
        }
        return Ok(vec![Anchor::Point(canon.base.clone(), input.base.clone())]);
    }
    if canon.order() == 1 {
        if input.order() != 1 {
            return Err(Error::Internal("anchor role shape mismatch".into()));
        }
        // the direction becomes a line-image condition; its base point is
        // anchored separately
        let src = direction_line(&canon.base, &canon.tail[0]);
        let dst = direction_line(&input.base, &input.tail[0]);
        return Ok(vec![Anchor::LineMap(src, dst)]);
    }
    Err(Error::Internal(
        "anchors deeper than the first neighborhood are never prescribed".into(),
    ))
}

#[allow(clippy::too_many_arguments)]
fn normalize_anchors(
    map: &CremonaMap,
    tree: &BasePointTree,
    id: usize,
    iso: &[usize],
    canon_pts: &[BubblePoint],
    anchors: &[usize],
    residuals: &[ResidualStep],
) -> Result<Classification> {
    let rec = catalog::record(id);
    let mut conditions = Vec::new();
    for &role in anchors {
        let canon = &canon_pts[role];
        let input = &tree.entries[entry_of_role(iso, role)].point;
        conditions.extend(anchor_for_role(canon, input)?);
    }
    let alpha1 = aut_matching(&conditions)?;
    let mut current = map.apply_aut(&alpha1, &ProjAut::identity());
    let mut pre = alpha1;
    let mut params = Params::None;
    for step in residuals {
        let cur_tree = resolve_base_points(&current)?;
        let canon_role = &canon_pts[step.role];
        if canon_role.is_proper() {
            // residual is a proper point (types with a free proper role)
            let matched: Vec<&BubblePoint> = anchors
                .iter()
                .map(|&r| &canon_pts[r])
                .collect();
            let residual_pt = cur_tree
                .entries
                .iter()
                .map(|e| &e.point)
                .find(|p| p.is_proper() && !matched.iter().any(|m| *m == *p))
                .ok_or_else(|| Error::Internal("free proper residual not found".into()))?
                .clone();
            params = extract_proper_params(id, &residual_pt, step)?;
        } else {
            let prefix = &canon_role.tail[..canon_role.order() - 1];
            let found = cur_tree
                .entries
                .iter()
                .map(|e| &e.point)
                .find(|p| {
                    p.base == canon_role.base
                        && p.order() == canon_role.order()
                        && &p.tail[..p.order() - 1] == prefix
                })
                .ok_or_else(|| {
                    Error::Internal(format!(
                        "residual chain for role {} not found",
                        step.role
                    ))
                })?
                .clone();
            let u = match found.tail.last().unwrap() {
                Tail::Value(u) => u.clone(),
                Tail::Inf => {
                    return Err(Error::Degenerate(
                        "normalization residual at infinity".into(),
                    ))
                }
            };
            for &ex in step.excluded {
                if u == Scalar::from_int(ex) {
                    return Err(Error::Degenerate(format!(
                        "normalization residual equals excluded value {ex}"
                    )));
                }
            }
            match step.action {
                ResidualAction::Correct(stage) => {
                    let h = correction(id, stage, &u)?;
                    current = current.apply_aut(&h, &ProjAut::identity());
                    pre = pre.compose(&h);
                }
                ResidualAction::Param => {
                    params = extract_tail_params(id, &u)?;
                }
            }
        }
    }
    check_domain(id, &params)?;
    finish(map, &current, id, params, pre, rec.id)
}

fn extract_tail_params(id: usize, u: &Scalar) -> Result<Params> {
    Ok(match id {
        26 => Params::Gamma(u.inv()),
        27 => Params::Gamma(u.inv().neg()),
        28 | 29 => Params::Gamma(u.clone()),
        _ => return Err(Error::Internal("unexpected tail parameter type".into())),
    })
}

fn extract_proper_params(id: usize, p: &BubblePoint, step: &ResidualStep) -> Result<Params> {
    let [x, y, z] = p.base.coords();
    match id {
        30 => {
            // residual proper point [u:1:0]
            if !z.is_zero() || y.is_zero() {
                return Err(Error::Internal("type-30 residual off the line".into()));
            }
            let u = x.div(y);
            for &ex in step.excluded {
                if u == Scalar::from_int(ex) {
                    return Err(Error::Degenerate(format!(
                        "normalization residual equals excluded value {ex}"
                    )));
                }
            }
            Ok(Params::Gamma(u))
        }
        31 => {
            if z.is_zero() {
                return Err(Error::Degenerate(
                    "residual point aligned with two base points".into(),
                ));
            }
            Ok(Params::AB(x.div(z), y.div(z)))
        }
        _ => Err(Error::Internal("unexpected proper parameter type".into())),
    }
}

fn normalize_conic(
    map: &CremonaMap,
    tree: &BasePointTree,
    id: usize,
    iso: &[usize],
    canon_pts: &[BubblePoint],
    marks: &[usize],
) -> Result<Classification> {
    let canon_array: [BubblePoint; 5] = std::array::from_fn(|r| canon_pts[r].clone());
    let input_array: [BubblePoint; 5] =
        std::array::from_fn(|r| tree.entries[entry_of_role(iso, r)].point.clone());
    let c_canon = conic_through(&canon_array)?;
    let c_input = conic_through(&input_array)?;
    let marks_canon: Vec<ProjPoint> = marks.iter().map(|&r| canon_pts[r].base.clone()).collect();
    let marks_input: Vec<ProjPoint> = marks
        .iter()
        .map(|&r| tree.entries[entry_of_role(iso, r)].point.base.clone())
        .collect();
    let alpha = crate::bubble::conic_marked_aut(&c_canon, &marks_canon, &c_input, &marks_input)?;
    let current = map.apply_aut(&alpha, &ProjAut::identity());
    finish(map, &current, id, Params::None, alpha, id)
}

/// Final stage shared by both plans: check the normalized tree equals the
/// canonical one, factor out the linear change of target coordinates, and
/// verify the witness exactly.
fn finish(
    original: &CremonaMap,
    normalized: &CremonaMap,
    id: usize,
    params: Params,
    pre: ProjAut,
    _role: usize,
) -> Result<Classification> {
    let canonical = catalog_instance(id, &params)?;
    let canon_tree = resolve_base_points(&canonical)?;
    let norm_tree = resolve_base_points(normalized)?;
    if canon_tree.canonical_multiset() != norm_tree.canonical_multiset() {
        return Err(Error::Internal(
            "normalized base points differ from the canonical configuration".into(),
        ));
    }
    let b = change_of_basis(normalized, &canonical)
        .ok_or_else(|| Error::Internal("no linear change of basis matches the nets".into()))?;
    let post = ProjAut::new(b)?.inverse();
    let witness = original.apply_aut(&pre, &post);
    if witness != canonical {
        return Err(Error::Internal("witness fails exact verification".into()));
    }
    Ok(Classification {
        type_id: id,
        params,
        pre,
        post,
        canonical,
    })
}

/// Solve current = B o target on components.
fn change_of_basis(current: &CremonaMap, target: &CremonaMap) -> Option<Mat3> {
    // collect the monomial support
    let mut monos: std::collections::BTreeSet<[u32; 3]> = std::collections::BTreeSet::new();
    for f in current.components().iter().chain(target.components()) {
        monos.extend(f.form().terms.keys().copied());
    }
    let monos: Vec<[u32; 3]> = monos.into_iter().collect();
    let rows: Vec<Vec<Scalar>> = monos
        .iter()
        .map(|m| {
            (0..3)
                .map(|j| target.components()[j].coefficient(*m))
                .collect()
        })
        .collect();
    let mut b_rows: Vec<[Scalar; 3]> = Vec::with_capacity(3);
    for i in 0..3 {
        let rhs: Vec<Scalar> = monos
            .iter()
            .map(|m| current.components()[i].coefficient(*m))
            .collect();
        let sol = solve_linear(&rows, &rhs)?;
        b_rows.push([sol[0].clone(), sol[1].clone(), sol[2].clone()]);
    }
    Some(Mat3 {
        rows: [b_rows[0].clone(), b_rows[1].clone(), b_rows[2].clone()],
    })
}

/// Correction automorphisms for the residual stages, in the canonical
/// coordinates of each type.
fn correction(id: usize, stage: usize, u: &Scalar) -> Result<ProjAut> {
    let s = Scalar::from_int;
    let rows: [[Scalar; 3]; 3] = match (id, stage) {
        (1, 0) => [
            [s(-1), s(0), s(0)],
            [s(0), u.clone(), s(0)],
            [s(0), s(0), u.clone()],
        ],
        (1, 1) => [
            [s(3), s(0), s(0)],
            [s(0), s(3), u.neg()],
            [s(0), s(0), s(3)],
        ],
        (3, 0) => [
            [s(1), s(0), s(0)],
            [s(0), u.neg(), s(0)],
            [s(0), s(0), s(1)],
        ],
        (3, 1) => [
            [s(1), s(0), s(0)],
            [u.neg(), s(1), s(0)],
            [s(0), s(0), s(1)],
        ],
        (4, 0) => [
            [u.neg(), s(0), s(0)],
            [s(0), s(1), s(0)],
            [s(0), s(0), s(1)],
        ],
        (4, 1) => {
            let c = u.inv().neg().nth_root(3).ok_or_else(|| {
                Error::UnsupportedField(format!(
                    "normalization needs a rational cube root of {}",
                    u.inv().neg().render(&["g", "b"])
                ))
            })?;
            [
                [c.mul(&c), s(0), s(0)],
                [s(0), s(1), s(0)],
                [s(0), s(0), c],
            ]
        }
        (5, 0) => [
            [u.clone(), s(0), s(0)],
            [s(0), s(-1), s(0)],
            [s(0), s(0), u.clone()],
        ],
        (6, 0) => [
            [s(1), s(0), s(0)],
            [s(0), s(1), s(0)],
            [u.neg().sub(&s(1)), s(0), u.neg()],
        ],
        (8, 0) => [
            [s(1), s(0), s(0)],
            [s(0), u.clone(), s(0)],
            [s(0), s(0), s(1)],
        ],
        (14, 0) => [
            [s(1), s(0), s(0)],
            [s(0), u.clone(), s(0)],
            [s(0), s(0), s(1)],
        ],
        (17, 0) => [
            [u.clone(), s(0), s(0)],
            [s(0), s(1), s(0)],
            [s(0), s(0), s(1)],
        ],
        (24, 0) => [
            [s(1), s(0), s(0)],
            [s(0), s(1), s(0)],
            [s(0), s(0), u.clone()],
        ],
        _ => {
            return Err(Error::Internal(format!(
                "no correction stage {stage} for type {id}"
            )))
        }
    };
    ProjAut::new(Mat3 { rows })
}

// ---------------------------------------------------------------------------
// parameter orbits and equivalence
// ---------------------------------------------------------------------------

fn orbit_rules(id: usize) -> &'static [catalog::OrbitRule] {
    match id {
        26 => &catalog::ORBIT_26,
        27 => &catalog::ORBIT_27,
        28 => &catalog::ORBIT_28,
        29 => &catalog::ORBIT_29,
        30 => &catalog::ORBIT_30,
        31 => &catalog::ORBIT_31,
        _ => &[],
    }
}

fn rule_image(id: usize, rule: &catalog::OrbitRule, params: &Params) -> Result<Params> {
    let env = catalog::param_env(catalog::record(id).param_kind);
    let vals = params.values();
    let eval = |text: &str| -> Result<Scalar> {
        let c = crate::lang::parse_scalar(text, &env)?;
        subst_params(&c, &vals)
    };
    match catalog::record(id).param_kind {
        ParamKind::Gamma => Ok(Params::Gamma(eval(rule.param[0])?)),
        ParamKind::AB => Ok(Params::AB(eval(rule.param[0])?, eval(rule.param[1])?)),
        ParamKind::None => Ok(Params::None),
    }
}

/// The witnessing automorphism of an orbit rule at given parameters.
pub fn rule_aut(id: usize, rule: &catalog::OrbitRule, params: &Params) -> Result<ProjAut> {
    let env = catalog::param_env(catalog::record(id).param_kind);
    let m = parse_map(rule.aut, &env)?;
    let inst = instantiate_map(&m, &params.values())?;
    inst.as_aut()
        .ok_or_else(|| Error::Internal("orbit automorphism is not linear".into()))
}

/// The full equivalence orbit of the parameters of a type.
pub fn param_orbit(id: usize, params: &Params) -> Result<Vec<Params>> {
    check_domain(id, params)?;
    let rules = orbit_rules(id);
    if rules.is_empty() {
        return Ok(vec![Params::None]);
    }
    let mut out: Vec<Params> = Vec::new();
    for rule in rules {
        let image = rule_image(id, rule, params)?;
        if !out.contains(&image) {
            out.push(image);
        }
    }
    out.sort_by_key(param_sort_key);
    Ok(out)
}

fn param_sort_key(p: &Params) -> Vec<(num_bigint::BigInt, num_bigint::BigInt)> {
    let key = |s: &Scalar| {
        s.canonical_key().unwrap_or_else(|| {
            (num_bigint::BigInt::from(0), num_bigint::BigInt::from(0))
        })
    };
    match p {
        Params::None => vec![],
        Params::Gamma(g) => vec![key(g)],
        Params::AB(a, b) => vec![key(a), key(b)],
    }
}

/// Canonical orbit representative: minimal under the (numerator,
/// denominator) lexicographic order on reduced fractions; pairs ordered
/// lexicographically. Symbolic parameters are returned unchanged.
pub fn canonical_params(id: usize, params: &Params) -> Result<Params> {
    let rational = match params {
        Params::None => return Ok(Params::None),
        Params::Gamma(g) => g.is_rational(),
        Params::AB(a, b) => a.is_rational() && b.is_rational(),
    };
    if !rational {
        return Ok(params.clone());
    }
    let orbit = param_orbit(id, params)?;
    Ok(orbit.into_iter().min_by_key(param_sort_key).unwrap())
}

/// Decide equivalence of two cubic maps; on success the witness pair (pre,
/// post) satisfies m2 = post o m1 o pre exactly.
pub fn equivalent(m1: &CremonaMap, m2: &CremonaMap) -> Result<Option<(ProjAut, ProjAut)>> {
    let c1 = classify(m1)?;
    let c2 = classify(m2)?;
    if c1.type_id != c2.type_id {
        return Ok(None);
    }
    let id = c1.type_id;
    let rules = orbit_rules(id);
    if rules.is_empty() {
        let pre = c1.pre.compose(&c2.pre.inverse());
        let post = c2.post.inverse().compose(&c1.post);
        if m1.apply_aut(&pre, &post) != *m2 {
            return Err(Error::Internal("equivalence witness failed verification".into()));
        }
        return Ok(Some((pre, post)));
    }
    let mut matched_any = false;
    for rule in rules {
        let image = rule_image(id, rule, &c1.params)?;
        if image != c2.params {
            continue;
        }
        matched_any = true;
        let omega = rule_aut(id, rule, &c1.params)?;
        // catalog(theta2) o omega = B o catalog(theta1)
        let lhs = c2.canonical.apply_aut(&omega, &ProjAut::identity());
        let Some(b) = change_of_basis(&lhs, &c1.canonical) else {
            continue;
        };
        let b = ProjAut::new(b)?;
        let pre = c1.pre.compose(&omega.inverse()).compose(&c2.pre.inverse());
        let post = c2.post.inverse().compose(&b).compose(&c1.post);
        if m1.apply_aut(&pre, &post) == *m2 {
            return Ok(Some((pre, post)));
        }
    }
    if matched_any {
        return Err(Error::Internal("orbit witness failed verification".into()));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_values_type_28() {
        let orbit = param_orbit(28, &Params::Gamma(Scalar::from_int(3))).unwrap();
        let values: Vec<Scalar> = orbit
            .iter()
            .map(|p| match p {
                Params::Gamma(g) => g.clone(),
                _ => unreachable!(),
            })
            .collect();
        let mut expect = vec![
            Scalar::from_int(3),
            Scalar::from_ratio(1, 3),
            Scalar::from_int(-2),
            Scalar::from_ratio(-1, 2),
            Scalar::from_ratio(3, 2),
            Scalar::from_ratio(2, 3),
        ];
        expect.sort();
        let mut got = values.clone();
        got.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn orbit_values_type_27() {
        let orbit = param_orbit(27, &Params::Gamma(Scalar::from_int(5))).unwrap();
        assert_eq!(orbit.len(), 2);
        assert!(orbit.contains(&Params::Gamma(Scalar::from_int(5))));
        assert!(orbit.contains(&Params::Gamma(Scalar::from_ratio(1, 5))));
    }

    #[test]
    fn orbit_31_contains_inverted_pair() {
        let p = Params::AB(Scalar::from_int(2), Scalar::from_int(3));
        let orbit = param_orbit(31, &p).unwrap();
        assert!(orbit.contains(&Params::AB(
            Scalar::from_ratio(1, 2),
            Scalar::from_ratio(1, 3)
        )));
        assert_eq!(orbit.len(), 24);
    }

    #[test]
    fn orbit_closure() {
        for id in [26, 27, 28, 29, 30] {
            let start = Params::Gamma(Scalar::from_int(7));
            let orbit = param_orbit(id, &start).unwrap();
            for member in &orbit {
                let again = param_orbit(id, member).unwrap();
                assert_eq!(again, orbit, "orbit of a member differs for type {id}");
            }
        }
    }

    #[test]
    fn canonical_representative() {
        let c = canonical_params(28, &Params::Gamma(Scalar::from_int(3))).unwrap();
        assert_eq!(c, Params::Gamma(Scalar::from_int(-2)));
    }
}
