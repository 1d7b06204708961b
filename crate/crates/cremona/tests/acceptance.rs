//! Acceptance suite: one test per criterion, each printing a pass/fail line.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cremona::batch;
use cremona::bubble::{conic_through, BubblePoint};
use cremona::catalog;
use cremona::classify::{catalog_instance, classify, param_orbit, Params};
use cremona::graph::{enumerate_cubic_graphs, enumerate_enriched, EnrichedGraph};
use cremona::lang::{parse_decomposition, parse_map, parse_point, parse_scalar, ParamEnv};
use cremona::lengths::{
    self, default_params, heights, inverse_from_decomposition, oq_lower_bound, transport_point,
    verify_decomposition, InvolutoryQuadratic,
};
use cremona::maps::{degree_drop, net_multiplicity, resolve_base_points, CremonaMap};
use cremona::proj::{Mat3, ProjAut, ProjPoint};
use cremona::scalar::Scalar;

fn report(criterion: &str, passed: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} ({detail})",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {criterion} failed: {detail}");
}

fn random_aut(rng: &mut ChaCha8Rng) -> ProjAut {
    loop {
        let rows: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-3..=3)));
        if let Ok(a) = ProjAut::new(Mat3::from_ints(rows)) {
            return a;
        }
    }
}

#[test]
fn criterion_1_graph_enumeration() {
    let graphs = enumerate_cubic_graphs();
    report("1a", graphs.len() == 21, &format!("{} weighted graphs", graphs.len()));
    let mut histogram = std::collections::BTreeMap::new();
    for g in &graphs {
        *histogram.entry(g.arcs.len()).or_insert(0usize) += 1;
    }
    let expect: std::collections::BTreeMap<usize, usize> =
        [(0, 1), (1, 2), (2, 5), (3, 7), (4, 5), (5, 1)].into_iter().collect();
    report("1b", histogram == expect, &format!("arrow histogram {histogram:?}"));
    // one-to-one isomorphism match with the embedded catalog rows
    let mut matched = vec![false; 21];
    for g in &graphs {
        let row = (1..=21).filter(|&r| catalog::table0_graph(r).isomorphic(g)).collect::<Vec<_>>();
        assert_eq!(row.len(), 1, "graph matches exactly one catalog row");
        assert!(!matched[row[0] - 1], "catalog row matched twice");
        matched[row[0] - 1] = true;
    }
    report("1c", matched.iter().all(|&m| m), "all 21 catalog rows matched");

    let enriched = enumerate_enriched();
    report("1d", enriched.len() == 31, &format!("{} enriched graphs", enriched.len()));
    let mut matched = vec![false; 31];
    for g in &enriched {
        let row = (1..=31).filter(|&r| catalog::table2_graph(r).isomorphic(g)).collect::<Vec<_>>();
        assert_eq!(row.len(), 1, "enriched graph matches exactly one catalog row");
        assert!(!matched[row[0] - 1]);
        matched[row[0] - 1] = true;
    }
    report("1e", matched.iter().all(|&m| m), "all 31 enriched rows matched");
}

#[test]
fn criterion_2_catalog_self_classification() {
    let ids: Vec<usize> = (1..=31).collect();
    let results = batch::map_collect(&ids, |&id| {
        let params = default_params(id);
        let map = catalog_instance(id, &params).expect("instance");
        let tree = resolve_base_points(&map).map_err(|e| format!("type {id}: resolve: {e}"))?;
        let graph = EnrichedGraph::from_tree(&tree);
        if !graph.isomorphic(&catalog::table2_graph(id)) {
            return Err(format!("type {id}: enriched graph mismatch"));
        }
        let c = classify(&map).map_err(|e| format!("type {id}: classify: {e}"))?;
        if c.type_id != id {
            return Err(format!("type {id}: classified as {}", c.type_id));
        }
        let orbit = param_orbit(id, &params).map_err(|e| format!("type {id}: orbit: {e}"))?;
        if !orbit.contains(&c.params) {
            return Err(format!("type {id}: parameters outside the orbit"));
        }
        Ok::<usize, String>(id)
    });
    let failures: Vec<String> = results.iter().filter_map(|r| r.clone().err()).collect();
    report(
        "2",
        failures.is_empty(),
        &format!(
            "31 catalog rows self-classify{}",
            if failures.is_empty() {
                String::new()
            } else {
                format!("; failures: {failures:?}")
            }
        ),
    );
}

#[test]
fn criterion_3_conjugation_robustness() {
    let cases: Vec<(usize, u64)> = (1..=31).flat_map(|id| (0..20u64).map(move |k| (id, k))).collect();
    let results = batch::map_collect(&cases, |&(id, k)| {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC3E5_0000 + id as u64 * 100 + k);
        let params = default_params(id);
        let map = catalog_instance(id, &params).expect("instance");
        let pre = random_aut(&mut rng);
        let post = random_aut(&mut rng);
        let conj = map.apply_aut(&pre, &post);
        let c = classify(&conj).map_err(|e| format!("type {id} sample {k}: {e}"))?;
        if c.type_id != id {
            return Err(format!("type {id} sample {k}: classified {}", c.type_id));
        }
        let orbit = param_orbit(id, &params).unwrap();
        if !orbit.contains(&c.params) {
            return Err(format!("type {id} sample {k}: parameter off-orbit"));
        }
        // witness must compose exactly back to the catalog formula
        let target = catalog_instance(id, &c.params).unwrap();
        if conj.apply_aut(&c.pre, &c.post) != target {
            return Err(format!("type {id} sample {k}: witness fails"));
        }
        Ok::<(), String>(())
    });
    let failures: Vec<String> = results.iter().filter_map(|r| r.clone().err()).collect();
    report(
        "3",
        failures.is_empty(),
        &format!(
            "620 random conjugations classified{}",
            if failures.is_empty() {
                String::new()
            } else {
                format!("; first failures: {:?}", &failures[..failures.len().min(5)])
            }
        ),
    );
}

#[test]
fn criterion_4_noether_equations() {
    let ids: Vec<usize> = (1..=31).collect();
    let results = batch::map_collect(&ids, |&id| {
        let map = catalog_instance(id, &default_params(id)).unwrap();
        let tree = resolve_base_points(&map).unwrap();
        tree.mult_sum() == 6 && tree.mult_square_sum() == 8 && tree.proximity_inequalities_hold()
    });
    report(
        "4",
        results.iter().all(|&ok| ok),
        "degree equations and proximity inequalities on all 31 trees",
    );
}

#[test]
fn criterion_5_table3() {
    let ids: Vec<usize> = (1..=31).collect();
    let results = batch::map_collect(&ids, |&id| {
        let rec = catalog::record(id);
        let env = catalog::param_env(rec.param_kind);
        let script = rec.table3.join(" o sigma o ");
        let factors = parse_decomposition(&script, &env).map_err(|e| format!("type {id}: {e}"))?;
        let target = catalog::formula(id);
        let rep = verify_decomposition(&target, &factors).map_err(|e| format!("type {id}: {e}"))?;
        if !rep.matches {
            return Err(format!("type {id}: composition differs"));
        }
        let sigma_count = rec.table3.len() - 1;
        if sigma_count as u32 != rec.oq {
            return Err(format!("type {id}: {sigma_count} factors vs oq {}", rec.oq));
        }
        if rep.ordinary != sigma_count {
            return Err(format!("type {id}: non-ordinary factor counted"));
        }
        Ok::<(), String>(())
    });
    let failures: Vec<String> = results.iter().filter_map(|r| r.clone().err()).collect();
    report(
        "5",
        failures.is_empty(),
        &format!(
            "31 ordinary decompositions compose with matching lengths{}",
            if failures.is_empty() { String::new() } else { format!("; {failures:?}") }
        ),
    );
}

#[test]
fn criterion_6_table4_and_classical() {
    let mut failures = Vec::new();
    for id in 1..=31 {
        let rec = catalog::record(id);
        let Some(script) = rec.table4 else { continue };
        let env = catalog::param_env(rec.param_kind);
        let factors = match parse_decomposition(script, &env) {
            Ok(f) => f,
            Err(e) => {
                failures.push(format!("type {id}: {e}"));
                continue;
            }
        };
        let target = catalog::formula(id);
        match verify_decomposition(&target, &factors) {
            Ok(rep) => {
                let want = if id == 1 { 3 } else { 2 };
                if !rep.matches || rep.quadratic_factors != want {
                    failures.push(format!(
                        "type {id}: matches={} quadratics={}",
                        rep.matches, rep.quadratic_factors
                    ));
                }
            }
            Err(e) => failures.push(format!("type {id}: {e}")),
        }
    }
    let env = ParamEnv::new();
    for (name, script, target) in [
        ("rho", catalog::RHO_DECOMP, CremonaMap::rho()),
        ("tau", catalog::TAU_DECOMP, CremonaMap::tau()),
    ] {
        let factors = parse_decomposition(script, &env).unwrap();
        let rep = verify_decomposition(&target, &factors).unwrap();
        if !rep.matches {
            failures.push(format!("{name}: composition differs"));
        }
    }
    {
        let factors = parse_decomposition(catalog::TYPE7_DECOMP, &env).unwrap();
        let target = catalog::formula(7);
        let rep = verify_decomposition(&target, &factors).unwrap();
        if !rep.matches || rep.quadratic_factors != 2 {
            failures.push("type-7 corrected factorization".into());
        }
    }
    report(
        "6",
        failures.is_empty(),
        &format!(
            "quadratic decompositions and classical factorizations{}",
            if failures.is_empty() { String::new() } else { format!("; {failures:?}") }
        ),
    );
}

#[test]
fn criterion_7_inverse_column() {
    // all 31 types, exercising at least the required pairs
    let ids: Vec<usize> = (1..=31).collect();
    let results = batch::map_collect(&ids, |&id| {
        let rec = catalog::record(id);
        let env = catalog::param_env(rec.param_kind);
        let script = rec.table3.join(" o sigma o ");
        let factors = parse_decomposition(&script, &env).unwrap();
        // instantiate symbolic parameters before inverting
        let factors: Vec<cremona::Factor> = factors
            .iter()
            .map(|f| match f {
                cremona::Factor::Aut(a) => {
                    let m = CremonaMap::from_aut(a);
                    let inst = catalog::instantiate_map(&m, &default_params(id).values()).unwrap();
                    cremona::Factor::Aut(inst.as_aut().unwrap())
                }
                other => other.clone(),
            })
            .collect();
        let inverse = inverse_from_decomposition(&factors).map_err(|e| format!("type {id}: {e}"))?;
        let c = classify(&inverse).map_err(|e| format!("type {id}: classify inverse: {e}"))?;
        if c.type_id != rec.inverse {
            return Err(format!(
                "type {id}: inverse classified {} want {}",
                c.type_id, rec.inverse
            ));
        }
        Ok::<(), String>(())
    });
    let failures: Vec<String> = results.iter().filter_map(|r| r.clone().err()).collect();
    let required = [(2, 8), (8, 2), (3, 5), (5, 3), (17, 7), (7, 17), (14, 15), (15, 14)];
    let covered = required.iter().all(|(a, b)| {
        catalog::record(*a).inverse == *b && results[*a - 1].is_ok()
    });
    report(
        "7",
        failures.is_empty() && covered,
        &format!(
            "inverse types verified for all 31 rows{}",
            if failures.is_empty() { String::new() } else { format!("; {failures:?}") }
        ),
    );
}

#[test]
fn criterion_8_length_bounds() {
    let mut failures = Vec::new();
    // types whose height bound is not sharp (the catalog value exceeds it by one)
    let gap_types = [1usize, 3, 4, 5, 6, 8, 14, 17, 20, 22, 24, 28];
    for id in 1..=31 {
        let facts = lengths::length_facts(id).unwrap();
        if facts.lower_bound > facts.oq {
            failures.push(format!("type {id}: bound {} > oq {}", facts.lower_bound, facts.oq));
        }
        let expect_sharp = !gap_types.contains(&id);
        if facts.bound_is_sharp != expect_sharp {
            failures.push(format!(
                "type {id}: sharpness {} (bound {}, oq {})",
                facts.bound_is_sharp, facts.lower_bound, facts.oq
            ));
        }
        if id == 1 {
            if facts.q != 3 || facts.lower_bound != 5 || facts.oq != 6 {
                failures.push(format!("type 1 facts off: {facts:?}"));
            }
        } else {
            if facts.q != 2 {
                failures.push(format!("type {id}: q = {}", facts.q));
            }
            // a two-quadratic decomposition must be exhibited
            let rec = catalog::record(id);
            let has_two = rec.table4.is_some() || rec.oq == 2;
            if !has_two {
                failures.push(format!("type {id}: no two-quadratic decomposition"));
            }
        }
    }
    // explicit spot values
    let f8 = lengths::length_facts(8).unwrap();
    if f8.lower_bound != 4 || f8.oq != 5 {
        failures.push(format!("type 8 facts off: {f8:?}"));
    }
    let f17 = lengths::length_facts(17).unwrap();
    if f17.lower_bound != 3 || f17.oq != 4 {
        failures.push(format!("type 17 facts off: {f17:?}"));
    }
    report(
        "8",
        failures.is_empty(),
        &format!(
            "bounds below oq with expected sharpness pattern{}",
            if failures.is_empty() { String::new() } else { format!("; {failures:?}") }
        ),
    );
}

#[test]
fn criterion_9_parameter_orbits() {
    let mut failures = Vec::new();
    // closure and size bounds
    for (id, max_size) in [(26, 2), (27, 2), (28, 6), (29, 6), (30, 6)] {
        let start = Params::Gamma(Scalar::from_int(3));
        let orbit = param_orbit(id, &start).unwrap();
        if orbit.len() > max_size {
            failures.push(format!("type {id}: orbit size {}", orbit.len()));
        }
        for member in &orbit {
            if param_orbit(id, member).unwrap() != orbit {
                failures.push(format!("type {id}: orbit not closed"));
            }
        }
    }
    let p31 = Params::AB(Scalar::from_int(2), Scalar::from_int(3));
    let orbit31 = param_orbit(31, &p31).unwrap();
    if orbit31.len() != 24 {
        failures.push(format!("type 31 orbit size {}", orbit31.len()));
    }
    for member in orbit31.iter().take(6) {
        if param_orbit(31, member).unwrap() != orbit31 {
            failures.push("type 31: orbit not closed".into());
        }
    }
    // type 28 at 3: the six stated values
    let orbit28 = param_orbit(28, &Params::Gamma(Scalar::from_int(3))).unwrap();
    let expect: Vec<Params> = [
        Scalar::from_int(3),
        Scalar::from_ratio(1, 3),
        Scalar::from_int(-2),
        Scalar::from_ratio(-1, 2),
        Scalar::from_ratio(3, 2),
        Scalar::from_ratio(2, 3),
    ]
    .into_iter()
    .map(Params::Gamma)
    .collect();
    if !(orbit28.len() == 6 && expect.iter().all(|p| orbit28.contains(p))) {
        failures.push(format!("type 28 orbit at 3: {orbit28:?}"));
    }
    // type 31: orbit equals the dedup of the 24 automorphism images, and
    // matches the direct substitution oracle into the published image pairs
    let env = ParamEnv::ab();
    let vals = p31.values();
    let mut oracle: Vec<Params> = Vec::new();
    for rule in &catalog::ORBIT_31 {
        let a = parse_scalar(rule.param[0], &env).unwrap();
        let b = parse_scalar(rule.param[1], &env).unwrap();
        let p = Params::AB(
            cremona::scalar::subst_params(&a, &vals).unwrap(),
            cremona::scalar::subst_params(&b, &vals).unwrap(),
        );
        if !oracle.contains(&p) {
            oracle.push(p);
        }
    }
    if oracle.len() != orbit31.len() || !oracle.iter().all(|p| orbit31.contains(p)) {
        failures.push("type 31 orbit differs from the 24-image oracle".into());
    }
    // cross-check against the published six core pairs closed under swap
    // and inversion
    let mut core_closure: Vec<Params> = Vec::new();
    for pair in &catalog::AB_ORBIT_CORE {
        let a = cremona::scalar::subst_params(&parse_scalar(pair[0], &env).unwrap(), &vals).unwrap();
        let b = cremona::scalar::subst_params(&parse_scalar(pair[1], &env).unwrap(), &vals).unwrap();
        let variants = [
            Params::AB(a.clone(), b.clone()),
            Params::AB(b.clone(), a.clone()),
            Params::AB(a.inv(), b.inv()),
            Params::AB(b.inv(), a.inv()),
        ];
        for v in variants {
            if !core_closure.contains(&v) {
                core_closure.push(v);
            }
        }
    }
    if core_closure.len() != orbit31.len() || !core_closure.iter().all(|p| orbit31.contains(p)) {
        failures.push("type 31 orbit differs from the group-closure oracle".into());
    }
    report(
        "9",
        failures.is_empty(),
        &format!(
            "orbit closure, sizes, and exact value sets{}",
            if failures.is_empty() { String::new() } else { format!("; {failures:?}") }
        ),
    );
}

#[test]
fn criterion_10_property_suites() {
    let mut failures = Vec::new();
    // involutions
    for (name, m) in [
        ("sigma", CremonaMap::sigma()),
        ("rho", CremonaMap::rho()),
        ("tau", CremonaMap::tau()),
    ] {
        if CremonaMap::compose(&m, &m).unwrap() != CremonaMap::identity() {
            failures.push(format!("{name} not an involution"));
        }
    }
    // degree drop on 50 randomized pairs
    let cases: Vec<u64> = (0..50).collect();
    let drop_results = batch::map_collect(&cases, |&k| {
        let mut rng = ChaCha8Rng::seed_from_u64(0xD409_0000 + k);
        let id = 1 + (rng.gen_range(0..31usize));
        let map = catalog_instance(id, &default_params(id)).unwrap();
        let a = random_aut(&mut rng);
        let b = random_aut(&mut rng);
        let phi = map.apply_aut(&a, &b);
        // an involutory ordinary quadratic conjugate of sigma
        let c = random_aut(&mut rng);
        let quad = CremonaMap::sigma().apply_aut(&c, &c.inverse());
        let q = InvolutoryQuadratic::new(quad.clone()).map_err(|e| format!("sample {k}: {e}"))?;
        let mults: Vec<i64> = q
            .base
            .iter()
            .map(|p| net_multiplicity(&phi, &BubblePoint::proper(p.clone())) as i64)
            .collect();
        let predicted = degree_drop(phi.degree() as i64, mults[0], mults[1], mults[2]);
        let composed = CremonaMap::compose(&phi, &quad).map_err(|e| format!("sample {k}: {e}"))?;
        if composed.degree() as i64 != predicted {
            return Err(format!(
                "sample {k}: degree {} vs predicted {predicted}",
                composed.degree()
            ));
        }
        Ok::<(), String>(())
    });
    failures.extend(drop_results.iter().filter_map(|r| r.clone().err()));

    // height transport bound on 50 supported samples
    let mut checked = 0usize;
    let mut attempts = 0u64;
    while checked < 50 && attempts < 600 {
        attempts += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(0x11E1_0000 + attempts);
        let id = 1 + (rng.gen_range(0..31usize));
        let map = catalog_instance(id, &default_params(id)).unwrap();
        let a = random_aut(&mut rng);
        let phi = map.apply_aut(&a, &ProjAut::identity());
        let c = random_aut(&mut rng);
        let quad = CremonaMap::sigma().apply_aut(&c, &c.inverse());
        let Ok(q) = InvolutoryQuadratic::new(quad.clone()) else { continue };
        // sample a point: base points of phi and some proper points
        let Ok(tree) = resolve_base_points(&phi) else { continue };
        let idx = rng.gen_range(0..tree.entries.len() + 2);
        let p = if idx < tree.entries.len() {
            tree.entries[idx].point.clone()
        } else {
            BubblePoint::proper(ProjPoint::from_ints(
                rng.gen_range(-4..=4),
                rng.gen_range(-4..=4),
                1,
            ))
        };
        let Ok(image) = transport_point(&q, &p) else { continue };
        let Ok(composed) = CremonaMap::compose(&phi, &quad) else { continue };
        if composed.degree() < 2 {
            continue;
        }
        let h_before = height_of(&phi, &p);
        let h_after = height_of(&composed, &image);
        let (Some(hb), Some(ha)) = (h_before, h_after) else { continue };
        let diff = hb as i64 - ha as i64;
        if diff.abs() > 1 {
            failures.push(format!(
                "transport sample {attempts}: heights {hb} vs {ha} for {} under quadratic",
                p.render(&[])
            ));
        }
        checked += 1;
    }
    if checked < 50 {
        failures.push(format!("only {checked} supported transport samples"));
    }

    // the five conic configurations at three parameter values each
    let env = ParamEnv::new();
    let t_values = [2i64, 5, -3];
    let configs: Vec<(Vec<String>, fn(i64) -> String)> = vec![
        (
            vec!["[1:0:0]".into(), "[0:1:0]".into(), "[0:0:1]".into(), "[1:1:1]".into()],
            |t| format!("([1:0:0], {t})"),
        ),
        (
            vec!["[1:0:0]".into(), "[0:1:0]".into(), "[0:0:1]".into(), "([1:0:0], 1)".into()],
            |t| format!("([1:0:0], 1, {t})"),
        ),
        (
            vec!["[1:0:0]".into(), "[0:1:0]".into(), "([1:0:0], inf)".into(), "([0:1:0], inf)".into()],
            |t| format!("([1:0:0], inf, {t})"),
        ),
        (
            vec!["[1:0:0]".into(), "[0:1:0]".into(), "([1:0:0], inf)".into(), "([1:0:0], inf, 1)".into()],
            |t| format!("([1:0:0], inf, 1, {t})"),
        ),
        (
            vec!["[1:0:0]".into(), "([1:0:0], inf)".into(), "([1:0:0], inf, 1)".into(), "([1:0:0], inf, 1, 0)".into()],
            |t| format!("([1:0:0], inf, 1, 0, {t})"),
        ),
    ];
    let expected: Vec<fn(&Scalar) -> CremonaMapConic> = Vec::new();
    let _ = expected;
    for (ci, (fixed, last)) in configs.iter().enumerate() {
        for &t in &t_values {
            if ci == 0 && (t == 0 || t == 1) {
                continue;
            }
            let mut pts: Vec<BubblePoint> = fixed
                .iter()
                .map(|s| parse_point(s, &env).unwrap())
                .collect();
            pts.push(parse_point(&last(t), &env).unwrap());
            let arr: [BubblePoint; 5] = std::array::from_fn(|i| pts[i].clone());
            match conic_through(&arr) {
                Ok(conic) => {
                    let ts = Scalar::from_int(t);
                    let want = expected_conic(ci, &ts);
                    if conic != want {
                        failures.push(format!(
                            "conic config {ci} at t={t}: got {} want {}",
                            conic.render(&[]),
                            want.render(&[])
                        ));
                    }
                }
                Err(e) => failures.push(format!("conic config {ci} at t={t}: {e}")),
            }
        }
    }
    report(
        "10",
        failures.is_empty(),
        &format!(
            "involutions, degree drop, height transport, conic formulas{}",
            if failures.is_empty() { String::new() } else { format!("; first: {:?}", &failures[..failures.len().min(4)]) }
        ),
    );
}

// The closed-form conics of the five supported configurations, in the
// normalized coordinates used by the test configurations above.
type CremonaMapConic = cremona::hompoly::HomPoly;

fn expected_conic(config: usize, t: &Scalar) -> CremonaMapConic {
    use cremona::hompoly::HomPoly;
    let x = HomPoly::variable(0);
    let y = HomPoly::variable(1);
    let z = HomPoly::variable(2);
    let one = Scalar::one();
    let c = match config {
        // xz - t xy + (t-1) yz
        0 => x
            .mul(&z)
            .add(&x.mul(&y).scale(&t.neg()))
            .unwrap()
            .add(&y.mul(&z).scale(&t.sub(&one)))
            .unwrap(),
        // xz - xy - t yz
        1 => x
            .mul(&z)
            .sub(&x.mul(&y))
            .unwrap()
            .add(&y.mul(&z).scale(&t.neg()))
            .unwrap(),
        // xy - t z^2 (the chart value parametrizes the inverse of the
        // coefficient in the raw closed form)
        2 => x.mul(&y).sub(&z.mul(&z).scale(t)).unwrap(),
        // xy - t yz - z^2
        3 => x
            .mul(&y)
            .sub(&y.mul(&z).scale(t))
            .unwrap()
            .sub(&z.mul(&z))
            .unwrap(),
        // xy - z^2 - t y^2
        4 => x
            .mul(&y)
            .sub(&z.mul(&z))
            .unwrap()
            .sub(&y.mul(&y).scale(t))
            .unwrap(),
        _ => unreachable!(),
    };
    c.normalized()
}

fn height_of(map: &CremonaMap, p: &BubblePoint) -> Option<u32> {
    let h = heights(map).ok()?;
    for (q, v) in &h.heights {
        if q == p {
            return Some(*v);
        }
    }
    Some(0)
}

// keep clippy quiet about the unused helper when criteria shrink
#[allow(dead_code)]
fn unused_oq_bound_probe() {
    let _ = oq_lower_bound(&CremonaMap::tau());
    let _ = parse_map("[x : y : z]", &ParamEnv::new());
    let _: BigRational = BigRational::from_integer(BigInt::from(1));
}
