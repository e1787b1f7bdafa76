use super::*;
use crate::category::{
    is_left_cancellative, is_right_cancellative, CategoryBuilder, FiniteCategory, Graph, Lcsc, MorphismId,
};
use crate::filters::{tight_filters, Evaluator, FilterSpace, PathSpace, Semilattice};
use crate::groupoid::{germ_groupoid_on_paths, GermGroupoid};
use crate::semigroup::generate_semigroup;
use std::collections::BTreeMap;

fn tight(l: &Lcsc) -> (PathSpace, GermGroupoid) {
    let s = generate_semigroup(l, 1 << 20).unwrap();
    let e = Semilattice::of_semigroup(l, &s).unwrap();
    let fs = FilterSpace::new(l, &e).unwrap();
    let mut ps = PathSpace::new(l);
    tight_filters(l, &e, &fs, &mut ps, &[Evaluator::Exhaustive, Evaluator::ETight], 1 << 20).unwrap();
    let gg = germ_groupoid_on_paths(l, &s, &ps).unwrap();
    (ps, gg)
}

fn graph(vs: &[&str], es: &[(&str, &str, &str)]) -> FiniteCategory {
    Graph::new(vs, es).unwrap().path_category(None).unwrap()
}

fn parallel() -> FiniteCategory {
    graph(&["u", "v"], &[("e", "u", "v"), ("f", "u", "v")])
}

fn fork() -> FiniteCategory {
    graph(&["u1", "u2", "v"], &[("e1", "v", "u1"), ("e2", "v", "u2")])
}

/// `Z/2` swapping `e` and `f`, fixing the vertices, with trivial cocycle on
/// the edges.
fn swap_system() -> CategorySystem {
    let cat = parallel();
    let m = |n: &str| cat.lookup(n).unwrap();
    let (e, f) = (m("e"), m("f"));
    let action = BTreeMap::from([((1, e), f), ((1, f), e)]);
    let cocycle = BTreeMap::from([((1, e), 0), ((1, f), 0)]);
    CategorySystem::from_partial(cat, GroupTable::cyclic(2), &action, &cocycle).unwrap()
}

/// `Z/2` acting trivially on a single edge with trivial cocycle there.
fn planted_system() -> CategorySystem {
    let cat = graph(&["u", "v"], &[("e", "u", "v")]);
    let e = cat.lookup("e").unwrap();
    let action = BTreeMap::from([((1, e), e)]);
    let cocycle = BTreeMap::from([((1, e), 0)]);
    CategorySystem::from_partial(cat, GroupTable::cyclic(2), &action, &cocycle).unwrap()
}

/// Unit square with `x·y2 = y·x2`, graded by `ℕ²`.
fn square() -> (Lcsc, DegreeMap) {
    let cat = CategoryBuilder::new()
        .objects(&["a", "b", "c", "d"])
        .morphism("x", "b", "a")
        .morphism("y", "c", "a")
        .morphism("y2", "d", "b")
        .morphism("x2", "d", "c")
        .morphism("sq", "d", "a")
        .compose("x", "y2", "sq")
        .compose("y", "x2", "sq")
        .build()
        .unwrap();
    let l = Lcsc::new(cat).unwrap();
    let deg = l
        .morphisms()
        .map(|m| match l.name(m) {
            "x" | "x2" => vec![1, 0],
            "y" | "y2" => vec![0, 1],
            "sq" => vec![1, 1],
            _ => vec![0, 0],
        })
        .collect();
    (l, DegreeMap::new(GradingMonoid::free(2), deg))
}

#[test]
fn swap_system_and_its_product() {
    let sys = swap_system();
    let report = validate_system(&sys);
    assert!(report.valid, "{:?}", report.violations);
    assert!(pseudo_freeness_witness(&sys).is_none());
    let p = zs_product(&sys).unwrap();
    assert_eq!(p.cat.num_morphisms(), 8);
    assert!(is_left_cancellative(&p.cat).unwrap());
    assert!(is_right_cancellative(&p.cat).unwrap());
    let lp = Lcsc::new(p.cat.clone()).unwrap();
    assert!(lp.singly_aligned());
    // (v, g) is invertible for every object v.
    for v in sys.cat.objects() {
        assert!(lp.is_invertible(p.id(sys.cat.identity(v), 1)));
    }
}

#[test]
fn trivial_group_reproduces_the_base() {
    let cat = fork();
    let p = zs_product(&CategorySystem::trivial(cat.clone())).unwrap();
    assert_eq!(p.cat.morphism_names(), cat.morphism_names());
    for a in cat.morphisms() {
        for b in cat.morphisms() {
            assert_eq!(p.cat.compose(a, b), cat.compose(a, b));
        }
    }
}

#[test]
fn broken_cocycle_identity_is_reported() {
    let sys = swap_system();
    let mut cocycle = sys.cocycle_table().to_vec();
    let e = sys.cat.lookup("e").unwrap();
    cocycle[1][e.idx()] = 1;
    let broken = CategorySystem::new(sys.cat.clone(), sys.group.clone(), sys.action_table().to_vec(), cocycle).unwrap();
    let report = validate_system(&broken);
    assert!(!report.valid);
    assert!(report.violations.iter().any(|v| matches!(v, SystemViolation::CocycleIdentity { .. })));
    assert!(zs_product(&broken).is_err());
}

#[test]
fn planted_fixed_point_breaks_right_cancellation() {
    let sys = planted_system();
    assert!(validate_system(&sys).valid);
    let (g, a) = pseudo_freeness_witness(&sys).unwrap();
    assert_eq!((sys.group.name(g), sys.cat.name(a)), ("1", "e"));
    assert!(separation_witness(&sys).is_some());
    let p = zs_product(&sys).unwrap();
    assert!(is_left_cancellative(&p.cat).unwrap());
    let w = crate::category::right_cancellation_witness(&p.cat).unwrap().unwrap();
    // (e, 1)·(v, 1) = (e, 0)·(v, 1): both collapse onto (e, 1).
    assert_eq!(p.base(w.a), p.base(w.b));
}

#[test]
fn alignment_law_on_products() {
    let mut r = random::rng(17);
    for _ in 0..15 {
        let (_, sys) = random::random_system(&mut r, false).unwrap();
        let base = Lcsc::new(sys.cat.clone()).unwrap();
        let p = zs_product(&sys).unwrap();
        let lp = Lcsc::new(p.cat.clone()).unwrap();
        let unit = sys.group.unit();
        for x in lp.morphisms() {
            for y in lp.morphisms() {
                let expected: Vec<MorphismId> =
                    base.mce(p.base(x), p.base(y)).iter().map(|&m| lp.class_rep(p.id(m, unit))).collect();
                let mut expected = expected;
                expected.sort();
                let mut got = lp.mce(x, y).to_vec();
                got.sort();
                assert_eq!(got, expected);
            }
        }
    }
}

#[test]
fn right_cancellation_matches_pseudo_freeness_on_graphs() {
    let mut r = random::rng(23);
    for k in 0..30 {
        let (_, sys) = random::random_system(&mut r, k % 3 == 0).unwrap();
        let p = zs_product(&sys).unwrap();
        assert!(is_left_cancellative(&p.cat).unwrap());
        let pf = pseudo_freeness_witness(&sys).is_none();
        assert_eq!(is_right_cancellative(&p.cat).unwrap(), pf);
        if pf {
            assert!(separation_witness(&sys).is_none());
        }
    }
}

#[test]
fn vertex_trees() {
    let swap = faithful_on_vertex_trees(&swap_system(), 1);
    assert_eq!(swap.verdict, TreeVerdict::Faithful);
    assert_eq!(swap.skipped_objects, vec!["v".to_string()]);
    let planted = faithful_on_vertex_trees(&planted_system(), 1);
    assert_eq!(planted.verdict, TreeVerdict::NotFaithful);
    assert_eq!(planted.survivors, vec![("1".to_string(), "u".to_string())]);
}

#[test]
fn condition_translations_agree() {
    let check = |sys: &CategorySystem| {
        let base = Lcsc::new(sys.cat.clone()).unwrap();
        let p = zs_product(sys).unwrap();
        let lp = Lcsc::new(p.cat.clone()).unwrap();
        compare_conditions(&base, sys, &lp, &p).unwrap()
    };
    let c = check(&swap_system());
    assert!(c.minimal_on_base);
    let mut r = random::rng(29);
    for _ in 0..25 {
        check(&random::random_system(&mut r, false).unwrap().1);
    }
}

#[test]
fn degree_maps() {
    let fork = Lcsc::new(fork()).unwrap();
    let len = DegreeMap::length(&fork);
    assert!(validate_degree_map(&fork, &len).valid);
    let (sq, d) = square();
    let report = validate_degree_map(&sq, &d);
    assert!(report.valid, "{:?}", report.violations);
    assert!(report.factorizations_checked > 0);

    let mut bad = d.clone();
    bad.degrees[sq.lookup("sq").unwrap().idx()] = vec![2, 1];
    let report = validate_degree_map(&sq, &bad);
    assert!(report.violations.iter().any(|v| matches!(v, DegreeViolation::NotFunctorial { .. })));

    // Grading the square by total length loses unique factorization.
    let total = DegreeMap::new(GradingMonoid::free(1), d.degrees.iter().map(|v| vec![v[0] + v[1]]).collect());
    let report = validate_degree_map(&sq, &total);
    assert!(report.violations.iter().any(|v| matches!(v, DegreeViolation::AmbiguousFactorization { .. })));
}

#[test]
fn compatibility_and_star() {
    let sys = swap_system();
    let base = Lcsc::new(sys.cat.clone()).unwrap();
    let d = DegreeMap::length(&base);
    assert!(compatibility_witness(&sys, &d).is_none());
    assert!(join_semilattice_witness(&d).is_none());
    let (ps, _) = tight(&base);
    assert!(property_star(&base, &d, &ps).holds);
    let (sq, d2) = square();
    let (ps2, _) = tight(&sq);
    assert!(property_star(&sq, &d2, &ps2).holds);
}

#[test]
fn graded_cocycle_on_the_parallel_edges() {
    let l = Lcsc::new(parallel()).unwrap();
    let d = DegreeMap::length(&l);
    let (_, gg) = tight(&l);
    let c = graded_cocycle(&l, &gg, &d.degrees, &d.monoid, &[vec![0], vec![1]]).unwrap();
    for u in 0..gg.groupoid.num_units() {
        assert_eq!(c.values[gg.groupoid.unit_arrow[u]], vec![0]);
    }
    let ef = (0..gg.groupoid.len()).find(|&a| gg.groupoid.arrow_labels[a].starts_with("[e,f;")).unwrap();
    assert_eq!(c.values[ef], vec![0]);
    assert!(c.kernel.contains(&ef));
    assert!(c.kernel_open && c.layers.iter().all(|l| l.open));
}

#[test]
fn layer_cocycle_of_the_swap_product() {
    let sys = swap_system();
    let base = Lcsc::new(sys.cat.clone()).unwrap();
    let d = DegreeMap::length(&base);
    let p = zs_product(&sys).unwrap();
    let lp = Lcsc::new(p.cat.clone()).unwrap();
    let (_, gg) = tight(&lp);
    let pdeg: Vec<Degree> = lp.morphisms().map(|m| d.of(p.base(m)).clone()).collect();
    let c = graded_cocycle(&lp, &gg, &pdeg, &d.monoid, &[vec![1]]).unwrap();
    let lc = layer_cocycle(&lp, &p, &sys, &d, &gg, &c.layers[0]).unwrap();
    let value = |a: usize| lc.values.iter().find(|(x, _)| *x == a).unwrap().1;
    for u in 0..gg.groupoid.num_units() {
        assert_eq!(value(gg.groupoid.unit_arrow[u]), 0);
    }
    assert!(lc.values.iter().any(|&(_, t)| t == 1));
    for &(a, t) in &lc.values {
        if t == 0 {
            assert!(c.kernel.contains(&a));
        }
    }
    let planted = planted_system();
    let pp = zs_product(&planted).unwrap();
    let lpp = Lcsc::new(pp.cat.clone()).unwrap();
    let (_, gp) = tight(&lpp);
    let dp = DegreeMap::length(&Lcsc::new(planted.cat.clone()).unwrap());
    let pdeg: Vec<Degree> = lpp.morphisms().map(|m| dp.of(pp.base(m)).clone()).collect();
    let cp = graded_cocycle(&lpp, &gp, &pdeg, &dp.monoid, &[vec![1]]).unwrap();
    assert!(matches!(
        layer_cocycle(&lpp, &pp, &planted, &dp, &gp, &cp.layers[0]),
        Err(crate::Error::HypothesesNotMet(_))
    ));
}

fn action_round_trip(l: &Lcsc, d: &DegreeMap) -> ActionComparison {
    let (ps, gg) = tight(l);
    let act = semigroup_action(l, &d.degrees, &ps).unwrap();
    check_directed(l, &d.degrees, &d.monoid, &ps, &act).unwrap();
    let ag = action_groupoid(l, &d.degrees, &ps, &act).unwrap();
    let c = graded_cocycle(l, &gg, &d.degrees, &d.monoid, &[]).unwrap();
    certify_action_groupoid(&gg, &ag, &d.degrees, &c).unwrap()
}

#[test]
fn action_groupoids() {
    let arrow = Lcsc::new(graph(&["u", "v"], &[("e", "u", "v")])).unwrap();
    let c = action_round_trip(&arrow, &DegreeMap::length(&arrow));
    assert_eq!(c.certificate.units, 2);
    let fork = Lcsc::new(fork()).unwrap();
    let c = action_round_trip(&fork, &DegreeMap::length(&fork));
    assert_eq!((c.certificate.units, c.certificate.arrows), (4, 8));
    let (sq, d) = square();
    action_round_trip(&sq, &d);
}

#[test]
fn checklists() {
    let sys = CategorySystem::trivial(fork());
    let base = Lcsc::new(sys.cat.clone()).unwrap();
    let (ps, _) = tight(&base);
    let c = amenability_hypotheses(&base, &sys, &DegreeMap::length(&base), &ps, None, None);
    assert!(c.all_hold, "{:?}", c.witnesses);

    let planted = planted_system();
    let base = Lcsc::new(planted.cat.clone()).unwrap();
    let (ps, _) = tight(&base);
    let c = amenability_hypotheses(&base, &planted, &DegreeMap::length(&base), &ps, None, None);
    assert!(!c.all_hold && !c.pseudo_free);
    assert!(!c.witnesses.is_empty());

    let swap = swap_system();
    let base = Lcsc::new(swap.cat.clone()).unwrap();
    let (ps, _) = tight(&base);
    let asserted = Assertion { value: true, provenance: "user".into() };
    let c = amenability_hypotheses(&base, &swap, &DegreeMap::length(&base), &ps, Some(asserted), None);
    assert!(c.all_hold);
    assert_eq!(c.g_amenable.provenance, "user");
}
