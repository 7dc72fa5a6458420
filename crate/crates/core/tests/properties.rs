//! Property tests over seeded random small categories, chains and the
//! bundled group fixtures.

mod common;

use std::sync::Arc;

use fibalg_core::algkit::{
    action_morphism_check, conjugation_rep, find_isomorphism, homomorphisms, is_homomorphism, monoid_semidirect,
    semidirect_map, ActionAlgebra,
};
use fibalg_core::dsl::{parse, serialize, Exporter};
use fibalg_core::fincat::{
    check_adjunction, colimit, cones, functors, is_limit_cone, limit, opposite, shapes, AdjunctionMode, FinCategory,
    FunctorData, Mor, NatTransData, Ob,
};
use fibalg_core::fixtures::{build, groups};
use fibalg_core::grothfib::{build_total, reindex, Flavor, TotalCategory};
use fibalg_core::limcolim::{swindle_left_adjoint, verify_swindle, DEFAULT_SWINDLE_CAP};
use fibalg_core::monadkit::{enumerate_algebras, is_em_algebra, AlgFlavor, ParamMonadData, ParamRef};
use fibalg_core::recognize::comparison_unit;
use proptest::prelude::*;
use proptest::sample::select;
use rand::Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

/// Monotone map between chains as a functor.
fn monotone_between(dom: &Arc<FinCategory>, cod: &Arc<FinCategory>, map: &[usize]) -> FunctorData {
    let omap: Vec<Ob> = map.iter().map(|&i| Ob(i)).collect();
    let mmap = dom
        .morphisms()
        .map(|m| build::thin(cod, omap[dom.src(m).0], omap[dom.dst(m).0]))
        .collect();
    FunctorData::new("M", dom.clone(), cod.clone(), omap, mmap).unwrap()
}

/// `Id => H` or `H => Id` componentwise on a chain, when it exists.
fn compare_with_identity(c: &Arc<FinCategory>, h: &FunctorData, id_first: bool) -> Option<NatTransData> {
    let id = FunctorData::identity(c.clone());
    let comps: Option<Vec<_>> = c
        .objects()
        .map(|o| {
            let (a, b) = if id_first { (o, h.ob(o)) } else { (h.ob(o), o) };
            common::arrow(c, a, b)
        })
        .collect();
    let (s, t) = if id_first { (id, h.clone()) } else { (h.clone(), id) };
    Some(NatTransData::new("n", s, t, comps?).unwrap())
}

fn em_total(p: &ParamMonadData) -> TotalCategory {
    build_total(ParamRef::Monad(p), Flavor::Em).unwrap()
}

/// Join-writer over the `n`-chain.
fn chain_writer(n: usize) -> ParamMonadData {
    let c = Arc::new(build::chain(n));
    build::join_writer("w", &c, |a, x| a.max(x))
}

fn diagram_shapes() -> Vec<Arc<FinCategory>> {
    vec![
        shapes::discrete(0),
        shapes::discrete(1),
        shapes::discrete(2),
        shapes::arrow(),
        shapes::parallel_pair(),
        shapes::span(),
        shapes::cospan(),
    ]
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn random_categories_are_lawful(seed in any::<u64>()) {
        let c = common::random_category(&mut common::rng(seed));
        prop_assert!(c.validate().is_empty(), "{}", c.validate());
        prop_assert!(opposite(&c).validate().is_empty());
    }

    #[test]
    fn random_categories_round_trip_with_functors(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let c = Arc::new(common::random_category(&mut rng));
        let n = rng.gen_range(1..=4);
        let chain = Arc::new(build::chain(n));
        let f = build::monotone(&chain, "F", |_| Ob(0));
        let g = build::monotone(&chain, "G", |o| Ob(n - 1).max(o));
        let mut ex = Exporter::new();
        ex.category(&c).unwrap();
        ex.category(&chain).unwrap();
        ex.nat(&build::pointwise("alpha", &f, &g)).unwrap();
        let ws = ex.finish();
        let text = serialize(&ws);
        let back = parse(&text).unwrap();
        prop_assert!(back == ws);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn diagnostic_spans_slice_to_the_bad_reference(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let c = Arc::new(common::random_category(&mut rng));
        let mut ex = Exporter::new();
        ex.category(&c).unwrap();
        let text = serialize(&ex.finish());
        let arrows: Vec<usize> = text.match_indices("-> ").map(|(i, _)| i + 3).collect();
        prop_assume!(!arrows.is_empty());
        let at = arrows[rng.gen_range(0..arrows.len())];
        let end = at + text[at..].find(';').unwrap();
        let bad = format!("{}nowhere{}", &text[..at], &text[end..]);
        let ds = parse(&bad).expect_err("dangling object");
        prop_assert!(ds.iter().any(|d| d.span.offset == at && d.span.slice(&bad) == "nowhere"), "{:?}", ds);
        for d in &ds {
            let line = bad[..d.span.offset].matches('\n').count() + 1;
            prop_assert_eq!(d.span.line, line);
        }
    }

    #[test]
    fn limits_are_colimits_in_the_opposite(seed in any::<u64>(), shape in select(diagram_shapes())) {
        let mut rng = common::rng(seed);
        let c = Arc::new(common::random_category(&mut rng));
        let ds = functors(&shape, &c);
        prop_assume!(!ds.is_empty());
        let d = &ds[rng.gen_range(0..ds.len())];
        let (jop, cop) = (Arc::new(opposite(&shape)), Arc::new(opposite(&c)));
        let dop = d.op(jop, cop.clone());
        let lim = limit(d).unwrap();
        let colim = colimit(&dop).unwrap();
        prop_assert_eq!(lim.is_some(), colim.is_some());
        if let (Some(l), Some(k)) = (lim, colim) {
            prop_assert!(c.iso_between(l.apex, k.apex).is_some());
        }
    }

    #[test]
    fn limiting_cones_have_isomorphic_apexes(seed in any::<u64>(), shape in select(diagram_shapes())) {
        let mut rng = common::rng(seed);
        let c = Arc::new(common::random_poset(&mut rng));
        let ds = functors(&shape, &c);
        prop_assume!(!ds.is_empty());
        let d = &ds[rng.gen_range(0..ds.len())];
        let limiting: Vec<_> = cones(d).into_iter().filter(|k| is_limit_cone(d, k)).collect();
        for a in &limiting {
            for b in &limiting {
                prop_assert!(c.iso_between(a.apex, b.apex).is_some());
            }
        }
        prop_assert_eq!(limiting.is_empty(), limit(d).unwrap().is_none());
    }

    #[test]
    fn adjunction_modes_agree_on_chains(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (n, m) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let (cn, cm) = (Arc::new(build::chain(n)), Arc::new(build::chain(m)));
        let mut fmap: Vec<usize> = (0..n).map(|_| rng.gen_range(0..m)).collect();
        let mut gmap: Vec<usize> = (0..m).map(|_| rng.gen_range(0..n)).collect();
        fmap.sort_unstable();
        gmap.sort_unstable();
        let f = monotone_between(&cn, &cm, &fmap);
        let g = monotone_between(&cm, &cn, &gmap);
        let homset = check_adjunction(&f, &g, &AdjunctionMode::Homset).unwrap();
        // Galois connection: x <= G F x and F G y <= y
        let galois = (0..n).all(|x| x <= gmap[fmap[x]]) && (0..m).all(|y| fmap[gmap[y]] <= y);
        prop_assert_eq!(homset.holds(), galois);
        let unit = compare_with_identity(&cn, &g.after(&f).unwrap(), true);
        let counit = compare_with_identity(&cm, &f.after(&g).unwrap(), false);
        if let (Some(unit), Some(counit)) = (unit, counit) {
            let tri = check_adjunction(&f, &g, &AdjunctionMode::Triangle { unit, counit }).unwrap();
            prop_assert_eq!(tri.holds(), homset.holds());
        }
    }

    #[test]
    fn reindexing_keeps_em_algebras_and_carriers(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = common::rng(seed);
        let p = chain_writer(n);
        let a = &p.params;
        let f = Mor(rng.gen_range(0..a.num_morphisms()));
        let algs = enumerate_algebras(ParamRef::Monad(&p), a.dst(f), AlgFlavor::Em);
        prop_assume!(!algs.is_empty());
        let alg = &algs[rng.gen_range(0..algs.len())];
        let back = reindex(&p, f, alg).unwrap();
        prop_assert_eq!(back.param, a.src(f));
        prop_assert_eq!(back.carrier, alg.carrier);
        prop_assert!(is_em_algebra(p.at(back.param), back.carrier, back.xi));
    }

    #[test]
    fn swindle_terminates_on_chains(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = common::rng(seed);
        let c = Arc::new(build::chain(n));
        let f = common::random_monotone(&mut rng, n);
        let mut g: Vec<usize> = f.iter().map(|&v| rng.gen_range(v..n)).collect();
        // running maximum keeps G monotone and above F
        for i in 1..n {
            g[i] = g[i].max(g[i - 1]);
        }
        let alpha = common::chain_transformation(&c, &f, &g);
        let starts: Vec<Ob> = c.objects().filter(|&x| f[x.0] <= x.0).collect();
        let start = starts[rng.gen_range(0..starts.len())];
        let xi = build::thin(&c, Ob(f[start.0]), start);
        let trace = swindle_left_adjoint(&alpha, start, xi, DEFAULT_SWINDLE_CAP).unwrap();
        prop_assert!(trace.stabilized_at.is_some_and(|k| k <= n));
        prop_assert!(verify_swindle(&alpha, start, xi, &trace).holds());
    }

    #[test]
    fn projection_and_carrier_are_jointly_faithful(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let params = Arc::new(common::random_poset(&mut rng));
        let carriers = Arc::new(build::chain(rng.gen_range(1..=3)));
        let candidates = [
            em_total(&chain_writer(rng.gen_range(1..=4))),
            em_total(&build::constant_identity(params, carriers)),
        ];
        for t in &candidates {
            for e1 in t.cat.objects() {
                for e2 in t.cat.objects() {
                    let hom = t.cat.hom(e1, e2);
                    let images: std::collections::HashSet<_> =
                        hom.iter().map(|&m| (t.p.mor(m), t.v.mor(m))).collect();
                    prop_assert_eq!(images.len(), hom.len());
                }
            }
        }
    }

    #[test]
    fn recognition_recovers_random_join_writers(n in 1usize..=4) {
        let t = em_total(&chain_writer(n));
        let r = comparison_unit(&t).unwrap();
        prop_assert!(r.pruned.pruned().holds());
        prop_assert!(r.is_em.holds());
        prop_assert!(r.trivial_at_initial().holds());
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn conjugation_is_a_lawful_action(g in select(groups::all())) {
        let a = conjugation_rep(&g);
        prop_assert!(a.check().is_empty());
        for k in 0..g.order() {
            for x in 0..g.order() {
                prop_assert_eq!(a.act(k, x), g.mul(g.mul(g.inv(k), x), k));
            }
        }
    }

    #[test]
    fn trivial_semidirect_is_the_direct_product(g in select(groups::all()), h in select(groups::all())) {
        prop_assume!(g.order() * h.order() <= 24);
        let a = ActionAlgebra::trivial(g.monoid().clone(), h.monoid().clone());
        let sd = monoid_semidirect(&a).unwrap();
        let direct = g.monoid().direct_product(h.monoid()).unwrap();
        prop_assert!(find_isomorphism(&sd, &direct).is_some());
        prop_assert_eq!(sd.is_commutative(), g.is_commutative() && h.is_commutative());
    }

    #[test]
    fn semidirect_is_functorial_on_action_morphisms(seed in any::<u64>(), g in select(groups::all())) {
        prop_assume!(g.order() <= 6);
        let mut rng = common::rng(seed);
        let a = conjugation_rep(&g);
        // (u, u) with u an endomorphism of G is a morphism of conjugation actions
        let ends = homomorphisms(g.monoid(), g.monoid());
        let u = &ends[rng.gen_range(0..ends.len())];
        let v = &ends[rng.gen_range(0..ends.len())];
        prop_assert!(action_morphism_check(&a, &a, u, u).unwrap().holds());
        let sd = monoid_semidirect(&a).unwrap();
        let mu = semidirect_map(&a, &a, u, u);
        prop_assert!(is_homomorphism(&sd, &sd, &mu));
        let vu: Vec<usize> = u.iter().map(|&i| v[i]).collect();
        let mv = semidirect_map(&a, &a, v, v);
        let composite: Vec<usize> = mu.iter().map(|&i| mv[i]).collect();
        prop_assert_eq!(semidirect_map(&a, &a, &vu, &vu), composite);
        let id: Vec<usize> = (0..g.order()).collect();
        prop_assert_eq!(semidirect_map(&a, &a, &id, &id), (0..sd.order()).collect::<Vec<_>>());
    }
}
