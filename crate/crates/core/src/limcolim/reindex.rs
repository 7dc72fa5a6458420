use crate::fincat::{colimit, shapes, FunctorData, Mor, Ob};
use crate::grothfib::{Flavor, TotalCategory};
use crate::monadkit::ParamMonadData;
use crate::par;
use crate::{Error, Result};

use super::fibre::FibreView;

/// Reindexing `f^* : fibre(A') -> fibre(A)` along `f : A -> A'` of an Alg or
/// EM total.
pub fn reindex_functor(t: &TotalCategory, f: Mor) -> Result<FunctorData> {
    if !matches!(t.flavor, Flavor::Alg | Flavor::Em) {
        return Err(Error::Precondition(
            "reindexing is computed for Alg and EM totals".into(),
        ));
    }
    let a = &t.params;
    let (src, dst) = (FibreView::new(t, a.dst(f))?, FibreView::new(t, a.src(f))?);
    let mut omap = Vec::with_capacity(src.cat.num_objects());
    for o in src.cat.objects() {
        let e = t.payload(src.up(o));
        let xi = t.reindexed_xi(f, &e).expect("algebra flavor");
        let r = t
            .algebra(a.src(f), e.carrier, xi)
            .and_then(|r| dst.ob(r))
            .ok_or_else(|| Error::Construction("reindexed algebra is missing".into()))?;
        omap.push(r);
    }
    let mut mmap = Vec::with_capacity(src.cat.num_morphisms());
    for m in src.cat.morphisms() {
        let g = t.components[src.up_mor(m).0].1;
        let (s, d) = (omap[src.cat.src(m).0], omap[src.cat.dst(m).0]);
        let r = t
            .morphism(dst.up(s), dst.up(d), a.id(a.src(f)), g)
            .and_then(|r| dst.mor(r))
            .ok_or_else(|| Error::Construction("reindexed morphism is missing".into()))?;
        mmap.push(r);
    }
    FunctorData::new(
        format!("{}^*", a.mor_id(f)),
        src.cat.clone(),
        dst.cat.clone(),
        omap,
        mmap,
    )
}

/// Left adjoint to reindexing along `f`, or the first algebra without a
/// universal arrow.
#[derive(Debug, Clone)]
pub enum FibreAdjoint {
    Present {
        functor: FunctorData,
        reindex: FunctorData,
        /// Per object over `A`, the universal arrow `e -> f_! e` over `f`.
        units: Vec<Mor>,
    },
    Absent {
        witness: Ob,
    },
}

/// Candidate `f_! (X, xi)`: the coequalizer in the fibre over `A'` of
/// `T_A'(xi), mu . T_A'((T_f)_X) : F(T_A X) => F(X)`.
fn recipe_candidate(p: &ParamMonadData, t: &TotalCategory, fibre: &FibreView, f: Mor, e: Ob) -> Option<Ob> {
    let (a, x) = (&t.params, &t.carriers);
    let o = t.payload(e);
    let a2 = a.dst(f);
    let (m, m0) = (p.at(a2), p.at(o.param));
    let tx = m0.t.ob(o.carrier);
    let f1 = t.algebra(a2, m.t.ob(tx), m.mu.at(tx))?;
    let f0 = t.algebra(a2, m.t.ob(o.carrier), m.mu.at(o.carrier))?;
    let u = m.t.mor(o.xi?);
    let v = x.compose(m.mu.at(o.carrier), m.t.mor(p.along(f).at(o.carrier)));
    let u = fibre.mor(t.morphism(f1, f0, a.id(a2), u)?)?;
    let v = fibre.mor(t.morphism(f1, f0, a.id(a2), v)?)?;
    let d = shapes::diagram(
        &shapes::parallel_pair(),
        &fibre.cat,
        &[fibre.ob(f1)?, fibre.ob(f0)?],
        &[u, v],
    )
    .ok()?;
    colimit(&d).ok().flatten().map(|c| fibre.up(c.apex))
}

/// `m : e -> e'` over `f` is universal when every `m'' : e -> e''` over `f`
/// factors as `h . m` for a unique `h` over the identity.
fn is_universal(t: &TotalCategory, target: &FibreView, m: Mor) -> bool {
    let c = &t.cat;
    let (e, e2) = (c.src(m), c.dst(m));
    let f = t.components[m.0].0;
    target.cat.objects().all(|o| {
        let e3 = target.up(o);
        c.hom(e, e3).iter().filter(|&&m2| t.components[m2.0].0 == f).all(|&m2| {
            c.hom(e2, e3)
                .iter()
                .filter(|&&h| target.mor(h).is_some() && c.compose(h, m) == m2)
                .take(2)
                .count()
                == 1
        })
    })
}

/// Left adjoint `f_! : fibre(A) -> fibre(A')` to `f^*`, by a universal-arrow
/// search per algebra (the coequalizer recipe is tried first).
pub fn fibre_left_adjoint(p: &ParamMonadData, t: &TotalCategory, f: Mor) -> Result<FibreAdjoint> {
    if t.flavor != Flavor::Em {
        return Err(Error::Precondition(
            "fibre left adjoints are computed for EM totals".into(),
        ));
    }
    let a = &t.params;
    let (source, target) = (FibreView::new(t, a.src(f))?, FibreView::new(t, a.dst(f))?);
    let objects: Vec<Ob> = source.cat.objects().collect();
    let found = par::map(&objects, |&o| {
        let e = source.up(o);
        let mut candidates: Vec<Ob> = target.cat.objects().map(|o| target.up(o)).collect();
        candidates.sort_by(|x, y| t.cat.ob_id(*x).cmp(t.cat.ob_id(*y)));
        if let Some(r) = recipe_candidate(p, t, &target, f, e) {
            candidates.insert(0, r);
        }
        candidates.into_iter().find_map(|e2| {
            t.cat
                .hom(e, e2)
                .iter()
                .copied()
                .find(|&m| t.components[m.0].0 == f && is_universal(t, &target, m))
        })
    });
    let mut units = Vec::with_capacity(objects.len());
    for (o, u) in objects.iter().zip(found) {
        match u {
            Some(u) => units.push(u),
            None => return Ok(FibreAdjoint::Absent { witness: source.up(*o) }),
        }
    }
    let omap: Vec<Ob> = units
        .iter()
        .map(|&u| target.ob(t.cat.dst(u)).expect("over A'"))
        .collect();
    let mut mmap = Vec::with_capacity(source.cat.num_morphisms());
    for m in source.cat.morphisms() {
        let (s, d) = (source.cat.src(m), source.cat.dst(m));
        let goal = t.cat.compose(units[d.0], source.up_mor(m));
        let h = t
            .cat
            .hom(t.cat.dst(units[s.0]), t.cat.dst(units[d.0]))
            .iter()
            .copied()
            .find(|&h| target.mor(h).is_some() && t.cat.compose(h, units[s.0]) == goal)
            .expect("universal arrows factor");
        mmap.push(target.mor(h).expect("over A'"));
    }
    let functor = FunctorData::new(
        format!("{}_!", a.mor_id(f)),
        source.cat.clone(),
        target.cat.clone(),
        omap,
        mmap,
    )?;
    Ok(FibreAdjoint::Present {
        functor,
        reindex: reindex_functor(t, f)?,
        units,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{check_adjunction, AdjunctionMode};
    use crate::fixtures::build::{writer_bool4, writer_chain3};
    use crate::grothfib::build_total;
    use crate::monadkit::ParamRef;

    #[test]
    fn identity_gives_identity() {
        let p = writer_chain3();
        let t = build_total(ParamRef::Monad(&p), Flavor::Em).unwrap();
        for a in p.params.objects() {
            let FibreAdjoint::Present { functor, .. } = fibre_left_adjoint(&p, &t, p.params.id(a)).unwrap() else {
                panic!("absent");
            };
            assert_eq!(functor.omap(), FunctorData::identity(functor.dom.clone()).omap());
            assert_eq!(functor.mmap(), FunctorData::identity(functor.dom.clone()).mmap());
        }
    }

    #[test]
    fn writer_pushes_forward_by_join() {
        let p = writer_chain3();
        let t = build_total(ParamRef::Monad(&p), Flavor::Em).unwrap();
        let f = p.params.mor("le_0_1").unwrap();
        let FibreAdjoint::Present { functor, reindex, .. } = fibre_left_adjoint(&p, &t, f).unwrap() else {
            panic!("absent");
        };
        for o in functor.dom.objects() {
            let x = functor
                .dom
                .ob_id(o)
                .split("__")
                .nth(1)
                .unwrap()
                .parse::<usize>()
                .unwrap();
            let y = functor
                .cod
                .ob_id(functor.ob(o))
                .split("__")
                .nth(1)
                .unwrap()
                .parse::<usize>()
                .unwrap();
            assert_eq!(y, x.max(1));
        }
        assert!(check_adjunction(&functor, &reindex, &AdjunctionMode::Homset)
            .unwrap()
            .holds());
    }

    #[test]
    fn every_reindexing_of_bool4_writer_has_a_left_adjoint() {
        let p = writer_bool4();
        let t = build_total(ParamRef::Monad(&p), Flavor::Em).unwrap();
        for f in p.params.morphisms() {
            let FibreAdjoint::Present { functor, reindex, .. } = fibre_left_adjoint(&p, &t, f).unwrap() else {
                panic!("absent");
            };
            assert!(check_adjunction(&functor, &reindex, &AdjunctionMode::Homset)
                .unwrap()
                .holds());
        }
    }
}
