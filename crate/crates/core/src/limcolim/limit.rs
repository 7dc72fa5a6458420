use crate::fincat::{limit, Cone, FunctorData, Ob};
use crate::grothfib::{Flavor, TotalCategory};
use crate::{Error, Result};

use super::fibre::FibreView;

/// Limit of `d : J -> total` by creation: the base limit `A = lim p D`,
/// each `D j` reindexed along the leg `A -> A_j`, and the limit of the
/// reindexed diagram computed inside the fibre over `A`.
/// `None` when either the base or the fibre limit does not exist.
pub fn limit_in_total(t: &TotalCategory, d: &FunctorData) -> Result<Option<Cone>> {
    if !matches!(t.flavor, Flavor::Alg | Flavor::Em) {
        return Err(Error::Precondition("limits are created for Alg and EM totals".into()));
    }
    if !crate::fincat::functor::same_cat(&d.cod, &t.cat) {
        return Err(Error::Shape(format!(
            "`{}` does not land in `{}`",
            d.name,
            t.cat.name()
        )));
    }
    let (a, x, j) = (&t.params, &t.carriers, &d.dom);
    let pd = t.p.after(d)?;
    let Some(base) = limit(&pd)? else {
        return Ok(None);
    };
    let apex_a = base.apex;
    let fibre = FibreView::new(t, apex_a)?;
    let mut reindexed = Vec::with_capacity(j.num_objects());
    let mut cartesian = Vec::with_capacity(j.num_objects());
    for o in j.objects() {
        let e = t.payload(d.ob(o));
        let leg = base.legs[o.0];
        let xi = t.reindexed_xi(leg, &e).expect("algebra flavor");
        let r = t
            .algebra(apex_a, e.carrier, xi)
            .ok_or_else(|| Error::Construction(format!("reindexing of `{}` is not an object", t.cat.ob_id(d.ob(o)))))?;
        let c = t
            .morphism(r, d.ob(o), leg, x.id(e.carrier))
            .ok_or_else(|| Error::Construction("missing split cartesian lift".into()))?;
        reindexed.push(fibre.ob(r).expect("over the apex"));
        cartesian.push(c);
    }
    let mut mmap = Vec::with_capacity(j.num_morphisms());
    for u in j.morphisms() {
        let (s, e) = (j.src(u), j.dst(u));
        let g = t.components[d.mor(u).0].1;
        let m = t
            .morphism(fibre.up(reindexed[s.0]), fibre.up(reindexed[e.0]), a.id(apex_a), g)
            .ok_or_else(|| Error::Construction("reindexed diagram is not a functor".into()))?;
        mmap.push(fibre.mor(m).expect("over the identity"));
    }
    let fd = FunctorData::new("D_fibre", j.clone(), fibre.cat.clone(), reindexed, mmap)?;
    let Some(inner) = limit(&fd)? else {
        return Ok(None);
    };
    let apex: Ob = fibre.up(inner.apex);
    let legs = j
        .objects()
        .map(|o| t.cat.compose(cartesian[o.0], fibre.up_mor(inner.legs[o.0])))
        .collect();
    Ok(Some(Cone { apex, legs }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{is_limit_cone, shapes};
    use crate::fixtures::build::writer_chain3;
    use crate::grothfib::build_total;
    use crate::monadkit::ParamRef;

    #[test]
    fn product_in_writer_total() {
        let p = writer_chain3();
        let t = build_total(ParamRef::Monad(&p), Flavor::Em).unwrap();
        let e1 = t.cat.ob("1__1__id_1").unwrap();
        let e2 = t.cat.ob("0__2__id_2").unwrap();
        let d = shapes::diagram(&shapes::discrete(2), &t.cat, &[e1, e2], &[]).unwrap();
        let cone = limit_in_total(&t, &d).unwrap().unwrap();
        assert_eq!(t.cat.ob_id(cone.apex), "0__1__id_1");
        assert!(is_limit_cone(&d, &cone));
        let oracle = limit(&d).unwrap().unwrap();
        assert!(t.cat.iso_between(oracle.apex, cone.apex).is_some());
    }

    #[test]
    fn empty_and_diagonal() {
        let p = writer_chain3();
        let t = build_total(ParamRef::Monad(&p), Flavor::Em).unwrap();
        let d = shapes::diagram(&shapes::discrete(0), &t.cat, &[], &[]).unwrap();
        let cone = limit_in_total(&t, &d).unwrap().unwrap();
        assert_eq!(t.cat.ob_id(cone.apex), "2__2__id_2");
        for e in t.cat.objects() {
            let d = shapes::diagram(&shapes::discrete(2), &t.cat, &[e, e], &[]).unwrap();
            let cone = limit_in_total(&t, &d).unwrap().unwrap();
            assert!(t.cat.iso_between(cone.apex, e).is_some());
        }
    }
}
