use crate::fincat::{check_equivalence, FunctorData};
use crate::monadkit::{eilenberg_moore, hat, EmCategory, Hat, ParamMonadData, ParamRef};
use crate::report::{Verdict, WitnessKind};
use crate::{Error, Result};

use super::total::{build_total, Flavor, TotalCategory};

/// The comparison `EM(T) -> EM(T^)`, `(A, X, xi) |-> ((A, X), (id_A, xi))`.
#[derive(Debug, Clone)]
pub struct HatComparison {
    pub total: TotalCategory,
    pub hat: Hat,
    pub em: EmCategory,
    pub functor: FunctorData,
    /// Equivalence over the parameters: `p = pi_A . U . comparison` and
    /// the comparison is an equivalence.
    pub verdict: Verdict,
}

pub fn em_hat_comparison(p: &ParamMonadData) -> Result<HatComparison> {
    let total = build_total(ParamRef::Monad(p), Flavor::Em)?;
    let hat = hat(ParamRef::Monad(p))?;
    let monad = hat.monad.clone().expect("hat of a monad");
    let em = eilenberg_moore(&monad)?;
    let prod = &hat.product;
    let a = &p.params;
    let mut omap = Vec::with_capacity(total.objects.len());
    for o in &total.objects {
        let xi = prod.mor(a.id(o.param), o.xi.expect("EM object"));
        let found = em.find(prod.ob(o.param, o.carrier), xi).ok_or_else(|| {
            Error::Construction(format!(
                "no algebra of the hat monad at `{}`",
                prod.cat.ob_id(prod.ob(o.param, o.carrier))
            ))
        })?;
        omap.push(found);
    }
    let cat = &total.cat;
    let mut mmap = Vec::with_capacity(cat.num_morphisms());
    for m in cat.morphisms() {
        let (f, g) = total.components[m.0];
        let key = (omap[cat.src(m).0].0, omap[cat.dst(m).0].0, prod.mor(f, g));
        let found = em
            .index
            .get(&key)
            .copied()
            .ok_or_else(|| Error::Construction(format!("`{}` is not a morphism of hat algebras", cat.mor_id(m))))?;
        mmap.push(found);
    }
    let functor = FunctorData::new("comparison", cat.clone(), em.cat.clone(), omap, mmap)?;
    let proj = prod.pi1.after(&em.forget)?.after(&functor)?;
    let verdict = if proj.omap() != total.p.omap() || proj.mmap() != total.p.mmap() {
        Verdict::fail(WitnessKind::NotCommuting, "projection triangle")
    } else {
        check_equivalence(&functor)
    };
    Ok(HatComparison {
        total,
        hat,
        em,
        functor,
        verdict,
    })
}
