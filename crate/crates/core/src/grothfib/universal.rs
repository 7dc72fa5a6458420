use std::sync::Arc;

use crate::fincat::{
    find_isomorphism, functors, nat_transformations, pullback, tabulate, FinCategory, FunctorData, Mor, NatTransData,
    Ob,
};
use crate::monadkit::{MonadData, MonadMorphismData, ParamEndofunctorData, ParamMonadData, ParamRef};
use crate::report::{Verdict, WitnessKind};
use crate::{Error, Result};

use super::total::{build_total, Flavor, TotalCategory};

/// `End(X)` or `Mnd(X)` with the identity parametrized structure on it.
#[derive(Debug, Clone)]
pub struct UniversalFibration {
    pub flavor: Flavor,
    /// Endofunctors (or monads) of the carrier category, in object order.
    pub structures: Vec<FunctorData>,
    pub monads: Vec<MonadData>,
    pub base: Arc<FinCategory>,
    pub total: TotalCategory,
    /// Morphisms of `base` as component lists, with their endpoints.
    keys: Vec<(usize, usize, Vec<Mor>)>,
}

fn structure_id(x: &FinCategory, f: &FunctorData) -> String {
    let parts: Vec<&str> = f.omap().iter().map(|&o| x.ob_id(o)).collect();
    format!("F_{}", parts.join("_"))
}

/// `(source index, target index, components)` of a natural transformation.
type NatKey = (usize, usize, Vec<Mor>);

/// Category with the given functors as objects and natural transformations
/// (restricted by `keep`) as morphisms.
fn functor_category(
    name: &str,
    x: &Arc<FinCategory>,
    objs: &[FunctorData],
    keep: impl Fn(usize, usize, &NatTransData) -> bool,
) -> Result<(Arc<FinCategory>, Vec<NatKey>)> {
    let mut morphisms = Vec::new();
    for (i, f) in objs.iter().enumerate() {
        for (j, g) in objs.iter().enumerate() {
            for nt in nat_transformations(f, g) {
                if keep(i, j, &nt) {
                    let label = format!("{}__{}", structure_id(x, f), structure_id(x, g));
                    morphisms.push(((i, j, nt.components().to_vec()), label, Ob(i), Ob(j)));
                }
            }
        }
    }
    let t = tabulate(
        name,
        objs.iter().map(|f| structure_id(x, f)).collect(),
        morphisms,
        |o| (o.0, o.0, x.objects().map(|c| x.id(objs[o.0].ob(c))).collect()),
        |(_, k, g), (i, _, f)| (*i, *k, f.iter().zip(g).map(|(&a, &b)| x.compose(b, a)).collect()),
    )?;
    Ok((Arc::new(t.cat), t.keys))
}

/// The universal fibration of `flavor` (Alg over `End(X)` or EM over
/// `Mnd(X)`); `opt_in` must be set since the base grows very quickly.
pub fn universal_total(x: &Arc<FinCategory>, flavor: Flavor, opt_in: bool) -> Result<UniversalFibration> {
    if !opt_in {
        return Err(Error::Precondition(
            "universal_total requires an explicit opt-in".into(),
        ));
    }
    let all = functors(x, x);
    crate::fincat::category::check_guard(&format!("End({})", x.name()), all.len())?;
    match flavor {
        Flavor::Alg => {
            let (base, keys) = functor_category(&format!("End__{}", x.name()), x, &all, |_, _, _| true)?;
            let per_morphism = base
                .morphisms()
                .map(|m| {
                    let (i, j, c) = &keys[m.0];
                    NatTransData::new(base.mor_id(m), all[*i].clone(), all[*j].clone(), c.clone())
                })
                .collect::<Result<Vec<_>>>()?;
            let p = ParamEndofunctorData::new("universal", base.clone(), x.clone(), all.clone(), per_morphism)?;
            let total = build_total(ParamRef::Endo(&p), Flavor::Alg)?;
            Ok(UniversalFibration {
                flavor,
                structures: all,
                monads: Vec::new(),
                base,
                total,
                keys,
            })
        }
        Flavor::Em => {
            let id = FunctorData::identity(x.clone());
            let mut monads = Vec::new();
            for t in &all {
                let tt = t.after(t)?;
                for eta in nat_transformations(&id, t) {
                    for mu in nat_transformations(&tt, t) {
                        let m = MonadData::new(structure_id(x, t), t.clone(), eta.clone(), mu)?;
                        if m.check().is_empty() {
                            monads.push(m);
                        }
                    }
                }
            }
            let structures: Vec<FunctorData> = monads.iter().map(|m| m.t.clone()).collect();
            let (base, keys) = functor_category(&format!("Mnd__{}", x.name()), x, &structures, |i, j, nt| {
                MonadMorphismData::new("m", monads[i].clone(), monads[j].clone(), nt.clone())
                    .is_ok_and(|m| m.check().is_empty())
            })?;
            let per_morphism = base
                .morphisms()
                .map(|m| {
                    let (i, j, c) = &keys[m.0];
                    NatTransData::new(
                        base.mor_id(m),
                        structures[*i].clone(),
                        structures[*j].clone(),
                        c.clone(),
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            let p = ParamMonadData::new("universal", base.clone(), x.clone(), monads.clone(), per_morphism)?;
            let total = build_total(ParamRef::Monad(&p), Flavor::Em)?;
            Ok(UniversalFibration {
                flavor,
                structures,
                monads,
                base,
                total,
                keys,
            })
        }
        _ => Err(Error::Precondition(format!(
            "no universal fibration for the {} flavor",
            flavor.as_str()
        ))),
    }
}

impl UniversalFibration {
    /// The functor `A -> End(X)` (or `Mnd(X)`) classifying `p`.
    pub fn classifying(&self, p: ParamRef<'_>) -> Result<FunctorData> {
        let a = p.params();
        let mut omap = Vec::with_capacity(a.num_objects());
        for o in a.objects() {
            let i = match (self.flavor, p.monad()) {
                (Flavor::Em, Some(pm)) => {
                    let m = pm.at(o);
                    self.monads.iter().position(|n| {
                        n.t.omap() == m.t.omap()
                            && n.t.mmap() == m.t.mmap()
                            && n.eta.components() == m.eta.components()
                            && n.mu.components() == m.mu.components()
                    })
                }
                (Flavor::Em, None) => None,
                _ => {
                    let f = p.functor_at(o);
                    self.structures
                        .iter()
                        .position(|g| g.omap() == f.omap() && g.mmap() == f.mmap())
                }
            };
            omap.push(Ob(i.ok_or_else(|| {
                Error::Construction(format!("`{}` at `{}` is not classified", p.name(), a.ob_id(o)))
            })?));
        }
        let mut mmap = Vec::with_capacity(a.num_morphisms());
        for f in a.morphisms() {
            let key = (omap[a.src(f).0].0, omap[a.dst(f).0].0, p.along(f).components().to_vec());
            let m = self.keys.iter().position(|k| *k == key).ok_or_else(|| {
                Error::Construction(format!("`{}` along `{}` is not classified", p.name(), a.mor_id(f)))
            })?;
            mmap.push(Mor(m));
        }
        FunctorData::new(format!("chi_{}", p.name()), a.clone(), self.base.clone(), omap, mmap)
    }
}

/// Whether the total of `p` is isomorphic to the pullback of the universal
/// fibration along the classifying functor of `p`.
pub fn check_pullback(p: ParamRef<'_>, universal: &UniversalFibration) -> Result<Verdict> {
    let chi = universal.classifying(p)?;
    let pb = pullback(&universal.total.p, &chi)?;
    let total = build_total(p, universal.flavor)?;
    Ok(match find_isomorphism(&total.cat, &pb.cat) {
        Some(_) => Verdict::Holds,
        None => Verdict::Fails(
            crate::report::Witness::new(WitnessKind::IsoClassCount, "total is not the pullback")
                .with_counts(total.cat.num_objects(), pb.cat.num_objects()),
        ),
    })
}
