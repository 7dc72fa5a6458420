use std::collections::HashMap;
use std::sync::Arc;

use crate::fincat::construct::pair_id;
use crate::fincat::functor::same_cat;
use crate::fincat::{tabulate, FinCategory, FunctorData, Mor, Ob};
use crate::report::{Law, LawReport};
use crate::{Error, Result};

use super::fibration::Fibration;

/// A split fibration as a strict functor `base^op -> Cat`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitFibrationData {
    pub name: String,
    pub base: Arc<FinCategory>,
    pub fibres: Vec<Arc<FinCategory>>,
    /// Along `f : A -> A'`, a functor `fibre(A') -> fibre(A)`.
    pub reindex: Vec<FunctorData>,
}

/// The Grothendieck total of a split fibration with its projection.
#[derive(Debug, Clone)]
pub struct GrothendieckTotal {
    pub fibration: Fibration,
    /// `(base object, fibre object)` per total object.
    pub objects: Vec<(Ob, Ob)>,
    /// `(base morphism, fibre morphism into the reindexed target)` per morphism.
    pub components: Vec<(Mor, Mor)>,
}

impl SplitFibrationData {
    pub fn new(
        name: impl Into<String>,
        base: Arc<FinCategory>,
        fibres: Vec<Arc<FinCategory>>,
        reindex: Vec<FunctorData>,
    ) -> Result<Self> {
        let name = name.into();
        if fibres.len() != base.num_objects() || reindex.len() != base.num_morphisms() {
            return Err(Error::Shape(format!("`{name}` does not cover `{}`", base.name())));
        }
        for f in base.morphisms() {
            let r = &reindex[f.0];
            if !same_cat(&r.dom, &fibres[base.dst(f).0]) || !same_cat(&r.cod, &fibres[base.src(f).0]) {
                return Err(Error::Shape(format!(
                    "`{}` along `{}` is not a functor fibre({}) -> fibre({})",
                    r.name,
                    base.mor_id(f),
                    base.ob_id(base.dst(f)),
                    base.ob_id(base.src(f))
                )));
            }
        }
        Ok(Self {
            name,
            base,
            fibres,
            reindex,
        })
    }

    /// Fibres, reindexing functors, and the strictness equations
    /// `reindex(id) = Id`, `reindex(g . f) = reindex(f) . reindex(g)`.
    pub fn validate(&self) -> LawReport {
        let b = &self.base;
        let mut report = LawReport::new();
        for c in &self.fibres {
            report.extend(c.validate());
        }
        for r in &self.reindex {
            report.extend(r.validate());
        }
        if !report.is_empty() {
            return report;
        }
        for a in b.objects() {
            if self.reindex[b.id(a).0] != FunctorData::identity(self.fibres[a.0].clone()) {
                report.push(Law::StrictIdentity, [b.ob_id(a)]);
            }
        }
        for g in b.morphisms() {
            for f in b.morphisms() {
                if let Some(h) = b.try_compose(g, f) {
                    let (rf, rg, rh) = (&self.reindex[f.0], &self.reindex[g.0], &self.reindex[h.0]);
                    let ok = rf
                        .after(rg)
                        .is_ok_and(|c| c.omap() == rh.omap() && c.mmap() == rh.mmap());
                    if !ok {
                        report.push(Law::StrictComposite, [b.mor_id(g), b.mor_id(f)]);
                    }
                }
            }
        }
        report
    }

    /// Total category: objects `(A, e)`, morphisms `(f, m : e -> f^* e')`,
    /// composed by `(g, n) . (f, m) = (g f, f^*(n) . m)`.
    pub fn grothendieck(&self) -> Result<GrothendieckTotal> {
        let b = &self.base;
        let mut objects = Vec::new();
        for a in b.objects() {
            for e in self.fibres[a.0].objects() {
                objects.push((a, e));
            }
        }
        let ob_index: HashMap<(Ob, Ob), Ob> = objects.iter().enumerate().map(|(i, &k)| (k, Ob(i))).collect();
        let mut morphisms = Vec::new();
        for f in b.morphisms() {
            let (a, a2) = (b.src(f), b.dst(f));
            let r = &self.reindex[f.0];
            let fa = &self.fibres[a.0];
            for e in fa.objects() {
                for e2 in self.fibres[a2.0].objects() {
                    for &m in fa.hom(e, r.ob(e2)) {
                        morphisms.push((
                            (f, m, e2),
                            pair_id(b.mor_id(f), fa.mor_id(m)),
                            ob_index[&(a, e)],
                            ob_index[&(a2, e2)],
                        ));
                    }
                }
            }
        }
        let t = tabulate(
            &self.name,
            objects
                .iter()
                .map(|&(a, e)| pair_id(b.ob_id(a), self.fibres[a.0].ob_id(e)))
                .collect(),
            morphisms,
            |o| {
                let (a, e) = objects[o.0];
                (b.id(a), self.fibres[a.0].id(e), e)
            },
            |&(g, n, e3), &(f, m, _)| {
                let fa = &self.fibres[b.src(f).0];
                (b.compose(g, f), fa.compose(self.reindex[f.0].mor(n), m), e3)
            },
        )?;
        let cat = Arc::new(t.cat);
        let p = FunctorData::new(
            "p",
            cat.clone(),
            b.clone(),
            objects.iter().map(|k| k.0).collect(),
            t.keys.iter().map(|k| k.0).collect(),
        )?;
        let mut hint = HashMap::new();
        for f in b.morphisms() {
            let (a, a2) = (b.src(f), b.dst(f));
            let r = &self.reindex[f.0];
            for e2 in self.fibres[a2.0].objects() {
                let key = (f, self.fibres[a.0].id(r.ob(e2)), e2);
                if let Some(&m) = t.index.get(&key) {
                    hint.insert((f, ob_index[&(a2, e2)]), m);
                }
            }
        }
        let components = t.keys.iter().map(|k| (k.0, k.1)).collect();
        let mut fibration = Fibration::new(self.name.clone(), p);
        fibration.hint = Some(hint);
        Ok(GrothendieckTotal {
            fibration,
            objects,
            components,
        })
    }
}

/// The identity functor of `c` as a split fibration over `c` with one-object fibres.
pub fn identity_fibration(c: &Arc<FinCategory>) -> Result<SplitFibrationData> {
    let point = Arc::new(crate::fincat::CategoryBuilder::new("pt").object("pt").build()?);
    let fibres = vec![point.clone(); c.num_objects()];
    let reindex = c.morphisms().map(|_| FunctorData::identity(point.clone())).collect();
    SplitFibrationData::new(format!("id_{}", c.name()), c.clone(), fibres, reindex)
}
