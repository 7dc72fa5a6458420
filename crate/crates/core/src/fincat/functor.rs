use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::category::{FinCategory, Mor, Ob};
use crate::report::{Law, LawReport};
use crate::{Error, Result};

pub(crate) fn same_cat(a: &FinCategory, b: &FinCategory) -> bool {
    std::ptr::eq(a, b) || a == b
}

/// A tabulated functor between two finite categories.
#[derive(Debug, Clone)]
pub struct FunctorData {
    pub name: String,
    pub dom: Arc<FinCategory>,
    pub cod: Arc<FinCategory>,
    omap: Vec<Ob>,
    mmap: Vec<Mor>,
}

impl PartialEq for FunctorData {
    fn eq(&self, other: &Self) -> bool {
        self.omap == other.omap
            && self.mmap == other.mmap
            && same_cat(&self.dom, &other.dom)
            && same_cat(&self.cod, &other.cod)
    }
}

impl Eq for FunctorData {}

/// Id-level view of a functor, for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctorTable {
    pub name: String,
    pub dom: String,
    pub cod: String,
    pub objects: Vec<(String, String)>,
    pub morphisms: Vec<(String, String)>,
}

impl FunctorData {
    pub fn new(
        name: impl Into<String>,
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        omap: Vec<Ob>,
        mmap: Vec<Mor>,
    ) -> Result<Self> {
        let name = name.into();
        if omap.len() != dom.num_objects() || mmap.len() != dom.num_morphisms() {
            return Err(Error::Shape(format!(
                "functor `{name}` does not cover `{}`",
                dom.name()
            )));
        }
        if omap.iter().any(|o| o.0 >= cod.num_objects()) || mmap.iter().any(|m| m.0 >= cod.num_morphisms()) {
            return Err(Error::Dangling(format!(
                "functor `{name}` maps outside `{}`",
                cod.name()
            )));
        }
        Ok(Self {
            name,
            dom,
            cod,
            omap,
            mmap,
        })
    }

    /// Builds a functor from id pairs. Identities of `dom` not listed are sent
    /// to the identity of the image object.
    pub fn from_ids<S: AsRef<str>>(
        name: impl Into<String>,
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        objects: &[(S, S)],
        morphisms: &[(S, S)],
    ) -> Result<Self> {
        let name = name.into();
        let mut omap = vec![None; dom.num_objects()];
        for (a, b) in objects {
            let a = dom.require_ob(a.as_ref())?;
            let b = cod.require_ob(b.as_ref())?;
            if omap[a.0].replace(b).is_some() {
                return Err(Error::Duplicate(format!(
                    "object `{}` mapped twice by `{name}`",
                    dom.ob_id(a)
                )));
            }
        }
        let omap: Vec<Ob> = omap
            .into_iter()
            .enumerate()
            .map(|(i, o)| {
                o.ok_or_else(|| {
                    Error::Shape(format!(
                        "functor `{name}` has no image for object `{}`",
                        dom.ob_id(Ob(i))
                    ))
                })
            })
            .collect::<Result<_>>()?;
        let mut mmap = vec![None; dom.num_morphisms()];
        for (f, g) in morphisms {
            let f = dom.require_mor(f.as_ref())?;
            let g = cod.require_mor(g.as_ref())?;
            if mmap[f.0].replace(g).is_some() {
                return Err(Error::Duplicate(format!(
                    "morphism `{}` mapped twice by `{name}`",
                    dom.mor_id(f)
                )));
            }
        }
        let mmap: Vec<Mor> = mmap
            .into_iter()
            .enumerate()
            .map(|(i, m)| match m {
                Some(m) => Ok(m),
                None if dom.is_identity(Mor(i)) => Ok(cod.id(omap[dom.src(Mor(i)).0])),
                None => Err(Error::Shape(format!(
                    "functor `{name}` has no image for morphism `{}`",
                    dom.mor_id(Mor(i))
                ))),
            })
            .collect::<Result<_>>()?;
        Self::new(name, dom, cod, omap, mmap)
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        let omap = c.objects().collect();
        let mmap = c.morphisms().collect();
        Self {
            name: format!("Id_{}", c.name()),
            dom: c.clone(),
            cod: c,
            omap,
            mmap,
        }
    }

    /// Functor sending everything to `o` and its identity.
    pub fn constant(dom: Arc<FinCategory>, cod: Arc<FinCategory>, o: Ob) -> Self {
        let omap = vec![o; dom.num_objects()];
        let mmap = vec![cod.id(o); dom.num_morphisms()];
        Self {
            name: format!("const_{}", cod.ob_id(o)),
            dom,
            cod,
            omap,
            mmap,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn ob(&self, o: Ob) -> Ob {
        self.omap[o.0]
    }

    pub fn mor(&self, f: Mor) -> Mor {
        self.mmap[f.0]
    }

    pub fn omap(&self) -> &[Ob] {
        &self.omap
    }

    pub fn mmap(&self) -> &[Mor] {
        &self.mmap
    }

    pub fn is_endo(&self) -> bool {
        same_cat(&self.dom, &self.cod)
    }

    /// `self . first`.
    pub fn after(&self, first: &FunctorData) -> Result<Self> {
        if !same_cat(&first.cod, &self.dom) {
            return Err(Error::Shape(format!(
                "cannot compose `{}` after `{}`: `{}` is not `{}`",
                self.name,
                first.name,
                first.cod.name(),
                self.dom.name()
            )));
        }
        Ok(Self {
            name: format!("{}__{}", self.name, first.name),
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            omap: first.omap.iter().map(|&o| self.ob(o)).collect(),
            mmap: first.mmap.iter().map(|&m| self.mor(m)).collect(),
        })
    }

    /// The same assignment viewed between opposite categories.
    pub fn op(&self, dom_op: Arc<FinCategory>, cod_op: Arc<FinCategory>) -> Self {
        Self {
            name: format!("{}_op", self.name),
            dom: dom_op,
            cod: cod_op,
            omap: self.omap.clone(),
            mmap: self.mmap.clone(),
        }
    }

    /// Exhaustive functor-law check.
    pub fn validate(&self) -> LawReport {
        let (c, d) = (&*self.dom, &*self.cod);
        let mut report = LawReport::new();
        for f in c.morphisms() {
            let g = self.mor(f);
            if d.src(g) != self.ob(c.src(f)) || d.dst(g) != self.ob(c.dst(f)) {
                report.push(Law::PreservesEndpoints, [c.mor_id(f), d.mor_id(g)]);
            }
        }
        for o in c.objects() {
            if self.mor(c.id(o)) != d.id(self.ob(o)) {
                report.push(Law::PreservesIdentity, [c.ob_id(o)]);
            }
        }
        if !report.is_empty() {
            return report;
        }
        for g in c.morphisms() {
            for f in c.morphisms() {
                if let Some(gf) = c.try_compose(g, f) {
                    if d.try_compose(self.mor(g), self.mor(f)) != Some(self.mor(gf)) {
                        report.push(Law::PreservesComposite, [c.mor_id(g), c.mor_id(f)]);
                    }
                }
            }
        }
        report
    }

    pub fn table(&self) -> FunctorTable {
        FunctorTable {
            name: self.name.clone(),
            dom: self.dom.name().to_string(),
            cod: self.cod.name().to_string(),
            objects: self
                .dom
                .objects()
                .map(|o| (self.dom.ob_id(o).to_string(), self.cod.ob_id(self.ob(o)).to_string()))
                .collect(),
            morphisms: self
                .dom
                .morphisms()
                .map(|f| (self.dom.mor_id(f).to_string(), self.cod.mor_id(self.mor(f)).to_string()))
                .collect(),
        }
    }

    /// Preimage index of objects, for inverting bijective-on-objects functors.
    pub fn object_preimages(&self) -> HashMap<Ob, Vec<Ob>> {
        let mut pre: HashMap<Ob, Vec<Ob>> = HashMap::new();
        for o in self.dom.objects() {
            pre.entry(self.ob(o)).or_default().push(o);
        }
        pre
    }
}

/// A natural transformation between parallel tabulated functors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTransData {
    pub name: String,
    pub source: FunctorData,
    pub target: FunctorData,
    components: Vec<Mor>,
}

impl NatTransData {
    /// Checks that the functors are parallel and each component is typed
    /// `source(o) -> target(o)`. Naturality is left to [`NatTransData::validate`].
    pub fn new(
        name: impl Into<String>,
        source: FunctorData,
        target: FunctorData,
        components: Vec<Mor>,
    ) -> Result<Self> {
        let name = name.into();
        if !same_cat(&source.dom, &target.dom) || !same_cat(&source.cod, &target.cod) {
            return Err(Error::Shape(format!(
                "`{name}`: `{}` and `{}` are not parallel",
                source.name, target.name
            )));
        }
        if components.len() != source.dom.num_objects() {
            return Err(Error::Shape(format!(
                "`{name}` has {} components for {} objects",
                components.len(),
                source.dom.num_objects()
            )));
        }
        let d = &source.cod;
        for (i, &c) in components.iter().enumerate() {
            if c.0 >= d.num_morphisms() {
                return Err(Error::Dangling(format!("component of `{name}` outside codomain")));
            }
            if d.src(c) != source.ob(Ob(i)) || d.dst(c) != target.ob(Ob(i)) {
                return Err(Error::Shape(format!(
                    "component `{}` of `{name}` at `{}` is not typed `{} -> {}`",
                    d.mor_id(c),
                    source.dom.ob_id(Ob(i)),
                    d.ob_id(source.ob(Ob(i))),
                    d.ob_id(target.ob(Ob(i)))
                )));
            }
        }
        Ok(Self {
            name,
            source,
            target,
            components,
        })
    }

    pub fn from_ids<S: AsRef<str>>(
        name: impl Into<String>,
        source: FunctorData,
        target: FunctorData,
        components: &[(S, S)],
    ) -> Result<Self> {
        let name = name.into();
        let (c, d) = (source.dom.clone(), source.cod.clone());
        let mut comps = vec![None; c.num_objects()];
        for (o, m) in components {
            let o = c.require_ob(o.as_ref())?;
            let m = d.require_mor(m.as_ref())?;
            if comps[o.0].replace(m).is_some() {
                return Err(Error::Duplicate(format!(
                    "component at `{}` given twice in `{name}`",
                    c.ob_id(o)
                )));
            }
        }
        let comps = comps
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or_else(|| Error::Shape(format!("`{name}` has no component at `{}`", c.ob_id(Ob(i))))))
            .collect::<Result<_>>()?;
        Self::new(name, source, target, comps)
    }

    pub fn identity(f: &FunctorData) -> Self {
        let comps = f.dom.objects().map(|o| f.cod.id(f.ob(o))).collect();
        Self {
            name: format!("id_{}", f.name),
            source: f.clone(),
            target: f.clone(),
            components: comps,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn at(&self, o: Ob) -> Mor {
        self.components[o.0]
    }

    pub fn components(&self) -> &[Mor] {
        &self.components
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self
                .source
                .dom
                .objects()
                .all(|o| self.at(o) == self.source.cod.id(self.source.ob(o)))
    }

    pub fn validate(&self) -> LawReport {
        let (c, d) = (&*self.source.dom, &*self.source.cod);
        let mut report = LawReport::new();
        for f in c.morphisms() {
            let (a, b) = (c.src(f), c.dst(f));
            let lhs = d.try_compose(self.target.mor(f), self.at(a));
            let rhs = d.try_compose(self.at(b), self.source.mor(f));
            if lhs.is_none() || lhs != rhs {
                report.push(Law::Naturality, [c.mor_id(f)]);
            }
        }
        report
    }

    /// Vertical composite `self . first`.
    pub fn after(&self, first: &NatTransData) -> Result<Self> {
        if self.source != first.target {
            return Err(Error::Shape(format!(
                "cannot compose `{}` after `{}`",
                self.name, first.name
            )));
        }
        let d = &self.source.cod;
        let comps = self
            .source
            .dom
            .objects()
            .map(|o| d.compose(self.at(o), first.at(o)))
            .collect();
        Ok(Self {
            name: format!("{}__{}", self.name, first.name),
            source: first.source.clone(),
            target: self.target.clone(),
            components: comps,
        })
    }

    /// Whiskering `self H : F H => G H`.
    pub fn whisker_left(&self, h: &FunctorData) -> Result<Self> {
        let source = self.source.after(h)?;
        let target = self.target.after(h)?;
        let comps = h.dom.objects().map(|o| self.at(h.ob(o))).collect();
        Ok(Self {
            name: format!("{}__{}", self.name, h.name),
            source,
            target,
            components: comps,
        })
    }

    /// Whiskering `K self : K F => K G`.
    pub fn whisker_right(&self, k: &FunctorData) -> Result<Self> {
        let source = k.after(&self.source)?;
        let target = k.after(&self.target)?;
        let comps = self.components.iter().map(|&m| k.mor(m)).collect();
        Ok(Self {
            name: format!("{}__{}", k.name, self.name),
            source,
            target,
            components: comps,
        })
    }

    /// Horizontal composite `outer * self : K F => L G` for `self : F => G`, `outer : K => L`.
    pub fn horizontal(&self, outer: &NatTransData) -> Result<Self> {
        let kf_to_kg = self.whisker_right(&outer.source)?;
        let kg_to_lg = outer.whisker_left(&self.target)?;
        Ok(kg_to_lg
            .after(&kf_to_kg)?
            .with_name(format!("{}__h__{}", outer.name, self.name)))
    }

    /// The transformation with the same components between opposite functors,
    /// running in the reverse direction.
    pub fn op(&self, dom_op: Arc<FinCategory>, cod_op: Arc<FinCategory>) -> Self {
        Self {
            name: format!("{}_op", self.name),
            source: self.target.op(dom_op.clone(), cod_op.clone()),
            target: self.source.op(dom_op, cod_op),
            components: self.components.clone(),
        }
    }

    pub fn component_ids(&self) -> Vec<(String, String)> {
        let (c, d) = (&self.source.dom, &self.source.cod);
        c.objects()
            .map(|o| (c.ob_id(o).to_string(), d.mor_id(self.at(o)).to_string()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::CategoryBuilder;

    fn chain2() -> Arc<FinCategory> {
        Arc::new(
            CategoryBuilder::new("chain2")
                .objects(["0", "1"])
                .morphism("u", "0", "1")
                .build()
                .unwrap(),
        )
    }

    #[test]
    fn identity_functor_is_lawful() {
        let c = chain2();
        assert!(FunctorData::identity(c).validate().is_empty());
    }

    #[test]
    fn implicit_identities_in_from_ids() {
        let c = chain2();
        let f = FunctorData::from_ids("F", c.clone(), c.clone(), &[("0", "0"), ("1", "1")], &[("u", "u")]).unwrap();
        assert_eq!(f, FunctorData::identity(c));
    }

    #[test]
    fn non_functor_is_reported() {
        let c = chain2();
        let f = FunctorData::from_ids("F", c.clone(), c.clone(), &[("0", "1"), ("1", "0")], &[("u", "id_0")]).unwrap();
        assert!(f.validate().has(Law::PreservesEndpoints));
    }

    #[test]
    fn naturality_and_vertical_composition() {
        let c = chain2();
        let k0 = FunctorData::constant(c.clone(), c.clone(), Ob(0));
        let k1 = FunctorData::constant(c.clone(), c.clone(), Ob(1));
        let u = c.mor("u").unwrap();
        let a = NatTransData::new("a", k0.clone(), k1.clone(), vec![u, u]).unwrap();
        assert!(a.validate().is_empty());
        let i = NatTransData::identity(&k1);
        assert_eq!(i.after(&a).unwrap().components(), a.components());
        assert!(NatTransData::new("b", k1, k0, vec![u, u]).is_err());
    }
}
