use std::sync::Arc;

use crate::fincat::functor::same_cat;
use crate::fincat::{product, FinCategory, FunctorData, Mor, NatTransData, Ob, Product};
use crate::report::{Law, LawReport};
use crate::{Error, Result};

use super::monad::{ComonadData, MonadData, MonadMorphismData};

/// `A |-> F_A`, `f |-> F_f` as a strict functor from `params` to `End(carriers)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamEndofunctorData {
    pub name: String,
    pub params: Arc<FinCategory>,
    pub carriers: Arc<FinCategory>,
    pub per_object: Vec<FunctorData>,
    pub per_morphism: Vec<NatTransData>,
}

fn check_typing(
    name: &str,
    params: &FinCategory,
    carriers: &FinCategory,
    per_object: &[FunctorData],
    per_morphism: &[NatTransData],
) -> Result<()> {
    if per_object.len() != params.num_objects() || per_morphism.len() != params.num_morphisms() {
        return Err(Error::Shape(format!("`{name}` does not cover `{}`", params.name())));
    }
    for (i, f) in per_object.iter().enumerate() {
        if !same_cat(&f.dom, carriers) || !same_cat(&f.cod, carriers) {
            return Err(Error::Shape(format!(
                "`{}` at `{}` is not an endofunctor of `{}`",
                f.name,
                params.ob_id(Ob(i)),
                carriers.name()
            )));
        }
    }
    for f in params.morphisms() {
        let a = &per_morphism[f.0];
        if a.source != per_object[params.src(f).0] || a.target != per_object[params.dst(f).0] {
            return Err(Error::Shape(format!(
                "`{}` along `{}` is not typed F_{} => F_{}",
                a.name,
                params.mor_id(f),
                params.ob_id(params.src(f)),
                params.ob_id(params.dst(f))
            )));
        }
    }
    Ok(())
}

fn strictness(params: &FinCategory, carriers: &FinCategory, per_morphism: &[NatTransData]) -> LawReport {
    let mut report = LawReport::new();
    for a in params.objects() {
        if !per_morphism[params.id(a).0].is_identity() {
            report.push(Law::StrictIdentity, [params.ob_id(a)]);
        }
    }
    for g in params.morphisms() {
        for f in params.morphisms() {
            let Some(h) = params.try_compose(g, f) else {
                continue;
            };
            let (ag, af, ah) = (&per_morphism[g.0], &per_morphism[f.0], &per_morphism[h.0]);
            let ok = carriers
                .objects()
                .all(|x| carriers.compose(ag.at(x), af.at(x)) == ah.at(x));
            if !ok {
                report.push(Law::StrictComposite, [params.mor_id(g), params.mor_id(f)]);
            }
        }
    }
    report
}

impl ParamEndofunctorData {
    pub fn new(
        name: impl Into<String>,
        params: Arc<FinCategory>,
        carriers: Arc<FinCategory>,
        per_object: Vec<FunctorData>,
        per_morphism: Vec<NatTransData>,
    ) -> Result<Self> {
        let name = name.into();
        check_typing(&name, &params, &carriers, &per_object, &per_morphism)?;
        Ok(Self {
            name,
            params,
            carriers,
            per_object,
            per_morphism,
        })
    }

    /// The constant parametrized endofunctor at `f`.
    pub fn constant(params: Arc<FinCategory>, f: FunctorData) -> Self {
        let carriers = f.dom.clone();
        let per_object = vec![f.clone(); params.num_objects()];
        let per_morphism = vec![NatTransData::identity(&f); params.num_morphisms()];
        Self {
            name: format!("const_{}", f.name),
            params,
            carriers,
            per_object,
            per_morphism,
        }
    }

    pub fn at(&self, a: Ob) -> &FunctorData {
        &self.per_object[a.0]
    }

    pub fn along(&self, f: Mor) -> &NatTransData {
        &self.per_morphism[f.0]
    }

    pub fn check(&self) -> LawReport {
        let mut report = LawReport::new();
        for f in &self.per_object {
            report.extend(f.validate());
        }
        for a in &self.per_morphism {
            report.extend(a.validate());
        }
        if report.is_empty() {
            report.extend(strictness(&self.params, &self.carriers, &self.per_morphism));
        }
        report
    }
}

/// A strict functor `params -> Mnd(carriers)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamMonadData {
    pub name: String,
    pub params: Arc<FinCategory>,
    pub carriers: Arc<FinCategory>,
    pub per_object: Vec<MonadData>,
    /// Along `f : A -> A'`, a monad morphism `T_A => T_A'`.
    pub per_morphism: Vec<NatTransData>,
}

impl ParamMonadData {
    pub fn new(
        name: impl Into<String>,
        params: Arc<FinCategory>,
        carriers: Arc<FinCategory>,
        per_object: Vec<MonadData>,
        per_morphism: Vec<NatTransData>,
    ) -> Result<Self> {
        let name = name.into();
        let fs: Vec<FunctorData> = per_object.iter().map(|m| m.t.clone()).collect();
        check_typing(&name, &params, &carriers, &fs, &per_morphism)?;
        Ok(Self {
            name,
            params,
            carriers,
            per_object,
            per_morphism,
        })
    }

    /// Every parameter acts by the same monad.
    pub fn constant(params: Arc<FinCategory>, m: MonadData) -> Self {
        let carriers = m.cat().clone();
        let per_morphism = vec![NatTransData::identity(&m.t); params.num_morphisms()];
        Self {
            name: format!("const_{}", m.name),
            per_object: vec![m; params.num_objects()],
            params,
            carriers,
            per_morphism,
        }
    }

    pub fn at(&self, a: Ob) -> &MonadData {
        &self.per_object[a.0]
    }

    pub fn along(&self, f: Mor) -> &NatTransData {
        &self.per_morphism[f.0]
    }

    pub fn morphism(&self, f: Mor) -> MonadMorphismData {
        MonadMorphismData {
            name: self.per_morphism[f.0].name.clone(),
            source: self.per_object[self.params.src(f).0].clone(),
            target: self.per_object[self.params.dst(f).0].clone(),
            alpha: self.per_morphism[f.0].clone(),
        }
    }

    pub fn endo(&self) -> ParamEndofunctorData {
        ParamEndofunctorData {
            name: self.name.clone(),
            params: self.params.clone(),
            carriers: self.carriers.clone(),
            per_object: self.per_object.iter().map(|m| m.t.clone()).collect(),
            per_morphism: self.per_morphism.clone(),
        }
    }

    /// Monad laws per parameter, strict functoriality, and the monad-morphism
    /// axioms along every morphism of the parameter category.
    pub fn check(&self) -> LawReport {
        let mut report = LawReport::new();
        for m in &self.per_object {
            report.extend(m.check());
        }
        report.extend(self.endo().check());
        if !report.is_empty() {
            return report;
        }
        for f in self.params.morphisms() {
            for v in self.morphism(f).check().violations {
                let mut w = vec![self.params.mor_id(f).to_string()];
                w.extend(v.witness);
                report.push(v.law, w);
            }
        }
        report
    }

    /// True when `T_A` is isomorphic to the identity monad, witnessed by the
    /// unit being invertible everywhere.
    pub fn acts_trivially_at(&self, a: Ob) -> bool {
        let m = self.at(a);
        let c = &self.carriers;
        c.objects().all(|x| c.is_iso(m.eta.at(x)).is_some())
    }
}

/// Either flavor of parametrized structure.
#[derive(Debug, Clone, Copy)]
pub enum ParamRef<'a> {
    Endo(&'a ParamEndofunctorData),
    Monad(&'a ParamMonadData),
}

impl<'a> ParamRef<'a> {
    pub fn params(&self) -> &'a Arc<FinCategory> {
        match self {
            ParamRef::Endo(p) => &p.params,
            ParamRef::Monad(p) => &p.params,
        }
    }

    pub fn carriers(&self) -> &'a Arc<FinCategory> {
        match self {
            ParamRef::Endo(p) => &p.carriers,
            ParamRef::Monad(p) => &p.carriers,
        }
    }

    pub fn name(&self) -> &'a str {
        match self {
            ParamRef::Endo(p) => &p.name,
            ParamRef::Monad(p) => &p.name,
        }
    }

    pub fn functor_at(&self, a: Ob) -> &'a FunctorData {
        match self {
            ParamRef::Endo(p) => &p.per_object[a.0],
            ParamRef::Monad(p) => &p.per_object[a.0].t,
        }
    }

    pub fn along(&self, f: Mor) -> &'a NatTransData {
        match self {
            ParamRef::Endo(p) => &p.per_morphism[f.0],
            ParamRef::Monad(p) => &p.per_morphism[f.0],
        }
    }

    pub fn monad(&self) -> Option<&'a ParamMonadData> {
        match self {
            ParamRef::Endo(_) => None,
            ParamRef::Monad(p) => Some(p),
        }
    }

    pub fn check(&self) -> LawReport {
        match self {
            ParamRef::Endo(p) => p.check(),
            ParamRef::Monad(p) => p.check(),
        }
    }
}

/// `check_param` for either flavor.
pub fn check_param(p: ParamRef<'_>) -> LawReport {
    p.check()
}

/// A parametrized comonad, stored as the parametrized monad on
/// `(params^op, carriers^op)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamComonadData {
    pub name: String,
    pub params: Arc<FinCategory>,
    pub carriers: Arc<FinCategory>,
    pub dual: ParamMonadData,
}

impl ParamComonadData {
    /// From comonads per parameter and comonad morphisms `S_A => S_A'` along
    /// each `f : A -> A'` (transformations on `carriers`).
    pub fn new(
        name: impl Into<String>,
        params: Arc<FinCategory>,
        params_op: Arc<FinCategory>,
        per_object: Vec<ComonadData>,
        per_morphism: Vec<NatTransData>,
    ) -> Result<Self> {
        let name = name.into();
        let carriers = per_object
            .first()
            .map(|s| s.carrier.clone())
            .ok_or_else(|| Error::Shape(format!("`{name}` has no parameters")))?;
        let carriers_op = per_object[0].monad.cat().clone();
        let fs: Vec<FunctorData> = per_object.iter().map(|s| s.s.clone()).collect();
        check_typing(&name, &params, &carriers, &fs, &per_morphism)?;
        let dual_morphisms = per_morphism
            .iter()
            .map(|a| a.op(carriers_op.clone(), carriers_op.clone()).with_name(a.name.clone()))
            .collect();
        let dual = ParamMonadData::new(
            name.clone(),
            params_op,
            carriers_op,
            per_object.into_iter().map(|s| s.monad).collect(),
            dual_morphisms,
        )?;
        Ok(Self {
            name,
            params,
            carriers,
            dual,
        })
    }

    pub fn check(&self) -> LawReport {
        self.dual.check()
    }

    /// The comonad at `a`, with its functor on `carriers`.
    pub fn at(&self, a: Ob) -> ComonadData {
        let m = self.dual.at(a).clone();
        ComonadData {
            name: m.name.clone(),
            carrier: self.carriers.clone(),
            s: m.t
                .op(self.carriers.clone(), self.carriers.clone())
                .with_name(m.t.name.clone()),
            monad: m,
        }
    }
}

/// `(A, X) |-> F_A X` as a functor `params x carriers -> carriers`:
/// `(f, g) |-> (F_f)_Y . F_A g`.
pub fn two_variable(p: ParamRef<'_>, prod: &Product) -> Result<FunctorData> {
    let (a_cat, x_cat) = (p.params(), p.carriers());
    let omap = prod
        .cat
        .objects()
        .map(|o| {
            let (a, x) = prod.split_ob(o);
            p.functor_at(a).ob(x)
        })
        .collect();
    let mmap = prod
        .cat
        .morphisms()
        .map(|m| {
            let (f, g) = prod.split_mor(m);
            let fa = p.functor_at(a_cat.src(f));
            x_cat.compose(p.along(f).at(x_cat.dst(g)), fa.mor(g))
        })
        .collect();
    FunctorData::new(format!("{}__2", p.name()), prod.cat.clone(), x_cat.clone(), omap, mmap)
}

/// `T^ : (A, X) |-> (A, T_A X)` on the product, with its product category.
#[derive(Debug, Clone)]
pub struct Hat {
    pub product: Product,
    pub functor: FunctorData,
    pub monad: Option<MonadData>,
}

pub fn hat(p: ParamRef<'_>) -> Result<Hat> {
    let prod = product(p.params(), p.carriers())?;
    let two = two_variable(p, &prod)?;
    let omap = prod
        .cat
        .objects()
        .map(|o| prod.ob(prod.split_ob(o).0, two.ob(o)))
        .collect();
    let mmap = prod
        .cat
        .morphisms()
        .map(|m| prod.mor(prod.split_mor(m).0, two.mor(m)))
        .collect();
    let functor = FunctorData::new(
        format!("{}__hat", p.name()),
        prod.cat.clone(),
        prod.cat.clone(),
        omap,
        mmap,
    )?;
    let monad = match p.monad() {
        None => None,
        Some(pm) => {
            let comp = |pick: &dyn Fn(&MonadData, Ob) -> Mor| -> Vec<Mor> {
                prod.cat
                    .objects()
                    .map(|o| {
                        let (a, x) = prod.split_ob(o);
                        prod.mor(p.params().id(a), pick(pm.at(a), x))
                    })
                    .collect()
            };
            let eta = NatTransData::new(
                "eta__hat",
                FunctorData::identity(prod.cat.clone()),
                functor.clone(),
                comp(&|m, x| m.eta.at(x)),
            )?;
            let mu = NatTransData::new(
                "mu__hat",
                functor.after(&functor)?,
                functor.clone(),
                comp(&|m, x| m.mu.at(x)),
            )?;
            Some(MonadData::new(format!("{}__hat", p.name()), functor.clone(), eta, mu)?)
        }
    };
    Ok(Hat {
        product: prod,
        functor,
        monad,
    })
}

/// The two sides of the coKleisli self-composite: `T . (A x T) . (Delta x X)`
/// and `(A, X) |-> T_A T_A X` tabulated from the per-parameter squares.
pub fn cokleisli_self_composite(p: &ParamMonadData) -> Result<(FunctorData, FunctorData)> {
    let pr = ParamRef::Monad(p);
    let ax = product(&p.params, &p.carriers)?;
    let aax = product(&p.params, &ax.cat)?;
    let t = two_variable(pr, &ax)?;
    let a_cat = &p.params;
    // Delta x X : (A, X) |-> (A, (A, X))
    let diag = FunctorData::new(
        "delta_x",
        ax.cat.clone(),
        aax.cat.clone(),
        ax.cat.objects().map(|o| aax.ob(ax.split_ob(o).0, o)).collect(),
        ax.cat.morphisms().map(|m| aax.mor(ax.split_mor(m).0, m)).collect(),
    )?;
    // A x T : (A, (B, X)) |-> (A, T_B X)
    let a_times_t = FunctorData::new(
        "a_x_t",
        aax.cat.clone(),
        ax.cat.clone(),
        aax.cat
            .objects()
            .map(|o| {
                let (a, bx) = aax.split_ob(o);
                ax.ob(a, t.ob(bx))
            })
            .collect(),
        aax.cat
            .morphisms()
            .map(|m| {
                let (f, bx) = aax.split_mor(m);
                ax.mor(f, t.mor(bx))
            })
            .collect(),
    )?;
    let lhs = t.after(&a_times_t)?.after(&diag)?.with_name("t_bullet_t");
    let rhs = FunctorData::new(
        "t_a_t_a",
        ax.cat.clone(),
        p.carriers.clone(),
        ax.cat
            .objects()
            .map(|o| {
                let (a, x) = ax.split_ob(o);
                let ta = &p.at(a).t;
                ta.ob(ta.ob(x))
            })
            .collect(),
        ax.cat
            .morphisms()
            .map(|m| {
                let (f, g) = ax.split_mor(m);
                let (a, b) = (a_cat.src(f), a_cat.dst(f));
                let (ta, tb) = (&p.at(a).t, &p.at(b).t);
                let alpha = p.along(f);
                let y = p.carriers.dst(g);
                // (T_f * T_f)_Y . T_A T_A g
                let tt = p.carriers.compose(tb.mor(alpha.at(y)), alpha.at(ta.ob(y)));
                p.carriers.compose(tt, ta.mor(ta.mor(g)))
            })
            .collect(),
    )?;
    Ok((lhs, rhs))
}
