use std::sync::Arc;

use crate::fincat::{nat_transformations, opposite, FinCategory, FunctorData, NatTransData, Ob};
use crate::report::{Law, LawReport};
use crate::{Error, Result};

/// A monad `(T, eta, mu)` on a finite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonadData {
    pub name: String,
    pub t: FunctorData,
    pub eta: NatTransData,
    pub mu: NatTransData,
}

impl MonadData {
    /// Checks the profiles `eta : Id => T` and `mu : T T => T`.
    pub fn new(name: impl Into<String>, t: FunctorData, eta: NatTransData, mu: NatTransData) -> Result<Self> {
        let name = name.into();
        if !t.is_endo() {
            return Err(Error::Shape(format!("`{}` is not an endofunctor", t.name)));
        }
        let id = FunctorData::identity(t.dom.clone());
        if eta.source != id || eta.target != t {
            return Err(Error::Shape(format!("unit `{}` of `{name}` is not Id => T", eta.name)));
        }
        let tt = t.after(&t)?;
        if mu.source != tt || mu.target != t {
            return Err(Error::Shape(format!(
                "multiplication `{}` of `{name}` is not T T => T",
                mu.name
            )));
        }
        Ok(Self { name, t, eta, mu })
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        let t = FunctorData::identity(c).with_name("Id");
        let eta = NatTransData::identity(&t).with_name("eta_id");
        let mu = NatTransData::identity(&t).with_name("mu_id");
        Self {
            name: "id".into(),
            t,
            eta,
            mu,
        }
    }

    pub fn cat(&self) -> &Arc<FinCategory> {
        &self.t.dom
    }

    /// Unit, multiplication and associativity laws, plus the functor and
    /// naturality laws of the components.
    pub fn check(&self) -> LawReport {
        let mut report = self.t.validate();
        report.extend(self.eta.validate());
        report.extend(self.mu.validate());
        if !report.is_empty() {
            return report;
        }
        let c = self.cat();
        for x in c.objects() {
            let tx = self.t.ob(x);
            let idt = c.id(tx);
            let mu = self.mu.at(x);
            if c.compose(mu, self.t.mor(self.eta.at(x))) != idt {
                report.push(Law::MonadLeftUnit, [c.ob_id(x)]);
            }
            if c.compose(mu, self.eta.at(tx)) != idt {
                report.push(Law::MonadRightUnit, [c.ob_id(x)]);
            }
            if c.compose(mu, self.t.mor(mu)) != c.compose(mu, self.mu.at(tx)) {
                report.push(Law::MonadAssociativity, [c.ob_id(x)]);
            }
        }
        report
    }

    /// `(T^op, eta^op, mu^op)`: a comonad on the opposite category.
    pub fn op(&self, cop: Arc<FinCategory>) -> ComonadData {
        ComonadData {
            name: self.name.clone(),
            carrier: cop.clone(),
            monad: self.clone(),
            s: self.t.op(cop.clone(), cop),
        }
    }

    /// Free algebra structure `mu_X : T T X -> T X`.
    pub fn free(&self, x: Ob) -> (Ob, crate::fincat::Mor) {
        (self.t.ob(x), self.mu.at(x))
    }
}

/// `check_monad` as a free function.
pub fn check_monad(m: &MonadData) -> LawReport {
    m.check()
}

/// A comonad `(S, eps, delta)` on `carrier`, stored as the monad
/// `(S^op, eps^op, delta^op)` on the opposite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComonadData {
    pub name: String,
    /// The category the comonad acts on.
    pub carrier: Arc<FinCategory>,
    /// The dual monad on `carrier^op`.
    pub monad: MonadData,
    /// The comonad's functor on `carrier`.
    pub s: FunctorData,
}

impl ComonadData {
    /// From `S`, `eps : S => Id`, `delta : S => S S` on `carrier`; `carrier_op`
    /// must be its opposite.
    pub fn new(
        name: impl Into<String>,
        s: FunctorData,
        eps: NatTransData,
        delta: NatTransData,
        carrier_op: Arc<FinCategory>,
    ) -> Result<Self> {
        let name = name.into();
        let carrier = s.dom.clone();
        let id = FunctorData::identity(carrier.clone());
        if eps.source != s || eps.target != id {
            return Err(Error::Shape(format!(
                "counit `{}` of `{name}` is not S => Id",
                eps.name
            )));
        }
        let ss = s.after(&s)?;
        if delta.source != s || delta.target != ss {
            return Err(Error::Shape(format!(
                "comultiplication `{}` of `{name}` is not S => S S",
                delta.name
            )));
        }
        let cop = carrier_op;
        let t = s.op(cop.clone(), cop.clone()).with_name(s.name.clone());
        let eta = eps.op(cop.clone(), cop.clone()).with_name(eps.name.clone());
        let mu = delta.op(cop.clone(), cop).with_name(delta.name.clone());
        let monad = MonadData::new(name.clone(), t, eta, mu)?;
        Ok(Self {
            name,
            carrier,
            monad,
            s,
        })
    }

    /// Identity comonad.
    pub fn identity(carrier: Arc<FinCategory>, carrier_op: Arc<FinCategory>) -> Self {
        let monad = MonadData::identity(carrier_op);
        Self {
            name: "id".into(),
            s: FunctorData::identity(carrier.clone()).with_name("Id"),
            carrier,
            monad,
        }
    }

    /// Counit component `eps_X : S X -> X`.
    pub fn eps(&self, x: Ob) -> crate::fincat::Mor {
        self.monad.eta.at(x)
    }

    /// Comultiplication component `delta_X : S X -> S S X`.
    pub fn delta(&self, x: Ob) -> crate::fincat::Mor {
        self.monad.mu.at(x)
    }

    /// Comonad laws, checked as the monad laws of the dual.
    pub fn check(&self) -> LawReport {
        self.monad.check()
    }
}

/// A morphism of monads `alpha : S => T` on one category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonadMorphismData {
    pub name: String,
    pub source: MonadData,
    pub target: MonadData,
    pub alpha: NatTransData,
}

impl MonadMorphismData {
    pub fn new(name: impl Into<String>, source: MonadData, target: MonadData, alpha: NatTransData) -> Result<Self> {
        let name = name.into();
        if !crate::fincat::functor::same_cat(source.cat(), target.cat()) {
            return Err(Error::Shape(format!(
                "`{name}`: monads `{}` and `{}` live on different categories",
                source.name, target.name
            )));
        }
        if alpha.source != source.t || alpha.target != target.t {
            return Err(Error::Shape(format!(
                "`{}` is not a transformation `{}` => `{}`",
                alpha.name, source.t.name, target.t.name
            )));
        }
        Ok(Self {
            name,
            source,
            target,
            alpha,
        })
    }

    pub fn identity(m: &MonadData) -> Self {
        Self {
            name: format!("id_{}", m.name),
            source: m.clone(),
            target: m.clone(),
            alpha: NatTransData::identity(&m.t),
        }
    }

    /// Unit and multiplication compatibility at every object.
    pub fn check(&self) -> LawReport {
        let mut report = self.alpha.validate();
        if !report.is_empty() {
            return report;
        }
        let c = self.source.cat();
        let (s, t, a) = (&self.source, &self.target, &self.alpha);
        for x in c.objects() {
            if t.eta.at(x) != c.compose(a.at(x), s.eta.at(x)) {
                report.push(Law::MorphismUnit, [c.ob_id(x)]);
            }
            // (a * a)_X = T(a_X) . a_{SX}
            let aa = c.compose(t.t.mor(a.at(x)), a.at(s.t.ob(x)));
            if c.compose(a.at(x), s.mu.at(x)) != c.compose(t.mu.at(x), aa) {
                report.push(Law::MorphismMultiplication, [c.ob_id(x)]);
            }
        }
        report
    }
}

pub fn check_monad_morphism(m: &MonadMorphismData) -> LawReport {
    m.check()
}

/// Every monad morphism `s => t`; `Error::NoComponents` when not even a
/// natural transformation `S => T` exists.
pub fn monad_morphisms(s: &MonadData, t: &MonadData) -> Result<Vec<MonadMorphismData>> {
    let nts = nat_transformations(&s.t, &t.t);
    if nts.is_empty() {
        return Err(Error::NoComponents(format!(
            "no transformation `{}` => `{}`",
            s.t.name, t.t.name
        )));
    }
    let mut out = Vec::new();
    for (i, a) in nts.into_iter().enumerate() {
        let m = MonadMorphismData::new(format!("alpha{i}"), s.clone(), t.clone(), a)?;
        if m.check().is_empty() {
            out.push(m);
        }
    }
    Ok(out)
}

/// Opposite category shared by a comonad and its dual monad.
pub fn opposite_arc(c: &FinCategory) -> Arc<FinCategory> {
    Arc::new(opposite(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{CategoryBuilder, Mor};

    fn chain3() -> Arc<FinCategory> {
        Arc::new(
            CategoryBuilder::new("chain3")
                .objects(["0", "1", "2"])
                .morphism("a", "0", "1")
                .morphism("b", "1", "2")
                .morphism("c", "0", "2")
                .compose("c", "b", "a")
                .build()
                .unwrap(),
        )
    }

    /// `x |-> k v x` on the 3-chain.
    pub(crate) fn writer(c: &Arc<FinCategory>, k: usize) -> MonadData {
        let t_ob = |x: usize| Ob(x.max(k));
        let omap: Vec<Ob> = c.objects().map(|o| t_ob(o.0)).collect();
        let unique = |a: Ob, b: Ob| c.hom(a, b)[0];
        let mmap: Vec<Mor> = c
            .morphisms()
            .map(|m| unique(omap[c.src(m).0], omap[c.dst(m).0]))
            .collect();
        let t = FunctorData::new(format!("W{k}"), c.clone(), c.clone(), omap.clone(), mmap).unwrap();
        let eta = NatTransData::new(
            "eta",
            FunctorData::identity(c.clone()),
            t.clone(),
            c.objects().map(|x| unique(x, omap[x.0])).collect(),
        )
        .unwrap();
        let mu = NatTransData::new(
            "mu",
            t.after(&t).unwrap(),
            t.clone(),
            c.objects().map(|x| c.id(omap[x.0])).collect(),
        )
        .unwrap();
        MonadData::new(format!("writer{k}"), t, eta, mu).unwrap()
    }

    #[test]
    fn identity_and_writer_monads_are_lawful() {
        let c = chain3();
        assert!(MonadData::identity(c.clone()).check().is_empty());
        for k in 0..3 {
            assert!(writer(&c, k).check().is_empty(), "writer {k}");
        }
    }

    #[test]
    fn writer_morphism_exists_upwards_only() {
        let c = chain3();
        let (w1, w2) = (writer(&c, 1), writer(&c, 2));
        let ms = monad_morphisms(&w1, &w2).unwrap();
        assert_eq!(ms.len(), 1);
        assert!(ms[0].check().is_empty());
        assert!(matches!(monad_morphisms(&w2, &w1), Err(Error::NoComponents(_))));
        assert!(MonadMorphismData::identity(&w1).check().is_empty());
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let c = chain3();
        let w = writer(&c, 1);
        let r = MonadData::new("bad", w.t.clone(), w.mu.clone(), w.mu.clone());
        assert!(matches!(r, Err(Error::Shape(_))));
    }
}
