use std::sync::Arc;

use super::lexer::is_ident;
use super::workspace::{Entity, ParamData, Workspace, IDENTITY_PREFIX};
use crate::algkit::{ActionAlgebra, FinGroup, FinMonoid};
use crate::fincat::{CategoryBuilder, FinCategory, FunctorData, NatTransData};
use crate::grothfib::{Flavor, SplitFibrationData};
use crate::monadkit::{ComonadData, MonadData, ParamComonadData, ParamEndofunctorData, ParamMonadData};
use crate::{Error, Result};

/// Builds a [`Workspace`] from programmatic data, registering dependencies
/// first and reusing entities that are already present under their own name.
#[derive(Debug, Default)]
pub struct Exporter {
    ws: Workspace,
}

fn sanitize(name: &str) -> String {
    let s: String = name
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                c
            } else {
                '_'
            }
        })
        .collect();
    if is_ident(&s) {
        s
    } else {
        format!("_{s}")
    }
}

fn check_ids<'a>(what: &str, ids: impl IntoIterator<Item = &'a str>) -> Result<()> {
    for id in ids {
        if !is_ident(id) {
            return Err(Error::Construction(format!("`{id}` in `{what}` is not an identifier")));
        }
    }
    Ok(())
}

impl Exporter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn finish(self) -> Workspace {
        self.ws
    }

    /// The name under which `entity` is stored, or a fresh name near `want`.
    fn place(&mut self, want: &str, entity: Entity) -> String {
        let base = sanitize(want);
        let mut name = base.clone();
        let mut k = 2;
        loop {
            match self.ws.get(&name) {
                Some(e) if e.entity == entity => return name,
                Some(_) => {
                    name = format!("{base}_{k}");
                    k += 1;
                }
                None if name.starts_with(IDENTITY_PREFIX) && self.ws.contains(&name[IDENTITY_PREFIX.len()..]) => {
                    name = format!("{base}_{k}");
                    k += 1;
                }
                None => {
                    self.ws.push(name.clone(), None, entity);
                    return name;
                }
            }
        }
    }

    /// A category; rejected when it cannot be written in the text format
    /// (ids that are not identifiers, or non-canonical identities).
    pub fn category(&mut self, c: &Arc<FinCategory>) -> Result<String> {
        check_ids(c.name(), c.object_ids().iter().map(String::as_str))?;
        check_ids(c.name(), c.morphism_records().iter().map(|r| r.id.as_str()))?;
        let mut b = CategoryBuilder::new(c.name()).objects(c.object_ids().iter().cloned());
        for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
            b = b.morphism(c.mor_id(f), c.ob_id(c.src(f)), c.ob_id(c.dst(f)));
        }
        for g in c.morphisms().filter(|&g| !c.is_identity(g)) {
            for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
                if let Some(h) = c.try_compose(g, f) {
                    b = b.compose(c.mor_id(h), c.mor_id(g), c.mor_id(f));
                }
            }
        }
        if b.build().ok().as_ref() != Some(&**c) {
            return Err(Error::Construction(format!(
                "`{}` does not list identities first under their default ids",
                c.name()
            )));
        }
        Ok(self.place(c.name(), Entity::Category(c.clone())))
    }

    pub fn functor(&mut self, f: &FunctorData) -> Result<String> {
        let dom = self.category(&f.dom)?;
        let cod = self.category(&f.cod)?;
        Ok(self.place(
            &f.name,
            Entity::Functor {
                dom,
                cod,
                data: f.clone(),
            },
        ))
    }

    /// A functor reference: a registered functor under its own name, the
    /// implicit identity, or a newly registered functor.
    fn functor_ref(&mut self, f: &FunctorData) -> Result<String> {
        let own = sanitize(&f.name);
        if let Some(Entity::Functor { data, .. }) = self.ws.get(&own).map(|e| &e.entity) {
            if data == f {
                return Ok(own);
            }
        }
        if f.is_endo() && *f == FunctorData::identity(f.dom.clone()) {
            return Ok(format!("{IDENTITY_PREFIX}{}", self.category(&f.dom)?));
        }
        self.functor(f)
    }

    /// A transformation between the given composite paths.
    fn nat_with(&mut self, n: &NatTransData, source: Vec<String>, target: Vec<String>) -> String {
        self.place(
            &n.name,
            Entity::Nat {
                source,
                target,
                data: n.clone(),
            },
        )
    }

    pub fn nat(&mut self, n: &NatTransData) -> Result<String> {
        let s = self.functor_ref(&n.source)?;
        let t = self.functor_ref(&n.target)?;
        Ok(self.nat_with(n, vec![s], vec![t]))
    }

    pub fn monad(&mut self, m: &MonadData) -> Result<String> {
        let on = self.category(m.cat())?;
        let functor = self.functor(&m.t)?;
        let id = format!("{IDENTITY_PREFIX}{on}");
        let unit = self.nat_with(&m.eta, vec![id], vec![functor.clone()]);
        let mult = self.nat_with(&m.mu, vec![functor.clone(), functor.clone()], vec![functor.clone()]);
        let entity = Entity::Monad {
            on,
            functor,
            unit,
            mult,
            data: m.clone(),
        };
        Ok(self.place(&m.name, entity))
    }

    pub fn comonad(&mut self, c: &ComonadData) -> Result<String> {
        let on = self.category(&c.carrier)?;
        let functor = self.functor(&c.s)?;
        let x = c.carrier.clone();
        let eps = c.monad.eta.op(x.clone(), x.clone()).with_name(c.monad.eta.name.clone());
        let delta = c.monad.mu.op(x.clone(), x).with_name(c.monad.mu.name.clone());
        let id = format!("{IDENTITY_PREFIX}{on}");
        let counit = self.nat_with(&eps, vec![functor.clone()], vec![id]);
        let comult = self.nat_with(&delta, vec![functor.clone()], vec![functor.clone(), functor.clone()]);
        let entity = Entity::Comonad {
            on,
            functor,
            counit,
            comult,
            data: c.clone(),
        };
        Ok(self.place(&c.name, entity))
    }

    /// `along` entries, omitted along identities carrying the default identity.
    fn along(
        &mut self,
        params: &FinCategory,
        nats: &[NatTransData],
        at: &[FunctorData],
    ) -> Result<Vec<Option<String>>> {
        params
            .morphisms()
            .map(|f| {
                let n = &nats[f.0];
                if params.is_identity(f) && *n == NatTransData::identity(&at[params.src(f).0]) {
                    Ok(None)
                } else {
                    self.nat(n).map(Some)
                }
            })
            .collect()
    }

    fn param(
        &mut self,
        name: &str,
        carriers: &Arc<FinCategory>,
        at: Vec<String>,
        along: Vec<Option<String>>,
        data: ParamData,
    ) -> Result<String> {
        let params = self.category(data.params())?;
        let carriers = self.category(carriers)?;
        Ok(self.place(
            name,
            Entity::Param {
                params,
                carriers,
                at,
                along,
                data,
            },
        ))
    }

    pub fn param_endo(&mut self, p: &ParamEndofunctorData) -> Result<String> {
        self.category(&p.params)?;
        self.category(&p.carriers)?;
        let at = p.per_object.iter().map(|f| self.functor(f)).collect::<Result<_>>()?;
        let along = self.along(&p.params, &p.per_morphism, &p.per_object)?;
        self.param(&p.name, &p.carriers, at, along, ParamData::Endo(p.clone()))
    }

    pub fn param_monad(&mut self, p: &ParamMonadData) -> Result<String> {
        self.category(&p.params)?;
        self.category(&p.carriers)?;
        let at = p.per_object.iter().map(|m| self.monad(m)).collect::<Result<_>>()?;
        let fs: Vec<FunctorData> = p.per_object.iter().map(|m| m.t.clone()).collect();
        let along = self.along(&p.params, &p.per_morphism, &fs)?;
        self.param(&p.name, &p.carriers, at, along, ParamData::Monad(p.clone()))
    }

    pub fn param_comonad(&mut self, p: &ParamComonadData) -> Result<String> {
        self.category(&p.params)?;
        self.category(&p.carriers)?;
        let comonads: Vec<ComonadData> = p.params.objects().map(|a| p.at(a)).collect();
        let at = comonads.iter().map(|c| self.comonad(c)).collect::<Result<_>>()?;
        let x = p.carriers.clone();
        let nats: Vec<NatTransData> = p
            .dual
            .per_morphism
            .iter()
            .map(|a| a.op(x.clone(), x.clone()).with_name(a.name.clone()))
            .collect();
        let fs: Vec<FunctorData> = comonads.iter().map(|c| c.s.clone()).collect();
        let along = self.along(&p.params, &nats, &fs)?;
        self.param(&p.name, &p.carriers, at, along, ParamData::Comonad(p.clone()))
    }

    pub fn fibration(&mut self, s: &SplitFibrationData) -> Result<String> {
        let base = self.category(&s.base)?;
        let at = s.fibres.iter().map(|c| self.category(c)).collect::<Result<_>>()?;
        let along = s
            .base
            .morphisms()
            .map(|f| {
                let r = &s.reindex[f.0];
                if s.base.is_identity(f) && *r == FunctorData::identity(s.fibres[s.base.src(f).0].clone()) {
                    Ok(None)
                } else {
                    self.functor(r).map(Some)
                }
            })
            .collect::<Result<_>>()?;
        let entity = Entity::Fibration {
            base,
            at,
            along,
            data: s.clone(),
        };
        Ok(self.place(&s.name, entity))
    }

    /// `total NAME of PARAM as FLAVOR`, with `param` already registered.
    pub fn total(&mut self, name: &str, param: &str, flavor: Flavor) -> Result<String> {
        let p = self.ws.param(param).map_err(Error::Precondition)?.clone();
        let data = p.total(flavor)?;
        let entity = Entity::Total {
            of: param.to_string(),
            flavor,
            data: Box::new(data),
        };
        Ok(self.place(name, entity))
    }

    pub fn monoid(&mut self, m: &FinMonoid) -> Result<String> {
        check_ids(&m.name, m.elements.iter().map(String::as_str))?;
        Ok(self.place(&m.name, Entity::Monoid(m.clone())))
    }

    pub fn group(&mut self, g: &FinGroup) -> Result<String> {
        check_ids(&g.name, g.elements.iter().map(String::as_str))?;
        Ok(self.place(&g.name, Entity::Group(g.clone())))
    }

    /// An action whose acting and acted-on monoids are registered under the
    /// given names.
    pub fn action(&mut self, name: &str, acting: &str, on: &str, a: &ActionAlgebra) -> Result<String> {
        for (n, m) in [(acting, &a.g), (on, &a.h)] {
            if self.ws.monoid(n).map_err(Error::Precondition)? != m {
                return Err(Error::Precondition(format!("`{n}` does not match the action")));
            }
        }
        let entity = Entity::Action {
            acting: acting.to_string(),
            on: on.to_string(),
            data: a.clone(),
        };
        Ok(self.place(name, entity))
    }
}

/// A workspace holding the given categories.
pub fn categories(cats: &[Arc<FinCategory>]) -> Result<Workspace> {
    let mut ex = Exporter::new();
    for c in cats {
        ex.category(c)?;
    }
    Ok(ex.finish())
}
