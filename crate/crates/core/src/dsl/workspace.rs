use std::collections::HashMap;
use std::sync::Arc;

use super::lexer::{Diagnostic, Severity, Span};
use super::parser::{parse_decls, Decl, DeclKind, Name, ParamKind};
use crate::algkit::{ActionAlgebra, FinGroup, FinMonoid};
use crate::fincat::{opposite, CategoryBuilder, FinCategory, FunctorData, Mor, NatTransData, Ob};
use crate::grothfib::{build_total, Flavor, SplitFibrationData, TotalCategory};
use crate::monadkit::{ComonadData, MonadData, ParamComonadData, ParamEndofunctorData, ParamMonadData, ParamRef};
use crate::report::LawReport;

/// Prefix of the implicit identity functor `Id_C` on a category `C`.
pub const IDENTITY_PREFIX: &str = "Id_";

/// The data of a parametrized structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamData {
    Endo(ParamEndofunctorData),
    Monad(ParamMonadData),
    Comonad(ParamComonadData),
}

impl ParamData {
    pub fn kind(&self) -> ParamKind {
        match self {
            ParamData::Endo(_) => ParamKind::Endo,
            ParamData::Monad(_) => ParamKind::Monad,
            ParamData::Comonad(_) => ParamKind::Comonad,
        }
    }

    pub fn params(&self) -> &Arc<FinCategory> {
        match self {
            ParamData::Endo(p) => &p.params,
            ParamData::Monad(p) => &p.params,
            ParamData::Comonad(p) => &p.params,
        }
    }

    pub fn check(&self) -> LawReport {
        match self {
            ParamData::Endo(p) => p.check(),
            ParamData::Monad(p) => p.check(),
            ParamData::Comonad(p) => p.check(),
        }
    }

    /// Builds the total category in `flavor`. Co-flavors are taken over the
    /// dual of a comonad or endofunctor.
    pub fn total(&self, flavor: Flavor) -> crate::Result<TotalCategory> {
        let need = |what: &str| crate::Error::Precondition(format!("flavor `{}` needs a {what}", flavor.as_str()));
        match (self, flavor) {
            (ParamData::Endo(p), Flavor::Alg) => build_total(ParamRef::Endo(p), flavor),
            (ParamData::Endo(p), Flavor::CoAlg) => build_total(ParamRef::Endo(&endo_op(p)), flavor),
            (ParamData::Endo(_), _) => Err(need("parametrized monad or comonad")),
            (ParamData::Monad(p), Flavor::Alg | Flavor::Em | Flavor::Kl) => build_total(ParamRef::Monad(p), flavor),
            (ParamData::Monad(_), _) => Err(need("parametrized comonad")),
            (ParamData::Comonad(p), Flavor::CoAlg | Flavor::CoEm | Flavor::CoKl) => {
                build_total(ParamRef::Monad(&p.dual), flavor)
            }
            (ParamData::Comonad(_), _) => Err(need("parametrized monad")),
        }
    }
}

/// A parametrized endofunctor on opposite categories.
pub fn endo_op(p: &ParamEndofunctorData) -> ParamEndofunctorData {
    let aop = Arc::new(opposite(&p.params));
    let xop = Arc::new(opposite(&p.carriers));
    let per_object = p
        .per_object
        .iter()
        .map(|f| f.op(xop.clone(), xop.clone()).with_name(f.name.clone()))
        .collect();
    let per_morphism = p
        .per_morphism
        .iter()
        .map(|a| a.op(xop.clone(), xop.clone()).with_name(a.name.clone()))
        .collect();
    ParamEndofunctorData::new(p.name.clone(), aop, xop, per_object, per_morphism).expect("dual typing")
}

/// A named entity with the names it refers to.
#[derive(Debug, Clone)]
pub enum Entity {
    Category(Arc<FinCategory>),
    Functor {
        dom: String,
        cod: String,
        data: FunctorData,
    },
    Nat {
        /// Composite paths, outermost first.
        source: Vec<String>,
        target: Vec<String>,
        data: NatTransData,
    },
    Monad {
        on: String,
        functor: String,
        unit: String,
        mult: String,
        data: MonadData,
    },
    Comonad {
        on: String,
        functor: String,
        counit: String,
        comult: String,
        data: ComonadData,
    },
    Param {
        params: String,
        carriers: String,
        /// Entity per parameter object.
        at: Vec<String>,
        /// Transformation per parameter morphism; `None` for an implicit identity.
        along: Vec<Option<String>>,
        data: ParamData,
    },
    Fibration {
        base: String,
        at: Vec<String>,
        along: Vec<Option<String>>,
        data: SplitFibrationData,
    },
    Total {
        of: String,
        flavor: Flavor,
        data: Box<TotalCategory>,
    },
    Monoid(FinMonoid),
    Group(FinGroup),
    Action {
        acting: String,
        on: String,
        data: ActionAlgebra,
    },
}

impl PartialEq for Entity {
    fn eq(&self, other: &Self) -> bool {
        use Entity::*;
        match (self, other) {
            (Category(a), Category(b)) => a == b,
            (
                Functor { dom, cod, data },
                Functor {
                    dom: d2,
                    cod: c2,
                    data: x2,
                },
            ) => dom == d2 && cod == c2 && data == x2,
            (
                Nat { source, target, data },
                Nat {
                    source: s2,
                    target: t2,
                    data: x2,
                },
            ) => source == s2 && target == t2 && data == x2,
            (
                Monad {
                    on,
                    functor,
                    unit,
                    mult,
                    data,
                },
                Monad {
                    on: o2,
                    functor: f2,
                    unit: u2,
                    mult: m2,
                    data: x2,
                },
            ) => on == o2 && functor == f2 && unit == u2 && mult == m2 && data == x2,
            (
                Comonad {
                    on,
                    functor,
                    counit,
                    comult,
                    data,
                },
                Comonad {
                    on: o2,
                    functor: f2,
                    counit: u2,
                    comult: m2,
                    data: x2,
                },
            ) => on == o2 && functor == f2 && counit == u2 && comult == m2 && data == x2,
            (
                Param {
                    params,
                    carriers,
                    at,
                    along,
                    data,
                },
                Param {
                    params: p2,
                    carriers: c2,
                    at: a2,
                    along: l2,
                    data: x2,
                },
            ) => params == p2 && carriers == c2 && at == a2 && along == l2 && data == x2,
            (
                Fibration { base, at, along, data },
                Fibration {
                    base: b2,
                    at: a2,
                    along: l2,
                    data: x2,
                },
            ) => base == b2 && at == a2 && along == l2 && data == x2,
            (
                Total { of, flavor, data },
                Total {
                    of: o2,
                    flavor: f2,
                    data: x2,
                },
            ) => of == o2 && flavor == f2 && data.cat == x2.cat && data.p == x2.p,
            (Monoid(a), Monoid(b)) => a == b,
            (Group(a), Group(b)) => a == b,
            (
                Action { acting, on, data },
                Action {
                    acting: a2,
                    on: o2,
                    data: x2,
                },
            ) => acting == a2 && on == o2 && data == x2,
            _ => false,
        }
    }
}

impl Entity {
    pub fn keyword(&self) -> &'static str {
        match self {
            Entity::Category(_) => "category",
            Entity::Functor { .. } => "functor",
            Entity::Nat { .. } => "nat",
            Entity::Monad { .. } => "monad",
            Entity::Comonad { .. } => "comonad",
            Entity::Param { data, .. } => data.kind().keyword(),
            Entity::Fibration { .. } => "fibration",
            Entity::Total { .. } => "total",
            Entity::Monoid(_) => "monoid",
            Entity::Group(_) => "group",
            Entity::Action { .. } => "action",
        }
    }

    /// The category carried by a category or total entity.
    pub fn as_category(&self) -> Option<&Arc<FinCategory>> {
        match self {
            Entity::Category(c) => Some(c),
            Entity::Total { data, .. } => Some(&data.cat),
            _ => None,
        }
    }

    pub fn as_monoid(&self) -> Option<&FinMonoid> {
        match self {
            Entity::Monoid(m) => Some(m),
            Entity::Group(g) => Some(g.monoid()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub name: String,
    /// Span of the declared name, when parsed from source.
    pub span: Option<Span>,
    pub entity: Entity,
}

/// Validated entities in dependency order.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    entries: Vec<Entry>,
    index: HashMap<String, usize>,
}

impl PartialEq for Workspace {
    /// Structural equality: names, references and data; spans are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.name == b.name && a.entity == b.entity)
    }
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Appends an entry; its references must already be present.
    pub(crate) fn push(&mut self, name: String, span: Option<Span>, entity: Entity) {
        self.index.insert(name.clone(), self.entries.len());
        self.entries.push(Entry { name, span, entity });
    }

    fn lookup<'a, T>(&'a self, name: &str, want: &str, pick: impl Fn(&'a Entity) -> Option<T>) -> Result<T, String> {
        let e = self.get(name).ok_or_else(|| format!("unknown entity `{name}`"))?;
        pick(&e.entity).ok_or_else(|| format!("`{name}` is a {}, expected a {want}", e.entity.keyword()))
    }

    /// A category or the category of a total; `Id_C` is not a category.
    pub fn category(&self, name: &str) -> Result<&Arc<FinCategory>, String> {
        self.lookup(name, "category", Entity::as_category)
    }

    /// A declared functor or the implicit identity `Id_C`.
    pub fn functor(&self, name: &str) -> Result<FunctorData, String> {
        if let Some(e) = self.get(name) {
            return match &e.entity {
                Entity::Functor { data, .. } => Ok(data.clone()),
                other => Err(format!("`{name}` is a {}, expected a functor", other.keyword())),
            };
        }
        if let Some(c) = name.strip_prefix(IDENTITY_PREFIX) {
            if let Ok(cat) = self.category(c) {
                return Ok(FunctorData::identity(cat.clone()));
            }
        }
        Err(format!("unknown entity `{name}`"))
    }

    pub fn nat(&self, name: &str) -> Result<&NatTransData, String> {
        self.lookup(name, "natural transformation", |e| match e {
            Entity::Nat { data, .. } => Some(data),
            _ => None,
        })
    }

    pub fn monad(&self, name: &str) -> Result<&MonadData, String> {
        self.lookup(name, "monad", |e| match e {
            Entity::Monad { data, .. } => Some(data),
            _ => None,
        })
    }

    pub fn comonad(&self, name: &str) -> Result<&ComonadData, String> {
        self.lookup(name, "comonad", |e| match e {
            Entity::Comonad { data, .. } => Some(data),
            _ => None,
        })
    }

    pub fn param(&self, name: &str) -> Result<&ParamData, String> {
        self.lookup(name, "parametrized structure", |e| match e {
            Entity::Param { data, .. } => Some(data),
            _ => None,
        })
    }

    pub fn fibration(&self, name: &str) -> Result<&SplitFibrationData, String> {
        self.lookup(name, "fibration", |e| match e {
            Entity::Fibration { data, .. } => Some(data),
            _ => None,
        })
    }

    pub fn total(&self, name: &str) -> Result<&TotalCategory, String> {
        self.lookup(name, "total", |e| match e {
            Entity::Total { data, .. } => Some(&**data),
            _ => None,
        })
    }

    pub fn monoid(&self, name: &str) -> Result<&FinMonoid, String> {
        self.lookup(name, "monoid", Entity::as_monoid)
    }

    pub fn group(&self, name: &str) -> Result<&FinGroup, String> {
        self.lookup(name, "group", |e| match e {
            Entity::Group(g) => Some(g),
            _ => None,
        })
    }

    pub fn action(&self, name: &str) -> Result<&ActionAlgebra, String> {
        self.lookup(name, "action", |e| match e {
            Entity::Action { data, .. } => Some(data),
            _ => None,
        })
    }

    /// Names of entities of the given keyword, in order.
    pub fn names_of(&self, keyword: &str) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|e| e.entity.keyword() == keyword)
            .map(|e| e.name.as_str())
            .collect()
    }
}

/// Parses and validates a source text. Diagnostics are sorted by position.
pub fn parse(src: &str) -> Result<Workspace, Vec<Diagnostic>> {
    let (decls, mut diags) = parse_decls(src);
    if diags.is_empty() {
        let mut el = Elab::new(&decls);
        for i in 0..decls.len() {
            el.ensure(i);
        }
        diags = el.diags;
        if diags.is_empty() {
            return Ok(el.ws);
        }
    }
    diags.sort_by_key(|d| (d.span.offset, d.severity as u8));
    Err(diags)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Pending,
    Active,
    Done,
    Failed,
}

struct Elab<'d> {
    decls: &'d [Decl],
    by_name: HashMap<&'d str, usize>,
    state: Vec<State>,
    ws: Workspace,
    diags: Vec<Diagnostic>,
    opposites: HashMap<String, Arc<FinCategory>>,
}

type Step<T> = Result<T, ()>;

fn show_report(r: &LawReport) -> String {
    let shown: Vec<String> = r.violations.iter().take(3).map(ToString::to_string).collect();
    let more = r.violations.len().saturating_sub(3);
    if more > 0 {
        format!("{} (and {more} more)", shown.join("; "))
    } else {
        shown.join("; ")
    }
}

impl<'d> Elab<'d> {
    fn new(decls: &'d [Decl]) -> Self {
        let mut by_name = HashMap::new();
        let mut diags = Vec::new();
        let mut state = vec![State::Pending; decls.len()];
        for (i, d) in decls.iter().enumerate() {
            if by_name.contains_key(d.name.text.as_str()) {
                diags.push(Diagnostic::new(
                    Severity::Reference,
                    format!("`{}` is declared more than once", d.name.text),
                    d.name.span,
                ));
                state[i] = State::Failed;
            } else {
                by_name.insert(d.name.text.as_str(), i);
            }
        }
        Self {
            decls,
            by_name,
            state,
            ws: Workspace::new(),
            diags,
            opposites: HashMap::new(),
        }
    }

    fn diag(&mut self, severity: Severity, message: impl Into<String>, span: Span) {
        self.diags.push(Diagnostic::new(severity, message, span));
    }

    fn reference(&mut self, message: impl Into<String>, span: Span) {
        self.diag(Severity::Reference, message, span);
    }

    fn invalid(&mut self, message: impl Into<String>, span: Span) {
        self.diag(Severity::Validation, message, span);
    }

    /// Elaborates declaration `i` after its dependencies.
    fn ensure(&mut self, i: usize) -> bool {
        match self.state[i] {
            State::Done => return true,
            State::Failed => return false,
            State::Active => return false,
            State::Pending => {}
        }
        self.state[i] = State::Active;
        let decl = &self.decls[i];
        let mut deps_ok = true;
        for r in decl.references() {
            let target = self.by_name.get(r.text.as_str()).copied().or_else(|| {
                r.text
                    .strip_prefix(IDENTITY_PREFIX)
                    .and_then(|c| self.by_name.get(c).copied())
            });
            match target {
                Some(j) if self.state[j] == State::Active => {
                    self.reference(format!("cyclic reference to `{}`", r.text), r.span);
                    deps_ok = false;
                }
                Some(j) => deps_ok &= self.ensure(j),
                None => {
                    self.reference(format!("unknown entity `{}`", r.text), r.span);
                    deps_ok = false;
                }
            }
        }
        let ok = deps_ok && self.elaborate(decl).is_ok();
        self.state[i] = if ok { State::Done } else { State::Failed };
        ok
    }

    fn elaborate(&mut self, d: &Decl) -> Step<()> {
        let name = d.name.text.clone();
        let entity = match &d.kind {
            DeclKind::Category {
                objects,
                morphisms,
                compose,
            } => Entity::Category(Arc::new(self.category(d, objects, morphisms, compose)?)),
            DeclKind::Functor {
                dom,
                cod,
                objects,
                morphisms,
            } => self.functor(d, dom, cod, objects, morphisms)?,
            DeclKind::Nat { source, target, at } => self.nat(d, source, target, at)?,
            DeclKind::Monad {
                co,
                on,
                functor,
                unit,
                mult,
            } => self.monad(d, *co, on, functor, unit, mult)?,
            DeclKind::Param {
                kind,
                params,
                carriers,
                at,
                along,
            } => self.param(d, *kind, params, carriers, at, along)?,
            DeclKind::Fibration { base, at, along } => self.fibration(d, base, at, along)?,
            DeclKind::Total { of, flavor } => self.total(d, of, flavor)?,
            DeclKind::Monoid { group, elements, rows } => self.monoid(d, *group, elements, rows)?,
            DeclKind::Action { acting, on, acts } => self.action(d, acting, on, acts)?,
        };
        self.ws.push(name, Some(d.name.span), entity);
        Ok(())
    }

    fn get<T>(&mut self, r: Result<T, String>, at: &Name) -> Step<T> {
        r.map_err(|m| self.reference(m, at.span))
    }

    /// A library error: guard trips and failed constructions are
    /// Construction diagnostics, everything else is a Validation one.
    fn failed(&mut self, e: crate::Error, message: String, span: Span) {
        let severity = match e {
            crate::Error::SizeGuard { .. } | crate::Error::NoComponents(_) | crate::Error::Construction(_) => {
                Severity::Construction
            }
            _ => Severity::Validation,
        };
        self.diag(severity, message, span);
    }

    fn built<T>(&mut self, r: crate::Result<T>, d: &Decl) -> Step<T> {
        r.map_err(|e| {
            let m = format!("`{}`: {e}", d.name.text);
            self.failed(e, m, d.name.span)
        })
    }

    fn lawful(&mut self, report: LawReport, d: &Decl) -> Step<()> {
        if report.is_empty() {
            Ok(())
        } else {
            self.invalid(
                format!("`{}` violates {}", d.name.text, show_report(&report)),
                d.name.span,
            );
            Err(())
        }
    }

    fn ob(&mut self, c: &FinCategory, n: &Name) -> Step<Ob> {
        c.ob(&n.text)
            .ok_or_else(|| self.reference(format!("unknown object `{}` in `{}`", n.text, c.name()), n.span))
    }

    fn mor(&mut self, c: &FinCategory, n: &Name) -> Step<Mor> {
        c.mor(&n.text)
            .ok_or_else(|| self.reference(format!("unknown morphism `{}` in `{}`", n.text, c.name()), n.span))
    }

    fn category(
        &mut self,
        d: &Decl,
        objects: &[Name],
        morphisms: &[(Name, Name, Name)],
        compose: &[(Name, Name, Name)],
    ) -> Step<FinCategory> {
        let mut ok = true;
        let mut obs: HashMap<&str, usize> = HashMap::new();
        let mut ids: HashMap<String, (Option<usize>, usize)> = HashMap::new();
        for o in objects {
            if obs.insert(&o.text, obs.len()).is_some() {
                self.reference(format!("object `{}` is declared twice", o.text), o.span);
                ok = false;
            }
            ids.insert(CategoryBuilder::identity_id(&o.text), (None, obs[o.text.as_str()]));
        }
        // (src, dst) per declared morphism
        let mut ends = Vec::with_capacity(morphisms.len());
        for (k, (id, s, t)) in morphisms.iter().enumerate() {
            if ids.contains_key(&id.text) {
                let what = if ids[&id.text].0.is_none() {
                    "an implicit identity"
                } else {
                    "declared twice"
                };
                self.reference(format!("morphism id `{}` is {what}", id.text), id.span);
                ok = false;
            }
            let end = |n: &Name, el: &mut Self| match obs.get(n.text.as_str()) {
                Some(&o) => Some(o),
                None => {
                    el.reference(format!("unknown object `{}` in `{}`", n.text, d.name.text), n.span);
                    None
                }
            };
            let (s, t) = (end(s, self), end(t, self));
            match (s, t) {
                (Some(s), Some(t)) => {
                    ids.entry(id.text.clone()).or_insert((Some(k), s));
                    ends.push((s, t));
                }
                _ => {
                    ok = false;
                    ends.push((usize::MAX, usize::MAX));
                }
            }
        }
        if !ok {
            return Err(());
        }
        let endpoints = |id: &str| -> Option<(Option<usize>, usize, usize)> {
            let &(k, o) = ids.get(id)?;
            Some(match k {
                None => (None, o, o),
                Some(k) => (Some(k), ends[k].0, ends[k].1),
            })
        };
        let mut given: HashMap<(usize, usize), &Name> = HashMap::new();
        let mut b = CategoryBuilder::new(d.name.text.clone()).objects(objects.iter().map(|o| o.text.clone()));
        for (id, s, t) in morphisms {
            b = b.morphism(id.text.clone(), s.text.clone(), t.text.clone());
        }
        for (h, g, f) in compose {
            let mut res = [h, g, f].map(|n| {
                let e = endpoints(&n.text);
                if e.is_none() {
                    self.reference(format!("unknown morphism `{}` in `{}`", n.text, d.name.text), n.span);
                }
                e
            });
            let [Some(_), Some(ge), Some(fe)] = &mut res else {
                ok = false;
                continue;
            };
            if fe.2 != ge.1 {
                self.invalid(format!("`{}` and `{}` are not composable", g.text, f.text), g.span);
                ok = false;
                continue;
            }
            if let (Some(gk), Some(fk)) = (ge.0, fe.0) {
                if given.insert((gk, fk), g).is_some() {
                    self.invalid(format!("composite `{} . {}` is given twice", g.text, f.text), g.span);
                    ok = false;
                    continue;
                }
            }
            b = b.compose(h.text.clone(), g.text.clone(), f.text.clone());
        }
        if !ok {
            return Err(());
        }
        let mut missing = Vec::new();
        for (gk, g) in morphisms.iter().enumerate() {
            for (fk, f) in morphisms.iter().enumerate() {
                if ends[fk].1 == ends[gk].0 && !given.contains_key(&(gk, fk)) {
                    missing.push(format!("`{} . {}`", g.0.text, f.0.text));
                }
            }
        }
        if !missing.is_empty() {
            let more = missing.len().saturating_sub(3);
            missing.truncate(3);
            let tail = if more > 0 {
                format!(" (and {more} more)")
            } else {
                String::new()
            };
            self.invalid(
                format!(
                    "incomplete composition table of `{}`: missing {}{tail}",
                    d.name.text,
                    missing.join(", ")
                ),
                d.name.span,
            );
            return Err(());
        }
        let cat = self.built(b.build(), d)?;
        self.lawful(cat.validate(), d)?;
        Ok(cat)
    }

    /// Reads `key |-> value` pairs into a total map over `n` keys.
    fn table<K: Copy, V: Copy>(
        &mut self,
        d: &Decl,
        pairs: &[(Name, Name)],
        n: usize,
        key: impl Fn(&mut Self, &Name) -> Step<K>,
        val: impl Fn(&mut Self, &Name) -> Step<V>,
        idx: impl Fn(K) -> usize,
    ) -> Step<Vec<Option<V>>> {
        let mut out = vec![None; n];
        let mut ok = true;
        for (k, v) in pairs {
            let (kk, vv) = (key(self, k), val(self, v));
            let (Ok(kk), Ok(vv)) = (kk, vv) else {
                ok = false;
                continue;
            };
            if out[idx(kk)].replace(vv).is_some() {
                self.invalid(format!("`{}` is given twice in `{}`", k.text, d.name.text), k.span);
                ok = false;
            }
        }
        if ok {
            Ok(out)
        } else {
            Err(())
        }
    }

    fn functor(
        &mut self,
        d: &Decl,
        dom: &Name,
        cod: &Name,
        objects: &[(Name, Name)],
        morphisms: &[(Name, Name)],
    ) -> Step<Entity> {
        let c = self.get(self.ws.category(&dom.text).cloned(), dom)?;
        let e = self.get(self.ws.category(&cod.text).cloned(), cod)?;
        let om = self.table(
            d,
            objects,
            c.num_objects(),
            |s, n| s.ob(&c, n),
            |s, n| s.ob(&e, n),
            |o| o.0,
        );
        let mm = self.table(
            d,
            morphisms,
            c.num_morphisms(),
            |s, n| s.mor(&c, n),
            |s, n| s.mor(&e, n),
            |m| m.0,
        );
        let (om, mm) = (om?, mm?);
        let mut omap = Vec::with_capacity(om.len());
        for (i, o) in om.into_iter().enumerate() {
            match o {
                Some(o) => omap.push(o),
                None => {
                    self.invalid(
                        format!("`{}` has no image for object `{}`", d.name.text, c.ob_id(Ob(i))),
                        d.name.span,
                    );
                    return Err(());
                }
            }
        }
        let mut mmap = Vec::with_capacity(mm.len());
        for (i, m) in mm.into_iter().enumerate() {
            match m {
                Some(m) => mmap.push(m),
                None if c.is_identity(Mor(i)) => mmap.push(e.id(omap[c.src(Mor(i)).0])),
                None => {
                    self.invalid(
                        format!("`{}` has no image for morphism `{}`", d.name.text, c.mor_id(Mor(i))),
                        d.name.span,
                    );
                    return Err(());
                }
            }
        }
        let data = self.built(FunctorData::new(d.name.text.clone(), c, e, omap, mmap), d)?;
        self.lawful(data.validate(), d)?;
        Ok(Entity::Functor {
            dom: dom.text.clone(),
            cod: cod.text.clone(),
            data,
        })
    }

    fn path(&mut self, d: &Decl, path: &[Name]) -> Step<FunctorData> {
        let mut parts = Vec::with_capacity(path.len());
        for n in path {
            parts.push(self.get(self.ws.functor(&n.text), n)?);
        }
        let mut acc = parts.pop().expect("nonempty path");
        while let Some(outer) = parts.pop() {
            acc = self.built(outer.after(&acc), d)?;
        }
        Ok(acc)
    }

    fn nat(&mut self, d: &Decl, source: &[Name], target: &[Name], at: &[(Name, Name)]) -> Step<Entity> {
        let (s, t) = (self.path(d, source)?, self.path(d, target)?);
        let (c, e) = (s.dom.clone(), s.cod.clone());
        let comps = self.table(d, at, c.num_objects(), |x, n| x.ob(&c, n), |x, n| x.mor(&e, n), |o| o.0)?;
        let mut components = Vec::with_capacity(comps.len());
        for (i, m) in comps.into_iter().enumerate() {
            match m {
                Some(m) => components.push(m),
                None => {
                    self.invalid(
                        format!("`{}` has no component at `{}`", d.name.text, c.ob_id(Ob(i))),
                        d.name.span,
                    );
                    return Err(());
                }
            }
        }
        let data = self.built(NatTransData::new(d.name.text.clone(), s, t, components), d)?;
        self.lawful(data.validate(), d)?;
        let names = |p: &[Name]| p.iter().map(|n| n.text.clone()).collect();
        Ok(Entity::Nat {
            source: names(source),
            target: names(target),
            data,
        })
    }

    fn opposite_of(&mut self, name: &str, c: &FinCategory) -> Arc<FinCategory> {
        self.opposites
            .entry(name.to_string())
            .or_insert_with(|| Arc::new(opposite(c)))
            .clone()
    }

    fn monad(&mut self, d: &Decl, co: bool, on: &Name, functor: &Name, unit: &Name, mult: &Name) -> Step<Entity> {
        let c = self.get(self.ws.category(&on.text).cloned(), on)?;
        let t = self.get(self.ws.functor(&functor.text), functor)?;
        let u = self.get(self.ws.nat(&unit.text).cloned(), unit)?;
        let m = self.get(self.ws.nat(&mult.text).cloned(), mult)?;
        if t.dom != c || t.cod != c {
            self.invalid(
                format!("`{}` is not an endofunctor of `{}`", functor.text, on.text),
                functor.span,
            );
            return Err(());
        }
        let name = d.name.text.clone();
        let (on, functor, unit, mult) = (
            on.text.clone(),
            functor.text.clone(),
            unit.text.clone(),
            mult.text.clone(),
        );
        if co {
            let cop = self.opposite_of(&on, &c);
            let data = self.built(ComonadData::new(name, t, u, m, cop), d)?;
            self.lawful(data.check(), d)?;
            Ok(Entity::Comonad {
                on,
                functor,
                counit: unit,
                comult: mult,
                data,
            })
        } else {
            let data = self.built(MonadData::new(name, t, u, m), d)?;
            self.lawful(data.check(), d)?;
            Ok(Entity::Monad {
                on,
                functor,
                unit,
                mult,
                data,
            })
        }
    }

    /// Resolves `at` and `along` entries over the objects and morphisms of `a`.
    /// Missing entries along identities are left as `None`.
    fn indexed(
        &mut self,
        d: &Decl,
        a: &FinCategory,
        at: &[(Name, Name)],
        along: &[(Name, Name)],
    ) -> Step<(Vec<String>, Vec<Option<String>>)> {
        let mut ok = true;
        let mut at_names = vec![None; a.num_objects()];
        for (k, v) in at {
            match self.ob(a, k) {
                Ok(o) => {
                    if at_names[o.0].replace(v.text.clone()).is_some() {
                        self.invalid(format!("`at {}` is given twice", k.text), k.span);
                        ok = false;
                    }
                }
                Err(()) => ok = false,
            }
        }
        let mut along_names = vec![None; a.num_morphisms()];
        for (k, v) in along {
            match self.mor(a, k) {
                Ok(f) => {
                    if along_names[f.0].replace(v.text.clone()).is_some() {
                        self.invalid(format!("`along {}` is given twice", k.text), k.span);
                        ok = false;
                    }
                }
                Err(()) => ok = false,
            }
        }
        if !ok {
            return Err(());
        }
        let mut at_out = Vec::with_capacity(at_names.len());
        for (i, n) in at_names.into_iter().enumerate() {
            match n {
                Some(n) => at_out.push(n),
                None => {
                    self.invalid(
                        format!("`{}` has no entry at `{}`", d.name.text, a.ob_id(Ob(i))),
                        d.name.span,
                    );
                    return Err(());
                }
            }
        }
        for (i, n) in along_names.iter().enumerate() {
            if n.is_none() && !a.is_identity(Mor(i)) {
                self.invalid(
                    format!("`{}` has no entry along `{}`", d.name.text, a.mor_id(Mor(i))),
                    d.name.span,
                );
                return Err(());
            }
        }
        Ok((at_out, along_names))
    }

    /// Span of the value given for `key` among `pairs`.
    fn value_span(pairs: &[(Name, Name)], value: &str, fallback: Span) -> Span {
        pairs.iter().find(|p| p.1.text == value).map_or(fallback, |p| p.1.span)
    }

    fn param(
        &mut self,
        d: &Decl,
        kind: ParamKind,
        params: &Name,
        carriers: &Name,
        at: &[(Name, Name)],
        along: &[(Name, Name)],
    ) -> Step<Entity> {
        let a = self.get(self.ws.category(&params.text).cloned(), params)?;
        let x = self.get(self.ws.category(&carriers.text).cloned(), carriers)?;
        let (at_names, along_names) = self.indexed(d, &a, at, along)?;
        let at_name = |n: &str| Name {
            text: n.to_string(),
            span: Self::value_span(at, n, d.name.span),
        };
        let along_name = |n: &str| Name {
            text: n.to_string(),
            span: Self::value_span(along, n, d.name.span),
        };
        let mut functors = Vec::with_capacity(at_names.len());
        let mut monads = Vec::new();
        let mut comonads = Vec::new();
        for n in &at_names {
            let nm = at_name(n);
            let f = match kind {
                ParamKind::Endo => self.get(self.ws.functor(n), &nm)?,
                ParamKind::Monad => {
                    let m = self.get(self.ws.monad(n).cloned(), &nm)?;
                    let t = m.t.clone();
                    monads.push(m);
                    t
                }
                ParamKind::Comonad => {
                    let m = self.get(self.ws.comonad(n).cloned(), &nm)?;
                    let s = m.s.clone();
                    comonads.push(m);
                    s
                }
            };
            functors.push(f);
        }
        let mut nats = Vec::with_capacity(along_names.len());
        for (i, n) in along_names.iter().enumerate() {
            let nt = match n {
                Some(n) => self.get(self.ws.nat(n).cloned(), &along_name(n))?,
                None => NatTransData::identity(&functors[a.src(Mor(i)).0]),
            };
            nats.push(nt);
        }
        let name = d.name.text.clone();
        let data = match kind {
            ParamKind::Endo => {
                ParamData::Endo(self.built(ParamEndofunctorData::new(name, a.clone(), x, functors, nats), d)?)
            }
            ParamKind::Monad => ParamData::Monad(self.built(ParamMonadData::new(name, a.clone(), x, monads, nats), d)?),
            ParamKind::Comonad => {
                let aop = self.opposite_of(&params.text, &a);
                ParamData::Comonad(self.built(ParamComonadData::new(name, a.clone(), aop, comonads, nats), d)?)
            }
        };
        self.lawful(data.check(), d)?;
        Ok(Entity::Param {
            params: params.text.clone(),
            carriers: carriers.text.clone(),
            at: at_names,
            along: along_names,
            data,
        })
    }

    fn fibration(&mut self, d: &Decl, base: &Name, at: &[(Name, Name)], along: &[(Name, Name)]) -> Step<Entity> {
        let b = self.get(self.ws.category(&base.text).cloned(), base)?;
        let (at_names, along_names) = self.indexed(d, &b, at, along)?;
        let mut fibres = Vec::with_capacity(at_names.len());
        for n in &at_names {
            let nm = Name {
                text: n.clone(),
                span: Self::value_span(at, n, d.name.span),
            };
            fibres.push(self.get(self.ws.category(n).cloned(), &nm)?);
        }
        let mut reindex = Vec::with_capacity(along_names.len());
        for (i, n) in along_names.iter().enumerate() {
            let r = match n {
                Some(n) => {
                    let nm = Name {
                        text: n.clone(),
                        span: Self::value_span(along, n, d.name.span),
                    };
                    self.get(self.ws.functor(n), &nm)?
                }
                None => FunctorData::identity(fibres[b.src(Mor(i)).0].clone()),
            };
            reindex.push(r);
        }
        let data = self.built(SplitFibrationData::new(d.name.text.clone(), b, fibres, reindex), d)?;
        self.lawful(data.validate(), d)?;
        Ok(Entity::Fibration {
            base: base.text.clone(),
            at: at_names,
            along: along_names,
            data,
        })
    }

    fn total(&mut self, d: &Decl, of: &Name, flavor: &Name) -> Step<Entity> {
        let p = self.get(self.ws.param(&of.text).cloned(), of)?;
        let Some(fl) = Flavor::parse(&flavor.text) else {
            self.invalid(
                format!(
                    "unknown flavor `{}` (expected alg, em, kl, coalg, coem or cokl)",
                    flavor.text
                ),
                flavor.span,
            );
            return Err(());
        };
        let data = p.total(fl).map_err(|e| {
            let m = format!("`{}`: {e}", d.name.text);
            self.failed(e, m, flavor.span)
        })?;
        Ok(Entity::Total {
            of: of.text.clone(),
            flavor: fl,
            data: Box::new(data),
        })
    }

    fn elements(&mut self, names: &[Name]) -> Step<Vec<String>> {
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            if out.contains(&n.text) {
                self.reference(format!("element `{}` is declared twice", n.text), n.span);
                return Err(());
            }
            out.push(n.text.clone());
        }
        Ok(out)
    }

    /// Reads `word key: v1, ..., vn;` rows into a dense table.
    fn rows(
        &mut self,
        d: &Decl,
        rows: &[(Name, Vec<Name>)],
        (keys, keys_of): (&[String], &str),
        (vals, vals_of): (&[String], &str),
    ) -> Step<Vec<usize>> {
        let (n, m) = (keys.len(), vals.len());
        let mut table = vec![usize::MAX; n * m];
        let mut seen = vec![false; n];
        let mut ok = true;
        for (k, row) in rows {
            let Some(i) = keys.iter().position(|x| *x == k.text) else {
                self.reference(format!("unknown element `{}` of `{keys_of}`", k.text), k.span);
                ok = false;
                continue;
            };
            if std::mem::replace(&mut seen[i], true) {
                self.invalid(format!("row `{}` is given twice", k.text), k.span);
                ok = false;
                continue;
            }
            if row.len() != m {
                self.invalid(
                    format!("row `{}` has {} entries, expected {m}", k.text, row.len()),
                    k.span,
                );
                ok = false;
                continue;
            }
            for (j, v) in row.iter().enumerate() {
                match vals.iter().position(|x| *x == v.text) {
                    Some(y) => table[i * m + j] = y,
                    None => {
                        self.reference(format!("unknown element `{}` of `{vals_of}`", v.text), v.span);
                        ok = false;
                    }
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            self.invalid(format!("`{}` has no row for `{}`", d.name.text, keys[i]), d.name.span);
            ok = false;
        }
        if ok {
            Ok(table)
        } else {
            Err(())
        }
    }

    fn monoid(&mut self, d: &Decl, group: bool, elements: &[Name], rows: &[(Name, Vec<Name>)]) -> Step<Entity> {
        let els = self.elements(elements)?;
        if els.is_empty() {
            self.invalid(format!("`{}` has no elements", d.name.text), d.name.span);
            return Err(());
        }
        let table = self.rows(d, rows, (&els, &d.name.text), (&els, &d.name.text))?;
        let m = self.built(FinMonoid::new(d.name.text.clone(), els, table), d)?;
        if group {
            Ok(Entity::Group(self.built(FinGroup::new(m), d)?))
        } else {
            Ok(Entity::Monoid(m))
        }
    }

    fn action(&mut self, d: &Decl, acting: &Name, on: &Name, acts: &[(Name, Vec<Name>)]) -> Step<Entity> {
        let g = self.get(self.ws.monoid(&acting.text).cloned(), acting)?;
        let h = self.get(self.ws.monoid(&on.text).cloned(), on)?;
        let psi = self.rows(d, acts, (&g.elements, &acting.text), (&h.elements, &on.text))?;
        let data = self.built(ActionAlgebra::new(g, h, psi), d)?;
        Ok(Entity::Action {
            acting: acting.text.clone(),
            on: on.text.clone(),
            data,
        })
    }
}
