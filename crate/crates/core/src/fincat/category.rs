use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

use crate::par;
use crate::report::{Law, LawReport};
use crate::{Error, Result};

/// Index of an object inside its [`FinCategory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Ob(pub usize);

/// Index of a morphism inside its [`FinCategory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Mor(pub usize);

pub const DEFAULT_SIZE_GUARD: usize = 512;

static SIZE_GUARD: AtomicUsize = AtomicUsize::new(DEFAULT_SIZE_GUARD);

/// Largest morphism count accepted by the constructions that grow categories.
pub fn size_guard() -> usize {
    SIZE_GUARD.load(Ordering::Relaxed)
}

pub fn set_size_guard(bound: usize) {
    SIZE_GUARD.store(bound, Ordering::Relaxed);
}

pub(crate) fn check_guard(what: &str, count: usize) -> Result<()> {
    let bound = size_guard();
    if count > bound {
        return Err(Error::SizeGuard {
            what: what.to_string(),
            count,
            bound,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismRecord {
    pub id: String,
    pub src: Ob,
    pub dst: Ob,
}

/// A strict, fully tabulated finite category.
///
/// Composition is stored as a dense `|Mor| x |Mor|` table indexed `(g, f)`
/// for the composite `g . f`; entries for non-composable pairs are `None`.
/// A category may carry law violations (see [`FinCategory::validate`]); only
/// dangling references are rejected at construction.
#[derive(Debug, Clone)]
pub struct FinCategory {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<MorphismRecord>,
    identities: Vec<Mor>,
    compose: Vec<Option<Mor>>,
    homs: Vec<Vec<Mor>>,
    obj_lookup: HashMap<String, Ob>,
    mor_lookup: HashMap<String, Mor>,
}

impl PartialEq for FinCategory {
    /// Structural equality; the category name is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.compose == other.compose
    }
}

impl Eq for FinCategory {}

impl FinCategory {
    /// Assembles a category from raw tables. `compose[g * m + f]` holds `g . f`.
    pub fn from_parts(
        name: impl Into<String>,
        objects: Vec<String>,
        morphisms: Vec<MorphismRecord>,
        identities: Vec<Mor>,
        compose: Vec<Option<Mor>>,
    ) -> Result<Self> {
        let name = name.into();
        let n = objects.len();
        let m = morphisms.len();
        let mut obj_lookup = HashMap::with_capacity(n);
        for (i, o) in objects.iter().enumerate() {
            if obj_lookup.insert(o.clone(), Ob(i)).is_some() {
                return Err(Error::Duplicate(o.clone()));
            }
        }
        let mut mor_lookup = HashMap::with_capacity(m);
        for (i, r) in morphisms.iter().enumerate() {
            if r.src.0 >= n || r.dst.0 >= n {
                return Err(Error::Dangling(format!(
                    "morphism `{}` in `{name}` has an endpoint outside the object list",
                    r.id
                )));
            }
            if mor_lookup.insert(r.id.clone(), Mor(i)).is_some() {
                return Err(Error::Duplicate(r.id.clone()));
            }
        }
        if identities.len() != n {
            return Err(Error::Dangling(format!(
                "`{name}` lists {} identities for {n} objects",
                identities.len()
            )));
        }
        if identities.iter().any(|i| i.0 >= m) {
            return Err(Error::Dangling(format!("identity outside `{name}`")));
        }
        if compose.len() != m * m {
            return Err(Error::Shape(format!(
                "composition table of `{name}` has {} entries, expected {}",
                compose.len(),
                m * m
            )));
        }
        if compose.iter().flatten().any(|c| c.0 >= m) {
            return Err(Error::Dangling(format!("composite outside `{name}`")));
        }
        let mut homs = vec![Vec::new(); n * n];
        for (i, r) in morphisms.iter().enumerate() {
            homs[r.src.0 * n + r.dst.0].push(Mor(i));
        }
        Ok(Self {
            name,
            objects,
            morphisms,
            identities,
            compose,
            homs,
            obj_lookup,
            mor_lookup,
        })
    }

    /// Builds a category whose composition is given by a function, evaluated
    /// (in parallel) on every composable pair.
    pub fn generate<F>(
        name: impl Into<String>,
        objects: Vec<String>,
        morphisms: Vec<MorphismRecord>,
        identities: Vec<Mor>,
        compose: F,
    ) -> Result<Self>
    where
        F: Fn(Mor, Mor) -> Option<Mor> + Sync + Send,
    {
        let m = morphisms.len();
        let rows = par::map_range(m, |g| {
            (0..m)
                .map(|f| {
                    if morphisms[f].dst == morphisms[g].src {
                        compose(Mor(g), Mor(f))
                    } else {
                        None
                    }
                })
                .collect::<Vec<_>>()
        });
        let table = rows.into_iter().flatten().collect();
        Self::from_parts(name, objects, morphisms, identities, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = Ob> + Clone {
        (0..self.objects.len()).map(Ob)
    }

    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = Mor> + Clone {
        (0..self.morphisms.len()).map(Mor)
    }

    pub fn object_ids(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_records(&self) -> &[MorphismRecord] {
        &self.morphisms
    }

    pub fn ob_id(&self, o: Ob) -> &str {
        &self.objects[o.0]
    }

    pub fn mor_id(&self, f: Mor) -> &str {
        &self.morphisms[f.0].id
    }

    pub fn ob(&self, id: &str) -> Option<Ob> {
        self.obj_lookup.get(id).copied()
    }

    pub fn mor(&self, id: &str) -> Option<Mor> {
        self.mor_lookup.get(id).copied()
    }

    pub fn require_ob(&self, id: &str) -> Result<Ob> {
        self.ob(id)
            .ok_or_else(|| Error::Dangling(format!("no object `{id}` in `{}`", self.name)))
    }

    pub fn require_mor(&self, id: &str) -> Result<Mor> {
        self.mor(id)
            .ok_or_else(|| Error::Dangling(format!("no morphism `{id}` in `{}`", self.name)))
    }

    pub fn src(&self, f: Mor) -> Ob {
        self.morphisms[f.0].src
    }

    pub fn dst(&self, f: Mor) -> Ob {
        self.morphisms[f.0].dst
    }

    pub fn id(&self, o: Ob) -> Mor {
        self.identities[o.0]
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.identities[self.src(f).0] == f
    }

    /// `g . f`, or `None` when the pair is not composable or the table is incomplete.
    pub fn try_compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.compose[g.0 * self.morphisms.len() + f.0]
    }

    /// `g . f`; panics on a non-composable pair. Use on validated categories.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        self.try_compose(g, f).unwrap_or_else(|| {
            panic!(
                "`{}` . `{}` undefined in `{}`",
                self.mor_id(g),
                self.mor_id(f),
                self.name
            )
        })
    }

    /// Composes a path given in diagrammatic order reversed: `compose_all(&[h, g, f]) = h . g . f`.
    pub fn compose_all(&self, path: &[Mor]) -> Mor {
        let mut it = path.iter().rev();
        let first = *it.next().expect("empty path");
        it.fold(first, |acc, &g| self.compose(g, acc))
    }

    pub fn hom(&self, a: Ob, b: Ob) -> &[Mor] {
        &self.homs[a.0 * self.objects.len() + b.0]
    }

    pub fn is_iso(&self, f: Mor) -> Option<Mor> {
        let (a, b) = (self.src(f), self.dst(f));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.try_compose(g, f) == Some(self.id(a)) && self.try_compose(f, g) == Some(self.id(b)))
    }

    /// An isomorphism `a -> b`, if one exists.
    pub fn iso_between(&self, a: Ob, b: Ob) -> Option<Mor> {
        self.hom(a, b).iter().copied().find(|&f| self.is_iso(f).is_some())
    }

    /// Partition of the objects into isomorphism classes, in object order.
    pub fn iso_classes(&self) -> Vec<Vec<Ob>> {
        let mut classes: Vec<Vec<Ob>> = Vec::new();
        'outer: for o in self.objects() {
            for class in classes.iter_mut() {
                if self.iso_between(class[0], o).is_some() {
                    class.push(o);
                    continue 'outer;
                }
            }
            classes.push(vec![o]);
        }
        classes
    }

    /// True when every hom-set has at most one element.
    pub fn is_thin(&self) -> bool {
        self.homs.iter().all(|h| h.len() <= 1)
    }

    /// Objects sorted by id, the tie-breaking order of the universal-property searches.
    pub fn objects_by_id(&self) -> Vec<Ob> {
        let mut obs: Vec<Ob> = self.objects().collect();
        obs.sort_by(|a, b| self.ob_id(*a).cmp(self.ob_id(*b)));
        obs
    }

    pub(crate) fn guard(&self) -> Result<()> {
        check_guard(&self.name, self.num_morphisms())
    }

    /// Exhaustive law check: identity typing, table completeness and typing,
    /// unit laws and associativity.
    pub fn validate(&self) -> LawReport {
        let mut report = LawReport::new();
        for o in self.objects() {
            let i = self.id(o);
            if self.src(i) != o || self.dst(i) != o {
                report.push(Law::IdentityTyping, [self.ob_id(o), self.mor_id(i)]);
            }
        }
        for g in self.morphisms() {
            for f in self.morphisms() {
                let composable = self.dst(f) == self.src(g);
                match (composable, self.try_compose(g, f)) {
                    (true, None) => report.push(Law::MissingComposite, [self.mor_id(g), self.mor_id(f)]),
                    (false, Some(_)) => report.push(Law::SpuriousComposite, [self.mor_id(g), self.mor_id(f)]),
                    (true, Some(h)) => {
                        if self.src(h) != self.src(f) || self.dst(h) != self.dst(g) {
                            report.push(Law::CompositeTyping, [self.mor_id(g), self.mor_id(f), self.mor_id(h)]);
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        if !report.is_empty() {
            return report;
        }
        for f in self.morphisms() {
            let (a, b) = (self.src(f), self.dst(f));
            if self.compose(self.id(b), f) != f {
                report.push(Law::LeftIdentity, [self.mor_id(self.id(b)), self.mor_id(f)]);
            }
            if self.compose(f, self.id(a)) != f {
                report.push(Law::RightIdentity, [self.mor_id(f), self.mor_id(self.id(a))]);
            }
        }
        let assoc = par::flat_map(&self.morphisms, |rf| {
            let f = self.mor(&rf.id).expect("own id");
            let mut bad = Vec::new();
            for o in self.objects() {
                for &g in self.hom(rf.dst, o) {
                    let gf = self.compose(g, f);
                    for o2 in self.objects() {
                        for &h in self.hom(o, o2) {
                            if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                                bad.push([self.mor_id(h).to_string(), self.mor_id(g).to_string(), rf.id.clone()]);
                            }
                        }
                    }
                }
            }
            bad
        });
        for w in assoc {
            report.push(Law::Associativity, w);
        }
        report
    }
}

impl fmt::Display for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} objects, {} morphisms)",
            self.name,
            self.num_objects(),
            self.num_morphisms()
        )
    }
}

/// Incremental construction by ids. Identities are created implicitly as
/// `id_<object>`; composites with identities are filled in unless given
/// explicitly.
#[derive(Debug, Clone, Default)]
pub struct CategoryBuilder {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    composites: Vec<(String, String, String)>,
}

impl CategoryBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    pub fn identity_id(object: &str) -> String {
        format!("id_{object}")
    }

    pub fn object(mut self, id: impl Into<String>) -> Self {
        self.objects.push(id.into());
        self
    }

    pub fn objects<I, S>(mut self, ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.objects.extend(ids.into_iter().map(Into::into));
        self
    }

    pub fn morphism(mut self, id: impl Into<String>, src: impl Into<String>, dst: impl Into<String>) -> Self {
        self.morphisms.push((id.into(), src.into(), dst.into()));
        self
    }

    /// Records `result = g . f`.
    pub fn compose(mut self, result: impl Into<String>, g: impl Into<String>, f: impl Into<String>) -> Self {
        self.composites.push((result.into(), g.into(), f.into()));
        self
    }

    pub fn build(self) -> Result<FinCategory> {
        let mut objects = self.objects;
        let mut seen = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if seen.insert(o.clone(), i).is_some() {
                return Err(Error::Duplicate(o.clone()));
            }
        }
        let mut records = Vec::new();
        let mut identities = Vec::new();
        for (i, o) in objects.iter().enumerate() {
            identities.push(Mor(records.len()));
            records.push(MorphismRecord {
                id: Self::identity_id(o),
                src: Ob(i),
                dst: Ob(i),
            });
        }
        for (id, s, d) in &self.morphisms {
            let src = *seen
                .get(s)
                .ok_or_else(|| Error::Dangling(format!("morphism `{id}` has unknown source `{s}`")))?;
            let dst = *seen
                .get(d)
                .ok_or_else(|| Error::Dangling(format!("morphism `{id}` has unknown target `{d}`")))?;
            records.push(MorphismRecord {
                id: id.clone(),
                src: Ob(src),
                dst: Ob(dst),
            });
        }
        let mut ids = HashMap::new();
        for (i, r) in records.iter().enumerate() {
            if ids.insert(r.id.clone(), Mor(i)).is_some() {
                return Err(Error::Duplicate(r.id.clone()));
            }
        }
        let m = records.len();
        let mut table: Vec<Option<Mor>> = vec![None; m * m];
        let lookup = |id: &str| {
            ids.get(id)
                .copied()
                .ok_or_else(|| Error::Dangling(format!("unknown morphism `{id}` in composite")))
        };
        let mut explicit = vec![false; m * m];
        for (h, g, f) in &self.composites {
            let (h, g, f) = (lookup(h)?, lookup(g)?, lookup(f)?);
            table[g.0 * m + f.0] = Some(h);
            explicit[g.0 * m + f.0] = true;
        }
        for (fi, r) in records.iter().enumerate() {
            let l = identities[r.dst.0].0 * m + fi;
            if !explicit[l] {
                table[l] = Some(Mor(fi));
            }
            let rr = fi * m + identities[r.src.0].0;
            if !explicit[rr] {
                table[rr] = Some(Mor(fi));
            }
        }
        let name = self.name;
        objects.shrink_to_fit();
        FinCategory::from_parts(name, objects, records, identities, table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> FinCategory {
        CategoryBuilder::new("chain3")
            .objects(["0", "1", "2"])
            .morphism("a", "0", "1")
            .morphism("b", "1", "2")
            .morphism("c", "0", "2")
            .compose("c", "b", "a")
            .build()
            .unwrap()
    }

    #[test]
    fn terminal_category_validates() {
        let c = CategoryBuilder::new("one").object("*").build().unwrap();
        assert!(c.validate().is_empty());
        assert_eq!(c.num_morphisms(), 1);
    }

    #[test]
    fn chain3_validates_with_six_morphisms() {
        let c = chain3();
        assert_eq!(c.num_morphisms(), 6);
        assert!(c.validate().is_empty());
        assert!(c.is_thin());
    }

    #[test]
    fn broken_identity_absorption_is_reported() {
        let c = CategoryBuilder::new("broken")
            .objects(["x", "y"])
            .morphism("f", "x", "y")
            .morphism("g", "x", "y")
            .compose("g", "id_y", "f")
            .build()
            .unwrap();
        let r = c.validate();
        assert!(r.has(Law::LeftIdentity));
        let v = r.first().unwrap();
        assert_eq!(v.witness, vec!["id_y", "f"]);
    }

    #[test]
    fn missing_composite_is_reported() {
        let c = CategoryBuilder::new("gap")
            .objects(["0", "1", "2"])
            .morphism("a", "0", "1")
            .morphism("b", "1", "2")
            .build()
            .unwrap();
        assert!(c.validate().has(Law::MissingComposite));
    }

    #[test]
    fn dangling_reference_is_structural() {
        let e = CategoryBuilder::new("bad")
            .object("x")
            .morphism("f", "x", "nowhere")
            .build()
            .unwrap_err();
        assert!(matches!(e, Error::Dangling(_)));
    }

    #[test]
    fn iso_classes_of_chain_are_singletons() {
        assert_eq!(chain3().iso_classes().len(), 3);
    }
}
