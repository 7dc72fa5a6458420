use std::collections::{HashMap, HashSet};
use std::hash::Hash;
use std::sync::Arc;

use super::category::{check_guard, CategoryBuilder, FinCategory, Mor, MorphismRecord, Ob};
use super::functor::FunctorData;
use crate::{Error, Result};

/// A category generated from semantic morphism keys, with the key index kept.
#[derive(Debug, Clone)]
pub struct Tabulated<K> {
    pub cat: FinCategory,
    pub keys: Vec<K>,
    pub index: HashMap<K, Mor>,
}

impl<K: Eq + Hash> Tabulated<K> {
    pub fn lookup(&self, k: &K) -> Option<Mor> {
        self.index.get(k).copied()
    }
}

/// Appends `__2`, `__3`, ... to ids already in `used`.
pub(crate) fn fresh_id(base: &str, used: &mut HashSet<String>) -> String {
    if used.insert(base.to_string()) {
        return base.to_string();
    }
    let mut n = 2;
    loop {
        let cand = format!("{base}__{n}");
        if used.insert(cand.clone()) {
            return cand;
        }
        n += 1;
    }
}

/// Assembles a category from keyed morphisms `(key, id, src, dst)`.
///
/// Identities (given by `identity_of`) are placed first in object order and
/// renamed `id_<object>`; other ids are made unique. `compose(g, f)` must
/// return the key of `g . f` for every composable pair.
pub fn tabulate<K, I, C>(
    name: &str,
    objects: Vec<String>,
    morphisms: Vec<(K, String, Ob, Ob)>,
    identity_of: I,
    compose: C,
) -> Result<Tabulated<K>>
where
    K: Clone + Eq + Hash + Send + Sync,
    I: Fn(Ob) -> K,
    C: Fn(&K, &K) -> K + Sync + Send,
{
    check_guard(name, morphisms.len())?;
    let mut used_obs = HashSet::new();
    let objects: Vec<String> = objects.iter().map(|o| fresh_id(o, &mut used_obs)).collect();
    let id_keys: Vec<K> = (0..objects.len()).map(|i| identity_of(Ob(i))).collect();
    let id_set: HashSet<&K> = id_keys.iter().collect();
    let mut used = HashSet::new();
    let mut records = Vec::with_capacity(morphisms.len());
    let mut keys = Vec::with_capacity(morphisms.len());
    let mut index = HashMap::with_capacity(morphisms.len());
    for (i, k) in id_keys.iter().enumerate() {
        let id = fresh_id(&CategoryBuilder::identity_id(&objects[i]), &mut used);
        index.insert(k.clone(), Mor(records.len()));
        records.push(MorphismRecord {
            id,
            src: Ob(i),
            dst: Ob(i),
        });
        keys.push(k.clone());
    }
    for (k, id, s, d) in morphisms {
        if id_set.contains(&k) {
            continue;
        }
        if index.contains_key(&k) {
            return Err(Error::Construction(format!(
                "duplicate morphism key `{id}` in `{name}`"
            )));
        }
        let id = fresh_id(&id, &mut used);
        index.insert(k.clone(), Mor(records.len()));
        records.push(MorphismRecord { id, src: s, dst: d });
        keys.push(k);
    }
    let identities = (0..objects.len()).map(Mor).collect();
    let missing = std::sync::Mutex::new(None);
    let cat = FinCategory::generate(name, objects, records, identities, |g, f| {
        let k = compose(&keys[g.0], &keys[f.0]);
        match index.get(&k) {
            Some(&m) => Some(m),
            None => {
                missing.lock().unwrap().get_or_insert((g, f));
                None
            }
        }
    })?;
    if let Some((g, f)) = missing.into_inner().unwrap() {
        return Err(Error::Construction(format!(
            "composite `{}` . `{}` of `{name}` is not among the generated morphisms",
            cat.mor_id(g),
            cat.mor_id(f)
        )));
    }
    Ok(Tabulated { cat, keys, index })
}

/// The id `a__b` of a generated pair.
pub fn pair_id(a: &str, b: &str) -> String {
    format!("{a}__{b}")
}

/// Product category with its two projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub cat: Arc<FinCategory>,
    pub left: Arc<FinCategory>,
    pub right: Arc<FinCategory>,
    pub pi1: FunctorData,
    pub pi2: FunctorData,
    nr: usize,
    mor_index: HashMap<(Mor, Mor), Mor>,
}

impl Product {
    pub fn ob(&self, a: Ob, x: Ob) -> Ob {
        Ob(a.0 * self.nr + x.0)
    }

    pub fn split_ob(&self, o: Ob) -> (Ob, Ob) {
        (Ob(o.0 / self.nr), Ob(o.0 % self.nr))
    }

    pub fn mor(&self, f: Mor, g: Mor) -> Mor {
        self.mor_index[&(f, g)]
    }

    pub fn split_mor(&self, m: Mor) -> (Mor, Mor) {
        (self.pi1.mor(m), self.pi2.mor(m))
    }

    /// `<F, G> : C -> left x right`.
    pub fn pairing(&self, f: &FunctorData, g: &FunctorData) -> Result<FunctorData> {
        if !super::functor::same_cat(&f.dom, &g.dom) {
            return Err(Error::Shape("pairing of functors with different domains".into()));
        }
        let omap = f.dom.objects().map(|o| self.ob(f.ob(o), g.ob(o))).collect();
        let mmap = f.dom.morphisms().map(|m| self.mor(f.mor(m), g.mor(m))).collect();
        FunctorData::new(
            format!("pair__{}__{}", f.name, g.name),
            f.dom.clone(),
            self.cat.clone(),
            omap,
            mmap,
        )
    }
}

pub fn product(c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> Result<Product> {
    check_guard(
        &format!("{}x{}", c.name(), d.name()),
        c.num_morphisms() * d.num_morphisms(),
    )?;
    let nr = d.num_objects();
    let objects = c
        .objects()
        .flat_map(|a| d.objects().map(move |x| (a, x)))
        .map(|(a, x)| pair_id(c.ob_id(a), d.ob_id(x)))
        .collect();
    let mut morphisms = Vec::new();
    for f in c.morphisms() {
        for g in d.morphisms() {
            morphisms.push((
                (f, g),
                pair_id(c.mor_id(f), d.mor_id(g)),
                Ob(c.src(f).0 * nr + d.src(g).0),
                Ob(c.dst(f).0 * nr + d.dst(g).0),
            ));
        }
    }
    let t = tabulate(
        &format!("{}__x__{}", c.name(), d.name()),
        objects,
        morphisms,
        |o| (c.id(Ob(o.0 / nr)), d.id(Ob(o.0 % nr))),
        |&(g1, g2), &(f1, f2)| (c.compose(g1, f1), d.compose(g2, f2)),
    )?;
    let cat = Arc::new(t.cat);
    let pi1 = FunctorData::new(
        "pi1",
        cat.clone(),
        c.clone(),
        cat.objects().map(|o| Ob(o.0 / nr)).collect(),
        t.keys.iter().map(|k| k.0).collect(),
    )?;
    let pi2 = FunctorData::new(
        "pi2",
        cat.clone(),
        d.clone(),
        cat.objects().map(|o| Ob(o.0 % nr)).collect(),
        t.keys.iter().map(|k| k.1).collect(),
    )?;
    Ok(Product {
        cat,
        left: c.clone(),
        right: d.clone(),
        pi1,
        pi2,
        nr,
        mor_index: t.index,
    })
}

/// `F x G : A x X -> B x Y`.
pub fn product_functor(f: &FunctorData, g: &FunctorData, dom: &Product, cod: &Product) -> Result<FunctorData> {
    let omap = dom
        .cat
        .objects()
        .map(|o| {
            let (a, x) = dom.split_ob(o);
            cod.ob(f.ob(a), g.ob(x))
        })
        .collect();
    let mmap = dom
        .cat
        .morphisms()
        .map(|m| {
            let (u, v) = dom.split_mor(m);
            cod.mor(f.mor(u), g.mor(v))
        })
        .collect();
    FunctorData::new(
        format!("{}__x__{}", f.name, g.name),
        dom.cat.clone(),
        cod.cat.clone(),
        omap,
        mmap,
    )
}

/// Opposite category: same ids, endpoints swapped.
pub fn opposite(c: &FinCategory) -> FinCategory {
    let records = c
        .morphism_records()
        .iter()
        .map(|r| MorphismRecord {
            id: r.id.clone(),
            src: r.dst,
            dst: r.src,
        })
        .collect();
    let m = c.num_morphisms();
    let mut table = vec![None; m * m];
    for g in c.morphisms() {
        for f in c.morphisms() {
            table[g.0 * m + f.0] = c.try_compose(f, g);
        }
    }
    let name = match c.name().strip_suffix("_op") {
        Some(base) => base.to_string(),
        None => format!("{}_op", c.name()),
    };
    FinCategory::from_parts(
        name,
        c.object_ids().to_vec(),
        records,
        c.objects().map(|o| c.id(o)).collect(),
        table,
    )
    .expect("opposite of a well-formed table")
}

/// Subcategory on the given objects and morphisms (which must contain the
/// identities and be closed under composition), with its inclusion.
pub fn subcategory(
    name: &str,
    c: &Arc<FinCategory>,
    objects: &[Ob],
    morphisms: &[Mor],
) -> Result<(Arc<FinCategory>, FunctorData)> {
    let ob_new: HashMap<Ob, Ob> = objects.iter().enumerate().map(|(i, &o)| (o, Ob(i))).collect();
    let mut mor_list: Vec<Mor> = objects.iter().map(|&o| c.id(o)).collect();
    let id_set: HashSet<Mor> = mor_list.iter().copied().collect();
    mor_list.extend(morphisms.iter().copied().filter(|m| !id_set.contains(m)));
    let mor_new: HashMap<Mor, Mor> = mor_list.iter().enumerate().map(|(i, &m)| (m, Mor(i))).collect();
    let mut records = Vec::with_capacity(mor_list.len());
    for &m in &mor_list {
        let (s, d) = (c.src(m), c.dst(m));
        let (Some(&s), Some(&d)) = (ob_new.get(&s), ob_new.get(&d)) else {
            return Err(Error::Construction(format!(
                "morphism `{}` leaves the subcategory `{name}`",
                c.mor_id(m)
            )));
        };
        records.push(MorphismRecord {
            id: c.mor_id(m).to_string(),
            src: s,
            dst: d,
        });
    }
    let k = mor_list.len();
    let mut table = vec![None; k * k];
    for (gi, &g) in mor_list.iter().enumerate() {
        for (fi, &f) in mor_list.iter().enumerate() {
            if let Some(h) = c.try_compose(g, f) {
                let h = mor_new.get(&h).ok_or_else(|| {
                    Error::Construction(format!(
                        "subcategory `{name}` not closed under `{}` . `{}`",
                        c.mor_id(g),
                        c.mor_id(f)
                    ))
                })?;
                table[gi * k + fi] = Some(*h);
            }
        }
    }
    let sub = Arc::new(FinCategory::from_parts(
        name,
        objects.iter().map(|&o| c.ob_id(o).to_string()).collect(),
        records,
        (0..objects.len()).map(Mor).collect(),
        table,
    )?);
    let incl = FunctorData::new(
        format!("incl_{name}"),
        sub.clone(),
        c.clone(),
        objects.to_vec(),
        mor_list,
    )?;
    Ok((sub, incl))
}

/// The fibre of `p` over `a`: objects over `a`, morphisms over `id_a`.
pub fn fibre(p: &FunctorData, a: Ob) -> Result<(Arc<FinCategory>, FunctorData)> {
    let e = &p.dom;
    let b = &p.cod;
    let obs: Vec<Ob> = e.objects().filter(|&o| p.ob(o) == a).collect();
    let mors: Vec<Mor> = e.morphisms().filter(|&m| p.mor(m) == b.id(a)).collect();
    subcategory(&format!("{}__fibre__{}", e.name(), b.ob_id(a)), e, &obs, &mors)
}

/// Strict pullback of `p : E -> B` along `f : C -> B`, with both legs.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub cat: Arc<FinCategory>,
    /// Leg to the domain of `f`.
    pub to_c: FunctorData,
    /// Leg to the domain of `p`.
    pub to_e: FunctorData,
}

pub fn pullback(p: &FunctorData, f: &FunctorData) -> Result<Pullback> {
    if !super::functor::same_cat(&p.cod, &f.cod) {
        return Err(Error::Shape("pullback of functors with different codomains".into()));
    }
    let (c, e) = (&f.dom, &p.dom);
    let mut obs = Vec::new();
    for x in c.objects() {
        for y in e.objects() {
            if f.ob(x) == p.ob(y) {
                obs.push((x, y));
            }
        }
    }
    let ob_index: HashMap<(Ob, Ob), Ob> = obs.iter().enumerate().map(|(i, &k)| (k, Ob(i))).collect();
    let mut mors = Vec::new();
    for h in c.morphisms() {
        for m in e.morphisms() {
            if f.mor(h) == p.mor(m) {
                let s = ob_index[&(c.src(h), e.src(m))];
                let d = ob_index[&(c.dst(h), e.dst(m))];
                mors.push(((h, m), pair_id(c.mor_id(h), e.mor_id(m)), s, d));
            }
        }
    }
    let t = tabulate(
        &format!("{}__pb__{}", e.name(), c.name()),
        obs.iter().map(|&(x, y)| pair_id(c.ob_id(x), e.ob_id(y))).collect(),
        mors,
        |o| (c.id(obs[o.0].0), e.id(obs[o.0].1)),
        |&(g1, g2), &(f1, f2)| (c.compose(g1, f1), e.compose(g2, f2)),
    )?;
    let cat = Arc::new(t.cat);
    let to_c = FunctorData::new(
        "pb_c",
        cat.clone(),
        c.clone(),
        obs.iter().map(|k| k.0).collect(),
        t.keys.iter().map(|k| k.0).collect(),
    )?;
    let to_e = FunctorData::new(
        "pb_e",
        cat.clone(),
        e.clone(),
        obs.iter().map(|k| k.1).collect(),
        t.keys.iter().map(|k| k.1).collect(),
    )?;
    Ok(Pullback { cat, to_c, to_e })
}

/// Small diagram shapes.
pub mod shapes {
    use super::*;

    fn build(b: CategoryBuilder) -> Arc<FinCategory> {
        Arc::new(b.build().expect("shape"))
    }

    pub fn discrete(n: usize) -> Arc<FinCategory> {
        build(CategoryBuilder::new(format!("discrete{n}")).objects((0..n).map(|i| format!("j{i}"))))
    }

    /// `j0 -> j1`.
    pub fn arrow() -> Arc<FinCategory> {
        build(
            CategoryBuilder::new("arrow")
                .objects(["j0", "j1"])
                .morphism("u", "j0", "j1"),
        )
    }

    /// `j0 => j1` with arrows `u`, `v`.
    pub fn parallel_pair() -> Arc<FinCategory> {
        build(
            CategoryBuilder::new("parallel")
                .objects(["j0", "j1"])
                .morphism("u", "j0", "j1")
                .morphism("v", "j0", "j1"),
        )
    }

    /// `j1 <- j0 -> j2`.
    pub fn span() -> Arc<FinCategory> {
        build(
            CategoryBuilder::new("span")
                .objects(["j0", "j1", "j2"])
                .morphism("u", "j0", "j1")
                .morphism("v", "j0", "j2"),
        )
    }

    /// `j0 -> j2 <- j1`.
    pub fn cospan() -> Arc<FinCategory> {
        build(
            CategoryBuilder::new("cospan")
                .objects(["j0", "j1", "j2"])
                .morphism("u", "j0", "j2")
                .morphism("v", "j1", "j2"),
        )
    }

    /// Diagram from a shape given by object and non-identity morphism images.
    pub fn diagram(
        shape: &Arc<FinCategory>,
        target: &Arc<FinCategory>,
        objects: &[Ob],
        morphisms: &[Mor],
    ) -> Result<FunctorData> {
        let mut mmap = Vec::with_capacity(shape.num_morphisms());
        let mut it = morphisms.iter();
        for m in shape.morphisms() {
            if shape.is_identity(m) {
                mmap.push(target.id(objects[shape.src(m).0]));
            } else {
                mmap.push(
                    *it.next()
                        .ok_or_else(|| Error::Shape("too few diagram morphisms".into()))?,
                );
            }
        }
        FunctorData::new(
            format!("D_{}", shape.name()),
            shape.clone(),
            target.clone(),
            objects.to_vec(),
            mmap,
        )
    }
}
