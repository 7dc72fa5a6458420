use serde::Serialize;

use super::category::{FinCategory, Mor, Ob};
use super::functor::FunctorData;
use crate::par;
use crate::{Error, Result};

/// Read access to a category, possibly with arrows reversed.
pub(crate) trait View: Sync {
    fn base(&self) -> &FinCategory;
    fn hom(&self, a: Ob, b: Ob) -> &[Mor];
    fn compose(&self, g: Mor, f: Mor) -> Mor;
    /// Whether arrows (including those of the diagram shape) are reversed.
    fn flipped(&self) -> bool {
        false
    }
}

impl View for FinCategory {
    fn base(&self) -> &FinCategory {
        self
    }
    fn hom(&self, a: Ob, b: Ob) -> &[Mor] {
        FinCategory::hom(self, a, b)
    }
    fn compose(&self, g: Mor, f: Mor) -> Mor {
        FinCategory::compose(self, g, f)
    }
}

/// The opposite category, without materializing it.
pub(crate) struct Opp<'a>(pub &'a FinCategory);

impl View for Opp<'_> {
    fn base(&self) -> &FinCategory {
        self.0
    }
    fn hom(&self, a: Ob, b: Ob) -> &[Mor] {
        self.0.hom(b, a)
    }
    fn compose(&self, g: Mor, f: Mor) -> Mor {
        self.0.compose(f, g)
    }
    fn flipped(&self) -> bool {
        true
    }
}

/// A cone (or cocone): apex and one leg per diagram node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Cone {
    pub apex: Ob,
    pub legs: Vec<Mor>,
}

/// Id-level rendering of a cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeIds {
    pub apex: String,
    pub legs: Vec<(String, String)>,
}

impl Cone {
    pub fn ids(&self, shape: &FinCategory, c: &FinCategory) -> ConeIds {
        ConeIds {
            apex: c.ob_id(self.apex).to_string(),
            legs: shape
                .objects()
                .map(|j| (shape.ob_id(j).to_string(), c.mor_id(self.legs[j.0]).to_string()))
                .collect(),
        }
    }
}

/// All cones over `d` with the given apex, in lexicographic leg order.
/// In a flipped view these are cocones.
fn cones_at<V: View>(c: &V, d: &FunctorData, apex: Ob) -> Vec<Cone> {
    let j = &*d.dom;
    let n = j.num_objects();
    // constraints checked once both endpoints are assigned
    let mut checks: Vec<Vec<Mor>> = vec![Vec::new(); n];
    for u in j.morphisms() {
        if j.is_identity(u) {
            continue;
        }
        let later = j.src(u).0.max(j.dst(u).0);
        checks[later].push(u);
    }
    let mut out = Vec::new();
    let mut legs = Vec::with_capacity(n);
    fn go<V: View>(c: &V, d: &FunctorData, apex: Ob, checks: &[Vec<Mor>], legs: &mut Vec<Mor>, out: &mut Vec<Cone>) {
        let k = legs.len();
        if k == checks.len() {
            out.push(Cone {
                apex,
                legs: legs.clone(),
            });
            return;
        }
        let j = &*d.dom;
        for &leg in c.hom(apex, d.ob(Ob(k))) {
            legs.push(leg);
            let ok = checks[k].iter().all(|&u| {
                let (from, to) = if c.flipped() {
                    (j.dst(u), j.src(u))
                } else {
                    (j.src(u), j.dst(u))
                };
                c.compose(d.mor(u), legs[from.0]) == legs[to.0]
            });
            if ok {
                go(c, d, apex, checks, legs, out);
            }
            legs.pop();
        }
    }
    go(c, d, apex, &checks, &mut legs, &mut out);
    out
}

fn all_cones<V: View>(c: &V, d: &FunctorData) -> Vec<Cone> {
    let objs = c.base().objects_by_id();
    par::flat_map(&objs, |&a| cones_at(c, d, a))
}

/// Number of `h : k.apex -> l.apex` with `l.leg_j . h = k.leg_j` for all `j`, capped at 2.
fn factorizations<V: View>(c: &V, l: &Cone, k: &Cone) -> usize {
    let mut n = 0;
    for &h in c.hom(k.apex, l.apex) {
        if l.legs.iter().zip(&k.legs).all(|(&ll, &kl)| c.compose(ll, h) == kl) {
            n += 1;
            if n > 1 {
                break;
            }
        }
    }
    n
}

fn search<V: View>(c: &V, d: &FunctorData) -> Option<Cone> {
    let cones = all_cones(c, d);
    let i = par::position(&cones, |l| cones.iter().all(|k| factorizations(c, l, k) == 1))?;
    Some(cones[i].clone())
}

/// True if every cone factors uniquely through `cone`.
pub fn is_limit_cone(d: &FunctorData, cone: &Cone) -> bool {
    let c = &*d.cod;
    let cones = all_cones(c, d);
    par::all(&cones, |k| factorizations(c, cone, k) == 1)
}

/// True if `cocone` is a colimiting cocone over `d`.
pub fn is_colimit_cocone(d: &FunctorData, cocone: &Cone) -> bool {
    let c = Opp(&d.cod);
    let cones = all_cones(&c, d);
    par::all(&cones, |k| factorizations(&c, cocone, k) == 1)
}

fn precondition(d: &FunctorData) -> Result<()> {
    d.cod.guard()?;
    let r = d.validate();
    if !r.is_empty() {
        return Err(Error::Precondition(format!(
            "diagram `{}` is not a functor: {r}",
            d.name
        )));
    }
    Ok(())
}

/// A limiting cone over `d`, or `None`. Among limiting cones the one with the
/// least apex id is returned.
pub fn limit(d: &FunctorData) -> Result<Option<Cone>> {
    precondition(d)?;
    Ok(search(&*d.cod, d))
}

/// A colimiting cocone over `d` (legs `D j -> apex`), computed as a limit in
/// the opposite category.
pub fn colimit(d: &FunctorData) -> Result<Option<Cone>> {
    precondition(d)?;
    Ok(search(&Opp(&d.cod), d))
}

/// Every cocone over `d`, in the same order as the colimit search uses.
pub fn cocones(d: &FunctorData) -> Vec<Cone> {
    all_cones(&Opp(&d.cod), d)
}

/// Every cone over `d`.
pub fn cones(d: &FunctorData) -> Vec<Cone> {
    all_cones(&*d.cod, d)
}

/// Mediating morphism from cocone `l` to cocone `k`, if unique.
pub fn cocone_mediator(d: &FunctorData, l: &Cone, k: &Cone) -> Option<Mor> {
    let c = &*d.cod;
    let mut found = None;
    for &h in c.hom(l.apex, k.apex) {
        if l.legs.iter().zip(&k.legs).all(|(&ll, &kl)| c.compose(h, ll) == kl) {
            if found.is_some() {
                return None;
            }
            found = Some(h);
        }
    }
    found
}

/// Mediating morphism from cone `k` to cone `l`, if unique.
pub fn cone_mediator(d: &FunctorData, l: &Cone, k: &Cone) -> Option<Mor> {
    let c = &*d.cod;
    let mut found = None;
    for &h in c.hom(k.apex, l.apex) {
        if l.legs.iter().zip(&k.legs).all(|(&ll, &kl)| c.compose(ll, h) == kl) {
            if found.is_some() {
                return None;
            }
            found = Some(h);
        }
    }
    found
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Extremal {
    pub initial: Option<Ob>,
    pub terminal: Option<Ob>,
}

/// Initial and terminal objects (least id among candidates).
pub fn find_extremal(c: &FinCategory) -> Extremal {
    let obs = c.objects_by_id();
    let initial = obs
        .iter()
        .copied()
        .find(|&o| c.objects().all(|x| c.hom(o, x).len() == 1));
    let terminal = obs
        .iter()
        .copied()
        .find(|&o| c.objects().all(|x| c.hom(x, o).len() == 1));
    Extremal { initial, terminal }
}
