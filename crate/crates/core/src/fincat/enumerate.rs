use std::sync::Arc;

use super::category::{FinCategory, Mor, Ob};
use super::functor::{FunctorData, NatTransData};
use crate::par;

/// Composition constraints of `j`, grouped by the largest morphism index involved.
fn triggers(j: &FinCategory) -> Vec<Vec<(Mor, Mor, Mor)>> {
    let mut t = vec![Vec::new(); j.num_morphisms()];
    for g in j.morphisms() {
        for f in j.morphisms() {
            if let Some(h) = j.try_compose(g, f) {
                let k = g.0.max(f.0).max(h.0);
                t[k].push((g, f, h));
            }
        }
    }
    t
}

/// Extends an object assignment `omap : j -> c` to morphism assignments
/// respecting composition; `injective` forbids reusing an image. Calls
/// `visit` on each complete assignment; stops when it returns `false`.
pub(crate) fn extend_morphisms(
    j: &FinCategory,
    c: &FinCategory,
    omap: &[Ob],
    injective: bool,
    visit: &mut dyn FnMut(&[Mor]) -> bool,
) {
    let trig = triggers(j);
    let mut assigned: Vec<Mor> = Vec::with_capacity(j.num_morphisms());
    let mut used = vec![false; if injective { c.num_morphisms() } else { 0 }];
    #[allow(clippy::too_many_arguments)]
    fn go(
        j: &FinCategory,
        c: &FinCategory,
        omap: &[Ob],
        trig: &[Vec<(Mor, Mor, Mor)>],
        assigned: &mut Vec<Mor>,
        used: &mut Vec<bool>,
        injective: bool,
        visit: &mut dyn FnMut(&[Mor]) -> bool,
    ) -> bool {
        let k = assigned.len();
        if k == j.num_morphisms() {
            return visit(assigned);
        }
        let m = Mor(k);
        let (a, b) = (omap[j.src(m).0], omap[j.dst(m).0]);
        let id_only;
        let cands: &[Mor] = if j.is_identity(m) {
            id_only = [c.id(a)];
            &id_only
        } else {
            c.hom(a, b)
        };
        for &x in cands {
            if injective && used[x.0] {
                continue;
            }
            assigned.push(x);
            let ok = trig[k]
                .iter()
                .all(|&(g, f, h)| c.try_compose(assigned[g.0], assigned[f.0]) == Some(assigned[h.0]));
            if ok {
                if injective {
                    used[x.0] = true;
                }
                let cont = go(j, c, omap, trig, assigned, used, injective, visit);
                if injective {
                    used[x.0] = false;
                }
                if !cont {
                    assigned.pop();
                    return false;
                }
            }
            assigned.pop();
        }
        true
    }
    go(j, c, omap, &trig, &mut assigned, &mut used, injective, visit);
}

fn object_assignments(j: &FinCategory, c: &FinCategory) -> Vec<Vec<Ob>> {
    let n = j.num_objects();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go(j: &FinCategory, c: &FinCategory, cur: &mut Vec<Ob>, out: &mut Vec<Vec<Ob>>) {
        let k = cur.len();
        if k == j.num_objects() {
            out.push(cur.clone());
            return;
        }
        for o in c.objects() {
            cur.push(o);
            // every morphism between assigned nodes needs a candidate image
            let ok = (0..=k).all(|i| {
                (j.hom(Ob(i), Ob(k)).is_empty() || !c.hom(cur[i], o).is_empty())
                    && (j.hom(Ob(k), Ob(i)).is_empty() || !c.hom(o, cur[i]).is_empty())
            });
            if ok {
                go(j, c, cur, out);
            }
            cur.pop();
        }
    }
    go(j, c, &mut cur, &mut out);
    out
}

/// Every functor `j -> c`, ordered by object images then morphism images.
pub fn functors(j: &Arc<FinCategory>, c: &Arc<FinCategory>) -> Vec<FunctorData> {
    let assigns = object_assignments(j, c);
    par::flat_map(&assigns, |omap| {
        let mut out = Vec::new();
        extend_morphisms(j, c, omap, false, &mut |mmap| {
            out.push(
                FunctorData::new(
                    format!("F{}", out.len()),
                    j.clone(),
                    c.clone(),
                    omap.to_vec(),
                    mmap.to_vec(),
                )
                .expect("typed by construction"),
            );
            true
        });
        out
    })
    .into_iter()
    .enumerate()
    .map(|(i, f)| f.with_name(format!("F{i}")))
    .collect()
}

/// Every natural transformation `f => g`.
pub fn nat_transformations(f: &FunctorData, g: &FunctorData) -> Vec<NatTransData> {
    let c = &*f.dom;
    let n = c.num_objects();
    let mut out = Vec::new();
    let mut cur: Vec<Mor> = Vec::with_capacity(n);
    fn go(f: &FunctorData, g: &FunctorData, cur: &mut Vec<Mor>, out: &mut Vec<Vec<Mor>>) {
        let (c, d) = (&*f.dom, &*f.cod);
        let k = cur.len();
        if k == c.num_objects() {
            out.push(cur.clone());
            return;
        }
        for &x in d.hom(f.ob(Ob(k)), g.ob(Ob(k))) {
            cur.push(x);
            let ok = c.morphisms().all(|m| {
                let (a, b) = (c.src(m).0, c.dst(m).0);
                a.max(b) != k || d.compose(g.mor(m), cur[a]) == d.compose(cur[b], f.mor(m))
            });
            if ok {
                go(f, g, cur, out);
            }
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    go(f, g, &mut cur, &mut raw);
    for (i, comps) in raw.into_iter().enumerate() {
        out.push(NatTransData::new(format!("nt{i}"), f.clone(), g.clone(), comps).expect("typed by construction"));
    }
    out
}

/// Object signature invariant under isomorphism.
fn signature(c: &FinCategory, o: Ob) -> (usize, Vec<usize>, Vec<usize>) {
    let mut out: Vec<usize> = c.objects().map(|x| c.hom(o, x).len()).collect();
    let mut inn: Vec<usize> = c.objects().map(|x| c.hom(x, o).len()).collect();
    out.sort_unstable();
    inn.sort_unstable();
    (c.hom(o, o).len(), out, inn)
}

/// An isomorphism of categories `c -> d`, found by backtracking over object
/// bijections (pruned by hom-set profiles) and then morphism bijections.
pub fn find_isomorphism(c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> Option<FunctorData> {
    if c.num_objects() != d.num_objects() || c.num_morphisms() != d.num_morphisms() {
        return None;
    }
    let sc: Vec<_> = c.objects().map(|o| signature(c, o)).collect();
    let sd: Vec<_> = d.objects().map(|o| signature(d, o)).collect();
    let mut a = sc.clone();
    let mut b = sd.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let n = c.num_objects();
    let mut omap: Vec<Ob> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut found = None;
    fn go(
        c: &FinCategory,
        d: &FinCategory,
        sc: &[(usize, Vec<usize>, Vec<usize>)],
        sd: &[(usize, Vec<usize>, Vec<usize>)],
        omap: &mut Vec<Ob>,
        used: &mut [bool],
        found: &mut Option<(Vec<Ob>, Vec<Mor>)>,
    ) {
        let k = omap.len();
        if k == c.num_objects() {
            extend_morphisms(c, d, omap, true, &mut |mmap| {
                *found = Some((omap.clone(), mmap.to_vec()));
                false
            });
            return;
        }
        for x in d.objects() {
            if used[x.0] || sc[k] != sd[x.0] {
                continue;
            }
            let ok = (0..k).all(|i| {
                c.hom(Ob(i), Ob(k)).len() == d.hom(omap[i], x).len()
                    && c.hom(Ob(k), Ob(i)).len() == d.hom(x, omap[i]).len()
            });
            if !ok {
                continue;
            }
            omap.push(x);
            used[x.0] = true;
            go(c, d, sc, sd, omap, used, found);
            used[x.0] = false;
            omap.pop();
            if found.is_some() {
                return;
            }
        }
    }
    go(c, d, &sc, &sd, &mut omap, &mut used, &mut found);
    let (omap, mmap) = found?;
    Some(
        FunctorData::new(
            format!("iso__{}__{}", c.name(), d.name()),
            c.clone(),
            d.clone(),
            omap,
            mmap,
        )
        .expect("typed by construction"),
    )
}
