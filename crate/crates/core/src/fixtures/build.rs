//! Programmatic constructions of the bundled fixtures.

use std::sync::Arc;

use crate::fincat::{CategoryBuilder, FinCategory, FunctorData, Mor, NatTransData, Ob};
use crate::grothfib::SplitFibrationData;
use crate::monadkit::{ComonadData, MonadData, ParamComonadData, ParamEndofunctorData, ParamMonadData};
use crate::Result;

/// Morphism id of `a <= b` in a poset built by [`poset`].
pub fn le_id(a: &str, b: &str) -> String {
    format!("le_{a}_{b}")
}

/// Thin category on `elements` with `a -> b` iff `leq(a, b)`.
pub fn poset(name: &str, elements: &[&str], leq: impl Fn(usize, usize) -> bool) -> Result<FinCategory> {
    let n = elements.len();
    let mut b = CategoryBuilder::new(name).objects(elements.iter().copied());
    for i in 0..n {
        for j in 0..n {
            if i != j && leq(i, j) {
                b = b.morphism(le_id(elements[i], elements[j]), elements[i], elements[j]);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k && i != k && leq(i, j) && leq(j, k) {
                    b = b.compose(
                        le_id(elements[i], elements[k]),
                        le_id(elements[j], elements[k]),
                        le_id(elements[i], elements[j]),
                    );
                }
            }
        }
    }
    b.build()
}

/// The `n`-chain `0 < 1 < ... < n-1`.
pub fn chain(n: usize) -> FinCategory {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    poset(&format!("chain{n}"), &refs, |a, b| a <= b).expect("chain")
}

/// The Boolean lattice on two atoms: `0 < a, b < 1`.
pub fn bool4() -> FinCategory {
    poset("bool4", &["0", "a", "b", "1"], |x, y| x & y == x).expect("bool4")
}

/// In [`bool4`] the objects are bitmasks: `0 = 00`, `a = 01`, `b = 10`, `1 = 11`.
pub fn bool4_mask(o: Ob) -> usize {
    o.0
}

/// The unique morphism `a -> b` of a thin category.
pub fn thin(c: &FinCategory, a: Ob, b: Ob) -> Mor {
    c.hom(a, b)[0]
}

/// Monotone endomap of a poset as a functor.
pub fn monotone(c: &Arc<FinCategory>, name: &str, f: impl Fn(Ob) -> Ob) -> FunctorData {
    let omap: Vec<Ob> = c.objects().map(&f).collect();
    let mmap = c
        .morphisms()
        .map(|m| thin(c, omap[c.src(m).0], omap[c.dst(m).0]))
        .collect();
    FunctorData::new(name, c.clone(), c.clone(), omap, mmap).expect("monotone map")
}

/// Transformation between monotone maps `f <= g` of a poset.
pub fn pointwise(name: &str, f: &FunctorData, g: &FunctorData) -> NatTransData {
    let c = &f.dom;
    let comps = c.objects().map(|x| thin(c, f.ob(x), g.ob(x))).collect();
    NatTransData::new(name, f.clone(), g.clone(), comps).expect("pointwise order")
}

/// Transformations `F => G` on the 3-chain with `F` constant at 0:
/// `alpha` into `G = (0 1 2 |-> 1 2 2)` and `alpha_const` into the constant 1.
pub fn swindle_chain3() -> [NatTransData; 2] {
    let c = Arc::new(chain(3));
    let f = monotone(&c, "F", |_| Ob(0));
    let g = monotone(&c, "G", |o| Ob((o.0 + 1).min(2)));
    let k = monotone(&c, "K", |_| Ob(1));
    [pointwise("alpha", &f, &g), pointwise("alpha_const", &f, &k)]
}

/// Closure operator `j` on a poset as an idempotent monad.
pub fn closure_monad(c: &Arc<FinCategory>, name: &str, j: impl Fn(Ob) -> Ob) -> MonadData {
    let t = monotone(c, &format!("T_{name}"), j);
    let eta = pointwise(&format!("eta_{name}"), &FunctorData::identity(c.clone()), &t);
    let mu = pointwise(&format!("mu_{name}"), &t.after(&t).expect("endo"), &t);
    MonadData::new(name, t, eta, mu).expect("closure")
}

/// Interior operator `k` on a poset as an idempotent comonad.
pub fn interior_comonad(c: &Arc<FinCategory>, cop: &Arc<FinCategory>, name: &str, k: impl Fn(Ob) -> Ob) -> ComonadData {
    let s = monotone(c, &format!("S_{name}"), k);
    let eps = pointwise(&format!("eps_{name}"), &s, &FunctorData::identity(c.clone()));
    let delta = pointwise(&format!("delta_{name}"), &s, &s.after(&s).expect("endo"));
    ComonadData::new(name, s, eps, delta, cop.clone()).expect("interior")
}

/// Join-writer `T_A(x) = A v x` over a lattice given by its join on indices.
pub fn join_writer(name: &str, lattice: &Arc<FinCategory>, join: impl Fn(Ob, Ob) -> Ob + Copy) -> ParamMonadData {
    let c = lattice;
    let per_object: Vec<MonadData> = c
        .objects()
        .map(|a| closure_monad(c, &format!("W_{}", c.ob_id(a)), move |x| join(a, x)))
        .collect();
    let per_morphism = c
        .morphisms()
        .map(|f| {
            pointwise(
                &format!("W_{}", c.mor_id(f)),
                &per_object[c.src(f).0].t,
                &per_object[c.dst(f).0].t,
            )
        })
        .collect();
    ParamMonadData::new(name, c.clone(), c.clone(), per_object, per_morphism).expect("join writer")
}

/// `writer_chain3`: `T_A(x) = max(A, x)` over the 3-chain.
pub fn writer_chain3() -> ParamMonadData {
    let c = Arc::new(chain(3));
    join_writer("writer", &c, |a, x| a.max(x))
}

/// Join-writer over [`bool4`].
pub fn writer_bool4() -> ParamMonadData {
    let c = Arc::new(bool4());
    join_writer("writer4", &c, |a, x| Ob(a.0 | x.0))
}

/// Coreader `S_A(x) = A ^ x` over [`bool4`].
pub fn coreader_bool4() -> ParamComonadData {
    let c = Arc::new(bool4());
    let cop = Arc::new(crate::fincat::opposite(&c));
    let per_object: Vec<ComonadData> = c
        .objects()
        .map(|a| interior_comonad(&c, &cop, &format!("R_{}", c.ob_id(a)), move |x| Ob(a.0 & x.0)))
        .collect();
    let per_morphism = c
        .morphisms()
        .map(|f| {
            pointwise(
                &format!("R_{}", c.mor_id(f)),
                &per_object[c.src(f).0].s,
                &per_object[c.dst(f).0].s,
            )
        })
        .collect();
    ParamComonadData::new("coreader", c.clone(), cop, per_object, per_morphism).expect("coreader")
}

/// Every parameter acts by the identity monad.
pub fn constant_identity(params: Arc<FinCategory>, carriers: Arc<FinCategory>) -> ParamMonadData {
    let mut p = ParamMonadData::constant(params, MonadData::identity(carriers));
    p.name = "const_id".into();
    p
}

/// One-object category of a monoid given by its multiplication table on
/// element names; the first element is the unit.
pub fn delooping(name: &str, elements: &[&str], mult: impl Fn(usize, usize) -> usize) -> Result<FinCategory> {
    let mut b = CategoryBuilder::new(name).object("pt");
    let id = CategoryBuilder::identity_id("pt");
    let mor_name = |i: usize| if i == 0 { id.clone() } else { elements[i].to_string() };
    for e in &elements[1..] {
        b = b.morphism(*e, "pt", "pt");
    }
    for g in 1..elements.len() {
        for f in 1..elements.len() {
            b = b.compose(mor_name(mult(g, f)), mor_name(g), mor_name(f));
        }
    }
    b.build()
}

/// `semiauto_m2`: `F(m, n) = m n` on the delooping of `{1, z}` with `z z = z`.
pub fn semiauto_m2() -> ParamEndofunctorData {
    let m2 = Arc::new(delooping("BM2", &["1", "z"], |a, b| a | b).expect("BM2"));
    let id = FunctorData::identity(m2.clone()).with_name("act_pt");
    let z = m2.mor("z").expect("z");
    let per_morphism = m2
        .morphisms()
        .map(|m| {
            let comp = if m == z { z } else { m2.id(Ob(0)) };
            NatTransData::new(format!("act_{}", m2.mor_id(m)), id.clone(), id.clone(), vec![comp]).expect("central")
        })
        .collect();
    ParamEndofunctorData::new("semiauto", m2.clone(), m2, vec![id], per_morphism).expect("semiauto")
}

/// The freestanding split epi `r : 0 <-> 1 : s` with `r s = id_1`, `e = s r`.
pub fn split_epi() -> FinCategory {
    CategoryBuilder::new("SplitEpi")
        .objects(["0", "1"])
        .morphism("r", "0", "1")
        .morphism("s", "1", "0")
        .morphism("e", "0", "0")
        .compose("id_1", "r", "s")
        .compose("e", "s", "r")
        .compose("e", "e", "e")
        .compose("r", "r", "e")
        .compose("s", "e", "s")
        .build()
        .expect("split epi")
}

/// Category of points (functors from [`split_epi`]) in `a` with the
/// evaluation `P |-> P 1`. A point is named `P0__P1__Pr`.
pub fn points(a: &Arc<FinCategory>) -> Result<(Arc<FinCategory>, FunctorData)> {
    let j = Arc::new(split_epi());
    let (zero, one) = (Ob(0), Ob(1));
    let r = j.mor("r").expect("r");
    let pts = crate::fincat::functors(&j, a);
    let mut mors = Vec::new();
    for (i, f) in pts.iter().enumerate() {
        for (k, g) in pts.iter().enumerate() {
            for t in crate::fincat::nat_transformations(f, g) {
                let id = format!("{}__{}", a.mor_id(t.at(zero)), a.mor_id(t.at(one)));
                mors.push((t.components().to_vec(), id, Ob(i), Ob(k)));
            }
        }
    }
    let names = pts
        .iter()
        .map(|f| {
            format!(
                "{}__{}__{}",
                a.ob_id(f.ob(zero)),
                a.ob_id(f.ob(one)),
                a.mor_id(f.mor(r))
            )
        })
        .collect();
    let t = crate::fincat::tabulate(
        &format!("Pt_{}", a.name()),
        names,
        mors,
        |o| j.objects().map(|x| a.id(pts[o.0].ob(x))).collect(),
        |g: &Vec<Mor>, f: &Vec<Mor>| g.iter().zip(f).map(|(x, y)| a.compose(*x, *y)).collect(),
    )?;
    let cat = Arc::new(t.cat);
    let p = FunctorData::new(
        "eval_1",
        cat.clone(),
        a.clone(),
        pts.iter().map(|f| f.ob(one)).collect(),
        t.keys.iter().map(|k| k[one.0]).collect(),
    )?;
    Ok((cat, p))
}

/// `codomain2`: the codomain fibration of the 2-chain, in split form. The
/// fibre over `A` is the slice over `A`; reindexing along `0 <= 1` is the
/// pullback `x |-> min(x, 0)`.
pub fn codomain_chain2() -> SplitFibrationData {
    let base = Arc::new(chain(2));
    let over0 = Arc::new(chain(1));
    let over1 = Arc::new(chain(2));
    let reindex = base
        .morphisms()
        .map(|f| {
            let (s, t) = (base.src(f), base.dst(f));
            if s == t {
                let c = if s.0 == 0 { over0.clone() } else { over1.clone() };
                FunctorData::identity(c)
            } else {
                FunctorData::constant(over1.clone(), over0.clone(), Ob(0))
            }
            .with_name(format!("pb_{}", base.mor_id(f)))
        })
        .collect();
    SplitFibrationData::new("codomain2", base, vec![over0, over1], reindex).expect("codomain2")
}
