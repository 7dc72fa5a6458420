use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::fincat::construct::pair_id;
use crate::fincat::{opposite, tabulate, FinCategory, FunctorData, Mor, Ob};
use crate::par;
use crate::Result;

use super::monad::{ComonadData, MonadData};
use super::param::ParamRef;

/// Which laws an algebra must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgFlavor {
    /// Any `xi : F_A X -> X`.
    Alg,
    /// Eilenberg-Moore algebras of a monad.
    Em,
}

/// `(A, X, xi : F_A X -> X)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct AlgebraObject {
    pub param: Ob,
    pub carrier: Ob,
    pub xi: Mor,
}

/// Unit and multiplication laws of `xi : T X -> X`.
pub fn is_em_algebra(m: &MonadData, x: Ob, xi: Mor) -> bool {
    let c = m.cat();
    c.src(xi) == m.t.ob(x)
        && c.dst(xi) == x
        && c.compose(xi, m.eta.at(x)) == c.id(x)
        && c.compose(xi, m.t.mor(xi)) == c.compose(xi, m.mu.at(x))
}

/// All algebras over `a`, ordered by carrier then structure map.
pub fn enumerate_algebras(p: ParamRef<'_>, a: Ob, flavor: AlgFlavor) -> Vec<AlgebraObject> {
    let c = p.carriers();
    let f = p.functor_at(a);
    let monad = match flavor {
        AlgFlavor::Alg => None,
        AlgFlavor::Em => Some(p.monad().expect("EM algebras need a parametrized monad").at(a)),
    };
    let xs: Vec<Ob> = c.objects().collect();
    par::flat_map(&xs, |&x| {
        c.hom(f.ob(x), x)
            .iter()
            .copied()
            .filter(|&xi| monad.is_none_or(|m| is_em_algebra(m, x, xi)))
            .map(|xi| AlgebraObject {
                param: a,
                carrier: x,
                xi,
            })
            .collect()
    })
}

/// The Eilenberg-Moore category of a monad, with its forgetful functor.
#[derive(Debug, Clone)]
pub struct EmCategory {
    pub cat: Arc<FinCategory>,
    /// `(X, xi)` per object.
    pub algebras: Vec<(Ob, Mor)>,
    pub forget: FunctorData,
    /// Morphism by `(source index, target index, carrier map)`.
    pub index: HashMap<(usize, usize, Mor), Mor>,
}

impl EmCategory {
    pub fn find(&self, x: Ob, xi: Mor) -> Option<Ob> {
        self.algebras.iter().position(|&a| a == (x, xi)).map(Ob)
    }
}

pub fn algebra_id(c: &FinCategory, x: Ob, xi: Mor) -> String {
    pair_id(c.ob_id(x), c.mor_id(xi))
}

pub fn eilenberg_moore(m: &MonadData) -> Result<EmCategory> {
    let c = m.cat();
    let mut algebras = Vec::new();
    for x in c.objects() {
        for &xi in c.hom(m.t.ob(x), x) {
            if is_em_algebra(m, x, xi) {
                algebras.push((x, xi));
            }
        }
    }
    let mut morphisms = Vec::new();
    for (i, &(x, xi)) in algebras.iter().enumerate() {
        for (j, &(y, theta)) in algebras.iter().enumerate() {
            for &g in c.hom(x, y) {
                if c.compose(g, xi) == c.compose(theta, m.t.mor(g)) {
                    morphisms.push(((i, j, g), c.mor_id(g).to_string(), Ob(i), Ob(j)));
                }
            }
        }
    }
    let t = tabulate(
        &format!("EM__{}", m.name),
        algebras.iter().map(|&(x, xi)| algebra_id(c, x, xi)).collect(),
        morphisms,
        |o| (o.0, o.0, c.id(algebras[o.0].0)),
        |&(_, k, g), &(i, _, f)| (i, k, c.compose(g, f)),
    )?;
    let cat = Arc::new(t.cat);
    let forget = FunctorData::new(
        "U",
        cat.clone(),
        c.clone(),
        algebras.iter().map(|a| a.0).collect(),
        t.keys.iter().map(|k| k.2).collect(),
    )?;
    Ok(EmCategory {
        cat,
        algebras,
        forget,
        index: t.index,
    })
}

/// Which Kleisli construction to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KlFlavor {
    Kl,
    CoKl,
}

/// Kleisli category of a monad: morphisms `X -> Y` are `k : X -> T Y`, with
/// ids `k__Y`.
pub fn kleisli(m: &MonadData) -> Result<FinCategory> {
    let c = m.cat();
    let mut morphisms = Vec::new();
    for x in c.objects() {
        for y in c.objects() {
            for &k in c.hom(x, m.t.ob(y)) {
                morphisms.push(((k, y), pair_id(c.mor_id(k), c.ob_id(y)), x, y));
            }
        }
    }
    let t = tabulate(
        &format!("Kl__{}", m.name),
        c.object_ids().to_vec(),
        morphisms,
        |o| (m.eta.at(o), o),
        |&(l, z), &(k, _)| (c.compose(m.mu.at(z), c.compose(m.t.mor(l), k)), z),
    )?;
    Ok(t.cat)
}

/// coKleisli category of a comonad: `Kl(S^op)^op`, so morphisms `X -> Y`
/// are `k : S X -> Y`.
pub fn cokleisli(s: &ComonadData) -> Result<FinCategory> {
    let k = kleisli(&s.monad)?;
    Ok(opposite(&k).with_name(format!("coKl__{}", s.name)))
}

/// Dispatch on [`KlFlavor`]. `CoKl` reads `m` as the dual of a comonad.
pub fn kleisli_flavored(m: &MonadData, flavor: KlFlavor) -> Result<FinCategory> {
    match flavor {
        KlFlavor::Kl => kleisli(m),
        KlFlavor::CoKl => Ok(opposite(&kleisli(m)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::build;
    use crate::monadkit::ParamMonadData;

    #[test]
    fn writer_em_algebras_over_one() {
        let p = build::writer_chain3();
        let algs = enumerate_algebras(ParamRef::Monad(&p), Ob(1), AlgFlavor::Em);
        let carriers: Vec<usize> = algs.iter().map(|a| a.carrier.0).collect();
        assert_eq!(carriers, vec![1, 2]);
    }

    #[test]
    fn identity_monad_has_one_algebra_per_object() {
        let c = Arc::new(build::chain(3));
        let p = ParamMonadData::constant(c.clone(), MonadData::identity(c.clone()));
        let algs = enumerate_algebras(ParamRef::Monad(&p), Ob(0), AlgFlavor::Em);
        assert_eq!(algs.len(), 3);
        assert!(algs.iter().all(|a| c.is_identity(a.xi)));
    }

    #[test]
    fn alg_flavor_counts_all_structure_maps() {
        let p = build::semiauto_m2();
        let algs = enumerate_algebras(ParamRef::Endo(&p), Ob(0), AlgFlavor::Alg);
        let c = &p.carriers;
        let f = &p.per_object[0];
        let expected: usize = c.objects().map(|x| c.hom(f.ob(x), x).len()).sum();
        assert_eq!(algs.len(), expected);
    }

    #[test]
    fn kleisli_of_identity_is_the_carrier() {
        let c = Arc::new(build::chain(3));
        let k = Arc::new(kleisli(&MonadData::identity(c.clone())).unwrap());
        assert!(k.validate().is_empty());
        assert!(crate::fincat::find_isomorphism(&k, &c).is_some());
    }

    #[test]
    fn writer_kleisli_homs() {
        let p = build::writer_chain3();
        let m = p.at(Ob(1));
        let k = kleisli(m).unwrap();
        assert!(k.validate().is_empty());
        for x in k.objects() {
            for y in k.objects() {
                assert_eq!(!k.hom(x, y).is_empty(), x.0 <= 1.max(y.0));
            }
        }
    }

    #[test]
    fn coreader_cokleisli_is_the_simple_slice() {
        let s = build::coreader_bool4();
        for a in s.params.objects() {
            let sa = s.at(a);
            let k = cokleisli(&sa).unwrap();
            assert!(k.validate().is_empty());
            for x in k.objects() {
                for y in k.objects() {
                    let meet = a.0 & x.0;
                    assert_eq!(k.hom(x, y).len(), usize::from(meet & y.0 == meet));
                }
            }
        }
    }

    #[test]
    fn eilenberg_moore_of_writer() {
        let p = build::writer_chain3();
        let em = eilenberg_moore(p.at(Ob(1))).unwrap();
        assert_eq!(em.cat.num_objects(), 2);
        assert!(em.cat.validate().is_empty());
        assert!(em.forget.validate().is_empty());
    }
}
