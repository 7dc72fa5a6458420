use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::fincat::{fibre, opposite, FinCategory, FunctorData, Mor, Ob};
use crate::par;
use crate::report::{Verdict, WitnessKind};
use crate::Result;

use super::total::Variance;

/// A functor `p : E -> B` considered as a (candidate) fibration.
#[derive(Debug, Clone)]
pub struct Fibration {
    pub name: String,
    pub p: FunctorData,
    /// Preferred lifts `(f, e) |-> m`, checked against the universal property
    /// before use.
    pub hint: Option<HashMap<(Mor, Ob), Mor>>,
}

/// A chosen lift of a base morphism at an object over its codomain
/// (or domain, for opfibrations).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lift {
    pub base: Mor,
    pub at: Ob,
    pub lift: Mor,
}

#[derive(Debug, Clone)]
pub struct FibrationCheck {
    pub verdict: Verdict,
    pub variance: Variance,
    pub cleavage: Vec<Lift>,
}

impl FibrationCheck {
    pub fn lift(&self, base: Mor, at: Ob) -> Option<Mor> {
        self.cleavage
            .iter()
            .find(|l| l.base == base && l.at == at)
            .map(|l| l.lift)
    }
}

impl Fibration {
    pub fn new(name: impl Into<String>, p: FunctorData) -> Self {
        Self {
            name: name.into(),
            p,
            hint: None,
        }
    }

    pub fn total(&self) -> &Arc<FinCategory> {
        &self.p.dom
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.p.cod
    }

    pub fn over(&self, a: Ob) -> Vec<Ob> {
        self.total().objects().filter(|&o| self.p.ob(o) == a).collect()
    }

    pub fn fibre(&self, a: Ob) -> Result<(Arc<FinCategory>, FunctorData)> {
        fibre(&self.p, a)
    }

    /// `p^op : E^op -> B^op`; fibrations become opfibrations and back.
    pub fn opposite(&self) -> Fibration {
        let e = Arc::new(opposite(self.total()));
        let b = Arc::new(opposite(self.base()));
        Fibration {
            name: format!("{}_op", self.name),
            p: self.p.op(e, b),
            hint: self.hint.clone(),
        }
    }

    /// Cartesian: for all `m' : e'' -> e` and `g` with `p m . g = p m'`
    /// there is exactly one `h` over `g` with `m . h = m'`.
    pub fn is_cartesian(&self, m: Mor) -> bool {
        let (e, b, p) = (&**self.total(), &**self.base(), &self.p);
        let (src, dst) = (e.src(m), e.dst(m));
        let pm = p.mor(m);
        e.objects().all(|e2| {
            e.hom(e2, dst).iter().all(|&m2| {
                b.hom(p.ob(e2), p.ob(src)).iter().all(|&g| {
                    if b.compose(pm, g) != p.mor(m2) {
                        return true;
                    }
                    let n = e
                        .hom(e2, src)
                        .iter()
                        .filter(|&&h| p.mor(h) == g && e.compose(m, h) == m2)
                        .take(2)
                        .count();
                    n == 1
                })
            })
        })
    }

    /// Opcartesian: for all `m' : e -> e''` and `g` with `g . p m = p m'`
    /// there is exactly one `h` over `g` with `h . m = m'`.
    pub fn is_opcartesian(&self, m: Mor) -> bool {
        let (e, b, p) = (&**self.total(), &**self.base(), &self.p);
        let (src, dst) = (e.src(m), e.dst(m));
        let pm = p.mor(m);
        e.objects().all(|e2| {
            e.hom(src, e2).iter().all(|&m2| {
                b.hom(p.ob(dst), p.ob(e2)).iter().all(|&g| {
                    if b.compose(g, pm) != p.mor(m2) {
                        return true;
                    }
                    let n = e
                        .hom(dst, e2)
                        .iter()
                        .filter(|&&h| p.mor(h) == g && e.compose(h, m) == m2)
                        .take(2)
                        .count();
                    n == 1
                })
            })
        })
    }

    /// A (op)cartesian lift of `f` at `at` (over the codomain of `f` for
    /// fibrations, over its domain for opfibrations). The hint is preferred;
    /// otherwise the least source (resp. target) id, then morphism order.
    pub fn find_lift(&self, f: Mor, at: Ob, variance: Variance) -> Option<Mor> {
        let (e, b, p) = (&**self.total(), &**self.base(), &self.p);
        let test = |m: Mor| match variance {
            Variance::Fibration => self.is_cartesian(m),
            Variance::Opfibration => self.is_opcartesian(m),
        };
        if let Some(h) = self.hint.as_ref().and_then(|h| h.get(&(f, at))) {
            if test(*h) {
                return Some(*h);
            }
        }
        let mut others: Vec<Ob> = match variance {
            Variance::Fibration => self.over(b.src(f)),
            Variance::Opfibration => self.over(b.dst(f)),
        };
        others.sort_by(|x, y| e.ob_id(*x).cmp(e.ob_id(*y)));
        for o in others {
            let hom = match variance {
                Variance::Fibration => e.hom(o, at),
                Variance::Opfibration => e.hom(at, o),
            };
            for &m in hom {
                if p.mor(m) == f && test(m) {
                    return Some(m);
                }
            }
        }
        None
    }
}

/// Checks that every base morphism has a (op)cartesian lift at every object
/// over its codomain (domain), returning the cleavage found.
pub fn verify_fibration(fib: &Fibration, variance: Variance) -> FibrationCheck {
    let (e, b) = (fib.total(), fib.base());
    let mut tasks = Vec::new();
    for f in b.morphisms() {
        let end = match variance {
            Variance::Fibration => b.dst(f),
            Variance::Opfibration => b.src(f),
        };
        for o in fib.over(end) {
            tasks.push((f, o));
        }
    }
    let found = par::map(&tasks, |&(f, o)| fib.find_lift(f, o, variance));
    let mut cleavage = Vec::with_capacity(tasks.len());
    for (&(f, o), l) in tasks.iter().zip(found) {
        match l {
            Some(m) => cleavage.push(Lift {
                base: f,
                at: o,
                lift: m,
            }),
            None => {
                return FibrationCheck {
                    verdict: Verdict::fail(
                        WitnessKind::NoCartesianLift,
                        format!(
                            "no {} lift of `{}` at `{}`",
                            match variance {
                                Variance::Fibration => "cartesian",
                                Variance::Opfibration => "opcartesian",
                            },
                            b.mor_id(f),
                            e.ob_id(o)
                        ),
                    ),
                    variance,
                    cleavage,
                }
            }
        }
    }
    FibrationCheck {
        verdict: Verdict::Holds,
        variance,
        cleavage,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::build::{chain, constant_identity, writer_chain3};
    use crate::grothfib::{build_total, Flavor};
    use crate::monadkit::ParamRef;

    #[test]
    fn em_total_is_a_split_fibration() {
        let p = writer_chain3();
        let t = build_total(ParamRef::Monad(&p), Flavor::Em).unwrap();
        let check = verify_fibration(&t.fibration(), Variance::Fibration);
        assert!(check.verdict.holds());
        for l in &check.cleavage {
            let (f, g) = t.components[l.lift.0];
            assert_eq!(f, l.base);
            assert_eq!(g, p.carriers.id(t.payload(l.at).carrier));
        }
        // the lift found without the hint is the same
        let plain = Fibration::new("plain", t.p.clone());
        let again = verify_fibration(&plain, Variance::Fibration);
        assert_eq!(again.cleavage, check.cleavage);
    }

    #[test]
    fn kleisli_total_over_a_poset_is_a_bifibration() {
        // Z = T_A' Y always carries a cartesian lift when carriers are thin
        let p = writer_chain3();
        let t = build_total(ParamRef::Monad(&p), Flavor::Kl).unwrap();
        let fib = t.fibration();
        assert!(verify_fibration(&fib, Variance::Opfibration).verdict.holds());
        assert!(verify_fibration(&fib, Variance::Fibration).verdict.holds());
    }

    #[test]
    fn wrong_variance_fails_with_witness() {
        let s = crate::fixtures::build::semiauto_m2();
        let t = build_total(ParamRef::Endo(&s), Flavor::Alg).unwrap();
        let fib = t.fibration();
        assert!(verify_fibration(&fib, Variance::Fibration).verdict.holds());
        let v = verify_fibration(&fib, Variance::Opfibration).verdict;
        let w = v.witness().unwrap();
        assert_eq!(w.kind, WitnessKind::NoCartesianLift);
        assert!(w.detail.contains("`z`"));
    }

    #[test]
    fn trivial_bundle_is_a_fibration() {
        let p = constant_identity(Arc::new(chain(2)), Arc::new(chain(2)));
        let t = build_total(ParamRef::Monad(&p), Flavor::Em).unwrap();
        let fib = t.fibration();
        assert!(verify_fibration(&fib, Variance::Fibration).verdict.holds());
        assert!(verify_fibration(&fib, Variance::Opfibration).verdict.holds());
        assert!(verify_fibration(&fib.opposite(), Variance::Opfibration).verdict.holds());
    }

    #[test]
    fn points_of_the_split_epi_are_not_a_fibration() {
        let j = Arc::new(crate::fixtures::build::split_epi());
        let (pt, p) = crate::fixtures::build::points(&j).unwrap();
        assert_eq!((pt.num_objects(), pt.num_morphisms()), (3, 11));
        let check = verify_fibration(&Fibration::new("points", p), Variance::Fibration);
        let w = check.verdict.witness().unwrap();
        assert_eq!(w.kind, crate::report::WitnessKind::NoCartesianLift);
        assert!(w.detail.contains("`r`"), "{}", w.detail);
    }

    #[test]
    fn points_of_a_poset_form_a_fibration() {
        let (pt, p) = crate::fixtures::build::points(&Arc::new(crate::fixtures::build::bool4())).unwrap();
        assert_eq!(pt.num_objects(), 4);
        assert!(verify_fibration(&Fibration::new("points", p), Variance::Fibration)
            .verdict
            .holds());
    }
}
