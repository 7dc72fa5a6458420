use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::fincat::{
    check_adjunction, check_equivalence, fibre, opposite, product, AdjunctionMode, FinCategory, FunctorData, Mor,
    NatTransData, Ob, Product,
};
use crate::grothfib::{build_total, Fibration, Flavor, SplitFibrationData, TotalCategory, Variance};
use crate::monadkit::{MonadData, ParamMonadData, ParamRef};
use crate::report::{Verdict, Witness, WitnessKind};
use crate::{par, Error, Result};

use super::side::Side;

/// Inputs accepted by the recognition pipeline.
pub trait AsFibration {
    fn as_fibration(&self) -> Result<Fibration>;
}

impl AsFibration for Fibration {
    fn as_fibration(&self) -> Result<Fibration> {
        Ok(self.clone())
    }
}

impl AsFibration for TotalCategory {
    fn as_fibration(&self) -> Result<Fibration> {
        Ok(self.fibration())
    }
}

impl AsFibration for SplitFibrationData {
    fn as_fibration(&self) -> Result<Fibration> {
        let report = self.validate();
        if !report.is_empty() {
            return Err(Error::Precondition(format!(
                "`{}` is not a split fibration: {report}",
                self.name
            )));
        }
        Ok(self.grothendieck()?.fibration)
    }
}

/// The fibre over the initial object, its inclusion `i` and the reindexing
/// right adjoint `i_R`.
#[derive(Debug, Clone)]
pub struct InitialFibre {
    /// The initial base object.
    pub empty: Ob,
    pub cat: Arc<FinCategory>,
    pub i: FunctorData,
    pub i_r: FunctorData,
    /// Counit `i i_R E -> E` (the chosen cartesian lift) per total object.
    pub counit: Vec<Mor>,
    /// Unit `X -> i_R i X` per fibre object.
    pub unit: Vec<Mor>,
}

/// One required coproduct `empty_A + i E_0`.
#[derive(Debug, Clone, Serialize)]
pub struct RequiredCoproduct {
    pub param: String,
    pub initial_fibre_object: String,
    pub apex: Option<String>,
    /// `p` of the first injection, invertible when `p` preserves the coproduct.
    pub base_iso: Option<String>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct PrunedReport {
    pub has_initial_base: Verdict,
    /// Per base object: the fibre has an initial object.
    pub fibrewise_initials: Vec<(String, Verdict)>,
    pub p_left_adjoint: Option<FunctorData>,
    /// Why `p_left_adjoint` is absent, or `Holds`.
    pub p_left_adjoint_verdict: Verdict,
    pub required_coproducts: Vec<RequiredCoproduct>,
    pub p_preserves_them: Verdict,
    pub fibrewise_terminals_preserved: Verdict,
}

impl PrunedReport {
    /// Initial base object, fibrewise initials, a full and faithful `p_L`,
    /// the coproducts `empty_A + E_0`, and their preservation by `p`.
    pub fn pruned(&self) -> Verdict {
        let initials = self
            .fibrewise_initials
            .iter()
            .find(|(_, v)| !v.holds())
            .map_or(Verdict::Holds, |(_, v)| v.clone());
        let coproducts = self
            .required_coproducts
            .iter()
            .find(|c| !c.verdict.holds())
            .map_or(Verdict::Holds, |c| c.verdict.clone());
        self.has_initial_base
            .clone()
            .and(|| initials)
            .and(|| self.p_left_adjoint_verdict.clone())
            .and(|| coproducts)
            .and(|| self.p_preserves_them.clone())
    }

    pub fn summary(&self) -> PrunedSummary {
        PrunedSummary {
            has_initial_base: self.has_initial_base.clone(),
            fibrewise_initials: self.fibrewise_initials.clone(),
            p_left_adjoint: self.p_left_adjoint_verdict.clone(),
            required_coproducts: self.required_coproducts.clone(),
            p_preserves_them: self.p_preserves_them.clone(),
            fibrewise_terminals_preserved: self.fibrewise_terminals_preserved.clone(),
            pruned: self.pruned(),
        }
    }
}

/// Serializable form of a [`PrunedReport`].
#[derive(Debug, Clone, Serialize)]
pub struct PrunedSummary {
    pub has_initial_base: Verdict,
    pub fibrewise_initials: Vec<(String, Verdict)>,
    pub p_left_adjoint: Verdict,
    pub required_coproducts: Vec<RequiredCoproduct>,
    pub p_preserves_them: Verdict,
    pub fibrewise_terminals_preserved: Verdict,
    pub pruned: Verdict,
}

/// `(A, E_0) |-> p_L A + i E_0` with its right adjoint `<p, i_R>`.
#[derive(Debug, Clone)]
pub struct CopairAdjoint {
    pub product: Product,
    pub functor: FunctorData,
    pub right: FunctorData,
    pub adjunction: Verdict,
    /// `p (p_L A + i E_0)` is isomorphic to `A`.
    pub over_base: Verdict,
}

#[derive(Debug, Clone)]
pub struct RecognitionResult {
    /// Computed on opposite categories (comonad reading).
    pub dual: bool,
    pub pruned: PrunedReport,
    pub initial_fibre: InitialFibre,
    pub t_p: ParamMonadData,
    pub total: TotalCategory,
    pub eta_p: FunctorData,
    /// `p^T . eta_p = p`, checked strictly.
    pub triangle: Verdict,
    pub is_em: Verdict,
    pub evidence: Option<Witness>,
}

impl RecognitionResult {
    /// `T_p` at the initial parameter is isomorphic to the identity monad.
    pub fn trivial_at_initial(&self) -> Verdict {
        let m = self.t_p.at(self.initial_fibre.empty);
        let c = m.cat();
        match c.objects().find(|&x| c.is_iso(m.eta.at(x)).is_none()) {
            None => Verdict::Holds,
            Some(x) => Verdict::fail(
                WitnessKind::Law,
                format!(
                    "unit of T_p at the initial parameter is not invertible at `{}`",
                    c.ob_id(x)
                ),
            ),
        }
    }

    /// `A: X -> T_A X, ...` per parameter.
    pub fn table_digest(&self) -> Vec<String> {
        let (a, x) = (&self.t_p.params, &self.t_p.carriers);
        a.objects()
            .map(|p| {
                let t = &self.t_p.at(p).t;
                let row: Vec<String> = x
                    .objects()
                    .map(|o| format!("{}->{}", x.ob_id(o), x.ob_id(t.ob(o))))
                    .collect();
                format!("{}: {}", a.ob_id(p), row.join(", "))
            })
            .collect()
    }

    pub fn summary(&self) -> RecognitionSummary {
        RecognitionSummary {
            dual: self.dual,
            pruned: self.pruned.summary(),
            t_p: self.table_digest(),
            triangle: self.triangle.clone(),
            is_em: self.is_em.holds(),
            witness: self.evidence.clone(),
        }
    }
}

/// Serializable recognition report.
#[derive(Debug, Clone, Serialize)]
pub struct RecognitionSummary {
    pub dual: bool,
    pub pruned: PrunedSummary,
    pub t_p: Vec<String>,
    pub triangle: Verdict,
    pub is_em: bool,
    pub witness: Option<Witness>,
}

/// The recognition pipeline on a fibration, or on an opfibration read
/// through opposite categories.
pub struct Pipeline {
    fib: Fibration,
    flip: bool,
    e_cat: Arc<FinCategory>,
    a_cat: Arc<FinCategory>,
    p: FunctorData,
}

struct Analysis {
    report: PrunedReport,
    fibre: Option<InitialFibre>,
    initials: Vec<Option<Ob>>,
    p_l: Option<FunctorData>,
    coproducts: HashMap<(Ob, Ob), (Ob, Mor, Mor)>,
}

impl Pipeline {
    pub fn primal(fib: &impl AsFibration) -> Result<Self> {
        Ok(Self::new(fib.as_fibration()?, false))
    }

    /// Reads an opfibration through opposite categories; terminal objects,
    /// products and opcartesian lifts are searched directly.
    pub fn dual(opfib: &impl AsFibration) -> Result<Self> {
        Ok(Self::new(opfib.as_fibration()?, true))
    }

    fn new(fib: Fibration, flip: bool) -> Self {
        let (e_cat, a_cat, p) = if flip {
            let e = Arc::new(opposite(fib.total()));
            let a = Arc::new(opposite(fib.base()));
            let p = fib.p.op(e.clone(), a.clone()).with_name(fib.p.name.clone());
            (e, a, p)
        } else {
            (fib.total().clone(), fib.base().clone(), fib.p.clone())
        };
        Self {
            fib,
            flip,
            e_cat,
            a_cat,
            p,
        }
    }

    fn e(&self) -> Side<'_> {
        Side::new(self.fib.total(), self.flip)
    }

    fn a(&self) -> Side<'_> {
        Side::new(self.fib.base(), self.flip)
    }

    fn see(&self, c: Arc<FinCategory>) -> Arc<FinCategory> {
        if self.flip {
            Arc::new(opposite(&c))
        } else {
            c
        }
    }

    /// Cartesian lift (in the view) of `u` at `at`.
    fn lift(&self, u: Mor, at: Ob) -> Option<Mor> {
        if self.fib.base().is_identity(u) {
            return Some(self.fib.total().id(at));
        }
        let variance = if self.flip {
            Variance::Opfibration
        } else {
            Variance::Fibration
        };
        self.fib.find_lift(u, at, variance)
    }

    pub fn initial_fibre(&self) -> Result<InitialFibre> {
        let (e, a, p) = (self.e(), self.a(), &self.p);
        let empty = a
            .initial()
            .ok_or_else(|| Error::Precondition(format!("base `{}` has no initial object", self.a_cat.name())))?;
        let (sub, incl) = fibre(&self.fib.p, empty)?;
        let ob_of: HashMap<Ob, Ob> = sub.objects().map(|x| (incl.ob(x), x)).collect();
        let mor_of: HashMap<Mor, Mor> = sub.morphisms().map(|m| (incl.mor(m), m)).collect();
        let ec = &*self.e_cat;
        let mut counit = Vec::with_capacity(ec.num_objects());
        for o in ec.objects() {
            let u = a.hom(empty, p.ob(o))[0];
            let l = self.lift(u, o).ok_or_else(|| {
                Error::Precondition(format!(
                    "no cartesian lift of `{}` at `{}`",
                    self.a_cat.mor_id(u),
                    ec.ob_id(o)
                ))
            })?;
            counit.push(l);
        }
        let reindexed: Vec<Ob> = counit.iter().map(|&l| e.src(l)).collect();
        let over_empty = a.id(empty);
        let mut mmap = Vec::with_capacity(ec.num_morphisms());
        for m in ec.morphisms() {
            let (s, t) = (e.src(m), e.dst(m));
            let target = e.compose(m, counit[s.0]);
            let h = e
                .hom(reindexed[s.0], reindexed[t.0])
                .iter()
                .copied()
                .find(|&h| p.mor(h) == over_empty && e.compose(counit[t.0], h) == target)
                .ok_or_else(|| Error::Construction(format!("no reindexed morphism for `{}`", ec.mor_id(m))))?;
            mmap.push(mor_of[&h]);
        }
        let cat = self.see(sub.clone());
        let i = if self.flip {
            incl.op(cat.clone(), self.e_cat.clone())
        } else {
            incl.clone()
        }
        .with_name("i");
        let omap = reindexed.iter().map(|o| ob_of[o]).collect();
        let i_r = FunctorData::new("i_R", self.e_cat.clone(), cat.clone(), omap, mmap)?;
        let mut unit = Vec::with_capacity(sub.num_objects());
        for x in sub.objects() {
            let ix = incl.ob(x);
            let h = e
                .hom(ix, reindexed[ix.0])
                .iter()
                .copied()
                .find(|&h| p.mor(h) == over_empty && e.compose(counit[ix.0], h) == e.id(ix))
                .ok_or_else(|| Error::Construction(format!("no unit of i at `{}`", sub.ob_id(x))))?;
            unit.push(mor_of[&h]);
        }
        Ok(InitialFibre {
            empty,
            cat,
            i,
            i_r,
            counit,
            unit,
        })
    }

    fn analyse(&self) -> Result<Analysis> {
        let (e, a, p) = (self.e(), self.a(), &self.p);
        let (ec, ac) = (&*self.e_cat, &*self.a_cat);
        let fibre_data = match a.initial() {
            Some(_) => Some(self.initial_fibre()?),
            None => None,
        };
        let has_initial_base = match &fibre_data {
            Some(_) => Verdict::Holds,
            None => Verdict::fail(
                WitnessKind::Missing,
                format!("base `{}` has no initial object", ac.name()),
            ),
        };

        let initials: Vec<Option<Ob>> = ac
            .objects()
            .map(|b| e.initial_among(|o| p.ob(o) == b, |m| p.mor(m) == a.id(b)))
            .collect();
        let fibrewise_initials = ac
            .objects()
            .map(|b| {
                let v = match initials[b.0] {
                    Some(_) => Verdict::Holds,
                    None => Verdict::fail(
                        WitnessKind::Missing,
                        format!("fibre over `{}` has no initial object", ac.ob_id(b)),
                    ),
                };
                (ac.ob_id(b).to_string(), v)
            })
            .collect();

        let (p_l, p_left_adjoint_verdict) = self.left_adjoint(&initials)?;

        let mut coproducts = HashMap::new();
        let mut required_coproducts = Vec::new();
        let mut p_preserves_them = Verdict::Holds;
        match (&fibre_data, &p_l) {
            (Some(fd), Some(pl)) => {
                let pairs: Vec<(Ob, Ob)> = ac
                    .objects()
                    .flat_map(|b| fd.cat.objects().map(move |x| (b, x)))
                    .collect();
                let found = par::map(&pairs, |&(b, x)| e.coproduct(pl.ob(b), fd.i.ob(x)));
                for (&(b, x), w) in pairs.iter().zip(found) {
                    let (param, e0) = (ac.ob_id(b).to_string(), fd.cat.ob_id(x).to_string());
                    let Some((w, l1, l2)) = w else {
                        required_coproducts.push(RequiredCoproduct {
                            param: param.clone(),
                            initial_fibre_object: e0.clone(),
                            apex: None,
                            base_iso: None,
                            verdict: Verdict::fail(
                                WitnessKind::Missing,
                                format!("no coproduct of empty_{param} and `{e0}`"),
                            ),
                        });
                        continue;
                    };
                    let preserved = a.is_coproduct(p.ob(w), p.mor(l1), p.mor(l2));
                    if !preserved && p_preserves_them.holds() {
                        p_preserves_them = Verdict::fail(
                            WitnessKind::NoUniversalArrow,
                            format!(
                                "p of `{}` is not a coproduct of `{param}` and the initial object",
                                ec.ob_id(w)
                            ),
                        );
                    }
                    required_coproducts.push(RequiredCoproduct {
                        param,
                        initial_fibre_object: e0,
                        apex: Some(ec.ob_id(w).to_string()),
                        base_iso: preserved.then(|| ac.mor_id(p.mor(l1)).to_string()),
                        verdict: Verdict::Holds,
                    });
                    coproducts.insert((b, x), (w, l1, l2));
                }
            }
            _ => {
                let v = Verdict::fail(
                    WitnessKind::Missing,
                    "coproducts need an initial fibre and a left adjoint p_L",
                );
                p_preserves_them = v.clone();
                required_coproducts.push(RequiredCoproduct {
                    param: String::new(),
                    initial_fibre_object: String::new(),
                    apex: None,
                    base_iso: None,
                    verdict: v,
                });
            }
        }

        let report = PrunedReport {
            has_initial_base,
            fibrewise_initials,
            p_left_adjoint: p_l.clone(),
            p_left_adjoint_verdict,
            required_coproducts,
            p_preserves_them,
            fibrewise_terminals_preserved: self.terminals_preserved(),
        };
        Ok(Analysis {
            report,
            fibre: fibre_data,
            initials,
            p_l,
            coproducts,
        })
    }

    /// `A |-> empty_A`, verified full, faithful and left adjoint to `p`.
    fn left_adjoint(&self, initials: &[Option<Ob>]) -> Result<(Option<FunctorData>, Verdict)> {
        let (e, a, p) = (self.e(), self.a(), &self.p);
        let ac = &*self.a_cat;
        if let Some(b) = ac.objects().find(|b| initials[b.0].is_none()) {
            let v = Verdict::fail(
                WitnessKind::Missing,
                format!("p_L undefined at `{}`: no fibrewise initial object", ac.ob_id(b)),
            );
            return Ok((None, v));
        }
        let omap: Vec<Ob> = initials.iter().map(|o| o.expect("checked")).collect();
        let mut mmap = Vec::with_capacity(ac.num_morphisms());
        for f in ac.morphisms() {
            let (s, t) = (omap[a.src(f).0], omap[a.dst(f).0]);
            let over: Vec<Mor> = e.hom(s, t).iter().copied().filter(|&m| p.mor(m) == f).collect();
            if over.len() != 1 {
                let v = Verdict::Fails(
                    Witness::new(
                        WitnessKind::NoUniversalArrow,
                        format!("p_L at `{}`: morphisms over it between fibre initials", ac.mor_id(f)),
                    )
                    .with_counts(over.len(), 1),
                );
                return Ok((None, v));
            }
            mmap.push(over[0]);
        }
        for b in ac.objects() {
            for c in ac.objects() {
                let (up, down) = (e.hom(omap[b.0], omap[c.0]).len(), a.hom(b, c).len());
                if up != down {
                    let v = Verdict::Fails(
                        Witness::new(
                            WitnessKind::NotFull,
                            format!("p_L on `{}` -> `{}`", ac.ob_id(b), ac.ob_id(c)),
                        )
                        .with_counts(up, down),
                    );
                    return Ok((None, v));
                }
            }
        }
        let pl = FunctorData::new("p_L", self.a_cat.clone(), self.e_cat.clone(), omap, mmap)?;
        let v = check_adjunction(&pl, p, &AdjunctionMode::Homset)?;
        Ok((v.holds().then_some(pl), v))
    }

    /// Fibrewise terminal objects `top_B` with `E(E, top_B) ~ A(pE, B)` via `p`.
    fn terminals_preserved(&self) -> Verdict {
        let (e, a, p) = (self.e(), self.a(), &self.p);
        let (ec, ac) = (&*self.e_cat, &*self.a_cat);
        let mut tops = Vec::new();
        for b in ac.objects() {
            match e.flipped().initial_among(|o| p.ob(o) == b, |m| p.mor(m) == a.id(b)) {
                Some(t) => tops.push(t),
                None => {
                    return Verdict::fail(
                        WitnessKind::Missing,
                        format!("fibre over `{}` has no terminal object", ac.ob_id(b)),
                    )
                }
            }
        }
        for o in ec.objects() {
            for b in ac.objects() {
                let up = e.hom(o, tops[b.0]);
                let down = a.hom(p.ob(o), b);
                let mut img: Vec<Mor> = up.iter().map(|&m| p.mor(m)).collect();
                img.sort_unstable_by_key(|m| m.0);
                img.dedup();
                if up.len() != down.len() || img.len() != up.len() {
                    return Verdict::Fails(
                        Witness::new(
                            WitnessKind::HomSetMismatch,
                            format!("E(`{}`, top_{}) vs A(p, `{}`)", ec.ob_id(o), ac.ob_id(b), ac.ob_id(b)),
                        )
                        .with_counts(up.len(), down.len()),
                    );
                }
            }
        }
        Verdict::Holds
    }

    pub fn check_pruned(&self) -> Result<PrunedReport> {
        Ok(self.analyse()?.report)
    }

    fn pruned_analysis(&self) -> Result<Analysis> {
        let an = self.analyse()?;
        if let Some(w) = an.report.pruned().witness() {
            return Err(Error::Precondition(format!(
                "`{}` is not pruned: {:?}: {}",
                self.fib.name, w.kind, w.detail
            )));
        }
        Ok(an)
    }

    /// `L(f, h) : p_L A + i X -> p_L B + i Y`.
    fn l_mor(&self, an: &Analysis, f: Mor, h: Mor) -> Result<Mor> {
        let (e, a) = (self.e(), self.a());
        let fd = an.fibre.as_ref().expect("pruned");
        let pl = an.p_l.as_ref().expect("pruned");
        let fs = Side::new(&fd.cat, false);
        let (b, x) = (a.src(f), fs.src(h));
        let (c, y) = (a.dst(f), fs.dst(h));
        let src = an.coproducts[&(b, x)];
        let (w2, l1, l2) = an.coproducts[&(c, y)];
        let k1 = e.compose(l1, pl.mor(f));
        let k2 = e.compose(l2, fd.i.mor(h));
        e.copair(src, w2, k1, k2).ok_or_else(|| {
            Error::Construction(format!(
                "no copairing for `{}` + `{}`",
                self.a_cat.mor_id(f),
                fd.cat.mor_id(h)
            ))
        })
    }

    pub fn copair_left_adjoint(&self) -> Result<CopairAdjoint> {
        let an = self.pruned_analysis()?;
        let fd = an.fibre.as_ref().expect("pruned");
        let prod = product(&self.a_cat, &fd.cat)?;
        let mut omap = Vec::with_capacity(prod.cat.num_objects());
        for o in prod.cat.objects() {
            let (b, x) = prod.split_ob(o);
            omap.push(an.coproducts[&(b, x)].0);
        }
        let mut mmap = Vec::with_capacity(prod.cat.num_morphisms());
        for m in prod.cat.morphisms() {
            let (f, h) = prod.split_mor(m);
            mmap.push(self.l_mor(&an, f, h)?);
        }
        let functor = FunctorData::new("copair", prod.cat.clone(), self.e_cat.clone(), omap, mmap)?;
        let right = prod.pairing(&self.p, &fd.i_r)?;
        let adjunction = check_adjunction(&functor, &right, &AdjunctionMode::Homset)?;
        let ac = &*self.a_cat;
        let over_base = match prod.cat.objects().find(|&o| {
            let b = prod.split_ob(o).0;
            ac.iso_between(b, self.p.ob(functor.ob(o))).is_none()
        }) {
            None => Verdict::Holds,
            Some(o) => Verdict::fail(
                WitnessKind::NotCommuting,
                format!(
                    "p of copair(`{}`) is not isomorphic to its parameter",
                    prod.cat.ob_id(o)
                ),
            ),
        };
        Ok(CopairAdjoint {
            product: prod,
            functor,
            right,
            adjunction,
            over_base,
        })
    }

    fn param_monad(&self, an: &Analysis) -> Result<ParamMonadData> {
        let (e, a) = (self.e(), self.a());
        let fd = an.fibre.as_ref().expect("pruned");
        let x = &fd.cat;
        let fs = Side::new(x, false);
        let ac = &*self.a_cat;
        let mut per_object = Vec::with_capacity(ac.num_objects());
        for b in ac.objects() {
            let name = ac.ob_id(b);
            let omap: Vec<Ob> = x.objects().map(|o| fd.i_r.ob(an.coproducts[&(b, o)].0)).collect();
            let mut mmap = Vec::with_capacity(x.num_morphisms());
            for h in x.morphisms() {
                mmap.push(fd.i_r.mor(self.l_mor(an, a.id(b), h)?));
            }
            let t = FunctorData::new(format!("Tp_{name}"), x.clone(), x.clone(), omap.clone(), mmap)?;
            let mut eta = Vec::with_capacity(x.num_objects());
            let mut mu = Vec::with_capacity(x.num_objects());
            for o in x.objects() {
                let (w, l1, l2) = an.coproducts[&(b, o)];
                eta.push(fs.compose(fd.i_r.mor(l2), fd.unit[o.0]));
                let outer = an.coproducts[&(b, omap[o.0])];
                let fold = e
                    .copair(outer, w, l1, fd.counit[w.0])
                    .ok_or_else(|| Error::Construction(format!("no fold for T_p at `{name}`, `{}`", x.ob_id(o))))?;
                mu.push(fd.i_r.mor(fold));
            }
            let eta = NatTransData::new(format!("eta_{name}"), FunctorData::identity(x.clone()), t.clone(), eta)?;
            let mu = NatTransData::new(format!("mu_{name}"), t.after(&t)?, t.clone(), mu)?;
            per_object.push(MonadData::new(format!("Tp_{name}"), t, eta, mu)?);
        }
        let mut per_morphism = Vec::with_capacity(ac.num_morphisms());
        for f in ac.morphisms() {
            let mut comps = Vec::with_capacity(x.num_objects());
            for o in x.objects() {
                comps.push(fd.i_r.mor(self.l_mor(an, f, x.id(o))?));
            }
            per_morphism.push(NatTransData::new(
                format!("Tp_{}", ac.mor_id(f)),
                per_object[a.src(f).0].t.clone(),
                per_object[a.dst(f).0].t.clone(),
                comps,
            )?);
        }
        ParamMonadData::new("T_p", self.a_cat.clone(), x.clone(), per_object, per_morphism)
    }

    pub fn induced_param_monad(&self) -> Result<ParamMonadData> {
        let an = self.pruned_analysis()?;
        self.param_monad(&an)
    }

    pub fn comparison_unit(&self) -> Result<RecognitionResult> {
        let an = self.pruned_analysis()?;
        let t_p = self.param_monad(&an)?;
        let total = build_total(ParamRef::Monad(&t_p), Flavor::Em)?;
        let (e, p) = (self.e(), &self.p);
        let ec = &*self.e_cat;
        let fd = an.fibre.as_ref().expect("pruned");
        let mut omap = Vec::with_capacity(ec.num_objects());
        for o in ec.objects() {
            let b = p.ob(o);
            let y = fd.i_r.ob(o);
            let start = an.initials[b.0].expect("pruned");
            let eps_p = e
                .hom(start, o)
                .iter()
                .copied()
                .find(|&m| p.mor(m) == self.a().id(b))
                .expect("fibre initial");
            let inner = an.coproducts[&(b, y)];
            let m = e
                .copair(inner, o, eps_p, fd.counit[o.0])
                .ok_or_else(|| Error::Construction(format!("no structure map for `{}`", ec.ob_id(o))))?;
            let xi = fd.i_r.mor(m);
            let alg = total.algebra(b, y, xi).ok_or_else(|| {
                Error::Construction(format!("structure map of `{}` is not a T_p-algebra", ec.ob_id(o)))
            })?;
            omap.push(alg);
        }
        let mut mmap = Vec::with_capacity(ec.num_morphisms());
        for m in ec.morphisms() {
            let (s, t) = (e.src(m), e.dst(m));
            let k = total
                .morphism(omap[s.0], omap[t.0], p.mor(m), fd.i_r.mor(m))
                .ok_or_else(|| Error::Construction(format!("`{}` has no algebra image", ec.mor_id(m))))?;
            mmap.push(k);
        }
        let eta_p = FunctorData::new("eta_p", self.e_cat.clone(), total.cat.clone(), omap, mmap)?;
        let down = total.p.after(&eta_p)?;
        let triangle = if down.omap() == p.omap() && down.mmap() == p.mmap() {
            Verdict::Holds
        } else {
            Verdict::fail(WitnessKind::NotCommuting, "p^T . eta_p != p")
        };
        let is_em = check_equivalence(&eta_p);
        let evidence = if is_em.holds() {
            None
        } else {
            let (s, t) = (ec.iso_classes().len(), total.cat.iso_classes().len());
            if s != t {
                Some(
                    Witness::new(
                        WitnessKind::IsoClassCount,
                        format!("{s} iso classes in the total, {t} among the algebras"),
                    )
                    .with_counts(s, t),
                )
            } else {
                is_em.witness().cloned()
            }
        };
        Ok(RecognitionResult {
            dual: self.flip,
            pruned: an.report,
            initial_fibre: an.fibre.expect("pruned"),
            t_p,
            total,
            eta_p,
            triangle,
            is_em,
            evidence,
        })
    }
}

pub fn initial_fibre(fib: &impl AsFibration) -> Result<InitialFibre> {
    Pipeline::primal(fib)?.initial_fibre()
}

pub fn check_pruned(fib: &impl AsFibration) -> Result<PrunedReport> {
    Pipeline::primal(fib)?.check_pruned()
}

pub fn copair_left_adjoint(fib: &impl AsFibration) -> Result<CopairAdjoint> {
    Pipeline::primal(fib)?.copair_left_adjoint()
}

pub fn induced_param_monad(fib: &impl AsFibration) -> Result<ParamMonadData> {
    Pipeline::primal(fib)?.induced_param_monad()
}

pub fn comparison_unit(fib: &impl AsFibration) -> Result<RecognitionResult> {
    Pipeline::primal(fib)?.comparison_unit()
}

/// coEM recognition of an opfibration: the pipeline on opposite categories.
/// `t_p` is then the dual monad of the comonad `S^p`, over the opposite of
/// the base and of the terminal fibre.
pub fn dualize(opfib: &impl AsFibration) -> Result<RecognitionResult> {
    Pipeline::dual(opfib)?.comparison_unit()
}
