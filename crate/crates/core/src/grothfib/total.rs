use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::fincat::construct::pair_id;
use crate::fincat::{opposite, tabulate, FinCategory, FunctorData, Mor, Ob};
use crate::monadkit::{enumerate_algebras, is_em_algebra, AlgFlavor, AlgebraObject, ParamMonadData, ParamRef};
use crate::par;
use crate::{Error, Result};

use super::fibration::Fibration;

/// Which fibration of algebras a [`TotalCategory`] presents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Alg,
    Em,
    Kl,
    CoKl,
    CoAlg,
    CoEm,
}

impl Flavor {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s.to_ascii_lowercase().as_str() {
            "alg" => Flavor::Alg,
            "em" => Flavor::Em,
            "kl" => Flavor::Kl,
            "cokl" => Flavor::CoKl,
            "coalg" => Flavor::CoAlg,
            "coem" => Flavor::CoEm,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Alg => "alg",
            Flavor::Em => "em",
            Flavor::Kl => "kl",
            Flavor::CoKl => "cokl",
            Flavor::CoAlg => "coalg",
            Flavor::CoEm => "coem",
        }
    }

    /// The flavor of the dual construction on opposite categories.
    pub fn dual(self) -> Self {
        match self {
            Flavor::Alg => Flavor::CoAlg,
            Flavor::Em => Flavor::CoEm,
            Flavor::Kl => Flavor::CoKl,
            Flavor::CoAlg => Flavor::Alg,
            Flavor::CoEm => Flavor::Em,
            Flavor::CoKl => Flavor::Kl,
        }
    }

    pub fn is_co(self) -> bool {
        matches!(self, Flavor::CoKl | Flavor::CoAlg | Flavor::CoEm)
    }

    /// Fibration (reindexing contravariant) or opfibration over the parameters.
    pub fn variance(self) -> Variance {
        match self {
            Flavor::Alg | Flavor::Em | Flavor::CoKl => Variance::Fibration,
            Flavor::Kl | Flavor::CoAlg | Flavor::CoEm => Variance::Opfibration,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variance {
    Fibration,
    Opfibration,
}

impl Variance {
    pub fn flip(self) -> Self {
        match self {
            Variance::Fibration => Variance::Opfibration,
            Variance::Opfibration => Variance::Fibration,
        }
    }
}

/// Payload of a total-category object; `xi` is absent for Kleisli flavors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TotalObject {
    pub param: Ob,
    pub carrier: Ob,
    pub xi: Option<Mor>,
}

impl From<AlgebraObject> for TotalObject {
    fn from(a: AlgebraObject) -> Self {
        Self {
            param: a.param,
            carrier: a.carrier,
            xi: Some(a.xi),
        }
    }
}

/// Total category of a fibration of algebras, with projection `p` and
/// carrier functor `v`.
#[derive(Debug, Clone)]
pub struct TotalCategory {
    pub flavor: Flavor,
    pub params: Arc<FinCategory>,
    pub carriers: Arc<FinCategory>,
    pub cat: Arc<FinCategory>,
    pub p: FunctorData,
    pub v: FunctorData,
    pub objects: Vec<TotalObject>,
    /// `(base component, carrier component)` of each morphism. For Kleisli
    /// flavors the second component is the Kleisli arrow `X -> T_A' Y`.
    pub components: Vec<(Mor, Mor)>,
    /// `T_f` along each parameter morphism (of the dual for co-flavors).
    pub along: Vec<crate::fincat::NatTransData>,
    index: HashMap<(Ob, Ob, Mor, Mor), Mor>,
    object_index: HashMap<TotalObject, Ob>,
}

impl TotalCategory {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        flavor: Flavor,
        params: Arc<FinCategory>,
        carriers: Arc<FinCategory>,
        cat: Arc<FinCategory>,
        p: FunctorData,
        v: FunctorData,
        objects: Vec<TotalObject>,
        components: Vec<(Mor, Mor)>,
    ) -> Self {
        let index = cat
            .morphisms()
            .map(|m| ((cat.src(m), cat.dst(m), components[m.0].0, components[m.0].1), m))
            .collect();
        let object_index = objects.iter().enumerate().map(|(i, &o)| (o, Ob(i))).collect();
        Self {
            flavor,
            params,
            carriers,
            cat,
            p,
            v,
            objects,
            components,
            along: Vec::new(),
            index,
            object_index,
        }
    }

    pub fn object(&self, o: &TotalObject) -> Option<Ob> {
        self.object_index.get(o).copied()
    }

    pub fn algebra(&self, param: Ob, carrier: Ob, xi: Mor) -> Option<Ob> {
        self.object(&TotalObject {
            param,
            carrier,
            xi: Some(xi),
        })
    }

    pub fn morphism(&self, src: Ob, dst: Ob, f: Mor, g: Mor) -> Option<Mor> {
        self.index.get(&(src, dst, f, g)).copied()
    }

    pub fn payload(&self, o: Ob) -> TotalObject {
        self.objects[o.0]
    }

    /// Objects over `a`, in object order.
    pub fn over(&self, a: Ob) -> Vec<Ob> {
        self.cat.objects().filter(|&o| self.objects[o.0].param == a).collect()
    }

    /// The underlying functor `p` as a [`Fibration`], with the split
    /// cleavage as a hint for the Alg and EM flavors.
    pub fn fibration(&self) -> Fibration {
        let mut f = Fibration::new(self.cat.name(), self.p.clone());
        if matches!(self.flavor, Flavor::Alg | Flavor::Em) {
            f.hint = Some(self.split_cleavage());
        }
        f
    }

    /// Structure map of the algebra `e` reindexed along `f : A' -> A`:
    /// `xi . (T_f)_X`.
    pub fn reindexed_xi(&self, f: Mor, e: &TotalObject) -> Option<Mor> {
        let xi = e.xi?;
        Some(self.carriers.compose(xi, self.along[f.0].at(e.carrier)))
    }

    /// `(f, e) |-> (f, id_X) : f^* e -> e`.
    fn split_cleavage(&self) -> HashMap<(Mor, Ob), Mor> {
        let (a, x) = (&self.params, &self.carriers);
        let mut out = HashMap::new();
        for (i, e) in self.objects.iter().enumerate() {
            for f in a.morphisms() {
                if a.dst(f) != e.param {
                    continue;
                }
                let Some(xi2) = self.reindexed_xi(f, e) else { continue };
                let Some(src) = self.algebra(a.src(f), e.carrier, xi2) else {
                    continue;
                };
                if let Some(m) = self.morphism(src, Ob(i), f, x.id(e.carrier)) {
                    out.insert((f, Ob(i)), m);
                }
            }
        }
        out
    }

    /// Object id `A__X__xi` (or `A__X` for Kleisli flavors).
    pub fn object_label(&self, o: Ob) -> &str {
        self.cat.ob_id(o)
    }
}

fn object_id(a: &FinCategory, x: &FinCategory, o: &TotalObject) -> String {
    let base = pair_id(a.ob_id(o.param), x.ob_id(o.carrier));
    match o.xi {
        Some(xi) => pair_id(&base, x.mor_id(xi)),
        None => base,
    }
}

/// Algebra condition for `(f, g) : (A, X, xi) -> (B, Y, theta)`:
/// `theta . (F_f)_Y . F_A g = g . xi`.
fn is_algebra_morphism(p: ParamRef<'_>, s: &TotalObject, t: &TotalObject, f: Mor, g: Mor) -> bool {
    let x = p.carriers();
    let fa = p.functor_at(s.param);
    let lhs = x.compose(t.xi.expect("algebra"), x.compose(p.along(f).at(t.carrier), fa.mor(g)));
    lhs == x.compose(g, s.xi.expect("algebra"))
}

fn build_algebras(p: ParamRef<'_>, flavor: Flavor) -> Result<TotalCategory> {
    let (a, x) = (p.params().clone(), p.carriers().clone());
    let alg_flavor = if flavor == Flavor::Em {
        AlgFlavor::Em
    } else {
        AlgFlavor::Alg
    };
    let objects: Vec<TotalObject> = a
        .objects()
        .flat_map(|pa| enumerate_algebras(p, pa, alg_flavor))
        .map(TotalObject::from)
        .collect();
    let pairs: Vec<(usize, usize)> = (0..objects.len())
        .flat_map(|i| (0..objects.len()).map(move |j| (i, j)))
        .collect();
    let morphisms = par::flat_map(&pairs, |&(i, j)| {
        let (s, t) = (&objects[i], &objects[j]);
        let mut out = Vec::new();
        for &f in a.hom(s.param, t.param) {
            for &g in x.hom(s.carrier, t.carrier) {
                if is_algebra_morphism(p, s, t, f, g) {
                    out.push(((Ob(i), Ob(j), f, g), pair_id(a.mor_id(f), x.mor_id(g)), Ob(i), Ob(j)));
                }
            }
        }
        out
    });
    let t = tabulate(
        &format!("{}__{}", p.name(), flavor.as_str()),
        objects.iter().map(|o| object_id(&a, &x, o)).collect(),
        morphisms,
        |o| (o, o, a.id(objects[o.0].param), x.id(objects[o.0].carrier)),
        |&(_, k, g1, g2), &(i, _, f1, f2)| (i, k, a.compose(g1, f1), x.compose(g2, f2)),
    )?;
    let cat = Arc::new(t.cat);
    let components: Vec<(Mor, Mor)> = t.keys.iter().map(|k| (k.2, k.3)).collect();
    let p_f = FunctorData::new(
        "p",
        cat.clone(),
        a.clone(),
        objects.iter().map(|o| o.param).collect(),
        components.iter().map(|c| c.0).collect(),
    )?;
    let v_f = FunctorData::new(
        "V",
        cat.clone(),
        x.clone(),
        objects.iter().map(|o| o.carrier).collect(),
        components.iter().map(|c| c.1).collect(),
    )?;
    let mut tc = TotalCategory::assemble(flavor, a, x, cat, p_f, v_f, objects, components);
    tc.along = (0..tc.params.num_morphisms())
        .map(|f| p.along(Mor(f)).clone())
        .collect();
    Ok(tc)
}

fn build_kleisli(p: &ParamMonadData) -> Result<TotalCategory> {
    let (a, x) = (p.params.clone(), p.carriers.clone());
    let objects: Vec<TotalObject> = a
        .objects()
        .flat_map(|pa| {
            x.objects().map(move |c| TotalObject {
                param: pa,
                carrier: c,
                xi: None,
            })
        })
        .collect();
    let nx = x.num_objects();
    let ob = |pa: Ob, c: Ob| Ob(pa.0 * nx + c.0);
    let mut morphisms = Vec::new();
    for s in &objects {
        for t in &objects {
            let ta2 = &p.at(t.param).t;
            for &u in a.hom(s.param, t.param) {
                for &k in x.hom(s.carrier, ta2.ob(t.carrier)) {
                    morphisms.push((
                        (u, k, t.carrier),
                        pair_id(&pair_id(a.mor_id(u), x.mor_id(k)), x.ob_id(t.carrier)),
                        ob(s.param, s.carrier),
                        ob(t.param, t.carrier),
                    ));
                }
            }
        }
    }
    let objects_c = objects.clone();
    let t = tabulate(
        &format!("{}__kl", p.name),
        objects.iter().map(|o| object_id(&a, &x, o)).collect(),
        morphisms,
        |o| {
            let e = &objects_c[o.0];
            (a.id(e.param), p.at(e.param).eta.at(e.carrier), e.carrier)
        },
        |&(u2, k2, z), &(u1, k1, y)| {
            // (u2, k2) . (u1, k1) = (u2 u1, mu_Z . T k2 . (T_u2)_Y . k1)
            let a3 = a.dst(u2);
            let t3 = &p.at(a3).t;
            let step = x.compose(t3.mor(k2), x.compose(p.along(u2).at(y), k1));
            (a.compose(u2, u1), x.compose(p.at(a3).mu.at(z), step), z)
        },
    )?;
    let cat = Arc::new(t.cat);
    let components: Vec<(Mor, Mor)> = t.keys.iter().map(|k| (k.0, k.1)).collect();
    let p_f = FunctorData::new(
        "p",
        cat.clone(),
        a.clone(),
        objects.iter().map(|o| o.param).collect(),
        components.iter().map(|c| c.0).collect(),
    )?;
    // V(A, X) = T_A X; V(u, k) = mu_Y . T_A' k . (T_u)_X
    let v_f = FunctorData::new(
        "V",
        cat.clone(),
        x.clone(),
        objects.iter().map(|o| p.at(o.param).t.ob(o.carrier)).collect(),
        t.keys
            .iter()
            .enumerate()
            .map(|(i, &(u, k, y))| {
                let m = Mor(i);
                let src = objects[cat.src(m).0];
                let a2 = a.dst(u);
                let t2 = &p.at(a2).t;
                x.compose(p.at(a2).mu.at(y), x.compose(t2.mor(k), p.along(u).at(src.carrier)))
            })
            .collect(),
    )?;
    let mut tc = TotalCategory::assemble(Flavor::Kl, a, x, cat, p_f, v_f, objects, components);
    tc.along = p.per_morphism.clone();
    Ok(tc)
}

/// Total category of the fibration of algebras of `p` in the given flavor.
///
/// Co-flavors expect `p` to be the dual (over opposite categories) of a
/// parametrized comonad or endofunctor, as stored by
/// [`crate::monadkit::ParamComonadData`]; the result is the opposite of the
/// corresponding total of the dual, over the original categories.
pub fn build_total(p: ParamRef<'_>, flavor: Flavor) -> Result<TotalCategory> {
    let report = p.check();
    if !report.is_empty() {
        return Err(Error::Precondition(format!("`{}` is not lawful: {report}", p.name())));
    }
    if flavor.is_co() {
        let dual = build_total(p, flavor.dual())?;
        return Ok(dual.opposite(flavor));
    }
    match flavor {
        Flavor::Alg => build_algebras(p, flavor),
        Flavor::Em | Flavor::Kl => {
            let pm = p
                .monad()
                .ok_or_else(|| Error::Precondition(format!("{} flavor needs a parametrized monad", flavor.as_str())))?;
            if flavor == Flavor::Em {
                build_algebras(p, flavor)
            } else {
                build_kleisli(pm)
            }
        }
        _ => unreachable!("co-flavors handled above"),
    }
}

impl TotalCategory {
    /// The same total with every category replaced by its opposite.
    pub fn opposite(&self, flavor: Flavor) -> TotalCategory {
        let cat = Arc::new(opposite(&self.cat).with_name(format!(
            "{}__{}",
            self.cat.name().rsplit_once("__").map_or(self.cat.name(), |s| s.0),
            flavor.as_str()
        )));
        let params = Arc::new(opposite(&self.params));
        let carriers = Arc::new(opposite(&self.carriers));
        let p = self.p.op(cat.clone(), params.clone()).with_name("p");
        let v = self.v.op(cat.clone(), carriers.clone()).with_name("V");
        let mut tc = TotalCategory::assemble(
            flavor,
            params,
            carriers,
            cat,
            p,
            v,
            self.objects.clone(),
            self.components.clone(),
        );
        tc.along = self.along.clone();
        tc
    }
}

/// Reindexes the EM algebra `alg` over `A` along `f : A' -> A`.
pub fn reindex(p: &ParamMonadData, f: Mor, alg: &AlgebraObject) -> Result<AlgebraObject> {
    let (a, x) = (&p.params, &p.carriers);
    if a.dst(f) != alg.param {
        return Err(Error::Precondition(format!(
            "`{}` does not end at `{}`",
            a.mor_id(f),
            a.ob_id(alg.param)
        )));
    }
    if !is_em_algebra(p.at(alg.param), alg.carrier, alg.xi) {
        return Err(Error::Precondition(format!(
            "`{}` is not an EM algebra over `{}`",
            x.mor_id(alg.xi),
            a.ob_id(alg.param)
        )));
    }
    let xi = x.compose(alg.xi, p.along(f).at(alg.carrier));
    Ok(AlgebraObject {
        param: a.src(f),
        carrier: alg.carrier,
        xi,
    })
}
