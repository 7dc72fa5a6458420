use std::sync::Arc;

use crate::fincat::functor::same_cat;
use crate::fincat::{product, product_functor, FunctorData, Mor, NatTransData, Product};
use crate::monadkit::{two_variable, ParamRef};
use crate::report::{Law, LawReport};
use crate::{Error, Result};

use super::total::{Flavor, TotalCategory, TotalObject};

/// A 1-cell `(U, V, delta) : P -> Q` between parametrized structures with
/// `delta_{A,X} : Q_{UA}(VX) -> V(P_A X)`.
#[derive(Debug, Clone)]
pub struct OplaxCell {
    pub name: String,
    pub u: FunctorData,
    pub v: FunctorData,
    /// Natural transformation `Q(U-, V-) => V P(-, -)` on `params x carriers`.
    pub delta: NatTransData,
    pub monad_flavored: bool,
    product: Product,
}

impl OplaxCell {
    /// `components` are indexed by objects of `P.params x P.carriers`.
    pub fn new(
        name: impl Into<String>,
        p: ParamRef<'_>,
        q: ParamRef<'_>,
        u: FunctorData,
        v: FunctorData,
        components: Vec<Mor>,
        monad_flavored: bool,
    ) -> Result<Self> {
        let name = name.into();
        if !same_cat(&u.dom, p.params())
            || !same_cat(&u.cod, q.params())
            || !same_cat(&v.dom, p.carriers())
            || !same_cat(&v.cod, q.carriers())
        {
            return Err(Error::Shape(format!(
                "`{name}`: U and V do not run from `{}` to `{}`",
                p.name(),
                q.name()
            )));
        }
        if monad_flavored && (p.monad().is_none() || q.monad().is_none()) {
            return Err(Error::Shape(format!(
                "`{name}`: monad flavor needs two parametrized monads"
            )));
        }
        let prod = product(p.params(), p.carriers())?;
        let prod_q = product(q.params(), q.carriers())?;
        let uv = product_functor(&u, &v, &prod, &prod_q)?;
        let source = two_variable(q, &prod_q)?.after(&uv)?;
        let target = v.after(&two_variable(p, &prod)?)?;
        let delta = NatTransData::new(format!("delta_{name}"), source, target, components)?;
        Ok(Self {
            name,
            u,
            v,
            delta,
            monad_flavored,
            product: prod,
        })
    }

    /// The cell whose components are the unique morphisms of the required
    /// type; fails when some hom-set is not a singleton.
    pub fn canonical(
        name: impl Into<String>,
        p: ParamRef<'_>,
        q: ParamRef<'_>,
        u: FunctorData,
        v: FunctorData,
        monad_flavored: bool,
    ) -> Result<Self> {
        let name = name.into();
        let prod = product(p.params(), p.carriers())?;
        let y = q.carriers();
        let mut comps = Vec::new();
        for o in prod.cat.objects() {
            let (a, x) = prod.split_ob(o);
            let s = q.functor_at(u.ob(a)).ob(v.ob(x));
            let t = v.ob(p.functor_at(a).ob(x));
            match y.hom(s, t) {
                [m] => comps.push(*m),
                h => {
                    return Err(Error::Construction(format!(
                        "`{name}`: {} candidates for delta at `{}`",
                        h.len(),
                        prod.cat.ob_id(o)
                    )))
                }
            }
        }
        Self::new(name, p, q, u, v, comps, monad_flavored)
    }

    /// `U = id`, `V = id`, `delta = id`.
    pub fn identity(p: ParamRef<'_>) -> Result<Self> {
        let u = FunctorData::identity(p.params().clone());
        let v = FunctorData::identity(p.carriers().clone());
        let prod = product(p.params(), p.carriers())?;
        let two = two_variable(p, &prod)?;
        let comps = prod.cat.objects().map(|o| p.carriers().id(two.ob(o))).collect();
        Self::new(format!("id_{}", p.name()), p, p, u, v, comps, p.monad().is_some())
    }

    pub fn at(&self, a: crate::fincat::Ob, x: crate::fincat::Ob) -> Mor {
        self.delta.at(self.product.ob(a, x))
    }

    /// Functoriality of U and V, naturality of delta and, for the monad
    /// flavor, the unit and multiplication pasting equations.
    pub fn validate(&self, p: ParamRef<'_>, q: ParamRef<'_>) -> LawReport {
        let mut report = self.u.validate();
        report.extend(self.v.validate());
        report.extend(self.delta.validate());
        if !report.is_empty() || !self.monad_flavored {
            return report;
        }
        let (Some(pm), Some(qm)) = (p.monad(), q.monad()) else {
            report.push(Law::OplaxUnit, [self.name.as_str()]);
            return report;
        };
        let (a_cat, x_cat, y) = (p.params(), p.carriers(), q.carriers());
        for a in a_cat.objects() {
            let (tp, tq) = (pm.at(a), qm.at(self.u.ob(a)));
            for x in x_cat.objects() {
                let vx = self.v.ob(x);
                let d = self.at(a, x);
                let ok_unit = y.compose(d, tq.eta.at(vx)) == self.v.mor(tp.eta.at(x));
                if !ok_unit {
                    report.push(Law::OplaxUnit, [a_cat.ob_id(a), x_cat.ob_id(x)]);
                }
                // delta . mu^Q = V mu^P . delta_{T X} . Q(delta)
                let lhs = y.compose(d, tq.mu.at(vx));
                let rhs = y.compose(self.v.mor(tp.mu.at(x)), y.compose(self.at(a, tp.t.ob(x)), tq.t.mor(d)));
                if lhs != rhs {
                    report.push(Law::OplaxMultiplication, [a_cat.ob_id(a), x_cat.ob_id(x)]);
                }
            }
        }
        report
    }

    /// `(U', V', delta') . (U, V, delta) = (U'U, V'V, V'delta . delta'_{U,V})`.
    pub fn then(&self, next: &OplaxCell, p: ParamRef<'_>, r: ParamRef<'_>) -> Result<OplaxCell> {
        let z = r.carriers();
        let comps = self
            .product
            .cat
            .objects()
            .map(|o| {
                let (a, x) = self.product.split_ob(o);
                z.compose(next.v.mor(self.at(a, x)), next.at(self.u.ob(a), self.v.ob(x)))
            })
            .collect();
        OplaxCell::new(
            format!("{}__{}", next.name, self.name),
            p,
            r,
            next.u.after(&self.u)?,
            next.v.after(&self.v)?,
            comps,
            self.monad_flavored && next.monad_flavored,
        )
    }
}

/// `U |x (V, delta)` between the Alg or EM totals of `P` and `Q`:
/// `(A, X, xi) |-> (UA, VX, V xi . delta_{A,X})`, `(f, g) |-> (Uf, Vg)`.
pub fn map_total(
    cell: &OplaxCell,
    p: ParamRef<'_>,
    q: ParamRef<'_>,
    source: &TotalCategory,
    target: &TotalCategory,
) -> Result<FunctorData> {
    if !matches!(source.flavor, Flavor::Alg | Flavor::Em) || source.flavor != target.flavor {
        return Err(Error::Precondition("map_total needs two Alg or two EM totals".into()));
    }
    if source.flavor == Flavor::Em && !cell.monad_flavored {
        return Err(Error::Precondition(format!("`{}` is not a cell of monads", cell.name)));
    }
    cell.validate(p, q).into_result()?;
    let y = q.carriers();
    let mut omap = Vec::with_capacity(source.objects.len());
    for (i, o) in source.objects.iter().enumerate() {
        let xi = y.compose(cell.v.mor(o.xi.expect("algebra")), cell.at(o.param, o.carrier));
        let img = TotalObject {
            param: cell.u.ob(o.param),
            carrier: cell.v.ob(o.carrier),
            xi: Some(xi),
        };
        let t = target.object(&img).ok_or_else(|| {
            Error::Construction(format!(
                "image of `{}` is not an object of `{}`",
                source.cat.ob_id(crate::fincat::Ob(i)),
                target.cat.name()
            ))
        })?;
        omap.push(t);
    }
    let mut mmap = Vec::with_capacity(source.cat.num_morphisms());
    for m in source.cat.morphisms() {
        let (f, g) = source.components[m.0];
        let (s, t) = (omap[source.cat.src(m).0], omap[source.cat.dst(m).0]);
        let img = target
            .morphism(s, t, cell.u.mor(f), cell.v.mor(g))
            .ok_or_else(|| Error::Construction(format!("image of `{}` is not a morphism", source.cat.mor_id(m))))?;
        mmap.push(img);
    }
    FunctorData::new(
        format!("{}__total", cell.name),
        source.cat.clone(),
        Arc::clone(&target.cat),
        omap,
        mmap,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::Ob;
    use crate::fixtures::build::{monotone, writer_bool4, writer_chain3};
    use crate::grothfib::build_total;

    fn embedding(p: &crate::monadkit::ParamMonadData, q: &crate::monadkit::ParamMonadData) -> FunctorData {
        // 0 -> bottom, 1 -> a, 2 -> top
        let masks = [0, 1, 3];
        let (c, b) = (&p.params, &q.params);
        let omap: Vec<Ob> = c.objects().map(|o| Ob(masks[o.0])).collect();
        let mmap = c
            .morphisms()
            .map(|f| b.hom(omap[c.src(f).0], omap[c.dst(f).0])[0])
            .collect();
        FunctorData::new("e", c.clone(), b.clone(), omap, mmap).unwrap()
    }

    #[test]
    fn identity_cell_gives_identity_functor() {
        let p = writer_chain3();
        let r = ParamRef::Monad(&p);
        let cell = OplaxCell::identity(r).unwrap();
        assert!(cell.validate(r, r).is_empty());
        for flavor in [Flavor::Alg, Flavor::Em] {
            let t = build_total(r, flavor).unwrap();
            let f = map_total(&cell, r, r, &t, &t).unwrap();
            assert_eq!(f, FunctorData::identity(t.cat.clone()).with_name(f.name.clone()));
        }
    }

    #[test]
    fn lattice_embedding_maps_algebras() {
        let (p, q) = (writer_chain3(), writer_bool4());
        let (rp, rq) = (ParamRef::Monad(&p), ParamRef::Monad(&q));
        let e = embedding(&p, &q);
        let cell = OplaxCell::canonical("embed", rp, rq, e.clone(), e, true).unwrap();
        assert!(cell.validate(rp, rq).is_empty());
        let (s, t) = (
            build_total(rp, Flavor::Em).unwrap(),
            build_total(rq, Flavor::Em).unwrap(),
        );
        let f = map_total(&cell, rp, rq, &s, &t).unwrap();
        assert!(f.validate().is_empty());
        let y = &q.carriers;
        for o in s.cat.objects() {
            let src = s.payload(o);
            let img = t.payload(f.ob(o));
            assert_eq!(img.param, cell.u.ob(src.param));
            let xi = y.compose(cell.v.mor(src.xi.unwrap()), cell.at(src.param, src.carrier));
            assert_eq!(img.xi, Some(xi));
        }
        for m in s.cat.morphisms() {
            assert_eq!(t.p.mor(f.mor(m)), cell.u.mor(s.p.mor(m)));
        }
    }

    #[test]
    fn composite_cells_compose_functors() {
        let p = writer_chain3();
        let r = ParamRef::Monad(&p);
        let c = p.params.clone();
        let up = monotone(&c, "up", |o| Ob((o.0 + 1).min(2)));
        let top = monotone(&c, "top", |_| Ob(2));
        let c1 = OplaxCell::canonical("up", r, r, up.clone(), up, true).unwrap();
        let c2 = OplaxCell::canonical("top", r, r, top.clone(), top, true).unwrap();
        let t = build_total(r, Flavor::Em).unwrap();
        let f1 = map_total(&c1, r, r, &t, &t).unwrap();
        let f2 = map_total(&c2, r, r, &t, &t).unwrap();
        let both = map_total(&c1.then(&c2, r, r).unwrap(), r, r, &t, &t).unwrap();
        let seq = f2.after(&f1).unwrap();
        assert_eq!((both.omap(), both.mmap()), (seq.omap(), seq.mmap()));
    }

    #[test]
    fn non_monotone_delta_is_rejected() {
        let p = writer_chain3();
        let r = ParamRef::Monad(&p);
        let c = p.params.clone();
        let down = monotone(&c, "down", |_| Ob(0));
        let id = FunctorData::identity(c.clone());
        // delta would need max(0, x) -> max(a, x), which exists, but the
        // unit law fails nowhere; U = const 0 is still a valid cell.
        assert!(OplaxCell::canonical("down", r, r, down, id.clone(), true).is_ok());
        // U = id, V = const 0 needs max(a, 0) -> 0, absent for a > 0
        let zero = monotone(&c, "zero", |_| Ob(0));
        assert!(OplaxCell::canonical("zero", r, r, id, zero, true).is_err());
    }
}
