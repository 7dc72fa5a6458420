use crate::fincat::{cocone_mediator, colimit, shapes, Cone, FinCategory, Mor, Ob};
use crate::grothfib::{Flavor, TotalCategory};
use crate::monadkit::ParamMonadData;
use crate::{Error, Result};

use super::fibre::FibreView;

/// Binary coproduct `(W, [i1, i2])` in `c`, or `None`.
fn coproduct_in(c: &std::sync::Arc<FinCategory>, x: Ob, y: Ob) -> Result<Option<Cone>> {
    let d = shapes::diagram(&shapes::discrete(2), c, &[x, y], &[])?;
    colimit(&d)
}

/// Copairing `[f, g] : X + Y -> Z` out of the coproduct cocone `sum`.
fn copair(c: &std::sync::Arc<FinCategory>, sum: &Cone, x: Ob, y: Ob, f: Mor, g: Mor) -> Result<Mor> {
    let d = shapes::diagram(&shapes::discrete(2), c, &[x, y], &[])?;
    let target = Cone {
        apex: c.dst(f),
        legs: vec![f, g],
    };
    cocone_mediator(&d, sum, &target).ok_or_else(|| Error::Construction("coproduct without copairing".into()))
}

/// Coproduct of `e1` and `e2` in the EM total of `p`, computed as the
/// coequalizer in the fibre over `A + B` of the reflexive pair
/// `F(T_A X + T_B Y) => F(X + Y)` of free `T_{A+B}`-algebras.
/// `None` when the base coproduct, a carrier coproduct or the fibre
/// coequalizer does not exist.
pub fn linton_coproduct(p: &ParamMonadData, t: &TotalCategory, e1: Ob, e2: Ob) -> Result<Option<Cone>> {
    if t.flavor != Flavor::Em {
        return Err(Error::Precondition("Linton coproducts need an EM total".into()));
    }
    let (a, x) = (&t.params, &t.carriers);
    let (o1, o2) = (t.payload(e1), t.payload(e2));
    let Some(base) = coproduct_in(a, o1.param, o2.param)? else {
        return Ok(None);
    };
    let (c, i1, i2) = (base.apex, base.legs[0], base.legs[1]);
    let m = p.at(c);
    let (m1, m2) = (p.at(o1.param), p.at(o2.param));
    let (xi, theta) = (o1.xi.expect("EM"), o2.xi.expect("EM"));
    let Some(sum0) = coproduct_in(x, o1.carrier, o2.carrier)? else {
        return Ok(None);
    };
    let (tx, ty) = (m1.t.ob(o1.carrier), m2.t.ob(o2.carrier));
    let Some(sum1) = coproduct_in(x, tx, ty)? else {
        return Ok(None);
    };
    let (w0, w1) = (sum0.apex, sum1.apex);
    let (inl, inr) = (sum0.legs[0], sum0.legs[1]);
    // T_C [inl . xi, inr . theta]
    let xi_sum = copair(x, &sum1, tx, ty, x.compose(inl, xi), x.compose(inr, theta))?;
    let map_xi = m.t.mor(xi_sum);
    // mu . T_C [T_C inl . (T_i1)_X, T_C inr . (T_i2)_Y]
    let k = copair(
        x,
        &sum1,
        tx,
        ty,
        x.compose(m.t.mor(inl), p.along(i1).at(o1.carrier)),
        x.compose(m.t.mor(inr), p.along(i2).at(o2.carrier)),
    )?;
    let map_mu = x.compose(m.mu.at(w0), m.t.mor(k));
    let free = |w: Ob| {
        t.algebra(c, m.t.ob(w), m.mu.at(w))
            .ok_or_else(|| Error::Construction(format!("free algebra on `{}` is missing", x.ob_id(w))))
    };
    let (f1, f0) = (free(w1)?, free(w0)?);
    let fibre = FibreView::new(t, c)?;
    let pair = [map_xi, map_mu].map(|g| {
        t.morphism(f1, f0, a.id(c), g)
            .and_then(|mm| fibre.mor(mm))
            .ok_or_else(|| Error::Construction("reflexive pair is not a pair of algebra maps".into()))
    });
    let [u, v] = pair;
    let (u, v) = (u?, v?);
    let d = shapes::diagram(
        &shapes::parallel_pair(),
        &fibre.cat,
        &[fibre.ob(f1).expect("over C"), fibre.ob(f0).expect("over C")],
        &[u, v],
    )?;
    let Some(coeq) = colimit(&d)? else {
        return Ok(None);
    };
    let q_obj = fibre.up(coeq.apex);
    let q = t.components[fibre.up_mor(coeq.legs[1]).0].1;
    let eta = m.eta.at(w0);
    let mut legs = Vec::with_capacity(2);
    for (e, i, inj) in [(e1, i1, inl), (e2, i2, inr)] {
        let g = x.compose(q, x.compose(eta, inj));
        let leg = t
            .morphism(e, q_obj, i, g)
            .ok_or_else(|| Error::Construction(format!("injection of `{}` is not an algebra map", t.cat.ob_id(e))))?;
        legs.push(leg);
    }
    Ok(Some(Cone { apex: q_obj, legs }))
}
