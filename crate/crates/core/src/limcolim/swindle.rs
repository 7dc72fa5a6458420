use std::collections::HashSet;

use serde::Serialize;

use crate::fincat::{colimit, shapes, FinCategory, Mor, NatTransData, Ob};
use crate::report::{Verdict, Witness, WitnessKind};
use crate::{Error, Result};

pub const DEFAULT_SWINDLE_CAP: usize = 64;

/// One link `t_k : P_{k-1} -> P_k` of the chain, with the pushout leg
/// `s_k : G P_{k-1} -> P_k` (`P_{-1}` is the starting carrier).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SwindleStep {
    pub object: Ob,
    pub link: Mor,
    pub leg: Mor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwindleTrace {
    pub chain: Vec<SwindleStep>,
    /// Index of the first invertible link.
    pub stabilized_at: Option<usize>,
    /// `(P, zeta : G P -> P)` on stabilization.
    pub result: Option<(Ob, Mor)>,
    /// `X -> P`, the composite of all links.
    pub unit: Option<Mor>,
}

impl SwindleTrace {
    /// One line per chain link.
    pub fn lines(&self, x: &FinCategory) -> Vec<String> {
        let mut out: Vec<String> = self
            .chain
            .iter()
            .enumerate()
            .map(|(k, s)| format!("P{k} = {}  t{k} = {}", x.ob_id(s.object), x.mor_id(s.link)))
            .collect();
        match (self.stabilized_at, self.result) {
            (Some(k), Some((p, z))) => out.push(format!(
                "stabilized at {k}: carrier {}, structure {}",
                x.ob_id(p),
                x.mor_id(z)
            )),
            _ => out.push("did not stabilize".into()),
        }
        out
    }
}

fn pushout(x: &std::sync::Arc<FinCategory>, f: Mor, g: Mor) -> Result<(Mor, Mor)> {
    let d = shapes::diagram(&shapes::span(), x, &[x.src(f), x.dst(f), x.dst(g)], &[f, g])?;
    let cone = colimit(&d)?
        .ok_or_else(|| Error::Construction(format!("no pushout of `{}` and `{}`", x.mor_id(f), x.mor_id(g))))?;
    Ok((cone.legs[1], cone.legs[2]))
}

/// Free `G`-algebra relative to `alpha : F => G` on the `F`-algebra
/// `xi : F X -> X`, by iterated pushouts:
/// `P_0 = X +_{FX} GX`, `P_{k+1} = P_k +_{G P_{k-1}} G P_k`,
/// stopping at the first invertible link (at most `cap` links after the first).
pub fn swindle_left_adjoint(alpha: &NatTransData, carrier: Ob, xi: Mor, cap: usize) -> Result<SwindleTrace> {
    let (f, g) = (&alpha.source, &alpha.target);
    let x = &f.cod;
    if !f.is_endo() || !g.is_endo() || !crate::fincat::functor::same_cat(&f.dom, &g.dom) {
        return Err(Error::Precondition(
            "the swindle needs two endofunctors of one category".into(),
        ));
    }
    if cap == 0 {
        return Err(Error::Precondition("cap must be at least 1".into()));
    }
    if x.src(xi) != f.ob(carrier) || x.dst(xi) != carrier {
        return Err(Error::Shape(format!(
            "`{}` is not an F-algebra on `{}`",
            x.mor_id(xi),
            x.ob_id(carrier)
        )));
    }
    let mut chain = Vec::new();
    // (s_k, t_k) with s_k : G P_{k-1} -> P_k
    let (mut t, mut s) = pushout(x, xi, alpha.at(carrier))?;
    let mut unit = t;
    chain.push(SwindleStep {
        object: x.dst(t),
        link: t,
        leg: s,
    });
    for k in 0..=cap {
        if let Some(inv) = x.is_iso(t) {
            let p = x.dst(t);
            let zeta = x.compose(s, g.mor(inv));
            return Ok(SwindleTrace {
                chain,
                stabilized_at: Some(k),
                result: Some((p, zeta)),
                unit: Some(unit),
            });
        }
        if k == cap {
            break;
        }
        let (t2, s2) = pushout(x, s, g.mor(t))?;
        t = t2;
        s = s2;
        unit = x.compose(t, unit);
        chain.push(SwindleStep {
            object: x.dst(t),
            link: t,
            leg: s,
        });
    }
    Ok(SwindleTrace {
        chain,
        stabilized_at: None,
        result: None,
        unit: None,
    })
}

/// Checks that `unit : (X, xi) -> alpha^*(P, zeta)` is an `F`-algebra map and
/// that `h |-> h . unit` is a bijection
/// `Hom_G((P, zeta), (Y, theta)) -> Hom_F((X, xi), (Y, theta . alpha_Y))`
/// for every `G`-algebra `(Y, theta)`.
pub fn verify_swindle(alpha: &NatTransData, carrier: Ob, xi: Mor, trace: &SwindleTrace) -> Verdict {
    let (f, g) = (&alpha.source, &alpha.target);
    let x = &f.cod;
    let (Some((p, zeta)), Some(unit)) = (trace.result, trace.unit) else {
        return Verdict::fail(WitnessKind::Missing, "the chain did not stabilize");
    };
    let f_map = |h: Mor, s_xi: Mor, t_xi: Mor| x.compose(h, s_xi) == x.compose(t_xi, f.mor(h));
    let g_map = |h: Mor, s_z: Mor, t_z: Mor| x.compose(h, s_z) == x.compose(t_z, g.mor(h));
    if !f_map(unit, xi, x.compose(zeta, alpha.at(p))) {
        return Verdict::fail(WitnessKind::Law, "unit is not an algebra map");
    }
    for y in x.objects() {
        for &theta in x.hom(g.ob(y), y) {
            let restricted = x.compose(theta, alpha.at(y));
            let lhs: Vec<Mor> = x.hom(p, y).iter().copied().filter(|&h| g_map(h, zeta, theta)).collect();
            let rhs: HashSet<Mor> = x
                .hom(carrier, y)
                .iter()
                .copied()
                .filter(|&h| f_map(h, xi, restricted))
                .collect();
            let image: HashSet<Mor> = lhs.iter().map(|&h| x.compose(h, unit)).collect();
            if image.len() != lhs.len() || image != rhs {
                return Verdict::Fails(
                    Witness::new(
                        WitnessKind::HomSetMismatch,
                        format!("against `{}` with `{}`", x.ob_id(y), x.mor_id(theta)),
                    )
                    .with_counts(lhs.len(), rhs.len()),
                );
            }
        }
    }
    Verdict::Holds
}
