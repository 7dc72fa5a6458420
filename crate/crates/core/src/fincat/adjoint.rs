use std::collections::HashSet;

use super::category::{Mor, Ob};
use super::functor::{same_cat, FunctorData, NatTransData};
use crate::par;
use crate::report::{Verdict, WitnessKind};
use crate::{Error, Result};

/// How [`check_adjunction`] verifies `F -| G`.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum AdjunctionMode {
    /// Given unit `Id => G F` and counit `F G => Id`.
    Triangle { unit: NatTransData, counit: NatTransData },
    /// Search for a natural bijection `D(Fc, d) ~ C(c, Gd)`.
    Homset,
}

fn check_profile(f: &FunctorData, g: &FunctorData) -> Result<()> {
    if !same_cat(&f.cod, &g.dom) || !same_cat(&g.cod, &f.dom) {
        return Err(Error::Shape(format!(
            "`{}` and `{}` are not opposed functors",
            f.name, g.name
        )));
    }
    Ok(())
}

pub fn check_adjunction(f: &FunctorData, g: &FunctorData, mode: &AdjunctionMode) -> Result<Verdict> {
    check_profile(f, g)?;
    match mode {
        AdjunctionMode::Triangle { unit, counit } => triangle(f, g, unit, counit),
        AdjunctionMode::Homset => Ok(match find_unit(f, g)? {
            Ok(_) => Verdict::Holds,
            Err(w) => w,
        }),
    }
}

fn triangle(f: &FunctorData, g: &FunctorData, unit: &NatTransData, counit: &NatTransData) -> Result<Verdict> {
    let (c, d) = (&f.dom, &f.cod);
    let gf = g.after(f)?;
    let fg = f.after(g)?;
    if unit.source != FunctorData::identity(c.clone()) || unit.target != gf {
        return Err(Error::Shape(format!("unit `{}` is not Id => G F", unit.name)));
    }
    if counit.source != fg || counit.target != FunctorData::identity(d.clone()) {
        return Err(Error::Shape(format!("counit `{}` is not F G => Id", counit.name)));
    }
    for (t, what) in [(unit, "unit"), (counit, "counit")] {
        if let Some(v) = t.validate().first() {
            return Ok(Verdict::fail(
                WitnessKind::Naturality,
                format!("{what} not natural at {}", v.witness.join(", ")),
            ));
        }
    }
    for o in c.objects() {
        let lhs = d.compose(counit.at(f.ob(o)), f.mor(unit.at(o)));
        if lhs != d.id(f.ob(o)) {
            return Ok(Verdict::fail(
                WitnessKind::TriangleIdentity,
                format!("eps_F . F eta != id at `{}`", c.ob_id(o)),
            ));
        }
    }
    for o in d.objects() {
        let lhs = c.compose(g.mor(counit.at(o)), unit.at(g.ob(o)));
        if lhs != c.id(g.ob(o)) {
            return Ok(Verdict::fail(
                WitnessKind::TriangleIdentity,
                format!("G eps . eta_G != id at `{}`", d.ob_id(o)),
            ));
        }
    }
    Ok(Verdict::Holds)
}

/// Candidates `eta_c : c -> G F c` inducing bijections `h |-> G h . eta_c`.
fn unit_candidates(f: &FunctorData, g: &FunctorData, o: Ob) -> Vec<Mor> {
    let (c, d) = (&*f.dom, &*f.cod);
    let fc = f.ob(o);
    c.hom(o, g.ob(fc))
        .iter()
        .copied()
        .filter(|&eta| {
            d.objects().all(|x| {
                let src = d.hom(fc, x);
                let dst = c.hom(o, g.ob(x));
                if src.len() != dst.len() {
                    return false;
                }
                let img: HashSet<Mor> = src.iter().map(|&h| c.compose(g.mor(h), eta)).collect();
                img.len() == dst.len()
            })
        })
        .collect()
}

/// Searches a unit of `F -| G` by universal arrows; on failure returns the
/// negative verdict with its witness.
pub fn find_unit(f: &FunctorData, g: &FunctorData) -> Result<std::result::Result<NatTransData, Verdict>> {
    check_profile(f, g)?;
    let (c, d) = (&*f.dom, &*f.cod);
    for o in c.objects() {
        for x in d.objects() {
            let (l, r) = (d.hom(f.ob(o), x).len(), c.hom(o, g.ob(x)).len());
            if l != r {
                return Ok(Err(Verdict::Fails(
                    crate::report::Witness::new(
                        WitnessKind::HomSetMismatch,
                        format!(
                            "|D(F{}, {})| != |C({}, G{})|",
                            c.ob_id(o),
                            d.ob_id(x),
                            c.ob_id(o),
                            d.ob_id(x)
                        ),
                    )
                    .with_counts(l, r),
                )));
            }
        }
    }
    let obs: Vec<Ob> = c.objects().collect();
    let cands = par::map(&obs, |&o| unit_candidates(f, g, o));
    if let Some(i) = cands.iter().position(|v| v.is_empty()) {
        return Ok(Err(Verdict::fail(
            WitnessKind::NoUniversalArrow,
            format!("no universal arrow from `{}`", c.ob_id(Ob(i))),
        )));
    }
    let gf = g.after(f)?;
    let mut chosen: Vec<Mor> = Vec::with_capacity(obs.len());
    fn natural_so_far(c: &crate::fincat::FinCategory, gf: &FunctorData, chosen: &[Mor]) -> bool {
        let k = chosen.len() - 1;
        c.morphisms().all(|m| {
            let (a, b) = (c.src(m).0, c.dst(m).0);
            if a.max(b) != k {
                return true;
            }
            c.compose(gf.mor(m), chosen[a]) == c.compose(chosen[b], m)
        })
    }
    fn go(c: &crate::fincat::FinCategory, gf: &FunctorData, cands: &[Vec<Mor>], chosen: &mut Vec<Mor>) -> bool {
        if chosen.len() == cands.len() {
            return true;
        }
        for &m in &cands[chosen.len()] {
            chosen.push(m);
            if natural_so_far(c, gf, chosen) && go(c, gf, cands, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if !go(c, &gf, &cands, &mut chosen) {
        return Ok(Err(Verdict::fail(
            WitnessKind::Naturality,
            "universal arrows exist but admit no natural choice",
        )));
    }
    let unit = NatTransData::new(
        format!("eta__{}__{}", f.name, g.name),
        FunctorData::identity(f.dom.clone()),
        gf,
        chosen,
    )?;
    Ok(Ok(unit))
}

/// Fullness, faithfulness and essential surjectivity, in that order.
pub fn check_equivalence(f: &FunctorData) -> Verdict {
    let (c, d) = (&*f.dom, &*f.cod);
    for a in c.objects() {
        for b in c.objects() {
            let hom = c.hom(a, b);
            let img: HashSet<Mor> = hom.iter().map(|&m| f.mor(m)).collect();
            let target = d.hom(f.ob(a), f.ob(b));
            if img.len() < target.len() {
                return Verdict::Fails(
                    crate::report::Witness::new(WitnessKind::NotFull, format!("`{}` -> `{}`", c.ob_id(a), c.ob_id(b)))
                        .with_counts(img.len(), target.len()),
                );
            }
            if img.len() < hom.len() {
                return Verdict::Fails(
                    crate::report::Witness::new(
                        WitnessKind::NotFaithful,
                        format!("`{}` -> `{}`", c.ob_id(a), c.ob_id(b)),
                    )
                    .with_counts(hom.len(), img.len()),
                );
            }
        }
    }
    for x in d.objects() {
        if !c.objects().any(|o| d.iso_between(f.ob(o), x).is_some()) {
            return Verdict::Fails(
                crate::report::Witness::new(
                    WitnessKind::NotEssentiallySurjective,
                    format!("`{}` is not isomorphic to any image", d.ob_id(x)),
                )
                .with_counts(c.iso_classes().len(), d.iso_classes().len()),
            );
        }
    }
    Verdict::Holds
}
