use std::collections::HashSet;

use serde::Serialize;

use super::hom::{homomorphism_violation, homomorphisms};
use super::monoid::{FinGroup, FinMonoid};
use crate::report::{Law, LawReport, Verdict, Witness, WitnessKind};
use crate::{Error, Result};

/// A monoid `G` acting on a monoid `H` by endomorphisms, with
/// `psi(g2, psi(g1, x)) = psi(g1 g2, x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionAlgebra {
    pub g: FinMonoid,
    pub h: FinMonoid,
    psi: Vec<usize>,
}

impl ActionAlgebra {
    /// `psi[g * |H| + x]`; rejected with a witnessing triple when a law fails.
    pub fn new(g: FinMonoid, h: FinMonoid, psi: Vec<usize>) -> Result<Self> {
        if psi.len() != g.order() * h.order() || psi.iter().any(|&y| y >= h.order()) {
            return Err(Error::Shape(format!(
                "action table of `{}` on `{}` is not {} x {}",
                g.name,
                h.name,
                g.order(),
                h.order()
            )));
        }
        let a = Self { g, h, psi };
        if let Some(v) = a.check().first() {
            return Err(Error::Law(format!(
                "action of `{}` on `{}` violates {:?} at ({})",
                a.g.name,
                a.h.name,
                v.law,
                v.witness.join(", ")
            )));
        }
        Ok(a)
    }

    pub fn from_fn(g: FinMonoid, h: FinMonoid, psi: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = h.order();
        let table = (0..g.order() * n).map(|k| psi(k / n, k % n)).collect();
        Self::new(g, h, table)
    }

    /// `psi(g, h) = h`.
    pub fn trivial(g: FinMonoid, h: FinMonoid) -> Self {
        Self::from_fn(g, h, |_, x| x).expect("trivial action")
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.psi[g * self.h.order() + x]
    }

    pub fn table(&self) -> &[usize] {
        &self.psi
    }

    /// Unit, composition and endomorphism laws.
    pub fn check(&self) -> LawReport {
        let (g, h) = (&self.g, &self.h);
        let el = |m: &FinMonoid, i: usize| m.elements[i].clone();
        let mut report = LawReport::new();
        for x in 0..h.order() {
            if self.act(g.unit, x) != x {
                report.push(Law::ActionUnit, [el(h, x)]);
            }
        }
        for a in 0..g.order() {
            if self.act(a, h.unit) != h.unit {
                report.push(Law::ActionEndomorphism, [el(g, a), el(h, h.unit), el(h, h.unit)]);
            }
            for x in 0..h.order() {
                for y in 0..h.order() {
                    if self.act(a, h.mul(x, y)) != h.mul(self.act(a, x), self.act(a, y)) {
                        report.push(Law::ActionEndomorphism, [el(g, a), el(h, x), el(h, y)]);
                    }
                }
            }
            for b in 0..g.order() {
                for x in 0..h.order() {
                    if self.act(b, self.act(a, x)) != self.act(g.mul(a, b), x) {
                        report.push(Law::ActionComposite, [el(g, a), el(g, b), el(h, x)]);
                    }
                }
            }
        }
        report
    }
}

/// `(g1, x)(g2, y) = (g1 g2, psi(g2, x) y)` on `G x H`, elements `(g,x)`.
pub fn monoid_semidirect(a: &ActionAlgebra) -> Result<FinMonoid> {
    let (g, h) = (&a.g, &a.h);
    let n = h.order();
    let elements = g
        .elements
        .iter()
        .flat_map(|p| h.elements.iter().map(move |x| format!("({p},{x})")))
        .collect();
    FinMonoid::from_fn(format!("{}|x{}", g.name, h.name), elements, |p, q| {
        let (g1, x) = (p / n, p % n);
        let (g2, y) = (q / n, q % n);
        g.mul(g1, g2) * n + h.mul(a.act(g2, x), y)
    })
}

/// The semidirect product of groups.
pub fn semidirect(a: &ActionAlgebra) -> Result<FinGroup> {
    for m in [&a.g, &a.h] {
        FinGroup::new(m.clone())?;
    }
    FinGroup::new(monoid_semidirect(a)?)
}

/// `g |-> (g, e)` and `x |-> (e, x)`.
pub fn canonical_maps(a: &ActionAlgebra) -> (Vec<usize>, Vec<usize>) {
    let n = a.h.order();
    let left = (0..a.g.order()).map(|g| g * n + a.h.unit).collect();
    let right = (0..n).map(|x| a.g.unit * n + x).collect();
    (left, right)
}

/// `psi(g, h) = g^-1 h g`.
pub fn conjugation_rep(g: &FinGroup) -> ActionAlgebra {
    let m = g.monoid().clone();
    ActionAlgebra::from_fn(m.clone(), m, |a, x| g.mul(g.inv(a), g.mul(x, a))).expect("conjugation is an action")
}

/// `f (psi(g, x)) = theta(u g, f x)` for all `g, x`; non-homomorphisms are
/// rejected.
pub fn action_morphism_check(src: &ActionAlgebra, dst: &ActionAlgebra, u: &[usize], f: &[usize]) -> Result<Verdict> {
    for (name, map, from, to) in [("u", u, &src.g, &dst.g), ("f", f, &src.h, &dst.h)] {
        if map.len() != from.order() || map.iter().any(|&y| y >= to.order()) {
            return Err(Error::Shape(format!(
                "`{name}` is not a map {} -> {}",
                from.name, to.name
            )));
        }
        if let Some((a, b)) = homomorphism_violation(from, to, map) {
            return Err(Error::Precondition(format!(
                "`{name}` is not a homomorphism {} -> {}: fails at ({}, {})",
                from.name, to.name, from.elements[a], from.elements[b]
            )));
        }
    }
    for g in 0..src.g.order() {
        for x in 0..src.h.order() {
            if f[src.act(g, x)] != dst.act(u[g], f[x]) {
                return Ok(Verdict::fail(
                    WitnessKind::NotCommuting,
                    format!("({}, {})", src.g.elements[g], src.h.elements[x]),
                ));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Both sides of `Grp(G |x H, G') ~ Act((H, psi), conj(G'))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemidirectAdjunction {
    pub homs_from_semidirect: usize,
    pub action_morphisms: usize,
    pub verdict: Verdict,
}

/// Enumerates both hom-sets and checks that `phi |-> (phi(-, e), phi(e, -))`
/// is a bijection with inverse `(u, f) |-> ((g, x) |-> u(g) f(x))`.
pub fn check_semidirect_adjunction(a: &ActionAlgebra, target: &FinGroup) -> Result<SemidirectAdjunction> {
    let sd = semidirect(a)?;
    let conj = conjugation_rep(target);
    let tm = target.monoid();
    let left = homomorphisms(&sd, tm);
    let us = homomorphisms(&a.g, tm);
    let fs = homomorphisms(&a.h, tm);
    let mut right: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for u in &us {
        for f in &fs {
            if action_morphism_check(a, &conj, u, f)?.holds() {
                right.push((u.clone(), f.clone()));
            }
        }
    }
    let (l, r) = (left.len(), right.len());
    let mismatch = |detail: String| Verdict::Fails(Witness::new(WitnessKind::HomSetMismatch, detail).with_counts(l, r));
    let n = a.h.order();
    let (incl_g, incl_h) = canonical_maps(a);
    let right_set: HashSet<&(Vec<usize>, Vec<usize>)> = right.iter().collect();
    let mut verdict = if l == r {
        Verdict::Holds
    } else {
        mismatch(format!("{l} homomorphisms vs {r} action morphisms"))
    };
    if verdict.holds() {
        let mut images = HashSet::new();
        for phi in &left {
            let u: Vec<usize> = incl_g.iter().map(|&p| phi[p]).collect();
            let f: Vec<usize> = incl_h.iter().map(|&p| phi[p]).collect();
            let back: Vec<usize> = (0..sd.order()).map(|p| tm.mul(u[p / n], f[p % n])).collect();
            if back != *phi || !right_set.contains(&(u.clone(), f.clone())) {
                verdict = mismatch("restriction to the factors is not a correspondence".into());
                break;
            }
            images.insert((u, f));
        }
        if verdict.holds() && images.len() != r {
            verdict = mismatch("restriction is not injective".into());
        }
    }
    Ok(SemidirectAdjunction {
        homs_from_semidirect: l,
        action_morphisms: r,
        verdict,
    })
}

/// `u |x f : (g, x) |-> (u g, f x)` between semidirect products.
pub fn semidirect_map(src: &ActionAlgebra, dst: &ActionAlgebra, u: &[usize], f: &[usize]) -> Vec<usize> {
    let (n, m) = (src.h.order(), dst.h.order());
    (0..src.g.order() * n).map(|p| u[p / n] * m + f[p % n]).collect()
}
