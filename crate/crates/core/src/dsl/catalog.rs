//! The bundled example catalog: `.fib` texts and the programmatic
//! constructions they serialize.

use std::sync::Arc;

use super::export::Exporter;
use super::workspace::Workspace;
use crate::algkit::ActionAlgebra;
use crate::fixtures::{build, groups};
use crate::grothfib::Flavor;
use crate::Result;

pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub text: &'static str,
    build: fn() -> Result<Workspace>,
}

impl CatalogEntry {
    /// The workspace built from the programmatic fixtures.
    pub fn build(&self) -> Result<Workspace> {
        (self.build)()
    }
}

fn chain3() -> Result<Workspace> {
    super::export::categories(&[Arc::new(build::chain(3))])
}

fn bool4() -> Result<Workspace> {
    super::export::categories(&[Arc::new(build::bool4())])
}

fn writer_chain3() -> Result<Workspace> {
    let mut ex = Exporter::new();
    let p = ex.param_monad(&build::writer_chain3())?;
    ex.total("writer_em", &p, Flavor::Em)?;
    ex.total("writer_kl", &p, Flavor::Kl)?;
    Ok(ex.finish())
}

fn coreader_bool4() -> Result<Workspace> {
    let mut ex = Exporter::new();
    let p = ex.param_comonad(&build::coreader_bool4())?;
    ex.total("simple", &p, Flavor::CoKl)?;
    ex.total("coreader_coem", &p, Flavor::CoEm)?;
    Ok(ex.finish())
}

fn semiauto_m2() -> Result<Workspace> {
    let mut ex = Exporter::new();
    let p = ex.param_endo(&build::semiauto_m2())?;
    ex.total("semiautomata", &p, Flavor::Alg)?;
    Ok(ex.finish())
}

fn swindle_chain3() -> Result<Workspace> {
    let mut ex = Exporter::new();
    for alpha in build::swindle_chain3() {
        ex.nat(&alpha)?;
    }
    Ok(ex.finish())
}

fn codomain2() -> Result<Workspace> {
    let mut ex = Exporter::new();
    ex.fibration(&build::codomain_chain2())?;
    Ok(ex.finish())
}

fn points_splitepi() -> Result<Workspace> {
    let mut ex = Exporter::new();
    let j = Arc::new(build::split_epi());
    let (_, p) = build::points(&j)?;
    ex.category(&j)?;
    ex.functor(&p)?;
    Ok(ex.finish())
}

/// The bundled actions as `(name, acting, acted on, psi)`.
pub fn bundled_actions() -> Vec<(&'static str, &'static str, &'static str, ActionAlgebra)> {
    let (z2, z3, z4, klein) = (groups::cyclic(2), groups::cyclic(3), groups::cyclic(4), groups::klein());
    let m2 = groups::bm2();
    let neg = |n: usize| move |g: usize, x: usize| if g == 0 { x } else { (n - x) % n };
    let act = |g: &crate::algkit::FinMonoid, h: &crate::algkit::FinMonoid, f: &dyn Fn(usize, usize) -> usize| {
        ActionAlgebra::from_fn(g.clone(), h.clone(), f).expect("bundled action")
    };
    // klein elements e, a, b, c as bitmasks 0, 1, 2, 3
    let swap = |g: usize, x: usize| if g == 0 { x } else { [0, 2, 1, 3][x] };
    let rotate = |g: usize, x: usize| {
        let mut y = x;
        for _ in 0..g {
            y = [0, 2, 3, 1][y];
        }
        y
    };
    vec![
        ("z2_on_z3_inv", "Z2", "Z3", act(&z2, &z3, &neg(3))),
        (
            "z2_on_z3_triv",
            "Z2",
            "Z3",
            ActionAlgebra::trivial(z2.monoid().clone(), z3.monoid().clone()),
        ),
        ("z2_on_z4_inv", "Z2", "Z4", act(&z2, &z4, &neg(4))),
        ("z2_on_klein_swap", "Z2", "Z2xZ2", act(&z2, &klein, &swap)),
        ("z3_on_klein_rot", "Z3", "Z2xZ2", act(&z3, &klein, &rotate)),
        (
            "m2_on_z2_collapse",
            "M2",
            "Z2",
            act(&m2, &z2, &|g: usize, x: usize| if g == 0 { x } else { 0 }),
        ),
    ]
}

fn groups_ws() -> Result<Workspace> {
    let mut ex = Exporter::new();
    for g in groups::all() {
        ex.group(&g)?;
    }
    ex.monoid(&groups::bm2())?;
    for (name, g, h, a) in bundled_actions() {
        ex.action(name, g, h, &a)?;
    }
    Ok(ex.finish())
}

pub static CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "chain3",
        description: "the 3-chain 0 < 1 < 2",
        text: include_str!("../../fixtures/chain3.fib"),
        build: chain3,
    },
    CatalogEntry {
        name: "bool4",
        description: "the Boolean lattice 0 < a, b < 1",
        text: include_str!("../../fixtures/bool4.fib"),
        build: bool4,
    },
    CatalogEntry {
        name: "writer_chain3",
        description: "join-writer parametrized monad on the 3-chain, with its EM and Kleisli totals",
        text: include_str!("../../fixtures/writer_chain3.fib"),
        build: writer_chain3,
    },
    CatalogEntry {
        name: "coreader_bool4",
        description: "coreader parametrized comonad on bool4; its coKleisli total is the simple fibration",
        text: include_str!("../../fixtures/coreader_bool4.fib"),
        build: coreader_bool4,
    },
    CatalogEntry {
        name: "semiauto_m2",
        description: "monoid semiautomata over M2 = {1, z} as algebras of a parametrized endofunctor",
        text: include_str!("../../fixtures/semiauto_m2.fib"),
        build: semiauto_m2,
    },
    CatalogEntry {
        name: "swindle_chain3",
        description: "transformations out of the constant functor at 0 on the 3-chain, inputs for the swindle",
        text: include_str!("../../fixtures/swindle_chain3.fib"),
        build: swindle_chain3,
    },
    CatalogEntry {
        name: "codomain2",
        description: "codomain fibration of the 2-chain in split form (pruned, not EM)",
        text: include_str!("../../fixtures/codomain2.fib"),
        build: codomain2,
    },
    CatalogEntry {
        name: "points_splitepi",
        description: "category of points on the freestanding split epi with evaluation at 1",
        text: include_str!("../../fixtures/points_splitepi.fib"),
        build: points_splitepi,
    },
    CatalogEntry {
        name: "groups",
        description: "small groups and monoids with actions for semidirect products",
        text: include_str!("../../fixtures/groups.fib"),
        build: groups_ws,
    },
];

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}
