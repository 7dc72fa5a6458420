//! Seeded generators of small finite categories shared by the acceptance
//! target and the property tests.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use fibalg_core::fincat::{FinCategory, FunctorData, Mor, NatTransData, Ob};
use fibalg_core::fixtures::build;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_OBJECTS: usize = 6;
pub const MAX_MORPHISMS: usize = 20;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Relation matrix of a random partial order on `n` points; `i <= j` only
/// for `i <= j` as integers, so the result is antisymmetric by construction.
pub fn random_order(rng: &mut impl Rng, n: usize) -> Vec<Vec<bool>> {
    let density: f64 = rng.gen_range(0.1..0.7);
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
        for cell in row.iter_mut().skip(i + 1) {
            *cell = rng.gen_bool(density);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    le
}

/// A random poset with at most [`MAX_OBJECTS`] objects and
/// [`MAX_MORPHISMS`] morphisms, identities included.
pub fn random_poset(rng: &mut impl Rng) -> FinCategory {
    loop {
        let n = rng.gen_range(1..=MAX_OBJECTS);
        let le = random_order(rng, n);
        let count: usize = le.iter().flatten().filter(|&&b| b).count();
        if count > MAX_MORPHISMS {
            continue;
        }
        let mut names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        names.shuffle(rng);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        return build::poset("rposet", &refs, |a, b| le[a][b]).expect("valid poset");
    }
}

/// Closure of the given maps of `{0..k-1}` under composition, identity first.
pub fn transformation_monoid(k: usize, gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..k).collect();
    let mut elems = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<usize> = (0..k).map(|i| g[x[i]]).collect();
            if !elems.contains(&y) {
                elems.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    elems
}

/// The delooping of a random transformation monoid on at most 3 points with
/// at most [`MAX_MORPHISMS`] elements.
pub fn random_delooping(rng: &mut impl Rng) -> FinCategory {
    loop {
        let k = rng.gen_range(1..=3);
        let ngens = rng.gen_range(0..=2);
        let gens: Vec<Vec<usize>> = (0..ngens)
            .map(|_| (0..k).map(|_| rng.gen_range(0..k)).collect())
            .collect();
        let elems = transformation_monoid(k, &gens);
        if elems.len() > MAX_MORPHISMS {
            continue;
        }
        let index: HashMap<&Vec<usize>, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let names: Vec<String> = (0..elems.len()).map(|i| format!("t{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        // g . f applies f first
        let mult = |g: usize, f: usize| {
            let c: Vec<usize> = (0..k).map(|i| elems[g][elems[f][i]]).collect();
            index[&c]
        };
        return build::delooping("rmonoid", &refs, mult).expect("valid delooping");
    }
}

/// A random poset or delooping, each with probability one half.
pub fn random_category(rng: &mut impl Rng) -> FinCategory {
    if rng.gen_bool(0.5) {
        random_poset(rng)
    } else {
        random_delooping(rng)
    }
}

/// A random monotone endomap of the `n`-chain, as object indices.
pub fn random_monotone(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    v.sort_unstable();
    v
}

/// All monotone endomaps of the `n`-chain.
pub fn all_monotone(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in lo..n {
            cur.push(v);
            go(n, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, &mut Vec::new(), &mut out);
    out
}

/// `alpha : F => G` on the `n`-chain for pointwise `f <= g`.
pub fn chain_transformation(c: &Arc<FinCategory>, f: &[usize], g: &[usize]) -> NatTransData {
    let ff: FunctorData = build::monotone(c, "F", |o| Ob(f[o.0]));
    let gg: FunctorData = build::monotone(c, "G", |o| Ob(g[o.0]));
    build::pointwise("alpha", &ff, &gg)
}

/// The unique arrow `a -> b` of a thin category.
pub fn arrow(c: &FinCategory, a: Ob, b: Ob) -> Option<Mor> {
    c.hom(a, b).first().copied()
}
