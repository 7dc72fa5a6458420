//! Bundled finite groups and monoids.

use crate::algkit::{FinGroup, FinMonoid};

/// `Z_n` with elements `0..n-1`.
pub fn cyclic(n: usize) -> FinGroup {
    let elements = (0..n).map(|i| i.to_string()).collect();
    FinGroup::new(FinMonoid::from_fn(format!("Z{n}"), elements, |a, b| (a + b) % n).expect("cyclic"))
        .expect("cyclic group")
}

/// `Z_2 x Z_2` with elements `e, a, b, c`.
pub fn klein() -> FinGroup {
    let elements = ["e", "a", "b", "c"].map(String::from).to_vec();
    FinGroup::new(FinMonoid::from_fn("Z2xZ2", elements, |a, b| a ^ b).expect("klein")).expect("klein group")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// `S_3`: permutations of `{0,1,2}` written by their images, composed as
/// `(p q)(i) = p(q(i))`.
pub fn s3() -> FinGroup {
    let perms = permutations(3);
    let elements = perms
        .iter()
        .map(|p| p.iter().map(|i| i.to_string()).collect::<String>())
        .collect();
    let mult = |a: usize, b: usize| {
        let comp: Vec<usize> = (0..3).map(|i| perms[a][perms[b][i]]).collect();
        perms.iter().position(|p| *p == comp).expect("closed")
    };
    FinGroup::new(FinMonoid::from_fn("S3", elements, mult).expect("S3")).expect("S3 group")
}

/// The dihedral group of order 8: rotations `r0..r3`, reflections `s0..s3`
/// with `s_i = r_i s_0`.
pub fn d4() -> FinGroup {
    let elements = (0..4)
        .map(|i| format!("r{i}"))
        .chain((0..4).map(|i| format!("s{i}")))
        .collect();
    // (flip, k): r_k s^flip; s r_k = r_{-k} s
    let mult = |a: usize, b: usize| {
        let (fa, ka) = (a / 4, a % 4);
        let (fb, kb) = (b / 4, b % 4);
        let k = if fa == 1 { (ka + 4 - kb) % 4 } else { (ka + kb) % 4 };
        (fa ^ fb) * 4 + k
    };
    FinGroup::new(FinMonoid::from_fn("D4", elements, mult).expect("D4")).expect("D4 group")
}

/// The trivial group.
pub fn trivial() -> FinGroup {
    cyclic(1)
}

/// `{1, z}` with `z z = z`.
pub fn bm2() -> FinMonoid {
    FinMonoid::from_fn("M2", vec!["1".into(), "z".into()], |a, b| a | b).expect("M2")
}

/// Z2, Z3, Z4, Z2xZ2, S3 and D4.
pub fn all() -> Vec<FinGroup> {
    vec![cyclic(2), cyclic(3), cyclic(4), klein(), s3(), d4()]
}
