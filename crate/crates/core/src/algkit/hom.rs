use std::collections::VecDeque;

use super::monoid::FinMonoid;
use crate::par;

/// First pair `(a, b)` with `f(a b) != f(a) f(b)`, or a unit mismatch as
/// `(unit, unit)`.
pub fn homomorphism_violation(src: &FinMonoid, dst: &FinMonoid, f: &[usize]) -> Option<(usize, usize)> {
    if f[src.unit] != dst.unit {
        return Some((src.unit, src.unit));
    }
    let n = src.order();
    for a in 0..n {
        for b in 0..n {
            if f[src.mul(a, b)] != dst.mul(f[a], f[b]) {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn is_homomorphism(src: &FinMonoid, dst: &FinMonoid, f: &[usize]) -> bool {
    f.len() == src.order() && f.iter().all(|&y| y < dst.order()) && homomorphism_violation(src, dst, f).is_none()
}

/// A generating set chosen greedily in element order.
pub fn generators(m: &FinMonoid) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut reached = closure(m, &gens);
    for x in 0..m.order() {
        if !reached[x] {
            gens.push(x);
            reached = closure(m, &gens);
        }
    }
    gens
}

fn closure(m: &FinMonoid, gens: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; m.order()];
    seen[m.unit] = true;
    let mut queue = VecDeque::from([m.unit]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = m.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Extends generator images to a map by right multiplication; `None` when
/// the assignment is inconsistent.
fn extend(src: &FinMonoid, dst: &FinMonoid, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = src.order();
    let mut f = vec![usize::MAX; n];
    f[src.unit] = dst.unit;
    let mut queue = VecDeque::from([src.unit]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = src.mul(x, s);
            let img = dst.mul(f[x], t);
            if f[y] == usize::MAX {
                f[y] = img;
                queue.push_back(y);
            } else if f[y] != img {
                return None;
            }
        }
    }
    homomorphism_violation(src, dst, &f).is_none().then_some(f)
}

fn search(src: &FinMonoid, dst: &FinMonoid, allowed: impl Fn(usize, usize) -> bool + Sync) -> Vec<Vec<usize>> {
    let gens = generators(src);
    if gens.is_empty() {
        return vec![vec![dst.unit; src.order()]];
    }
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..dst.order()).filter(|&t| allowed(g, t)).collect())
        .collect();
    // parallel over the image of the first generator
    let per_first = par::map(&cands[0], |&t0| {
        let mut out = Vec::new();
        let mut images = vec![t0];
        fn go(
            src: &FinMonoid,
            dst: &FinMonoid,
            gens: &[usize],
            cands: &[Vec<usize>],
            images: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if images.len() == gens.len() {
                if let Some(f) = extend(src, dst, gens, images) {
                    out.push(f);
                }
                return;
            }
            for &t in &cands[images.len()] {
                images.push(t);
                go(src, dst, gens, cands, images, out);
                images.pop();
            }
        }
        go(src, dst, &gens, &cands, &mut images, &mut out);
        out
    });
    let mut all: Vec<Vec<usize>> = per_first.into_iter().flatten().collect();
    all.sort();
    all.dedup();
    all
}

/// Every monoid homomorphism `src -> dst`, as index maps, sorted.
pub fn homomorphisms(src: &FinMonoid, dst: &FinMonoid) -> Vec<Vec<usize>> {
    search(src, dst, |_, _| true)
}

/// An isomorphism `a -> b`, pruned by unit and power profiles.
pub fn find_isomorphism(a: &FinMonoid, b: &FinMonoid) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let mut pa: Vec<(usize, usize)> = (0..a.order()).map(|x| a.power_profile(x)).collect();
    let mut pb: Vec<(usize, usize)> = (0..b.order()).map(|x| b.power_profile(x)).collect();
    let (prof_a, prof_b) = (pa.clone(), pb.clone());
    pa.sort_unstable();
    pb.sort_unstable();
    if pa != pb {
        return None;
    }
    search(a, b, |g, t| prof_a[g] == prof_b[t]).into_iter().find(|f| {
        let mut seen = vec![false; b.order()];
        f.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::groups;

    /// Brute force over all maps.
    fn all_maps(src: &FinMonoid, dst: &FinMonoid) -> Vec<Vec<usize>> {
        let (n, m) = (src.order(), dst.order());
        let mut out = Vec::new();
        let total = m.pow(n as u32);
        for mut code in 0..total {
            let f: Vec<usize> = (0..n)
                .map(|_| {
                    let d = code % m;
                    code /= m;
                    d
                })
                .collect();
            if is_homomorphism(src, dst, &f) {
                out.push(f);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn generator_search_matches_brute_force() {
        let small = [
            groups::cyclic(2),
            groups::cyclic(3),
            groups::cyclic(4),
            groups::klein(),
            groups::s3(),
        ];
        for a in &small {
            for b in &small {
                assert_eq!(homomorphisms(a, b), all_maps(a, b), "{} -> {}", a.name, b.name);
            }
        }
        let m = groups::bm2();
        assert_eq!(homomorphisms(&m, &m), all_maps(&m, &m));
    }

    #[test]
    fn known_hom_counts() {
        // |Hom(Z_m, Z_n)| = gcd(m, n); |Hom(S3, Z2)| = 2; |End(Klein)| = 16
        assert_eq!(homomorphisms(&groups::cyclic(4), &groups::cyclic(2)).len(), 2);
        assert_eq!(homomorphisms(&groups::cyclic(3), &groups::cyclic(4)).len(), 1);
        assert_eq!(homomorphisms(&groups::s3(), &groups::cyclic(2)).len(), 2);
        assert_eq!(homomorphisms(&groups::klein(), &groups::klein()).len(), 16);
        assert_eq!(homomorphisms(&groups::d4(), &groups::cyclic(2)).len(), 4);
    }

    #[test]
    fn isomorphism_search() {
        assert!(find_isomorphism(&groups::cyclic(4), &groups::klein()).is_none());
        let z2z2 = groups::cyclic(2).direct_product(&groups::cyclic(2)).unwrap();
        let f = find_isomorphism(&z2z2, &groups::klein()).unwrap();
        assert!(is_homomorphism(&z2z2, &groups::klein(), &f));
        assert!(find_isomorphism(&groups::s3(), &groups::cyclic(6)).is_none());
        assert!(find_isomorphism(&groups::d4(), &groups::d4()).is_some());
    }
}
