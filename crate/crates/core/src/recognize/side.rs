use crate::fincat::{FinCategory, Mor, Ob};

/// A finite category read either as given or as its opposite, without
/// materializing the opposite.
#[derive(Clone, Copy)]
pub(crate) struct Side<'a> {
    pub c: &'a FinCategory,
    pub flip: bool,
}

impl<'a> Side<'a> {
    pub fn new(c: &'a FinCategory, flip: bool) -> Self {
        Self { c, flip }
    }

    pub fn hom(&self, a: Ob, b: Ob) -> &'a [Mor] {
        if self.flip {
            self.c.hom(b, a)
        } else {
            self.c.hom(a, b)
        }
    }

    /// `g . f` in the view.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        if self.flip {
            self.c.compose(f, g)
        } else {
            self.c.compose(g, f)
        }
    }

    pub fn id(&self, o: Ob) -> Mor {
        self.c.id(o)
    }

    pub fn src(&self, m: Mor) -> Ob {
        if self.flip {
            self.c.dst(m)
        } else {
            self.c.src(m)
        }
    }

    pub fn dst(&self, m: Mor) -> Ob {
        if self.flip {
            self.c.src(m)
        } else {
            self.c.dst(m)
        }
    }

    /// The same category read the other way round.
    pub fn flipped(&self) -> Self {
        Self::new(self.c, !self.flip)
    }

    /// Least-id object with exactly one morphism to every object accepted by
    /// `among`, counting only morphisms accepted by `over`.
    pub fn initial_among(&self, among: impl Fn(Ob) -> bool, over: impl Fn(Mor) -> bool) -> Option<Ob> {
        self.c.objects_by_id().into_iter().filter(|&o| among(o)).find(|&o| {
            self.c
                .objects()
                .filter(|&x| among(x))
                .all(|x| self.hom(o, x).iter().filter(|&&m| over(m)).count() == 1)
        })
    }

    pub fn initial(&self) -> Option<Ob> {
        self.initial_among(|_| true, |_| true)
    }

    /// Whether `(w, l1, l2)` is a coproduct of the domains of `l1` and `l2`.
    pub fn is_coproduct(&self, w: Ob, l1: Mor, l2: Mor) -> bool {
        let (x, y) = (self.src(l1), self.src(l2));
        self.c.objects().all(|z| {
            let hw = self.hom(w, z);
            if hw.len() != self.hom(x, z).len() * self.hom(y, z).len() {
                return false;
            }
            let mut seen: Vec<(Mor, Mor)> = hw.iter().map(|&h| (self.compose(h, l1), self.compose(h, l2))).collect();
            seen.sort_unstable_by_key(|&(a, b)| (a.0, b.0));
            seen.dedup();
            seen.len() == hw.len()
        })
    }

    /// Coproduct `x + y`: least apex id, then legs in hom order.
    pub fn coproduct(&self, x: Ob, y: Ob) -> Option<(Ob, Mor, Mor)> {
        for w in self.c.objects_by_id() {
            for &l1 in self.hom(x, w) {
                for &l2 in self.hom(y, w) {
                    if self.is_coproduct(w, l1, l2) {
                        return Some((w, l1, l2));
                    }
                }
            }
        }
        None
    }

    /// The unique `h : w -> z` with `h . l1 = k1` and `h . l2 = k2`.
    pub fn copair(&self, (w, l1, l2): (Ob, Mor, Mor), z: Ob, k1: Mor, k2: Mor) -> Option<Mor> {
        self.hom(w, z)
            .iter()
            .copied()
            .find(|&h| self.compose(h, l1) == k1 && self.compose(h, l2) == k2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::build::bool4;

    #[test]
    fn flipping_swaps_joins_and_meets() {
        let c = bool4();
        let (a, b) = (Ob(1), Ob(2));
        let plain = Side::new(&c, false);
        let flipped = Side::new(&c, true);
        assert_eq!(plain.coproduct(a, b).unwrap().0, Ob(3));
        assert_eq!(flipped.coproduct(a, b).unwrap().0, Ob(0));
        assert_eq!(plain.initial(), Some(Ob(0)));
        assert_eq!(flipped.initial(), Some(Ob(3)));
        let (w, l1, l2) = flipped.coproduct(a, b).unwrap();
        let k = flipped.copair((w, l1, l2), Ob(0), c.hom(Ob(0), a)[0], c.hom(Ob(0), b)[0]);
        assert_eq!(k, Some(c.id(Ob(0))));
    }
}
