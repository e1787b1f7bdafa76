use super::{left_cancellation_witness, FiniteCategory, MorphismId, ObjectId};
use crate::error::{Error, Result};

/// A validated, exact, left cancellative finite category together with
/// precomputed order data.
///
/// Stores the prefix order `a ≤ b`, the unique quotient `x` with `a x = b`,
/// canonical representatives of `≈` classes (least id in the class), and
/// minimal common extensions for every pair.
#[derive(Clone, Debug)]
pub struct Lcsc {
    cat: FiniteCategory,
    n: usize,
    quotient: Vec<Option<MorphismId>>,
    class_rep: Vec<MorphismId>,
    mce: Vec<Vec<MorphismId>>,
    invertible: Vec<bool>,
}

impl Lcsc {
    pub fn new(cat: FiniteCategory) -> Result<Lcsc> {
        if let Some(depth) = cat.truncated() {
            return Err(Error::NonExact { depth });
        }
        cat.ensure_valid()?;
        if let Some(w) = left_cancellation_witness(&cat)? {
            return Err(Error::NotLeftCancellative {
                left: cat.name(w.x).into(),
                a: cat.name(w.a).into(),
                b: cat.name(w.b).into(),
            });
        }
        let n = cat.num_morphisms();
        let mut quotient = vec![None; n * n];
        for a in cat.morphisms() {
            for x in cat.morphisms() {
                if let Some(b) = cat.compose(a, x) {
                    quotient[a.idx() * n + b.idx()] = Some(x);
                }
            }
        }
        let invertible: Vec<bool> = cat
            .morphisms()
            .map(|u| {
                cat.morphisms().any(|v| cat.compose(u, v) == Some(cat.r(u)) && cat.compose(v, u) == Some(cat.s(u)))
            })
            .collect();
        let leq = |a: MorphismId, b: MorphismId| quotient[a.idx() * n + b.idx()].is_some();
        let class_rep: Vec<MorphismId> =
            cat.morphisms().map(|a| cat.morphisms().find(|&b| leq(a, b) && leq(b, a)).unwrap_or(a)).collect();
        let mut mce = vec![Vec::new(); n * n];
        for a in cat.morphisms() {
            for b in cat.morphisms() {
                if cat.range(a) != cat.range(b) {
                    continue;
                }
                let common: Vec<MorphismId> = cat.morphisms().filter(|&x| leq(a, x) && leq(b, x)).collect();
                let mut mins: Vec<MorphismId> = common
                    .iter()
                    .copied()
                    .filter(|&x| !common.iter().any(|&y| leq(y, x) && !leq(x, y)))
                    .map(|x| class_rep[x.idx()])
                    .collect();
                mins.sort();
                mins.dedup();
                mce[a.idx() * n + b.idx()] = mins;
            }
        }
        Ok(Lcsc { cat, n, quotient, class_rep, mce, invertible })
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.cat
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorphismId> + Clone {
        self.cat.morphisms()
    }

    pub fn compose(&self, a: MorphismId, b: MorphismId) -> Option<MorphismId> {
        self.cat.compose(a, b)
    }

    /// `ab`, panicking when the pair is not composable. Callers establish
    /// composability from the surrounding invariants.
    pub fn mul(&self, a: MorphismId, b: MorphismId) -> MorphismId {
        self.cat.compose(a, b).unwrap_or_else(|| panic!("{}*{} is not composable", self.name(a), self.name(b)))
    }

    pub fn r(&self, m: MorphismId) -> MorphismId {
        self.cat.r(m)
    }

    pub fn s(&self, m: MorphismId) -> MorphismId {
        self.cat.s(m)
    }

    pub fn range(&self, m: MorphismId) -> ObjectId {
        self.cat.range(m)
    }

    pub fn source(&self, m: MorphismId) -> ObjectId {
        self.cat.source(m)
    }

    pub fn name(&self, m: MorphismId) -> &str {
        self.cat.name(m)
    }

    pub fn lookup(&self, name: &str) -> Option<MorphismId> {
        self.cat.lookup(name)
    }

    /// `a ≤ b`, i.e. `b ∈ aΛ`.
    pub fn leq(&self, a: MorphismId, b: MorphismId) -> bool {
        self.quotient[a.idx() * self.n + b.idx()].is_some()
    }

    /// The unique `x` with `a x = b`, written `σ^a(b)`.
    pub fn quotient(&self, a: MorphismId, b: MorphismId) -> Option<MorphismId> {
        self.quotient[a.idx() * self.n + b.idx()]
    }

    pub fn approx(&self, a: MorphismId, b: MorphismId) -> bool {
        self.class_rep[a.idx()] == self.class_rep[b.idx()]
    }

    /// Least morphism id in the `≈` class of `m`.
    pub fn class_rep(&self, m: MorphismId) -> MorphismId {
        self.class_rep[m.idx()]
    }

    pub fn is_class_rep(&self, m: MorphismId) -> bool {
        self.class_rep[m.idx()] == m
    }

    pub fn is_invertible(&self, m: MorphismId) -> bool {
        self.invertible[m.idx()]
    }

    /// Canonical representatives of the minimal common extensions of `a`
    /// and `b`; empty when their ranges differ or they never meet.
    pub fn mce(&self, a: MorphismId, b: MorphismId) -> &[MorphismId] {
        &self.mce[a.idx() * self.n + b.idx()]
    }

    /// `a ⋒ b`: the two morphisms have a common extension.
    pub fn meets(&self, a: MorphismId, b: MorphismId) -> bool {
        !self.mce(a, b).is_empty()
    }

    pub fn singly_aligned(&self) -> bool {
        self.mce.iter().all(|m| m.len() <= 1)
    }

    /// Morphisms with range `r(m)` that extend `m`, i.e. `mΛ`.
    pub fn extensions(&self, m: MorphismId) -> impl Iterator<Item = MorphismId> + '_ {
        self.morphisms().filter(move |&x| self.leq(m, x))
    }

    pub fn with_range(&self, o: ObjectId) -> impl Iterator<Item = MorphismId> + '_ {
        self.cat.with_range(o)
    }

    pub fn with_source(&self, o: ObjectId) -> impl Iterator<Item = MorphismId> + '_ {
        self.cat.with_source(o)
    }

    pub fn identities(&self) -> impl Iterator<Item = MorphismId> + '_ {
        self.cat.objects().map(|o| self.cat.identity(o))
    }

    /// One representative per `≈` class, ascending.
    pub fn class_reps(&self) -> impl Iterator<Item = MorphismId> + '_ {
        self.morphisms().filter(|&m| self.is_class_rep(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{CategoryBuilder, CategoryProvider, Graph};

    fn doubly_aligned() -> FiniteCategory {
        CategoryBuilder::new()
            .objects(&["u", "v", "w"])
            .morphism("f", "u", "v")
            .morphism("g", "u", "v")
            .morphism("h1", "w", "u")
            .morphism("h2", "w", "u")
            .morphism("k1", "w", "v")
            .morphism("k2", "w", "v")
            .compose("f", "h1", "k1")
            .compose("g", "h2", "k1")
            .compose("f", "h2", "k2")
            .compose("g", "h1", "k2")
            .build()
            .unwrap()
    }

    #[test]
    fn doubly_aligned_join_has_two_generators() {
        let c = Lcsc::new(doubly_aligned()).unwrap();
        let (f, g) = (c.lookup("f").unwrap(), c.lookup("g").unwrap());
        let names: Vec<&str> = c.mce(f, g).iter().map(|&m| c.name(m)).collect();
        assert_eq!(names, vec!["k1", "k2"]);
        assert!(!c.singly_aligned());
        assert_eq!(c.quotient(f, c.lookup("k2").unwrap()), c.lookup("h2"));
    }

    #[test]
    fn tables_agree_with_generic_provider() {
        let cats = vec![
            doubly_aligned(),
            Graph::new(&["a", "b"], &[("e", "b", "a"), ("f", "b", "a")]).unwrap().path_category(None).unwrap(),
            CategoryBuilder::new().objects(&["o"]).morphism("g", "o", "o").compose("g", "g", "o").build().unwrap(),
        ];
        for cat in cats {
            let l = Lcsc::new(cat.clone()).unwrap();
            for a in cat.morphisms() {
                for b in cat.morphisms() {
                    assert_eq!(l.leq(a, b), CategoryProvider::leq(&cat, &a, &b).unwrap());
                    assert_eq!(l.approx(a, b), CategoryProvider::approx(&cat, &a, &b).unwrap());
                    let generic: Vec<MorphismId> =
                        cat.minimal_common_extensions(&a, &b).unwrap().into_iter().map(|m| l.class_rep(m)).collect();
                    assert_eq!(l.mce(a, b), generic.as_slice());
                    // Every common extension extends some listed generator.
                    for x in cat.morphisms() {
                        if l.leq(a, x) && l.leq(b, x) {
                            assert!(l.mce(a, b).iter().any(|&m| l.leq(m, x)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn group_elements_are_one_class() {
        let cat =
            CategoryBuilder::new().objects(&["o"]).morphism("g", "o", "o").compose("g", "g", "o").build().unwrap();
        let l = Lcsc::new(cat).unwrap();
        let (o, g) = (l.lookup("o").unwrap(), l.lookup("g").unwrap());
        assert!(l.approx(o, g));
        assert_eq!(l.class_rep(g), l.class_rep(o));
        assert!(l.is_invertible(g));
    }

    #[test]
    fn rejects_truncation_and_non_left_cancellative() {
        let g = Graph::new(&["v"], &[("l", "v", "v")]).unwrap();
        assert!(matches!(Lcsc::new(g.path_category(Some(2)).unwrap()), Err(Error::NonExact { depth: 2 })));
        // Idempotent x with x*x = x on one object is not left cancellative.
        let c = CategoryBuilder::new().objects(&["o"]).morphism("x", "o", "o").compose("x", "x", "x").build().unwrap();
        assert!(matches!(Lcsc::new(c), Err(Error::NotLeftCancellative { .. })));
    }
}
