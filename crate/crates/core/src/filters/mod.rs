//! Filters on the idempotent semilattice, the hereditary directed sets of
//! morphisms that model them, and tightness.

mod paths;
mod tight;

pub use paths::{filter_of, is_exhaustive, is_in_fe, minimal_exhaustive_sets, path_delta, PathSet, PathSpace};
pub use tight::{tight_filters, Evaluator, TightReport};

use crate::category::{Lcsc, MorphismId};
use crate::error::{Error, Result};
use crate::semigroup::{Element, Semigroup};
use std::collections::HashMap;

/// A finite meet semilattice of idempotents with zero, stored as dense
/// meet and order tables.
#[derive(Clone, Debug)]
pub struct Semilattice {
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    meet: Vec<usize>,
    leq: Vec<bool>,
    zero: Option<usize>,
}

impl Semilattice {
    /// Builds the semilattice from a set of idempotents closed under
    /// products. The order is computed twice (as `ef = e` and through the
    /// natural order on shift pairs) and the two must agree.
    pub fn from_idempotents(l: &Lcsc, elems: impl IntoIterator<Item = Element>) -> Result<Semilattice> {
        let mut elements: Vec<Element> = elems.into_iter().collect();
        elements.sort();
        elements.dedup();
        if let Some(bad) = elements.iter().find(|e| !l.is_idempotent(e)) {
            return Err(Error::WellDefinedness(format!("{} is not idempotent", l.display(bad))));
        }
        let index: HashMap<Element, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let n = elements.len();
        let mut meet = vec![0; n * n];
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                let m = l.product(&elements[i], &elements[j]);
                meet[i * n + j] = *index.get(&m).ok_or_else(|| {
                    Error::WellDefinedness(format!("idempotent set is not closed: {}", l.display(&m)))
                })?;
                let by_product = meet[i * n + j] == i;
                if by_product != l.natural_leq(&elements[i], &elements[j]) {
                    return Err(Error::CharacterizationMismatch {
                        what: "idempotent order".into(),
                        detail: format!("{} vs {}", l.display(&elements[i]), l.display(&elements[j])),
                    });
                }
                leq[i * n + j] = by_product;
            }
        }
        let zero = elements.iter().position(Element::is_zero);
        Ok(Semilattice { elements, index, meet, leq, zero })
    }

    pub fn of_semigroup(l: &Lcsc, s: &Semigroup) -> Result<Semilattice> {
        Semilattice::from_idempotents(l, s.idempotents(l).cloned())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn is_zero(&self, i: usize) -> bool {
        self.zero == Some(i)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| !self.is_zero(i))
    }

    /// `ij ≠ 0`.
    pub fn intersects(&self, i: usize, j: usize) -> bool {
        !self.is_zero(self.meet(i, j))
    }

    /// Sorted indices of everything above `i`.
    pub fn upset(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(i, j)).collect()
    }

    /// `E^{X,Y}`: elements below every member of `X` and orthogonal to
    /// every member of `Y`.
    pub fn constrained(&self, x: &[usize], y: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&e| x.iter().all(|&xi| self.leq(e, xi)) && y.iter().all(|&yi| !self.intersects(e, yi)))
            .collect()
    }

    /// `z` is an outer cover of `family`: every nonzero member of `family`
    /// intersects some member of `z`.
    pub fn is_outer_cover(&self, z: &[usize], family: &[usize]) -> bool {
        family.iter().filter(|&&f| !self.is_zero(f)).all(|&f| z.iter().any(|&zi| self.intersects(zi, f)))
    }

    /// An outer cover contained in the family it covers.
    pub fn is_cover(&self, z: &[usize], family: &[usize]) -> bool {
        z.iter().all(|zi| family.contains(zi)) && self.is_outer_cover(z, family)
    }

    /// `z` covers the idempotent `e`: it lies below `e` and covers the set
    /// of elements below `e`.
    pub fn covers_element(&self, z: &[usize], e: usize) -> bool {
        let below: Vec<usize> = (0..self.len()).filter(|&f| self.leq(f, e)).collect();
        self.is_cover(z, &below)
    }

    /// Whether a set is a filter: nonempty, upward closed, closed under
    /// meets and free of zero.
    pub fn is_filter(&self, members: &[usize]) -> bool {
        if members.is_empty() || members.iter().any(|&m| self.is_zero(m)) {
            return false;
        }
        let inside = |k: usize| members.contains(&k);
        members.iter().all(|&a| {
            (0..self.len()).all(|b| !self.leq(a, b) || inside(b)) && members.iter().all(|&b| inside(self.meet(a, b)))
        })
    }
}

/// A filter of a finite semilattice. Every such filter is the up-set of its
/// least element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Filter {
    pub min: usize,
    pub members: Vec<usize>,
}

impl Filter {
    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &Filter) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }
}

/// All filters of a semilattice with their ultrafilters and the
/// diagonal-membership flag.
#[derive(Clone, Debug)]
pub struct FilterSpace {
    pub filters: Vec<Filter>,
    pub ultra: Vec<usize>,
    pub star: Vec<bool>,
    by_min: HashMap<usize, usize>,
}

impl FilterSpace {
    /// Enumerates the filters of `e`, one per nonzero element, and finds
    /// the ultrafilters both as maximal filters and by the criterion that
    /// every element meeting all members is a member. The two must agree.
    pub fn new(l: &Lcsc, e: &Semilattice) -> Result<FilterSpace> {
        let mut filters = Vec::new();
        for i in e.nonzero() {
            let members = e.upset(i);
            if !e.is_filter(&members) {
                return Err(Error::WellDefinedness(format!("up-set of {} is not a filter", l.display(e.element(i)))));
            }
            filters.push(Filter { min: i, members });
        }
        let by_min = filters.iter().enumerate().map(|(k, f)| (f.min, k)).collect();
        let maximal: Vec<usize> = (0..filters.len())
            .filter(|&a| !(0..filters.len()).any(|b| b != a && filters[a].is_subset(&filters[b])))
            .collect();
        let criterion: Vec<usize> = (0..filters.len())
            .filter(|&a| {
                let f = &filters[a];
                (0..e.len()).all(|x| f.contains(x) || f.members.iter().any(|&m| !e.intersects(x, m)))
            })
            .collect();
        if maximal != criterion {
            return Err(Error::CharacterizationMismatch {
                what: "ultrafilters".into(),
                detail: format!("maximal {maximal:?} vs criterion {criterion:?}"),
            });
        }
        let star = filters.iter().map(|f| satisfies_star(l, e, f)).collect();
        Ok(FilterSpace { filters, ultra: maximal, star, by_min })
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    /// Index of the filter whose least element is `min`.
    pub fn by_min(&self, min: usize) -> Option<usize> {
        self.by_min.get(&min).copied()
    }

    /// Index of the filter with exactly these members, if it is one.
    pub fn find(&self, members: &[usize]) -> Option<usize> {
        self.filters.iter().position(|f| f.members == members)
    }

    pub fn is_ultra(&self, k: usize) -> bool {
        self.ultra.contains(&k)
    }

    /// Filters in the basic open set `U(X, Y)`.
    pub fn basic_open(&self, x: &[usize], y: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| {
                let f = &self.filters[k];
                x.iter().all(|&xi| f.contains(xi)) && y.iter().all(|&yi| !f.contains(yi))
            })
            .collect()
    }
}

/// A filter satisfies the diagonal-membership condition when every member
/// has one of its diagonal pairs `(α, α)` in the filter.
pub fn satisfies_star(l: &Lcsc, e: &Semilattice, f: &Filter) -> bool {
    f.members.iter().all(|&m| {
        e.element(m).pairs().iter().any(|p| {
            let d = l.elem(p.alpha, p.alpha).expect("diagonal pair");
            e.index_of(&d).is_some_and(|k| f.contains(k))
        })
    })
}

/// `{α : (α, α) ∈ η}`.
pub fn delta(l: &Lcsc, e: &Semilattice, f: &Filter) -> Vec<MorphismId> {
    l.morphisms()
        .filter(|&a| {
            let d = l.elem(a, a).expect("diagonal pair");
            e.index_of(&d).is_some_and(|k| f.contains(k))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{CategoryBuilder, Graph};
    use crate::semigroup::{generate_join_completion, generate_semigroup};

    fn fork() -> Lcsc {
        Lcsc::new(
            Graph::new(&["u1", "u2", "v"], &[("e1", "v", "u1"), ("e2", "v", "u2")])
                .unwrap()
                .path_category(None)
                .unwrap(),
        )
        .unwrap()
    }

    /// All filters by brute force over subsets.
    fn brute_filters(e: &Semilattice) -> Vec<Vec<usize>> {
        let n = e.len();
        assert!(n <= 16);
        (1u32..(1 << n))
            .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|m| e.is_filter(m))
            .collect()
    }

    #[test]
    fn fork_has_four_ultrafilters() {
        let l = fork();
        let s = generate_semigroup(&l, 1000).unwrap();
        let e = Semilattice::of_semigroup(&l, &s).unwrap();
        let fs = FilterSpace::new(&l, &e).unwrap();
        let mut brute = brute_filters(&e);
        brute.sort();
        let mut ours: Vec<Vec<usize>> = fs.filters.iter().map(|f| f.members.clone()).collect();
        ours.sort();
        assert_eq!(ours, brute);
        let mins: Vec<String> = fs.ultra.iter().map(|&k| l.display(e.element(fs.filters[k].min))).collect();
        assert_eq!(mins.len(), 4, "{mins:?}");
        assert!(fs.star.iter().all(|&b| b));
    }

    #[test]
    fn join_completion_breaks_diagonal_membership() {
        let l = fork();
        let s = generate_semigroup(&l, 1000).unwrap();
        let t = generate_join_completion(&l, &s, 1000).unwrap();
        assert!(t.len() > s.len());
        let e = Semilattice::from_idempotents(&l, t.idempotents(&l).cloned()).unwrap();
        let fs = FilterSpace::new(&l, &e).unwrap();
        let (e1, e2) = (l.lookup("e1").unwrap(), l.lookup("e2").unwrap());
        let j = l.join(&[l.elem(e1, e1).unwrap(), l.elem(e2, e2).unwrap()]).unwrap();
        let k = fs.by_min(e.index_of(&j).unwrap()).unwrap();
        assert!(!fs.star[k]);
    }

    #[test]
    fn covers_follow_the_nonzero_convention() {
        let l = fork();
        let s = generate_semigroup(&l, 1000).unwrap();
        let e = Semilattice::of_semigroup(&l, &s).unwrap();
        assert!(e.is_outer_cover(&[], &[]));
        let v = e.index_of(&l.elem(l.lookup("v").unwrap(), l.lookup("v").unwrap()).unwrap()).unwrap();
        assert!(!e.is_outer_cover(&[], &[v]));
        let d1 = e.index_of(&l.elem(l.lookup("e1").unwrap(), l.lookup("e1").unwrap()).unwrap()).unwrap();
        let d2 = e.index_of(&l.elem(l.lookup("e2").unwrap(), l.lookup("e2").unwrap()).unwrap()).unwrap();
        assert!(!e.covers_element(&[d1], v));
        let below_v: Vec<usize> = (0..e.len()).filter(|&f| e.leq(f, v)).collect();
        assert!(e.is_cover(&[v], &below_v));
        assert!(e.is_cover(&[d1, d2], &below_v));
        assert!(e.covers_element(&[d1, d2], v));
    }

    #[test]
    fn doubly_aligned_semilattice_contains_joins() {
        let c = CategoryBuilder::new()
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
            .unwrap();
        let l = Lcsc::new(c).unwrap();
        let s = generate_semigroup(&l, 1000).unwrap();
        let e = Semilattice::of_semigroup(&l, &s).unwrap();
        assert!(e.elements().iter().any(|x| x.pairs().len() == 2));
        let fs = FilterSpace::new(&l, &e).unwrap();
        // Only the filters generated by the two proper joins miss their
        // diagonals; the second comes from σ^f (g,g) τ^f.
        let failing: Vec<String> =
            (0..fs.len()).filter(|&k| !fs.star[k]).map(|k| l.display(e.element(fs.filters[k].min))).collect();
        assert_eq!(failing, vec!["(h1,h1) v (h2,h2)", "(k1,k1) v (k2,k2)"]);
        let mut brute = brute_filters(&e);
        brute.sort();
        assert_eq!(brute.len(), fs.len());
    }
}
