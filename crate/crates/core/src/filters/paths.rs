use super::{delta, Filter, FilterSpace, Semilattice};
use crate::category::{Lcsc, MorphismId, ObjectId};
use crate::error::{Error, Result};

/// A nonempty hereditary directed set of morphisms. In a finite category it
/// is the set of initial segments of its largest element, kept here as the
/// canonical representative of that element's `≈` class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathSet {
    pub top: MorphismId,
    pub members: Vec<MorphismId>,
}

impl PathSet {
    /// `[α]`, all initial segments of `α`.
    pub fn initial_segment(l: &Lcsc, alpha: MorphismId) -> PathSet {
        PathSet { top: l.class_rep(alpha), members: l.morphisms().filter(|&b| l.leq(b, alpha)).collect() }
    }

    /// Validates an arbitrary member set and normalizes it.
    pub fn from_members(l: &Lcsc, members: &[MorphismId]) -> Result<PathSet> {
        let mut ms = members.to_vec();
        ms.sort();
        ms.dedup();
        if ms.is_empty() {
            return Err(Error::WellDefinedness("empty path set".into()));
        }
        let hereditary = ms.iter().all(|&a| l.morphisms().all(|b| !l.leq(b, a) || ms.binary_search(&b).is_ok()));
        if !hereditary {
            return Err(Error::WellDefinedness("path set is not hereditary".into()));
        }
        let top = ms
            .iter()
            .copied()
            .find(|&t| ms.iter().all(|&a| l.leq(a, t)))
            .ok_or_else(|| Error::WellDefinedness("path set is not directed".into()))?;
        Ok(PathSet { top: l.class_rep(top), members: ms })
    }

    pub fn contains(&self, m: MorphismId) -> bool {
        self.members.binary_search(&m).is_ok()
    }

    pub fn root(&self, l: &Lcsc) -> ObjectId {
        l.range(self.top)
    }

    pub fn is_subset(&self, other: &PathSet) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }
}

/// The hereditary directed sets of a finite category, its maximal ones, and
/// (once computed) the tight ones.
///
/// Maximality is inclusion between sets. For a path category this picks
/// the paths that admit no further edge at their source end. No sink or
/// source labelling of vertices is consulted.
#[derive(Clone, Debug)]
pub struct PathSpace {
    pub sets: Vec<PathSet>,
    pub maximal: Vec<usize>,
    pub tight: Vec<usize>,
}

impl PathSpace {
    pub fn new(l: &Lcsc) -> PathSpace {
        let sets: Vec<PathSet> = l.class_reps().map(|a| PathSet::initial_segment(l, a)).collect();
        let maximal =
            (0..sets.len()).filter(|&i| !(0..sets.len()).any(|j| j != i && sets[i].is_subset(&sets[j]))).collect();
        PathSpace { sets, maximal, tight: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn index_of(&self, p: &PathSet) -> Option<usize> {
        self.sets.iter().position(|q| q.top == p.top)
    }

    pub fn by_top(&self, l: &Lcsc, top: MorphismId) -> Option<usize> {
        let rep = l.class_rep(top);
        self.sets.iter().position(|q| q.top == rep)
    }

    /// Sets in `M^{X,Y}`: containing all of `x` and none of `y`.
    pub fn basic_open(&self, x: &[MorphismId], y: &[MorphismId]) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| x.iter().all(|&a| self.sets[i].contains(a)) && y.iter().all(|&b| !self.sets[i].contains(b)))
            .collect()
    }
}

/// The path set of a filter satisfying the diagonal-membership condition.
pub fn path_delta(l: &Lcsc, e: &Semilattice, fs: &FilterSpace, k: usize) -> Result<PathSet> {
    if !fs.star[k] {
        return Err(Error::ConditionStarViolated);
    }
    PathSet::from_members(l, &delta(l, e, &fs.filters[k]))
}

/// The filter generated by the diagonals of a path set.
pub fn filter_of(l: &Lcsc, e: &Semilattice, p: &PathSet) -> Result<Filter> {
    let diagonals: Vec<usize> = p
        .members
        .iter()
        .map(|&a| {
            e.index_of(&l.elem(a, a).expect("diagonal"))
                .ok_or_else(|| Error::WellDefinedness(format!("diagonal at {} missing", l.name(a))))
        })
        .collect::<Result<_>>()?;
    let members: Vec<usize> = (0..e.len()).filter(|&f| diagonals.iter().any(|&d| e.leq(d, f))).collect();
    let min = members
        .iter()
        .copied()
        .find(|&m| members.iter().all(|&x| e.leq(m, x)))
        .ok_or_else(|| Error::WellDefinedness("generated filter has no minimum".into()))?;
    Ok(Filter { min, members })
}

/// Every `γ ∈ αΛ` outside `⋃ excluded·Λ` meets some member of `f`.
pub fn is_exhaustive(l: &Lcsc, f: &[MorphismId], alpha: MorphismId, excluded: &[MorphismId]) -> bool {
    l.extensions(alpha).filter(|&g| !excluded.iter().any(|&b| l.leq(b, g))).all(|g| f.iter().any(|&z| l.meets(g, z)))
}

/// `f ∈ FE(α)`: a subset of `r(α)Λ` exhaustive with respect to `α`.
pub fn is_in_fe(l: &Lcsc, f: &[MorphismId], alpha: MorphismId) -> bool {
    f.iter().all(|&z| l.range(z) == l.range(alpha)) && is_exhaustive(l, f, alpha, &[])
}

/// All inclusion-minimal exhaustive subsets of `αΛ \ ⋃ excluded·Λ`, taken
/// one morphism per `≈` class, with at most `size_cap` members.
pub fn minimal_exhaustive_sets(
    l: &Lcsc,
    alpha: MorphismId,
    excluded: &[MorphismId],
    size_cap: usize,
    budget: usize,
) -> Result<Vec<Vec<MorphismId>>> {
    let pool: Vec<MorphismId> =
        l.extensions(alpha).filter(|&g| l.is_class_rep(g) && !excluded.iter().any(|&b| l.leq(b, g))).collect();
    let mut found: Vec<Vec<MorphismId>> = Vec::new();
    let mut visited = 0usize;
    for size in 0..=size_cap.min(pool.len()) {
        let mut cand = Vec::with_capacity(size);
        combos(&pool, size, 0, &mut cand, &mut |c| {
            visited += 1;
            if visited > budget {
                return Err(Error::BudgetExceeded { what: "exhaustive set search".into(), cap: budget });
            }
            let has_smaller = found.iter().any(|f| f.iter().all(|m| c.contains(m)));
            if !has_smaller && is_exhaustive(l, c, alpha, excluded) {
                found.push(c.to_vec());
            }
            Ok(())
        })?;
    }
    Ok(found)
}

fn combos(
    pool: &[MorphismId],
    size: usize,
    start: usize,
    cand: &mut Vec<MorphismId>,
    visit: &mut dyn FnMut(&[MorphismId]) -> Result<()>,
) -> Result<()> {
    if cand.len() == size {
        return visit(cand);
    }
    for i in start..pool.len() {
        cand.push(pool[i]);
        combos(pool, size, i + 1, cand, visit)?;
        cand.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Graph;

    fn fork() -> Lcsc {
        Lcsc::new(
            Graph::new(&["u1", "u2", "v"], &[("e1", "v", "u1"), ("e2", "v", "u2")])
                .unwrap()
                .path_category(None)
                .unwrap(),
        )
        .unwrap()
    }

    fn m(l: &Lcsc, n: &str) -> MorphismId {
        l.lookup(n).unwrap()
    }

    #[test]
    fn fork_exhaustive_sets() {
        let l = fork();
        let (v, e1, e2) = (m(&l, "v"), m(&l, "e1"), m(&l, "e2"));
        assert!(is_exhaustive(&l, &[v], v, &[]));
        assert!(is_exhaustive(&l, &[e1, e2], v, &[]));
        assert!(!is_exhaustive(&l, &[e1], v, &[]));
        assert!(is_exhaustive(&l, &[e2], v, &[e1]));
        let mins = minimal_exhaustive_sets(&l, v, &[], 3, 10_000).unwrap();
        let names: Vec<Vec<&str>> = mins.iter().map(|f| f.iter().map(|&x| l.name(x)).collect()).collect();
        assert_eq!(names, vec![vec!["v"], vec!["e1", "e2"]]);
    }

    #[test]
    fn fork_path_space() {
        let l = fork();
        let ps = PathSpace::new(&l);
        assert_eq!(ps.len(), 5);
        let mut maximal: Vec<&str> = ps.maximal.iter().map(|&i| l.name(ps.sets[i].top)).collect();
        maximal.sort();
        assert_eq!(maximal, vec!["e1", "e2", "u1", "u2"]);
    }

    #[test]
    fn path_set_validation() {
        let l = fork();
        let (v, e1, e2) = (m(&l, "v"), m(&l, "e1"), m(&l, "e2"));
        assert!(PathSet::from_members(&l, &[e1]).is_err());
        assert!(PathSet::from_members(&l, &[v, e1, e2]).is_err());
        assert_eq!(PathSet::from_members(&l, &[v, e1]).unwrap().top, e1);
    }

    #[test]
    fn budget_is_enforced() {
        let l = fork();
        let v = m(&l, "v");
        assert!(matches!(minimal_exhaustive_sets(&l, v, &[], 3, 2), Err(Error::BudgetExceeded { .. })));
    }
}
