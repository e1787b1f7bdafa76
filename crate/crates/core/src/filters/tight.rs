use super::paths::{filter_of, PathSet, PathSpace};
use super::{FilterSpace, Semilattice};
use crate::category::{Lcsc, MorphismId};
use crate::error::{Error, Result};
use serde::Serialize;
use std::str::FromStr;

/// The independent characterizations of tightness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evaluator {
    /// Closure of the ultrafilters in the filter topology.
    Closure,
    /// Finite covers of the relative ideals `E^{X,Y}`.
    Cover,
    /// Exhaustive sets on hereditary directed sets.
    Exhaustive,
    /// Approximation by maximal hereditary directed sets.
    ETight,
}

impl Evaluator {
    pub const ALL: [Evaluator; 4] = [Evaluator::Closure, Evaluator::Cover, Evaluator::Exhaustive, Evaluator::ETight];

    pub fn name(self) -> &'static str {
        match self {
            Evaluator::Closure => "closure",
            Evaluator::Cover => "cover",
            Evaluator::Exhaustive => "exhaustive",
            Evaluator::ETight => "etight",
        }
    }
}

impl FromStr for Evaluator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Evaluator::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown evaluator {s:?} (closure, cover, exhaustive, etight)")))
    }
}

/// Outcome of the tight filter computation: the agreed set, what each
/// evaluator returned, and whether every search ran without shortcuts.
#[derive(Clone, Debug, Serialize)]
pub struct TightReport {
    /// Indices into the filter space.
    pub tight: Vec<usize>,
    /// Indices into the path space.
    pub tight_paths: Vec<usize>,
    pub evaluations: Vec<(Evaluator, Vec<usize>)>,
    /// False when the cover evaluator had to sample the sets `Y` instead of
    /// enumerating all of them.
    pub cover_search_exhaustive: bool,
}

/// Largest complement size for which the cover evaluator tries every
/// subset `Y`.
const COVER_SUBSET_LIMIT: usize = 14;

/// Runs the requested evaluators, checks that they agree, and records the
/// tight sets on both sides.
pub fn tight_filters(
    l: &Lcsc,
    e: &Semilattice,
    fs: &FilterSpace,
    ps: &mut PathSpace,
    evaluators: &[Evaluator],
    budget: usize,
) -> Result<TightReport> {
    if evaluators.is_empty() {
        return Err(Error::Parse("no tight evaluator selected".into()));
    }
    let mut evaluations = Vec::new();
    let mut cover_search_exhaustive = true;
    let mut path_side: Option<Vec<usize>> = None;
    for &ev in evaluators {
        let result = match ev {
            Evaluator::Closure => by_closure(e, fs),
            Evaluator::Cover => {
                let (r, exact) = by_covers(e, fs);
                cover_search_exhaustive &= exact;
                r
            }
            Evaluator::Exhaustive | Evaluator::ETight => {
                let paths: Vec<usize> = if ev == Evaluator::Exhaustive {
                    let mut out = Vec::new();
                    for i in 0..ps.len() {
                        if pathset_is_tight(l, &ps.sets[i], budget)? {
                            out.push(i);
                        }
                    }
                    out
                } else {
                    (0..ps.len()).filter(|&i| pathset_is_e_tight(l, ps, &ps.sets[i])).collect()
                };
                if let Some(prev) = &path_side {
                    if *prev != paths {
                        return Err(Error::CharacterizationMismatch {
                            what: "tight path sets".into(),
                            detail: format!("{prev:?} vs {paths:?}"),
                        });
                    }
                }
                let mut filters = Vec::new();
                for &i in &paths {
                    let f = filter_of(l, e, &ps.sets[i])?;
                    filters.push(
                        fs.by_min(f.min)
                            .ok_or_else(|| Error::WellDefinedness("path set generates an unknown filter".into()))?,
                    );
                }
                filters.sort();
                path_side = Some(paths);
                filters
            }
        };
        evaluations.push((ev, result));
    }
    let tight = evaluations[0].1.clone();
    for (ev, r) in &evaluations[1..] {
        if *r != tight {
            return Err(Error::CharacterizationMismatch {
                what: "tight filters".into(),
                detail: format!("{} gives {:?}, {} gives {:?}", evaluations[0].0.name(), tight, ev.name(), r),
            });
        }
    }
    for &k in &tight {
        if !fs.star[k] {
            return Err(Error::ConditionStarViolated);
        }
    }
    let tight_paths = match path_side {
        Some(p) => p,
        None => {
            let mut out = Vec::new();
            for &k in &tight {
                let p = super::path_delta(l, e, fs, k)?;
                out.push(ps.index_of(&p).ok_or_else(|| Error::WellDefinedness("unknown path set".into()))?);
            }
            out.sort();
            out
        }
    };
    ps.tight = tight_paths.clone();
    Ok(TightReport { tight, tight_paths, evaluations, cover_search_exhaustive })
}

/// A filter is in the closure of the ultrafilters when its smallest basic
/// neighbourhood `U(η, E \ η)` contains an ultrafilter.
fn by_closure(e: &Semilattice, fs: &FilterSpace) -> Vec<usize> {
    (0..fs.len())
        .filter(|&k| {
            let eta = &fs.filters[k];
            let outside: Vec<usize> = (0..e.len()).filter(|&i| !eta.contains(i)).collect();
            let nbhd = fs.basic_open(&eta.members, &outside);
            nbhd.iter().any(|&u| fs.is_ultra(u))
        })
        .collect()
}

/// A filter fails to be tight when some `x ∈ η` and `Y` disjoint from `η`
/// give a relative ideal `E^{x,Y}` covered by its part outside `η`.
///
/// Only single `x` are needed because `E^{X,Y}` depends on `X` through its
/// meet, which lies in `η`.
fn by_covers(e: &Semilattice, fs: &FilterSpace) -> (Vec<usize>, bool) {
    let mut exact = true;
    let tight = (0..fs.len())
        .filter(|&k| {
            let eta = &fs.filters[k];
            let outside: Vec<usize> = e.nonzero().filter(|&i| !eta.contains(i)).collect();
            let ys: Vec<Vec<usize>> = if outside.len() <= COVER_SUBSET_LIMIT {
                (0u32..(1 << outside.len()))
                    .map(|mask| (0..outside.len()).filter(|&i| mask >> i & 1 == 1).map(|i| outside[i]).collect())
                    .collect()
            } else {
                exact = false;
                let mut v: Vec<Vec<usize>> = vec![vec![], outside.clone()];
                v.extend(outside.iter().map(|&y| vec![y]));
                for (i, &a) in outside.iter().enumerate() {
                    for &b in &outside[i + 1..] {
                        v.push(vec![a, b]);
                    }
                }
                v
            };
            let xs: Vec<Option<usize>> = std::iter::once(None).chain(eta.members.iter().map(|&x| Some(x))).collect();
            !xs.iter().any(|x| {
                let xv: Vec<usize> = x.iter().copied().collect();
                ys.iter().any(|y| {
                    let d = e.constrained(&xv, y);
                    let z: Vec<usize> = d.iter().copied().filter(|&i| !eta.contains(i)).collect();
                    e.is_cover(&z, &d)
                })
            })
        })
        .collect();
    (tight, exact)
}

/// Hereditary directed set tightness through exhaustive sets.
///
/// For each `α ∈ C` the excluded families range over antichains of
/// `≈` classes in `αΛ \ C`; any finite family disjoint from `C` cuts
/// `αΛ` in the same way as such an antichain. The largest candidate
/// exhaustive set avoiding `C` is `A \ C`, so `C` fails exactly when that
/// set is exhaustive for some choice.
pub fn pathset_is_tight(l: &Lcsc, c: &PathSet, budget: usize) -> Result<bool> {
    let mut visited = 0usize;
    for &alpha in &c.members {
        let outside: Vec<MorphismId> = l.extensions(alpha).filter(|&g| l.is_class_rep(g) && !c.contains(g)).collect();
        let mut chosen: Vec<MorphismId> = Vec::new();
        let failed = search_antichains(l, &outside, 0, &mut chosen, &mut visited, budget, &mut |excluded| {
            let region: Vec<MorphismId> =
                l.extensions(alpha).filter(|&g| !excluded.iter().any(|&b| l.leq(b, g))).collect();
            let z: Vec<MorphismId> = region.iter().copied().filter(|&g| !c.contains(g)).collect();
            region.iter().all(|&g| z.iter().any(|&w| l.meets(g, w)))
        })?;
        if failed {
            return Ok(false);
        }
    }
    Ok(true)
}

fn search_antichains(
    l: &Lcsc,
    pool: &[MorphismId],
    start: usize,
    chosen: &mut Vec<MorphismId>,
    visited: &mut usize,
    budget: usize,
    check: &mut dyn FnMut(&[MorphismId]) -> bool,
) -> Result<bool> {
    *visited += 1;
    if *visited > budget {
        return Err(Error::BudgetExceeded { what: "exhaustive tightness search".into(), cap: budget });
    }
    if check(chosen) {
        return Ok(true);
    }
    for i in start..pool.len() {
        let b = pool[i];
        if chosen.iter().any(|&a| l.leq(a, b) || l.leq(b, a)) {
            continue;
        }
        chosen.push(b);
        let hit = search_antichains(l, pool, i + 1, chosen, visited, budget, check)?;
        chosen.pop();
        if hit {
            return Ok(true);
        }
    }
    Ok(false)
}

/// E-tightness with the excluded set taken as the whole complement of `C`,
/// which is the hardest case since the condition only weakens as the
/// excluded set shrinks.
pub fn pathset_is_e_tight(l: &Lcsc, ps: &PathSpace, c: &PathSet) -> bool {
    let f: Vec<MorphismId> = l.morphisms().filter(|&m| !c.contains(m)).collect();
    c.members.iter().all(|&alpha| {
        ps.maximal.iter().any(|&d| {
            let d = &ps.sets[d];
            d.contains(alpha) && f.iter().all(|&x| !d.contains(x))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Graph;
    use crate::semigroup::generate_semigroup;

    #[test]
    fn fork_tight_filters_are_the_ultrafilters() {
        let l = Lcsc::new(
            Graph::new(&["u1", "u2", "v"], &[("e1", "v", "u1"), ("e2", "v", "u2")])
                .unwrap()
                .path_category(None)
                .unwrap(),
        )
        .unwrap();
        let s = generate_semigroup(&l, 1000).unwrap();
        let e = Semilattice::of_semigroup(&l, &s).unwrap();
        let fs = FilterSpace::new(&l, &e).unwrap();
        let mut ps = PathSpace::new(&l);
        let rep = tight_filters(&l, &e, &fs, &mut ps, &Evaluator::ALL, 1 << 20).unwrap();
        assert_eq!(rep.tight, fs.ultra);
        assert!(rep.cover_search_exhaustive);
        let v = e.index_of(&l.elem(l.lookup("v").unwrap(), l.lookup("v").unwrap()).unwrap()).unwrap();
        assert!(!rep.tight.contains(&fs.by_min(v).unwrap()));
    }

    #[test]
    fn evaluator_names_round_trip() {
        for ev in Evaluator::ALL {
            assert_eq!(ev.name().parse::<Evaluator>().unwrap(), ev);
        }
        assert!("bogus".parse::<Evaluator>().is_err());
    }
}
