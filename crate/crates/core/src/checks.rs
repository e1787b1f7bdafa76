//! Differential checks that compare two independent computations of the
//! same object and fail with a witness on the first disagreement.

use crate::category::{Lcsc, MorphismId};
use crate::error::{Error, Result};
use crate::filters::{filter_of, path_delta, FilterSpace, PathSpace, Semilattice};
use crate::groupoid::{act_on_filter, act_on_pathset};
use crate::semigroup::{PartialBijection, Semigroup};
use serde::Serialize;
use std::collections::HashMap;

fn mismatch(what: &str, detail: String) -> Error {
    Error::CharacterizationMismatch { what: what.into(), detail }
}

#[derive(Clone, Debug, Serialize)]
pub struct SemigroupOracle {
    pub elements: usize,
    pub products_checked: usize,
    pub joins_checked: usize,
}

/// Compares products, inverses, joins and the natural order of the shift
/// semigroup with composition, inversion, union and restriction of the
/// partial bijections the elements denote. Distinct elements must denote
/// distinct bijections.
pub fn semigroup_oracle(l: &Lcsc, s: &Semigroup) -> Result<SemigroupOracle> {
    let elems = s.elements();
    let maps: Vec<PartialBijection> = elems.iter().map(|x| l.as_partial_bijection(x)).collect();
    let mut seen: HashMap<&[Option<MorphismId>], usize> = HashMap::new();
    for (i, m) in maps.iter().enumerate() {
        if let Some(j) = seen.insert(m.as_slice(), i) {
            return Err(mismatch(
                "semigroup normal form",
                format!("{} and {} denote the same map", l.display(&elems[j]), l.display(&elems[i])),
            ));
        }
    }
    let mut products = 0;
    let mut joins = 0;
    for (i, a) in elems.iter().enumerate() {
        if l.as_partial_bijection(&l.star(a)) != maps[i].inverse() {
            return Err(mismatch("semigroup inverse", l.display(a)));
        }
        for (j, b) in elems.iter().enumerate() {
            products += 1;
            let ab = l.product(a, b);
            if l.as_partial_bijection(&ab) != maps[i].after(&maps[j]) {
                return Err(mismatch("semigroup product", format!("{} * {}", l.display(a), l.display(b))));
            }
            if l.natural_leq(a, b) != maps[i].is_restriction_of(&maps[j]) {
                return Err(mismatch("natural order", format!("{} <= {}", l.display(a), l.display(b))));
            }
            if l.compatible(a, b) {
                joins += 1;
                let union = maps[i]
                    .union(&maps[j])
                    .ok_or_else(|| mismatch("compatibility", format!("{} and {}", l.display(a), l.display(b))))?;
                if l.as_partial_bijection(&l.join(&[a.clone(), b.clone()])?) != union {
                    return Err(mismatch("semigroup join", format!("{} v {}", l.display(a), l.display(b))));
                }
            }
        }
    }
    Ok(SemigroupOracle { elements: elems.len(), products_checked: products, joins_checked: joins })
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTrip {
    pub filters_checked: usize,
    pub path_sets_checked: usize,
    pub basic_sets_checked: usize,
}

/// Filters with the diagonal-membership condition and hereditary directed
/// sets determine each other, and the correspondence exchanges the two
/// topologies.
pub fn round_trip(l: &Lcsc, e: &Semilattice, fs: &FilterSpace, ps: &PathSpace) -> Result<RoundTrip> {
    let mut filter_to_set = vec![None; fs.len()];
    let mut filters = 0;
    for k in (0..fs.len()).filter(|&k| fs.star[k]) {
        filters += 1;
        let c = path_delta(l, e, fs, k)?;
        let back = filter_of(l, e, &c)?;
        if back.members != fs.filters[k].members {
            return Err(mismatch("filter round trip", l.display(e.element(fs.filters[k].min))));
        }
        filter_to_set[k] =
            Some(ps.index_of(&c).ok_or_else(|| mismatch("filter round trip", "unknown path set".into()))?);
    }
    for (i, c) in ps.sets.iter().enumerate() {
        let f = filter_of(l, e, c)?;
        let k = fs.by_min(f.min).ok_or_else(|| mismatch("path set round trip", l.name(c.top).into()))?;
        if !fs.star[k] || filter_to_set[k] != Some(i) {
            return Err(mismatch("path set round trip", l.name(c.top).into()));
        }
    }
    let set_to_filter: HashMap<usize, usize> =
        filter_to_set.iter().enumerate().filter_map(|(k, i)| i.map(|i| (i, k))).collect();
    let path_open = |image: &[usize]| {
        image.iter().all(|&i| {
            let c = &ps.sets[i];
            let outside: Vec<MorphismId> = l.morphisms().filter(|&m| !c.contains(m)).collect();
            ps.basic_open(&c.members, &outside).iter().all(|j| image.contains(j))
        })
    };
    let filter_open = |image: &[usize]| {
        image.iter().all(|&k| {
            let f = &fs.filters[k];
            let outside: Vec<usize> = (0..e.len()).filter(|&x| !f.contains(x)).collect();
            fs.basic_open(&f.members, &outside).iter().filter(|&&j| fs.star[j]).all(|j| image.contains(j))
        })
    };
    let mut basic = 0;
    for x in (0..e.len()).map(Some).chain([None]) {
        for y in (0..e.len()).map(Some).chain([None]) {
            basic += 1;
            let xs: Vec<usize> = x.into_iter().collect();
            let ys: Vec<usize> = y.into_iter().collect();
            let mut image: Vec<usize> = fs.basic_open(&xs, &ys).into_iter().filter_map(|k| filter_to_set[k]).collect();
            image.sort();
            if !path_open(&image) {
                return Err(mismatch("topology exchange", "image of a basic filter set is not open".into()));
            }
        }
    }
    for a in l.morphisms().map(Some).chain([None]) {
        for b in l.morphisms().map(Some).chain([None]) {
            basic += 1;
            let xs: Vec<MorphismId> = a.into_iter().collect();
            let ys: Vec<MorphismId> = b.into_iter().collect();
            let mut image: Vec<usize> = ps.basic_open(&xs, &ys).into_iter().map(|i| set_to_filter[&i]).collect();
            image.sort();
            if !filter_open(&image) {
                return Err(mismatch("topology exchange", "image of a basic path set is not open".into()));
            }
        }
    }
    Ok(RoundTrip { filters_checked: filters, path_sets_checked: ps.len(), basic_sets_checked: basic })
}

/// `s·Δ_η = Δ_{s·η}` for every element `s` and every filter `η` with the
/// diagonal-membership condition on which `s` is defined.
pub fn equivariance(l: &Lcsc, s: &Semigroup, e: &Semilattice, fs: &FilterSpace) -> Result<usize> {
    let mut checked = 0;
    for x in s.elements().iter().filter(|x| !x.is_zero()) {
        let dom = e
            .index_of(&l.domain_idempotent(x))
            .ok_or_else(|| Error::WellDefinedness("domain idempotent outside the semilattice".into()))?;
        for k in (0..fs.len()).filter(|&k| fs.star[k] && fs.filters[k].contains(dom)) {
            checked += 1;
            let moved = act_on_filter(l, e, fs, x, k)?;
            if !fs.star[moved] {
                return Err(mismatch("equivariance", format!("{} leaves the diagonal filters", l.display(x))));
            }
            let lhs = act_on_pathset(l, x, &path_delta(l, e, fs, k)?)?;
            let rhs = path_delta(l, e, fs, moved)?;
            if lhs != rhs {
                return Err(mismatch(
                    "equivariance",
                    format!("{} on the filter of {}", l.display(x), l.display(e.element(fs.filters[k].min))),
                ));
            }
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Graph;
    use crate::semigroup::generate_semigroup;

    fn lcsc(vs: &[&str], es: &[(&str, &str, &str)]) -> Lcsc {
        Lcsc::new(Graph::new(vs, es).unwrap().path_category(None).unwrap()).unwrap()
    }

    fn run(l: &Lcsc) -> (SemigroupOracle, RoundTrip, usize) {
        let s = generate_semigroup(l, 1 << 16).unwrap();
        let e = Semilattice::of_semigroup(l, &s).unwrap();
        let fs = FilterSpace::new(l, &e).unwrap();
        let ps = PathSpace::new(l);
        (semigroup_oracle(l, &s).unwrap(), round_trip(l, &e, &fs, &ps).unwrap(), equivariance(l, &s, &e, &fs).unwrap())
    }

    #[test]
    fn fork_passes_every_check() {
        let l = lcsc(&["u1", "u2", "v"], &[("e1", "v", "u1"), ("e2", "v", "u2")]);
        let (oracle, rt, pairs) = run(&l);
        assert!(oracle.products_checked >= oracle.elements);
        assert_eq!(rt.path_sets_checked, rt.filters_checked);
        assert!(pairs > 0);
    }

    #[test]
    fn parallel_edges_and_a_chain() {
        run(&lcsc(&["u", "v"], &[("e", "u", "v"), ("f", "u", "v")]));
        let (oracle, _, _) = run(&lcsc(&["a", "b", "c"], &[("x", "a", "b"), ("y", "b", "c")]));
        assert!(oracle.joins_checked > 0);
    }
}
