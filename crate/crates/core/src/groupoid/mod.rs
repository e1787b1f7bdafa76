//! Finite étale groupoids: the germ groupoid of the shift semigroup acting
//! on tight filters (and on tight path sets), the triple groupoid built
//! directly from the category, isomorphism certificates between them, and
//! the Hausdorff, effectiveness and minimality verdicts.

mod germs;
mod spielberg;
mod verdicts;

pub use germs::{
    act_on_filter, act_on_pathset, canonical_alpha, certify_filters_to_paths, check_germ_relation,
    germ_groupoid_on_filters, germ_groupoid_on_paths, Germ, GermGroupoid,
};
pub use spielberg::{certify_triples_to_germs, spielberg_groupoid, Triple, TripleGroupoid};
pub use verdicts::{
    effective_condition_witness, hausdorff_verdict, interior_isotropy_witness, minimal_condition_witness,
    non_dense_orbit_witness, simplicity_verdict, GateStatus, HausdorffRoute, HausdorffVerdict, SimplicityVerdict,
};

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::HashMap;

/// A finite groupoid with a chosen basis of open bisections.
///
/// Arrows and units are dense indices; `unit_arrow[u]` is the identity
/// arrow at unit `u`. The product `gh` is defined when `source(g) = range(h)`.
#[derive(Clone, Debug, Default)]
pub struct FiniteGroupoid {
    pub unit_labels: Vec<String>,
    pub arrow_labels: Vec<String>,
    pub source: Vec<usize>,
    pub range: Vec<usize>,
    pub unit_arrow: Vec<usize>,
    pub inverse: Vec<usize>,
    product: HashMap<(usize, usize), usize>,
    /// Sorted arrow sets.
    pub basis: Vec<Vec<usize>>,
}

/// A correspondence between two finite groupoids that has been checked
/// arrow by arrow.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub units: usize,
    pub arrows: usize,
    pub composable_pairs: usize,
    /// `(left label, right label)` for every arrow.
    pub correspondence: Vec<(String, String)>,
}

impl FiniteGroupoid {
    pub fn new(unit_labels: Vec<String>) -> Self {
        FiniteGroupoid { unit_labels, ..Default::default() }
    }

    pub fn num_units(&self) -> usize {
        self.unit_labels.len()
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    pub(crate) fn push_arrow(&mut self, label: String, source: usize, range: usize) -> usize {
        self.arrow_labels.push(label);
        self.source.push(source);
        self.range.push(range);
        self.source.len() - 1
    }

    pub(crate) fn set_product(&mut self, g: usize, h: usize, gh: usize) {
        self.product.insert((g, h), gh);
    }

    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        self.product.get(&(g, h)).copied()
    }

    pub fn is_unit_arrow(&self, g: usize) -> bool {
        self.unit_arrow[self.source[g]] == g
    }

    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len())
            .flat_map(move |g| (0..self.len()).filter(move |&h| self.source[g] == self.range[h]).map(move |h| (g, h)))
    }

    /// Checks endpoints, units, inverses, associativity and that every
    /// basis set is a bisection, and that the basis covers every arrow.
    pub fn check_axioms(&self) -> Result<()> {
        let fail = |m: String| Err(Error::WellDefinedness(m));
        for u in 0..self.num_units() {
            let e = self.unit_arrow[u];
            if self.source[e] != u || self.range[e] != u {
                return fail(format!("unit arrow of {} has wrong endpoints", self.unit_labels[u]));
            }
        }
        for (g, h) in self.composable_pairs() {
            let Some(gh) = self.compose(g, h) else {
                return fail(format!("missing product {} * {}", self.arrow_labels[g], self.arrow_labels[h]));
            };
            if self.source[gh] != self.source[h] || self.range[gh] != self.range[g] {
                return fail(format!(
                    "product {} * {} has wrong endpoints",
                    self.arrow_labels[g], self.arrow_labels[h]
                ));
            }
        }
        for g in 0..self.len() {
            let (s, r) = (self.source[g], self.range[g]);
            if self.compose(g, self.unit_arrow[s]) != Some(g) || self.compose(self.unit_arrow[r], g) != Some(g) {
                return fail(format!("unit law fails at {}", self.arrow_labels[g]));
            }
            let gi = self.inverse[g];
            if self.compose(gi, g) != Some(self.unit_arrow[s]) || self.compose(g, gi) != Some(self.unit_arrow[r]) {
                return fail(format!("inverse law fails at {}", self.arrow_labels[g]));
            }
        }
        for (g, h) in self.composable_pairs() {
            let gh = self.compose(g, h).expect("checked above");
            for k in 0..self.len() {
                if self.source[h] != self.range[k] {
                    continue;
                }
                let hk = self.compose(h, k).expect("composable");
                if self.compose(gh, k) != self.compose(g, hk) {
                    return fail(format!(
                        "associativity fails at {}, {}, {}",
                        self.arrow_labels[g], self.arrow_labels[h], self.arrow_labels[k]
                    ));
                }
            }
        }
        for b in &self.basis {
            let mut ds: Vec<usize> = b.iter().map(|&g| self.source[g]).collect();
            let mut rs: Vec<usize> = b.iter().map(|&g| self.range[g]).collect();
            ds.sort();
            ds.dedup();
            rs.sort();
            rs.dedup();
            if ds.len() != b.len() || rs.len() != b.len() {
                return fail("a basis set is not a bisection".into());
            }
        }
        let mut covered = vec![false; self.len()];
        for b in &self.basis {
            for &g in b {
                covered[g] = true;
            }
        }
        if let Some(g) = covered.iter().position(|c| !c) {
            return fail(format!("arrow {} lies in no basis set", self.arrow_labels[g]));
        }
        Ok(())
    }

    /// Intersection of all basis sets containing `g`.
    pub fn minimal_neighbourhood(&self, g: usize) -> Vec<usize> {
        let mut out: Option<Vec<usize>> = None;
        for b in self.basis.iter().filter(|b| b.binary_search(&g).is_ok()) {
            out = Some(match out {
                None => b.clone(),
                Some(cur) => cur.into_iter().filter(|x| b.binary_search(x).is_ok()).collect(),
            });
        }
        out.unwrap_or_else(|| (0..self.len()).collect())
    }

    /// Smallest open set of units containing unit `u`.
    pub fn unit_neighbourhood(&self, u: usize) -> Vec<usize> {
        let mut units: Vec<usize> = self
            .minimal_neighbourhood(self.unit_arrow[u])
            .into_iter()
            .filter(|&g| self.is_unit_arrow(g))
            .map(|g| self.source[g])
            .collect();
        units.sort();
        units
    }

    /// `true` when `set` is a union of basis sets.
    pub fn is_open(&self, set: &[usize]) -> bool {
        set.iter().all(|&g| self.basis.iter().any(|b| b.binary_search(&g).is_ok() && b.iter().all(|x| set.contains(x))))
    }

    /// Orbit of a unit: ranges of arrows leaving it.
    pub fn orbit(&self, u: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.len()).filter(|&g| self.source[g] == u).map(|g| self.range[g]).collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Checks that `arrow_map` and `unit_map` form an isomorphism of finite
/// groupoids that carries open sets to open sets in both directions.
pub fn certify_isomorphism(
    left: &FiniteGroupoid,
    right: &FiniteGroupoid,
    unit_map: &[usize],
    arrow_map: &[usize],
) -> Result<Certificate> {
    let fail = |m: String| Err(Error::IsomorphismFailure(m));
    if left.len() != right.len() || left.num_units() != right.num_units() {
        return fail(format!(
            "sizes differ: {} arrows / {} units vs {} arrows / {} units",
            left.len(),
            left.num_units(),
            right.len(),
            right.num_units()
        ));
    }
    let mut hit = vec![false; right.len()];
    for &a in arrow_map {
        if std::mem::replace(&mut hit[a], true) {
            return fail(format!("arrow {} is hit twice", right.arrow_labels[a]));
        }
    }
    let mut uhit = vec![false; right.num_units()];
    for &u in unit_map {
        if std::mem::replace(&mut uhit[u], true) {
            return fail(format!("unit {} is hit twice", right.unit_labels[u]));
        }
    }
    for g in 0..left.len() {
        let m = arrow_map[g];
        if right.source[m] != unit_map[left.source[g]] || right.range[m] != unit_map[left.range[g]] {
            return fail(format!("endpoints not preserved at {}", left.arrow_labels[g]));
        }
        if right.inverse[m] != arrow_map[left.inverse[g]] {
            return fail(format!("inverse not preserved at {}", left.arrow_labels[g]));
        }
    }
    for u in 0..left.num_units() {
        if arrow_map[left.unit_arrow[u]] != right.unit_arrow[unit_map[u]] {
            return fail(format!("unit {} not preserved", left.unit_labels[u]));
        }
    }
    let mut pairs = 0;
    for (g, h) in left.composable_pairs() {
        pairs += 1;
        let gh = left.compose(g, h).expect("composable");
        if right.compose(arrow_map[g], arrow_map[h]) != Some(arrow_map[gh]) {
            return fail(format!("product not preserved at {} * {}", left.arrow_labels[g], left.arrow_labels[h]));
        }
    }
    let mut inverse_map = vec![0; right.len()];
    for (g, &m) in arrow_map.iter().enumerate() {
        inverse_map[m] = g;
    }
    for b in &left.basis {
        let mut image: Vec<usize> = b.iter().map(|&g| arrow_map[g]).collect();
        image.sort();
        if !right.is_open(&image) {
            return fail("image of a basis set is not open".into());
        }
    }
    for b in &right.basis {
        let mut pre: Vec<usize> = b.iter().map(|&g| inverse_map[g]).collect();
        pre.sort();
        if !left.is_open(&pre) {
            return fail("preimage of a basis set is not open".into());
        }
    }
    Ok(Certificate {
        units: left.num_units(),
        arrows: left.len(),
        composable_pairs: pairs,
        correspondence: (0..left.len())
            .map(|g| (left.arrow_labels[g].clone(), right.arrow_labels[arrow_map[g]].clone()))
            .collect(),
    })
}
