//! The partial action of the grading monoid on tight path sets, its
//! groupoid of triples `(x, g − h, y)`, and the comparison with the germ
//! groupoid.

use super::grading::GradedCocycle;
use super::monoid::{sub, Degree, GradingMonoid};
use crate::category::{Lcsc, MorphismId};
use crate::error::{Error, Result};
use crate::filters::PathSpace;
use crate::groupoid::{act_on_pathset, certify_isomorphism, Certificate, FiniteGroupoid, GermGroupoid};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// `T_g` for every degree `g`, on units numbered as in `ps.tight`.
#[derive(Clone, Debug)]
pub struct SemigroupAction {
    /// For each unit, the member of its path set of each available degree.
    pub available: Vec<BTreeMap<Degree, MorphismId>>,
    /// `T_g(x)` keyed by `(x, g)`.
    pub maps: HashMap<(usize, Degree), usize>,
    pub degrees: Vec<Degree>,
}

impl SemigroupAction {
    /// `U(g)`, sorted.
    pub fn domain(&self, g: &[i64]) -> Vec<usize> {
        (0..self.available.len()).filter(|&x| self.available[x].contains_key(g)).collect()
    }

    /// The actual range of `T_g`, sorted.
    pub fn image(&self, g: &[i64]) -> Vec<usize> {
        let set: BTreeSet<usize> = self.domain(g).into_iter().map(|x| self.maps[&(x, g.to_vec())]).collect();
        set.into_iter().collect()
    }
}

/// Degrees of the members of each tight path set, requiring each degree to
/// occur at most once per set, and the induced maps `T_g`.
pub fn semigroup_action(l: &Lcsc, deg: &[Degree], ps: &PathSpace) -> Result<SemigroupAction> {
    let unit_of_set: HashMap<usize, usize> = ps.tight.iter().enumerate().map(|(u, &i)| (i, u)).collect();
    let mut available = Vec::with_capacity(ps.tight.len());
    let mut maps = HashMap::new();
    let mut degrees = BTreeSet::new();
    for (u, &i) in ps.tight.iter().enumerate() {
        let mut by_degree: BTreeMap<Degree, MorphismId> = BTreeMap::new();
        for &a in &ps.sets[i].members {
            let d = deg[a.idx()].clone();
            if let Some(&other) = by_degree.get(&d) {
                if !l.approx(other, a) {
                    return Err(Error::WellDefinedness(format!(
                        "{} and {} share degree {:?} in the path set of {}",
                        l.name(other),
                        l.name(a),
                        d,
                        l.name(ps.sets[i].top)
                    )));
                }
                continue;
            }
            let image = act_on_pathset(l, &l.sigma(a), &ps.sets[i])?;
            let j = ps
                .index_of(&image)
                .and_then(|j| unit_of_set.get(&j).copied())
                .ok_or_else(|| Error::WellDefinedness("shifted tight path set is not tight".into()))?;
            maps.insert((u, d.clone()), j);
            degrees.insert(d.clone());
            by_degree.insert(d, a);
        }
        available.push(by_degree);
    }
    Ok(SemigroupAction { available, maps, degrees: degrees.into_iter().collect() })
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectednessReport {
    pub pairs_checked: usize,
    /// Degrees whose printed range formula disagrees with the range of
    /// `T_g`, with both sets of unit labels.
    pub range_formula_mismatches: Vec<(Degree, Vec<String>, Vec<String>)>,
}

/// Checks `U(g) ∩ U(h) = U(g ∨ h)` whenever the left side is nonempty,
/// and compares the range of each `T_g` with the set described by
/// `⋃_{d(α)=g} ⋃_{s(β)=s(α)} D_β`.
pub fn check_directed(
    l: &Lcsc,
    deg: &[Degree],
    monoid: &GradingMonoid,
    ps: &PathSpace,
    act: &SemigroupAction,
) -> Result<DirectednessReport> {
    let mut pairs = 0;
    for g in &act.degrees {
        for h in &act.degrees {
            let ug = act.domain(g);
            let uh = act.domain(h);
            let both: Vec<usize> = ug.iter().copied().filter(|x| uh.binary_search(x).is_ok()).collect();
            if both.is_empty() {
                continue;
            }
            pairs += 1;
            let j = monoid
                .join(g, h)
                .ok_or_else(|| Error::NotJoinSemilattice(format!("{g:?} and {h:?} have no least upper bound")))?;
            if act.domain(&j) != both {
                return Err(Error::NotDirected(format!("U({g:?}) ∩ U({h:?}) differs from U({j:?})")));
            }
        }
    }
    let label = |u: usize| l.name(ps.sets[ps.tight[u]].top).to_string();
    let mut mismatches = Vec::new();
    for g in &act.degrees {
        let mut printed = BTreeSet::new();
        for alpha in l.morphisms().filter(|&a| deg[a.idx()] == *g) {
            for beta in l.morphisms().filter(|&b| l.source(b) == l.source(alpha)) {
                for (u, &i) in ps.tight.iter().enumerate() {
                    if ps.sets[i].contains(beta) {
                        printed.insert(u);
                    }
                }
            }
        }
        let printed: Vec<usize> = printed.into_iter().collect();
        let actual = act.image(g);
        if printed != actual {
            mismatches.push((
                g.clone(),
                printed.into_iter().map(label).collect(),
                actual.into_iter().map(label).collect(),
            ));
        }
    }
    Ok(DirectednessReport { pairs_checked: pairs, range_formula_mismatches: mismatches })
}

#[derive(Clone, Debug)]
pub struct ActionGroupoid {
    pub groupoid: FiniteGroupoid,
    /// `(x, g − h, y)` for each arrow.
    pub triples: Vec<(usize, Degree, usize)>,
    index: HashMap<(usize, Degree, usize), usize>,
}

impl ActionGroupoid {
    pub fn arrow(&self, x: usize, q: &[i64], y: usize) -> Option<usize> {
        self.index.get(&(x, q.to_vec(), y)).copied()
    }
}

/// Builds the groupoid of triples `(x, g − h, y)` with `T_g x = T_h y`.
/// The basis consists of the sets `Z(α, β)` of triples with `β ∈ y` and
/// `x = τ^α σ^β y`, together with their restrictions to the smallest open
/// sets of units.
pub fn action_groupoid(l: &Lcsc, deg: &[Degree], ps: &PathSpace, act: &SemigroupAction) -> Result<ActionGroupoid> {
    let units = ps.tight.len();
    let labels: Vec<String> = ps.tight.iter().map(|&i| format!("[{}]", l.name(ps.sets[i].top))).collect();
    let mut g = FiniteGroupoid::new(labels.clone());
    let mut triples = Vec::new();
    let mut index: HashMap<(usize, Degree, usize), usize> = HashMap::new();
    let mut add = |g: &mut FiniteGroupoid, x: usize, q: Degree, y: usize| -> usize {
        if let Some(&a) = index.get(&(x, q.clone(), y)) {
            return a;
        }
        let label = format!("({}, {:?}, {})", labels[x], q, labels[y]);
        let a = g.push_arrow(label, y, x);
        index.insert((x, q.clone(), y), a);
        triples.push((x, q, y));
        a
    };
    let zero = vec![0; deg.first().map_or(0, Vec::len)];
    let unit_arrow: Vec<usize> = (0..units).map(|x| add(&mut g, x, zero.clone(), x)).collect();
    for y in 0..units {
        for h in act.available[y].keys() {
            let z = act.maps[&(y, h.clone())];
            for x in 0..units {
                for gd in act.available[x].keys() {
                    if act.maps[&(x, gd.clone())] == z {
                        add(&mut g, x, sub(gd, h), y);
                    }
                }
            }
        }
    }
    g.unit_arrow = unit_arrow;
    g.inverse = triples
        .iter()
        .map(|(x, q, y)| {
            let neg: Degree = q.iter().map(|c| -c).collect();
            index.get(&(*y, neg, *x)).copied().ok_or_else(|| Error::WellDefinedness("inverse triple missing".into()))
        })
        .collect::<Result<_>>()?;
    for a in 0..triples.len() {
        for b in 0..triples.len() {
            let (x, q, y) = &triples[a];
            let (y2, q2, z) = &triples[b];
            if y != y2 {
                continue;
            }
            let sum: Degree = q.iter().zip(q2).map(|(s, t)| s + t).collect();
            let c = *index.get(&(*x, sum, *z)).ok_or_else(|| {
                Error::NotDirected(format!("product of {} and {} is missing", g.arrow_labels[a], g.arrow_labels[b]))
            })?;
            g.set_product(a, b, c);
        }
    }

    let neighbourhoods: Vec<Vec<usize>> = (0..units)
        .map(|u| {
            let c = &ps.sets[ps.tight[u]];
            let outside: Vec<MorphismId> = l.morphisms().filter(|&m| !c.contains(m)).collect();
            let open = ps.basic_open(&c.members, &outside);
            (0..units).filter(|&v| open.contains(&ps.tight[v])).collect()
        })
        .collect();
    let mut basis: BTreeSet<Vec<usize>> = BTreeSet::new();
    for beta in l.morphisms() {
        for alpha in l.with_source(l.source(beta)) {
            let q = sub(&deg[alpha.idx()], &deg[beta.idx()]);
            let mut z = Vec::new();
            for (y, &i) in ps.tight.iter().enumerate() {
                if !ps.sets[i].contains(beta) {
                    continue;
                }
                let x = act_on_pathset(l, &l.elem(alpha, beta)?, &ps.sets[i])?;
                let x = ps
                    .index_of(&x)
                    .and_then(|j| ps.tight.iter().position(|&t| t == j))
                    .ok_or_else(|| Error::WellDefinedness("image of a tight path set is not tight".into()))?;
                let a = *index
                    .get(&(x, q.clone(), y))
                    .ok_or_else(|| Error::WellDefinedness("basic set names a missing triple".into()))?;
                z.push(a);
            }
            z.sort();
            if z.is_empty() {
                continue;
            }
            for n in &neighbourhoods {
                let restricted: Vec<usize> = z.iter().copied().filter(|&a| n.contains(&g.source[a])).collect();
                if !restricted.is_empty() {
                    basis.insert(restricted);
                }
            }
            basis.insert(z);
        }
    }
    g.basis = basis.into_iter().collect();
    g.check_axioms()?;
    Ok(ActionGroupoid { groupoid: g, triples, index })
}

#[derive(Clone, Debug, Serialize)]
pub struct ActionComparison {
    pub certificate: Certificate,
    /// Arrows on which the canonical cocycle of the action groupoid was
    /// compared with the graded cocycle.
    pub intertwined: usize,
    pub kernel_size: usize,
}

/// Certifies `[elem(α, β), ξ] ↦ (elem(α, β)·ξ, d(α) − d(β), ξ)` as an
/// isomorphism, checks that it carries the graded cocycle to the canonical
/// one, and that it restricts to a bijection between the two kernels.
pub fn certify_action_groupoid(
    gg: &GermGroupoid,
    ag: &ActionGroupoid,
    deg: &[Degree],
    cocycle: &GradedCocycle,
) -> Result<ActionComparison> {
    let g = &gg.groupoid;
    let unit_map: Vec<usize> = (0..g.num_units()).collect();
    let mut arrow_map = Vec::with_capacity(g.len());
    for (a, germ) in gg.germs.iter().enumerate() {
        let q = sub(&deg[germ.alpha.idx()], &deg[germ.beta.idx()]);
        let image = ag
            .arrow(g.range[a], &q, germ.unit)
            .ok_or_else(|| Error::IsomorphismFailure(format!("{} has no triple counterpart", g.arrow_labels[a])))?;
        arrow_map.push(image);
    }
    let certificate = certify_isomorphism(g, &ag.groupoid, &unit_map, &arrow_map)?;
    for (a, &m) in arrow_map.iter().enumerate() {
        if ag.triples[m].1 != cocycle.values[a] {
            return Err(Error::CharacterizationMismatch {
                what: "cocycle intertwining".into(),
                detail: format!("{} maps to {}", g.arrow_labels[a], ag.groupoid.arrow_labels[m]),
            });
        }
    }
    let kernel_images: BTreeSet<usize> = cocycle.kernel.iter().map(|&a| arrow_map[a]).collect();
    let kernel_targets: BTreeSet<usize> =
        (0..ag.triples.len()).filter(|&m| ag.triples[m].1.iter().all(|&c| c == 0)).collect();
    if kernel_images != kernel_targets {
        return Err(Error::CharacterizationMismatch {
            what: "cocycle kernels".into(),
            detail: format!("{} germs vs {} triples", kernel_images.len(), kernel_targets.len()),
        });
    }
    Ok(ActionComparison { certificate, intertwined: arrow_map.len(), kernel_size: kernel_targets.len() })
}
