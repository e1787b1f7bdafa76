use super::monoid::{add, sub, Degree, GradingMonoid};
use super::{CategorySystem, ZsProduct};
use crate::category::{Lcsc, MorphismId};
use crate::error::{Error, Result};
use crate::filters::PathSpace;
use crate::groupoid::GermGroupoid;
use serde::Serialize;
use std::collections::BTreeSet;

/// A degree functor `d : Λ → Γ`, one vector per morphism of `Λ`.
#[derive(Clone, Debug)]
pub struct DegreeMap {
    pub monoid: GradingMonoid,
    pub degrees: Vec<Degree>,
}

impl DegreeMap {
    pub fn new(monoid: GradingMonoid, degrees: Vec<Degree>) -> DegreeMap {
        DegreeMap { monoid, degrees }
    }

    /// Number of non-identity factors, as an `ℕ`-grading.
    pub fn length(l: &Lcsc) -> DegreeMap {
        let len = super::factor_length(l.category());
        DegreeMap::new(GradingMonoid::free(1), len.into_iter().map(|x| vec![x as i64]).collect())
    }

    pub fn of(&self, m: MorphismId) -> &Degree {
        &self.degrees[m.idx()]
    }

    /// The distinct degrees that occur, sorted.
    pub fn occurring(&self) -> Vec<Degree> {
        let set: BTreeSet<Degree> = self.degrees.iter().cloned().collect();
        set.into_iter().collect()
    }

    /// Occurring degrees closed under pairwise joins where they exist.
    pub fn relevant(&self) -> Vec<Degree> {
        let mut set: BTreeSet<Degree> = self.degrees.iter().cloned().collect();
        loop {
            let cur: Vec<Degree> = set.iter().cloned().collect();
            let mut grew = false;
            for a in &cur {
                for b in &cur {
                    if let Some(j) = self.monoid.join(a, b) {
                        grew |= set.insert(j);
                    }
                }
            }
            if !grew || set.len() > 4096 {
                break;
            }
        }
        set.into_iter().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DegreeViolation {
    WrongRank {
        alpha: String,
    },
    NotInMonoid {
        alpha: String,
    },
    NotFunctorial {
        alpha: String,
        beta: String,
    },
    /// No factorization of `alpha` with degrees `(first, second)`.
    MissingFactorization {
        alpha: String,
        first: Degree,
        second: Degree,
    },
    /// More than one.
    AmbiguousFactorization {
        alpha: String,
        first: Degree,
        second: Degree,
        count: usize,
    },
    /// Meeting morphisms whose order disagrees with the order of degrees.
    OrderMismatch {
        alpha: String,
        beta: String,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub valid: bool,
    pub violations: Vec<DegreeViolation>,
    pub factorizations_checked: usize,
}

/// Functoriality, unique factorization, and agreement of the two orders on
/// meeting pairs.
pub fn validate_degree_map(l: &Lcsc, d: &DegreeMap) -> DegreeReport {
    let name = |m: MorphismId| l.name(m).to_string();
    let mut v = Vec::new();
    if d.degrees.len() != l.len() {
        return DegreeReport {
            valid: false,
            violations: vec![DegreeViolation::WrongRank { alpha: "(table size)".into() }],
            factorizations_checked: 0,
        };
    }
    for a in l.morphisms() {
        if d.of(a).len() != d.monoid.rank() {
            v.push(DegreeViolation::WrongRank { alpha: name(a) });
        } else if !d.monoid.contains(d.of(a)) {
            v.push(DegreeViolation::NotInMonoid { alpha: name(a) });
        }
    }
    if !v.is_empty() {
        return DegreeReport { valid: false, violations: v, factorizations_checked: 0 };
    }
    for a in l.morphisms() {
        for b in l.morphisms() {
            if let Some(ab) = l.compose(a, b) {
                if *d.of(ab) != add(d.of(a), d.of(b)) {
                    v.push(DegreeViolation::NotFunctorial { alpha: name(a), beta: name(b) });
                }
            }
        }
    }
    let mut checked = 0;
    for a in l.morphisms() {
        for first in d.monoid.below(d.of(a)) {
            let second = sub(d.of(a), &first);
            if !d.monoid.contains(&second) {
                continue;
            }
            checked += 1;
            let count = l
                .morphisms()
                .filter(|&a1| *d.of(a1) == first)
                .filter_map(|a1| l.quotient(a1, a).map(|a2| (a1, a2)))
                .filter(|&(_, a2)| *d.of(a2) == second)
                .count();
            match count {
                1 => {}
                0 => v.push(DegreeViolation::MissingFactorization { alpha: name(a), first, second }),
                _ => v.push(DegreeViolation::AmbiguousFactorization { alpha: name(a), first, second, count }),
            }
        }
    }
    for a in l.morphisms() {
        for b in l.morphisms() {
            if l.meets(a, b) && l.leq(a, b) != d.monoid.leq(d.of(a), d.of(b)) {
                v.push(DegreeViolation::OrderMismatch { alpha: name(a), beta: name(b) });
            }
        }
    }
    DegreeReport { valid: v.is_empty(), violations: v, factorizations_checked: checked }
}

/// `(g, α)` with `d(g·α) ≠ d(α)`.
pub fn compatibility_witness(sys: &CategorySystem, d: &DegreeMap) -> Option<(usize, MorphismId)> {
    sys.group
        .elements()
        .flat_map(|g| sys.cat.morphisms().map(move |a| (g, a)))
        .find(|&(g, a)| d.of(sys.act(g, a)) != d.of(a))
}

/// Two occurring degrees without a least upper bound.
pub fn join_semilattice_witness(d: &DegreeMap) -> Option<(Degree, Degree)> {
    let occ = d.occurring();
    for (i, a) in occ.iter().enumerate() {
        for b in &occ[i..] {
            if d.monoid.join(a, b).is_none() {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct StarReport {
    pub holds: bool,
    /// Bounded ascending chains in `Γ` stabilize, which forces the property.
    pub stabilization_applies: bool,
    pub pairs_checked: usize,
    /// `(top of the path set, degree)` where no unique largest element exists.
    pub witness: Option<(String, Degree)>,
}

/// The largest member of `F` with degree at most `g`, if there is exactly
/// one element above all such members.
pub fn star_max(l: &Lcsc, d: &DegreeMap, members: &[MorphismId], g: &[i64]) -> Option<MorphismId> {
    let low: Vec<MorphismId> = members.iter().copied().filter(|&b| d.monoid.leq(d.of(b), g)).collect();
    let tops: Vec<MorphismId> = low.iter().copied().filter(|&b| low.iter().all(|&a| l.leq(a, b))).collect();
    match tops.as_slice() {
        [b] => Some(*b),
        _ => None,
    }
}

/// Checks the unique-largest-element property on every tight path set and
/// every relevant degree.
pub fn property_star(l: &Lcsc, d: &DegreeMap, ps: &PathSpace) -> StarReport {
    let degrees = d.relevant();
    let mut checked = 0;
    let mut witness = None;
    'outer: for &i in &ps.tight {
        for g in &degrees {
            checked += 1;
            if star_max(l, d, &ps.sets[i].members, g).is_none() {
                witness = Some((l.name(ps.sets[i].top).to_string(), g.clone()));
                break 'outer;
            }
        }
    }
    StarReport { holds: witness.is_none(), stabilization_applies: true, pairs_checked: checked, witness }
}

#[derive(Clone, Debug, Serialize)]
pub struct Layer {
    pub degree: Degree,
    pub arrows: Vec<usize>,
    pub open: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedCocycle {
    /// `d(α) − d(β)` for every germ.
    pub values: Vec<Degree>,
    pub representatives_checked: usize,
    pub composable_pairs_checked: usize,
    pub kernel: Vec<usize>,
    pub kernel_open: bool,
    pub layers: Vec<Layer>,
}

/// Evaluates `[elem(α, β), ξ] ↦ d(α) − d(β)` on a germ groupoid over a
/// category graded by `deg` (one vector per morphism of that category),
/// checks that every representative of every germ gives the same value,
/// that the map is a homomorphism, and materializes the kernel and its
/// layers.
pub fn graded_cocycle(
    l: &Lcsc,
    gg: &GermGroupoid,
    deg: &[Degree],
    monoid: &GradingMonoid,
    layer_degrees: &[Degree],
) -> Result<GradedCocycle> {
    let g = &gg.groupoid;
    let values: Vec<Degree> = gg.germs.iter().map(|x| sub(&deg[x.alpha.idx()], &deg[x.beta.idx()])).collect();
    // For each germ, the degrees d(β) of representatives with d(α) = d(β).
    let mut balanced: Vec<Vec<Degree>> = vec![Vec::new(); g.len()];
    let mut reps = 0;
    for u in 0..g.num_units() {
        let top = gg.tops[u];
        for y in l.morphisms().filter(|&y| l.leq(y, top)) {
            for x in l.with_source(l.source(y)) {
                reps += 1;
                let e = l.elem(x, y)?;
                let germ = gg
                    .germ_of(l, &e, u)
                    .ok_or_else(|| Error::CocycleIllDefined(format!("{} has no germ", l.display(&e))))?;
                let val = sub(&deg[x.idx()], &deg[y.idx()]);
                if val != values[germ] {
                    return Err(Error::CocycleIllDefined(format!(
                        "{} gives {:?} but the germ {} has {:?}",
                        l.display(&e),
                        val,
                        g.arrow_labels[germ],
                        values[germ]
                    )));
                }
                if deg[x.idx()] == deg[y.idx()] {
                    balanced[germ].push(deg[y.idx()].clone());
                }
            }
        }
    }
    let mut pairs = 0;
    for (a, b) in g.composable_pairs() {
        pairs += 1;
        let ab = g.compose(a, b).expect("composable");
        if values[ab] != add(&values[a], &values[b]) {
            return Err(Error::CocycleIllDefined(format!(
                "not a homomorphism at {} * {}",
                g.arrow_labels[a], g.arrow_labels[b]
            )));
        }
    }
    let zero = monoid.zero();
    let kernel: Vec<usize> = (0..g.len()).filter(|&a| values[a] == zero).collect();
    check_subgroupoid(gg, &kernel, "kernel")?;
    let mut layers = Vec::new();
    for d in layer_degrees {
        let arrows: Vec<usize> = (0..g.len()).filter(|&a| balanced[a].iter().any(|b| monoid.leq(b, d))).collect();
        check_subgroupoid(gg, &arrows, "layer")?;
        layers.push(Layer { degree: d.clone(), open: g.is_open(&arrows), arrows });
    }
    Ok(GradedCocycle {
        values,
        representatives_checked: reps,
        composable_pairs_checked: pairs,
        kernel_open: g.is_open(&kernel),
        kernel,
        layers,
    })
}

fn check_subgroupoid(gg: &GermGroupoid, arrows: &[usize], what: &str) -> Result<()> {
    let g = &gg.groupoid;
    let inside = |a: usize| arrows.binary_search(&a).is_ok();
    for u in 0..g.num_units() {
        if !inside(g.unit_arrow[u]) {
            return Err(Error::CocycleIllDefined(format!("{what} misses the unit {}", g.unit_labels[u])));
        }
    }
    for &a in arrows {
        if !inside(g.inverse[a]) {
            return Err(Error::CocycleIllDefined(format!("{what} is not closed under inverses")));
        }
        for &b in arrows {
            if let Some(ab) = g.compose(a, b) {
                if !inside(ab) {
                    return Err(Error::CocycleIllDefined(format!("{what} is not closed under products")));
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct LayerCocycle {
    pub degree: Degree,
    /// Group element for each arrow of the layer, in layer order.
    pub values: Vec<(usize, usize)>,
    pub representatives_checked: usize,
    pub kernel_size: usize,
}

/// The cocycle `[elem((α,a),(β*,b)), ξ] ↦ ab⁻¹` on one layer of the product
/// groupoid, where `β*` is the largest element of `Δ_ξ` with degree at most
/// the layer degree.
pub fn layer_cocycle(
    lp: &Lcsc,
    product: &ZsProduct,
    sys: &CategorySystem,
    d: &DegreeMap,
    gg: &GermGroupoid,
    layer: &Layer,
) -> Result<LayerCocycle> {
    let grp = &sys.group;
    let g = &gg.groupoid;
    if let Some((h, a)) = super::pseudo_freeness_witness(sys) {
        return Err(Error::HypothesesNotMet(format!(
            "not pseudo free: {} fixes {} with trivial cocycle",
            grp.name(h),
            sys.cat.name(a)
        )));
    }
    let mut star_rep = Vec::with_capacity(g.num_units());
    for u in 0..g.num_units() {
        let base_top = product.base(gg.tops[u]);
        let members: Vec<MorphismId> = lp
            .morphisms()
            .filter(|&y| lp.leq(y, gg.tops[u]) && product.group_part(y) == grp.unit())
            .map(|y| product.base(y))
            .collect();
        debug_assert!(members.contains(&base_top));
        let beta = star_max_in_base(sys, d, &members, &layer.degree).ok_or_else(|| {
            Error::HypothesesNotMet(format!("no unique largest element of degree at most {:?}", layer.degree))
        })?;
        star_rep.push(beta);
    }
    let mut values = Vec::with_capacity(layer.arrows.len());
    let mut reps = 0;
    for &a in &layer.arrows {
        let u = g.source[a];
        let mut value = None;
        for b in grp.elements() {
            let y = product.id(star_rep[u], b);
            for x in lp.with_source(lp.source(y)) {
                let e = lp.elem(x, y)?;
                if gg.germ_of(lp, &e, u) != Some(a) {
                    continue;
                }
                reps += 1;
                let t = grp.mul(product.group_part(x), grp.inv(b));
                match value {
                    None => value = Some(t),
                    Some(prev) if prev != t => {
                        return Err(Error::CocycleIllDefined(format!(
                            "layer value at {} depends on the representative",
                            g.arrow_labels[a]
                        )))
                    }
                    _ => {}
                }
            }
        }
        let value = value.ok_or_else(|| {
            Error::CocycleIllDefined(format!("{} has no representative through the chosen element", g.arrow_labels[a]))
        })?;
        values.push((a, value));
    }
    let lookup = |a: usize| values.iter().find(|(x, _)| *x == a).map(|(_, t)| *t);
    for &(a, ta) in &values {
        for &(b, tb) in &values {
            if let Some(ab) = g.compose(a, b) {
                if lookup(ab) != Some(grp.mul(ta, tb)) {
                    return Err(Error::CocycleIllDefined(format!(
                        "layer cocycle is not a homomorphism at {} * {}",
                        g.arrow_labels[a], g.arrow_labels[b]
                    )));
                }
            }
        }
    }
    let kernel_size = values.iter().filter(|(_, t)| *t == grp.unit()).count();
    Ok(LayerCocycle { degree: layer.degree.clone(), values, representatives_checked: reps, kernel_size })
}

fn star_max_in_base(sys: &CategorySystem, d: &DegreeMap, members: &[MorphismId], g: &[i64]) -> Option<MorphismId> {
    let cat = &sys.cat;
    let leq = |a: MorphismId, b: MorphismId| cat.morphisms().any(|x| cat.compose(a, x) == Some(b));
    let low: Vec<MorphismId> = members.iter().copied().filter(|&b| d.monoid.leq(d.of(b), g)).collect();
    let tops: Vec<MorphismId> = low.iter().copied().filter(|&b| low.iter().all(|&a| leq(a, b))).collect();
    match tops.as_slice() {
        [b] => Some(*b),
        _ => None,
    }
}
