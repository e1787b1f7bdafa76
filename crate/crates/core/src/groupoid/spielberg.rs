use super::{act_on_pathset, certify_isomorphism, Certificate, FiniteGroupoid, GermGroupoid};
use crate::category::{Lcsc, MorphismId};
use crate::error::{Error, Result};
use crate::filters::PathSpace;
use std::collections::HashMap;

/// A triple `(α, β, F)` with `s(α) = s(β)` the root of the tight path set
/// `F`, stored as an index into the path space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub alpha: MorphismId,
    pub beta: MorphismId,
    pub set: usize,
}

/// The groupoid of equivalence classes of triples.
#[derive(Clone, Debug)]
pub struct TripleGroupoid {
    pub groupoid: FiniteGroupoid,
    /// Members of each class, sorted; the first is the representative.
    pub classes: Vec<Vec<Triple>>,
    /// Path space index of each unit.
    pub unit_sets: Vec<usize>,
    class_of: HashMap<Triple, usize>,
}

impl TripleGroupoid {
    pub fn class_of(&self, t: &Triple) -> Option<usize> {
        self.class_of.get(t).copied()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Product pairs checked against every pair of representatives when the
/// two classes together have at most this many combinations; beyond it
/// each representative is only paired with the other class's first one.
const FULL_WITNESS_CHECK: usize = 16;

/// Builds the triple groupoid over the tight path sets recorded in `ps`.
pub fn spielberg_groupoid(l: &Lcsc, ps: &PathSpace) -> Result<TripleGroupoid> {
    let unit_of_set: HashMap<usize, usize> = ps.tight.iter().enumerate().map(|(u, &i)| (i, u)).collect();
    let set_index = |s: &crate::semigroup::Element, i: usize| -> Result<usize> {
        let image = act_on_pathset(l, s, &ps.sets[i])?;
        let j = ps.index_of(&image).ok_or_else(|| Error::WellDefinedness("unknown path set".into()))?;
        if !unit_of_set.contains_key(&j) {
            return Err(Error::WellDefinedness("shift of a tight path set is not tight".into()));
        }
        Ok(j)
    };

    let mut triples = Vec::new();
    for &i in &ps.tight {
        let root = ps.sets[i].root(l);
        let arrows: Vec<MorphismId> = l.with_source(root).collect();
        for &alpha in &arrows {
            for &beta in &arrows {
                triples.push(Triple { alpha, beta, set: i });
            }
        }
    }
    triples.sort();
    let position: HashMap<Triple, usize> = triples.iter().enumerate().map(|(k, &t)| (t, k)).collect();

    let mut uf = UnionFind((0..triples.len()).collect());
    for (k, t) in triples.iter().enumerate() {
        for &gamma in &ps.sets[t.set].members {
            let shifted = Triple {
                alpha: l.mul(t.alpha, gamma),
                beta: l.mul(t.beta, gamma),
                set: set_index(&l.sigma(gamma), t.set)?,
            };
            let other = *position
                .get(&shifted)
                .ok_or_else(|| Error::WellDefinedness("shifted triple outside the listing".into()))?;
            uf.union(k, other);
        }
    }

    let mut by_root: HashMap<usize, Vec<Triple>> = HashMap::new();
    for (k, &t) in triples.iter().enumerate() {
        by_root.entry(uf.find(k)).or_default().push(t);
    }
    let mut classes: Vec<Vec<Triple>> = by_root.into_values().collect();
    for c in &mut classes {
        c.sort();
    }
    classes.sort();
    let class_of: HashMap<Triple, usize> =
        classes.iter().enumerate().flat_map(|(c, ts)| ts.iter().map(move |&t| (t, c))).collect();

    let labels: Vec<String> = ps.tight.iter().map(|&i| format!("[{}]", l.name(ps.sets[i].top))).collect();
    let mut g = FiniteGroupoid::new(labels.clone());
    for ts in &classes {
        let mut ends = None;
        for t in ts {
            let d = unit_of_set[&set_index(&l.tau(t.beta), t.set)?];
            let r = unit_of_set[&set_index(&l.tau(t.alpha), t.set)?];
            match ends {
                None => ends = Some((d, r)),
                Some(prev) if prev != (d, r) => {
                    return Err(Error::WellDefinedness("source or range depends on the representative".into()))
                }
                _ => {}
            }
        }
        let (d, r) = ends.expect("classes are nonempty");
        let t = ts[0];
        let label = format!("[{},{};{}]", l.name(t.alpha), l.name(t.beta), labels[unit_of_set[&t.set]]);
        g.push_arrow(label, d, r);
    }
    g.unit_arrow = ps
        .tight
        .iter()
        .map(|&i| {
            let v = l.category().identity(ps.sets[i].root(l));
            class_of[&Triple { alpha: v, beta: v, set: i }]
        })
        .collect();
    g.inverse =
        classes.iter().map(|ts| class_of[&Triple { alpha: ts[0].beta, beta: ts[0].alpha, set: ts[0].set }]).collect();

    let n = classes.len();
    for a in 0..n {
        for b in 0..n {
            if g.source[a] != g.range[b] {
                continue;
            }
            let pairs: Vec<(Triple, Triple)> = if classes[a].len() * classes[b].len() <= FULL_WITNESS_CHECK {
                classes[a].iter().flat_map(|&x| classes[b].iter().map(move |&y| (x, y))).collect()
            } else {
                let (x0, y0) = (classes[a][0], classes[b][0]);
                classes[a].iter().map(|&x| (x, y0)).chain(classes[b].iter().map(|&y| (x0, y))).collect()
            };
            let mut result = None;
            for (x, y) in pairs {
                for c in triple_products(l, ps, &set_index, x, y)? {
                    let c = class_of[&c];
                    match result {
                        None => result = Some(c),
                        Some(prev) if prev != c => {
                            return Err(Error::WellDefinedness(format!(
                                "product {} * {} depends on the witnesses",
                                g.arrow_labels[a], g.arrow_labels[b]
                            )))
                        }
                        _ => {}
                    }
                }
            }
            let c = result.ok_or_else(|| {
                Error::WellDefinedness(format!("no witness for {} * {}", g.arrow_labels[a], g.arrow_labels[b]))
            })?;
            g.set_product(a, b, c);
        }
    }

    let mut basis: Vec<Vec<usize>> = Vec::new();
    for v in l.identities() {
        let root = l.range(v);
        let sets: Vec<usize> = ps.tight.iter().copied().filter(|&i| ps.sets[i].root(l) == root).collect();
        if sets.is_empty() {
            continue;
        }
        for alpha in l.with_source(root) {
            for beta in l.with_source(root) {
                let mut all: Vec<usize> = sets.iter().map(|&i| class_of[&Triple { alpha, beta, set: i }]).collect();
                all.sort();
                all.dedup();
                basis.push(all);
            }
        }
    }
    basis.extend((0..n).map(|c| vec![c]));
    basis.sort();
    basis.dedup();
    g.basis = basis;
    g.check_axioms()?;
    Ok(TripleGroupoid { groupoid: g, classes, unit_sets: ps.tight.clone(), class_of })
}

/// All products `[αξ, δη, σ^ξ F]` of `[α,β,F]` and `[γ,δ,G]` over witnesses
/// `ξ ∈ F`, `η ∈ G` with `βξ = γη` and `σ^ξ F = σ^η G`.
fn triple_products(
    l: &Lcsc,
    ps: &PathSpace,
    set_index: &dyn Fn(&crate::semigroup::Element, usize) -> Result<usize>,
    x: Triple,
    y: Triple,
) -> Result<Vec<Triple>> {
    let mut out = Vec::new();
    for &xi in &ps.sets[x.set].members {
        for &eta in &ps.sets[y.set].members {
            if l.compose(x.beta, xi).is_none() || l.compose(y.alpha, eta) != l.compose(x.beta, xi) {
                continue;
            }
            let h = set_index(&l.sigma(xi), x.set)?;
            if h != set_index(&l.sigma(eta), y.set)? {
                continue;
            }
            out.push(Triple { alpha: l.mul(x.alpha, xi), beta: l.mul(y.beta, eta), set: h });
        }
    }
    Ok(out)
}

/// Certifies that `[α, β, F] ↦ [elem(α, β), τ^β F]` is an isomorphism onto
/// the germ groupoid on path sets. Every member of every class must land on
/// the same germ.
pub fn certify_triples_to_germs(
    l: &Lcsc,
    ps: &PathSpace,
    tg: &TripleGroupoid,
    gg: &GermGroupoid,
) -> Result<Certificate> {
    let unit_map: Vec<usize> = tg
        .unit_sets
        .iter()
        .map(|&i| gg.unit_of_point(i).ok_or_else(|| Error::IsomorphismFailure("unit has no germ counterpart".into())))
        .collect::<Result<_>>()?;
    let mut arrow_map = Vec::with_capacity(tg.classes.len());
    for ts in &tg.classes {
        let mut image = None;
        for t in ts {
            let d = act_on_pathset(l, &l.tau(t.beta), &ps.sets[t.set])?;
            let d = ps.index_of(&d).and_then(|i| gg.unit_of_point(i));
            let germ = d.and_then(|u| gg.germ_of(l, &l.elem(t.alpha, t.beta).ok()?, u));
            let germ = germ.ok_or_else(|| Error::IsomorphismFailure("triple has no germ".into()))?;
            match image {
                None => image = Some(germ),
                Some(prev) if prev != germ => {
                    return Err(Error::IsomorphismFailure("members of a triple class give different germs".into()))
                }
                _ => {}
            }
        }
        arrow_map.push(image.expect("classes are nonempty"));
    }
    certify_isomorphism(&tg.groupoid, &gg.groupoid, &unit_map, &arrow_map)
}
