use super::{certify_isomorphism, Certificate, FiniteGroupoid};
use crate::category::{Lcsc, MorphismId};
use crate::error::{Error, Result};
use crate::filters::{path_delta, FilterSpace, PathSet, PathSpace, Semilattice};
use crate::semigroup::{Element, Semigroup};
use std::collections::HashMap;

/// `s·η`: the up-set of `{ s e s* : e ∈ η }`. Returns a filter index.
pub fn act_on_filter(l: &Lcsc, e: &Semilattice, fs: &FilterSpace, s: &Element, k: usize) -> Result<usize> {
    let eta = &fs.filters[k];
    let dom = e
        .index_of(&l.domain_idempotent(s))
        .ok_or_else(|| Error::WellDefinedness("domain idempotent outside the semilattice".into()))?;
    if !eta.contains(dom) {
        return Err(Error::DomainViolation(format!("{} is undefined on this filter", l.display(s))));
    }
    let s_star = l.star(s);
    let mut members = vec![false; e.len()];
    for &x in &eta.members {
        let conj = l.product(&l.product(s, e.element(x)), &s_star);
        let c = e.index_of(&conj).ok_or_else(|| {
            Error::WellDefinedness(format!("conjugate {} is not in the semilattice", l.display(&conj)))
        })?;
        for f in e.upset(c) {
            members[f] = true;
        }
    }
    let members: Vec<usize> = (0..e.len()).filter(|&i| members[i]).collect();
    fs.find(&members).ok_or_else(|| Error::WellDefinedness("image of a filter is not a filter".into()))
}

/// `s·F`: the union of `[α σ^β(γ)]` over pairs `(α, β)` of `s` and
/// `γ ∈ F` extending `β`. Every applicable pair must give the same set.
pub fn act_on_pathset(l: &Lcsc, s: &Element, f: &PathSet) -> Result<PathSet> {
    let mut result: Option<Vec<MorphismId>> = None;
    for p in s.pairs().iter().filter(|p| f.contains(p.beta)) {
        let mut members = vec![false; l.len()];
        for &g in &f.members {
            if let Some(x) = l.quotient(p.beta, g) {
                let top = l.mul(p.alpha, x);
                for m in l.morphisms().filter(|&m| l.leq(m, top)) {
                    members[m.idx()] = true;
                }
            }
        }
        let set: Vec<MorphismId> = l.morphisms().filter(|m| members[m.idx()]).collect();
        match &result {
            None => result = Some(set),
            Some(prev) if *prev != set => {
                return Err(Error::WellDefinedness(format!("pairs of {} disagree on a path set", l.display(s))))
            }
            _ => {}
        }
    }
    let set =
        result.ok_or_else(|| Error::DomainViolation(format!("{} is undefined on this path set", l.display(s))))?;
    PathSet::from_members(l, &set)
}

/// The `α` of the canonical representative `(α, m)` of the germ of `s` at
/// a unit whose path set has top `m`; `None` when `s` is undefined there.
pub fn canonical_alpha(l: &Lcsc, s: &Element, top: MorphismId) -> Option<MorphismId> {
    let mut out = None;
    for p in s.pairs() {
        if let Some(x) = l.quotient(p.beta, top) {
            let a = l.mul(p.alpha, x);
            match out {
                None => out = Some(a),
                Some(prev) => assert_eq!(prev, a, "pairs of a compatible join disagree"),
            }
        }
    }
    out
}

/// A germ in canonical form: the single pair `(alpha, beta)` with `beta`
/// the top of the unit's path set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Germ {
    pub alpha: MorphismId,
    pub beta: MorphismId,
    pub unit: usize,
}

/// The groupoid of germs together with the bookkeeping that ties its
/// units back to a point space (filters or path sets).
#[derive(Clone, Debug)]
pub struct GermGroupoid {
    pub groupoid: FiniteGroupoid,
    pub germs: Vec<Germ>,
    /// Index of each unit in its point space.
    pub points: Vec<usize>,
    pub tops: Vec<MorphismId>,
    index: HashMap<Germ, usize>,
    unit_of_point: HashMap<usize, usize>,
}

impl GermGroupoid {
    pub fn germ_index(&self, g: &Germ) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn unit_of_point(&self, p: usize) -> Option<usize> {
        self.unit_of_point.get(&p).copied()
    }

    /// Arrow index of the germ `[s, unit]`.
    pub fn germ_of(&self, l: &Lcsc, s: &Element, unit: usize) -> Option<usize> {
        let top = self.tops[unit];
        let alpha = canonical_alpha(l, s, top)?;
        self.germ_index(&Germ { alpha, beta: top, unit })
    }

    pub fn element(&self, l: &Lcsc, g: usize) -> Element {
        let germ = self.germs[g];
        l.elem(germ.alpha, germ.beta).expect("canonical pair")
    }
}

struct Model<'a> {
    points: Vec<usize>,
    tops: Vec<MorphismId>,
    labels: Vec<String>,
    act: &'a dyn Fn(&Element, usize) -> Result<usize>,
    in_domain: &'a dyn Fn(&Element, usize) -> Result<bool>,
    neighbourhood: &'a dyn Fn(usize) -> Vec<usize>,
}

fn build(l: &Lcsc, s: &Semigroup, m: Model<'_>) -> Result<GermGroupoid> {
    let unit_of_point: HashMap<usize, usize> = m.points.iter().enumerate().map(|(u, &p)| (p, u)).collect();
    let mut g = FiniteGroupoid::new(m.labels.clone());
    let mut germs = Vec::new();
    let mut index = HashMap::new();
    for (u, &top) in m.tops.iter().enumerate() {
        for alpha in l.with_source(l.source(top)) {
            let e = l.elem(alpha, top)?;
            let target = (m.act)(&e, m.points[u])?;
            let r = *unit_of_point
                .get(&target)
                .ok_or_else(|| Error::WellDefinedness("action leaves the tight unit space".into()))?;
            let germ = Germ { alpha, beta: top, unit: u };
            let label = format!("[{},{};{}]", l.name(alpha), l.name(top), m.labels[u]);
            let id = g.push_arrow(label, u, r);
            germs.push(germ);
            index.insert(germ, id);
        }
    }
    g.unit_arrow = m.tops.iter().enumerate().map(|(u, &t)| index[&Germ { alpha: t, beta: t, unit: u }]).collect();
    let lookup = |s: &Element, u: usize| -> Result<usize> {
        let alpha = canonical_alpha(l, s, m.tops[u])
            .ok_or_else(|| Error::WellDefinedness(format!("{} undefined at a unit", l.display(s))))?;
        index
            .get(&Germ { alpha, beta: m.tops[u], unit: u })
            .copied()
            .ok_or_else(|| Error::WellDefinedness("germ missing from the listing".into()))
    };
    let elems: Vec<Element> = germs.iter().map(|x| l.elem(x.alpha, x.beta).expect("canonical")).collect();
    let mut inverse = vec![0; germs.len()];
    for a in 0..germs.len() {
        inverse[a] = lookup(&l.star(&elems[a]), g.range[a])?;
        for b in 0..germs.len() {
            if g.source[a] == g.range[b] {
                let prod = lookup(&l.product(&elems[a], &elems[b]), g.source[b])?;
                g.set_product(a, b, prod);
            }
        }
    }
    g.inverse = inverse;
    let mut basis: Vec<Vec<usize>> = Vec::new();
    for x in s.elements() {
        let mut domain = Vec::new();
        for u in 0..m.points.len() {
            let defined = (m.in_domain)(x, m.points[u])?;
            if defined != canonical_alpha(l, x, m.tops[u]).is_some() {
                return Err(Error::CharacterizationMismatch {
                    what: "germ domain".into(),
                    detail: format!("{} at {}", l.display(x), m.labels[u]),
                });
            }
            if defined {
                domain.push(u);
            }
        }
        if domain.is_empty() {
            continue;
        }
        let theta = |units: &[usize]| -> Result<Vec<usize>> {
            let mut v = units.iter().map(|&u| lookup(x, u)).collect::<Result<Vec<_>>>()?;
            v.sort();
            Ok(v)
        };
        basis.push(theta(&domain)?);
        for &u in &domain {
            let nbhd: Vec<usize> = (m.neighbourhood)(m.points[u])
                .into_iter()
                .filter_map(|p| unit_of_point.get(&p).copied())
                .filter(|v| domain.contains(v))
                .collect();
            basis.push(theta(&nbhd)?);
        }
    }
    basis.sort();
    basis.dedup();
    g.basis = basis;
    g.check_axioms()?;
    Ok(GermGroupoid { groupoid: g, germs, points: m.points, tops: m.tops, index, unit_of_point })
}

/// Germ groupoid of the shift semigroup acting on tight filters.
pub fn germ_groupoid_on_filters(
    l: &Lcsc,
    s: &Semigroup,
    e: &Semilattice,
    fs: &FilterSpace,
    tight: &[usize],
) -> Result<GermGroupoid> {
    let mut tops = Vec::new();
    for &k in tight {
        tops.push(path_delta(l, e, fs, k)?.top);
    }
    let labels = tops.iter().map(|&t| format!("η[{}]", l.name(t))).collect();
    let act = |x: &Element, k: usize| act_on_filter(l, e, fs, x, k);
    let in_domain = |x: &Element, k: usize| -> Result<bool> {
        let d = e
            .index_of(&l.domain_idempotent(x))
            .ok_or_else(|| Error::WellDefinedness("domain idempotent outside the semilattice".into()))?;
        Ok(fs.filters[k].contains(d))
    };
    let neighbourhood = |k: usize| -> Vec<usize> {
        let eta = &fs.filters[k];
        let outside: Vec<usize> = (0..e.len()).filter(|&i| !eta.contains(i)).collect();
        fs.basic_open(&eta.members, &outside)
    };
    build(
        l,
        s,
        Model { points: tight.to_vec(), tops, labels, act: &act, in_domain: &in_domain, neighbourhood: &neighbourhood },
    )
}

/// Germ groupoid of the shift semigroup acting on tight path sets.
pub fn germ_groupoid_on_paths(l: &Lcsc, s: &Semigroup, ps: &PathSpace) -> Result<GermGroupoid> {
    let tops: Vec<MorphismId> = ps.tight.iter().map(|&i| ps.sets[i].top).collect();
    let labels = tops.iter().map(|&t| format!("[{}]", l.name(t))).collect();
    let act = |x: &Element, i: usize| -> Result<usize> {
        let image = act_on_pathset(l, x, &ps.sets[i])?;
        ps.index_of(&image).ok_or_else(|| Error::WellDefinedness("unknown path set".into()))
    };
    let in_domain =
        |x: &Element, i: usize| -> Result<bool> { Ok(x.pairs().iter().any(|p| ps.sets[i].contains(p.beta))) };
    let neighbourhood = |i: usize| -> Vec<usize> {
        let c = &ps.sets[i];
        let outside: Vec<MorphismId> = l.morphisms().filter(|&m| !c.contains(m)).collect();
        ps.basic_open(&c.members, &outside)
    };
    build(
        l,
        s,
        Model {
            points: ps.tight.clone(),
            tops,
            labels,
            act: &act,
            in_domain: &in_domain,
            neighbourhood: &neighbourhood,
        },
    )
}

/// Compares canonical germ equality with the defining relation
/// `[s,ξ] = [t,ξ]` iff `se = te` for some `e ∈ ξ`, over every pair of
/// listed elements defined at every unit.
pub fn check_germ_relation(
    l: &Lcsc,
    s: &Semigroup,
    e: &Semilattice,
    fs: &FilterSpace,
    gg: &GermGroupoid,
) -> Result<usize> {
    let mut checked = 0;
    for (u, &k) in gg.points.iter().enumerate() {
        let eta = &fs.filters[k];
        let defined: Vec<&Element> = s
            .elements()
            .iter()
            .filter(|x| e.index_of(&l.domain_idempotent(x)).is_some_and(|d| eta.contains(d)))
            .collect();
        for a in &defined {
            for b in &defined {
                checked += 1;
                let related = eta.members.iter().any(|&f| l.product(a, e.element(f)) == l.product(b, e.element(f)));
                let same = gg.germ_of(l, a, u) == gg.germ_of(l, b, u);
                if related != same {
                    return Err(Error::CharacterizationMismatch {
                        what: "germ relation".into(),
                        detail: format!("{} and {} at {}", l.display(a), l.display(b), gg.groupoid.unit_labels[u]),
                    });
                }
            }
        }
    }
    Ok(checked)
}

/// Certifies that sending `[s, η]` to `[s, Δ_η]` is an isomorphism from
/// the filter model to the path set model.
pub fn certify_filters_to_paths(
    l: &Lcsc,
    e: &Semilattice,
    fs: &FilterSpace,
    ps: &PathSpace,
    on_filters: &GermGroupoid,
    on_paths: &GermGroupoid,
) -> Result<Certificate> {
    let mut unit_map = Vec::new();
    for &k in &on_filters.points {
        let p = path_delta(l, e, fs, k)?;
        let i = ps.index_of(&p).ok_or_else(|| Error::IsomorphismFailure("unknown path set".into()))?;
        unit_map.push(
            on_paths
                .unit_of_point(i)
                .ok_or_else(|| Error::IsomorphismFailure("tight filter maps to a non-tight path set".into()))?,
        );
    }
    let mut arrow_map = Vec::new();
    for germ in &on_filters.germs {
        let target = Germ { alpha: germ.alpha, beta: germ.beta, unit: unit_map[germ.unit] };
        arrow_map.push(
            on_paths
                .germ_index(&target)
                .ok_or_else(|| Error::IsomorphismFailure("germ has no path counterpart".into()))?,
        );
    }
    certify_isomorphism(&on_filters.groupoid, &on_paths.groupoid, &unit_map, &arrow_map)
}
