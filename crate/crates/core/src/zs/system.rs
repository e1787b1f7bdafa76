use super::GroupTable;
use crate::category::{FiniteCategory, MorphismId, ObjectId};
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// A group acting on a finite category together with a cocycle
/// `φ : G × Λ → G`. Tables are indexed `[g][α]`.
#[derive(Clone, Debug)]
pub struct CategorySystem {
    pub cat: FiniteCategory,
    pub group: GroupTable,
    action: Vec<Vec<MorphismId>>,
    cocycle: Vec<Vec<usize>>,
}

impl CategorySystem {
    /// Builds a system from complete tables.
    pub fn new(
        cat: FiniteCategory,
        group: GroupTable,
        action: Vec<Vec<MorphismId>>,
        cocycle: Vec<Vec<usize>>,
    ) -> Result<CategorySystem> {
        let (n, m) = (group.len(), cat.num_morphisms());
        let shape = |t: usize, rows: usize, cols: &dyn Fn(usize) -> usize| t == rows && (0..rows).all(|r| cols(r) == m);
        if !shape(action.len(), n, &|r| action[r].len()) || !shape(cocycle.len(), n, &|r| cocycle[r].len()) {
            return Err(Error::Parse("action and cocycle tables must be |G| x |Λ|".into()));
        }
        if action.iter().flatten().any(|a| a.idx() >= m) || cocycle.iter().flatten().any(|&g| g >= n) {
            return Err(Error::Parse("action or cocycle table entry out of range".into()));
        }
        Ok(CategorySystem { cat, group, action, cocycle })
    }

    /// Builds a system from partial tables, filling the rest from the
    /// unit of the group (acting trivially with trivial cocycle), the
    /// defaults on identities (`g·v = v`, `φ(g, v) = g`) and the
    /// factorization rules `g·(aβ) = (g·a)(φ(g,a)·β)` and
    /// `φ(g, aβ) = φ(φ(g,a), β)` for composites.
    pub fn from_partial(
        cat: FiniteCategory,
        group: GroupTable,
        action: &BTreeMap<(usize, MorphismId), MorphismId>,
        cocycle: &BTreeMap<(usize, MorphismId), usize>,
    ) -> Result<CategorySystem> {
        let (n, m) = (group.len(), cat.num_morphisms());
        let mut act: Vec<Vec<Option<MorphismId>>> = vec![vec![None; m]; n];
        let mut phi: Vec<Vec<Option<usize>>> = vec![vec![None; m]; n];
        for (&(g, a), &b) in action {
            act[g][a.idx()] = Some(b);
        }
        for (&(g, a), &h) in cocycle {
            phi[g][a.idx()] = Some(h);
        }
        for alpha in cat.morphisms() {
            act[group.unit()][alpha.idx()].get_or_insert(alpha);
            phi[group.unit()][alpha.idx()].get_or_insert(group.unit());
        }
        for g in 0..n {
            for o in cat.objects() {
                let v = cat.identity(o);
                act[g][v.idx()].get_or_insert(v);
                phi[g][v.idx()].get_or_insert(g);
            }
        }
        // Splits α = aβ with neither factor an identity.
        let mut splits: Vec<Option<(MorphismId, MorphismId)>> = vec![None; m];
        for a in cat.morphisms().filter(|&a| !cat.is_identity(a)) {
            for b in cat.morphisms().filter(|&b| !cat.is_identity(b)) {
                if let Some(ab) = cat.compose(a, b) {
                    splits[ab.idx()].get_or_insert((a, b));
                }
            }
        }
        loop {
            let mut progress = false;
            for g in 0..n {
                for alpha in cat.morphisms() {
                    let Some((a, b)) = splits[alpha.idx()] else { continue };
                    if act[g][alpha.idx()].is_some() && phi[g][alpha.idx()].is_some() {
                        continue;
                    }
                    let (Some(ga), Some(h)) = (act[g][a.idx()], phi[g][a.idx()]) else { continue };
                    let (Some(hb), Some(k)) = (act[h][b.idx()], phi[h][b.idx()]) else { continue };
                    let Some(c) = cat.compose(ga, hb) else {
                        return Err(Error::SystemInvalid(format!(
                            "{}·{} and the shifted tail are not composable",
                            group.name(g),
                            cat.name(alpha)
                        )));
                    };
                    act[g][alpha.idx()].get_or_insert(c);
                    phi[g][alpha.idx()].get_or_insert(k);
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }
        let mut action_table = vec![Vec::with_capacity(m); n];
        let mut cocycle_table = vec![Vec::with_capacity(m); n];
        for g in 0..n {
            for alpha in cat.morphisms() {
                match (act[g][alpha.idx()], phi[g][alpha.idx()]) {
                    (Some(a), Some(h)) => {
                        action_table[g].push(a);
                        cocycle_table[g].push(h);
                    }
                    _ => {
                        return Err(Error::Parse(format!(
                            "action or cocycle undefined at ({}, {})",
                            group.name(g),
                            cat.name(alpha)
                        )))
                    }
                }
            }
        }
        CategorySystem::new(cat, group, action_table, cocycle_table)
    }

    /// The trivial group acting trivially.
    pub fn trivial(cat: FiniteCategory) -> CategorySystem {
        let m = cat.num_morphisms();
        CategorySystem {
            action: vec![cat.morphisms().collect()],
            cocycle: vec![vec![0; m]],
            group: GroupTable::trivial(),
            cat,
        }
    }

    pub fn act(&self, g: usize, alpha: MorphismId) -> MorphismId {
        self.action[g][alpha.idx()]
    }

    pub fn phi(&self, g: usize, alpha: MorphismId) -> usize {
        self.cocycle[g][alpha.idx()]
    }

    /// `g·v` on objects, read off the identities.
    pub fn act_object(&self, g: usize, o: ObjectId) -> ObjectId {
        self.cat.range(self.act(g, self.cat.identity(o)))
    }

    pub fn action_table(&self) -> &[Vec<MorphismId>] {
        &self.action
    }

    pub fn cocycle_table(&self) -> &[Vec<usize>] {
        &self.cocycle
    }
}

/// One failed law of a category system, with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SystemViolation {
    /// `(gh)·α ≠ g·(h·α)`, or the unit moves `α`.
    NotAnAction { g: String, h: String, alpha: String },
    /// `g` does not act as a bijection.
    NotAPermutation { g: String },
    /// `g` sends an identity to a non-identity.
    IdentityNotPreserved { g: String, object: String },
    /// `r(g·α) ≠ g·r(α)` or `s(g·α) ≠ g·s(α)`.
    EndpointNotEquivariant { g: String, alpha: String },
    /// `φ(gh, α) ≠ φ(g, h·α) φ(h, α)`.
    CocycleIdentity { g: String, h: String, alpha: String },
    /// `φ(g, v) ≠ g` on an object.
    CocycleOnObject { g: String, object: String },
    /// `φ(g, α)·s(α) ≠ g·s(α)`; needed for the product to have the
    /// right source.
    CocycleSource { g: String, alpha: String },
    /// `g·(αβ) ≠ (g·α)(φ(g,α)·β)`.
    Factorization { g: String, alpha: String, beta: String },
    /// `φ(g, αβ) ≠ φ(φ(g,α), β)`.
    CocycleOfComposite { g: String, alpha: String, beta: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct SystemReport {
    pub valid: bool,
    pub violations: Vec<SystemViolation>,
    /// `φ(g, α)·r(α) = g·r(α)` for all `g, α`. Reported, not required.
    pub range_variant_holds: bool,
    pub range_variant_witness: Option<(String, String)>,
}

/// Scans every law of a category system and collects all violations.
pub fn validate_system(sys: &CategorySystem) -> SystemReport {
    let cat = &sys.cat;
    let grp = &sys.group;
    let gname = |g: usize| grp.name(g).to_string();
    let mname = |a: MorphismId| cat.name(a).to_string();
    let mut v = Vec::new();
    for g in grp.elements() {
        let mut seen = vec![false; cat.num_morphisms()];
        for a in cat.morphisms() {
            seen[sys.act(g, a).idx()] = true;
        }
        if seen.iter().any(|s| !s) {
            v.push(SystemViolation::NotAPermutation { g: gname(g) });
        }
        for o in cat.objects() {
            if !cat.is_identity(sys.act(g, cat.identity(o))) {
                v.push(SystemViolation::IdentityNotPreserved { g: gname(g), object: cat.object_name(o).into() });
            }
            if sys.phi(g, cat.identity(o)) != g {
                v.push(SystemViolation::CocycleOnObject { g: gname(g), object: cat.object_name(o).into() });
            }
        }
    }
    for a in cat.morphisms() {
        if sys.act(grp.unit(), a) != a {
            v.push(SystemViolation::NotAnAction { g: gname(grp.unit()), h: gname(grp.unit()), alpha: mname(a) });
        }
    }
    let mut range_witness = None;
    for g in grp.elements() {
        for a in cat.morphisms() {
            let ga = sys.act(g, a);
            if cat.range(ga) != sys.act_object(g, cat.range(a)) || cat.source(ga) != sys.act_object(g, cat.source(a)) {
                v.push(SystemViolation::EndpointNotEquivariant { g: gname(g), alpha: mname(a) });
            }
            let h = sys.phi(g, a);
            if sys.act_object(h, cat.source(a)) != sys.act_object(g, cat.source(a)) {
                v.push(SystemViolation::CocycleSource { g: gname(g), alpha: mname(a) });
            }
            if range_witness.is_none() && sys.act_object(h, cat.range(a)) != sys.act_object(g, cat.range(a)) {
                range_witness = Some((gname(g), mname(a)));
            }
            for h in grp.elements() {
                let gh = grp.mul(g, h);
                if sys.act(gh, a) != sys.act(g, sys.act(h, a)) {
                    v.push(SystemViolation::NotAnAction { g: gname(g), h: gname(h), alpha: mname(a) });
                }
                if sys.phi(gh, a) != grp.mul(sys.phi(g, sys.act(h, a)), sys.phi(h, a)) {
                    v.push(SystemViolation::CocycleIdentity { g: gname(g), h: gname(h), alpha: mname(a) });
                }
            }
            for b in cat.morphisms() {
                let Some(ab) = cat.compose(a, b) else { continue };
                let h = sys.phi(g, a);
                let lhs = sys.act(g, ab);
                if cat.compose(ga, sys.act(h, b)) != Some(lhs) {
                    v.push(SystemViolation::Factorization { g: gname(g), alpha: mname(a), beta: mname(b) });
                }
                if sys.phi(g, ab) != sys.phi(h, b) {
                    v.push(SystemViolation::CocycleOfComposite { g: gname(g), alpha: mname(a), beta: mname(b) });
                }
            }
        }
    }
    SystemReport {
        valid: v.is_empty(),
        violations: v,
        range_variant_holds: range_witness.is_none(),
        range_variant_witness: range_witness,
    }
}

/// `Λ ⋊ G` together with the coordinates of each of its morphisms.
#[derive(Clone, Debug)]
pub struct ZsProduct {
    pub cat: FiniteCategory,
    /// `(α, g)` for each product morphism id.
    pub coords: Vec<(MorphismId, usize)>,
    index: HashMap<(MorphismId, usize), MorphismId>,
}

impl ZsProduct {
    pub fn id(&self, alpha: MorphismId, g: usize) -> MorphismId {
        self.index[&(alpha, g)]
    }

    pub fn base(&self, m: MorphismId) -> MorphismId {
        self.coords[m.idx()].0
    }

    pub fn group_part(&self, m: MorphismId) -> usize {
        self.coords[m.idx()].1
    }
}

/// The Zappa-Szép product. Morphism `(α, g)` gets id `α·|G| + g` and is
/// named `α` when `g` is the unit and `α|g` otherwise.
pub fn zs_product(sys: &CategorySystem) -> Result<ZsProduct> {
    let report = validate_system(sys);
    if !report.valid {
        return Err(Error::SystemInvalid(
            serde_json::to_string(&report.violations[0]).unwrap_or_else(|_| "invalid system".into()),
        ));
    }
    let (cat, grp) = (&sys.cat, &sys.group);
    let n = grp.len();
    let mut coords = Vec::new();
    let mut names = Vec::new();
    let mut range = Vec::new();
    let mut source = Vec::new();
    for a in cat.morphisms() {
        for g in grp.elements() {
            coords.push((a, g));
            names.push(if g == grp.unit() {
                cat.name(a).to_string()
            } else {
                format!("{}|{}", cat.name(a), grp.name(g))
            });
            range.push(cat.range(a));
            source.push(sys.act_object(grp.inv(g), cat.source(a)));
        }
    }
    let id = |a: MorphismId, g: usize| MorphismId((a.idx() * n + g) as u32);
    let identities: Vec<MorphismId> = cat.objects().map(|o| id(cat.identity(o), grp.unit())).collect();
    let mut composites = Vec::new();
    for (x, &(a, g)) in coords.iter().enumerate() {
        for (y, &(b, h)) in coords.iter().enumerate() {
            if source[x] != range[y] {
                continue;
            }
            let c = cat.compose(a, sys.act(g, b)).ok_or_else(|| {
                Error::SystemInvalid(format!(
                    "({}, {}) and ({}, {}) do not compose",
                    cat.name(a),
                    grp.name(g),
                    cat.name(b),
                    grp.name(h)
                ))
            })?;
            composites.push((MorphismId(x as u32), MorphismId(y as u32), id(c, grp.mul(sys.phi(g, b), h))));
        }
    }
    let index = coords.iter().enumerate().map(|(i, &c)| (c, MorphismId(i as u32))).collect();
    let product = FiniteCategory::from_parts(cat.object_names().to_vec(), names, identities, range, source, composites);
    product.ensure_valid()?;
    Ok(ZsProduct { cat: product, coords, index })
}

/// `g ≠ 1` with `g·α = α` and `φ(g, α) = 1`.
pub fn pseudo_freeness_witness(sys: &CategorySystem) -> Option<(usize, MorphismId)> {
    let u = sys.group.unit();
    sys.group
        .elements()
        .filter(|&g| g != u)
        .flat_map(|g| sys.cat.morphisms().map(move |a| (g, a)))
        .find(|&(g, a)| sys.act(g, a) == a && sys.phi(g, a) == u)
}

/// `g₁ ≠ g₂` with `g₁·α = g₂·α` and `φ(g₁, α) = φ(g₂, α)`; absent in any
/// pseudo free system.
pub fn separation_witness(sys: &CategorySystem) -> Option<(usize, usize, MorphismId)> {
    for g1 in sys.group.elements() {
        for g2 in g1 + 1..sys.group.len() {
            for a in sys.cat.morphisms() {
                if sys.act(g1, a) == sys.act(g2, a) && sys.phi(g1, a) == sys.phi(g2, a) {
                    return Some((g1, g2, a));
                }
            }
        }
    }
    None
}

/// Number of non-identity factors in the longest factorization of `α`.
pub fn factor_length(cat: &FiniteCategory) -> Vec<usize> {
    let m = cat.num_morphisms();
    let mut len = vec![0usize; m];
    // Lengths only grow along composition, so m rounds of relaxation settle.
    for _ in 0..m {
        let mut changed = false;
        for a in cat.morphisms().filter(|&a| !cat.is_identity(a)) {
            let mut best = 1;
            for b in cat.morphisms().filter(|&b| !cat.is_identity(b) && b != a) {
                for c in cat.morphisms().filter(|&c| !cat.is_identity(c) && c != a) {
                    if cat.compose(b, c) == Some(a) {
                        best = best.max(len[b.idx()] + len[c.idx()]);
                    }
                }
            }
            if best.min(m) != len[a.idx()] {
                len[a.idx()] = best.min(m);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    len
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeVerdict {
    Faithful,
    NotFaithful,
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeReport {
    pub verdict: TreeVerdict,
    pub depth: usize,
    /// `(g, v)` with `g ≠ 1` fixing every path of positive length into `v`
    /// up to the depth, with trivial cocycle.
    pub survivors: Vec<(String, String)>,
    /// Objects with no path of positive length ending there; the test says
    /// nothing about them.
    pub skipped_objects: Vec<String>,
}

/// Depth-bounded test of whether every `g ≠ 1` is detected on the paths of
/// positive length ending at each object. Exact when the category is not a
/// truncation and the depth covers its longest path.
pub fn faithful_on_vertex_trees(sys: &CategorySystem, depth: usize) -> TreeReport {
    let cat = &sys.cat;
    let grp = &sys.group;
    let len = factor_length(cat);
    let longest = len.iter().copied().max().unwrap_or(0);
    let exact = cat.is_exact() && depth >= longest;
    let mut survivors = Vec::new();
    let mut skipped = Vec::new();
    for o in cat.objects() {
        let tree: Vec<MorphismId> = cat.with_range(o).filter(|&l| len[l.idx()] >= 1 && len[l.idx()] <= depth).collect();
        if tree.is_empty() {
            skipped.push(cat.object_name(o).to_string());
            continue;
        }
        for g in grp.elements().filter(|&g| g != grp.unit()) {
            if tree.iter().all(|&l| sys.act(g, l) == l && sys.phi(g, l) == grp.unit()) {
                survivors.push((grp.name(g).to_string(), cat.object_name(o).to_string()));
            }
        }
    }
    let verdict = if survivors.is_empty() {
        TreeVerdict::Faithful
    } else if exact {
        TreeVerdict::NotFaithful
    } else {
        TreeVerdict::Undecided
    };
    TreeReport { verdict, depth, survivors, skipped_objects: skipped }
}
