//! Finite small categories given by explicit composition tables, the
//! cancellation and alignment scans, and path categories of directed graphs.

mod graph;
mod order;
mod provider;

pub use graph::{Graph, Path, PathProvider};
pub use order::Lcsc;
pub use provider::CategoryProvider;

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

/// Dense index of a morphism. Identity arrows of objects are morphisms too.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MorphismId(pub u32);

/// Dense index of an object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ObjectId(pub u32);

impl MorphismId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl ObjectId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// A finite category stored as a dense partial composition table.
///
/// The table is not trusted: [`FiniteCategory::validate`] reports every
/// axiom violation with a witness, and [`Lcsc::new`] refuses invalid input.
/// `compose(a, b)` is the composite `ab`, defined when `s(a) = r(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    object_names: Vec<String>,
    morphism_names: Vec<String>,
    identities: Vec<MorphismId>,
    range: Vec<ObjectId>,
    source: Vec<ObjectId>,
    table: Vec<Option<MorphismId>>,
    truncated: Option<usize>,
}

/// One failed category axiom, with the morphisms that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    IdentityNotEndomorphism { object: String },
    UnitLaw { left: String, right: String },
    MissingComposite { left: String, right: String },
    SpuriousComposite { left: String, right: String },
    EndpointMismatch { left: String, right: String, composite: String },
    Associativity { a: String, b: String, c: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub objects: usize,
    pub morphisms: usize,
    pub exact: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl FiniteCategory {
    /// Assembles a table without checking anything.
    ///
    /// `identities[o]` is the identity arrow of object `o`; `range`/`source`
    /// give the endpoints of each morphism; `composites` lists `(a, b, ab)`.
    pub fn from_parts(
        object_names: Vec<String>,
        morphism_names: Vec<String>,
        identities: Vec<MorphismId>,
        range: Vec<ObjectId>,
        source: Vec<ObjectId>,
        composites: impl IntoIterator<Item = (MorphismId, MorphismId, MorphismId)>,
    ) -> Self {
        let n = morphism_names.len();
        let mut table = vec![None; n * n];
        for (a, b, ab) in composites {
            table[a.idx() * n + b.idx()] = Some(ab);
        }
        FiniteCategory { object_names, morphism_names, identities, range, source, table, truncated: None }
    }

    pub(crate) fn set_truncated(&mut self, depth: Option<usize>) {
        self.truncated = depth;
    }

    /// Depth bound if this table is a truncation of an infinite category.
    pub fn truncated(&self) -> Option<usize> {
        self.truncated
    }

    pub fn is_exact(&self) -> bool {
        self.truncated.is_none()
    }

    pub fn num_objects(&self) -> usize {
        self.object_names.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphism_names.len()
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorphismId> + Clone {
        (0..self.morphism_names.len() as u32).map(MorphismId)
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> + Clone {
        (0..self.object_names.len() as u32).map(ObjectId)
    }

    pub fn identity(&self, o: ObjectId) -> MorphismId {
        self.identities[o.idx()]
    }

    pub fn is_identity(&self, m: MorphismId) -> bool {
        self.identities.contains(&m)
    }

    pub fn range(&self, m: MorphismId) -> ObjectId {
        self.range[m.idx()]
    }

    pub fn source(&self, m: MorphismId) -> ObjectId {
        self.source[m.idx()]
    }

    /// Identity arrow at the range of `m`.
    pub fn r(&self, m: MorphismId) -> MorphismId {
        self.identity(self.range(m))
    }

    /// Identity arrow at the source of `m`.
    pub fn s(&self, m: MorphismId) -> MorphismId {
        self.identity(self.source(m))
    }

    pub fn compose(&self, a: MorphismId, b: MorphismId) -> Option<MorphismId> {
        self.table[a.idx() * self.num_morphisms() + b.idx()]
    }

    pub fn name(&self, m: MorphismId) -> &str {
        &self.morphism_names[m.idx()]
    }

    pub fn object_name(&self, o: ObjectId) -> &str {
        &self.object_names[o.idx()]
    }

    pub fn morphism_names(&self) -> &[String] {
        &self.morphism_names
    }

    pub fn object_names(&self) -> &[String] {
        &self.object_names
    }

    pub fn lookup(&self, name: &str) -> Option<MorphismId> {
        self.morphism_names.iter().position(|n| n == name).map(|i| MorphismId(i as u32))
    }

    /// Morphisms whose range is `o`, i.e. the set written `o Λ`.
    pub fn with_range(&self, o: ObjectId) -> impl Iterator<Item = MorphismId> + '_ {
        self.morphisms().filter(move |&m| self.range(m) == o)
    }

    /// Morphisms whose source is `o`, i.e. the set written `Λ o`.
    pub fn with_source(&self, o: ObjectId) -> impl Iterator<Item = MorphismId> + '_ {
        self.morphisms().filter(move |&m| self.source(m) == o)
    }

    /// Checks every category axiom and lists each violation with a witness.
    ///
    /// For truncated path categories, composites that would leave the depth
    /// bound are expected to be missing and are not reported.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let nm = |m: MorphismId| self.name(m).to_string();
        for o in self.objects() {
            let id = self.identity(o);
            if self.range(id) != o || self.source(id) != o {
                violations.push(Violation::IdentityNotEndomorphism { object: self.object_name(o).to_string() });
            }
        }
        for f in self.morphisms() {
            let (rf, sf) = (self.r(f), self.s(f));
            if self.compose(rf, f) != Some(f) {
                violations.push(Violation::UnitLaw { left: nm(rf), right: nm(f) });
            }
            if self.compose(f, sf) != Some(f) {
                violations.push(Violation::UnitLaw { left: nm(f), right: nm(sf) });
            }
        }
        for a in self.morphisms() {
            for b in self.morphisms() {
                let composable = self.source(a) == self.range(b);
                match self.compose(a, b) {
                    None if composable && self.truncated.is_none() => {
                        violations.push(Violation::MissingComposite { left: nm(a), right: nm(b) })
                    }
                    Some(_) if !composable => {
                        violations.push(Violation::SpuriousComposite { left: nm(a), right: nm(b) })
                    }
                    Some(ab) if self.range(ab) != self.range(a) || self.source(ab) != self.source(b) => {
                        violations.push(Violation::EndpointMismatch { left: nm(a), right: nm(b), composite: nm(ab) })
                    }
                    _ => {}
                }
            }
        }
        for a in self.morphisms() {
            for b in self.morphisms() {
                let Some(ab) = self.compose(a, b) else { continue };
                for c in self.morphisms() {
                    let Some(bc) = self.compose(b, c) else { continue };
                    let lhs = self.compose(ab, c);
                    let rhs = self.compose(a, bc);
                    if lhs != rhs && (self.truncated.is_none() || (lhs.is_some() && rhs.is_some())) {
                        violations.push(Violation::Associativity { a: nm(a), b: nm(b), c: nm(c) });
                    }
                }
            }
        }
        ValidationReport {
            objects: self.num_objects(),
            morphisms: self.num_morphisms(),
            exact: self.is_exact(),
            violations,
        }
    }

    /// Returns an error describing the first violation, if any.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidCategory(serde_json::to_string(v).unwrap_or_else(|_| format!("{v:?}")))),
        }
    }
}

/// Incremental construction of a [`FiniteCategory`] from string names.
///
/// Identity composites are filled in automatically unless
/// [`CategoryBuilder::explicit_units`] is called. Names are densified in
/// sorted order so that ids do not depend on insertion order.
#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: BTreeMap<String, (String, String)>,
    composites: Vec<(String, String, String)>,
    explicit_units: bool,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, name: &str) -> Self {
        self.objects.push(name.to_string());
        self
    }

    pub fn objects(mut self, names: &[&str]) -> Self {
        self.objects.extend(names.iter().map(|s| s.to_string()));
        self
    }

    /// Adds a morphism `name : source -> range`.
    pub fn morphism(mut self, name: &str, source: &str, range: &str) -> Self {
        self.morphisms.insert(name.to_string(), (source.to_string(), range.to_string()));
        self
    }

    /// Records the composite `left * right = value`.
    pub fn compose(mut self, left: &str, right: &str, value: &str) -> Self {
        self.composites.push((left.to_string(), right.to_string(), value.to_string()));
        self
    }

    pub fn explicit_units(mut self) -> Self {
        self.explicit_units = true;
        self
    }

    pub fn build(self) -> Result<FiniteCategory> {
        let mut objects = self.objects.clone();
        objects.sort();
        objects.dedup();
        if objects.len() != self.objects.len() {
            return Err(Error::Parse("duplicate object name".into()));
        }
        let mut all: Vec<String> = objects.clone();
        for name in self.morphisms.keys() {
            if objects.binary_search(name).is_ok() {
                return Err(Error::Parse(format!("morphism {name:?} reuses an object name")));
            }
            all.push(name.clone());
        }
        all.sort();
        let mid = |name: &str| -> Result<MorphismId> {
            all.binary_search_by(|x| x.as_str().cmp(name))
                .map(|i| MorphismId(i as u32))
                .map_err(|_| Error::Parse(format!("unknown morphism {name:?}")))
        };
        let oid = |name: &str| -> Result<ObjectId> {
            objects
                .binary_search_by(|x| x.as_str().cmp(name))
                .map(|i| ObjectId(i as u32))
                .map_err(|_| Error::Parse(format!("unknown object {name:?}")))
        };
        let mut range = vec![ObjectId(0); all.len()];
        let mut source = vec![ObjectId(0); all.len()];
        let mut identities = Vec::with_capacity(objects.len());
        for o in &objects {
            let m = mid(o)?;
            let oo = oid(o)?;
            range[m.idx()] = oo;
            source[m.idx()] = oo;
            identities.push(m);
        }
        for (name, (s, r)) in &self.morphisms {
            let m = mid(name)?;
            source[m.idx()] = oid(s)?;
            range[m.idx()] = oid(r)?;
        }
        let mut entries: BTreeMap<(MorphismId, MorphismId), MorphismId> = BTreeMap::new();
        for (a, b, ab) in &self.composites {
            let key = (mid(a)?, mid(b)?);
            let val = mid(ab)?;
            if let Some(prev) = entries.insert(key, val) {
                if prev != val {
                    return Err(Error::Parse(format!("conflicting composites for {a}*{b}")));
                }
            }
        }
        if !self.explicit_units {
            for m in 0..all.len() {
                let m = MorphismId(m as u32);
                let rm = identities[range[m.idx()].idx()];
                let sm = identities[source[m.idx()].idx()];
                entries.entry((rm, m)).or_insert(m);
                entries.entry((m, sm)).or_insert(m);
            }
        }
        Ok(FiniteCategory::from_parts(
            objects,
            all,
            identities,
            range,
            source,
            entries.into_iter().map(|((a, b), c)| (a, b, c)),
        ))
    }
}

/// A failed cancellation law: `x*a = x*b` (left) or `a*x = b*x` (right)
/// with `a != b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CancellationWitness<M> {
    pub x: M,
    pub a: M,
    pub b: M,
}

/// Scans for `x, a, b` with `xa = xb` and `a != b`.
pub fn left_cancellation_witness<P: CategoryProvider>(p: &P) -> Result<Option<CancellationWitness<P::Morphism>>> {
    let ms = p.morphisms()?;
    for x in &ms {
        let mut seen: BTreeMap<P::Morphism, P::Morphism> = BTreeMap::new();
        for a in &ms {
            if let Some(xa) = p.composite(x, a) {
                if let Some(prev) = seen.insert(xa, a.clone()) {
                    return Ok(Some(CancellationWitness { x: x.clone(), a: prev, b: a.clone() }));
                }
            }
        }
    }
    Ok(None)
}

/// Scans for `x, a, b` with `ax = bx` and `a != b`.
pub fn right_cancellation_witness<P: CategoryProvider>(p: &P) -> Result<Option<CancellationWitness<P::Morphism>>> {
    let ms = p.morphisms()?;
    for x in &ms {
        let mut seen: BTreeMap<P::Morphism, P::Morphism> = BTreeMap::new();
        for a in &ms {
            if let Some(ax) = p.composite(a, x) {
                if let Some(prev) = seen.insert(ax, a.clone()) {
                    return Ok(Some(CancellationWitness { x: x.clone(), a: prev, b: a.clone() }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_left_cancellative<P: CategoryProvider>(p: &P) -> Result<bool> {
    Ok(left_cancellation_witness(p)?.is_none())
}

pub fn is_right_cancellative<P: CategoryProvider>(p: &P) -> Result<bool> {
    Ok(right_cancellation_witness(p)?.is_none())
}

/// Returns `(a, b)` with `ab` an identity but `b` not an identity, if any.
pub fn inverse_witness<P: CategoryProvider>(p: &P) -> Result<Option<(P::Morphism, P::Morphism)>> {
    let ms = p.morphisms()?;
    let objs = p.objects();
    for a in &ms {
        for b in &ms {
            if let Some(ab) = p.composite(a, b) {
                if ab == p.source_unit(b) && !objs.contains(b) {
                    return Ok(Some((a.clone(), b.clone())));
                }
            }
        }
    }
    Ok(None)
}

/// True when only identities have inverses.
pub fn has_no_inverses<P: CategoryProvider>(p: &P) -> Result<bool> {
    Ok(inverse_witness(p)?.is_none())
}

/// Morphisms with a two sided inverse.
pub fn invertibles<P: CategoryProvider>(p: &P) -> Result<Vec<P::Morphism>> {
    let ms = p.morphisms()?;
    let mut out = Vec::new();
    for a in &ms {
        let has_inverse = ms.iter().any(|b| {
            p.composite(a, b).as_ref() == Some(&p.range_unit(a))
                && p.composite(b, a).as_ref() == Some(&p.source_unit(a))
        });
        if has_inverse {
            out.push(a.clone());
        }
    }
    Ok(out)
}

/// Finitely aligned: every `αΛ ∩ βΛ` is generated by finitely many
/// morphisms. Holds for every finite category; infinite providers report
/// [`Error::InfiniteCategory`] because the scan cannot terminate.
pub fn is_finitely_aligned<P: CategoryProvider>(p: &P) -> Result<bool> {
    let ms = p.morphisms()?;
    for a in &ms {
        for b in &ms {
            p.minimal_common_extensions(a, b)?;
        }
    }
    Ok(true)
}

/// Returns a pair whose common extensions are not generated by one morphism.
pub fn singly_aligned_witness<P: CategoryProvider>(p: &P) -> Result<Option<(P::Morphism, P::Morphism)>> {
    let ms = p.morphisms()?;
    for a in &ms {
        for b in &ms {
            if p.minimal_common_extensions(a, b)?.len() > 1 {
                return Ok(Some((a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}

pub fn is_singly_aligned<P: CategoryProvider>(p: &P) -> Result<bool> {
    Ok(singly_aligned_witness(p)?.is_none())
}
