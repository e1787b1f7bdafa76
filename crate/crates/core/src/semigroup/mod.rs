//! The inverse semigroup of shift maps generated by a left cancellative
//! category, and its join completion.
//!
//! An element is a finite join of single shift pairs `(α, β)` with
//! `s(α) = s(β)`. The pair acts as the partial bijection `βγ ↦ αγ`.
//! Elements are kept in a normal form that makes structural equality
//! coincide with equality of the underlying partial bijections:
//!
//! * each pair is rewritten so that `β` is the least id of its `≈` class
//!   (right multiplying both sides by the same invertible);
//! * pairs whose `β` extends the `β` of another pair are dropped, since the
//!   shorter pair already covers them;
//! * the remaining pairs are sorted.
//!
//! The empty join is the zero element.

mod bijection;
mod generate;

pub use bijection::PartialBijection;
pub use generate::{
    generate_join_completion, generate_semigroup, generate_semigroup_partial, oracle_closure_size,
    weak_semilattice_witness, Semigroup,
};

use crate::category::{Lcsc, MorphismId};
use crate::error::{Error, Result};
use std::fmt::Write;

/// A single shift pair `(α, β)`, acting as `βγ ↦ αγ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShiftPair {
    pub alpha: MorphismId,
    pub beta: MorphismId,
}

/// A join of compatible shift pairs in normal form. No pairs means zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Element {
    pairs: Vec<ShiftPair>,
}

impl Element {
    pub fn zero() -> Element {
        Element { pairs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[ShiftPair] {
        &self.pairs
    }

    /// Whether this is a single pair rather than a proper join.
    pub fn is_single(&self) -> bool {
        self.pairs.len() == 1
    }
}

impl Lcsc {
    /// Rewrites a pair so its `β` is the canonical member of its `≈` class.
    pub fn canonical_pair(&self, p: ShiftPair) -> ShiftPair {
        let rep = self.class_rep(p.beta);
        if rep == p.beta {
            return p;
        }
        let u = self.quotient(p.beta, rep).expect("class members divide each other");
        ShiftPair { alpha: self.mul(p.alpha, u), beta: rep }
    }

    pub fn shift_pair(&self, alpha: MorphismId, beta: MorphismId) -> Result<ShiftPair> {
        if self.source(alpha) != self.source(beta) {
            return Err(Error::SourceMismatch { alpha: self.name(alpha).into(), beta: self.name(beta).into() });
        }
        Ok(self.canonical_pair(ShiftPair { alpha, beta }))
    }

    /// The single pair element mapping `βγ ↦ αγ`.
    pub fn elem(&self, alpha: MorphismId, beta: MorphismId) -> Result<Element> {
        Ok(Element { pairs: vec![self.shift_pair(alpha, beta)?] })
    }

    /// `γ ↦ αγ` on `s(α)Λ`.
    pub fn tau(&self, alpha: MorphismId) -> Element {
        Element { pairs: vec![self.canonical_pair(ShiftPair { alpha, beta: self.s(alpha) })] }
    }

    /// `αγ ↦ γ` on `αΛ`.
    pub fn sigma(&self, alpha: MorphismId) -> Element {
        Element { pairs: vec![self.canonical_pair(ShiftPair { alpha: self.s(alpha), beta: alpha })] }
    }

    /// Normal form of a family of pairs already known to be compatible.
    fn reduce(&self, pairs: impl IntoIterator<Item = ShiftPair>) -> Element {
        let mut ps: Vec<ShiftPair> = pairs.into_iter().map(|p| self.canonical_pair(p)).collect();
        ps.sort();
        ps.dedup();
        let keep: Vec<ShiftPair> =
            ps.iter().copied().filter(|p| !ps.iter().any(|q| q.beta != p.beta && self.leq(q.beta, p.beta))).collect();
        Element { pairs: keep }
    }

    /// Normal form of an arbitrary family, checking compatibility.
    pub fn irredundant_normal_form(&self, pairs: &[ShiftPair]) -> Result<Element> {
        let mut singles = Vec::with_capacity(pairs.len());
        for p in pairs {
            singles.push(Element { pairs: vec![self.shift_pair(p.alpha, p.beta)?] });
        }
        for i in 0..singles.len() {
            for j in i + 1..singles.len() {
                if !self.compatible(&singles[i], &singles[j]) {
                    return Err(Error::IncompatiblePairs(
                        self.pair_name(singles[i].pairs[0]),
                        self.pair_name(singles[j].pairs[0]),
                    ));
                }
            }
        }
        Ok(self.reduce(singles.into_iter().map(|e| e.pairs[0])))
    }

    /// Join of compatible elements.
    pub fn join(&self, elements: &[Element]) -> Result<Element> {
        let all: Vec<ShiftPair> = elements.iter().flat_map(|e| e.pairs.iter().copied()).collect();
        self.irredundant_normal_form(&all)
    }

    /// Semigroup product `st`: apply `t` first, then `s`.
    pub fn product(&self, s: &Element, t: &Element) -> Element {
        let mut out = Vec::new();
        for p in &s.pairs {
            for q in &t.pairs {
                for &eps in self.mce(p.beta, q.alpha) {
                    let x = self.quotient(p.beta, eps).expect("ε extends β");
                    let y = self.quotient(q.alpha, eps).expect("ε extends α");
                    out.push(ShiftPair { alpha: self.mul(p.alpha, x), beta: self.mul(q.beta, y) });
                }
            }
        }
        self.reduce(out)
    }

    /// The inverse `s*`.
    pub fn star(&self, s: &Element) -> Element {
        self.reduce(s.pairs.iter().map(|p| ShiftPair { alpha: p.beta, beta: p.alpha }))
    }

    pub fn is_idempotent(&self, s: &Element) -> bool {
        s.pairs.iter().all(|p| p.alpha == p.beta)
    }

    /// `s*s`, the identity on the domain of `s`.
    pub fn domain_idempotent(&self, s: &Element) -> Element {
        self.product(&self.star(s), s)
    }

    /// `ss*`, the identity on the range of `s`.
    pub fn range_idempotent(&self, s: &Element) -> Element {
        self.product(s, &self.star(s))
    }

    /// `s ≤ t` in the natural order: every pair of `s` is a right
    /// extension `(γε, δε)` of a pair `(γ, δ)` of `t`.
    pub fn natural_leq(&self, s: &Element, t: &Element) -> bool {
        s.pairs.iter().all(|p| {
            t.pairs.iter().any(|q| match self.quotient(q.beta, p.beta) {
                Some(eps) => self.compose(q.alpha, eps) == Some(p.alpha),
                None => false,
            })
        })
    }

    /// Both `s*t` and `st*` are idempotent.
    pub fn compatible(&self, s: &Element, t: &Element) -> bool {
        self.is_idempotent(&self.product(&self.star(s), t)) && self.is_idempotent(&self.product(s, &self.star(t)))
    }

    /// `s` restricted to the domain of an idempotent `e ≤ s*s`.
    pub fn restrict(&self, s: &Element, e: &Element) -> Result<Element> {
        if !self.is_idempotent(e) || !self.natural_leq(e, &self.domain_idempotent(s)) {
            return Err(Error::NotASubIdempotent);
        }
        Ok(self.product(s, e))
    }

    /// Evaluates a zigzag `(α1, β1, …, αn, βn)` as `σ^{α1} τ^{β1} ⋯ σ^{αn} τ^{βn}`.
    pub fn zigzag_eval(&self, word: &[(MorphismId, MorphismId)]) -> Result<Element> {
        if word.is_empty() {
            return Err(Error::MalformedZigzag("empty word".into()));
        }
        for (i, &(a, b)) in word.iter().enumerate() {
            if self.range(a) != self.range(b) {
                return Err(Error::MalformedZigzag(format!(
                    "position {i}: {} and {} have different ranges",
                    self.name(a),
                    self.name(b)
                )));
            }
            if let Some(&(next, _)) = word.get(i + 1) {
                if self.source(next) != self.source(b) {
                    return Err(Error::MalformedZigzag(format!(
                        "position {i}: {} and {} have different sources",
                        self.name(b),
                        self.name(next)
                    )));
                }
            }
        }
        let mut acc: Option<Element> = None;
        for &(a, b) in word {
            let piece = self.product(&self.sigma(a), &self.tau(b));
            acc = Some(match acc {
                None => piece,
                Some(x) => self.product(&x, &piece),
            });
        }
        Ok(acc.expect("nonempty word"))
    }

    /// Image of `γ` under `s`, if `γ` is in its domain.
    pub fn apply(&self, s: &Element, gamma: MorphismId) -> Option<MorphismId> {
        s.pairs.iter().find_map(|p| self.quotient(p.beta, gamma).map(|x| self.mul(p.alpha, x)))
    }

    /// The partial bijection of `Λ` that `s` denotes.
    pub fn as_partial_bijection(&self, s: &Element) -> PartialBijection {
        PartialBijection::from_map(self.morphisms().map(|g| self.apply(s, g)).collect())
    }

    pub fn pair_name(&self, p: ShiftPair) -> String {
        format!("{},{}", self.name(p.alpha), self.name(p.beta))
    }

    /// Human readable rendering, e.g. `(a,b) v (c,d)` or `0`.
    pub fn display(&self, s: &Element) -> String {
        if s.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, p) in s.pairs.iter().enumerate() {
            if i > 0 {
                out.push_str(" v ");
            }
            let _ = write!(out, "({})", self.pair_name(*p));
        }
        out
    }
}
