use super::{FiniteCategory, MorphismId};
use crate::error::Result;
use std::fmt::Debug;

/// Read access to a small category.
///
/// Finite tables and lazily explored path categories both implement this.
/// Operations that need the full morphism set go through
/// [`CategoryProvider::morphisms`], which fails for infinite providers.
pub trait CategoryProvider {
    type Morphism: Clone + Ord + Debug;

    /// Identity arrows.
    fn objects(&self) -> Vec<Self::Morphism>;
    fn morphisms(&self) -> Result<Vec<Self::Morphism>>;
    fn source_unit(&self, m: &Self::Morphism) -> Self::Morphism;
    fn range_unit(&self, m: &Self::Morphism) -> Self::Morphism;
    fn composite(&self, a: &Self::Morphism, b: &Self::Morphism) -> Option<Self::Morphism>;
    fn is_known_finite(&self) -> bool;

    /// `a ≤ b` iff `b ∈ aΛ`.
    fn leq(&self, a: &Self::Morphism, b: &Self::Morphism) -> Result<bool> {
        if self.range_unit(a) != self.range_unit(b) {
            return Ok(false);
        }
        Ok(self.morphisms()?.iter().any(|x| self.composite(a, x).as_ref() == Some(b)))
    }

    /// `a ≈ b` iff `b = a u` for an invertible `u`.
    fn approx(&self, a: &Self::Morphism, b: &Self::Morphism) -> Result<bool> {
        let ms = self.morphisms()?;
        for u in &ms {
            if self.composite(a, u).as_ref() != Some(b) {
                continue;
            }
            let invertible = ms.iter().any(|v| {
                self.composite(u, v).as_ref() == Some(&self.range_unit(u))
                    && self.composite(v, u).as_ref() == Some(&self.source_unit(u))
            });
            if invertible {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Minimal common extensions of `a` and `b`, one per `≈` class, sorted.
    fn minimal_common_extensions(&self, a: &Self::Morphism, b: &Self::Morphism) -> Result<Vec<Self::Morphism>> {
        if self.range_unit(a) != self.range_unit(b) {
            return Ok(Vec::new());
        }
        let ms = self.morphisms()?;
        let mut common = Vec::new();
        for x in &ms {
            if self.leq(a, x)? && self.leq(b, x)? {
                common.push(x.clone());
            }
        }
        let mut out: Vec<Self::Morphism> = Vec::new();
        for x in &common {
            let mut minimal = true;
            for y in &common {
                if self.leq(y, x)? && !self.leq(x, y)? {
                    minimal = false;
                    break;
                }
            }
            if !minimal {
                continue;
            }
            let mut fresh = true;
            for y in &out {
                if self.leq(y, x)? {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                out.push(x.clone());
            }
        }
        out.sort();
        Ok(out)
    }
}

impl CategoryProvider for FiniteCategory {
    type Morphism = MorphismId;

    fn objects(&self) -> Vec<MorphismId> {
        FiniteCategory::objects(self).map(|o| self.identity(o)).collect()
    }

    fn morphisms(&self) -> Result<Vec<MorphismId>> {
        Ok(FiniteCategory::morphisms(self).collect())
    }

    fn source_unit(&self, m: &MorphismId) -> MorphismId {
        self.s(*m)
    }

    fn range_unit(&self, m: &MorphismId) -> MorphismId {
        self.r(*m)
    }

    fn composite(&self, a: &MorphismId, b: &MorphismId) -> Option<MorphismId> {
        self.compose(*a, *b)
    }

    fn is_known_finite(&self) -> bool {
        true
    }
}
