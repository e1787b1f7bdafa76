use crate::category::{FiniteCategory, MorphismId};

/// A partial injective map of the morphisms of a finite category, built
/// straight from the composition table. Used as an independent model of the
/// shift semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialBijection {
    map: Vec<Option<MorphismId>>,
}

impl PartialBijection {
    pub fn from_map(map: Vec<Option<MorphismId>>) -> Self {
        PartialBijection { map }
    }

    pub fn empty(n: usize) -> Self {
        PartialBijection { map: vec![None; n] }
    }

    pub fn get(&self, x: MorphismId) -> Option<MorphismId> {
        self.map[x.idx()]
    }

    pub fn as_slice(&self) -> &[Option<MorphismId>] {
        &self.map
    }

    pub fn domain(&self) -> Vec<MorphismId> {
        (0..self.map.len()).filter(|&i| self.map[i].is_some()).map(|i| MorphismId(i as u32)).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.map.iter().all(Option::is_none)
    }

    /// `γ ↦ αγ` for every `γ` composable with `α`.
    pub fn left_multiplication(cat: &FiniteCategory, alpha: MorphismId) -> Self {
        PartialBijection { map: cat.morphisms().map(|g| cat.compose(alpha, g)).collect() }
    }

    /// `αγ ↦ γ`, found by scanning the table.
    pub fn left_division(cat: &FiniteCategory, alpha: MorphismId) -> Self {
        let mut map = vec![None; cat.num_morphisms()];
        for g in cat.morphisms() {
            if let Some(ag) = cat.compose(alpha, g) {
                map[ag.idx()] = Some(g);
            }
        }
        PartialBijection { map }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.map.len()];
        for y in self.map.iter().flatten() {
            if std::mem::replace(&mut seen[y.idx()], true) {
                return false;
            }
        }
        true
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &PartialBijection) -> PartialBijection {
        PartialBijection { map: other.map.iter().map(|x| x.and_then(|y| self.map[y.idx()])).collect() }
    }

    pub fn inverse(&self) -> PartialBijection {
        let mut map = vec![None; self.map.len()];
        for (i, y) in self.map.iter().enumerate() {
            if let Some(y) = y {
                map[y.idx()] = Some(MorphismId(i as u32));
            }
        }
        PartialBijection { map }
    }

    /// Union of two maps, if it is still a partial bijection.
    pub fn union(&self, other: &PartialBijection) -> Option<PartialBijection> {
        let mut map = self.map.clone();
        for (i, y) in other.map.iter().enumerate() {
            match (map[i], y) {
                (Some(a), Some(b)) if a != *b => return None,
                (None, Some(b)) => map[i] = Some(*b),
                _ => {}
            }
        }
        let out = PartialBijection { map };
        out.is_injective().then_some(out)
    }

    pub fn is_idempotent(&self) -> bool {
        self.map.iter().enumerate().all(|(i, y)| y.is_none_or(|y| y.idx() == i))
    }

    /// `self` is a restriction of `other`.
    pub fn is_restriction_of(&self, other: &PartialBijection) -> bool {
        self.map.iter().zip(&other.map).all(|(a, b)| a.is_none() || a == b)
    }
}
