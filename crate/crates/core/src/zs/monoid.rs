use crate::error::{Error, Result};
use std::cell::RefCell;
use std::collections::HashMap;

/// A degree vector in `ℤ^k`.
pub type Degree = Vec<i64>;

/// The submonoid of `ℤ^k` generated by finitely many nonzero vectors with
/// nonnegative entries, ordered by `a ≤ b ⇔ b − a ∈ Γ`.
#[derive(Clone, Debug)]
pub struct GradingMonoid {
    rank: usize,
    generators: Vec<Degree>,
    /// True when the generators are exactly the unit vectors.
    free: bool,
    memo: RefCell<HashMap<Degree, bool>>,
}

impl GradingMonoid {
    pub fn new(rank: usize, generators: Vec<Degree>) -> Result<GradingMonoid> {
        if generators.iter().any(|g| g.len() != rank) {
            return Err(Error::Parse("generator has the wrong rank".into()));
        }
        if generators.iter().any(|g| g.iter().any(|&x| x < 0) || g.iter().all(|&x| x == 0)) {
            return Err(Error::Parse("generators must be nonzero with nonnegative entries".into()));
        }
        let mut sorted = generators.clone();
        sorted.sort();
        sorted.dedup();
        let free = sorted.len() == rank && (0..rank).all(|i| sorted.contains(&unit_vector(rank, i)));
        Ok(GradingMonoid { rank, generators: sorted, free, memo: RefCell::new(HashMap::new()) })
    }

    /// `ℕ^k`.
    pub fn free(rank: usize) -> GradingMonoid {
        GradingMonoid::new(rank, (0..rank).map(|i| unit_vector(rank, i)).collect()).expect("unit vectors")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Degree] {
        &self.generators
    }

    pub fn is_free(&self) -> bool {
        self.free
    }

    pub fn zero(&self) -> Degree {
        vec![0; self.rank]
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        if v.len() != self.rank || v.iter().any(|&x| x < 0) {
            return false;
        }
        if self.free || v.iter().all(|&x| x == 0) {
            return true;
        }
        if let Some(&hit) = self.memo.borrow().get(v) {
            return hit;
        }
        let hit = self.generators.iter().any(|g| {
            let rest: Degree = v.iter().zip(g).map(|(a, b)| a - b).collect();
            rest.iter().all(|&x| x >= 0) && self.contains(&rest)
        });
        self.memo.borrow_mut().insert(v.to_vec(), hit);
        hit
    }

    pub fn leq(&self, a: &[i64], b: &[i64]) -> bool {
        self.contains(&sub(b, a))
    }

    /// The least upper bound of `a` and `b` in `Γ`, searched among elements
    /// below the coordinatewise maximum plus the sum of the generators.
    pub fn join(&self, a: &[i64], b: &[i64]) -> Option<Degree> {
        let top: Degree = a.iter().zip(b).map(|(x, y)| *x.max(y)).collect();
        if self.free {
            return Some(top);
        }
        let hull: Degree = (0..self.rank).map(|i| self.generators.iter().map(|g| g[i]).sum::<i64>()).collect();
        let bound: Degree = top.iter().zip(&hull).map(|(x, h)| x + h).collect();
        let uppers: Vec<Degree> =
            box_points(&bound).into_iter().filter(|c| self.contains(c) && self.leq(a, c) && self.leq(b, c)).collect();
        uppers.iter().find(|c| uppers.iter().all(|u| self.leq(c, u))).cloned()
    }

    /// Elements of `Γ` lying coordinatewise between `0` and `v`.
    pub fn below(&self, v: &[i64]) -> Vec<Degree> {
        box_points(v).into_iter().filter(|c| self.contains(c)).collect()
    }
}

pub fn sub(a: &[i64], b: &[i64]) -> Degree {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[i64], b: &[i64]) -> Degree {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn unit_vector(rank: usize, i: usize) -> Degree {
    (0..rank).map(|j| i64::from(i == j)).collect()
}

/// Lattice points of the box `[0, bound]`, in lexicographic order.
fn box_points(bound: &[i64]) -> Vec<Degree> {
    let mut out = vec![Vec::new()];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|p: Degree| {
                (0..=b.max(-1)).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_monoid_order_and_join() {
        let n2 = GradingMonoid::free(2);
        assert!(n2.leq(&[1, 0], &[1, 2]));
        assert!(!n2.leq(&[1, 0], &[0, 2]));
        assert_eq!(n2.join(&[1, 0], &[0, 2]), Some(vec![1, 2]));
    }

    #[test]
    fn numerical_monoid() {
        // Generated by 2 and 3: contains everything except 1.
        let g = GradingMonoid::new(1, vec![vec![2], vec![3]]).unwrap();
        assert!(!g.contains(&[1]));
        assert!(g.contains(&[5]) && g.contains(&[4]));
        assert!(!g.leq(&[2], &[3]));
        // Upper bounds of 2 and 3 are 5, 6, 7, ...; 5 - 2 = 3 and 5 - 3 = 2
        // are both in the monoid, but 6 - 5 = 1 is not, so no least one.
        assert_eq!(g.join(&[2], &[3]), None);
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(GradingMonoid::new(1, vec![vec![0]]).is_err());
        assert!(GradingMonoid::new(2, vec![vec![1, -1]]).is_err());
    }
}
