use crate::error::{Error, Result};
use serde::Serialize;

/// A finite group given by its multiplication table. Element 0 need not be
/// the unit; the unit is found from the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    names: Vec<String>,
    mul: Vec<Vec<usize>>,
    unit: usize,
    inverse: Vec<usize>,
}

/// A user assertion with where it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub value: bool,
    pub provenance: String,
}

impl GroupTable {
    /// Checks closure, associativity, a two-sided unit and inverses.
    pub fn new(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<GroupTable> {
        let n = names.len();
        let bad = |m: String| Err(Error::Parse(format!("group table: {m}")));
        if n == 0 {
            return bad("no elements".into());
        }
        if mul.len() != n || mul.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad("table is not square over the listed elements".into());
        }
        let Some(unit) = (0..n).find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g)) else {
            return bad("no unit".into());
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return bad(format!("not associative at ({}, {}, {})", names[a], names[b], names[c]));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            match (0..n).find(|&h| mul[g][h] == unit && mul[h][g] == unit) {
                Some(h) => inverse.push(h),
                None => return bad(format!("{} has no inverse", names[g])),
            }
        }
        Ok(GroupTable { names, mul, unit, inverse })
    }

    pub fn trivial() -> GroupTable {
        GroupTable::new(vec!["1".into()], vec![vec![0]]).expect("trivial group")
    }

    /// `ℤ/n` with elements named `0..n`.
    pub fn cyclic(n: usize) -> GroupTable {
        let names = (0..n).map(|i| i.to_string()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable::new(names, mul).expect("cyclic group")
    }

    /// `ℤ/2 × ℤ/2` with elements `00, 01, 10, 11`.
    pub fn klein() -> GroupTable {
        let names = ["00", "01", "10", "11"].iter().map(|s| s.to_string()).collect();
        let mul = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        GroupTable::new(names, mul).expect("klein group")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.names.len()
    }

    /// Every subgroup, each as a sorted element list.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for mask in 1u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let closed =
                set.contains(&self.unit) && set.iter().all(|&a| set.iter().all(|&b| mask >> self.mul(a, b) & 1 == 1));
            if closed {
                out.push(set);
            }
        }
        out
    }

    /// Every homomorphism from the subgroup `domain` into `self`, as maps
    /// indexed by position in `domain`.
    pub fn homomorphisms_from(&self, domain: &[usize]) -> Vec<Vec<usize>> {
        let k = domain.len();
        let n = self.len();
        let pos = |x: usize| domain.iter().position(|&d| d == x).expect("closed subgroup");
        let mut out = Vec::new();
        let mut map = vec![0usize; k];
        let total = n.pow(k as u32);
        for code in 0..total {
            let mut c = code;
            for slot in map.iter_mut() {
                *slot = c % n;
                c /= n;
            }
            let ok = domain.iter().enumerate().all(|(i, &a)| {
                domain.iter().enumerate().all(|(j, &b)| map[pos(self.mul(a, b))] == self.mul(map[i], map[j]))
            });
            if ok {
                out.push(map.clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_groups() {
        assert!(GroupTable::new(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(GroupTable::new(vec!["a".into()], vec![vec![1]]).is_err());
    }

    #[test]
    fn small_groups() {
        let z4 = GroupTable::cyclic(4);
        assert_eq!(z4.inv(1), 3);
        assert_eq!(z4.subgroups().len(), 3);
        assert_eq!(GroupTable::klein().subgroups().len(), 5);
        // {0, 2} is Z/2 inside Z/4; it maps to 0 or onto {0, 2}.
        assert_eq!(z4.homomorphisms_from(&[0, 2]).len(), 2);
        assert_eq!(z4.homomorphisms_from(&[0, 1, 2, 3]).len(), 4);
    }
}
