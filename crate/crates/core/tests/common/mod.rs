//! Brute-force oracles that work only from the composition table or from
//! the partial bijections, never through the library's own algorithms.
#![allow(dead_code)]

use lcsc::category::{FiniteCategory, MorphismId};
use std::collections::{BTreeSet, VecDeque};

pub type Map = Vec<Option<u32>>;

fn m(i: usize) -> MorphismId {
    MorphismId(i as u32)
}

/// `γ ↦ αγ` as a partial map on morphism indices.
pub fn left_mul(cat: &FiniteCategory, a: usize) -> Map {
    (0..cat.num_morphisms()).map(|g| cat.compose(m(a), m(g)).map(|x| x.0)).collect()
}

pub fn inverse(f: &Map) -> Map {
    let mut out = vec![None; f.len()];
    for (x, y) in f.iter().enumerate() {
        if let Some(y) = y {
            out[*y as usize] = Some(x as u32);
        }
    }
    out
}

/// `f ∘ g`: first `g`, then `f`.
pub fn after(f: &Map, g: &Map) -> Map {
    g.iter().map(|y| y.and_then(|y| f[y as usize])).collect()
}

/// All compositions of left multiplications and their inverses. The empty
/// map appears only when some composition produces it.
pub fn bijection_closure(cat: &FiniteCategory, cap: usize) -> Option<BTreeSet<Map>> {
    let mut gens = Vec::new();
    for a in 0..cat.num_morphisms() {
        let f = left_mul(cat, a);
        gens.push(inverse(&f));
        gens.push(f);
    }
    let mut seen: BTreeSet<Map> = gens.iter().cloned().collect();
    let mut queue: VecDeque<Map> = seen.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = after(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen)
}

/// Idempotents as domain bitmasks.
pub fn idempotent_domains(maps: &BTreeSet<Map>) -> Vec<u64> {
    let mut out: Vec<u64> = maps
        .iter()
        .filter(|f| f.iter().enumerate().all(|(x, y)| y.is_none_or(|y| y as usize == x)))
        .map(|f| f.iter().enumerate().filter(|(_, y)| y.is_some()).fold(0u64, |acc, (x, _)| acc | 1 << x))
        .collect();
    out.sort();
    out
}

/// Filters of the semilattice of domains under intersection, as bitmasks
/// over positions in `dom`, found by checking every subset.
pub fn filters_by_subsets(dom: &[u64]) -> Option<Vec<u64>> {
    let n = dom.len();
    if n > 20 {
        return None;
    }
    let mut out = Vec::new();
    for set in 1u64..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| set >> i & 1 == 1).collect();
        if members.iter().any(|&i| dom[i] == 0) {
            continue;
        }
        let up = members.iter().all(|&i| (0..n).all(|j| dom[i] & !dom[j] != 0 || set >> j & 1 == 1));
        let meets = members.iter().all(|&i| {
            members.iter().all(|&j| {
                let k = dom.iter().position(|&d| d == dom[i] & dom[j]).expect("closed under meets");
                set >> k & 1 == 1
            })
        });
        if up && meets {
            out.push(set);
        }
    }
    Some(out)
}

pub fn ultrafilters(filters: &[u64]) -> Vec<u64> {
    filters.iter().copied().filter(|&f| !filters.iter().any(|&g| g != f && f & g == f)).collect()
}

/// Tightness from the definition: for `x` in the filter and `Y` outside
/// it, the elements of `E^{x,Y}` outside the filter must not cover
/// `E^{x,Y}`.
pub fn is_tight(dom: &[u64], filter: u64) -> bool {
    let n = dom.len();
    let outside: Vec<usize> = (0..n).filter(|&i| filter >> i & 1 == 0 && dom[i] != 0).collect();
    assert!(outside.len() <= 20, "oracle limited to small complements");
    for x in (0..n).filter(|&i| filter >> i & 1 == 1) {
        for ys in 0u64..(1 << outside.len()) {
            let y: Vec<u64> = (0..outside.len()).filter(|&k| ys >> k & 1 == 1).map(|k| dom[outside[k]]).collect();
            let region: Vec<usize> = (0..n)
                .filter(|&e| dom[e] & !dom[x] == 0 && y.iter().all(|&b| dom[e] & b == 0) && dom[e] != 0)
                .collect();
            let z: Vec<usize> = region.iter().copied().filter(|&e| filter >> e & 1 == 0).collect();
            let covers = region.iter().all(|&e| z.iter().any(|&w| dom[e] & dom[w] != 0));
            if covers {
                return false;
            }
        }
    }
    true
}

pub fn leq(cat: &FiniteCategory, a: usize, b: usize) -> bool {
    (0..cat.num_morphisms()).any(|g| cat.compose(m(a), m(g)) == Some(m(b)))
}

/// Nonempty hereditary directed sets, as bitmasks over morphisms.
pub fn hereditary_directed_sets(cat: &FiniteCategory) -> Vec<u64> {
    let n = cat.num_morphisms();
    assert!(n <= 16);
    let mut out = Vec::new();
    for set in 1u64..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| set >> i & 1 == 1).collect();
        let hereditary = members.iter().all(|&a| (0..n).all(|b| !leq(cat, b, a) || set >> b & 1 == 1));
        let directed =
            members.iter().all(|&a| members.iter().all(|&b| members.iter().any(|&c| leq(cat, a, c) && leq(cat, b, c))));
        if hereditary && directed {
            out.push(set);
        }
    }
    out
}

/// `(x, a, b)` with `xa = xb`, `a ≠ b`.
pub fn left_cancellation_failure(cat: &FiniteCategory) -> Option<(usize, usize, usize)> {
    let n = cat.num_morphisms();
    for x in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                if let (Some(p), Some(q)) = (cat.compose(m(x), m(a)), cat.compose(m(x), m(b))) {
                    if p == q {
                        return Some((x, a, b));
                    }
                }
            }
        }
    }
    None
}

pub fn right_cancellation_failure(cat: &FiniteCategory) -> Option<(usize, usize, usize)> {
    let n = cat.num_morphisms();
    for x in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                if let (Some(p), Some(q)) = (cat.compose(m(a), m(x)), cat.compose(m(b), m(x))) {
                    if p == q {
                        return Some((x, a, b));
                    }
                }
            }
        }
    }
    None
}
