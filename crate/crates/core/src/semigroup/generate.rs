use super::{Element, PartialBijection, ShiftPair};
use crate::category::{FiniteCategory, Lcsc};
use crate::error::{Error, Result};
use std::collections::{HashMap, HashSet, VecDeque};

/// A finite listing of semigroup elements, sorted, with a lookup index.
#[derive(Clone, Debug)]
pub struct Semigroup {
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    complete: bool,
}

impl Semigroup {
    fn from_elements(mut elements: Vec<Element>, complete: bool) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Semigroup { elements, index, complete }
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.index.contains_key(e)
    }

    /// False when generation stopped at the element cap.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn idempotents<'a>(&'a self, l: &'a Lcsc) -> impl Iterator<Item = &'a Element> + 'a {
        self.elements.iter().filter(move |e| l.is_idempotent(e))
    }
}

fn generators(l: &Lcsc) -> Vec<Element> {
    let mut gens: Vec<Element> = l.morphisms().flat_map(|a| [l.tau(a), l.sigma(a)]).collect();
    gens.sort();
    gens.dedup();
    gens
}

/// Closes the shift generators under products, stopping after `cap`
/// elements. The result records whether the closure finished.
pub fn generate_semigroup_partial(l: &Lcsc, cap: usize) -> Semigroup {
    let gens = generators(l);
    let mut seen: HashSet<Element> = HashSet::new();
    let mut queue: VecDeque<Element> = VecDeque::new();
    for g in &gens {
        if seen.insert(g.clone()) {
            queue.push_back(g.clone());
        }
    }
    let mut complete = true;
    'outer: while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = l.product(&x, g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    complete = false;
                    break 'outer;
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Semigroup::from_elements(seen.into_iter().collect(), complete)
}

/// The full shift semigroup, or [`Error::BudgetExceeded`] past `cap`.
pub fn generate_semigroup(l: &Lcsc, cap: usize) -> Result<Semigroup> {
    let s = generate_semigroup_partial(l, cap);
    if s.is_complete() {
        Ok(s)
    } else {
        Err(Error::BudgetExceeded { what: "shift semigroup".into(), cap })
    }
}

/// Every join of a compatible family of single pairs from `s`.
///
/// Families are enumerated as cliques of pairwise compatible canonical
/// pairs whose `β` sides are pairwise incomparable, which is exactly the
/// set of normal forms.
pub fn generate_join_completion(l: &Lcsc, s: &Semigroup, cap: usize) -> Result<Semigroup> {
    let singles: Vec<Element> = s.elements().iter().filter(|e| e.is_single()).cloned().collect();
    let k = singles.len();
    let mut ok = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            let (p, q) = (singles[i].pairs()[0], singles[j].pairs()[0]);
            ok[i * k + j] =
                i != j && !l.leq(p.beta, q.beta) && !l.leq(q.beta, p.beta) && l.compatible(&singles[i], &singles[j]);
        }
    }
    let mut out: Vec<Element> = Vec::new();
    if s.elements().iter().any(Element::is_zero) {
        out.push(Element::zero());
    }
    let mut stack: Vec<usize> = Vec::new();
    fn rec(
        start: usize,
        k: usize,
        ok: &[bool],
        stack: &mut Vec<usize>,
        singles: &[Element],
        out: &mut Vec<Element>,
        cap: usize,
    ) -> Result<()> {
        for i in start..k {
            if stack.iter().all(|&j| ok[i * k + j]) {
                stack.push(i);
                let mut pairs: Vec<ShiftPair> = stack.iter().map(|&j| singles[j].pairs()[0]).collect();
                pairs.sort();
                out.push(Element { pairs });
                if out.len() > cap {
                    return Err(Error::BudgetExceeded { what: "join completion".into(), cap });
                }
                rec(i + 1, k, ok, stack, singles, out, cap)?;
                stack.pop();
            }
        }
        Ok(())
    }
    rec(0, k, &ok, &mut stack, &singles, &mut out, cap)?;
    Ok(Semigroup::from_elements(out, true))
}

/// Size of the inverse semigroup generated inside the symmetric inverse
/// monoid of the morphism set by left multiplications and left divisions.
/// Computed from the raw table only.
pub fn oracle_closure_size(cat: &FiniteCategory, cap: usize) -> Result<usize> {
    let mut gens: Vec<PartialBijection> = cat
        .morphisms()
        .flat_map(|a| [PartialBijection::left_multiplication(cat, a), PartialBijection::left_division(cat, a)])
        .collect();
    gens.sort();
    gens.dedup();
    let mut seen: HashSet<PartialBijection> = gens.iter().cloned().collect();
    let mut queue: VecDeque<PartialBijection> = gens.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.after(g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::BudgetExceeded { what: "oracle closure".into(), cap });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.len())
}

/// Looks for `s, t` whose common lower bounds are not all below a maximal
/// common lower bound. Finite listings never produce one, but the scan is
/// exact and returns the offending pair if it did.
pub fn weak_semilattice_witness(l: &Lcsc, s: &Semigroup) -> Option<(Element, Element)> {
    let n = s.len();
    let words = n.div_ceil(64);
    let els = s.elements();
    // below[i] = bitset of u with u ≤ els[i]
    let mut below = vec![vec![0u64; words]; n];
    for i in 0..n {
        for u in 0..n {
            if l.natural_leq(&els[u], &els[i]) {
                below[i][u / 64] |= 1 << (u % 64);
            }
        }
    }
    let bit = |set: &[u64], u: usize| set[u / 64] >> (u % 64) & 1 == 1;
    for i in 0..n {
        for j in i + 1..n {
            let common: Vec<u64> = below[i].iter().zip(&below[j]).map(|(a, b)| a & b).collect();
            let members: Vec<usize> = (0..n).filter(|&u| bit(&common, u)).collect();
            let maximal: Vec<usize> =
                members.iter().copied().filter(|&m| !members.iter().any(|&x| x != m && bit(&below[x], m))).collect();
            let covered = members.iter().all(|&u| maximal.iter().any(|&m| bit(&below[m], u)));
            if !covered {
                return Some((els[i].clone(), els[j].clone()));
            }
        }
    }
    None
}
