use super::FiniteGroupoid;
use crate::category::{is_right_cancellative, Lcsc, MorphismId};
use crate::error::{Error, Result};
use crate::semigroup::{weak_semilattice_witness, Semigroup};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HausdorffRoute {
    TrueByWeakSemilattice,
    TrueByDirectCheck,
    FalseWithWitness,
}

#[derive(Clone, Debug, Serialize)]
pub struct HausdorffVerdict {
    pub hausdorff: bool,
    pub route: HausdorffRoute,
    /// Minimal neighbourhoods of distinct arrows are disjoint.
    pub direct: bool,
    /// The shift semigroup is a weak semilattice.
    pub weak_semilattice: bool,
    /// The category is right cancellative, which is what lets the weak
    /// semilattice property certify Hausdorffness.
    pub weak_semilattice_applicable: bool,
    /// `"true"` or `"inconclusive"`.
    pub weak_semilattice_route: &'static str,
    /// Two arrows that cannot be separated.
    pub witness: Option<(String, String)>,
}

/// Hausdorffness of a finite groupoid in its basis topology, with the weak
/// semilattice route reported alongside.
pub fn hausdorff_verdict(l: &Lcsc, s: &Semigroup, g: &FiniteGroupoid) -> Result<HausdorffVerdict> {
    let nbhds: Vec<Vec<usize>> = (0..g.len()).map(|a| g.minimal_neighbourhood(a)).collect();
    let mut witness = None;
    'outer: for a in 0..g.len() {
        for b in a + 1..g.len() {
            if nbhds[a].iter().any(|x| nbhds[b].binary_search(x).is_ok()) {
                witness = Some((g.arrow_labels[a].clone(), g.arrow_labels[b].clone()));
                break 'outer;
            }
        }
    }
    let direct = witness.is_none();
    let weak_semilattice = weak_semilattice_witness(l, s).is_none();
    let applicable = is_right_cancellative(l.category())?;
    let by_weak = weak_semilattice && applicable;
    if by_weak && !direct {
        return Err(Error::CharacterizationMismatch {
            what: "hausdorff".into(),
            detail: "weak semilattice route holds but the topology does not separate arrows".into(),
        });
    }
    let route = if by_weak {
        HausdorffRoute::TrueByWeakSemilattice
    } else if direct {
        HausdorffRoute::TrueByDirectCheck
    } else {
        HausdorffRoute::FalseWithWitness
    };
    Ok(HausdorffVerdict {
        hausdorff: direct,
        route,
        direct,
        weak_semilattice,
        weak_semilattice_applicable: applicable,
        weak_semilattice_route: if by_weak { "true" } else { "inconclusive" },
        witness,
    })
}

/// A non-unit isotropy arrow lying in a basis set made of isotropy arrows.
pub fn interior_isotropy_witness(g: &FiniteGroupoid) -> Option<usize> {
    let isotropy = |a: usize| g.source[a] == g.range[a];
    (0..g.len())
        .filter(|&a| isotropy(a) && !g.is_unit_arrow(a))
        .find(|&a| g.basis.iter().any(|b| b.binary_search(&a).is_ok() && b.iter().all(|&x| isotropy(x))))
}

/// A pair `(α, β)` with equal sources and ranges such that `αδ ⋒ βδ` for
/// every `δ`, yet the `γ` with `αγ = βγ` are not exhaustive for `s(α)`.
pub fn effective_condition_witness(l: &Lcsc) -> Option<(MorphismId, MorphismId)> {
    for alpha in l.morphisms() {
        let v = l.s(alpha);
        for beta in l.with_source(l.source(alpha)).filter(|&b| b != alpha && l.range(b) == l.range(alpha)) {
            let premise = l.extensions(v).all(|d| l.meets(l.mul(alpha, d), l.mul(beta, d)));
            if !premise {
                continue;
            }
            let good: Vec<MorphismId> = l.extensions(v).filter(|&c| l.mul(alpha, c) == l.mul(beta, c)).collect();
            if !crate::filters::is_exhaustive(l, &good, v, &[]) {
                return Some((alpha, beta));
            }
        }
    }
    None
}

/// A unit whose orbit closure misses another unit, reported as
/// `(unit, missed unit)`.
pub fn non_dense_orbit_witness(g: &FiniteGroupoid) -> Option<(usize, usize)> {
    let nbhds: Vec<Vec<usize>> = (0..g.num_units()).map(|u| g.unit_neighbourhood(u)).collect();
    for u in 0..g.num_units() {
        let orbit = g.orbit(u);
        if let Some(v) = (0..g.num_units()).find(|&v| !nbhds[v].iter().any(|w| orbit.binary_search(w).is_ok())) {
            return Some((u, v));
        }
    }
    None
}

/// A pair `(α, β)` for which the `γ ∈ r(α)Λ` with some morphism from
/// `s(γ)` to `s(β)` are not exhaustive with respect to `α`.
pub fn minimal_condition_witness(l: &Lcsc) -> Option<(MorphismId, MorphismId)> {
    let reach =
        |from: crate::category::ObjectId, to: crate::category::ObjectId| l.with_source(from).any(|m| l.range(m) == to);
    for alpha in l.morphisms() {
        for beta in l.morphisms() {
            let target = l.source(beta);
            let good: Vec<MorphismId> = l.with_range(l.range(alpha)).filter(|&c| reach(l.source(c), target)).collect();
            if !crate::filters::is_exhaustive(l, &good, alpha, &[]) {
                return Some((alpha, beta));
            }
        }
    }
    None
}

/// Hypothesis gate for the combinatorial effectiveness test: Hausdorff, or the tight filters
/// are exactly the ultrafilters.
#[derive(Clone, Debug, Serialize)]
pub struct GateStatus {
    pub hausdorff: bool,
    pub ultra_equals_tight: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplicityVerdict {
    pub gate: GateStatus,
    pub hausdorff: HausdorffVerdict,
    pub effective_direct: bool,
    pub effective_condition: bool,
    /// `None` when the gate fails.
    pub effective: Option<bool>,
    pub minimal_direct: bool,
    pub minimal_condition: bool,
    pub minimal: bool,
    /// `None` when the gate fails.
    pub simple: Option<bool>,
    pub effective_witness: Option<String>,
    pub minimal_witness: Option<String>,
}

/// Runs both evaluators for effectiveness and minimality, asserts they
/// agree where the gate holds, and combines them.
pub fn simplicity_verdict(
    l: &Lcsc,
    s: &Semigroup,
    g: &FiniteGroupoid,
    ultra: &[usize],
    tight: &[usize],
) -> Result<SimplicityVerdict> {
    let hausdorff = hausdorff_verdict(l, s, g)?;
    let gate = GateStatus {
        hausdorff: hausdorff.hausdorff,
        ultra_equals_tight: ultra == tight,
        holds: hausdorff.hausdorff || ultra == tight,
    };
    let iso = interior_isotropy_witness(g);
    let eff = effective_condition_witness(l);
    let (effective_direct, effective_condition) = (iso.is_none(), eff.is_none());
    if gate.holds && effective_direct != effective_condition {
        return Err(Error::CharacterizationMismatch {
            what: "effectiveness".into(),
            detail: format!("direct {effective_direct}, combinatorial {effective_condition}"),
        });
    }
    let orbit = non_dense_orbit_witness(g);
    let min = minimal_condition_witness(l);
    let (minimal_direct, minimal_condition) = (orbit.is_none(), min.is_none());
    if minimal_direct != minimal_condition {
        return Err(Error::CharacterizationMismatch {
            what: "minimality".into(),
            detail: format!("direct {minimal_direct}, combinatorial {minimal_condition}"),
        });
    }
    let effective = gate.holds.then_some(effective_direct);
    let effective_witness = match (iso, eff) {
        (Some(a), _) => Some(format!("isotropy arrow {} is interior", g.arrow_labels[a])),
        (None, Some((a, b))) => Some(format!("pair ({}, {}) fails the combinatorial condition", l.name(a), l.name(b))),
        _ => None,
    };
    let minimal_witness = match (orbit, min) {
        (Some((u, v)), _) => Some(format!("orbit of {} does not reach near {}", g.unit_labels[u], g.unit_labels[v])),
        (None, Some((a, b))) => Some(format!("pair ({}, {}) fails the combinatorial condition", l.name(a), l.name(b))),
        _ => None,
    };
    Ok(SimplicityVerdict {
        gate,
        hausdorff,
        effective_direct,
        effective_condition,
        effective,
        minimal_direct,
        minimal_condition,
        minimal: minimal_direct,
        simple: effective.map(|e| e && minimal_direct),
        effective_witness,
        minimal_witness,
    })
}
