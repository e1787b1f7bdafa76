use super::grading::{compatibility_witness, join_semilattice_witness, property_star, validate_degree_map, DegreeMap};
use super::{pseudo_freeness_witness, Assertion, CategorySystem};
use crate::category::Lcsc;
use crate::filters::PathSpace;
use serde::Serialize;

/// Hypotheses under which the tight groupoid of the product is amenable.
/// Each box is computed except the two amenability flags, which are
/// assertions carried through with their provenance.
#[derive(Clone, Debug, Serialize)]
pub struct AmenabilityChecklist {
    pub gamma_graph: bool,
    pub compatible: bool,
    pub pseudo_free: bool,
    pub property_star: bool,
    pub join_semilattice: bool,
    pub g_amenable: Assertion,
    pub q_amenable: Assertion,
    pub all_hold: bool,
    pub conclusion: String,
    pub witnesses: Vec<String>,
}

/// `ps` must carry the tight path sets of the base category.
pub fn amenability_hypotheses(
    base: &Lcsc,
    sys: &CategorySystem,
    d: &DegreeMap,
    ps: &PathSpace,
    g_amenable: Option<Assertion>,
    q_amenable: Option<Assertion>,
) -> AmenabilityChecklist {
    let mut witnesses = Vec::new();
    let report = validate_degree_map(base, d);
    if let Some(v) = report.violations.first() {
        witnesses.push(format!("degree map: {}", serde_json::to_string(v).unwrap_or_default()));
    }
    let compat = compatibility_witness(sys, d);
    if let Some((g, a)) = compat {
        witnesses.push(format!("degree changes under {} at {}", sys.group.name(g), base.name(a)));
    }
    let pf = pseudo_freeness_witness(sys);
    if let Some((g, a)) = pf {
        witnesses.push(format!("{} fixes {} with trivial cocycle", sys.group.name(g), base.name(a)));
    }
    let star = if report.valid { Some(property_star(base, d, ps)) } else { None };
    if let Some((top, g)) = star.as_ref().and_then(|s| s.witness.clone()) {
        witnesses.push(format!("no unique largest element of degree at most {g:?} below {top}"));
    }
    let join = join_semilattice_witness(d);
    if let Some((a, b)) = &join {
        witnesses.push(format!("{a:?} and {b:?} have no join"));
    }
    let g_amenable = g_amenable.unwrap_or(Assertion { value: true, provenance: "finite group".into() });
    let q_amenable = q_amenable.unwrap_or(Assertion { value: true, provenance: "free abelian group".into() });
    let property_star = star.is_some_and(|s| s.holds);
    let all_hold = report.valid
        && compat.is_none()
        && pf.is_none()
        && property_star
        && join.is_none()
        && g_amenable.value
        && q_amenable.value;
    AmenabilityChecklist {
        gamma_graph: report.valid,
        compatible: compat.is_none(),
        pseudo_free: pf.is_none(),
        property_star,
        join_semilattice: join.is_none(),
        g_amenable,
        q_amenable,
        all_hold,
        conclusion: if all_hold {
            "tight groupoid of the product is amenable: every hypothesis holds".into()
        } else {
            "hypotheses not all satisfied; amenability is not decided".into()
        },
        witnesses,
    }
}
