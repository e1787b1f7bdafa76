//! Category systems `(Λ, G, φ)`, their Zappa-Szép products, gradings by a
//! submonoid of `ℤ^k`, the cocycles they induce on tight groupoids, and
//! the amenability hypothesis checklist.

mod action;
mod checklist;
mod conditions;
mod grading;
mod group;
mod monoid;
pub mod random;
mod system;

pub use action::{
    action_groupoid, certify_action_groupoid, check_directed, semigroup_action, ActionComparison, ActionGroupoid,
    DirectednessReport, SemigroupAction,
};
pub use checklist::{amenability_hypotheses, AmenabilityChecklist};
pub use conditions::{base_effective_witness, base_minimal_witness, compare_conditions, ConditionComparison};
pub use grading::{
    compatibility_witness, graded_cocycle, join_semilattice_witness, layer_cocycle, property_star, star_max,
    validate_degree_map, DegreeMap, DegreeReport, DegreeViolation, GradedCocycle, Layer, LayerCocycle, StarReport,
};
pub use group::{Assertion, GroupTable};
pub use monoid::{Degree, GradingMonoid};
pub use system::{
    factor_length, faithful_on_vertex_trees, pseudo_freeness_witness, separation_witness, validate_system, zs_product,
    CategorySystem, SystemReport, SystemViolation, TreeReport, TreeVerdict, ZsProduct,
};

#[cfg(test)]
mod tests;
