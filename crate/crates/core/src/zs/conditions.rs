//! The effectiveness and minimality conditions of a product `Λ ⋊ G`,
//! restated in terms of `Λ` and the system data alone.

use super::{CategorySystem, ZsProduct};
use crate::category::{Lcsc, MorphismId, ObjectId};
use crate::error::{Error, Result};
use crate::filters::is_exhaustive;
use crate::groupoid::{effective_condition_witness, minimal_condition_witness};
use serde::Serialize;

/// `((α, a), (β, b))` with `r(α) = r(β)` and `a⁻¹·s(α) = b⁻¹·s(β)`, such
/// that `α(a·δ) ⋒ β(b·δ)` for every `δ` out of that common source, while
/// the `γ` on which both sides agree (including the cocycle) are not
/// exhaustive.
pub fn base_effective_witness(base: &Lcsc, sys: &CategorySystem) -> Option<((MorphismId, usize), (MorphismId, usize))> {
    let grp = &sys.group;
    let cat = &sys.cat;
    for alpha in base.morphisms() {
        for a in grp.elements() {
            let v = sys.act_object(grp.inv(a), cat.source(alpha));
            let vid = cat.identity(v);
            for beta in base.morphisms().filter(|&b| base.range(b) == base.range(alpha)) {
                for b in grp.elements() {
                    if (alpha, a) == (beta, b) || sys.act_object(grp.inv(b), cat.source(beta)) != v {
                        continue;
                    }
                    let left = |d: MorphismId| base.mul(alpha, sys.act(a, d));
                    let right = |d: MorphismId| base.mul(beta, sys.act(b, d));
                    if !base.extensions(vid).all(|d| base.meets(left(d), right(d))) {
                        continue;
                    }
                    let good: Vec<MorphismId> = base
                        .extensions(vid)
                        .filter(|&c| left(c) == right(c) && sys.phi(a, c) == sys.phi(b, c))
                        .collect();
                    if !is_exhaustive(base, &good, vid, &[]) {
                        return Some(((alpha, a), (beta, b)));
                    }
                }
            }
        }
    }
    None
}

/// `(α, β)` for which the `γ ∈ r(α)Λ` admitting a morphism from some
/// `g·s(γ)` to `s(β)` are not exhaustive with respect to `α`.
pub fn base_minimal_witness(base: &Lcsc, sys: &CategorySystem) -> Option<(MorphismId, MorphismId)> {
    let reach = |from: ObjectId, to: ObjectId| {
        sys.group.elements().any(|g| {
            let start = sys.act_object(g, from);
            base.with_source(start).any(|m| base.range(m) == to)
        })
    };
    for alpha in base.morphisms() {
        for beta in base.morphisms() {
            let target = base.source(beta);
            let good: Vec<MorphismId> =
                base.with_range(base.range(alpha)).filter(|&c| reach(base.source(c), target)).collect();
            if !is_exhaustive(base, &good, alpha, &[]) {
                return Some((alpha, beta));
            }
        }
    }
    None
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionComparison {
    pub effective_on_product: bool,
    pub effective_on_base: bool,
    pub minimal_on_product: bool,
    pub minimal_on_base: bool,
}

/// Evaluates both conditions on the product directly and through the base
/// translation, and fails if either pair disagrees.
pub fn compare_conditions(
    base: &Lcsc,
    sys: &CategorySystem,
    product: &Lcsc,
    coords: &ZsProduct,
) -> Result<ConditionComparison> {
    let pe = effective_condition_witness(product);
    let be = base_effective_witness(base, sys);
    let pm = minimal_condition_witness(product);
    let bm = base_minimal_witness(base, sys);
    let show = |m: MorphismId| {
        let (a, g) = coords.coords[m.idx()];
        format!("({}, {})", sys.cat.name(a), sys.group.name(g))
    };
    if pe.is_some() != be.is_some() {
        return Err(Error::CharacterizationMismatch {
            what: "effectiveness condition on the product".into(),
            detail: format!(
                "product witness {:?}, base witness {:?}",
                pe.map(|(x, y)| (show(x), show(y))),
                be.map(|((a, g), (b, h))| (
                    format!("({}, {})", base.name(a), sys.group.name(g)),
                    format!("({}, {})", base.name(b), sys.group.name(h))
                ))
            ),
        });
    }
    if pm.is_some() != bm.is_some() {
        return Err(Error::CharacterizationMismatch {
            what: "minimality condition on the product".into(),
            detail: format!(
                "product witness {:?}, base witness {:?}",
                pm.map(|(x, y)| (show(x), show(y))),
                bm.map(|(a, b)| (base.name(a).to_string(), base.name(b).to_string()))
            ),
        });
    }
    Ok(ConditionComparison {
        effective_on_product: pe.is_none(),
        effective_on_base: be.is_none(),
        minimal_on_product: pm.is_none(),
        minimal_on_base: bm.is_none(),
    })
}
