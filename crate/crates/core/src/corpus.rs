//! Named test categories and seeded random inputs.
//!
//! The built-in corpus keeps every category at twelve morphisms or fewer.
//! Graph entries are graded by path length. The three products carry their
//! system and the length grading of the base graph.

use crate::category::{CategoryBuilder, FiniteCategory, Graph, Lcsc};
use crate::error::Result;
use crate::io::{self, CategorySpec};
use crate::zs::random::{random_graph, random_system, rng};
use crate::zs::{zs_product, CategorySystem, DegreeMap, GradingMonoid, GroupTable, ZsProduct};
use rand::Rng;
use std::collections::BTreeMap;

/// A product entry: the system, its product, and the grading of the base.
#[derive(Clone, Debug)]
pub struct ProductData {
    pub system: CategorySystem,
    pub product: ZsProduct,
    pub base_spec: CategorySpec,
    pub base_degree: DegreeMap,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub category: FiniteCategory,
    pub spec: CategorySpec,
    /// A grading by `ℕ^k`, when the entry has one.
    pub degree: Option<DegreeMap>,
    pub product: Option<ProductData>,
}

impl CorpusEntry {
    pub fn lcsc(&self) -> Lcsc {
        Lcsc::new(self.category.clone()).expect("corpus categories are left cancellative")
    }
}

fn graph(vs: &[&str], es: &[(&str, &str, &str)]) -> Graph {
    Graph::new(vs, es).expect("corpus graphs are well formed")
}

fn graph_entry(name: &'static str, g: Graph) -> CorpusEntry {
    let category = g.path_category(None).expect("corpus graphs are acyclic");
    let degree = DegreeMap::length(&Lcsc::new(category.clone()).expect("path categories are left cancellative"));
    CorpusEntry { name, category, spec: CategorySpec::from_graph(&g), degree: Some(degree), product: None }
}

fn table_entry(name: &'static str, category: FiniteCategory, degree: Option<DegreeMap>) -> CorpusEntry {
    CorpusEntry { name, spec: CategorySpec::from_category(&category), category, degree, product: None }
}

fn product_entry(name: &'static str, g: Graph, group: GroupTable, action: &[(&str, &str, &str, &str)]) -> CorpusEntry {
    let cat = g.path_category(None).expect("corpus graphs are acyclic");
    let m = |n: &str| cat.lookup(n).expect("named morphism");
    let mut act = BTreeMap::new();
    let mut cocycle = BTreeMap::new();
    for &(x, a, b, phi) in action {
        let x = group.lookup(x).expect("named group element");
        act.insert((x, m(a)), m(b));
        cocycle.insert((x, m(a)), group.lookup(phi).expect("named group element"));
    }
    let base_degree = DegreeMap::length(&Lcsc::new(cat.clone()).expect("path categories are left cancellative"));
    let system = CategorySystem::from_partial(cat, group, &act, &cocycle).expect("corpus systems are complete");
    let product = zs_product(&system).expect("corpus systems are valid");
    let category = product.cat.clone();
    let degree = DegreeMap::new(
        base_degree.monoid.clone(),
        category.morphisms().map(|x| base_degree.of(product.base(x)).clone()).collect(),
    );
    CorpusEntry {
        name,
        spec: CategorySpec::from_category(&category),
        category,
        degree: Some(degree),
        product: Some(ProductData { system, product, base_spec: CategorySpec::from_graph(&g), base_degree }),
    }
}

/// Commuting square `x·y2 = y·x2`, graded by `ℕ²`.
pub fn square() -> (FiniteCategory, DegreeMap) {
    let cat = CategoryBuilder::new()
        .objects(&["a", "b", "c", "d"])
        .morphism("x", "b", "a")
        .morphism("y", "c", "a")
        .morphism("y2", "d", "b")
        .morphism("x2", "d", "c")
        .morphism("sq", "d", "a")
        .compose("x", "y2", "sq")
        .compose("y", "x2", "sq")
        .build()
        .expect("the square is a category");
    let deg = cat
        .morphisms()
        .map(|m| match cat.name(m) {
            "x" | "x2" => vec![1, 0],
            "y" | "y2" => vec![0, 1],
            "sq" => vec![1, 1],
            _ => vec![0, 0],
        })
        .collect();
    (cat, DegreeMap::new(GradingMonoid::free(2), deg))
}

/// Two arrows into `a` that agree after `γ`: left but not right
/// cancellative.
pub fn coequalized_pair() -> FiniteCategory {
    CategoryBuilder::new()
        .objects(&["a", "b", "c"])
        .morphism("p", "b", "a")
        .morphism("q", "b", "a")
        .morphism("g", "c", "b")
        .morphism("pg", "c", "a")
        .compose("p", "g", "pg")
        .compose("q", "g", "pg")
        .build()
        .expect("the table is a category")
}

/// `ℤ/2` as a one-object category.
pub fn z2() -> FiniteCategory {
    CategoryBuilder::new()
        .object("x")
        .morphism("t", "x", "x")
        .compose("t", "t", "x")
        .build()
        .expect("the table is a category")
}

/// Three morphisms with `αβ = αγ` and `β ≠ γ`. Not left cancellative, so
/// it stays out of [`builtin`].
pub fn planted_non_cancellative() -> FiniteCategory {
    CategoryBuilder::new()
        .objects(&["x", "y", "z"])
        .morphism("a", "y", "x")
        .morphism("b", "z", "y")
        .morphism("c", "z", "y")
        .morphism("ab", "z", "x")
        .compose("a", "b", "ab")
        .compose("a", "c", "ab")
        .build()
        .expect("the table is a category")
}

pub fn builtin() -> Vec<CorpusEntry> {
    let z2g = GroupTable::cyclic(2);
    let (sq, sq_deg) = square();
    vec![
        table_entry(
            "identity",
            CategoryBuilder::new().object("x").build().expect("one object"),
            Some(DegreeMap::new(GradingMonoid::free(1), vec![vec![0]])),
        ),
        graph_entry("arrow", graph(&["u", "v"], &[("e", "v", "u")])),
        graph_entry("fork", graph(&["u1", "u2", "v"], &[("e1", "v", "u1"), ("e2", "v", "u2")])),
        graph_entry("parallel", graph(&["u", "v"], &[("e", "u", "v"), ("f", "u", "v")])),
        graph_entry("chain2", graph(&["a", "b", "c"], &[("x", "a", "b"), ("y", "b", "c")])),
        graph_entry("chain3", graph(&["a", "b", "c", "d"], &[("x", "a", "b"), ("y", "b", "c"), ("z", "c", "d")])),
        graph_entry("two_objects", graph(&["p", "q"], &[])),
        table_entry("z2", z2(), None),
        table_entry("coequalized_pair", coequalized_pair(), None),
        table_entry("square", sq, Some(sq_deg)),
        product_entry(
            "swap_product",
            graph(&["u", "v"], &[("e", "u", "v"), ("f", "u", "v")]),
            z2g.clone(),
            &[("1", "e", "f", "0"), ("1", "f", "e", "0")],
        ),
        product_entry(
            "fork_product",
            graph(&["u1", "u2", "v"], &[("e1", "v", "u1"), ("e2", "v", "u2")]),
            z2g.clone(),
            &[("1", "u1", "u2", "1"), ("1", "u2", "u1", "1"), ("1", "e1", "e2", "1"), ("1", "e2", "e1", "1")],
        ),
        product_entry("fixed_edge_product", graph(&["u", "v"], &[("e", "u", "v")]), z2g, &[("1", "e", "e", "0")]),
    ]
}

/// One generated input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub name: String,
    pub contents: String,
}

/// `n` random inputs valid by construction: graph files, product tables and
/// system files in rotation.
pub fn generate(seed: u64, n: usize) -> Result<Vec<Generated>> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let (name, contents) = match k % 3 {
            0 => ("graph", io::write_category(&CategorySpec::from_graph(&random_graph(&mut r)))),
            1 => {
                let pseudo_free = r.gen_bool(0.5);
                let (_, sys) = random_system(&mut r, pseudo_free)?;
                ("product", io::write_category(&CategorySpec::from_category(&zs_product(&sys)?.cat)))
            }
            _ => {
                let pseudo_free = r.gen_bool(0.5);
                let (g, sys) = random_system(&mut r, pseudo_free)?;
                let base = CategorySpec::from_graph(&g);
                let degree = DegreeMap::length(&Lcsc::new(sys.cat.clone())?);
                ("system", io::write_system(&io::system_spec(&sys, base, Some(&degree))))
            }
        };
        out.push(Generated { name: format!("{k:03}_{name}.json"), contents });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{is_left_cancellative, is_right_cancellative};

    #[test]
    fn builtin_sizes() {
        let entries = builtin();
        assert!(entries.len() >= 10);
        for e in &entries {
            assert!(e.category.num_morphisms() <= 12, "{}", e.name);
            assert!(e.category.validate().is_valid(), "{}", e.name);
            assert!(is_left_cancellative(&e.category).unwrap(), "{}", e.name);
            let rebuilt = e.spec.build(None).unwrap();
            assert_eq!(rebuilt.num_morphisms(), e.category.num_morphisms(), "{}", e.name);
        }
        let size = |n: &str| entries.iter().find(|e| e.name == n).unwrap().category.num_morphisms();
        assert_eq!(size("fork"), 5);
        assert_eq!(size("swap_product"), 8);
        assert_eq!(size("fork_product"), 10);
        let cq = entries.iter().find(|e| e.name == "coequalized_pair").unwrap();
        assert!(!is_right_cancellative(&cq.category).unwrap());
    }

    #[test]
    fn planted_witness() {
        let cat = planted_non_cancellative();
        assert!(cat.validate().is_valid());
        assert!(!is_left_cancellative(&cat).unwrap());
    }

    #[test]
    fn generation_parses_back() {
        let files = generate(7, 12).unwrap();
        assert_eq!(files, generate(7, 12).unwrap());
        for f in &files {
            if io::schema_of(&f.contents).unwrap() == io::SYSTEM_SCHEMA {
                let loaded = io::parse_system(&f.contents).unwrap().load(None).unwrap();
                assert!(crate::zs::validate_system(&loaded.system).valid);
            } else {
                let cat = io::parse_category(&f.contents).unwrap().build(None).unwrap();
                Lcsc::new(cat).unwrap();
            }
        }
    }
}
