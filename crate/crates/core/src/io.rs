//! JSON input formats.
//!
//! A category file has schema `lcsc/1` and is either a composition table
//! or a graph:
//!
//! ```json
//! {"schema": "lcsc/1", "kind": "table", "objects": ["x"],
//!  "morphisms": [{"id": "g", "src": "x", "tgt": "x"}], "compose": [["g", "g", "x"]]}
//! {"schema": "lcsc/1", "kind": "graph", "vertices": ["u", "v"],
//!  "edges": [{"id": "e", "r": "u", "s": "v"}]}
//! ```
//!
//! Composites with an identity are implied unless the table sets
//! `"units": "explicit"`. The product `αβ` is defined when `s(α) = r(β)`,
//! and a graph edge `e` goes from `s` to `r`.
//!
//! A system file has schema `lcsc-sys/1`, names its category under
//! `category` (a table or graph body) or `graph` (a graph body), and adds
//! a group, action and cocycle entries, and optionally a degree map and
//! amenability assertions. Entries left out of the action and cocycle are
//! filled by the identity defaults and the factorization rules.

use crate::category::{CategoryBuilder, FiniteCategory, Graph, MorphismId};
use crate::error::{Error, Result};
use crate::zs::{Assertion, CategorySystem, Degree, DegreeMap, GradingMonoid, GroupTable};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const CATEGORY_SCHEMA: &str = "lcsc/1";
pub const SYSTEM_SCHEMA: &str = "lcsc-sys/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub id: String,
    pub r: String,
    pub s: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableBody {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismEntry>,
    #[serde(default)]
    pub compose: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphBody {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeEntry>,
}

/// A category description without its schema tag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CategorySpec {
    Table(TableBody),
    Graph(GraphBody),
}

impl CategorySpec {
    /// Materializes the category. Cyclic graphs need `truncate`.
    pub fn build(&self, truncate: Option<usize>) -> Result<FiniteCategory> {
        match self {
            CategorySpec::Table(t) => {
                let mut b = CategoryBuilder::new().objects(&t.objects.iter().map(String::as_str).collect::<Vec<_>>());
                for m in &t.morphisms {
                    b = b.morphism(&m.id, &m.src, &m.tgt);
                }
                for (x, y, z) in &t.compose {
                    b = b.compose(x, y, z);
                }
                match t.units.as_deref() {
                    None | Some("implicit") => {}
                    Some("explicit") => b = b.explicit_units(),
                    Some(other) => {
                        return Err(Error::Parse(format!("units must be implicit or explicit, not {other:?}")))
                    }
                }
                b.build()
            }
            CategorySpec::Graph(g) => graph_of(g)?.path_category(truncate),
        }
    }

    pub fn graph(&self) -> Result<Option<Graph>> {
        match self {
            CategorySpec::Graph(g) => graph_of(g).map(Some),
            CategorySpec::Table(_) => Ok(None),
        }
    }

    /// Table form of a finite category, with identities implicit.
    pub fn from_category(cat: &FiniteCategory) -> CategorySpec {
        let morphisms = cat
            .morphisms()
            .filter(|&m| !cat.is_identity(m))
            .map(|m| MorphismEntry {
                id: cat.name(m).into(),
                src: cat.object_name(cat.source(m)).into(),
                tgt: cat.object_name(cat.range(m)).into(),
            })
            .collect();
        let mut compose = Vec::new();
        for a in cat.morphisms().filter(|&m| !cat.is_identity(m)) {
            for b in cat.morphisms().filter(|&m| !cat.is_identity(m)) {
                if let Some(c) = cat.compose(a, b) {
                    compose.push((cat.name(a).into(), cat.name(b).into(), cat.name(c).into()));
                }
            }
        }
        CategorySpec::Table(TableBody { objects: cat.object_names().to_vec(), morphisms, compose, units: None })
    }

    pub fn from_graph(g: &Graph) -> CategorySpec {
        CategorySpec::Graph(GraphBody {
            vertices: g.vertices().to_vec(),
            edges: (0..g.num_edges() as u32)
                .map(|e| EdgeEntry {
                    id: g.edge_name(e).into(),
                    r: g.vertices()[g.edge_range(e) as usize].clone(),
                    s: g.vertices()[g.edge_source(e) as usize].clone(),
                })
                .collect(),
        })
    }
}

fn graph_of(g: &GraphBody) -> Result<Graph> {
    Graph::from_owned(g.vertices.clone(), g.edges.iter().map(|e| (e.id.clone(), e.r.clone(), e.s.clone())).collect())
}

fn split_schema(text: &str) -> Result<(String, serde_json::Map<String, serde_json::Value>)> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let serde_json::Value::Object(mut map) = value else {
        return Err(Error::Parse("top level must be an object".into()));
    };
    let schema = match map.remove("schema") {
        Some(serde_json::Value::String(s)) => s,
        Some(_) => return Err(Error::Parse("schema must be a string".into())),
        None => return Err(Error::Parse("missing schema field".into())),
    };
    Ok((schema, map))
}

/// Reads the schema tag without parsing the rest.
pub fn schema_of(text: &str) -> Result<String> {
    split_schema(text).map(|(s, _)| s)
}

pub fn parse_category(text: &str) -> Result<CategorySpec> {
    let (schema, map) = split_schema(text)?;
    if schema != CATEGORY_SCHEMA {
        return Err(Error::SchemaVersion { found: schema, expected: CATEGORY_SCHEMA.into() });
    }
    serde_json::from_value(serde_json::Value::Object(map)).map_err(|e| Error::Parse(e.to_string()))
}

pub fn write_category(spec: &CategorySpec) -> String {
    let mut value = serde_json::to_value(spec).expect("plain data");
    if let serde_json::Value::Object(map) = &mut value {
        map.insert("schema".into(), CATEGORY_SCHEMA.into());
    }
    serde_json::to_string_pretty(&sort_keys(value)).expect("plain data")
}

fn sort_keys(v: serde_json::Value) -> serde_json::Value {
    match v {
        serde_json::Value::Object(map) => {
            let sorted: BTreeMap<String, serde_json::Value> = map.into_iter().map(|(k, v)| (k, sort_keys(v))).collect();
            serde_json::Value::Object(sorted.into_iter().collect())
        }
        serde_json::Value::Array(xs) => serde_json::Value::Array(xs.into_iter().map(sort_keys).collect()),
        other => other,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub elements: Vec<String>,
    /// `mul[i][j]` names the product of elements `i` and `j`.
    pub mul: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeSpec {
    pub rank: usize,
    /// Generators of the grading monoid; the unit vectors when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Degree>>,
    pub map: Vec<(String, Degree)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AssertionSpec {
    Flag(bool),
    Full { value: bool, provenance: String },
}

impl AssertionSpec {
    fn into_assertion(self) -> Assertion {
        match self {
            AssertionSpec::Flag(value) => Assertion { value, provenance: "asserted in input file".into() },
            AssertionSpec::Full { value, provenance } => Assertion { value, provenance },
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssertionsSpec {
    #[serde(rename = "G_amenable", default, skip_serializing_if = "Option::is_none")]
    pub g_amenable: Option<AssertionSpec>,
    #[serde(rename = "Q_amenable", default, skip_serializing_if = "Option::is_none")]
    pub q_amenable: Option<AssertionSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<CategorySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphBody>,
    pub group: GroupSpec,
    #[serde(default)]
    pub action: Vec<(String, String, String)>,
    #[serde(default)]
    pub cocycle: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<DegreeSpec>,
    #[serde(default)]
    pub assertions: AssertionsSpec,
}

/// A parsed system file.
#[derive(Clone, Debug)]
pub struct LoadedSystem {
    pub system: CategorySystem,
    pub graph: Option<Graph>,
    pub degree: Option<DegreeMap>,
    pub g_amenable: Option<Assertion>,
    pub q_amenable: Option<Assertion>,
}

impl SystemSpec {
    pub fn base(&self) -> Result<CategorySpec> {
        match (&self.category, &self.graph) {
            (Some(c), None) => Ok(c.clone()),
            (None, Some(g)) => Ok(CategorySpec::Graph(g.clone())),
            _ => Err(Error::Parse("a system names exactly one of category and graph".into())),
        }
    }

    pub fn load(&self, truncate: Option<usize>) -> Result<LoadedSystem> {
        let base = self.base()?;
        let cat = base.build(truncate)?;
        let names = &self.group.elements;
        let gid = |n: &str| {
            names.iter().position(|x| x == n).ok_or_else(|| Error::Parse(format!("unknown group element {n:?}")))
        };
        if self.group.mul.len() != names.len() || self.group.mul.iter().any(|r| r.len() != names.len()) {
            return Err(Error::Parse("group table must be square over the listed elements".into()));
        }
        let mul = self
            .group
            .mul
            .iter()
            .map(|row| row.iter().map(|n| gid(n)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let group = GroupTable::new(names.clone(), mul)?;
        let mid = |n: &str| cat.lookup(n).ok_or_else(|| Error::Parse(format!("unknown morphism {n:?}")));
        let mut action = BTreeMap::new();
        for (g, a, b) in &self.action {
            if action.insert((gid(g)?, mid(a)?), mid(b)?).is_some() {
                return Err(Error::Parse(format!("action of {g} on {a} given twice")));
            }
        }
        let mut cocycle = BTreeMap::new();
        for (g, a, h) in &self.cocycle {
            if cocycle.insert((gid(g)?, mid(a)?), gid(h)?).is_some() {
                return Err(Error::Parse(format!("cocycle of {g} at {a} given twice")));
            }
        }
        let degree = self.degree.as_ref().map(|d| degree_map(&cat, d)).transpose()?;
        let graph = base.graph()?;
        let system = CategorySystem::from_partial(cat, group, &action, &cocycle)?;
        Ok(LoadedSystem {
            system,
            graph,
            degree,
            g_amenable: self.assertions.g_amenable.clone().map(AssertionSpec::into_assertion),
            q_amenable: self.assertions.q_amenable.clone().map(AssertionSpec::into_assertion),
        })
    }
}

/// Degrees given for some morphisms, extended to identities by zero and to
/// composites by addition.
pub fn degree_map(cat: &FiniteCategory, d: &DegreeSpec) -> Result<DegreeMap> {
    let monoid = match &d.generators {
        Some(gens) => GradingMonoid::new(d.rank, gens.clone())?,
        None => GradingMonoid::free(d.rank),
    };
    let mut deg: Vec<Option<Degree>> = vec![None; cat.num_morphisms()];
    for (name, v) in &d.map {
        let m = cat.lookup(name).ok_or_else(|| Error::Parse(format!("unknown morphism {name:?} in degree map")))?;
        if v.len() != d.rank {
            return Err(Error::Parse(format!("degree of {name} has the wrong rank")));
        }
        deg[m.idx()] = Some(v.clone());
    }
    for o in cat.objects() {
        deg[cat.identity(o).idx()].get_or_insert_with(|| vec![0; d.rank]);
    }
    loop {
        let mut progress = false;
        for a in cat.morphisms() {
            for b in cat.morphisms() {
                let Some(c) = cat.compose(a, b) else { continue };
                if deg[c.idx()].is_some() {
                    continue;
                }
                if let (Some(x), Some(y)) = (&deg[a.idx()], &deg[b.idx()]) {
                    deg[c.idx()] = Some(x.iter().zip(y).map(|(p, q)| p + q).collect());
                    progress = true;
                }
            }
        }
        if !progress {
            break;
        }
    }
    let degrees = cat
        .morphisms()
        .map(|m: MorphismId| deg[m.idx()].clone().ok_or_else(|| Error::Parse(format!("no degree for {}", cat.name(m)))))
        .collect::<Result<Vec<_>>>()?;
    Ok(DegreeMap::new(monoid, degrees))
}

pub fn parse_system(text: &str) -> Result<SystemSpec> {
    let (schema, map) = split_schema(text)?;
    if schema != SYSTEM_SCHEMA {
        return Err(Error::SchemaVersion { found: schema, expected: SYSTEM_SCHEMA.into() });
    }
    serde_json::from_value(serde_json::Value::Object(map)).map_err(|e| Error::Parse(e.to_string()))
}

pub fn write_system(spec: &SystemSpec) -> String {
    let mut value = serde_json::to_value(spec).expect("plain data");
    if let serde_json::Value::Object(map) = &mut value {
        map.insert("schema".into(), SYSTEM_SCHEMA.into());
    }
    serde_json::to_string_pretty(&sort_keys(value)).expect("plain data")
}

/// File form of a system, listing the action and cocycle on every
/// non-identity morphism.
pub fn system_spec(sys: &CategorySystem, base: CategorySpec, degree: Option<&DegreeMap>) -> SystemSpec {
    let cat = &sys.cat;
    let grp = &sys.group;
    let mut action = Vec::new();
    let mut cocycle = Vec::new();
    for g in grp.elements().filter(|&g| g != grp.unit()) {
        for a in cat.morphisms() {
            if !cat.is_identity(a) || sys.act(g, a) != a {
                action.push((grp.name(g).into(), cat.name(a).into(), cat.name(sys.act(g, a)).into()));
            }
            if !cat.is_identity(a) {
                cocycle.push((grp.name(g).into(), cat.name(a).into(), grp.name(sys.phi(g, a)).into()));
            }
        }
    }
    let (category, graph) = match base {
        CategorySpec::Graph(g) => (None, Some(g)),
        table => (Some(table), None),
    };
    SystemSpec {
        category,
        graph,
        group: GroupSpec {
            elements: grp.names().to_vec(),
            mul: grp.table().iter().map(|row| row.iter().map(|&x| grp.name(x).to_string()).collect()).collect(),
        },
        action,
        cocycle,
        degree: degree.map(|d| DegreeSpec {
            rank: d.monoid.rank(),
            generators: (!d.monoid.is_free()).then(|| d.monoid.generators().to_vec()),
            map: cat
                .morphisms()
                .filter(|&m| !cat.is_identity(m))
                .map(|m| (cat.name(m).to_string(), d.of(m).clone()))
                .collect(),
        }),
        assertions: AssertionsSpec::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_and_graph_files() {
        let table = r#"{"schema":"lcsc/1","kind":"table","objects":["x"],
            "morphisms":[{"id":"g","src":"x","tgt":"x"}],"compose":[["g","g","x"]]}"#;
        let cat = parse_category(table).unwrap().build(None).unwrap();
        assert_eq!(cat.num_morphisms(), 2);
        let graph = r#"{"schema":"lcsc/1","kind":"graph","vertices":["u","v"],"edges":[{"id":"e","r":"u","s":"v"}]}"#;
        let spec = parse_category(graph).unwrap();
        let cat = spec.build(None).unwrap();
        assert_eq!(cat.num_morphisms(), 3);
        let again = parse_category(&write_category(&spec)).unwrap();
        assert_eq!(again, spec);
    }

    #[test]
    fn rejects_unknown_fields_and_schemas() {
        let extra = r#"{"schema":"lcsc/1","kind":"graph","vertices":[],"edges":[],"colour":1}"#;
        assert!(matches!(parse_category(extra), Err(Error::Parse(_))));
        let old = r#"{"schema":"lcsc/0","kind":"graph","vertices":[]}"#;
        assert!(matches!(parse_category(old), Err(Error::SchemaVersion { .. })));
        assert!(matches!(parse_category("[1]"), Err(Error::Parse(_))));
    }

    #[test]
    fn system_file() {
        let text = r#"{"schema":"lcsc-sys/1",
            "graph":{"vertices":["u","v"],"edges":[{"id":"e","r":"u","s":"v"},{"id":"f","r":"u","s":"v"}]},
            "group":{"elements":["1","t"],"mul":[["1","t"],["t","1"]]},
            "action":[["t","e","f"],["t","f","e"]],
            "cocycle":[["t","e","1"],["t","f","1"]],
            "degree":{"rank":1,"map":[["e",[1]],["f",[1]]]},
            "assertions":{"G_amenable":true}}"#;
        let spec = parse_system(text).unwrap();
        let loaded = spec.load(None).unwrap();
        assert!(crate::zs::validate_system(&loaded.system).valid);
        assert_eq!(loaded.degree.unwrap().degrees.len(), 4);
        assert_eq!(loaded.g_amenable.unwrap().provenance, "asserted in input file");
        let round = system_spec(&loaded.system, spec.base().unwrap(), None);
        let reloaded = parse_system(&write_system(&round)).unwrap().load(None).unwrap();
        assert_eq!(reloaded.system.action_table(), loaded.system.action_table());
        assert_eq!(reloaded.system.cocycle_table(), loaded.system.cocycle_table());
    }
}
