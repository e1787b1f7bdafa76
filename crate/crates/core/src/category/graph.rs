use super::{CategoryProvider, FiniteCategory, MorphismId, ObjectId};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// A finite directed graph. Edge `e` goes from `s(e)` to `r(e)`; paths
/// `e1 e2 ... en` require `s(ei) = r(ei+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edge_names: Vec<String>,
    edge_range: Vec<u32>,
    edge_source: Vec<u32>,
}

/// A path in a [`Graph`]: a vertex when `edges` is empty.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub range: u32,
    pub source: u32,
    pub edges: Vec<u32>,
}

impl Graph {
    /// Builds a graph from vertex names and `(edge, range, source)` triples.
    /// Vertices and edges are densified in sorted name order.
    pub fn new(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Graph> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let es: Vec<(String, String, String)> =
            edges.iter().map(|(e, r, s)| (e.to_string(), r.to_string(), s.to_string())).collect();
        Graph::from_owned(vs, es)
    }

    pub fn from_owned(mut vertices: Vec<String>, mut edges: Vec<(String, String, String)>) -> Result<Graph> {
        vertices.sort();
        let before = vertices.len();
        vertices.dedup();
        if vertices.len() != before {
            return Err(Error::Parse("duplicate vertex name".into()));
        }
        edges.sort();
        let mut edge_names = Vec::new();
        let mut edge_range = Vec::new();
        let mut edge_source = Vec::new();
        let vid = |v: &str| {
            vertices
                .binary_search_by(|x| x.as_str().cmp(v))
                .map(|i| i as u32)
                .map_err(|_| Error::Parse(format!("unknown vertex {v:?}")))
        };
        for (e, r, s) in &edges {
            if vertices.binary_search(e).is_ok() || edge_names.last() == Some(e) {
                return Err(Error::Parse(format!("edge name {e:?} is not unique")));
            }
            edge_names.push(e.clone());
            edge_range.push(vid(r)?);
            edge_source.push(vid(s)?);
        }
        Ok(Graph { vertices, edge_names, edge_range, edge_source })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edge_names.len()
    }

    pub fn edge_name(&self, e: u32) -> &str {
        &self.edge_names[e as usize]
    }

    pub fn edge_range(&self, e: u32) -> u32 {
        self.edge_range[e as usize]
    }

    pub fn edge_source(&self, e: u32) -> u32 {
        self.edge_source[e as usize]
    }

    pub fn edge_by_name(&self, name: &str) -> Option<u32> {
        self.edge_names.iter().position(|n| n == name).map(|i| i as u32)
    }

    /// Returns a vertex lying on a directed cycle, if any.
    pub fn cycle_vertex(&self) -> Option<u32> {
        // Iteratively strip vertices with no outgoing edge towards the
        // source side; whatever survives lies on or above a cycle.
        let n = self.vertices.len();
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for v in 0..n {
                if !alive[v] {
                    continue;
                }
                let continues = (0..self.num_edges())
                    .any(|e| self.edge_range[e] as usize == v && alive[self.edge_source[e] as usize]);
                if !continues {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        (0..n).find(|&v| alive[v]).map(|v| v as u32)
    }

    pub fn is_acyclic(&self) -> bool {
        self.cycle_vertex().is_none()
    }

    /// All paths of length at most `depth` (all paths when `None`; the graph
    /// must then be acyclic). Sorted by length, then edge sequence.
    pub fn paths(&self, depth: Option<usize>) -> Result<Vec<Path>> {
        if depth.is_none() {
            if let Some(v) = self.cycle_vertex() {
                return Err(Error::CyclicGraph { vertex: self.vertices[v as usize].clone() });
            }
        }
        let mut out: Vec<Path> =
            (0..self.vertices.len() as u32).map(|v| Path { range: v, source: v, edges: vec![] }).collect();
        let mut frontier: Vec<Path> = (0..self.num_edges() as u32)
            .map(|e| Path { range: self.edge_range(e), source: self.edge_source(e), edges: vec![e] })
            .collect();
        let mut len = 1;
        while !frontier.is_empty() && depth.is_none_or(|d| len <= d) {
            out.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for p in &frontier {
                for e in 0..self.num_edges() as u32 {
                    if self.edge_range(e) == p.source {
                        let mut edges = p.edges.clone();
                        edges.push(e);
                        next.push(Path { range: p.range, source: self.edge_source(e), edges });
                    }
                }
            }
            next.sort_by(|a, b| a.edges.cmp(&b.edges));
            frontier = next;
            len += 1;
        }
        Ok(out)
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            self.vertices[p.range as usize].clone()
        } else {
            p.edges.iter().map(|&e| self.edge_name(e)).collect::<Vec<_>>().join(".")
        }
    }

    pub fn concat(&self, a: &Path, b: &Path) -> Option<Path> {
        if a.source != b.range {
            return None;
        }
        let mut edges = a.edges.clone();
        edges.extend_from_slice(&b.edges);
        Some(Path { range: a.range, source: b.source, edges })
    }

    /// The path category as a composition table, truncated at `depth`
    /// when given. Truncated tables are flagged non-exact.
    pub fn path_category(&self, depth: Option<usize>) -> Result<FiniteCategory> {
        let paths = self.paths(depth)?;
        let index: BTreeMap<&Path, u32> = paths.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
        let names: Vec<String> = paths.iter().map(|p| self.path_name(p)).collect();
        let range: Vec<ObjectId> = paths.iter().map(|p| ObjectId(p.range)).collect();
        let source: Vec<ObjectId> = paths.iter().map(|p| ObjectId(p.source)).collect();
        let identities: Vec<MorphismId> = (0..self.vertices.len() as u32).map(MorphismId).collect();
        let mut composites = Vec::new();
        for (i, a) in paths.iter().enumerate() {
            for (j, b) in paths.iter().enumerate() {
                if let Some(ab) = self.concat(a, b) {
                    if let Some(&k) = index.get(&ab) {
                        composites.push((MorphismId(i as u32), MorphismId(j as u32), MorphismId(k)));
                    }
                }
            }
        }
        let mut cat = FiniteCategory::from_parts(self.vertices.clone(), names, identities, range, source, composites);
        let cyclic = self.cycle_vertex().is_some();
        cat.set_truncated(if cyclic { depth } else { None });
        Ok(cat)
    }
}

/// Lazy view of the path category of a possibly cyclic graph.
///
/// Order and alignment questions are answered from prefixes without
/// enumerating anything. Enumeration needs an acyclic graph or a depth
/// bound.
#[derive(Clone, Debug)]
pub struct PathProvider {
    pub graph: Graph,
    pub depth: Option<usize>,
}

impl CategoryProvider for PathProvider {
    type Morphism = Path;

    fn objects(&self) -> Vec<Path> {
        (0..self.graph.vertices.len() as u32).map(|v| Path { range: v, source: v, edges: vec![] }).collect()
    }

    fn morphisms(&self) -> Result<Vec<Path>> {
        if self.graph.is_acyclic() {
            return self.graph.paths(None);
        }
        match self.depth {
            Some(d) => self.graph.paths(Some(d)),
            None => Err(Error::InfiniteCategory(format!(
                "graph has a cycle through {:?} and no depth bound was supplied",
                self.graph.vertices[self.graph.cycle_vertex().unwrap_or(0) as usize]
            ))),
        }
    }

    fn source_unit(&self, m: &Path) -> Path {
        Path { range: m.source, source: m.source, edges: vec![] }
    }

    fn range_unit(&self, m: &Path) -> Path {
        Path { range: m.range, source: m.range, edges: vec![] }
    }

    fn composite(&self, a: &Path, b: &Path) -> Option<Path> {
        self.graph.concat(a, b)
    }

    fn is_known_finite(&self) -> bool {
        self.graph.is_acyclic()
    }

    fn leq(&self, a: &Path, b: &Path) -> Result<bool> {
        Ok(a.range == b.range && b.edges.starts_with(&a.edges))
    }

    fn approx(&self, a: &Path, b: &Path) -> Result<bool> {
        Ok(a == b)
    }

    fn minimal_common_extensions(&self, a: &Path, b: &Path) -> Result<Vec<Path>> {
        if self.leq(a, b)? {
            Ok(vec![b.clone()])
        } else if self.leq(b, a)? {
            Ok(vec![a.clone()])
        } else {
            Ok(vec![])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{is_finitely_aligned, is_left_cancellative, is_singly_aligned};

    #[test]
    fn fork_path_category() {
        let g = Graph::new(&["u1", "u2", "v"], &[("e1", "v", "u1"), ("e2", "v", "u2")]).unwrap();
        let c = g.path_category(None).unwrap();
        assert_eq!(c.num_morphisms(), 5);
        assert!(c.validate().is_valid());
        assert!(is_left_cancellative(&c).unwrap());
        assert!(is_singly_aligned(&c).unwrap());
    }

    #[test]
    fn cyclic_graph_needs_depth_bound() {
        let g = Graph::new(&["v"], &[("l", "v", "v")]).unwrap();
        assert!(matches!(g.path_category(None), Err(Error::CyclicGraph { .. })));
        let t = g.path_category(Some(3)).unwrap();
        assert!(!t.is_exact());
        assert_eq!(t.num_morphisms(), 4);
        assert!(t.validate().is_valid());
        let lazy = PathProvider { graph: g.clone(), depth: None };
        assert!(matches!(is_finitely_aligned(&lazy), Err(Error::InfiniteCategory(_))));
        let l = Path { range: 0, source: 0, edges: vec![0] };
        let ll = Path { range: 0, source: 0, edges: vec![0, 0] };
        assert!(lazy.leq(&l, &ll).unwrap());
        assert_eq!(lazy.minimal_common_extensions(&l, &ll).unwrap(), vec![ll.clone()]);
        let bounded = PathProvider { graph: g, depth: Some(2) };
        assert!(is_finitely_aligned(&bounded).unwrap());
    }

    #[test]
    fn lazy_and_table_providers_agree_on_order() {
        let g = Graph::new(&["a", "b", "c"], &[("x", "b", "a"), ("y", "c", "b"), ("z", "c", "b")]).unwrap();
        let lazy = PathProvider { graph: g.clone(), depth: None };
        let table = g.path_category(None).unwrap();
        let paths = g.paths(None).unwrap();
        for (i, p) in paths.iter().enumerate() {
            for (j, q) in paths.iter().enumerate() {
                let (mi, mj) = (MorphismId(i as u32), MorphismId(j as u32));
                assert_eq!(lazy.leq(p, q).unwrap(), table.leq(&mi, &mj).unwrap());
                let lm = lazy.minimal_common_extensions(p, q).unwrap().len();
                let tm = table.minimal_common_extensions(&mi, &mj).unwrap().len();
                assert_eq!(lm, tm);
            }
        }
    }
}
