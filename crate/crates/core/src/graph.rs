//! Simplicial graphs dictating which vertex algebras commute.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vertex name: a nonempty token over `[a-zA-Z0-9_]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(token: impl Into<String>) -> Result<Self> {
        let token = token.into();
        let well_formed =
            !token.is_empty() && token.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if well_formed {
            Ok(VertexId(token))
        } else {
            Err(Error::InvalidToken(token))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Position of a vertex in the graph's canonical (lexicographic) order.
///
/// Comparing two `Vertex` values of the same graph compares their tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub(crate) u32);

impl Vertex {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Undirected loop-free graph without multiple edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialGraph {
    names: Vec<VertexId>,
    adjacency: Vec<Vec<bool>>,
}

/// JSON document form: `{"vertices":["a","b"],"edges":[["a","b"]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
}

impl SimplicialGraph {
    /// Validates and builds a graph. Edges are symmetrized and deduplicated.
    pub fn build<V, E>(vertices: &[V], edges: &[(E, E)]) -> Result<Self>
    where
        V: AsRef<str>,
        E: AsRef<str>,
    {
        let mut seen = BTreeSet::new();
        for v in vertices {
            let id = VertexId::new(v.as_ref())?;
            if !seen.insert(id.clone()) {
                return Err(Error::DuplicateVertex(id.0));
            }
        }
        let names: Vec<VertexId> = seen.into_iter().collect();
        let n = names.len();
        let mut graph = SimplicialGraph {
            names,
            adjacency: vec![vec![false; n]; n],
        };
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let va = graph.vertex(a)?;
            let vb = graph.vertex(b)?;
            if va == vb {
                return Err(Error::LoopEdge(a.to_string()));
            }
            graph.adjacency[va.index()][vb.index()] = true;
            graph.adjacency[vb.index()][va.index()] = true;
        }
        Ok(graph)
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self> {
        Self::build(&doc.vertices, &doc.edges)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
        Self::from_document(&doc)
    }

    /// Canonical document: vertices in lexicographic order, each edge once
    /// with its endpoints ordered.
    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self.names.iter().map(|v| v.0.clone()).collect(),
            edges: self
                .edges()
                .map(|(a, b)| (self.name(a).to_string(), self.name(b).to_string()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("graph documents always serialize")
    }

    /// Graph on the given vertices with no edges (free product case).
    pub fn edgeless<V: AsRef<str>>(vertices: &[V]) -> Result<Self> {
        Self::build::<V, &str>(vertices, &[])
    }

    /// Graph with every pair of distinct vertices joined (tensor product case).
    pub fn complete<V: AsRef<str>>(vertices: &[V]) -> Result<Self> {
        let mut edges = Vec::new();
        for (i, a) in vertices.iter().enumerate() {
            for b in &vertices[i + 1..] {
                edges.push((a.as_ref(), b.as_ref()));
            }
        }
        Self::build(vertices, &edges)
    }

    /// Path through the vertices in the given order.
    pub fn path<V: AsRef<str>>(vertices: &[V]) -> Result<Self> {
        let edges: Vec<_> = vertices
            .windows(2)
            .map(|w| (w[0].as_ref(), w[1].as_ref()))
            .collect();
        Self::build(vertices, &edges)
    }

    /// Cycle through the vertices in the given order (at least three).
    pub fn cycle<V: AsRef<str>>(vertices: &[V]) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::Domain("a cycle needs at least 3 vertices".into()));
        }
        let mut edges: Vec<_> = vertices
            .windows(2)
            .map(|w| (w[0].as_ref(), w[1].as_ref()))
            .collect();
        edges.push((vertices[vertices.len() - 1].as_ref(), vertices[0].as_ref()));
        Self::build(vertices, &edges)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Vertices in canonical order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.names.len() as u32).map(Vertex)
    }

    /// Each edge once, as `(smaller, larger)`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |a| {
            self.vertices()
                .filter(move |&b| a < b && self.is_edge(a, b))
                .map(move |b| (a, b))
        })
    }

    pub fn vertex(&self, token: &str) -> Result<Vertex> {
        self.names
            .binary_search_by(|id| id.as_str().cmp(token))
            .map(|i| Vertex(i as u32))
            .map_err(|_| Error::UnknownVertex(token.to_string()))
    }

    pub fn name(&self, v: Vertex) -> &str {
        self.names[v.index()].as_str()
    }

    pub fn id(&self, v: Vertex) -> &VertexId {
        &self.names[v.index()]
    }

    /// Whether `{v, w}` is an edge. Always false for `v == w`.
    pub fn is_edge(&self, v: Vertex, w: Vertex) -> bool {
        self.adjacency[v.index()][w.index()]
    }

    pub fn is_edge_by_name(&self, v: &str, w: &str) -> Result<bool> {
        Ok(self.is_edge(self.vertex(v)?, self.vertex(w)?))
    }

    /// Neighbours of `v`.
    pub fn link(&self, v: Vertex) -> BTreeSet<Vertex> {
        self.vertices().filter(|&w| self.is_edge(v, w)).collect()
    }

    /// Neighbours of `v` together with `v` itself.
    pub fn star(&self, v: Vertex) -> BTreeSet<Vertex> {
        let mut star = self.link(v);
        star.insert(v);
        star
    }

    /// Graph with the same vertices plus the extra edges.
    pub fn with_edges(&self, extra: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut graph = self.clone();
        for &(a, b) in extra {
            if a == b {
                return Err(Error::LoopEdge(self.name(a).to_string()));
            }
            graph.adjacency[a.index()][b.index()] = true;
            graph.adjacency[b.index()][a.index()] = true;
        }
        Ok(graph)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> SimplicialGraph {
        SimplicialGraph::path(&["a", "b", "c"]).unwrap()
    }

    fn names(g: &SimplicialGraph, set: BTreeSet<Vertex>) -> Vec<&str> {
        set.into_iter().map(|v| g.name(v)).collect()
    }

    #[test]
    fn builds_two_vertex_edge() {
        let g = SimplicialGraph::build(&["a", "b"], &[("a", "b")]).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.is_edge_by_name("a", "b").unwrap());
        assert_eq!(g.edges().count(), 1);
    }

    #[test]
    fn rejects_loops_unknown_and_duplicates() {
        assert_eq!(
            SimplicialGraph::build(&["a"], &[("a", "a")]),
            Err(Error::LoopEdge("a".into()))
        );
        assert_eq!(
            SimplicialGraph::build(&["a"], &[("a", "z")]),
            Err(Error::UnknownVertex("z".into()))
        );
        assert_eq!(
            SimplicialGraph::build::<_, &str>(&["a", "a"], &[]),
            Err(Error::DuplicateVertex("a".into()))
        );
        assert!(matches!(
            SimplicialGraph::build::<_, &str>(&["a-b"], &[]),
            Err(Error::InvalidToken(_))
        ));
        assert!(matches!(
            SimplicialGraph::build::<_, &str>(&[""], &[]),
            Err(Error::InvalidToken(_))
        ));
    }

    #[test]
    fn symmetric_duplicates_collapse() {
        let once = SimplicialGraph::build(&["a", "b"], &[("a", "b")]).unwrap();
        let twice = SimplicialGraph::build(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn path_adjacency() {
        let g = p3();
        assert!(g.is_edge_by_name("a", "b").unwrap());
        assert!(!g.is_edge_by_name("a", "c").unwrap());
        assert!(!g.is_edge_by_name("a", "a").unwrap());
        assert!(g.is_edge_by_name("a", "q").is_err());
    }

    #[test]
    fn link_and_star() {
        let g = p3();
        assert_eq!(names(&g, g.link(g.vertex("b").unwrap())), ["a", "c"]);
        assert_eq!(names(&g, g.star(g.vertex("a").unwrap())), ["a", "b"]);
        let free = SimplicialGraph::edgeless(&["a", "b"]).unwrap();
        assert!(free.link(free.vertex("a").unwrap()).is_empty());
    }

    #[test]
    fn vertex_order_is_lexicographic() {
        let g = SimplicialGraph::edgeless(&["c", "a", "b"]).unwrap();
        let order: Vec<_> = g.vertices().map(|v| g.name(v)).collect();
        assert_eq!(order, ["a", "b", "c"]);
    }

    #[test]
    fn json_round_trip_is_stable() {
        let text = r#"{"vertices":["c","b","a"],"edges":[["c","b"],["a","b"],["b","a"]]}"#;
        let g = SimplicialGraph::from_json(text).unwrap();
        let again = SimplicialGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(g, again);
        assert_eq!(
            g.to_json(),
            r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]]}"#
        );
    }

    #[test]
    fn adjacency_is_symmetric_and_link_consistent() {
        let g = SimplicialGraph::cycle(&["a", "b", "c", "d", "e"]).unwrap();
        for v in g.vertices() {
            assert!(!g.link(v).contains(&v));
            assert!(g.star(v).contains(&v));
            for w in g.vertices() {
                assert_eq!(g.is_edge(v, w), g.is_edge(w, v));
                assert_eq!(g.link(v).contains(&w), g.link(w).contains(&v));
            }
        }
    }
}
