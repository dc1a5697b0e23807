//! Labeled simple undirected graphs and the constructions the rest of the
//! crate is built on: paths, cycles, cartesian and categorical products, line
//! graphs, neighborhoods, induced subgraphs, and connected components.
//!
//! Graphs are immutable values: every operation that changes a graph returns
//! a new one, so reduction traces can hold stable snapshots.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::label::VertexLabel;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count must be at least {min}, got {got}")]
    TooFewVertices { min: usize, got: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("duplicate vertex label {0}")]
    DuplicateVertex(String),
    #[error("edge {0} -- {1} already present")]
    DuplicateEdge(String, String),
    #[error("edge {0} -- {1} not present")]
    MissingEdge(String, String),
    #[error("self-loop at {0}")]
    SelfLoop(String),
    #[error("graph must be nonempty")]
    Empty,
}

/// A finite simple undirected graph with ordered, unique vertex labels.
///
/// Edges are stored as index pairs `(i, j)` with `i < j`, sorted, so two
/// graphs built the same way serialize to identical bytes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    labels: Vec<VertexLabel>,
    edges: Vec<(u32, u32)>,
    adj: Vec<BitSet>,
}

impl Graph {
    /// Builds a graph from labels and label pairs, validating simplicity.
    pub fn new(
        labels: Vec<VertexLabel>,
        edge_labels: &[(VertexLabel, VertexLabel)],
    ) -> Result<Self, GraphError> {
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i as u32).is_some() {
                return Err(GraphError::DuplicateVertex(l.to_string()));
            }
        }
        let mut edges = BTreeSet::new();
        for (a, b) in edge_labels {
            let ia = *index
                .get(a)
                .ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
            if ia == ib {
                return Err(GraphError::SelfLoop(a.to_string()));
            }
            edges.insert((ia.min(ib), ia.max(ib)));
        }
        Ok(Self::from_index_edges(labels, edges.into_iter().collect()))
    }

    fn from_index_edges(labels: Vec<VertexLabel>, mut edges: Vec<(u32, u32)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let n = labels.len();
        let mut adj = vec![BitSet::new(n); n];
        for &(a, b) in &edges {
            adj[a as usize].insert(b as usize);
            adj[b as usize].insert(a as usize);
        }
        Graph { labels, edges, adj }
    }

    /// The graph with no vertices.
    pub fn empty() -> Self {
        Graph::from_index_edges(Vec::new(), Vec::new())
    }

    /// Path on `n >= 1` vertices `1..=n`.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::TooFewVertices { min: 1, got: 0 });
        }
        let labels = (1..=n as u32).map(VertexLabel::Int).collect();
        let edges = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
        Ok(Graph::from_index_edges(labels, edges))
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::TooFewVertices { min: 3, got: n });
        }
        let labels = (1..=n as u32).map(VertexLabel::Int).collect();
        let mut edges: Vec<_> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n as u32 - 1));
        Ok(Graph::from_index_edges(labels, edges))
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let labels = (1..=n as u32).map(VertexLabel::Int).collect();
        let mut edges = Vec::new();
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                edges.push((i, j));
            }
        }
        Graph::from_index_edges(labels, edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &VertexLabel {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &VertexLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn require_index(&self, label: &VertexLabel) -> Result<usize, GraphError> {
        self.index_of(label)
            .ok_or_else(|| GraphError::UnknownVertex(label.to_string()))
    }

    /// Edges as index pairs `(i, j)`, `i < j`, sorted.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_labels(&self) -> impl Iterator<Item = (&VertexLabel, &VertexLabel)> {
        self.edges
            .iter()
            .map(|&(a, b)| (&self.labels[a as usize], &self.labels[b as usize]))
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.adj[a].contains(b)
    }

    pub fn adjacency(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    /// Open or closed neighborhood of `v`, as sorted vertex indices.
    pub fn neighborhood(
        &self,
        v: &VertexLabel,
        closed: bool,
    ) -> Result<Vec<usize>, GraphError> {
        let i = self.require_index(v)?;
        let mut out: Vec<usize> = self.adj[i].iter().collect();
        if closed {
            out.push(i);
            out.sort_unstable();
        }
        Ok(out)
    }

    /// Induced subgraph on the complement of `remove` (vertex indices).
    pub fn delete_vertex_indices(&self, remove: &BTreeSet<usize>) -> Graph {
        let mut keep = Vec::new();
        let mut old_to_new = vec![u32::MAX; self.n_vertices()];
        for (i, l) in self.labels.iter().enumerate() {
            if !remove.contains(&i) {
                old_to_new[i] = keep.len() as u32;
                keep.push(l.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|(a, b)| {
                old_to_new[*a as usize] != u32::MAX && old_to_new[*b as usize] != u32::MAX
            })
            .map(|&(a, b)| (old_to_new[a as usize], old_to_new[b as usize]))
            .collect();
        Graph::from_index_edges(keep, edges)
    }

    /// Induced subgraph after deleting the given vertices.
    pub fn delete_vertices(&self, vs: &[VertexLabel]) -> Result<Graph, GraphError> {
        let mut remove = BTreeSet::new();
        for v in vs {
            remove.insert(self.require_index(v)?);
        }
        Ok(self.delete_vertex_indices(&remove))
    }

    pub fn add_edges(&self, pairs: &[(VertexLabel, VertexLabel)]) -> Result<Graph, GraphError> {
        let mut edges: BTreeSet<(u32, u32)> = self.edges.iter().copied().collect();
        for (a, b) in pairs {
            let ia = self.require_index(a)? as u32;
            let ib = self.require_index(b)? as u32;
            if ia == ib {
                return Err(GraphError::SelfLoop(a.to_string()));
            }
            if !edges.insert((ia.min(ib), ia.max(ib))) {
                return Err(GraphError::DuplicateEdge(a.to_string(), b.to_string()));
            }
        }
        Ok(Graph::from_index_edges(
            self.labels.clone(),
            edges.into_iter().collect(),
        ))
    }

    pub fn remove_edges(&self, pairs: &[(VertexLabel, VertexLabel)]) -> Result<Graph, GraphError> {
        let mut edges: BTreeSet<(u32, u32)> = self.edges.iter().copied().collect();
        for (a, b) in pairs {
            let ia = self.require_index(a)? as u32;
            let ib = self.require_index(b)? as u32;
            if !edges.remove(&(ia.min(ib), ia.max(ib))) {
                return Err(GraphError::MissingEdge(a.to_string(), b.to_string()));
            }
        }
        Ok(Graph::from_index_edges(
            self.labels.clone(),
            edges.into_iter().collect(),
        ))
    }

    /// Categorical product: `(u,v) ~ (u',v')` iff `uu'` and `vv'` are edges.
    pub fn categorical_product(&self, other: &Graph) -> Result<Graph, GraphError> {
        if self.n_vertices() == 0 || other.n_vertices() == 0 {
            return Err(GraphError::Empty);
        }
        let labels = product_vertices(self, other);
        let m = other.n_vertices() as u32;
        let idx = |u: u32, v: u32| u * m + v;
        let mut edges = Vec::new();
        for &(a, b) in &self.edges {
            for &(c, d) in &other.edges {
                edges.push(ordered(idx(a, c), idx(b, d)));
                edges.push(ordered(idx(a, d), idx(b, c)));
            }
        }
        Ok(Graph::from_index_edges(labels, edges))
    }

    /// Cartesian product: one coordinate equal, the other adjacent.
    pub fn cartesian_product(&self, other: &Graph) -> Result<Graph, GraphError> {
        if self.n_vertices() == 0 || other.n_vertices() == 0 {
            return Err(GraphError::Empty);
        }
        let labels = product_vertices(self, other);
        let m = other.n_vertices() as u32;
        let idx = |u: u32, v: u32| u * m + v;
        let mut edges = Vec::new();
        for u in 0..self.n_vertices() as u32 {
            for &(c, d) in &other.edges {
                edges.push(ordered(idx(u, c), idx(u, d)));
            }
        }
        for v in 0..other.n_vertices() as u32 {
            for &(a, b) in &self.edges {
                edges.push(ordered(idx(a, v), idx(b, v)));
            }
        }
        Ok(Graph::from_index_edges(labels, edges))
    }

    /// Line graph: one vertex per edge, adjacent iff the edges share an
    /// endpoint. An edgeless input yields the graph with no vertices.
    pub fn line_graph(&self) -> Graph {
        let labels: Vec<VertexLabel> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                VertexLabel::edge(
                    self.labels[a as usize].clone(),
                    self.labels[b as usize].clone(),
                )
            })
            .collect();
        let mut edges = Vec::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            for (j, &(c, d)) in self.edges.iter().enumerate().skip(i + 1) {
                if a == c || a == d || b == c || b == d {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        Graph::from_index_edges(labels, edges)
    }

    /// Connected components as induced subgraphs, ordered by least vertex
    /// label.
    pub fn connected_components(&self) -> Vec<Graph> {
        let n = self.n_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut n_comp = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = n_comp;
            while let Some(v) = stack.pop() {
                for w in self.adj[v].iter() {
                    if comp[w] == usize::MAX {
                        comp[w] = n_comp;
                        stack.push(w);
                    }
                }
            }
            n_comp += 1;
        }
        // One representative (least label) per component decides the order.
        let mut reps: Vec<(usize, &VertexLabel)> = Vec::new();
        for c in 0..n_comp {
            let least = (0..n)
                .filter(|&v| comp[v] == c)
                .map(|v| &self.labels[v])
                .min()
                .unwrap();
            reps.push((c, least));
        }
        reps.sort_by(|a, b| a.1.cmp(b.1));
        reps.iter()
            .map(|&(c, _)| {
                let remove: BTreeSet<usize> = (0..n).filter(|&v| comp[v] != c).collect();
                self.delete_vertex_indices(&remove)
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n_vertices() <= 1 || self.connected_components().len() == 1
    }

    /// Disjoint union; labels must not collide.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let off = self.n_vertices() as u32;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + off, b + off)));
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(GraphError::DuplicateVertex(l.to_string()));
            }
        }
        Ok(Graph::from_index_edges(labels, edges))
    }

    /// Relabels every vertex via `f`, keeping the vertex order.
    pub fn map_labels(&self, f: impl Fn(&VertexLabel) -> VertexLabel) -> Result<Graph, GraphError> {
        let labels: Vec<VertexLabel> = self.labels.iter().map(f).collect();
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(GraphError::DuplicateVertex(l.to_string()));
            }
        }
        Ok(Graph::from_index_edges(labels, self.edges.clone()))
    }
}

fn product_vertices(g: &Graph, h: &Graph) -> Vec<VertexLabel> {
    let mut labels = Vec::with_capacity(g.n_vertices() * h.n_vertices());
    for a in g.labels() {
        for b in h.labels() {
            labels.push(VertexLabel::pair(a.clone(), b.clone()));
        }
    }
    labels
}

fn ordered(a: u32, b: u32) -> (u32, u32) {
    (a.min(b), a.max(b))
}

// --- JSON form -------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<VertexLabel>,
    edges: Vec<(VertexLabel, VertexLabel)>,
}

impl Graph {
    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            vertices: self.labels.clone(),
            edges: self
                .edge_labels()
                .map(|(a, b)| (a.clone(), b.clone()))
                .collect(),
        };
        serde_json::to_string(&doc).expect("graph serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Graph, String> {
        let doc: GraphJson = serde_json::from_str(s).map_err(|e| e.to_string())?;
        Graph::new(doc.vertices, &doc.edges).map_err(|e| e.to_string())
    }
}
