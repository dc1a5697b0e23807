//! Simplicial complexes, materialized as explicit per-dimension simplex
//! lists, built from independent sets of a graph.
//!
//! The void complex (no simplices at all, not even the empty one) is kept
//! distinct from the empty complex `{∅}`; the two behave differently under
//! joins and homology.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::graph::Graph;

pub const DEFAULT_SIMPLEX_BUDGET: usize = 5_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("simplex budget exceeded: more than {budget} simplices (stopped at {reached})")]
    BudgetExceeded { budget: usize, reached: usize },
}

/// Simplices of one dimension, each a strictly increasing vertex-index list,
/// sorted lexicographically.
pub type SimplexList = Vec<Vec<u32>>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialComplex {
    n_vertices: usize,
    is_void: bool,
    /// `simplices[d]` holds the d-simplices; the empty simplex is implicit in
    /// every non-void complex.
    simplices: Vec<SimplexList>,
}

impl SimplicialComplex {
    /// The void complex.
    pub fn void() -> Self {
        SimplicialComplex {
            n_vertices: 0,
            is_void: true,
            simplices: Vec::new(),
        }
    }

    /// The empty complex `{∅}` on zero vertices.
    pub fn empty() -> Self {
        SimplicialComplex {
            n_vertices: 0,
            is_void: false,
            simplices: Vec::new(),
        }
    }

    pub fn from_parts(n_vertices: usize, simplices: Vec<SimplexList>) -> Self {
        let mut c = SimplicialComplex {
            n_vertices,
            is_void: false,
            simplices,
        };
        while c.simplices.last().is_some_and(|l| l.is_empty()) {
            c.simplices.pop();
        }
        c
    }

    pub fn is_void(&self) -> bool {
        self.is_void
    }

    /// True when the complex is exactly `{∅}`.
    pub fn is_empty_complex(&self) -> bool {
        !self.is_void && self.simplices.is_empty()
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Largest dimension carrying a simplex; -1 for `{∅}`; void has none.
    pub fn dimension(&self) -> Option<i32> {
        if self.is_void {
            None
        } else {
            Some(self.simplices.len() as i32 - 1)
        }
    }

    /// The d-simplices, empty for out-of-range d.
    pub fn simplices(&self, d: i32) -> &[Vec<u32>] {
        if d < 0 || d as usize >= self.simplices.len() {
            &[]
        } else {
            &self.simplices[d as usize]
        }
    }

    /// Number of d-simplices, with `f(-1) = 1` for non-void complexes.
    pub fn f_count(&self, d: i32) -> usize {
        if self.is_void {
            0
        } else if d == -1 {
            1
        } else {
            self.simplices(d).len()
        }
    }

    /// Total stored simplices of dimension >= 0.
    pub fn total_simplices(&self) -> usize {
        self.simplices.iter().map(|l| l.len()).sum()
    }

    /// Join: all unions `σ ⊔ τ` with relabeled, disjoint vertex ranges.
    /// Joining with the void complex yields the void complex, since the void
    /// side contributes no simplices to pair with.
    pub fn join(&self, other: &SimplicialComplex, budget: usize) -> Result<Self, ComplexError> {
        if self.is_void || other.is_void {
            return Ok(SimplicialComplex::void());
        }
        let off = self.n_vertices as u32;
        let dim_a = self.simplices.len();
        let dim_b = other.simplices.len();
        let mut out: Vec<SimplexList> = vec![Vec::new(); dim_a + dim_b];
        let mut total = 0usize;
        let mut push = |d: usize, s: Vec<u32>, total: &mut usize| -> Result<(), ComplexError> {
            *total += 1;
            if *total > budget {
                return Err(ComplexError::BudgetExceeded {
                    budget,
                    reached: *total,
                });
            }
            out[d].push(s);
            Ok(())
        };
        // σ = ∅ and τ = ∅ sides first, then proper pairs.
        for (d, list) in self.simplices.iter().enumerate() {
            for s in list {
                push(d, s.clone(), &mut total)?;
            }
        }
        for (d, list) in other.simplices.iter().enumerate() {
            for t in list {
                push(d, t.iter().map(|&v| v + off).collect(), &mut total)?;
            }
        }
        for (da, list_a) in self.simplices.iter().enumerate() {
            for (db, list_b) in other.simplices.iter().enumerate() {
                let d = da + db + 1;
                for s in list_a {
                    for t in list_b {
                        let mut u = Vec::with_capacity(s.len() + t.len());
                        u.extend_from_slice(s);
                        u.extend(t.iter().map(|&v| v + off));
                        push(d, u, &mut total)?;
                    }
                }
            }
        }
        for list in &mut out {
            list.sort_unstable();
        }
        Ok(SimplicialComplex::from_parts(
            self.n_vertices + other.n_vertices,
            out,
        ))
    }

    /// Spot-check of downward closure: every facet of every listed simplex is
    /// listed. Used by tests.
    pub fn is_downward_closed(&self) -> bool {
        for d in 1..self.simplices.len() {
            for s in &self.simplices[d] {
                for skip in 0..s.len() {
                    let face: Vec<u32> = s
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    if self.simplices[d - 1].binary_search(&face).is_err() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Options for complex construction.
#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Only materialize simplices of dimension <= max_dim when set.
    pub max_dim: Option<i32>,
    /// Abort once more than this many simplices have been produced.
    pub max_simplices: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_dim: None,
            max_simplices: DEFAULT_SIMPLEX_BUDGET,
        }
    }
}

/// Independence complex of a graph: simplices are the independent vertex
/// sets, with vertex indices following the graph's vertex order.
///
/// Enumeration is ordered backtracking over adjacency bitsets, so the output
/// order is deterministic.
pub fn independence_complex(g: &Graph, opts: &BuildOptions) -> Result<SimplicialComplex, ComplexError> {
    let n = g.n_vertices();
    if n == 0 {
        return Ok(SimplicialComplex::empty());
    }
    let max_size = match opts.max_dim {
        Some(d) if d < 0 => 0,
        Some(d) => (d as usize) + 1,
        None => n,
    };
    let mut out: Vec<SimplexList> = Vec::new();
    let mut total = 0usize;
    let mut current: Vec<u32> = Vec::new();

    // Candidate sets per depth: vertices above the last chosen one that are
    // non-adjacent to everything chosen so far.
    fn extend(
        g: &Graph,
        candidates: &BitSet,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<Vec<u32>>>,
        total: &mut usize,
        max_size: usize,
        budget: usize,
    ) -> Result<(), ComplexError> {
        for v in candidates.iter() {
            current.push(v as u32);
            let d = current.len() - 1;
            if out.len() <= d {
                out.push(Vec::new());
            }
            *total += 1;
            if *total > budget {
                return Err(ComplexError::BudgetExceeded {
                    budget,
                    reached: *total,
                });
            }
            out[d].push(current.clone());
            if current.len() < max_size {
                let mut next = candidates.clone();
                next.subtract(g.adjacency(v));
                next.truncate_below(v + 1);
                extend(g, &next, current, out, total, max_size, budget)?;
            }
            current.pop();
        }
        Ok(())
    }

    if max_size > 0 {
        let mut all = BitSet::new(n);
        for v in 0..n {
            all.insert(v);
        }
        extend(
            g,
            &all,
            &mut current,
            &mut out,
            &mut total,
            max_size,
            opts.max_simplices,
        )?;
    }
    Ok(SimplicialComplex::from_parts(n, out))
}

/// Matching complex `M(g) = Ind(L(g))`; an edgeless graph has the void
/// matching complex.
pub fn matching_complex(g: &Graph, opts: &BuildOptions) -> Result<SimplicialComplex, ComplexError> {
    if g.n_edges() == 0 {
        return Ok(SimplicialComplex::void());
    }
    independence_complex(&g.line_graph(), opts)
}

// --- JSON form -------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    n_vertices: usize,
    void: bool,
    simplices: BTreeMap<i32, SimplexList>,
}

impl SimplicialComplex {
    pub fn to_json(&self) -> String {
        let doc = ComplexJson {
            n_vertices: self.n_vertices,
            void: self.is_void,
            simplices: self
                .simplices
                .iter()
                .enumerate()
                .filter(|(_, l)| !l.is_empty())
                .map(|(d, l)| (d as i32, l.clone()))
                .collect(),
        };
        serde_json::to_string(&doc).expect("complex serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn ind(g: &Graph) -> SimplicialComplex {
        independence_complex(g, &BuildOptions::default()).unwrap()
    }

    #[test]
    fn triangle_has_no_independent_pairs() {
        let c = ind(&Graph::complete(3));
        assert_eq!(c.f_count(-1), 1);
        assert_eq!(c.f_count(0), 3);
        assert_eq!(c.f_count(1), 0);
        assert_eq!(c.dimension(), Some(0));
    }

    #[test]
    fn edgeless_graph_gives_full_simplex() {
        let g = Graph::new(
            (1..=4).map(crate::label::VertexLabel::int).collect(),
            &[],
        )
        .unwrap();
        let c = ind(&g);
        assert_eq!(c.dimension(), Some(3));
        assert_eq!(c.f_count(3), 1);
        assert!(c.is_downward_closed());
    }

    #[test]
    fn empty_graph_gives_empty_complex() {
        let c = ind(&Graph::empty());
        assert!(c.is_empty_complex());
        assert!(!c.is_void());
        assert_eq!(c.f_count(-1), 1);
    }

    #[test]
    fn matching_complex_of_edgeless_graph_is_void() {
        let g = Graph::path(5)
            .unwrap()
            .categorical_product(&Graph::path(1).unwrap())
            .unwrap();
        let m = matching_complex(&g, &BuildOptions::default()).unwrap();
        assert!(m.is_void());
        assert_eq!(m.f_count(-1), 0);
    }

    #[test]
    fn matching_complex_of_single_edge_is_a_point() {
        let m = matching_complex(&Graph::path(2).unwrap(), &BuildOptions::default()).unwrap();
        assert_eq!(m.dimension(), Some(0));
        assert_eq!(m.f_count(0), 1);
    }

    #[test]
    fn max_dim_truncates() {
        let g = Graph::new(
            (1..=5).map(crate::label::VertexLabel::int).collect(),
            &[],
        )
        .unwrap();
        let c = independence_complex(
            &g,
            &BuildOptions {
                max_dim: Some(1),
                max_simplices: DEFAULT_SIMPLEX_BUDGET,
            },
        )
        .unwrap();
        assert_eq!(c.dimension(), Some(1));
        assert_eq!(c.f_count(1), 10);
        assert_eq!(c.f_count(2), 0);
    }

    #[test]
    fn budget_abort_reports_count() {
        let g = Graph::new(
            (1..=20).map(crate::label::VertexLabel::int).collect(),
            &[],
        )
        .unwrap();
        let err = independence_complex(
            &g,
            &BuildOptions {
                max_dim: None,
                max_simplices: 100,
            },
        )
        .unwrap_err();
        assert_eq!(
            err,
            ComplexError::BudgetExceeded {
                budget: 100,
                reached: 101
            }
        );
    }

    #[test]
    fn join_of_two_points_pairs() {
        // Two 2-point complexes (independence complexes of K2) join to a 4-cycle.
        let s0 = ind(&Graph::complete(2));
        let j = s0.join(&s0, DEFAULT_SIMPLEX_BUDGET).unwrap();
        assert_eq!(j.f_count(0), 4);
        assert_eq!(j.f_count(1), 4);
        assert_eq!(j.f_count(2), 0);
        assert!(j.is_downward_closed());
    }

    #[test]
    fn join_with_void_is_void() {
        let x = ind(&Graph::path(3).unwrap());
        assert!(x.join(&SimplicialComplex::void(), DEFAULT_SIMPLEX_BUDGET).unwrap().is_void());
        assert!(SimplicialComplex::void().join(&x, DEFAULT_SIMPLEX_BUDGET).unwrap().is_void());
    }

    #[test]
    fn join_with_empty_complex_is_identity() {
        let x = ind(&Graph::path(3).unwrap());
        let j = SimplicialComplex::empty().join(&x, DEFAULT_SIMPLEX_BUDGET).unwrap();
        assert_eq!(j, x);
    }

    #[test]
    fn union_complex_is_join_of_parts() {
        let g1 = Graph::path(3).unwrap();
        let g2 = Graph::cycle(4)
            .unwrap()
            .map_labels(|l| match l {
                crate::label::VertexLabel::Int(i) => crate::label::VertexLabel::int(i + 10),
                _ => unreachable!(),
            })
            .unwrap();
        let u = g1.disjoint_union(&g2).unwrap();
        let c_union = ind(&u);
        let c_join = ind(&g1).join(&ind(&g2), DEFAULT_SIMPLEX_BUDGET).unwrap();
        assert_eq!(c_union, c_join);
    }
}
