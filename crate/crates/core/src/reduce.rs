//! Homotopy-preserving graph rewrites on independence complexes, with audit
//! traces.
//!
//! Four rewrite rules are supported, each with a decidable precondition that
//! is recorded as a witnessed fact in the trace:
//!
//! * fold: delete w when `N(v) ⊆ N(w)`; the complex keeps its homotopy type;
//! * edge toggle: flip the edge uv when a witness x has `x ∉ N(u) ∪ N(v)`
//!   and `N(x) ⊆ N(u) ∪ N(v)`;
//! * simplicial split: at a vertex whose neighbors are pairwise adjacent,
//!   the complex splits into a wedge of suspended links;
//! * link/deletion split: at any vertex v with a cone witness u satisfying
//!   `N(u) ⊆ N[v]`, the complex splits into deletion plus suspended link.
//!
//! Soundness of each rule is a tested property, not an assumption: the
//! rewrite property suite compares homology before and after on random
//! graphs and on every family graph that fits the budget.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{independence_complex, BuildOptions, ComplexError};
use crate::graph::{Graph, GraphError};
use crate::homology::{reduced_homology, HomologyError, HomologyProfile};
use crate::label::VertexLabel;

#[derive(Debug, Error)]
pub enum ReduceError {
    #[error("fold requires N({v}) ⊆ N({w}) with v ≠ w")]
    FoldPrecondition { v: String, w: String },
    #[error("[{u},{v};{x}] is not an edge-invariant triplet")]
    TripletPrecondition { u: String, v: String, x: String },
    #[error("{v} is not a simplicial vertex with a neighbor")]
    NotSimplicial { v: String },
    #[error("cone witness {u} fails N({u}) ⊆ N[{v}]")]
    ConeWitness { v: String, u: String },
    #[error("script step {index}: {source}")]
    ScriptStep {
        index: usize,
        #[source]
        source: Box<ReduceError>,
    },
    #[error("branching step must be the last step of a script")]
    BranchNotLast,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// All ordered pairs `(v, w)` with `N(v) ⊆ N(w)`, `v ≠ w`, sorted by the
/// labels of `(w, v)`; folding deletes `w`.
pub fn find_folds(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n_vertices();
    let mut out = Vec::new();
    for v in 0..n {
        for w in 0..n {
            if v != w && g.adjacency(v).is_subset(g.adjacency(w)) {
                out.push((v, w));
            }
        }
    }
    out.sort_by(|a, b| {
        (g.label(a.1), g.label(a.0)).cmp(&(g.label(b.1), g.label(b.0)))
    });
    out
}

pub fn apply_fold(g: &Graph, v: &VertexLabel, w: &VertexLabel) -> Result<Graph, ReduceError> {
    let iv = g
        .index_of(v)
        .ok_or_else(|| GraphError::UnknownVertex(v.to_string()))?;
    let iw = g
        .index_of(w)
        .ok_or_else(|| GraphError::UnknownVertex(w.to_string()))?;
    if iv == iw || !g.adjacency(iv).is_subset(g.adjacency(iw)) {
        return Err(ReduceError::FoldPrecondition {
            v: v.to_string(),
            w: w.to_string(),
        });
    }
    Ok(g.delete_vertices(std::slice::from_ref(w))?)
}

/// An edge-invariant triplet `[u, v; x]`: x is distinct from u and v, not a
/// neighbor of either, and all of x's neighbors are neighbors of u or v.
/// Toggling the edge uv then preserves the homotopy type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triplet {
    pub u: VertexLabel,
    pub v: VertexLabel,
    pub x: VertexLabel,
    /// Whether the edge uv is currently present (so toggling removes it).
    pub edge_present: bool,
}

pub fn is_edge_invariant_triplet(g: &Graph, u: usize, v: usize, x: usize) -> bool {
    if u == v || x == u || x == v {
        return false;
    }
    if g.adjacency(u).contains(x) || g.adjacency(v).contains(x) {
        return false;
    }
    let mut rest = g.adjacency(x).clone();
    rest.subtract(g.adjacency(u));
    rest.subtract(g.adjacency(v));
    rest.is_empty()
}

/// Every edge-invariant triplet, with u < v by label, sorted by (u, v, x).
pub fn find_edge_invariant_triplets(g: &Graph) -> Vec<Triplet> {
    let n = g.n_vertices();
    let mut found: Vec<(usize, usize, usize)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            for x in 0..n {
                if is_edge_invariant_triplet(g, u, v, x) {
                    found.push((u, v, x));
                }
            }
        }
    }
    let mut out: Vec<Triplet> = found
        .into_iter()
        .map(|(u, v, x)| {
            let (lu, lv) = if g.label(u) <= g.label(v) {
                (g.label(u).clone(), g.label(v).clone())
            } else {
                (g.label(v).clone(), g.label(u).clone())
            };
            Triplet {
                u: lu,
                v: lv,
                x: g.label(x).clone(),
                edge_present: g.has_edge(u, v),
            }
        })
        .collect();
    out.sort_by(|a, b| (&a.u, &a.v, &a.x).cmp(&(&b.u, &b.v, &b.x)));
    out
}

/// Toggles the edge uv, provided x witnesses an edge-invariant triplet.
pub fn toggle_edge(
    g: &Graph,
    u: &VertexLabel,
    v: &VertexLabel,
    x: &VertexLabel,
) -> Result<Graph, ReduceError> {
    let iu = g
        .index_of(u)
        .ok_or_else(|| GraphError::UnknownVertex(u.to_string()))?;
    let iv = g
        .index_of(v)
        .ok_or_else(|| GraphError::UnknownVertex(v.to_string()))?;
    let ix = g
        .index_of(x)
        .ok_or_else(|| GraphError::UnknownVertex(x.to_string()))?;
    if !is_edge_invariant_triplet(g, iu, iv, ix) {
        return Err(ReduceError::TripletPrecondition {
            u: u.to_string(),
            v: v.to_string(),
            x: x.to_string(),
        });
    }
    let pair = [(u.clone(), v.clone())];
    Ok(if g.has_edge(iu, iv) {
        g.remove_edges(&pair)?
    } else {
        g.add_edges(&pair)?
    })
}

/// All non-isolated vertices whose neighbors are pairwise adjacent.
pub fn simplicial_vertices(g: &Graph) -> Vec<usize> {
    (0..g.n_vertices())
        .filter(|&v| {
            let nb: Vec<usize> = g.adjacency(v).iter().collect();
            !nb.is_empty()
                && nb
                    .iter()
                    .enumerate()
                    .all(|(i, &a)| nb[i + 1..].iter().all(|&b| g.has_edge(a, b)))
        })
        .collect()
}

/// Terminal shape of a reduction: a tree over leaf graphs.
#[derive(Clone, Debug, Serialize)]
pub enum Expr {
    Leaf(GraphRef),
    Wedge(Vec<Expr>),
    Suspension(i32, Box<Expr>),
    Join(Vec<Expr>),
}

/// A leaf graph carried by value in the trace.
#[derive(Clone, Debug, Serialize)]
pub struct GraphRef {
    pub vertices: Vec<VertexLabel>,
    #[serde(skip)]
    pub graph: Graph,
}

impl GraphRef {
    fn new(g: Graph) -> Self {
        GraphRef {
            vertices: g.labels().to_vec(),
            graph: g,
        }
    }
}

fn leaf(g: Graph) -> Expr {
    Expr::Leaf(GraphRef::new(g))
}

impl Expr {
    /// Homology profile implied by the tree: leaves are computed directly
    /// (per connected component, joined), wedges add, suspensions shift,
    /// joins convolve.
    pub fn profile(&self, opts: &EvalOptions) -> Result<HomologyProfile, ReduceError> {
        match self {
            Expr::Leaf(gr) => profile_of_graph(&gr.graph, opts),
            Expr::Wedge(parts) => {
                let mut acc = HomologyProfile::contractible();
                for p in parts {
                    acc = acc.wedge_sum(&p.profile(opts)?);
                }
                Ok(acc)
            }
            Expr::Suspension(k, inner) => Ok(inner.profile(opts)?.suspended(*k)),
            Expr::Join(parts) => {
                let mut acc: Option<HomologyProfile> = None;
                for p in parts {
                    let q = p.profile(opts)?;
                    acc = Some(match acc {
                        None => q,
                        Some(a) => a.join(&q)?,
                    });
                }
                Ok(acc.unwrap_or_else(HomologyProfile::contractible))
            }
        }
    }
}

/// Options for turning graphs into homology profiles.
#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    pub build: BuildOptions,
    pub max_matrix_entries: usize,
    /// Fold-reduce graphs to a fixed point before enumerating; sound because
    /// folds preserve the homotopy type, and much cheaper on family graphs.
    pub fold_first: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            build: BuildOptions::default(),
            max_matrix_entries: crate::homology::DEFAULT_MATRIX_BUDGET,
            fold_first: false,
        }
    }
}

/// Work done while turning a graph into a profile, for reporting.
#[derive(Clone, Copy, Debug, Default)]
pub struct EvalStats {
    /// Simplices materialized across all components.
    pub simplices: usize,
}

/// Homology of the independence complex of a graph, computed per connected
/// component and composed by the join rule. A component with an isolated
/// vertex cones the whole complex, so such graphs short-circuit to the
/// trivial profile.
pub fn profile_of_graph(g: &Graph, opts: &EvalOptions) -> Result<HomologyProfile, ReduceError> {
    Ok(profile_of_graph_with_stats(g, opts)?.0)
}

pub fn profile_of_graph_with_stats(
    g: &Graph,
    opts: &EvalOptions,
) -> Result<(HomologyProfile, EvalStats), ReduceError> {
    let mut stats = EvalStats::default();
    let g = if opts.fold_first {
        auto_reduce(g, &Strategy::FoldOnly)?.terminal_graph()
    } else {
        g.clone()
    };
    if (0..g.n_vertices()).any(|v| g.degree(v) == 0) {
        return Ok((HomologyProfile::contractible(), stats));
    }
    let mut acc: Option<HomologyProfile> = None;
    for comp in g.connected_components() {
        let comp = if opts.fold_first {
            auto_reduce(&comp, &Strategy::FoldOnly)?.terminal_graph()
        } else {
            comp
        };
        if (0..comp.n_vertices()).any(|v| comp.degree(v) == 0) {
            return Ok((HomologyProfile::contractible(), stats));
        }
        let c = independence_complex(&comp, &opts.build)?;
        stats.simplices += c.total_simplices();
        let p = reduced_homology(&c, None, opts.max_matrix_entries)?;
        acc = Some(match acc {
            None => p,
            Some(a) => a.join(&p)?,
        });
    }
    // No components at all: the empty graph, whose complex is {∅}.
    let profile = acc.unwrap_or_else(|| {
        let mut p = HomologyProfile::contractible();
        p.betti.insert(-1, 1);
        p
    });
    Ok((profile, stats))
}

/// One applied rewrite, with the witnessed facts that licensed it.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum ReductionStep {
    Fold {
        v: VertexLabel,
        w: VertexLabel,
        /// N(v) and N(w) at the time of application.
        n_v: Vec<VertexLabel>,
        n_w: Vec<VertexLabel>,
    },
    Toggle {
        u: VertexLabel,
        v: VertexLabel,
        x: VertexLabel,
        added: bool,
    },
    SimplicialSplit {
        v: VertexLabel,
        neighbors: Vec<VertexLabel>,
    },
    LinkDeletionSplit {
        v: VertexLabel,
        witness: VertexLabel,
    },
    ComponentJoin {
        parts: usize,
    },
}

/// An audit log: the initial graph, the steps taken, and the terminal
/// expression the steps prove equivalent to the initial complex.
#[derive(Debug, Serialize)]
pub struct ReductionTrace {
    #[serde(skip)]
    pub initial: Graph,
    pub steps: Vec<ReductionStep>,
    pub terminal: Expr,
}

impl ReductionTrace {
    /// The terminal graph of a linear (non-branching) trace.
    pub fn terminal_graph(&self) -> Graph {
        match &self.terminal {
            Expr::Leaf(gr) => gr.graph.clone(),
            Expr::Join(parts) => {
                // Reassemble the components of a trailing component split.
                let mut acc = Graph::empty();
                for p in parts {
                    if let Expr::Leaf(gr) = p {
                        acc = acc.disjoint_union(&gr.graph).expect("components are disjoint");
                    }
                }
                acc
            }
            _ => panic!("terminal_graph on a branching trace"),
        }
    }

    /// Checks that the homology of the initial complex equals the homology
    /// implied by the terminal expression.
    pub fn check_homology(&self, opts: &EvalOptions) -> Result<(HomologyProfile, HomologyProfile), ReduceError> {
        let lhs = profile_of_graph(&self.initial, opts)?;
        let rhs = self.terminal.profile(opts)?;
        Ok((lhs, rhs))
    }
}

/// Splits a graph at a simplicial vertex `v`: one branch per neighbor `w`,
/// carrying `g \ N[w]`, wrapped as a wedge of suspensions.
pub fn simplicial_split(g: &Graph, v: &VertexLabel) -> Result<(Vec<Graph>, Expr), ReduceError> {
    let iv = g
        .index_of(v)
        .ok_or_else(|| GraphError::UnknownVertex(v.to_string()))?;
    if !simplicial_vertices(g).contains(&iv) {
        return Err(ReduceError::NotSimplicial { v: v.to_string() });
    }
    let mut branches = Vec::new();
    let mut parts = Vec::new();
    for w in g.adjacency(iv).iter() {
        let closed: Vec<VertexLabel> = g
            .neighborhood(g.label(w), true)
            .unwrap()
            .into_iter()
            .map(|i| g.label(i).clone())
            .collect();
        let branch = g.delete_vertices(&closed)?;
        parts.push(Expr::Suspension(1, Box::new(leaf(branch.clone()))));
        branches.push(branch);
    }
    Ok((branches, Expr::Wedge(parts)))
}

/// Splits at `v` with cone witness `u`: deletion `g \ v` plus suspended link
/// `g \ N[v]`. The witness condition `N(u) ⊆ N[v]`, `u ≠ v` makes the link
/// include null-homotopic in the deletion, either by coning from inside
/// (u isolated in the link) or from outside (u a neighbor of v adjacent to
/// nothing in the link).
pub fn link_deletion_split(
    g: &Graph,
    v: &VertexLabel,
    witness: &VertexLabel,
) -> Result<(Graph, Graph, Expr), ReduceError> {
    let iv = g
        .index_of(v)
        .ok_or_else(|| GraphError::UnknownVertex(v.to_string()))?;
    let iu = g
        .index_of(witness)
        .ok_or_else(|| GraphError::UnknownVertex(witness.to_string()))?;
    let mut closed_v = g.adjacency(iv).clone();
    closed_v.insert(iv);
    if iu == iv || !g.adjacency(iu).is_subset(&closed_v) {
        return Err(ReduceError::ConeWitness {
            v: v.to_string(),
            u: witness.to_string(),
        });
    }
    let deletion = g.delete_vertices(std::slice::from_ref(v))?;
    let link_vertices: Vec<VertexLabel> = closed_v.iter().map(|i| g.label(i).clone()).collect();
    let link = g.delete_vertices(&link_vertices)?;
    let expr = Expr::Wedge(vec![
        leaf(deletion.clone()),
        Expr::Suspension(1, Box::new(leaf(link.clone()))),
    ]);
    Ok((deletion, link, expr))
}

/// A scripted rewrite step; vertices are addressed by label.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum ScriptStep {
    Fold { v: VertexLabel, w: VertexLabel },
    Toggle {
        u: VertexLabel,
        v: VertexLabel,
        x: VertexLabel,
    },
    Split { v: VertexLabel },
    LinkDel { v: VertexLabel, witness: VertexLabel },
}

pub fn parse_script(json: &str) -> Result<Vec<ScriptStep>, serde_json::Error> {
    serde_json::from_str(json)
}

#[derive(Clone, Debug)]
pub enum Strategy {
    /// Apply folds to a fixed point, first pair in (w, v) label order each
    /// round.
    FoldOnly,
    /// Replay the given steps in order.
    Script(Vec<ScriptStep>),
}

/// Reduces a graph by the chosen strategy, producing a replayable trace.
/// A disconnected terminal graph is recorded as a join over its components.
pub fn auto_reduce(g: &Graph, strategy: &Strategy) -> Result<ReductionTrace, ReduceError> {
    let initial = g.clone();
    let mut steps = Vec::new();
    let mut current = g.clone();
    let mut branched: Option<Expr> = None;

    match strategy {
        Strategy::FoldOnly => loop {
            let folds = find_folds(&current);
            let Some(&(v, w)) = folds.first() else { break };
            let lv = current.label(v).clone();
            let lw = current.label(w).clone();
            let nv = current
                .adjacency(v)
                .iter()
                .map(|i| current.label(i).clone())
                .collect();
            let nw = current
                .adjacency(w)
                .iter()
                .map(|i| current.label(i).clone())
                .collect();
            current = apply_fold(&current, &lv, &lw)?;
            steps.push(ReductionStep::Fold {
                v: lv,
                w: lw,
                n_v: nv,
                n_w: nw,
            });
        },
        Strategy::Script(script) => {
            for (index, step) in script.iter().enumerate() {
                if branched.is_some() {
                    return Err(ReduceError::BranchNotLast);
                }
                let wrap = |source: ReduceError| ReduceError::ScriptStep {
                    index,
                    source: Box::new(source),
                };
                match step {
                    ScriptStep::Fold { v, w } => {
                        let iv = current.index_of(v);
                        let iw = current.index_of(w);
                        let (nv, nw) = match (iv, iw) {
                            (Some(iv), Some(iw)) => (
                                current
                                    .adjacency(iv)
                                    .iter()
                                    .map(|i| current.label(i).clone())
                                    .collect(),
                                current
                                    .adjacency(iw)
                                    .iter()
                                    .map(|i| current.label(i).clone())
                                    .collect(),
                            ),
                            _ => (Vec::new(), Vec::new()),
                        };
                        current = apply_fold(&current, v, w).map_err(wrap)?;
                        steps.push(ReductionStep::Fold {
                            v: v.clone(),
                            w: w.clone(),
                            n_v: nv,
                            n_w: nw,
                        });
                    }
                    ScriptStep::Toggle { u, v, x } => {
                        let before = current.clone();
                        current = toggle_edge(&current, u, v, x).map_err(wrap)?;
                        let added = current.n_edges() > before.n_edges();
                        steps.push(ReductionStep::Toggle {
                            u: u.clone(),
                            v: v.clone(),
                            x: x.clone(),
                            added,
                        });
                    }
                    ScriptStep::Split { v } => {
                        let iv = current
                            .index_of(v)
                            .ok_or_else(|| wrap(GraphError::UnknownVertex(v.to_string()).into()))?;
                        let neighbors = current
                            .adjacency(iv)
                            .iter()
                            .map(|i| current.label(i).clone())
                            .collect();
                        let (_, expr) = simplicial_split(&current, v).map_err(wrap)?;
                        steps.push(ReductionStep::SimplicialSplit {
                            v: v.clone(),
                            neighbors,
                        });
                        branched = Some(expr);
                    }
                    ScriptStep::LinkDel { v, witness } => {
                        let (_, _, expr) =
                            link_deletion_split(&current, v, witness).map_err(wrap)?;
                        steps.push(ReductionStep::LinkDeletionSplit {
                            v: v.clone(),
                            witness: witness.clone(),
                        });
                        branched = Some(expr);
                    }
                }
            }
        }
    }

    let terminal = match branched {
        Some(expr) => expr,
        None => {
            let comps = current.connected_components();
            if comps.len() > 1 {
                steps.push(ReductionStep::ComponentJoin { parts: comps.len() });
                Expr::Join(comps.into_iter().map(leaf).collect())
            } else {
                leaf(current)
            }
        }
    };
    Ok(ReductionTrace {
        initial,
        steps,
        terminal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::VertexLabel;

    fn li(i: u32) -> VertexLabel {
        VertexLabel::int(i)
    }

    #[test]
    fn folds_on_p3_and_k2() {
        let p3 = Graph::path(3).unwrap();
        let folds = find_folds(&p3);
        let pairs: Vec<(u32, u32)> = folds
            .iter()
            .map(|&(v, w)| match (p3.label(v), p3.label(w)) {
                (VertexLabel::Int(a), VertexLabel::Int(b)) => (*a, *b),
                _ => unreachable!(),
            })
            .collect();
        assert!(pairs.contains(&(1, 3)));
        assert!(pairs.contains(&(3, 1)));
        assert!(find_folds(&Graph::complete(2)).is_empty());
    }

    #[test]
    fn fold_deletes_w() {
        let p3 = Graph::path(3).unwrap();
        let folded = apply_fold(&p3, &li(1), &li(3)).unwrap();
        assert_eq!(folded.n_vertices(), 2);
        assert!(folded.index_of(&li(3)).is_none());
        assert!(apply_fold(&p3, &li(1), &li(2)).is_err());
    }

    #[test]
    fn triplets_on_small_graphs() {
        // K2 plus an isolated vertex: the isolated vertex witnesses the edge.
        let g = Graph::new(
            vec![li(1), li(2), li(3)],
            &[(li(1), li(2))],
        )
        .unwrap();
        let ts = find_edge_invariant_triplets(&g);
        assert!(ts
            .iter()
            .any(|t| t.u == li(1) && t.v == li(2) && t.x == li(3) && t.edge_present));
        // A triangle has none.
        assert!(find_edge_invariant_triplets(&Graph::complete(3)).is_empty());
    }

    #[test]
    fn toggle_is_an_involution() {
        let g = Graph::new(vec![li(1), li(2), li(3)], &[(li(1), li(2))]).unwrap();
        let once = toggle_edge(&g, &li(1), &li(2), &li(3)).unwrap();
        assert_eq!(once.n_edges(), 0);
        let twice = toggle_edge(&once, &li(1), &li(2), &li(3)).unwrap();
        assert_eq!(twice, g);
    }

    #[test]
    fn simplicial_vertices_of_paths_and_cycles() {
        let p4 = Graph::path(4).unwrap();
        let s = simplicial_vertices(&p4);
        assert_eq!(s, vec![0, 3]); // the two leaves
        assert!(simplicial_vertices(&Graph::cycle(4).unwrap()).is_empty());
        assert_eq!(simplicial_vertices(&Graph::complete(3)).len(), 3);
    }

    #[test]
    fn split_on_p2_gives_empty_branch() {
        let p2 = Graph::path(2).unwrap();
        let (branches, expr) = simplicial_split(&p2, &li(1)).unwrap();
        assert_eq!(branches.len(), 1);
        assert_eq!(branches[0].n_vertices(), 0);
        // Σ of the empty complex is two points; Ind(P2) indeed has two points.
        let p = expr.profile(&EvalOptions::default()).unwrap();
        assert_eq!(p.betti_at(0), 1);
    }

    #[test]
    fn link_deletion_with_isolated_witness() {
        // Any graph with an isolated vertex u ≠ v admits the split at v.
        let g = Graph::new(
            vec![li(1), li(2), li(3), li(4)],
            &[(li(1), li(2)), (li(2), li(3))],
        )
        .unwrap();
        let (del, link, _) = link_deletion_split(&g, &li(2), &li(4)).unwrap();
        assert_eq!(del.n_vertices(), 3);
        assert_eq!(link.n_vertices(), 1);
        // On a 5-path, vertex 4 reaches outside N[2] and cannot witness.
        let p5 = Graph::path(5).unwrap();
        assert!(link_deletion_split(&p5, &li(2), &li(4)).is_err());
        assert!(link_deletion_split(&p5, &li(2), &li(2)).is_err());
    }

    #[test]
    fn fold_only_reduces_p4_to_fixed_point() {
        let p4 = Graph::path(4).unwrap();
        let trace = auto_reduce(&p4, &Strategy::FoldOnly).unwrap();
        assert!(trace.steps.len() <= 4);
        let terminal = trace.terminal_graph();
        assert!(find_folds(&terminal).is_empty() || terminal.n_vertices() <= 1);
        let (lhs, rhs) = trace.check_homology(&EvalOptions::default()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn empty_script_is_identity() {
        let g = Graph::cycle(5).unwrap();
        let trace = auto_reduce(&g, &Strategy::Script(Vec::new())).unwrap();
        assert!(trace.steps.is_empty());
        assert_eq!(trace.terminal_graph(), g);
    }

    #[test]
    fn script_error_carries_index() {
        let g = Graph::path(3).unwrap();
        let script = vec![ScriptStep::Fold { v: li(1), w: li(2) }];
        let err = auto_reduce(&g, &Strategy::Script(script)).unwrap_err();
        match err {
            ReduceError::ScriptStep { index, .. } => assert_eq!(index, 0),
            other => panic!("expected script step error, got {other}"),
        }
    }

    #[test]
    fn replay_is_deterministic() {
        let g = Graph::path(7).unwrap();
        let a = auto_reduce(&g, &Strategy::FoldOnly).unwrap();
        let b = auto_reduce(&g, &Strategy::FoldOnly).unwrap();
        assert_eq!(
            serde_json::to_string(&a.steps).unwrap(),
            serde_json::to_string(&b.steps).unwrap()
        );
        assert_eq!(a.terminal_graph(), b.terminal_graph());
    }

    #[test]
    fn script_json_roundtrip() {
        let script = vec![
            ScriptStep::Fold {
                v: VertexLabel::sym("g", &[1, 1]),
                w: VertexLabel::sym("g", &[2, 2]),
            },
            ScriptStep::Toggle {
                u: VertexLabel::sym("g", &[4, 1]),
                v: VertexLabel::sym("g", &[1, 2]),
                x: VertexLabel::sym("g", &[2, 1]),
            },
            ScriptStep::LinkDel {
                v: VertexLabel::sym("b", &[4]),
                witness: VertexLabel::sym("b", &[3]),
            },
        ];
        let json = serde_json::to_string(&script).unwrap();
        assert_eq!(parse_script(&json).unwrap(), script);
    }
}
