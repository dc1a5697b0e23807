#![allow(clippy::needless_range_loop)]

//! Exact graph isomorphism for small graphs by iterated color refinement
//! with individualization and backtracking.
//!
//! Intended for graphs up to roughly sixty vertices; everything this crate
//! compares is well under that.

use std::collections::BTreeMap;

use crate::graph::Graph;

/// Returns a vertex mapping `g -> h` if the graphs are isomorphic.
pub fn isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n_vertices() != h.n_vertices() || g.n_edges() != h.n_edges() {
        return None;
    }
    let n = g.n_vertices();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut deg_g: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut deg_h: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    deg_g.sort_unstable();
    deg_h.sort_unstable();
    if deg_g != deg_h {
        return None;
    }

    let cg = refine(g, &vec![0; n]);
    let ch = refine(h, &vec![0; n]);
    if color_histogram(&cg) != color_histogram(&ch) {
        return None;
    }

    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(g, h, &cg, &ch, &mut mapping, &mut used).then_some(mapping)
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    isomorphism(g, h).is_some()
}

/// One-dimensional Weisfeiler-Leman refinement: colors stabilize under the
/// multiset of neighbor colors.
fn refine(g: &Graph, init: &[usize]) -> Vec<usize> {
    let n = g.n_vertices();
    let mut colors = init.to_vec();
    loop {
        let mut sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nc: Vec<usize> = g.adjacency(v).iter().map(|w| colors[w]).collect();
                nc.sort_unstable();
                (colors[v], nc)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        let lookup: BTreeMap<_, usize> = sorted
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let next: Vec<usize> = sigs.drain(..).map(|s| lookup[&s]).collect();
        if next == colors {
            return colors;
        }
        colors = next;
    }
}

fn color_histogram(colors: &[usize]) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for &c in colors {
        *hist.entry(c).or_insert(0) += 1;
    }
    hist
}

fn search(
    g: &Graph,
    h: &Graph,
    cg: &[usize],
    ch: &[usize],
    mapping: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let n = g.n_vertices();
    // Next unmapped vertex of g, preferring the rarest color class.
    let v = match (0..n)
        .filter(|&v| mapping[v] == usize::MAX)
        .min_by_key(|&v| (cg.iter().filter(|&&c| c == cg[v]).count(), v))
    {
        Some(v) => v,
        None => return true,
    };
    for w in 0..n {
        if used[w] || ch[w] != cg[v] {
            continue;
        }
        if !compatible(g, h, mapping, v, w) {
            continue;
        }
        mapping[v] = w;
        used[w] = true;
        // Individualize v -> w and re-refine; prune on histogram mismatch.
        let mut ig = cg.to_vec();
        let mut ih = ch.to_vec();
        let fresh = n + 1;
        ig[v] = fresh;
        ih[w] = fresh;
        let rg = refine(g, &ig);
        let rh = refine(h, &ih);
        if color_histogram(&rg) == color_histogram(&rh)
            && search(g, h, &rg, &rh, mapping, used)
        {
            return true;
        }
        mapping[v] = usize::MAX;
        used[w] = false;
    }
    false
}

fn compatible(g: &Graph, h: &Graph, mapping: &[usize], v: usize, w: usize) -> bool {
    for u in 0..g.n_vertices() {
        let mu = mapping[u];
        if mu == usize::MAX {
            continue;
        }
        if g.has_edge(u, v) != h.has_edge(mu, w) {
            return false;
        }
    }
    true
}
