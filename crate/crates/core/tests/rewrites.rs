//! Soundness of the graph rewrites: every rule application must preserve or
//! decompose the homology profile exactly as the rule promises.

use matchtop_core::families::{build, FamilyId};
use matchtop_core::graph::Graph;
use matchtop_core::homology::HomologyProfile;
use matchtop_core::label::VertexLabel;
use matchtop_core::reduce::{
    apply_fold, auto_reduce, find_edge_invariant_triplets, find_folds, link_deletion_split,
    profile_of_graph, simplicial_split, simplicial_vertices, toggle_edge, EvalOptions, Strategy,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_graph(rng: &mut StdRng, max_n: usize) -> Graph {
    let n = rng.random_range(0..=max_n);
    let labels: Vec<VertexLabel> = (1..=n as u32).map(VertexLabel::int).collect();
    let p = rng.random_range(0.15..0.7);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Graph::new(labels, &edges).unwrap()
}

fn profile(g: &Graph) -> HomologyProfile {
    profile_of_graph(g, &EvalOptions::default()).unwrap()
}

/// Applies every applicable rule once on the given graph and checks the
/// promised homology relation. Returns how many rule applications were
/// checked.
pub fn check_all_rules(g: &Graph) -> usize {
    let mut checked = 0;
    let before = profile(g);

    if let Some(&(v, w)) = find_folds(g).first() {
        let folded = apply_fold(g, &g.label(v).clone(), &g.label(w).clone()).unwrap();
        assert_eq!(profile(&folded), before, "fold changed homology");
        checked += 1;
    }

    if let Some(t) = find_edge_invariant_triplets(g).first() {
        let toggled = toggle_edge(g, &t.u, &t.v, &t.x).unwrap();
        assert_eq!(profile(&toggled), before, "toggle changed homology");
        // And the involution property.
        let back = toggle_edge(&toggled, &t.u, &t.v, &t.x).unwrap();
        assert_eq!(&back, g, "toggle twice is not the identity");
        checked += 1;
    }

    if let Some(&v) = simplicial_vertices(g).first() {
        let (branches, _) = simplicial_split(g, &g.label(v).clone()).unwrap();
        let mut sum = HomologyProfile::contractible();
        for b in branches {
            sum = sum.wedge_sum(&profile(&b).suspended(1));
        }
        assert_eq!(sum, before, "simplicial split profile sum is off");
        checked += 1;
    }

    // Link/deletion split: search for any (v, witness) pair that satisfies
    // the cone condition.
    'outer: for v in 0..g.n_vertices() {
        for u in 0..g.n_vertices() {
            if u == v {
                continue;
            }
            let lv = g.label(v).clone();
            let lu = g.label(u).clone();
            if let Ok((del, link, _)) = link_deletion_split(g, &lv, &lu) {
                let combined = profile(&del).wedge_sum(&profile(&link).suspended(1));
                assert_eq!(combined, before, "link/deletion split is off at {lv}");
                checked += 1;
                break 'outer;
            }
        }
    }

    checked
}

#[test]
fn rules_preserve_homology_on_random_graphs() {
    let mut rng = StdRng::seed_from_u64(0xc0ffee);
    let mut applications = 0;
    for _ in 0..120 {
        let g = random_graph(&mut rng, 9);
        applications += check_all_rules(&g);
    }
    assert!(applications > 100, "rule coverage too thin: {applications}");
}

#[test]
fn rules_preserve_homology_on_small_family_graphs() {
    for spec in [
        "Gamma:5:1",
        "Lambda:5:0",
        "A:5:0",
        "B:5:0",
        "C:5:1",
        "D:5:0",
        "E:5:0",
        "F:5:0",
        "GammaTilde:5:1",
        "ATilde:5:0",
        "Gamma:4:1",
        "Lambda:4:1",
        "B:4:0",
        "D:4:0",
        "Gamma:3:2",
        "A:3:1",
        "Lambda:3:1",
        "LambdaTilde:3:1",
    ] {
        let id: FamilyId = spec.parse().unwrap();
        let g = build(id).unwrap();
        assert!(check_all_rules(&g) > 0, "{spec}: no rule applied");
    }
}

#[test]
fn fold_fixed_point_properties() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..60 {
        let g = random_graph(&mut rng, 9);
        let trace = auto_reduce(&g, &Strategy::FoldOnly).unwrap();
        assert!(trace.steps.len() <= g.n_vertices());
        let terminal = trace.terminal_graph();
        assert!(
            find_folds(&terminal).is_empty(),
            "terminal graph still folds"
        );
        let (lhs, rhs) = trace.check_homology(&EvalOptions::default()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn fold_pairs_reported_for_known_family() {
    // The five-row core graphs start with their published fold pair.
    let g = build("Gamma:5:2".parse().unwrap()).unwrap();
    let folds = find_folds(&g);
    let has = folds.iter().any(|&(v, w)| {
        g.label(v) == &VertexLabel::sym("g", &[1, 1]) && g.label(w) == &VertexLabel::sym("g", &[2, 2])
    });
    assert!(has, "expected the (g11, g22) fold");
}
