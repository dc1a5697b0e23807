//! Property tests for the structural invariants: line-graph counts, product
//! laws, join identities, downward closure, Euler characteristic, cone and
//! suspension behavior.

use matchtop_core::complex::{independence_complex, BuildOptions, DEFAULT_SIMPLEX_BUDGET};
use matchtop_core::graph::Graph;
use matchtop_core::homology::{reduced_homology, DEFAULT_MATRIX_BUDGET};
use matchtop_core::iso::is_isomorphic;
use matchtop_core::label::VertexLabel;
use proptest::prelude::*;

/// Arbitrary labeled simple graph on up to `max_n` vertices.
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |mask| {
            let labels: Vec<VertexLabel> = (1..=n as u32).map(VertexLabel::int).collect();
            let mut edges = Vec::new();
            let mut idx = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if mask[idx] {
                        edges.push((labels[i].clone(), labels[j].clone()));
                    }
                    idx += 1;
                }
            }
            Graph::new(labels, &edges).unwrap()
        })
    })
}

fn ind(g: &Graph) -> matchtop_core::SimplicialComplex {
    independence_complex(g, &BuildOptions::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn line_graph_vertex_and_edge_counts(g in arb_graph(8)) {
        let l = g.line_graph();
        prop_assert_eq!(l.n_vertices(), g.n_edges());
        let handshakes: usize = (0..g.n_vertices())
            .map(|v| {
                let d = g.degree(v);
                d * d.saturating_sub(1) / 2
            })
            .sum();
        prop_assert_eq!(l.n_edges(), handshakes);
    }

    #[test]
    fn categorical_product_commutes_up_to_isomorphism(
        g in arb_graph(5),
        h in arb_graph(5),
    ) {
        prop_assume!(g.n_vertices() > 0 && h.n_vertices() > 0);
        let gh = g.categorical_product(&h).unwrap();
        let hg = h.categorical_product(&g).unwrap();
        prop_assert!(is_isomorphic(&gh, &hg));
    }

    #[test]
    fn deleting_nothing_is_identity(g in arb_graph(8)) {
        prop_assert_eq!(g.delete_vertices(&[]).unwrap(), g);
    }

    #[test]
    fn products_with_the_one_vertex_path(g in arb_graph(6)) {
        prop_assume!(g.n_vertices() > 0);
        let p1 = Graph::path(1).unwrap();
        let cat = g.categorical_product(&p1).unwrap();
        prop_assert_eq!(cat.n_edges(), 0);
        prop_assert_eq!(cat.n_vertices(), g.n_vertices());
        let cart = g.cartesian_product(&p1).unwrap();
        prop_assert!(is_isomorphic(&cart, &g));
    }

    #[test]
    fn complexes_are_downward_closed(g in arb_graph(8)) {
        prop_assert!(ind(&g).is_downward_closed());
    }

    #[test]
    fn union_complex_is_join_of_factors(g in arb_graph(4), h in arb_graph(4)) {
        let shifted = h
            .map_labels(|l| match l {
                VertexLabel::Int(i) => VertexLabel::int(i + 100),
                other => other.clone(),
            })
            .unwrap();
        let u = g.disjoint_union(&shifted).unwrap();
        let joined = ind(&g).join(&ind(&shifted), DEFAULT_SIMPLEX_BUDGET).unwrap();
        prop_assert_eq!(ind(&u), joined);
    }

    #[test]
    fn euler_characteristic_consistency(g in arb_graph(7)) {
        let c = ind(&g);
        let p = reduced_homology(&c, None, DEFAULT_MATRIX_BUDGET).unwrap();
        let dim = c.dimension().unwrap_or(-1);
        let f_alt: i64 = (0..=dim)
            .map(|d| {
                let f = c.f_count(d) as i64;
                if d % 2 == 0 { f } else { -f }
            })
            .sum();
        // Augmented identity: sum over d >= -1 of (-1)^d f_d equals the same
        // alternating sum of reduced Betti numbers.
        let mut b_alt: i64 = 0;
        for (&d, &b) in &p.betti {
            let s = if d.rem_euclid(2) == 0 { 1 } else { -1 };
            b_alt += s * b as i64;
        }
        prop_assert_eq!(f_alt, 1 + b_alt);
    }

    #[test]
    fn cone_has_trivial_homology(g in arb_graph(6)) {
        prop_assume!(g.n_vertices() > 0);
        let point = independence_complex(&Graph::path(1).unwrap(), &BuildOptions::default()).unwrap();
        let cone = ind(&g).join(&point, DEFAULT_SIMPLEX_BUDGET).unwrap();
        let p = reduced_homology(&cone, None, DEFAULT_MATRIX_BUDGET).unwrap();
        prop_assert!(p.is_trivial(), "cone profile {:?}", p);
    }

    #[test]
    fn suspension_shifts_homology(g in arb_graph(6)) {
        let s0 = independence_complex(&Graph::complete(2), &BuildOptions::default()).unwrap();
        let x = ind(&g);
        let susp = x.join(&s0, DEFAULT_SIMPLEX_BUDGET).unwrap();
        let p = reduced_homology(&x, None, DEFAULT_MATRIX_BUDGET).unwrap();
        let ps = reduced_homology(&susp, None, DEFAULT_MATRIX_BUDGET).unwrap();
        prop_assert_eq!(ps, p.suspended(1));
    }

    #[test]
    fn boundary_composition_vanishes(g in arb_graph(7)) {
        use matchtop_core::boundary_matrix;
        let c = ind(&g);
        let dim = c.dimension().unwrap_or(-1);
        for d in 1..=dim {
            let low = boundary_matrix(&c, d - 1, DEFAULT_MATRIX_BUDGET).unwrap().matrix;
            let high = boundary_matrix(&c, d, DEFAULT_MATRIX_BUDGET).unwrap().matrix;
            // Sparse product low * high must be identically zero.
            let mut low_rows: std::collections::HashMap<u32, Vec<(u32, i64)>> =
                std::collections::HashMap::new();
            for &(r, cc, v) in &low.entries {
                low_rows.entry(cc).or_default().push((r, v));
            }
            let mut acc: std::collections::HashMap<(u32, u32), i64> =
                std::collections::HashMap::new();
            for &(mid, col, v) in &high.entries {
                if let Some(rows) = low_rows.get(&mid) {
                    for &(r, w) in rows {
                        *acc.entry((r, col)).or_insert(0) += w * v;
                    }
                }
            }
            prop_assert!(acc.values().all(|&v| v == 0), "dd != 0 at dim {}", d);
        }
    }
}

/// Arbitrary wedge descriptor with small dimensions and counts.
fn arb_descriptor() -> impl Strategy<Value = matchtop_core::WedgeDescriptor> {
    use matchtop_core::WedgeDescriptor;
    proptest::collection::btree_map(0i32..6, 1u64..50, 0..4).prop_map(|m| {
        let parts: Vec<WedgeDescriptor> = m
            .into_iter()
            .map(|(d, c)| WedgeDescriptor::spheres(d, c))
            .collect();
        WedgeDescriptor::wedge(&parts).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn descriptor_join_is_commutative_and_associative(
        a in arb_descriptor(),
        b in arb_descriptor(),
        c in arb_descriptor(),
    ) {
        prop_assert_eq!(a.join(&b).unwrap(), b.join(&a).unwrap());
        prop_assert_eq!(
            a.join(&b).unwrap().join(&c).unwrap(),
            a.join(&b.join(&c).unwrap()).unwrap()
        );
        // Contractible absorbs, the (-1)-sphere is the unit.
        use matchtop_core::WedgeDescriptor;
        prop_assert_eq!(
            a.join(&WedgeDescriptor::Contractible).unwrap(),
            WedgeDescriptor::Contractible
        );
        prop_assert_eq!(a.join(&WedgeDescriptor::sphere(-1)).unwrap(), a);
    }
}

#[test]
fn product_component_parity() {
    // Two components for every product of nontrivial paths; for the five-row
    // case the even-index components are isomorphic and the odd ones are not.
    for n in 2..=7usize {
        for m in [3usize, 4, 5] {
            let prod = Graph::path(n)
                .unwrap()
                .categorical_product(&Graph::path(m).unwrap())
                .unwrap();
            let comps = prod.line_graph().connected_components();
            assert_eq!(comps.len(), 2, "L(P_{n} x P_{m})");
            let same = is_isomorphic(&comps[0], &comps[1]);
            match (m, n % 2 == 0) {
                (5, true) | (3, true) => assert!(same, "P_{n} x P_{m}"),
                (5, false) | (3, false) => assert!(!same, "P_{n} x P_{m}"),
                (4, _) => assert!(same, "P_{n} x P_{m}"),
                _ => unreachable!(),
            }
        }
    }
}
