//! Property tests over randomized rings, graphs, and arrays.

use proptest::prelude::*;
use totgraph::coloring::{verify_coloring, Coloring, Provenance};
use totgraph::graph::{blow_up, BlowUpSpec, Graph, PartKind};
use totgraph::latin::{build_latin_sum, is_latin_sum};
use totgraph::ring::{parse_ring_spec, ring_from_spec};
use totgraph::solver::{chromatic_number, clique_number, naive, Budget};

fn arb_block() -> impl Strategy<Value = String> {
    prop_oneof![
        (2u64..=13)
            .prop_filter("prime", |n| [2, 3, 5, 7, 11, 13].contains(n))
            .prop_map(|p| format!("Z{p}")),
        Just("Z4".to_string()),
        Just("Z8".to_string()),
        Just("Z9".to_string()),
        Just("GF(4)".to_string()),
        Just("GF(9)".to_string()),
        Just("Z2[x]/(x^2)".to_string()),
        Just("Z3[x]/(x^2)".to_string()),
    ]
}

fn arb_ring_spec() -> impl Strategy<Value = String> {
    prop::collection::vec(arb_block(), 1..=3).prop_map(|blocks| blocks.join(" x "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // The canonical string of a descriptor reparses to the same descriptor.
    #[test]
    fn canonical_strings_round_trip(spec in arb_ring_spec()) {
        let d = parse_ring_spec(&spec).unwrap();
        let again = parse_ring_spec(&d.canonical_string()).unwrap();
        prop_assert_eq!(d.blocks(), again.blocks());
    }

    // Derived-set sanity on random rings within the cap: units and
    // zero-divisors partition R, the radical sits inside every maximal
    // ideal, and the zero-divisors are exactly the union of those ideals.
    #[test]
    fn derived_sets_are_consistent(spec in arb_ring_spec()) {
        let r = match ring_from_spec(&spec) {
            Ok(r) if r.order() <= 512 => r,
            _ => return Ok(()),
        };
        let z = r.zero_divisors();
        prop_assert_eq!(z.len() + r.regular_elements().len(), r.order());
        for &x in r.jacobson().members() {
            prop_assert!(r.maximal_ideals().iter().all(|m| m.ideal.contains(x)));
        }
        for x in 0..r.order() {
            let in_union = r.maximal_ideals().iter().any(|m| m.ideal.contains(x));
            prop_assert_eq!(in_union, z.binary_search(&x).is_ok());
        }
    }

    // A square Latin-sum array transposes to a Latin-sum array.
    #[test]
    fn square_array_transpose(q in prop::sample::select(vec![3usize, 4, 5, 7, 8, 9, 11, 13])) {
        let f = ring_from_spec(&format!("GF({q})")).unwrap();
        let arr = build_latin_sum(&f, &f).unwrap();
        prop_assert_eq!(is_latin_sum(&arr.transpose()), None);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Blow-up with singleton parts is the base graph.
    #[test]
    fn unit_blow_up_is_identity(edges in prop::collection::vec((0usize..7, 0usize..7), 0..16)) {
        let n = 7;
        let mut base = Graph::new(n);
        for (u, v) in edges {
            if u != v {
                base.add_edge(u, v);
            }
        }
        let g = blow_up(&BlowUpSpec {
            base: base.clone(),
            parts: vec![PartKind::Empty; n],
            part_size: 1,
        }).unwrap();
        let map: Vec<usize> = (0..n).collect();
        prop_assert!(g.equals_under_map(&base, &map));
    }

    // The production solvers agree with the plain reference implementations
    // on small random graphs.
    #[test]
    fn solvers_match_naive_on_random_graphs(
        n in 1usize..=9,
        edges in prop::collection::vec((0usize..9, 0usize..9), 0..24),
    ) {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            let (u, v) = (u % n, v % n);
            if u != v {
                g.add_edge(u, v);
            }
        }
        let chi = chromatic_number(&g, &Budget::default());
        prop_assert!(chi.exact);
        prop_assert_eq!(chi.value().unwrap(), naive::chromatic(&g));
        let om = clique_number(&g, &Budget::default());
        prop_assert!(om.exact);
        prop_assert_eq!(om.witness.size(), naive::max_clique(&g));
        prop_assert!(verify_coloring(&g, &chi.coloring).unwrap().is_none());
    }

    // Restricting a proper coloring to an induced subgraph stays proper.
    #[test]
    fn restriction_preserves_properness(
        n in 2usize..=8,
        edges in prop::collection::vec((0usize..8, 0usize..8), 0..20),
        keep in prop::collection::vec(any::<bool>(), 8),
    ) {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            let (u, v) = (u % n, v % n);
            if u != v {
                g.add_edge(u, v);
            }
        }
        let coloring = chromatic_number(&g, &Budget::default()).coloring;
        let vertices: Vec<usize> = (0..n).filter(|&v| keep[v]).collect();
        let sub = g.induced(&vertices);
        let restricted = coloring.restrict(&vertices);
        prop_assert!(verify_coloring(&sub, &restricted).unwrap().is_none());
    }
}

// Latin-sum rectangles built for a characteristic-2 row field against an
// odd column field satisfy the three square conditions literally: rows
// injective, first column injective, negation-paired columns disjoint.
#[test]
fn mixed_char_arrays_satisfy_the_three_conditions() {
    for (a, q) in [
        (2usize, 3usize),
        (2, 5),
        (2, 7),
        (4, 5),
        (4, 7),
        (4, 9),
        (8, 9),
        (8, 27),
        (16, 17),
        (16, 25),
    ] {
        let f1 = ring_from_spec(&format!("GF({a})")).unwrap();
        let f2 = ring_from_spec(&format!("GF({q})")).unwrap();
        let arr = build_latin_sum(&f1, &f2).unwrap();
        // rows injective
        for i in 0..arr.n_rows() {
            let mut row: Vec<u32> = (0..arr.n_cols()).map(|j| arr.entry(i, j)).collect();
            row.sort_unstable();
            row.dedup();
            assert_eq!(row.len(), arr.n_cols(), "GF({a}) x GF({q}) row {i}");
        }
        // first column injective
        let mut col0: Vec<u32> = (0..arr.n_rows()).map(|i| arr.entry(i, 0)).collect();
        col0.sort_unstable();
        col0.dedup();
        assert_eq!(col0.len(), arr.n_rows(), "GF({a}) x GF({q}) col 0");
        // paired columns disjoint: columns 2j-1 and 2j carry y_j and -y_j
        let m = (q - 1) / 2;
        for j in 1..=m {
            let a_set: std::collections::BTreeSet<u32> =
                (0..arr.n_rows()).map(|i| arr.entry(i, 2 * j - 1)).collect();
            let b_set: std::collections::BTreeSet<u32> =
                (0..arr.n_rows()).map(|i| arr.entry(i, 2 * j)).collect();
            assert!(a_set.is_disjoint(&b_set), "GF({a}) x GF({q}) pair {j}");
        }
    }
}

// Negation-paired column labels really are negation pairs in the field.
#[test]
fn column_labels_pair_negations() {
    for q in [3usize, 5, 7, 9, 11, 25, 27] {
        let f1 = ring_from_spec("GF(2)").unwrap();
        let f2 = ring_from_spec(&format!("GF({q})")).unwrap();
        let arr = build_latin_sum(&f1, &f2).unwrap();
        let labels = &arr.cols.labels;
        assert_eq!(labels[0], 0);
        for j in (1..labels.len()).step_by(2) {
            assert_eq!(f2.neg(labels[j]), labels[j + 1], "GF({q})");
        }
    }
}

// Solver determinism across repeated runs, including witnesses.
#[test]
fn repeated_solver_runs_are_bit_identical() {
    for spec in ["Z12", "Z3 x Z3", "Z2 x GF(4)", "Z9 x Z3"] {
        let r = ring_from_spec(spec).unwrap();
        let g = totgraph::graph::total_graph(&r).unwrap();
        let a = chromatic_number(&g, &Budget::default());
        let b = chromatic_number(&g, &Budget::default());
        assert_eq!(a.value(), b.value(), "{spec}");
        assert_eq!(a.coloring.colors(), b.coloring.colors(), "{spec}");
        let ca = clique_number(&g, &Budget::default());
        let cb = clique_number(&g, &Budget::default());
        assert_eq!(ca.witness.vertices, cb.witness.vertices, "{spec}");
    }
}

// Sign-vector classes of the odd regular coloring are independent sets and
// there are exactly 2^|Max(R)| of them.
#[test]
fn reg_odd_classes_are_independent() {
    for spec in ["Z3", "Z9", "Z3 x Z3", "Z3 x Z5", "Z9 x Z5", "Z3 x Z3 x Z3"] {
        let r = ring_from_spec(spec).unwrap();
        let g = totgraph::graph::reg_subgraph(&r).unwrap();
        let c = totgraph::coloring::color_reg_odd(&r).unwrap();
        assert_eq!(c.k() as usize, 1 << r.blocks().len(), "{spec}");
        assert!(verify_coloring(&g, &c).unwrap().is_none(), "{spec}");
        let clique = totgraph::coloring::reg_odd_clique(&r);
        let t = totgraph::graph::total_graph(&r).unwrap();
        assert!(t.is_complete_on(&clique), "{spec}");
        assert_eq!(clique.len(), c.k() as usize, "{spec}");
    }
}

// Dispatch coloring stays within the certified bound on every catalog ring.
#[test]
fn dispatch_colorings_are_proper_across_the_catalog() {
    use totgraph::catalog::{generate_catalog, parse_pool};
    use totgraph::verify::VerifyOptions;
    let options = VerifyOptions::default();
    let pool = parse_pool(&options.pool).unwrap();
    let catalog = generate_catalog(&pool, options.max_order);
    for desc in &catalog.rings {
        let r = totgraph::ring::build_ring(desc).unwrap();
        let g = totgraph::graph::total_graph(&r).unwrap();
        let c = totgraph::coloring::color_total(&r, &g, &Budget::default());
        assert!(verify_coloring(&g, &c).unwrap().is_none(), "{desc}");
        let classes = c.classes();
        assert_eq!(classes.len(), c.k() as usize, "{desc}");
        assert!(classes.iter().all(|cl| !cl.is_empty()), "{desc}: dense ids");
    }
}

// Exhaustive ring-axiom checks across the catalog at order <= 32 and
// sampled above.
#[test]
fn catalog_rings_satisfy_the_axioms() {
    use totgraph::catalog::{generate_catalog, parse_pool};
    use totgraph::verify::VerifyOptions;
    let options = VerifyOptions::default();
    let pool = parse_pool(&options.pool).unwrap();
    let catalog = generate_catalog(&pool, options.max_order);
    for desc in &catalog.rings {
        let r = totgraph::ring::build_ring(desc).unwrap();
        r.verify_ring_axioms(32).unwrap();
    }
}

// A hand-built product coloring with one color is rejected on any edge.
#[test]
fn verifier_rejects_size_mismatch() {
    let mut g = Graph::new(3);
    g.add_edge(0, 1);
    let c = Coloring::from_colors(vec![0, 1], Provenance::Solver);
    assert!(verify_coloring(&g, &c).is_err());
}
