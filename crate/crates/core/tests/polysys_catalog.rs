//! Support-system invariants swept over whole catalogs.

use rigidmv::enumerate::generate_all;
use rigidmv::graph::Dim;
use rigidmv::polysys::{build_system, pinning_candidates, Formulation, SupportSystem};

#[test]
fn systems_square_for_all_catalog_graphs_n7() {
    for dim in [Dim::Two, Dim::Three] {
        for n in dim.base_n()..=7 {
            for e in generate_all(dim, n, &Default::default()).unwrap() {
                for p in pinning_candidates(&e.graph) {
                    for f in [Formulation::Naive, Formulation::Augmented] {
                        let s = build_system(&e.graph, &p, f).unwrap();
                        assert!(s.is_square(), "dim {} n={n} {:?}", dim.as_u8(), p.fixed);
                        let expected_vars = match (dim, f) {
                            (Dim::Two, Formulation::Naive) => 2 * (n as usize - 2),
                            (Dim::Two, Formulation::Augmented) => 3 * (n as usize - 2),
                            (Dim::Three, Formulation::Naive) => 3 * (n as usize - 3),
                            (Dim::Three, Formulation::Augmented) => 4 * (n as usize - 3),
                        };
                        assert_eq!(s.num_vars(), expected_vars);
                    }
                }
            }
        }
    }
}

#[test]
fn augmented_supports_are_small_and_quadratic() {
    for dim in [Dim::Two, Dim::Three] {
        let cap = match dim {
            Dim::Two => 5,   // {w_i, w_j, x_i x_j, y_i y_j, const}
            Dim::Three => 6, // plus z_i z_j
        };
        for n in dim.base_n()..=6 {
            for e in generate_all(dim, n, &Default::default()).unwrap() {
                for p in pinning_candidates(&e.graph) {
                    let s = build_system(&e.graph, &p, Formulation::Augmented).unwrap();
                    assert!(s.max_total_degree() <= 2);
                    let n_defs = n as usize - p.fixed.len();
                    for (i, sup) in s.supports.iter().enumerate() {
                        if i >= n_defs {
                            assert!(sup.len() <= cap, "edge support of size {}", sup.len());
                            assert!(
                                sup.iter().any(|pt| pt.iter().all(|&e| e == 0)),
                                "edge supports carry the generic constant term"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn support_dump_round_trip() {
    let g = rigidmv::constructions::octahedron();
    let p = &pinning_candidates(&g)[0];
    let s = build_system(&g, p, Formulation::Augmented).unwrap();
    let js = serde_json::to_string(&s).unwrap();
    let back: SupportSystem = serde_json::from_str(&js).unwrap();
    assert_eq!(s, back);
    // dump shape: {"vars": [...], "supports": [[[exponents]]]}
    let v: serde_json::Value = serde_json::from_str(&js).unwrap();
    assert!(v["vars"].is_array());
    assert!(v["supports"][0][0].is_array());
}
