//! Mixed-volume properties beyond the acceptance scopes: monotonicity under
//! point removal (against the oracle) and the augmented-beats-naive
//! comparison across small catalogs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rigidmv::enumerate::generate_all;
use rigidmv::graph::Dim;
use rigidmv::mixedvol::{min_mixed_volume_seeded, mixed_volume_oracle, mixed_volume_seeded};
use rigidmv::polysys::{Formulation, SupportSystem};

fn random_system(rng: &mut ChaCha8Rng) -> SupportSystem {
    let nv = rng.gen_range(2..=4usize);
    let supports = (0..nv)
        .map(|_| {
            let pts = rng.gen_range(3..=6usize);
            let mut sup: Vec<Vec<i32>> =
                (0..pts).map(|_| (0..nv).map(|_| rng.gen_range(0..=3)).collect()).collect();
            sup.sort();
            sup.dedup();
            sup
        })
        .collect();
    SupportSystem {
        vars: (0..nv).map(|i| format!("t{i}")).collect(),
        supports,
        formulation: Formulation::Naive,
    }
}

#[test]
fn removing_a_point_never_increases_mv() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut done = 0;
    while done < 100 {
        let sys = random_system(&mut rng);
        let which = rng.gen_range(0..sys.supports.len());
        if sys.supports[which].len() < 3 {
            continue;
        }
        let drop_at = rng.gen_range(0..sys.supports[which].len());
        let mut smaller = sys.clone();
        smaller.supports[which].remove(drop_at);
        let full = mixed_volume_oracle(&sys).unwrap();
        let reduced = mixed_volume_oracle(&smaller).unwrap();
        assert!(reduced <= full, "removal increased MV: {reduced} > {full}");
        // the fast path agrees with the oracle on both sides
        assert_eq!(mixed_volume_seeded(&sys, done).unwrap().mv, full);
        assert_eq!(mixed_volume_seeded(&smaller, done).unwrap().mv, reduced);
        done += 1;
    }
}

#[test]
fn h1_chain_mv_law() {
    // the all-H1 chain has min mixed volume 2^(n-2) in the plane
    for n in 3..=7u8 {
        let g = rigidmv::constructions::h1_chain(n, Dim::Two).unwrap();
        let mv = min_mixed_volume_seeded(&g, Formulation::Augmented, 0).unwrap().mv;
        assert_eq!(mv, 1u64 << (n - 2), "n={n}");
    }
}

#[test]
fn cyclohexane_caterpillar_bound_sandwich() {
    // two glued octahedra on 9 vertices: the table lower bound 256 cannot
    // exceed the graph's min mixed volume, which cannot exceed the table
    // upper 640
    let g = rigidmv::constructions::cyclohexane_caterpillar(2).unwrap();
    let mv = min_mixed_volume_seeded(&g, Formulation::Augmented, 0).unwrap().mv;
    assert!((256..=640).contains(&mv), "caterpillar mv {mv}");
}

#[test]
fn augmented_never_exceeds_naive() {
    for dim in [Dim::Two, Dim::Three] {
        for n in dim.base_n()..=6 {
            for e in generate_all(dim, n, &Default::default()).unwrap() {
                let naive = min_mixed_volume_seeded(&e.graph, Formulation::Naive, 0).unwrap().mv;
                let aug =
                    min_mixed_volume_seeded(&e.graph, Formulation::Augmented, 0).unwrap().mv;
                assert!(
                    aug <= naive,
                    "augmented {aug} exceeds naive {naive} (dim {}, n={n})",
                    dim.as_u8()
                );
            }
        }
    }
}
