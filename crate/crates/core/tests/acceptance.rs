//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Criterion tests assert the published table values exactly. Three entries
//! are known not to be reachable through the mixed-volume pipeline (the 2D
//! n=6 upper of 24 and everything downstream of it; see the repository
//! discussion of bound provenance): those asserts are faithful to the tables
//! and stay red, printing the computed value next to the expected one.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rigidmv::bounds;
use rigidmv::enumerate::{generate_all, CatalogEntry, GenerateOptions};
use rigidmv::graph::{Dim, RigidGraph, StepKind};
use rigidmv::mixedvol::{
    min_mixed_volume_seeded, mixed_volume_oracle, mixed_volume_seeded, MixedVolError,
};
use rigidmv::oracle;
use rigidmv::polysys::{
    build_system, degeneracy_witness, pinning_candidates, Formulation, SupportSystem,
};

fn verdict(id: u32, pass: bool, detail: &str) {
    println!("ACCEPTANCE {id} {} {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {id}: {detail}");
}

fn catalog(dim: Dim, n: u8) -> Vec<CatalogEntry> {
    generate_all(dim, n, &GenerateOptions::default()).expect("catalog generation")
}

fn min_mv(g: &RigidGraph) -> u64 {
    min_mixed_volume_seeded(g, Formulation::Augmented, 0).expect("mixed volume").mv
}

/// Max over the catalog of the min-over-pinnings augmented mixed volume.
fn table_upper(dim: Dim, n: u8) -> u64 {
    catalog(dim, n).iter().map(|e| min_mv(&e.graph)).max().expect("nonempty catalog")
}

#[test]
fn c1_table1_upper_row_2d() {
    let expected: Vec<u64> = vec![2, 4, 8, 24, 64];
    let got: Vec<u64> = (3..=7).map(|n| table_upper(Dim::Two, n)).collect();
    verdict(
        1,
        got == expected,
        &format!("2D upper row n=3..7: expected {expected:?}, computed {got:?}"),
    );
}

/// Stretch goal behind --ignored: the 2D n=8 upper of 128 (long run).
#[test]
#[ignore]
fn c1_stretch_table1_n8() {
    let got = table_upper(Dim::Two, 8);
    verdict(1, got == 128, &format!("2D upper at n=8: expected 128, computed {got}"));
}

#[test]
fn c2_table2_upper_row_3d() {
    let expected: Vec<u64> = vec![2, 4, 16, 32];
    let got: Vec<u64> = (4..=7).map(|n| table_upper(Dim::Three, n)).collect();
    verdict(
        2,
        got == expected,
        &format!("3D upper row n=4..7: expected {expected:?}, computed {got:?}"),
    );
}

#[test]
fn c3_named_graph_spot_values() {
    let cyclo = min_mv(&rigidmv::constructions::octahedron());
    let g1 = min_mv(&rigidmv::constructions::g1_n6());
    let des = min_mv(&rigidmv::constructions::desargues());
    verdict(
        3,
        cyclo == 16 && g1 == 8 && des == 24,
        &format!("cyclohexane mv={cyclo} (want 16), G1 mv={g1} (want 8), Desargues mv={des} (want 24)"),
    );
}

#[test]
fn c4_lower_bound_calculators() {
    let cyclo9 = bounds::lower_bound(bounds::LowerFormula::Cyclo3d, 9).unwrap();
    let row3: Vec<String> =
        (4..=10).map(|n| bounds::table_lower(Dim::Three, n).unwrap().to_string()).collect();
    let row2: Vec<String> =
        (3..=10).map(|n| bounds::table_lower(Dim::Two, n).unwrap().to_string()).collect();
    let want3 = ["2", "4", "16", "32", "64", "256", "512"];
    let want2 = ["2", "4", "8", "24", "48", "96", "288", "576"];
    let ok = cyclo9.to_string() == "256" && row3 == want3 && row2 == want2;
    verdict(
        4,
        ok,
        &format!("cyclo3d(9)={cyclo9}, 3D lower row {row3:?}, 2D lower row {row2:?}"),
    );
}

#[test]
fn c5_catalog_counts() {
    let got3: Vec<usize> = (4..=6).map(|n| catalog(Dim::Three, n).len()).collect();
    let mut ok = got3 == vec![1, 1, 2];
    let mut detail = format!("3D counts n=4..6: {got3:?} (want [1, 1, 2])");
    for n in 3..=6u8 {
        let fast = catalog(Dim::Two, n).len();
        let brute = oracle::laman_classes_brute(n).len();
        if fast != brute {
            ok = false;
        }
        detail.push_str(&format!("; 2D n={n}: bfs={fast} oracle={brute}"));
    }
    verdict(5, ok, &detail);
}

fn random_support_system(rng: &mut ChaCha8Rng) -> SupportSystem {
    let nv = rng.gen_range(2..=4usize);
    let supports = (0..nv)
        .map(|_| {
            let pts = rng.gen_range(2..=6usize);
            let mut sup: Vec<Vec<i32>> = (0..pts)
                .map(|_| (0..nv).map(|_| rng.gen_range(0..=3)).collect())
                .collect();
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
fn c6_oracle_equivalence() {
    let mut checked = 0usize;
    let mut ok = true;
    let mut detail = String::new();
    // all systems with <= 5 variables arising from n <= 5 graphs
    for dim in [Dim::Two, Dim::Three] {
        for n in dim.base_n()..=5 {
            for e in catalog(dim, n) {
                for p in pinning_candidates(&e.graph) {
                    for f in [Formulation::Naive, Formulation::Augmented] {
                        let sys = build_system(&e.graph, &p, f).unwrap();
                        if sys.num_vars() > 5 {
                            continue;
                        }
                        let fast = mixed_volume_seeded(&sys, 0).unwrap().mv;
                        let slow = mixed_volume_oracle(&sys).unwrap();
                        checked += 1;
                        if fast != slow {
                            ok = false;
                            detail = format!("catalog system disagrees: {fast} vs {slow}");
                        }
                    }
                }
            }
        }
    }
    // 200 random small supports
    let mut rng = ChaCha8Rng::seed_from_u64(20260810);
    for i in 0..200 {
        let sys = random_support_system(&mut rng);
        let fast = match mixed_volume_seeded(&sys, i) {
            Ok(r) => r.mv,
            Err(MixedVolError::DegenerateLiftingRetriesExhausted(_)) => continue,
            Err(e) => panic!("unexpected error: {e}"),
        };
        let slow = mixed_volume_oracle(&sys).unwrap();
        checked += 1;
        if fast != slow {
            ok = false;
            detail = format!("random system {i} disagrees: {fast} vs {slow}");
        }
    }
    verdict(6, ok, &format!("mixed_volume == oracle on {checked} systems {detail}"));
}

#[test]
fn c7_degeneracy_witness() {
    let mut graphs = 0usize;
    let mut ok = true;
    for n in 5..=7u8 {
        for e in catalog(Dim::Three, n) {
            graphs += 1;
            for p in pinning_candidates(&e.graph) {
                let (w, verified) =
                    degeneracy_witness(&e.graph, &p, Formulation::Naive).expect("applicable");
                if !verified || w.point.iter().any(|z| z.is_zero()) {
                    ok = false;
                }
            }
        }
    }
    verdict(7, ok, &format!("face-system witness verified on all {graphs} spatial graphs, n=5..7"));
}

#[test]
fn c8_property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let mut ok = true;
    let mut notes: Vec<String> = Vec::new();

    // H1-doubling + MV <= Bezout on every n <= 6 catalog entry
    for dim in [Dim::Two, Dim::Three] {
        for n in dim.base_n()..=6 {
            for e in catalog(dim, n) {
                let base = min_mv(&e.graph);
                let bez = bounds::bezout(n, dim).unwrap();
                if num_bigint::BigUint::from(base) > bez {
                    ok = false;
                    notes.push(format!("mv {base} exceeds bezout at n={n}"));
                }
                let h1 = e
                    .graph
                    .enumerate_steps()
                    .into_iter()
                    .find(|s| s.kind == StepKind::H1)
                    .expect("H1 step always applicable");
                let child = e.graph.apply_step(&h1).unwrap();
                let doubled = min_mv(&child);
                if doubled != 2 * base {
                    ok = false;
                    notes.push(format!(
                        "H1 doubling fails: {} -> {} (dim {}, n={n})",
                        base,
                        doubled,
                        dim.as_u8()
                    ));
                }
            }
        }
    }

    // relabeling invariance of min MV, 20 random permutations per graph
    for dim in [Dim::Two, Dim::Three] {
        for n in dim.base_n()..=6 {
            for e in catalog(dim, n) {
                let want = min_mv(&e.graph);
                for _ in 0..20 {
                    let mut perm: Vec<u8> = (0..n).collect();
                    perm.shuffle(&mut rng);
                    let got = min_mv(&e.graph.permuted(&perm));
                    if got != want {
                        ok = false;
                        notes.push(format!("relabeling changes mv: {want} -> {got} (n={n})"));
                    }
                }
            }
        }
    }

    // lifting-seed independence, 5 seeds per pinned system
    for dim in [Dim::Two, Dim::Three] {
        for n in dim.base_n()..=6 {
            for e in catalog(dim, n) {
                for p in pinning_candidates(&e.graph) {
                    let sys = build_system(&e.graph, &p, Formulation::Augmented).unwrap();
                    let base = mixed_volume_seeded(&sys, 1).unwrap().mv;
                    for seed in 2..=5u64 {
                        let v = mixed_volume_seeded(&sys, seed).unwrap().mv;
                        if v != base {
                            ok = false;
                            notes.push(format!("seed {seed} changes mv: {base} -> {v}"));
                        }
                    }
                }
            }
        }
    }

    verdict(
        8,
        ok,
        &format!(
            "H1-doubling, MV<=Bezout, relabeling invariance (20 perms), seed independence (5 seeds){}",
            if notes.is_empty() { String::new() } else { format!("; issues: {notes:?}") }
        ),
    );
}

#[test]
fn c9_conjecture_scan() {
    let mut records = Vec::new();
    for dim in [Dim::Two, Dim::Three] {
        let entries = catalog(dim, 6);
        records.extend(bounds::conjecture_scan(&entries, 0).unwrap());
    }
    let violations: Vec<String> = records
        .iter()
        .filter(|r| r.violation)
        .map(|r| format!("{} at {} ({} -> {})", r.sequence, r.n_after, r.mv_before, r.mv_after))
        .collect();
    let h1_bad: Vec<String> = records
        .iter()
        .filter(|r| r.kind == StepKind::H1 && r.mv_after != 2 * r.mv_before)
        .map(|r| r.sequence.clone())
        .collect();
    verdict(
        9,
        violations.is_empty() && h1_bad.is_empty(),
        &format!(
            "{} steps scanned, H2 ratios <= 4, H1 ratios exactly 2; violations: {violations:?} {h1_bad:?}",
            records.len()
        ),
    );
}
