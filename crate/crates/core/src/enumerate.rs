//! Exhaustive generation of all valid graphs up to isomorphism.
//!
//! Level-synchronous BFS over Henneberg steps starting from the base graph,
//! deduplicating by canonical key at every level. Each isomorphism class
//! keeps the construction sequence with the largest number of H1 steps seen
//! so far (ties broken by the lexicographically smallest encoding), so the
//! catalog entry's class tag falls out of the final sequence.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonical_key, CanonicalKey};
use crate::graph::{Dim, GraphError, HClass, HennebergSequence, RigidGraph, StepKind};

pub use crate::cache::{CacheError, CacheStore};

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("resource budget exceeded: {0}")]
    ResourceLimit(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("catalog parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

/// One isomorphism class of the catalog.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub key: CanonicalKey,
    pub graph: RigidGraph,
    pub sequence: HennebergSequence,
    pub class: HClass,
}

#[derive(Clone, Debug)]
pub struct GenerateOptions {
    pub time_budget: Option<Duration>,
    pub max_classes_per_level: Option<usize>,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions { time_budget: None, max_classes_per_level: Some(1_000_000) }
    }
}

/// All isomorphism classes of valid graphs on `n` vertices.
pub fn generate_all(
    dim: Dim,
    n: u8,
    opts: &GenerateOptions,
) -> Result<Vec<CatalogEntry>, EnumerateError> {
    let base_n = dim.base_n();
    if n < base_n {
        return Err(EnumerateError::ResourceLimit(format!(
            "n={n} below the base size {base_n}"
        )));
    }
    let start = Instant::now();
    let base = RigidGraph::base(dim);
    let mut level: BTreeMap<CanonicalKey, RigidGraph> = BTreeMap::new();
    level.insert(canonical_key(&base), base);
    for _ in base_n..n {
        let mut next: BTreeMap<CanonicalKey, RigidGraph> = BTreeMap::new();
        for g in level.values() {
            for step in g.enumerate_steps() {
                let child = g.apply_step(&step)?;
                let key = canonical_key(&child);
                match next.get_mut(&key) {
                    None => {
                        next.insert(key, child);
                    }
                    Some(existing) => {
                        if better_sequence(&child, existing) {
                            *existing = child;
                        }
                    }
                }
            }
            if let Some(budget) = opts.time_budget {
                if start.elapsed() > budget {
                    return Err(EnumerateError::ResourceLimit(format!(
                        "time budget {budget:?} exceeded"
                    )));
                }
            }
        }
        if let Some(cap) = opts.max_classes_per_level {
            if next.len() > cap {
                return Err(EnumerateError::ResourceLimit(format!(
                    "level holds {} classes, cap is {cap}",
                    next.len()
                )));
            }
        }
        level = next;
    }
    Ok(level
        .into_iter()
        .map(|(key, graph)| {
            let sequence = graph.provenance().expect("BFS graphs carry provenance").clone();
            let class = if sequence.h1_count() == sequence.steps.len() {
                HClass::H1
            } else {
                HClass::H2
            };
            CatalogEntry { key, graph, sequence, class }
        })
        .collect())
}

/// Prefer more H1 steps; break ties toward the smaller encoded sequence.
fn better_sequence(candidate: &RigidGraph, incumbent: &RigidGraph) -> bool {
    let c = candidate.provenance().expect("provenance");
    let i = incumbent.provenance().expect("provenance");
    let ch = c.h1_count();
    let ih = i.h1_count();
    ch > ih || (ch == ih && c.encode().join(";") < i.encode().join(";"))
}

/// Same closure restricted to H1/H2 steps; used to confirm that H3 never
/// contributes new classes at small n.
pub fn generate_all_without_h3(
    dim: Dim,
    n: u8,
    opts: &GenerateOptions,
) -> Result<Vec<CanonicalKey>, EnumerateError> {
    let base_n = dim.base_n();
    let base = RigidGraph::base(dim);
    let mut level: BTreeMap<CanonicalKey, RigidGraph> = BTreeMap::new();
    level.insert(canonical_key(&base), base);
    for _ in base_n..n {
        let mut next: BTreeMap<CanonicalKey, RigidGraph> = BTreeMap::new();
        for g in level.values() {
            for step in g.enumerate_steps() {
                if step.kind == StepKind::H3 {
                    continue;
                }
                let child = g.apply_step(&step)?;
                next.entry(canonical_key(&child)).or_insert(child);
            }
        }
        if let Some(cap) = opts.max_classes_per_level {
            if next.len() > cap {
                return Err(EnumerateError::ResourceLimit("class cap".into()));
            }
        }
        level = next;
    }
    Ok(level.into_keys().collect())
}

/// Write a catalog as JSONL, one entry per line.
pub fn write_catalog(path: &Path, entries: &[CatalogEntry]) -> Result<(), EnumerateError> {
    let mut tmp = path.to_path_buf();
    tmp.set_extension("jsonl.tmp");
    {
        let mut f = std::io::BufWriter::new(std::fs::File::create(&tmp)?);
        for e in entries {
            let mut e = e.clone();
            e.graph.set_provenance(None); // sequence is its own field
            serde_json::to_writer(&mut f, &e)?;
            f.write_all(b"\n")?;
        }
        f.flush()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read_catalog(path: &Path) -> Result<Vec<CatalogEntry>, EnumerateError> {
    let f = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut out = Vec::new();
    for line in f.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon;
    use crate::oracle;

    #[test]
    fn planar_counts_match_subset_oracle() {
        for n in 3..=6u8 {
            let fast = generate_all(Dim::Two, n, &Default::default()).unwrap();
            let brute = oracle::laman_classes_brute(n);
            assert_eq!(fast.len(), brute.len(), "count mismatch at n={n}");
        }
    }

    #[test]
    fn spatial_counts() {
        for (n, want) in [(4u8, 1usize), (5, 1), (6, 2)] {
            let got = generate_all(Dim::Three, n, &Default::default()).unwrap();
            assert_eq!(got.len(), want, "count mismatch at n={n}");
        }
    }

    #[test]
    fn catalog_sequences_replay_to_their_class() {
        for dim in [Dim::Two, Dim::Three] {
            for n in dim.base_n()..=6 {
                for e in generate_all(dim, n, &Default::default()).unwrap() {
                    let replayed = e.sequence.replay().unwrap();
                    assert_eq!(canon::canonical_key(&replayed), e.key);
                }
            }
        }
    }

    #[test]
    fn known_classes_present_at_n6() {
        let keys: Vec<CanonicalKey> = generate_all(Dim::Two, 6, &Default::default())
            .unwrap()
            .into_iter()
            .map(|e| e.key)
            .collect();
        assert!(keys.contains(&canon::canonical_key(&crate::constructions::desargues())));
        assert!(keys.contains(&canon::canonical_key(&crate::constructions::k33())));

        let keys3: Vec<CanonicalKey> = generate_all(Dim::Three, 6, &Default::default())
            .unwrap()
            .into_iter()
            .map(|e| e.key)
            .collect();
        assert!(keys3.contains(&canon::canonical_key(&crate::constructions::octahedron())));
        assert!(keys3.contains(&canon::canonical_key(&crate::constructions::g1_n6())));
    }

    #[test]
    fn h3_adds_no_classes_small_n() {
        for n in 4..=7u8 {
            let with = generate_all(Dim::Three, n, &Default::default()).unwrap();
            let without = generate_all_without_h3(Dim::Three, n, &Default::default()).unwrap();
            let with_keys: Vec<&CanonicalKey> = with.iter().map(|e| &e.key).collect();
            assert_eq!(with_keys.len(), without.len());
            for k in &without {
                assert!(with_keys.contains(&k));
            }
        }
    }

    #[test]
    fn catalog_classes_match_backtracking_classifier() {
        for dim in [Dim::Two, Dim::Three] {
            for e in generate_all(dim, 6, &Default::default()).unwrap() {
                let (class, seq) = e.graph.classify_henneberg().unwrap();
                assert_eq!(class, e.class, "class mismatch for {:?}", e.graph);
                assert_eq!(seq.h1_count(), e.sequence.h1_count());
            }
        }
    }

    #[test]
    fn catalog_jsonl_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cat.jsonl");
        let entries = generate_all(Dim::Three, 6, &Default::default()).unwrap();
        write_catalog(&path, &entries).unwrap();
        let back = read_catalog(&path).unwrap();
        assert_eq!(back.len(), entries.len());
        for (a, b) in entries.iter().zip(&back) {
            assert_eq!(a.key, b.key);
            assert_eq!(a.class, b.class);
            assert_eq!(a.sequence, b.sequence);
            let mut ga = a.graph.clone();
            ga.set_provenance(None);
            assert_eq!(ga, b.graph);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let opts = GenerateOptions { time_budget: None, max_classes_per_level: Some(1) };
        match generate_all(Dim::Two, 6, &opts) {
            Err(EnumerateError::ResourceLimit(_)) => {}
            other => panic!("expected resource limit, got {:?}", other.map(|v| v.len())),
        }
    }
}
