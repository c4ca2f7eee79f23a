//! Canonical labeling by iterative color refinement with backtracking over
//! non-singleton cells. The key of a graph is the lexicographically minimal
//! adjacency encoding over all refinement-consistent relabelings, so two
//! graphs have equal keys exactly when they are isomorphic (validated against
//! the permutation oracle on small n).

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::RigidGraph;

/// Canonical adjacency encoding plus dimension, vertex count and any initial
/// vertex colors. Total order; usable as a map key.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<CanonicalKey> {
        if s.len() % 2 != 0 {
            return None;
        }
        let bytes = (0..s.len() / 2)
            .map(|i| u8::from_str_radix(&s[2 * i..2 * i + 2], 16).ok())
            .collect::<Option<Vec<u8>>>()?;
        Some(CanonicalKey(bytes))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalKey::from_hex(&s).ok_or_else(|| D::Error::custom("invalid hex key"))
    }
}

/// Canonical key with all vertices colored alike.
pub fn canonical_key(g: &RigidGraph) -> CanonicalKey {
    canonical_key_colored(g, &vec![0; g.n() as usize])
}

/// Canonical key of a vertex-colored graph. Two colored graphs share a key
/// exactly when a color-preserving isomorphism exists; used to deduplicate
/// pinnings up to graph automorphisms.
pub fn canonical_key_colored(g: &RigidGraph, init_colors: &[u32]) -> CanonicalKey {
    assert_eq!(init_colors.len(), g.n() as usize);
    let mut best: Option<Vec<u8>> = None;
    let mut colors: Vec<u32> = init_colors.to_vec();
    normalize(&mut colors);
    refine(g, &mut colors);
    search(g, init_colors, colors, &mut best);
    CanonicalKey(best.expect("search yields at least one leaf"))
}

fn search(g: &RigidGraph, init_colors: &[u32], colors: Vec<u32>, best: &mut Option<Vec<u8>>) {
    let n = g.n() as usize;
    // first non-singleton cell, by color value
    let mut target: Option<u32> = None;
    for c in 0..n as u32 {
        let cnt = colors.iter().filter(|&&x| x == c).count();
        if cnt > 1 {
            target = Some(c);
            break;
        }
        if cnt == 0 {
            break;
        }
    }
    let Some(cell) = target else {
        // discrete: colors form a permutation
        let mut pos_to_vertex = vec![0u8; n];
        for (v, &c) in colors.iter().enumerate() {
            pos_to_vertex[c as usize] = v as u8;
        }
        let enc = encode(g, &pos_to_vertex, init_colors);
        if best.as_ref().map_or(true, |b| enc < *b) {
            *best = Some(enc);
        }
        return;
    };
    for v in 0..n {
        if colors[v] != cell {
            continue;
        }
        // individualize v: it precedes the rest of its cell
        let mut child: Vec<u32> = colors.iter().map(|&c| 2 * c + 1).collect();
        child[v] = 2 * cell;
        normalize(&mut child);
        refine(g, &mut child);
        search(g, init_colors, child, best);
    }
}

/// Refine to the coarsest stable partition: vertices are repeatedly split by
/// (own color, multiset of neighbor colors).
fn refine(g: &RigidGraph, colors: &mut Vec<u32>) {
    let n = g.n() as usize;
    loop {
        let mut sigs: Vec<(u32, Vec<u32>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut nb: Vec<u32> = g.neighbors(v as u8).iter().map(|&w| colors[w as usize]).collect();
            nb.sort_unstable();
            sigs.push((colors[v], nb));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
        let mut next = vec![0u32; n];
        let mut c = 0u32;
        for i in 0..n {
            if i > 0 && sigs[order[i]] != sigs[order[i - 1]] {
                c += 1;
            }
            next[order[i]] = c;
        }
        if next == *colors {
            return;
        }
        *colors = next;
    }
}

/// Renumber colors to 0..k-1 preserving their order.
fn normalize(colors: &mut Vec<u32>) {
    let mut sorted: Vec<u32> = colors.clone();
    sorted.sort_unstable();
    sorted.dedup();
    for c in colors.iter_mut() {
        *c = sorted.binary_search(c).unwrap() as u32;
    }
}

fn encode(g: &RigidGraph, pos_to_vertex: &[u8], init_colors: &[u32]) -> Vec<u8> {
    let n = g.n() as usize;
    let mut out = Vec::with_capacity(2 + n + n * n / 16 + 1);
    out.push(g.dim().as_u8());
    out.push(g.n());
    for p in 0..n {
        out.push(init_colors[pos_to_vertex[p] as usize] as u8);
    }
    let mut bits = vec![0u8; (n * (n - 1) / 2 + 7) / 8];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(pos_to_vertex[i], pos_to_vertex[j]) {
                bits[k / 8] |= 1 << (k % 8);
            }
            k += 1;
        }
    }
    out.extend(bits);
    out
}
