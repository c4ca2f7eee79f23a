//! Independent brute-force reference implementations. Everything here is
//! deliberately naive — permutation search, subset counting, minor testing —
//! and exists to cross-validate the fast paths in `graph`, `canon`,
//! `enumerate` and `planar` on small inputs.

use crate::graph::{mask_vertices, Dim, RigidGraph, MAX_N};

/// Exhaustive isomorphism test over all n! vertex bijections. n <= 8.
pub fn isomorphic_brute(a: &RigidGraph, b: &RigidGraph) -> bool {
    if a.dim() != b.dim() || a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.n();
    assert!(n <= 8, "brute-force isomorphism is limited to n <= 8");
    let mut perm: Vec<u8> = (0..n).collect();
    let mut found = false;
    heap_permute(&mut perm, 0, &mut |p| {
        if found {
            return;
        }
        if a.edges().iter().all(|&(x, y)| b.has_edge(p[x as usize], p[y as usize])) {
            found = true;
        }
    });
    found
}

/// Lexicographically minimal adjacency encoding over all permutations.
pub fn canonical_bits_brute(g: &RigidGraph) -> Vec<u8> {
    let n = g.n();
    assert!(n <= 8, "brute-force canonical form is limited to n <= 8");
    let mut perm: Vec<u8> = (0..n).collect();
    let mut best: Option<Vec<u8>> = None;
    heap_permute(&mut perm, 0, &mut |p| {
        let enc = encode_under(g, p);
        if best.as_ref().map_or(true, |b| enc < *b) {
            best = Some(enc);
        }
    });
    best.unwrap()
}

fn encode_under(g: &RigidGraph, pos_to_vertex: &[u8]) -> Vec<u8> {
    let n = g.n() as usize;
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
    bits
}

fn heap_permute(items: &mut [u8], at: usize, f: &mut impl FnMut(&[u8])) {
    if at == items.len() {
        f(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        heap_permute(items, at + 1, f);
        items.swap(at, i);
    }
}

/// Planarity by Wagner's theorem: no K5 minor and no K3,3 minor. Minors are
/// searched by brute-force assignment of vertices to branch sets. n <= 8.
pub fn is_planar_by_minors(n: u8, adj: &[u16; MAX_N]) -> bool {
    assert!(n <= 8, "minor-based planarity is limited to n <= 8");
    !has_clique_minor(n, adj, 5) && !has_k33_minor(n, adj)
}

fn part_connected(adj: &[u16; MAX_N], part: u16) -> bool {
    if part == 0 {
        return false;
    }
    let start = part.trailing_zeros();
    let mut seen = 1u16 << start;
    loop {
        let mut next = seen;
        for v in mask_vertices(seen) {
            next |= adj[v as usize] & part;
        }
        if next == seen {
            break;
        }
        seen = next;
    }
    seen == part
}

fn parts_touch(adj: &[u16; MAX_N], a: u16, b: u16) -> bool {
    mask_vertices(a).iter().any(|&v| adj[v as usize] & b != 0)
}

fn has_clique_minor(n: u8, adj: &[u16; MAX_N], k: usize) -> bool {
    let mut assign = vec![usize::MAX; n as usize];
    search_parts(n, adj, k, 0, &mut assign, &|adj, parts| {
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                if !parts_touch(adj, parts[i], parts[j]) {
                    return false;
                }
            }
        }
        true
    })
}

fn has_k33_minor(n: u8, adj: &[u16; MAX_N]) -> bool {
    let mut assign = vec![usize::MAX; n as usize];
    search_parts(n, adj, 6, 0, &mut assign, &|adj, parts| {
        for a in 0..3 {
            for b in 3..6 {
                if !parts_touch(adj, parts[a], parts[b]) {
                    return false;
                }
            }
        }
        true
    })
}

fn search_parts(
    n: u8,
    adj: &[u16; MAX_N],
    k: usize,
    v: usize,
    assign: &mut Vec<usize>,
    accept: &dyn Fn(&[u16; MAX_N], &[u16]) -> bool,
) -> bool {
    if v == n as usize {
        let mut parts = vec![0u16; k];
        for (u, &p) in assign.iter().enumerate() {
            if p != usize::MAX {
                parts[p] |= 1 << u;
            }
        }
        return parts.iter().all(|&p| part_connected(adj, p)) && accept(adj, &parts);
    }
    for p in 0..k {
        assign[v] = p;
        if search_parts(n, adj, k, v + 1, assign, accept) {
            return true;
        }
    }
    assign[v] = usize::MAX;
    search_parts(n, adj, k, v + 1, assign, accept)
}

/// Every Laman graph on n vertices up to isomorphism, by filtering all
/// (2n-3)-edge graphs through the subset condition and deduplicating with
/// the permutation canonical form. Exponential; n <= 6.
pub fn laman_classes_brute(n: u8) -> Vec<RigidGraph> {
    assert!((3..=6).contains(&n), "brute-force Laman enumeration is limited to n <= 6");
    let all_pairs: Vec<(u8, u8)> = {
        let mut v = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                v.push((i, j));
            }
        }
        v
    };
    let m = 2 * n as usize - 3;
    let mut reps: Vec<(Vec<u8>, RigidGraph)> = Vec::new();
    for mask in 0u32..(1 << all_pairs.len()) {
        if mask.count_ones() as usize != m {
            continue;
        }
        let edges: Vec<(u8, u8)> = all_pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        let g = RigidGraph::from_edges(Dim::Two, n, &edges).unwrap();
        if !g.is_laman_by_subsets() {
            continue;
        }
        let key = canonical_bits_brute(&g);
        if !reps.iter().any(|(k, _)| *k == key) {
            reps.push((key, g));
        }
    }
    reps.into_iter().map(|(_, g)| g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    #[test]
    fn desargues_vs_k33_not_isomorphic() {
        assert!(!isomorphic_brute(&constructions::desargues(), &constructions::k33()));
    }

    #[test]
    fn minor_oracle_matches_dmp_on_specials() {
        for g in [constructions::octahedron(), constructions::g1_n6(), constructions::skeleton5()] {
            let mut adj = [0u16; MAX_N];
            for (a, b) in g.edges() {
                adj[a as usize] |= 1 << b;
                adj[b as usize] |= 1 << a;
            }
            assert!(is_planar_by_minors(g.n(), &adj));
        }
        // K3,3 itself
        let g = constructions::k33();
        let mut adj = [0u16; MAX_N];
        for (a, b) in g.edges() {
            adj[a as usize] |= 1 << b;
            adj[b as usize] |= 1 << a;
        }
        assert!(!is_planar_by_minors(6, &adj));
    }

    #[test]
    fn laman_counts_small() {
        assert_eq!(laman_classes_brute(3).len(), 1);
        assert_eq!(laman_classes_brute(4).len(), 1);
        assert_eq!(laman_classes_brute(5).len(), 3);
    }
}
