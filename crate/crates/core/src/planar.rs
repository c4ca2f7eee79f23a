//! Planarity testing by incremental face embedding (Demoucron–Malgrange–
//! Pertuiset). The graph is split into biconnected components; each component
//! is embedded fragment by fragment, placing forced fragments (those with a
//! single admissible face) first.

use crate::graph::{mask_vertices, MAX_N};

pub fn is_planar(n: u8, adj: &[u16; MAX_N]) -> bool {
    let n = n as usize;
    if n <= 4 {
        return true;
    }
    let edge_count: usize = adj[..n].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
    if edge_count > 3 * n - 6 {
        return false;
    }
    for comp in biconnected_components(n, adj) {
        if comp.len() >= 3 && !dmp(&comp) {
            return false;
        }
    }
    true
}

/// Edge lists of the biconnected components.
fn biconnected_components(n: usize, adj: &[u16; MAX_N]) -> Vec<Vec<(u8, u8)>> {
    struct St<'a> {
        adj: &'a [u16; MAX_N],
        disc: [usize; MAX_N],
        low: [usize; MAX_N],
        time: usize,
        stack: Vec<(u8, u8)>,
        comps: Vec<Vec<(u8, u8)>>,
    }
    fn dfs(st: &mut St, u: usize, parent: usize) {
        st.time += 1;
        st.disc[u] = st.time;
        st.low[u] = st.time;
        for v in mask_vertices(st.adj[u]) {
            let v = v as usize;
            if st.disc[v] == 0 {
                st.stack.push((u as u8, v as u8));
                dfs(st, v, u);
                st.low[u] = st.low[u].min(st.low[v]);
                if st.low[v] >= st.disc[u] {
                    let mut comp = Vec::new();
                    while let Some(e) = st.stack.pop() {
                        let done = e == (u as u8, v as u8);
                        comp.push(e);
                        if done {
                            break;
                        }
                    }
                    st.comps.push(comp);
                }
            } else if v != parent && st.disc[v] < st.disc[u] {
                st.stack.push((u as u8, v as u8));
                st.low[u] = st.low[u].min(st.disc[v]);
            }
        }
    }
    let mut st = St {
        adj,
        disc: [0; MAX_N],
        low: [0; MAX_N],
        time: 0,
        stack: Vec::new(),
        comps: Vec::new(),
    };
    for u in 0..n {
        if st.disc[u] == 0 {
            dfs(&mut st, u, usize::MAX);
        }
    }
    st.comps
}

struct Embedding {
    faces: Vec<Vec<u8>>,
    in_h: u16,
    embedded: Vec<u32>, // packed edges a*16+b, a<b
}

fn edge_id(a: u8, b: u8) -> u32 {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    (a as u32) << 4 | b as u32
}

fn dmp(edges: &[(u8, u8)]) -> bool {
    let mut adj = [0u16; MAX_N];
    let mut verts: u16 = 0;
    for &(a, b) in edges {
        adj[a as usize] |= 1 << b;
        adj[b as usize] |= 1 << a;
        verts |= (1 << a) | (1 << b);
    }
    let nv = verts.count_ones() as usize;
    if nv <= 4 {
        return true;
    }
    if edges.len() > 3 * nv - 6 {
        return false;
    }
    let cycle = match find_cycle(&adj, verts) {
        Some(c) => c,
        None => return true, // acyclic component (single edge)
    };
    let mut emb = Embedding { faces: vec![cycle.clone(), cycle.clone()], in_h: 0, embedded: Vec::new() };
    for &v in &cycle {
        emb.in_h |= 1 << v;
    }
    for i in 0..cycle.len() {
        emb.embedded.push(edge_id(cycle[i], cycle[(i + 1) % cycle.len()]));
    }

    loop {
        let frags = fragments(&adj, verts, &emb);
        if frags.is_empty() {
            return true;
        }
        // admissible faces per fragment
        let face_masks: Vec<u16> = emb
            .faces
            .iter()
            .map(|f| f.iter().fold(0u16, |m, &v| m | 1 << v))
            .collect();
        let mut pick: Option<(usize, usize)> = None; // (fragment, face)
        let mut forced: Option<(usize, usize)> = None;
        for (fi, frag) in frags.iter().enumerate() {
            let admissible: Vec<usize> = face_masks
                .iter()
                .enumerate()
                .filter(|(_, m)| *m & frag.contacts == frag.contacts)
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    if forced.is_none() {
                        forced = Some((fi, admissible[0]));
                    }
                }
                _ => {
                    if pick.is_none() {
                        pick = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = forced.or(pick).expect("nonempty fragment list");
        let frag = &frags[fi];
        let path = fragment_path(&adj, frag);
        embed_path(&mut emb, face_idx, &path);
    }
}

struct Fragment {
    contacts: u16,
    comp: u16,           // interior vertices; 0 for a bare edge
    edge: Option<(u8, u8)>,
}

fn fragments(adj: &[u16; MAX_N], verts: u16, emb: &Embedding) -> Vec<Fragment> {
    let mut out = Vec::new();
    // bare edges between embedded vertices
    for a in mask_vertices(emb.in_h) {
        for b in mask_vertices(adj[a as usize] & emb.in_h) {
            if a < b && !emb.embedded.contains(&edge_id(a, b)) {
                out.push(Fragment { contacts: (1 << a) | (1 << b), comp: 0, edge: Some((a, b)) });
            }
        }
    }
    // components of G - H with their attachments
    let mut remaining = verts & !emb.in_h;
    while remaining != 0 {
        let start = remaining.trailing_zeros() as u8;
        let mut comp: u16 = 1 << start;
        let mut frontier: u16 = comp;
        while frontier != 0 {
            let mut next = 0u16;
            for v in mask_vertices(frontier) {
                next |= adj[v as usize] & !emb.in_h;
            }
            frontier = next & !comp;
            comp |= frontier;
        }
        let mut contacts = 0u16;
        for v in mask_vertices(comp) {
            contacts |= adj[v as usize] & emb.in_h;
        }
        out.push(Fragment { contacts, comp, edge: None });
        remaining &= !comp;
    }
    out
}

/// A path through the fragment between two distinct contact vertices.
fn fragment_path(adj: &[u16; MAX_N], frag: &Fragment) -> Vec<u8> {
    if let Some((a, b)) = frag.edge {
        return vec![a, b];
    }
    let contacts = mask_vertices(frag.contacts);
    debug_assert!(contacts.len() >= 2, "biconnected input guarantees >= 2 contacts");
    let (c1, c2) = (contacts[0], contacts[1]);
    // BFS from c1 through interior vertices only.
    let mut parent = [u8::MAX; MAX_N];
    let mut queue: Vec<u8> = mask_vertices(adj[c1 as usize] & frag.comp);
    for &v in &queue {
        parent[v as usize] = c1;
    }
    let mut qi = 0;
    while qi < queue.len() {
        let v = queue[qi];
        qi += 1;
        if adj[v as usize] & (1 << c2) != 0 {
            let mut path = vec![c2, v];
            let mut cur = v;
            while parent[cur as usize] != c1 {
                cur = parent[cur as usize];
                path.push(cur);
            }
            path.push(c1);
            path.reverse();
            return path;
        }
        for w in mask_vertices(adj[v as usize] & frag.comp) {
            if parent[w as usize] == u8::MAX {
                parent[w as usize] = v;
                queue.push(w);
            }
        }
    }
    unreachable!("fragment is connected to both contacts");
}

fn embed_path(emb: &mut Embedding, face_idx: usize, path: &[u8]) {
    let face = emb.faces.swap_remove(face_idx);
    let (c1, c2) = (path[0], *path.last().unwrap());
    let p1 = face.iter().position(|&v| v == c1).expect("contact on face");
    let p2 = face.iter().position(|&v| v == c2).expect("contact on face");
    let len = face.len();
    let arc = |from: usize, to: usize| {
        let mut out = Vec::new();
        let mut i = from;
        loop {
            out.push(face[i]);
            if i == to {
                break;
            }
            i = (i + 1) % len;
        }
        out
    };
    let interior = &path[1..path.len() - 1];
    let mut f1 = arc(p1, p2);
    f1.extend(interior.iter().rev());
    let mut f2 = arc(p2, p1);
    f2.extend(interior.iter());
    emb.faces.push(f1);
    emb.faces.push(f2);
    for &v in interior {
        emb.in_h |= 1 << v;
    }
    for w in path.windows(2) {
        emb.embedded.push(edge_id(w[0], w[1]));
    }
}

fn find_cycle(adj: &[u16; MAX_N], verts: u16) -> Option<Vec<u8>> {
    let start = verts.trailing_zeros() as u8;
    let mut parent = [u8::MAX; MAX_N];
    let mut state = [0u8; MAX_N]; // 0 new, 1 on stack
    let mut stack = vec![(start, u8::MAX)];
    while let Some((v, par)) = stack.pop() {
        if state[v as usize] != 0 {
            continue;
        }
        state[v as usize] = 1;
        parent[v as usize] = par;
        for w in mask_vertices(adj[v as usize]) {
            if w == par {
                continue;
            }
            if state[w as usize] == 1 {
                // cycle w -> ... -> v -> w
                let mut cyc = vec![v];
                let mut cur = v;
                while cur != w {
                    cur = parent[cur as usize];
                    cyc.push(cur);
                }
                return Some(cyc);
            }
            stack.push((w, v));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adj_of(n: u8, edges: &[(u8, u8)]) -> [u16; MAX_N] {
        let mut adj = [0u16; MAX_N];
        for &(a, b) in edges {
            adj[a as usize] |= 1 << b;
            adj[b as usize] |= 1 << a;
        }
        let _ = n;
        adj
    }

    #[test]
    fn k5_not_planar() {
        let mut e = Vec::new();
        for i in 0..5u8 {
            for j in i + 1..5 {
                e.push((i, j));
            }
        }
        assert!(!is_planar(5, &adj_of(5, &e)));
    }

    #[test]
    fn k33_not_planar() {
        let mut e = Vec::new();
        for i in 0..3u8 {
            for j in 3..6u8 {
                e.push((i, j));
            }
        }
        assert!(!is_planar(6, &adj_of(6, &e)));
    }

    #[test]
    fn octahedron_planar() {
        let mut e = Vec::new();
        for i in 0..6u8 {
            for j in i + 1..6 {
                if j != i + 3 || i >= 3 {
                    e.push((i, j));
                }
            }
        }
        let e: Vec<(u8, u8)> = e.into_iter().filter(|&(a, b)| (b as i8 - a as i8) != 3).collect();
        assert_eq!(e.len(), 12);
        assert!(is_planar(6, &adj_of(6, &e)));
    }

    #[test]
    fn k5_subdivision_not_planar() {
        // K5 with one edge subdivided: 6 vertices
        let mut e = Vec::new();
        for i in 0..5u8 {
            for j in i + 1..5 {
                if (i, j) != (3, 4) {
                    e.push((i, j));
                }
            }
        }
        e.push((3, 5));
        e.push((4, 5));
        assert!(!is_planar(6, &adj_of(6, &e)));
    }

    #[test]
    fn disconnected_and_cut_vertices() {
        // two K4s sharing a vertex, planar
        let e = [
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 3),
            (2, 3),
            (3, 4),
            (3, 5),
            (3, 6),
            (4, 5),
            (4, 6),
            (5, 6),
        ];
        assert!(is_planar(7, &adj_of(7, &e)));
    }
}
