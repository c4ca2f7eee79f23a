//! (2,3)-pebble game sparsity check.
//!
//! Every vertex starts with two pebbles. An edge (u,v) is accepted when four
//! pebbles can be gathered on {u,v}; accepting consumes one pebble and
//! orients the edge away from the vertex that paid. Pebbles are gathered by
//! reversing directed paths. A graph is (2,3)-sparse iff every edge is
//! accepted, and Laman (tight) iff additionally |E| = 2n-3.

use crate::graph::MAX_N;

struct Game {
    n: usize,
    pebbles: [u8; MAX_N],
    out: [u16; MAX_N], // directed adjacency, row v = successors of v
}

impl Game {
    fn new(n: usize) -> Self {
        Game { n, pebbles: [2; MAX_N], out: [0; MAX_N] }
    }

    /// Depth-first search for a free pebble reachable from `root` along
    /// directed edges, avoiding `forbid_a`/`forbid_b` as donors. On success
    /// the path is reversed and the pebble moved to `root`.
    fn pull_pebble(&mut self, root: usize, forbid_a: usize, forbid_b: usize) -> bool {
        let mut parent = [usize::MAX; MAX_N];
        let mut seen = [false; MAX_N];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            if v != root && v != forbid_a && v != forbid_b && self.pebbles[v] > 0 {
                // reverse the path root -> ... -> v
                self.pebbles[v] -= 1;
                self.pebbles[root] += 1;
                let mut cur = v;
                while cur != root {
                    let p = parent[cur];
                    self.out[p] &= !(1 << cur);
                    self.out[cur] |= 1 << p;
                    cur = p;
                }
                return true;
            }
            let mut succ = self.out[v];
            while succ != 0 {
                let w = succ.trailing_zeros() as usize;
                succ &= succ - 1;
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        false
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> bool {
        loop {
            if self.pebbles[u] as usize + self.pebbles[v] as usize >= 4 {
                break;
            }
            if self.pull_pebble(u, u, v) {
                continue;
            }
            if self.pull_pebble(v, u, v) {
                continue;
            }
            return false;
        }
        let (from, to) = if self.pebbles[u] > 0 { (u, v) } else { (v, u) };
        debug_assert!(self.pebbles[from] > 0);
        self.pebbles[from] -= 1;
        self.out[from] |= 1 << to;
        let _ = self.n;
        true
    }
}

/// (2,3)-tightness: the graph is (2,3)-sparse and has exactly 2n-3 edges.
pub fn is_tight_2_3(n: u8, edges: &[(u8, u8)]) -> bool {
    if edges.len() != 2 * n as usize - 3 {
        return false;
    }
    is_sparse_2_3(n, edges)
}

/// (2,3)-sparsity: every subset of k vertices spans at most 2k-3 edges.
pub fn is_sparse_2_3(n: u8, edges: &[(u8, u8)]) -> bool {
    let mut game = Game::new(n as usize);
    edges.iter().all(|&(u, v)| game.insert_edge(u as usize, v as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_k4() {
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        assert!(!is_sparse_2_3(4, &edges));
    }

    #[test]
    fn accepts_triangle_plus_tail() {
        let edges = [(0, 1), (0, 2), (1, 2), (3, 0), (3, 1)];
        assert!(is_tight_2_3(4, &edges));
    }

    #[test]
    fn insertion_order_does_not_matter() {
        // double banana minus nothing — a classic (2,3)-sparse failure in 2D terms:
        // two K4s sharing two vertices has 2n-3+1 edges on a subset; build smaller:
        // K4 inside a larger graph must be rejected regardless of edge order.
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 0), (4, 1)];
        assert!(!is_sparse_2_3(5, &edges));
        edges.reverse();
        assert!(!is_sparse_2_3(5, &edges));
    }
}
