//! Core graph type and Henneberg step machinery.
//!
//! A [`RigidGraph`] is a simple undirected graph on at most [`MAX_N`]
//! vertices tagged with an ambient dimension. In the plane the valid graphs
//! are the Laman graphs (|E| = 2n-3 with the hereditary sparsity condition);
//! in space they are the 1-skeleta of simplicial polyhedra, i.e. maximal
//! planar graphs with |E| = 3n-6.

use std::collections::HashMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::pebble;
use crate::planar;

/// Vertex cap; adjacency rows fit in a machine word.
pub const MAX_N: usize = 16;

/// Ambient dimension of the embedding space.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub fn as_u8(self) -> u8 {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }

    pub fn from_u8(v: u8) -> Option<Dim> {
        match v {
            2 => Some(Dim::Two),
            3 => Some(Dim::Three),
            _ => None,
        }
    }

    /// Number of vertices of the base graph (triangle or 3-simplex).
    pub fn base_n(self) -> u8 {
        match self {
            Dim::Two => 3,
            Dim::Three => 4,
        }
    }

    /// Edge count of a valid graph on `n` vertices.
    pub fn edge_count(self, n: u8) -> usize {
        match self {
            Dim::Two => 2 * n as usize - 3,
            Dim::Three => 3 * n as usize - 6,
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.as_u8())
    }
}

impl<'de> Deserialize<'de> for Dim {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = u8::deserialize(d)?;
        Dim::from_u8(v).ok_or_else(|| D::Error::custom(format!("dim must be 2 or 3, got {v}")))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed step: {0}")]
    MalformedStep(String),
    #[error("step result fails the {0} validity check")]
    ValidityViolation(&'static str),
    #[error("no Henneberg sequence found; graph is not constructible")]
    NoSequenceFound,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

/// Kind of a Henneberg vertex-addition step.
///
/// In the plane only `H1` (attach to 2 vertices) and `H2` (attach to 3,
/// remove one edge among them) apply. In space `Hk` attaches to k+2 vertices
/// forming a cycle and removes k-1 of its diagonals, k = 1, 2, 3.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StepKind {
    H1,
    H2,
    H3,
}

impl StepKind {
    pub fn digit(self) -> char {
        match self {
            StepKind::H1 => '1',
            StepKind::H2 => '2',
            StepKind::H3 => '3',
        }
    }

    fn k(self) -> usize {
        match self {
            StepKind::H1 => 1,
            StepKind::H2 => 2,
            StepKind::H3 => 3,
        }
    }
}

/// One Henneberg step: the attachment vertices of the new vertex and the
/// edges removed among them.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct HennebergStep {
    pub kind: StepKind,
    pub attach: Vec<u8>,
    pub removed: Vec<(u8, u8)>,
}

impl HennebergStep {
    pub fn new(kind: StepKind, mut attach: Vec<u8>, removed: Vec<(u8, u8)>) -> Self {
        attach.sort_unstable();
        let removed = removed.into_iter().map(|(a, b)| ord(a, b)).collect::<Vec<_>>();
        HennebergStep { kind, attach, removed }
    }

    /// Step encoding `kind:attach/-removed`, e.g. `2:0,1,2/-0,1`.
    pub fn encode(&self) -> String {
        let attach = self.attach.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        let mut s = format!("{}:{}", self.kind.digit(), attach);
        for (a, b) in &self.removed {
            s.push_str(&format!("/-{a},{b}"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let bad = || GraphError::MalformedStep(format!("cannot parse step `{text}`"));
        let mut parts = text.split("/-");
        let head = parts.next().ok_or_else(bad)?;
        let (kind, attach) = head.split_once(':').ok_or_else(bad)?;
        let kind = match kind {
            "1" => StepKind::H1,
            "2" => StepKind::H2,
            "3" => StepKind::H3,
            _ => return Err(bad()),
        };
        let attach = attach
            .split(',')
            .map(|t| t.trim().parse::<u8>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        let mut removed = Vec::new();
        for p in parts {
            let (a, b) = p.split_once(',').ok_or_else(bad)?;
            removed.push((
                a.trim().parse::<u8>().map_err(|_| bad())?,
                b.trim().parse::<u8>().map_err(|_| bad())?,
            ));
        }
        Ok(HennebergStep::new(kind, attach, removed))
    }
}

/// Construction record: a base graph plus the ordered steps applied to it.
/// Step `i` creates vertex `base_n + i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HennebergSequence {
    pub dim: Dim,
    pub steps: Vec<HennebergStep>,
}

impl HennebergSequence {
    pub fn empty(dim: Dim) -> Self {
        HennebergSequence { dim, steps: Vec::new() }
    }

    /// Rebuild the graph by applying every step to the base graph.
    pub fn replay(&self) -> Result<RigidGraph, GraphError> {
        let mut g = RigidGraph::base(self.dim);
        for s in &self.steps {
            g = g.apply_step(s)?;
        }
        Ok(g)
    }

    pub fn h1_count(&self) -> usize {
        self.steps.iter().filter(|s| s.kind == StepKind::H1).count()
    }

    /// Encoded form: base marker followed by one string per step.
    pub fn encode(&self) -> Vec<String> {
        let base = match self.dim {
            Dim::Two => "T",
            Dim::Three => "S",
        };
        let mut out = vec![base.to_string()];
        out.extend(self.steps.iter().map(|s| s.encode()));
        out
    }

    /// Compact form used in tables: base marker plus the step digits,
    /// e.g. `T112` for a triangle followed by H1, H1, H2.
    pub fn compact(&self) -> String {
        let mut s = String::from(match self.dim {
            Dim::Two => "T",
            Dim::Three => "S",
        });
        s.extend(self.steps.iter().map(|st| st.kind.digit()));
        s
    }

    pub fn decode(items: &[String]) -> Result<Self, GraphError> {
        let bad = |m: &str| GraphError::MalformedStep(m.to_string());
        let first = items.first().ok_or_else(|| bad("empty sequence"))?;
        let dim = match first.as_str() {
            "T" => Dim::Two,
            "S" => Dim::Three,
            other => return Err(bad(&format!("unknown base marker `{other}`"))),
        };
        let steps = items[1..]
            .iter()
            .map(|t| HennebergStep::parse(t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HennebergSequence { dim, steps })
    }
}

impl Serialize for HennebergSequence {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.encode().serialize(s)
    }
}

impl<'de> Deserialize<'de> for HennebergSequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        HennebergSequence::decode(&items).map_err(D::Error::custom)
    }
}

/// Henneberg class of a graph: `H1` if constructible with H1 steps only.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum HClass {
    H1,
    H2,
}

fn ord(a: u8, b: u8) -> (u8, u8) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Simple undirected graph with an ambient dimension tag and optional
/// construction provenance. Equality and hashing ignore the provenance.
#[derive(Clone)]
pub struct RigidGraph {
    dim: Dim,
    n: u8,
    adj: [u16; MAX_N],
    provenance: Option<HennebergSequence>,
}

impl PartialEq for RigidGraph {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.n == other.n && self.adj == other.adj
    }
}

impl Eq for RigidGraph {}

impl std::hash::Hash for RigidGraph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.n.hash(state);
        self.adj.hash(state);
    }
}

impl fmt::Debug for RigidGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RigidGraph(dim={}, n={}, edges={:?})", self.dim.as_u8(), self.n, self.edges())
    }
}

impl RigidGraph {
    pub fn empty(dim: Dim, n: u8) -> Self {
        assert!(n as usize <= MAX_N, "vertex cap is {MAX_N}");
        RigidGraph { dim, n, adj: [0; MAX_N], provenance: None }
    }

    /// The base of all Henneberg constructions: a triangle in the plane,
    /// the 3-simplex in space. Carries an empty provenance.
    pub fn base(dim: Dim) -> Self {
        let n = dim.base_n();
        let mut g = RigidGraph::empty(dim, n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g.provenance = Some(HennebergSequence::empty(dim));
        g
    }

    pub fn from_edges(dim: Dim, n: u8, edges: &[(u8, u8)]) -> Result<Self, GraphError> {
        if n as usize > MAX_N {
            return Err(GraphError::InvalidGraph(format!("n={n} exceeds cap {MAX_N}")));
        }
        let mut g = RigidGraph::empty(dim, n);
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::InvalidGraph(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(GraphError::InvalidGraph(format!("self-loop at {a}")));
            }
            if g.has_edge(a, b) {
                return Err(GraphError::InvalidGraph(format!("duplicate edge ({a},{b})")));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn provenance(&self) -> Option<&HennebergSequence> {
        self.provenance.as_ref()
    }

    pub fn set_provenance(&mut self, p: Option<HennebergSequence>) {
        self.provenance = p;
    }

    pub(crate) fn add_edge(&mut self, a: u8, b: u8) {
        debug_assert!(a != b && a < self.n && b < self.n);
        self.adj[a as usize] |= 1 << b;
        self.adj[b as usize] |= 1 << a;
    }

    pub(crate) fn remove_edge(&mut self, a: u8, b: u8) {
        self.adj[a as usize] &= !(1 << b);
        self.adj[b as usize] &= !(1 << a);
    }

    pub fn has_edge(&self, a: u8, b: u8) -> bool {
        a != b && self.adj[a as usize] & (1 << b) != 0
    }

    pub fn degree(&self, v: u8) -> usize {
        self.adj[v as usize].count_ones() as usize
    }

    pub fn neighbors_mask(&self, v: u8) -> u16 {
        self.adj[v as usize]
    }

    pub fn neighbors(&self, v: u8) -> Vec<u8> {
        mask_vertices(self.adj[v as usize])
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.n as usize].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges in lexicographic order, smaller endpoint first.
    pub fn edges(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// All triangles (3-cliques) in lexicographic order.
    pub fn triangles(&self) -> Vec<[u8; 3]> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.has_edge(i, j) {
                    continue;
                }
                for k in j + 1..self.n {
                    if self.has_edge(i, k) && self.has_edge(j, k) {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }

    /// Relabel vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[u8]) -> RigidGraph {
        assert_eq!(perm.len(), self.n as usize);
        let mut g = RigidGraph::empty(self.dim, self.n);
        for (a, b) in self.edges() {
            g.add_edge(perm[a as usize], perm[b as usize]);
        }
        g
    }

    /// Delete a vertex and compact the labels of the ones above it.
    pub fn without_vertex(&self, v: u8) -> RigidGraph {
        let mut g = RigidGraph::empty(self.dim, self.n - 1);
        for (a, b) in self.edges() {
            if a == v || b == v {
                continue;
            }
            let sa = if a > v { a - 1 } else { a };
            let sb = if b > v { b - 1 } else { b };
            g.add_edge(sa, sb);
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen: u16 = 1;
        let mut frontier: u16 = 1;
        while frontier != 0 {
            let mut next = 0;
            for v in mask_vertices(frontier) {
                next |= self.adj[v as usize];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == self.n as usize
    }

    /// Dimension-appropriate validity check.
    pub fn is_valid(&self) -> bool {
        match self.dim {
            Dim::Two => self.is_laman(),
            Dim::Three => self.is_simplicial_skeleton(),
        }
    }

    /// Laman check: |E| = 2n-3 and every induced subgraph on k vertices has
    /// at most 2k-3 edges. Uses the exhaustive subset condition for n <= 7
    /// and the (2,3)-pebble game beyond; the two agree (tested).
    pub fn is_laman(&self) -> bool {
        if self.dim != Dim::Two || self.n < 3 {
            return false;
        }
        if self.edge_count() != 2 * self.n as usize - 3 {
            return false;
        }
        if self.n <= 7 {
            self.is_laman_by_subsets()
        } else {
            self.is_laman_by_pebble()
        }
    }

    /// Exhaustive-subset Laman sparsity oracle (exponential in n).
    pub fn is_laman_by_subsets(&self) -> bool {
        if self.edge_count() != 2 * self.n as usize - 3 {
            return false;
        }
        let n = self.n as usize;
        for mask in 1u32..(1u32 << n) {
            let k = mask.count_ones() as usize;
            if k < 4 {
                continue; // at most 2k-3 edges holds automatically for simple graphs
            }
            let mut edges = 0usize;
            let m16 = mask as u16;
            for v in mask_vertices(m16) {
                edges += (self.adj[v as usize] & m16).count_ones() as usize;
            }
            edges /= 2;
            if edges > 2 * k - 3 {
                return false;
            }
        }
        true
    }

    /// (2,3)-pebble game Laman check.
    pub fn is_laman_by_pebble(&self) -> bool {
        self.edge_count() == 2 * self.n as usize - 3
            && pebble::is_tight_2_3(self.n, &self.edges())
    }

    /// 1-skeleton of a simplicial polyhedron: |E| = 3n-6 and planar
    /// (maximal planar graphs are exactly these skeleta).
    pub fn is_simplicial_skeleton(&self) -> bool {
        if self.dim != Dim::Three || self.n < 4 {
            return false;
        }
        if self.edge_count() != 3 * self.n as usize - 6 {
            return false;
        }
        planar::is_planar(self.n, &self.adj)
    }

    /// Apply a Henneberg step, adding vertex `n` attached to `step.attach`
    /// and deleting `step.removed`. The result must pass the validity check.
    pub fn apply_step(&self, step: &HennebergStep) -> Result<RigidGraph, GraphError> {
        self.check_step(step)?;
        let mut g = RigidGraph::empty(self.dim, self.n + 1);
        g.adj[..self.n as usize].copy_from_slice(&self.adj[..self.n as usize]);
        let v = self.n;
        for &a in &step.attach {
            g.add_edge(v, a);
        }
        for &(a, b) in &step.removed {
            g.remove_edge(a, b);
        }
        if !g.is_valid() {
            return Err(GraphError::ValidityViolation(match self.dim {
                Dim::Two => "Laman",
                Dim::Three => "maximal-planar",
            }));
        }
        g.provenance = self.provenance.as_ref().map(|p| {
            let mut p = p.clone();
            p.steps.push(step.clone());
            p
        });
        Ok(g)
    }

    /// Well-formedness of a step against this graph (result validity aside).
    fn check_step(&self, step: &HennebergStep) -> Result<(), GraphError> {
        if self.n as usize + 1 > MAX_N {
            return Err(GraphError::MalformedStep(format!("vertex cap {MAX_N} reached")));
        }
        let err = |m: String| Err(GraphError::MalformedStep(m));
        let mut attach = step.attach.clone();
        attach.dedup();
        if attach.len() != step.attach.len() {
            return err("attach vertices repeat".into());
        }
        if step.attach.iter().any(|&v| v >= self.n) {
            return err("attach vertex out of range".into());
        }
        for &(a, b) in &step.removed {
            if !self.has_edge(a, b) {
                return err(format!("removed edge ({a},{b}) not present"));
            }
            if !(step.attach.contains(&a) && step.attach.contains(&b)) {
                return err(format!("removed edge ({a},{b}) not inside the attach set"));
            }
        }
        match (self.dim, step.kind) {
            (Dim::Two, StepKind::H1) => {
                if step.attach.len() != 2 || !step.removed.is_empty() {
                    return err("planar H1 attaches to 2 vertices and removes nothing".into());
                }
            }
            (Dim::Two, StepKind::H2) => {
                if step.attach.len() != 3 || step.removed.len() != 1 {
                    return err("planar H2 attaches to 3 vertices and removes one edge".into());
                }
            }
            (Dim::Two, StepKind::H3) => {
                return err("H3 does not apply in the plane".into());
            }
            (Dim::Three, kind) => {
                let k = kind.k();
                if step.attach.len() != k + 2 || step.removed.len() != k - 1 {
                    return err(format!("spatial H{k} attaches to {} vertices and removes {}", k + 2, k - 1));
                }
                if !self.has_attach_cycle(&step.attach, &step.removed) {
                    return err("attach set carries no cycle avoiding the removed diagonals".into());
                }
            }
        }
        Ok(())
    }

    /// Does the attach set carry a Hamiltonian cycle (on itself, within this
    /// graph) that avoids all edges in `avoid`? The avoided edges are then
    /// chords of that cycle.
    fn has_attach_cycle(&self, attach: &[u8], avoid: &[(u8, u8)]) -> bool {
        let m = attach.len();
        debug_assert!((3..=5).contains(&m));
        let usable = |a: u8, b: u8| self.has_edge(a, b) && !avoid.contains(&ord(a, b));
        // Fix attach[0] as the cycle start; enumerate the rest.
        let mut rest: Vec<u8> = attach[1..].to_vec();
        let mut perm_ok = false;
        permute(&mut rest, 0, &mut |p| {
            if perm_ok {
                return;
            }
            let mut prev = attach[0];
            for &v in p.iter() {
                if !usable(prev, v) {
                    return;
                }
                prev = v;
            }
            if usable(prev, attach[0]) {
                perm_ok = true;
            }
        });
        perm_ok
    }

    /// Every step applicable to this graph whose application stays within the
    /// validity class. Deterministic order.
    pub fn enumerate_steps(&self) -> Vec<HennebergStep> {
        let mut out = Vec::new();
        let mut push_if_valid = |g: &RigidGraph, s: HennebergStep| {
            if g.apply_step(&s).is_ok() {
                out.push(s);
            }
        };
        match self.dim {
            Dim::Two => {
                for a in 0..self.n {
                    for b in a + 1..self.n {
                        push_if_valid(self, HennebergStep::new(StepKind::H1, vec![a, b], vec![]));
                    }
                }
                for a in 0..self.n {
                    for b in a + 1..self.n {
                        for c in b + 1..self.n {
                            for &(x, y) in &[(a, b), (a, c), (b, c)] {
                                if self.has_edge(x, y) {
                                    push_if_valid(
                                        self,
                                        HennebergStep::new(StepKind::H2, vec![a, b, c], vec![(x, y)]),
                                    );
                                }
                            }
                        }
                    }
                }
            }
            Dim::Three => {
                for kind in [StepKind::H1, StepKind::H2, StepKind::H3] {
                    let k = kind.k();
                    for attach in subsets(self.n, k + 2) {
                        let mut inner: Vec<(u8, u8)> = Vec::new();
                        for i in 0..attach.len() {
                            for j in i + 1..attach.len() {
                                if self.has_edge(attach[i], attach[j]) {
                                    inner.push((attach[i], attach[j]));
                                }
                            }
                        }
                        for removed in subsets_of(&inner, k - 1) {
                            push_if_valid(self, HennebergStep::new(kind, attach.clone(), removed));
                        }
                    }
                }
            }
        }
        out
    }

    /// Reverse moves: every `(prior graph, forward step)` pair such that
    /// applying the step to the prior graph reproduces this graph exactly.
    pub(crate) fn reverse_moves(&self) -> Vec<(RigidGraph, HennebergStep, u8)> {
        let mut out = Vec::new();
        if self.n <= self.dim.base_n() {
            return out;
        }
        match self.dim {
            Dim::Two => {
                for v in 0..self.n {
                    let nb = self.neighbors(v);
                    match nb.len() {
                        2 => {
                            let g = self.without_vertex(v);
                            if g.is_laman() {
                                let attach = shift_labels(&nb, v);
                                out.push((g, HennebergStep::new(StepKind::H1, attach, vec![]), v));
                            }
                        }
                        3 => {
                            for i in 0..3 {
                                for j in i + 1..3 {
                                    if self.has_edge(nb[i], nb[j]) {
                                        continue;
                                    }
                                    let mut g = self.without_vertex(v);
                                    let (a, b) = (shift(nb[i], v), shift(nb[j], v));
                                    g.add_edge(a, b);
                                    if g.is_laman() {
                                        let attach = shift_labels(&nb, v);
                                        out.push((
                                            g,
                                            HennebergStep::new(StepKind::H2, attach, vec![(a, b)]),
                                            v,
                                        ));
                                    }
                                }
                            }
                        }
                        _ => {}
                    }
                }
            }
            Dim::Three => {
                for v in 0..self.n {
                    let nb = self.neighbors(v);
                    let k = match nb.len() {
                        3 => 1,
                        4 => 2,
                        5 => 3,
                        _ => continue,
                    };
                    let mut missing: Vec<(u8, u8)> = Vec::new();
                    for i in 0..nb.len() {
                        for j in i + 1..nb.len() {
                            if !self.has_edge(nb[i], nb[j]) {
                                missing.push((nb[i], nb[j]));
                            }
                        }
                    }
                    for add in subsets_of(&missing, k - 1) {
                        let mut g = self.without_vertex(v);
                        let add_shifted: Vec<(u8, u8)> =
                            add.iter().map(|&(a, b)| (shift(a, v), shift(b, v))).collect();
                        for &(a, b) in &add_shifted {
                            g.add_edge(a, b);
                        }
                        let attach = shift_labels(&nb, v);
                        if !g.has_attach_cycle(&attach, &add_shifted) {
                            continue;
                        }
                        if !g.is_simplicial_skeleton() {
                            continue;
                        }
                        let kind = match k {
                            1 => StepKind::H1,
                            2 => StepKind::H2,
                            _ => StepKind::H3,
                        };
                        out.push((g, HennebergStep::new(kind, attach, add_shifted), v));
                    }
                }
            }
        }
        out
    }

    /// Henneberg classification by backtracking reverse search. Returns the
    /// class and a witness sequence maximizing the number of H1 steps.
    pub fn classify_henneberg(&self) -> Result<(HClass, HennebergSequence), GraphError> {
        if !self.is_valid() {
            return Err(GraphError::NoSequenceFound);
        }
        let mut memo: HashMap<(u8, [u16; MAX_N]), Option<(usize, Vec<HennebergStep>, Vec<u8>)>> =
            HashMap::new();
        let best = search_sequences(self, &mut memo).ok_or(GraphError::NoSequenceFound)?;
        let (h1, steps, _map) = best;
        let total = steps.len();
        let seq = HennebergSequence { dim: self.dim, steps };
        debug_assert_eq!(seq.h1_count(), h1);
        let class = if h1 == total { HClass::H1 } else { HClass::H2 };
        Ok((class, seq))
    }
}

/// Reverse-search core. Returns `(h1 count, forward steps, label map)` where
/// `label map[original vertex] = replay label`; the replayed sequence is
/// isomorphic to `g` via that map.
fn search_sequences(
    g: &RigidGraph,
    memo: &mut HashMap<(u8, [u16; MAX_N]), Option<(usize, Vec<HennebergStep>, Vec<u8>)>>,
) -> Option<(usize, Vec<HennebergStep>, Vec<u8>)> {
    let key = (g.n, g.adj);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let base_n = g.dim.base_n();
    if g.n == base_n {
        // The base graph is complete; identity labeling works.
        let res = Some((0, Vec::new(), (0..base_n).collect()));
        memo.insert(key, res.clone());
        return res;
    }
    let mut best: Option<(usize, Vec<HennebergStep>, Vec<u8>)> = None;
    let moves = g.reverse_moves();
    let max_steps = (g.n - base_n) as usize;
    for (prior, step, removed_v) in moves {
        if let Some((sub_h1, sub_steps, sub_map)) = search_sequences(&prior, memo) {
            // Translate the forward step into replay labels.
            let tr = |u: u8| sub_map[u as usize];
            let attach = step.attach.iter().map(|&u| tr(u)).collect::<Vec<_>>();
            let removed = step.removed.iter().map(|&(a, b)| (tr(a), tr(b))).collect::<Vec<_>>();
            let fwd = HennebergStep::new(step.kind, attach, removed);
            let h1 = sub_h1 + usize::from(fwd.kind == StepKind::H1);
            let mut steps = sub_steps;
            steps.push(fwd);
            // Label map for g: removed vertex becomes the freshly added label.
            let mut map = Vec::with_capacity(g.n as usize);
            for u in 0..g.n {
                if u == removed_v {
                    map.push(prior.n); // replay label of the new vertex
                } else {
                    map.push(sub_map[shift(u, removed_v) as usize]);
                }
            }
            let better = match &best {
                None => true,
                Some((bh1, bsteps, _)) => {
                    h1 > *bh1 || (h1 == *bh1 && encode_steps(&steps) < encode_steps(bsteps))
                }
            };
            if better {
                best = Some((h1, steps, map));
                if h1 == max_steps {
                    break; // cannot do better than all-H1
                }
            }
        }
    }
    memo.insert(key, best.clone());
    best
}

fn encode_steps(steps: &[HennebergStep]) -> String {
    steps.iter().map(|s| s.encode()).collect::<Vec<_>>().join(";")
}

fn shift(u: u8, removed: u8) -> u8 {
    if u > removed {
        u - 1
    } else {
        u
    }
}

fn shift_labels(vs: &[u8], removed: u8) -> Vec<u8> {
    vs.iter().map(|&u| shift(u, removed)).collect()
}

pub(crate) fn mask_vertices(mut m: u16) -> Vec<u8> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        let v = m.trailing_zeros() as u8;
        out.push(v);
        m &= m - 1;
    }
    out
}

/// All k-subsets of 0..n in lexicographic order.
pub(crate) fn subsets(n: u8, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: u8, k: usize, start: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

pub(crate) fn subsets_of<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut idx = Vec::with_capacity(k);
    fn rec<T: Clone>(items: &[T], k: usize, start: usize, idx: &mut Vec<usize>, out: &mut Vec<Vec<T>>) {
        if idx.len() == k {
            out.push(idx.iter().map(|&i| items[i].clone()).collect());
            return;
        }
        for i in start..items.len() {
            idx.push(i);
            rec(items, k, i + 1, idx, out);
            idx.pop();
        }
    }
    rec(items, k, 0, &mut idx, &mut out);
    out
}

fn permute<T: Copy>(items: &mut [T], at: usize, f: &mut impl FnMut(&[T])) {
    if at == items.len() {
        f(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, f);
        items.swap(at, i);
    }
}

// ---------------------------------------------------------------------------
// JSON form: {"dim": 2, "n": 6, "edges": [[0,1], ...], "sequence": [...]}
// with edges in lexicographic order, smaller endpoint first.

#[derive(Serialize, Deserialize)]
struct GraphJson {
    dim: Dim,
    n: u8,
    edges: Vec<[u8; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sequence: Option<HennebergSequence>,
}

impl Serialize for RigidGraph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson {
            dim: self.dim,
            n: self.n,
            edges: self.edges().iter().map(|&(a, b)| [a, b]).collect(),
            sequence: self.provenance.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RigidGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        let edges: Vec<(u8, u8)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
        let mut g = RigidGraph::from_edges(raw.dim, raw.n, &edges).map_err(D::Error::custom)?;
        g.provenance = raw.sequence;
        Ok(g)
    }
}
