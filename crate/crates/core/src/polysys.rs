//! Pinned sparse polynomial systems as lattice supports.
//!
//! For a graph with generic edge lengths, the Euclidean embeddings are the
//! solutions of the edge-length system once a pinning fixes an edge (2D) or
//! a triangle (3D) to quotient out rigid motions. Only the supports matter
//! for mixed volumes, so coefficients are never materialized: a monomial is
//! included exactly when its coefficient is generically nonzero under the
//! canonical pinning constants.
//!
//! Two formulations are built. The naive one uses the quadratic edge
//! equations directly. The augmented one introduces w_i = |p_i|^2 per free
//! vertex, turning each edge equation into the bilinear form
//! w_i + w_j - 2<p_i, p_j> = l_ij^2, which has a strictly smaller mixed
//! volume. The naive formulation in space admits a toric face-system
//! solution (the degeneracy witness below), so its mixed volume is never
//! tight.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Dim, RigidGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolysysError {
    #[error("incompatible pinning: {0}")]
    IncompatiblePinning(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formulation {
    Naive,
    Augmented,
}

impl Formulation {
    pub fn as_str(self) -> &'static str {
        match self {
            Formulation::Naive => "naive",
            Formulation::Augmented => "augmented",
        }
    }
}

impl std::str::FromStr for Formulation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "naive" => Ok(Formulation::Naive),
            "augmented" => Ok(Formulation::Augmented),
            other => Err(format!("unknown formulation `{other}`")),
        }
    }
}

/// A choice of pinned vertices with canonical coordinate constants.
///
/// 2D: the pinned pair is an edge placed as a unit segment on the x-axis
/// with the first vertex at the origin. 3D: the pinned triple is a triangle
/// with the first vertex at the origin, the second on the x-axis and the
/// third in the xy-plane. The constants are placeholders for generic values
/// with that zero pattern; supports depend only on the pattern.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Pinning {
    pub dim: Dim,
    pub fixed: Vec<u8>,
    pub coords: Vec<[i64; 3]>,
}

impl Pinning {
    pub fn edge(u: u8, v: u8) -> Pinning {
        Pinning { dim: Dim::Two, fixed: vec![u, v], coords: vec![[0, 0, 0], [1, 0, 0]] }
    }

    pub fn triangle(a: u8, b: u8, c: u8) -> Pinning {
        Pinning {
            dim: Dim::Three,
            fixed: vec![a, b, c],
            coords: vec![[0, 0, 0], [1, 0, 0], [1, 1, 0]],
        }
    }

    pub fn is_pinned(&self, v: u8) -> bool {
        self.fixed.contains(&v)
    }

    /// Zero pattern of the pinned vertex at position `pos`: which of its
    /// coordinates is generically nonzero.
    fn nonzero_coords(&self, pos: usize) -> [bool; 3] {
        let c = self.coords[pos];
        [c[0] != 0, c[1] != 0, c[2] != 0]
    }

    pub fn label(&self) -> String {
        let ids: Vec<String> = self.fixed.iter().map(|v| v.to_string()).collect();
        ids.join("-")
    }
}

/// All pinning candidates in canonical order: every edge (2D) or every
/// triangle (3D), endpoints ascending.
pub fn pinning_candidates(g: &RigidGraph) -> Vec<Pinning> {
    match g.dim() {
        Dim::Two => g.edges().iter().map(|&(u, v)| Pinning::edge(u, v)).collect(),
        Dim::Three => g.triangles().iter().map(|t| Pinning::triangle(t[0], t[1], t[2])).collect(),
    }
}

/// Square sparse system given by one lattice support per equation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SupportSystem {
    pub vars: Vec<String>,
    pub supports: Vec<Vec<Vec<i32>>>,
    pub formulation: Formulation,
}

impl SupportSystem {
    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_square(&self) -> bool {
        self.supports.len() == self.num_vars()
    }

    /// Total degree of the largest monomial across all supports.
    pub fn max_total_degree(&self) -> i32 {
        self.supports
            .iter()
            .flat_map(|s| s.iter())
            .map(|pt| pt.iter().sum::<i32>())
            .max()
            .unwrap_or(0)
    }
}

struct VarTable {
    dim: Dim,
    free: Vec<u8>,
    augmented: bool,
}

impl VarTable {
    fn new(g: &RigidGraph, p: &Pinning, f: Formulation) -> VarTable {
        let free: Vec<u8> = (0..g.n()).filter(|&v| !p.is_pinned(v)).collect();
        VarTable { dim: g.dim(), free, augmented: f == Formulation::Augmented }
    }

    fn coords_per_vertex(&self) -> usize {
        self.dim.as_u8() as usize
    }

    fn num_vars(&self) -> usize {
        let c = self.free.len() * self.coords_per_vertex();
        if self.augmented {
            c + self.free.len()
        } else {
            c
        }
    }

    /// Variable index of coordinate `axis` (0=x, 1=y, 2=z) of free vertex `v`.
    fn coord(&self, v: u8, axis: usize) -> usize {
        let i = self.free.iter().position(|&u| u == v).expect("free vertex");
        i * self.coords_per_vertex() + axis
    }

    /// Variable index of w_v.
    fn w(&self, v: u8) -> usize {
        debug_assert!(self.augmented);
        let i = self.free.iter().position(|&u| u == v).expect("free vertex");
        self.free.len() * self.coords_per_vertex() + i
    }

    fn names(&self) -> Vec<String> {
        let axes = ["x", "y", "z"];
        let mut out = Vec::with_capacity(self.num_vars());
        for &v in &self.free {
            for axis in 0..self.coords_per_vertex() {
                out.push(format!("{}{}", axes[axis], v));
            }
        }
        if self.augmented {
            for &v in &self.free {
                out.push(format!("w{v}"));
            }
        }
        out
    }
}

fn point(n: usize, entries: &[(usize, i32)]) -> Vec<i32> {
    let mut pt = vec![0; n];
    for &(i, e) in entries {
        pt[i] += e;
    }
    pt
}

/// Build the pinned support system for a graph.
///
/// Pinned coordinates are substituted by their constants: their monomials
/// collapse into constant or lower-order terms, and edges inside the pinned
/// set are dropped entirely, which keeps the system square.
pub fn build_system(
    g: &RigidGraph,
    p: &Pinning,
    f: Formulation,
) -> Result<SupportSystem, PolysysError> {
    if p.dim != g.dim() {
        return Err(PolysysError::IncompatiblePinning("dimension mismatch".into()));
    }
    match g.dim() {
        Dim::Two => {
            if p.fixed.len() != 2 || !g.has_edge(p.fixed[0], p.fixed[1]) {
                return Err(PolysysError::IncompatiblePinning(format!(
                    "fixed pair {:?} is not an edge",
                    p.fixed
                )));
            }
        }
        Dim::Three => {
            let ok = p.fixed.len() == 3
                && g.has_edge(p.fixed[0], p.fixed[1])
                && g.has_edge(p.fixed[0], p.fixed[2])
                && g.has_edge(p.fixed[1], p.fixed[2]);
            if !ok {
                return Err(PolysysError::IncompatiblePinning(format!(
                    "fixed triple {:?} is not a triangle",
                    p.fixed
                )));
            }
        }
    }
    if p.fixed.iter().any(|&v| v >= g.n()) {
        return Err(PolysysError::IncompatiblePinning("pinned vertex out of range".into()));
    }
    let vt = VarTable::new(g, p, f);
    let nv = vt.num_vars();
    let dim = vt.coords_per_vertex();
    let mut supports: Vec<Vec<Vec<i32>>> = Vec::new();

    if vt.augmented {
        // definition equations w_v = sum of squared coordinates
        for &v in &vt.free {
            let mut s = vec![point(nv, &[(vt.w(v), 1)])];
            for axis in 0..dim {
                s.push(point(nv, &[(vt.coord(v, axis), 2)]));
            }
            supports.push(s);
        }
    }

    for (a, b) in g.edges() {
        let ap = p.fixed.iter().position(|&v| v == a);
        let bp = p.fixed.iter().position(|&v| v == b);
        match (ap, bp) {
            (Some(_), Some(_)) => continue, // identity in constants
            (None, None) => {
                let mut s = Vec::new();
                if vt.augmented {
                    // w_a + w_b - 2<p_a, p_b> = l^2
                    s.push(point(nv, &[(vt.w(a), 1)]));
                    s.push(point(nv, &[(vt.w(b), 1)]));
                    for axis in 0..dim {
                        s.push(point(nv, &[(vt.coord(a, axis), 1), (vt.coord(b, axis), 1)]));
                    }
                } else {
                    // |p_a - p_b|^2 = l^2
                    for axis in 0..dim {
                        s.push(point(nv, &[(vt.coord(a, axis), 2)]));
                        s.push(point(nv, &[(vt.coord(a, axis), 1), (vt.coord(b, axis), 1)]));
                        s.push(point(nv, &[(vt.coord(b, axis), 2)]));
                    }
                }
                s.push(point(nv, &[]));
                supports.push(s);
            }
            (free_pos, pin_pos) => {
                let (v, pos) = match (free_pos, pin_pos) {
                    (None, Some(pos)) => (a, pos),
                    (Some(pos), None) => (b, pos),
                    _ => unreachable!(),
                };
                let nonzero = p.nonzero_coords(pos);
                let mut s = Vec::new();
                if vt.augmented {
                    // w_v + const - 2 sum of c_axis * coord = l^2
                    s.push(point(nv, &[(vt.w(v), 1)]));
                    for axis in 0..dim {
                        if nonzero[axis] {
                            s.push(point(nv, &[(vt.coord(v, axis), 1)]));
                        }
                    }
                } else {
                    for axis in 0..dim {
                        s.push(point(nv, &[(vt.coord(v, axis), 2)]));
                        if nonzero[axis] {
                            s.push(point(nv, &[(vt.coord(v, axis), 1)]));
                        }
                    }
                }
                s.push(point(nv, &[]));
                supports.push(s);
            }
        }
    }

    let sys = SupportSystem { vars: vt.names(), supports, formulation: f };
    debug_assert!(sys.is_square(), "system must be square: {} supports vs {} vars", sys.supports.len(), nv);
    Ok(sys)
}

/// Direction vector for face systems; must be nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FaceDirection(pub Vec<i64>);

impl FaceDirection {
    pub fn new(v: Vec<i64>) -> Option<FaceDirection> {
        if v.iter().all(|&x| x == 0) {
            None
        } else {
            Some(FaceDirection(v))
        }
    }
}

/// Keep, in every support, only the points minimizing the inner product
/// with `v`.
pub fn face_system(s: &SupportSystem, v: &FaceDirection) -> SupportSystem {
    assert_eq!(v.0.len(), s.num_vars(), "direction length must match variable count");
    let supports = s
        .supports
        .iter()
        .map(|sup| {
            let val = |pt: &Vec<i32>| -> i64 {
                pt.iter().zip(&v.0).map(|(&e, &d)| e as i64 * d).sum()
            };
            let min = sup.iter().map(val).min().expect("nonempty support");
            sup.iter().filter(|pt| val(pt) == min).cloned().collect()
        })
        .collect();
    SupportSystem { vars: s.vars.clone(), supports, formulation: s.formulation }
}

/// Element of Z[i*sqrt(2)]: a + b*i*sqrt(2), so (i*sqrt(2))^2 = -2.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Zi2 {
    pub a: i64,
    pub b: i64,
}

impl Zi2 {
    pub const ZERO: Zi2 = Zi2 { a: 0, b: 0 };
    pub const ONE: Zi2 = Zi2 { a: 1, b: 0 };

    pub fn new(a: i64, b: i64) -> Zi2 {
        Zi2 { a, b }
    }

    pub fn add(self, o: Zi2) -> Zi2 {
        Zi2 { a: self.a + o.a, b: self.b + o.b }
    }

    pub fn sub(self, o: Zi2) -> Zi2 {
        Zi2 { a: self.a - o.a, b: self.b - o.b }
    }

    pub fn mul(self, o: Zi2) -> Zi2 {
        Zi2 { a: self.a * o.a - 2 * self.b * o.b, b: self.a * o.b + self.b * o.a }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl std::fmt::Display for Zi2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}*i*sqrt(2)"),
            (a, b) => write!(f, "{a}{b:+}*i*sqrt(2)"),
        }
    }
}

/// Toric point certifying the degenerate face system of the naive spatial
/// formulation, and whether it verified.
#[derive(Clone, Debug, Serialize)]
pub struct FaceWitness {
    /// One value per free variable, in variable order: (1, 1, gamma*sqrt(2))
    /// per free vertex with gamma^2 = -1, so gamma*sqrt(2) = sign * i*sqrt(2).
    pub point: Vec<Zi2>,
    pub gamma_sign: i8,
    /// Direction selecting the face: -1 on every free coordinate.
    pub direction: Vec<i64>,
}

/// Construct and verify the toric face-system witness for the naive 3D
/// system: every free vertex is placed at (1, 1, gamma*sqrt(2)), under the
/// direction that is -1 on all free coordinates. Each face equation is
/// evaluated exactly in Z[i*sqrt(2)]; the key identity is
/// 1^2 + 1^2 + (gamma*sqrt(2))^2 = 0.
pub fn degeneracy_witness(
    g: &RigidGraph,
    p: &Pinning,
    f: Formulation,
) -> Result<(FaceWitness, bool), PolysysError> {
    if f != Formulation::Naive {
        return Err(PolysysError::NotApplicable(
            "the witness concerns the naive formulation; the augmented system is the remedy".into(),
        ));
    }
    if g.dim() != Dim::Three {
        return Err(PolysysError::NotApplicable("witness is for spatial systems".into()));
    }
    let free: Vec<u8> = (0..g.n()).filter(|&v| !p.is_pinned(v)).collect();
    if free.is_empty() {
        return Err(PolysysError::NotApplicable("no free vertices".into()));
    }
    build_system(g, p, Formulation::Naive)?; // validates the pinning
    let gamma_sign: i8 = 1;
    let coord_of = |_v: u8, axis: usize| -> Zi2 {
        match axis {
            0 | 1 => Zi2::ONE,
            _ => Zi2::new(0, gamma_sign as i64), // gamma*sqrt(2) = i*sqrt(2)
        }
    };
    let mut all_zero = true;
    for (a, b) in g.edges() {
        let ap = p.is_pinned(a);
        let bp = p.is_pinned(b);
        let value = match (ap, bp) {
            (true, true) => continue,
            (false, false) => {
                // face polynomial |p_a - p_b|^2
                (0..3)
                    .map(|axis| {
                        let d = coord_of(a, axis).sub(coord_of(b, axis));
                        d.mul(d)
                    })
                    .fold(Zi2::ZERO, Zi2::add)
            }
            _ => {
                // face polynomial |p_free|^2
                let v = if ap { b } else { a };
                (0..3)
                    .map(|axis| {
                        let c = coord_of(v, axis);
                        c.mul(c)
                    })
                    .fold(Zi2::ZERO, Zi2::add)
            }
        };
        if !value.is_zero() {
            all_zero = false;
        }
    }
    let mut point = Vec::with_capacity(3 * free.len());
    for &v in &free {
        for axis in 0..3 {
            point.push(coord_of(v, axis));
        }
    }
    let toric = point.iter().all(|z| !z.is_zero());
    let direction = vec![-1i64; 3 * free.len()];
    Ok((FaceWitness { point, gamma_sign, direction }, all_zero && toric))
}
