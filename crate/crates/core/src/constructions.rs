//! Named graph generators: the special graphs from the bound tables and the
//! lower-bound families.

use thiserror::Error;

use crate::graph::{Dim, GraphError, HennebergStep, RigidGraph, StepKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error("bad parameters for `{0}`: {1}")]
    BadParams(String, String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn triangle() -> RigidGraph {
    RigidGraph::base(Dim::Two)
}

pub fn simplex3() -> RigidGraph {
    RigidGraph::base(Dim::Three)
}

/// The Desargues graph of the tables: the 3-prism. Two triangles joined by a
/// perfect matching; 3-regular, Laman.
pub fn desargues() -> RigidGraph {
    RigidGraph::from_edges(
        Dim::Two,
        6,
        &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)],
    )
    .unwrap()
}

pub fn k33() -> RigidGraph {
    let mut edges = Vec::new();
    for a in 0..3u8 {
        for b in 3..6u8 {
            edges.push((a, b));
        }
    }
    RigidGraph::from_edges(Dim::Two, 6, &edges).unwrap()
}

/// The octahedron (= cyclohexane graph): K6 minus the perfect matching
/// (0,3), (1,4), (2,5). 4-regular, maximal planar.
pub fn octahedron() -> RigidGraph {
    let mut edges = Vec::new();
    for i in 0..6u8 {
        for j in i + 1..6 {
            if j != i + 3 {
                edges.push((i, j));
            }
        }
    }
    RigidGraph::from_edges(Dim::Three, 6, &edges).unwrap()
}

/// The unique 1-skeleton on 5 vertices: the triangular bipyramid with
/// equator {0,1,2} and apexes 3, 4.
pub fn skeleton5() -> RigidGraph {
    RigidGraph::from_edges(
        Dim::Three,
        5,
        &[(0, 1), (0, 2), (1, 2), (3, 0), (3, 1), (3, 2), (4, 0), (4, 1), (4, 2)],
    )
    .unwrap()
}

/// The non-octahedral 1-skeleton on 6 vertices: bipyramid plus a vertex
/// stacked on the face {0,1,3}. Degree sequence (3,3,4,4,5,5).
pub fn g1_n6() -> RigidGraph {
    let mut edges = skeleton5().edges();
    edges.extend_from_slice(&[(0, 5), (1, 5), (3, 5)]);
    RigidGraph::from_edges(Dim::Three, 6, &edges).unwrap()
}

/// Chain of 3-prisms glued along vertical edges; copy i >= 2 shares one
/// vertical edge with copy i-1 and contributes 4 fresh vertices, so
/// n = 4c + 2.
pub fn desargues_caterpillar(copies: u8) -> Result<RigidGraph, ConstructError> {
    if copies == 0 || 4 * copies as usize + 2 > crate::graph::MAX_N {
        return Err(ConstructError::BadParams(
            "desargues_caterpillar".into(),
            format!("copies must be in 1..=3, got {copies}"),
        ));
    }
    let mut edges: Vec<(u8, u8)> = vec![(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)];
    // anchor vertical edge of the current last prism
    let (mut at, mut ab) = (2u8, 5u8);
    let mut next = 6u8;
    for _ in 1..copies {
        let (x1, x2, y1, y2) = (next, next + 1, next + 2, next + 3);
        next += 4;
        edges.extend_from_slice(&[
            (at, x1),
            (at, x2),
            (x1, x2), // top triangle {at, x1, x2}
            (ab, y1),
            (ab, y2),
            (y1, y2), // bottom triangle {ab, y1, y2}
            (x1, y1),
            (x2, y2), // new verticals
        ]);
        at = x2;
        ab = y2;
    }
    let n = 4 * copies + 2;
    Ok(RigidGraph::from_edges(Dim::Two, n, &edges)?)
}

/// Chain of octahedra sharing facets: triangles T_0, T_1, ..., T_c with an
/// octahedron spanned between consecutive triangles, so every copy adds 3
/// fresh vertices and n = 3c + 3.
pub fn cyclohexane_caterpillar(copies: u8) -> Result<RigidGraph, ConstructError> {
    if copies == 0 || 3 * copies as usize + 3 > crate::graph::MAX_N {
        return Err(ConstructError::BadParams(
            "cyclohexane_caterpillar".into(),
            format!("copies must be in 1..=4, got {copies}"),
        ));
    }
    let mut edges: Vec<(u8, u8)> = vec![(0, 1), (0, 2), (1, 2)];
    for k in 1..=copies {
        let prev = [3 * (k - 1), 3 * (k - 1) + 1, 3 * (k - 1) + 2];
        let cur = [3 * k, 3 * k + 1, 3 * k + 2];
        edges.extend_from_slice(&[(cur[0], cur[1]), (cur[0], cur[2]), (cur[1], cur[2])]);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    edges.push((prev[i], cur[j]));
                }
            }
        }
    }
    let n = 3 * copies + 3;
    Ok(RigidGraph::from_edges(Dim::Three, n, &edges)?)
}

/// All-H1 chain on n vertices. In the plane each new vertex attaches to
/// {0,1}; in space vertices are stacked on fresh faces so the skeleton
/// condition is preserved at every step.
pub fn h1_chain(n: u8, dim: Dim) -> Result<RigidGraph, ConstructError> {
    let base_n = dim.base_n();
    if n < base_n || n as usize > crate::graph::MAX_N {
        return Err(ConstructError::BadParams(
            "h1_chain".into(),
            format!("n must be in {}..={}, got {n}", base_n, crate::graph::MAX_N),
        ));
    }
    let mut g = RigidGraph::base(dim);
    for v in base_n..n {
        let attach = match dim {
            Dim::Two => vec![0, 1],
            Dim::Three => {
                if v == 4 {
                    vec![0, 1, 2]
                } else {
                    vec![0, 1, v - 1]
                }
            }
        };
        g = g.apply_step(&HennebergStep::new(StepKind::H1, attach, vec![]))?;
    }
    Ok(g)
}

/// Parse a graph name with optional `:`-separated parameters, e.g.
/// `desargues`, `cyclohexane_caterpillar:2`, `h1_chain:7:2`.
pub fn make(spec: &str) -> Result<RigidGraph, ConstructError> {
    let mut parts = spec.split(':');
    let name = parts.next().unwrap_or_default();
    let params: Vec<&str> = parts.collect();
    let want = |k: usize| -> Result<(), ConstructError> {
        if params.len() == k {
            Ok(())
        } else {
            Err(ConstructError::BadParams(
                name.into(),
                format!("expected {k} parameter(s), got {}", params.len()),
            ))
        }
    };
    let parse_u8 = |s: &str| -> Result<u8, ConstructError> {
        s.parse::<u8>()
            .map_err(|_| ConstructError::BadParams(name.into(), format!("`{s}` is not a small integer")))
    };
    match name {
        "triangle" => {
            want(0)?;
            Ok(triangle())
        }
        "simplex3" => {
            want(0)?;
            Ok(simplex3())
        }
        "desargues" => {
            want(0)?;
            Ok(desargues())
        }
        "k33" => {
            want(0)?;
            Ok(k33())
        }
        "cyclohexane" | "octahedron" => {
            want(0)?;
            Ok(octahedron())
        }
        "g1_n6" => {
            want(0)?;
            Ok(g1_n6())
        }
        "skeleton5" => {
            want(0)?;
            Ok(skeleton5())
        }
        "desargues_caterpillar" => {
            want(1)?;
            desargues_caterpillar(parse_u8(params[0])?)
        }
        "cyclohexane_caterpillar" => {
            want(1)?;
            cyclohexane_caterpillar(parse_u8(params[0])?)
        }
        "h1_chain" => {
            want(2)?;
            let n = parse_u8(params[0])?;
            let dim = Dim::from_u8(parse_u8(params[1])?)
                .ok_or_else(|| ConstructError::BadParams(name.into(), "dim must be 2 or 3".into()))?;
            h1_chain(n, dim)
        }
        other => Err(ConstructError::UnknownName(other.to_string())),
    }
}
