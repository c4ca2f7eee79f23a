//! Inclusion–exclusion mixed-volume oracle.
//!
//! MV(P_1, ..., P_n) = sum over nonempty S of (-1)^{n-|S|} Vol_n(sum_{i in S} P_i)
//! with the normalization MV(P, ..., P) = n! Vol(P). Minkowski sums are built
//! incrementally with vertex pruning; volumes come from an exact integer
//! H-representation: facets are found by incremental insertion (candidate
//! hyperplanes from visible/invisible facet ridges, kept only if they verify
//! against every point), and the volume is a recursive sum of facet cones.
//! Nothing here is shared with the lifting-based algorithm in `mixedvol`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::mixedvol::MixedVolError;
use crate::polysys::SupportSystem;

const ORACLE_MAX_VARS: usize = 5;

type Pt = Vec<i128>;

#[derive(Clone, Debug)]
struct Facet {
    a: Pt,
    b: i128,
    tight: Vec<usize>, // indices into the active point list
}

fn dot(a: &[i128], x: &[i128]) -> i128 {
    a.iter().zip(x).map(|(&u, &v)| u * v).sum()
}

/// Rank of the difference lattice of a point set. Elimination runs over
/// big integers: cross-multiplication growth can overrun fixed-width words
/// when the inputs are themselves minors (e.g. facet normals).
fn affine_rank(points: &[Pt], d: usize) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let mut rows: Vec<Vec<BigInt>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(&x, &y)| BigInt::from(x - y)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..d {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let num = rows[r][col].clone();
                let den = rows[rank][col].clone();
                for c in 0..d {
                    rows[r][c] = &rows[r][c] * &den - &num * &rows[rank][c];
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn primitive(mut v: Pt, mut b: i128) -> (Pt, i128) {
    let mut g = b.abs();
    for &x in &v {
        g = gcd(g, x);
    }
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
        b /= g;
    }
    (v, b)
}

/// Normal of the hyperplane spanned by a point set of affine rank d-1,
/// or None when the rank is off.
fn hyperplane(points: &[&Pt], d: usize) -> Option<(Pt, i128)> {
    if points.len() < d {
        return None;
    }
    let base = points[0];
    let mut rows: Vec<Vec<BigInt>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(&x, &y)| BigInt::from(x - y)).collect())
        .collect();
    // exact elimination to reduced row echelon shape
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..d {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let num = rows[i][col].clone();
                let den = rows[r][col].clone();
                for c in 0..d {
                    rows[i][c] = &rows[i][c] * &den - &num * &rows[r][c];
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if r != d - 1 {
        return None; // not a hyperplane spanner
    }
    // one-dimensional nullspace: set the free coordinate to the product of
    // pivot entries and back-substitute
    let free_col = (0..d).find(|c| !pivots.contains(c)).expect("one free column");
    let mut normal = vec![BigInt::zero(); d];
    normal[free_col] = BigInt::one();
    for (i, &col) in pivots.iter().enumerate().rev() {
        // rows[i] . normal = 0  =>  normal[col] = -(rest)/rows[i][col]
        let mut rest = BigInt::zero();
        for c in 0..d {
            if c != col {
                rest += &rows[i][c] * &normal[c];
            }
        }
        // scale the whole normal to keep integrality
        let piv = rows[i][col].clone();
        let g = num_integer::Integer::gcd(&rest, &piv);
        let scale = &piv / &g;
        if !scale.is_one() {
            for x in normal.iter_mut() {
                *x *= &scale;
            }
            rest *= &scale;
        }
        normal[col] = -&rest / &piv;
    }
    // make primitive while still in big integers, then narrow
    let mut g = BigInt::zero();
    for x in &normal {
        g = num_integer::Integer::gcd(&g, x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in normal.iter_mut() {
            *x /= &g;
        }
    }
    let normal: Pt = normal
        .iter()
        .map(|x| x.to_i128().expect("primitive normals of small lattice points stay narrow"))
        .collect();
    let b = dot(&normal, base);
    Some(primitive(normal, b))
}

/// Exact H-representation of the hull of a full-dimensional point set.
fn hrep(points: &[Pt], d: usize) -> Option<Vec<Facet>> {
    // greedy initial simplex
    let mut simplex: Vec<usize> = vec![0];
    for (i, _) in points.iter().enumerate().skip(1) {
        if simplex.len() == d + 1 {
            break;
        }
        let mut trial: Vec<Pt> = simplex.iter().map(|&j| points[j].clone()).collect();
        trial.push(points[i].clone());
        if affine_rank(&trial, d) == trial.len() - 1 {
            simplex.push(i);
        }
    }
    if simplex.len() != d + 1 {
        return None;
    }
    // orientation reference: (d+1) * centroid of the simplex
    let mut refpt = vec![0i128; d];
    for &i in &simplex {
        for c in 0..d {
            refpt[c] += points[i][c];
        }
    }
    let scale = (d + 1) as i128;
    let orient = |a: &Pt, b: i128| -> i128 { dot(a, &refpt) - scale * b };

    let mut facets: Vec<Facet> = Vec::new();
    for skip in 0..=d {
        let face: Vec<&Pt> = simplex
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != skip)
            .map(|(_, &i)| &points[i])
            .collect();
        let (mut a, mut b) = hyperplane(&face, d).expect("simplex facets span hyperplanes");
        let o = orient(&a, b);
        debug_assert!(o != 0, "centroid is interior");
        if o > 0 {
            a = a.iter().map(|&x| -x).collect();
            b = -b;
        }
        facets.push(Facet { a, b, tight: Vec::new() });
    }
    let mut active: Vec<usize> = simplex.clone();
    for f in facets.iter_mut() {
        f.tight = active.iter().copied().filter(|&i| dot(&f.a, &points[i]) == f.b).collect();
    }
    for (idx, p) in points.iter().enumerate() {
        if simplex.contains(&idx) {
            continue;
        }
        let visible: Vec<usize> =
            (0..facets.len()).filter(|&fi| dot(&facets[fi].a, p) > facets[fi].b).collect();
        if visible.is_empty() {
            for f in facets.iter_mut() {
                if dot(&f.a, p) == f.b {
                    f.tight.push(idx);
                }
            }
            active.push(idx);
            continue;
        }
        let mut next: Vec<Facet> = Vec::new();
        for (fi, f) in facets.iter().enumerate() {
            if !visible.contains(&fi) {
                let mut f = f.clone();
                if dot(&f.a, p) == f.b {
                    f.tight.push(idx);
                }
                next.push(f);
            }
        }
        // candidate facets through p and a ridge between a visible and an
        // invisible facet; verification against all points filters the rest
        let mut seen: Vec<(Pt, i128)> = next.iter().map(|f| (f.a.clone(), f.b)).collect();
        for &fv in &visible {
            for (fi, f) in facets.iter().enumerate() {
                if visible.contains(&fi) {
                    continue;
                }
                let ridge: Vec<usize> = facets[fv]
                    .tight
                    .iter()
                    .copied()
                    .filter(|i| f.tight.contains(i))
                    .collect();
                if ridge.len() < d - 1 {
                    continue;
                }
                let mut span: Vec<&Pt> = vec![p];
                span.extend(ridge.iter().map(|&i| &points[i]));
                let Some((mut a, mut b)) = hyperplane(&span, d) else {
                    continue;
                };
                let o = orient(&a, b);
                if o == 0 {
                    continue;
                }
                if o > 0 {
                    a = a.iter().map(|&x| -x).collect();
                    b = -b;
                }
                if seen.contains(&(a.clone(), b)) {
                    continue;
                }
                let mut tight = vec![idx];
                let mut valid = true;
                for &i in &active {
                    match dot(&a, &points[i]).cmp(&b) {
                        std::cmp::Ordering::Greater => {
                            valid = false;
                            break;
                        }
                        std::cmp::Ordering::Equal => tight.push(i),
                        std::cmp::Ordering::Less => {}
                    }
                }
                if !valid {
                    continue;
                }
                seen.push((a.clone(), b));
                next.push(Facet { a, b, tight });
            }
        }
        active.push(idx);
        facets = next;
    }
    Some(facets)
}

/// Exact Euclidean volume of the hull of integer points in R^d.
/// Zero when the set is not full-dimensional.
fn polytope_volume(points: &[Pt], d: usize) -> BigRational {
    if d == 0 {
        return BigRational::one();
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if d == 1 {
        let min = pts.iter().map(|p| p[0]).min().unwrap();
        let max = pts.iter().map(|p| p[0]).max().unwrap();
        return BigRational::from_integer(BigInt::from(max - min));
    }
    if affine_rank(&pts, d) < d {
        return BigRational::zero();
    }
    let facets = hrep(&pts, d).expect("full-dimensional");
    let origin = &pts[0];
    let mut total = BigRational::zero();
    for f in &facets {
        let height = f.b - dot(&f.a, origin);
        if height <= 0 {
            continue; // origin lies on this facet's hyperplane
        }
        // project out the coordinate with the largest |normal| entry
        let k = (0..d).max_by_key(|&c| f.a[c].abs()).unwrap();
        debug_assert!(f.a[k] != 0);
        let proj: Vec<Pt> = f
            .tight
            .iter()
            .map(|&i| {
                pts[i]
                    .iter()
                    .enumerate()
                    .filter(|(c, _)| *c != k)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let base = polytope_volume(&proj, d - 1);
        // cone volume = |b - a.o| * vol(proj) / (d * |a_k|)
        let num = BigRational::from_integer(BigInt::from(height));
        let den = BigRational::from_integer(BigInt::from(d as i128 * f.a[k].abs()));
        total += num * base / den;
    }
    total
}

/// Keep only hull vertices: points whose tight facet normals span R^d.
fn hull_vertices(points: Vec<Pt>, d: usize) -> Vec<Pt> {
    let mut pts = points;
    pts.sort();
    pts.dedup();
    if pts.len() <= d + 1 || affine_rank(&pts, d) < d {
        return pts;
    }
    let Some(facets) = hrep(&pts, d) else {
        return pts;
    };
    let mut keep = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        let normals: Vec<Pt> = facets
            .iter()
            .filter(|f| f.tight.contains(&i))
            .map(|f| f.a.clone())
            .collect();
        if normals.len() >= d {
            // linear rank of the normals
            let mut with_zero = vec![vec![0i128; d]];
            with_zero.extend(normals);
            if affine_rank(&with_zero, d) == d {
                keep.push(p.clone());
            }
        }
    }
    keep
}

fn minkowski_sum(a: &[Pt], b: &[Pt], d: usize) -> Vec<Pt> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            out.push(p.iter().zip(q).map(|(&x, &y)| x + y).collect());
        }
    }
    hull_vertices(out, d)
}

/// Inclusion–exclusion mixed volume; exact, limited to 5 variables.
pub fn mixed_volume_oracle(s: &SupportSystem) -> Result<u64, MixedVolError> {
    let n = s.num_vars();
    if n > ORACLE_MAX_VARS {
        return Err(MixedVolError::TooLarge(ORACLE_MAX_VARS));
    }
    if s.supports.len() != n {
        return Err(MixedVolError::DimensionMismatch(s.supports.len(), n));
    }
    if n == 0 {
        return Ok(1);
    }
    let supports: Vec<Vec<Pt>> = s
        .supports
        .iter()
        .map(|sup| {
            if sup.is_empty() {
                return Err(MixedVolError::InvalidSupport("empty support".into()));
            }
            Ok(sup.iter().map(|pt| pt.iter().map(|&e| e as i128).collect()).collect())
        })
        .collect::<Result<_, _>>()?;
    // sum sets per subset mask, built from the mask without its lowest bit
    let mut sums: Vec<Option<Vec<Pt>>> = vec![None; 1 << n];
    let mut total = BigRational::zero();
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let set = if rest == 0 {
            hull_vertices(supports[low].clone(), n)
        } else {
            let prev = sums[rest].as_ref().expect("smaller masks first");
            minkowski_sum(prev, &supports[low], n)
        };
        let vol = polytope_volume(&set, n);
        sums[mask] = Some(set);
        let sign = if (n - mask.count_ones() as usize) % 2 == 0 { 1 } else { -1 };
        if sign > 0 {
            total += vol;
        } else {
            total -= vol;
        }
    }
    assert!(total.is_integer(), "lattice polarization sums to an integer");
    let v = total.to_integer();
    assert!(!v.is_negative(), "mixed volumes are nonnegative");
    v.to_u64().ok_or(MixedVolError::ValueOverflow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::Formulation;

    fn sys(vars: usize, supports: Vec<Vec<Vec<i32>>>) -> SupportSystem {
        SupportSystem {
            vars: (0..vars).map(|i| format!("t{i}")).collect(),
            supports,
            formulation: Formulation::Naive,
        }
    }

    fn vol_of(pts: &[&[i128]], d: usize) -> BigRational {
        let v: Vec<Pt> = pts.iter().map(|p| p.to_vec()).collect();
        polytope_volume(&v, d)
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn volumes_of_simple_bodies() {
        assert_eq!(vol_of(&[&[0, 0], &[1, 0], &[0, 1]], 2), ratio(1, 2));
        assert_eq!(vol_of(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]], 2), ratio(4, 1));
        assert_eq!(
            vol_of(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 3),
            ratio(1, 6)
        );
        // unit cube with interior and face points sprinkled in
        assert_eq!(
            vol_of(
                &[
                    &[0, 0, 0],
                    &[1, 0, 0],
                    &[0, 1, 0],
                    &[0, 0, 1],
                    &[1, 1, 0],
                    &[1, 0, 1],
                    &[0, 1, 1],
                    &[1, 1, 1],
                ],
                3
            ),
            ratio(1, 1)
        );
        // lower-dimensional set
        assert_eq!(vol_of(&[&[0, 0], &[1, 1], &[2, 2]], 2), ratio(0, 1));
    }

    #[test]
    fn volume_exact_with_large_coordinates() {
        // 4-simplex with coordinates around 10^4: facet normals reach ~10^12
        // and the elimination must stay exact at that scale
        let m: [[i128; 4]; 4] = [
            [9973, -214, 511, 7919],
            [-1777, 8663, 0, 1],
            [345, 6007, -9001, 253],
            [12, -8087, 4441, 9859],
        ];
        let mut pts: Vec<Pt> = vec![vec![0; 4]];
        for row in &m {
            pts.push(row.to_vec());
        }
        fn det3(a: [[i128; 3]; 3]) -> i128 {
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        }
        let mut det = 0i128;
        for r in 0..4 {
            let mut minor = [[0i128; 3]; 3];
            let mut mr = 0;
            for rr in 0..4 {
                if rr == r {
                    continue;
                }
                for cc in 1..4 {
                    minor[mr][cc - 1] = m[rr][cc];
                }
                mr += 1;
            }
            let sign = if r % 2 == 0 { 1 } else { -1 };
            det += sign * m[r][0] * det3(minor);
        }
        let expected = BigRational::new(BigInt::from(det.abs()), BigInt::from(24));
        assert_eq!(polytope_volume(&pts, 4), expected);
    }

    #[test]
    fn cross_polytope_volume() {
        let mut pts: Vec<Pt> = Vec::new();
        for c in 0..4 {
            for s in [-1i128, 1] {
                let mut p = vec![0i128; 4];
                p[c] = s;
                pts.push(p);
            }
        }
        // vol of the 4-dimensional cross polytope = 2^4 / 4!
        assert_eq!(polytope_volume(&pts, 4), ratio(16, 24));
    }

    #[test]
    fn oracle_on_segments_and_simplices() {
        let s = sys(1, vec![vec![vec![0], vec![2]]]);
        assert_eq!(mixed_volume_oracle(&s).unwrap(), 2);

        for n in 1..=4usize {
            let mut simplex: Vec<Vec<i32>> = vec![vec![0; n]];
            for i in 0..n {
                let mut pt = vec![0; n];
                pt[i] = 1;
                simplex.push(pt);
            }
            let s = sys(n, vec![simplex; n]);
            assert_eq!(mixed_volume_oracle(&s).unwrap(), 1, "n={n}");
        }
    }

    #[test]
    fn oracle_normalization_square() {
        let square = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        let s = sys(2, vec![square.clone(), square]);
        assert_eq!(mixed_volume_oracle(&s).unwrap(), 2);
    }

    #[test]
    fn oracle_full_quadratics() {
        let full: Vec<Vec<i32>> = vec![
            vec![0, 0],
            vec![1, 0],
            vec![0, 1],
            vec![2, 0],
            vec![1, 1],
            vec![0, 2],
        ];
        let s = sys(2, vec![full.clone(), full]);
        assert_eq!(mixed_volume_oracle(&s).unwrap(), 4);
    }

    #[test]
    fn oracle_simplex_naive_spheres() {
        // three pinned sphere equations in three variables: the oracle gives
        // 8, twice the geometric count of the 3-simplex, and the main
        // algorithm agrees with the oracle rather than with geometry
        let g = crate::constructions::simplex3();
        let p = &crate::polysys::pinning_candidates(&g)[0];
        let s = crate::polysys::build_system(&g, p, Formulation::Naive).unwrap();
        assert_eq!(mixed_volume_oracle(&s).unwrap(), 8);
    }

    #[test]
    fn oracle_rejects_large_systems() {
        let seg: Vec<Vec<i32>> = vec![vec![0; 6], {
            let mut p = vec![0; 6];
            p[0] = 1;
            p
        }];
        let s = sys(6, vec![seg; 6]);
        assert!(matches!(mixed_volume_oracle(&s), Err(MixedVolError::TooLarge(5))));
    }
}
