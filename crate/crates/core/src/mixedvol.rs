//! Exact normalized mixed volume by mixed-cell enumeration.
//!
//! A random integer lifting is drawn for every support point. The fine mixed
//! cells of the induced subdivision select one point pair per support; the
//! pairs of a cell are simultaneous minimizers of the lifted inner product
//! for a common lower-hull normal, and the mixed volume is the sum of
//! |det| of the pair direction matrices over all cells.
//!
//! Enumeration is a depth-first search over supports. Each chosen pair adds
//! one equality (eliminated incrementally into reduced row-echelon form) and
//! its support's inequalities; feasibility of every partial system is
//! decided by the exact simplex in [`crate::lp`]. A precomputed pairwise
//! compatibility table prunes most branches before any LP runs. Lifts are
//! checked for genericity: if any cell's minimizing face is wider than an
//! edge pair, the lifting is redrawn.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::canonical_key_colored;
use crate::graph::RigidGraph;
use crate::lp::{self, BigRat, Feas, Field, Rat128};
use crate::polysys::{build_system, pinning_candidates, Formulation, Pinning, SupportSystem};

#[derive(Debug, Error)]
pub enum MixedVolError {
    #[error("degenerate lifting persisted for {0} retries")]
    DegenerateLiftingRetriesExhausted(u32),
    #[error("dimension mismatch: {0} supports for {1} variables")]
    DimensionMismatch(usize, usize),
    #[error("invalid support: {0}")]
    InvalidSupport(String),
    #[error("mixed volume exceeds u64")]
    ValueOverflow,
    #[error("oracle limited to {0} variables")]
    TooLarge(usize),
    #[error(transparent)]
    Polysys(#[from] crate::polysys::PolysysError),
}

/// Maximum lifting height (exclusive); heights stay far inside the exact
/// arithmetic range.
const MAX_LIFT: i64 = 1 << 12;
const MAX_RETRIES: u32 = 16;
/// Point cap per support so pair sets fit a u128 bitmask.
const MAX_POINTS: usize = 16;

#[derive(Copy, Clone, Debug, Serialize, Deserialize)]
pub struct MvResult {
    pub mv: u64,
    pub cells: u64,
    pub seed: u64,
}

/// Mixed volume with the default seed.
pub fn mixed_volume(s: &SupportSystem) -> Result<u64, MixedVolError> {
    Ok(mixed_volume_seeded(s, 0)?.mv)
}

pub fn mixed_volume_seeded(s: &SupportSystem, seed: u64) -> Result<MvResult, MixedVolError> {
    let n = s.num_vars();
    if s.supports.len() != n {
        return Err(MixedVolError::DimensionMismatch(s.supports.len(), n));
    }
    if n == 0 {
        return Ok(MvResult { mv: 1, cells: 0, seed });
    }
    let mut supports: Vec<Vec<Vec<i64>>> = Vec::with_capacity(n);
    for sup in &s.supports {
        if sup.is_empty() {
            return Err(MixedVolError::InvalidSupport("empty support".into()));
        }
        let mut pts: Vec<Vec<i64>> = sup
            .iter()
            .map(|pt| {
                if pt.len() != n {
                    return Err(MixedVolError::InvalidSupport(format!(
                        "point of length {} in a {n}-variable system",
                        pt.len()
                    )));
                }
                Ok(pt.iter().map(|&e| e as i64).collect())
            })
            .collect::<Result<_, _>>()?;
        pts.sort();
        pts.dedup();
        if pts.len() > MAX_POINTS {
            return Err(MixedVolError::InvalidSupport(format!(
                "support holds {} points, cap is {MAX_POINTS}",
                pts.len()
            )));
        }
        supports.push(pts);
    }
    if supports.iter().any(|sup| sup.len() == 1) {
        // a point summand contributes no mixed term
        return Ok(MvResult { mv: 0, cells: 0, seed });
    }
    for attempt in 0..MAX_RETRIES {
        let aseed = seed ^ (attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let mut rng = ChaCha8Rng::seed_from_u64(aseed);
        let lifts: Vec<Vec<i64>> = supports
            .iter()
            .map(|sup| sup.iter().map(|_| rng.gen_range(0..MAX_LIFT)).collect())
            .collect();
        match enumerate_cells::<Rat128>(&supports, &lifts) {
            Ok(Some((mv, cells))) => {
                let mv = mv.to_u64().ok_or(MixedVolError::ValueOverflow)?;
                return Ok(MvResult { mv, cells, seed });
            }
            Ok(None) => continue, // degenerate lifting, redraw
            Err(Overflow) => match enumerate_cells::<BigRat>(&supports, &lifts) {
                Ok(Some((mv, cells))) => {
                    let mv = mv.to_u64().ok_or(MixedVolError::ValueOverflow)?;
                    return Ok(MvResult { mv, cells, seed });
                }
                Ok(None) => continue,
                Err(Overflow) => unreachable!("big rationals do not overflow"),
            },
        }
    }
    Err(MixedVolError::DegenerateLiftingRetriesExhausted(MAX_RETRIES))
}

struct Overflow;

type CellsOutcome = Result<Option<(BigInt, u64)>, Overflow>;

/// One global index per (support, pair) candidate.
#[derive(Copy, Clone, Debug)]
struct PairRef {
    sup: usize,
    a: usize,
    b: usize,
}

struct Enumerator<'a, F: Field> {
    supports: &'a [Vec<Vec<i64>>],
    lifts: &'a [Vec<i64>],
    n: usize,
    pairs: Vec<Vec<PairRef>>,          // viable pairs per support
    compat: Vec<Vec<Vec<u128>>>,       // compat[sup][pair][other_sup] bitmask
    order: Vec<usize>,                 // support visit order
    _marker: std::marker::PhantomData<F>,
}

fn enumerate_cells<F: Field>(supports: &[Vec<Vec<i64>>], lifts: &[Vec<i64>]) -> CellsOutcome {
    let n = supports.len();
    // viable pairs: minimizable within their own support
    let mut pairs: Vec<Vec<PairRef>> = vec![Vec::new(); n];
    for (si, sup) in supports.iter().enumerate() {
        for a in 0..sup.len() {
            for b in a + 1..sup.len() {
                let pr = PairRef { sup: si, a, b };
                let mut st = State::<F>::new(n);
                if st.push_pair(supports, lifts, pr).map_err(|_| Overflow)? && st.lp_feasible()? {
                    pairs[si].push(pr);
                }
            }
        }
        if pairs[si].is_empty() {
            return Ok(Some((BigInt::zero(), 0)));
        }
    }
    // pairwise compatibility across supports
    let mut compat: Vec<Vec<Vec<u128>>> =
        (0..n).map(|si| vec![vec![u128::MAX; n]; pairs[si].len()]).collect();
    for si in 0..n {
        for sj in si + 1..n {
            for (pi, &pa) in pairs[si].iter().enumerate() {
                let mut mask_j: u128 = 0;
                for (pj, &pb) in pairs[sj].iter().enumerate() {
                    let mut st = State::<F>::new(n);
                    let ok = st.push_pair(supports, lifts, pa).map_err(|_| Overflow)?
                        && st.push_pair(supports, lifts, pb).map_err(|_| Overflow)?
                        && st.lp_feasible()?;
                    if ok {
                        mask_j |= 1 << pj;
                    }
                }
                compat[si][pi][sj] = mask_j;
            }
        }
    }
    // mirror the table
    for si in 0..n {
        for sj in si + 1..n {
            for pj in 0..pairs[sj].len() {
                let mut mask_i: u128 = 0;
                for pi in 0..pairs[si].len() {
                    if compat[si][pi][sj] & (1 << pj) != 0 {
                        mask_i |= 1 << pi;
                    }
                }
                compat[sj][pj][si] = mask_i;
            }
        }
    }
    // iterate-to-fixpoint pruning: a pair must stay compatible with at least
    // one pair of every other support
    let mut alive: Vec<u128> = pairs.iter().map(|p| (1u128 << p.len()) - 1).collect();
    loop {
        let mut changed = false;
        for si in 0..n {
            for pi in 0..pairs[si].len() {
                if alive[si] & (1 << pi) == 0 {
                    continue;
                }
                let dead = (0..n).any(|sj| sj != si && compat[si][pi][sj] & alive[sj] == 0);
                if dead {
                    alive[si] &= !(1 << pi);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    if alive.iter().any(|&m| m == 0) {
        return Ok(Some((BigInt::zero(), 0)));
    }
    // visit supports with fewer viable pairs first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&si| alive[si].count_ones());

    let en = Enumerator::<F> {
        supports,
        lifts,
        n,
        pairs,
        compat,
        order,
        _marker: std::marker::PhantomData,
    };
    let mut mv = BigInt::zero();
    let mut cells = 0u64;
    let state = State::<F>::new(n);
    match en.dfs(0, &state, &alive, &mut Vec::new(), &mut mv, &mut cells) {
        DfsOutcome::Done => Ok(Some((mv, cells))),
        DfsOutcome::Degenerate => Ok(None),
        DfsOutcome::Overflow => Err(Overflow),
    }
}

enum DfsOutcome {
    Done,
    Degenerate,
    Overflow,
}

impl<'a, F: Field> Enumerator<'a, F> {
    fn dfs(
        &self,
        level: usize,
        state: &State<F>,
        alive: &[u128],
        chosen: &mut Vec<PairRef>,
        mv: &mut BigInt,
        cells: &mut u64,
    ) -> DfsOutcome {
        if level == self.n {
            return match self.finish_cell(state, chosen, mv, cells) {
                Ok(true) => DfsOutcome::Done,
                Ok(false) => DfsOutcome::Degenerate,
                Err(Overflow) => DfsOutcome::Overflow,
            };
        }
        let si = self.order[level];
        let mut cand = alive[si];
        while cand != 0 {
            let pi = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let pr = self.pairs[si][pi];
            // narrow the remaining supports by the compatibility table
            let mut next_alive = alive.to_vec();
            next_alive[si] = 1 << pi;
            let mut viable = true;
            for l in level + 1..self.n {
                let sj = self.order[l];
                next_alive[sj] &= self.compat[si][pi][sj];
                if next_alive[sj] == 0 {
                    viable = false;
                    break;
                }
            }
            if !viable {
                continue;
            }
            let mut st = state.clone();
            match st.push_pair(self.supports, self.lifts, pr) {
                Err(_) => return DfsOutcome::Overflow,
                Ok(false) => continue, // inconsistent or dependent directions
                Ok(true) => {}
            }
            match st.lp_feasible() {
                Err(Overflow) => return DfsOutcome::Overflow,
                Ok(false) => continue,
                Ok(true) => {}
            }
            chosen.push(pr);
            let out = self.dfs(level + 1, &st, &next_alive, chosen, mv, cells);
            chosen.pop();
            match out {
                DfsOutcome::Done => {}
                other => return other,
            }
        }
        DfsOutcome::Done
    }

    /// All supports chosen: recover the unique cell normal, confirm the
    /// lifting is generic for this cell, and add |det| of the directions.
    fn finish_cell(
        &self,
        state: &State<F>,
        chosen: &[PairRef],
        mv: &mut BigInt,
        cells: &mut u64,
    ) -> Result<bool, Overflow> {
        let alpha = state.solve().ok_or(Overflow)?;
        // genericity: the minimizing face of every support must be exactly
        // the chosen edge pair
        for pr in chosen {
            let sup = &self.supports[pr.sup];
            let lift = &self.lifts[pr.sup];
            let mut min_val: Option<F> = None;
            let mut argmin: Vec<usize> = Vec::new();
            for (k, pt) in sup.iter().enumerate() {
                let mut v = F::from_i64(lift[k]);
                for (x, &e) in alpha.iter().zip(pt.iter()) {
                    if e != 0 {
                        v = v.try_add(&x.try_mul(&F::from_i64(e)).ok_or(Overflow)?).ok_or(Overflow)?;
                    }
                }
                match &min_val {
                    None => {
                        min_val = Some(v);
                        argmin = vec![k];
                    }
                    Some(m) => match v.try_sub(m).ok_or(Overflow)?.sign() {
                        -1 => {
                            min_val = Some(v);
                            argmin = vec![k];
                        }
                        0 => argmin.push(k),
                        _ => {}
                    },
                }
            }
            if argmin != [pr.a, pr.b] {
                return Ok(false); // tie or shifted minimum: degenerate lifting
            }
        }
        let mat: Vec<Vec<i64>> = chosen
            .iter()
            .map(|pr| {
                let sup = &self.supports[pr.sup];
                sup[pr.b].iter().zip(sup[pr.a].iter()).map(|(&b, &a)| b - a).collect()
            })
            .collect();
        let det = det_bigint(&mat);
        debug_assert!(!det.is_zero(), "independent directions give a nonzero determinant");
        *mv += det.abs();
        *cells += 1;
        Ok(true)
    }
}

/// Incremental reduced row-echelon elimination of the pair equalities plus
/// the reduced inequality rows of the chosen supports.
#[derive(Clone)]
struct State<F: Field> {
    n: usize,
    pivots: Vec<Option<usize>>,            // pivot row index per variable
    rows: Vec<(usize, Vec<F>, F)>,         // (pivot var, coeffs, rhs), RREF
    ineqs: Vec<(Vec<F>, F)>,               // reduced: zero on pivot vars
}

impl<F: Field> State<F> {
    fn new(n: usize) -> Self {
        State { n, pivots: vec![None; n], rows: Vec::new(), ineqs: Vec::new() }
    }

    fn free_vars(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.pivots[v].is_none()).collect()
    }

    /// Add the equality and inequalities of one chosen pair. Returns
    /// `Ok(false)` when the new equality is inconsistent with or dependent
    /// on the current system (either way the branch dies).
    fn push_pair(
        &mut self,
        supports: &[Vec<Vec<i64>>],
        lifts: &[Vec<i64>],
        pr: PairRef,
    ) -> Result<bool, Overflow> {
        let sup = &supports[pr.sup];
        let lift = &lifts[pr.sup];
        let (pa, pb) = (&sup[pr.a], &sup[pr.b]);
        let coeffs: Vec<F> = (0..self.n).map(|v| F::from_i64(pb[v] - pa[v])).collect();
        let rhs = F::from_i64(lift[pr.a] - lift[pr.b]);
        let (mut coeffs, mut rhs) = self.reduce(coeffs, rhs)?;
        let pivot = match coeffs.iter().position(|c| !c.is_zero()) {
            Some(p) => p,
            None => return Ok(false), // dependent (and unusable) direction
        };
        // normalize the pivot to 1
        let inv = coeffs[pivot].clone();
        for c in coeffs.iter_mut() {
            *c = c.try_div(&inv).ok_or(Overflow)?;
        }
        rhs = rhs.try_div(&inv).ok_or(Overflow)?;
        // clear the new pivot from existing rows and inequalities
        for (_, rc, rr) in self.rows.iter_mut() {
            if !rc[pivot].is_zero() {
                let f = rc[pivot].clone();
                for (x, c) in rc.iter_mut().zip(coeffs.iter()) {
                    *x = x.try_sub(&f.try_mul(c).ok_or(Overflow)?).ok_or(Overflow)?;
                }
                *rr = rr.try_sub(&f.try_mul(&rhs).ok_or(Overflow)?).ok_or(Overflow)?;
            }
        }
        for (ic, ir) in self.ineqs.iter_mut() {
            if !ic[pivot].is_zero() {
                let f = ic[pivot].clone();
                for (x, c) in ic.iter_mut().zip(coeffs.iter()) {
                    *x = x.try_sub(&f.try_mul(c).ok_or(Overflow)?).ok_or(Overflow)?;
                }
                *ir = ir.try_sub(&f.try_mul(&rhs).ok_or(Overflow)?).ok_or(Overflow)?;
            }
        }
        self.pivots[pivot] = Some(self.rows.len());
        self.rows.push((pivot, coeffs, rhs));
        // inequalities of this support: every other point stays no lower
        for (k, pt) in sup.iter().enumerate() {
            if k == pr.a || k == pr.b {
                continue;
            }
            let ic: Vec<F> = (0..self.n).map(|v| F::from_i64(pa[v] - pt[v])).collect();
            let ir = F::from_i64(lift[k] - lift[pr.a]);
            let (ic, ir) = self.reduce(ic, ir)?;
            if ic.iter().all(|c| c.is_zero()) {
                if ir.sign() < 0 {
                    return Ok(false); // constant row violated
                }
                continue;
            }
            self.ineqs.push((ic, ir));
        }
        Ok(true)
    }

    /// Clear all current pivot variables out of a row.
    fn reduce(&self, mut coeffs: Vec<F>, mut rhs: F) -> Result<(Vec<F>, F), Overflow> {
        for (pivot, rc, rr) in &self.rows {
            if !coeffs[*pivot].is_zero() {
                let f = coeffs[*pivot].clone();
                for (x, c) in coeffs.iter_mut().zip(rc.iter()) {
                    *x = x.try_sub(&f.try_mul(c).ok_or(Overflow)?).ok_or(Overflow)?;
                }
                rhs = rhs.try_sub(&f.try_mul(rr).ok_or(Overflow)?).ok_or(Overflow)?;
            }
        }
        Ok((coeffs, rhs))
    }

    fn lp_feasible(&self) -> Result<bool, Overflow> {
        if self.ineqs.is_empty() {
            return Ok(true);
        }
        if self.ineqs.iter().all(|(_, r)| r.sign() >= 0) {
            return Ok(true); // the origin satisfies every row
        }
        let free = self.free_vars();
        let rows: Vec<(Vec<F>, F)> = self
            .ineqs
            .iter()
            .map(|(c, r)| (free.iter().map(|&v| c[v].clone()).collect(), r.clone()))
            .collect();
        match lp::feasible(free.len(), &rows) {
            Some(Feas::Feasible) => Ok(true),
            Some(Feas::Infeasible) => Ok(false),
            None => Err(Overflow),
        }
    }

    /// With all variables eliminated, read the unique solution off the RREF.
    fn solve(&self) -> Option<Vec<F>> {
        if self.rows.len() != self.n {
            return None;
        }
        let mut alpha = vec![F::zero(); self.n];
        for (pivot, _, rhs) in &self.rows {
            alpha[*pivot] = rhs.clone();
        }
        Some(alpha)
    }
}

/// Exact determinant by fraction-free Bareiss elimination.
fn det_bigint(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> =
        m.iter().map(|row| row.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !a[r][k].is_zero());
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

// ---------------------------------------------------------------------------
// Minimum over pinnings

#[derive(Clone, Debug, Serialize)]
pub struct PinningValue {
    pub pinning: Pinning,
    pub mv: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinMvReport {
    pub mv: u64,
    pub best_pinning: Pinning,
    pub formulation: Formulation,
    pub seed: u64,
    pub per_pinning: Vec<PinningValue>,
}

/// Minimum mixed volume over all pinning candidates, ties broken by the
/// first candidate in canonical order. Pinnings equivalent under a graph
/// automorphism give equal systems up to variable permutation, so only one
/// representative per equivalence class is computed.
pub fn min_mixed_volume(g: &RigidGraph, f: Formulation) -> Result<(u64, Pinning), MixedVolError> {
    let rep = min_mixed_volume_seeded(g, f, 0)?;
    Ok((rep.mv, rep.best_pinning))
}

pub fn min_mixed_volume_seeded(
    g: &RigidGraph,
    f: Formulation,
    seed: u64,
) -> Result<MinMvReport, MixedVolError> {
    let candidates = pinning_candidates(g);
    assert!(!candidates.is_empty(), "valid graphs always have a pinnable edge or triangle");
    let mut orbit_value: std::collections::HashMap<crate::canon::CanonicalKey, u64> =
        std::collections::HashMap::new();
    let mut per_pinning = Vec::with_capacity(candidates.len());
    for p in &candidates {
        let mut colors = vec![0u32; g.n() as usize];
        for (i, &v) in p.fixed.iter().enumerate() {
            colors[v as usize] = i as u32 + 1;
        }
        let orbit_key = canonical_key_colored(g, &colors);
        let mv = match orbit_value.get(&orbit_key) {
            Some(&mv) => mv,
            None => {
                let sys = build_system(g, p, f)?;
                let mv = mixed_volume_seeded(&sys, seed)?.mv;
                orbit_value.insert(orbit_key, mv);
                mv
            }
        };
        per_pinning.push(PinningValue { pinning: p.clone(), mv });
    }
    let best = per_pinning
        .iter()
        .enumerate()
        .min_by_key(|(i, pv)| (pv.mv, *i))
        .expect("nonempty candidate list");
    Ok(MinMvReport {
        mv: best.1.mv,
        best_pinning: best.1.pinning.clone(),
        formulation: f,
        seed,
        per_pinning,
    })
}

pub use crate::hull::mixed_volume_oracle;

/// Run the enumeration over big rationals unconditionally. The production
/// path only falls back to big rationals on i128 overflow, which generic
/// inputs never trigger; tests call this to exercise the fallback scalar on
/// real systems and compare against the fast path.
#[doc(hidden)]
pub fn mixed_volume_bigrat_path(s: &SupportSystem, seed: u64) -> Result<u64, MixedVolError> {
    let n = s.num_vars();
    if s.supports.len() != n {
        return Err(MixedVolError::DimensionMismatch(s.supports.len(), n));
    }
    let supports: Vec<Vec<Vec<i64>>> = s
        .supports
        .iter()
        .map(|sup| {
            let mut pts: Vec<Vec<i64>> =
                sup.iter().map(|pt| pt.iter().map(|&e| e as i64).collect()).collect();
            pts.sort();
            pts.dedup();
            pts
        })
        .collect();
    if supports.iter().any(|sup| sup.len() == 1) {
        return Ok(0);
    }
    for attempt in 0..MAX_RETRIES {
        let aseed = seed ^ (attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let mut rng = ChaCha8Rng::seed_from_u64(aseed);
        let lifts: Vec<Vec<i64>> = supports
            .iter()
            .map(|sup| sup.iter().map(|_| rng.gen_range(0..MAX_LIFT)).collect())
            .collect();
        match enumerate_cells::<BigRat>(&supports, &lifts) {
            Ok(Some((mv, _))) => return mv.to_u64().ok_or(MixedVolError::ValueOverflow),
            Ok(None) => continue,
            Err(Overflow) => unreachable!("big rationals do not overflow"),
        }
    }
    Err(MixedVolError::DegenerateLiftingRetriesExhausted(MAX_RETRIES))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    fn sys(vars: usize, supports: Vec<Vec<Vec<i32>>>) -> SupportSystem {
        SupportSystem {
            vars: (0..vars).map(|i| format!("t{i}")).collect(),
            supports,
            formulation: Formulation::Naive,
        }
    }

    #[test]
    fn univariate_segment() {
        let s = sys(1, vec![vec![vec![0], vec![2]]]);
        assert_eq!(mixed_volume(&s).unwrap(), 2);
    }

    #[test]
    fn two_full_quadratics() {
        // all monomials of total degree <= 2 in two variables
        let full: Vec<Vec<i32>> = vec![
            vec![0, 0],
            vec![1, 0],
            vec![0, 1],
            vec![2, 0],
            vec![1, 1],
            vec![0, 2],
        ];
        let s = sys(2, vec![full.clone(), full]);
        assert_eq!(mixed_volume(&s).unwrap(), 4);
    }

    #[test]
    fn unit_simplices_give_one() {
        for n in 1..=4usize {
            let mut simplex: Vec<Vec<i32>> = vec![vec![0; n]];
            for i in 0..n {
                let mut pt = vec![0; n];
                pt[i] = 1;
                simplex.push(pt);
            }
            let s = sys(n, vec![simplex; n]);
            assert_eq!(mixed_volume(&s).unwrap(), 1, "n={n}");
        }
    }

    #[test]
    fn repeated_square_gives_two() {
        let square = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        let s = sys(2, vec![square.clone(), square]);
        assert_eq!(mixed_volume(&s).unwrap(), 2);
    }

    #[test]
    fn point_support_kills_mv() {
        let s = sys(2, vec![vec![vec![1, 1]], vec![vec![0, 0], vec![1, 0]]]);
        assert_eq!(mixed_volume(&s).unwrap(), 0);
    }

    #[test]
    fn simplex_naive_is_eight() {
        let g = constructions::simplex3();
        let p = &pinning_candidates(&g)[0];
        let s = build_system(&g, p, Formulation::Naive).unwrap();
        assert_eq!(mixed_volume(&s).unwrap(), 8);
    }

    #[test]
    fn simplex_augmented_is_two() {
        let g = constructions::simplex3();
        let p = &pinning_candidates(&g)[0];
        let s = build_system(&g, p, Formulation::Augmented).unwrap();
        assert_eq!(mixed_volume(&s).unwrap(), 2);
    }

    #[test]
    fn seeds_agree() {
        let g = constructions::skeleton5();
        let p = &pinning_candidates(&g)[0];
        let s = build_system(&g, p, Formulation::Augmented).unwrap();
        let vals: Vec<u64> =
            (0..5).map(|k| mixed_volume_seeded(&s, 1000 + k).unwrap().mv).collect();
        assert!(vals.windows(2).all(|w| w[0] == w[1]), "values {vals:?}");
    }

    #[test]
    fn bigrat_path_matches_fast_path() {
        // parallel segments (MV 0), the octahedron system (16) and a
        // 2-variable quadratic pair (4) through both scalar types
        let deg = sys(2, vec![vec![vec![0, 0], vec![1, 0]], vec![vec![0, 0], vec![1, 0]]]);
        assert_eq!(mixed_volume(&deg).unwrap(), 0);
        assert_eq!(mixed_volume_bigrat_path(&deg, 0).unwrap(), 0);

        let g = constructions::octahedron();
        let p = &pinning_candidates(&g)[0];
        let s = build_system(&g, p, Formulation::Augmented).unwrap();
        assert_eq!(mixed_volume(&s).unwrap(), 16);
        assert_eq!(mixed_volume_bigrat_path(&s, 0).unwrap(), 16);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let s = sys(2, vec![vec![vec![0, 0], vec![1, 0]]]);
        assert!(matches!(mixed_volume(&s), Err(MixedVolError::DimensionMismatch(1, 2))));
    }
}
