//! Exact rational linear programming, phase-1 only.
//!
//! Feasibility of `A x <= b` with free variables is decided by a dense
//! two-phase tableau simplex under Bland's rule. All arithmetic is exact;
//! the fast scalar is an i128-backed rational whose operations report
//! overflow, letting callers rerun the same computation over big rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact field scalar with fallible arithmetic. `None` means overflow.
pub trait Field: Clone + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn try_add(&self, o: &Self) -> Option<Self>;
    fn try_sub(&self, o: &Self) -> Option<Self>;
    fn try_mul(&self, o: &Self) -> Option<Self>;
    fn try_div(&self, o: &Self) -> Option<Self>;
    /// -1, 0 or +1.
    fn sign(&self) -> i8;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool {
        self.sign() == 0
    }
}

/// Reduced fraction over checked i128 arithmetic.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct Rat128 {
    n: i128,
    d: i128, // always > 0
}

fn gcd128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat128 {
    pub fn new(n: i128, d: i128) -> Option<Rat128> {
        if d == 0 {
            return None;
        }
        let (n, d) = if d < 0 { (n.checked_neg()?, d.checked_neg()?) } else { (n, d) };
        if n == 0 {
            return Some(Rat128 { n: 0, d: 1 });
        }
        let g = gcd128(n, d);
        Some(Rat128 { n: n / g, d: d / g })
    }
}

impl Field for Rat128 {
    fn zero() -> Self {
        Rat128 { n: 0, d: 1 }
    }
    fn one() -> Self {
        Rat128 { n: 1, d: 1 }
    }
    fn from_i64(v: i64) -> Self {
        Rat128 { n: v as i128, d: 1 }
    }
    fn try_add(&self, o: &Self) -> Option<Self> {
        let n = self.n.checked_mul(o.d)?.checked_add(o.n.checked_mul(self.d)?)?;
        Rat128::new(n, self.d.checked_mul(o.d)?)
    }
    fn try_sub(&self, o: &Self) -> Option<Self> {
        let n = self.n.checked_mul(o.d)?.checked_sub(o.n.checked_mul(self.d)?)?;
        Rat128::new(n, self.d.checked_mul(o.d)?)
    }
    fn try_mul(&self, o: &Self) -> Option<Self> {
        Rat128::new(self.n.checked_mul(o.n)?, self.d.checked_mul(o.d)?)
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        if o.n == 0 {
            return None;
        }
        Rat128::new(self.n.checked_mul(o.d)?, self.d.checked_mul(o.n)?)
    }
    fn sign(&self) -> i8 {
        self.n.signum() as i8
    }
    fn neg(&self) -> Self {
        Rat128 { n: -self.n, d: self.d }
    }
}

/// Arbitrary-precision rational; arithmetic never fails.
#[derive(Clone, Debug)]
pub struct BigRat(pub BigRational);

impl Field for BigRat {
    fn zero() -> Self {
        BigRat(BigRational::zero())
    }
    fn one() -> Self {
        BigRat(BigRational::one())
    }
    fn from_i64(v: i64) -> Self {
        BigRat(BigRational::from_integer(BigInt::from(v)))
    }
    fn try_add(&self, o: &Self) -> Option<Self> {
        Some(BigRat(&self.0 + &o.0))
    }
    fn try_sub(&self, o: &Self) -> Option<Self> {
        Some(BigRat(&self.0 - &o.0))
    }
    fn try_mul(&self, o: &Self) -> Option<Self> {
        Some(BigRat(&self.0 * &o.0))
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        if o.0.is_zero() {
            return None;
        }
        Some(BigRat(&self.0 / &o.0))
    }
    fn sign(&self) -> i8 {
        if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        }
    }
    fn neg(&self) -> Self {
        BigRat(-self.0.clone())
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Feas {
    Feasible,
    Infeasible,
}

/// Is there an x in R^nv with `coeffs . x <= rhs` for every row?
/// Returns `None` on arithmetic overflow.
pub fn feasible<F: Field>(nv: usize, rows: &[(Vec<F>, F)]) -> Option<Feas> {
    if rows.is_empty() {
        return Some(Feas::Feasible);
    }
    let m = rows.len();
    // columns: x+ (nv) | x- (nv) | slack (m) | artificial (n_art) | rhs
    let mut n_art = 0usize;
    for (_, b) in rows {
        if b.sign() < 0 {
            n_art += 1;
        }
    }
    let cols = 2 * nv + m + n_art + 1;
    let rhs_col = cols - 1;
    let mut t: Vec<Vec<F>> = vec![vec![F::zero(); cols]; m];
    let mut basis: Vec<usize> = vec![0; m];
    let mut art_rows: Vec<usize> = Vec::new();
    let mut next_art = 2 * nv + m;
    for (r, (a, b)) in rows.iter().enumerate() {
        let negate = b.sign() < 0;
        for (j, c) in a.iter().enumerate() {
            let c = if negate { c.neg() } else { c.clone() };
            t[r][j] = c.clone();
            t[r][nv + j] = c.neg();
        }
        t[r][2 * nv + r] = if negate { F::one().neg() } else { F::one() };
        t[r][rhs_col] = if negate { b.neg() } else { b.clone() };
        if negate {
            t[r][next_art] = F::one();
            basis[r] = next_art;
            art_rows.push(r);
            next_art += 1;
        } else {
            basis[r] = 2 * nv + r;
        }
    }
    if art_rows.is_empty() {
        return Some(Feas::Feasible); // x = 0 works
    }
    // phase-1 objective row: sum of artificial rows, zero on artificial columns
    let mut w = vec![F::zero(); cols];
    for &r in &art_rows {
        for j in 0..cols {
            w[j] = w[j].try_add(&t[r][j])?;
        }
    }
    for j in 2 * nv + m..cols - 1 {
        w[j] = F::zero();
    }
    let art_start = 2 * nv + m;
    loop {
        // entering column: smallest non-artificial index with positive w
        let mut enter = None;
        for (j, wj) in w.iter().enumerate().take(rhs_col) {
            if j >= art_start {
                continue;
            }
            if wj.sign() > 0 {
                enter = Some(j);
                break;
            }
        }
        let Some(e) = enter else {
            return Some(if w[rhs_col].is_zero() { Feas::Feasible } else { Feas::Infeasible });
        };
        // ratio test, Bland tie-break on the basic column
        let mut leave: Option<(usize, F)> = None;
        for r in 0..m {
            if t[r][e].sign() <= 0 {
                continue;
            }
            let ratio = t[r][rhs_col].try_div(&t[r][e])?;
            let better = match &leave {
                None => true,
                Some((lr, lratio)) => match ratio.try_sub(lratio)?.sign() {
                    -1 => true,
                    0 => basis[r] < basis[*lr],
                    _ => false,
                },
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let Some((lr, _)) = leave else {
            unreachable!("phase-1 objective is bounded below; no unbounded ray exists");
        };
        // pivot on (lr, e)
        let piv = t[lr][e].clone();
        for j in 0..cols {
            t[lr][j] = t[lr][j].try_div(&piv)?;
        }
        for r in 0..m {
            if r != lr && !t[r][e].is_zero() {
                let f = t[r][e].clone();
                for j in 0..cols {
                    t[r][j] = t[r][j].try_sub(&f.try_mul(&t[lr][j])?)?;
                }
            }
        }
        if !w[e].is_zero() {
            let f = w[e].clone();
            for j in 0..cols {
                w[j] = w[j].try_sub(&f.try_mul(&t[lr][j])?)?;
            }
        }
        basis[lr] = e;
    }
}
