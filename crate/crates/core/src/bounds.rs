//! Closed-form bound calculators and the step-ratio conjecture scan.
//!
//! All calculators run on arbitrary-precision integers; the Bezout bound
//! alone outgrows u64 near n = 35 and these functions are safe for
//! exploratory n.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumerate::CatalogEntry;
use crate::graph::{Dim, HClass, RigidGraph, StepKind};
use crate::mixedvol::{min_mixed_volume_seeded, MixedVolError};
use crate::polysys::Formulation;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("formula produced a non-integer value")]
    NonInteger,
    #[error(transparent)]
    MixedVol(#[from] MixedVolError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

fn pow(base: u64, exp: u32) -> BigUint {
    BigUint::from(base).pow(exp)
}

/// Binomial coefficient C(n, k), exact.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

/// Bezout bound of the pinned edge system: 4^(n-2) in the plane,
/// 8^(n-3) in space.
pub fn bezout(n: u8, dim: Dim) -> Result<BigUint, BoundsError> {
    match dim {
        Dim::Two if n >= 3 => Ok(pow(4, n as u32 - 2)),
        Dim::Three if n >= 4 => Ok(pow(8, n as u32 - 3)),
        _ => Err(BoundsError::OutOfRange(format!("n={n} below base for dim {}", dim.as_u8()))),
    }
}

/// Best published upper bounds: C(2n-4, n-2) in the plane and
/// (2^(n-3)/(n-2)) C(2n-6, n-3) in space.
pub fn binomial_upper(n: u8, dim: Dim) -> Result<BigUint, BoundsError> {
    let n64 = n as u64;
    match dim {
        Dim::Two if n >= 3 => Ok(binomial(2 * n64 - 4, n64 - 2)),
        Dim::Three if n >= 4 => {
            let num = pow(2, n as u32 - 3) * binomial(2 * n64 - 6, n64 - 3);
            let den = BigUint::from(n64 - 2);
            if (&num % &den).is_zero() {
                Ok(num / den)
            } else {
                Err(BoundsError::NonInteger)
            }
        }
        _ => Err(BoundsError::OutOfRange(format!("n={n} below base for dim {}", dim.as_u8()))),
    }
}

/// Published lower-bound formulas.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerFormula {
    /// Desargues caterpillar: 24^floor((n-2)/4).
    Caterpillar2d,
    /// Desargues fan: 2 * 12^floor((n-3)/3), exponent as corrected.
    Fan2d,
    /// Cyclohexane caterpillar: 16^floor((n-3)/3), n >= 9.
    Cyclo3d,
    /// Planar H1 chain: 2^(n-2).
    H1Chain2d,
    /// Spatial H1 chain: 2^(n-3).
    H1Chain3d,
}

impl LowerFormula {
    pub fn name(self) -> &'static str {
        match self {
            LowerFormula::Caterpillar2d => "caterpillar2d",
            LowerFormula::Fan2d => "fan2d",
            LowerFormula::Cyclo3d => "cyclo3d",
            LowerFormula::H1Chain2d => "h1chain2d",
            LowerFormula::H1Chain3d => "h1chain3d",
        }
    }
}

pub fn lower_bound(formula: LowerFormula, n: u8) -> Result<BigUint, BoundsError> {
    let out_of_range =
        |min: u8| BoundsError::OutOfRange(format!("{} needs n >= {min}, got {n}", formula.name()));
    match formula {
        LowerFormula::Caterpillar2d => {
            if n < 3 {
                return Err(out_of_range(3));
            }
            Ok(pow(24, (n as u32 - 2) / 4))
        }
        LowerFormula::Fan2d => {
            if n < 3 {
                return Err(out_of_range(3));
            }
            Ok(BigUint::from(2u32) * pow(12, (n as u32 - 3) / 3))
        }
        LowerFormula::Cyclo3d => {
            if n < 9 {
                return Err(out_of_range(9));
            }
            Ok(pow(16, (n as u32 - 3) / 3))
        }
        LowerFormula::H1Chain2d => {
            if n < 3 {
                return Err(out_of_range(3));
            }
            Ok(pow(2, n as u32 - 2))
        }
        LowerFormula::H1Chain3d => {
            if n < 4 {
                return Err(out_of_range(4));
            }
            Ok(pow(2, n as u32 - 3))
        }
    }
}

/// Degree-sparse upper bounds: 2^(k-4) 4^(n-k) for k >= 4 degree-2 vertices
/// in the plane, 2^(k-9) 8^(n-k) for k >= 9 degree-3 vertices in space.
pub fn sparse_lemma(n: u8, k: u8, dim: Dim) -> Result<BigUint, BoundsError> {
    if k > n {
        return Err(BoundsError::OutOfRange(format!("k={k} exceeds n={n}")));
    }
    match dim {
        Dim::Two => {
            if k < 4 {
                return Err(BoundsError::OutOfRange(format!("planar lemma needs k >= 4, got {k}")));
            }
            Ok(pow(2, k as u32 - 4) * pow(4, (n - k) as u32))
        }
        Dim::Three => {
            if k < 9 {
                return Err(BoundsError::OutOfRange(format!("spatial lemma needs k >= 9, got {k}")));
            }
            Ok(pow(2, k as u32 - 9) * pow(8, (n - k) as u32))
        }
    }
}

/// The "lower" table row: the best constructive lower bound at each n,
/// obtained by doubling from the strongest anchor at or below n. Anchors are
/// the base count plus the caterpillar/fan family values at the sizes where
/// those constructions exist.
pub fn table_lower(dim: Dim, n: u8) -> Result<BigUint, BoundsError> {
    if n < dim.base_n() {
        return Err(BoundsError::OutOfRange(format!("n={n} below base")));
    }
    let mut anchors: Vec<(u8, BigUint)> = Vec::new();
    match dim {
        Dim::Two => {
            anchors.push((3, BigUint::from(2u32)));
            let mut k = 1u8;
            while 4 * k + 2 <= n {
                anchors.push((4 * k + 2, pow(24, k as u32)));
                k += 1;
            }
            let mut k = 1u8;
            while 3 * k + 3 <= n {
                anchors.push((3 * k + 3, BigUint::from(2u32) * pow(12, k as u32)));
                k += 1;
            }
        }
        Dim::Three => {
            anchors.push((4, BigUint::from(2u32)));
            let mut k = 1u8;
            while 3 * k + 3 <= n {
                anchors.push((3 * k + 3, pow(16, k as u32)));
                k += 1;
            }
        }
    }
    Ok(anchors
        .into_iter()
        .filter(|(at, _)| *at <= n)
        .map(|(at, v)| v * pow(2, (n - at) as u32))
        .max()
        .expect("at least the base anchor applies"))
}

/// Per-graph record of every bound this crate computes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundsReport {
    pub schema_version: u32,
    pub n: u8,
    pub dim: u8,
    pub bezout: String,
    pub binomial_upper: String,
    pub mv_naive: Option<u64>,
    pub mv_augmented: Option<u64>,
    pub lower_formulas: BTreeMap<String, String>,
    pub sparse_lemma: Option<String>,
    pub class: HClass,
    pub best_pinning: Option<Vec<u8>>,
}

/// Assemble the full report for one graph. Mixed volumes are computed for
/// the requested formulations; the naive one is optional because it exists
/// only as the degeneracy demonstration.
pub fn report_for(
    g: &RigidGraph,
    with_naive: bool,
    with_augmented: bool,
    seed: u64,
) -> Result<BoundsReport, BoundsError> {
    let n = g.n();
    let dim = g.dim();
    let (class, _) = g.classify_henneberg()?;
    let mut lower: BTreeMap<String, String> = BTreeMap::new();
    let formulas: &[LowerFormula] = match dim {
        Dim::Two => &[LowerFormula::H1Chain2d, LowerFormula::Caterpillar2d, LowerFormula::Fan2d],
        Dim::Three => &[LowerFormula::H1Chain3d, LowerFormula::Cyclo3d],
    };
    for &f in formulas {
        if let Ok(v) = lower_bound(f, n) {
            lower.insert(f.name().to_string(), v.to_string());
        }
    }
    let low_degree = match dim {
        Dim::Two => (0..n).filter(|&v| g.degree(v) == 2).count() as u8,
        Dim::Three => (0..n).filter(|&v| g.degree(v) == 3).count() as u8,
    };
    let sparse = sparse_lemma(n, low_degree, dim).ok().map(|v| v.to_string());
    let mut best_pinning = None;
    let mv_augmented = if with_augmented {
        let rep = min_mixed_volume_seeded(g, Formulation::Augmented, seed)?;
        best_pinning = Some(rep.best_pinning.fixed.clone());
        Some(rep.mv)
    } else {
        None
    };
    let mv_naive = if with_naive {
        Some(min_mixed_volume_seeded(g, Formulation::Naive, seed)?.mv)
    } else {
        None
    };
    Ok(BoundsReport {
        schema_version: crate::SCHEMA_VERSION,
        n,
        dim: dim.as_u8(),
        bezout: bezout(n, dim)?.to_string(),
        binomial_upper: binomial_upper(n, dim)?.to_string(),
        mv_naive,
        mv_augmented,
        lower_formulas: lower,
        sparse_lemma: sparse,
        class,
        best_pinning,
    })
}

/// Step-ratio limits under scan: H1 doubles, H2 at most quadruples, H3 at
/// most octuples.
fn ratio_limit(kind: StepKind) -> u64 {
    match kind {
        StepKind::H1 => 2,
        StepKind::H2 => 4,
        StepKind::H3 => 8,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRecord {
    pub dim: u8,
    pub n_after: u8,
    pub kind: StepKind,
    pub mv_before: u64,
    pub mv_after: u64,
    pub limit: u64,
    pub violation: bool,
    pub sequence: String,
}

/// Replay every catalog sequence, recording the min-mixed-volume ratio of
/// each step against its conjectured limit. Any violation is flagged with
/// the offending sequence.
pub fn conjecture_scan(
    entries: &[CatalogEntry],
    seed: u64,
) -> Result<Vec<ScanRecord>, BoundsError> {
    let mut memo: std::collections::HashMap<crate::canon::CanonicalKey, u64> =
        std::collections::HashMap::new();
    let mut min_mv = |g: &RigidGraph| -> Result<u64, BoundsError> {
        let key = crate::canon::canonical_key(g);
        if let Some(&v) = memo.get(&key) {
            return Ok(v);
        }
        let v = min_mixed_volume_seeded(g, Formulation::Augmented, seed)?.mv;
        memo.insert(key, v);
        Ok(v)
    };
    let mut out = Vec::new();
    for entry in entries {
        let mut g = RigidGraph::base(entry.sequence.dim);
        let mut before = min_mv(&g)?;
        let mut prefix = crate::graph::HennebergSequence::empty(entry.sequence.dim);
        for step in &entry.sequence.steps {
            g = g.apply_step(step)?;
            prefix.steps.push(step.clone());
            let after = min_mv(&g)?;
            let limit = ratio_limit(step.kind);
            out.push(ScanRecord {
                dim: g.dim().as_u8(),
                n_after: g.n(),
                kind: step.kind,
                mv_before: before,
                mv_after: after,
                limit,
                violation: (after as u128) > (limit as u128) * (before as u128),
                sequence: prefix.compact(),
            });
            before = after;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn u(v: &BigUint) -> u64 {
        v.to_u64().unwrap()
    }

    #[test]
    fn bezout_values() {
        assert_eq!(u(&bezout(6, Dim::Two).unwrap()), 256);
        assert_eq!(u(&bezout(6, Dim::Three).unwrap()), 512);
        assert_eq!(u(&bezout(3, Dim::Two).unwrap()), 4);
        assert!(bezout(3, Dim::Three).is_err());
        // far beyond u64: must not wrap
        assert_eq!(bezout(40, Dim::Two).unwrap(), BigUint::from(4u32).pow(38));
    }

    #[test]
    fn binomial_upper_values() {
        assert_eq!(u(&binomial_upper(6, Dim::Two).unwrap()), 70); // C(8,4)
        assert_eq!(u(&binomial_upper(6, Dim::Three).unwrap()), 40); // 8/4 * C(6,3)
        assert_eq!(u(&binomial_upper(4, Dim::Two).unwrap()), 6); // C(4,2)
        // integrality holds across a range (the formula is 2^m * Catalan(m))
        for n in 4..=20u8 {
            assert!(binomial_upper(n, Dim::Three).is_ok());
        }
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(u(&lower_bound(LowerFormula::Cyclo3d, 9).unwrap()), 256);
        assert_eq!(u(&lower_bound(LowerFormula::Caterpillar2d, 6).unwrap()), 24);
        assert_eq!(u(&lower_bound(LowerFormula::H1Chain2d, 5).unwrap()), 8);
        assert_eq!(u(&lower_bound(LowerFormula::Fan2d, 9).unwrap()), 288);
        assert!(matches!(
            lower_bound(LowerFormula::Cyclo3d, 8),
            Err(BoundsError::OutOfRange(_))
        ));
    }

    #[test]
    fn sparse_lemma_values() {
        assert_eq!(u(&sparse_lemma(8, 4, Dim::Two).unwrap()), 256);
        assert_eq!(u(&sparse_lemma(12, 9, Dim::Three).unwrap()), 512);
        assert_eq!(u(&sparse_lemma(10, 6, Dim::Two).unwrap()), 1024);
        assert!(sparse_lemma(8, 3, Dim::Two).is_err());
        assert!(sparse_lemma(12, 8, Dim::Three).is_err());
        assert!(sparse_lemma(4, 5, Dim::Two).is_err());
    }

    #[test]
    fn table_lower_rows() {
        let row2: Vec<u64> = (3..=10).map(|n| u(&table_lower(Dim::Two, n).unwrap())).collect();
        assert_eq!(row2, vec![2, 4, 8, 24, 48, 96, 288, 576]);
        let row3: Vec<u64> = (4..=10).map(|n| u(&table_lower(Dim::Three, n).unwrap())).collect();
        assert_eq!(row3, vec![2, 4, 16, 32, 64, 256, 512]);
    }
}
