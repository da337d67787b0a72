//! The base curve: a genus-g curve together with 2g-2 labeled canonical
//! points, plus the handful of curve-level cohomology dimensions the rest
//! of the crate consumes (multiples of the canonical bundle, skyscraper
//! sheaves on point divisors).

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::scalar::{int, IntScalar};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("genus must be at least 2, got {0}")]
    GenusOutOfRange(i64),
    #[error("expected {expected} canonical points (2g-2), got {got}")]
    WrongPointCount { expected: usize, got: usize },
    #[error("canonical point identifiers must be distinct: `{0}` repeats")]
    DuplicatePoint(String),
    #[error("point divisor must have positive degree")]
    EmptyDivisor,
    #[error("point multiplicities must be positive: `{0}`")]
    ZeroMultiplicity(String),
}

/// Genus-g base curve with its canonical divisor split into 2g-2 distinct
/// labeled points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveContext<T: IntScalar> {
    genus: T,
    canonical_points: Vec<String>,
}

impl<T: IntScalar> CurveContext<T> {
    pub fn new(genus: T, canonical_points: Vec<String>) -> Result<Self, CurveError> {
        let g = genus.to_i64().unwrap_or(i64::MAX);
        if genus < int(2) {
            return Err(CurveError::GenusOutOfRange(g));
        }
        let expected = (2 * g - 2) as usize;
        if canonical_points.len() != expected {
            return Err(CurveError::WrongPointCount {
                expected,
                got: canonical_points.len(),
            });
        }
        let mut seen = BTreeSet::new();
        for p in &canonical_points {
            if !seen.insert(p.clone()) {
                return Err(CurveError::DuplicatePoint(p.clone()));
            }
        }
        Ok(Self {
            genus,
            canonical_points,
        })
    }

    /// Curve with canonical points labeled `q1 ... q{2g-2}`.
    pub fn with_default_points(genus: i64) -> Result<Self, CurveError> {
        if genus < 2 {
            return Err(CurveError::GenusOutOfRange(genus));
        }
        let points = (1..=(2 * genus - 2)).map(|i| format!("q{i}")).collect();
        Self::new(int(genus), points)
    }

    pub fn genus(&self) -> T {
        self.genus.clone()
    }

    pub fn genus_i64(&self) -> i64 {
        self.genus.to_i64().expect("genus fits in i64")
    }

    pub fn canonical_points(&self) -> &[String] {
        &self.canonical_points
    }

    /// The canonical divisor as a point divisor: every q_i with
    /// multiplicity one.
    pub fn canonical_divisor(&self) -> CurvePointDivisor {
        CurvePointDivisor::new(
            self.canonical_points
                .iter()
                .map(|p| (p.clone(), 1))
                .collect(),
        )
        .expect("canonical points form a valid divisor")
    }

    /// dim H^0(O(mK)): 0 for m < 0, 1 for m = 0, g for m = 1, and
    /// (2m-1)(g-1) for m >= 2.
    pub fn h0_mk(&self, m: i64) -> T {
        let g = self.genus.clone();
        match m {
            _ if m < 0 => T::zero(),
            0 => T::one(),
            1 => g,
            _ => int::<T>(2 * m - 1) * (g - T::one()),
        }
    }

    /// dim H^1(O(mK)) = h^0(O((1-m)K)) by Serre duality.
    pub fn h1_mk(&self, m: i64) -> T {
        self.h0_mk(1 - m)
    }
}

/// Effective divisor supported on labeled points of the curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvePointDivisor {
    multiplicities: BTreeMap<String, u64>,
}

impl CurvePointDivisor {
    pub fn new(multiplicities: BTreeMap<String, u64>) -> Result<Self, CurveError> {
        if multiplicities.is_empty() {
            return Err(CurveError::EmptyDivisor);
        }
        for (p, m) in &multiplicities {
            if *m == 0 {
                return Err(CurveError::ZeroMultiplicity(p.clone()));
            }
        }
        Ok(Self { multiplicities })
    }

    pub fn single(point: impl Into<String>, multiplicity: u64) -> Result<Self, CurveError> {
        let mut map = BTreeMap::new();
        map.insert(point.into(), multiplicity);
        Self::new(map)
    }

    pub fn multiplicities(&self) -> &BTreeMap<String, u64> {
        &self.multiplicities
    }

    pub fn multiplicity(&self, point: &str) -> u64 {
        self.multiplicities.get(point).copied().unwrap_or(0)
    }

    pub fn contains(&self, point: &str) -> bool {
        self.multiplicities.contains_key(point)
    }

    pub fn degree(&self) -> u64 {
        self.multiplicities.values().sum()
    }

    /// Sum of two point divisors (multiplicities add).
    pub fn plus(&self, other: &Self) -> Self {
        let mut map = self.multiplicities.clone();
        for (p, m) in &other.multiplicities {
            *map.entry(p.clone()).or_insert(0) += m;
        }
        Self { multiplicities: map }
    }
}

/// dim H^0(C_D) for the skyscraper sheaf on D: the degree of D.
pub fn skyscraper_dim(d: &CurvePointDivisor) -> u64 {
    d.degree()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(g: i64) -> CurveContext<i64> {
        CurveContext::with_default_points(g).unwrap()
    }

    #[test]
    fn rejects_small_genus() {
        assert_eq!(
            CurveContext::<i64>::with_default_points(1).unwrap_err(),
            CurveError::GenusOutOfRange(1)
        );
        assert!(CurveContext::<i64>::with_default_points(0).is_err());
    }

    #[test]
    fn rejects_bad_point_lists() {
        let err = CurveContext::<i64>::new(2, vec!["a".into()]).unwrap_err();
        assert_eq!(err, CurveError::WrongPointCount { expected: 2, got: 1 });
        let err = CurveContext::<i64>::new(2, vec!["a".into(), "a".into()]).unwrap_err();
        assert_eq!(err, CurveError::DuplicatePoint("a".into()));
    }

    #[test]
    fn h0_of_canonical_multiples() {
        assert_eq!(ctx(2).h0_mk(0), 1);
        assert_eq!(ctx(3).h0_mk(1), 3);
        // Riemann-Roch oracle at g=2, m=2: deg(2K) = 4, h^1(2K) = h^0(-K) = 0,
        // so h^0 = 4 - g + 1 = 3.
        assert_eq!(ctx(2).h0_mk(2), 3);
        assert_eq!(ctx(2).h0_mk(-1), 0);
    }

    #[test]
    fn h1_of_canonical_multiples() {
        assert_eq!(ctx(2).h1_mk(2), 0);
        assert_eq!(ctx(5).h1_mk(0), 5);
        assert_eq!(ctx(3).h1_mk(1), 1);
    }

    #[test]
    fn curve_riemann_roch_holds() {
        for g in 2..=8 {
            let c = ctx(g);
            for m in -5..=7 {
                assert_eq!(
                    c.h0_mk(m) - c.h1_mk(m),
                    m * (2 * g - 2) - g + 1,
                    "g={g} m={m}"
                );
            }
        }
    }

    #[test]
    fn skyscraper_dims() {
        let c = ctx(2);
        let k = c.canonical_divisor();
        assert_eq!(skyscraper_dim(&k), 2);
        let q = CurvePointDivisor::single("p", 1).unwrap();
        assert_eq!(skyscraper_dim(&k.plus(&q)), 3);
        assert_eq!(skyscraper_dim(&CurvePointDivisor::single("p", 3).unwrap()), 3);
    }

    #[test]
    fn bigint_genus_works() {
        use num_bigint::BigInt;
        let c = CurveContext::<BigInt>::with_default_points(4).unwrap();
        assert_eq!(c.h0_mk(3), BigInt::from(15));
    }
}
