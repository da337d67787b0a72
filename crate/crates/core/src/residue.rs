//! Laurent tails, residue sections of skyscraper sheaves, and the local
//! tangency analysis of spectral-curve data: recover the leading tails
//! c_{i,j} from the elementary-symmetric data of the characteristic
//! coefficients, classify the branch pattern over each canonical point,
//! and compare against the prescribed residue section.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex;
use thiserror::Error;

use crate::curve::{CurveContext, CurvePointDivisor};
use crate::scalar::{int, real, IntScalar, RealScalar};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResidueError {
    #[error("no local series supplied at support point `{0}`")]
    MissingSeries(String),
    #[error("tail support does not match the divisor at `{0}`")]
    SupportMismatch(String),
    #[error("split requires the extra point to be distinct from the canonical points, got `{0}`")]
    OverlappingSupport(String),
    #[error("support is not of the form K + q: {0}")]
    BadSplitSupport(String),
    #[error("sections have different supports")]
    IncompatibleSections,
    #[error("root recovery did not converge (max residual {residual})")]
    RootNonConvergence { residual: String },
    #[error("inconsistent spectral data: {0}")]
    InconsistentData(String),
    #[error("point `{0}` carries no lambda tail; tangency needs one per canonical point")]
    MissingLambda(String),
}

/// Principal part of a local function at one point: coeffs[j-1] is the
/// coefficient of z^{-(j)}.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentTail<F: RealScalar> {
    pub point: String,
    pub coeffs: Vec<Complex<F>>,
}

impl<F: RealScalar> LaurentTail<F> {
    pub fn new(point: impl Into<String>, coeffs: Vec<Complex<F>>) -> Self {
        assert!(!coeffs.is_empty(), "a tail carries at least one coefficient");
        Self {
            point: point.into(),
            coeffs,
        }
    }

    pub fn zero(point: impl Into<String>, order: usize) -> Self {
        Self::new(point, vec![Complex::new(F::zero(), F::zero()); order])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == F::zero())
    }
}

/// Section of the skyscraper sheaf on a point divisor: one dense tail per
/// support point, truncation order = multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueSection<F: RealScalar> {
    support: CurvePointDivisor,
    tails: BTreeMap<String, LaurentTail<F>>,
}

impl<F: RealScalar> ResidueSection<F> {
    pub fn new(
        support: CurvePointDivisor,
        tails: BTreeMap<String, LaurentTail<F>>,
    ) -> Result<Self, ResidueError> {
        for (p, m) in support.multiplicities() {
            match tails.get(p) {
                Some(t) if t.order() as u64 == *m => {}
                _ => return Err(ResidueError::SupportMismatch(p.clone())),
            }
        }
        if tails.len() != support.multiplicities().len() {
            let extra = tails
                .keys()
                .find(|p| !support.contains(p))
                .cloned()
                .unwrap_or_default();
            return Err(ResidueError::SupportMismatch(extra));
        }
        Ok(Self { support, tails })
    }

    pub fn zero(support: CurvePointDivisor) -> Self {
        let tails = support
            .multiplicities()
            .iter()
            .map(|(p, m)| (p.clone(), LaurentTail::zero(p.clone(), *m as usize)))
            .collect();
        Self { support, tails }
    }

    pub fn support(&self) -> &CurvePointDivisor {
        &self.support
    }

    pub fn tail(&self, point: &str) -> Option<&LaurentTail<F>> {
        self.tails.get(point)
    }

    pub fn tails(&self) -> impl Iterator<Item = &LaurentTail<F>> {
        self.tails.values()
    }

    /// Total number of coefficients: dim H^0(C_D) = deg D.
    pub fn dim(&self) -> u64 {
        self.support.degree()
    }

    pub fn add(&self, other: &Self) -> Result<Self, ResidueError> {
        if self.support != other.support {
            return Err(ResidueError::IncompatibleSections);
        }
        let tails = self
            .tails
            .iter()
            .map(|(p, t)| {
                let o = &other.tails[p];
                let coeffs = t
                    .coeffs
                    .iter()
                    .zip(&o.coeffs)
                    .map(|(a, b)| *a + *b)
                    .collect();
                (p.clone(), LaurentTail::new(p.clone(), coeffs))
            })
            .collect();
        Ok(Self {
            support: self.support.clone(),
            tails,
        })
    }
}

/// Local Laurent series at a point, as (order, coefficient) pairs; order
/// -j marks the coefficient of z^{-j}.
pub type LocalSeries<F> = Vec<(i64, Complex<F>)>;

/// Truncate each local series to its principal part along D: the residue
/// section of the local function. Holomorphic parts are discarded.
pub fn residue_section_of<F: RealScalar>(
    series: &BTreeMap<String, LocalSeries<F>>,
    d: &CurvePointDivisor,
) -> Result<ResidueSection<F>, ResidueError> {
    let mut tails = BTreeMap::new();
    for (p, m) in d.multiplicities() {
        let local = series
            .get(p)
            .ok_or_else(|| ResidueError::MissingSeries(p.clone()))?;
        let mut coeffs = vec![Complex::new(F::zero(), F::zero()); *m as usize];
        for (order, c) in local {
            if *order < 0 {
                let j = (-order) as u64;
                if j <= *m {
                    coeffs[(j - 1) as usize] = coeffs[(j - 1) as usize] + *c;
                }
            }
        }
        tails.insert(p.clone(), LaurentTail::new(p.clone(), coeffs));
    }
    ResidueSection::new(d.clone(), tails)
}

/// Split a section over K + q into the pair over K and over q. The extra
/// point must be distinct from the canonical points.
pub fn split_tail<F: RealScalar>(
    canonical_points: &[String],
    rho: &ResidueSection<F>,
) -> Result<(ResidueSection<F>, ResidueSection<F>), ResidueError> {
    let canonical: BTreeSet<&String> = canonical_points.iter().collect();
    let mut extra = None;
    for (p, m) in rho.support().multiplicities() {
        if canonical.contains(p) {
            if *m != 1 {
                return Err(ResidueError::OverlappingSupport(p.clone()));
            }
        } else {
            if *m != 1 || extra.is_some() {
                return Err(ResidueError::BadSplitSupport(format!(
                    "unexpected point `{p}` of multiplicity {m}"
                )));
            }
            extra = Some(p.clone());
        }
    }
    let extra = extra.ok_or_else(|| {
        ResidueError::BadSplitSupport("no extra point beyond the canonical divisor".into())
    })?;
    for p in canonical_points {
        if !rho.support().contains(p) {
            return Err(ResidueError::BadSplitSupport(format!(
                "canonical point `{p}` missing from the support"
            )));
        }
    }
    let k_support = CurvePointDivisor::new(
        canonical_points.iter().map(|p| (p.clone(), 1)).collect(),
    )
    .expect("canonical points are nonempty");
    let k_tails = canonical_points
        .iter()
        .map(|p| (p.clone(), rho.tail(p).unwrap().clone()))
        .collect();
    let q_support = CurvePointDivisor::single(extra.clone(), 1).unwrap();
    let mut q_tails = BTreeMap::new();
    q_tails.insert(extra.clone(), rho.tail(&extra).unwrap().clone());
    Ok((
        ResidueSection::new(k_support, k_tails)?,
        ResidueSection::new(q_support, q_tails)?,
    ))
}

/// Concatenate two sections with disjoint supports.
pub fn merge_sections<F: RealScalar>(
    a: &ResidueSection<F>,
    b: &ResidueSection<F>,
) -> Result<ResidueSection<F>, ResidueError> {
    for p in b.support().multiplicities().keys() {
        if a.support().contains(p) {
            return Err(ResidueError::OverlappingSupport(p.clone()));
        }
    }
    let support = a.support().plus(b.support());
    let mut tails = a.tails.clone();
    tails.extend(b.tails.clone());
    ResidueSection::new(support, tails)
}

/// Elementary symmetric functions e_1..e_n of the given values.
pub fn elementary_symmetric<F: RealScalar>(values: &[Complex<F>]) -> Vec<Complex<F>> {
    let zero = Complex::new(F::zero(), F::zero());
    let mut e = vec![zero; values.len() + 1];
    e[0] = Complex::new(F::one(), F::zero());
    for (i, v) in values.iter().enumerate() {
        for m in (1..=i + 1).rev() {
            e[m] = e[m] + *v * e[m - 1];
        }
    }
    e.remove(0);
    e
}

fn eval_monic<F: RealScalar>(coeffs: &[Complex<F>], x: Complex<F>) -> Complex<F> {
    // coeffs[m-1] multiplies T^{n-m}; leading coefficient is 1.
    let mut acc = Complex::new(F::one(), F::zero());
    for c in coeffs {
        acc = acc * x + *c;
    }
    acc
}

/// Recover the multiset {c_1..c_n} with e_m(c) = abar_m: the roots of
/// T^n - abar_1 T^{n-1} + ... + (-1)^n abar_n, by Durand-Kerner iteration,
/// validated by re-expanding the elementary symmetric functions to within
/// `tol` relative error. Output sorted by (re, im).
pub fn leading_tails<F: RealScalar>(
    n: usize,
    abar: &[Complex<F>],
    tol: F,
) -> Result<Vec<Complex<F>>, ResidueError> {
    assert!(n >= 1, "degree must be at least 1");
    assert_eq!(abar.len(), n, "need one coefficient per pole order");
    let zero = Complex::new(F::zero(), F::zero());
    if abar.iter().all(|c| c.norm() == F::zero()) {
        return Ok(vec![zero; n]);
    }
    if n == 1 {
        return Ok(vec![abar[0]]);
    }
    // Monic coefficients below the leading term: (-1)^m abar_m.
    let mut coeffs = Vec::with_capacity(n);
    let mut sign = -F::one();
    for a in abar {
        coeffs.push(*a * sign);
        sign = -sign;
    }
    // Root radius bound and staggered initial guesses.
    let mut radius = F::zero();
    for (m, c) in coeffs.iter().enumerate() {
        let r = c.norm().powf(F::one() / real::<F>((m + 1) as f64));
        if r > radius {
            radius = r;
        }
    }
    let radius = radius + F::one();
    let seed = Complex::new(real::<F>(0.4), real::<F>(0.9));
    let mut roots: Vec<Complex<F>> = (0..n)
        .map(|k| seed.powu(k as u32 + 1) * radius)
        .collect();
    let eps = F::epsilon() * real::<F>(64.0);
    for _ in 0..1000 {
        let mut max_step = F::zero();
        for k in 0..n {
            let mut denom = Complex::new(F::one(), F::zero());
            for j in 0..n {
                if j != k {
                    denom = denom * (roots[k] - roots[j]);
                }
            }
            if denom.norm() == F::zero() {
                continue;
            }
            let step = eval_monic(&coeffs, roots[k]) / denom;
            roots[k] = roots[k] - step;
            let rel = step.norm() / (F::one() + roots[k].norm());
            if rel > max_step {
                max_step = rel;
            }
        }
        if max_step < eps {
            break;
        }
    }
    // Validate by re-expansion.
    let e = elementary_symmetric(&roots);
    let mut residual = F::zero();
    for (recovered, expected) in e.iter().zip(abar) {
        let r = (*recovered - *expected).norm() / (F::one() + expected.norm());
        if r > residual {
            residual = r;
        }
    }
    if residual > tol {
        return Err(ResidueError::RootNonConvergence {
            residual: format!("{residual}"),
        });
    }
    let mut out = roots;
    out.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    Ok(out)
}

/// Branch configuration over one canonical point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchPattern {
    /// All leading tails pairwise distinct: ordinary n-fold crossing.
    Ordinary,
    /// Some tail repeats: a worse-than-ordinary singularity.
    Repeated,
    /// All tails vanish: the curve misses the section over this point.
    MissesBase,
}

/// Classify the tail multiset over one point with the given separation
/// tolerance.
pub fn classify_tails<F: RealScalar>(tails: &[Complex<F>], tol: F) -> BranchPattern {
    let scale = tails
        .iter()
        .map(|c| c.norm())
        .fold(F::zero(), |a, b| if b > a { b } else { a });
    if scale <= tol {
        return BranchPattern::MissesBase;
    }
    for a in 0..tails.len() {
        for b in (a + 1)..tails.len() {
            if (tails[a] - tails[b]).norm() <= tol * (F::one() + scale) {
                return BranchPattern::Repeated;
            }
        }
    }
    BranchPattern::Ordinary
}

/// Pairwise distinctness of the branch directions. The all-zero multiset
/// is vacuously ordinary (no singularity at all); `classify_tails` keeps
/// the distinction.
pub fn is_ordinary_n_fold<F: RealScalar>(tails: &[Complex<F>], tol: F) -> bool {
    !matches!(classify_tails(tails, tol), BranchPattern::Repeated)
}

/// Genus bookkeeping for a degree-n cover whose image passes the section
/// points with multiplicity n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusAccounting<T: IntScalar> {
    pub arithmetic_genus: T,
    pub delta_total: T,
    pub geometric_genus: T,
    /// True when every canonical point carries ordinary n-fold data;
    /// otherwise the geometric genus is only an upper bound.
    pub exact: bool,
}

pub fn genus_accounting<T: IntScalar>(
    ctx: &CurveContext<T>,
    n: i64,
    patterns: &[BranchPattern],
) -> GenusAccounting<T> {
    let gm1 = ctx.genus() - T::one();
    let arithmetic = int::<T>(2 * n * n - n) * gm1.clone() + T::one();
    // 2g-2 points, delta = n(n-1)/2 each.
    let delta_total = int::<T>(n * (n - 1)) * gm1.clone();
    let geometric = arithmetic.clone() - delta_total.clone();
    let exact = patterns.len() == ctx.canonical_points().len()
        && patterns.iter().all(|p| *p == BranchPattern::Ordinary);
    GenusAccounting {
        arithmetic_genus: arithmetic,
        delta_total,
        geometric_genus: geometric,
        exact,
    }
}

/// Minimum-cost perfect assignment on a square cost matrix; returns
/// `assign` with `assign[row] = column`.
pub fn min_cost_assignment<F: RealScalar>(cost: &[Vec<F>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    let inf = F::infinity();
    let mut u = vec![F::zero(); n + 1];
    let mut v = vec![F::zero(); n + 1];
    let mut matched = vec![0usize; n + 1]; // matched[col] = row (1-based)
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        matched[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = matched[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[matched[j]] = u[matched[j]] + delta;
                    v[j] = v[j] - delta;
                } else {
                    minv[j] = minv[j] - delta;
                }
            }
            j0 = j1;
            if matched[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            matched[j0] = matched[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assign = vec![0usize; n];
    for j in 1..=n {
        if matched[j] > 0 {
            assign[matched[j] - 1] = j - 1;
        }
    }
    assign
}

/// Per-canonical-point leading data of a spectral curve: the elementary
/// symmetric values abar_1..abar_n of the leading tails, and optionally
/// the lambda tail of the comparison section.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralPointData<F: RealScalar> {
    pub id: String,
    pub abar: Vec<Complex<F>>,
    pub lambda: Option<Vec<Complex<F>>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralLocalData<F: RealScalar> {
    pub genus: i64,
    pub n: usize,
    pub points: Vec<SpectralPointData<F>>,
}

impl<F: RealScalar> SpectralLocalData<F> {
    pub fn validate(&self) -> Result<(), ResidueError> {
        if self.genus < 2 {
            return Err(ResidueError::InconsistentData(format!(
                "genus must be at least 2, got {}",
                self.genus
            )));
        }
        if self.n < 1 {
            return Err(ResidueError::InconsistentData("degree n must be positive".into()));
        }
        let expected = (2 * self.genus - 2) as usize;
        if self.points.len() != expected {
            return Err(ResidueError::InconsistentData(format!(
                "expected {expected} point records (one per canonical point), got {}",
                self.points.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for p in &self.points {
            if !seen.insert(&p.id) {
                return Err(ResidueError::InconsistentData(format!(
                    "point id `{}` repeats",
                    p.id
                )));
            }
            if p.abar.len() != self.n {
                return Err(ResidueError::InconsistentData(format!(
                    "point `{}` carries {} abar values, expected n = {}",
                    p.id,
                    p.abar.len(),
                    self.n
                )));
            }
            if let Some(l) = &p.lambda {
                if l.len() != self.n {
                    return Err(ResidueError::InconsistentData(format!(
                        "point `{}` carries {} lambda values, expected n = {}",
                        p.id,
                        l.len(),
                        self.n
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Per-point outcome of the tangency comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct PointTangency<F: RealScalar> {
    pub id: String,
    /// Leading tails of k over this point, recovered from abar.
    pub recovered: Vec<Complex<F>>,
    pub pattern: BranchPattern,
    /// |c - lambda| per branch after minimum-cost matching; empty when no
    /// lambda was supplied.
    pub residuals: Vec<F>,
    pub pass: bool,
    /// First branch index exceeding the tolerance, if any.
    pub failing_branch: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TangencyReport<F: RealScalar> {
    pub points: Vec<PointTangency<F>>,
    pub pass: bool,
}

/// Tangency verdict: the residue section of k + pi*(lambda) must vanish
/// at every canonical point, i.e. the recovered tails {c_{i,j}} must
/// cancel the lambda tails as multisets (minimum-cost matching, since no
/// branch order is prescribed).
pub fn check_tangency<F: RealScalar>(
    data: &SpectralLocalData<F>,
    tol: F,
) -> Result<TangencyReport<F>, ResidueError> {
    data.validate()?;
    let mut points = Vec::with_capacity(data.points.len());
    let mut pass = true;
    for p in &data.points {
        let lambda = p
            .lambda
            .as_ref()
            .ok_or_else(|| ResidueError::MissingLambda(p.id.clone()))?;
        let recovered = leading_tails(data.n, &p.abar, tol)?;
        let pattern = classify_tails(&recovered, tol);
        let n = data.n;
        let cost: Vec<Vec<F>> = (0..n)
            .map(|a| (0..n).map(|b| (recovered[a] - lambda[b]).norm()).collect())
            .collect();
        let assign = min_cost_assignment(&cost);
        let mut residuals = vec![F::zero(); n];
        let mut failing = None;
        for a in 0..n {
            let r = cost[a][assign[a]];
            residuals[a] = r;
            let scale = F::one() + recovered[a].norm();
            if r > tol * scale && failing.is_none() {
                failing = Some(a);
            }
        }
        let point_pass = failing.is_none();
        pass = pass && point_pass;
        points.push(PointTangency {
            id: p.id.clone(),
            recovered,
            pattern,
            residuals,
            pass: point_pass,
            failing_branch: failing,
        });
    }
    Ok(TangencyReport { points, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn truncation_keeps_principal_part() {
        let mut series = BTreeMap::new();
        series.insert(
            "p".to_string(),
            vec![(-2, c(3.0, 0.0)), (-1, c(5.0, 0.0)), (0, c(7.0, 0.0)), (1, c(1.0, 0.0))],
        );
        let d = CurvePointDivisor::single("p", 2).unwrap();
        let rho = residue_section_of(&series, &d).unwrap();
        assert_eq!(rho.tail("p").unwrap().coeffs, vec![c(5.0, 0.0), c(3.0, 0.0)]);
        // Holomorphic series -> zero tail.
        let mut holo = BTreeMap::new();
        holo.insert("p".to_string(), vec![(0, c(7.0, 0.0)), (3, c(2.0, 1.0))]);
        let rho0 = residue_section_of(&holo, &d).unwrap();
        assert!(rho0.tail("p").unwrap().is_zero());
    }

    #[test]
    fn missing_series_is_an_error() {
        let series: BTreeMap<String, LocalSeries<f64>> = BTreeMap::new();
        let d = CurvePointDivisor::single("p", 1).unwrap();
        assert_eq!(
            residue_section_of(&series, &d).unwrap_err(),
            ResidueError::MissingSeries("p".into())
        );
    }

    #[test]
    fn split_and_merge_round_trip() {
        let ctx = CurveContext::<i64>::with_default_points(2).unwrap();
        let canonical = ctx.canonical_points().to_vec();
        let support = ctx
            .canonical_divisor()
            .plus(&CurvePointDivisor::single("extra", 1).unwrap());
        let mut tails = BTreeMap::new();
        for (i, p) in support.multiplicities().keys().enumerate() {
            tails.insert(p.clone(), LaurentTail::new(p.clone(), vec![c(i as f64 + 1.0, -1.0)]));
        }
        let rho = ResidueSection::new(support, tails).unwrap();
        assert_eq!(rho.dim(), 3); // 2g-1 at g=2
        let (rho_k, rho_q) = split_tail(&canonical, &rho).unwrap();
        assert_eq!(rho_k.dim(), 2);
        assert_eq!(rho_q.dim(), 1);
        let merged = merge_sections(&rho_k, &rho_q).unwrap();
        assert_eq!(merged, rho);
    }

    #[test]
    fn split_rejects_overlapping_support() {
        let ctx = CurveContext::<i64>::with_default_points(2).unwrap();
        let canonical = ctx.canonical_points().to_vec();
        // q coincides with q1: multiplicity 2 at q1.
        let support = ctx
            .canonical_divisor()
            .plus(&CurvePointDivisor::single("q1", 1).unwrap());
        let rho = ResidueSection::<f64>::zero(support);
        assert!(matches!(
            split_tail(&canonical, &rho),
            Err(ResidueError::OverlappingSupport(_))
        ));
    }

    #[test]
    fn zero_section_splits_to_zero() {
        let ctx = CurveContext::<i64>::with_default_points(2).unwrap();
        let canonical = ctx.canonical_points().to_vec();
        let support = ctx
            .canonical_divisor()
            .plus(&CurvePointDivisor::single("extra", 1).unwrap());
        let rho = ResidueSection::<f64>::zero(support);
        let (a, b) = split_tail(&canonical, &rho).unwrap();
        assert!(a.tails().all(|t| t.is_zero()));
        assert!(b.tails().all(|t| t.is_zero()));
    }

    #[test]
    fn leading_tails_examples() {
        // (k + 1/z)(k + 2/z): e = (3, 2), roots {1, 2}.
        let roots = leading_tails(2, &[c(3.0, 0.0), c(2.0, 0.0)], 1e-8).unwrap();
        assert!((roots[0] - c(1.0, 0.0)).norm() < 1e-9);
        assert!((roots[1] - c(2.0, 0.0)).norm() < 1e-9);
        // (k + 1/z)^2: e = (2, 1), double root.
        let roots = leading_tails(2, &[c(2.0, 0.0), c(1.0, 0.0)], 1e-8).unwrap();
        assert!((roots[0] - c(1.0, 0.0)).norm() < 1e-6);
        assert!((roots[1] - c(1.0, 0.0)).norm() < 1e-6);
        // All-zero data: no pole over the point.
        let roots = leading_tails(3, &[c(0.0, 0.0); 3], 1e-8).unwrap();
        assert!(roots.iter().all(|r| r.norm() == 0.0));
    }

    #[test]
    fn branch_classification() {
        assert_eq!(
            classify_tails(&[c(1.0, 0.0), c(2.0, 0.0)], 1e-8),
            BranchPattern::Ordinary
        );
        assert_eq!(
            classify_tails(&[c(1.0, 0.0), c(1.0, 0.0)], 1e-8),
            BranchPattern::Repeated
        );
        assert_eq!(
            classify_tails(&[c(0.0, 0.0), c(0.0, 0.0)], 1e-8),
            BranchPattern::MissesBase
        );
        assert!(is_ordinary_n_fold(&[c(1.0, 0.0), c(2.0, 0.0)], 1e-8));
        assert!(!is_ordinary_n_fold(&[c(1.0, 0.0), c(1.0, 0.0)], 1e-8));
        assert!(is_ordinary_n_fold(&[c(0.0, 0.0), c(0.0, 0.0)], 1e-8));
    }

    #[test]
    fn genus_accounting_examples() {
        let ctx2 = CurveContext::<i64>::with_default_points(2).unwrap();
        let acc = genus_accounting(&ctx2, 2, &[BranchPattern::Ordinary, BranchPattern::Ordinary]);
        assert_eq!(acc.arithmetic_genus, 7);
        assert_eq!(acc.delta_total, 2);
        assert_eq!(acc.geometric_genus, 5);
        assert!(acc.exact);
        let ctx3 = CurveContext::<i64>::with_default_points(3).unwrap();
        let acc = genus_accounting(&ctx3, 3, &[BranchPattern::Ordinary; 4]);
        assert_eq!(
            (acc.arithmetic_genus, acc.delta_total, acc.geometric_genus),
            (31, 12, 19)
        );
        let acc = genus_accounting(&ctx2, 1, &[BranchPattern::Ordinary; 2]);
        assert_eq!(
            (acc.arithmetic_genus, acc.delta_total, acc.geometric_genus),
            (2, 0, 2)
        );
        // Non-ordinary data only bounds the genus.
        let acc = genus_accounting(&ctx2, 2, &[BranchPattern::Ordinary, BranchPattern::Repeated]);
        assert!(!acc.exact);
    }

    #[test]
    fn assignment_picks_the_cheapest_pairing() {
        let cost = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert_eq!(min_cost_assignment(&cost), vec![1, 0]);
        let cost = vec![
            vec![4.0, 1.0, 3.0],
            vec![2.0, 0.0, 5.0],
            vec![3.0, 2.0, 2.0],
        ];
        // Optimal total 1 + 2 + 2 = 5 via (0->1, 1->0, 2->2).
        assert_eq!(min_cost_assignment(&cost), vec![1, 0, 2]);
    }

    fn sample_data(lambda_shift: Option<(usize, usize, f64)>) -> SpectralLocalData<f64> {
        // g=2, n=2, abar = (3, 2) per point so c = {1, 2}; lambda matches
        // up to relabeling; optionally perturb one entry.
        let mut points = Vec::new();
        for (i, id) in ["q1", "q2"].iter().enumerate() {
            let mut lambda = if i == 0 {
                vec![c(1.0, 0.0), c(2.0, 0.0)]
            } else {
                vec![c(2.0, 0.0), c(1.0, 0.0)] // relabeled branches
            };
            if let Some((pi, bi, eps)) = lambda_shift {
                if pi == i {
                    lambda[bi] += eps;
                }
            }
            points.push(SpectralPointData {
                id: id.to_string(),
                abar: vec![c(3.0, 0.0), c(2.0, 0.0)],
                lambda: Some(lambda),
            });
        }
        SpectralLocalData {
            genus: 2,
            n: 2,
            points,
        }
    }

    #[test]
    fn tangency_pass_and_negative_control() {
        let report = check_tangency(&sample_data(None), 1e-8).unwrap();
        assert!(report.pass);
        for p in &report.points {
            assert!(p.pass);
            assert_eq!(p.pattern, BranchPattern::Ordinary);
        }
        // Perturb one lambda entry by 1: that point must fail and be named.
        let report = check_tangency(&sample_data(Some((1, 0, 1.0))), 1e-8).unwrap();
        assert!(!report.pass);
        assert!(report.points[0].pass);
        assert!(!report.points[1].pass);
        assert_eq!(report.points[1].id, "q2");
        assert!(report.points[1].failing_branch.is_some());
    }

    #[test]
    fn tangency_requires_lambda() {
        let mut data = sample_data(None);
        data.points[0].lambda = None;
        assert_eq!(
            check_tangency(&data, 1e-8).unwrap_err(),
            ResidueError::MissingLambda("q1".into())
        );
    }

    #[test]
    fn section_addition_is_linear_with_truncation() {
        let d = CurvePointDivisor::single("p", 2).unwrap();
        let mut f = BTreeMap::new();
        f.insert("p".to_string(), vec![(-2, c(1.0, 2.0)), (-1, c(0.5, 0.0))]);
        let mut g = BTreeMap::new();
        g.insert("p".to_string(), vec![(-2, c(-1.0, 0.0)), (0, c(9.0, 9.0))]);
        let rf = residue_section_of(&f, &d).unwrap();
        let rg = residue_section_of(&g, &d).unwrap();
        let mut sum_series = BTreeMap::new();
        sum_series.insert(
            "p".to_string(),
            vec![(-2, c(1.0, 2.0)), (-1, c(0.5, 0.0)), (-2, c(-1.0, 0.0)), (0, c(9.0, 9.0))],
        );
        let r_sum = residue_section_of(&sum_series, &d).unwrap();
        assert_eq!(rf.add(&rg).unwrap(), r_sum);
    }
}
