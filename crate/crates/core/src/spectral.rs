//! Spectral-curve descriptors: the divisor classes of the degree-n
//! spectral family on all three surface models, the genus bookkeeping,
//! and (when lambda tails accompany the data) the tangency verdict.

use thiserror::Error;

use crate::cohomology::{hitchin_system_dims, CohomologyError};
use crate::curve::CurveContext;
use crate::elm::{elm_divisor_transport, ElmError};
use crate::lattice::{DivClass, LatticeError, SurfaceModel};
use crate::residue::{
    check_tangency, classify_tails, genus_accounting, leading_tails, BranchPattern,
    GenusAccounting, ResidueError, SpectralLocalData, TangencyReport,
};
use crate::scalar::{int, IntScalar, RealScalar};

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("degree must be at least 1, got n={0}")]
    DegreeRange(i64),
    #[error("local data has n={data_n}, descriptor requested n={n}")]
    DegreeMismatch { n: i64, data_n: usize },
    #[error("local data has genus {data_g}, base curve has genus {g}")]
    GenusMismatch { g: i64, data_g: i64 },
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Elm(#[from] ElmError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// Class of the spectral curve on S': n C0' + n K_R f'.
pub fn class_in_sprime<T: IntScalar>(ctx: &CurveContext<T>, n: i64) -> Result<DivClass<T>, SpectralError> {
    if n < 1 {
        return Err(SpectralError::DegreeRange(n));
    }
    Ok(SurfaceModel::s_prime(ctx.clone()).n_section_plus_n_kf(int(n)))
}

/// Dimension of the Hitchin base, computed as the sum of the coefficient
/// spaces h^0(mK), m = 1..n, and checked against the linear-system count
/// n^2(g-1) + 1 on the compactification.
pub fn hitchin_base_dim<T: IntScalar>(ctx: &CurveContext<T>, n: i64) -> Result<T, SpectralError> {
    if n < 1 {
        return Err(SpectralError::DegreeRange(n));
    }
    let mut sum = T::zero();
    for m in 1..=n {
        sum = sum + ctx.h0_mk(m);
    }
    let closed = int::<T>(n * n) * (ctx.genus() - T::one()) + T::one();
    assert_eq!(
        sum, closed,
        "Hitchin base dimension disagrees with the linear-system count"
    );
    Ok(sum)
}

/// Characteristic-coefficient data of a Higgs field: the global
/// coefficient dimensions together with the local leading data at the
/// canonical points.
#[derive(Debug, Clone)]
pub struct HiggsCharData<T: IntScalar, F: RealScalar> {
    pub ctx: CurveContext<T>,
    pub n: i64,
    pub local: SpectralLocalData<F>,
}

impl<T: IntScalar, F: RealScalar> HiggsCharData<T, F> {
    pub fn new(
        ctx: CurveContext<T>,
        n: i64,
        local: SpectralLocalData<F>,
    ) -> Result<Self, SpectralError> {
        if n < 1 {
            return Err(SpectralError::DegreeRange(n));
        }
        local.validate()?;
        if local.n as i64 != n {
            return Err(SpectralError::DegreeMismatch {
                n,
                data_n: local.n,
            });
        }
        if local.genus != ctx.genus_i64() {
            return Err(SpectralError::GenusMismatch {
                g: ctx.genus_i64(),
                data_g: local.genus,
            });
        }
        Ok(Self { ctx, n, local })
    }
}

/// Everything the toolkit derives from one characteristic datum.
#[derive(Debug, Clone)]
pub struct SpectralDescriptor<T: IntScalar, F: RealScalar> {
    pub n: i64,
    pub class_sprime: DivClass<T>,
    pub class_s: DivClass<T>,
    pub class_stilde: DivClass<T>,
    /// Adjunction genus of the image in S (before resolving).
    pub genus_s: T,
    /// Genus bookkeeping: arithmetic on S, total delta, geometric.
    pub genus: GenusAccounting<T>,
    /// Genus of the smooth spectral curve on S'.
    pub genus_sprime: T,
    pub hitchin_base_dim: T,
    /// Branch pattern over each canonical point, recovered from abar.
    pub patterns: Vec<(String, BranchPattern)>,
    pub all_ordinary: bool,
    /// Present when every point carries lambda tails.
    pub tangency: Option<TangencyReport<F>>,
}

/// Assemble the descriptor: classes on S'/S/S~, genus triple, per-point
/// ordinariness, and the tangency verdict when lambda data is present.
pub fn build<T: IntScalar, F: RealScalar>(
    data: &HiggsCharData<T, F>,
    tol: F,
) -> Result<SpectralDescriptor<T, F>, SpectralError> {
    let ctx = &data.ctx;
    let n = data.n;
    let class_sprime = class_in_sprime(ctx, n)?;
    let class_s = elm_divisor_transport(&class_sprime)?;
    let st = SurfaceModel::s_tilde(ctx.clone());
    let class_stilde = st.l_nnn(int(n))?;

    let s = SurfaceModel::s(ctx.clone());
    let genus_s = s.adjunction_genus(&class_s)?;

    let mut patterns = Vec::with_capacity(data.local.points.len());
    for p in &data.local.points {
        let tails = leading_tails(data.local.n, &p.abar, tol)?;
        patterns.push((p.id.clone(), classify_tails(&tails, tol)));
    }
    let pattern_list: Vec<BranchPattern> = patterns.iter().map(|(_, p)| *p).collect();
    let genus = genus_accounting(ctx, n, &pattern_list);
    let all_ordinary = pattern_list.iter().all(|p| *p == BranchPattern::Ordinary);

    let hdims = hitchin_system_dims(ctx, n)?;
    let tangency = if data.local.points.iter().all(|p| p.lambda.is_some()) {
        Some(check_tangency(&data.local, tol)?)
    } else {
        None
    };
    Ok(SpectralDescriptor {
        n,
        class_sprime,
        class_s,
        class_stilde,
        genus_s,
        genus,
        genus_sprime: hdims.genus_spectral,
        hitchin_base_dim: hitchin_base_dim(ctx, n)?,
        patterns,
        all_ordinary,
        tangency,
    })
}
