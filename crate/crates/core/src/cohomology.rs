//! Full (h0, h1, h2) packages for the divisor families the toolkit
//! handles, each obtained by pushing the surface computation down to the
//! base curve so it can be cross-checked against surface Riemann-Roch.

use thiserror::Error;

use crate::curve::CurveContext;
use crate::lattice::{LatticeError, SurfaceModel};
use crate::scalar::{int, IntScalar};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("decomposition requires n1 > 0 and n2 > 0, got n1={n1}, n2={n2}")]
    SPrimeRange { n1: i64, n2: i64 },
    #[error("degree must be at least 1, got n={0}")]
    DegreeRange(i64),
    #[error("dim |L_{{n,n,n}}| is only computed for n > 2, got n={0}; the vanishing argument does not apply")]
    VanishingRange(i64),
    #[error("positivity test failed for the vanishing divisor: {0}")]
    AmplenessFailed(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Cohomology dimensions of a line bundle on a surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyDims<T: IntScalar> {
    pub h0: T,
    pub h1: T,
    pub h2: T,
}

impl<T: IntScalar> CohomologyDims<T> {
    pub fn euler_characteristic(&self) -> T {
        self.h0.clone() - self.h1.clone() + self.h2.clone()
    }
}

/// Dimension data of the degree-n spectral family on S'.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HitchinDims<T: IntScalar> {
    pub genus_spectral: T,
    pub dim_linear_system_sprime: T,
    pub dims: CohomologyDims<T>,
}

/// h^i(O_{S'}(n1 C0' + n2 K_R f')) as the sum over m = 0..n1 of the curve
/// cohomology of O((n2 - m)K). Valid for n1, n2 > 0.
pub fn dims_on_sprime<T: IntScalar>(
    ctx: &CurveContext<T>,
    n1: i64,
    n2: i64,
) -> Result<CohomologyDims<T>, CohomologyError> {
    if n1 <= 0 || n2 <= 0 {
        return Err(CohomologyError::SPrimeRange { n1, n2 });
    }
    let mut h0 = T::zero();
    let mut h1 = T::zero();
    for m in 0..=n1 {
        h0 = h0 + ctx.h0_mk(n2 - m);
        h1 = h1 + ctx.h1_mk(n2 - m);
    }
    // Curve h^2 vanishes identically, so every summand contributes 0.
    Ok(CohomologyDims {
        h0,
        h1,
        h2: T::zero(),
    })
}

/// Genus and linear-system dimension of the degree-n spectral family,
/// with the full cohomology package of n C0' + n K_R f'.
pub fn hitchin_system_dims<T: IntScalar>(
    ctx: &CurveContext<T>,
    n: i64,
) -> Result<HitchinDims<T>, CohomologyError> {
    if n < 1 {
        return Err(CohomologyError::DegreeRange(n));
    }
    let dims = dims_on_sprime(ctx, n, n)?;
    let genus = int::<T>(n * n) * (ctx.genus() - T::one()) + T::one();
    Ok(HitchinDims {
        genus_spectral: genus,
        dim_linear_system_sprime: dims.h0.clone() - T::one(),
        dims,
    })
}

/// Cohomology of L_{n,n,n} on S~ for n > 2: h1 = h2 = 0 once the
/// positivity of the vanishing divisor is confirmed, and h0 is then the
/// Riemann-Roch Euler characteristic.
pub fn dims_lnnn<T: IntScalar>(
    ctx: &CurveContext<T>,
    n: i64,
) -> Result<CohomologyDims<T>, CohomologyError> {
    if n <= 2 {
        return Err(CohomologyError::VanishingRange(n));
    }
    let st = SurfaceModel::s_tilde(ctx.clone());
    let test = st.vanishing_test_divisor(int(n))?;
    let report = st.is_ample_generator_test(&test)?;
    if !report.ample {
        return Err(CohomologyError::AmplenessFailed(format!(
            "D^2={}, D.C0={}, D.f={}",
            report.d_squared, report.dot_section, report.dot_fiber
        )));
    }
    let l = st.l_nnn(int(n))?;
    let h0 = st.riemann_roch_chi(&l)?;
    Ok(CohomologyDims {
        h0,
        h1: T::zero(),
        h2: T::zero(),
    })
}

/// Dimension of the moduli of tangential covers: dim |L_{n,n,n}| for n > 2.
pub fn moduli_dim_ht<T: IntScalar>(ctx: &CurveContext<T>, n: i64) -> Result<T, CohomologyError> {
    Ok(dims_lnnn(ctx, n)?.h0 - T::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(g: i64) -> CurveContext<i64> {
        CurveContext::with_default_points(g).unwrap()
    }

    #[test]
    fn dims_on_sprime_examples() {
        assert_eq!(
            dims_on_sprime(&ctx(2), 2, 2).unwrap(),
            CohomologyDims { h0: 6, h1: 3, h2: 0 }
        );
        assert_eq!(dims_on_sprime(&ctx(3), 3, 3).unwrap().h1, 4);
        // Oracle: h^0(K) + h^0(O) = 2 + 1 and h^1(K) + h^1(O) = 1 + 2 at g=2.
        assert_eq!(
            dims_on_sprime(&ctx(2), 1, 1).unwrap(),
            CohomologyDims { h0: 3, h1: 3, h2: 0 }
        );
    }

    #[test]
    fn dims_on_sprime_rejects_out_of_range() {
        assert!(matches!(
            dims_on_sprime(&ctx(2), 0, 2),
            Err(CohomologyError::SPrimeRange { .. })
        ));
        assert!(dims_on_sprime(&ctx(2), 2, 0).is_err());
    }

    #[test]
    fn decomposition_agrees_with_riemann_roch() {
        for g in 2..=10 {
            let c = ctx(g);
            let sp = SurfaceModel::s_prime(c.clone());
            for n1 in 1..=5 {
                for n2 in 1..=5 {
                    let dims = dims_on_sprime(&c, n1, n2).unwrap();
                    let class = crate::lattice::DivClass::on_ruled(n1, n2 * (2 * g - 2));
                    assert_eq!(
                        dims.euler_characteristic(),
                        sp.riemann_roch_chi(&class).unwrap(),
                        "g={g} n1={n1} n2={n2}"
                    );
                }
            }
        }
    }

    #[test]
    fn hitchin_dims_examples() {
        let h = hitchin_system_dims(&ctx(2), 2).unwrap();
        assert_eq!(h.genus_spectral, 5);
        assert_eq!(h.dim_linear_system_sprime, 5);
        let h = hitchin_system_dims(&ctx(2), 1).unwrap();
        assert_eq!(h.genus_spectral, 2);
        assert_eq!(h.dim_linear_system_sprime, 2);
        let h = hitchin_system_dims(&ctx(4), 3).unwrap();
        assert_eq!(h.genus_spectral, 28);
        assert_eq!(h.dim_linear_system_sprime, 28);
    }

    #[test]
    fn h1_is_g_plus_one() {
        for g in 2..=8 {
            for n in 1..=6 {
                let dims = dims_on_sprime(&ctx(g), n, n).unwrap();
                assert_eq!(dims.h1, g + 1, "g={g} n={n}");
                assert_eq!(dims.h2, 0);
            }
        }
    }

    #[test]
    fn lnnn_examples() {
        assert_eq!(
            dims_lnnn(&ctx(2), 3).unwrap(),
            CohomologyDims { h0: 8, h1: 0, h2: 0 }
        );
        assert_eq!(dims_lnnn(&ctx(3), 4).unwrap().h0, 30);
        assert!(matches!(
            dims_lnnn(&ctx(2), 2),
            Err(CohomologyError::VanishingRange(2))
        ));
    }

    #[test]
    fn moduli_dim_examples() {
        assert_eq!(moduli_dim_ht(&ctx(2), 3).unwrap(), 7);
        assert_eq!(moduli_dim_ht(&ctx(5), 4).unwrap(), 59);
        assert!(moduli_dim_ht(&ctx(2), 2).is_err());
    }
}
