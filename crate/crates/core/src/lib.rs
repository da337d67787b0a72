//! Exact divisor calculus on the ruled surfaces attached to a Hitchin
//! system: intersection lattices and cohomology packages for the three
//! surface models, symbolically verified transition matrices of the
//! elementary transformation, Laurent-tail residue sections with the
//! tangency verdict, and spectral-curve descriptors bundling all of it.
//!
//! Integer arithmetic is generic over [`scalar::IntScalar`] (any signed
//! exact ring; `i64` and `num_bigint::BigInt` out of the box) and the
//! floating tail computations over [`scalar::RealScalar`] (`f32`, `f64`).
//! The crate root exports concrete aliases for the common choices.

pub mod cohomology;
pub mod curve;
pub mod elm;
pub mod expr;
pub mod lattice;
pub mod residue;
pub mod scalar;
pub mod spectral;
pub mod tables;
pub mod verify;

pub use cohomology::{CohomologyDims, CohomologyError, HitchinDims};
pub use curve::{CurveContext, CurveError, CurvePointDivisor};
pub use elm::{ChartAtlas, CocycleCheck, ElmError, LocalFactorKind, ProjTransition, RewriteRules};
pub use expr::{Expr, Monomial, Sym};
pub use lattice::{AmpleReport, DivClass, LatticeError, SurfaceKind, SurfaceModel};
pub use residue::{
    BranchPattern, GenusAccounting, LaurentTail, ResidueError, ResidueSection, SpectralLocalData,
    SpectralPointData, TangencyReport,
};
pub use scalar::{IntScalar, RealScalar};
pub use spectral::{HiggsCharData, SpectralDescriptor, SpectralError};
pub use verify::CheckOutcome;

use num_bigint::BigInt;

/// Default exact working types.
pub type Curve = CurveContext<i64>;
pub type Surface = SurfaceModel<i64>;
pub type Class = DivClass<i64>;
pub type ChartExpr = Expr<i64>;
pub type Transition = ProjTransition<i64>;

/// Arbitrary-precision variants for sweeps past the i64 comfort zone.
pub type BigCurve = CurveContext<BigInt>;
pub type BigSurface = SurfaceModel<BigInt>;
pub type BigClass = DivClass<BigInt>;

/// Default floating tail types.
pub type Tail = LaurentTail<f64>;
pub type Section = ResidueSection<f64>;
pub type LocalData = SpectralLocalData<f64>;
pub type Descriptor = SpectralDescriptor<i64, f64>;

/// Single-precision variants.
pub type Tail32 = LaurentTail<f32>;
pub type Section32 = ResidueSection<f32>;
pub type LocalData32 = SpectralLocalData<f32>;
