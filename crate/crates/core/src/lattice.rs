//! Numerical divisor-class lattice for the three surface models: the
//! projectivized cotangent compactification S' = P(K (+) O), the ruled
//! surface S obtained from it by elementary transformations at the
//! canonical points, and the blow-up S~ of S at the section images of the
//! canonical points.
//!
//! A class is tracked modulo numerical equivalence as (c0, fdeg, exc):
//! the coefficient of the section class, the total fiber degree, and the
//! signed coefficients of the exceptional curves. All arithmetic is exact.

use thiserror::Error;

use crate::curve::CurveContext;
use crate::scalar::{int, IntScalar};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("class has {got} exceptional coefficients, surface model carries {expected}")]
    ClassMismatch { expected: usize, got: usize },
    #[error("multiplicity vector has length {got}, expected {expected}")]
    MultiplicityLength { expected: usize, got: usize },
    #[error("operation `{0}` is only defined on the {1} model")]
    WrongModel(&'static str, &'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceKind {
    /// S' = P(K (+) O); section self-intersection 2-2g, no exceptionals.
    SPrime,
    /// The elementary-transformed ruled surface; section self-intersection 0.
    S,
    /// Blow-up of S at the 2g-2 section points; 2g-2 exceptional curves.
    STilde,
}

impl SurfaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::SPrime => "S'",
            SurfaceKind::S => "S",
            SurfaceKind::STilde => "S~",
        }
    }
}

/// Divisor class in the numerical lattice of one surface model.
///
/// `exc[i]` is the coefficient of the exceptional curve E_i, so the class
/// reads c0*C0 + (fiber part of total degree fdeg) + sum exc[i]*E_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivClass<T: IntScalar> {
    pub c0: T,
    pub fdeg: T,
    pub exc: Vec<T>,
}

impl<T: IntScalar> DivClass<T> {
    pub fn new(c0: T, fdeg: T, exc: Vec<T>) -> Self {
        Self { c0, fdeg, exc }
    }

    pub fn on_ruled(c0: T, fdeg: T) -> Self {
        Self::new(c0, fdeg, Vec::new())
    }

    pub fn zero(num_exceptional: usize) -> Self {
        Self::new(T::zero(), T::zero(), vec![T::zero(); num_exceptional])
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.fdeg.is_zero() && self.exc.iter().all(|e| e.is_zero())
    }

    pub fn scaled(&self, k: T) -> Self {
        Self::new(
            self.c0.clone() * k.clone(),
            self.fdeg.clone() * k.clone(),
            self.exc.iter().map(|e| e.clone() * k.clone()).collect(),
        )
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.exc.len(), other.exc.len(), "lattice rank mismatch");
        Self::new(
            self.c0.clone() + other.c0.clone(),
            self.fdeg.clone() + other.fdeg.clone(),
            self.exc
                .iter()
                .zip(&other.exc)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(int(-1)))
    }
}

/// One of the three surface models over a fixed base curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel<T: IntScalar> {
    kind: SurfaceKind,
    ctx: CurveContext<T>,
}

/// Positivity report of the Nakai-Moishezon generator test on S~.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmpleReport<T: IntScalar> {
    pub d_squared: T,
    pub dot_section: T,
    pub dot_fiber: T,
    pub dot_exceptional: Vec<T>,
    pub ample: bool,
}

impl<T: IntScalar> SurfaceModel<T> {
    pub fn new(kind: SurfaceKind, ctx: CurveContext<T>) -> Self {
        Self { kind, ctx }
    }

    pub fn s_prime(ctx: CurveContext<T>) -> Self {
        Self::new(SurfaceKind::SPrime, ctx)
    }

    pub fn s(ctx: CurveContext<T>) -> Self {
        Self::new(SurfaceKind::S, ctx)
    }

    pub fn s_tilde(ctx: CurveContext<T>) -> Self {
        Self::new(SurfaceKind::STilde, ctx)
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn ctx(&self) -> &CurveContext<T> {
        &self.ctx
    }

    fn genus(&self) -> T {
        self.ctx.genus()
    }

    /// Self-intersection of the section class: 2-2g on S', 0 on S and S~.
    pub fn c0_self(&self) -> T {
        match self.kind {
            SurfaceKind::SPrime => int::<T>(2) - int::<T>(2) * self.genus(),
            SurfaceKind::S | SurfaceKind::STilde => T::zero(),
        }
    }

    pub fn num_exceptional(&self) -> usize {
        match self.kind {
            SurfaceKind::SPrime | SurfaceKind::S => 0,
            SurfaceKind::STilde => self.ctx.canonical_points().len(),
        }
    }

    fn check(&self, d: &DivClass<T>) -> Result<(), LatticeError> {
        if d.exc.len() != self.num_exceptional() {
            return Err(LatticeError::ClassMismatch {
                expected: self.num_exceptional(),
                got: d.exc.len(),
            });
        }
        Ok(())
    }

    pub fn zero_class(&self) -> DivClass<T> {
        DivClass::zero(self.num_exceptional())
    }

    /// The section class C0 (resp. C0' on S', bl*C0 on S~).
    pub fn section_class(&self) -> DivClass<T> {
        let mut d = self.zero_class();
        d.c0 = T::one();
        d
    }

    /// A fiber class of the given total degree.
    pub fn fiber_class(&self, degree: T) -> DivClass<T> {
        let mut d = self.zero_class();
        d.fdeg = degree;
        d
    }

    /// The class n*C0 + n*K_R f (fiber degree n(2g-2)).
    pub fn n_section_plus_n_kf(&self, n: T) -> DivClass<T> {
        let kf = int::<T>(2) * self.genus() - int::<T>(2);
        let mut d = self.zero_class();
        d.c0 = n.clone();
        d.fdeg = n * kf;
        d
    }

    /// The exceptional curve E_i on S~.
    pub fn exceptional(&self, i: usize) -> Result<DivClass<T>, LatticeError> {
        if self.kind != SurfaceKind::STilde {
            return Err(LatticeError::WrongModel("exceptional", "S~"));
        }
        if i >= self.num_exceptional() {
            return Err(LatticeError::ClassMismatch {
                expected: self.num_exceptional(),
                got: i,
            });
        }
        let mut d = self.zero_class();
        d.exc[i] = T::one();
        Ok(d)
    }

    /// Intersection pairing: A.B = A.c0 B.c0 C0^2 + A.c0 B.fdeg + B.c0 A.fdeg
    /// - sum_i A.exc[i] B.exc[i].
    pub fn intersect(&self, a: &DivClass<T>, b: &DivClass<T>) -> Result<T, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        let cross: T = a
            .exc
            .iter()
            .zip(&b.exc)
            .map(|(x, y)| x.clone() * y.clone())
            .sum();
        Ok(a.c0.clone() * b.c0.clone() * self.c0_self()
            + a.c0.clone() * b.fdeg.clone()
            + b.c0.clone() * a.fdeg.clone()
            - cross)
    }

    /// Canonical class: -2C0' on S'; -2C0 + K_R f on S; its pullback plus
    /// the sum of the exceptional curves on S~.
    pub fn canonical_class(&self) -> DivClass<T> {
        let kf = int::<T>(2) * self.genus() - int::<T>(2);
        match self.kind {
            SurfaceKind::SPrime => DivClass::on_ruled(int(-2), T::zero()),
            SurfaceKind::S => DivClass::on_ruled(int(-2), kf),
            SurfaceKind::STilde => {
                DivClass::new(int(-2), kf, vec![T::one(); self.num_exceptional()])
            }
        }
    }

    /// Arithmetic genus of a curve in the class D via adjunction:
    /// D.(D + K)/2 + 1.
    pub fn adjunction_genus(&self, d: &DivClass<T>) -> Result<T, LatticeError> {
        let k = self.canonical_class();
        let pairing = self.intersect(d, &d.plus(&k))?;
        Ok(pairing / int(2) + T::one())
    }

    /// chi(O) = 1 - g on all three models.
    pub fn chi_structure_sheaf(&self) -> T {
        T::one() - self.genus()
    }

    /// Euler characteristic of O(D) by surface Riemann-Roch:
    /// D.(D - K)/2 + (1 - g).
    pub fn riemann_roch_chi(&self, d: &DivClass<T>) -> Result<T, LatticeError> {
        let k = self.canonical_class();
        let pairing = self.intersect(d, &d.minus(&k))?;
        Ok(pairing / int(2) + self.chi_structure_sheaf())
    }

    /// Total-transform pullback of a class on S to S~: (c0, fdeg) copied,
    /// no exceptional components.
    pub fn pullback(&self, d: &DivClass<T>) -> Result<DivClass<T>, LatticeError> {
        if self.kind != SurfaceKind::STilde {
            return Err(LatticeError::WrongModel("pullback", "S~"));
        }
        if !d.exc.is_empty() {
            return Err(LatticeError::ClassMismatch {
                expected: 0,
                got: d.exc.len(),
            });
        }
        Ok(DivClass::new(
            d.c0.clone(),
            d.fdeg.clone(),
            vec![T::zero(); self.num_exceptional()],
        ))
    }

    /// Strict transform of a class on S through points of the given
    /// multiplicities: pullback minus mult_i E_i.
    pub fn strict_transform_class(
        &self,
        d: &DivClass<T>,
        mult: &[T],
    ) -> Result<DivClass<T>, LatticeError> {
        let mut lifted = self.pullback(d)?;
        if mult.len() != self.num_exceptional() {
            return Err(LatticeError::MultiplicityLength {
                expected: self.num_exceptional(),
                got: mult.len(),
            });
        }
        for (e, m) in lifted.exc.iter_mut().zip(mult) {
            *e = e.clone() - m.clone();
        }
        Ok(lifted)
    }

    /// L_{n,n,n} = bl*(nC0 + nK_R f) - n * sum E_i on S~.
    pub fn l_nnn(&self, n: T) -> Result<DivClass<T>, LatticeError> {
        let base = DivClass::on_ruled(n.clone(), n.clone() * (int::<T>(2) * self.genus() - int::<T>(2)));
        let mult = vec![n; self.num_exceptional()];
        self.strict_transform_class(&base, &mult)
    }

    /// The divisor bl*((n+2)C0 + (n-1)K_R f) - (n+1) sum E_i whose
    /// positivity drives the Kodaira-vanishing step.
    pub fn vanishing_test_divisor(&self, n: T) -> Result<DivClass<T>, LatticeError> {
        let kf = int::<T>(2) * self.genus() - int::<T>(2);
        let base = DivClass::on_ruled(n.clone() + int(2), (n.clone() - T::one()) * kf);
        let mult = vec![n + T::one(); self.num_exceptional()];
        self.strict_transform_class(&base, &mult)
    }

    /// Nakai-Moishezon positivity against the lattice generators of S~
    /// only: D^2 > 0, D.bl*C0 > 0, D.bl*f > 0, and D.E_i > 0 for all i.
    /// Not a full ampleness decision procedure.
    pub fn is_ample_generator_test(&self, d: &DivClass<T>) -> Result<AmpleReport<T>, LatticeError> {
        if self.kind != SurfaceKind::STilde {
            return Err(LatticeError::WrongModel("is_ample_generator_test", "S~"));
        }
        let d_squared = self.intersect(d, d)?;
        let dot_section = self.intersect(d, &self.section_class())?;
        let dot_fiber = self.intersect(d, &self.fiber_class(T::one()))?;
        let mut dot_exceptional = Vec::with_capacity(self.num_exceptional());
        for i in 0..self.num_exceptional() {
            dot_exceptional.push(self.intersect(d, &self.exceptional(i)?)?);
        }
        let ample = d_squared > T::zero()
            && dot_section > T::zero()
            && dot_fiber > T::zero()
            && dot_exceptional.iter().all(|v| *v > T::zero());
        Ok(AmpleReport {
            d_squared,
            dot_section,
            dot_fiber,
            dot_exceptional,
            ample,
        })
    }
}
