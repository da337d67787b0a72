//! Transition matrices of the elementary-transformed ruled surface,
//! verified symbolically. A chart atlas carries per-overlap rewrite rules
//! (z_j -> g_ij z_i, g_ik -> g_ij g_jk, g_ii -> 1, g_ji -> g_ij^{-1},
//! with g_ij = 1 on overlaps avoiding the marked point), and the
//! projective 2x2 matrices are compared through their rewritten normal
//! forms.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::expr::{Expr, Monomial, Sym};
use crate::lattice::{DivClass, LatticeError};
use crate::scalar::IntScalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ElmError {
    #[error("chart index {0} out of range (atlas has {1} charts)")]
    ChartOutOfRange(u32, u32),
    #[error("overlap ({0},{1}) is not part of the atlas")]
    UnknownOverlap(u32, u32),
    #[error("an overlap must join two distinct charts, got ({0},{0})")]
    SelfOverlap(u32),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn key(i: u32, j: u32) -> (u32, u32) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

/// Chart cover of the base curve with flagged overlaps.
#[derive(Debug, Clone)]
pub struct ChartAtlas {
    num_charts: u32,
    /// (i, j) with i < j mapped to the `contains_q0` flag.
    overlaps: BTreeMap<(u32, u32), bool>,
    /// Injected rule replacements, for negative controls.
    overrides: BTreeMap<Sym, Monomial>,
}

impl ChartAtlas {
    pub fn new(num_charts: u32, overlaps: &[(u32, u32, bool)]) -> Result<Self, ElmError> {
        let mut map = BTreeMap::new();
        for &(i, j, q0) in overlaps {
            if i == j {
                return Err(ElmError::SelfOverlap(i));
            }
            for c in [i, j] {
                if c >= num_charts {
                    return Err(ElmError::ChartOutOfRange(c, num_charts));
                }
            }
            // Flag is an OR across duplicate listings.
            let e = map.entry(key(i, j)).or_insert(false);
            *e = *e || q0;
        }
        Ok(Self {
            num_charts,
            overlaps: map,
            overrides: BTreeMap::new(),
        })
    }

    /// Random connected atlas: a spanning tree plus extra chords, each
    /// overlap carrying the marked point with probability 1/2.
    pub fn random(rng: &mut impl Rng, num_charts: u32) -> Self {
        assert!(num_charts >= 2);
        let mut overlaps = Vec::new();
        for j in 1..num_charts {
            let i = rng.gen_range(0..j);
            overlaps.push((i, j, rng.gen_bool(0.5)));
        }
        let extra = rng.gen_range(0..=2 * num_charts);
        for _ in 0..extra {
            let i = rng.gen_range(0..num_charts);
            let j = rng.gen_range(0..num_charts);
            if i != j {
                overlaps.push((i, j, rng.gen_bool(0.5)));
            }
        }
        Self::new(num_charts, &overlaps).expect("generated overlaps are valid")
    }

    pub fn num_charts(&self) -> u32 {
        self.num_charts
    }

    pub fn overlaps(&self) -> impl Iterator<Item = (u32, u32, bool)> + '_ {
        self.overlaps.iter().map(|(&(i, j), &q0)| (i, j, q0))
    }

    pub fn has_overlap(&self, i: u32, j: u32) -> bool {
        i != j && self.overlaps.contains_key(&key(i, j))
    }

    pub fn overlap_contains_q0(&self, i: u32, j: u32) -> Option<bool> {
        self.overlaps.get(&key(i, j)).copied()
    }

    /// Ordered triples (i, j, k) of distinct charts whose three pairwise
    /// overlaps all exist.
    pub fn triples(&self) -> Vec<(u32, u32, u32)> {
        let n = self.num_charts;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i != j
                        && j != k
                        && i != k
                        && self.has_overlap(i, j)
                        && self.has_overlap(j, k)
                        && self.has_overlap(i, k)
                    {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// Replace the rewrite target of one symbol. Breaks soundness on
    /// purpose; fault-injection hook for the negative controls.
    pub fn inject_rule(&mut self, sym: Sym, target: Monomial) {
        self.overrides.insert(sym, target);
    }

    /// Rules for a single overlap: z_j -> g_ij z_i, with g_ij -> 1 when
    /// the overlap avoids the marked point.
    pub fn pair_rules(&self, i: u32, j: u32) -> Result<RewriteRules, ElmError> {
        let q0 = self
            .overlap_contains_q0(i, j)
            .ok_or(ElmError::UnknownOverlap(i, j))?;
        let mut rules = RewriteRules::new(self.overrides.clone());
        rules.add_overlap(i, j, q0);
        Ok(rules)
    }

    /// Rules for a cocycle triple: z_j -> g_ij z_i, z_k -> g_jk z_j, the
    /// chain rule g_ik -> g_ij g_jk, plus the g = 1 collapses forced by
    /// overlaps avoiding the marked point.
    pub fn triple_rules(&self, i: u32, j: u32, k: u32) -> Result<RewriteRules, ElmError> {
        let q_ij = self
            .overlap_contains_q0(i, j)
            .ok_or(ElmError::UnknownOverlap(i, j))?;
        let q_jk = self
            .overlap_contains_q0(j, k)
            .ok_or(ElmError::UnknownOverlap(j, k))?;
        let q_ik = self
            .overlap_contains_q0(i, k)
            .ok_or(ElmError::UnknownOverlap(i, k))?;
        let mut rules = RewriteRules::new(self.overrides.clone());
        rules.add(
            Sym::Z(j),
            Monomial::from_pairs(&[(Sym::G(i, j), 1), (Sym::Z(i), 1)]),
        );
        rules.add(
            Sym::Z(k),
            Monomial::from_pairs(&[(Sym::G(j, k), 1), (Sym::Z(j), 1)]),
        );
        let free_count = [q_ij, q_jk, q_ik].iter().filter(|q| !**q).count();
        if free_count >= 2 {
            // Two trivial transitions force the third on the triple overlap.
            rules.add(Sym::G(i, j), Monomial::one());
            rules.add(Sym::G(j, k), Monomial::one());
            rules.add(Sym::G(i, k), Monomial::one());
        } else if !q_ij {
            rules.add(Sym::G(i, j), Monomial::one());
            rules.add(Sym::G(i, k), Monomial::var(Sym::G(j, k)));
        } else if !q_jk {
            rules.add(Sym::G(j, k), Monomial::one());
            rules.add(Sym::G(i, k), Monomial::var(Sym::G(i, j)));
        } else if !q_ik {
            // g_ik = 1 forces g_jk = g_ij^{-1} on the triple overlap.
            rules.add(Sym::G(i, k), Monomial::one());
            rules.add(Sym::G(j, k), Monomial::from_pairs(&[(Sym::G(i, j), -1)]));
        } else {
            rules.add(
                Sym::G(i, k),
                Monomial::from_pairs(&[(Sym::G(i, j), 1), (Sym::G(j, k), 1)]),
            );
        }
        Ok(rules)
    }
}

/// Directed symbol-to-monomial substitutions with inversion and identity
/// conventions for the g symbols.
#[derive(Debug, Clone)]
pub struct RewriteRules {
    rules: BTreeMap<Sym, Monomial>,
    overrides: BTreeMap<Sym, Monomial>,
}

impl RewriteRules {
    fn new(overrides: BTreeMap<Sym, Monomial>) -> Self {
        Self {
            rules: BTreeMap::new(),
            overrides,
        }
    }

    fn add(&mut self, sym: Sym, target: Monomial) {
        self.rules.insert(sym, target);
    }

    fn add_overlap(&mut self, i: u32, j: u32, contains_q0: bool) {
        if contains_q0 {
            self.add(
                Sym::Z(j),
                Monomial::from_pairs(&[(Sym::G(i, j), 1), (Sym::Z(i), 1)]),
            );
        } else {
            self.add(Sym::G(i, j), Monomial::one());
            self.add(Sym::Z(j), Monomial::var(Sym::Z(i)));
        }
    }

    fn lookup(&self, sym: &Sym) -> Option<Monomial> {
        if let Some(t) = self.overrides.get(sym) {
            return Some(t.clone());
        }
        if let Some(t) = self.rules.get(sym) {
            return Some(t.clone());
        }
        if let Sym::G(a, b) = *sym {
            if a == b {
                return Some(Monomial::one());
            }
            // g_ba reduces through g_ab when a rule for the mirror exists.
            let mirror = Sym::G(b, a);
            if let Some(t) = self.overrides.get(&mirror).or_else(|| self.rules.get(&mirror)) {
                return Some(t.inv());
            }
        }
        None
    }

    /// Canonical form of an expression under these rules.
    pub fn normalize<T: IntScalar>(&self, e: &Expr<T>) -> Expr<T> {
        e.rewrite(&|s| self.lookup(s))
    }
}

/// 2x2 projective transition matrix with entries in the chart algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjTransition<T: IntScalar> {
    entries: [Expr<T>; 4], // row major: [a, b, c, d]
}

impl<T: IntScalar> ProjTransition<T> {
    pub fn new(a: Expr<T>, b: Expr<T>, c: Expr<T>, d: Expr<T>) -> Self {
        Self {
            entries: [a, b, c, d],
        }
    }

    pub fn identity() -> Self {
        Self::new(Expr::one(), Expr::zero(), Expr::zero(), Expr::one())
    }

    /// Unipotent upper-triangular matrix [[1, b], [0, 1]].
    pub fn unipotent(b: Expr<T>) -> Self {
        Self::new(Expr::one(), b, Expr::zero(), Expr::one())
    }

    pub fn entry(&self, row: usize, col: usize) -> &Expr<T> {
        &self.entries[2 * row + col]
    }

    pub fn upper_right(&self) -> &Expr<T> {
        self.entry(0, 1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let e = &self.entries;
        let f = &other.entries;
        Self::new(
            e[0].mul(&f[0]).add(&e[1].mul(&f[2])),
            e[0].mul(&f[1]).add(&e[1].mul(&f[3])),
            e[2].mul(&f[0]).add(&e[3].mul(&f[2])),
            e[2].mul(&f[1]).add(&e[3].mul(&f[3])),
        )
    }

    pub fn det(&self) -> Expr<T> {
        let e = &self.entries;
        e[0].mul(&e[3]).sub(&e[1].mul(&e[2]))
    }

    pub fn map(&self, f: impl Fn(&Expr<T>) -> Expr<T>) -> Self {
        Self {
            entries: [
                f(&self.entries[0]),
                f(&self.entries[1]),
                f(&self.entries[2]),
                f(&self.entries[3]),
            ],
        }
    }

    /// Projective rescaling: when some entry is a single unit-coefficient
    /// term, divide the whole matrix by its monomial. Turns the raw
    /// vector-bundle product [[z_i/z_j, .], [0, z_i/z_j]] into the
    /// Atiyah-normalized [[1, (g_ij - 1) z_i], [0, 1]] shape.
    pub fn normalized(&self) -> Self {
        for idx in [0, 3, 1, 2] {
            if let Some(m) = self.entries[idx].as_unit_monomial() {
                let inv = m.inv();
                return self.map(|e| e.mul_monomial(&inv));
            }
        }
        self.clone()
    }

    /// Equality up to an overall scalar, decided by cross-multiplying
    /// rewritten entries.
    pub fn proj_eq(&self, other: &Self, rules: &RewriteRules) -> bool {
        let a = self.map(|e| rules.normalize(e));
        let b = other.map(|e| rules.normalize(e));
        for p in 0..4 {
            for q in (p + 1)..4 {
                if a.entries[p].mul(&b.entries[q]) != a.entries[q].mul(&b.entries[p]) {
                    return false;
                }
            }
        }
        true
    }
}

impl<T: IntScalar> fmt::Display for ProjTransition<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[ {} | {} ]", self.entries[0], self.entries[1])?;
        write!(f, "[ {} | {} ]", self.entries[2], self.entries[3])
    }
}

/// The three local defining transformations at the marked point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalFactorKind {
    /// elm at p' = (infinity, q0): [[1/z, 0], [0, 1]].
    PPrime,
    /// elm at p = ([-1,1], q0): [[1, 1], [0, 1/z]].
    P,
    /// The composite elm_p . elm_{p'}: [[1/z, 1], [0, 1/z]].
    Combined,
}

pub fn local_factor<T: IntScalar>(kind: LocalFactorKind) -> ProjTransition<T> {
    let z_inv = Expr::monomial(Monomial::from_pairs(&[(Sym::Z(0), -1)]));
    match kind {
        LocalFactorKind::PPrime => {
            ProjTransition::new(z_inv, Expr::zero(), Expr::zero(), Expr::one())
        }
        LocalFactorKind::P => ProjTransition::new(Expr::one(), Expr::one(), Expr::zero(), z_inv),
        LocalFactorKind::Combined => {
            ProjTransition::new(z_inv.clone(), Expr::one(), Expr::zero(), z_inv)
        }
    }
}

/// Transition matrix G_ij = [[1, (g_ij - 1) z_i], [0, 1]], with g_ij = 1
/// (hence the identity) on overlaps avoiding the marked point.
pub fn transition_matrix<T: IntScalar>(
    atlas: &ChartAtlas,
    i: u32,
    j: u32,
) -> Result<ProjTransition<T>, ElmError> {
    let contains_q0 = atlas
        .overlap_contains_q0(i, j)
        .ok_or(ElmError::UnknownOverlap(i, j))?;
    if !contains_q0 {
        return Ok(ProjTransition::identity());
    }
    let g = Expr::var(Sym::G(i, j));
    let z = Expr::var(Sym::Z(i));
    Ok(ProjTransition::unipotent(g.sub(&Expr::one()).mul(&z)))
}

/// Diagonal transition (g_ij, 1) of the split bundle O(q0) (+) O. Its
/// determinant is g_ij, a negative control for the triviality check.
pub fn line_bundle_sum_transition<T: IntScalar>(
    atlas: &ChartAtlas,
    i: u32,
    j: u32,
) -> Result<ProjTransition<T>, ElmError> {
    let contains_q0 = atlas
        .overlap_contains_q0(i, j)
        .ok_or(ElmError::UnknownOverlap(i, j))?;
    let g = if contains_q0 {
        Expr::var(Sym::G(i, j))
    } else {
        Expr::one()
    };
    Ok(ProjTransition::new(
        g,
        Expr::zero(),
        Expr::zero(),
        Expr::one(),
    ))
}

/// Result of a cocycle check with the symbolic evidence.
#[derive(Debug, Clone)]
pub struct CocycleCheck {
    pub ok: bool,
    pub trace: String,
}

/// Checks G_ij G_jk = G_ik modulo scalar under the atlas rewrite rules.
pub fn verify_cocycle<T: IntScalar>(
    atlas: &ChartAtlas,
    i: u32,
    j: u32,
    k: u32,
) -> Result<CocycleCheck, ElmError> {
    let rules = atlas.triple_rules(i, j, k)?;
    let gij = transition_matrix::<T>(atlas, i, j)?;
    let gjk = transition_matrix::<T>(atlas, j, k)?;
    let gik = transition_matrix::<T>(atlas, i, k)?;
    let product = gij.mul(&gjk);
    let ok = product.proj_eq(&gik, &rules);
    let trace = format!(
        "G({i},{j})*G({j},{k}) upper-right: {} -> {} ; G({i},{k}) upper-right: {} -> {}",
        product.upper_right(),
        rules.normalize(product.upper_right()),
        gik.upper_right(),
        rules.normalize(gik.upper_right()),
    );
    Ok(CocycleCheck { ok, trace })
}

/// True when the determinant of every transition matrix in the family
/// rewrites to 1.
pub fn det_is_trivial_for<T: IntScalar>(
    atlas: &ChartAtlas,
    family: impl Fn(&ChartAtlas, u32, u32) -> Result<ProjTransition<T>, ElmError>,
) -> Result<bool, ElmError> {
    for (i, j, _) in atlas.overlaps() {
        let rules = atlas.pair_rules(i, j)?;
        let m = family(atlas, i, j)?;
        if !rules.normalize(&m.normalized().det()).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Determinant triviality of the constructed transition matrices.
pub fn det_is_trivial(atlas: &ChartAtlas) -> bool {
    det_is_trivial_for::<i64>(atlas, |a, i, j| transition_matrix(a, i, j))
        .expect("overlaps come from the atlas itself")
}

/// Transport of a divisor class through the elementary transformation:
/// a C0' + (fiber part) on S' maps to the class with the same coefficients
/// on S.
pub fn elm_divisor_transport<T: IntScalar>(d: &DivClass<T>) -> Result<DivClass<T>, ElmError> {
    if !d.exc.is_empty() {
        return Err(ElmError::Lattice(LatticeError::ClassMismatch {
            expected: 0,
            got: d.exc.len(),
        }));
    }
    Ok(DivClass::on_ruled(d.c0.clone(), d.fdeg.clone()))
}
