//! A minimal term algebra for chart computations: integer-coefficient sums
//! of Laurent monomials in chart coordinates z_i and overlap symbols g_ij.
//! The fragment is closed under the matrix products and rewrites the
//! transition-matrix checks need; no general rational functions.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::scalar::IntScalar;

/// A formal symbol: a chart coordinate or an overlap transition symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sym {
    /// Transition symbol g_ij of the overlap (i, j). Sorts before the
    /// coordinates so canonical forms read coefficient-first.
    G(u32, u32),
    /// Coordinate z_i of chart i.
    Z(u32),
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::Z(i) => write!(f, "z{i}"),
            Sym::G(i, j) => write!(f, "g{i}_{j}"),
        }
    }
}

/// Laurent monomial: symbols with nonzero integer exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Monomial(BTreeMap<Sym, i32>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(sym: Sym) -> Self {
        let mut m = BTreeMap::new();
        m.insert(sym, 1);
        Self(m)
    }

    pub fn from_pairs(pairs: &[(Sym, i32)]) -> Self {
        let mut out = Self::one();
        for (s, e) in pairs {
            out.push(*s, *e);
        }
        out
    }

    fn push(&mut self, sym: Sym, exp: i32) {
        let e = self.0.entry(sym).or_insert(0);
        *e += exp;
        if *e == 0 {
            self.0.remove(&sym);
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, e) in &other.0 {
            out.push(*s, *e);
        }
        out
    }

    pub fn inv(&self) -> Self {
        Self(self.0.iter().map(|(s, e)| (*s, -e)).collect())
    }

    pub fn pow(&self, exp: i32) -> Self {
        Self(self.0.iter().map(|(s, e)| (*s, e * exp)).collect())
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&Sym, &i32)> {
        self.0.iter()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (s, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Expanded sum of monomials with coefficients in the exact ring `T`.
/// The map-based representation is already a normal form: fully expanded,
/// lexicographically sorted, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr<T: IntScalar>(BTreeMap<Monomial, T>);

impl<T: IntScalar> Expr<T> {
    pub fn zero() -> Self {
        Self(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(sym: Sym) -> Self {
        Self::term(Monomial::var(sym), T::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, T::one())
    }

    pub fn term(m: Monomial, c: T) -> Self {
        let mut map = BTreeMap::new();
        if !c.is_zero() {
            map.insert(m, c);
        }
        Self(map)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1
            && self
                .0
                .get(&Monomial::one())
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// The sole monomial, when the expression is a single term with
    /// coefficient one.
    pub fn as_unit_monomial(&self) -> Option<&Monomial> {
        if self.0.len() == 1 {
            let (m, c) = self.0.iter().next().unwrap();
            if c.is_one() {
                return Some(m);
            }
        }
        None
    }

    fn push(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&m) {
            Some(existing) => {
                *existing = existing.clone() + c;
                if existing.is_zero() {
                    self.0.remove(&m);
                }
            }
            None => {
                self.0.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.push(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|(m, c)| (m.clone(), -c.clone())).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &other.0 {
                out.push(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self(self.0.iter().map(|(k, c)| (k.mul(m), c.clone())).collect())
    }

    /// One parallel substitution pass: every symbol with a rule is replaced
    /// by its target monomial (raised to the symbol's exponent).
    pub fn substitute(&self, rule: &impl Fn(&Sym) -> Option<Monomial>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.0 {
            let mut replaced = Monomial::one();
            for (s, e) in m.symbols() {
                match rule(s) {
                    Some(target) => replaced = replaced.mul(&target.pow(*e)),
                    None => replaced = replaced.mul(&Monomial::from_pairs(&[(*s, *e)])),
                }
            }
            out.push(replaced, c.clone());
        }
        out
    }

    /// Substitute to fixpoint. Rule targets are monomials, so each pass
    /// replaces symbols independently and termination only needs the rule
    /// graph to be acyclic; a generous cap guards injected rules.
    pub fn rewrite(&self, rule: &impl Fn(&Sym) -> Option<Monomial>) -> Self {
        let mut cur = self.clone();
        for _ in 0..64 {
            let next = cur.substitute(rule);
            if next == cur {
                return next;
            }
            cur = next;
        }
        cur
    }

    /// Numeric spot evaluation at an assignment of the symbols.
    pub fn eval(&self, assign: &BTreeMap<Sym, Complex64>) -> Option<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in &self.0 {
            let mut v = Complex64::new(c.to_f64()?, 0.0);
            for (s, e) in m.symbols() {
                v *= assign.get(s)?.powi(*e);
            }
            total += v;
        }
        Some(total)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.0.iter()
    }
}

impl<T: IntScalar> fmt::Display for Expr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.0 {
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}
