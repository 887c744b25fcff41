//! Incidence coalgebras over exact rationals and their convolution algebras.

mod coalgebras;
mod cumulants;
mod reduced;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{NcpError, Result};

pub use coalgebras::{
    delta_compose_ncp, delta_divisibility_int, delta_interval_ncp, delta_multiplicative_int, CompositionCoalgebra,
    IntervalCoalgebra, MultiplicativeCoalgebra,
};
pub use cumulants::{
    cumulants_from_moments, moebius_of_full_lattices, moments_from_cumulants, CumulantSequence, MomentSequence,
};
pub use reduced::{
    check_psi_morphism, check_quotient_morphism, factors_through, integer_reduced_lift, is_reduced,
    is_reduced_integer, moebius_ncp_interval, psi, psi_morphism_failure, quotient, reduced_convolution_formula, reduced_lift,
};

/// Exact rational coefficients.
pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A finite formal linear combination; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinCombo<B: Ord> {
    terms: BTreeMap<B, Rational>,
}

impl<B: Ord> Default for LinCombo<B> {
    fn default() -> Self {
        LinCombo { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> LinCombo<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis_element(b: B) -> Self {
        let mut out = Self::zero();
        out.add_term(b, Rational::one());
        out
    }

    pub fn add_term(&mut self, b: B, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, b: &B) -> Rational {
        self.terms.get(b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&B, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.terms.iter().map(|(b, v)| (b.clone(), v * c)).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Linear extension of `f` on basis elements.
    pub fn map_basis<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> C) -> LinCombo<C> {
        self.terms.iter().map(|(b, c)| (f(b), c.clone())).collect()
    }
}

impl<B: Ord + Clone> FromIterator<(B, Rational)> for LinCombo<B> {
    fn from_iter<I: IntoIterator<Item = (B, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }
}

impl<B: Ord + fmt::Debug> fmt::Display for LinCombo<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{b:?}")?;
            } else {
                write!(f, "({c})·{b:?}")?;
            }
        }
        Ok(())
    }
}

/// A rational-valued function on a finite basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceFunction<B: Ord> {
    values: BTreeMap<B, Rational>,
}

impl<B: Ord + Clone + fmt::Display> IncidenceFunction<B> {
    pub fn from_fn(basis: &[B], mut f: impl FnMut(&B) -> Rational) -> Self {
        IncidenceFunction { values: basis.iter().map(|b| (b.clone(), f(b))).collect() }
    }

    pub fn try_from_fn(basis: &[B], mut f: impl FnMut(&B) -> Result<Rational>) -> Result<Self> {
        let mut values = BTreeMap::new();
        for b in basis {
            values.insert(b.clone(), f(b)?);
        }
        Ok(IncidenceFunction { values })
    }

    pub fn constant(basis: &[B], c: Rational) -> Self {
        Self::from_fn(basis, |_| c.clone())
    }

    pub fn get(&self, b: &B) -> Option<&Rational> {
        self.values.get(b)
    }

    pub fn eval(&self, b: &B) -> Result<&Rational> {
        self.values.get(b).ok_or_else(|| NcpError::BasisMismatch(b.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Rational)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Linear extension to formal combinations.
    pub fn apply(&self, x: &LinCombo<B>) -> Result<Rational> {
        let mut total = Rational::zero();
        for (b, c) in x.terms() {
            total += self.eval(b)? * c;
        }
        Ok(total)
    }

    /// Errors unless the function is defined on exactly `basis`.
    pub fn check_basis(&self, basis: &[B]) -> Result<()> {
        for b in basis {
            self.eval(b)?;
        }
        if self.values.len() != basis.len() {
            let known: BTreeSet<&B> = basis.iter().collect();
            let extra = self.values.keys().find(|b| !known.contains(b)).expect("sizes differ");
            return Err(NcpError::BasisMismatch(extra.to_string()));
        }
        Ok(())
    }
}

/// A finite-dimensional coalgebra with a distinguished basis.
pub trait Coalgebra {
    type Basis: Clone + Ord + fmt::Display + fmt::Debug;

    fn basis(&self) -> &[Self::Basis];

    fn delta(&self, x: &Self::Basis) -> LinCombo<(Self::Basis, Self::Basis)>;

    fn counit(&self, x: &Self::Basis) -> Rational;

    /// The counit as a function; the unit for convolution.
    fn counit_function(&self) -> IncidenceFunction<Self::Basis> {
        IncidenceFunction::from_fn(self.basis(), |x| self.counit(x))
    }

    fn zeta(&self) -> IncidenceFunction<Self::Basis> {
        IncidenceFunction::constant(self.basis(), Rational::one())
    }

    /// `(f ∗ g)(x) = Σ c · f(y) g(z)` over `Δx = Σ c · y ⊗ z`.
    fn convolve(
        &self,
        f: &IncidenceFunction<Self::Basis>,
        g: &IncidenceFunction<Self::Basis>,
    ) -> Result<IncidenceFunction<Self::Basis>> {
        f.check_basis(self.basis())?;
        g.check_basis(self.basis())?;
        IncidenceFunction::try_from_fn(self.basis(), |x| {
            let mut total = Rational::zero();
            for ((y, z), c) in self.delta(x).terms() {
                total += c * f.eval(y)? * g.eval(z)?;
            }
            Ok(total)
        })
    }

    /// The `g` with `f ∗ g = ε`, solved by recursion on the right tensor factor.
    fn convolution_inverse(&self, f: &IncidenceFunction<Self::Basis>) -> Result<IncidenceFunction<Self::Basis>> {
        f.check_basis(self.basis())?;
        let mut solved: BTreeMap<Self::Basis, Rational> = BTreeMap::new();
        let mut pending: BTreeSet<Self::Basis> = BTreeSet::new();
        for x in self.basis() {
            solve_inverse(self, f, x, &mut solved, &mut pending)?;
        }
        Ok(IncidenceFunction { values: solved })
    }

    fn moebius(&self) -> Result<IncidenceFunction<Self::Basis>> {
        self.convolution_inverse(&self.zeta())
    }
}

fn solve_inverse<C: Coalgebra + ?Sized>(
    coalg: &C,
    f: &IncidenceFunction<C::Basis>,
    x: &C::Basis,
    solved: &mut BTreeMap<C::Basis, Rational>,
    pending: &mut BTreeSet<C::Basis>,
) -> Result<Rational> {
    if let Some(v) = solved.get(x) {
        return Ok(v.clone());
    }
    if !pending.insert(x.clone()) {
        return Err(NcpError::NotInvertible(format!("cyclic dependency at {x}")));
    }
    let mut diagonal = Rational::zero();
    let mut rest = Rational::zero();
    for ((y, z), c) in coalg.delta(x).terms() {
        if z == x {
            diagonal += c * f.eval(y)?;
        } else {
            rest += c * f.eval(y)? * solve_inverse(coalg, f, z, solved, pending)?;
        }
    }
    if diagonal.is_zero() {
        return Err(NcpError::NotInvertible(x.to_string()));
    }
    let value = (coalg.counit(x) - rest) / diagonal;
    pending.remove(x);
    solved.insert(x.clone(), value.clone());
    Ok(value)
}

type Triple<B> = (B, B, B);

/// `(Δ ⊗ id)Δx` and `(id ⊗ Δ)Δx`.
pub fn iterated_deltas<C: Coalgebra>(c: &C, x: &C::Basis) -> (LinCombo<Triple<C::Basis>>, LinCombo<Triple<C::Basis>>) {
    let mut left = LinCombo::zero();
    let mut right = LinCombo::zero();
    for ((y, z), coef) in c.delta(x).terms() {
        for ((y1, y2), c1) in c.delta(y).terms() {
            left.add_term((y1.clone(), y2.clone(), z.clone()), coef * c1);
        }
        for ((z1, z2), c2) in c.delta(z).terms() {
            right.add_term((y.clone(), z1.clone(), z2.clone()), coef * c2);
        }
    }
    (left, right)
}

/// First basis element violating coassociativity.
pub fn coassociativity_failure<C: Coalgebra>(c: &C) -> Option<C::Basis> {
    c.basis().iter().find(|x| {
        let (l, r) = iterated_deltas(c, x);
        l != r
    }).cloned()
}

/// First basis element violating `(ε ⊗ id)Δ = id = (id ⊗ ε)Δ`.
pub fn counit_failure<C: Coalgebra>(c: &C) -> Option<C::Basis> {
    c.basis().iter().find(|x| {
        let delta = c.delta(x);
        let mut left = LinCombo::zero();
        let mut right = LinCombo::zero();
        for ((y, z), coef) in delta.terms() {
            left.add_term(z.clone(), coef * c.counit(y));
            right.add_term(y.clone(), coef * c.counit(z));
        }
        let expected = LinCombo::basis_element((*x).clone());
        left != expected || right != expected
    }).cloned()
}
