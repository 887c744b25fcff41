use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use num_traits::{One, Zero};

use super::{Coalgebra, IncidenceFunction, LinCombo, Rational};
use crate::error::{NcpError, Result};
use crate::kreweras::{compose, relative_kreweras};
use crate::lattice::{check_size, enumerate_ncp, interval_elements, Divisibility, Interval};
use crate::partition::NoncrossingPartition;

fn indicator(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// Incidence coalgebra of a finite poset: basis the intervals, with
/// `Δ[a, c] = Σ_{a ≤ b ≤ c} [a, b] ⊗ [b, c]`.
#[derive(Clone, Debug)]
pub struct IntervalCoalgebra<E> {
    elements: Vec<E>,
    index: HashMap<E, usize>,
    /// `above[i]`: indices `j` with `elements[i] ≤ elements[j]`, `i` included.
    above: Vec<Vec<usize>>,
    /// Size of each principal down-set; strictly increasing along the order.
    height: Vec<usize>,
    basis: Vec<Interval<E>>,
}

impl<E> IntervalCoalgebra<E>
where
    E: Divisibility + Clone + Ord + Hash + fmt::Display + fmt::Debug,
{
    pub fn from_poset(mut elements: Vec<E>) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let above: Vec<Vec<usize>> = elements
            .iter()
            .map(|a| (0..elements.len()).filter(|&j| a.divides(&elements[j])).collect())
            .collect();
        let mut height = vec![0; elements.len()];
        for ups in &above {
            for &j in ups {
                height[j] += 1;
            }
        }
        let mut basis: Vec<Interval<E>> = above
            .iter()
            .enumerate()
            .flat_map(|(i, ups)| ups.iter().map(move |&j| (i, j)))
            .map(|(i, j)| Interval::new_unchecked(elements[i].clone(), elements[j].clone()))
            .collect();
        basis.sort();
        IntervalCoalgebra { elements, index, above, height, basis }
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    fn idx(&self, e: &E) -> usize {
        self.index[e]
    }

    /// Elements `b` with `lower ≤ b ≤ upper`.
    pub fn between(&self, v: &Interval<E>) -> Vec<&E> {
        self.above[self.idx(v.lower())]
            .iter()
            .map(|&j| &self.elements[j])
            .filter(|b| b.divides(v.upper()))
            .collect()
    }

    /// Möbius function by `μ(a,a) = 1`, `μ(a,c) = -Σ_{a ≤ b < c} μ(a,b)`,
    /// memoized over all pairs.
    pub fn moebius_by_recursion(&self) -> IncidenceFunction<Interval<E>> {
        let mut table: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (a, ups) in self.above.iter().enumerate() {
            let mut order = ups.clone();
            order.sort_by_key(|&j| self.height[j]);
            for &c in &order {
                let mut value = Rational::zero();
                if c == a {
                    value = Rational::one();
                } else {
                    for &b in ups {
                        if b != c && self.elements[b].divides(&self.elements[c]) {
                            value -= &table[&(a, b)];
                        }
                    }
                }
                table.insert((a, c), value);
            }
        }
        IncidenceFunction::from_fn(&self.basis, |v| table[&(self.idx(v.lower()), self.idx(v.upper()))].clone())
    }
}

impl IntervalCoalgebra<NoncrossingPartition> {
    /// Intervals of `(NCP(n), |)`.
    pub fn ncp(n: usize) -> Result<Self> {
        Ok(Self::from_poset(enumerate_ncp(n)?))
    }
}

impl IntervalCoalgebra<u64> {
    /// Intervals of the divisibility order on `1..=bound`.
    pub fn divisibility(bound: u64) -> Self {
        Self::from_poset((1..=bound).collect())
    }
}

impl<E> Coalgebra for IntervalCoalgebra<E>
where
    E: Divisibility + Clone + Ord + Hash + fmt::Display + fmt::Debug,
{
    type Basis = Interval<E>;

    fn basis(&self) -> &[Interval<E>] {
        &self.basis
    }

    fn delta(&self, v: &Interval<E>) -> LinCombo<(Interval<E>, Interval<E>)> {
        self.between(v)
            .into_iter()
            .map(|b| {
                let left = Interval::new_unchecked(v.lower().clone(), b.clone());
                let right = Interval::new_unchecked(b.clone(), v.upper().clone());
                ((left, right), Rational::one())
            })
            .collect()
    }

    fn counit(&self, v: &Interval<E>) -> Rational {
        indicator(v.lower() == v.upper())
    }

    fn moebius(&self) -> Result<IncidenceFunction<Interval<E>>> {
        Ok(self.moebius_by_recursion())
    }
}

/// Incidence coalgebra of the partial monoid `(NCP(n), ∘)`:
/// `Δπ = Σ_{α∘β = π} α ⊗ β`, with every pair found by enumeration.
#[derive(Clone, Debug)]
pub struct CompositionCoalgebra {
    n: usize,
    basis: Vec<NoncrossingPartition>,
    deltas: BTreeMap<NoncrossingPartition, LinCombo<(NoncrossingPartition, NoncrossingPartition)>>,
}

impl CompositionCoalgebra {
    pub fn new(n: usize) -> Result<Self> {
        let basis = enumerate_ncp(n)?;
        let mut deltas: BTreeMap<_, LinCombo<_>> = basis.iter().map(|p| (p.clone(), LinCombo::zero())).collect();
        for a in &basis {
            for b in &basis {
                if let Some(p) = compose(a, b)? {
                    deltas.get_mut(&p).expect("products stay in NCP(n)").add_term((a.clone(), b.clone()), Rational::one());
                }
            }
        }
        Ok(CompositionCoalgebra { n, basis, deltas })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of admissible pairs, the total term count of `Δ`.
    pub fn admissible_pairs(&self) -> usize {
        self.deltas.values().map(LinCombo::len).sum()
    }
}

impl Coalgebra for CompositionCoalgebra {
    type Basis = NoncrossingPartition;

    fn basis(&self) -> &[NoncrossingPartition] {
        &self.basis
    }

    fn delta(&self, p: &NoncrossingPartition) -> LinCombo<(NoncrossingPartition, NoncrossingPartition)> {
        self.deltas.get(p).cloned().unwrap_or_default()
    }

    fn counit(&self, p: &NoncrossingPartition) -> Rational {
        indicator(p.is_zero())
    }
}

/// Multiplicative monoid on `1..=bound`: `Δm = Σ_{ij = m} i ⊗ j`.
#[derive(Clone, Debug)]
pub struct MultiplicativeCoalgebra {
    basis: Vec<u64>,
}

impl MultiplicativeCoalgebra {
    pub fn new(bound: u64) -> Self {
        MultiplicativeCoalgebra { basis: (1..=bound).collect() }
    }

    pub fn bound(&self) -> u64 {
        self.basis.len() as u64
    }
}

impl Coalgebra for MultiplicativeCoalgebra {
    type Basis = u64;

    fn basis(&self) -> &[u64] {
        &self.basis
    }

    fn delta(&self, m: &u64) -> LinCombo<(u64, u64)> {
        (1..=*m).filter(|i| m.is_multiple_of(*i)).map(|i| ((i, m / i), Rational::one())).collect()
    }

    fn counit(&self, m: &u64) -> Rational {
        indicator(*m == 1)
    }
}

/// `Δ[a, c]` in the interval coalgebra of `NCP(n)`.
pub fn delta_interval_ncp(v: &Interval) -> Result<LinCombo<(Interval, Interval)>> {
    Ok(interval_elements(v)?
        .into_iter()
        .map(|b| {
            let pair = (Interval::new_unchecked(v.lower().clone(), b.clone()), Interval::new_unchecked(b, v.upper().clone()));
            (pair, Rational::one())
        })
        .collect())
}

/// `Δ∘π = Σ_{φ | π} φ ⊗ K_π(φ)`.
pub fn delta_compose_ncp(p: &NoncrossingPartition) -> Result<LinCombo<(NoncrossingPartition, NoncrossingPartition)>> {
    check_size(p.n())?;
    let mut out = LinCombo::zero();
    for phi in enumerate_ncp(p.n())? {
        if phi.divides(p) {
            let complement = relative_kreweras(&phi, p)?;
            out.add_term((phi, complement), Rational::one());
        }
    }
    Ok(out)
}

fn check_bound(value: u64, bound: u64) -> Result<()> {
    if value > bound || value == 0 {
        return Err(NcpError::OutOfBound { value, bound });
    }
    Ok(())
}

/// `Δ[a, b] = Σ_{a | k | b} [a, k] ⊗ [k, b]` for `b ≤ bound`.
pub fn delta_divisibility_int(a: u64, b: u64, bound: u64) -> Result<LinCombo<(Interval<u64>, Interval<u64>)>> {
    check_bound(a, bound)?;
    check_bound(b, bound)?;
    Interval::new(a, b)?;
    Ok((a..=b)
        .filter(|k| k % a == 0 && b.is_multiple_of(*k))
        .map(|k| ((Interval::new_unchecked(a, k), Interval::new_unchecked(k, b)), Rational::one()))
        .collect())
}

/// `Δm = Σ_{ij = m} i ⊗ j` for `m ≤ bound`.
pub fn delta_multiplicative_int(m: u64, bound: u64) -> Result<LinCombo<(u64, u64)>> {
    check_bound(m, bound)?;
    Ok(MultiplicativeCoalgebra::new(m).delta(&m))
}
