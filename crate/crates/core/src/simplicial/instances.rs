//! Nerves of finite posets and bar complexes of finite partial monoids.

use std::fmt::Debug;
use std::hash::Hash;

use super::{SimplicialMap, TruncatedSimplicialSet};
use crate::error::{NcpError, Result};
use crate::kreweras::compose;
use crate::lattice::{check_size, divides, enumerate_ncp};
use crate::partition::NoncrossingPartition;

/// Largest `M` accepted by the integer instances.
pub const MAX_INTEGER_BOUND: u64 = 100_000;

fn check_bound(bound: u64) -> Result<()> {
    if bound > MAX_INTEGER_BOUND {
        return Err(NcpError::TooLarge { n: bound as usize, max: MAX_INTEGER_BOUND as usize });
    }
    Ok(())
}

/// Order complex: `k`-simplices are multichains `x_0 ≤ .. ≤ x_k`; `d_i` drops
/// `x_i` and `s_i` repeats it.
pub fn nerve<E>(elements: &[E], leq: impl Fn(&E, &E) -> bool, d_max: usize) -> Result<TruncatedSimplicialSet<Vec<E>>>
where
    E: Clone + Eq + Hash + Debug,
{
    let mut levels: Vec<Vec<Vec<E>>> = vec![elements.iter().map(|e| vec![e.clone()]).collect()];
    for _ in 0..d_max {
        let next = levels
            .last()
            .unwrap()
            .iter()
            .flat_map(|c| {
                let last = c.last().unwrap();
                elements.iter().filter(|e| leq(last, e)).map(|e| {
                    let mut c = c.clone();
                    c.push(e.clone());
                    c
                })
            })
            .collect();
        levels.push(next);
    }
    TruncatedSimplicialSet::build(
        levels,
        |_, i, c| {
            let mut c = c.clone();
            c.remove(i);
            Some(c)
        },
        |_, i, c| {
            let mut c = c.clone();
            c.insert(i, c[i].clone());
            Some(c)
        },
    )
}

/// Bar complex: `k`-simplices are `k`-tuples whose product is defined; outer
/// faces drop the first or last entry, inner faces multiply neighbours, and
/// `s_i` inserts the unit at position `i`.
pub fn bar<E>(
    elements: &[E],
    unit: &E,
    mul: impl Fn(&E, &E) -> Option<E>,
    d_max: usize,
) -> Result<TruncatedSimplicialSet<Vec<E>>>
where
    E: Clone + Eq + Hash + Debug,
{
    // each tuple is carried with its product
    let mut level: Vec<(Vec<E>, E)> = vec![(Vec::new(), unit.clone())];
    let mut levels = vec![vec![Vec::new()]];
    for _ in 0..d_max {
        let mut next = Vec::new();
        for (t, product) in &level {
            for e in elements {
                if let Some(p) = mul(product, e) {
                    let mut t = t.clone();
                    t.push(e.clone());
                    next.push((t, p));
                }
            }
        }
        levels.push(next.iter().map(|(t, _)| t.clone()).collect());
        level = next;
    }
    TruncatedSimplicialSet::build(
        levels,
        |k, i, t| {
            let mut t = t.clone();
            if i == 0 {
                t.remove(0);
            } else if i == k {
                t.pop();
            } else {
                let merged = mul(&t[i - 1], &t[i])?;
                t.splice(i - 1..=i, [merged]);
            }
            Some(t)
        },
        |_, i, t| {
            let mut t = t.clone();
            t.insert(i, unit.clone());
            Some(t)
        },
    )
}

/// Nerve of `(NCP(n), |)`.
pub fn nerve_of_ncp_poset(n: usize, d_max: usize) -> Result<TruncatedSimplicialSet<Vec<NoncrossingPartition>>> {
    check_size(n)?;
    nerve(&enumerate_ncp(n)?, |a, b| divides(a, b).unwrap_or(false), d_max)
}

/// Bar complex of the partial monoid `(NCP(n), ∘)`.
pub fn bar_of_ncp_monoid(n: usize, d_max: usize) -> Result<TruncatedSimplicialSet<Vec<NoncrossingPartition>>> {
    check_size(n)?;
    bar(&enumerate_ncp(n)?, &NoncrossingPartition::zero(n), |a, b| compose(a, b).ok().flatten(), d_max)
}

/// Bar complex of `1..=bound` under multiplication, defined when the product
/// stays `≤ bound`.
pub fn bar_of_integers(bound: u64, d_max: usize) -> Result<TruncatedSimplicialSet<Vec<u64>>> {
    check_bound(bound)?;
    let elements: Vec<u64> = (1..=bound).collect();
    bar(&elements, &1, |a, b| Some(a * b).filter(|&p| p <= bound), d_max)
}

/// Nerve of divisibility on `1..=bound`.
pub fn nerve_of_divisibility(bound: u64, d_max: usize) -> Result<TruncatedSimplicialSet<Vec<u64>>> {
    check_bound(bound)?;
    let elements: Vec<u64> = (1..=bound).collect();
    nerve(&elements, |a, b| b % a == 0, d_max)
}

/// `(a_1, .., a_{k+1}) ↦ a_1 | a_1 a_2 | .. | a_1 ⋯ a_{k+1}`, from the lower
/// decalage of a bar complex to a nerve.
pub fn prefix_product_map<E>(
    dec: &TruncatedSimplicialSet<Vec<E>>,
    nerve: &TruncatedSimplicialSet<Vec<E>>,
    mul: impl Fn(&E, &E) -> E,
) -> Result<SimplicialMap>
where
    E: Clone + Eq + Hash + Debug,
{
    SimplicialMap::from_fn(dec, nerve, |_, t| {
        let mut chain: Vec<E> = Vec::with_capacity(t.len());
        for e in t {
            let next = match chain.last() {
                Some(p) => mul(p, e),
                None => e.clone(),
            };
            chain.push(next);
        }
        chain
    })
}
