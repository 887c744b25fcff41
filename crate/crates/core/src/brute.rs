//! Slow, independent reference implementations used to cross-check the
//! production algorithms.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::incidence::Rational;
use crate::kreweras::{compose, kreweras};
use crate::lattice::{catalan, divides};
use crate::partition::{NoncrossingPartition, Partition};
use crate::shuffle::is_admissible_pair;

/// Scans all quadruples `a < b < c < d` for `a, c` in one block and `b, d` in another.
pub fn has_crossing_quadruple(p: &Partition) -> bool {
    let labels = p.labels();
    let n = labels.len();
    for a in 0..n {
        for b in a + 1..n {
            if labels[b] == labels[a] {
                continue;
            }
            for c in b + 1..n {
                if labels[c] != labels[a] {
                    continue;
                }
                for d in c + 1..n {
                    if labels[d] == labels[b] {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Every set partition of `[n]`, generated from restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn go(pos: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if pos == rgs.len() {
            out.push(Partition::from_labels(rgs));
            return;
        }
        for v in 0..=max + 1 {
            rgs[pos] = v;
            go(pos + 1, max.max(v), rgs, out);
        }
    }
    if n == 0 {
        out.push(Partition::from_labels(&[]));
    } else {
        // position 0 is always label 0
        go(1, 0, &mut rgs, &mut out);
    }
    out
}

/// `NCP(n)` as the noncrossing members of all set partitions, sorted.
pub fn noncrossing_by_filter(n: usize) -> Vec<NoncrossingPartition> {
    let mut out: Vec<NoncrossingPartition> = set_partitions(n)
        .into_iter()
        .filter(|p| !has_crossing_quadruple(p))
        .map(|p| NoncrossingPartition::new(p).expect("filtered for crossings"))
        .collect();
    out.sort();
    out
}

/// The coarsest `b` with `(a, b)` admissible, found by exhaustive search.
/// `None` if the admissible partners have no maximum.
pub fn max_admissible_partner(a: &NoncrossingPartition, all: &[NoncrossingPartition]) -> Result<Option<NoncrossingPartition>> {
    let mut partners = Vec::new();
    for b in all {
        if is_admissible_pair(a, b)? {
            partners.push(b);
        }
    }
    for &candidate in &partners {
        let mut is_max = true;
        for &other in &partners {
            if !divides(other, candidate)? {
                is_max = false;
                break;
            }
        }
        if is_max {
            return Ok(Some(candidate.clone()));
        }
    }
    Ok(None)
}

/// All `c` with `a ∘ c = target`.
pub fn solve_compose(
    a: &NoncrossingPartition,
    target: &NoncrossingPartition,
    all: &[NoncrossingPartition],
) -> Result<Vec<NoncrossingPartition>> {
    let mut out = Vec::new();
    for c in all {
        if compose(a, c)?.as_ref() == Some(target) {
            out.push(c.clone());
        }
    }
    Ok(out)
}

/// Number-theoretic Möbius function by trial division.
pub fn classical_moebius(mut m: u64) -> i64 {
    assert!(m >= 1);
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

fn block_product(p: &Partition, seq: &[Rational]) -> Rational {
    p.blocks().iter().map(|b| seq[b.len() - 1].clone()).product()
}

/// `m_n = Σ_π Π_B κ_|B|` with `π` running over noncrossing set partitions
/// found by filtering all set partitions.
pub fn moments_by_filter(kappa: &[Rational]) -> Vec<Rational> {
    (1..=kappa.len())
        .map(|n| {
            set_partitions(n)
                .iter()
                .filter(|p| !has_crossing_quadruple(p))
                .map(|p| block_product(p, kappa))
                .sum()
        })
        .collect()
}

/// Cumulants by the triangular recursion `κ_n = m_n - Σ_{π ≠ 1_n} κ_π`.
pub fn cumulants_triangular(moments: &[Rational]) -> Vec<Rational> {
    let mut kappa: Vec<Rational> = Vec::with_capacity(moments.len());
    for n in 1..=moments.len() {
        // κ_n is still unknown, but only 1_n uses a block of size n
        let mut rest = Rational::zero();
        for p in set_partitions(n) {
            if p.num_blocks() > 1 && !has_crossing_quadruple(&p) {
                rest += block_product(&p, &kappa);
            }
        }
        kappa.push(&moments[n - 1] - rest);
    }
    kappa
}

/// `μ(π, 1_n) = Π_{B ∈ K(π)} (-1)^{|B|-1} C(|B|-1)`.
pub fn moebius_to_top_closed_form(p: &NoncrossingPartition) -> Rational {
    let mut value = Rational::one();
    for b in kreweras(p).blocks() {
        let c = Rational::from_integer(catalan(b.len() - 1).into());
        value *= if b.len() % 2 == 1 { c } else { -c };
    }
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enumerate_ncp;

    #[test]
    fn bell_and_catalan_counts() {
        let bell = [1, 1, 2, 5, 15, 52, 203];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(set_partitions(n).len(), b);
            assert_eq!(noncrossing_by_filter(n), enumerate_ncp(n).unwrap());
        }
    }

    #[test]
    fn crossing_scan_agrees() {
        for p in set_partitions(6) {
            assert_eq!(has_crossing_quadruple(&p), !p.is_noncrossing(), "{p}");
        }
    }

    #[test]
    fn moebius_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(classical_moebius(i as u64 + 1), e);
        }
    }
}
