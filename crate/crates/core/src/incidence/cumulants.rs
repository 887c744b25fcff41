//! Single-variable free moment-cumulant transform.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use super::Rational;
use crate::error::{NcpError, Result};
use crate::kreweras::kreweras;
use crate::lattice::{check_size, enumerate_ncp};
use crate::partition::Partition;

/// Moments `m_1, .., m_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSequence(Vec<Rational>);

/// Free cumulants `κ_1, .., κ_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CumulantSequence(Vec<Rational>);

macro_rules! sequence_impl {
    ($t:ident) => {
        impl $t {
            pub fn new(values: Vec<Rational>) -> Result<Self> {
                if values.is_empty() {
                    return Err(NcpError::EmptySequence);
                }
                Ok($t(values))
            }

            pub fn values(&self) -> &[Rational] {
                &self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                false
            }

            /// The `n`-th term, 1-based.
            pub fn get(&self, n: usize) -> Option<&Rational> {
                n.checked_sub(1).and_then(|i| self.0.get(i))
            }
        }
    };
}

sequence_impl!(MomentSequence);
sequence_impl!(CumulantSequence);

/// Sorted block sizes.
type BlockType = Vec<usize>;

/// For one `n`: how many `π ∈ NCP(n)` have each type, and `Σ μ(π, 1_n)` per type.
struct Table {
    counts: BTreeMap<BlockType, Rational>,
    moebius: BTreeMap<BlockType, Rational>,
}

fn block_type(p: &Partition) -> BlockType {
    let mut t: Vec<usize> = p.blocks().iter().map(Vec::len).collect();
    t.sort_unstable();
    t
}

fn evaluate(t: &BlockType, seq: &[Rational]) -> Rational {
    t.iter().map(|&s| seq[s - 1].clone()).product()
}

/// `tables[n - 1]` for `NCP(n)` and `top[m - 1] = μ(0_m, 1_m)`.
#[derive(Default)]
struct Cache {
    tables: Vec<Arc<Table>>,
    top: Vec<Rational>,
}

fn cache() -> &'static Mutex<Cache> {
    static CACHE: OnceLock<Mutex<Cache>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Tables for `1..=n`, extending the shared cache as needed.
fn tables(n: usize) -> Result<Vec<Arc<Table>>> {
    check_size(n)?;
    let mut cache = cache().lock().unwrap_or_else(|e| e.into_inner());
    while cache.tables.len() < n {
        let m = cache.tables.len() + 1;
        let mut counts: BTreeMap<BlockType, Rational> = BTreeMap::new();
        let mut complements: Vec<(BlockType, BlockType)> = Vec::new();
        for p in enumerate_ncp(m)? {
            let t = block_type(&p);
            *counts.entry(t.clone()).or_insert_with(Rational::zero) += Rational::one();
            complements.push((t, block_type(&kreweras(&p))));
        }
        // μ(0_m, 1_m) from Σ_{σ ∈ NCP(m)} μ(0_m, σ) = 0, where [0_m, σ] is a
        // product of smaller full lattices
        let mut rest = Rational::zero();
        for (t, c) in &counts {
            if t.len() > 1 {
                rest += c * evaluate(t, &cache.top);
            }
        }
        let top_m = if m == 1 { Rational::one() } else { -rest };
        cache.top.push(top_m);
        // μ(π, 1_m) = μ(0_m, K(π)), multiplicative over the blocks of K(π)
        let mut moebius: BTreeMap<BlockType, Rational> = BTreeMap::new();
        for (t, kt) in complements {
            *moebius.entry(t).or_insert_with(Rational::zero) += evaluate(&kt, &cache.top);
        }
        cache.tables.push(Arc::new(Table { counts, moebius }));
    }
    Ok(cache.tables[..n].to_vec())
}

/// `m_n = Σ_{π ∈ NCP(n)} Π_{B ∈ π} κ_|B|`.
pub fn moments_from_cumulants(kappa: &CumulantSequence) -> Result<MomentSequence> {
    let tables = tables(kappa.len())?;
    let values = tables
        .iter()
        .map(|t| t.counts.iter().map(|(ty, c)| c * evaluate(ty, &kappa.0)).sum())
        .collect();
    Ok(MomentSequence(values))
}

/// `κ_n = Σ_{π ∈ NCP(n)} m_π μ(π, 1_n)`.
pub fn cumulants_from_moments(moments: &MomentSequence) -> Result<CumulantSequence> {
    let tables = tables(moments.len())?;
    let values = tables
        .iter()
        .map(|t| t.moebius.iter().map(|(ty, mu)| mu * evaluate(ty, &moments.0)).sum())
        .collect();
    Ok(CumulantSequence(values))
}

/// `μ(0_m, 1_m)` for `m = 1..=n`.
pub fn moebius_of_full_lattices(n: usize) -> Result<Vec<Rational>> {
    tables(n)?;
    let cache = cache().lock().unwrap_or_else(|e| e.into_inner());
    Ok(cache.top[..n].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute;
    use crate::incidence::rational;
    use crate::lattice::catalan;

    fn integers(values: &[i64]) -> Vec<Rational> {
        values.iter().map(|&v| rational(v)).collect()
    }

    #[test]
    fn only_singletons() {
        let mut k = vec![rational(0); 6];
        k[0] = rational(1);
        let m = moments_from_cumulants(&CumulantSequence::new(k).unwrap()).unwrap();
        assert_eq!(m.values(), integers(&[1; 6]).as_slice());
    }

    #[test]
    fn semicircle() {
        let mut k = vec![rational(0); 10];
        k[1] = rational(1);
        let kappa = CumulantSequence::new(k).unwrap();
        let m = moments_from_cumulants(&kappa).unwrap();
        for j in 1..=5 {
            assert_eq!(m.get(2 * j).unwrap(), &rational(catalan(j) as i64));
            assert!(m.get(2 * j - 1).unwrap().is_zero());
        }
        assert_eq!(m.values()[..8], brute::moments_by_filter(&kappa.values()[..8])[..]);
    }

    #[test]
    fn free_poisson() {
        let kappa = CumulantSequence::new(vec![rational(1); 8]).unwrap();
        let m = moments_from_cumulants(&kappa).unwrap();
        for n in 1..=8 {
            assert_eq!(m.get(n).unwrap(), &rational(catalan(n) as i64));
        }
        assert_eq!(m.get(3).unwrap(), &rational(5));
    }

    #[test]
    fn round_trip_and_oracles() {
        let m = MomentSequence::new(integers(&[1, 2, 5, 14, 3, -7, 11])).unwrap();
        let k = cumulants_from_moments(&m).unwrap();
        assert_eq!(k.values(), brute::cumulants_triangular(m.values()).as_slice());
        assert_eq!(moments_from_cumulants(&k).unwrap(), m);
        let catalan_moments = MomentSequence::new(integers(&[1, 2, 5, 14])).unwrap();
        assert_eq!(cumulants_from_moments(&catalan_moments).unwrap().values(), integers(&[1, 1, 1, 1]).as_slice());
    }

    #[test]
    fn full_lattice_moebius() {
        let tops = moebius_of_full_lattices(7).unwrap();
        for (i, t) in tops.iter().enumerate() {
            let m = i + 1;
            let c = rational(catalan(m - 1) as i64);
            assert_eq!(t, &if m % 2 == 1 { c } else { -c });
        }
    }

    #[test]
    fn errors() {
        assert_eq!(MomentSequence::new(vec![]), Err(NcpError::EmptySequence));
    }
}
