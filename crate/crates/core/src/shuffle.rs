//! Powers, roots and perfect shuffles of noncrossing partitions.
//!
//! The perfect shuffle with period `n` interleaves a partition of `[kn]` with
//! a partition of `[ln]`: in each period of length `k + l`, the first `k`
//! slots carry the next `k` elements of the left operand and the remaining `l`
//! slots carry the right operand. A pair is admissible when the interleaving
//! is again noncrossing.

use crate::error::{NcpError, Result};
use crate::lattice::{enumerate_ncp, join_partitions};
use crate::partition::{NoncrossingPartition, Partition};

impl AsRef<Partition> for Partition {
    fn as_ref(&self) -> &Partition {
        self
    }
}

impl AsRef<Partition> for NoncrossingPartition {
    fn as_ref(&self) -> &Partition {
        self.as_partition()
    }
}

/// Period and multipliers for a binary perfect shuffle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShuffleContext {
    n: usize,
    k: usize,
    l: usize,
}

impl ShuffleContext {
    pub fn new(n: usize, k: usize, l: usize) -> Result<Self> {
        if n == 0 || k == 0 || l == 0 {
            return Err(NcpError::SizeMismatch { expected: 1, found: 0 });
        }
        Ok(ShuffleContext { n, k, l })
    }

    /// Infers the multipliers from the operand sizes.
    pub fn for_operands(n: usize, a: &Partition, b: &Partition) -> Result<Self> {
        Self::new(n, multiplier(n, a)?, multiplier(n, b)?)
    }

    pub fn period(&self) -> usize {
        self.n
    }

    pub fn multipliers(&self) -> (usize, usize) {
        (self.k, self.l)
    }

    fn check(&self, a: &Partition, b: &Partition) -> Result<()> {
        for (p, m) in [(a, self.k), (b, self.l)] {
            if p.n() != m * self.n {
                return Err(NcpError::SizeMismatch { expected: m * self.n, found: p.n() });
            }
        }
        Ok(())
    }
}

fn multiplier(n: usize, p: &Partition) -> Result<usize> {
    if n == 0 || !p.n().is_multiple_of(n) || p.n() == 0 {
        let expected = if n == 0 { 1 } else { (p.n() / n).max(1) * n };
        return Err(NcpError::SizeMismatch { expected, found: p.n() });
    }
    Ok(p.n() / n)
}

/// `p^exp`: each element becomes a run of `exp` consecutive elements in its block.
pub fn power(p: &NoncrossingPartition, exp: usize) -> NoncrossingPartition {
    assert!(exp >= 1, "power exponent must be positive");
    let blocks = p
        .blocks()
        .iter()
        .map(|b| b.iter().flat_map(|&e| (e - 1) * exp + 1..=e * exp).collect())
        .collect();
    NoncrossingPartition::from_canonical(p.n() * exp, blocks)
}

/// `{{1..size}, {size+1..2 size}, ..}` with `count` blocks.
pub fn consecutive_blocks(count: usize, size: usize) -> NoncrossingPartition {
    let blocks = (0..count).map(|a| (a * size + 1..=(a + 1) * size).collect()).collect();
    NoncrossingPartition::from_canonical(count * size, blocks)
}

/// `p`-th root: defined iff every run `{(i-1)p+1 .. ip}` lies in one block.
pub fn root(a: &NoncrossingPartition, p: usize) -> Result<Option<NoncrossingPartition>> {
    check_divisible(a, p)?;
    let labels = a.labels();
    if labels.chunks(p).any(|run| run.iter().any(|&l| l != run[0])) {
        return Ok(None);
    }
    let root_labels: Vec<usize> = labels.chunks(p).map(|run| run[0]).collect();
    Ok(Some(NoncrossingPartition::from_labels_unchecked(&root_labels)))
}

/// `a ∗_n b`, which may cross.
pub fn perfect_shuffle(ctx: &ShuffleContext, a: &Partition, b: &Partition) -> Result<Partition> {
    ctx.check(a, b)?;
    Ok(interleave(ctx.n, &[(a, ctx.k), (b, ctx.l)]))
}

/// Interleaves operands of sizes `k_1 n, .., k_p n`: in each period the
/// `t`-th operand occupies `k_t` consecutive slots after those of operands `< t`.
pub fn shuffle_many<P: AsRef<Partition>>(n: usize, parts: &[P]) -> Result<Partition> {
    if n == 0 && parts.iter().all(|p| p.as_ref().n() == 0) {
        return Ok(Partition::from_labels(&[]));
    }
    let mut operands = Vec::with_capacity(parts.len());
    for p in parts {
        let p = p.as_ref();
        operands.push((p, multiplier(n, p)?));
    }
    if operands.is_empty() {
        return Ok(Partition::from_labels(&[]));
    }
    Ok(interleave(n, &operands))
}

fn interleave(n: usize, operands: &[(&Partition, usize)]) -> Partition {
    let width: usize = operands.iter().map(|(_, k)| k).sum();
    let mut labels = vec![0; width * n];
    let mut offset = 0;
    let mut label_base = 0;
    for &(p, k) in operands {
        for (idx, block) in p.blocks().iter().enumerate() {
            for &x in block {
                let (a, j) = ((x - 1) / k, (x - 1) % k + 1);
                labels[a * width + offset + j - 1] = label_base + idx;
            }
        }
        offset += k;
        label_base += p.num_blocks();
    }
    Partition::from_labels(&labels)
}

/// Whether `a ∗_n b` is noncrossing.
pub fn is_admissible(ctx: &ShuffleContext, a: &Partition, b: &Partition) -> Result<bool> {
    Ok(perfect_shuffle(ctx, a, b)?.is_noncrossing())
}

/// Whether the full interleaving of the tuple is noncrossing. Empty and
/// one-element tuples are admissible.
pub fn is_admissible_tuple<P: AsRef<Partition>>(n: usize, parts: &[P]) -> Result<bool> {
    Ok(shuffle_many(n, parts)?.is_noncrossing())
}

/// Admissibility of a pair in `NCP(n)²`.
pub fn is_admissible_pair(a: &NoncrossingPartition, b: &NoncrossingPartition) -> Result<bool> {
    if a.n() != b.n() {
        return Err(NcpError::SizeMismatch { expected: a.n(), found: b.n() });
    }
    if a.n() == 0 {
        return Ok(true);
    }
    is_admissible(&ShuffleContext::new(a.n(), 1, 1)?, a, b)
}

fn check_divisible(a: &Partition, k: usize) -> Result<()> {
    if k == 0 {
        return Err(NcpError::SizeMismatch { expected: 1, found: 0 });
    }
    if !a.n().is_multiple_of(k) {
        return Err(NcpError::SizeMismatch { expected: a.n().div_ceil(k) * k, found: a.n() });
    }
    Ok(())
}

/// Any two elements sharing a block are congruent mod `k`.
pub fn is_k_preserving(a: &Partition, k: usize) -> Result<bool> {
    check_divisible(a, k)?;
    Ok(a.blocks().iter().all(|b| b.iter().all(|&e| e % k == b[0] % k)))
}

/// A `k`-preserving partition whose join with the consecutive size-`k`
/// blocks is the full partition.
pub fn is_k_completing(a: &NoncrossingPartition, k: usize) -> Result<bool> {
    if !is_k_preserving(a, k)? {
        return Err(NcpError::NotKPreserving { k });
    }
    let joined = join_partitions(a, &consecutive_blocks(a.n() / k, k))?;
    Ok(joined.is_one())
}

/// `k`-preserving members of `NCP(kn)`, filtered from the full enumeration.
pub fn enumerate_k_preserving(n: usize, k: usize) -> Result<Vec<NoncrossingPartition>> {
    let mut out = Vec::new();
    for a in enumerate_ncp(k * n)? {
        if is_k_preserving(&a, k)? {
            out.push(a);
        }
    }
    Ok(out)
}

/// `k`-completing members of `NCP(kn)`.
pub fn enumerate_k_completing(n: usize, k: usize) -> Result<Vec<NoncrossingPartition>> {
    let mut out = Vec::new();
    for a in enumerate_k_preserving(n, k)? {
        if is_k_completing(&a, k)? {
            out.push(a);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enumerate_ncp;
    use crate::partition::make_partition;

    fn ncp(n: usize, blocks: &[&[usize]]) -> NoncrossingPartition {
        NoncrossingPartition::from_blocks(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn powers() {
        let pi = ncp(4, &[&[1, 4], &[2, 3]]);
        assert_eq!(power(&pi, 2), ncp(8, &[&[1, 2, 7, 8], &[3, 4, 5, 6]]));
        assert_eq!(power(&pi, 1), pi);
        assert_eq!(power(&NoncrossingPartition::zero(2), 2), ncp(4, &[&[1, 2], &[3, 4]]));
    }

    #[test]
    fn roots() {
        let sq = ncp(8, &[&[1, 2, 7, 8], &[3, 4, 5, 6]]);
        assert_eq!(root(&sq, 2).unwrap(), Some(ncp(4, &[&[1, 4], &[2, 3]])));
        assert_eq!(root(&ncp(4, &[&[1, 2], &[3, 4]]), 2).unwrap(), Some(NoncrossingPartition::zero(2)));
        assert_eq!(root(&NoncrossingPartition::zero(4), 2).unwrap(), None);
        assert!(matches!(root(&NoncrossingPartition::zero(5), 2), Err(NcpError::SizeMismatch { .. })));
    }

    #[test]
    fn shuffle_example() {
        let ctx = ShuffleContext::new(3, 2, 1).unwrap();
        let a = ncp(6, &[&[1, 5, 6], &[2, 4], &[3]]);
        let b = ncp(3, &[&[1], &[2, 3]]);
        let s = perfect_shuffle(&ctx, &a, &b).unwrap();
        assert_eq!(s, make_partition(9, vec![vec![1, 7, 8], vec![2, 5], vec![4], vec![3], vec![6, 9]]).unwrap());
        assert!(!s.is_noncrossing());
        assert!(!is_admissible(&ctx, &a, &b).unwrap());

        let unit = ShuffleContext::new(1, 1, 1).unwrap();
        let one = NoncrossingPartition::one(1);
        assert_eq!(perfect_shuffle(&unit, &one, &one).unwrap(), *NoncrossingPartition::zero(2).as_partition());

        assert!(matches!(perfect_shuffle(&ctx, &b, &a), Err(NcpError::SizeMismatch { .. })));
    }

    #[test]
    fn power_is_self_shuffle_joined() {
        for p in enumerate_ncp(3).unwrap() {
            let ctx = ShuffleContext::new(3, 1, 1).unwrap();
            let s = perfect_shuffle(&ctx, &p, &p).unwrap();
            let joined = join_partitions(&s, &consecutive_blocks(3, 2)).unwrap();
            assert_eq!(joined, power(&p, 2));
        }
    }

    #[test]
    fn admissibility_examples() {
        let a = ncp(3, &[&[1, 2], &[3]]);
        let b = ncp(3, &[&[1], &[2, 3]]);
        assert!(is_admissible_pair(&a, &b).unwrap());
        assert!(!is_admissible_pair(&b, &a).unwrap());
        let one = NoncrossingPartition::one(2);
        assert!(!is_admissible_pair(&one, &one).unwrap());
        for x in enumerate_ncp(3).unwrap() {
            assert!(is_admissible_pair(&x, &NoncrossingPartition::zero(3)).unwrap());
            assert!(is_admissible_pair(&NoncrossingPartition::zero(3), &x).unwrap());
        }
        let empty: [&NoncrossingPartition; 0] = [];
        assert!(is_admissible_tuple(3, &empty).unwrap());
        assert!(is_admissible_tuple(3, &[&a]).unwrap());
    }

    #[test]
    fn preserving_and_completing() {
        assert!(is_k_preserving(&ncp(4, &[&[1, 3], &[2], &[4]]), 2).unwrap());
        assert!(!is_k_preserving(&ncp(4, &[&[1, 2], &[3], &[4]]), 2).unwrap());
        assert!(is_k_preserving(&NoncrossingPartition::zero(6), 3).unwrap());
        assert!(matches!(is_k_preserving(&NoncrossingPartition::zero(5), 2), Err(NcpError::SizeMismatch { .. })));

        assert!(!is_k_completing(&NoncrossingPartition::zero(4), 2).unwrap());
        assert!(is_k_completing(&NoncrossingPartition::one(3), 1).unwrap());
        assert_eq!(is_k_completing(&NoncrossingPartition::one(4), 2), Err(NcpError::NotKPreserving { k: 2 }));
        assert!(is_k_completing(&NoncrossingPartition::zero(2), 2).unwrap());
        assert_eq!(
            is_k_completing(&ncp(4, &[&[1, 2], &[3], &[4]]), 2),
            Err(NcpError::NotKPreserving { k: 2 })
        );
        assert_eq!(enumerate_k_completing(2, 2).unwrap().len(), 2);
        assert_eq!(enumerate_k_preserving(2, 2).unwrap().len(), 3);
    }
}
