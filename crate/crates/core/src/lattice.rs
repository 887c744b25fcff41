//! The coarsening lattice on noncrossing partitions.

use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{NcpError, Result};
use crate::partition::{blocks_cross, first_crossing, GroundSubset, NoncrossingPartition, Partition};

/// Default bound on `n` for anything that enumerates `NCP(n)`; `Catalan(12) = 208012`.
pub const DEFAULT_MAX_N: usize = 12;

static MAX_N: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_N);

/// Current enumeration bound.
pub fn max_n() -> usize {
    MAX_N.load(Ordering::Relaxed)
}

/// Overrides the enumeration bound for the whole process.
pub fn set_max_n(bound: usize) {
    MAX_N.store(bound, Ordering::Relaxed);
}

/// `TooLarge` unless `n` is within the current size guard.
pub fn check_size(n: usize) -> Result<()> {
    let max = max_n();
    if n > max {
        Err(NcpError::TooLarge { n, max })
    } else {
        Ok(())
    }
}

/// Catalan numbers, `C(n) = binom(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> u64 {
    let mut c: u64 = 1;
    for i in 0..n as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// Elements ordered by a divisibility-like partial order.
pub trait Divisibility {
    fn divides(&self, other: &Self) -> bool;
}

impl Divisibility for NoncrossingPartition {
    fn divides(&self, other: &Self) -> bool {
        divides(self, other).unwrap_or(false)
    }
}

impl Divisibility for u64 {
    fn divides(&self, other: &Self) -> bool {
        *self != 0 && other.is_multiple_of(*self)
    }
}

fn same_size(a: &Partition, b: &Partition) -> Result<()> {
    if a.n() != b.n() {
        return Err(NcpError::SizeMismatch { expected: a.n(), found: b.n() });
    }
    Ok(())
}

/// `a | b`: every block of `a` lies inside a block of `b`.
pub fn divides(a: &Partition, b: &Partition) -> Result<bool> {
    same_size(a, b)?;
    let labels = b.labels();
    Ok(a.blocks().iter().all(|block| block.iter().all(|&e| labels[e - 1] == labels[block[0] - 1])))
}

/// Blockwise common refinement.
pub fn meet(a: &NoncrossingPartition, b: &NoncrossingPartition) -> Result<NoncrossingPartition> {
    same_size(a, b)?;
    let (la, lb) = (a.labels(), b.labels());
    let labels: Vec<usize> = la.iter().zip(&lb).map(|(x, y)| x * (a.n() + 1) + y).collect();
    Ok(NoncrossingPartition::from_labels_unchecked(&labels))
}

/// Join in the lattice of all set partitions.
pub fn partition_join(a: &Partition, b: &Partition) -> Result<Partition> {
    same_size(a, b)?;
    let mut dsu = DisjointSets::new(a.n());
    for block in a.blocks().iter().chain(b.blocks()) {
        for w in block.windows(2) {
            dsu.union(w[0] - 1, w[1] - 1);
        }
    }
    Ok(Partition::from_labels(&dsu.labels()))
}

/// Least noncrossing partition coarser than `p`: merge crossing blocks until none cross.
pub fn noncrossing_closure(p: &Partition) -> NoncrossingPartition {
    let mut blocks: Vec<Vec<usize>> = p.blocks().to_vec();
    while let Some((i, j)) = first_crossing(&blocks) {
        let absorbed = blocks.swap_remove(j);
        blocks[i].extend(absorbed);
        blocks[i].sort_unstable();
    }
    blocks.sort_unstable_by_key(|b| b[0]);
    NoncrossingPartition::from_canonical(p.n(), blocks)
}

/// Noncrossing join of arbitrary (possibly crossing) partitions.
pub fn join_partitions(a: &Partition, b: &Partition) -> Result<NoncrossingPartition> {
    Ok(noncrossing_closure(&partition_join(a, b)?))
}

/// Least noncrossing partition coarser than both arguments.
pub fn join(a: &NoncrossingPartition, b: &NoncrossingPartition) -> Result<NoncrossingPartition> {
    join_partitions(a, b)
}

pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.parent[rx.max(ry)] = rx.min(ry);
        }
    }

    pub(crate) fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }
}

/// All of `NCP(n)`, sorted by the canonical block list.
pub fn enumerate_ncp(n: usize) -> Result<Vec<NoncrossingPartition>> {
    check_size(n)?;
    let mut table: Vec<Vec<Vec<Vec<usize>>>> = vec![vec![vec![]]];
    for len in 1..=n {
        let mut out = Vec::new();
        // the block containing 1 is {1} ∪ rest, with rest ⊆ {2..len}
        for mask in 0u32..(1 << (len - 1)) {
            let mut first = vec![1];
            first.extend((2..=len).filter(|e| mask & (1 << (e - 2)) != 0));
            // gaps between consecutive members, then the tail after the last one
            let mut segments: Vec<(usize, usize)> = first.windows(2).map(|w| (w[0], w[1] - w[0] - 1)).collect();
            let last = *first.last().unwrap();
            segments.push((last, len - last));
            let mut partial: Vec<Vec<Vec<usize>>> = vec![vec![first]];
            for (offset, size) in segments {
                if size == 0 {
                    continue;
                }
                let mut next = Vec::with_capacity(partial.len() * table[size].len());
                for head in &partial {
                    for fill in &table[size] {
                        let mut blocks = head.clone();
                        blocks.extend(fill.iter().map(|b| b.iter().map(|e| e + offset).collect::<Vec<_>>()));
                        next.push(blocks);
                    }
                }
                partial = next;
            }
            for mut blocks in partial {
                blocks.sort_unstable_by_key(|b| b[0]);
                out.push(blocks);
            }
        }
        out.sort_unstable();
        table.push(out);
    }
    Ok(table
        .pop()
        .unwrap()
        .into_iter()
        .map(|blocks| NoncrossingPartition::from_canonical(n, blocks))
        .collect())
}

/// A pair `lower | upper`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval<E = NoncrossingPartition> {
    lower: E,
    upper: E,
}

impl<E: Divisibility> Interval<E> {
    pub fn new(lower: E, upper: E) -> Result<Self> {
        if !lower.divides(&upper) {
            return Err(NcpError::NotDividing);
        }
        Ok(Interval { lower, upper })
    }

    pub fn lower(&self) -> &E {
        &self.lower
    }

    pub fn upper(&self) -> &E {
        &self.upper
    }

    pub fn is_degenerate(&self) -> bool
    where
        E: PartialEq,
    {
        self.lower == self.upper
    }
}

impl<E> Interval<E> {
    pub(crate) fn new_unchecked(lower: E, upper: E) -> Self {
        Interval { lower, upper }
    }
}

impl<E: std::fmt::Display> std::fmt::Display for Interval<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

/// All `g` with `lower | g | upper`, in enumeration order.
pub fn interval_elements(v: &Interval) -> Result<Vec<NoncrossingPartition>> {
    Ok(enumerate_ncp(v.lower.n())?
        .into_iter()
        .filter(|g| v.lower.divides(g) && g.divides(&v.upper))
        .collect())
}

/// Decomposition of `[n]` relative to a family of fixed blocks: the free
/// elements outside every fixed block, and for each fixed block and each of
/// its gaps the free elements sitting directly in that gap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelativeSublatticeData {
    n: usize,
    fixed_blocks: Vec<Vec<usize>>,
    mu0: GroundSubset,
    gaps: Vec<Vec<GroundSubset>>,
}

impl RelativeSublatticeData {
    pub fn fixed_blocks(&self) -> &[Vec<usize>] {
        &self.fixed_blocks
    }

    pub fn mu0(&self) -> &GroundSubset {
        &self.mu0
    }

    /// `gaps()[i][j]` sits between the `j`-th and `(j+1)`-th element of fixed block `i`.
    pub fn gaps(&self) -> &[Vec<GroundSubset>] {
        &self.gaps
    }

    fn free_sets(&self) -> impl Iterator<Item = &GroundSubset> {
        std::iter::once(&self.mu0).chain(self.gaps.iter().flatten())
    }

    /// Fixed blocks plus singletons: the minimum of the sublattice.
    pub fn pi_min(&self) -> NoncrossingPartition {
        let mut blocks = self.fixed_blocks.clone();
        blocks.extend(self.free_sets().flat_map(|s| s.elements().iter().map(|&e| vec![e])));
        NoncrossingPartition::from_blocks(self.n, blocks).expect("fixed blocks plus singletons")
    }

    /// Fixed blocks plus one block per nonempty free set: the maximum.
    pub fn pi_sup(&self) -> NoncrossingPartition {
        let mut blocks = self.fixed_blocks.clone();
        blocks.extend(self.free_sets().filter(|s| !s.is_empty()).map(|s| s.elements().to_vec()));
        NoncrossingPartition::from_blocks(self.n, blocks).expect("free sets do not cross")
    }

    /// `|NCP(mu0)| · Π |NCP(gap)|`.
    pub fn expected_size(&self) -> u64 {
        self.free_sets().map(|s| catalan(s.len())).product()
    }
}

/// The sublattice `NCP_π(n)` of partitions having each fixed block as a block.
pub fn relative_sublattice(
    n: usize,
    fixed: &[Vec<usize>],
) -> Result<(RelativeSublatticeData, Vec<NoncrossingPartition>)> {
    let mut owner = vec![None; n + 1];
    let mut fixed_blocks: Vec<Vec<usize>> = Vec::with_capacity(fixed.len());
    for (idx, block) in fixed.iter().enumerate() {
        if block.is_empty() {
            return Err(NcpError::EmptyBlock);
        }
        let mut block = block.clone();
        block.sort_unstable();
        for &e in &block {
            if e == 0 || e > n {
                return Err(NcpError::OutOfRange { element: e, n });
            }
            if owner[e].replace(idx).is_some() {
                return Err(NcpError::Overlap { element: e });
            }
        }
        fixed_blocks.push(block);
    }
    if let Some((i, j)) = first_crossing(&fixed_blocks) {
        return Err(NcpError::CrossingBlocks { first: fixed_blocks[i].clone(), second: fixed_blocks[j].clone() });
    }
    debug_assert!(fixed_blocks.iter().enumerate().all(|(i, a)| fixed_blocks[i + 1..].iter().all(|b| !blocks_cross(a, b))));

    // innermost fixed block strictly spanning x, and the gap of that block holding x
    let innermost = |x: usize| -> Option<(usize, usize)> {
        fixed_blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b[0] < x && x < *b.last().unwrap())
            .min_by_key(|(_, b)| b.last().unwrap() - b[0])
            .map(|(i, b)| (i, b.partition_point(|&y| y < x) - 1))
    };
    let mut mu0 = Vec::new();
    let mut gaps: Vec<Vec<Vec<usize>>> = fixed_blocks.iter().map(|b| vec![Vec::new(); b.len() - 1]).collect();
    for x in (1..=n).filter(|&x| owner[x].is_none()) {
        match innermost(x) {
            None => mu0.push(x),
            Some((i, j)) => gaps[i][j].push(x),
        }
    }
    let data = RelativeSublatticeData {
        n,
        fixed_blocks,
        mu0: GroundSubset::new(mu0)?,
        gaps: gaps
            .into_iter()
            .map(|per_block| per_block.into_iter().map(GroundSubset::new).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?,
    };

    let mut members: Vec<Vec<Vec<usize>>> = vec![data.fixed_blocks.clone()];
    for set in data.free_sets() {
        if set.is_empty() {
            continue;
        }
        let local = enumerate_ncp(set.len())?;
        let mut next = Vec::with_capacity(members.len() * local.len());
        for head in &members {
            for q in &local {
                let mut blocks = head.clone();
                blocks.extend(set.transport(q)?.blocks().iter().cloned());
                next.push(blocks);
            }
        }
        members = next;
    }
    let mut list = members
        .into_iter()
        .map(|blocks| NoncrossingPartition::from_blocks(n, blocks))
        .collect::<Result<Vec<_>>>()?;
    list.sort_unstable();
    Ok((data, list))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ncp(n: usize, blocks: &[&[usize]]) -> NoncrossingPartition {
        NoncrossingPartition::from_blocks(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn divisibility() {
        let b = ncp(3, &[&[1, 3], &[2]]);
        assert!(divides(&NoncrossingPartition::zero(3), &b).unwrap());
        assert!(!divides(&ncp(3, &[&[1, 2], &[3]]), &b).unwrap());
        assert!(divides(&ncp(4, &[&[1, 4], &[2, 3]]), &NoncrossingPartition::one(4)).unwrap());
        assert_eq!(
            divides(&NoncrossingPartition::zero(2), &NoncrossingPartition::zero(3)),
            Err(NcpError::SizeMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn meets_and_joins() {
        let a = ncp(3, &[&[1, 2], &[3]]);
        let b = ncp(3, &[&[1, 3], &[2]]);
        assert_eq!(meet(&a, &b).unwrap(), NoncrossingPartition::zero(3));
        assert_eq!(join(&a, &b).unwrap(), NoncrossingPartition::one(3));
        assert_eq!(meet(&a, &a).unwrap(), a);
        assert_eq!(join(&a, &a).unwrap(), a);

        let c = ncp(4, &[&[1, 3], &[2], &[4]]);
        let d = ncp(4, &[&[2, 4], &[1], &[3]]);
        let raw = partition_join(&c, &d).unwrap();
        assert!(!raw.is_noncrossing());
        assert_eq!(join(&c, &d).unwrap(), NoncrossingPartition::one(4));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_ncp(0).unwrap(), vec![NoncrossingPartition::empty()]);
        assert_eq!(enumerate_ncp(1).unwrap(), vec![NoncrossingPartition::one(1)]);
        let three = enumerate_ncp(3).unwrap();
        assert_eq!(
            three,
            vec![
                NoncrossingPartition::zero(3),
                ncp(3, &[&[1], &[2, 3]]),
                ncp(3, &[&[1, 2], &[3]]),
                NoncrossingPartition::one(3),
                ncp(3, &[&[1, 3], &[2]]),
            ]
        );
        assert_eq!(enumerate_ncp(4).unwrap().len(), 14);
        assert!(matches!(enumerate_ncp(DEFAULT_MAX_N + 1), Err(NcpError::TooLarge { .. })));
    }

    #[test]
    fn catalan_values() {
        let expected = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
        for (n, &c) in expected.iter().enumerate() {
            assert_eq!(catalan(n), c);
        }
    }

    #[test]
    fn interval_listing() {
        let v = Interval::new(NoncrossingPartition::zero(2), NoncrossingPartition::one(2)).unwrap();
        assert_eq!(interval_elements(&v).unwrap(), vec![NoncrossingPartition::zero(2), NoncrossingPartition::one(2)]);
        let a = ncp(3, &[&[1, 2], &[3]]);
        let point = Interval::new(a.clone(), a.clone()).unwrap();
        assert_eq!(interval_elements(&point).unwrap(), vec![a]);
        let full = Interval::new(NoncrossingPartition::zero(3), NoncrossingPartition::one(3)).unwrap();
        assert_eq!(interval_elements(&full).unwrap().len(), 5);
        assert_eq!(
            Interval::new(NoncrossingPartition::one(3), NoncrossingPartition::zero(3)),
            Err(NcpError::NotDividing)
        );
    }

    #[test]
    fn relative_sublattices() {
        let (data, list) = relative_sublattice(2, &[vec![1, 2]]).unwrap();
        assert!(data.mu0().is_empty());
        assert_eq!(data.gaps().len(), 1);
        assert_eq!(data.gaps()[0].len(), 1);
        assert!(data.gaps()[0][0].is_empty());
        assert_eq!(list, vec![NoncrossingPartition::one(2)]);

        let (data, list) = relative_sublattice(3, &[vec![1, 3]]).unwrap();
        assert!(data.mu0().is_empty());
        assert_eq!(data.gaps()[0][0].elements(), &[2]);
        assert_eq!(list, vec![ncp(3, &[&[1, 3], &[2]])]);

        let (data, list) = relative_sublattice(4, &[vec![1, 4]]).unwrap();
        assert_eq!(data.gaps()[0][0].elements(), &[2, 3]);
        assert_eq!(list.len(), 2);
        assert_eq!(data.pi_min(), ncp(4, &[&[1, 4], &[2], &[3]]));
        assert_eq!(data.pi_sup(), ncp(4, &[&[1, 4], &[2, 3]]));

        // nested fixed blocks: {1,6} with {3,4} inside its only gap
        let (data, list) = relative_sublattice(7, &[vec![1, 6], vec![3, 4]]).unwrap();
        assert_eq!(data.mu0().elements(), &[7]);
        assert_eq!(data.gaps()[0][0].elements(), &[2, 5]);
        assert!(data.gaps()[1][0].is_empty());
        assert_eq!(list.len(), 2);

        assert!(matches!(relative_sublattice(4, &[vec![1, 3], vec![2, 4]]), Err(NcpError::CrossingBlocks { .. })));
        assert_eq!(relative_sublattice(4, &[vec![1, 3], vec![3, 4]]).unwrap_err(), NcpError::Overlap { element: 3 });
    }
}
