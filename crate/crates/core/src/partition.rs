//! Set partitions of finite linear orders in canonical form.
//!
//! A [`Partition`] lives on `[n] = {1, .., n}`; its blocks are sorted
//! ascending and ordered by their minimum, so structural equality is equality
//! of partitions. [`NoncrossingPartition`] is the validated refinement with no
//! `a < b < c < d` such that `a, c` share a block and `b, d` share another.
//! Partitions of an arbitrary finite subset of the integers are carried by
//! [`SubsetPartition`].

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{NcpError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPartition")]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl TryFrom<RawPartition> for Partition {
    type Error = NcpError;

    fn try_from(raw: RawPartition) -> Result<Self> {
        make_partition(raw.n, raw.blocks)
    }
}

/// Validates `blocks` as a partition of `[n]` and returns it in canonical form.
pub fn make_partition(n: usize, blocks: Vec<Vec<usize>>) -> Result<Partition> {
    let mut seen = vec![false; n + 1];
    let mut blocks = blocks;
    for block in &mut blocks {
        if block.is_empty() {
            return Err(NcpError::EmptyBlock);
        }
        for &e in block.iter() {
            if e == 0 || e > n {
                return Err(NcpError::OutOfRange { element: e, n });
            }
            if seen[e] {
                return Err(NcpError::Overlap { element: e });
            }
            seen[e] = true;
        }
        block.sort_unstable();
    }
    if let Some(missing) = (1..=n).find(|&e| !seen[e]) {
        return Err(NcpError::NotACover { missing });
    }
    blocks.sort_unstable_by_key(|b| b[0]);
    Ok(Partition { n, blocks })
}

impl Partition {
    /// Builds a partition from already canonical blocks. Callers guarantee the
    /// invariants; checked in debug builds.
    pub(crate) fn from_canonical(n: usize, blocks: Vec<Vec<usize>>) -> Partition {
        debug_assert_eq!(make_partition(n, blocks.clone()).as_ref(), Ok(&Partition { n, blocks: blocks.clone() }));
        Partition { n, blocks }
    }

    /// Builds a partition from a label per element: `labels[e - 1]` names the
    /// block of `e`. Labels may be arbitrary.
    pub fn from_labels(labels: &[usize]) -> Partition {
        let n = labels.len();
        let mut index_of = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (pos, &label) in labels.iter().enumerate() {
            let idx = *index_of.entry(label).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[idx].push(pos + 1);
        }
        // scanning left to right creates blocks in order of their minimum
        Partition { n, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Restricted growth labelling: entry `e - 1` is the index of the block of `e`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (idx, block) in self.blocks.iter().enumerate() {
            for &e in block {
                labels[e - 1] = idx;
            }
        }
        labels
    }

    pub fn block_index_of(&self, element: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&element).is_ok())
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block_index_of(x).is_some() && self.block_index_of(x) == self.block_index_of(y)
    }

    /// First pair of crossing blocks, by block index.
    pub fn crossing_pair(&self) -> Option<(usize, usize)> {
        first_crossing(&self.blocks)
    }

    pub fn is_noncrossing(&self) -> bool {
        self.crossing_pair().is_none()
    }

    pub fn into_blocks(self) -> Vec<Vec<usize>> {
        self.blocks
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " |")?;
            }
            for e in block {
                write!(f, " {e}")?;
            }
        }
        Ok(())
    }
}

/// Whether two disjoint, sorted blocks cross.
///
/// `b` avoids crossing `a` iff all of its elements fall in the same cyclic gap
/// of `a`; the relation is symmetric.
pub fn blocks_cross(a: &[usize], b: &[usize]) -> bool {
    if a.len() < 2 || b.len() < 2 {
        return false;
    }
    let gap = |x: usize| a.partition_point(|&y| y < x) % a.len();
    let first = gap(b[0]);
    b[1..].iter().any(|&x| gap(x) != first)
}

pub(crate) fn first_crossing<B: AsRef<[usize]>>(blocks: &[B]) -> Option<(usize, usize)> {
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            if blocks_cross(blocks[i].as_ref(), blocks[j].as_ref()) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Free-function form of [`Partition::is_noncrossing`].
pub fn is_noncrossing(p: &Partition) -> bool {
    p.is_noncrossing()
}

/// A partition of `[n]` with no crossing blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Partition", into = "Partition")]
pub struct NoncrossingPartition(Partition);

impl TryFrom<Partition> for NoncrossingPartition {
    type Error = NcpError;

    fn try_from(p: Partition) -> Result<Self> {
        NoncrossingPartition::new(p)
    }
}

impl From<NoncrossingPartition> for Partition {
    fn from(p: NoncrossingPartition) -> Partition {
        p.0
    }
}

impl Deref for NoncrossingPartition {
    type Target = Partition;

    fn deref(&self) -> &Partition {
        &self.0
    }
}

impl fmt::Display for NoncrossingPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl NoncrossingPartition {
    pub fn new(p: Partition) -> Result<Self> {
        match p.crossing_pair() {
            Some((i, j)) => Err(NcpError::Crossing {
                first: p.blocks[i].clone(),
                second: p.blocks[j].clone(),
            }),
            None => Ok(NoncrossingPartition(p)),
        }
    }

    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(make_partition(n, blocks)?)
    }

    pub(crate) fn from_canonical(n: usize, blocks: Vec<Vec<usize>>) -> Self {
        let p = Partition::from_canonical(n, blocks);
        debug_assert!(p.is_noncrossing(), "{p} crosses");
        NoncrossingPartition(p)
    }

    pub(crate) fn from_labels_unchecked(labels: &[usize]) -> Self {
        let p = Partition::from_labels(labels);
        debug_assert!(p.is_noncrossing(), "{p} crosses");
        NoncrossingPartition(p)
    }

    /// `0_n`: all singletons.
    pub fn zero(n: usize) -> Self {
        NoncrossingPartition(Partition {
            n,
            blocks: (1..=n).map(|e| vec![e]).collect(),
        })
    }

    /// `1_n`: a single block (the empty partition when `n = 0`).
    pub fn one(n: usize) -> Self {
        let blocks = if n == 0 { vec![] } else { vec![(1..=n).collect()] };
        NoncrossingPartition(Partition { n, blocks })
    }

    /// The empty partition of `[0]`, unit of concatenation.
    pub fn empty() -> Self {
        Self::zero(0)
    }

    pub fn as_partition(&self) -> &Partition {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.num_blocks() == self.n()
    }

    pub fn is_one(&self) -> bool {
        self.num_blocks() <= 1
    }

    /// Whether block `i` is nested inside block `j`:
    /// `min(j) < min(i) <= max(i) < max(j)`.
    pub fn block_nested_in(&self, i: usize, j: usize) -> Result<bool> {
        let blocks = self.blocks();
        for index in [i, j] {
            if index >= blocks.len() {
                return Err(NcpError::IndexOutOfRange { index, blocks: blocks.len() });
            }
        }
        let (bi, bj) = (&blocks[i], &blocks[j]);
        Ok(bj[0] < bi[0] && bi[bi.len() - 1] < bj[bj.len() - 1])
    }

    /// Irreducible iff `1` and `n` share a block (`n >= 1`).
    pub fn is_irreducible(&self) -> bool {
        self.n() >= 1 && self.blocks()[0].last() == Some(&self.n())
    }

    /// Components under the maximal (outermost) blocks, left to right. Each
    /// component lives on the contiguous range spanned by its maximal block.
    pub fn irreducible_components(&self) -> Vec<SubsetPartition> {
        let mut components = Vec::new();
        let blocks = self.blocks();
        let mut idx = 0;
        while idx < blocks.len() {
            // blocks are sorted by minimum, so the next unvisited block is maximal
            let lo = blocks[idx][0];
            let hi = *blocks[idx].last().unwrap();
            let mut members = Vec::new();
            while idx < blocks.len() && blocks[idx][0] <= hi {
                members.push(blocks[idx].clone());
                idx += 1;
            }
            components.push(SubsetPartition {
                ground: GroundSubset((lo..=hi).collect()),
                blocks: members,
            });
        }
        components
    }

    /// Shift every element by `offset`.
    pub fn translate(&self, offset: usize) -> SubsetPartition {
        self.relabel(|e| e + offset)
    }

    /// Multiply every element by `factor >= 1`.
    pub fn dilate(&self, factor: usize) -> SubsetPartition {
        assert!(factor >= 1, "dilation factor must be positive");
        self.relabel(|e| e * factor)
    }

    /// Transport along a strictly increasing map.
    fn relabel(&self, f: impl Fn(usize) -> usize) -> SubsetPartition {
        SubsetPartition {
            ground: GroundSubset((1..=self.n()).map(&f).collect()),
            blocks: self.blocks().iter().map(|b| b.iter().map(|&e| f(e)).collect()).collect(),
        }
    }

    pub fn to_subset_partition(&self) -> SubsetPartition {
        self.relabel(|e| e)
    }

    /// `a · b = a ∪ (b + n)`.
    pub fn concat(&self, other: &NoncrossingPartition) -> NoncrossingPartition {
        let n = self.n();
        let mut blocks = self.blocks().to_vec();
        blocks.extend(other.blocks().iter().map(|b| b.iter().map(|e| e + n).collect()));
        NoncrossingPartition::from_canonical(n + other.n(), blocks)
    }
}

/// Free-function form of [`NoncrossingPartition::concat`].
pub fn concat(a: &NoncrossingPartition, b: &NoncrossingPartition) -> NoncrossingPartition {
    a.concat(b)
}

/// A finite, strictly increasing set of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroundSubset(Vec<usize>);

impl GroundSubset {
    pub fn new(elements: Vec<usize>) -> Result<Self> {
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(NcpError::NotIncreasing);
        }
        Ok(GroundSubset(elements))
    }

    /// `{lo, .., hi}`, empty when `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        GroundSubset((lo..=hi).collect())
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    /// 1-based rank of `e` in the subset.
    pub fn rank(&self, e: usize) -> Option<usize> {
        self.0.binary_search(&e).ok().map(|i| i + 1)
    }

    /// Transports a partition of `[|S|]` onto this subset along the increasing bijection.
    pub fn transport(&self, p: &NoncrossingPartition) -> Result<SubsetPartition> {
        if p.n() != self.len() {
            return Err(NcpError::SizeMismatch { expected: self.len(), found: p.n() });
        }
        Ok(SubsetPartition {
            ground: self.clone(),
            blocks: p.blocks().iter().map(|b| b.iter().map(|&e| self.0[e - 1]).collect()).collect(),
        })
    }
}

/// A partition of a [`GroundSubset`], in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubsetPartition {
    ground: GroundSubset,
    blocks: Vec<Vec<usize>>,
}

impl SubsetPartition {
    pub fn new(ground: GroundSubset, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut blocks = blocks;
        let mut seen = vec![false; ground.len()];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(NcpError::EmptyBlock);
            }
            block.sort_unstable();
            for &e in block.iter() {
                let rank = ground.rank(e).ok_or(NcpError::OutOfRange {
                    element: e,
                    n: ground.elements().last().copied().unwrap_or(0),
                })?;
                if std::mem::replace(&mut seen[rank - 1], true) {
                    return Err(NcpError::Overlap { element: e });
                }
            }
        }
        if let Some(pos) = seen.iter().position(|s| !s) {
            return Err(NcpError::NotACover { missing: ground.elements()[pos] });
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SubsetPartition { ground, blocks })
    }

    pub fn ground(&self) -> &GroundSubset {
        &self.ground
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn is_noncrossing(&self) -> bool {
        first_crossing(&self.blocks).is_none()
    }

    /// `st(p)`: transport to `[|S|]` along the increasing bijection.
    pub fn standardize(&self) -> Result<NoncrossingPartition> {
        if let Some((i, j)) = first_crossing(&self.blocks) {
            return Err(NcpError::Crossing {
                first: self.blocks[i].clone(),
                second: self.blocks[j].clone(),
            });
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&e| self.ground.rank(e).unwrap()).collect())
            .collect();
        Ok(NoncrossingPartition::from_canonical(self.ground.len(), blocks))
    }
}

impl fmt::Display for SubsetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            let strs: Vec<String> = block.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", strs.join(","))?;
        }
        write!(f, "}}")
    }
}

/// Free-function form of [`SubsetPartition::standardize`].
pub fn standardize(p: &SubsetPartition) -> Result<NoncrossingPartition> {
    p.standardize()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ncp(n: usize, blocks: &[&[usize]]) -> NoncrossingPartition {
        NoncrossingPartition::from_blocks(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn canonical_form() {
        let p = make_partition(4, vec![vec![1, 4], vec![2, 3]]).unwrap();
        assert_eq!(p.blocks(), &[vec![1, 4], vec![2, 3]]);
        let q = make_partition(3, vec![vec![2], vec![3, 1]]).unwrap();
        assert_eq!(q.blocks(), &[vec![1, 3], vec![2]]);
        assert_eq!(q.to_string(), "3: 1 3 | 2");
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_partition(3, vec![vec![1, 2], vec![2, 3]]), Err(NcpError::Overlap { element: 2 }));
        assert_eq!(make_partition(3, vec![vec![1, 4], vec![2, 3]]), Err(NcpError::OutOfRange { element: 4, n: 3 }));
        assert_eq!(make_partition(3, vec![vec![1], vec![3]]), Err(NcpError::NotACover { missing: 2 }));
        assert_eq!(make_partition(2, vec![vec![1, 2], vec![]]), Err(NcpError::EmptyBlock));
        assert!(make_partition(0, vec![]).is_ok());
    }

    #[test]
    fn crossing_detection() {
        assert!(make_partition(4, vec![vec![1, 4], vec![2, 3]]).unwrap().is_noncrossing());
        assert!(!make_partition(4, vec![vec![1, 3], vec![2, 4]]).unwrap().is_noncrossing());
        let shuffled = make_partition(9, vec![vec![1, 7, 8], vec![2, 5], vec![4], vec![3], vec![6, 9]]).unwrap();
        assert!(!shuffled.is_noncrossing());
        assert!(matches!(
            NoncrossingPartition::from_blocks(4, vec![vec![1, 3], vec![2, 4]]),
            Err(NcpError::Crossing { .. })
        ));
    }

    #[test]
    fn standardization() {
        let s = GroundSubset::new(vec![1, 3, 5, 8]).unwrap();
        let p = SubsetPartition::new(s, vec![vec![1, 8], vec![3, 5]]).unwrap();
        assert_eq!(p.standardize().unwrap(), ncp(4, &[&[1, 4], &[2, 3]]));

        let s = GroundSubset::new(vec![2, 4, 6]).unwrap();
        let p = SubsetPartition::new(s.clone(), vec![vec![2, 6], vec![4]]).unwrap();
        assert_eq!(p.standardize().unwrap(), ncp(3, &[&[1, 3], &[2]]));

        let zero = SubsetPartition::new(s, vec![vec![2], vec![4], vec![6]]).unwrap();
        assert_eq!(zero.standardize().unwrap(), NoncrossingPartition::zero(3));

        let s = GroundSubset::new(vec![1, 2, 5, 7]).unwrap();
        let crossing = SubsetPartition::new(s, vec![vec![1, 5], vec![2, 7]]).unwrap();
        assert!(matches!(crossing.standardize(), Err(NcpError::Crossing { .. })));
        assert_eq!(GroundSubset::new(vec![3, 3]), Err(NcpError::NotIncreasing));
    }

    #[test]
    fn translate_and_dilate() {
        let one = NoncrossingPartition::one(2);
        let t = one.translate(2);
        assert_eq!(t.ground().elements(), &[3, 4]);
        assert_eq!(t.blocks(), &[vec![3, 4]]);
        let d = one.dilate(3);
        assert_eq!(d.ground().elements(), &[3, 6]);
        assert_eq!(d.blocks(), &[vec![3, 6]]);
        let z = NoncrossingPartition::zero(3);
        assert_eq!(z.translate(0).standardize().unwrap(), z);
    }

    #[test]
    fn nesting() {
        let p = ncp(4, &[&[1, 4], &[2, 3]]);
        assert!(p.block_nested_in(1, 0).unwrap());
        assert!(!p.block_nested_in(0, 1).unwrap());
        let q = ncp(4, &[&[1, 2], &[3, 4]]);
        assert!(!q.block_nested_in(0, 1).unwrap());
        assert!(!q.block_nested_in(1, 0).unwrap());
        let r = ncp(3, &[&[1, 3], &[2]]);
        assert!(r.block_nested_in(1, 0).unwrap());
        assert_eq!(r.block_nested_in(0, 2), Err(NcpError::IndexOutOfRange { index: 2, blocks: 2 }));
    }

    #[test]
    fn components() {
        let p = ncp(8, &[&[1, 3], &[2], &[4, 8], &[5, 6, 7]]);
        let comps = p.irreducible_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].ground().elements(), &[1, 2, 3]);
        assert_eq!(comps[0].blocks(), &[vec![1, 3], vec![2]]);
        assert_eq!(comps[1].ground().elements(), &[4, 5, 6, 7, 8]);
        assert_eq!(comps[1].blocks(), &[vec![4, 8], vec![5, 6, 7]]);

        let q = ncp(10, &[&[1, 4], &[2], &[3], &[5, 10], &[6, 7], &[8], &[9]]);
        assert_eq!(q.irreducible_components().len(), 2);

        assert_eq!(NoncrossingPartition::one(5).irreducible_components().len(), 1);
        assert_eq!(NoncrossingPartition::zero(3).irreducible_components().len(), 3);
        assert!(NoncrossingPartition::one(4).is_irreducible());
        assert!(!NoncrossingPartition::zero(2).is_irreducible());
    }

    #[test]
    fn concatenation() {
        let a = NoncrossingPartition::zero(2);
        let b = NoncrossingPartition::one(2);
        assert_eq!(a.concat(&b), ncp(4, &[&[1], &[2], &[3, 4]]));
        assert_eq!(NoncrossingPartition::empty().concat(&b), b);
        assert_eq!(b.concat(&NoncrossingPartition::empty()), b);
        let bb = b.concat(&b);
        assert_eq!(bb, ncp(4, &[&[1, 2], &[3, 4]]));
        let comps: Vec<_> = bb.irreducible_components().iter().map(|c| c.standardize().unwrap()).collect();
        assert_eq!(comps, vec![b.clone(), b]);
    }

    #[test]
    fn json_form() {
        let p = ncp(4, &[&[2, 3], &[1, 4]]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"n":4,"blocks":[[1,4],[2,3]]}"#);
        let back: NoncrossingPartition = serde_json::from_str(r#"{"n":4,"blocks":[[2,3],[4,1]]}"#).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<NoncrossingPartition>(r#"{"n":4,"blocks":[[1,3],[2,4]]}"#).is_err());
        assert!(serde_json::from_str::<Partition>(r#"{"n":3,"blocks":[[1,2],[2,3]]}"#).is_err());
    }
}
