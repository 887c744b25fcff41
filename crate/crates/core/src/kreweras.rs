//! The composition partial monoid on `NCP(n)` and Kreweras complements.
//!
//! `a ∘ b` is defined exactly when `(a, b)` is admissible, and is the square
//! root of the perfect shuffle joined with `{{1,2},{3,4},..}`. `0_n` is the
//! unit. The Kreweras complement `K(a)` is the unique admissible partner with
//! `a ∘ K(a) = 1_n`; relative to `b` with `a | b`, `K_b(a)` solves `a ∘ K_b(a) = b`.

use std::collections::HashMap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{NcpError, Result};
use crate::lattice::{divides, enumerate_ncp, join_partitions, DisjointSets};
use crate::partition::{GroundSubset, NoncrossingPartition, Partition, SubsetPartition};
use crate::shuffle::{consecutive_blocks, is_admissible_tuple, is_k_preserving, root, shuffle_many};

fn same_size(a: &Partition, b: &Partition) -> Result<()> {
    if a.n() != b.n() {
        return Err(NcpError::SizeMismatch { expected: a.n(), found: b.n() });
    }
    Ok(())
}

/// Closed form for an admissible tuple of length `k >= 1`:
/// `k`-th root of the interleaving joined with consecutive size-`k` blocks.
fn closed_form(n: usize, parts: &[&NoncrossingPartition]) -> Result<Option<NoncrossingPartition>> {
    let shuffled = shuffle_many(n, parts)?;
    if !shuffled.is_noncrossing() {
        return Ok(None);
    }
    let k = parts.len();
    let joined = join_partitions(&shuffled, &consecutive_blocks(n, k))?;
    let composite = root(&joined, k)?.expect("a join with the consecutive blocks always has a root");
    Ok(Some(composite))
}

/// `a ∘ b`, or `None` when the pair is not admissible.
pub fn compose(a: &NoncrossingPartition, b: &NoncrossingPartition) -> Result<Option<NoncrossingPartition>> {
    same_size(a, b)?;
    if a.n() == 0 {
        return Ok(Some(NoncrossingPartition::empty()));
    }
    closed_form(a.n(), &[a, b])
}

/// A tuple of members of `NCP(n)` whose interleaving is noncrossing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AdmissibleTuple {
    n: usize,
    parts: Vec<NoncrossingPartition>,
}

impl AdmissibleTuple {
    pub fn new(n: usize, parts: Vec<NoncrossingPartition>) -> Result<Self> {
        for p in &parts {
            if p.n() != n {
                return Err(NcpError::SizeMismatch { expected: n, found: p.n() });
            }
        }
        if n > 0 && !is_admissible_tuple(n, &parts)? {
            return Err(NcpError::NotAdmissible);
        }
        Ok(AdmissibleTuple { n, parts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[NoncrossingPartition] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `a_1 ∘ .. ∘ a_k = 1_n`.
    pub fn is_complete(&self) -> bool {
        compose_many(self).is_one()
    }
}

/// A weakly increasing sequence in `(NCP(n), |)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MultiChain {
    n: usize,
    chain: Vec<NoncrossingPartition>,
}

impl MultiChain {
    pub fn new(n: usize, chain: Vec<NoncrossingPartition>) -> Result<Self> {
        for p in &chain {
            if p.n() != n {
                return Err(NcpError::SizeMismatch { expected: n, found: p.n() });
            }
        }
        for w in chain.windows(2) {
            if !divides(&w[0], &w[1])? {
                return Err(NcpError::NotAMultichain);
            }
        }
        Ok(MultiChain { n, chain })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chain(&self) -> &[NoncrossingPartition] {
        &self.chain
    }

    /// Number of steps, one less than the number of entries.
    pub fn length(&self) -> usize {
        self.chain.len().saturating_sub(1)
    }
}

/// Left fold of `compose` over the tuple; `0_n` for the empty tuple.
pub fn compose_fold(t: &AdmissibleTuple) -> NoncrossingPartition {
    t.parts.iter().fold(NoncrossingPartition::zero(t.n), |acc, p| {
        compose(&acc, p)
            .expect("tuple entries share the ground set")
            .expect("prefixes of an admissible tuple compose")
    })
}

/// Root of the full interleaving joined with consecutive blocks.
pub fn compose_closed_form(t: &AdmissibleTuple) -> NoncrossingPartition {
    if t.parts.is_empty() || t.n == 0 {
        return NoncrossingPartition::zero(t.n);
    }
    let parts: Vec<&NoncrossingPartition> = t.parts.iter().collect();
    closed_form(t.n, &parts)
        .expect("tuple entries share the ground set")
        .expect("admissible tuples interleave without crossings")
}

/// `a_1 ∘ .. ∘ a_k`.
pub fn compose_many(t: &AdmissibleTuple) -> NoncrossingPartition {
    let folded = compose_fold(t);
    debug_assert_eq!(folded, compose_closed_form(t));
    folded
}

/// Kreweras complement by the interval rule: `i < j` share a block of `K(a)`
/// iff `{i+1, .., j}` is a union of blocks of `a`.
pub fn kreweras(a: &NoncrossingPartition) -> NoncrossingPartition {
    let n = a.n();
    let labels = a.labels();
    let span: Vec<(usize, usize)> = a.blocks().iter().map(|b| (b[0], *b.last().unwrap())).collect();
    let mut dsu = DisjointSets::new(n);
    for i in 1..=n {
        // lo/hi track the extreme elements of blocks meeting {i+1..j}
        let (mut lo, mut hi) = (usize::MAX, 0);
        for j in i + 1..=n {
            let (bmin, bmax) = span[labels[j - 1]];
            lo = lo.min(bmin);
            hi = hi.max(bmax);
            if lo > i && hi <= j {
                dsu.union(i - 1, j - 1);
            }
        }
    }
    let k = NoncrossingPartition::from_labels_unchecked(&dsu.labels());
    debug_assert_eq!(compose(a, &k).ok().flatten(), Some(NoncrossingPartition::one(n)), "{a}");
    k
}

/// `K_b(a)` for `a | b`: the Kreweras complement taken inside each block of `b`.
pub fn relative_kreweras(a: &NoncrossingPartition, b: &NoncrossingPartition) -> Result<NoncrossingPartition> {
    if !divides(a, b)? {
        return Err(NcpError::NotDividing);
    }
    let a_labels = a.labels();
    let mut blocks = Vec::new();
    for block in b.blocks() {
        let ground = GroundSubset::new(block.clone())?;
        let mut local: HashMap<usize, Vec<usize>> = HashMap::new();
        for &e in block {
            local.entry(a_labels[e - 1]).or_default().push(e);
        }
        let restricted = SubsetPartition::new(ground.clone(), local.into_values().collect())?;
        let complement = kreweras(&restricted.standardize()?);
        blocks.extend(ground.transport(&complement)?.blocks().iter().cloned());
    }
    let result = NoncrossingPartition::from_blocks(a.n(), blocks)?;
    debug_assert_eq!(compose(a, &result).ok().flatten().as_ref(), Some(b));
    Ok(result)
}

/// Cyclic relabelling `i ↦ i + steps (mod n)`. `K(K(a))` is `rotate(a, n - 1)`.
pub fn rotate(a: &NoncrossingPartition, steps: usize) -> NoncrossingPartition {
    let n = a.n();
    if n == 0 {
        return a.clone();
    }
    let blocks = a.blocks().iter().map(|b| b.iter().map(|e| (e - 1 + steps) % n + 1).collect()).collect();
    NoncrossingPartition::from_blocks(n, blocks).expect("rotations preserve noncrossing partitions")
}

/// Order of `K` as a permutation of `NCP(n)`.
pub fn kreweras_order(n: usize) -> Result<u64> {
    let all = enumerate_ncp(n)?;
    let index: HashMap<&NoncrossingPartition, usize> = all.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let image: Vec<usize> = all.iter().map(|p| index[&kreweras(p)]).collect();
    let mut seen = vec![false; all.len()];
    let mut order: u64 = 1;
    for start in 0..all.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = image[x];
            len += 1;
        }
        order = order.lcm(&len);
    }
    Ok(order)
}

/// `(a_1, .., a_k) ↦ a_1 ⧢ .. ⧢ a_k ∈ NCP(kn)`.
pub fn tuple_to_kpreserving(t: &AdmissibleTuple) -> NoncrossingPartition {
    let shuffled = shuffle_many(t.n, &t.parts).expect("tuple entries share the ground set");
    NoncrossingPartition::new(shuffled).expect("admissible tuples interleave without crossings")
}

/// Splits a `k`-preserving partition of `[kn]` into its `k` residue classes.
pub fn kpreserving_to_tuple(a: &NoncrossingPartition, k: usize) -> Result<AdmissibleTuple> {
    if !is_k_preserving(a, k)? {
        return Err(NcpError::NotKPreserving { k });
    }
    let n = a.n() / k;
    let mut per_residue: Vec<Vec<Vec<usize>>> = vec![Vec::new(); k];
    for block in a.blocks() {
        let residue = (block[0] - 1) % k;
        per_residue[residue].push(block.iter().map(|&e| (e - 1) / k + 1).collect());
    }
    let parts = per_residue
        .into_iter()
        .map(|blocks| NoncrossingPartition::from_blocks(n, blocks))
        .collect::<Result<Vec<_>>>()?;
    AdmissibleTuple::new(n, parts)
}

/// `(a_1, .., a_k) ↦ a_1 | a_1∘a_2 | .. | a_1∘..∘a_k`.
pub fn tuple_to_multichain(t: &AdmissibleTuple) -> MultiChain {
    let mut chain = Vec::with_capacity(t.len());
    let mut acc = NoncrossingPartition::zero(t.n);
    for p in &t.parts {
        acc = compose(&acc, p).expect("same ground set").expect("prefixes of an admissible tuple compose");
        chain.push(acc.clone());
    }
    MultiChain { n: t.n, chain }
}

/// `b_1 | .. | b_k ↦ (b_1, K_{b_2}(b_1), .., K_{b_k}(b_{k-1}))`.
pub fn multichain_to_tuple(m: &MultiChain) -> Result<AdmissibleTuple> {
    let mut parts = Vec::with_capacity(m.chain.len());
    if let Some(first) = m.chain.first() {
        parts.push(first.clone());
    }
    for w in m.chain.windows(2) {
        parts.push(relative_kreweras(&w[0], &w[1])?);
    }
    AdmissibleTuple::new(m.n, parts)
}

/// Appends `K(a_1 ∘ .. ∘ a_k)`, producing a complete `(k+1)`-tuple.
pub fn complete_tuple(t: &AdmissibleTuple) -> AdmissibleTuple {
    let mut parts = t.parts.clone();
    parts.push(kreweras(&compose_many(t)));
    AdmissibleTuple::new(t.n, parts).expect("a tuple followed by the complement of its product is admissible")
}

/// Inverse of [`complete_tuple`]: drops the last entry of a complete tuple.
pub fn drop_completion(t: &AdmissibleTuple) -> Result<AdmissibleTuple> {
    if t.is_empty() || !t.is_complete() {
        return Err(NcpError::NotComplete);
    }
    let mut parts = t.parts.clone();
    parts.pop();
    AdmissibleTuple::new(t.n, parts)
}

/// `k`-tuple to the `(k+1)`-completing partition of `[(k+1)n]`.
pub fn tuple_to_completing(t: &AdmissibleTuple) -> NoncrossingPartition {
    tuple_to_kpreserving(&complete_tuple(t))
}

/// `(k+1)`-completing partition back to the `k`-tuple; `width = k + 1`.
pub fn completing_to_tuple(a: &NoncrossingPartition, width: usize) -> Result<AdmissibleTuple> {
    if !crate::shuffle::is_k_completing(a, width)? {
        return Err(NcpError::NotCompleting { k: width });
    }
    drop_completion(&kpreserving_to_tuple(a, width)?)
}

/// `K_{abc}(ab) = c = K_{K_{abc}(a)}(K_{ab}(a))` for an admissible triple.
pub fn check_complement_associativity(a: &NoncrossingPartition, b: &NoncrossingPartition, c: &NoncrossingPartition) -> Result<bool> {
    let t = AdmissibleTuple::new(a.n(), vec![a.clone(), b.clone(), c.clone()])?;
    let ab = compose(a, b)?.ok_or(NcpError::NotAdmissible)?;
    let abc = compose_many(&t);
    let first = relative_kreweras(&ab, &abc)?;
    let outer = relative_kreweras(a, &abc)?;
    let inner = relative_kreweras(a, &ab)?;
    let second = relative_kreweras(&inner, &outer)?;
    Ok(&first == c && &second == c)
}

/// All admissible `k`-tuples in `NCP(n)`, by filtering `NCP(n)^k`.
pub fn enumerate_admissible_tuples(n: usize, k: usize) -> Result<Vec<AdmissibleTuple>> {
    let all = enumerate_ncp(n)?;
    let mut tuples: Vec<Vec<NoncrossingPartition>> = vec![vec![]];
    for _ in 0..k {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                all.iter().map(move |p| {
                    let mut t = t.clone();
                    t.push(p.clone());
                    t
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for parts in tuples {
        if n == 0 || is_admissible_tuple(n, &parts)? {
            out.push(AdmissibleTuple { n, parts });
        }
    }
    Ok(out)
}

/// All multichains with `steps` steps (`steps + 1` entries) in `NCP(n)`.
pub fn enumerate_multichains(n: usize, steps: usize) -> Result<Vec<MultiChain>> {
    let all = enumerate_ncp(n)?;
    let mut chains: Vec<Vec<NoncrossingPartition>> = all.iter().map(|p| vec![p.clone()]).collect();
    for _ in 0..steps {
        let mut next = Vec::new();
        for c in &chains {
            let last = c.last().unwrap();
            for p in &all {
                if divides(last, p)? {
                    let mut c = c.clone();
                    c.push(p.clone());
                    next.push(c);
                }
            }
        }
        chains = next;
    }
    Ok(chains.into_iter().map(|chain| MultiChain { n, chain }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ncp(n: usize, blocks: &[&[usize]]) -> NoncrossingPartition {
        NoncrossingPartition::from_blocks(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn composition_examples() {
        for a in enumerate_ncp(3).unwrap() {
            let zero = NoncrossingPartition::zero(3);
            assert_eq!(compose(&a, &zero).unwrap(), Some(a.clone()));
            assert_eq!(compose(&zero, &a).unwrap(), Some(a.clone()));
        }
        let a = ncp(3, &[&[1, 2], &[3]]);
        let b = ncp(3, &[&[1], &[2, 3]]);
        assert_eq!(compose(&a, &b).unwrap(), Some(NoncrossingPartition::one(3)));
        assert_eq!(compose(&b, &a).unwrap(), None);
        assert!(compose(&a, &NoncrossingPartition::zero(2)).is_err());
    }

    #[test]
    fn compose_many_examples() {
        let a = ncp(3, &[&[1, 2], &[3]]);
        let b = ncp(3, &[&[1], &[2, 3]]);
        let single = AdmissibleTuple::new(3, vec![a.clone()]).unwrap();
        assert_eq!(compose_many(&single), a);
        let zeros = AdmissibleTuple::new(3, vec![NoncrossingPartition::zero(3); 3]).unwrap();
        assert_eq!(compose_many(&zeros), NoncrossingPartition::zero(3));
        let pair = AdmissibleTuple::new(3, vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(compose_many(&pair), NoncrossingPartition::one(3));
        assert_eq!(compose_closed_form(&pair), NoncrossingPartition::one(3));
        assert_eq!(AdmissibleTuple::new(3, vec![b, a]), Err(NcpError::NotAdmissible));
        let empty = AdmissibleTuple::new(2, vec![]).unwrap();
        assert_eq!(compose_many(&empty), NoncrossingPartition::zero(2));
    }

    #[test]
    fn kreweras_examples() {
        for n in 1..=5 {
            assert_eq!(kreweras(&NoncrossingPartition::zero(n)), NoncrossingPartition::one(n));
            assert_eq!(kreweras(&NoncrossingPartition::one(n)), NoncrossingPartition::zero(n));
        }
        assert_eq!(kreweras(&ncp(3, &[&[1, 2], &[3]])), ncp(3, &[&[1], &[2, 3]]));
    }

    #[test]
    fn relative_examples() {
        for b in enumerate_ncp(4).unwrap() {
            let zero = NoncrossingPartition::zero(4);
            assert_eq!(relative_kreweras(&zero, &b).unwrap(), b);
            assert_eq!(relative_kreweras(&b, &b).unwrap(), zero);
        }
        let a = ncp(3, &[&[1, 2], &[3]]);
        assert_eq!(relative_kreweras(&a, &NoncrossingPartition::one(3)).unwrap(), kreweras(&a));
        assert_eq!(
            relative_kreweras(&NoncrossingPartition::one(3), &a),
            Err(NcpError::NotDividing)
        );
    }

    #[test]
    fn complement_squared_rotates() {
        for n in 1..=6 {
            for a in enumerate_ncp(n).unwrap() {
                assert_eq!(kreweras(&kreweras(&a)), rotate(&a, n - 1), "{a}");
            }
        }
    }

    #[test]
    fn order_of_complement() {
        assert_eq!(kreweras_order(1).unwrap(), 1);
        assert_eq!(kreweras_order(2).unwrap(), 2);
        // K² is rotation by one step, so K cycles with period 2n from n = 3 on
        assert_eq!(kreweras_order(3).unwrap(), 6);
        assert_eq!(kreweras_order(4).unwrap(), 8);
    }

    #[test]
    fn bijection_edges() {
        let a = ncp(3, &[&[1, 3], &[2]]);
        let t = AdmissibleTuple::new(3, vec![a.clone()]).unwrap();
        let m = tuple_to_multichain(&t);
        assert_eq!(m.chain(), std::slice::from_ref(&a));
        assert_eq!(multichain_to_tuple(&m).unwrap(), t);
        assert_eq!(
            MultiChain::new(3, vec![NoncrossingPartition::one(3), a.clone()]),
            Err(NcpError::NotAMultichain)
        );
        assert_eq!(drop_completion(&t), Err(NcpError::NotComplete));
        assert_eq!(
            kpreserving_to_tuple(&ncp(4, &[&[1, 2], &[3], &[4]]), 2),
            Err(NcpError::NotKPreserving { k: 2 })
        );
        assert_eq!(
            completing_to_tuple(&NoncrossingPartition::zero(4), 2),
            Err(NcpError::NotCompleting { k: 2 })
        );
    }

    #[test]
    fn pairs_in_ncp3() {
        let pairs = enumerate_admissible_tuples(3, 2).unwrap();
        assert_eq!(pairs.len(), 12);
        assert_eq!(enumerate_multichains(3, 1).unwrap().len(), 12);
        for t in pairs {
            assert_eq!(multichain_to_tuple(&tuple_to_multichain(&t)).unwrap(), t);
        }
    }
}
