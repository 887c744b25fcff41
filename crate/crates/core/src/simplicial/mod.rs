//! Truncated simplicial sets as finite index tables, with decalage and
//! checkers for simplicial identities, isomorphisms, 2-Segal squares and
//! unique lifting of factorizations.

mod instances;

use std::collections::{HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{NcpError, Result};

pub use instances::{
    bar, bar_of_integers, bar_of_ncp_monoid, nerve, nerve_of_divisibility, nerve_of_ncp_poset, prefix_product_map,
    MAX_INTEGER_BOUND,
};

/// Simplices in degrees `0..=d_max` with faces and degeneracies stored as
/// index maps: `face(k, i)[x]` is the index in degree `k - 1` of `d_i` of the
/// `x`-th `k`-simplex, and `degeneracy(k, i)[x]` the index in degree `k + 1`.
#[derive(Clone, Debug)]
pub struct TruncatedSimplicialSet<S> {
    simplices: Vec<Vec<S>>,
    index: Vec<HashMap<S, usize>>,
    faces: Vec<Vec<Vec<usize>>>,
    degeneracies: Vec<Vec<Vec<usize>>>,
}

impl<S: Clone + Eq + Hash + Debug> TruncatedSimplicialSet<S> {
    /// Tabulates `face(k, i, x)` and `degeneracy(k, i, x)`; a `None` or an
    /// image outside the given simplices is a `NotClosed` error.
    pub fn build(
        simplices: Vec<Vec<S>>,
        face: impl Fn(usize, usize, &S) -> Option<S>,
        degeneracy: impl Fn(usize, usize, &S) -> Option<S>,
    ) -> Result<Self> {
        if simplices.is_empty() {
            return Err(NcpError::EmptySequence);
        }
        let d_max = simplices.len() - 1;
        let index: Vec<HashMap<S, usize>> = simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let lookup = |k: usize, image: Option<S>, what: &str, i: usize, x: &S| -> Result<usize> {
            image
                .as_ref()
                .and_then(|s| index[k].get(s).copied())
                .ok_or_else(|| NcpError::NotClosed(format!("{what}_{i} of {x:?} gives {image:?}")))
        };
        let mut faces = vec![Vec::new()];
        for k in 1..=d_max {
            let mut per_i = Vec::with_capacity(k + 1);
            for i in 0..=k {
                let table = simplices[k]
                    .iter()
                    .map(|x| lookup(k - 1, face(k, i, x), "d", i, x))
                    .collect::<Result<Vec<_>>>()?;
                per_i.push(table);
            }
            faces.push(per_i);
        }
        let mut degeneracies = Vec::new();
        for k in 0..d_max {
            let mut per_i = Vec::with_capacity(k + 1);
            for i in 0..=k {
                let table = simplices[k]
                    .iter()
                    .map(|x| lookup(k + 1, degeneracy(k, i, x), "s", i, x))
                    .collect::<Result<Vec<_>>>()?;
                per_i.push(table);
            }
            degeneracies.push(per_i);
        }
        Ok(TruncatedSimplicialSet { simplices, index, faces, degeneracies })
    }

    pub fn d_max(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn simplices(&self, k: usize) -> &[S] {
        &self.simplices[k]
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices[k].len()
    }

    pub fn index_of(&self, k: usize, s: &S) -> Option<usize> {
        self.index[k].get(s).copied()
    }

    /// `d_i : X_k → X_{k-1}` as an index table.
    pub fn face(&self, k: usize, i: usize) -> &[usize] {
        &self.faces[k][i]
    }

    /// `s_i : X_k → X_{k+1}` as an index table.
    pub fn degeneracy(&self, k: usize, i: usize) -> &[usize] {
        &self.degeneracies[k][i]
    }

    /// Forgets everything above degree `d`.
    pub fn truncate(&self, d: usize) -> Self {
        let d = d.min(self.d_max());
        TruncatedSimplicialSet {
            simplices: self.simplices[..=d].to_vec(),
            index: self.index[..=d].to_vec(),
            faces: self.faces[..=d].to_vec(),
            degeneracies: self.degeneracies[..d].to_vec(),
        }
    }
}

/// `Dec⊥(X)_k = X_{k+1}`, dropping `d_0` and `s_0` and shifting the others down.
pub fn lower_decalage<S: Clone + Eq + Hash + Debug>(x: &TruncatedSimplicialSet<S>) -> Result<TruncatedSimplicialSet<S>> {
    if x.d_max() < 1 {
        return Err(NcpError::TooShallow { d_max: x.d_max(), needed: 1 });
    }
    Ok(TruncatedSimplicialSet {
        simplices: x.simplices[1..].to_vec(),
        index: x.index[1..].to_vec(),
        faces: std::iter::once(Vec::new()).chain(x.faces[2..].iter().map(|f| f[1..].to_vec())).collect(),
        degeneracies: x.degeneracies[1..].iter().map(|s| s[1..].to_vec()).collect(),
    })
}

/// Degreewise index maps between two truncated simplicial sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    components: Vec<Vec<usize>>,
}

impl SimplicialMap {
    /// Tabulates `f(k, x)` in every degree of `source`.
    pub fn from_fn<S, T>(
        source: &TruncatedSimplicialSet<S>,
        target: &TruncatedSimplicialSet<T>,
        f: impl Fn(usize, &S) -> T,
    ) -> Result<Self>
    where
        S: Clone + Eq + Hash + Debug,
        T: Clone + Eq + Hash + Debug,
    {
        if source.d_max() > target.d_max() {
            return Err(NcpError::TooShallow { d_max: target.d_max(), needed: source.d_max() });
        }
        let components = (0..=source.d_max())
            .map(|k| {
                source.simplices(k)
                    .iter()
                    .map(|x| {
                        let image = f(k, x);
                        target
                            .index_of(k, &image)
                            .ok_or_else(|| NcpError::NotClosed(format!("{x:?} maps to {image:?}, not a {k}-simplex")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialMap { components })
    }

    pub fn identity<S: Clone + Eq + Hash + Debug>(x: &TruncatedSimplicialSet<S>) -> Self {
        SimplicialMap { components: (0..=x.d_max()).map(|k| (0..x.count(k)).collect()).collect() }
    }

    /// Highest degree on which the map is defined.
    pub fn d_max(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, k: usize) -> &[usize] {
        &self.components[k]
    }
}

/// The dec map `Dec⊥(X) → X`, given by the original `d_0`.
pub fn dec_map<S: Clone + Eq + Hash + Debug>(x: &TruncatedSimplicialSet<S>) -> Result<SimplicialMap> {
    if x.d_max() < 1 {
        return Err(NcpError::TooShallow { d_max: x.d_max(), needed: 1 });
    }
    Ok(SimplicialMap { components: (1..=x.d_max()).map(|k| x.face(k, 0).to_vec()).collect() })
}

/// Outcome of a checker: how many conditions were examined and which failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub checked: usize,
    pub failure_count: usize,
    /// The first few failures, with the degree, maps and simplex involved.
    pub failures: Vec<String>,
}

const KEPT_FAILURES: usize = 10;

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), checked: 0, failure_count: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(detail());
            }
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failure_count += other.failure_count;
        let room = KEPT_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }
}

/// Face-face, face-degeneracy and degeneracy-degeneracy identities, in every
/// degree where both sides are defined.
pub fn check_simplicial_identities<S: Clone + Eq + Hash + Debug>(x: &TruncatedSimplicialSet<S>) -> CheckReport {
    let mut report = CheckReport::new("simplicial identities");
    let d_max = x.d_max();
    let show = |k: usize, s: usize| format!("{:?}", x.simplices(k)[s]);
    // d_i d_j = d_{j-1} d_i for i < j, on X_k with k >= 2
    for k in 2..=d_max {
        for j in 1..=k {
            for i in 0..j {
                for s in 0..x.count(k) {
                    let lhs = x.face(k - 1, i)[x.face(k, j)[s]];
                    let rhs = x.face(k - 1, j - 1)[x.face(k, i)[s]];
                    report.record(lhs == rhs, || format!("d_{i} d_{j} != d_{} d_{i} on X_{k} at {}", j - 1, show(k, s)));
                }
            }
        }
    }
    // d_i s_j on X_k, landing back in X_k
    for k in 0..d_max {
        for j in 0..=k {
            for i in 0..=k + 1 {
                for s in 0..x.count(k) {
                    let lhs = x.face(k + 1, i)[x.degeneracy(k, j)[s]];
                    let rhs = if i == j || i == j + 1 {
                        Some(s)
                    } else if k == 0 {
                        None
                    } else if i < j {
                        Some(x.degeneracy(k - 1, j - 1)[x.face(k, i)[s]])
                    } else {
                        Some(x.degeneracy(k - 1, j)[x.face(k, i - 1)[s]])
                    };
                    if let Some(rhs) = rhs {
                        report.record(lhs == rhs, || format!("d_{i} s_{j} on X_{k} at {}", show(k, s)));
                    }
                }
            }
        }
    }
    // s_i s_j = s_{j+1} s_i for i <= j, on X_k with k + 2 <= d_max
    for k in 0..d_max.saturating_sub(1) {
        for j in 0..=k {
            for i in 0..=j {
                for s in 0..x.count(k) {
                    let lhs = x.degeneracy(k + 1, i)[x.degeneracy(k, j)[s]];
                    let rhs = x.degeneracy(k + 1, j + 1)[x.degeneracy(k, i)[s]];
                    report.record(lhs == rhs, || format!("s_{i} s_{j} != s_{} s_{i} on X_{k} at {}", j + 1, show(k, s)));
                }
            }
        }
    }
    report
}

/// Whether `f` commutes with every face and degeneracy map in its degrees.
pub fn check_map<S, T>(source: &TruncatedSimplicialSet<S>, target: &TruncatedSimplicialSet<T>, f: &SimplicialMap) -> CheckReport
where
    S: Clone + Eq + Hash + Debug,
    T: Clone + Eq + Hash + Debug,
{
    let mut report = CheckReport::new("simplicial map");
    let top = f.d_max().min(source.d_max()).min(target.d_max());
    for k in 1..=top {
        for i in 0..=k {
            for s in 0..source.count(k) {
                let lhs = f.component(k - 1)[source.face(k, i)[s]];
                let rhs = target.face(k, i)[f.component(k)[s]];
                report.record(lhs == rhs, || format!("f d_{i} != d_{i} f on X_{k} at {:?}", source.simplices(k)[s]));
            }
        }
    }
    for k in 0..top {
        for i in 0..=k {
            for s in 0..source.count(k) {
                let lhs = f.component(k + 1)[source.degeneracy(k, i)[s]];
                let rhs = target.degeneracy(k, i)[f.component(k)[s]];
                report.record(lhs == rhs, || format!("f s_{i} != s_{i} f on X_{k} at {:?}", source.simplices(k)[s]));
            }
        }
    }
    report
}

/// `f` is a simplicial map whose every component is a bijection.
pub fn check_iso<S, T>(source: &TruncatedSimplicialSet<S>, target: &TruncatedSimplicialSet<T>, f: &SimplicialMap) -> CheckReport
where
    S: Clone + Eq + Hash + Debug,
    T: Clone + Eq + Hash + Debug,
{
    let mut report = CheckReport::new("isomorphism");
    report.record(
        f.d_max() == source.d_max() && source.d_max() == target.d_max(),
        || format!("degrees differ: map {}, source {}, target {}", f.d_max(), source.d_max(), target.d_max()),
    );
    let top = f.d_max().min(source.d_max()).min(target.d_max());
    for k in 0..=top {
        let image: HashSet<usize> = f.component(k).iter().copied().collect();
        let (ns, nt) = (source.count(k), target.count(k));
        report.record(image.len() == ns && ns == nt, || {
            format!("degree {k}: {ns} simplices map onto {} of {nt}", image.len())
        });
    }
    report.merge(check_map(source, target, f));
    report
}

/// Whether `(p, q): A → B ×_D C` is a bijection, for a square with
/// `f ∘ p = g ∘ q`.
#[allow(clippy::too_many_arguments)]
fn check_pullback(
    report: &mut CheckReport,
    label: &str,
    p: &[usize],
    q: &[usize],
    f: &[usize],
    g: &[usize],
    describe: impl Fn(usize) -> String,
) {
    let mut seen = HashSet::new();
    for a in 0..p.len() {
        report.record(f[p[a]] == g[q[a]], || format!("{label}: square does not commute at {}", describe(a)));
        report.record(seen.insert((p[a], q[a])), || format!("{label}: two simplices share the image of {}", describe(a)));
    }
    let mut fibre_b: HashMap<usize, usize> = HashMap::new();
    for &d in f {
        *fibre_b.entry(d).or_default() += 1;
    }
    let fibre_product: usize = g.iter().map(|d| fibre_b.get(d).copied().unwrap_or(0)).sum();
    report.record(fibre_product == p.len(), || {
        format!("{label}: fibre product has {fibre_product} elements, expected {}", p.len())
    });
}

/// Low-degree decomposition-space squares: the two active-inert squares on
/// `X_3` and the two unital squares on `X_1`.
pub fn check_two_segal<S: Clone + Eq + Hash + Debug>(x: &TruncatedSimplicialSet<S>) -> Result<CheckReport> {
    if x.d_max() < 3 {
        return Err(NcpError::TooShallow { d_max: x.d_max(), needed: 3 });
    }
    let mut report = CheckReport::new("2-Segal");
    let d = |k: usize, i: usize| x.face(k, i);
    let s = |k: usize, i: usize| x.degeneracy(k, i);
    let describe = |k: usize| move |a: usize| format!("{:?}", x.simplices(k)[a]);
    check_pullback(&mut report, "X_3 by d_0, d_2 over d_1, d_0", d(3, 0), d(3, 2), d(2, 1), d(2, 0), describe(3));
    check_pullback(&mut report, "X_3 by d_3, d_1 over d_1, d_2", d(3, 3), d(3, 1), d(2, 1), d(2, 2), describe(3));
    check_pullback(&mut report, "X_1 by s_1, d_0 over d_0, s_0", s(1, 1), d(1, 0), d(2, 0), s(0, 0), describe(1));
    check_pullback(&mut report, "X_1 by s_0, d_1 over d_2, s_0", s(1, 0), d(1, 1), d(2, 2), s(0, 0), describe(1));
    Ok(report)
}

/// Unique lifting of factorizations: every inner-face square of `f` is a
/// pullback, in each degree `2..` the map covers.
pub fn check_ulf<S, T>(source: &TruncatedSimplicialSet<S>, target: &TruncatedSimplicialSet<T>, f: &SimplicialMap) -> Result<CheckReport>
where
    S: Clone + Eq + Hash + Debug,
    T: Clone + Eq + Hash + Debug,
{
    let top = f.d_max().min(source.d_max()).min(target.d_max());
    if top < 2 {
        return Err(NcpError::TooShallow { d_max: top, needed: 2 });
    }
    let mut report = CheckReport::new("unique lifting of factorizations");
    for k in 2..=top {
        for i in 1..k {
            let label = format!("inner face d_{i} on degree {k}");
            let describe = |a: usize| format!("{:?}", source.simplices(k)[a]);
            check_pullback(
                &mut report,
                &label,
                f.component(k),
                source.face(k, i),
                target.face(k, i),
                f.component(k - 1),
                describe,
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kreweras::{compose, enumerate_admissible_tuples, relative_kreweras};
    use crate::partition::NoncrossingPartition;

    #[test]
    fn nerve_small_degrees() {
        let x = nerve_of_ncp_poset(2, 3).unwrap();
        assert_eq!(x.count(0), 2);
        assert_eq!(x.count(1), 3);
        assert!(check_simplicial_identities(&x).passed());
        let y = nerve_of_ncp_poset(3, 3).unwrap();
        let report = check_simplicial_identities(&y);
        assert!(report.passed(), "{report:?}");
        assert!(report.checked > 0);
    }

    #[test]
    fn bar_small_degrees() {
        let x = bar_of_ncp_monoid(2, 3).unwrap();
        assert_eq!(x.count(0), 1);
        assert_eq!(x.count(1), 2);
        let (z, o) = (NoncrossingPartition::zero(2), NoncrossingPartition::one(2));
        let mut pairs = x.simplices(2).to_vec();
        pairs.sort();
        assert_eq!(pairs, vec![vec![z.clone(), z.clone()], vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]]);
        let idx = x.index_of(2, &vec![z.clone(), o.clone()]).unwrap();
        assert_eq!(x.simplices(1)[x.face(2, 1)[idx]], vec![o]);
        assert!(check_simplicial_identities(&x).passed());
        for n in 1..=3 {
            let b = bar_of_ncp_monoid(n, 3).unwrap();
            for k in 1..=3 {
                assert_eq!(b.count(k), enumerate_admissible_tuples(n, k).unwrap().len());
            }
        }
    }

    #[test]
    fn integer_instances() {
        let b = bar_of_integers(30, 3).unwrap();
        let i = b.index_of(2, &vec![2, 3]).unwrap();
        assert_eq!(b.simplices(1)[b.face(2, 1)[i]], vec![6]);
        assert!(b.index_of(2, &vec![6, 6]).is_none());
        let n = nerve_of_divisibility(30, 3).unwrap();
        assert!(n.index_of(1, &vec![2, 12]).is_some());
        assert!(n.index_of(1, &vec![2, 7]).is_none());
        assert!(check_simplicial_identities(&b).passed());
        assert!(check_simplicial_identities(&n).passed());
        let dec = lower_decalage(&bar_of_integers(30, 4).unwrap()).unwrap();
        let cmp = prefix_product_map(&dec, &n, |a, b| a * b).unwrap();
        let chain = |t: &[u64]| n.simplices(2)[cmp.component(2)[dec.index_of(2, &t.to_vec()).unwrap()]].clone();
        assert_eq!(chain(&[2, 3, 5]), vec![2, 6, 30]);
    }

    #[test]
    fn decalage_shape() {
        let b = bar_of_ncp_monoid(2, 3).unwrap();
        let dec = lower_decalage(&b).unwrap();
        assert_eq!(dec.d_max(), 2);
        assert_eq!(dec.count(0), 2);
        assert_eq!(dec.count(1), 3);
        assert!(check_simplicial_identities(&dec).passed());
        let f = dec_map(&b).unwrap();
        assert!(check_map(&dec, &b, &f).passed());
        let pair = dec.index_of(1, &vec![NoncrossingPartition::zero(2), NoncrossingPartition::one(2)]).unwrap();
        assert_eq!(b.simplices(1)[f.component(1)[pair]], vec![NoncrossingPartition::one(2)]);
        let point = bar_of_ncp_monoid(2, 0).unwrap();
        assert_eq!(lower_decalage(&point).unwrap_err(), NcpError::TooShallow { d_max: 0, needed: 1 });
        let nerve = nerve_of_ncp_poset(3, 2).unwrap();
        assert_eq!(lower_decalage(&nerve).unwrap().count(0), nerve.count(1));
    }

    #[test]
    fn decalage_isomorphisms() {
        for n in 1..=3 {
            let dec = lower_decalage(&bar_of_ncp_monoid(n, 4).unwrap()).unwrap();
            let nerve = nerve_of_ncp_poset(n, 3).unwrap();
            let cmp = prefix_product_map(&dec, &nerve, |a, b| compose(a, b).unwrap().unwrap()).unwrap();
            let report = check_iso(&dec, &nerve, &cmp);
            assert!(report.passed(), "{report:?}");
            // nerve → Dec⊥ → bar in degree 1 is the relative complement
            for (j, t) in dec.simplices(1).iter().enumerate() {
                let chain = &nerve.simplices(1)[cmp.component(1)[j]];
                assert_eq!(t[1], relative_kreweras(&chain[0], &chain[1]).unwrap());
            }
        }
        let dec = lower_decalage(&bar_of_integers(30, 4).unwrap()).unwrap();
        let nerve = nerve_of_divisibility(30, 3).unwrap();
        let cmp = prefix_product_map(&dec, &nerve, |a, b| a * b).unwrap();
        assert!(check_iso(&dec, &nerve, &cmp).passed());
        let id = SimplicialMap::identity(&nerve);
        assert!(check_iso(&nerve, &nerve, &id).passed());
    }

    #[test]
    fn segal_and_ulf() {
        for n in 1..=3 {
            let b = bar_of_ncp_monoid(n, 3).unwrap();
            let report = check_two_segal(&b).unwrap();
            assert!(report.passed(), "{report:?}");
        }
        let b = bar_of_ncp_monoid(3, 3).unwrap();
        let dec = lower_decalage(&b).unwrap();
        let report = check_ulf(&dec, &b, &dec_map(&b).unwrap()).unwrap();
        assert!(report.passed(), "{report:?}");
        let shallow = bar_of_ncp_monoid(2, 2).unwrap();
        assert!(matches!(check_two_segal(&shallow), Err(NcpError::TooShallow { .. })));
        let point = nerve(&[()], |_, _| true, 3).unwrap();
        assert!(check_simplicial_identities(&point).passed());
        assert!(check_two_segal(&point).unwrap().passed());
        let id = SimplicialMap::identity(&point);
        assert!(check_ulf(&point, &point, &id).unwrap().passed());
    }

    #[test]
    fn broken_square_is_reported() {
        // collapsing a two-element chain to a point: the interval [0, 1]
        // factors in two ways while its image factors in one
        let x = nerve(&[0u8, 1], |a, b| a <= b, 3).unwrap();
        let y = nerve(&[0u8], |_, _| true, 3).unwrap();
        let collapse = SimplicialMap::from_fn(&x, &y, |k, _| vec![0u8; k + 1]).unwrap();
        let report = check_ulf(&x, &y, &collapse).unwrap();
        assert!(!report.passed());
        assert!(!report.failures.is_empty());
    }
}
