//! Verification suites: exhaustive small-instance checks of the algebraic
//! laws, with randomized checks where the domain is a function space.
//!
//! Every suite returns one [`VerifyReport`] per property. A failing report
//! carries the first counterexample with its inputs written out in full.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Display;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::brute;
use crate::error::{NcpError, Result};
use crate::incidence::{
    coassociativity_failure, counit_failure, cumulants_from_moments, integer_reduced_lift, is_reduced,
    is_reduced_integer, moments_from_cumulants, psi, psi_morphism_failure, rational, reduced_convolution_formula,
    reduced_lift, check_quotient_morphism, Coalgebra, CompositionCoalgebra, CumulantSequence, IncidenceFunction,
    IntervalCoalgebra, MomentSequence, MultiplicativeCoalgebra, Rational,
};
use crate::kreweras::{
    check_complement_associativity, complete_tuple, completing_to_tuple, compose, compose_closed_form, compose_fold,
    drop_completion, enumerate_admissible_tuples, enumerate_multichains, kpreserving_to_tuple, kreweras,
    kreweras_order, multichain_to_tuple, relative_kreweras, rotate, tuple_to_completing, tuple_to_kpreserving,
    tuple_to_multichain, AdmissibleTuple, MultiChain,
};
use crate::lattice::{catalan, check_size, divides, enumerate_ncp, join, join_partitions, meet, relative_sublattice, Interval};
use crate::partition::NoncrossingPartition;
use crate::shuffle::{
    consecutive_blocks, enumerate_k_completing, enumerate_k_preserving, is_admissible, is_admissible_pair,
    is_admissible_tuple, is_k_completing, perfect_shuffle, power, root, shuffle_many, ShuffleContext,
};
use crate::simplicial::{
    bar_of_integers, bar_of_ncp_monoid, check_iso, check_simplicial_identities, check_two_segal, check_ulf, dec_map,
    lower_decalage, nerve_of_divisibility, nerve_of_ncp_poset, prefix_product_map, CheckReport,
};

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Which lattices the Möbius suite covers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeSelector {
    #[default]
    Both,
    Ncp,
    Integers,
}

/// User-supplied parameters; unset fields take each suite's defaults.
#[derive(Clone, Debug, Default)]
pub struct VerifyParams {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub bound: Option<u64>,
    pub depth: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub lattice: LatticeSelector,
}

/// The parameters a suite actually ran with.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub property: String,
    pub parameters: Parameters,
    pub checked: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Which parameters a suite reads, with their defaults.
#[derive(Clone, Copy, Default)]
struct Defaults {
    n: Option<usize>,
    k: Option<usize>,
    bound: Option<u64>,
    depth: Option<usize>,
    samples: Option<usize>,
    seeded: bool,
}

pub struct Suite {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub summary: &'static str,
    defaults: Defaults,
    run: fn(&Ctx) -> Result<Vec<VerifyReport>>,
}

const fn d(n: Option<usize>, k: Option<usize>, bound: Option<u64>, depth: Option<usize>, samples: Option<usize>) -> Defaults {
    Defaults { n, k, bound, depth, samples, seeded: samples.is_some() }
}

pub static SUITES: &[Suite] = &[
    Suite {
        name: "enumeration",
        aliases: &[],
        summary: "|NCP(n)| is Catalan; enumeration matches filtered set partitions",
        defaults: d(Some(9), None, None, None, None),
        run: suite_enumeration,
    },
    Suite {
        name: "lattice",
        aliases: &["lattice-axioms"],
        summary: "divisibility is a partial order; meet and join are greatest lower and least upper bounds",
        defaults: d(Some(4), None, None, None, None),
        run: suite_lattice,
    },
    Suite {
        name: "relative-sublattice",
        aliases: &[],
        summary: "partitions containing fixed blocks form a sublattice, a product of smaller lattices",
        defaults: d(Some(4), None, None, None, None),
        run: suite_relative_sublattice,
    },
    Suite {
        name: "powers",
        aliases: &[],
        summary: "power image is characterized by the join with consecutive blocks; roots invert powers",
        defaults: d(Some(4), Some(3), None, None, None),
        run: suite_powers,
    },
    Suite {
        name: "admissibility",
        aliases: &[],
        summary: "tuple admissibility is pairwise, downward closed, and the shuffle is increasing",
        defaults: d(Some(4), Some(3), None, None, None),
        run: suite_admissibility,
    },
    Suite {
        name: "partial-monoid",
        aliases: &[],
        summary: "composition is partially associative with unit 0_n",
        defaults: d(Some(4), None, None, None, None),
        run: suite_partial_monoid,
    },
    Suite {
        name: "monotonicity",
        aliases: &[],
        summary: "composition is strictly increasing in each argument",
        defaults: d(Some(4), None, None, None, None),
        run: suite_monotonicity,
    },
    Suite {
        name: "composition-identities",
        aliases: &[],
        summary: "the alternative root formulas for a composite agree",
        defaults: d(Some(4), Some(3), None, None, None),
        run: suite_composition_identities,
    },
    Suite {
        name: "kreweras",
        aliases: &[],
        summary: "Kreweras complements: defining equation, uniqueness, order reversal, anti-isomorphisms",
        defaults: d(Some(6), None, None, None, None),
        run: suite_kreweras,
    },
    Suite {
        name: "bijections",
        aliases: &["canonical-bijections"],
        summary: "tuples, k-preserving partitions, multichains, complete tuples and completing partitions correspond",
        defaults: d(Some(3), Some(3), None, None, None),
        run: suite_bijections,
    },
    Suite {
        name: "relative-complements",
        aliases: &[],
        summary: "relative complements of composites, and K(a) = b ∘ K(a ∘ b)",
        defaults: d(Some(4), None, None, None, None),
        run: suite_relative_complements,
    },
    Suite {
        name: "coalgebras",
        aliases: &["coassociativity"],
        summary: "coassociativity and counit laws; convolution is associative and unital",
        defaults: d(Some(4), None, Some(60), None, Some(10)),
        run: suite_coalgebras,
    },
    Suite {
        name: "psi",
        aliases: &["psi-morphism"],
        summary: "[a, b] ↦ K_b(a) is a coalgebra morphism",
        defaults: d(Some(4), None, None, None, None),
        run: suite_psi,
    },
    Suite {
        name: "reduced-algebra",
        aliases: &["reduced"],
        summary: "functions factoring through the relative complement form a subalgebra",
        defaults: d(Some(4), None, Some(100), None, Some(100)),
        run: suite_reduced,
    },
    Suite {
        name: "moebius",
        aliases: &["moebius-round-trip"],
        summary: "Möbius functions invert zeta; inversion round trip; classical values on integers",
        defaults: d(Some(5), None, Some(100), None, Some(20)),
        run: suite_moebius,
    },
    Suite {
        name: "decalage",
        aliases: &["decalage-iso"],
        summary: "lower decalage of the bar complex is isomorphic to the nerve",
        defaults: d(Some(4), None, Some(30), Some(3), None),
        run: suite_decalage,
    },
    Suite {
        name: "two-segal",
        aliases: &["2-segal"],
        summary: "low-degree decomposition-space pullback squares of bar complexes",
        defaults: d(Some(3), None, Some(30), Some(3), None),
        run: suite_two_segal,
    },
    Suite {
        name: "ulf",
        aliases: &[],
        summary: "dec maps have unique lifting of factorizations",
        defaults: d(Some(4), None, Some(30), Some(3), None),
        run: suite_ulf,
    },
    Suite {
        name: "moment-cumulant",
        aliases: &["cumulants"],
        summary: "free moment-cumulant transform: examples, oracles and round trips",
        defaults: d(Some(8), None, None, None, Some(100)),
        run: suite_moment_cumulant,
    },
];

pub fn find_suite(name: &str) -> Option<&'static Suite> {
    let name = name.to_ascii_lowercase();
    SUITES.iter().find(|s| s.name == name || s.aliases.contains(&name.as_str()))
}

struct Ctx {
    suite: &'static str,
    n: usize,
    k: usize,
    bound: u64,
    depth: usize,
    samples: usize,
    seed: u64,
    lattice: LatticeSelector,
    parameters: Parameters,
}

impl Ctx {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn resolve(suite: &'static Suite, p: &VerifyParams, clamp: bool) -> Result<Ctx> {
    let df = suite.defaults;
    fn pick<T: Ord + Copy>(given: Option<T>, default: Option<T>, clamp: bool) -> Option<T> {
        match (given, default) {
            (_, None) => None,
            (Some(g), Some(d)) if clamp => Some(g.min(d)),
            (Some(g), Some(_)) => Some(g),
            (None, Some(d)) => Some(d),
        }
    }
    let parameters = Parameters {
        n: pick(p.n, df.n, clamp),
        k: pick(p.k, df.k, clamp),
        bound: pick(p.bound, df.bound, clamp),
        depth: pick(p.depth, df.depth, clamp),
        samples: pick(p.samples, df.samples, false),
        seed: df.seeded.then(|| p.seed.unwrap_or(DEFAULT_SEED)),
    };
    let n = parameters.n.unwrap_or(0);
    if suite.name != "moment-cumulant" {
        check_size(n)?;
    }
    if parameters.k == Some(0) {
        return Err(NcpError::SizeMismatch { expected: 1, found: 0 });
    }
    Ok(Ctx {
        suite: suite.name,
        n,
        k: parameters.k.unwrap_or(1),
        bound: parameters.bound.unwrap_or(1),
        depth: parameters.depth.unwrap_or(3),
        samples: parameters.samples.unwrap_or(0),
        seed: parameters.seed.unwrap_or(DEFAULT_SEED),
        lattice: p.lattice,
        parameters,
    })
}

/// Runs one suite by name or alias.
pub fn run_suite(name: &str, params: &VerifyParams) -> Result<Vec<VerifyReport>> {
    let suite = find_suite(name).ok_or_else(|| NcpError::Parse { offset: 0, reason: format!("unknown suite {name:?}") })?;
    (suite.run)(&resolve(suite, params, false)?)
}

/// Runs every suite in order; sizes above a suite's default are clamped to it.
pub fn run_all(params: &VerifyParams) -> Result<Vec<VerifyReport>> {
    let mut out = Vec::new();
    for suite in SUITES {
        out.extend((suite.run)(&resolve(suite, params, true)?)?);
    }
    Ok(out)
}

/// Counts checks for one property and keeps the first counterexample.
struct Check {
    property: String,
    checked: u64,
    counterexample: Option<String>,
    note: Option<String>,
}

impl Check {
    fn new(property: impl Into<String>) -> Self {
        Check { property: property.into(), checked: 0, counterexample: None, note: None }
    }

    fn check(&mut self, ok: bool, inputs: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(inputs());
        }
    }

    fn absorb(&mut self, report: &CheckReport) {
        self.checked += report.checked as u64;
        if !report.passed() && self.counterexample.is_none() {
            self.counterexample = Some(format!("{}: {}", report.name, report.failures.join("; ")));
        }
    }

    fn finish(self, ctx: &Ctx) -> VerifyReport {
        VerifyReport {
            suite: ctx.suite.to_string(),
            property: self.property,
            parameters: ctx.parameters.clone(),
            checked: self.checked,
            passed: self.counterexample.is_none(),
            counterexample: self.counterexample,
            note: self.note,
        }
    }
}

fn show<T: Display>(items: &[&T]) -> String {
    items.iter().map(|x| format!("({x})")).collect::<Vec<_>>().join(", ")
}

fn show_all<T: Display>(items: &[T]) -> String {
    items.iter().map(|x| format!("({x})")).collect::<Vec<_>>().join(", ")
}

/// `NCP(m)` for `m = 0..=n`.
fn lattices(n: usize) -> Result<Vec<Vec<NoncrossingPartition>>> {
    (0..=n).map(enumerate_ncp).collect()
}

fn div(a: &NoncrossingPartition, b: &NoncrossingPartition) -> bool {
    divides(a, b).expect("same ground set")
}

fn comp(a: &NoncrossingPartition, b: &NoncrossingPartition) -> Option<NoncrossingPartition> {
    compose(a, b).expect("same ground set")
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(BigInt::from(rng.gen_range(-20..=20)), BigInt::from(rng.gen_range(1..=9)))
}

fn random_integer_function<B: Ord + Clone + Display>(basis: &[B], rng: &mut ChaCha8Rng) -> IncidenceFunction<B> {
    IncidenceFunction::from_fn(basis, |_| rational(rng.gen_range(-5..=5)))
}

fn suite_enumeration(ctx: &Ctx) -> Result<Vec<VerifyReport>> {
    let mut counts = Check::new("|NCP(m)| = Catalan(m)");
    let mut canonical = Check::new("enumeration is sorted, canonical, noncrossing and duplicate-free");
    let mut oracle = Check::new("enumeration equals the noncrossing set partitions found by a quadruple scan");
    let mut crossing = Check::new("crossing test agrees with the quadruple scan on all set partitions");
    let mut seen = Vec::new();
    for m in 0..=ctx.n {
        let all = enumerate_ncp(m)?;
        seen.push(all.len().to_string());
        counts.check(all.len() as u64 == catalan(m), || format!("m = {m}: {} partitions", all.len()));
        canonical.check(
            all.windows(2).all(|w| w[0] < w[1]) && all.iter().all(|p| p.n() == m && p.is_noncrossing()),
            || format!("m = {m}"),
        );
        if m <= 10 {
            oracle.check(brute::noncrossing_by_filter(m) == all, || format!("m = {m}"));
        }
        if m <= 7 {
            for p in brute::set_partitions(m) {
                crossing.check(p.is_noncrossing() != brute::has_crossing_quadruple(&p), || p.to_string());
            }
        }
    }
    counts.note = Some(format!("counts: {}", seen.join(", ")));
    Ok(vec![counts.finish(ctx), canonical.finish(ctx), oracle.finish(ctx), crossing.finish(ctx)])
}

fn suite_lattice(ctx: &Ctx) -> Result<Vec<VerifyReport>> {
    let mut order = Check::new("divisibility is reflexive, antisymmetric and transitive");
    let mut bounds = Check::new("0_m and 1_m are the bottom and top");
    let mut meets = Check::new("meet is the greatest common lower bound");
    let mut joins = Check::new("join is the least common upper bound");
    let mut laws = Check::new("meet and join are commutative, associative and absorptive");
    for m in 0..=ctx.n {
        let all = enumerate_ncp(m)?;
        let (zero, one) = (NoncrossingPartition::zero(m), NoncrossingPartition::one(m));
        for a in &all {
            order.check(div(a, a), || a.to_string());
            bounds.check(div(&zero, a) && div(a, &one), || a.to_string());
        }
        for a in &all {
            for b in &all {
                let (mt, jn) = (meet(a, b)?, join(a, b)?);
                order.check(!(div(a, b) && div(b, a)) || a == b, || show(&[a, b]));
                meets.check(div(&mt, a) && div(&mt, b), || show(&[a, b]));
                joins.check(div(a, &jn) && div(b, &jn), || show(&[a, b]));
                laws.check(
                    mt == meet(b, a)? && jn == join(b, a)? && meet(a, &join(a, b)?)? == *a && join(a, &meet(a, b)?)? == *a,
                    || show(&[a, b]),
                );
                for c in &all {
                    order.check(!(div(a, b) && div(b, c)) || div(a, c), || show(&[a, b, c]));
                    if div(c, a) && div(c, b) {
                        meets.check(div(c, &mt), || show(&[a, b, c]));
                    }
                    if div(a, c) && div(b, c) {
                        joins.check(div(&jn, c), || show(&[a, b, c]));
                    }
                    laws.check(
                        meet(&mt, c)? == meet(a, &meet(b, c)?)? && join(&jn, c)? == join(a, &join(b, c)?)?,
                        || show(&[a, b, c]),
                    );
                }
            }
        }
    }
    Ok(vec![order.finish(ctx), bounds.finish(ctx), meets.finish(ctx), joins.finish(ctx), laws.finish(ctx)])
}

fn suite_relative_sublattice(ctx: &Ctx) -> Result<Vec<VerifyReport>> {
    let mut members = Check::new("relative sublattice is exactly the partitions containing the fixed blocks");
    let mut size = Check::new("its size is the product of Catalan numbers of the free parts");
    let mut extremes = Check::new("the minimal and maximal elements are the bottom and top");
    let mut closed = Check::new("it is closed under meet and join");
    for m in 0..=ctx.n {
        let all = enumerate_ncp(m)?;
        let mut families: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
        for p in &all {
            let blocks = p.blocks();
            for mask in 0u32..(1 << blocks.len()) {
                families.insert((0..blocks.len()).filter(|i| mask & (1 << i) != 0).map(|i| blocks[i].clone()).collect());
            }
        }
        for fixed in &families {
            let (data, mut elems) = relative_sublattice(m, fixed)?;
            elems.sort();
            let expected: Vec<NoncrossingPartition> =
                all.iter().filter(|p| fixed.iter().all(|b| p.blocks().contains(b))).cloned().collect();
            let label = || format!("m = {m}, fixed blocks {fixed:?}");
            members.check(elems == expected, label);
            size.check(data.expected_size() == elems.len() as u64, label);
            let (lo, hi) = (data.pi_min(), data.pi_sup());
            extremes.check(
                elems.contains(&lo) && elems.contains(&hi) && elems.iter().all(|e| div(&lo, e) && div(e, &hi)),
                label,
            );
            let set: HashSet<&NoncrossingPartition> = elems.iter().collect();
            for a in &elems {
                for b in &elems {
                    closed.check(set.contains(&meet(a, b)?) && set.contains(&join(a, b)?), || {
                        format!("{}; {}", label(), show(&[a, b]))
                    });
                }
            }
        }
    }
    Ok(vec![members.finish(ctx), size.finish(ctx), extremes.finish(ctx), closed.finish(ctx)])
}

fn suite_powers(ctx: &Ctx) -> Result<Vec<VerifyReport>> {
    let mut inverse = Check::new("root(a^p, p) = a");
    let mut shuffle = Check::new("a^p is the p-fold self-shuffle joined with consecutive blocks");
    let mut image = Check::new("a in NCP(pm) is a p-th power iff it absorbs the consecutive p-blocks");
    for m in 0..=ctx.n {
        let all = enumerate_ncp(m)?;
        for p in 1..=ctx.k {
            let blocks = consecutive_blocks(m, p);
            for a in &all {
                let ap = power(a, p);
                inverse.check(root(&ap, p)?.as_ref() == Some(a), || format!("a = {a}, p = {p}"));
                let copies = vec![a; p];
                let joined = join_partitions(&shuffle_many(m, &copies)?, &blocks)?;
                shuffle.check(joined == ap, || format!("a = {a}, p = {p}"));
            }
            if p * m <= 8 {
                for b in enumerate_ncp(p * m)? {
                    let absorbs = join(&b, &blocks)? == b;
                    let r = root(&b, p)?;
                    image.check(absorbs == r.is_some() && r.is_none_or(|r| power(&r, p) == b), || {
                        format!("b = {b}, p = {p}")
                    });
                }
            }
        }
    }
    Ok(vec![inverse.finish(ctx), shuffle.finish(ctx), image.finish(ctx)])
}

fn suite_admissibility(ctx: &Ctx) -> Result<Vec<VerifyReport>> {
    let mut pairwise = Check::new("a tuple is admissible iff all its pairs are");
    let mut downward = Check::new("admissibility passes to finer pairs and non-admissibility to coarser pairs");
    let mut increasing = Check::new("the perfect shuffle is increasing on admissible pairs");
    let mut partners = Check::new("admissible partners of a form a sublattice");
    let ncp = lattices(ctx.n.max(2) * 2)?;
    for m in 0..=ctx.n {
        let all = &ncp[m];
        // tuples of length 3 and up only at m <= 3
        let max_len = if m <= 3 { ctx.k } else { ctx.k.min(2) };
        for len in 2..=max_len {
            for t in cartesian(all, len) {
                let all_pairs = (0..len).all(|i| (i + 1..len).all(|j| is_admissible_pair(t[i], t[j]).unwrap()));
                pairwise.check(is_admissible_tuple(m, &t)? == all_pairs, || show(&t));
            }
        }
        for a in all {
            let mine: Vec<&NoncrossingPartition> = all.iter().filter(|b| is_admissible_pair(a, b).unwrap()).collect();
            let set: HashSet<&NoncrossingPartition> = mine.iter().copied().collect();
            for b in &mine {
                for c in &mine {
                    partners.check(set.contains(&meet(b, c)?) && set.contains(&join(b, c)?), || show(&[a, b, c]));
                }
            }
        }
    }
    // pairs in NCP(kn) × NCP(ln) for the multipliers (1,1) and, at small n, (2,1) and (1,2)
    for m in 1..=ctx.n {
        let mut shapes = vec![(1, 1)];
        if m <= 2 {
            shapes.extend([(2, 1), (1, 2)]);
        }
        for (k, l) in shapes {
            let shuffle_ctx = ShuffleContext::new(m, k, l)?;
            let (left, right) = (&ncp[k * m], &ncp[l * m]);
            let mut admissible: HashMap<(usize, usize), bool> = HashMap::new();
            for (i, a) in left.iter().enumerate() {
                for (j, b) in right.iter().enumerate() {
                    admissible.insert((i, j), is_admissible(&shuffle_ctx, a, b)?);
                }
            }
            for (i, a) in left.iter().enumerate() {
                for (j, b) in right.iter().enumerate() {
                    let ok = admissible[&(i, j)];
                    for (i2, a2) in left.iter().enumerate() {
                        if !div(a2, a) && !div(a, a2) {
                            continue;
                        }
                        for (j2, b2) in right.iter().enumerate() {
                            let ok2 = admissible[&(i2, j2)];
                            let label = || format!("multipliers ({k}, {l}), {}", show(&[a, b, a2, b2]));
                            if div(a2, a) && div(b2, b) && ok {
                                downward.check(ok2, label);
                            }
                            if div(a, a2) && div(b, b2) && !ok {
                                downward.check(!ok2, label);
                            }
                            if div(a, a2) && div(b, b2) && ok && ok2 {
                                let lo = perfect_shuffle(&shuffle_ctx, a, b)?;
                                let hi = perfect_shuffle(&shuffle_ctx, a2, b2)?;
                                increasing.check(divides(&lo, &hi)?, label);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(vec![pairwise.finish(ctx), downward.finish(ctx), increasing.finish(ctx), partners.finish(ctx)])
}

fn cartesian<T>(items: &[T], len: usize) -> Vec<Vec<&T>> {
    let mut out: Vec<Vec<&T>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                items.iter().map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

fn suite_partial_monoid(ctx: &Ctx) -> Result<Vec<VerifyReport>> {
    let mut unit = Check::new("0_m is a two-sided unit");
    let mut assoc = Check::new("(a∘b)∘c is defined iff a∘(b∘c) is, and they agree");
    let mut admissible = Check::new("a∘b is defined iff (a, b) is admissible");
    for m in 0..=ctx.n {
        let all = enumerate_ncp(m)?;
        let zero = NoncrossingPartition::zero(m);
        let mut products: HashMap<(usize, usize), Option<NoncrossingPartition>> = HashMap::new();
        for (i, a) in all.iter().enumerate() {
            unit.check(comp(a, &zero).as_ref() == Some(a) && comp(&zero, a).as_ref() == Some(a), || a.to_string());
            for (j, b) in all.iter().enumerate() {
                let ab = comp(a, b);
                admissible.check(ab.is_some() == (m == 0 || is_admissible_pair(a, b)?), || show(&[a, b]));
                products.insert((i, j), ab);
            }
        }
        let index: HashMap<&NoncrossingPartition, usize> = all.iter().enumerate().map(|(i, p)| (p, i)).collect();
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                for (l, c) in all.iter().enumerate() {
                    let left = products[&(i, j)].as_ref().and_then(|ab| products[&(index[ab], l)].clone());
                    let right = products[&(j, l)].as_ref().and_then(|bc| products[&(i, index[bc])].clone());
                    assoc.check(left == right, || show(&[a, b, c]));
                }
            }
        }
    }
    Ok(vec![unit.finish(ctx), assoc.finish(ctx), admissible.finish(ctx)])
}

fn suite_monotonicity(ctx: &Ctx) -> Result<Vec<VerifyReport>> {
    let mut left = Check::new("a | a' implies a∘b | a'∘b, strictly when a ≠ a'");
    let mut right = Check::new("b | b' implies a∘b | a∘b', strictly when b ≠ b'");
    for m in 0..=ctx.n {
        let all = enumerate_ncp(m)?;
        for a in &all {
            for b in &all {
                let Some(ab) = comp(a, b) else { continue };
                for x in all.iter().filter(|x| div(a, x)) {
                    if let Some(xb) = comp(x, b) {
                        left.check(div(&ab, &xb) && (a == x || ab != xb), || show(&[a, x, b]));
                    }
                }
                for y in all.iter().filter(|y| div(b, y)) {
                    if let Some(ay) = comp(a, y) {
                        right.check(div(&ab, &ay) && (b == y || ab != ay), || show(&[a, b, y]));
                    }
                }
            }
        }
    }
    Ok(vec![left.finish(ctx), right.finish(ctx)])
}

fn suite_composition_identities(ctx: &Ctx) -> Result<Vec<VerifyReport>> {
    let mut noncrossing = Check::new("a²⧢b and a⧢b² are noncrossing for admissible (a, b)");
    let mut forms = Check::new("the four root expressions for a∘b agree");
    let mut closed = Check::new("iterated composition equals the closed-form root of the full shuffle");
    for m in 1..=ctx.n {
        let all = enumerate_ncp(m)?;
        let triples = consecutive_blocks(m, 3);
        let tails: Vec<Vec<usize>> = (0..m).flat_map(|i| [vec![3 * i + 1], vec![3 * i + 2, 3 * i + 3]]).collect();
        let tails = NoncrossingPartition::from_blocks(3 * m, tails)?;
        let (c21, c12) = (ShuffleContext::new(m, 2, 1)?, ShuffleContext::new(m, 1, 2)?);
        for a in &all {
            for b in &all {
                let Some(ab) = comp(a, b) else { continue };
                let s21 = perfect_shuffle(&c21, &power(a, 2), b)?;
                let s12 = perfect_shuffle(&c12, a, &power(b, 2))?;
                noncrossing.check(s21.is_noncrossing() && s12.is_noncrossing(), || show(&[a, b]));
                let second = root(&join_partitions(&s21, &triples)?, 3)?;
                let third = root(&join_partitions(&s21, &tails)?, 3)?;
                let fourth = root(&join_partitions(&s12, &triples)?, 3)?;
                let want = Some(ab.clone());
                forms.check(second == want && third == want && fourth == want, || show(&[a, b]));
            }
        }
        let max_len = if m <= 3 { ctx.k } else { ctx.k.min(2) };
        for len in 1..=max_len {
            for t in enumerate_admissible_tuples(m, len)? {
                closed.check(compose_fold(&t) == compose_closed_form(&t), || show_all(t.parts()));
            }
        }
    }
    Ok(vec![noncrossing.finish(ctx), forms.finish(ctx), closed.finish(ctx)])
}

fn suite_kreweras(ctx: &Ctx) -> Result<Vec<VerifyReport>> {
    let mut defining = Check::new("a ∘ K(a) = 1_m");
    let mut bijective = Check::new("K is a bijection of NCP(m)");
    let mut reversing = Check::new("a | c iff K(c) | K(a), strictly");
    let mut oracle = Check::new("interval-union algorithm equals the maximal admissible partner (m <= 5)");
    let mut unique = Check::new("K(a) and K_b(a) are the unique solutions of a∘x = 1_m and a∘x = b (m <= 5)");
    let mut relative = Check::new("a ∘ K_b(a) = b with K_b(0) = b and K_b(b) = 0");
    let mut anti = Check::new("x ↦ K_b(x) reverses order from [0, a] onto [K_b(a), b] (m <= 5)");
    let mut rotation = Check::new("K(K(a)) is a rotated by one step");
    let mut orders = Vec::new();
    for m in 0..=ctx.n {
        let all = enumerate_ncp(m)?;
        let (zero, one) = (NoncrossingPartition::zero(m), NoncrossingPartition::one(m));
        let ks: Vec<NoncrossingPartition> = all.iter().map(kreweras).collect();
        let small = m <= 5;
        for (a, k) in all.iter().zip(&ks) {
            defining.check(comp(a, k).as_ref() == Some(&one), || a.to_string());
            rotation.check(kreweras(k) == rotate(a, m.saturating_sub(1)), || a.to_string());
            if small {
                oracle.check(brute::max_admissible_partner(a, &all)?.as_ref() == Some(k), || a.to_string());
                unique.check(brute::solve_compose(a, &one, &all)? == vec![k.clone()], || a.to_string());
            }
        }
        let distinct: HashSet<&NoncrossingPartition> = ks.iter().collect();
        bijective.check(distinct.len() == all.len(), || format!("m = {m}"));
        for (a, ka) in all.iter().zip(&ks) {
            for (c, kc) in all.iter().zip(&ks) {
                let ok = div(a, c) == div(kc, ka) && (a == c || !div(a, c) || ka != kc);
                reversing.check(ok, || show(&[a, c]));
            }
        }
        for b in &all {
            relative.check(relative_kreweras(&zero, b)? == *b && relative_kreweras(b, b)? == zero, || b.to_string());
            for a in all.iter().filter(|a| div(a, b)) {
                let kb = relative_kreweras(a, b)?;
                relative.check(comp(a, &kb).as_ref() == Some(b), || show(&[a, b]));
                if small {
                    unique.check(brute::solve_compose(a, b, &all)? == vec![kb.clone()], || show(&[a, b]));
                    let lower: Vec<&NoncrossingPartition> = all.iter().filter(|x| div(x, a)).collect();
                    let upper: BTreeSet<&NoncrossingPartition> =
                        all.iter().filter(|y| div(&kb, y) && div(y, b)).collect();
                    let images: Vec<NoncrossingPartition> =
                        lower.iter().map(|x| relative_kreweras(x, b)).collect::<Result<_>>()?;
                    let image_set: BTreeSet<&NoncrossingPartition> = images.iter().collect();
                    let mut ok = image_set == upper && images.len() == upper.len();
                    for (x, fx) in lower.iter().zip(&images) {
                        for (y, fy) in lower.iter().zip(&images) {
                            ok &= div(x, y) == div(fy, fx);
                        }
                    }
                    anti.check(ok, || show(&[a, b]));
                }
            }
        }
        if m >= 1 {
            orders.push(format!("{m}: {}", kreweras_order(m)?));
        }
    }
    rotation.note = Some(format!("order of K on NCP(m): {}", orders.join(", ")));
    Ok(vec![
        defining.finish(ctx),
        bijective.finish(ctx),
        reversing.finish(ctx),
        oracle.finish(ctx),
        unique.finish(ctx),
        relative.finish(ctx),
        anti.finish(ctx),
        rotation.finish(ctx),
    ])
}

/// `(1/n) binom((k+1)n, n-1)`, with 1 at `n = 0`.
fn fuss_catalan(n: usize, k: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    let top = (k + 1) * n;
    let mut b: u128 = 1;
    for i in 0..(n - 1) {
        b = b * (top - i) as u128 / (i + 1) as u128;
    }
    (b / n as u128) as u64
}

fn suite_bijections(ctx: &Ctx) -> Result<Vec<VerifyReport>> {
    let mut counts = Check::new("the five sets have equal size, the Fuss-Catalan number");
    let mut forward = Check::new("round trips starting from admissible tuples are identities");
    let mut backward = Check::new("round trips starting from each of the other four sets are identities");
    let mut table = Vec::new();
    for m in 1..=ctx.n {
        for k in 1..=ctx.k {
            let tuples = enumerate_admissible_tuples(m, k)?;
            let preserving = enumerate_k_preserving(m, k)?;
            let chains = enumerate_multichains(m, k - 1)?;
            let complete: Vec<AdmissibleTuple> =
                enumerate_admissible_tuples(m, k + 1)?.into_iter().filter(AdmissibleTuple::is_complete).collect();
            let completing = enumerate_k_completing(m, k + 1)?;
            let sizes = [tuples.len(), preserving.len(), chains.len(), complete.len(), completing.len()];
            table.push(format!("n={m} k={k}: {sizes:?}"));
            let expected = fuss_catalan(m, k) as usize;
            counts.check(sizes.iter().all(|&s| s == expected), || format!("n = {m}, k = {k}: sizes {sizes:?}, expected {expected}"));

            let preserving_set: HashSet<&NoncrossingPartition> = preserving.iter().collect();
            let chain_set: HashSet<&MultiChain> = chains.iter().collect();
            let complete_set: HashSet<&AdmissibleTuple> = complete.iter().collect();
            let completing_set: HashSet<&NoncrossingPartition> = completing.iter().collect();
            for t in &tuples {
                let label = || format!("n = {m}, k = {k}, tuple {}", show_all(t.parts()));
                let p = tuple_to_kpreserving(t);
                let c = tuple_to_multichain(t);
                let full = complete_tuple(t);
                let e = tuple_to_completing(t);
                let ok = preserving_set.contains(&p)
                    && chain_set.contains(&c)
                    && complete_set.contains(&full)
                    && completing_set.contains(&e)
                    && kpreserving_to_tuple(&p, k).as_ref() == Ok(t)
                    && multichain_to_tuple(&c).as_ref() == Ok(t)
                    && drop_completion(&full).as_ref() == Ok(t)
                    && completing_to_tuple(&e, k + 1).as_ref() == Ok(t);
                forward.check(ok, label);
            }
            for p in &preserving {
                let ok = kpreserving_to_tuple(p, k).map(|t| tuple_to_kpreserving(&t)).as_ref() == Ok(p);
                backward.check(ok, || format!("n = {m}, k = {k}, k-preserving {p}"));
            }
            for c in &chains {
                let ok = multichain_to_tuple(c).map(|t| tuple_to_multichain(&t)).as_ref() == Ok(c);
                backward.check(ok, || format!("n = {m}, k = {k}, multichain {}", show_all(c.chain())));
            }
            for full in &complete {
                let ok = drop_completion(full).map(|t| complete_tuple(&t)).as_ref() == Ok(full);
                backward.check(ok, || format!("n = {m}, k = {k}, complete tuple {}", show_all(full.parts())));
            }
            for e in &completing {
                let ok = is_k_completing(e, k + 1)?
                    && completing_to_tuple(e, k + 1).map(|t| tuple_to_completing(&t)).as_ref() == Ok(e);
                backward.check(ok, || format!("n = {m}, k = {k}, completing {e}"));
            }
        }
    }
    counts.note = Some(table.join("; "));
    Ok(vec![counts.finish(ctx), forward.finish(ctx), backward.finish(ctx)])
}

fn suite_relative_complements(ctx: &Ctx) -> Result<Vec<VerifyReport>> {
    let mut triples = Check::new("K_{abc}(ab) = c = K_{K_{abc}(a)}(K_{ab}(a)) on admissible triples");
    let mut pairs = Check::new("K(a) = b ∘ K(a∘b) on admissible pairs");
    for m in 0..=ctx.n {
        for t in enumerate_admissible_tuples(m, 3)? {
            let [a, b, c] = t.parts() else { unreachable!() };
            triples.check(check_complement_associativity(a, b, c)?, || show(&[a, b, c]));
        }
        for t in enumerate_admissible_tuples(m, 2)? {
            let [a, b] = t.parts() else { unreachable!() };
            let ab = comp(a, b).expect("admissible");
            pairs.check(comp(b, &kreweras(&ab)) == Some(kreweras(a)), || show(&[a, b]));
        }
    }
    Ok(vec![triples.finish(ctx), pairs.finish(ctx)])
}

fn coalgebra_checks<C: Coalgebra>(name: &str, c: &C, samples: usize, rng: &mut ChaCha8Rng, checks: &mut [Check; 3]) -> Result<()> {
    for x in c.basis() {
        let (l, r) = crate::incidence::iterated_deltas(c, x);
        checks[0].check(l == r, || format!("{name}: {x}"));
    }
    checks[1].check(counit_failure(c).is_none(), || format!("{name}: {}", counit_failure(c).unwrap()));
    let unit = c.counit_function();
    for _ in 0..samples {
        let f = random_integer_function(c.basis(), rng);
        let g = random_integer_function(c.basis(), rng);
        let h = random_integer_function(c.basis(), rng);
        let lhs = c.convolve(&c.convolve(&f, &g)?, &h)?;
        let rhs = c.convolve(&f, &c.convolve(&g, &h)?)?;
        let unital = c.convolve(&f, &unit)? == f && c.convolve(&unit, &f)? == f;
        checks[2].check(lhs == rhs && unital, || format!("{name}: random functions"));
    }
    debug_assert!(coassociativity_failure(c).is_none() || checks[0].counterexample.is_some());
    Ok(())
}

fn suite_coalgebras(ctx: &Ctx) -> Result<Vec<VerifyReport>> {
    let mut checks = [
        Check::new("coassociativity of the interval, composition, divisibility and multiplicative coalgebras"),
        Check::new("counit laws"),
        Check::new("convolution is associative with unit the counit (random integer functions)"),
    ];
    let mut rng = ctx.rng();
    for m in 0..=ctx.n {
        coalgebra_checks(&format!("intervals of NCP({m})"), &IntervalCoalgebra::ncp(m)?, ctx.samples, &mut rng, &mut checks)?;
        coalgebra_checks(&format!("composition on NCP({m})"), &CompositionCoalgebra::new(m)?, ctx.samples, &mut rng, &mut checks)?;
    }
    coalgebra_checks(&format!("divisibility up to {}", ctx.bound), &IntervalCoalgebra::divisibility(ctx.bound), ctx.samples, &mut rng, &mut checks)?;
    coalgebra_checks(&format!("multiplication up to {}", ctx.bound), &MultiplicativeCoalgebra::new(ctx.bound), ctx.samples, &mut rng, &mut checks)?;
    Ok(checks.into_iter().map(|c| c.finish(ctx)).collect())
}

fn suite_psi(ctx: &Ctx) -> Result<Vec<VerifyReport>> {
    let mut morphism = Check::new("(Ψ⊗Ψ)Δ_I = Δ∘Ψ and ε∘Ψ = ε on every interval");
    let mut values = Check::new("Ψ[0, b] = b and Ψ[b, b] = 0");
    for m in 0..=ctx.n {
        let intervals = IntervalCoalgebra::ncp(m)?;
        let monoid = CompositionCoalgebra::new(m)?;
        morphism.checked += intervals.basis().len() as u64 - 1;
        morphism.check(psi_morphism_failure(&intervals, &monoid).is_none(), || {
            psi_morphism_failure(&intervals, &monoid).unwrap().to_string()
        });
        let zero = NoncrossingPartition::zero(m);
        for b in monoid.basis() {
            let ok = psi(&Interval::new(zero.clone(), b.clone())?) == *b && psi(&Interval::new(b.clone(), b.clone())?) == zero;
            values.check(ok, || b.to_string());
        }
    }
    Ok(vec![morphism.finish(ctx), values.finish(ctx)])
}

fn suite_reduced(ctx: &Ctx) -> Result<Vec<VerifyReport>> {
    let mut closure = Check::new("convolution of lifted functions is lifted from the composition convolution");
    let mut formula = Check::new("(f∗g)[a, b] = Σ_{φ | K_b(a)} F(φ) G(K_{K_b(a)}(φ))");
    let mut integers = Check::new("on integers, (f∗g)[a, b] depends only on b/a and matches the multiplicative convolution");
    let mut rng = ctx.rng();
    for m in 0..=ctx.n {
        let intervals = IntervalCoalgebra::ncp(m)?;
        let monoid = CompositionCoalgebra::new(m)?;
        for sample in 0..ctx.samples {
            let f = IncidenceFunction::from_fn(monoid.basis(), |_| random_rational(&mut rng));
            let g = IncidenceFunction::from_fn(monoid.basis(), |_| random_rational(&mut rng));
            let product = intervals.convolve(&reduced_lift(&f, &intervals)?, &reduced_lift(&g, &intervals)?)?;
            let h = monoid.convolve(&f, &g)?;
            let label = || format!("NCP({m}), sample {sample}");
            closure.check(is_reduced(&product) && product == reduced_lift(&h, &intervals)?, label);
            for v in intervals.basis() {
                let direct = reduced_convolution_formula(&f, &g, &psi(v))?;
                formula.check(product.eval(v)? == &direct, || format!("{}, interval {v}", label()));
            }
        }
    }
    let div = IntervalCoalgebra::divisibility(ctx.bound);
    let mul = MultiplicativeCoalgebra::new(ctx.bound);
    integers.check(check_quotient_morphism(&div, &mul).is_none(), || "quotient map is not a morphism".into());
    for sample in 0..ctx.samples {
        let f = random_integer_function(mul.basis(), &mut rng);
        let g = random_integer_function(mul.basis(), &mut rng);
        let product = div.convolve(&integer_reduced_lift(&f, &div)?, &integer_reduced_lift(&g, &div)?)?;
        let ok = is_reduced_integer(&product) && product == integer_reduced_lift(&mul.convolve(&f, &g)?, &div)?;
        integers.check(ok, || format!("sample {sample}"));
    }
    Ok(vec![closure.finish(ctx), formula.finish(ctx), integers.finish(ctx)])
}

fn suite_moebius(ctx: &Ctx) -> Result<Vec<VerifyReport>> {
    let mut inverse = Check::new("ζ∗μ = μ∗ζ = ∂, and the recursion agrees with the generic convolution inverse");
    let mut round_trip = Check::new("Möbius inversion: f = g∗μ gives back g = f∗ζ (random g)");
    let mut closed = Check::new("μ(π, 1_m) = Π over blocks B of K(π) of (-1)^{|B|-1} Catalan(|B|-1)");
    let mut classical = Check::new("integer μ(a, b) is the classical Möbius function of b/a");
    let mut rng = ctx.rng();
    if ctx.lattice != LatticeSelector::Integers {
        for m in 0..=ctx.n {
            let coalg = IntervalCoalgebra::ncp(m)?;
            moebius_checks(&format!("NCP({m})"), &coalg, ctx.samples, &mut rng, &mut inverse, &mut round_trip)?;
            let mu = coalg.moebius()?;
            let one = NoncrossingPartition::one(m);
            for p in coalg.elements() {
                let value = mu.eval(&Interval::new(p.clone(), one.clone())?)?;
                closed.check(*value == brute::moebius_to_top_closed_form(p), || p.to_string());
            }
        }
    }
    if ctx.lattice != LatticeSelector::Ncp {
        let div = IntervalCoalgebra::divisibility(ctx.bound);
        moebius_checks(&format!("divisibility up to {}", ctx.bound), &div, ctx.samples, &mut rng, &mut inverse, &mut round_trip)?;
        for (v, value) in div.moebius()?.iter() {
            classical.check(*value == rational(brute::classical_moebius(v.upper() / v.lower())), || v.to_string());
        }
        let mul = MultiplicativeCoalgebra::new(ctx.bound);
        moebius_checks(&format!("multiplication up to {}", ctx.bound), &mul, ctx.samples, &mut rng, &mut inverse, &mut round_trip)?;
        for (k, value) in mul.moebius()?.iter() {
            classical.check(*value == rational(brute::classical_moebius(*k)), || k.to_string());
        }
    }
    Ok(vec![inverse.finish(ctx), round_trip.finish(ctx), closed.finish(ctx), classical.finish(ctx)])
}

fn moebius_checks<C: Coalgebra>(
    name: &str,
    c: &C,
    samples: usize,
    rng: &mut ChaCha8Rng,
    inverse: &mut Check,
    round_trip: &mut Check,
) -> Result<()> {
    let (zeta, unit, mu) = (c.zeta(), c.counit_function(), c.moebius()?);
    let generic = c.convolution_inverse(&zeta)?;
    inverse.check(c.convolve(&zeta, &mu)? == unit && c.convolve(&mu, &zeta)? == unit && generic == mu, || name.to_string());
    for sample in 0..samples {
        let g = IncidenceFunction::from_fn(c.basis(), |_| random_rational(rng));
        let f = c.convolve(&g, &mu)?;
        round_trip.check(c.convolve(&f, &zeta)? == g, || format!("{name}, sample {sample}"));
    }
    Ok(())
}

fn suite_decalage(ctx: &Ctx) -> Result<Vec<VerifyReport>> {
    let mut identities = Check::new("simplicial identities hold in every constructed object");
    let mut iso = Check::new("prefix products give Dec⊥(bar) ≅ nerve, degreewise and on all faces and degeneracies");
    let mut degree_one = Check::new("nerve → Dec⊥(bar) → bar sends [a, b] to K_b(a)");
    let depth = ctx.depth;
    for m in 0..=ctx.n {
        let bar = bar_of_ncp_monoid(m, depth + 1)?;
        let dec = lower_decalage(&bar)?;
        let nerve = nerve_of_ncp_poset(m, depth)?;
        for x in [&bar, &dec, &nerve] {
            identities.absorb(&check_simplicial_identities(x));
        }
        let cmp = prefix_product_map(&dec, &nerve, |a, b| comp(a, b).expect("prefixes of admissible tuples compose"))?;
        let mut report = check_iso(&dec, &nerve, &cmp);
        report.name = format!("NCP({m})");
        iso.absorb(&report);
        if depth >= 1 {
            let to_bar = dec_map(&bar)?;
            for (j, t) in dec.simplices(1).iter().enumerate() {
                let chain = &nerve.simplices(1)[cmp.component(1)[j]];
                let image = &bar.simplices(1)[to_bar.component(1)[j]];
                degree_one.check(image[0] == relative_kreweras(&chain[0], &chain[1])?, || show_all(t));
            }
        }
    }
    let bar = bar_of_integers(ctx.bound, depth + 1)?;
    let dec = lower_decalage(&bar)?;
    let nerve = nerve_of_divisibility(ctx.bound, depth)?;
    for x in [&bar, &dec, &nerve] {
        identities.absorb(&check_simplicial_identities(x));
    }
    let cmp = prefix_product_map(&dec, &nerve, |a, b| a * b)?;
    let mut report = check_iso(&dec, &nerve, &cmp);
    report.name = format!("integers up to {}", ctx.bound);
    iso.absorb(&report);
    Ok(vec![identities.finish(ctx), iso.finish(ctx), degree_one.finish(ctx)])
}

fn suite_two_segal(ctx: &Ctx) -> Result<Vec<VerifyReport>> {
    let mut segal = Check::new("active-inert and unital squares of the bar complex are pullbacks");
    let depth = ctx.depth.max(3);
    for m in 0..=ctx.n {
        let mut report = check_two_segal(&bar_of_ncp_monoid(m, depth)?)?;
        report.name = format!("bar of NCP({m})");
        segal.absorb(&report);
    }
    let mut report = check_two_segal(&bar_of_integers(ctx.bound, depth)?)?;
    report.name = format!("bar of integers up to {}", ctx.bound);
    segal.absorb(&report);
    Ok(vec![segal.finish(ctx)])
}

fn suite_ulf(ctx: &Ctx) -> Result<Vec<VerifyReport>> {
    let mut ulf = Check::new("inner-face squares of the dec map are pullbacks");
    let mut maps = Check::new("the dec map is simplicial");
    let depth = ctx.depth.max(3);
    for m in 0..=ctx.n {
        let bar = bar_of_ncp_monoid(m, depth)?;
        let dec = lower_decalage(&bar)?;
        let f = dec_map(&bar)?;
        maps.absorb(&crate::simplicial::check_map(&dec, &bar, &f));
        let mut report = check_ulf(&dec, &bar, &f)?;
        report.name = format!("dec map of the bar of NCP({m})");
        ulf.absorb(&report);
    }
    let bar = bar_of_integers(ctx.bound, depth)?;
    let dec = lower_decalage(&bar)?;
    let f = dec_map(&bar)?;
    maps.absorb(&crate::simplicial::check_map(&dec, &bar, &f));
    let mut report = check_ulf(&dec, &bar, &f)?;
    report.name = format!("dec map of the bar of integers up to {}", ctx.bound);
    ulf.absorb(&report);
    Ok(vec![ulf.finish(ctx), maps.finish(ctx)])
}

fn suite_moment_cumulant(ctx: &Ctx) -> Result<Vec<VerifyReport>> {
    let mut semicircle = Check::new("semicircle cumulants give Catalan even moments, matching a brute-force sum");
    let mut poisson = Check::new("free Poisson cumulants (all 1) give Catalan moments");
    let mut round_trip = Check::new("moments ↔ cumulants round trip on random rational sequences");
    let mut oracle = Check::new("cumulants match the triangular recursion");
    let len = ctx.n.max(1);
    // semicircle even moments m_2 .. m_10
    let half = 5;
    let mut k = vec![rational(0); 2 * half];
    k[1] = rational(1);
    let kappa = CumulantSequence::new(k)?;
    let m = moments_from_cumulants(&kappa)?;
    let brute_m = brute::moments_by_filter(kappa.values());
    for j in 1..=half {
        semicircle.check(
            m.get(2 * j) == Some(&rational(catalan(j) as i64)) && m.values()[2 * j - 1] == brute_m[2 * j - 1],
            || format!("m_{}", 2 * j),
        );
    }
    let ones = CumulantSequence::new(vec![rational(1); len])?;
    let m = moments_from_cumulants(&ones)?;
    for j in 1..=len {
        poisson.check(m.get(j) == Some(&rational(catalan(j) as i64)), || format!("m_{j}"));
    }
    let mut rng = ctx.rng();
    for sample in 0..ctx.samples {
        let values: Vec<Rational> = (0..len).map(|_| random_rational(&mut rng)).collect();
        let moments = MomentSequence::new(values.clone())?;
        let kappa = cumulants_from_moments(&moments)?;
        let cumulants = CumulantSequence::new(values.clone())?;
        let ok = moments_from_cumulants(&kappa)? == moments
            && cumulants_from_moments(&moments_from_cumulants(&cumulants)?)? == cumulants;
        round_trip.check(ok, || format!("sample {sample}: {}", show_all(&values)));
        if len <= 8 {
            oracle.check(kappa.values() == brute::cumulants_triangular(&values).as_slice(), || {
                format!("sample {sample}: {}", show_all(&values))
            });
        }
    }
    Ok(vec![semicircle.finish(ctx), poisson.finish(ctx), round_trip.finish(ctx), oracle.finish(ctx)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fuss_catalan_values() {
        assert_eq!((0..6).map(|n| fuss_catalan(n, 1)).collect::<Vec<_>>(), vec![1, 1, 2, 5, 14, 42]);
        assert_eq!(fuss_catalan(3, 2), 12);
        assert_eq!(fuss_catalan(2, 3), 4);
    }

    #[test]
    fn suite_lookup() {
        assert_eq!(find_suite("canonical-bijections").unwrap().name, "bijections");
        assert_eq!(find_suite("Partial-Monoid").unwrap().name, "partial-monoid");
        assert!(find_suite("nope").is_none());
        let names: HashSet<&str> = SUITES.iter().flat_map(|s| std::iter::once(s.name).chain(s.aliases.iter().copied())).collect();
        assert_eq!(names.len(), SUITES.iter().map(|s| 1 + s.aliases.len()).sum::<usize>());
    }

    #[test]
    fn small_run_passes() {
        let params = VerifyParams { n: Some(2), k: Some(2), bound: Some(12), samples: Some(3), ..Default::default() };
        let reports = run_all(&params).unwrap();
        for r in &reports {
            assert!(r.passed, "{r:?}");
        }
        assert!(reports.iter().any(|r| r.suite == "moebius"));
    }

    #[test]
    fn too_large_is_reported() {
        let params = VerifyParams { n: Some(40), ..Default::default() };
        assert!(matches!(run_suite("kreweras", &params), Err(NcpError::TooLarge { .. })));
    }
}
