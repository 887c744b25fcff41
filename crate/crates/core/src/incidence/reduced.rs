//! The map `Ψ[α, β] = K_β(α)` and reduced incidence algebras.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use num_traits::Zero;

use super::{
    moebius_of_full_lattices, Coalgebra, CompositionCoalgebra, IncidenceFunction, IntervalCoalgebra,
    MultiplicativeCoalgebra, Rational,
};
use crate::error::Result;
use crate::kreweras::relative_kreweras;
use crate::lattice::{enumerate_ncp, Divisibility, Interval};
use crate::partition::NoncrossingPartition;

/// `Ψ[α, β] = K_β(α)`.
pub fn psi(v: &Interval) -> NoncrossingPartition {
    relative_kreweras(v.lower(), v.upper()).expect("interval endpoints divide")
}

/// `μ[a, b]` without building the lattice: `[a, b] ≅ [0, K_b(a)]`, a product
/// of full lattices `NCP(|B|)` over the blocks `B` of `K_b(a)`.
pub fn moebius_ncp_interval(v: &Interval) -> Result<Rational> {
    let top = moebius_of_full_lattices(v.upper().n())?;
    Ok(psi(v).blocks().iter().map(|b| top[b.len() - 1].clone()).product())
}

/// First interval where `(Ψ ⊗ Ψ)Δ_I` and `Δ∘Ψ` differ.
pub fn psi_morphism_failure(intervals: &IntervalCoalgebra<NoncrossingPartition>, monoid: &CompositionCoalgebra) -> Option<Interval> {
    intervals
        .basis()
        .iter()
        .find(|v| {
            let pushed = intervals.delta(v).map_basis(|(a, b)| (psi(a), psi(b)));
            pushed != monoid.delta(&psi(v)) || intervals.counit(v) != monoid.counit(&psi(v))
        })
        .cloned()
}

/// Whether `Ψ` is a coalgebra morphism on every interval of `NCP(n)`.
pub fn check_psi_morphism(n: usize) -> Result<bool> {
    let intervals = IntervalCoalgebra::ncp(n)?;
    let monoid = CompositionCoalgebra::new(n)?;
    Ok(psi_morphism_failure(&intervals, &monoid).is_none())
}

/// `f[α, β] = F(K_β(α))`.
pub fn reduced_lift(
    f: &IncidenceFunction<NoncrossingPartition>,
    intervals: &IntervalCoalgebra<NoncrossingPartition>,
) -> Result<IncidenceFunction<Interval>> {
    IncidenceFunction::try_from_fn(intervals.basis(), |v| f.eval(&psi(v)).cloned())
}

/// Whether `f` is constant on the fibres of `key`.
pub fn factors_through<B, K>(f: &IncidenceFunction<B>, mut key: impl FnMut(&B) -> K) -> bool
where
    B: Ord + Clone + fmt::Display,
    K: Eq + Hash,
{
    let mut seen: HashMap<K, &Rational> = HashMap::new();
    f.iter().all(|(b, value)| *seen.entry(key(b)).or_insert(value) == value)
}

/// Whether `f` factors through the relative Kreweras complement.
pub fn is_reduced(f: &IncidenceFunction<Interval>) -> bool {
    factors_through(f, psi)
}

/// `Σ_{φ | π} F(φ) G(K_π(φ))`, the convolution of reduced functions read
/// off their defining functions on `NCP(n)`.
pub fn reduced_convolution_formula(
    f: &IncidenceFunction<NoncrossingPartition>,
    g: &IncidenceFunction<NoncrossingPartition>,
    pi: &NoncrossingPartition,
) -> Result<Rational> {
    let mut total = Rational::zero();
    for phi in enumerate_ncp(pi.n())? {
        if phi.divides(pi) {
            total += f.eval(&phi)? * g.eval(&relative_kreweras(&phi, pi)?)?;
        }
    }
    Ok(total)
}

/// `[a, b] ↦ b / a`.
pub fn quotient(v: &Interval<u64>) -> u64 {
    v.upper() / v.lower()
}

/// `f[a, b] = F(b / a)`.
pub fn integer_reduced_lift(f: &IncidenceFunction<u64>, intervals: &IntervalCoalgebra<u64>) -> Result<IncidenceFunction<Interval<u64>>> {
    IncidenceFunction::try_from_fn(intervals.basis(), |v| f.eval(&quotient(v)).cloned())
}

/// Whether `f[a, b]` depends only on `b / a`.
pub fn is_reduced_integer(f: &IncidenceFunction<Interval<u64>>) -> bool {
    factors_through(f, quotient)
}

/// First interval where `[a, b] ↦ b / a` fails to intertwine the divisibility
/// and multiplicative comultiplications.
pub fn check_quotient_morphism(intervals: &IntervalCoalgebra<u64>, monoid: &MultiplicativeCoalgebra) -> Option<Interval<u64>> {
    intervals
        .basis()
        .iter()
        .find(|v| {
            let pushed = intervals.delta(v).map_basis(|(a, b)| (quotient(a), quotient(b)));
            pushed != monoid.delta(&quotient(v)) || intervals.counit(v) != monoid.counit(&quotient(v))
        })
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::rational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn interval_moebius_from_blocks() {
        for n in 0..=5 {
            let c = IntervalCoalgebra::ncp(n).unwrap();
            for (v, value) in c.moebius().unwrap().iter() {
                assert_eq!(&moebius_ncp_interval(v).unwrap(), value, "{v}");
            }
        }
    }

    #[test]
    fn psi_examples() {
        for b in enumerate_ncp(4).unwrap() {
            let zero = NoncrossingPartition::zero(4);
            assert_eq!(psi(&Interval::new(zero.clone(), b.clone()).unwrap()), b);
            assert_eq!(psi(&Interval::new(b.clone(), b.clone()).unwrap()), zero);
        }
        for n in 0..=4 {
            assert!(check_psi_morphism(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn reduced_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=4 {
            let intervals = IntervalCoalgebra::ncp(n).unwrap();
            let monoid = CompositionCoalgebra::new(n).unwrap();
            let one = IncidenceFunction::constant(monoid.basis(), rational(1));
            assert_eq!(reduced_lift(&one, &intervals).unwrap(), intervals.zeta());
            for _ in 0..5 {
                let f = IncidenceFunction::from_fn(monoid.basis(), |_| rational(rng.gen_range(-5..=5)));
                let g = IncidenceFunction::from_fn(monoid.basis(), |_| rational(rng.gen_range(-5..=5)));
                let (lf, lg) = (reduced_lift(&f, &intervals).unwrap(), reduced_lift(&g, &intervals).unwrap());
                let product = intervals.convolve(&lf, &lg).unwrap();
                assert!(is_reduced(&product));
                let h = monoid.convolve(&f, &g).unwrap();
                assert_eq!(product, reduced_lift(&h, &intervals).unwrap());
                for v in intervals.basis() {
                    let direct = reduced_convolution_formula(&f, &g, &psi(v)).unwrap();
                    assert_eq!(product.eval(v).unwrap(), &direct);
                }
            }
        }
    }

    #[test]
    fn integer_reduction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let intervals = IntervalCoalgebra::divisibility(100);
        let monoid = MultiplicativeCoalgebra::new(100);
        assert_eq!(check_quotient_morphism(&intervals, &monoid), None);
        let f = IncidenceFunction::from_fn(monoid.basis(), |_| rational(rng.gen_range(-9..=9)));
        let g = IncidenceFunction::from_fn(monoid.basis(), |_| rational(rng.gen_range(-9..=9)));
        let product = intervals
            .convolve(&integer_reduced_lift(&f, &intervals).unwrap(), &integer_reduced_lift(&g, &intervals).unwrap())
            .unwrap();
        assert!(is_reduced_integer(&product));
        let h = monoid.convolve(&f, &g).unwrap();
        assert_eq!(product, integer_reduced_lift(&h, &intervals).unwrap());
        let skewed = IncidenceFunction::from_fn(intervals.basis(), |v| rational(*v.lower() as i64));
        assert!(!is_reduced_integer(&skewed));
    }
}
