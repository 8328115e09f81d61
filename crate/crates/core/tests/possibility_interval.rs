use impbox_core::gen;
use impbox_core::{FiniteSpace, PossibilityDistribution, ProbabilityInterval, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn distribution(
    rng: &mut ChaCha8Rng,
    space: &FiniteSpace,
    denominator: u32,
) -> PossibilityDistribution {
    let mut pi: Vec<Rational> = (0..space.len())
        .map(|_| Rational::new(rng.gen_range(0..=denominator).into(), denominator.into()))
        .collect();
    let top = rng.gen_range(0..space.len());
    pi[top] = Rational::one();
    PossibilityDistribution::new(space, pi).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn possibility_axioms(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = FiniteSpace::indexed(n).unwrap();
        let d = distribution(&mut rng, &space, 5);
        for a in space.events() {
            for b in space.events() {
                let union = a.union(&b).unwrap();
                let meet = a.intersection(&b).unwrap();
                prop_assert_eq!(d.possibility(&union), d.possibility(&a).max(d.possibility(&b)));
                prop_assert_eq!(d.necessity(&meet), d.necessity(&a).min(d.necessity(&b)));
            }
        }
        let masses = d.to_random_set();
        prop_assert!(masses.is_nested());
        prop_assert_eq!(masses.contour_distribution().unwrap(), d.clone());
        for a in space.events() {
            prop_assert_eq!(masses.pl(&a), d.possibility(&a));
            prop_assert_eq!(masses.bel(&a), d.necessity(&a));
        }
    }

    #[test]
    fn possibility_envelopes_match_oracle(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = FiniteSpace::indexed(n).unwrap();
        let d = distribution(&mut rng, &space, 4);
        let poly = d.to_polytope();
        for a in space.events() {
            prop_assert_eq!(poly.lower_envelope(&a).unwrap().value, d.necessity(&a));
            prop_assert_eq!(poly.upper_envelope(&a).unwrap().value, d.possibility(&a));
        }
        for _ in 0..40 {
            let p = if rng.gen_bool(0.5) {
                gen::random_set_member(&mut rng, &d.to_random_set())
            } else {
                gen::probability(&mut rng, &space, 6)
            };
            prop_assert_eq!(d.contains(&p), poly.is_member(&p));
        }
    }

    #[test]
    fn interval_bounds_match_oracle(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = FiniteSpace::indexed(n).unwrap();
        let li = gen::reachable_interval(&mut rng, &space, 6);
        prop_assert!(li.is_reachable());
        let poly = li.to_polytope();
        for a in space.events() {
            let (lo, hi) = li.event_bounds(&a).unwrap();
            prop_assert_eq!(poly.lower_envelope(&a).unwrap().value, lo);
            prop_assert_eq!(poly.upper_envelope(&a).unwrap().value, hi);
        }
        prop_assert!(li.lower_capacity().unwrap().is_2_monotone());
    }

    #[test]
    fn normalization_matches_singleton_envelopes(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = FiniteSpace::indexed(n).unwrap();
        let (l, u): (Vec<Rational>, Vec<Rational>) = (0..n)
            .map(|_| {
                let a = Rational::new(rng.gen_range(0..=3).into(), 6.into());
                let b = Rational::new(rng.gen_range(3..=6).into(), 6.into());
                (a, b)
            })
            .unzip();
        let raw = ProbabilityInterval::new(&space, l, u).unwrap();
        prop_assume!(raw.is_nonempty());
        let tight = raw.normalize().unwrap();
        prop_assert!(tight.is_reachable());
        prop_assert_eq!(tight.normalize().unwrap(), tight.clone());
        let poly = raw.to_polytope();
        for i in 0..n {
            let x = space.singleton(i).unwrap();
            prop_assert_eq!(&poly.lower_envelope(&x).unwrap().value, &tight.lower()[i]);
            prop_assert_eq!(&poly.upper_envelope(&x).unwrap().value, &tight.upper()[i]);
        }
    }

    #[test]
    fn random_set_interval_is_reachable_outer_bound(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = FiniteSpace::indexed(n).unwrap();
        let masses = gen::mass_assignment(&mut rng, &space, 5, 6);
        let li = masses.to_interval();
        prop_assert!(li.is_reachable());
        for _ in 0..20 {
            let p = gen::random_set_member(&mut rng, &masses);
            prop_assert!(li.to_polytope().is_member(&p));
        }
        let zero = Rational::zero();
        prop_assert!(li.lower().iter().all(|l| *l >= zero));
    }
}
