//! Random instances for property tests.
//!
//! Values are drawn on a grid `k/denominator`; small denominators produce the
//! ties (shared levels, equal bounds) that exercise the edge cases.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::capacity::Capacity;
use crate::credal::ProbabilityVector;
use crate::interval::ProbabilityInterval;
use crate::pbox::GeneralizedPBox;
use crate::random_set::MassAssignment;
use crate::rational::Rational;
use crate::space::{Event, FiniteSpace, Permutation};

fn grid<R: Rng + ?Sized>(rng: &mut R, denominator: u32) -> Rational {
    Rational::new(rng.gen_range(0..=denominator).into(), denominator.into())
}

/// Splits one into `n` grid shares.
fn split_unit<R: Rng + ?Sized>(rng: &mut R, n: usize, denominator: u32) -> Vec<Rational> {
    let mut shares = vec![0u32; n];
    for _ in 0..denominator {
        shares[rng.gen_range(0..n)] += 1;
    }
    shares
        .into_iter()
        .map(|s| Rational::new(s.into(), denominator.into()))
        .collect()
}

pub fn permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Permutation {
    let mut mapping: Vec<usize> = (0..n).collect();
    mapping.shuffle(rng);
    Permutation::new(mapping).expect("shuffled indices")
}

pub fn probability<R: Rng + ?Sized>(
    rng: &mut R,
    space: &FiniteSpace,
    denominator: u32,
) -> ProbabilityVector {
    ProbabilityVector::new(space, split_unit(rng, space.len(), denominator))
        .expect("shares sum to one")
}

pub fn nonempty_event<R: Rng + ?Sized>(rng: &mut R, space: &FiniteSpace) -> Event {
    let bits = rng.gen_range(1..=space.full_bits());
    space.event_from_bits(bits).expect("bits within the space")
}

/// Up to `max_focal` non-empty focal sets with grid masses.
pub fn mass_assignment<R: Rng + ?Sized>(
    rng: &mut R,
    space: &FiniteSpace,
    max_focal: usize,
    denominator: u32,
) -> MassAssignment {
    let count = rng.gen_range(1..=max_focal.max(1));
    let masses = split_unit(rng, count, denominator);
    let focal = masses.into_iter().map(|m| (nonempty_event(rng, space), m));
    MassAssignment::new(space, focal).expect("non-negative masses summing to one")
}

/// Nested focal sets: the mass assignment of a random possibility
/// distribution.
pub fn consonant<R: Rng + ?Sized>(
    rng: &mut R,
    space: &FiniteSpace,
    denominator: u32,
) -> MassAssignment {
    let order = permutation(rng, space.len());
    let masses = split_unit(rng, space.len(), denominator);
    let mut prefix = 0u32;
    let focal: Vec<(Event, Rational)> = order
        .as_slice()
        .iter()
        .zip(masses)
        .map(|(&e, m)| {
            prefix |= 1 << e;
            (
                space.event_from_bits(prefix).expect("prefix of the space"),
                m,
            )
        })
        .collect();
    MassAssignment::new(space, focal).expect("non-negative masses summing to one")
}

/// A monotone normalized capacity, usually not 2-monotone. Values grow by a
/// random grid step over each immediate subset, then are scaled so `μ(X) = 1`.
pub fn capacity<R: Rng + ?Sized>(rng: &mut R, space: &FiniteSpace, denominator: u32) -> Capacity {
    let full = space.full_bits();
    let mut raw = vec![0u32; full as usize + 1];
    for bits in 1..=full {
        let below = (0..space.len())
            .filter(|i| bits & (1 << i) != 0)
            .map(|i| raw[(bits & !(1 << i)) as usize])
            .max()
            .unwrap_or(0);
        raw[bits as usize] = below + rng.gen_range(0..=denominator);
    }
    raw[full as usize] += 1;
    let top = raw[full as usize];
    let values = raw
        .into_iter()
        .map(|v| Rational::new(v.into(), top.into()))
        .collect();
    Capacity::new(space, values).expect("monotone by construction")
}

/// A comonotone pair of cumulative functions on a random ordering.
pub fn pbox<R: Rng + ?Sized>(
    rng: &mut R,
    space: &FiniteSpace,
    denominator: u32,
) -> GeneralizedPBox {
    let n = space.len();
    let mut low: Vec<Rational> = (0..n).map(|_| grid(rng, denominator)).collect();
    let mut upp: Vec<Rational> = (0..n).map(|_| grid(rng, denominator)).collect();
    low.sort();
    upp.sort();
    for (l, u) in low.iter_mut().zip(&mut upp) {
        if *l > *u {
            std::mem::swap(l, u);
        }
    }
    low[n - 1] = Rational::one();
    upp[n - 1] = Rational::one();
    let order = permutation(rng, n);
    let mut f_low = vec![Rational::zero(); n];
    let mut f_upp = vec![Rational::zero(); n];
    for (pos, &e) in order.as_slice().iter().enumerate() {
        f_low[e] = low[pos].clone();
        f_upp[e] = upp[pos].clone();
    }
    GeneralizedPBox::from_functions(space, f_low, f_upp).expect("sorted pairs are comonotone")
}

/// A reachable interval: either the singleton bounds of a random set, or a
/// random non-empty interval tightened by normalization.
pub fn reachable_interval<R: Rng + ?Sized>(
    rng: &mut R,
    space: &FiniteSpace,
    denominator: u32,
) -> ProbabilityInterval {
    if rng.gen_bool(0.5) {
        return mass_assignment(rng, space, 2 * space.len(), denominator).to_interval();
    }
    loop {
        let (l, u): (Vec<_>, Vec<_>) = (0..space.len())
            .map(|_| {
                let (a, b) = (grid(rng, denominator), grid(rng, denominator));
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .unzip();
        let raw = ProbabilityInterval::new(space, l, u).expect("ordered grid bounds");
        if raw.is_nonempty() {
            return raw.normalize().expect("non-empty interval");
        }
    }
}

/// A member of a random set's credal set: each focal mass is split at
/// random among the focal set's elements.
pub fn random_set_member<R: Rng + ?Sized>(
    rng: &mut R,
    masses: &MassAssignment,
) -> ProbabilityVector {
    let space = masses.space();
    let mut p = vec![Rational::zero(); space.len()];
    for (event, mass) in masses.focal() {
        let members: Vec<usize> = event.indices().collect();
        let weights: Vec<u32> = members.iter().map(|_| rng.gen_range(0..=4)).collect();
        let total: u32 = weights.iter().sum();
        if total == 0 {
            p[*members.choose(rng).expect("focal sets are non-empty")] += mass;
            continue;
        }
        for (&e, &w) in members.iter().zip(&weights) {
            p[e] += mass * Rational::new(w.into(), total.into());
        }
    }
    ProbabilityVector::new(space, p).expect("masses redistributed within the simplex")
}

/// A member of an interval's credal set: a convex combination of two
/// vertices, each obtained by raising `l` toward `u` in a random order until
/// the total reaches one.
pub fn interval_member<R: Rng + ?Sized>(
    rng: &mut R,
    interval: &ProbabilityInterval,
) -> ProbabilityVector {
    let vertex = |rng: &mut R| {
        let mut p = interval.lower().to_vec();
        let mut room = Rational::one() - p.iter().sum::<Rational>();
        for e in permutation(rng, p.len()).as_slice() {
            let step = (&interval.upper()[*e] - &p[*e]).min(room.clone());
            room -= &step;
            p[*e] += step;
        }
        p
    };
    let (a, b) = (vertex(rng), vertex(rng));
    let t = grid(rng, 4);
    let p = a
        .iter()
        .zip(&b)
        .map(|(x, y)| &t * x + (Rational::one() - &t) * y)
        .collect();
    ProbabilityVector::new(interval.space(), p).expect("interval must be non-empty")
}
