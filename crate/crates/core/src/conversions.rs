//! Bridges between probability intervals and generalized p-boxes.
//!
//! An interval is outer-approximated by the p-box that bounds the prefix sets
//! of an element ordering. Each such p-box is in turn outer-approximated by
//! its tightest interval, and intersecting those intervals over enough
//! orderings gives back the original interval.

use crate::error::Error;
use crate::interval::{Conjunction, ProbabilityInterval};
use crate::pbox::GeneralizedPBox;
use crate::space::{Event, Permutation};

/// P-box with levels the prefixes `A_i` of `sigma`, bounded by the interval's
/// event bounds on each prefix.
pub fn interval_to_sigma_pbox(
    interval: &ProbabilityInterval,
    sigma: &Permutation,
) -> Result<GeneralizedPBox, Error> {
    let space = interval.space();
    if sigma.len() != space.len() {
        return Err(Error::SpaceMismatch);
    }
    if !interval.is_reachable() {
        return Err(Error::NotReachable);
    }
    let mut prefix = 0u32;
    let (alpha, beta) = sigma
        .as_slice()
        .iter()
        .map(|&e| {
            prefix |= 1 << e;
            interval.event_bounds_unchecked(prefix)
        })
        .unzip();
    GeneralizedPBox::from_ordering(space, sigma.clone(), alpha, beta)
}

/// Tightest interval containing the p-box's credal set: the lower and upper
/// probabilities of each singleton.
///
/// For `x` in block `G_k` this is `u(x) = β_k − α_{k−1}`, and
/// `l(x) = max(0, α_k − β_{k−1})` when `G_k = {x}`, zero otherwise.
pub fn pbox_to_interval(pbox: &GeneralizedPBox) -> ProbabilityInterval {
    let space = pbox.space();
    let (l, u) = (0..space.len())
        .map(|i| {
            let x = Event::from_bits_unchecked(space, 1 << i);
            (pbox.lower_prob(&x), pbox.upper_prob(&x))
        })
        .unzip();
    ProbabilityInterval::new(space, l, u).expect("singleton bounds of a non-empty credal set")
}

/// Intersection over `sigmas` of the intervals of the σ-p-boxes of `interval`.
pub fn reconstruct_interval(
    interval: &ProbabilityInterval,
    sigmas: &[Permutation],
) -> Result<ProbabilityInterval, Error> {
    if sigmas.is_empty() {
        return Err(Error::NoPermutations);
    }
    let outer = sigmas
        .iter()
        .map(|sigma| interval_to_sigma_pbox(interval, sigma).map(|pb| pbox_to_interval(&pb)))
        .collect::<Result<Vec<_>, _>>()?;
    match ProbabilityInterval::conjunction_all(&outer)? {
        Some(Conjunction::Interval(joined)) => Ok(joined),
        _ => unreachable!("every outer interval contains the original credal set"),
    }
}

/// `⌈n/2⌉` orderings in which every element is first or last at least once.
/// Ordering `i` starts with element `i`, ends with element `n−1−i`, and keeps
/// the others in index order. For odd `n` the middle element goes first and
/// element 0 last.
pub fn reduced_permutation_set(n: usize) -> Vec<Permutation> {
    if n <= 1 {
        return vec![Permutation::identity(n)];
    }
    (0..n.div_ceil(2))
        .map(|i| {
            let first = i;
            let last = if n - 1 - i == i { 0 } else { n - 1 - i };
            let mut mapping = vec![first];
            mapping.extend((0..n).filter(|&e| e != first && e != last));
            mapping.push(last);
            Permutation::new(mapping).expect("first, middle and last are disjoint")
        })
        .collect()
}

/// Whether every element of an `n`-element space is first or last in some
/// ordering.
pub fn covers_first_and_last(sigmas: &[Permutation], n: usize) -> bool {
    let mut seen = vec![false; n];
    for sigma in sigmas.iter().filter(|s| s.len() == n) {
        for end in [sigma.first(), sigma.last()].into_iter().flatten() {
            seen[end] = true;
        }
    }
    seen.into_iter().all(|s| s)
}
