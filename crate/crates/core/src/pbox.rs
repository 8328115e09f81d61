//! Generalized p-boxes: comonotone lower/upper cumulative functions on an
//! arbitrary finite space, equivalently bounds on a chain of nested events.
//!
//! A p-box is stored as its chain `∅ ⊂ A_1 ⊂ … ⊂ A_M = X` with level bounds
//! `α_k ≤ P(A_k) ≤ β_k` and the partition blocks `G_k = A_k ∖ A_{k−1}`. Built
//! from functions, the chain is the one induced by the pre-order of the
//! `(F_low, F_upp)` values, so elements with equal pairs share a level. Built
//! from nested events or an element ordering, the chain is kept as given.
//!
//! Every bound formula works on the chain: the pair of possibility
//! distributions, the threshold and sweep constructions of the equivalent
//! random set, and the closed-form lower probability over runs of consecutive
//! blocks.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::capacity::Capacity;
use crate::credal::{Constraint, CredalPolytope};
use crate::error::Error;
use crate::possibility::PossibilityDistribution;
use crate::random_set::MassAssignment;
use crate::rational::{in_unit_interval, Rational};
use crate::space::{Event, FiniteSpace, Permutation};

#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedPBox {
    space: FiniteSpace,
    order: Permutation,
    /// Bit mask of `A_k`, with `levels[0] = ∅`.
    levels: Vec<u32>,
    /// `α_k`, with `alpha[0] = 0`.
    alpha: Vec<Rational>,
    /// `β_k`, with `beta[0] = 0`.
    beta: Vec<Rational>,
    /// Level index (1-based) of each element.
    level_of: Vec<usize>,
}

/// One nested event of the chain with its probability bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct Level {
    pub set: Event,
    pub lower: Rational,
    pub upper: Rational,
}

/// Accepted but suspicious inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    /// `β_1 = 0`: the innermost level is forced to probability zero.
    NullFirstLevel,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::NullFirstLevel => {
                write!(
                    f,
                    "upper bound of the innermost level is 0; its elements get probability 0"
                )
            }
        }
    }
}

impl GeneralizedPBox {
    /// Builds a p-box from per-element lower and upper cumulative values.
    ///
    /// Requires `F_low ≤ F_upp`, an element with `F_low = F_upp = 1`, and a
    /// common non-decreasing ordering of both functions.
    pub fn from_functions(
        space: &FiniteSpace,
        f_low: Vec<Rational>,
        f_upp: Vec<Rational>,
    ) -> Result<Self, Error> {
        let n = space.len();
        for (field, v) in [("F_low", &f_low), ("F_upp", &f_upp)] {
            if v.len() != n {
                return Err(Error::LengthMismatch {
                    field,
                    expected: n,
                    found: v.len(),
                });
            }
            if let Some((i, bad)) = v.iter().enumerate().find(|(_, x)| !in_unit_interval(x)) {
                return Err(Error::OutOfRange {
                    field: format!("{field}[{}]", space.label(i)),
                    value: bad.clone(),
                });
            }
        }
        if let Some(i) = (0..n).find(|&i| f_low[i] > f_upp[i]) {
            return Err(Error::LowerAboveUpper(space.label(i).to_string()));
        }
        if !(0..n).any(|i| f_low[i].is_one() && f_upp[i].is_one()) {
            return Err(Error::NoTopElement);
        }

        let mut sorted: Vec<usize> = (0..n).collect();
        sorted.sort_by(|&a, &b| (&f_low[a], &f_upp[a]).cmp(&(&f_low[b], &f_upp[b])));
        if let Some(w) = sorted.windows(2).find(|w| f_upp[w[0]] > f_upp[w[1]]) {
            return Err(Error::NotComonotone {
                first: space.label(w[0]).to_string(),
                second: space.label(w[1]).to_string(),
            });
        }

        let mut level_sizes = Vec::new();
        let mut alpha = Vec::new();
        let mut beta = Vec::new();
        for (pos, &e) in sorted.iter().enumerate() {
            let same_as_previous = pos > 0 && {
                let prev = sorted[pos - 1];
                f_low[prev] == f_low[e] && f_upp[prev] == f_upp[e]
            };
            if same_as_previous {
                *level_sizes.last_mut().unwrap() += 1;
            } else {
                level_sizes.push(1);
                alpha.push(f_low[e].clone());
                beta.push(f_upp[e].clone());
            }
        }
        let order = Permutation::new(sorted).expect("sorted indices form a permutation");
        Self::from_chain(space, order, &level_sizes, alpha, beta)
    }

    /// Builds a p-box from bounds on a strictly increasing chain of events.
    /// The whole space is appended with bounds `[1, 1]` when missing.
    pub fn from_nested_sets(
        space: &FiniteSpace,
        nested: Vec<(Event, Rational, Rational)>,
    ) -> Result<Self, Error> {
        let mut nested = nested;
        match nested.last() {
            Some((last, lo, hi)) if last.is_full() => {
                if !lo.is_one() || !hi.is_one() {
                    return Err(Error::WholeSpaceBounds);
                }
            }
            _ => nested.push((space.full_event(), Rational::one(), Rational::one())),
        }
        let mut order = Vec::with_capacity(space.len());
        let mut sizes = Vec::with_capacity(nested.len());
        let mut previous = 0u32;
        for (k, (event, _, _)) in nested.iter().enumerate() {
            space.check_same(event.space())?;
            let bits = event.bits();
            if bits & !previous == 0 || previous & !bits != 0 {
                return Err(Error::NotNested(k + 1));
            }
            let fresh = event.indices().filter(|i| previous & (1 << i) == 0);
            let before = order.len();
            order.extend(fresh);
            sizes.push(order.len() - before);
            previous = bits;
        }
        let (alpha, beta) = nested.into_iter().map(|(_, lo, hi)| (lo, hi)).unzip();
        let order = Permutation::new(order).expect("chain covers every element once");
        Self::from_chain(space, order, &sizes, alpha, beta)
    }

    /// The p-box that follows `order` strictly: level `i` is the first `i`
    /// elements of the ordering, with bounds `alpha[i]`, `beta[i]`.
    pub fn from_ordering(
        space: &FiniteSpace,
        order: Permutation,
        alpha: Vec<Rational>,
        beta: Vec<Rational>,
    ) -> Result<Self, Error> {
        let sizes = vec![1; order.len()];
        Self::from_chain(space, order, &sizes, alpha, beta)
    }

    fn from_chain(
        space: &FiniteSpace,
        order: Permutation,
        level_sizes: &[usize],
        alpha: Vec<Rational>,
        beta: Vec<Rational>,
    ) -> Result<Self, Error> {
        if order.len() != space.len() {
            return Err(Error::NotAPermutation(space.len()));
        }
        let m = level_sizes.len();
        for (field, v) in [("alpha", &alpha), ("beta", &beta)] {
            if v.len() != m {
                return Err(Error::LengthMismatch {
                    field,
                    expected: m,
                    found: v.len(),
                });
            }
            if let Some((k, bad)) = v.iter().enumerate().find(|(_, x)| !in_unit_interval(x)) {
                return Err(Error::OutOfRange {
                    field: format!("{field}[{}]", k + 1),
                    value: bad.clone(),
                });
            }
        }
        for k in 0..m {
            if alpha[k] > beta[k] {
                return Err(Error::InvertedLevel(k + 1));
            }
            if k > 0 && (alpha[k] < alpha[k - 1] || beta[k] < beta[k - 1]) {
                return Err(Error::DecreasingBounds(k + 1));
            }
        }
        if m == 0 || !alpha[m - 1].is_one() || !beta[m - 1].is_one() {
            return Err(Error::WholeSpaceBounds);
        }

        let mut levels = vec![0u32];
        let mut level_of = vec![0; space.len()];
        let mut pos = 0;
        for (k, &size) in level_sizes.iter().enumerate() {
            if size == 0 {
                return Err(Error::NotNested(k + 1));
            }
            let mut bits = *levels.last().unwrap();
            for _ in 0..size {
                let e = order.at(pos);
                bits |= 1 << e;
                level_of[e] = k + 1;
                pos += 1;
            }
            levels.push(bits);
        }
        debug_assert_eq!(pos, space.len());

        let with_origin = |v: Vec<Rational>| {
            let mut out = Vec::with_capacity(v.len() + 1);
            out.push(Rational::zero());
            out.extend(v);
            out
        };
        Ok(Self {
            space: space.clone(),
            order,
            levels,
            alpha: with_origin(alpha),
            beta: with_origin(beta),
            level_of,
        })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    /// An element ordering compatible with the chain.
    pub fn order(&self) -> &Permutation {
        &self.order
    }

    /// Number of distinct nested events `M`.
    pub fn level_count(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> Vec<Level> {
        (1..self.levels.len())
            .map(|k| Level {
                set: Event::from_bits_unchecked(&self.space, self.levels[k]),
                lower: self.alpha[k].clone(),
                upper: self.beta[k].clone(),
            })
            .collect()
    }

    /// The partition `G_k = A_k ∖ A_{k−1}`.
    pub fn blocks(&self) -> Vec<Event> {
        (1..self.levels.len())
            .map(|k| Event::from_bits_unchecked(&self.space, self.block_bits(k)))
            .collect()
    }

    /// `α_k` for `k = 0..=M`, with `α_0 = 0`.
    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    /// `β_k` for `k = 0..=M`, with `β_0 = 0`.
    pub fn beta(&self) -> &[Rational] {
        &self.beta
    }

    /// 1-based level of an element.
    pub fn level_of(&self, element: usize) -> usize {
        self.level_of[element]
    }

    /// `F_low(x) = α` of the level of `x`, indexed by element.
    pub fn f_low(&self) -> Vec<Rational> {
        self.level_of
            .iter()
            .map(|&k| self.alpha[k].clone())
            .collect()
    }

    /// `F_upp(x) = β` of the level of `x`, indexed by element.
    pub fn f_upp(&self) -> Vec<Rational> {
        self.level_of
            .iter()
            .map(|&k| self.beta[k].clone())
            .collect()
    }

    pub fn warnings(&self) -> Vec<Warning> {
        let mut out = Vec::new();
        if self.level_count() > 1 && self.beta[1].is_zero() {
            out.push(Warning::NullFirstLevel);
        }
        out
    }

    pub(crate) fn block_bits(&self, k: usize) -> u32 {
        self.levels[k] & !self.levels[k - 1]
    }

    /// `(π_upp, π_low)` with `𝒫_pbox = 𝒫_{π_upp} ∩ 𝒫_{π_low}`:
    /// `π_upp(x) = β_k` and `π_low(x) = 1 − α_{k−1}` for `x ∈ G_k`.
    ///
    /// `α_{k−1}` is the lower bound of the previous level of the chain. When
    /// lower bounds strictly increase along the chain this is
    /// `1 − max{α_j | α_j < α_k}`.
    pub fn to_possibility_pair(&self) -> (PossibilityDistribution, PossibilityDistribution) {
        let upper = self
            .level_of
            .iter()
            .map(|&k| self.beta[k].clone())
            .collect();
        let lower = self
            .level_of
            .iter()
            .map(|&k| Rational::one() - &self.alpha[k - 1])
            .collect();
        (
            PossibilityDistribution::new(&self.space, upper).expect("top level has β = 1"),
            PossibilityDistribution::new(&self.space, lower).expect("first level has π_low = 1"),
        )
    }

    /// Equivalent random set by thresholding: for the distinct bound values
    /// `0 = γ_0 < γ_1 < … < γ_L = 1`, the focal set at `γ_j` is
    /// `{x | π_upp(x) ≥ γ_j, 1 − π_low(x) < γ_j}` with mass `γ_j − γ_{j−1}`.
    pub fn to_random_set(&self) -> MassAssignment {
        let (pi_upp, pi_low) = self.to_possibility_pair();
        let mut gammas: BTreeSet<&Rational> = self.alpha.iter().chain(&self.beta).collect();
        let zero = Rational::zero();
        gammas.insert(&zero);
        let gammas: Vec<&Rational> = gammas.into_iter().collect();
        let n = self.space.len();
        let focal = gammas.windows(2).map(|w| {
            let (previous, gamma) = (w[0], w[1]);
            let members = (0..n)
                .filter(|&i| pi_upp.get(i) >= gamma && &(Rational::one() - pi_low.get(i)) < gamma);
            let set = self
                .space
                .event_from_indices(members)
                .expect("indices within the space");
            (set, gamma - previous)
        });
        MassAssignment::new(&self.space, focal).expect("thresholds partition [0, 1]")
    }

    /// Equivalent random set by the level sweep: after `α_i` the block
    /// `G_{i+1}` joins the focal set, after `β_i` the block `G_i` leaves it,
    /// and each step carries the gap to the next bound value as mass. Zero
    /// masses are dropped and repeated focal sets merged.
    pub fn sweep_random_set(&self) -> MassAssignment {
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
        enum Step {
            Add(usize),
            Remove(usize),
            End,
        }
        let m = self.level_count();
        let mut steps: Vec<(&Rational, Step)> = Vec::with_capacity(2 * m);
        for i in 1..m {
            steps.push((&self.alpha[i], Step::Add(i + 1)));
            steps.push((&self.beta[i], Step::Remove(i)));
        }
        // Additions sort before removals at equal values, so a block is never
        // removed before it was added.
        steps.sort();
        steps.insert(0, (&self.alpha[0], Step::Add(1)));
        steps.push((&self.alpha[m], Step::End));

        let mut current = 0u32;
        let mut focal = Vec::with_capacity(steps.len());
        for k in 1..steps.len() {
            match steps[k - 1].1 {
                Step::Add(block) => current |= self.block_bits(block),
                Step::Remove(block) => current &= !self.block_bits(block),
                Step::End => unreachable!("end marker is last"),
            }
            let mass = steps[k].0 - steps[k - 1].0;
            focal.push((Event::from_bits_unchecked(&self.space, current), mass));
        }
        MassAssignment::new(&self.space, focal).expect("sweep masses partition [0, 1]")
    }

    /// Maximal runs `(i, j)` of consecutive blocks `G_i..G_j` inside `event`.
    fn runs(&self, event: &Event) -> Vec<(usize, usize)> {
        self.space.assert_same(event.space());
        let a = event.bits();
        let mut runs = Vec::new();
        let mut start = None;
        for k in 1..=self.level_count() {
            let inside = self.block_bits(k) & !a == 0;
            match (inside, start) {
                (true, None) => start = Some(k),
                (false, Some(i)) => {
                    runs.push((i, k - 1));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(i) = start {
            runs.push((i, self.level_count()));
        }
        runs
    }

    /// Lower probability: `event` is shrunk to the union of blocks it
    /// contains, and each maximal run `G_i..G_j` contributes
    /// `max(0, α_j − β_{i−1})`.
    pub fn lower_prob(&self, event: &Event) -> Rational {
        self.runs(event)
            .into_iter()
            .map(|(i, j)| {
                let gap = &self.alpha[j] - &self.beta[i - 1];
                if gap > Rational::zero() {
                    gap
                } else {
                    Rational::zero()
                }
            })
            .sum()
    }

    /// `1 − lower_prob(A^c)`.
    pub fn upper_prob(&self, event: &Event) -> Rational {
        Rational::one() - self.lower_prob(&event.complement())
    }

    /// The same runs evaluated through the possibility pair:
    /// `max(0, N_low(A_j) − Π_upp(A_{i−1}))`.
    pub fn lower_prob_via_possibility(&self, event: &Event) -> Rational {
        let (pi_upp, pi_low) = self.to_possibility_pair();
        self.runs(event)
            .into_iter()
            .map(|(i, j)| {
                let inner = Event::from_bits_unchecked(&self.space, self.levels[j]);
                let before = Event::from_bits_unchecked(&self.space, self.levels[i - 1]);
                let gap = pi_low.necessity(&inner) - pi_upp.possibility(&before);
                if gap > Rational::zero() {
                    gap
                } else {
                    Rational::zero()
                }
            })
            .sum()
    }

    /// The lower probability on every event.
    pub fn lower_capacity(&self) -> Capacity {
        Capacity::from_fn(&self.space, |a| self.lower_prob(a))
            .expect("lower probabilities form a capacity")
    }

    /// One constraint `α_k ≤ P(A_k) ≤ β_k` per level.
    pub fn to_polytope(&self) -> CredalPolytope {
        let constraints = self
            .levels()
            .into_iter()
            .map(|level| Constraint {
                event: level.set,
                lo: level.lower,
                hi: level.upper,
            })
            .collect();
        CredalPolytope::new(&self.space, constraints).expect("validated level bounds")
    }
}
