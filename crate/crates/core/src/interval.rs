//! Probability intervals `l(x) ≤ p(x) ≤ u(x)`: non-emptiness, reachability,
//! normalization, bounds on events and conjunction.

use num_traits::{One, Zero};

use crate::capacity::Capacity;
use crate::credal::{Constraint, CredalPolytope, ProbabilityVector};
use crate::error::Error;
use crate::rational::{in_unit_interval, max_of, min_of, sum, Rational};
use crate::space::{Event, FiniteSpace};

#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityInterval {
    space: FiniteSpace,
    l: Vec<Rational>,
    u: Vec<Rational>,
    non_empty: bool,
    reachable: bool,
}

/// Result of intersecting probability intervals.
#[derive(Clone, Debug, PartialEq)]
pub enum Conjunction {
    Interval(ProbabilityInterval),
    /// Some `l(x) > u(x)`, or the bounds cannot sum to one.
    Empty,
}

impl Conjunction {
    pub fn is_empty(&self) -> bool {
        matches!(self, Conjunction::Empty)
    }

    pub fn interval(self) -> Option<ProbabilityInterval> {
        match self {
            Conjunction::Interval(l) => Some(l),
            Conjunction::Empty => None,
        }
    }
}

impl ProbabilityInterval {
    pub fn new(space: &FiniteSpace, l: Vec<Rational>, u: Vec<Rational>) -> Result<Self, Error> {
        for (field, v) in [("l", &l), ("u", &u)] {
            if v.len() != space.len() {
                return Err(Error::LengthMismatch {
                    field,
                    expected: space.len(),
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
        if let Some(i) = (0..space.len()).find(|&i| l[i] > u[i]) {
            return Err(Error::InvertedInterval {
                element: space.label(i).to_string(),
                l: l[i].clone(),
                u: u[i].clone(),
            });
        }
        Ok(Self::from_parts(space, l, u))
    }

    /// `l = u = p`.
    pub fn from_probability(p: &ProbabilityVector) -> Self {
        Self::from_parts(p.space(), p.values().to_vec(), p.values().to_vec())
    }

    /// `l ≡ 0`, `u ≡ 1`.
    pub fn vacuous(space: &FiniteSpace) -> Self {
        Self::from_parts(
            space,
            vec![Rational::zero(); space.len()],
            vec![Rational::one(); space.len()],
        )
    }

    fn from_parts(space: &FiniteSpace, l: Vec<Rational>, u: Vec<Rational>) -> Self {
        let sum_l = sum(&l);
        let sum_u = sum(&u);
        let one = Rational::one();
        let non_empty = sum_l <= one && one <= sum_u;
        let reachable = non_empty
            && (0..l.len()).all(|i| &u[i] + &sum_l - &l[i] <= one && &l[i] + &sum_u - &u[i] >= one);
        Self {
            space: space.clone(),
            l,
            u,
            non_empty,
            reachable,
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn lower(&self) -> &[Rational] {
        &self.l
    }

    pub fn upper(&self) -> &[Rational] {
        &self.u
    }

    /// `Σ l ≤ 1 ≤ Σ u`.
    pub fn is_nonempty(&self) -> bool {
        self.non_empty
    }

    /// Every bound is attained by some member of the credal set.
    pub fn is_reachable(&self) -> bool {
        self.reachable
    }

    /// Tightens each bound to the envelope of the credal set:
    /// `l'(x) = max(l(x), 1 − Σ_{y≠x} u(y))`, `u'(x) = min(u(x), 1 − Σ_{y≠x} l(y))`.
    pub fn normalize(&self) -> Result<ProbabilityInterval, Error> {
        if !self.non_empty {
            return Err(Error::EmptyInterval);
        }
        let sum_l = sum(&self.l);
        let sum_u = sum(&self.u);
        let one = Rational::one();
        let l = (0..self.l.len())
            .map(|i| {
                let forced = &one - (&sum_u - &self.u[i]);
                max_of(&self.l[i], &forced).clone()
            })
            .collect();
        let u = (0..self.u.len())
            .map(|i| {
                let room = &one - (&sum_l - &self.l[i]);
                min_of(&self.u[i], &room).clone()
            })
            .collect();
        Ok(Self::from_parts(&self.space, l, u))
    }

    /// `P(A) ∈ [max(Σ_A l, 1 − Σ_{A^c} u), min(Σ_A u, 1 − Σ_{A^c} l)]`.
    pub fn event_bounds(&self, event: &Event) -> Result<(Rational, Rational), Error> {
        self.space.assert_same(event.space());
        if !self.reachable {
            return Err(Error::NotReachable);
        }
        Ok(self.event_bounds_unchecked(event.bits()))
    }

    pub(crate) fn event_bounds_unchecked(&self, bits: u32) -> (Rational, Rational) {
        let one = Rational::one();
        let mut in_l = Rational::zero();
        let mut in_u = Rational::zero();
        let mut out_l = Rational::zero();
        let mut out_u = Rational::zero();
        for i in 0..self.l.len() {
            if bits & (1 << i) != 0 {
                in_l += &self.l[i];
                in_u += &self.u[i];
            } else {
                out_l += &self.l[i];
                out_u += &self.u[i];
            }
        }
        let lower = max_of(&in_l, &(&one - &out_u)).clone();
        let upper = min_of(&in_u, &(&one - &out_l)).clone();
        (lower, upper)
    }

    /// The lower probability `A ↦ event_bounds(A).0` as a capacity.
    pub fn lower_capacity(&self) -> Result<Capacity, Error> {
        if !self.reachable {
            return Err(Error::NotReachable);
        }
        let values = (0..=self.space.full_bits())
            .map(|bits| self.event_bounds_unchecked(bits).0)
            .collect();
        Capacity::new(&self.space, values)
    }

    /// Element-wise `max` of lower and `min` of upper bounds.
    pub fn conjunction(&self, other: &ProbabilityInterval) -> Result<Conjunction, Error> {
        self.space.check_same(&other.space)?;
        let l: Vec<Rational> = self
            .l
            .iter()
            .zip(&other.l)
            .map(|(a, b)| max_of(a, b).clone())
            .collect();
        let u: Vec<Rational> = self
            .u
            .iter()
            .zip(&other.u)
            .map(|(a, b)| min_of(a, b).clone())
            .collect();
        if l.iter().zip(&u).any(|(lo, hi)| lo > hi) {
            return Ok(Conjunction::Empty);
        }
        let joined = Self::from_parts(&self.space, l, u);
        Ok(if joined.non_empty {
            Conjunction::Interval(joined)
        } else {
            Conjunction::Empty
        })
    }

    /// Conjunction of several intervals; `None` for an empty input.
    pub fn conjunction_all<'a, I>(intervals: I) -> Result<Option<Conjunction>, Error>
    where
        I: IntoIterator<Item = &'a ProbabilityInterval>,
    {
        let mut acc: Option<Conjunction> = None;
        for next in intervals {
            acc = Some(match acc {
                None => {
                    if next.non_empty {
                        Conjunction::Interval(next.clone())
                    } else {
                        Conjunction::Empty
                    }
                }
                Some(Conjunction::Empty) => Conjunction::Empty,
                Some(Conjunction::Interval(l)) => l.conjunction(next)?,
            });
        }
        Ok(acc)
    }

    /// Singleton constraints `l(x) ≤ p(x) ≤ u(x)`.
    pub fn to_polytope(&self) -> CredalPolytope {
        let constraints = (0..self.space.len())
            .map(|i| Constraint {
                event: Event::from_bits_unchecked(&self.space, 1 << i),
                lo: self.l[i].clone(),
                hi: self.u[i].clone(),
            })
            .collect();
        CredalPolytope::new(&self.space, constraints).expect("validated bounds")
    }
}
