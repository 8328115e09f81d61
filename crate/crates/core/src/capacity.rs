//! Capacities (monotone set functions), conjugation, the Möbius transform and
//! the 2- and ∞-monotonicity classes.
//!
//! A capacity stores one value per event, indexed by the event's bit mask, so
//! every operation here is a scan over the `2^n` subset lattice.

use num_traits::{One, Signed, Zero};

use crate::credal::ProbabilityVector;
use crate::error::Error;
use crate::rational::{in_unit_interval, Rational};
use crate::space::{bit_indices, Event, FiniteSpace};

#[derive(Clone, Debug, PartialEq)]
pub struct Capacity {
    space: FiniteSpace,
    values: Vec<Rational>,
}

impl Capacity {
    /// Validates `values` (one per event, in bit order) as a capacity:
    /// values in `[0, 1]`, `μ(∅) = 0`, `μ(X) = 1` and monotone under inclusion.
    pub fn new(space: &FiniteSpace, values: Vec<Rational>) -> Result<Self, Error> {
        let expected = space.event_count();
        if values.len() != expected {
            return Err(Error::LengthMismatch {
                field: "values",
                expected,
                found: values.len(),
            });
        }
        let full = space.full_bits() as usize;
        if !values[0].is_zero() || !values[full].is_one() {
            return Err(Error::CapacityBoundary {
                empty: values[0].clone(),
                full: values[full].clone(),
            });
        }
        if let Some((bits, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !in_unit_interval(v))
        {
            return Err(Error::OutOfRange {
                field: format!("values[{}]", space.event_from_bits(bits as u32)?),
                value: v.clone(),
            });
        }
        let capacity = Self {
            space: space.clone(),
            values,
        };
        if let Some((smaller, larger)) = capacity.monotonicity_violation() {
            return Err(Error::NotMonotone { smaller, larger });
        }
        Ok(capacity)
    }

    /// Builds a capacity by evaluating `f` on every event.
    pub fn from_fn(space: &FiniteSpace, f: impl Fn(&Event) -> Rational) -> Result<Self, Error> {
        let values = space.events().map(|e| f(&e)).collect();
        Self::new(space, values)
    }

    /// The probability measure `P(A) = Σ_{x∈A} p(x)`.
    pub fn additive(p: &ProbabilityVector) -> Self {
        let space = p.space().clone();
        let values = space.events().map(|e| p.probability(&e)).collect();
        Self { space, values }
    }

    /// `μ(X) = 1`, zero elsewhere.
    pub fn vacuous(space: &FiniteSpace) -> Self {
        let mut values = vec![Rational::zero(); space.event_count()];
        values[space.full_bits() as usize] = Rational::one();
        Self {
            space: space.clone(),
            values,
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn value(&self, event: &Event) -> &Rational {
        self.space.assert_same(event.space());
        &self.values[event.bits() as usize]
    }

    /// Values indexed by event bit mask.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `μ^c(E) = 1 − μ(E^c)`.
    pub fn conjugate(&self) -> Capacity {
        let full = self.space.full_bits();
        let values = (0..=full)
            .map(|bits| Rational::one() - &self.values[(full & !bits) as usize])
            .collect();
        Capacity {
            space: self.space.clone(),
            values,
        }
    }

    /// `m(E) = Σ_{B⊆E} (−1)^{|E∖B|} μ(B)`, computed with the subset-lattice
    /// difference transform in `O(n·2^n)`.
    pub fn mobius_transform(&self) -> MobiusAssignment {
        let mut masses = self.values.clone();
        for i in 0..self.space.len() {
            let bit = 1usize << i;
            for bits in 0..masses.len() {
                if bits & bit != 0 {
                    let lower = masses[bits ^ bit].clone();
                    masses[bits] -= lower;
                }
            }
        }
        MobiusAssignment {
            space: self.space.clone(),
            masses,
        }
    }

    /// `μ(A∪B) + μ(A∩B) ≥ μ(A) + μ(B)` for all events.
    pub fn is_2_monotone(&self) -> bool {
        self.two_monotone_violation().is_none()
    }

    /// A pair `(A, B)` with `μ(A∪B) + μ(A∩B) < μ(A) + μ(B)`, if any.
    ///
    /// Supermodularity on a finite lattice is equivalent to its local form
    /// `μ(C∪{x,y}) + μ(C) ≥ μ(C∪{x}) + μ(C∪{y})`, which is what is scanned; a
    /// local failure is itself a witness pair `A = C∪{x}`, `B = C∪{y}`.
    pub fn two_monotone_violation(&self) -> Option<(Event, Event)> {
        let n = self.space.len();
        for c in 0..=self.space.full_bits() {
            for x in 0..n {
                let bx = 1u32 << x;
                if c & bx != 0 {
                    continue;
                }
                for y in x + 1..n {
                    let by = 1u32 << y;
                    if c & by != 0 {
                        continue;
                    }
                    let join = &self.values[(c | bx | by) as usize] + &self.values[c as usize];
                    let parts = &self.values[(c | bx) as usize] + &self.values[(c | by) as usize];
                    if join < parts {
                        return Some((
                            Event::from_bits_unchecked(&self.space, c | bx),
                            Event::from_bits_unchecked(&self.space, c | by),
                        ));
                    }
                }
            }
        }
        None
    }

    /// ∞-monotone (a belief function) iff every Möbius mass is non-negative.
    pub fn is_infty_monotone(&self) -> bool {
        self.mobius_transform().is_nonnegative()
    }

    /// Additive iff the Möbius masses live on singletons only.
    pub fn is_additive(&self) -> bool {
        self.mobius_transform()
            .masses
            .iter()
            .enumerate()
            .all(|(bits, m)| m.is_zero() || (bits as u32).count_ones() == 1)
    }

    fn monotonicity_violation(&self) -> Option<(Event, Event)> {
        let full = self.space.full_bits();
        for bits in 0..=full {
            for i in bit_indices(full & !bits) {
                let larger = bits | (1 << i);
                if self.values[bits as usize] > self.values[larger as usize] {
                    return Some((
                        Event::from_bits_unchecked(&self.space, bits),
                        Event::from_bits_unchecked(&self.space, larger),
                    ));
                }
            }
        }
        None
    }
}

/// A signed set function `m` with `Σ m = 1` and `m(∅) = 0`: the Möbius
/// transform of a capacity.
#[derive(Clone, Debug, PartialEq)]
pub struct MobiusAssignment {
    space: FiniteSpace,
    masses: Vec<Rational>,
}

impl MobiusAssignment {
    pub fn new(space: &FiniteSpace, masses: Vec<Rational>) -> Result<Self, Error> {
        let expected = space.event_count();
        if masses.len() != expected {
            return Err(Error::LengthMismatch {
                field: "masses",
                expected,
                found: masses.len(),
            });
        }
        if !masses[0].is_zero() {
            return Err(Error::MobiusEmptyMass);
        }
        let total: Rational = masses.iter().sum();
        if !total.is_one() {
            return Err(Error::MobiusSum(total));
        }
        Ok(Self {
            space: space.clone(),
            masses,
        })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn mass(&self, event: &Event) -> &Rational {
        self.space.assert_same(event.space());
        &self.masses[event.bits() as usize]
    }

    /// Masses indexed by event bit mask.
    pub fn masses(&self) -> &[Rational] {
        &self.masses
    }

    /// Events with non-zero mass, in bit order.
    pub fn focal(&self) -> impl Iterator<Item = (Event, &Rational)> + '_ {
        self.masses
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(bits, m)| (Event::from_bits_unchecked(&self.space, bits as u32), m))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.masses.iter().all(|m| !m.is_negative())
    }

    /// The unique capacity with `μ(A) = Σ_{E⊆A} m(E)`. Signed masses may yield
    /// a set function that is not a capacity; that is reported with a witness.
    pub fn mobius_inverse(&self) -> Result<Capacity, Error> {
        Capacity::new(&self.space, self.zeta())
    }

    /// `A ↦ Σ_{E⊆A} m(E)` without capacity validation.
    pub(crate) fn zeta(&self) -> Vec<Rational> {
        let mut values = self.masses.clone();
        for i in 0..self.space.len() {
            let bit = 1usize << i;
            for bits in 0..values.len() {
                if bits & bit != 0 {
                    let lower = values[bits ^ bit].clone();
                    values[bits] += lower;
                }
            }
        }
        values
    }
}
