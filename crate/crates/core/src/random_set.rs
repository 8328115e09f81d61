//! Finite random sets: mass assignments over focal events, with belief,
//! plausibility and contour functions.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::capacity::{Capacity, MobiusAssignment};
use crate::credal::{Constraint, CredalPolytope};
use crate::error::Error;
use crate::interval::ProbabilityInterval;
use crate::possibility::PossibilityDistribution;
use crate::rational::{in_unit_interval, Rational};
use crate::space::{Event, FiniteSpace};

/// Positive masses on non-empty events, summing to one. Zero masses are never
/// stored, so two assignments are equal exactly when their focal maps are.
#[derive(Clone, Debug, PartialEq)]
pub struct MassAssignment {
    space: FiniteSpace,
    focal: BTreeMap<u32, Rational>,
}

impl MassAssignment {
    /// Repeated events are merged by adding their masses.
    pub fn new<I>(space: &FiniteSpace, masses: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (Event, Rational)>,
    {
        let mut focal: BTreeMap<u32, Rational> = BTreeMap::new();
        for (event, mass) in masses {
            space.check_same(event.space())?;
            *focal.entry(event.bits()).or_insert_with(Rational::zero) += mass;
        }
        for (&bits, mass) in &focal {
            if mass.is_negative() {
                return Err(Error::NegativeMass {
                    event: Event::from_bits_unchecked(space, bits),
                    mass: mass.clone(),
                });
            }
        }
        focal.retain(|_, m| !m.is_zero());
        if focal.contains_key(&0) {
            return Err(Error::MassOnEmptySet);
        }
        let total: Rational = focal.values().sum();
        if !total.is_one() {
            return Err(Error::MassSum(total));
        }
        Ok(Self {
            space: space.clone(),
            focal,
        })
    }

    /// `m(A) = mass_on_a`, `m(X) = 1 − mass_on_a`.
    pub fn simple_support(event: &Event, mass_on_a: &Rational) -> Result<Self, Error> {
        if event.is_empty() {
            return Err(Error::EmptySupport);
        }
        if !in_unit_interval(mass_on_a) {
            return Err(Error::OutOfRange {
                field: "mass_on_a".into(),
                value: mass_on_a.clone(),
            });
        }
        let space = event.space();
        Self::new(
            space,
            [
                (event.clone(), mass_on_a.clone()),
                (space.full_event(), Rational::one() - mass_on_a),
            ],
        )
    }

    /// Reads the Möbius masses of a capacity as a mass assignment; fails with
    /// the offending event when the capacity is not ∞-monotone.
    pub fn from_capacity(capacity: &Capacity) -> Result<Self, Error> {
        Self::from_mobius(&capacity.mobius_transform())
    }

    pub fn from_mobius(m: &MobiusAssignment) -> Result<Self, Error> {
        Self::new(m.space(), m.focal().map(|(e, v)| (e, v.clone())))
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    /// Focal events and their masses in bit order.
    pub fn focal(&self) -> impl Iterator<Item = (Event, &Rational)> + '_ {
        self.focal
            .iter()
            .map(|(&bits, m)| (Event::from_bits_unchecked(&self.space, bits), m))
    }

    pub fn focal_count(&self) -> usize {
        self.focal.len()
    }

    pub fn mass(&self, event: &Event) -> Rational {
        self.space.assert_same(event.space());
        self.focal
            .get(&event.bits())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Total mass of focal sets inside `event`.
    pub fn bel(&self, event: &Event) -> Rational {
        self.space.assert_same(event.space());
        let a = event.bits();
        self.focal
            .iter()
            .filter(|(&e, _)| e & !a == 0)
            .map(|(_, m)| m)
            .sum()
    }

    /// Total mass of focal sets meeting `event`.
    pub fn pl(&self, event: &Event) -> Rational {
        self.space.assert_same(event.space());
        let a = event.bits();
        self.focal
            .iter()
            .filter(|(&e, _)| e & a != 0)
            .map(|(_, m)| m)
            .sum()
    }

    /// `π(x) = Pl({x})`.
    pub fn contour(&self) -> Vec<Rational> {
        (0..self.space.len())
            .map(|i| {
                self.focal
                    .iter()
                    .filter(|(&e, _)| e & (1 << i) != 0)
                    .map(|(_, m)| m)
                    .sum()
            })
            .collect()
    }

    /// The contour as a possibility distribution; `None` unless some element
    /// lies in every focal set.
    pub fn contour_distribution(&self) -> Option<PossibilityDistribution> {
        PossibilityDistribution::new(&self.space, self.contour()).ok()
    }

    /// Focal sets totally ordered by inclusion.
    pub fn is_nested(&self) -> bool {
        let mut sets: Vec<u32> = self.focal.keys().copied().collect();
        sets.sort_by_key(|b| b.count_ones());
        sets.windows(2).all(|w| w[0] & !w[1] == 0)
    }

    /// `Bel` as a capacity over all events.
    pub fn to_capacity(&self) -> Capacity {
        let mut masses = vec![Rational::zero(); self.space.event_count()];
        for (&bits, m) in &self.focal {
            masses[bits as usize] = m.clone();
        }
        MobiusAssignment::new(&self.space, masses)
            .and_then(|m| m.mobius_inverse())
            .expect("non-negative masses give a belief function")
    }

    /// `l(x) = Bel({x})`, `u(x) = Pl({x})`: a reachable outer approximation.
    pub fn to_interval(&self) -> ProbabilityInterval {
        let (l, u) = (0..self.space.len())
            .map(|i| {
                let x = Event::from_bits_unchecked(&self.space, 1 << i);
                (self.bel(&x), self.pl(&x))
            })
            .unzip();
        ProbabilityInterval::new(&self.space, l, u).expect("singleton Bel ≤ Pl within [0, 1]")
    }

    /// Constraints `Bel(A) ≤ P(A) ≤ Pl(A)` on every event.
    pub fn to_polytope(&self) -> CredalPolytope {
        let constraints = self
            .space
            .events()
            .map(|a| Constraint {
                lo: self.bel(&a),
                hi: self.pl(&a),
                event: a,
            })
            .collect();
        CredalPolytope::new(&self.space, constraints).expect("Bel ≤ Pl within [0, 1]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn space(n: usize) -> FiniteSpace {
        FiniteSpace::indexed(n).unwrap()
    }

    fn ev(s: &FiniteSpace, labels: &[&str]) -> Event {
        s.event_from_labels(labels).unwrap()
    }

    /// Masses of the six-facet die example after thresholding its p-box.
    fn die_masses() -> MassAssignment {
        let s = space(6);
        MassAssignment::new(
            &s,
            [
                (ev(&s, &["x1", "x2", "x3"]), rat(1, 5)),
                (ev(&s, &["x1", "x2", "x3", "x4", "x5"]), rat(1, 10)),
                (ev(&s, &["x3", "x4", "x5"]), rat(1, 5)),
                (ev(&s, &["x3", "x4", "x5", "x6"]), rat(1, 5)),
                (ev(&s, &["x4", "x5", "x6"]), rat(1, 5)),
                (ev(&s, &["x6"]), rat(1, 10)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        let s = space(2);
        assert_eq!(
            MassAssignment::new(&s, [(s.empty_event(), int(1))]).unwrap_err(),
            Error::MassOnEmptySet
        );
        assert_eq!(
            MassAssignment::new(&s, [(s.full_event(), rat(1, 2))]).unwrap_err(),
            Error::MassSum(rat(1, 2))
        );
        assert!(matches!(
            MassAssignment::new(
                &s,
                [
                    (s.full_event(), rat(3, 2)),
                    (s.singleton(0).unwrap(), rat(-1, 2))
                ]
            ),
            Err(Error::NegativeMass { .. })
        ));
        let merged = MassAssignment::new(
            &s,
            [
                (s.full_event(), rat(1, 2)),
                (s.full_event(), rat(1, 2)),
                (s.singleton(0).unwrap(), int(0)),
            ],
        )
        .unwrap();
        assert_eq!(merged.focal_count(), 1);
    }

    #[test]
    fn belief_and_plausibility() {
        let m = die_masses();
        let s = m.space().clone();
        assert_eq!(m.bel(&ev(&s, &["x1", "x2", "x3"])), rat(1, 5));
        assert_eq!(m.pl(&ev(&s, &["x3"])), rat(7, 10));
        assert_eq!(m.bel(&s.full_event()), int(1));
        assert_eq!(m.bel(&s.empty_event()), int(0));
        for a in s.events() {
            assert_eq!(m.pl(&a) + m.bel(&a.complement()), int(1));
        }
    }

    #[test]
    fn contours() {
        let s = space(3);
        let ss = MassAssignment::simple_support(&ev(&s, &["x1", "x2"]), &rat(4, 5)).unwrap();
        assert_eq!(ss.contour(), vec![int(1), int(1), rat(1, 5)]);
        assert!(ss.contour_distribution().is_some());

        let vac = MassAssignment::new(&s, [(s.full_event(), int(1))]).unwrap();
        assert_eq!(vac.contour(), vec![int(1); 3]);

        let die = die_masses();
        assert_eq!(
            die.contour(),
            [3, 3, 7, 7, 7, 5].map(|t| rat(t, 10)).to_vec()
        );
        assert!(die.contour_distribution().is_none());
    }

    #[test]
    fn nestedness() {
        assert!(!die_masses().is_nested());
        let s = space(3);
        assert!(MassAssignment::new(&s, [(s.singleton(1).unwrap(), int(1))])
            .unwrap()
            .is_nested());
        let pi = PossibilityDistribution::new(&s, vec![rat(1, 3), int(1), rat(2, 3)]).unwrap();
        assert!(pi.to_random_set().is_nested());
    }

    #[test]
    fn simple_support_shapes() {
        let s = space(3);
        let a = ev(&s, &["x1", "x2"]);
        let full = MassAssignment::simple_support(&a, &int(1)).unwrap();
        assert_eq!((full.focal_count(), full.mass(&a)), (1, int(1)));
        let none = MassAssignment::simple_support(&a, &int(0)).unwrap();
        assert_eq!(
            (none.focal_count(), none.mass(&s.full_event())),
            (1, int(1))
        );
        let mixed = MassAssignment::simple_support(&a, &rat(4, 5)).unwrap();
        assert_eq!(mixed.mass(&a), rat(4, 5));
        assert_eq!(mixed.mass(&s.full_event()), rat(1, 5));
        assert_eq!(
            MassAssignment::simple_support(&s.empty_event(), &rat(1, 2)).unwrap_err(),
            Error::EmptySupport
        );
        let whole = MassAssignment::simple_support(&s.full_event(), &rat(1, 2)).unwrap();
        assert_eq!(whole.focal_count(), 1);
    }

    #[test]
    fn interval_of_die_masses() {
        let l = die_masses().to_interval();
        assert_eq!(l.lower(), [0, 0, 0, 0, 0, 1].map(|t| rat(t, 10)).as_slice());
        assert_eq!(l.upper(), [3, 3, 7, 7, 7, 5].map(|t| rat(t, 10)).as_slice());
        assert!(l.is_reachable());
    }

    #[test]
    fn interval_extremes() {
        let s = space(3);
        let vac = MassAssignment::new(&s, [(s.full_event(), int(1))])
            .unwrap()
            .to_interval();
        assert_eq!(vac.lower(), vec![int(0); 3].as_slice());
        assert_eq!(vac.upper(), vec![int(1); 3].as_slice());
        let p = [rat(1, 2), rat(1, 3), rat(1, 6)];
        let additive = MassAssignment::new(
            &s,
            p.iter()
                .enumerate()
                .map(|(i, v)| (s.singleton(i).unwrap(), v.clone())),
        )
        .unwrap()
        .to_interval();
        assert_eq!(additive.lower(), p.as_slice());
        assert_eq!(additive.upper(), p.as_slice());
    }

    #[test]
    fn belief_is_the_mobius_inverse() {
        let m = die_masses();
        let bel = m.to_capacity();
        assert!(bel.is_infty_monotone());
        assert!(!bel.is_additive());
        assert_eq!(
            bel.conjugate().value(&ev(bel.space(), &["x3"])),
            &rat(7, 10)
        );
        for a in m.space().events() {
            assert_eq!(bel.value(&a), &m.bel(&a));
        }
        assert_eq!(MassAssignment::from_capacity(&bel).unwrap(), m);
    }

    #[test]
    fn polytopes() {
        let s = space(3);
        let vac = MassAssignment::new(&s, [(s.full_event(), int(1))])
            .unwrap()
            .to_polytope();
        for a in s.events().filter(|a| !a.is_empty() && !a.is_full()) {
            assert_eq!(vac.lower_envelope(&a).unwrap().value, int(0));
            assert_eq!(vac.upper_envelope(&a).unwrap().value, int(1));
        }
        let point = MassAssignment::new(
            &s,
            [
                (s.singleton(0).unwrap(), rat(1, 2)),
                (s.singleton(2).unwrap(), rat(1, 2)),
            ],
        )
        .unwrap()
        .to_polytope();
        for a in s.events() {
            let lo = point.lower_envelope(&a).unwrap().value;
            assert_eq!(lo, point.upper_envelope(&a).unwrap().value);
        }
    }
}
