//! Possibility distributions: possibility, necessity and sufficiency measures,
//! α-cuts, credal-set membership and the nested random-set transform.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::credal::{Constraint, CredalPolytope, ProbabilityVector};
use crate::error::Error;
use crate::random_set::MassAssignment;
use crate::rational::{in_unit_interval, Rational};
use crate::space::{Event, FiniteSpace};

#[derive(Clone, Debug, PartialEq)]
pub struct PossibilityDistribution {
    space: FiniteSpace,
    pi: Vec<Rational>,
}

/// `(Π(A), N(A), Δ(A))` for one event.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measures {
    pub possibility: Rational,
    pub necessity: Rational,
    pub sufficiency: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cut {
    /// `{x | π(x) > α}`
    Strong,
    /// `{x | π(x) ≥ α}`
    Regular,
}

impl PossibilityDistribution {
    pub fn new(space: &FiniteSpace, pi: Vec<Rational>) -> Result<Self, Error> {
        if pi.len() != space.len() {
            return Err(Error::LengthMismatch {
                field: "pi",
                expected: space.len(),
                found: pi.len(),
            });
        }
        if let Some((i, v)) = pi.iter().enumerate().find(|(_, v)| !in_unit_interval(v)) {
            return Err(Error::OutOfRange {
                field: format!("pi[{}]", space.label(i)),
                value: v.clone(),
            });
        }
        let max = pi.iter().max().cloned().unwrap_or_else(Rational::zero);
        if !max.is_one() {
            return Err(Error::NotNormalized(max));
        }
        Ok(Self {
            space: space.clone(),
            pi,
        })
    }

    /// `π ≡ 1`: total ignorance.
    pub fn vacuous(space: &FiniteSpace) -> Self {
        Self {
            space: space.clone(),
            pi: vec![Rational::one(); space.len()],
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.pi
    }

    pub fn get(&self, index: usize) -> &Rational {
        &self.pi[index]
    }

    /// `Π(A) = max_{x∈A} π(x)`, zero on the empty set.
    pub fn possibility(&self, event: &Event) -> Rational {
        self.space.assert_same(event.space());
        event
            .indices()
            .map(|i| &self.pi[i])
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `N(A) = 1 − Π(A^c)`.
    pub fn necessity(&self, event: &Event) -> Rational {
        Rational::one() - self.possibility(&event.complement())
    }

    /// `Δ(A) = min_{x∈A} π(x)`, one on the empty set.
    pub fn sufficiency(&self, event: &Event) -> Rational {
        self.space.assert_same(event.space());
        event
            .indices()
            .map(|i| &self.pi[i])
            .min()
            .cloned()
            .unwrap_or_else(Rational::one)
    }

    pub fn measures(&self, event: &Event) -> Measures {
        Measures {
            possibility: self.possibility(event),
            necessity: self.necessity(event),
            sufficiency: self.sufficiency(event),
        }
    }

    pub fn alpha_cut(&self, alpha: &Rational, cut: Cut) -> Event {
        let indices = self.pi.iter().enumerate().filter_map(|(i, v)| {
            let inside = match cut {
                Cut::Strong => v > alpha,
                Cut::Regular => v >= alpha,
            };
            inside.then_some(i)
        });
        self.space
            .event_from_indices(indices)
            .expect("indices come from the distribution")
    }

    /// Distinct values of π together with 0, ascending.
    pub fn levels(&self) -> Vec<Rational> {
        let mut levels: BTreeSet<Rational> = self.pi.iter().cloned().collect();
        levels.insert(Rational::zero());
        levels.into_iter().collect()
    }

    /// `P ∈ 𝒫_π` iff `P({π > α}) ≥ 1 − α` at every level α of π. Strong cuts
    /// are constant between consecutive levels, so the levels suffice.
    pub fn contains(&self, p: &ProbabilityVector) -> bool {
        self.space.assert_same(p.space());
        self.levels().iter().all(|alpha| {
            let cut = self.alpha_cut(alpha, Cut::Strong);
            p.probability(&cut) >= Rational::one() - alpha
        })
    }

    /// The credal set `{P | P({π > α}) ≥ 1 − α}` over the levels of π.
    pub fn to_polytope(&self) -> CredalPolytope {
        let constraints = self
            .levels()
            .into_iter()
            .map(|alpha| Constraint {
                event: self.alpha_cut(&alpha, Cut::Strong),
                lo: Rational::one() - alpha,
                hi: Rational::one(),
            })
            .filter(|c| !c.lo.is_zero())
            .collect();
        CredalPolytope::new(&self.space, constraints).expect("bounds lie in [0, 1]")
    }

    /// Nested random set with focal sets the regular cuts at the non-zero
    /// levels `α_1 < … < α_M = 1` and masses `α_i − α_{i−1}`.
    pub fn to_random_set(&self) -> MassAssignment {
        let levels = self.levels();
        let focal = levels.windows(2).map(|w| {
            let cut = self.alpha_cut(&w[1], Cut::Regular);
            (cut, &w[1] - &w[0])
        });
        MassAssignment::new(&self.space, focal).expect("level differences form a mass assignment")
    }
}
