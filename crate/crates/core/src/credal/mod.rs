//! Credal polytopes: the probability simplex cut by interval constraints on
//! events, with exact membership, emptiness, envelope and coherence checks.
//!
//! This module is the independent oracle for every closed-form bound in the
//! crate. It knows nothing about the representations; it only solves linear
//! programs over the polytope.

mod simplex;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::rational::{in_unit_interval, Rational};
use crate::space::{Event, FiniteSpace};

use simplex::FeasibleTableau;

/// A probability distribution on the elements of a space.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityVector {
    space: FiniteSpace,
    p: Vec<Rational>,
}

impl ProbabilityVector {
    pub fn new(space: &FiniteSpace, p: Vec<Rational>) -> Result<Self, Error> {
        if p.len() != space.len() {
            return Err(Error::LengthMismatch {
                field: "p",
                expected: space.len(),
                found: p.len(),
            });
        }
        if let Some((i, v)) = p.iter().enumerate().find(|(_, v)| !in_unit_interval(v)) {
            return Err(Error::OutOfRange {
                field: format!("p[{}]", space.label(i)),
                value: v.clone(),
            });
        }
        let total: Rational = p.iter().sum();
        if !total.is_one() {
            return Err(Error::ProbabilitySum(total));
        }
        Ok(Self {
            space: space.clone(),
            p,
        })
    }

    /// Point mass on one element.
    pub fn dirac(space: &FiniteSpace, index: usize) -> Result<Self, Error> {
        space.check_index(index)?;
        let mut p = vec![Rational::zero(); space.len()];
        p[index] = Rational::one();
        Ok(Self {
            space: space.clone(),
            p,
        })
    }

    pub fn uniform(space: &FiniteSpace) -> Self {
        let n = space.len() as i64;
        Self {
            space: space.clone(),
            p: vec![crate::rational::rat(1, n); space.len()],
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.p
    }

    pub fn get(&self, index: usize) -> &Rational {
        &self.p[index]
    }

    /// `P(A) = Σ_{x∈A} p(x)`.
    pub fn probability(&self, event: &Event) -> Rational {
        self.space.assert_same(event.space());
        event.indices().map(|i| &self.p[i]).sum()
    }
}

/// `lo ≤ P(event) ≤ hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub event: Event,
    pub lo: Rational,
    pub hi: Rational,
}

#[derive(Clone, Debug)]
pub struct CredalPolytope {
    space: FiniteSpace,
    constraints: Vec<Constraint>,
    feasible: OnceLock<Option<FeasibleTableau>>,
}

/// An attained extreme value of `P(A)` together with a maximizing or
/// minimizing member of the polytope.
#[derive(Clone, Debug, PartialEq)]
pub struct Envelope {
    pub value: Rational,
    pub witness: ProbabilityVector,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Attainment {
    pub constraint: Constraint,
    pub lower_envelope: Rational,
    pub upper_envelope: Rational,
}

impl Attainment {
    pub fn lower_attained(&self) -> bool {
        self.lower_envelope == self.constraint.lo
    }

    pub fn upper_attained(&self) -> bool {
        self.upper_envelope == self.constraint.hi
    }
}

/// Per-constraint comparison of stated bounds against the envelopes.
#[derive(Clone, Debug, PartialEq)]
pub struct CoherenceReport {
    pub constraints: Vec<Attainment>,
}

impl CoherenceReport {
    pub fn is_coherent(&self) -> bool {
        self.constraints
            .iter()
            .all(|a| a.lower_attained() && a.upper_attained())
    }

    /// Constraints with a bound that no member of the polytope reaches.
    pub fn slack(&self) -> impl Iterator<Item = &Attainment> {
        self.constraints
            .iter()
            .filter(|a| !(a.lower_attained() && a.upper_attained()))
    }
}

impl CredalPolytope {
    pub fn new(space: &FiniteSpace, constraints: Vec<Constraint>) -> Result<Self, Error> {
        for c in &constraints {
            space.check_same(c.event.space())?;
            for (name, v) in [("lo", &c.lo), ("hi", &c.hi)] {
                if !in_unit_interval(v) {
                    return Err(Error::OutOfRange {
                        field: format!("{name} on {}", c.event),
                        value: v.clone(),
                    });
                }
            }
            if c.lo > c.hi {
                return Err(Error::InvertedConstraint {
                    event: c.event.clone(),
                    lo: c.lo.clone(),
                    hi: c.hi.clone(),
                });
            }
        }
        Ok(Self {
            space: space.clone(),
            constraints,
            feasible: OnceLock::new(),
        })
    }

    /// The whole probability simplex.
    pub fn unconstrained(space: &FiniteSpace) -> Self {
        Self {
            space: space.clone(),
            constraints: Vec::new(),
            feasible: OnceLock::new(),
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_member(&self, p: &ProbabilityVector) -> bool {
        self.space.assert_same(p.space());
        self.constraints.iter().all(|c| {
            let v = p.probability(&c.event);
            c.lo <= v && v <= c.hi
        })
    }

    pub fn is_empty(&self) -> bool {
        self.tableau().is_none()
    }

    /// `min P(A)` over the polytope, with a minimizing member.
    pub fn lower_envelope(&self, event: &Event) -> Result<Envelope, Error> {
        self.extreme(event, false)
    }

    /// `max P(A)` over the polytope, with a maximizing member.
    pub fn upper_envelope(&self, event: &Event) -> Result<Envelope, Error> {
        self.extreme(event, true)
    }

    pub fn is_coherent(&self) -> Result<CoherenceReport, Error> {
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                Ok(Attainment {
                    constraint: c.clone(),
                    lower_envelope: self.lower_envelope(&c.event)?.value,
                    upper_envelope: self.upper_envelope(&c.event)?.value,
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(CoherenceReport { constraints })
    }

    fn extreme(&self, event: &Event, maximize: bool) -> Result<Envelope, Error> {
        self.space.assert_same(event.space());
        let tableau = self.tableau().ok_or(Error::EmptyCredalSet)?;
        let n = self.space.len();
        let trivial = event.is_empty() || event.is_full();
        let objective: Vec<Rational> = (0..n)
            .map(|i| match (trivial, event.contains(i), maximize) {
                (false, true, false) => Rational::one(),
                (false, true, true) => -Rational::one(),
                _ => Rational::zero(),
            })
            .collect();
        let optimum = tableau.minimize(&objective);
        let value = if event.is_empty() {
            Rational::zero()
        } else if event.is_full() {
            Rational::one()
        } else if maximize {
            -optimum.value
        } else {
            optimum.value
        };
        Ok(Envelope {
            value,
            witness: ProbabilityVector {
                space: self.space.clone(),
                p: optimum.point,
            },
        })
    }

    fn tableau(&self) -> Option<&FeasibleTableau> {
        self.feasible
            .get_or_init(|| FeasibleTableau::build(self.space.len(), &self.lower_rows()))
            .as_ref()
    }

    /// Every constraint rewritten as `P(B) ≥ b` with `b > 0`, keeping the
    /// tightest bound per event: `P(A) ≤ hi` becomes `P(A^c) ≥ 1 − hi`.
    fn lower_rows(&self) -> Vec<(u32, Rational)> {
        let mut rows: BTreeMap<u32, Rational> = BTreeMap::new();
        let mut add = |bits: u32, bound: Rational| {
            if !bound.is_positive() {
                return;
            }
            rows.entry(bits)
                .and_modify(|b| {
                    if bound > *b {
                        *b = bound.clone()
                    }
                })
                .or_insert(bound);
        };
        for c in &self.constraints {
            add(c.event.bits(), c.lo.clone());
            add(c.event.complement().bits(), Rational::one() - &c.hi);
        }
        let full = self.space.full_bits();
        rows.into_iter().filter(|(bits, _)| *bits != full).collect()
    }
}
