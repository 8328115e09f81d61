use thiserror::Error;

use crate::rational::Rational;
use crate::space::Event;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot parse {0:?} as an exact rational")]
    ParseRational(String),

    #[error("space has {n} elements; the limit is {max}")]
    SpaceTooLarge { n: usize, max: usize },
    #[error("space must contain at least one element")]
    EmptySpace,
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("element labels must be non-empty")]
    EmptyLabel,
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("element index {index} is out of range for a space of {n} elements")]
    ElementOutOfRange { index: usize, n: usize },
    #[error("operands live on different spaces")]
    SpaceMismatch,
    #[error("mapping is not a bijection on {0} elements")]
    NotAPermutation(usize),

    #[error("{field} has length {found}, expected {expected}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{field} = {value} lies outside [0, 1]")]
    OutOfRange { field: String, value: Rational },

    #[error(
        "capacity boundary violated: value on the empty set is {empty}, on the whole space {full}"
    )]
    CapacityBoundary { empty: Rational, full: Rational },
    #[error("monotonicity violated: value on {smaller} exceeds value on {larger}")]
    NotMonotone { smaller: Event, larger: Event },
    #[error("Mobius masses sum to {0}, expected 1")]
    MobiusSum(Rational),
    #[error("Mobius mass on the empty set must be 0")]
    MobiusEmptyMass,

    #[error("mass assignment sums to {0}, expected 1")]
    MassSum(Rational),
    #[error("the empty set cannot carry mass")]
    MassOnEmptySet,
    #[error("negative mass {mass} on {event}")]
    NegativeMass { event: Event, mass: Rational },
    #[error("simple support needs a non-empty focal set")]
    EmptySupport,

    #[error("possibility distribution is not normalized: its maximum is {0}")]
    NotNormalized(Rational),

    #[error("probability vector sums to {0}, expected 1")]
    ProbabilitySum(Rational),
    #[error("constraint on {event} has lo = {lo} > hi = {hi}")]
    InvertedConstraint {
        event: Event,
        lo: Rational,
        hi: Rational,
    },
    #[error("the credal set is empty")]
    EmptyCredalSet,

    #[error("interval for {element} has l = {l} > u = {u}")]
    InvertedInterval {
        element: String,
        l: Rational,
        u: Rational,
    },
    #[error("probability interval induces an empty credal set")]
    EmptyInterval,
    #[error("probability interval is not reachable; normalize it first")]
    NotReachable,

    #[error("F_low and F_upp are not comonotone: {first} and {second} are ordered differently")]
    NotComonotone { first: String, second: String },
    #[error("no element has F_low = F_upp = 1")]
    NoTopElement,
    #[error("F_low exceeds F_upp at {0}")]
    LowerAboveUpper(String),
    #[error("level {0} is not a strict superset of the previous level")]
    NotNested(usize),
    #[error("level {0} has bounds that decrease relative to the previous level")]
    DecreasingBounds(usize),
    #[error("level {0} has lo > hi")]
    InvertedLevel(usize),
    #[error("bounds on the whole space must be [1, 1]")]
    WholeSpaceBounds,

    #[error("at least one permutation is required")]
    NoPermutations,
}
