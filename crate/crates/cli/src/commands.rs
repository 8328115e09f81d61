//! The four subcommands over parsed documents.

use std::fmt::Write as _;

use impbox_core::rational::{format_decimal, format_rational};
use impbox_core::{
    interval_to_sigma_pbox, pbox_to_interval, Constraint, CredalPolytope, Error, Event,
    FiniteSpace, GeneralizedPBox, MassAssignment, Permutation, ProbabilityInterval, Rational,
};
use num_traits::{One, Zero};
use serde_json::Value;

use crate::document::{canonical, Document, Kind};

/// A failed command, mapped to an exit code by the binary.
#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Invalid(String),
    /// The representation disagrees with the credal-set oracle. Carries the
    /// full report.
    #[error("{0}")]
    Mismatch(String),
}

impl CommandError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CommandError::Invalid(_) => 1,
            CommandError::Usage(_) => 2,
            CommandError::Mismatch(_) => 3,
        }
    }
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        CommandError::Invalid(e.to_string())
    }
}

type Outcome = Result<String, CommandError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Lower,
    Upper,
}

/// Conversion targets available from each kind.
pub fn targets(kind: Kind) -> &'static [Kind] {
    use Kind::*;
    match kind {
        Capacity => &[Mass],
        Mass => &[Capacity, Interval, Possibility],
        Possibility => &[Mass, Capacity, Interval],
        Interval => &[Capacity, GenPBox, NestedBounds],
        GenPBox | NestedBounds => &[Mass, Possibility, Interval, Capacity, GenPBox, NestedBounds],
        Probability => &[Capacity, Mass, Interval],
    }
}

fn yes_no(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

pub fn check(doc: &Document) -> Outcome {
    let mut out = String::new();
    let n = doc.space().len();
    writeln!(out, "valid {} on {n} elements", doc.kind()).unwrap();
    match doc {
        Document::Capacity(c) => {
            match c.two_monotone_violation() {
                None => writeln!(out, "2-monotone: yes").unwrap(),
                Some((a, b)) => writeln!(out, "2-monotone: no (violated by {a} and {b})").unwrap(),
            }
            writeln!(
                out,
                "infinitely monotone: {}",
                yes_no(c.is_infty_monotone())
            )
            .unwrap();
            writeln!(out, "additive: {}", yes_no(c.is_additive())).unwrap();
        }
        Document::Mass(m) => {
            writeln!(out, "focal sets: {}", m.focal_count()).unwrap();
            writeln!(out, "nested: {}", yes_no(m.is_nested())).unwrap();
        }
        Document::Possibility(p) => {
            writeln!(out, "distinct levels: {}", p.levels().len() - 1).unwrap();
        }
        Document::Interval(l) => {
            writeln!(out, "non-empty: {}", yes_no(l.is_nonempty())).unwrap();
            writeln!(out, "reachable: {}", yes_no(l.is_reachable())).unwrap();
        }
        Document::GenPBox(pb) | Document::NestedBounds(pb) => {
            if doc.kind() == Kind::GenPBox {
                writeln!(out, "comonotone: yes").unwrap();
            }
            writeln!(out, "levels: {}", pb.level_count()).unwrap();
            for warning in pb.warnings() {
                writeln!(out, "warning: {warning}").unwrap();
            }
        }
        Document::Probability(_) => {}
    }
    Ok(out)
}

/// Converts to `to`. Returns the documents to print: one, or the
/// `[upper, lower]` pair when a p-box is turned into possibility
/// distributions.
pub fn convert(
    doc: &Document,
    to: Kind,
    sigma: Option<&[String]>,
) -> Result<Vec<Document>, CommandError> {
    let supported = targets(doc.kind());
    if !supported.contains(&to) {
        let list: Vec<&str> = supported.iter().map(|k| k.name()).collect();
        return Err(CommandError::Usage(format!(
            "cannot convert {} to {to}; supported targets: {}",
            doc.kind(),
            list.join(", ")
        )));
    }
    if sigma.is_some() && doc.kind() != Kind::Interval {
        return Err(CommandError::Usage(
            "--sigma applies only to interval documents".into(),
        ));
    }
    let one = |d: Document| Ok(vec![d]);
    match (doc, to) {
        (Document::Capacity(c), Kind::Mass) => {
            let mobius = c.mobius_transform();
            if let Some((event, mass)) = mobius.focal().find(|(_, m)| **m < Rational::zero()) {
                return Err(CommandError::Invalid(format!(
                    "capacity is not infinitely monotone: Möbius mass of {event} is {}",
                    format_rational(mass)
                )));
            }
            one(Document::Mass(MassAssignment::from_mobius(&mobius)?))
        }
        (Document::Mass(m), Kind::Capacity) => one(Document::Capacity(m.to_capacity())),
        (Document::Mass(m), Kind::Interval) => one(Document::Interval(m.to_interval())),
        (Document::Mass(m), Kind::Possibility) => match m.contour_distribution() {
            Some(p) if m.is_nested() => one(Document::Possibility(p)),
            _ => Err(CommandError::Invalid("focal sets are not nested".into())),
        },
        (Document::Possibility(p), Kind::Mass) => one(Document::Mass(p.to_random_set())),
        (Document::Possibility(p), Kind::Capacity) => {
            one(Document::Capacity(p.to_random_set().to_capacity()))
        }
        (Document::Possibility(p), Kind::Interval) => {
            one(Document::Interval(p.to_random_set().to_interval()))
        }
        (Document::Interval(l), Kind::Capacity) => {
            one(Document::Capacity(reachable(l)?.lower_capacity()?))
        }
        (Document::Interval(l), Kind::GenPBox | Kind::NestedBounds) => {
            let space = l.space();
            let sigma = match sigma {
                Some(labels) => Permutation::from_labels(space, labels)
                    .map_err(|e| CommandError::Usage(format!("--sigma: {e}")))?,
                None => Permutation::identity(space.len()),
            };
            let pb = interval_to_sigma_pbox(reachable(l)?, &sigma)?;
            one(pbox_document(pb, to))
        }
        (Document::GenPBox(pb) | Document::NestedBounds(pb), _) => match to {
            Kind::Mass => one(Document::Mass(pb.to_random_set())),
            Kind::Possibility => {
                let (upper, lower) = pb.to_possibility_pair();
                Ok(vec![
                    Document::Possibility(upper),
                    Document::Possibility(lower),
                ])
            }
            Kind::Interval => one(Document::Interval(pbox_to_interval(pb))),
            Kind::Capacity => one(Document::Capacity(pb.lower_capacity())),
            _ => one(pbox_document(pb.clone(), to)),
        },
        (Document::Probability(p), Kind::Capacity) => {
            one(Document::Capacity(impbox_core::Capacity::additive(p)))
        }
        (Document::Probability(p), Kind::Mass) => {
            let space = p.space();
            let focal = (0..space.len()).map(|i| {
                (
                    space.singleton(i).expect("index in range"),
                    p.get(i).clone(),
                )
            });
            one(Document::Mass(MassAssignment::new(space, focal)?))
        }
        (Document::Probability(p), Kind::Interval) => {
            one(Document::Interval(ProbabilityInterval::from_probability(p)))
        }
        _ => unreachable!("targets() lists only handled arrows"),
    }
}

/// `gen_pbox` when the cumulative functions determine the chain, otherwise
/// the explicit chain.
fn pbox_document(pb: GeneralizedPBox, to: Kind) -> Document {
    if to == Kind::GenPBox {
        let rebuilt = GeneralizedPBox::from_functions(pb.space(), pb.f_low(), pb.f_upp());
        if rebuilt.is_ok_and(|r| r.levels() == pb.levels()) {
            return Document::GenPBox(pb);
        }
    }
    Document::NestedBounds(pb)
}

fn reachable(l: &ProbabilityInterval) -> Result<&ProbabilityInterval, CommandError> {
    if l.is_reachable() {
        Ok(l)
    } else {
        Err(CommandError::Invalid(
            "interval is not reachable; tighten it to its envelopes first".into(),
        ))
    }
}

pub fn render(documents: &[Document]) -> String {
    match documents {
        [single] => single.to_canonical(),
        many => canonical(&Value::Array(many.iter().map(Document::to_value).collect())),
    }
}

pub fn parse_event(space: &FiniteSpace, text: &str) -> Result<Event, CommandError> {
    let labels: Vec<&str> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    space
        .event_from_labels(&labels)
        .map_err(|e| CommandError::Usage(format!("--event: {e}")))
}

/// `(lower, upper)` probability of `event` under the document's own formulas.
pub fn event_bounds(doc: &Document, event: &Event) -> Result<(Rational, Rational), CommandError> {
    Ok(match doc {
        Document::Capacity(c) => {
            let lower = c.value(event).clone();
            (lower, Rational::one() - c.value(&event.complement()))
        }
        Document::Mass(m) => (m.bel(event), m.pl(event)),
        Document::Possibility(p) => (p.necessity(event), p.possibility(event)),
        Document::Interval(l) => reachable(l)?.event_bounds(event)?,
        Document::GenPBox(pb) | Document::NestedBounds(pb) => {
            (pb.lower_prob(event), pb.upper_prob(event))
        }
        Document::Probability(p) => {
            let v = p.probability(event);
            (v.clone(), v)
        }
    })
}

pub fn query(doc: &Document, event: &Event, bound: Bound) -> Outcome {
    let (lower, upper) = event_bounds(doc, event)?;
    let value = match bound {
        Bound::Lower => lower,
        Bound::Upper => upper,
    };
    Ok(format!(
        "{} ({})\n",
        format_rational(&value),
        format_decimal(&value, 12)
    ))
}

/// The credal set the document describes.
fn polytope(doc: &Document) -> CredalPolytope {
    match doc {
        Document::Capacity(c) => {
            let space = c.space();
            let constraints = space
                .events()
                .filter(|a| !a.is_empty() && !a.is_full() && !c.value(a).is_zero())
                .map(|a| Constraint {
                    lo: c.value(&a).clone(),
                    hi: Rational::one(),
                    event: a,
                })
                .collect();
            CredalPolytope::new(space, constraints).expect("capacity values lie in [0, 1]")
        }
        Document::Mass(m) => m.to_polytope(),
        Document::Possibility(p) => p.to_polytope(),
        Document::Interval(l) => l.to_polytope(),
        Document::GenPBox(pb) | Document::NestedBounds(pb) => pb.to_polytope(),
        Document::Probability(p) => ProbabilityInterval::from_probability(p).to_polytope(),
    }
}

/// Every formula the document supports for `(lower, upper)` on `event`, by
/// name.
fn claimed(doc: &Document, event: &Event) -> Vec<(&'static str, Rational, Rational)> {
    match doc {
        Document::GenPBox(pb) | Document::NestedBounds(pb) => {
            let masses = pb.to_random_set();
            let swept = pb.sweep_random_set();
            let via_possibility = pb.lower_prob_via_possibility(event);
            let via_possibility_upper =
                Rational::one() - pb.lower_prob_via_possibility(&event.complement());
            vec![
                ("chain", pb.lower_prob(event), pb.upper_prob(event)),
                ("possibility pair", via_possibility, via_possibility_upper),
                ("threshold random set", masses.bel(event), masses.pl(event)),
                ("sweep random set", swept.bel(event), swept.pl(event)),
            ]
        }
        Document::Interval(l) => {
            let tight = l.normalize().expect("checked non-empty");
            let (lo, hi) = tight
                .event_bounds(event)
                .expect("normalized intervals are reachable");
            vec![("interval", lo, hi)]
        }
        _ => {
            let (lo, hi) = event_bounds(doc, event).expect("no failing kinds remain");
            vec![(doc.kind().name(), lo, hi)]
        }
    }
}

fn oracle_error(e: Error) -> CommandError {
    match e {
        Error::EmptyCredalSet => CommandError::Mismatch(
            "credal set is empty: no probability satisfies the bounds\n".into(),
        ),
        e => e.into(),
    }
}

fn envelopes(oracle: &CredalPolytope, event: &Event) -> Result<(Rational, Rational), CommandError> {
    let lower = oracle.lower_envelope(event).map_err(oracle_error)?.value;
    let upper = oracle.upper_envelope(event).map_err(oracle_error)?.value;
    Ok((lower, upper))
}

pub fn verify(doc: &Document) -> Outcome {
    if let Document::Interval(l) = doc {
        if !l.is_nonempty() {
            return Err(CommandError::Invalid(
                "interval describes an empty credal set".into(),
            ));
        }
    }
    let oracle = polytope(doc);
    let space = doc.space();
    let total = space.event_count();
    let mut report = String::new();
    let mut agree = 0;
    for event in space.events() {
        let (lo, hi) = envelopes(&oracle, &event)?;
        let mut event_ok = true;
        for (path, lower, upper) in claimed(doc, &event) {
            for (side, mine, theirs) in [("lower", &lower, &lo), ("upper", &upper, &hi)] {
                if mine != theirs {
                    event_ok = false;
                    writeln!(
                        report,
                        "mismatch on {event}: {path} {side} {}, oracle {}",
                        format_rational(mine),
                        format_rational(theirs)
                    )
                    .unwrap();
                }
            }
        }
        agree += usize::from(event_ok);
    }
    writeln!(report, "{agree}/{total} events agree").unwrap();
    if agree == total {
        Ok(report)
    } else {
        Err(CommandError::Mismatch(report))
    }
}
