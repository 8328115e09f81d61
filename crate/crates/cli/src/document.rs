//! JSON documents: one uncertainty representation over a labelled space.
//!
//! ```json
//! {"kind": "gen_pbox", "space": ["x1", "x2"], "F_low": ["0.2", "1"], "F_upp": ["1/2", "1"]}
//! ```
//!
//! Numbers are accepted as JSON numbers, decimal strings or `"p/q"` strings and
//! are emitted as `"p/q"` strings. Keys are emitted in the order `kind`,
//! `space`, then the payload fields.

use std::fmt;

use impbox_core::rational::format_rational;
use impbox_core::{
    parse_rational, Capacity, Event, FiniteSpace, GeneralizedPBox, MassAssignment,
    PossibilityDistribution, ProbabilityInterval, ProbabilityVector, Rational,
};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Capacity,
    Mass,
    Possibility,
    Interval,
    GenPBox,
    NestedBounds,
    Probability,
}

impl Kind {
    pub const ALL: [Kind; 7] = [
        Kind::Capacity,
        Kind::Mass,
        Kind::Possibility,
        Kind::Interval,
        Kind::GenPBox,
        Kind::NestedBounds,
        Kind::Probability,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Capacity => "capacity",
            Kind::Mass => "mass",
            Kind::Possibility => "possibility",
            Kind::Interval => "interval",
            Kind::GenPBox => "gen_pbox",
            Kind::NestedBounds => "nested_bounds",
            Kind::Probability => "probability",
        }
    }

    pub fn from_name(name: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == name)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Capacity(Capacity),
    Mass(MassAssignment),
    Possibility(PossibilityDistribution),
    Interval(ProbabilityInterval),
    /// Written as the two cumulative functions.
    GenPBox(GeneralizedPBox),
    /// Written as the explicit chain of bounded events.
    NestedBounds(GeneralizedPBox),
    Probability(ProbabilityVector),
}

/// A parse or validation failure at a location in the document.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct DocumentError {
    pub path: String,
    pub message: String,
}

impl DocumentError {
    fn new(path: impl Into<String>, message: impl fmt::Display) -> Self {
        Self {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

type Parsed<T> = Result<T, DocumentError>;

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Capacity(_) => Kind::Capacity,
            Document::Mass(_) => Kind::Mass,
            Document::Possibility(_) => Kind::Possibility,
            Document::Interval(_) => Kind::Interval,
            Document::GenPBox(_) => Kind::GenPBox,
            Document::NestedBounds(_) => Kind::NestedBounds,
            Document::Probability(_) => Kind::Probability,
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        match self {
            Document::Capacity(c) => c.space(),
            Document::Mass(m) => m.space(),
            Document::Possibility(p) => p.space(),
            Document::Interval(l) => l.space(),
            Document::GenPBox(pb) | Document::NestedBounds(pb) => pb.space(),
            Document::Probability(p) => p.space(),
        }
    }

    /// Parses and validates a document, with spaces capped at `max_elements`.
    pub fn parse(text: &str, max_elements: usize) -> Parsed<Document> {
        let value: Value = serde_json::from_str(text).map_err(|e| DocumentError::new("$", e))?;
        let object = value
            .as_object()
            .ok_or_else(|| DocumentError::new("$", "expected a JSON object"))?;
        let kind_name = field(object, "kind")?
            .as_str()
            .ok_or_else(|| DocumentError::new("kind", "expected a string"))?;
        let kind = Kind::from_name(kind_name).ok_or_else(|| {
            let known: Vec<&str> = Kind::ALL.iter().map(|k| k.name()).collect();
            DocumentError::new(
                "kind",
                format!(
                    "unknown kind {kind_name:?}; expected one of {}",
                    known.join(", ")
                ),
            )
        })?;
        let labels = string_list(field(object, "space")?, "space")?;
        let space = FiniteSpace::with_limit(labels, max_elements)
            .map_err(|e| DocumentError::new("space", e))?;

        let allowed: &[&str] = match kind {
            Kind::Capacity => &["values"],
            Kind::Mass => &["focal"],
            Kind::Possibility => &["pi"],
            Kind::Interval => &["l", "u"],
            Kind::GenPBox => &["F_low", "F_upp"],
            Kind::NestedBounds => &["levels"],
            Kind::Probability => &["p"],
        };
        if let Some(extra) = object
            .keys()
            .find(|k| !["kind", "space"].contains(&k.as_str()) && !allowed.contains(&k.as_str()))
        {
            return Err(DocumentError::new(
                extra.as_str(),
                format!("unexpected field for kind {kind}"),
            ));
        }

        let vector = |name: &str| numbers(field(object, name)?, name, Some(space.len()));
        let whole = |e: impbox_core::Error| {
            let path = match &e {
                impbox_core::Error::LengthMismatch { field, .. } => (*field).to_string(),
                impbox_core::Error::OutOfRange { field, .. } => field.clone(),
                _ => "$".to_string(),
            };
            DocumentError::new(path, e)
        };
        Ok(match kind {
            Kind::Capacity => {
                let values = numbers(
                    field(object, "values")?,
                    "values",
                    Some(space.event_count()),
                )?;
                Document::Capacity(
                    Capacity::new(&space, values).map_err(|e| DocumentError::new("values", e))?,
                )
            }
            Kind::Mass => {
                let entries = field(object, "focal")?
                    .as_array()
                    .ok_or_else(|| DocumentError::new("focal", "expected an array"))?;
                let mut focal = Vec::with_capacity(entries.len());
                for (i, entry) in entries.iter().enumerate() {
                    let path = format!("focal[{i}]");
                    let entry = entry.as_object().ok_or_else(|| {
                        DocumentError::new(&path, "expected an object with set and mass")
                    })?;
                    let set = event(&space, nested(entry, "set", &path)?, &format!("{path}.set"))?;
                    let mass = number(nested(entry, "mass", &path)?, &format!("{path}.mass"))?;
                    focal.push((set, mass));
                }
                Document::Mass(
                    MassAssignment::new(&space, focal)
                        .map_err(|e| DocumentError::new("focal", e))?,
                )
            }
            Kind::Possibility => Document::Possibility(
                PossibilityDistribution::new(&space, vector("pi")?)
                    .map_err(|e| DocumentError::new("pi", e))?,
            ),
            Kind::Interval => Document::Interval(
                ProbabilityInterval::new(&space, vector("l")?, vector("u")?).map_err(whole)?,
            ),
            Kind::GenPBox => Document::GenPBox(
                GeneralizedPBox::from_functions(&space, vector("F_low")?, vector("F_upp")?)
                    .map_err(whole)?,
            ),
            Kind::NestedBounds => {
                let entries = field(object, "levels")?
                    .as_array()
                    .ok_or_else(|| DocumentError::new("levels", "expected an array"))?;
                let mut chain = Vec::with_capacity(entries.len());
                for (i, entry) in entries.iter().enumerate() {
                    let path = format!("levels[{i}]");
                    let entry = entry.as_object().ok_or_else(|| {
                        DocumentError::new(&path, "expected an object with set, lo and hi")
                    })?;
                    let set = event(&space, nested(entry, "set", &path)?, &format!("{path}.set"))?;
                    let lo = number(nested(entry, "lo", &path)?, &format!("{path}.lo"))?;
                    let hi = number(nested(entry, "hi", &path)?, &format!("{path}.hi"))?;
                    chain.push((set, lo, hi));
                }
                Document::NestedBounds(
                    GeneralizedPBox::from_nested_sets(&space, chain)
                        .map_err(|e| DocumentError::new("levels", e))?,
                )
            }
            Kind::Probability => Document::Probability(
                ProbabilityVector::new(&space, vector("p")?)
                    .map_err(|e| DocumentError::new("p", e))?,
            ),
        })
    }

    pub fn to_value(&self) -> Value {
        let mut object = Map::new();
        object.insert("kind".into(), Value::String(self.kind().name().into()));
        let labels = self
            .space()
            .labels()
            .iter()
            .cloned()
            .map(Value::String)
            .collect();
        object.insert("space".into(), Value::Array(labels));
        match self {
            Document::Capacity(c) => {
                object.insert("values".into(), rationals(c.values()));
            }
            Document::Mass(m) => {
                let focal = m
                    .focal()
                    .map(|(set, mass)| {
                        let mut entry = Map::new();
                        entry.insert("set".into(), labels_of(&set));
                        entry.insert("mass".into(), rational(mass));
                        Value::Object(entry)
                    })
                    .collect();
                object.insert("focal".into(), Value::Array(focal));
            }
            Document::Possibility(p) => {
                object.insert("pi".into(), rationals(p.values()));
            }
            Document::Interval(l) => {
                object.insert("l".into(), rationals(l.lower()));
                object.insert("u".into(), rationals(l.upper()));
            }
            Document::GenPBox(pb) => {
                object.insert("F_low".into(), rationals(&pb.f_low()));
                object.insert("F_upp".into(), rationals(&pb.f_upp()));
            }
            Document::NestedBounds(pb) => {
                let levels = pb
                    .levels()
                    .into_iter()
                    .map(|level| {
                        let mut entry = Map::new();
                        entry.insert("set".into(), labels_of(&level.set));
                        entry.insert("lo".into(), rational(&level.lower));
                        entry.insert("hi".into(), rational(&level.upper));
                        Value::Object(entry)
                    })
                    .collect();
                object.insert("levels".into(), Value::Array(levels));
            }
            Document::Probability(p) => {
                object.insert("p".into(), rationals(p.values()));
            }
        }
        Value::Object(object)
    }

    /// Canonical text: pretty-printed JSON with a trailing newline.
    pub fn to_canonical(&self) -> String {
        canonical(&self.to_value())
    }
}

pub fn canonical(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    text.push('\n');
    text
}

fn field<'a>(object: &'a Map<String, Value>, name: &str) -> Parsed<&'a Value> {
    object
        .get(name)
        .ok_or_else(|| DocumentError::new(name, "missing field"))
}

fn nested<'a>(object: &'a Map<String, Value>, name: &str, parent: &str) -> Parsed<&'a Value> {
    object
        .get(name)
        .ok_or_else(|| DocumentError::new(format!("{parent}.{name}"), "missing field"))
}

fn string_list(value: &Value, path: &str) -> Parsed<Vec<String>> {
    let items = value
        .as_array()
        .ok_or_else(|| DocumentError::new(path, "expected an array of labels"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            item.as_str()
                .map(str::to_owned)
                .ok_or_else(|| DocumentError::new(format!("{path}[{i}]"), "expected a string"))
        })
        .collect()
}

fn number(value: &Value, path: &str) -> Parsed<Rational> {
    let text = match value {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => {
            return Err(DocumentError::new(
                path,
                "expected a number or a numeric string",
            ))
        }
    };
    parse_rational(&text).map_err(|e| DocumentError::new(path, e))
}

fn numbers(value: &Value, path: &str, expected: Option<usize>) -> Parsed<Vec<Rational>> {
    let items = value
        .as_array()
        .ok_or_else(|| DocumentError::new(path, "expected an array of numbers"))?;
    if let Some(expected) = expected {
        if items.len() != expected {
            return Err(DocumentError::new(
                path,
                format!("expected {expected} entries, found {}", items.len()),
            ));
        }
    }
    items
        .iter()
        .enumerate()
        .map(|(i, item)| number(item, &format!("{path}[{i}]")))
        .collect()
}

fn event(space: &FiniteSpace, value: &Value, path: &str) -> Parsed<Event> {
    let labels = string_list(value, path)?;
    space
        .event_from_labels(&labels)
        .map_err(|e| DocumentError::new(path, e))
}

fn rational(value: &Rational) -> Value {
    Value::String(format_rational(value))
}

fn rationals(values: &[Rational]) -> Value {
    Value::Array(values.iter().map(rational).collect())
}

fn labels_of(event: &Event) -> Value {
    Value::Array(
        event
            .labels()
            .into_iter()
            .map(|l| Value::String(l.to_owned()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use impbox_core::rational::rat;

    const EXAMPLE: &str = r#"{"kind":"gen_pbox","space":["x1","x2","x3","x4","x5","x6"],
        "F_low":["0","0","0.2","0.5","0.5","1"],"F_upp":["0.3","0.3","0.7","0.9","0.9","1"]}"#;

    #[test]
    fn parses_cumulative_functions() {
        let doc = Document::parse(EXAMPLE, 24).unwrap();
        let Document::GenPBox(pb) = &doc else {
            panic!("wrong kind")
        };
        assert_eq!(pb.level_count(), 4);
        assert_eq!(pb.f_upp()[2], rat(7, 10));
    }

    #[test]
    fn canonical_round_trip() {
        let doc = Document::parse(EXAMPLE, 24).unwrap();
        let text = doc.to_canonical();
        assert!(text.starts_with("{\n  \"kind\": \"gen_pbox\",\n  \"space\""));
        assert!(text.contains("\"3/10\""));
        let again = Document::parse(&text, 24).unwrap();
        assert_eq!(again, doc);
        assert_eq!(again.to_canonical(), text);
    }

    #[test]
    fn numbers_in_every_spelling() {
        let doc = Document::parse(
            r#"{"kind":"probability","space":["a","b","c"],"p":["1/2", 0.25, "2.5e-1"]}"#,
            24,
        )
        .unwrap();
        let Document::Probability(p) = doc else {
            panic!("wrong kind")
        };
        assert_eq!(p.values(), &[rat(1, 2), rat(1, 4), rat(1, 4)]);
    }

    #[test]
    fn errors_name_the_field() {
        let long =
            r#"{"kind":"gen_pbox","space":["x1","x2"],"F_low":["0","1","1"],"F_upp":["1","1"]}"#;
        assert_eq!(Document::parse(long, 24).unwrap_err().path, "F_low");
        let bad = r#"{"kind":"interval","space":["a","b"],"l":["0","x"],"u":["1","1"]}"#;
        assert_eq!(Document::parse(bad, 24).unwrap_err().path, "l[1]");
        let label = r#"{"kind":"mass","space":["a"],"focal":[{"set":["b"],"mass":"1"}]}"#;
        assert_eq!(Document::parse(label, 24).unwrap_err().path, "focal[0].set");
        let extra = r#"{"kind":"probability","space":["a"],"p":["1"],"q":1}"#;
        assert_eq!(Document::parse(extra, 24).unwrap_err().path, "q");
        let kind = r#"{"kind":"cloud","space":["a"]}"#;
        assert_eq!(Document::parse(kind, 24).unwrap_err().path, "kind");
    }

    #[test]
    fn space_limit() {
        let doc = r#"{"kind":"probability","space":["a","b","c"],"p":["1","0","0"]}"#;
        assert_eq!(Document::parse(doc, 2).unwrap_err().path, "space");
        assert!(Document::parse(doc, 3).is_ok());
    }

    #[test]
    fn nested_bounds_append_the_whole_space() {
        let doc = r#"{"kind":"nested_bounds","space":["a","b"],"levels":[{"set":["b"],"lo":"0.1","hi":"0.4"}]}"#;
        let parsed = Document::parse(doc, 24).unwrap();
        let Document::NestedBounds(pb) = &parsed else {
            panic!("wrong kind")
        };
        assert_eq!(pb.level_count(), 2);
        assert!(pb.levels()[1].set.is_full());
        assert_eq!(Document::parse(&parsed.to_canonical(), 24).unwrap(), parsed);
    }
}
