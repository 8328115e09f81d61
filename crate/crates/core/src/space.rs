//! Finite ground sets, events as bit-vectors, and element orderings.

use std::fmt;
use std::sync::Arc;

use crate::error::Error;

/// Largest supported space. Set functions are stored on all `2^n` events.
pub const MAX_ELEMENTS: usize = 24;

/// An ordered, finite set of labelled elements.
///
/// Cloning is cheap; two spaces are equal when their labels are equal.
#[derive(Clone)]
pub struct FiniteSpace {
    labels: Arc<[String]>,
}

impl FiniteSpace {
    pub fn new<I, S>(labels: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_limit(labels, MAX_ELEMENTS)
    }

    /// Like [`FiniteSpace::new`] with a tighter size cap. `max` is clamped to
    /// [`MAX_ELEMENTS`].
    pub fn with_limit<I, S>(labels: I, max: usize) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let max = max.min(MAX_ELEMENTS);
        if labels.is_empty() {
            return Err(Error::EmptySpace);
        }
        if labels.len() > max {
            return Err(Error::SpaceTooLarge {
                n: labels.len(),
                max,
            });
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self {
            labels: labels.into(),
        })
    }

    /// Space `{x1, ..., xn}`.
    pub fn indexed(n: usize) -> Result<Self, Error> {
        Self::new((1..=n).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, Error> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Bit mask of the whole space.
    pub fn full_bits(&self) -> u32 {
        full_mask(self.len())
    }

    /// Number of events, `2^n`.
    pub fn event_count(&self) -> usize {
        1usize << self.len()
    }

    pub fn empty_event(&self) -> Event {
        Event::from_bits_unchecked(self, 0)
    }

    pub fn full_event(&self) -> Event {
        Event::from_bits_unchecked(self, self.full_bits())
    }

    pub fn singleton(&self, index: usize) -> Result<Event, Error> {
        self.check_index(index)?;
        Ok(Event::from_bits_unchecked(self, 1 << index))
    }

    pub fn event_from_indices(
        &self,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Event, Error> {
        let mut bits = 0u32;
        for i in indices {
            self.check_index(i)?;
            bits |= 1 << i;
        }
        Ok(Event::from_bits_unchecked(self, bits))
    }

    pub fn event_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Event, Error> {
        let indices = labels
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        self.event_from_indices(indices)
    }

    pub fn event_from_bits(&self, bits: u32) -> Result<Event, Error> {
        if bits & !self.full_bits() != 0 {
            let index = (u32::BITS - bits.leading_zeros() - 1) as usize;
            return Err(Error::ElementOutOfRange {
                index,
                n: self.len(),
            });
        }
        Ok(Event::from_bits_unchecked(self, bits))
    }

    /// All `2^n` events in increasing bit order.
    pub fn events(&self) -> impl Iterator<Item = Event> + '_ {
        (0..=self.full_bits()).map(move |bits| Event::from_bits_unchecked(self, bits))
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<(), Error> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                index,
                n: self.len(),
            })
        }
    }

    pub(crate) fn check_same(&self, other: &FiniteSpace) -> Result<(), Error> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// Panics on a space mismatch. Measures evaluated on foreign events are a
    /// programming error, not a data error.
    pub(crate) fn assert_same(&self, other: &FiniteSpace) {
        assert!(self == other, "event belongs to a different space");
    }
}

/// Enumerates all `2^n` events of `space` in increasing bit order.
pub fn enumerate_events(space: &FiniteSpace) -> impl Iterator<Item = Event> + '_ {
    space.events()
}

impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for FiniteSpace {}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub(crate) fn bit_indices(bits: u32) -> impl Iterator<Item = usize> {
    let mut rest = bits;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// A subset of a [`FiniteSpace`].
#[derive(Clone, PartialEq, Eq)]
pub struct Event {
    space: FiniteSpace,
    bits: u32,
}

impl Event {
    pub(crate) fn from_bits_unchecked(space: &FiniteSpace, bits: u32) -> Self {
        debug_assert_eq!(bits & !space.full_bits(), 0);
        Self {
            space: space.clone(),
            bits,
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == self.space.full_bits()
    }

    pub fn contains(&self, index: usize) -> bool {
        index < 32 && self.bits & (1 << index) != 0
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> {
        bit_indices(self.bits)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.indices().map(|i| self.space.label(i)).collect()
    }

    pub fn complement(&self) -> Event {
        Event::from_bits_unchecked(&self.space, !self.bits & self.space.full_bits())
    }

    pub fn union(&self, other: &Event) -> Result<Event, Error> {
        self.space.check_same(&other.space)?;
        Ok(Event::from_bits_unchecked(
            &self.space,
            self.bits | other.bits,
        ))
    }

    pub fn intersection(&self, other: &Event) -> Result<Event, Error> {
        self.space.check_same(&other.space)?;
        Ok(Event::from_bits_unchecked(
            &self.space,
            self.bits & other.bits,
        ))
    }

    pub fn difference(&self, other: &Event) -> Result<Event, Error> {
        self.space.check_same(&other.space)?;
        Ok(Event::from_bits_unchecked(
            &self.space,
            self.bits & !other.bits,
        ))
    }

    pub fn is_subset(&self, other: &Event) -> Result<bool, Error> {
        self.space.check_same(&other.space)?;
        Ok(self.bits & !other.bits == 0)
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(","))
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.bits.cmp(&other.bits)
    }
}

/// A linear ordering of the elements of a space: position `i` holds element
/// `mapping[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self, Error> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &m in &mapping {
            if m >= n || seen[m] {
                return Err(Error::NotAPermutation(n));
            }
            seen[m] = true;
        }
        Ok(Self { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            mapping: (0..n).collect(),
        }
    }

    /// Parses an ordering written as element labels.
    pub fn from_labels<S: AsRef<str>>(space: &FiniteSpace, labels: &[S]) -> Result<Self, Error> {
        let mapping = labels
            .iter()
            .map(|l| space.index_of(l.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        if mapping.len() != space.len() {
            return Err(Error::NotAPermutation(space.len()));
        }
        Self::new(mapping)
    }

    /// All `n!` orderings, in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        use itertools::Itertools;
        (0..n)
            .permutations(n)
            .map(|mapping| Permutation { mapping })
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.mapping
    }

    /// Element at position `position`.
    pub fn at(&self, position: usize) -> usize {
        self.mapping[position]
    }

    pub fn first(&self) -> Option<usize> {
        self.mapping.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.mapping.last().copied()
    }

    /// Position of each element: `inverse()[e]` is where `e` sits.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.mapping.len()];
        for (pos, &e) in self.mapping.iter().enumerate() {
            inv[e] = pos;
        }
        inv
    }
}
