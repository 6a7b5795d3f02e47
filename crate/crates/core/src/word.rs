//! Composable words over the double quiver.
//!
//! Letters are stored in application order: `letters[0]` acts first. The
//! written form reads right to left, so the word `b·a` (apply `a`, then `b`)
//! is stored as `[a, b]`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::quiver::{ArrowId, Letter, Quiver, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    source: VertexId,
    target: VertexId,
    letters: Vec<Letter>,
}

impl Word {
    /// The trivial word `e_v`.
    pub fn vertex(v: VertexId) -> Self {
        Word {
            source: v,
            target: v,
            letters: Vec::new(),
        }
    }

    pub fn letter(q: &Quiver, l: Letter) -> Self {
        Word {
            source: q.letter_source(l),
            target: q.letter_target(l),
            letters: vec![l],
        }
    }

    pub fn arrow(q: &Quiver, a: ArrowId) -> Self {
        Self::letter(q, Letter::real(a))
    }

    /// Letters in application order; `None` when empty or not composable.
    pub fn from_letters(q: &Quiver, letters: Vec<Letter>) -> Option<Self> {
        let first = *letters.first()?;
        let last = *letters.last()?;
        let composable = letters
            .windows(2)
            .all(|w| q.letter_target(w[0]) == q.letter_source(w[1]));
        composable.then(|| Word {
            source: q.letter_source(first),
            target: q.letter_target(last),
            letters,
        })
    }

    /// Builds a path from arrows listed in application order.
    pub fn path(q: &Quiver, arrows: &[ArrowId]) -> Option<Self> {
        Self::from_letters(q, arrows.iter().map(|&a| Letter::real(a)).collect())
    }

    pub(crate) fn from_parts(source: VertexId, target: VertexId, letters: Vec<Letter>) -> Self {
        Word {
            source,
            target,
            letters,
        }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of real letters minus number of ghost letters.
    pub fn degree(&self) -> i64 {
        self.letters.iter().map(|l| if l.ghost { -1 } else { 1 }).sum()
    }

    /// True for words without ghost letters (paths of `Q`, including `e_v`).
    pub fn is_path(&self) -> bool {
        self.letters.iter().all(|l| !l.ghost)
    }

    /// `self · inner`: apply `inner` first. `None` when the endpoints do not meet.
    pub fn compose(&self, inner: &Word) -> Option<Word> {
        if inner.target != self.source {
            return None;
        }
        let mut letters = Vec::with_capacity(inner.len() + self.len());
        letters.extend_from_slice(&inner.letters);
        letters.extend_from_slice(&self.letters);
        Some(Word {
            source: inner.source,
            target: self.target,
            letters,
        })
    }

    /// The ghost `p*` of a path `p`; `e_v* = e_v`.
    pub fn ghost(&self) -> Result<Word> {
        if !self.is_path() {
            return Err(Error::GhostInPathAlgebra(format!(
                "{} letters of a non-path",
                self.len()
            )));
        }
        Ok(self.star())
    }

    /// The anti-involution `α ↦ α*`, `α* ↦ α` extended to all words.
    pub fn star(&self) -> Word {
        Word {
            source: self.target,
            target: self.source,
            letters: self.letters.iter().rev().map(|l| l.star()).collect(),
        }
    }

    /// Sub-word of the letters in `range` (application order), with
    /// endpoints computed from `q`; an empty range yields `e_v` at `at`.
    pub(crate) fn slice(&self, q: &Quiver, range: std::ops::Range<usize>, at: VertexId) -> Word {
        let letters = self.letters[range].to_vec();
        match (letters.first(), letters.last()) {
            (Some(&f), Some(&l)) => Word {
                source: q.letter_source(f),
                target: q.letter_target(l),
                letters,
            },
            _ => Word::vertex(at),
        }
    }
}

/// Canonical order: length, then letters in application order, then (for
/// trivial words) the vertex.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
