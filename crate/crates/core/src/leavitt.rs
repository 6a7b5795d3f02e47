//! The Leavitt path algebra as the free algebra of the double quiver modulo
//! the Cuntz-Krieger relations, realized by an oriented rewriting system.
//!
//! Two rule families, written in the usual right-to-left notation:
//!
//! * `α β* → δ(α, β) e_t(α)` for arrows with a common source;
//! * `γ* γ → e_i − Σ_{α ≠ γ, s(α) = i} α* α` where `γ` is the special arrow at `i`.
//!
//! Irreducible words have the shape `γ* η` (a real path `η` applied first,
//! then a ghost path) and never end in the special pair at the junction.

use std::fmt;

use crate::element::{add_term, Algebra, Context, Element, Terms};
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};
use crate::quiver::{ArrowId, Letter, Quiver, VertexId};
use crate::word::Word;

/// Default rewrite-step budget per monomial.
pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// `α β* − δ(α, β) e_t(α)`
    Ck1 { alpha: ArrowId, beta: ArrowId },
    /// `Σ_{s(α) = i} α* α − e_i`
    Ck2 { vertex: VertexId },
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub kind: RelationKind,
    /// The relation as an element of the free algebra.
    pub element: Element,
}

impl Relation {
    pub fn describe(&self, q: &Quiver) -> String {
        match &self.kind {
            RelationKind::Ck1 { alpha, beta } => format!("CK1({}, {})", q.arrow(*alpha).name, q.arrow(*beta).name),
            RelationKind::Ck2 { vertex } => format!("CK2({})", q.vertex_name(*vertex)),
        }
    }
}

/// The Cuntz-Krieger relations of a quiver.
#[derive(Clone, Debug)]
pub struct RelationSet {
    relations: Vec<Relation>,
}

impl RelationSet {
    pub fn new(q: &Quiver, field: Field) -> Self {
        let mut relations = Vec::new();
        for v in q.vertex_ids() {
            for &alpha in q.outgoing(v) {
                for &beta in q.outgoing(v) {
                    // written α β*: apply β* then α
                    let word = Word::from_letters(q, vec![Letter::ghost(beta), Letter::real(alpha)])
                        .expect("common source makes α β* composable");
                    let mut element = Element::word(field, word);
                    if alpha == beta {
                        element = &element - &Element::vertex(field, q.arrow(alpha).target);
                    }
                    relations.push(Relation {
                        kind: RelationKind::Ck1 { alpha, beta },
                        element,
                    });
                }
            }
        }
        for v in q.regular_vertices() {
            relations.push(Relation {
                kind: RelationKind::Ck2 { vertex: v },
                element: ck2_element(q, field, v, q.outgoing(v)),
            });
        }
        RelationSet { relations }
    }

    /// Copy with one arrow dropped from the first CK2 relation, preferring a
    /// vertex with at least two outgoing arrows. Used to check that
    /// verifiers are not vacuous.
    pub fn with_ck2_arrow_dropped(&self, q: &Quiver, field: Field) -> Self {
        let mut out = self.clone();
        let target = q
            .regular_vertices()
            .into_iter()
            .max_by_key(|&v| (q.outgoing(v).len() >= 2, std::cmp::Reverse(v)));
        if let Some(v) = target {
            let arrows = q.outgoing(v);
            let kept = &arrows[..arrows.len() - 1];
            for r in &mut out.relations {
                if r.kind == (RelationKind::Ck2 { vertex: v }) {
                    r.element = ck2_element(q, field, v, kept);
                }
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = &Relation> {
        self.relations.iter()
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}

fn ck2_element(q: &Quiver, field: Field, v: VertexId, arrows: &[ArrowId]) -> Element {
    let mut x = -&Element::vertex(field, v);
    for &a in arrows {
        let w = Word::from_letters(q, vec![Letter::real(a), Letter::ghost(a)]).expect("α* α composes");
        x = &x + &Element::word(field, w);
    }
    x
}

/// What the leftmost redex of a word is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Redex {
    /// `α β*` at letters `(pos, pos + 1)`: `β*` applied first.
    Cancel { pos: usize, same: bool },
    /// `γ* γ` at letters `(pos, pos + 1)` with `γ` special at `vertex`.
    Special { pos: usize, vertex: VertexId },
}

impl Redex {
    pub fn pos(self) -> usize {
        match self {
            Redex::Cancel { pos, .. } | Redex::Special { pos, .. } => pos,
        }
    }
}

/// Classifies the adjacent pair at `(pos, pos + 1)`, if it is a redex.
pub fn redex_at(q: &Quiver, letters: &[Letter], pos: usize) -> Option<Redex> {
    let (first, second) = (letters[pos], letters[pos + 1]);
    match (first.ghost, second.ghost) {
        (true, false) => Some(Redex::Cancel {
            pos,
            same: first.arrow == second.arrow,
        }),
        (false, true) if first.arrow == second.arrow && q.is_special(first.arrow) => Some(Redex::Special {
            pos,
            vertex: q.arrow(first.arrow).source,
        }),
        _ => None,
    }
}

/// Leftmost redex (in application order) at or after `start`.
pub fn find_redex(q: &Quiver, letters: &[Letter], start: usize) -> Option<Redex> {
    (start..letters.len().saturating_sub(1)).find_map(|pos| redex_at(q, letters, pos))
}

/// One rewrite step at `redex`: the words of the right-hand side with their
/// signs (`true` for `+`).
pub fn rewrite_step(q: &Quiver, word: &Word, redex: Redex) -> Vec<(Word, bool)> {
    let letters = word.letters();
    let pos = redex.pos();
    let splice = |middle: &[Letter]| {
        let mut out = Vec::with_capacity(letters.len());
        out.extend_from_slice(&letters[..pos]);
        out.extend_from_slice(middle);
        out.extend_from_slice(&letters[pos + 2..]);
        Word::from_parts(word.source(), word.target(), out)
    };
    match redex {
        Redex::Cancel { same: false, .. } => Vec::new(),
        Redex::Cancel { same: true, .. } => vec![(splice(&[]), true)],
        Redex::Special { vertex, .. } => {
            let special = q.special(vertex).expect("special redex at a regular vertex");
            let mut out = vec![(splice(&[]), true)];
            for &a in q.outgoing(vertex) {
                if a != special {
                    out.push((splice(&[Letter::real(a), Letter::ghost(a)]), false));
                }
            }
            out
        }
    }
}

/// True when the word contains no redex.
pub fn is_normal_monomial(q: &Quiver, w: &Word) -> bool {
    find_redex(q, w.letters(), 0).is_none()
}

/// `L_k(Q)` with normal forms.
#[derive(Clone, Debug)]
pub struct LeavittAlgebra {
    quiver: Quiver,
    field: Field,
    fuel: u64,
}

impl LeavittAlgebra {
    pub fn new(quiver: Quiver, field: Field) -> Self {
        LeavittAlgebra {
            quiver,
            field,
            fuel: DEFAULT_FUEL,
        }
    }

    pub fn with_fuel(mut self, fuel: u64) -> Self {
        self.fuel = fuel;
        self
    }

    pub fn relations(&self) -> RelationSet {
        RelationSet::new(&self.quiver, self.field)
    }

    pub fn normal_form(&self, x: &Element) -> Result<Element> {
        self.reduce(x.clone())
    }

    pub fn equal(&self, x: &Element, y: &Element) -> Result<bool> {
        Ok(self.normal_form(&(x - y))?.is_zero())
    }

    /// Normal monomials of length at most `max_len`, in canonical order.
    pub fn basis_up_to(&self, max_len: usize) -> Vec<Word> {
        basis_up_to(&self.quiver, max_len)
    }

    /// Full basis of a finite-dimensional algebra; errors on a cyclic quiver.
    pub fn full_basis(&self) -> Result<Vec<Word>> {
        let n = self.quiver.vertex_count();
        // acyclic ⇔ no normal monomial longer than 2(|Q0| − 1)
        let bound = 2 * n.saturating_sub(1);
        let basis = self.basis_up_to(bound + 1);
        if basis.iter().any(|w| w.len() > bound) {
            return Err(Error::CyclicQuiver);
        }
        Ok(basis)
    }
}

impl Algebra for LeavittAlgebra {
    fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    fn field(&self) -> Field {
        self.field
    }

    fn reduced_context(&self) -> Context {
        Context::Normal
    }

    fn reduce_into(&self, word: Word, coef: Scalar, out: &mut Terms) -> Result<()> {
        let q = &self.quiver;
        let mut steps = 0u64;
        let mut stack = vec![(word, coef, 0usize)];
        while let Some((w, c, start)) = stack.pop() {
            match find_redex(q, w.letters(), start) {
                None => add_term(out, w, c),
                Some(redex) => {
                    steps += 1;
                    if steps > self.fuel {
                        return Err(Error::FuelExhausted { fuel: self.fuel });
                    }
                    // only the pair just before the rewrite site can become a redex
                    let resume = redex.pos().saturating_sub(1);
                    for (next, positive) in rewrite_step(q, &w, redex) {
                        let nc = if positive { c.clone() } else { -&c };
                        stack.push((next, nc, resume));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationKind::Ck1 { alpha, beta } => write!(f, "CK1({}, {})", alpha.0, beta.0),
            RelationKind::Ck2 { vertex } => write!(f, "CK2({})", vertex.0),
        }
    }
}

/// Normal monomials `γ* η` of length at most `max_len`, canonical order.
pub fn basis_up_to(q: &Quiver, max_len: usize) -> Vec<Word> {
    // paths grouped by target vertex, each a list of arrows in application order
    let mut by_target: Vec<Vec<Vec<ArrowId>>> = vec![Vec::new(); q.vertex_count()];
    let mut layer: Vec<(VertexId, Vec<ArrowId>)> = Vec::new();
    for v in q.vertex_ids() {
        by_target[v.index()].push(Vec::new());
        layer.push((v, Vec::new()));
    }
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (end, path) in &layer {
            for &a in q.outgoing(*end) {
                let mut p = path.clone();
                p.push(a);
                let t = q.arrow(a).target;
                by_target[t.index()].push(p.clone());
                next.push((t, p));
            }
        }
        layer = next;
    }

    let mut out = Vec::new();
    for v in q.vertex_ids() {
        let paths = &by_target[v.index()];
        for eta in paths {
            for gamma in paths {
                if eta.len() + gamma.len() > max_len {
                    continue;
                }
                if let (Some(&x), Some(&y)) = (eta.last(), gamma.last()) {
                    if x == y && q.is_special(x) {
                        continue;
                    }
                }
                let mut letters: Vec<Letter> = eta.iter().map(|&a| Letter::real(a)).collect();
                letters.extend(gamma.iter().rev().map(|&a| Letter::ghost(a)));
                let word = if letters.is_empty() {
                    Word::vertex(v)
                } else {
                    Word::from_letters(q, letters).expect("γ* η composes")
                };
                out.push(word);
            }
        }
    }
    out.sort();
    out
}
