//! Elements of the free path algebra of the double quiver.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Neg, Sub};

use crate::error::Result;
use crate::linalg::{Field, Scalar};
use crate::quiver::{Letter, Quiver, VertexId};
use crate::word::Word;

pub(crate) type Terms = BTreeMap<Word, Scalar>;

pub(crate) fn add_term(terms: &mut Terms, word: Word, coef: Scalar) {
    if coef.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(word) {
        Entry::Vacant(e) => {
            e.insert(coef);
        }
        Entry::Occupied(mut e) => {
            let sum = e.get() + &coef;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// Whether an element is an arbitrary free combination or known to be in
/// Leavitt normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Context {
    Free,
    Normal,
}

/// A finite linear combination of words with nonzero coefficients.
///
/// Equality compares terms only, not the context tag.
#[derive(Clone, Debug)]
pub struct Element {
    context: Context,
    terms: Terms,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Element {}

impl Element {
    pub fn zero() -> Self {
        Element {
            context: Context::Free,
            terms: Terms::new(),
        }
    }

    pub fn monomial(word: Word, coef: Scalar) -> Self {
        let mut terms = Terms::new();
        add_term(&mut terms, word, coef);
        Element {
            context: Context::Free,
            terms,
        }
    }

    pub fn word(field: Field, word: Word) -> Self {
        Self::monomial(word, field.one())
    }

    pub fn vertex(field: Field, v: VertexId) -> Self {
        Self::word(field, Word::vertex(v))
    }

    pub fn letter(field: Field, q: &Quiver, l: Letter) -> Self {
        Self::word(field, Word::letter(q, l))
    }

    /// Sum of all vertex idempotents.
    pub fn unit_sum(field: Field, vertices: impl IntoIterator<Item = VertexId>) -> Self {
        let mut x = Element::zero();
        for v in vertices {
            add_term(&mut x.terms, Word::vertex(v), field.one());
        }
        x
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut out = Terms::new();
        for (w, c) in terms {
            add_term(&mut out, w, c);
        }
        Element {
            context: Context::Free,
            terms: out,
        }
    }

    pub(crate) fn from_map(terms: Terms, context: Context) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Element { context, terms }
    }

    pub fn context(&self) -> Context {
        self.context
    }

    pub(crate) fn with_context(mut self, context: Context) -> Self {
        self.context = context;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            context: self.context,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Product in the free algebra: concatenation where composable, zero otherwise.
    pub fn mul_free(&self, rhs: &Element) -> Element {
        let mut out = Terms::new();
        for (u, x) in &self.terms {
            for (w, y) in &rhs.terms {
                if let Some(uw) = u.compose(w) {
                    add_term(&mut out, uw, x * y);
                }
            }
        }
        Element {
            context: Context::Free,
            terms: out,
        }
    }

    /// Vertex sets `(J_L, J_R)` with `(Σ_{J_L} e_j)·x = x = x·(Σ_{J_R} e_j)`.
    pub fn local_units(&self) -> (BTreeSet<VertexId>, BTreeSet<VertexId>) {
        let left = self.terms.keys().map(Word::target).collect();
        let right = self.terms.keys().map(Word::source).collect();
        (left, right)
    }

    /// Homogeneous components by degree (#real − #ghost letters).
    pub fn degree_split(&self) -> BTreeMap<i64, Element> {
        let mut parts: BTreeMap<i64, Element> = BTreeMap::new();
        for (w, c) in &self.terms {
            let part = parts.entry(w.degree()).or_insert_with(|| Element {
                context: self.context,
                terms: Terms::new(),
            });
            part.terms.insert(w.clone(), c.clone());
        }
        parts
    }

    /// True when no term contains a ghost letter.
    pub fn is_path_element(&self) -> bool {
        self.terms.keys().all(Word::is_path)
    }

    /// `e_j · self · e_i` restricted to the given endpoints.
    pub fn corner(&self, target: VertexId, source: VertexId) -> Element {
        Element {
            context: self.context,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.target() == target && w.source() == source)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }
}

fn combine(context: Context, other: Context) -> Context {
    if context == Context::Normal && other == Context::Normal {
        Context::Normal
    } else {
        Context::Free
    }
}

impl Add for &Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        let mut terms = self.terms.clone();
        for (w, c) in &rhs.terms {
            add_term(&mut terms, w.clone(), c.clone());
        }
        Element {
            context: combine(self.context, rhs.context),
            terms,
        }
    }
}

impl Sub for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        let mut terms = self.terms.clone();
        for (w, c) in &rhs.terms {
            add_term(&mut terms, w.clone(), -c);
        }
        Element {
            context: combine(self.context, rhs.context),
            terms,
        }
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        Element {
            context: self.context,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

/// An algebra presented as the free path algebra of the double quiver
/// modulo some reduction to canonical form.
pub trait Algebra {
    fn quiver(&self) -> &Quiver;

    fn field(&self) -> Field;

    /// Adds the canonical form of `coef · word` into `out`.
    fn reduce_into(&self, word: Word, coef: Scalar, out: &mut Terms) -> Result<()>;

    /// Context tag carried by reduced elements.
    fn reduced_context(&self) -> Context;

    fn reduce(&self, x: Element) -> Result<Element> {
        let mut out = Terms::new();
        for (w, c) in x.terms {
            self.reduce_into(w, c, &mut out)?;
        }
        Ok(Element::from_map(out, self.reduced_context()))
    }

    fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        let mut out = Terms::new();
        for (u, a) in &x.terms {
            for (w, b) in &y.terms {
                if let Some(uw) = u.compose(w) {
                    self.reduce_into(uw, a * b, &mut out)?;
                }
            }
        }
        Ok(Element::from_map(out, self.reduced_context()))
    }

    fn one_at(&self, v: VertexId) -> Element {
        Element::vertex(self.field(), v).with_context(self.reduced_context())
    }
}

/// The free path algebra `kQ̄` (and its subalgebra `kQ`): no relations.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    quiver: Quiver,
    field: Field,
}

impl FreeAlgebra {
    pub fn new(quiver: Quiver, field: Field) -> Self {
        FreeAlgebra { quiver, field }
    }

    /// All paths of `Q` (no ghost letters) of length at most `max_len`, in canonical order.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Word> {
        let q = &self.quiver;
        let mut layer: Vec<Word> = q.vertex_ids().map(Word::vertex).collect();
        let mut all = layer.clone();
        for _ in 0..max_len {
            let next: Vec<Word> = layer
                .iter()
                .flat_map(|p| {
                    q.outgoing(p.target())
                        .iter()
                        .map(|&a| Word::arrow(q, a).compose(p).expect("outgoing arrow composes"))
                        .collect::<Vec<_>>()
                })
                .collect();
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all.sort();
        all
    }
}

impl Algebra for FreeAlgebra {
    fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    fn field(&self) -> Field {
        self.field
    }

    fn reduce_into(&self, word: Word, coef: Scalar, out: &mut Terms) -> Result<()> {
        add_term(out, word, coef);
        Ok(())
    }

    fn reduced_context(&self) -> Context {
        Context::Free
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::families;

    fn setup() -> (Quiver, Field) {
        (families::linear(2), Field::Rational)
    }

    #[test]
    fn orthogonal_idempotents() {
        let (q, f) = setup();
        let (v1, v2) = (q.vertex_id("v1").unwrap(), q.vertex_id("v2").unwrap());
        let e1 = Element::vertex(f, v1);
        let e2 = Element::vertex(f, v2);
        assert!(e1.mul_free(&e2).is_zero());
        assert_eq!(e1.mul_free(&e1), e1);
    }

    #[test]
    fn units_absorb_arrows() {
        let (q, f) = setup();
        let a = Element::letter(f, &q, Letter::real(q.arrow_id("a").unwrap()));
        let (v1, v2) = (q.vertex_id("v1").unwrap(), q.vertex_id("v2").unwrap());
        assert_eq!(a.mul_free(&Element::vertex(f, v1)), a);
        assert_eq!(Element::vertex(f, v2).mul_free(&a), a);
        assert!(Element::vertex(f, v1).mul_free(&a).is_zero());
    }

    #[test]
    fn local_unit_supports() {
        let (q, f) = setup();
        let (v1, v2) = (q.vertex_id("v1").unwrap(), q.vertex_id("v2").unwrap());
        let a = Element::letter(f, &q, Letter::real(q.arrow_id("a").unwrap()));
        assert_eq!(a.local_units(), ([v2].into(), [v1].into()));
        let x = &a + &Element::vertex(f, v1);
        assert_eq!(x.local_units(), ([v1, v2].into(), [v1].into()));
        let e = Element::vertex(f, v1);
        assert_eq!(e.local_units(), ([v1].into(), [v1].into()));
    }

    #[test]
    fn bilinear_free_product() {
        let q = families::rose(2);
        let f = Field::Rational;
        let (a, b) = (q.arrow_id("a").unwrap(), q.arrow_id("b").unwrap());
        let ea = Element::letter(f, &q, Letter::real(a));
        let eb = Element::letter(f, &q, Letter::real(b));
        let ga = Element::letter(f, &q, Letter::ghost(a));
        let lhs = (&ea + &eb).mul_free(&ga);
        let rhs = &ea.mul_free(&ga) + &eb.mul_free(&ga);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.len(), 2);
    }

    #[test]
    fn degree_split_examples() {
        let q = families::rose(2);
        let f = Field::Rational;
        let (a, b) = (q.arrow_id("a").unwrap(), q.arrow_id("b").unwrap());
        let ea = Element::letter(f, &q, Letter::real(a));
        let ga = Element::letter(f, &q, Letter::ghost(a));
        let eb = Element::letter(f, &q, Letter::real(b));
        let parts = (&ea + &ga).degree_split();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&1], ea);
        assert_eq!(parts[&-1], ga);
        let e = Element::vertex(f, VertexId(0));
        assert_eq!(e.degree_split()[&0], e);
        let x = ga.mul_free(&eb);
        assert_eq!(x.degree_split().keys().copied().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn paths_of_a3() {
        let alg = FreeAlgebra::new(families::linear(3), Field::Rational);
        assert_eq!(alg.paths_up_to(5).len(), 6);
        let loops = FreeAlgebra::new(families::loop_quiver(), Field::Rational);
        assert_eq!(loops.paths_up_to(4).len(), 5);
    }
}
