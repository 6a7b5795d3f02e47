//! Seeded random elements and tensors in normal form.

use std::collections::BTreeMap;

use rand::Rng;

use crate::element::{Algebra, Context, Element};
use crate::linalg::{Field, Scalar};
use crate::quiver::{Quiver, VertexId};
use crate::tensor::TensorElement;
use crate::word::Word;

/// Draws random combinations of normal monomials up to a length bound.
#[derive(Clone, Debug)]
pub struct Sampler {
    field: Field,
    monomials: Vec<Word>,
    by_target: BTreeMap<VertexId, Vec<usize>>,
    regular_source: Vec<usize>,
}

impl Sampler {
    pub fn new<A: Algebra + ?Sized>(alg: &A, monomials: Vec<Word>) -> Self {
        let q: &Quiver = alg.quiver();
        let mut by_target: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
        for (i, w) in monomials.iter().enumerate() {
            by_target.entry(w.target()).or_default().push(i);
        }
        let regular_source = (0..monomials.len())
            .filter(|&i| q.is_regular(monomials[i].source()))
            .collect();
        Sampler {
            field: alg.field(),
            monomials,
            by_target,
            regular_source,
        }
    }

    fn coef<R: Rng>(&self, rng: &mut R) -> Scalar {
        let mut c = rng.random_range(-3i64..=2);
        if c >= 0 {
            c += 1;
        }
        self.field.from_i64(c)
    }

    pub fn element<R: Rng>(&self, rng: &mut R, max_terms: usize) -> Element {
        let n = rng.random_range(1..=max_terms);
        let terms = (0..n).map(|_| {
            let w = self.monomials[rng.random_range(0..self.monomials.len())].clone();
            (w, self.coef(rng))
        });
        Element::from_terms(terms.collect::<Vec<_>>()).with_context(Context::Normal)
    }

    fn chain<R: Rng>(&self, rng: &mut R, first: usize, arity: usize) -> Vec<Word> {
        let mut key = vec![self.monomials[first].clone()];
        while key.len() < arity {
            let v = key.last().unwrap().source();
            let options = &self.by_target[&v];
            key.push(self.monomials[options[rng.random_range(0..options.len())]].clone());
        }
        key
    }

    /// Random glued tensor of the given arity.
    pub fn tensor<R: Rng>(&self, rng: &mut R, arity: usize, max_terms: usize) -> TensorElement {
        let n = rng.random_range(1..=max_terms);
        let mut t = TensorElement::zero(arity);
        for _ in 0..n {
            let first = rng.random_range(0..self.monomials.len());
            let key = self.chain(rng, first, arity);
            t = t.add(&TensorElement::simple(key, self.coef(rng)));
        }
        t
    }

    /// Random element of `P`: pairs glued at regular vertices. Zero when
    /// the quiver has no regular vertex.
    pub fn p_element<R: Rng>(&self, rng: &mut R, max_terms: usize) -> TensorElement {
        let mut t = TensorElement::zero(2);
        if self.regular_source.is_empty() {
            return t;
        }
        let n = rng.random_range(1..=max_terms);
        for _ in 0..n {
            let first = self.regular_source[rng.random_range(0..self.regular_source.len())];
            let key = self.chain(rng, first, 2);
            t = t.add(&TensorElement::simple(key, self.coef(rng)));
        }
        t
    }
}
