//! Derivations given by their values on letters and extended by the
//! Leibniz rule.
//!
//! Values live in a tensor space of some arity (arity 1 is the algebra
//! itself). Vertices always map to zero, so every derivation here is an
//! `S`-derivation. A set of letter values defines a derivation of the free
//! algebra; it descends to the Leavitt algebra exactly when it kills every
//! Cuntz-Krieger relation, which [`Derivation::certify`] checks.

use std::collections::BTreeMap;

use crate::element::{Algebra, Context, Element};
use crate::error::{Error, Result};
use crate::leavitt::{LeavittAlgebra, RelationSet};
use crate::quiver::{Letter, Quiver, VertexId};
use crate::tensor::TensorElement;
use crate::text::{print_element, print_tensor};
use crate::word::Word;

/// Letter values of an `S`-derivation into a tensor space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorValues {
    arity: usize,
    values: BTreeMap<Letter, TensorElement>,
}

impl GeneratorValues {
    pub fn zero(arity: usize) -> Self {
        GeneratorValues {
            arity,
            values: BTreeMap::new(),
        }
    }

    /// Checks that each value lies in `e_t(ℓ) · M · e_s(ℓ)`.
    pub fn new(q: &Quiver, arity: usize, values: impl IntoIterator<Item = (Letter, TensorElement)>) -> Result<Self> {
        let mut out = Self::zero(arity);
        for (l, v) in values {
            v.expect_arity(arity)?;
            for (key, _) in v.terms() {
                let (first, last) = (&key[0], &key[key.len() - 1]);
                if first.target() != q.letter_target(l) || last.source() != q.letter_source(l) {
                    return Err(Error::SupportViolation {
                        word: print_tensor(q, &v),
                        position: format!("letter {}", letter_name(q, l)),
                    });
                }
            }
            if !v.is_zero() {
                out.values.insert(l, v);
            }
        }
        Ok(out)
    }

    /// `α ↦ α ⊗ e_s(α)`, `α* ↦ −e_s(α) ⊗ α*`.
    pub fn derivation_d<A: Algebra + ?Sized>(alg: &A) -> Self {
        derivation_d_values(alg)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, l: Letter) -> TensorElement {
        self.values
            .get(&l)
            .cloned()
            .unwrap_or_else(|| TensorElement::zero(self.arity))
    }

    /// Leibniz extension to an element of the free algebra. Normal-form
    /// (Leavitt) elements need a certified [`Derivation`] instead.
    pub fn leibniz_extend<A: Algebra + ?Sized>(&self, alg: &A, x: &Element) -> Result<TensorElement> {
        if x.context() == Context::Normal {
            return Err(Error::UncertifiedDescent);
        }
        self.extend_unchecked(alg, x)
    }

    fn extend_unchecked<A: Algebra + ?Sized>(&self, alg: &A, x: &Element) -> Result<TensorElement> {
        let q = alg.quiver();
        let field = alg.field();
        let mut acc = TensorElement::zero(self.arity);
        for (w, c) in x.terms() {
            for (j, &l) in w.letters().iter().enumerate() {
                let Some(v) = self.values.get(&l) else {
                    continue;
                };
                // written: prefix · v(ℓ_j) · suffix, suffix applied first
                let suffix = w.slice(q, 0..j, w.source());
                let prefix = w.slice(q, j + 1..w.len(), q.letter_target(l));
                let term = TensorElement::act(
                    alg,
                    &Element::monomial(prefix, c.clone()),
                    v,
                    &Element::word(field, suffix),
                )?;
                acc = acc.add(&term);
            }
        }
        Ok(acc)
    }
}

fn derivation_d_values<A: Algebra + ?Sized>(alg: &A) -> GeneratorValues {
    let q = alg.quiver();
    let f = alg.field();
    let mut values = BTreeMap::new();
    for a in q.arrow_ids() {
        let s = Word::vertex(q.arrow(a).source);
        let real = Letter::real(a);
        let ghost = Letter::ghost(a);
        values.insert(
            real,
            TensorElement::simple(vec![Word::letter(q, real), s.clone()], f.one()),
        );
        values.insert(ghost, TensorElement::simple(vec![s, Word::letter(q, ghost)], -&f.one()));
    }
    GeneratorValues { arity: 2, values }
}

fn letter_name(q: &Quiver, l: Letter) -> String {
    let name = &q.arrow(l.arrow).name;
    if l.ghost {
        format!("{name}'")
    } else {
        name.clone()
    }
}

/// A relation the Leibniz extension fails to kill.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub relation: String,
    pub value: String,
}

/// Evaluates the Leibniz extension on every relation; empty means all killed.
pub fn check_descends(
    alg: &LeavittAlgebra,
    values: &GeneratorValues,
    relations: &RelationSet,
) -> Result<Vec<Violation>> {
    let q = alg.quiver();
    let mut out = Vec::new();
    for r in relations.iter() {
        let v = values.extend_unchecked(alg, &r.element)?;
        if !v.is_zero() {
            out.push(Violation {
                relation: format!("{} = {}", r.describe(q), print_element(q, &r.element)),
                value: print_tensor(q, &v),
            });
        }
    }
    Ok(out)
}

/// Why a derivation is known to descend to the Leavitt algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Every relation was evaluated and found to vanish.
    RelationsKilled { checked: usize },
    /// The derivation is a bimodule map composed with a certified derivation.
    FactorsThroughD,
}

/// A derivation of the Leavitt algebra.
#[derive(Clone, Debug)]
pub struct Derivation {
    values: GeneratorValues,
    certificate: Certificate,
}

impl Derivation {
    pub fn certify(alg: &LeavittAlgebra, values: GeneratorValues) -> Result<Self> {
        let relations = alg.relations();
        let violations = check_descends(alg, &values, &relations)?;
        if !violations.is_empty() {
            return Err(Error::RelationsNotKilled(
                violations
                    .into_iter()
                    .map(|v| format!("{} ↦ {}", v.relation, v.value))
                    .collect(),
            ));
        }
        Ok(Derivation {
            values,
            certificate: Certificate::RelationsKilled {
                checked: relations.len(),
            },
        })
    }

    /// The derivation `D` into `L ⊗_S L`.
    pub fn derivation_d(alg: &LeavittAlgebra) -> Result<Self> {
        Self::certify(alg, GeneratorValues::derivation_d(alg))
    }

    pub fn values(&self) -> &GeneratorValues {
        &self.values
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    /// Evaluates on the normal form of `x`.
    pub fn eval(&self, alg: &LeavittAlgebra, x: &Element) -> Result<TensorElement> {
        let x = alg.normal_form(x)?.with_context(Context::Free);
        self.values.extend_unchecked(alg, &x)
    }
}

/// `D(x)`, landing in `P = ⊕_{i regular} L e_i ⊗ e_i L`.
pub fn derivation_d(alg: &LeavittAlgebra, x: &Element) -> Result<TensorElement> {
    let x = alg.normal_form(x)?.with_context(Context::Free);
    GeneratorValues::derivation_d(alg)
        .extend_unchecked(alg, &x)?
        .p_project(alg.quiver(), true)
}

/// The universal derivation `Δ(a) = a ⊗ e_i − e_j ⊗ a` for `a ∈ e_j L e_i`.
pub fn universal_delta<A: Algebra + ?Sized>(alg: &A, x: &Element) -> Result<TensorElement> {
    let x = alg.reduce(x.clone())?;
    let mut acc = TensorElement::zero(2);
    for (w, c) in x.terms() {
        let right = TensorElement::simple(vec![w.clone(), Word::vertex(w.source())], c.clone());
        let left = TensorElement::simple(vec![Word::vertex(w.target()), w.clone()], c.clone());
        acc = acc.add(&right).add(&left.neg());
    }
    Ok(acc)
}

/// Components `c(i) ∈ e_i M e_i` of a bimodule map `f: P → M`,
/// `f(e_i ⊗ e_i) = c(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    arity: usize,
    values: BTreeMap<VertexId, TensorElement>,
}

impl Components {
    pub fn new(q: &Quiver, arity: usize, values: impl IntoIterator<Item = (VertexId, TensorElement)>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (v, c) in values {
            c.expect_arity(arity)?;
            if !q.is_regular(v) {
                return Err(Error::NotRegular(q.vertex_name(v).to_owned()));
            }
            for (key, _) in c.terms() {
                if key[0].target() != v || key[key.len() - 1].source() != v {
                    return Err(Error::SupportViolation {
                        word: print_tensor(q, &c),
                        position: format!("e({0}) M e({0})", q.vertex_name(v)),
                    });
                }
            }
            if !c.is_zero() {
                out.insert(v, c);
            }
        }
        Ok(Components { arity, values: out })
    }

    /// Components valued in the algebra itself.
    pub fn in_algebra(q: &Quiver, values: impl IntoIterator<Item = (VertexId, Element)>) -> Result<Self> {
        Self::new(
            q,
            1,
            values.into_iter().map(|(v, x)| (v, TensorElement::from_element(&x))),
        )
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, v: VertexId) -> TensorElement {
        self.values
            .get(&v)
            .cloned()
            .unwrap_or_else(|| TensorElement::zero(self.arity))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &TensorElement)> {
        self.values.iter()
    }

    /// `f(x ⊗ y) = x · c(i) · y` on an element of `P`.
    pub fn apply(&self, alg: &LeavittAlgebra, p: &TensorElement) -> Result<TensorElement> {
        p.expect_arity(2)?;
        let field = alg.field();
        let mut acc = TensorElement::zero(self.arity);
        for (key, c) in p.terms() {
            let i = key[0].source();
            let Some(ci) = self.values.get(&i) else {
                continue;
            };
            let term = TensorElement::act(
                alg,
                &Element::monomial(key[0].clone(), c.clone()),
                ci,
                &Element::word(field, key[1].clone()),
            )?;
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

/// The derivation `f ∘ D` for the bimodule map `f` with the given components.
pub fn derivation_from_components(alg: &LeavittAlgebra, c: &Components) -> Result<Derivation> {
    let q = alg.quiver();
    let field = alg.field();
    let mut values = Vec::new();
    for a in q.arrow_ids() {
        let s = q.arrow(a).source;
        let ci = c.get(s);
        let real = Letter::real(a);
        let ghost = Letter::ghost(a);
        let one = Element::vertex(field, s);
        let d_real = TensorElement::act(alg, &Element::letter(field, q, real), &ci, &one)?;
        let d_ghost = TensorElement::act(alg, &one, &ci, &Element::letter(field, q, ghost))?.neg();
        values.push((real, d_real));
        values.push((ghost, d_ghost));
    }
    Ok(Derivation {
        values: GeneratorValues::new(q, c.arity(), values)?,
        certificate: Certificate::FactorsThroughD,
    })
}
