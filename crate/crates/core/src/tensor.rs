//! Tensor powers of an algebra over its ring of local units `S`.
//!
//! A simple tensor is stored fully expanded as a tuple of monomials in
//! written order, `u_0 ⊗ u_1 ⊗ ... ⊗ u_{n-1}`, glued over `S`: the source of
//! `u_j` equals the target of `u_{j+1}`. Since `A ⊗_S A = ⊕_i A e_i ⊗_k e_i A`,
//! unglued tuples are zero and glued tuples of basis monomials form a basis.
//! Arity 1 is the algebra itself.

use std::collections::BTreeMap;

use crate::element::{Algebra, Element, Terms};
use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::quiver::{Quiver, VertexId};
use crate::word::Word;

pub(crate) type TensorTerms = BTreeMap<Vec<Word>, Scalar>;

fn add_tensor_term(terms: &mut TensorTerms, key: Vec<Word>, coef: Scalar) {
    if coef.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(key) {
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

/// True when consecutive factors meet at a common vertex.
pub fn is_glued(factors: &[Word]) -> bool {
    factors.windows(2).all(|w| w[0].source() == w[1].target())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    arity: usize,
    terms: TensorTerms,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1);
        TensorElement {
            arity,
            terms: TensorTerms::new(),
        }
    }

    /// `coef · (u_0 ⊗ ... ⊗ u_{n-1})`; zero when the factors are not glued.
    /// Factors are taken as given and must already be canonical monomials.
    pub fn simple(factors: Vec<Word>, coef: Scalar) -> Self {
        let mut t = Self::zero(factors.len());
        if is_glued(&factors) {
            add_tensor_term(&mut t.terms, factors, coef);
        }
        t
    }

    /// `e_v ⊗ e_v`.
    pub fn unit_pair<A: Algebra + ?Sized>(alg: &A, v: VertexId) -> Self {
        Self::simple(vec![Word::vertex(v), Word::vertex(v)], alg.field().one())
    }

    /// Canonical form of `x_0 ⊗ ... ⊗ x_{n-1}`: each factor reduced,
    /// expanded over monomials, unglued pieces dropped.
    pub fn from_factors<A: Algebra + ?Sized>(alg: &A, factors: &[Element]) -> Result<Self> {
        assert!(!factors.is_empty());
        let mut acc: Vec<(Vec<Word>, Scalar)> = vec![(Vec::new(), alg.field().one())];
        for x in factors {
            let x = alg.reduce(x.clone())?;
            let mut next = Vec::new();
            for (key, c) in &acc {
                for (w, d) in x.terms() {
                    if key.last().is_some_and(|prev: &Word| prev.source() != w.target()) {
                        continue;
                    }
                    let mut k = key.clone();
                    k.push(w.clone());
                    next.push((k, c * d));
                }
            }
            acc = next;
        }
        let mut t = Self::zero(factors.len());
        for (k, c) in acc {
            add_tensor_term(&mut t.terms, k, c);
        }
        Ok(t)
    }

    pub fn from_element(x: &Element) -> Self {
        let mut t = Self::zero(1);
        for (w, c) in x.terms() {
            add_tensor_term(&mut t.terms, vec![w.clone()], c.clone());
        }
        t
    }

    /// The underlying element of an arity-1 tensor.
    pub fn to_element(&self) -> Result<Element> {
        self.expect_arity(1)?;
        Ok(Element::from_terms(
            self.terms.iter().map(|(k, c)| (k[0].clone(), c.clone())),
        ))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn expect_arity(&self, n: usize) -> Result<()> {
        if self.arity == n {
            Ok(())
        } else {
            Err(Error::ArityMismatch {
                expected: n,
                found: self.arity,
            })
        }
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &[Word]) -> Option<&Scalar> {
        self.terms.get(key)
    }

    /// Longest total word length over all terms.
    pub fn max_len(&self) -> usize {
        self.terms
            .keys()
            .map(|k| k.iter().map(Word::len).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity, "adding tensors of different arity");
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            add_tensor_term(&mut terms, k.clone(), c.clone());
        }
        TensorElement {
            arity: self.arity,
            terms,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TensorElement {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut terms = TensorTerms::new();
        for (k, x) in &self.terms {
            add_tensor_term(&mut terms, k.clone(), x * c);
        }
        TensorElement {
            arity: self.arity,
            terms,
        }
    }

    /// `l · t · r`: acts on the outermost factors and renormalizes.
    pub fn act<A: Algebra + ?Sized>(alg: &A, l: &Element, t: &Self, r: &Element) -> Result<Self> {
        let left = t.map_factor(0, |w, out| {
            for (u, c) in l.terms() {
                if let Some(uw) = u.compose(w) {
                    alg.reduce_into(uw, c.clone(), out)?;
                }
            }
            Ok(())
        })?;
        left.map_factor(t.arity - 1, |w, out| {
            for (u, c) in r.terms() {
                if let Some(wu) = w.compose(u) {
                    alg.reduce_into(wu, c.clone(), out)?;
                }
            }
            Ok(())
        })
    }

    /// Replaces factor `idx` of every term by the expansion `f` produces.
    pub(crate) fn map_factor<F>(&self, idx: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&Word, &mut Terms) -> Result<()>,
    {
        let mut out = TensorTerms::new();
        for (key, c) in &self.terms {
            let mut expansion = Terms::new();
            f(&key[idx], &mut expansion)?;
            for (w, d) in expansion {
                let mut k = key.clone();
                k[idx] = w;
                if is_glued(&k) {
                    add_tensor_term(&mut out, k, c * &d);
                }
            }
        }
        Ok(TensorElement {
            arity: self.arity,
            terms: out,
        })
    }

    /// Multiplies factors `j` and `j + 1` together, lowering the arity by one.
    pub fn contract<A: Algebra + ?Sized>(&self, alg: &A, j: usize) -> Result<Self> {
        assert!(j + 1 < self.arity);
        let mut out = TensorTerms::new();
        for (key, c) in &self.terms {
            let w = key[j].compose(&key[j + 1]).expect("glued factors compose");
            let mut expansion = Terms::new();
            alg.reduce_into(w, c.clone(), &mut expansion)?;
            for (w, d) in expansion {
                let mut k = Vec::with_capacity(key.len() - 1);
                k.extend_from_slice(&key[..j]);
                k.push(w);
                k.extend_from_slice(&key[j + 2..]);
                add_tensor_term(&mut out, k, d);
            }
        }
        Ok(TensorElement {
            arity: self.arity - 1,
            terms: out,
        })
    }

    /// The multiplication map `m: A ⊗_S A → A`.
    pub fn mult_map<A: Algebra + ?Sized>(&self, alg: &A) -> Result<Element> {
        self.expect_arity(2)?;
        self.contract(alg, 0)?.to_element()
    }

    /// Component glued at regular vertices. In strict mode a nonzero
    /// component at a sink is an error.
    pub fn p_project(&self, q: &Quiver, strict: bool) -> Result<Self> {
        self.expect_arity(2)?;
        let mut out = TensorTerms::new();
        for (k, c) in &self.terms {
            let v = k[0].source();
            if q.is_regular(v) {
                out.insert(k.clone(), c.clone());
            } else if strict {
                return Err(Error::NonRegularGluing {
                    vertex: q.vertex_name(v).to_owned(),
                });
            }
        }
        Ok(TensorElement { arity: 2, terms: out })
    }

    /// Concatenation `self ⊗ other`, glued over `S`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = TensorTerms::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                if k1.last().unwrap().source() != k2[0].target() {
                    continue;
                }
                let mut k = k1.clone();
                k.extend(k2.iter().cloned());
                add_tensor_term(&mut out, k, c1 * c2);
            }
        }
        TensorElement {
            arity: self.arity + other.arity,
            terms: out,
        }
    }
}

/// Glued monomial pairs `u ⊗ w` (`s(u) = t(w)`) with `|u| + |w| ≤ max_len`,
/// optionally only those glued at regular vertices. Canonical order.
pub fn pair_basis(q: &Quiver, monomials: &[Word], max_len: usize, regular_only: bool) -> Vec<Vec<Word>> {
    let mut by_target: BTreeMap<VertexId, Vec<&Word>> = BTreeMap::new();
    for w in monomials {
        by_target.entry(w.target()).or_default().push(w);
    }
    let mut out = Vec::new();
    for u in monomials {
        let v = u.source();
        if regular_only && !q.is_regular(v) {
            continue;
        }
        for w in by_target.get(&v).into_iter().flatten() {
            if u.len() + w.len() <= max_len {
                out.push(vec![u.clone(), (*w).clone()]);
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leavitt::LeavittAlgebra;
    use crate::linalg::Field;
    use crate::quiver::families;
    use crate::text::parse_expr;

    fn setup(q: Quiver) -> LeavittAlgebra {
        LeavittAlgebra::new(q, Field::Rational)
    }

    fn ex(l: &LeavittAlgebra, s: &str) -> Element {
        parse_expr(s, l.quiver(), l.field()).unwrap()
    }

    fn t2(l: &LeavittAlgebra, x: &str, y: &str) -> TensorElement {
        TensorElement::from_factors(l, &[ex(l, x), ex(l, y)]).unwrap()
    }

    #[test]
    fn canonicalize_drops_unglued_pieces() {
        let l = setup(families::linear(2));
        assert!(t2(&l, "a", "0").is_zero());
        assert!(t2(&l, "e(v1)", "e(v2)").is_zero());
        let t = t2(&l, "a + e(v1)", "a'");
        assert_eq!(t.len(), 2);
        assert_eq!(t, t2(&l, "a", "a'").add(&t2(&l, "e(v1)", "a'")));
    }

    #[test]
    fn bimodule_action() {
        let l = setup(families::linear(2));
        let t = t2(&l, "e(v1)", "e(v1)");
        let got = TensorElement::act(&l, &ex(&l, "a"), &t, &ex(&l, "e(v1)")).unwrap();
        assert_eq!(got, t2(&l, "a", "e(v1)"));
        // units act trivially
        let units = ex(&l, "e(v1) + e(v2)");
        let x = t2(&l, "a + e(v1)", "a' + e(v1)");
        assert_eq!(TensorElement::act(&l, &units, &x, &units).unwrap(), x);

        let r = setup(families::rose(2));
        let t = t2(&r, "a", "e(v)");
        let got = TensorElement::act(&r, &ex(&r, "a'"), &t, &ex(&r, "b")).unwrap();
        let want = t2(&r, "e(v)", "b").sub(&t2(&r, "b' * b", "b"));
        assert_eq!(got, want);
    }

    #[test]
    fn multiplication_map() {
        let l = setup(families::linear(2));
        assert_eq!(t2(&l, "e(v1)", "e(v1)").mult_map(&l).unwrap(), ex(&l, "e(v1)"));
        assert_eq!(t2(&l, "a", "e(v1)").mult_map(&l).unwrap(), ex(&l, "a"));
        let partial = t2(&l, "e(v1)", "e(v1)").sub(&t2(&l, "a'", "a"));
        assert!(partial.mult_map(&l).unwrap().is_zero());
        assert!(matches!(
            TensorElement::from_element(&ex(&l, "a")).mult_map(&l),
            Err(Error::ArityMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn projection_onto_regular_gluings() {
        let l = setup(families::linear(2));
        let q = l.quiver();
        let e11 = t2(&l, "e(v1)", "e(v1)");
        assert_eq!(e11.p_project(q, true).unwrap(), e11);
        let e22 = t2(&l, "e(v2)", "e(v2)");
        assert!(e22.p_project(q, false).unwrap().is_zero());
        assert!(e22.p_project(q, true).is_err());
        let da = t2(&l, "a", "e(v1)");
        assert_eq!(da.p_project(q, true).unwrap(), da);
    }

    #[test]
    fn pair_counts_for_a2() {
        let l = setup(families::linear(2));
        let basis = l.full_basis().unwrap();
        assert_eq!(pair_basis(l.quiver(), &basis, usize::MAX, false).len(), 8);
        assert_eq!(pair_basis(l.quiver(), &basis, usize::MAX, true).len(), 4);
    }
}
