//! `HH⁰` (the center) and `HH¹` of a Leavitt algebra.
//!
//! Dualizing `0 → P → L ⊗_S L` gives
//!
//! ```text
//! Φ: ⊕_{i} e_i L e_i → ⊕_{j regular} e_j L e_j,
//!    (m_i) ↦ (m_j − Σ_{s(α) = j} α* m_t(α) α)
//! ```
//!
//! whose kernel is the center and whose cokernel is `HH¹`. A component
//! tuple `m` in the source gives the inner derivation `x ↦ xz − zx` with
//! `z = Σ m_i`, and `Φ(m)` are the components of that derivation.

use std::collections::BTreeMap;

use crate::derivation::{derivation_from_components, Components, Derivation};
use crate::element::{Algebra, Element};
use crate::error::{Error, Result};
use crate::leavitt::LeavittAlgebra;
use crate::linalg::{Matrix, Scalar};
use crate::quiver::{Letter, VertexId};
use crate::word::Word;

/// Length truncation used by the center computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    /// The whole algebra; only for finite-dimensional algebras.
    Full,
    MaxLen(usize),
}

#[derive(Clone, Debug)]
pub struct CenterReport {
    pub bound: Bound,
    /// Basis of the center intersected with the truncation, in reduced
    /// echelon form against the canonical monomial order.
    pub basis: Vec<Element>,
}

impl CenterReport {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn generators(alg: &LeavittAlgebra) -> Vec<Element> {
    let q = alg.quiver();
    let field = alg.field();
    let mut out: Vec<Element> = q.vertex_ids().map(|v| Element::vertex(field, v)).collect();
    for a in q.arrow_ids() {
        out.push(Element::letter(field, q, Letter::real(a)));
        out.push(Element::letter(field, q, Letter::ghost(a)));
    }
    out
}

/// Solves `[z, g] = 0` for every generator `g` over the truncated span.
/// Every solution is central, since the generators generate.
pub fn center(alg: &LeavittAlgebra, bound: Bound) -> Result<CenterReport> {
    let field = alg.field();
    let monomials = match bound {
        Bound::Full => alg.full_basis()?,
        Bound::MaxLen(n) => alg.basis_up_to(n),
    };
    let gens = generators(alg);
    let mut rows: BTreeMap<(usize, Word), usize> = BTreeMap::new();
    let mut cols = Vec::new();
    for w in &monomials {
        let z = Element::word(field, w.clone());
        let mut col: Vec<(usize, Scalar)> = Vec::new();
        for (k, g) in gens.iter().enumerate() {
            let comm = &alg.multiply(&z, g)? - &alg.multiply(g, &z)?;
            for (u, c) in comm.terms() {
                let n = rows.len();
                let r = *rows.entry((k, u.clone())).or_insert(n);
                col.push((r, c.clone()));
            }
        }
        cols.push(col);
    }
    let m = Matrix::from_sparse_columns(field, rows.len(), &cols)?;
    let mut basis: Vec<Element> = m
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let terms = monomials.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero());
            Element::from_terms(terms.collect::<Vec<_>>())
        })
        .collect();
    basis = echelon(alg, &monomials, basis)?;
    Ok(CenterReport { bound, basis })
}

/// Reduced echelon basis of a span, pivots on the earliest monomials.
fn echelon(alg: &LeavittAlgebra, monomials: &[Word], span: Vec<Element>) -> Result<Vec<Element>> {
    let field = alg.field();
    let rows: Vec<Vec<Scalar>> = span
        .iter()
        .map(|x| {
            monomials
                .iter()
                .map(|w| x.coefficient(w).cloned().unwrap_or_else(|| field.zero()))
                .collect()
        })
        .collect();
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let r = Matrix::from_rows(field, rows)?.rref();
    Ok((0..r.rank)
        .map(|i| {
            let terms = monomials
                .iter()
                .enumerate()
                .map(|(j, w)| (w.clone(), r.reduced.get(i, j).clone()))
                .filter(|(_, c)| !c.is_zero());
            Element::from_terms(terms.collect::<Vec<_>>())
        })
        .collect())
}

/// The map `Φ` on full bases.
struct PhiMatrix {
    source: Vec<(VertexId, Word)>,
    target: BTreeMap<(VertexId, Word), usize>,
    target_keys: Vec<(VertexId, Word)>,
    matrix: Matrix,
}

fn phi_matrix(alg: &LeavittAlgebra) -> Result<PhiMatrix> {
    let q = alg.quiver();
    let field = alg.field();
    let basis = alg.full_basis()?;
    let corner = |v: VertexId| basis.iter().filter(move |w| w.source() == v && w.target() == v);
    let source: Vec<(VertexId, Word)> = q
        .vertex_ids()
        .flat_map(|v| corner(v).map(move |w| (v, w.clone())))
        .collect();
    let target_keys: Vec<(VertexId, Word)> = q
        .regular_vertices()
        .into_iter()
        .flat_map(|v| corner(v).map(move |w| (v, w.clone())))
        .collect();
    let target: BTreeMap<(VertexId, Word), usize> =
        target_keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();

    let missing = || Error::DimensionMismatch("Φ leaves its target corner".to_owned());
    let mut cols = Vec::new();
    for (i, w) in &source {
        let mut col = Vec::new();
        if q.is_regular(*i) {
            col.push((target[&(*i, w.clone())], field.one()));
        }
        // m_i contributes −α* m_i α to the component at s(α) for t(α) = i
        for a in q.arrow_ids().filter(|&a| q.arrow(a).target == *i) {
            let j = q.arrow(a).source;
            let conj = Element::word(field, Word::letter(q, Letter::ghost(a)))
                .mul_free(&Element::word(field, w.clone()))
                .mul_free(&Element::word(field, Word::arrow(q, a)));
            for (u, c) in alg.normal_form(&conj)?.terms() {
                let r = *target.get(&(j, u.clone())).ok_or_else(missing)?;
                col.push((r, -c));
            }
        }
        cols.push(col);
    }
    let matrix = Matrix::from_sparse_columns(field, target_keys.len(), &cols)?;
    Ok(PhiMatrix {
        source,
        target,
        target_keys,
        matrix,
    })
}

#[derive(Clone, Debug)]
pub struct Hh1Report {
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    /// Components spanning a complement of `im Φ`.
    pub outer_basis: Vec<Components>,
}

impl Hh1Report {
    pub fn hh1(&self) -> usize {
        self.target_dim - self.rank
    }

    /// `dim ker Φ`, which is the dimension of the center.
    pub fn hh0(&self) -> usize {
        self.source_dim - self.rank
    }
}

/// `HH¹ = coker Φ` for a finite-dimensional algebra; errors on cyclic quivers.
pub fn hh1(alg: &LeavittAlgebra) -> Result<Hh1Report> {
    let q = alg.quiver();
    let field = alg.field();
    let phi = phi_matrix(alg)?;
    let rank = phi.matrix.rank();
    // greedy complement: unit vectors that raise the rank
    let mut outer_basis = Vec::new();
    let mut current = phi.matrix.clone();
    let mut current_rank = rank;
    for (k, (v, w)) in phi.target_keys.iter().enumerate() {
        if current_rank == phi.target_keys.len() {
            break;
        }
        let mut rows: Vec<Vec<Scalar>> = (0..current.rows())
            .map(|r| (0..current.cols()).map(|c| current.get(r, c).clone()).collect())
            .collect();
        for (r, row) in rows.iter_mut().enumerate() {
            row.push(if r == k { field.one() } else { field.zero() });
        }
        let extended = Matrix::from_rows(field, rows)?;
        let extended_rank = extended.rank();
        if extended_rank > current_rank {
            current = extended;
            current_rank = extended_rank;
            outer_basis.push(Components::in_algebra(q, [(*v, Element::word(field, w.clone()))])?);
        }
    }
    Ok(Hh1Report {
        source_dim: phi.source.len(),
        target_dim: phi.target_keys.len(),
        rank,
        outer_basis,
    })
}

#[derive(Clone, Debug)]
pub struct OuterWitness {
    pub derivation: Derivation,
    /// `z` with `d(x) = xz − zx`, when the derivation is inner.
    pub inner: Option<Element>,
}

impl OuterWitness {
    pub fn is_inner(&self) -> bool {
        self.inner.is_some()
    }
}

/// Builds `d = f ∘ D` from algebra-valued components and decides whether it
/// is inner. Finite-dimensional algebras only.
pub fn outer_derivation_witness(alg: &LeavittAlgebra, c: &Components) -> Result<OuterWitness> {
    if c.arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: c.arity(),
        });
    }
    let field = alg.field();
    let derivation = derivation_from_components(alg, c)?;
    let phi = phi_matrix(alg)?;
    let mut b = vec![field.zero(); phi.target_keys.len()];
    for (v, t) in c.iter() {
        let x = alg.normal_form(&t.to_element()?)?;
        for (w, coef) in x.terms() {
            let r = phi
                .target
                .get(&(*v, w.clone()))
                .ok_or_else(|| Error::DimensionMismatch("component outside its corner".to_owned()))?;
            b[*r] = &b[*r] + coef;
        }
    }
    let inner = phi.matrix.solve(&b)?.map(|m| {
        let terms = phi
            .source
            .iter()
            .zip(m)
            .filter(|(_, c)| !c.is_zero())
            .map(|((_, w), c)| (w.clone(), c));
        Element::from_terms(terms.collect::<Vec<_>>())
    });
    Ok(OuterWitness { derivation, inner })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::quiver::families;
    use crate::text::{parse_expr, print_element};

    fn ex(l: &LeavittAlgebra, s: &str) -> Element {
        parse_expr(s, l.quiver(), l.field()).unwrap()
    }

    #[test]
    fn center_of_a2() {
        let l = LeavittAlgebra::new(families::linear(2), Field::Rational);
        let c = center(&l, Bound::Full).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(print_element(l.quiver(), &c.basis[0]), "e(v1) + e(v2)");
    }

    #[test]
    fn center_of_loop_is_everything() {
        let l = LeavittAlgebra::new(families::loop_quiver(), Field::Rational);
        for n in 0..=4 {
            assert_eq!(center(&l, Bound::MaxLen(n)).unwrap().dim(), 2 * n + 1);
        }
        assert!(matches!(center(&l, Bound::Full), Err(Error::CyclicQuiver)));
    }

    #[test]
    fn center_of_rose2_is_scalars() {
        let l = LeavittAlgebra::new(families::rose(2), Field::Rational);
        let c = center(&l, Bound::MaxLen(3)).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(c.basis[0], ex(&l, "e(v)"));
    }

    #[test]
    fn hh1_vanishes_on_a2() {
        let l = LeavittAlgebra::new(families::linear(2), Field::Rational);
        let r = hh1(&l).unwrap();
        assert_eq!((r.source_dim, r.target_dim, r.rank), (2, 1, 1));
        assert_eq!(r.hh1(), 0);
        assert_eq!(r.hh0(), 1);
        assert!(r.outer_basis.is_empty());
    }

    #[test]
    fn a2_component_is_inner() {
        let l = LeavittAlgebra::new(families::linear(2), Field::Rational);
        let q = l.quiver();
        let v1 = q.vertex_id("v1").unwrap();
        let c = Components::in_algebra(q, [(v1, ex(&l, "e(v1)"))]).unwrap();
        let w = outer_derivation_witness(&l, &c).unwrap();
        let z = w.inner.clone().unwrap();
        for g in ["a", "a'", "e(v1)", "e(v2)"] {
            let x = ex(&l, g);
            let ad = &l.multiply(&x, &z).unwrap() - &l.multiply(&z, &x).unwrap();
            let d = w.derivation.eval(&l, &x).unwrap().to_element().unwrap();
            assert!(l.equal(&ad, &d).unwrap(), "generator {g}");
        }
        let zero = Components::in_algebra(q, []).unwrap();
        assert!(outer_derivation_witness(&l, &zero).unwrap().inner.unwrap().is_zero());
    }
}
