//! Reference implementations used as test oracles. They share no code
//! with the library's rewriting engine.
#![allow(dead_code)]

use std::collections::BTreeMap;

use leavitt_core::{Element, Field, Letter, Quiver, Scalar, VertexId, Word};
use rand::Rng;

/// Normal form computed by rewriting a uniformly random redex at every step,
/// with the rules restated from the Cuntz-Krieger relations.
pub fn randomized_normal_form<R: Rng>(q: &Quiver, x: &Element, rng: &mut R) -> Element {
    let mut pending: Vec<(Word, Scalar)> = x.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    let mut done: Vec<(Word, Scalar)> = Vec::new();
    while !pending.is_empty() {
        let (w, c) = pending.swap_remove(rng.random_range(0..pending.len()));
        let letters = w.letters();
        let redexes: Vec<usize> = (0..letters.len().saturating_sub(1))
            .filter(|&i| is_redex(q, letters[i], letters[i + 1]))
            .collect();
        if redexes.is_empty() {
            done.push((w, c));
            continue;
        }
        let i = redexes[rng.random_range(0..redexes.len())];
        let (first, second) = (letters[i], letters[i + 1]);
        let at = q.letter_source(first);
        let splice = |middle: &[Letter]| -> Word {
            let mut v = letters[..i].to_vec();
            v.extend_from_slice(middle);
            v.extend_from_slice(&letters[i + 2..]);
            if v.is_empty() {
                Word::vertex(at)
            } else {
                Word::from_letters(q, v).expect("rewrite keeps words composable")
            }
        };
        if first.ghost {
            // apply β* then α: α β* = δ(α, β) e
            if first.arrow == second.arrow {
                pending.push((splice(&[]), c));
            }
        } else {
            // apply γ then γ*: γ* γ = e − Σ_{α ≠ γ} α* α
            pending.push((splice(&[]), c.clone()));
            for &a in q.outgoing(at) {
                if a != first.arrow {
                    pending.push((splice(&[Letter::real(a), Letter::ghost(a)]), -&c));
                }
            }
        }
    }
    Element::from_terms(done)
}

fn is_redex(q: &Quiver, first: Letter, second: Letter) -> bool {
    match (first.ghost, second.ghost) {
        (true, false) => true,
        (false, true) => first.arrow == second.arrow && q.special(q.arrow(first.arrow).source) == Some(first.arrow),
        _ => false,
    }
}

/// The representation of the Leavitt algebra of an acyclic quiver on the
/// span of paths ending at sinks: `α` sends `pα` to `p`, `α*` sends `p` to
/// `pα`, `e_v` fixes paths starting at `v`. It is faithful, so two
/// elements are equal exactly when their images agree.
pub struct PathRepresentation {
    field: Field,
    /// Paths ending at a sink, as arrow lists in application order.
    paths: Vec<(VertexId, Vec<u32>)>,
    index: BTreeMap<(VertexId, Vec<u32>), usize>,
}

pub type SparseMatrix = BTreeMap<(usize, usize), Scalar>;

impl PathRepresentation {
    pub fn new(q: &Quiver, field: Field) -> Self {
        assert!(q.is_acyclic());
        let mut paths = Vec::new();
        let mut stack: Vec<(VertexId, Vec<u32>, VertexId)> = q.vertex_ids().map(|v| (v, vec![], v)).collect();
        while let Some((start, p, end)) = stack.pop() {
            if q.outgoing(end).is_empty() {
                paths.push((start, p.clone()));
            }
            for &a in q.outgoing(end) {
                let mut p2 = p.clone();
                p2.push(a.0);
                stack.push((start, p2, q.arrow(a).target));
            }
        }
        paths.sort();
        let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        PathRepresentation { field, paths, index }
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    /// Partial map on path indices for one letter.
    fn letter_map(&self, q: &Quiver, l: Letter) -> BTreeMap<usize, usize> {
        let a = l.arrow;
        let mut out = BTreeMap::new();
        for (i, (start, p)) in self.paths.iter().enumerate() {
            if *start != q.arrow(a).target {
                continue;
            }
            let mut longer = vec![a.0];
            longer.extend_from_slice(p);
            let j = self.index[&(q.arrow(a).source, longer)];
            // α: basis vector of αp goes to p; α*: p goes to αp
            if l.ghost {
                out.insert(i, j);
            } else {
                out.insert(j, i);
            }
        }
        out
    }

    pub fn image(&self, q: &Quiver, x: &Element) -> SparseMatrix {
        let mut out = SparseMatrix::new();
        for (w, c) in x.terms() {
            // start from e_{s(w)}
            let mut map: BTreeMap<usize, usize> = self
                .paths
                .iter()
                .enumerate()
                .filter(|(_, (s, _))| *s == w.source())
                .map(|(i, _)| (i, i))
                .collect();
            for &l in w.letters() {
                let lm = self.letter_map(q, l);
                map = map
                    .into_iter()
                    .filter_map(|(col, row)| lm.get(&row).map(|&r| (col, r)))
                    .collect();
            }
            for (col, row) in map {
                let e = out.entry((row, col)).or_insert_with(|| self.field.zero());
                *e = &*e + c;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}
