//! Fixtures shared by the benchmarks.

use leavitt_core::{Algebra, Element, Field, LeavittAlgebra, Letter, Quiver, Sampler, VertexId, Word};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rational(q: Quiver) -> LeavittAlgebra {
    LeavittAlgebra::new(q, Field::Rational)
}

/// Seeded normal-form elements built from monomials of length at most `max_len`.
pub fn normal_elements(alg: &LeavittAlgebra, max_len: usize, count: usize, seed: u64) -> Vec<Element> {
    let sampler = Sampler::new(alg, alg.basis_up_to(max_len));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sampler.element(&mut rng, 4)).collect()
}

/// Seeded words of the free algebra, each a random walk of `len` letters;
/// these are mostly far from normal form.
pub fn free_words(alg: &LeavittAlgebra, len: usize, count: usize, seed: u64) -> Vec<Element> {
    let q = alg.quiver();
    let letters = q.double_quiver();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pick = |n: usize| (rng.next_u32() as usize) % n;
    (0..count)
        .map(|_| {
            let mut w = Word::vertex(VertexId(pick(q.vertex_count()) as u32));
            for _ in 0..len {
                let options: Vec<Letter> = letters
                    .iter()
                    .copied()
                    .filter(|&l| q.letter_source(l) == w.target())
                    .collect();
                if options.is_empty() {
                    break;
                }
                w = Word::letter(q, options[pick(options.len())]).compose(&w).unwrap();
            }
            Element::word(alg.field(), w)
        })
        .collect()
}
