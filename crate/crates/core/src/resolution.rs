//! Chain maps of the bimodule resolutions and their verifiers.
//!
//! For the Leavitt algebra `L` with `P = ⊕_{i regular} L e_i ⊗ e_i L`:
//!
//! ```text
//! 0 → P --∂--> L ⊗_S L --m--> L → 0
//! ∂(e_i ⊗ e_i) = e_i ⊗ e_i − Σ_{s(α) = i} α* ⊗ α
//! ι(e_i ⊗ e_i) = Σ_{s(α) = i} α* ⊗ α ⊗ e_i
//! π(a0 ⊗ a1 ⊗ a2) = a0 · D(a1) · a2
//! ```
//!
//! and for the path algebra `kQ` the map `δ(x ⊗ α ⊗ y) = xα ⊗ y − x ⊗ αy`.

use std::collections::BTreeMap;
use std::fmt;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::derivation::{check_descends, derivation_d, universal_delta, GeneratorValues};
use crate::element::{Algebra, Element, FreeAlgebra};
use crate::error::{Error, Result};
use crate::leavitt::LeavittAlgebra;
use crate::linalg::{Field, Matrix, Scalar};
use crate::quiver::{Letter, Quiver, VertexId};
use crate::sample::Sampler;
use crate::tensor::{pair_basis, TensorElement};
use crate::text::{print_element, print_tensor};
use crate::word::Word;

/// `d_n: A^{⊗(n+2)} → A^{⊗(n+1)}`, the alternating sum of adjacent products.
pub fn bar_differential<A: Algebra + ?Sized>(alg: &A, n: usize, t: &TensorElement) -> Result<TensorElement> {
    t.expect_arity(n + 2)?;
    let mut acc = TensorElement::zero(n + 1);
    for i in 0..=n {
        let term = t.contract(alg, i)?;
        acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    Ok(acc)
}

/// Deliberate defects used to show that the verifiers can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// `∂(e_i ⊗ e_i) = e_i ⊗ e_i + Σ α* ⊗ α`.
    FlipPartialSign,
    /// One arrow left out of a CK2 relation.
    DropCk2Arrow,
}

impl Mutation {
    pub fn name(self) -> &'static str {
        match self {
            Mutation::FlipPartialSign => "flip-partial-sign",
            Mutation::DropCk2Arrow => "drop-ck2-arrow",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Mutation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "flip-partial-sign" => Ok(Mutation::FlipPartialSign),
            "drop-ck2-arrow" => Ok(Mutation::DropCk2Arrow),
            _ => Err(format!("unknown mutation `{s}`")),
        }
    }
}

fn sum_ghost_real<A: Algebra + ?Sized>(alg: &A, i: VertexId) -> Vec<(Word, Word)> {
    let q = alg.quiver();
    q.outgoing(i)
        .iter()
        .map(|&a| (Word::letter(q, Letter::ghost(a)), Word::arrow(q, a)))
        .collect()
}

/// Extends generator values `g(i) = f(e_i ⊗ e_i)` to a bimodule map on `P`.
fn extend_on_p<A, G>(alg: &A, p: &TensorElement, arity: usize, mut gen: G) -> Result<TensorElement>
where
    A: Algebra + ?Sized,
    G: FnMut(VertexId) -> TensorElement,
{
    p.expect_arity(2)?;
    let q = alg.quiver();
    let field = alg.field();
    let mut cache: BTreeMap<VertexId, TensorElement> = BTreeMap::new();
    let mut acc = TensorElement::zero(arity);
    for (key, c) in p.terms() {
        let i = key[0].source();
        if !q.is_regular(i) {
            return Err(Error::NonRegularGluing {
                vertex: q.vertex_name(i).to_owned(),
            });
        }
        let g = cache.entry(i).or_insert_with(|| gen(i));
        let term = TensorElement::act(
            alg,
            &Element::monomial(key[0].clone(), c.clone()),
            g,
            &Element::word(field, key[1].clone()),
        )?;
        acc = acc.add(&term);
    }
    Ok(acc)
}

fn partial_generator<A: Algebra + ?Sized>(alg: &A, i: VertexId, flipped: bool) -> TensorElement {
    let one = alg.field().one();
    let sign = if flipped { one.clone() } else { -&one };
    let mut g = TensorElement::unit_pair(alg, i);
    for (ghost, real) in sum_ghost_real(alg, i) {
        g = g.add(&TensorElement::simple(vec![ghost, real], sign.clone()));
    }
    g
}

/// `∂: P → L ⊗_S L`.
pub fn partial_map(alg: &LeavittAlgebra, p: &TensorElement) -> Result<TensorElement> {
    partial_map_with(alg, p, false)
}

/// `∂`, optionally with the sign of `Σ α* ⊗ α` flipped.
pub fn partial_map_with(alg: &LeavittAlgebra, p: &TensorElement, flipped: bool) -> Result<TensorElement> {
    extend_on_p(alg, p, 2, |i| partial_generator(alg, i, flipped))
}

/// `ι: P → L^{⊗3}`.
pub fn iota_map(alg: &LeavittAlgebra, p: &TensorElement) -> Result<TensorElement> {
    let one = alg.field().one();
    extend_on_p(alg, p, 3, |i| {
        let mut g = TensorElement::zero(3);
        for (ghost, real) in sum_ghost_real(alg, i) {
            g = g.add(&TensorElement::simple(vec![ghost, real, Word::vertex(i)], one.clone()));
        }
        g
    })
}

/// `π: L^{⊗3} → P`.
pub fn pi_map(alg: &LeavittAlgebra, t: &TensorElement) -> Result<TensorElement> {
    t.expect_arity(3)?;
    let field = alg.field();
    let values = GeneratorValues::derivation_d(alg);
    let mut cache: BTreeMap<Word, TensorElement> = BTreeMap::new();
    let mut acc = TensorElement::zero(2);
    for (key, c) in t.terms() {
        if !cache.contains_key(&key[1]) {
            let d = values.leibniz_extend(alg, &Element::word(field, key[1].clone()))?;
            cache.insert(key[1].clone(), d);
        }
        let term = TensorElement::act(
            alg,
            &Element::monomial(key[0].clone(), c.clone()),
            &cache[&key[1]],
            &Element::word(field, key[2].clone()),
        )?;
        acc = acc.add(&term);
    }
    acc.p_project(alg.quiver(), true)
}

/// `δ: kQ ⊗_S kQ_1 ⊗_S kQ → kQ ⊗_S kQ`, `x ⊗ α ⊗ y ↦ xα ⊗ y − x ⊗ αy`.
pub fn path_algebra_delta(alg: &FreeAlgebra, t: &TensorElement) -> Result<TensorElement> {
    t.expect_arity(3)?;
    let q = alg.quiver();
    for (key, _) in t.terms() {
        if key.iter().any(|w| !w.is_path()) {
            return Err(Error::GhostInPathAlgebra(print_tensor(q, t)));
        }
        if key[1].len() != 1 {
            return Err(Error::SupportViolation {
                word: print_tensor(q, t),
                position: "the middle factor, which must be a single arrow".to_owned(),
            });
        }
    }
    Ok(t.contract(alg, 0)?.sub(&t.contract(alg, 1)?))
}

/// The seven identities behind the resolution of the Leavitt algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Identity {
    DKillsRelations,
    PartialDIsDelta,
    PartialIsD1Iota,
    PiD2Zero,
    PiIotaIdentity,
    MPartialZero,
    LeibnizD,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::DKillsRelations,
        Identity::PartialDIsDelta,
        Identity::PartialIsD1Iota,
        Identity::PiD2Zero,
        Identity::PiIotaIdentity,
        Identity::MPartialZero,
        Identity::LeibnizD,
    ];

    /// Stable machine key.
    pub fn key(self) -> &'static str {
        match self {
            Identity::DKillsRelations => "d_kills_relations",
            Identity::PartialDIsDelta => "partial_d_is_delta",
            Identity::PartialIsD1Iota => "partial_is_d1_iota",
            Identity::PiD2Zero => "pi_d2_zero",
            Identity::PiIotaIdentity => "pi_iota_identity",
            Identity::MPartialZero => "m_partial_zero",
            Identity::LeibnizD => "leibniz_d",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Identity::DKillsRelations => "D(r) = 0 for every relation r",
            Identity::PartialDIsDelta => "∂∘D = Δ",
            Identity::PartialIsD1Iota => "∂ = d1∘ι",
            Identity::PiD2Zero => "π∘d2 = 0",
            Identity::PiIotaIdentity => "π∘ι = id",
            Identity::MPartialZero => "m∘∂ = 0",
            Identity::LeibnizD => "D(xy) = D(x)y + xD(y)",
        }
    }
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapReport {
    pub identity: Identity,
    /// Number of inputs evaluated (stops at the first failure).
    pub cases: usize,
    /// First failing input with both sides, when the identity fails.
    pub witness: Option<String>,
}

impl ChainMapReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random inputs per identity, on top of the generators.
    pub samples: usize,
    /// Length bound on the monomials random inputs are built from.
    pub max_len: usize,
    /// Terms per random element.
    pub max_terms: usize,
    pub mutation: Option<Mutation>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            samples: 1000,
            max_len: 3,
            max_terms: 3,
            mutation: None,
        }
    }
}

/// Runs a check over a sequence of inputs, stopping at the first failure.
struct Run {
    cases: usize,
    witness: Option<String>,
}

impl Run {
    fn new() -> Self {
        Run {
            cases: 0,
            witness: None,
        }
    }

    fn done(&self) -> bool {
        self.witness.is_some()
    }

    fn record(&mut self, failure: Option<String>) {
        self.cases += 1;
        self.witness = failure;
    }

    fn report(self, identity: Identity) -> ChainMapReport {
        ChainMapReport {
            identity,
            cases: self.cases,
            witness: self.witness,
        }
    }
}

fn compare(q: &Quiver, input: String, lhs: &TensorElement, rhs: &TensorElement) -> Option<String> {
    (lhs != rhs).then(|| {
        format!(
            "input {input}: lhs {} but rhs {}",
            print_tensor(q, lhs),
            print_tensor(q, rhs)
        )
    })
}

fn rng_for(seed: u64, identity: Identity) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(identity as u64);
    rng
}

/// Generators `e_i`, `β`, `β*` of the algebra.
fn algebra_generators(alg: &LeavittAlgebra) -> Vec<Element> {
    let q = alg.quiver();
    let field = alg.field();
    let mut out: Vec<Element> = q.vertex_ids().map(|v| alg.one_at(v)).collect();
    for a in q.arrow_ids() {
        out.push(Element::letter(field, q, Letter::real(a)));
        out.push(Element::letter(field, q, Letter::ghost(a)));
    }
    out
}

fn p_generators(alg: &LeavittAlgebra) -> Vec<TensorElement> {
    alg.quiver()
        .regular_vertices()
        .into_iter()
        .map(|v| TensorElement::unit_pair(alg, v))
        .collect()
}

/// Bimodule generators of `L^{⊗4}` with at most one letter in the middle.
fn quadruple_generators(alg: &LeavittAlgebra) -> Vec<TensorElement> {
    let q = alg.quiver();
    let one = alg.field().one();
    let mut out: Vec<TensorElement> = q
        .vertex_ids()
        .map(|v| TensorElement::simple(vec![Word::vertex(v); 4], one.clone()))
        .collect();
    for l in q.double_quiver() {
        let (s, t) = (Word::vertex(q.letter_source(l)), Word::vertex(q.letter_target(l)));
        let w = Word::letter(q, l);
        out.push(TensorElement::simple(
            vec![t.clone(), w.clone(), s.clone(), s.clone()],
            one.clone(),
        ));
        out.push(TensorElement::simple(vec![t.clone(), t.clone(), w, s], one.clone()));
    }
    out
}

/// `x · t` and `t · y` with one side trivial.
fn left_act(alg: &LeavittAlgebra, x: &Element, t: &TensorElement) -> Result<TensorElement> {
    let units = Element::unit_sum(alg.field(), alg.quiver().vertex_ids());
    TensorElement::act(alg, x, t, &units)
}

fn right_act(alg: &LeavittAlgebra, t: &TensorElement, y: &Element) -> Result<TensorElement> {
    let units = Element::unit_sum(alg.field(), alg.quiver().vertex_ids());
    TensorElement::act(alg, &units, t, y)
}

/// Checks the seven identities on generators and seeded random inputs.
pub fn verify_identities(alg: &LeavittAlgebra, config: &VerifyConfig) -> Result<Vec<ChainMapReport>> {
    let q = alg.quiver();
    let flipped = config.mutation == Some(Mutation::FlipPartialSign);
    let sampler = Sampler::new(alg, alg.basis_up_to(config.max_len));
    let k = config.max_terms.max(1);
    let partial = |p: &TensorElement| partial_map_with(alg, p, flipped);
    let mut reports = Vec::new();

    for identity in Identity::ALL {
        let mut rng = rng_for(config.seed, identity);
        let mut run = Run::new();
        match identity {
            Identity::DKillsRelations => {
                let mut relations = alg.relations();
                if config.mutation == Some(Mutation::DropCk2Arrow) {
                    relations = relations.with_ck2_arrow_dropped(q, alg.field());
                }
                let violations = check_descends(alg, &GeneratorValues::derivation_d(alg), &relations)?;
                run.cases = relations.len();
                run.witness = violations
                    .first()
                    .map(|v| format!("relation {}: D gives {}", v.relation, v.value));
            }
            Identity::PartialDIsDelta => {
                let randoms = (0..config.samples)
                    .map(|_| sampler.element(&mut rng, k))
                    .collect::<Vec<_>>();
                for x in algebra_generators(alg).into_iter().chain(randoms) {
                    if run.done() {
                        break;
                    }
                    let lhs = partial(&derivation_d(alg, &x)?)?;
                    let rhs = universal_delta(alg, &x)?;
                    run.record(compare(q, print_element(q, &x), &lhs, &rhs));
                }
            }
            Identity::PartialIsD1Iota | Identity::PiIotaIdentity | Identity::MPartialZero => {
                let randoms = (0..config.samples)
                    .map(|_| sampler.p_element(&mut rng, k))
                    .collect::<Vec<_>>();
                for p in p_generators(alg).into_iter().chain(randoms) {
                    if run.done() {
                        break;
                    }
                    let (lhs, rhs) = match identity {
                        Identity::PartialIsD1Iota => (partial(&p)?, bar_differential(alg, 1, &iota_map(alg, &p)?)?),
                        Identity::PiIotaIdentity => (pi_map(alg, &iota_map(alg, &p)?)?, p.clone()),
                        _ => (
                            TensorElement::from_element(&partial(&p)?.mult_map(alg)?),
                            TensorElement::zero(1),
                        ),
                    };
                    run.record(compare(q, print_tensor(q, &p), &lhs, &rhs));
                }
            }
            Identity::PiD2Zero => {
                let randoms = (0..config.samples)
                    .map(|_| sampler.tensor(&mut rng, 4, k))
                    .collect::<Vec<_>>();
                for t in quadruple_generators(alg).into_iter().chain(randoms) {
                    if run.done() {
                        break;
                    }
                    let lhs = pi_map(alg, &bar_differential(alg, 2, &t)?)?;
                    run.record(compare(q, print_tensor(q, &t), &lhs, &TensorElement::zero(2)));
                }
            }
            Identity::LeibnizD => {
                let gens = algebra_generators(alg);
                let mut pairs = Vec::new();
                for x in &gens {
                    for y in &gens {
                        pairs.push((x.clone(), y.clone()));
                    }
                }
                for _ in 0..config.samples {
                    pairs.push((sampler.element(&mut rng, k), sampler.element(&mut rng, k)));
                }
                for (x, y) in pairs {
                    if run.done() {
                        break;
                    }
                    let xy = alg.multiply(&x, &y)?;
                    let lhs = derivation_d(alg, &xy)?;
                    let rhs =
                        right_act(alg, &derivation_d(alg, &x)?, &y)?.add(&left_act(alg, &x, &derivation_d(alg, &y)?)?);
                    let input = format!("({}, {})", print_element(q, &x), print_element(q, &y));
                    run.record(compare(q, input, &lhs, &rhs));
                }
            }
        }
        reports.push(run.report(identity));
    }
    Ok(reports)
}

/// Sparse coordinates with respect to an ordered basis.
struct Coordinates<K: Ord> {
    index: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Coordinates<K> {
    fn new(keys: impl IntoIterator<Item = K>) -> Self {
        let mut index = BTreeMap::new();
        for k in keys {
            let n = index.len();
            index.entry(k).or_insert(n);
        }
        Coordinates { index }
    }

    fn len(&self) -> usize {
        self.index.len()
    }

    /// Index of `k`, appending it when new.
    fn intern(&mut self, k: &K) -> usize {
        let n = self.index.len();
        *self.index.entry(k.clone()).or_insert(n)
    }

    fn column<'a>(&self, items: impl Iterator<Item = (&'a K, &'a Scalar)>) -> Result<Vec<(usize, Scalar)>>
    where
        K: 'a,
    {
        items
            .map(|(k, c)| {
                self.index
                    .get(k)
                    .map(|&i| (i, c.clone()))
                    .ok_or_else(|| Error::DimensionMismatch("image leaves the target basis".to_owned()))
            })
            .collect()
    }

    fn intern_column<'a>(&mut self, items: impl Iterator<Item = (&'a K, &'a Scalar)>) -> Vec<(usize, Scalar)>
    where
        K: 'a,
    {
        items.map(|(k, c)| (self.intern(k), c.clone())).collect()
    }
}

/// Ranks of `0 → P → L ⊗_S L → L → 0` on a finite-dimensional algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteExactness {
    pub dim_p: usize,
    pub dim_pairs: usize,
    pub dim_algebra: usize,
    pub rank_partial: usize,
    pub rank_mult: usize,
    /// `m ∘ ∂ = 0` as matrices.
    pub composite_zero: bool,
}

impl FiniteExactness {
    pub fn kernel_mult(&self) -> usize {
        self.dim_pairs - self.rank_mult
    }

    pub fn partial_injective(&self) -> bool {
        self.rank_partial == self.dim_p
    }

    pub fn mult_surjective(&self) -> bool {
        self.rank_mult == self.dim_algebra
    }

    /// `ker m = im ∂`.
    pub fn middle_exact(&self) -> bool {
        self.composite_zero && self.rank_partial == self.kernel_mult()
    }

    pub fn euler(&self) -> i64 {
        self.dim_p as i64 - self.dim_pairs as i64 + self.dim_algebra as i64
    }

    pub fn is_exact(&self) -> bool {
        self.partial_injective() && self.middle_exact() && self.mult_surjective()
    }
}

/// Exact ranks of `∂` and `m` on full bases. Errors on cyclic quivers.
pub fn verify_exactness_finite(alg: &LeavittAlgebra) -> Result<FiniteExactness> {
    let q = alg.quiver();
    let field = alg.field();
    let basis = alg.full_basis()?;
    let p_basis = pair_basis(q, &basis, usize::MAX, true);
    let pairs = pair_basis(q, &basis, usize::MAX, false);
    let basis_coords = Coordinates::new(basis.iter().cloned());
    let pair_coords = Coordinates::new(pairs.iter().cloned());

    let mut partial_cols = Vec::new();
    for key in &p_basis {
        let img = partial_map(alg, &TensorElement::simple(key.clone(), field.one()))?;
        partial_cols.push(pair_coords.column(img.terms())?);
    }
    let mut mult_cols = Vec::new();
    for key in &pairs {
        let img = TensorElement::simple(key.clone(), field.one()).mult_map(alg)?;
        mult_cols.push(basis_coords.column(img.terms())?);
    }
    let partial = Matrix::from_sparse_columns(field, pairs.len(), &partial_cols)?;
    let mult = Matrix::from_sparse_columns(field, basis.len(), &mult_cols)?;
    Ok(FiniteExactness {
        dim_p: p_basis.len(),
        dim_pairs: pairs.len(),
        dim_algebra: basis.len(),
        rank_partial: partial.rank(),
        rank_mult: mult.rank(),
        composite_zero: mult.mul(&partial)?.is_zero(),
    })
}

/// Free-group degree of a tensor of words: letters read in application
/// order with `α ↦ α`, `α* ↦ α⁻¹`, freely reduced. Both `∂` and `m`
/// preserve it, so the truncated problems split into blocks.
fn free_degree(factors: &[Word]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for w in factors.iter().rev() {
        for &l in w.letters() {
            if out.last() == Some(&l.star()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
    }
    out
}

/// Evidence for exactness at `L ⊗_S L` on a length truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedExactness {
    pub max_len: usize,
    pub slack: usize,
    /// Glued pairs of total length at most `max_len`.
    pub dim_pairs: usize,
    /// Generators of `P` of total length at most `max_len + slack`.
    pub dim_p: usize,
    /// Dimension of the kernel of `m` on the truncated pairs.
    pub kernel_dim: usize,
    pub solved: usize,
    /// Kernel vectors with no preimage in the truncation. Inconclusive,
    /// not a refutation.
    pub unsolved: usize,
}

impl TruncatedExactness {
    pub fn all_solved(&self) -> bool {
        self.unsolved == 0
    }
}

/// Computes `ker m` on pairs of length at most `max_len` and looks for a
/// `∂`-preimage of each kernel vector among `P` pairs of length at most
/// `max_len + slack`.
pub fn verify_exactness_truncated(alg: &LeavittAlgebra, max_len: usize, slack: usize) -> Result<TruncatedExactness> {
    let q = alg.quiver();
    let field = alg.field();
    let wide = max_len + slack;
    let monomials = alg.basis_up_to(wide);
    let mut pair_blocks: BTreeMap<Vec<Letter>, Vec<Vec<Word>>> = BTreeMap::new();
    let mut p_blocks: BTreeMap<Vec<Letter>, Vec<Vec<Word>>> = BTreeMap::new();
    let mut dim_pairs = 0;
    for key in pair_basis(q, &monomials, max_len, false) {
        dim_pairs += 1;
        pair_blocks.entry(free_degree(&key)).or_default().push(key);
    }
    let mut dim_p = 0;
    for key in pair_basis(q, &monomials, wide, true) {
        dim_p += 1;
        p_blocks.entry(free_degree(&key)).or_default().push(key);
    }

    let mut report = TruncatedExactness {
        max_len,
        slack,
        dim_pairs,
        dim_p,
        kernel_dim: 0,
        solved: 0,
        unsolved: 0,
    };
    for (degree, pairs) in &pair_blocks {
        let mut rows: Coordinates<Word> = Coordinates::new([]);
        let mut cols = Vec::new();
        for key in pairs {
            let img = TensorElement::simple(key.clone(), field.one()).mult_map(alg)?;
            cols.push(rows.intern_column(img.terms()));
        }
        let kernel = Matrix::from_sparse_columns(field, rows.len(), &cols)?.kernel_basis();
        if kernel.is_empty() {
            continue;
        }
        report.kernel_dim += kernel.len();

        let mut targets: Coordinates<Vec<Word>> = Coordinates::new(pairs.iter().cloned());
        let mut cols = Vec::new();
        for key in p_blocks.get(degree).into_iter().flatten() {
            let img = partial_map(alg, &TensorElement::simple(key.clone(), field.one()))?;
            cols.push(targets.intern_column(img.terms()));
        }
        let partial = Matrix::from_sparse_columns(field, targets.len(), &cols)?;
        let rhs: Vec<Vec<Scalar>> = kernel
            .into_iter()
            .map(|mut v| {
                v.resize(targets.len(), field.zero());
                v
            })
            .collect();
        for answer in partial.solve_columns(&rhs)? {
            if answer.is_some() {
                report.solved += 1;
            } else {
                report.unsolved += 1;
            }
        }
    }
    Ok(report)
}

/// Ranks of `0 → kQ ⊗ kQ_1 ⊗ kQ → kQ ⊗_S kQ → kQ → 0` for an acyclic quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathResolutionExactness {
    pub dim_triples: usize,
    pub dim_pairs: usize,
    pub dim_algebra: usize,
    pub rank_delta: usize,
    pub rank_mult: usize,
    pub composite_zero: bool,
}

impl PathResolutionExactness {
    pub fn is_exact(&self) -> bool {
        self.composite_zero
            && self.rank_delta == self.dim_triples
            && self.rank_mult == self.dim_algebra
            && self.rank_delta + self.rank_mult == self.dim_pairs
    }

    pub fn euler(&self) -> i64 {
        self.dim_triples as i64 - self.dim_pairs as i64 + self.dim_algebra as i64
    }
}

pub fn verify_path_algebra_exactness(q: &Quiver, field: Field) -> Result<PathResolutionExactness> {
    if !q.is_acyclic() {
        return Err(Error::CyclicQuiver);
    }
    let alg = FreeAlgebra::new(q.clone(), field);
    let paths = alg.paths_up_to(q.vertex_count());
    let pairs = pair_basis(q, &paths, usize::MAX, false);
    let mut triples = Vec::new();
    for x in &paths {
        for a in q.arrow_ids() {
            for y in &paths {
                let key = vec![x.clone(), Word::arrow(q, a), y.clone()];
                if crate::tensor::is_glued(&key) {
                    triples.push(key);
                }
            }
        }
    }
    let path_coords = Coordinates::new(paths.iter().cloned());
    let pair_coords = Coordinates::new(pairs.iter().cloned());
    let mut delta_cols = Vec::new();
    for key in &triples {
        let img = path_algebra_delta(&alg, &TensorElement::simple(key.clone(), field.one()))?;
        delta_cols.push(pair_coords.column(img.terms())?);
    }
    let mut mult_cols = Vec::new();
    for key in &pairs {
        let img = TensorElement::simple(key.clone(), field.one()).mult_map(&alg)?;
        mult_cols.push(path_coords.column(img.terms())?);
    }
    let delta = Matrix::from_sparse_columns(field, pairs.len(), &delta_cols)?;
    let mult = Matrix::from_sparse_columns(field, paths.len(), &mult_cols)?;
    Ok(PathResolutionExactness {
        dim_triples: triples.len(),
        dim_pairs: pairs.len(),
        dim_algebra: paths.len(),
        rank_delta: delta.rank(),
        rank_mult: mult.rank(),
        composite_zero: mult.mul(&delta)?.is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::families;
    use crate::text::parse_expr;

    fn ex(l: &LeavittAlgebra, s: &str) -> Element {
        parse_expr(s, l.quiver(), l.field()).unwrap()
    }

    fn tn(l: &LeavittAlgebra, xs: &[&str]) -> TensorElement {
        let xs: Vec<Element> = xs.iter().map(|s| ex(l, s)).collect();
        TensorElement::from_factors(l, &xs).unwrap()
    }

    fn unit(l: &LeavittAlgebra, v: &str) -> TensorElement {
        TensorElement::unit_pair(l, l.quiver().vertex_id(v).unwrap())
    }

    #[test]
    fn generator_formulas() {
        let a2 = LeavittAlgebra::new(families::linear(2), Field::Rational);
        let p = unit(&a2, "v1");
        assert_eq!(partial_map(&a2, &p).unwrap(), p.sub(&tn(&a2, &["a'", "a"])));
        assert_eq!(iota_map(&a2, &p).unwrap(), tn(&a2, &["a'", "a", "e(v1)"]));

        let r2 = LeavittAlgebra::new(families::rose(2), Field::Rational);
        let p = unit(&r2, "v");
        let want = p.sub(&tn(&r2, &["a'", "a"])).sub(&tn(&r2, &["b'", "b"]));
        assert_eq!(partial_map(&r2, &p).unwrap(), want);
        let iota = iota_map(&r2, &p).unwrap();
        assert_eq!(iota, tn(&r2, &["a'", "a", "e(v)"]).add(&tn(&r2, &["b'", "b", "e(v)"])));
        assert_eq!(pi_map(&r2, &iota).unwrap(), p);
        assert!(pi_map(&r2, &tn(&r2, &["e(v)", "e(v)", "e(v)"])).unwrap().is_zero());
    }

    #[test]
    fn sink_gluing_is_rejected() {
        let a2 = LeavittAlgebra::new(families::linear(2), Field::Rational);
        assert!(matches!(
            partial_map(&a2, &unit(&a2, "v2")),
            Err(Error::NonRegularGluing { .. })
        ));
    }

    #[test]
    fn bar_differential_examples() {
        let r2 = LeavittAlgebra::new(families::rose(2), Field::Rational);
        let t = tn(&r2, &["a", "b", "a'"]);
        let want = tn(&r2, &["a * b", "a'"]).sub(&tn(&r2, &["a", "b * a'"]));
        assert_eq!(bar_differential(&r2, 1, &t).unwrap(), want);
        assert!(bar_differential(&r2, 1, &tn(&r2, &["e(v)", "e(v)", "e(v)"]))
            .unwrap()
            .is_zero());
        assert!(bar_differential(&r2, 2, &t).is_err());
    }

    #[test]
    fn delta_on_path_algebra() {
        let q = families::linear(2);
        let free = FreeAlgebra::new(q.clone(), Field::Rational);
        let a = q.arrow_id("a").unwrap();
        let (v1, v2) = (
            Word::vertex(q.vertex_id("v1").unwrap()),
            Word::vertex(q.vertex_id("v2").unwrap()),
        );
        let one = Field::Rational.one();
        let t = TensorElement::simple(vec![v2.clone(), Word::arrow(&q, a), v1.clone()], one.clone());
        let want = TensorElement::simple(vec![Word::arrow(&q, a), v1.clone()], one.clone()).sub(
            &TensorElement::simple(vec![v2.clone(), Word::arrow(&q, a)], one.clone()),
        );
        assert_eq!(path_algebra_delta(&free, &t).unwrap(), want);
        let ghost = Word::letter(&q, Letter::ghost(a));
        let bad = TensorElement::simple(vec![ghost, Word::arrow(&q, a), v1], one);
        assert!(matches!(
            path_algebra_delta(&free, &bad),
            Err(Error::GhostInPathAlgebra(_))
        ));
    }

    #[test]
    fn a2_finite_exactness() {
        let a2 = LeavittAlgebra::new(families::linear(2), Field::Rational);
        let r = verify_exactness_finite(&a2).unwrap();
        assert_eq!((r.dim_p, r.dim_pairs, r.dim_algebra), (4, 8, 4));
        assert_eq!(r.rank_partial, 4);
        assert_eq!(r.kernel_mult(), 4);
        assert!(r.is_exact());
        assert_eq!(r.euler(), 0);
        let loop_alg = LeavittAlgebra::new(families::loop_quiver(), Field::Rational);
        assert!(matches!(verify_exactness_finite(&loop_alg), Err(Error::CyclicQuiver)));
    }

    #[test]
    fn truncated_exactness_on_loop() {
        let l = LeavittAlgebra::new(families::loop_quiver(), Field::Rational);
        let r = verify_exactness_truncated(&l, 4, 2).unwrap();
        assert!(r.kernel_dim > 0);
        assert_eq!(r.unsolved, 0);
        let r0 = verify_exactness_truncated(&l, 0, 2).unwrap();
        assert_eq!(r0.kernel_dim, 0);
    }

    #[test]
    fn free_degree_cancels() {
        let q = families::rose(2);
        let a = q.arrow_id("a").unwrap();
        let w = Word::from_letters(&q, vec![Letter::real(a), Letter::ghost(a)]).unwrap();
        assert!(free_degree(std::slice::from_ref(&w)).is_empty());
        assert_eq!(free_degree(&[Word::arrow(&q, a), w]), vec![Letter::real(a)]);
    }

    #[test]
    fn identities_hold_on_small_quivers() {
        let config = VerifyConfig {
            samples: 30,
            ..VerifyConfig::default()
        };
        for q in [families::rose(2), families::linear(2), families::point()] {
            let alg = LeavittAlgebra::new(q, Field::Rational);
            for r in verify_identities(&alg, &config).unwrap() {
                assert!(r.holds(), "{:?}", r);
            }
        }
    }

    #[test]
    fn mutations_are_caught() {
        let alg = LeavittAlgebra::new(families::rose(2), Field::Rational);
        let flip = VerifyConfig {
            samples: 5,
            mutation: Some(Mutation::FlipPartialSign),
            ..VerifyConfig::default()
        };
        let reports = verify_identities(&alg, &flip).unwrap();
        let ii = &reports[1];
        assert_eq!(ii.identity, Identity::PartialDIsDelta);
        assert!(ii.witness.as_ref().unwrap().starts_with("input a:"), "{:?}", ii.witness);
        let drop = VerifyConfig {
            mutation: Some(Mutation::DropCk2Arrow),
            ..flip
        };
        let reports = verify_identities(&alg, &drop).unwrap();
        assert!(!reports[0].holds());
        assert!(reports[1..].iter().all(ChainMapReport::holds));
    }
}
