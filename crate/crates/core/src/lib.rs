//! Leavitt path algebras of finite quivers over exact fields.
//!
//! Elements are kept in a canonical normal form produced by a terminating,
//! confluent rewriting system. On top of that the crate implements the
//! derivation `D: L → L ⊗_S L`, the bar differentials, the length-one
//! bimodule resolution `0 → P → L ⊗_S L → L → 0` with its comparison maps,
//! exact verifiers for the identities tying them together, and the center
//! and first Hochschild cohomology computed from the resolution.
//!
//! ```
//! use leavitt_core::{families, parse_expr, print_element, Algebra, Field, LeavittAlgebra};
//!
//! let alg = LeavittAlgebra::new(families::rose(2), Field::Rational);
//! let x = parse_expr("a' * a", alg.quiver(), alg.field()).unwrap();
//! let nf = alg.normal_form(&x).unwrap();
//! assert_eq!(print_element(alg.quiver(), &nf), "e(v) - b' * b");
//! ```

pub mod cohomology;
pub mod derivation;
pub mod element;
pub mod error;
pub mod leavitt;
pub mod linalg;
pub mod quiver;
pub mod resolution;
pub mod sample;
pub mod tensor;
pub mod text;
pub mod word;

pub use cohomology::{center, hh1, outer_derivation_witness, Bound, CenterReport, Hh1Report, OuterWitness};
pub use derivation::{
    check_descends, derivation_d, derivation_from_components, universal_delta, Certificate, Components, Derivation,
    GeneratorValues, Violation,
};
pub use element::{Algebra, Context, Element, FreeAlgebra};
pub use error::{Error, Result};
pub use leavitt::{is_normal_monomial, LeavittAlgebra, Relation, RelationKind, RelationSet, DEFAULT_FUEL};
pub use linalg::{Field, Matrix, Scalar};
pub use quiver::{families, Arrow, ArrowId, Letter, Quiver, QuiverError, RawQuiver, VertexClass, VertexId};
pub use resolution::{
    bar_differential, iota_map, partial_map, partial_map_with, path_algebra_delta, pi_map, verify_exactness_finite,
    verify_exactness_truncated, verify_identities, verify_path_algebra_exactness, ChainMapReport, FiniteExactness,
    Identity, Mutation, PathResolutionExactness, TruncatedExactness, VerifyConfig,
};
pub use sample::Sampler;
pub use tensor::{pair_basis, TensorElement};
pub use text::{parse_expr, parse_quiver, print_element, print_quiver, print_tensor, print_word, ParseError};
pub use word::Word;
