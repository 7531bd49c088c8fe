//! Exact computations with the equivariant coinvariant ring of a finite
//! pseudo-reflection group: the localization map into `Maps(W, R)`, the
//! averaging operators `ᵢA_s` and `ᵢΔ_s`, the membership conditions cutting
//! out the image, and the linear hypergraph whose cohomology recovers it.
//!
//! Polynomials and linear algebra are generic over an exact [`Field`];
//! everything group-related runs over cyclotomic numbers [`CycNum`].

pub mod bundled;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod group;
pub mod hypergraph;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod linear_form;
pub mod localization;
pub mod molien;
pub mod monomial;
pub mod operators;
pub mod parse;
pub mod poly;
pub mod random;
pub mod suite;

pub use cyclotomic::CycNum;
pub use error::{Error, Result};
pub use field::Field;
pub use hypergraph::{
    build_hypergraph, edge_integral, edge_member_vandermonde, hypergraph_member, naive_pairwise_member, HyperEdge,
    Hypergraph,
};
pub use invariants::{coinvariant_basis, hilbert_ideal_piece, invariant_basis, reynolds, CoinvariantBasis, GradedBasis};
pub use group::{group_close, GroupElement, PseudoReflection, ReflectionGroup, DEFAULT_CAP};
pub use io::{parse_group_file, parse_group_str, GroupFile, WMapFile};
pub use linalg::{Echelon, Matrix};
pub use linear_form::{divide_exact_by_linear_power, LinearChange, LinearForm, NotDivisible};
pub use localization::{check_comdi, dimension_rows, image_graded_dim, mu, mu_x, DimensionRow, TensorElement};
pub use molien::{expected_dims, molien_coefficients, molien_series};
pub use monomial::{graded_monomials, Monomial};
pub use operators::{
    coroot_map, decompose_along_s, hw_graded_basis, hw_member, op_a, op_delta, reconstruct, wmap_act, MapBasis,
    MembershipCertificate, MembershipFailure, WMap,
};
pub use poly::{Degree, MultiPoly};
pub use suite::{run_suite, verify_theorem, SuiteConfig, SuiteResult, TheoremReport, VerificationReport};

pub use num_rational::BigRational;

/// Polynomials over the cyclotomic field.
pub type Poly = MultiPoly<CycNum>;
/// Polynomials over the rationals.
pub type RationalPoly = MultiPoly<BigRational>;
pub type CycMatrix = Matrix<CycNum>;
pub type CycForm = LinearForm<CycNum>;
