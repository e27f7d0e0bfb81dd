//! Exact coefficient fields, polynomials, degree-one substitutions and the
//! graded linear algebra used by the rest of the crate.

mod field;
mod graded;
mod linalg;
mod monomial;
mod poly;
mod subst;

pub use field::{Field, Scalar};
pub use graded::{
    graded_piece, ideal_contains, ideal_equal, minimal_generators, monomial_guard, GradedIdeal,
    DEFAULT_MAX_MONOMIALS, MAX_MONOMIALS_ENV,
};
pub use linalg::{
    complement_basis_from, extract_basis_indices, identity_matrix, in_span, intersect_spaces,
    mat_inverse, mat_mul, rank, Echelon, LinearSpan, Matrix, SparseVec,
};
pub use monomial::{count_monomials, generator_order, monomials_of_degree, Monomial};
pub use poly::{Polynomial, Ring, Terms};
pub use subst::{apply_substitution, compose, GradedSubstitution};

pub(crate) use graded::check_piece_size;
