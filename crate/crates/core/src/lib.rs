//! Exact kernel for skew-symmetric n-ary algebra structures.
//!
//! Everything is computed over Q (arbitrary-precision rationals) or GF(p);
//! every check is an exact boolean with no tolerances. The crate provides
//! alternating vector-valued forms with the insertion operator and the
//! Nijenhuis-Richardson bracket, generalized Jacobi-identity checkers, the
//! Poisson superalgebra on the exterior algebra of a space with a
//! non-degenerate symmetric form (with the translation between multivectors
//! and invariant structures), ideal/simplicity analysis with exhaustive
//! finite-field searches, generators, a line-oriented file format, and the
//! `nlie` command-line front end.

pub mod alt_form;
pub mod analysis;
pub mod combinatorics;
pub mod error;
pub mod exterior;
pub mod format;
pub mod generate;
pub mod guard;
pub mod linalg;
pub mod scalar;
pub mod verify;

pub use alt_form::{
    check_filippov, check_jacobi_explicit, check_lie_n, check_type, AltForm, Violation,
};
pub use analysis::{
    commutator_defect, exhaustive_type_search, find_nontrivial_ideal, ideal_closure, is_ideal,
    is_simple, operator_space, AnalysisVerdict, Method, SearchReport, Status,
};
pub use analysis::DefectReport;
pub use error::{Error, Result};
pub use exterior::{
    check_invariance, check_type_poisson, exterior_from_structure, iterated_bracket,
    poisson_bracket, check_bracket_compat, structure_from_exterior, BilinearForm, Degree, ExteriorElement,
};
pub use format::{parse, serialize, AlgebraDocument};
pub use generate::{gen_random, gen_top_form_filippov, gen_top_form_identity};
pub use guard::Guards;
pub use linalg::{enumerate_subspaces, Matrix, Subspace};
pub use scalar::{fmt_vec, Field, Scalar};
