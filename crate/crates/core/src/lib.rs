//! Exact-rational majorization toolkit.
//!
//! Decides vector, strong, weak and directional majorization with exact
//! witnesses, reduces instances to column-stochastic form, decomposes doubly
//! stochastic matrices, and classifies linear operators against the known
//! preserver normal forms.

pub mod birkhoff;
pub mod error;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod matrix;
pub mod preservers;
pub mod propcheck;
pub mod rational;
pub mod reduce;
pub mod vector;

pub use birkhoff::{birkhoff_decompose, BirkhoffDecomposition};
pub use error::{Error, Result};
pub use linalg::{
    is_column_stochastic, is_doubly_stochastic, is_row_stochastic, positive_part_sum, sort_desc, Permutation, RMatrix,
    RVector,
};
pub use lp::{solve_feasibility, FeasibilityOutcome, FeasibilitySystem};
pub use matrix::{
    check_directional, check_strong, check_strong_equiv, check_weak, MajorizationVerdict, Outcome, Relation,
};
pub use preservers::{
    check_condition_alpha, classify_prob_preserver, classify_strong_preserver, classify_vector_preserver,
    classify_zero_sum_preserver, extract_cs_preserver_form, is_cs_preserver, CsForm, OperatorGrid, PreserverForm,
    VectorOperator, ZeroSumForm,
};
pub use propcheck::{
    fuzz_preserver, gen_pair, lemma_suite, Counterexample, Domain, Operator, RelationKind, RelationSpec,
};
pub use rational::{format_rational, frac, int, parse_rational, Rational};
pub use reduce::{reduce_diag_scale, reduce_shift_normalize, theta, ReductionCertificate, ReductionOptions};
pub use vector::{
    check_vector_equiv, check_vector_majorization, hlp_witness, reduce_vector_to_distributions, TTransform,
};
