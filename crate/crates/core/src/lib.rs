//! Exact homology of bar-type complexes attached to monomial data.
//!
//! The library computes homology over exact fields (prime fields and the
//! rationals) for several families of graded complexes that all share one
//! container, [`GradedComplex`]:
//!
//! * bar subcomplexes of words in a monomial non-unital algebra,
//! * complexes of monomial quotients of Grassmann algebras (set systems),
//! * operadic bar data given by rooted trees with subtree relations.
//!
//! On top of the exact linear algebra it provides the combinatorial layers
//! that predict or reduce those homologies: generalized Dyck paths for
//! words, contraction orders for set systems, relation-graph reductions for
//! quadratic systems, truncated noncommutative series inversion, and a
//! big-integer recurrence for the truncated binary tree family. Every
//! combinatorial shortcut is designed to be checked against the rank-based
//! oracle, which is what the test suite does.

pub mod bar;
pub mod complex;
pub mod error;
pub mod field;
pub mod graph;
pub mod matrix;
pub mod order;
pub mod recurrence;
pub mod series;
pub mod system;
pub mod tree;
pub mod word;

pub use bar::{bar_subcomplex, dyck_path, predict_homology, word_homology, DyckReason, DyckResult, Prediction};
pub use complex::{euler_characteristic, homology_dims, validate_complex, GradedComplex, HomologyProfile};
pub use error::{Error, Result};
pub use field::FieldSpec;
pub use graph::{
    binary_tree_family, components_homology, eliminate, find_clique_vertex, graph_from_system,
    reduce_homology, RelationGraph, ReductionTrace, TreeFamily,
};
pub use matrix::{rank, rank_bounded, IntMatrix};
pub use order::{
    contract, find_basic_points, is_order, private_point_everywhere, CertStep, OrderCertificate,
};
pub use recurrence::{
    coeff_vector, recurrence_dims, recurrence_state_at, recurrence_step, rewrite_state_at,
    rewrite_step, Letter, LetterCombo, RecurrenceState, RewriteRules,
};
pub use series::{euler_crosscheck, hilbert_truncated, invert_series, NCSeries};
pub use system::{grassmann_complex, system_homology, word_to_system, SetSystem};
pub use tree::{tree_to_system, RootedTree};
pub use word::{reduce_antichain, is_zero_word, Alphabet, OccurrenceScanner, RelationSet, Word};

/// Default cap on the number of basis elements materialized per complex,
/// and on `rows * cols` for a single rank computation.
pub const DEFAULT_WORK_LIMIT: usize = 1 << 20;
