//! Exact rational arithmetic for configurations of axis-aligned boxes in
//! the unit cube, tensor words over axis blocks, evaluation of words to
//! configurations, and a deterministic factorization inverting evaluation
//! on decomposable configurations. Rewriting of words by interchange and
//! unit moves comes with a bounded equality oracle, and radial contraction
//! gives a grid search for the parameter at which a configuration first
//! becomes decomposable.
//!
//! All arithmetic is exact (arbitrary-precision rationals); floating point
//! appears only in SVG output.

pub mod error;
pub mod factorization;
pub mod gen;
pub mod geometry;
pub mod homotopy;
pub mod rational;
pub mod render;
pub mod rewrite;
pub mod suites;
pub mod words;

pub use error::{Error, Result};
pub use factorization::{
    brute_force_decomposable, common_refinement, factor, is_decomposable, pinwheel,
    strip_grouping, FactorResult, NotDecomposable, Refinement, StripGrouping,
    BRUTE_FORCE_DEFAULT_BOUND,
};
pub use gen::{derive_seed, gen_config, gen_config_scattered, gen_operation, gen_word, GenParams};
pub use geometry::{block_permutation, Configuration, Cube, Interval, Permutation};
pub use homotopy::{contract, decomposability_threshold, ContractionReport};
pub use rational::{rat, Rational};
pub use render::render_svg;
pub use rewrite::{apply_move, word_equal_oracle, MoveKind, OracleVerdict, RewriteMove};
pub use suites::{run_suite, Failure, Suite, SuiteReport};
pub use words::{canonical_order, mu_embed, normalize_gen_pos, AxisBlocks, Generator, TensorWord};
