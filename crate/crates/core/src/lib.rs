//! Exact-arithmetic library for partitions of quadratic-field elements into
//! non-negative integer powers of a fixed quadratic number β.
//!
//! Everything is computed exactly over arbitrary-precision integers:
//!
//! - [`quadfield`]: canonical elements (p + q√D)/r of ℚ(√D), integer
//!   quadratics and their roots, exact signs and floors.
//! - [`mary`]: the integer-base m-ary partition function b_m, used as an
//!   independent baseline oracle.
//! - [`classifier`]: decides from the coefficients whether p_β is finite for
//!   every real target, cross-checked against exact root comparison.
//! - [`enumerator`]: memoized digit search that counts and lists partitions,
//!   plus an independent polynomial-divisibility oracle.
//! - [`witness`]: explicit machine-verified families certifying that a
//!   target has infinitely many partitions.
//! - [`pell`]: Pell-equation solutions and the family of totally positive
//!   quadratic integers they generate.
//! - [`verifier`]: instance-level pass/fail reports for the counting laws
//!   the library implements.

pub mod classifier;
pub mod enumerator;
pub mod error;
pub mod mary;
pub mod pell;
mod polyvec;
pub mod quadfield;
pub mod verifier;
pub mod witness;

pub use classifier::{
    classify, decide_value_special, Classification, Reason, ValueClass, Verdict, WitnessPlan,
};
pub use enumerator::{
    count, count_integer_base, enumerate, oracle_count, recurrence_check, Caps, CountContext,
    Partition,
};
pub use error::{Error, Result};
pub use mary::{afs_congruence_check, bm, MaryTable};
pub use pell::{fundamental_solution, solution_sequence, trace_condition_family, PellSolution};
pub use quadfield::{squarefree_kernel, QuadElem, QuadPoly};
pub use verifier::{
    congruence_table, congruence_table_with_context, verify_leading_term_structure,
    verify_reciprocal_bound, verify_small_power_bounds, verify_trace_power_counts, CongruenceRow,
    Instance, VerificationReport,
};
pub use witness::{
    complex_zero_partition, witness_case, witness_lemma, zero_closure, WitnessFamily,
};
