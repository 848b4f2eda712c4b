//! Sums of binomial-coefficient products mod 2, compiled into linear
//! representations over the binary alphabet.
//!
//! The pipeline: a quadruple `(a1, a2, a3, a4)` describes the summand
//! `binom(a1*n + a2*k, a3*n + a4*k) * binom(n, k) (mod 2)`. A carry automaton
//! over paired (n-bit, k-bit) digits decides which `k` contribute an odd term;
//! its counting representation evaluates the sum `T(n)`. Exact minimization
//! brings the representation to minimal rank, and when `T` is the run length
//! transform of a linear recurrence, the recurrence can be recovered and the
//! representation put into a companion normal form.
//!
//! Everything numeric is exact: matrix entries are arbitrary-precision
//! rationals, sequence values arbitrary-precision integers. Floating point
//! appears only when comparing block averages against irrational closed forms.

pub mod analysis;
pub mod automaton;
pub mod baumsweet;
pub mod bitnum;
pub mod compiler;
pub mod linrep;
pub mod mat;
pub mod repfile;
pub mod rlt;

pub use automaton::{lucas_automaton, AutomatonState, PairAutomaton};
pub use bitnum::{binom_parity, binom_parity_signed, runs_of_ones, sum_oracle, to_bits, BitWord, RunList};
pub use compiler::{compile, fixture, fixtures, verify_fixture, Fixture, FixtureReport, SpecError, SumSpec};
pub use linrep::{LinRepError, LinearRepresentation, ReadingOrder};
pub use repfile::{RepFile, RepFileError};
pub use rlt::{berlekamp_massey, identify_rlt, LinearRecurrence, RecurrenceError, RltFailure};

/// Crate version, embedded in serialized provenance blocks.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
