//! Decision procedures for universe levels built from `0`, successor, `max`, `imax`
//! and variables.
//!
//! Every level has a unique minimal representation as a maximum of sublevels
//! ([`Repr`]), so equivalence is equality of representations and `≤` is decided
//! atom by atom. The [`rewrite`] module runs the same computation as a first-order
//! rewrite system over a deep encoding of levels, giving an independent path that
//! is cross-checked against the direct normalizer.

pub mod harness;
pub mod level;
pub mod nat;
pub mod repr;
pub mod rewrite;
pub mod sublevel;
pub mod surface;
pub mod varset;

pub use level::{eval, find_counterexample_leq, imax_nat, EvalError, Level, Valuation, VarId};
pub use nat::Natural;
pub use repr::{level_eq, level_leq, normalize, Repr};
pub use sublevel::{imax_sub_pair, SubLevel, SubLevelError, SubLevelKind};
pub use varset::VarSet;

pub use harness::{differential_case, exhaustive_sublevel_suite, gen_level, run_fuzz, DiffReport, GenConfig};
pub use rewrite::{check_soundness, reduce, sample_confluence, RTerm, RuleSet, Strategy};
pub use surface::{parse_level, print_level, print_repr, print_repr_json, NameTable, ParseError};

/// Valuations over machine words, used by the fuzzing harness.
pub type Valuation64 = Valuation<u64>;
/// Valuations over arbitrary-precision naturals, used by the CLI.
pub type BigValuation = Valuation<num_bigint::BigUint>;
