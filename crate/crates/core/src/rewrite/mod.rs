//! Level normalization as a first-order rewrite system.
//!
//! Levels and representations are encoded as ground terms ([`encode`]), the rule
//! set ([`rules`]) computes normal forms, and [`engine`] reduces under a choice of
//! strategy. Soundness and confluence are checked by comparing the reduct with the
//! direct normalizer.

pub mod encode;
pub mod engine;
pub mod rules;
pub mod signature;
pub mod term;

pub use encode::{decode_repr, encode_level, encode_repr, numeral, DecodeError};
pub use engine::{is_normal, reduce, reduce_traced, ReductionReport, Step, Strategy};
pub use rules::{builtin_ruleset, match_term, RewriteRule, RuleError, RuleFlavor, RuleSet};
pub use signature::{Sort, Sym};
pub use term::{parse_term, PatVar, RTerm, SortError, TermParseError};

use crate::level::Level;
use crate::repr::normalize;

/// Result of reducing the encoding of one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoundnessCheck {
    pub expected: RTerm,
    pub report: ReductionReport,
}

impl SoundnessCheck {
    pub fn holds(&self) -> bool {
        !self.report.budget_exhausted && self.report.result == self.expected
    }
}

/// Reduces `encode_level(t)` innermost and compares with `encode_repr(normalize(t))`.
pub fn check_soundness(rules: &RuleSet, t: &Level, budget: u64) -> SoundnessCheck {
    let report = reduce(encode_level(t), rules, Strategy::LeftmostInnermost, budget);
    SoundnessCheck { expected: encode_repr(&normalize(t)), report }
}

/// `count` strategies: innermost, outermost, then random ones seeded from `seed`.
pub fn sample_strategies(count: usize, seed: u64) -> Vec<Strategy> {
    let mut out = vec![Strategy::LeftmostInnermost, Strategy::LeftmostOutermost];
    out.extend((0..).map(|i| Strategy::Random(seed.wrapping_add(i))).take(count.saturating_sub(2)));
    out.truncate(count);
    out
}

/// Reductions of one level under several strategies.
#[derive(Clone, Debug)]
pub struct ConfluenceSample {
    pub runs: Vec<(Strategy, ReductionReport)>,
}

impl ConfluenceSample {
    /// Every run finished within budget and all reached the same normal form.
    pub fn holds(&self) -> bool {
        self.runs.iter().all(|(_, r)| !r.budget_exhausted)
            && self.runs.windows(2).all(|w| w[0].1.result == w[1].1.result)
    }

    pub fn steps(&self) -> impl Iterator<Item = u64> + '_ {
        self.runs.iter().map(|(_, r)| r.steps)
    }
}

pub fn sample_confluence(rules: &RuleSet, t: &Level, strategies: usize, seed: u64, budget: u64) -> ConfluenceSample {
    let term = encode_level(t);
    let runs = sample_strategies(strategies, seed)
        .into_iter()
        .map(|s| (s, reduce(term.clone(), rules, s, budget)))
        .collect();
    ConfluenceSample { runs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::level::VarId;
    use crate::repr::Repr;

    fn x() -> Level {
        Level::var(0)
    }
    fn y() -> Level {
        Level::var(1)
    }

    #[test]
    fn soundness_examples() {
        let rules = RuleSet::builtin();
        let cases = [
            Level::Zero,
            Level::imax(x(), x()),
            Level::max(Level::imax(x(), y()), Level::imax(y(), x())),
            Level::succ(Level::imax(y(), x())),
            Level::imax(Level::succ(y()), Level::succ(x())),
            Level::imax(x(), Level::succ(y())),
            Level::numeral(3),
        ];
        for t in &cases {
            let c = check_soundness(&rules, t, 1_000_000);
            assert!(c.holds(), "{t:?}: got {} want {}", c.report.result, c.expected);
        }
    }

    #[test]
    fn variable_reduces_to_its_atom() {
        let r = reduce(encode_level(&x()), &RuleSet::builtin(), Strategy::default(), 1000);
        assert_eq!(r.result, encode_repr(&Repr::var(VarId(0))));
    }

    #[test]
    fn confluence_examples() {
        let rules = RuleSet::builtin();
        assert!(sample_confluence(&rules, &Level::Zero, 2, 0, 100).holds());
        let t = Level::max(Level::imax(x(), Level::succ(y())), Level::succ(Level::succ(x())));
        let s = sample_confluence(&rules, &t, 5, 7, 1_000_000);
        assert_eq!(s.runs.len(), 5);
        assert!(s.holds());
    }

    #[test]
    fn strategy_list() {
        assert_eq!(sample_strategies(2, 9), vec![Strategy::LeftmostInnermost, Strategy::LeftmostOutermost]);
        assert_eq!(sample_strategies(4, 9)[3], Strategy::Random(10));
    }
}
