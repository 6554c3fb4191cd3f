//! Reduction of ground terms under a rule set.
//!
//! Positions under the two branches of an if-then-else are frozen until the guard
//! has been rewritten to `true` or `false`; all strategies share this restriction
//! and differ only in which active redex they contract next. If a guard gets stuck
//! on something other than a boolean constant, its branches are unfrozen so the
//! final term is a normal form in the ordinary sense.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rules::RuleSet;
use super::signature::Sym;
use super::term::RTerm;

/// Redex selection strategy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    LeftmostInnermost,
    LeftmostOutermost,
    /// Uniform choice among the active redexes, from a seeded generator.
    Random(u64),
}

/// Outcome of a reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub result: RTerm,
    pub steps: u64,
    /// `false` guarantees `result` is a normal form.
    pub budget_exhausted: bool,
}

/// One contraction, as seen by a trace callback.
#[derive(Debug)]
pub struct Step<'a> {
    pub rule: usize,
    pub redex: &'a RTerm,
    pub contractum: &'a RTerm,
}

/// Reduces `term` until no rule applies or `budget` steps have been taken.
pub fn reduce(term: RTerm, rules: &RuleSet, strategy: Strategy, budget: u64) -> ReductionReport {
    reduce_traced(term, rules, strategy, budget, &mut |_| {})
}

pub fn reduce_traced(
    term: RTerm,
    rules: &RuleSet,
    strategy: Strategy,
    budget: u64,
    trace: &mut dyn FnMut(&Step<'_>),
) -> ReductionReport {
    match strategy {
        Strategy::LeftmostInnermost => {
            let mut run = Innermost { rules, budget, steps: 0, trace };
            let result = run.normalize(term);
            let budget_exhausted = run.steps >= budget && !is_normal(rules, &result);
            ReductionReport { result, steps: run.steps, budget_exhausted }
        }
        Strategy::LeftmostOutermost => positional(term, rules, budget, trace, None),
        Strategy::Random(seed) => {
            positional(term, rules, budget, trace, Some(ChaCha8Rng::seed_from_u64(seed)))
        }
    }
}

/// True when no rule applies at any position.
pub fn is_normal(rules: &RuleSet, term: &RTerm) -> bool {
    !rules.is_redex(term) && term.args().iter().all(|a| is_normal(rules, a))
}

struct Innermost<'a, 't> {
    rules: &'a RuleSet,
    budget: u64,
    steps: u64,
    trace: &'t mut dyn FnMut(&Step<'_>),
}

impl Innermost<'_, '_> {
    fn normalize(&mut self, term: RTerm) -> RTerm {
        let RTerm::App(sym, args) = term else { return term };
        let mut term = if sym.is_ite() {
            let mut args = args;
            let guard = std::mem::replace(&mut args[0], RTerm::constant(Sym::True));
            args[0] = self.normalize(guard);
            RTerm::App(sym, args)
        } else {
            RTerm::App(sym, args.into_iter().map(|a| self.normalize(a)).collect())
        };
        loop {
            if self.steps >= self.budget {
                return term;
            }
            let Some((rule, contractum)) = self.rules.rewrite_root(&term) else { break };
            self.steps += 1;
            (self.trace)(&Step { rule, redex: &term, contractum: &contractum });
            // the contractum's children may themselves be fresh redexes
            term = match contractum {
                RTerm::App(s, a) if s.is_ite() => {
                    let mut a = a;
                    let guard = std::mem::replace(&mut a[0], RTerm::constant(Sym::True));
                    a[0] = self.normalize(guard);
                    RTerm::App(s, a)
                }
                RTerm::App(s, a) => RTerm::App(s, a.into_iter().map(|x| self.normalize(x)).collect()),
                v => v,
            };
        }
        // a stuck if-then-else: its branches become ordinary arguments
        match term {
            RTerm::App(s, args) if s.is_ite() => {
                let mut it = args.into_iter();
                let guard = it.next().expect("ite has a guard");
                let mut out = vec![guard];
                out.extend(it.map(|a| self.normalize(a)));
                RTerm::App(s, out)
            }
            t => t,
        }
    }
}

/// Collects active redex positions in pre-order. Returns whether any was found.
fn collect_redexes(
    rules: &RuleSet,
    term: &RTerm,
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    first_only: bool,
) -> bool {
    let RTerm::App(sym, args) = term else { return false };
    let mut found = false;
    if rules.is_redex(term) {
        out.push(path.clone());
        if first_only {
            return true;
        }
        found = true;
    }
    let mut guard_active = false;
    for (i, a) in args.iter().enumerate() {
        if !sym.is_active_arg(i) && (found || guard_active) {
            continue;
        }
        path.push(i);
        let hit = collect_redexes(rules, a, path, out, first_only);
        path.pop();
        if hit {
            if first_only {
                return true;
            }
            found = true;
            if i == 0 {
                guard_active = true;
            }
        }
    }
    found
}

fn positional(
    mut term: RTerm,
    rules: &RuleSet,
    budget: u64,
    trace: &mut dyn FnMut(&Step<'_>),
    mut rng: Option<ChaCha8Rng>,
) -> ReductionReport {
    let mut steps = 0;
    let mut positions = Vec::new();
    loop {
        positions.clear();
        collect_redexes(rules, &term, &mut Vec::new(), &mut positions, rng.is_none());
        if positions.is_empty() {
            return ReductionReport { result: term, steps, budget_exhausted: false };
        }
        if steps >= budget {
            return ReductionReport { result: term, steps, budget_exhausted: true };
        }
        let path = match rng.as_mut() {
            Some(r) => &positions[r.gen_range(0..positions.len())],
            None => &positions[0],
        };
        let slot = term.subterm_mut(path);
        let (rule, contractum) = rules.rewrite_root(slot).expect("position holds a redex");
        trace(&Step { rule, redex: slot, contractum: &contractum });
        *slot = contractum;
        steps += 1;
    }
}
