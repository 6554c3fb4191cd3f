//! Random levels and the differential loop tying the normalizer, the rewrite
//! engine and the valuation oracle together, plus the exhaustive sublevel suite.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::level::{default_bound, eval, find_counterexample_leq, search_grid, Level, Valuation, VarId};
use crate::repr::{level_leq, normalize};
use crate::rewrite::{check_soundness, RuleSet};
use crate::sublevel::all_sublevels;
use crate::surface::{print_level, print_sublevel, NameTable};
use crate::varset::VarSet;

/// Parameters of the random level generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    /// Upper bound on the node count; at least 1.
    pub max_size: usize,
    pub num_vars: u32,
    /// Largest numeral emitted as a single leaf.
    pub const_bound: u32,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { seed: 0, max_size: 50, num_vars: 3, const_bound: 3 }
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// The `index`-th level of the stream described by `cfg`.
pub fn gen_level(cfg: &GenConfig, index: u64) -> Level {
    let mut rng = stream_rng(cfg.seed, index.wrapping_mul(2));
    gen_level_with(cfg, &mut rng)
}

/// A level with at most `cfg.max_size` nodes drawn from `rng`.
pub fn gen_level_with(cfg: &GenConfig, rng: &mut impl Rng) -> Level {
    let n = rng.gen_range(1..=cfg.max_size.max(1));
    gen_sized(cfg, rng, n)
}

fn gen_sized(cfg: &GenConfig, rng: &mut impl Rng, n: usize) -> Level {
    if n == 1 {
        return if cfg.num_vars > 0 && rng.gen_bool(0.75) {
            Level::var(rng.gen_range(0..cfg.num_vars))
        } else {
            Level::Zero
        };
    }
    let numeral_fits = cfg.const_bound > 0;
    let roll: u32 = rng.gen_range(0..100);
    if n == 2 || roll < 20 {
        if numeral_fits && roll.is_multiple_of(4) {
            let k = rng.gen_range(1..=cfg.const_bound.min(n as u32 - 1));
            return Level::numeral(k);
        }
        return Level::succ(gen_sized(cfg, rng, n - 1));
    }
    let left = rng.gen_range(1..=n - 2);
    let (a, b) = (gen_sized(cfg, rng, left), gen_sized(cfg, rng, n - 1 - left));
    if roll < 60 {
        Level::max(a, b)
    } else {
        Level::imax(a, b)
    }
}

/// A valuation of `vars` with values in `0..=bound`.
pub fn gen_valuation(vars: &VarSet, bound: u64, rng: &mut impl Rng) -> Valuation<u64> {
    vars.iter().map(|x| (x, rng.gen_range(0..=bound))).collect()
}

/// Instances of the distribution laws for `imax` at `u, v, w`, as `(name, lhs, rhs)`.
pub fn semantic_laws(u: &Level, v: &Level, w: &Level) -> Vec<(&'static str, Level, Level)> {
    let imax = |a: &Level, b: &Level| Level::imax(a.clone(), b.clone());
    let max = Level::max;
    let s = |a: &Level| Level::succ(a.clone());
    vec![
        ("max_right", Level::imax(u.clone(), max(v.clone(), w.clone())), max(imax(u, v), imax(u, w))),
        ("max_left", Level::imax(max(u.clone(), v.clone()), w.clone()), max(imax(u, w), imax(v, w))),
        ("r_right", Level::imax(u.clone(), imax(v, w)), max(imax(u, w), imax(v, w))),
        ("r_def", imax(u, &Level::Zero), Level::Zero),
        ("r_def", imax(u, &s(v)), max(u.clone(), s(v))),
        ("distr_plus", s(&imax(v, w)), max(s(w), imax(&s(v), w))),
    ]
}

/// Rewrites of a single node into an equivalent one. Each is an instance of a
/// distribution law or of idempotence/commutativity, read in either direction.
fn equivalent_rewrites(t: &Level) -> Vec<Level> {
    use Level::*;
    let mut out = vec![Level::max(t.clone(), t.clone()), Level::imax(t.clone(), t.clone())];
    match t {
        Max(a, b) => {
            out.push(Level::max((**b).clone(), (**a).clone()));
            if a == b {
                out.push((**a).clone());
            }
            if let (IMax(u1, v), IMax(u2, w)) = (a.as_ref(), b.as_ref()) {
                if u1 == u2 {
                    out.push(Level::imax((**u1).clone(), Level::max((**v).clone(), (**w).clone())));
                }
                if v == w {
                    out.push(Level::imax(Level::max((**u1).clone(), (**u2).clone()), (**v).clone()));
                }
            }
            if let (Succ(u), Succ(v)) = (a.as_ref(), b.as_ref()) {
                out.push(Level::succ(Level::max((**u).clone(), (**v).clone())));
            }
        }
        IMax(u, b) => {
            if u == b {
                out.push((**u).clone());
            }
            match b.as_ref() {
                Max(v, w) => out.push(Level::max(
                    Level::imax((**u).clone(), (**v).clone()),
                    Level::imax((**u).clone(), (**w).clone()),
                )),
                IMax(v, w) => out.push(Level::max(
                    Level::imax((**u).clone(), (**w).clone()),
                    Level::imax((**v).clone(), (**w).clone()),
                )),
                Zero => out.push(Zero),
                Succ(_) => out.push(Level::max((**u).clone(), (**b).clone())),
                Var(_) => {}
            }
            if let Max(u1, u2) = u.as_ref() {
                out.push(Level::max(
                    Level::imax((**u1).clone(), (**b).clone()),
                    Level::imax((**u2).clone(), (**b).clone()),
                ));
            }
        }
        Succ(inner) => match inner.as_ref() {
            IMax(v, w) => out.push(Level::max(
                Level::succ((**w).clone()),
                Level::imax(Level::succ((**v).clone()), (**w).clone()),
            )),
            Max(a, b) => out.push(Level::max(Level::succ((**a).clone()), Level::succ((**b).clone()))),
            _ => {}
        },
        Zero | Var(_) => {}
    }
    out
}

fn node_paths(t: &Level, path: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    out.push(path.clone());
    let kids: Vec<&Level> = match t {
        Level::Succ(a) => vec![a],
        Level::Max(a, b) | Level::IMax(a, b) => vec![a, b],
        _ => vec![],
    };
    for (i, k) in kids.into_iter().enumerate() {
        path.push(i as u8);
        node_paths(k, path, out);
        path.pop();
    }
}

fn node_mut<'a>(t: &'a mut Level, path: &[u8]) -> &'a mut Level {
    path.iter().fold(t, |t, i| match (t, i) {
        (Level::Succ(a), _) => a.as_mut(),
        (Level::Max(a, _) | Level::IMax(a, _), 0) => a.as_mut(),
        (Level::Max(_, b) | Level::IMax(_, b), _) => b.as_mut(),
        _ => unreachable!("path leads through a leaf"),
    })
}

/// A level equivalent to `t`, built by applying `rounds` randomly placed
/// equivalence-preserving rewrites.
pub fn equivalent_variant(t: &Level, rounds: usize, rng: &mut impl Rng) -> Level {
    let mut t = t.clone();
    for _ in 0..rounds {
        let mut paths = Vec::new();
        node_paths(&t, &mut Vec::new(), &mut paths);
        let path = &paths[rng.gen_range(0..paths.len())];
        let node = node_mut(&mut t, path);
        let mut options = equivalent_rewrites(node);
        // prefer the law instances over the always-available wrappers
        if options.len() > 2 && rng.gen_bool(0.8) {
            options.drain(..2);
        }
        *node = options.swap_remove(rng.gen_range(0..options.len()));
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase {
    /// Evaluating the representation disagreed with evaluating the level.
    Eval,
    /// Reducing the encoding did not reach the encoded representation.
    Rewrite,
    /// The comparison verdict disagreed with the grid oracle.
    Compare,
    /// A sublevel comparison disagreed with the grid.
    Sublevel,
}

/// The first disagreement found for one case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub phase: Phase,
    pub level: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, u64>>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct StepStats {
    pub count: u64,
    pub total: u64,
    pub min: u64,
    pub max: u64,
    pub mean: f64,
}

impl StepStats {
    pub fn record(&mut self, steps: u64) {
        self.min = if self.count == 0 { steps } else { self.min.min(steps) };
        self.max = self.max.max(steps);
        self.count += 1;
        self.total += steps;
        self.mean = self.total as f64 / self.count as f64;
    }

    pub fn merge(&mut self, other: &StepStats) {
        if other.count == 0 {
            return;
        }
        self.min = if self.count == 0 { other.min } else { self.min.min(other.min) };
        self.max = self.max.max(other.max);
        self.count += other.count;
        self.total += other.total;
        self.mean = self.total as f64 / self.count as f64;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct DiffReport {
    pub cases_run: u64,
    pub failures: Vec<Failure>,
    pub step_stats: StepStats,
}

impl DiffReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

fn witness_map(sigma: &Valuation<u64>, names: &NameTable) -> BTreeMap<String, u64> {
    sigma.iter().map(|(x, v)| (names.display(x), *v)).collect()
}

/// Settings for [`differential_case`].
#[derive(Clone, Copy, Debug)]
pub struct CaseOptions {
    /// Grid bound for the comparison oracle; `None` uses the largest successor depth plus 3.
    pub bound: Option<u32>,
    pub budget: u64,
    /// Random valuations tried in the evaluation phase.
    pub valuations: usize,
    pub seed: u64,
}

impl Default for CaseOptions {
    fn default() -> Self {
        CaseOptions { bound: None, budget: 1_000_000, valuations: 50, seed: 0 }
    }
}

/// Runs the three phases on `t` (and `pair` for the comparison) and returns the
/// first disagreement. `steps` receives the reduction length of `t`.
pub fn differential_case(
    rules: &RuleSet,
    names: &NameTable,
    t: &Level,
    pair: &Level,
    opts: &CaseOptions,
    steps: &mut StepStats,
) -> Option<Failure> {
    let text = |l: &Level| print_level(l, names);
    let r = normalize(t);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let vars = t.vars();
    let value_bound = u64::from(default_bound(t, t));
    let corners = [0, 1].map(|v| vars.iter().map(|x| (x, v)).collect::<Valuation<u64>>());
    let sampled = (0..opts.valuations).map(|_| gen_valuation(&vars, value_bound, &mut rng));
    for sigma in corners.into_iter().chain(sampled) {
        let (want, got) = (eval(t, &sigma), r.eval(&sigma));
        if want != got {
            return Some(Failure {
                phase: Phase::Eval,
                level: text(t),
                pair: None,
                witness: Some(witness_map(&sigma, names)),
                detail: format!("level evaluates to {want:?}, representation to {got:?}"),
            });
        }
    }

    let check = check_soundness(rules, t, opts.budget);
    steps.record(check.report.steps);
    if !check.holds() {
        let detail = if check.report.budget_exhausted {
            format!("budget of {} steps exhausted", opts.budget)
        } else {
            format!("reduced to `{}`, expected `{}`", check.report.result, check.expected)
        };
        return Some(Failure { phase: Phase::Rewrite, level: text(t), pair: None, witness: None, detail });
    }

    let bound = opts.bound.unwrap_or_else(|| default_bound(t, pair));
    for (a, b) in [(t, pair), (pair, t)] {
        let claimed = level_leq(a, b);
        let witness = find_counterexample_leq::<u64>(a, b, bound);
        let detail = match (&witness, claimed) {
            (Some(_), true) => "decided leq, but the oracle found a counterexample",
            (None, false) => "decided not leq, but no counterexample within the bound",
            _ => continue,
        };
        return Some(Failure {
            phase: Phase::Compare,
            level: text(a),
            pair: Some(text(b)),
            witness: witness.map(|s| witness_map(&s, names)),
            detail: detail.to_string(),
        });
    }
    None
}

/// Settings for [`run_fuzz`].
#[derive(Clone, Copy, Debug)]
pub struct FuzzConfig {
    pub gen: GenConfig,
    pub cases: u64,
    pub case: CaseOptions,
    pub threads: usize,
}

/// Runs `cfg.cases` differential cases. Odd cases pair a level with an
/// independently drawn one, even cases with an equivalent variant of itself.
/// The report does not depend on the thread count.
pub fn run_fuzz(rules: &RuleSet, cfg: &FuzzConfig) -> DiffReport {
    let names = NameTable::generated(cfg.gen.num_vars);
    let threads = cfg.threads.max(1) as u64;
    let run_slice = |worker: u64| {
        let mut stats = StepStats::default();
        let mut failures = Vec::new();
        let mut i = worker;
        while i < cfg.cases {
            let t = gen_level(&cfg.gen, i);
            let mut rng = stream_rng(cfg.gen.seed, i.wrapping_mul(2).wrapping_add(1));
            let pair = if i % 2 == 1 {
                gen_level_with(&cfg.gen, &mut rng)
            } else {
                let rounds = rng.gen_range(1..=4);
                equivalent_variant(&t, rounds, &mut rng)
            };
            let opts = CaseOptions { seed: rng.gen(), ..cfg.case };
            if let Some(f) = differential_case(rules, &names, &t, &pair, &opts, &mut stats) {
                failures.push((i, f));
            }
            i += threads;
        }
        (stats, failures)
    };
    let parts: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads).map(|w| s.spawn(move || run_slice(w))).collect();
        handles.into_iter().map(|h| h.join().expect("fuzz worker panicked")).collect()
    });
    let mut report = DiffReport { cases_run: cfg.cases, ..DiffReport::default() };
    let mut failures = Vec::new();
    for (stats, fs) in parts {
        report.step_stats.merge(&stats);
        failures.extend(fs);
    }
    failures.sort_by_key(|(i, _)| *i);
    report.failures = failures.into_iter().map(|(_, f)| f).collect();
    report
}

/// Compares `leq` against grid semantics for every ordered pair of sublevels over
/// `max_vars` variables with shifts up to `max_shift`, values in `0..=bound`.
pub fn exhaustive_sublevel_suite(max_vars: u32, max_shift: u32, bound: u32) -> DiffReport {
    let atoms = all_sublevels(max_vars, max_shift);
    let vars: VarSet = (0..max_vars).map(VarId).collect();
    let mut grid = Vec::new();
    search_grid::<u64>(&vars, bound, |sigma| {
        grid.push(sigma.clone());
        false
    });
    let values: Vec<Vec<u64>> = atoms
        .iter()
        .map(|u| grid.iter().map(|s| u.eval(s).expect("grid binds every variable")).collect())
        .collect();
    let names = NameTable::generated(max_vars);
    let mut report = DiffReport::default();
    for (i, u) in atoms.iter().enumerate() {
        for (j, v) in atoms.iter().enumerate() {
            report.cases_run += 1;
            let witness = (0..grid.len()).find(|k| values[i][*k] > values[j][*k]);
            if u.leq(v) == witness.is_none() {
                continue;
            }
            report.failures.push(Failure {
                phase: Phase::Sublevel,
                level: print_sublevel(u, &names),
                pair: Some(print_sublevel(v, &names)),
                witness: witness.map(|k| witness_map(&grid[k], &names)),
                detail: format!("leq decided {}", u.leq(v)),
            });
        }
    }
    report
}
