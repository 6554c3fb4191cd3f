//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::Instant;

use imax_levels::harness::{equivalent_variant, gen_level, gen_level_with, gen_valuation, semantic_laws};
use imax_levels::level::default_bound;
use imax_levels::rewrite::{check_soundness, sample_confluence};
use imax_levels::{
    eval, exhaustive_sublevel_suite, find_counterexample_leq, level_eq, normalize, parse_level, GenConfig, Level,
    NameTable, RuleSet, Valuation, VarId,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn parse2(a: &str, b: &str) -> (Level, Level, NameTable) {
    let mut names = NameTable::new();
    let l = parse_level(a, &mut names).unwrap();
    let r = parse_level(b, &mut names).unwrap();
    (l, r, names)
}

fn gen_cfg(seed: u64, max_size: usize) -> GenConfig {
    GenConfig { seed, max_size, num_vars: 3, const_bound: 3 }
}

fn equivalences() -> Outcome {
    let cases = [
        ("imax(x,x)", "x"),
        ("max(imax(x,y),x)", "max(x,y)"),
        ("max(s(x),x)", "s(x)"),
        ("max(x,x)", "x"),
        ("imax(x,s(y))", "max(x,s(y))"),
        ("max(imax(x,y),imax(y,x))", "max(x,y)"),
    ];
    for (a, b) in cases {
        let (l, r, _) = parse2(a, b);
        if !level_eq(&l, &r) {
            return Err(format!("{a} and {b} not identified"));
        }
    }
    Ok(format!("{} identities hold", cases.len()))
}

fn non_equivalence() -> Outcome {
    let (l, r, names) = parse2("s(imax(y,x))", "imax(s(y),s(x))");
    if level_eq(&l, &r) {
        return Err("identified".into());
    }
    let sigma: Valuation<u64> = [(names.id("x").unwrap(), 0), (names.id("y").unwrap(), 1)].into_iter().collect();
    let (a, b) = (eval(&l, &sigma).unwrap(), eval(&r, &sigma).unwrap());
    if a == b {
        return Err("x=0, y=1 does not distinguish".into());
    }
    let bound = default_bound(&l, &r);
    let found = find_counterexample_leq::<u64>(&l, &r, bound).or_else(|| find_counterexample_leq(&r, &l, bound));
    match found {
        Some(_) => Ok(format!("not equivalent; at x=0, y=1 values are {a} and {b}; oracle found a witness")),
        None => Err("oracle found no witness".into()),
    }
}

fn law_suite() -> Outcome {
    let cfg = gen_cfg(3, 15);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0usize;
    for i in 0..1000 {
        let (u, v, w) = (gen_level(&cfg, 3 * i), gen_level(&cfg, 3 * i + 1), gen_level(&cfg, 3 * i + 2));
        for (name, lhs, rhs) in semantic_laws(&u, &v, &w) {
            let vars = lhs.vars().union(&rhs.vars());
            let bound = u64::from(default_bound(&lhs, &rhs));
            for _ in 0..50 {
                let sigma = gen_valuation(&vars, bound, &mut rng);
                if eval(&lhs, &sigma) != eval(&rhs, &sigma) {
                    return Err(format!("{name} fails at triple {i}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("5 laws (6 equations) x 1000 triples x 50 valuations: {checked} evaluations agree"))
}

fn normalization_soundness() -> Outcome {
    let cfg = gen_cfg(4, 50);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..1000 {
        let t = gen_level(&cfg, i);
        let bound = u64::from(default_bound(&t, &t));
        let sigma = gen_valuation(&t.vars(), bound, &mut rng);
        if normalize(&t).eval(&sigma) != eval(&t, &sigma) {
            return Err(format!("case {i}: {t:?}"));
        }
    }
    Ok("1000 random (level, valuation) pairs agree".into())
}

fn comparison_completeness() -> Outcome {
    let report = exhaustive_sublevel_suite(3, 3, 6);
    if report.passed() {
        Ok(format!("{} sublevel pairs, zero mismatches", report.cases_run))
    } else {
        Err(format!("{} mismatches, first {:?}", report.failures.len(), report.failures[0]))
    }
}

fn uniqueness() -> Outcome {
    let cfg = gen_cfg(6, 20);
    let mut distinct = 0;
    let mut i = 0u64;
    while distinct < 500 {
        let (a, b) = (gen_level(&cfg, 2 * i), gen_level(&cfg, 2 * i + 1));
        i += 1;
        if level_eq(&a, &b) {
            continue;
        }
        let bound = default_bound(&a, &b);
        if find_counterexample_leq::<u64>(&a, &b, bound).is_none()
            && find_counterexample_leq::<u64>(&b, &a, bound).is_none()
        {
            return Err(format!("no witness separating {a:?} and {b:?}"));
        }
        distinct += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for j in 0..500 {
        let t = gen_level(&cfg, 10_000 + j);
        let rounds = rng.gen_range(1..=4);
        let v = equivalent_variant(&t, rounds, &mut rng);
        if !level_eq(&t, &v) {
            return Err(format!("variant of {t:?} not identified: {v:?}"));
        }
    }
    Ok(format!("500 inequivalent pairs witnessed ({i} drawn), 500 law-built variants identified"))
}

fn rewrite_soundness(rules: &RuleSet) -> Outcome {
    let cfg = gen_cfg(7, 50);
    let mut max_steps = 0;
    for i in 0..1000 {
        let t = gen_level(&cfg, i);
        let c = check_soundness(rules, &t, 1_000_000);
        if c.report.budget_exhausted {
            return Err(format!("case {i}: budget exhausted"));
        }
        if !c.holds() {
            return Err(format!("case {i}: {} != {}", c.report.result, c.expected));
        }
        max_steps = max_steps.max(c.report.steps);
    }
    Ok(format!("1000 levels of size <= 50, zero budget exhaustions, max {max_steps} steps"))
}

fn confluence(rules: &RuleSet) -> Outcome {
    let cfg = gen_cfg(8, 50);
    let mut total = 0;
    for i in 0..200 {
        let t = gen_level(&cfg, i);
        let s = sample_confluence(rules, &t, 5, i, 1_000_000);
        if !s.holds() {
            return Err(format!("case {i}: strategies disagree on {t:?}"));
        }
        total += s.steps().sum::<u64>();
    }
    Ok(format!("200 levels x 5 strategies reach identical normal forms ({total} steps)"))
}

fn substitution() -> Outcome {
    let cfg = gen_cfg(9, 30);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..500 {
        let t = gen_level_with(&cfg, &mut rng);
        let y = VarId(rng.gen_range(0..cfg.num_vars));
        let n = rng.gen_range(0..=4u32);
        let vars = t.vars();
        let sigma = gen_valuation(&vars, u64::from(default_bound(&t, &t)), &mut rng);
        let got = normalize(&t).subst(y, n).eval(&sigma);
        let want = eval(&t, &sigma.clone().with(y, u64::from(n)));
        if got != want {
            return Err(format!("case {i}: {got:?} != {want:?}"));
        }
    }
    Ok("500 random substitutions agree with evaluation".into())
}

fn cli_contract() -> Outcome {
    let run = |args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_levels")).args(args).output().expect("binary runs");
        (out.status.code(), out.stdout, out.stderr)
    };
    let eq = run(&["eq", "imax(x,x)", "x"]);
    if eq != (Some(0), b"true\n".to_vec(), vec![]) {
        return Err(format!("eq example gave {eq:?}"));
    }
    let leq = run(&["leq", "s(x)", "x"]);
    if leq != (Some(1), b"false\n".to_vec(), vec![]) {
        return Err(format!("leq example gave {leq:?}"));
    }
    let a = run(&["normalize", "max(imax(x,y),imax(y,x))"]);
    let b = run(&["normalize", "max(x,y)"]);
    if a != b || a.0 != Some(0) || a.1.is_empty() {
        return Err(format!("normalize outputs differ: {a:?} vs {b:?}"));
    }
    Ok(format!("3 examples byte-exact; normal form {}", String::from_utf8_lossy(&a.1).trim_end()))
}

fn main() -> ExitCode {
    let rules = RuleSet::builtin();
    let criteria: Vec<(&str, Check)> = vec![
        ("imax equivalences", Box::new(equivalences)),
        ("successor-over-imax non-equivalence", Box::new(non_equivalence)),
        ("semantic-law suite", Box::new(law_suite)),
        ("normalization soundness", Box::new(normalization_soundness)),
        ("comparison completeness (3,3,6)", Box::new(comparison_completeness)),
        ("uniqueness", Box::new(uniqueness)),
        ("rewrite-path soundness", Box::new(|| rewrite_soundness(&rules))),
        ("confluence sampling", Box::new(|| confluence(&rules))),
        ("substitution", Box::new(substitution)),
        ("CLI contract", Box::new(cli_contract)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
