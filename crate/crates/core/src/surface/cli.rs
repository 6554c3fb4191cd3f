//! The `levels` command line.
//!
//! Exit codes: 0 success (or `true`), 1 `false`, 2 usage or parse error,
//! 3 internal invariant violation. Diagnostics go to the error stream.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use super::{export_framework, parse_level, print_repr, print_repr_json, NameTable};
use crate::harness::{run_fuzz, CaseOptions, FuzzConfig, GenConfig};
use crate::level::{eval, EvalError, Level};
use crate::repr::{level_eq, level_leq, normalize, Repr};
use crate::rewrite::{
    builtin_ruleset, decode_repr, encode_level, encode_repr, reduce_traced, RuleFlavor, RuleSet, Strategy,
};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Successor depth above which unary numerals in the rewrite encoding get large.
const DEEP_SUCC_WARNING: u32 = 64;

#[derive(Parser, Debug)]
#[command(name = "levels", version, about = "Normalize and compare universe levels with max and imax")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the minimal representation of a level
    Normalize {
        expr: String,
        /// Print JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Decide E1 <= E2 under every valuation (exit 0 for true, 1 for false)
    Leq { e1: String, e2: String },
    /// Decide equivalence (exit 0 for true, 1 for false)
    Eq { e1: String, e2: String },
    /// Normalize, then substitute numerals for variables
    Subst {
        expr: String,
        /// Substitutions `NAME=NAT`, applied left to right
        #[arg(required = true)]
        bindings: Vec<String>,
    },
    /// Evaluate a level under a valuation
    Eval {
        expr: String,
        /// Comma-separated `NAME=NAT` pairs
        #[arg(long = "val", default_value = "")]
        val: String,
    },
    /// Reduce the encoded level with the rewrite rules
    Rewrite {
        expr: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Innermost)]
        strategy: StrategyArg,
        /// Seed for the random strategy
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print every contraction
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = 1_000_000)]
        max_steps: u64,
        /// Use the rules exactly as displayed in the literature, including their defects
        #[arg(long)]
        paper_literal_rules: bool,
    },
    /// Print declarations, rules and optionally an encoded query
    Export { expr: Option<String> },
    /// Run the differential harness on random levels
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        cases: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest level size in nodes
        #[arg(long, default_value_t = 50)]
        size: usize,
        /// Oracle grid bound (default: largest successor depth plus 3)
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long, default_value_t = 3)]
        vars: u32,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Innermost,
    Outermost,
    Random,
}

struct Failure(i32, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn parse(text: &str, names: &mut NameTable) -> Result<Level, Failure> {
    parse_level(text, names).map_err(|e| usage(format!("cannot parse `{text}`: {e}")))
}

fn normalized(t: &Level) -> Result<Repr, Failure> {
    let r = normalize(t);
    if !r.is_minimal() {
        return Err(Failure(EXIT_INTERNAL, format!("normal form {r} is not minimal")));
    }
    Ok(r)
}

fn binding<T: std::str::FromStr>(text: &str) -> Result<(&str, T), Failure> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| usage(format!("expected NAME=NAT, found `{text}`")))?;
    let value = value.trim().parse().map_err(|_| usage(format!("`{value}` is not a natural number")))?;
    Ok((name.trim(), value))
}

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_TRUE };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn verdict(out: &mut dyn Write, b: bool) -> Result<i32, Failure> {
    writeln!(out, "{b}").map_err(io)?;
    Ok(if b { EXIT_TRUE } else { EXIT_FALSE })
}

fn io(e: std::io::Error) -> Failure {
    Failure(EXIT_INTERNAL, format!("write failed: {e}"))
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let mut names = NameTable::new();
    match command {
        Command::Normalize { expr, json } => {
            let r = normalized(&parse(&expr, &mut names)?)?;
            let text = if json { print_repr_json(&r, &names) } else { print_repr(&r, &names) };
            writeln!(out, "{text}").map_err(io)?;
            Ok(EXIT_TRUE)
        }
        Command::Leq { e1, e2 } => {
            let (a, b) = (parse(&e1, &mut names)?, parse(&e2, &mut names)?);
            verdict(out, level_leq(&a, &b))
        }
        Command::Eq { e1, e2 } => {
            let (a, b) = (parse(&e1, &mut names)?, parse(&e2, &mut names)?);
            verdict(out, level_eq(&a, &b))
        }
        Command::Subst { expr, bindings } => {
            let mut r = normalized(&parse(&expr, &mut names)?)?;
            for text in &bindings {
                let (name, n): (_, u32) = binding(text)?;
                let y = names.intern(name);
                r = r.subst(y, n);
                if !r.is_minimal() {
                    return Err(Failure(EXIT_INTERNAL, format!("substitution produced non-minimal {r}")));
                }
            }
            writeln!(out, "{}", print_repr(&r, &names)).map_err(io)?;
            Ok(EXIT_TRUE)
        }
        Command::Eval { expr, val } => {
            let t = parse(&expr, &mut names)?;
            let mut sigma = crate::BigValuation::new();
            for text in val.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (name, n): (_, BigUint) = binding(text)?;
                let x = names.id(name).ok_or_else(|| usage(format!("`{name}` does not occur in `{expr}`")))?;
                sigma.bind(x, n);
            }
            match eval(&t, &sigma) {
                Ok(v) => {
                    writeln!(out, "{v}").map_err(io)?;
                    Ok(EXIT_TRUE)
                }
                Err(EvalError::Unbound(x)) => Err(usage(format!("no value for `{}`", names.display(x)))),
                Err(e) => Err(Failure(EXIT_INTERNAL, e.to_string())),
            }
        }
        Command::Rewrite { expr, strategy, seed, trace, max_steps, paper_literal_rules } => {
            let t = parse(&expr, &mut names)?;
            if t.succ_depth() > DEEP_SUCC_WARNING {
                let _ = writeln!(
                    err,
                    "warning: successor depth {} exceeds {DEEP_SUCC_WARNING}; unary numerals make reduction slow",
                    t.succ_depth()
                );
            }
            if max_steps == 0 {
                return Err(usage("--max-steps must be positive"));
            }
            let flavor = if paper_literal_rules { RuleFlavor::PaperLiteral } else { RuleFlavor::Corrected };
            let rules = RuleSet::new(builtin_ruleset(flavor));
            let strategy = match strategy {
                StrategyArg::Innermost => Strategy::LeftmostInnermost,
                StrategyArg::Outermost => Strategy::LeftmostOutermost,
                StrategyArg::Random => Strategy::Random(seed),
            };
            let mut write_failed = None;
            let mut count = 0u64;
            let report = reduce_traced(encode_level(&t), &rules, strategy, max_steps, &mut |step| {
                if trace {
                    count += 1;
                    if let Err(e) =
                        writeln!(out, "{count}: [{}] {} --> {}", step.rule, step.redex, step.contractum)
                    {
                        write_failed.get_or_insert(e);
                    }
                }
            });
            if let Some(e) = write_failed {
                return Err(io(e));
            }
            writeln!(out, "{}", report.result).map_err(io)?;
            writeln!(out, "steps: {}", report.steps).map_err(io)?;
            if report.budget_exhausted {
                let _ = writeln!(err, "warning: step budget of {max_steps} exhausted before a normal form");
                return Ok(EXIT_FALSE);
            }
            if flavor == RuleFlavor::Corrected {
                let expected = encode_repr(&normalize(&t));
                if report.result != expected || decode_repr(&report.result).is_err() {
                    return Err(Failure(
                        EXIT_INTERNAL,
                        format!("rewriting disagrees with the normalizer, which gives {expected}"),
                    ));
                }
            }
            Ok(EXIT_TRUE)
        }
        Command::Export { expr } => {
            let t = expr.map(|e| parse(&e, &mut names)).transpose()?;
            write!(out, "{}", export_framework(&RuleSet::builtin(), t.as_ref())).map_err(io)?;
            Ok(EXIT_TRUE)
        }
        Command::Fuzz { cases, seed, size, bound, vars, budget, threads } => {
            if size == 0 {
                return Err(usage("--size must be at least 1"));
            }
            let gen = GenConfig { seed, max_size: size, num_vars: vars, ..GenConfig::default() };
            let case = CaseOptions { bound, budget, ..CaseOptions::default() };
            let report = run_fuzz(&RuleSet::builtin(), &FuzzConfig { gen, cases, case, threads });
            writeln!(out, "{}", report.to_json()).map_err(io)?;
            Ok(if report.passed() { EXIT_TRUE } else { EXIT_INTERNAL })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_cli(std::iter::once("levels").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn worked_examples() {
        assert_eq!(run(&["eq", "imax(x,x)", "x"]), (0, "true\n".into(), String::new()));
        assert_eq!(run(&["leq", "s(x)", "x"]), (1, "false\n".into(), String::new()));
        let a = run(&["normalize", "max(imax(x,y),imax(y,x))"]);
        assert_eq!(a, run(&["normalize", "max(x,y)"]));
        assert_eq!(a.1, "max{A{x}(x)+0, A{y}(y)+0}\n");
    }

    #[test]
    fn errors_and_codes() {
        let (code, out, err) = run(&["normalize", "imax(x"]);
        assert_eq!((code, out.as_str()), (2, ""));
        assert!(err.contains("1:7"), "{err}");
        assert_eq!(run(&["frobnicate"]).0, 2);
        assert_eq!(run(&["eval", "max(x,y)", "--val", "x=3"]).0, 2);
        assert_eq!(run(&["subst", "x", "x"]).0, 2);
    }

    #[test]
    fn subcommands() {
        assert_eq!(run(&["eval", "imax(s(x), y)", "--val", "x=4,y=0"]).1, "0\n");
        assert_eq!(
            run(&["eval", "s(x)", "--val", "x=99999999999999999999999"]).1,
            "100000000000000000000000\n"
        );
        assert_eq!(run(&["subst", "imax(x, y)", "y=0"]).1, "max{}\n");
        assert_eq!(run(&["subst", "imax(x, y)", "y=2"]).1, "max{A{x}(x)+0, B{}+2}\n");
        assert_eq!(run(&["normalize", "--json", "1"]).1, "{\"atoms\":[{\"kind\":\"B\",\"set\":[],\"shift\":1}]}\n");
        let (code, out, _) = run(&["rewrite", "imax(x, x)"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next(), Some("maxS (consS (As (consN zeroN nilN) zeroN zeroN) nilS)"));
        let (code, _, err) = run(&["rewrite", "max(x, y)", "--max-steps", "3"]);
        assert_eq!(code, 1);
        assert!(err.contains("exhausted"));
        assert_eq!(run(&["export", "x"]).1.lines().last(), Some("varL zeroN"));
        let (code, out, _) = run(&["fuzz", "--cases", "10", "--size", "10", "--seed", "4"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.starts_with("{\"cases_run\":10,\"failures\":[]"));
    }

    #[test]
    fn literal_rules_differ_on_variables() {
        // the literal variable rule swaps the variable and shift slots, so the
        // second variable gets the ill-formed atom A({1}, 0, 1)
        let (code, out, _) = run(&["rewrite", "--paper-literal-rules", "max(y, x)"]);
        assert_eq!(code, 0);
        let nf = "maxS (consS (As (consN zeroN nilN) zeroN zeroN) (consS (As (consN (succN zeroN) nilN) zeroN (succN zeroN)) nilS))";
        assert_eq!(out.lines().next(), Some(nf));
        assert!(decode_repr(&crate::rewrite::parse_term(nf).unwrap()).is_err());
    }
}
