//! Rewrite rules and the builtin rule set.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::signature::{Sort, Sym};
use super::term::{PatVar, RTerm, SortError, TermParseError, TermParser};

/// `lhs --> rhs`, with the names of the pattern variables kept for printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    lhs: RTerm,
    rhs: RTerm,
    vars: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("missing `-->` in rule")]
    MissingArrow,
    #[error(transparent)]
    Parse(#[from] TermParseError),
    #[error("left-hand side must be headed by a symbol")]
    VariableHead,
    #[error("right-hand side variable `{0}` does not occur on the left")]
    UnboundVariable(String),
}

impl RewriteRule {
    pub fn new(lhs: RTerm, rhs: RTerm, vars: Vec<String>) -> Result<RewriteRule, RuleError> {
        if lhs.head().is_none() {
            return Err(RuleError::VariableHead);
        }
        let (mut left, mut right) = (Vec::new(), Vec::new());
        lhs.collect_vars(&mut left);
        rhs.collect_vars(&mut right);
        if let Some(v) = right.iter().find(|v| !left.contains(v)) {
            let name = vars.get(v.0 as usize).cloned().unwrap_or_else(|| format!("?{}", v.0));
            return Err(RuleError::UnboundVariable(name));
        }
        Ok(RewriteRule { lhs, rhs, vars })
    }

    /// Parses `lhs --> rhs` in prefix-application syntax. Identifiers starting with
    /// an uppercase letter that are not symbols are pattern variables.
    pub fn parse(text: &str) -> Result<RewriteRule, RuleError> {
        let (l, r) = text.split_once("-->").ok_or(RuleError::MissingArrow)?;
        let mut vars = Vec::new();
        let lhs = {
            let mut p = TermParser::new(l, Some(&mut vars))?;
            let t = p.term()?;
            p.finish()?;
            t
        };
        let rhs = {
            let mut p = TermParser::new(r, Some(&mut vars))?;
            let t = p.term()?;
            p.finish()?;
            t
        };
        RewriteRule::new(lhs, rhs, vars)
    }

    pub fn lhs(&self) -> &RTerm {
        &self.lhs
    }

    pub fn rhs(&self) -> &RTerm {
        &self.rhs
    }

    pub fn head(&self) -> Sym {
        self.lhs.head().expect("checked at construction")
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    /// Infers pattern-variable sorts from the left-hand side and checks that both
    /// sides are well sorted with the same sort.
    pub fn check_sorts(&self) -> Result<Sort, SortError> {
        let mut var_sorts: Vec<Option<Sort>> = vec![None; self.vars.len()];
        infer_var_sorts(&self.lhs, None, &mut var_sorts)?;
        let left = sort_with(&self.lhs, &var_sorts)?;
        let right = sort_with(&self.rhs, &var_sorts)?;
        if left != right {
            return Err(SortError::RuleSides { lhs: left, rhs: right });
        }
        Ok(left)
    }

    /// Matches the left-hand side against `term` and returns the instantiated
    /// right-hand side.
    pub fn apply(&self, term: &RTerm) -> Option<RTerm> {
        let binding = match_term(&self.lhs, term, self.vars.len())?;
        Some(instantiate(&self.rhs, &binding))
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} --> {}", self.lhs.display_with(&self.vars), self.rhs.display_with(&self.vars))
    }
}

fn infer_var_sorts(t: &RTerm, expected: Option<Sort>, out: &mut [Option<Sort>]) -> Result<(), SortError> {
    match t {
        RTerm::Var(PatVar(i)) => {
            let slot = &mut out[*i as usize];
            match (*slot, expected) {
                (Some(a), Some(b)) if a != b => return Err(SortError::VarConflict { first: a, second: b }),
                (None, e) => *slot = e,
                _ => {}
            }
            Ok(())
        }
        RTerm::App(sym, args) => {
            for (a, s) in args.iter().zip(sym.arg_sorts()) {
                infer_var_sorts(a, Some(*s), out)?;
            }
            Ok(())
        }
    }
}

fn sort_with(t: &RTerm, var_sorts: &[Option<Sort>]) -> Result<Sort, SortError> {
    match t {
        RTerm::Var(PatVar(i)) => var_sorts[*i as usize].ok_or(SortError::NotGround),
        RTerm::App(sym, args) => {
            for (i, (a, want)) in args.iter().zip(sym.arg_sorts()).enumerate() {
                let got = sort_with(a, var_sorts)?;
                if got != *want {
                    return Err(SortError::Mismatch { sym: *sym, index: i, want: *want, got });
                }
            }
            Ok(sym.result_sort())
        }
    }
}

/// Binding produced by matching: one slot per pattern variable.
pub type Binding<'t> = Vec<Option<&'t RTerm>>;

/// Matches `pattern` against the ground `term`. Repeated pattern variables must
/// bind syntactically equal subterms.
pub fn match_term<'t>(pattern: &RTerm, term: &'t RTerm, var_count: usize) -> Option<Binding<'t>> {
    let mut binding = vec![None; var_count];
    match_into(pattern, term, &mut binding).then_some(binding)
}

fn match_into<'t>(pattern: &RTerm, term: &'t RTerm, binding: &mut Binding<'t>) -> bool {
    match (pattern, term) {
        (RTerm::Var(PatVar(i)), _) => {
            let slot = &mut binding[*i as usize];
            match slot {
                Some(prev) => *prev == term,
                None => {
                    *slot = Some(term);
                    true
                }
            }
        }
        (RTerm::App(p, pargs), RTerm::App(t, targs)) => {
            p == t && pargs.iter().zip(targs).all(|(pa, ta)| match_into(pa, ta, binding))
        }
        (RTerm::App(..), RTerm::Var(_)) => false,
    }
}

fn instantiate(template: &RTerm, binding: &Binding<'_>) -> RTerm {
    match template {
        RTerm::Var(PatVar(i)) => binding[*i as usize].expect("rhs variables occur in lhs").clone(),
        RTerm::App(s, args) => RTerm::App(*s, args.iter().map(|a| instantiate(a, binding)).collect()),
    }
}

/// An ordered rule sequence, indexed by head symbol.
#[derive(Clone, Debug)]
pub struct RuleSet {
    rules: Vec<RewriteRule>,
    by_head: HashMap<Sym, Vec<usize>>,
}

impl RuleSet {
    pub fn new(rules: Vec<RewriteRule>) -> RuleSet {
        let mut by_head: HashMap<Sym, Vec<usize>> = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            by_head.entry(r.head()).or_default().push(i);
        }
        RuleSet { rules, by_head }
    }

    /// The corrected builtin rules.
    pub fn builtin() -> RuleSet {
        RuleSet::new(builtin_ruleset(RuleFlavor::Corrected))
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// The first rule, in order, that rewrites `term` at its root.
    pub fn rewrite_root(&self, term: &RTerm) -> Option<(usize, RTerm)> {
        let head = term.head()?;
        self.by_head
            .get(&head)?
            .iter()
            .find_map(|&i| self.rules[i].apply(term).map(|t| (i, t)))
    }

    pub fn is_redex(&self, term: &RTerm) -> bool {
        let Some(head) = term.head() else { return false };
        self.by_head.get(&head).is_some_and(|idx| {
            idx.iter().any(|&i| match_term(self.rules[i].lhs(), term, self.rules[i].var_count()).is_some())
        })
    }

    /// One rule per line, `lhs --> rhs`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for r in &self.rules {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }
}

/// Which variant of the level rules to emit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleFlavor {
    /// Rules that agree with the sublevel semantics.
    Corrected,
    /// The displayed rules taken literally, kept to demonstrate where they go wrong.
    PaperLiteral,
}

const BOOL_RULES: &str = "
and true B --> B
and false B --> false
or true B --> true
or false B --> B
not true --> false
not false --> true
";

const NAT_RULES: &str = "
plus N zeroN --> N
plus N (succN M) --> succN (plus N M)
maxN zeroN M --> M
maxN (succN N) zeroN --> succN N
maxN (succN N) (succN M) --> succN (maxN N M)
leqN zeroN M --> true
leqN (succN N) zeroN --> false
leqN (succN N) (succN M) --> leqN N M
eqN zeroN zeroN --> true
eqN zeroN (succN M) --> false
eqN (succN N) zeroN --> false
eqN (succN N) (succN M) --> eqN N M
ltN N zeroN --> false
ltN zeroN (succN M) --> true
ltN (succN N) (succN M) --> ltN N M
";

const ITE_RULES: &str = "
iteL true U V --> U
iteL false U V --> V
iteNS true U V --> U
iteNS false U V --> V
iteSLS true U V --> U
iteSLS false U V --> V
";

const NAT_SET_RULES: &str = "
addN nilN X --> consN X nilN
addN (consN H T) X --> iteNS (ltN X H) (consN X (consN H T)) (iteNS (eqN X H) (consN H T) (consN H (addN T X)))
unionN nilN F --> F
unionN (consN H T) F --> unionN T (addN F H)
memN X nilN --> false
memN X (consN H T) --> or (eqN X H) (memN X T)
subsetN nilN E --> true
subsetN (consN H T) E --> and (memN H E) (subsetN T E)
eqSetN nilN nilN --> true
eqSetN nilN (consN H T) --> false
eqSetN (consN H T) nilN --> false
eqSetN (consN H T) (consN H2 T2) --> and (eqN H H2) (eqSetN T T2)
ordSetN nilN F --> true
ordSetN (consN H T) nilN --> false
ordSetN (consN H T) (consN H2 T2) --> or (ltN H H2) (and (eqN H H2) (ordSetN T T2))
ltSetN E nilN --> false
ltSetN nilN (consN H T) --> true
ltSetN (consN H T) (consN H2 T2) --> or (ltN H H2) (and (eqN H H2) (ltSetN T T2))
delN nilN X --> nilN
delN (consN H T) X --> iteNS (eqN H X) T (consN H (delN T X))
";

const SUBLEVEL_SET_RULES: &str = "
addS nilS U --> consS U nilS
addS (consS W Q) U --> iteSLS (ordSL U W) (iteSLS (ordSL W U) (consS W Q) (consS U (consS W Q))) (consS W (addS Q U))
";

const SUBLEVEL_ORDER_RULES: &str = "
ordSL (As E X S) (Bs F K) --> true
ordSL (Bs E S) (As F Y K) --> false
ordSL (As E X S) (As F Y K) --> or (ltSetN E F) (and (eqSetN E F) (or (ltN X Y) (and (eqN X Y) (leqN S K))))
ordSL (Bs E S) (Bs F K) --> or (ltSetN E F) (and (eqSetN E F) (leqN S K))
";

const SUBLEVEL_LEQ_RULES: &str = "
leqSL (As E X S) (Bs F K) --> false
leqSL (Bs E S) (Bs F K) --> and (subsetN F E) (leqN S K)
leqSL (Bs E (succN S)) (As F Y K) --> and (subsetN F E) (leqN S K)
leqSL (As E X S) (As F Y K) --> and (subsetN F E) (and (eqN X Y) (leqN S K))
";

const ZERO_RULE: &str = "zeroL --> maxS nilS";
const VAR_RULE: &str = "varL X --> maxS (addS nilS (As (addN nilN X) X zeroN))";
const VAR_RULE_LITERAL: &str = "varL X --> maxS (addS nilS (As (addN nilN X) zeroN X))";

const SUCC_SET_RULES: &str = "
succSL nilS --> nilS
succSL (consS (Bs E S) Q) --> addS (succSL Q) (Bs E (succN S))
succSL (consS (As E X S) Q) --> addS (succSL Q) (As E X (succN S))
succL (maxS nilS) --> maxS (addS nilS (Bs nilN (succN zeroN)))
";
const SUCC_RULE: &str =
    "succL (maxS (consS U Q)) --> maxS (maxHelper (succSL (consS U Q)) (Bs nilN (succN zeroN)))";
const SUCC_RULE_LITERAL: &str = "succL (maxS (consS U Q)) --> maxS (succSL (consS U Q))";

const MAX_HELPER_BASE: &str = "maxHelper nilS U --> addS nilS U";
const MAX_HELPER_STEP: &str = "maxHelper (consS U E) V --> iteSLS (leqSL V U) (addS E U) (iteSLS (leqSL U V) (maxHelper E V) (addS (maxHelper E V) U))";
const MAX_HELPER_STEP_LITERAL: &str = "maxHelper (consS U E) V --> iteSLS (leqSL V U) (addS E U) (iteSLS (leqSL U V) (addS E V) (addS (maxHelper E V) U))";

const MAX_RULES: &str = "
maxL (maxS E) (maxS nilS) --> maxS E
maxL (maxS E) (maxS (consS U F)) --> maxL (maxS (maxHelper E U)) (maxS F)
";

const RULE_RULES: &str = "
ruleSL (As E X S) (Bs F K) --> maxL (maxS (addS nilS (As (unionN E F) X S))) (maxS (addS nilS (Bs F K)))
ruleSL (Bs E S) (Bs F K) --> maxL (maxS (addS nilS (Bs (unionN E F) S))) (maxS (addS nilS (Bs F K)))
ruleSL (Bs E S) (As F X K) --> maxL (maxS (addS nilS (Bs (unionN E F) S))) (maxS (addS nilS (As F X K)))
ruleSL (As E X S) (As F Y K) --> maxL (maxS (addS nilS (As (unionN E F) X S))) (maxS (addS nilS (As F Y K)))
ruleL (maxS nilS) T --> T
ruleL (maxS (consS U Q)) T --> maxL (ruleHelper U T) (ruleL (maxS Q) T)
ruleHelper U (maxS nilS) --> maxS nilS
ruleHelper U (maxS (consS V Q)) --> maxL (ruleSL U V) (ruleHelper U (maxS Q))
";

const EVAL_B_RULE: &str = "evalS (Bs E S) Y N --> iteL (and (memN Y E) (eqN N zeroN)) (maxS nilS) (maxS (addS nilS (Bs (delN E Y) S)))";
const EVAL_A_RULE: &str = "evalS (As E X S) Y N --> iteL (and (memN Y E) (eqN N zeroN)) (maxS nilS) (iteL (eqN X Y) (maxS (addS nilS (Bs (delN E Y) (plus S N)))) (maxS (addS nilS (As (delN E Y) X S))))";
const EVAL_A_RULE_LITERAL: &str = "evalS (As E X S) Y N --> iteL (and (memN Y E) (eqN N zeroN)) (maxS nilS) (iteL (eqN X Y) (maxS (addS nilS (Bs nilN (plus S N)))) (maxS (addS nilS (As (delN E Y) X S))))";

const EVAL_L_RULES: &str = "
evalL (maxS nilS) Y N --> maxS nilS
evalL (maxS (consS U Q)) Y N --> maxL (evalS U Y N) (evalL (maxS Q) Y N)
";

/// The complete rule sequence, in the order rules are tried.
pub fn builtin_ruleset(flavor: RuleFlavor) -> Vec<RewriteRule> {
    let literal = flavor == RuleFlavor::PaperLiteral;
    let pick = |fixed: &'static str, lit: &'static str| if literal { lit } else { fixed };
    let blocks: [&str; 18] = [
        BOOL_RULES,
        NAT_RULES,
        ITE_RULES,
        NAT_SET_RULES,
        SUBLEVEL_SET_RULES,
        SUBLEVEL_ORDER_RULES,
        SUBLEVEL_LEQ_RULES,
        ZERO_RULE,
        pick(VAR_RULE, VAR_RULE_LITERAL),
        SUCC_SET_RULES,
        pick(SUCC_RULE, SUCC_RULE_LITERAL),
        MAX_HELPER_BASE,
        pick(MAX_HELPER_STEP, MAX_HELPER_STEP_LITERAL),
        MAX_RULES,
        RULE_RULES,
        EVAL_B_RULE,
        pick(EVAL_A_RULE, EVAL_A_RULE_LITERAL),
        EVAL_L_RULES,
    ];
    blocks
        .iter()
        .flat_map(|b| b.lines())
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| RewriteRule::parse(l).unwrap_or_else(|e| panic!("builtin rule `{l}`: {e}")))
        .collect()
}
