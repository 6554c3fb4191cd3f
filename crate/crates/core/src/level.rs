//! Level syntax, valuations and the value of a level under a valuation.
//!
//! The bounded grid search at the bottom of this module is the ground-truth
//! oracle every symbolic procedure in the crate is tested against.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::nat::Natural;
use crate::varset::VarSet;

/// A level variable, identified by its index in the name table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u32);

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A universe level.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    Zero,
    Succ(Box<Level>),
    Max(Box<Level>, Box<Level>),
    IMax(Box<Level>, Box<Level>),
    Var(VarId),
}

impl Level {
    pub fn succ(inner: Level) -> Level {
        Level::Succ(Box::new(inner))
    }

    pub fn max(left: Level, right: Level) -> Level {
        Level::Max(Box::new(left), Box::new(right))
    }

    pub fn imax(left: Level, right: Level) -> Level {
        Level::IMax(Box::new(left), Box::new(right))
    }

    pub fn var(id: u32) -> Level {
        Level::Var(VarId(id))
    }

    /// The numeral `n`, i.e. `n` successors applied to zero.
    pub fn numeral(n: u32) -> Level {
        (0..n).fold(Level::Zero, |acc, _| Level::succ(acc))
    }

    /// `k` successors applied to `inner`.
    pub fn shifted(inner: Level, k: u32) -> Level {
        (0..k).fold(inner, |acc, _| Level::succ(acc))
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match self {
            Level::Zero | Level::Var(_) => 1,
            Level::Succ(t) => 1 + t.size(),
            Level::Max(a, b) | Level::IMax(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Largest number of successors stacked on any root-to-leaf path.
    pub fn succ_depth(&self) -> u32 {
        match self {
            Level::Zero | Level::Var(_) => 0,
            Level::Succ(t) => 1 + t.succ_depth(),
            Level::Max(a, b) | Level::IMax(a, b) => a.succ_depth().max(b.succ_depth()),
        }
    }

    /// The set of variables occurring in the level.
    pub fn vars(&self) -> VarSet {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        VarSet::from_iter(out)
    }

    fn collect_vars(&self, out: &mut Vec<VarId>) {
        match self {
            Level::Zero => {}
            Level::Var(x) => out.push(*x),
            Level::Succ(t) => t.collect_vars(out),
            Level::Max(a, b) | Level::IMax(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

/// Value lookup failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable {0} is not bound by the valuation")]
    Unbound(VarId),
    #[error("level value overflows the natural-number carrier")]
    Overflow,
}

/// A finite assignment of naturals to variables.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Valuation<N> {
    bindings: BTreeMap<VarId, N>,
}

impl<N: Natural> Valuation<N> {
    pub fn new() -> Self {
        Valuation { bindings: BTreeMap::new() }
    }

    /// Binds `x`, replacing any earlier binding.
    pub fn bind(&mut self, x: VarId, value: N) {
        self.bindings.insert(x, value);
    }

    pub fn with(mut self, x: VarId, value: N) -> Self {
        self.bind(x, value);
        self
    }

    pub fn get(&self, x: VarId) -> Result<&N, EvalError> {
        self.bindings.get(&x).ok_or(EvalError::Unbound(x))
    }

    pub fn unbind(&mut self, x: VarId) -> Option<N> {
        self.bindings.remove(&x)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, &N)> {
        self.bindings.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }
}

impl<N: Natural> FromIterator<(VarId, N)> for Valuation<N> {
    fn from_iter<I: IntoIterator<Item = (VarId, N)>>(iter: I) -> Self {
        Valuation { bindings: iter.into_iter().collect() }
    }
}

/// Impredicative maximum on naturals: `0` when `j` is `0`, `max(i, j)` otherwise.
pub fn imax_nat<N: Natural>(i: N, j: N) -> N {
    if j.is_zero() {
        j
    } else {
        i.max(j)
    }
}

/// The value of `t` under `sigma`.
pub fn eval<N: Natural>(t: &Level, sigma: &Valuation<N>) -> Result<N, EvalError> {
    Ok(match t {
        Level::Zero => N::zero(),
        Level::Var(x) => sigma.get(*x)?.clone(),
        Level::Succ(inner) => eval(inner, sigma)?.add_shift(1).ok_or(EvalError::Overflow)?,
        Level::Max(a, b) => eval(a, sigma)?.max(eval(b, sigma)?),
        Level::IMax(a, b) => imax_nat(eval(a, sigma)?, eval(b, sigma)?),
    })
}

/// Default grid bound for comparing two levels: their largest successor depth plus 3.
pub fn default_bound(t1: &Level, t2: &Level) -> u32 {
    t1.succ_depth().max(t2.succ_depth()) + 3
}

/// Runs `visit` on every valuation of `vars` with values in `0..=bound`, stopping at
/// the first valuation for which it returns `true`; that valuation is returned.
pub fn search_grid<N: Natural>(
    vars: &VarSet,
    bound: u32,
    mut visit: impl FnMut(&Valuation<N>) -> bool,
) -> Option<Valuation<N>> {
    let ids: Vec<VarId> = vars.iter().collect();
    let mut digits = vec![0u32; ids.len()];
    loop {
        let sigma: Valuation<N> =
            ids.iter().zip(&digits).map(|(x, d)| (*x, N::from(*d))).collect();
        if visit(&sigma) {
            return Some(sigma);
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return None;
            }
            if digits[pos] < bound {
                digits[pos] += 1;
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// Looks for a valuation with values in `0..=bound` where `t1` exceeds `t2`.
///
/// A returned valuation is always a genuine counterexample to `t1 <= t2`. `None` only
/// means the grid holds no counterexample.
pub fn find_counterexample_leq<N: Natural>(
    t1: &Level,
    t2: &Level,
    bound: u32,
) -> Option<Valuation<N>> {
    let vars = t1.vars().union(&t2.vars());
    search_grid(&vars, bound, |sigma: &Valuation<N>| {
        // every variable is bound, so only overflow can fail; treat it as no witness
        match (eval(t1, sigma), eval(t2, sigma)) {
            (Ok(a), Ok(b)) => a > b,
            _ => false,
        }
    })
}
