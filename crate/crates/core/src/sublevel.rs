//! Sublevels: the atoms of a minimal representation.
//!
//! `A(E, x, S)` is worth `σ(x) + S` and `B(E, S)` is worth `S`, except that both
//! collapse to `0` as soon as some variable of `E` is `0`. Only well-formed atoms
//! can be built: `x ∈ E` for `A`, and `S ≥ 1` for `B`.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::level::{EvalError, Valuation, VarId};
use crate::nat::Natural;
use crate::varset::VarSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubLevelError {
    #[error("A-sublevel variable {var} is not a member of its set {set}")]
    VarNotInSet { var: VarId, set: VarSet },
    #[error("B-sublevel with shift 0 denotes zero and is not a valid atom")]
    ZeroShift,
}

// Variant and field order give the storage order: every A before every B, then
// lexicographic on (E, x, S) and (E, S).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Atom {
    A { set: VarSet, var: VarId, shift: u32 },
    B { set: VarSet, shift: u32 },
}

/// A well-formed sublevel.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubLevel(Atom);

/// Which constructor a sublevel uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubLevelKind {
    A(VarId),
    B,
}

impl SubLevel {
    pub fn a(set: VarSet, var: VarId, shift: u32) -> Result<SubLevel, SubLevelError> {
        if !set.contains(var) {
            return Err(SubLevelError::VarNotInSet { var, set });
        }
        Ok(SubLevel(Atom::A { set, var, shift }))
    }

    pub fn b(set: VarSet, shift: u32) -> Result<SubLevel, SubLevelError> {
        if shift == 0 {
            return Err(SubLevelError::ZeroShift);
        }
        Ok(SubLevel(Atom::B { set, shift }))
    }

    /// `A({x}, x, 0)`, the atom of a bare variable.
    pub fn of_var(x: VarId) -> SubLevel {
        SubLevel(Atom::A { set: VarSet::singleton(x), var: x, shift: 0 })
    }

    pub fn kind(&self) -> SubLevelKind {
        match &self.0 {
            Atom::A { var, .. } => SubLevelKind::A(*var),
            Atom::B { .. } => SubLevelKind::B,
        }
    }

    pub fn set(&self) -> &VarSet {
        match &self.0 {
            Atom::A { set, .. } | Atom::B { set, .. } => set,
        }
    }

    pub fn shift(&self) -> u32 {
        match &self.0 {
            Atom::A { shift, .. } | Atom::B { shift, .. } => *shift,
        }
    }

    pub fn var(&self) -> Option<VarId> {
        match &self.0 {
            Atom::A { var, .. } => Some(*var),
            Atom::B { .. } => None,
        }
    }

    /// Same constructor and shift, different set. The caller keeps `x ∈ E` true.
    fn with_set(&self, set: VarSet) -> SubLevel {
        match &self.0 {
            Atom::A { var, shift, .. } => {
                debug_assert!(set.contains(*var));
                SubLevel(Atom::A { set, var: *var, shift: *shift })
            }
            Atom::B { shift, .. } => SubLevel(Atom::B { set, shift: *shift }),
        }
    }

    /// The successor of the atom: its shift plus one.
    ///
    /// # Panics
    /// When the shift overflows `u32`.
    pub fn succ(&self) -> SubLevel {
        self.shifted_by(1)
    }

    pub(crate) fn shifted_by(&self, k: u32) -> SubLevel {
        let bump = |s: u32| s.checked_add(k).expect("sublevel shift overflow");
        match &self.0 {
            Atom::A { set, var, shift } => {
                SubLevel(Atom::A { set: set.clone(), var: *var, shift: bump(*shift) })
            }
            Atom::B { set, shift } => SubLevel(Atom::B { set: set.clone(), shift: bump(*shift) }),
        }
    }

    /// Semantic comparison `self ≤ other`, decided syntactically.
    pub fn leq(&self, other: &SubLevel) -> bool {
        match (&self.0, &other.0) {
            (Atom::A { .. }, Atom::B { .. }) => false,
            (Atom::B { set: e, shift: s }, Atom::B { set: f, shift: k }) => f.is_subset(e) && s <= k,
            (Atom::B { set: e, shift: s }, Atom::A { set: f, shift: k, .. }) => {
                f.is_subset(e) && u64::from(*s) <= u64::from(*k) + 1
            }
            (Atom::A { set: e, var: x, shift: s }, Atom::A { set: f, var: y, shift: k }) => {
                f.is_subset(e) && x == y && s <= k
            }
        }
    }

    /// The storage order used to keep representations sorted.
    pub fn storage_cmp(&self, other: &SubLevel) -> Ordering {
        self.cmp(other)
    }

    /// The value of the atom under `sigma`.
    pub fn eval<N: Natural>(&self, sigma: &Valuation<N>) -> Result<N, EvalError> {
        // look every member up first so unbound variables are reported even when
        // an earlier member already forces zero
        let mut zeroed = false;
        for y in self.set().iter() {
            zeroed |= sigma.get(y)?.is_zero();
        }
        if let Atom::A { var, .. } = &self.0 {
            sigma.get(*var)?;
        }
        if zeroed {
            return Ok(N::zero());
        }
        match &self.0 {
            Atom::A { var, shift, .. } => {
                sigma.get(*var)?.add_shift(*shift).ok_or(EvalError::Overflow)
            }
            Atom::B { shift, .. } => Ok(N::from(*shift)),
        }
    }
}

/// Splits `imax(u, v)` into two atoms whose maximum is equivalent to it: `u` with
/// its set widened by the set of `v`, and `v` unchanged.
pub fn imax_sub_pair(u: &SubLevel, v: &SubLevel) -> (SubLevel, SubLevel) {
    (u.with_set(u.set().union(v.set())), v.clone())
}

/// Every well-formed sublevel over variables `0..max_vars` with shifts up to
/// `max_shift`, in storage order.
pub fn all_sublevels(max_vars: u32, max_shift: u32) -> Vec<SubLevel> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << max_vars) {
        let set: VarSet = (0..max_vars).filter(|i| mask & (1 << i) != 0).map(VarId).collect();
        for x in set.iter() {
            for s in 0..=max_shift {
                out.push(SubLevel(Atom::A { set: set.clone(), var: x, shift: s }));
            }
        }
        for s in 1..=max_shift {
            out.push(SubLevel(Atom::B { set: set.clone(), shift: s }));
        }
    }
    out.sort();
    out
}

impl fmt::Display for SubLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Atom::A { set, var, shift } => write!(f, "A({set}, {var}, {shift})"),
            Atom::B { set, shift } => write!(f, "B({set}, {shift})"),
        }
    }
}
