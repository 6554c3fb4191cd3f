//! Minimal representations of levels.
//!
//! Every level is equivalent to the maximum of a unique set of pairwise
//! incomparable sublevels. Building that set bottom-up gives a decision procedure:
//! two levels are equivalent exactly when their representations are equal.

use std::fmt;

use crate::level::{EvalError, Level, Valuation, VarId};
use crate::nat::Natural;
use crate::sublevel::{imax_sub_pair, SubLevel, SubLevelKind};

/// A minimal representation: sorted, pairwise incomparable sublevels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Repr {
    atoms: Vec<SubLevel>,
}

impl Repr {
    /// The representation of `0`, the empty maximum.
    pub fn zero() -> Repr {
        Repr { atoms: Vec::new() }
    }

    pub fn var(x: VarId) -> Repr {
        Repr { atoms: vec![SubLevel::of_var(x)] }
    }

    /// Builds the minimal representation of the maximum of `atoms`.
    pub fn from_atoms(atoms: impl IntoIterator<Item = SubLevel>) -> Repr {
        atoms.into_iter().fold(Repr::zero(), |r, u| r.insert(u))
    }

    pub fn atoms(&self) -> &[SubLevel] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Largest shift among the atoms.
    pub fn max_shift(&self) -> u32 {
        self.atoms.iter().map(SubLevel::shift).max().unwrap_or(0)
    }

    /// The successor: every atom shifted by one, plus the constant `1`.
    ///
    /// Shifting alone is not enough: an atom vanishes when a variable of its set is
    /// `0`, while a successor never does. `B(∅, 1)` restores that floor unless a
    /// `B(∅, K)` already provides it.
    pub fn succ(&self) -> Repr {
        let one = SubLevel::b(Default::default(), 1).expect("shift is positive");
        // shifting every atom preserves both the storage order and incomparability
        let shifted = Repr { atoms: self.atoms.iter().map(SubLevel::succ).collect() };
        shifted.insert(one)
    }

    /// The minimal representation of `max(self, u)`.
    pub fn insert(&self, u: SubLevel) -> Repr {
        if self.atoms.iter().any(|w| u.leq(w)) {
            return self.clone();
        }
        let mut atoms: Vec<SubLevel> = self.atoms.iter().filter(|w| !w.leq(&u)).cloned().collect();
        let pos = atoms.binary_search(&u).unwrap_err();
        atoms.insert(pos, u);
        Repr { atoms }
    }

    pub fn max(&self, other: &Repr) -> Repr {
        other.atoms.iter().fold(self.clone(), |r, u| r.insert(u.clone()))
    }

    pub fn imax(&self, other: &Repr) -> Repr {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return Repr::zero();
        }
        let mut out = Repr::zero();
        for u in &self.atoms {
            for v in &other.atoms {
                let (p, q) = imax_sub_pair(u, v);
                out = out.insert(p).insert(q);
            }
        }
        out
    }

    /// Semantic `self ≤ other`: every atom is dominated by some atom of `other`.
    pub fn leq(&self, other: &Repr) -> bool {
        self.atoms.iter().all(|u| other.atoms.iter().any(|v| u.leq(v)))
    }

    /// Substitutes the natural `n` for the variable `y`.
    pub fn subst(&self, y: VarId, n: u32) -> Repr {
        let mut out = Repr::zero();
        for u in &self.atoms {
            if u.set().contains(y) && n == 0 {
                continue;
            }
            let set = u.set().delete(y);
            let atom = match u.kind() {
                SubLevelKind::A(x) if x == y => SubLevel::b(
                    set,
                    u.shift().checked_add(n).expect("sublevel shift overflow"),
                ),
                SubLevelKind::A(x) => SubLevel::a(set, x, u.shift()),
                SubLevelKind::B => SubLevel::b(set, u.shift()),
            }
            .expect("substitution keeps atoms well formed");
            out = out.insert(atom);
        }
        out
    }

    pub fn eval<N: Natural>(&self, sigma: &Valuation<N>) -> Result<N, EvalError> {
        let mut best = N::zero();
        for u in &self.atoms {
            best = best.max(u.eval(sigma)?);
        }
        Ok(best)
    }

    /// Checks the stored invariants: strictly sorted and pairwise incomparable.
    pub fn is_minimal(&self) -> bool {
        let sorted = self.atoms.windows(2).all(|w| w[0] < w[1]);
        let incomparable = self.atoms.iter().enumerate().all(|(i, u)| {
            self.atoms.iter().enumerate().all(|(j, v)| i == j || !u.leq(v))
        });
        sorted && incomparable
    }
}

/// The minimal representation of a level.
pub fn normalize(t: &Level) -> Repr {
    match t {
        Level::Zero => Repr::zero(),
        Level::Var(x) => Repr::var(*x),
        Level::Succ(inner) => normalize(inner).succ(),
        Level::Max(a, b) => normalize(a).max(&normalize(b)),
        Level::IMax(a, b) => normalize(a).imax(&normalize(b)),
    }
}

/// Decides `t1 ≤ t2` for all valuations.
pub fn level_leq(t1: &Level, t2: &Level) -> bool {
    normalize(t1).leq(&normalize(t2))
}

/// Decides semantic equivalence of two levels.
pub fn level_eq(t1: &Level, t2: &Level) -> bool {
    normalize(t1) == normalize(t2)
}

impl fmt::Display for Repr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("max[")?;
        for (i, u) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::level::{eval, find_counterexample_leq, search_grid};
    use crate::sublevel::all_sublevels;
    use crate::varset::VarSet;
    use proptest::prelude::*;

    const X: VarId = VarId(0);
    const Y: VarId = VarId(1);

    fn x() -> Level {
        Level::Var(X)
    }
    fn y() -> Level {
        Level::Var(Y)
    }
    fn set(ids: &[VarId]) -> VarSet {
        ids.iter().copied().collect()
    }
    fn a(ids: &[VarId], v: VarId, s: u32) -> SubLevel {
        SubLevel::a(set(ids), v, s).unwrap()
    }
    fn b(ids: &[VarId], s: u32) -> SubLevel {
        SubLevel::b(set(ids), s).unwrap()
    }

    #[test]
    fn zero_and_var() {
        assert!(Repr::zero().atoms().is_empty());
        assert_eq!(Repr::zero().eval(&Valuation::<u64>::new().with(X, 4)), Ok(0));
        assert!(Repr::zero().leq(&Repr::var(X)));
        assert_eq!(Repr::var(X).atoms(), &[a(&[X], X, 0)]);
        assert_eq!(Repr::var(X).eval(&Valuation::<u64>::new().with(X, 9)), Ok(9));
        assert_ne!(Repr::var(X), Repr::var(Y));
    }

    #[test]
    fn succ_examples() {
        assert_eq!(Repr::zero().succ().atoms(), &[b(&[], 1)]);
        assert_eq!(Repr::var(X).succ().atoms(), &[a(&[X], X, 1), b(&[], 1)]);
        let r = Repr::from_atoms([a(&[X], X, 0), b(&[Y], 1)]);
        assert_eq!(r.succ().atoms(), &[a(&[X], X, 1), b(&[], 1), b(&[Y], 2)]);
        // an existing constant absorbs the floor
        let r = Repr::from_atoms([a(&[X], X, 0), b(&[], 1)]);
        assert_eq!(r.succ().atoms(), &[a(&[X], X, 1), b(&[], 2)]);
        // s(x) is 1 at x = 0, which a shifted atom alone would miss
        let sx = Repr::var(X).succ();
        assert_eq!(sx.eval(&Valuation::<u64>::new().with(X, 0)), Ok(1));
    }

    #[test]
    fn insert_examples() {
        assert_eq!(Repr::zero().insert(a(&[X], X, 0)).atoms(), &[a(&[X], X, 0)]);
        let r = Repr::from_atoms([a(&[X], X, 1)]);
        assert_eq!(r.insert(a(&[X], X, 0)), r);
        let r = Repr::var(X).insert(b(&[], 1));
        assert_eq!(r.atoms(), &[a(&[X], X, 0), b(&[], 1)]);
        // oracle: the two atoms really are incomparable
        let vars = set(&[X]);
        assert!(search_grid::<u64>(&vars, 3, |s| a(&[X], X, 0).eval(s).unwrap() > 1).is_some());
        assert!(search_grid::<u64>(&vars, 3, |s| a(&[X], X, 0).eval(s).unwrap() < 1).is_some());
    }

    #[test]
    fn insert_drops_every_dominated_atom() {
        let r = Repr::from_atoms([b(&[X], 1), b(&[Y], 1)]);
        assert_eq!(r.atoms().len(), 2);
        assert_eq!(r.insert(b(&[], 1)).atoms(), &[b(&[], 1)]);
    }

    #[test]
    fn max_examples() {
        let r = normalize(&Level::max(x(), Level::imax(y(), x())));
        assert_eq!(Repr::zero().max(&r), r);
        assert_eq!(r.max(&r), r);
        let sx = Repr::var(X).succ();
        assert_eq!(Repr::var(X).max(&sx), sx);
        assert_eq!(sx.atoms(), &[a(&[X], X, 1), b(&[], 1)]);
    }

    #[test]
    fn imax_examples() {
        let r = normalize(&Level::max(x(), Level::succ(y())));
        assert_eq!(Repr::zero().imax(&r), r);
        assert_eq!(r.imax(&Repr::zero()), Repr::zero());
        let got = Repr::var(X).imax(&Repr::var(Y));
        assert_eq!(got.atoms(), &[a(&[X, Y], X, 0), a(&[Y], Y, 0)]);
        // oracle on values 0..=3
        let t = Level::imax(x(), y());
        search_grid::<u64>(&set(&[X, Y]), 3, |s| {
            assert_eq!(got.eval(s), eval(&t, s));
            false
        });
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&Level::imax(x(), x())), normalize(&x()));
        assert_eq!(
            normalize(&Level::max(Level::imax(x(), y()), Level::imax(y(), x()))),
            normalize(&Level::max(x(), y()))
        );
        assert_eq!(
            normalize(&Level::imax(x(), Level::succ(y()))),
            normalize(&Level::max(x(), Level::succ(y())))
        );
        assert_eq!(normalize(&Level::numeral(1)).atoms(), &[b(&[], 1)]);
    }

    #[test]
    fn comparison_examples() {
        assert!(level_leq(&x(), &Level::max(x(), y())));
        let l = Level::max(Level::imax(x(), y()), x());
        let r = Level::max(x(), y());
        assert!(level_leq(&l, &r) && level_leq(&r, &l));
        let p = Level::succ(Level::imax(y(), x()));
        let q = Level::imax(Level::succ(y()), Level::succ(x()));
        assert!(!level_eq(&p, &q));
        assert!(level_leq(&p, &q));
        assert!(!level_leq(&q, &p));
        assert!(!Repr::var(X).leq(&Repr::var(Y)));
    }

    #[test]
    fn subst_examples() {
        assert_eq!(Repr::from_atoms([b(&[X], 1)]).subst(X, 0), Repr::zero());
        assert_eq!(Repr::from_atoms([a(&[X, Y], X, 2)]).subst(X, 3).atoms(), &[b(&[Y], 5)]);
        assert_eq!(Repr::var(X).subst(Y, 5), Repr::var(X));
    }

    #[test]
    fn subst_matches_extended_valuation() {
        // A({x,y}, x, 2)[x := 3] must agree with the original under every extension
        let r = Repr::from_atoms([a(&[X, Y], X, 2)]);
        let s = r.subst(X, 3);
        for yv in 0..5u64 {
            let ext = Valuation::new().with(X, 3).with(Y, yv);
            let part = Valuation::new().with(Y, yv);
            assert_eq!(s.eval(&part), r.eval(&ext));
        }
    }

    #[test]
    fn eval_examples() {
        assert_eq!(Repr::zero().eval(&Valuation::<u64>::new()), Ok(0));
        assert_eq!(
            Repr::from_atoms([a(&[X], X, 1)]).eval(&Valuation::<u64>::new().with(X, 4)),
            Ok(5)
        );
    }

    /// Independence: domination by one atom is the same as being below the maximum.
    #[test]
    fn domination_matches_semantics_on_small_domain() {
        let atoms = all_sublevels(2, 1);
        let vars = set(&[X, Y]);
        // every pair of atoms as a candidate representation
        for (i, p) in atoms.iter().enumerate() {
            for q in &atoms[i..] {
                let r = Repr::from_atoms([p.clone(), q.clone()]);
                for u in &atoms {
                    let dominated = r.atoms().iter().any(|w| u.leq(w));
                    let witness = search_grid::<u64>(&vars, 4, |s| {
                        u.eval(s).unwrap() > r.eval(s).unwrap()
                    });
                    assert_eq!(dominated, witness.is_none(), "{u} vs {r}");
                }
            }
        }
    }

    fn arb_level() -> impl Strategy<Value = Level> {
        let leaf = prop_oneof![Just(Level::Zero), (0u32..3).prop_map(Level::var)];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Level::succ),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Level::max(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Level::imax(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn normalize_is_sound(t in arb_level(), vals in prop::collection::vec(0u64..5, 3)) {
            let sigma: Valuation<u64> = vals.iter().enumerate().map(|(i, v)| (VarId(i as u32), *v)).collect();
            let r = normalize(&t);
            prop_assert!(r.is_minimal());
            prop_assert_eq!(r.eval(&sigma), eval(&t, &sigma));
        }

        #[test]
        fn eq_agrees_with_mutual_leq(t1 in arb_level(), t2 in arb_level()) {
            let (r1, r2) = (normalize(&t1), normalize(&t2));
            prop_assert_eq!(r1 == r2, r1.leq(&r2) && r2.leq(&r1));
        }

        #[test]
        fn leq_agrees_with_oracle(t1 in arb_level(), t2 in arb_level()) {
            let bound = crate::level::default_bound(&t1, &t2);
            let witness = find_counterexample_leq::<u64>(&t1, &t2, bound);
            prop_assert_eq!(level_leq(&t1, &t2), witness.is_none());
        }

        #[test]
        fn operations_commute_with_normalize(t1 in arb_level(), t2 in arb_level()) {
            let (r1, r2) = (normalize(&t1), normalize(&t2));
            prop_assert_eq!(normalize(&Level::max(t1.clone(), t2.clone())), r1.max(&r2));
            prop_assert_eq!(normalize(&Level::imax(t1.clone(), t2.clone())), r1.imax(&r2));
            prop_assert_eq!(normalize(&Level::succ(t1.clone())), r1.succ());
            prop_assert!(r1.imax(&r2).is_minimal());
        }

        #[test]
        fn max_fold_order_is_irrelevant(t1 in arb_level(), t2 in arb_level(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let r = normalize(&Level::max(t1, t2));
            let mut atoms = r.atoms().to_vec();
            atoms.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(Repr::from_atoms(atoms), r);
        }

        #[test]
        fn subst_commutes_with_eval(t in arb_level(), y in 0u32..3, n in 0u32..4,
                                    vals in prop::collection::vec(0u64..5, 3)) {
            let r = normalize(&t);
            let s = r.subst(VarId(y), n);
            prop_assert!(s.is_minimal());
            let mut sigma: Valuation<u64> = vals.iter().enumerate().map(|(i, v)| (VarId(i as u32), *v)).collect();
            sigma.unbind(VarId(y));
            let ext = sigma.clone().with(VarId(y), u64::from(n));
            prop_assert_eq!(s.eval(&sigma), r.eval(&ext));
        }
    }
}
