//! Deep encoding of levels and representations as first-order terms.
//!
//! Variables become unary numerals (their table index), sets become sorted
//! cons-lists, and a representation is `maxS` applied to its sorted atom list.

use thiserror::Error;

use super::signature::Sym;
use super::term::RTerm;
use crate::level::{Level, VarId};
use crate::repr::Repr;
use crate::sublevel::{SubLevel, SubLevelError, SubLevelKind};
use crate::varset::VarSet;

pub fn numeral(n: u32) -> RTerm {
    (0..n).fold(RTerm::constant(Sym::ZeroN), |t, _| RTerm::app(Sym::SuccN, vec![t]))
}

pub fn encode_level(t: &Level) -> RTerm {
    match t {
        Level::Zero => RTerm::constant(Sym::ZeroL),
        Level::Var(x) => RTerm::app(Sym::VarL, vec![numeral(x.0)]),
        Level::Succ(a) => RTerm::app(Sym::SuccL, vec![encode_level(a)]),
        Level::Max(a, b) => RTerm::app(Sym::MaxL, vec![encode_level(a), encode_level(b)]),
        Level::IMax(a, b) => RTerm::app(Sym::RuleL, vec![encode_level(a), encode_level(b)]),
    }
}

pub fn encode_varset(set: &VarSet) -> RTerm {
    set.as_slice().iter().rev().fold(RTerm::constant(Sym::NilN), |tail, x| {
        RTerm::app(Sym::ConsN, vec![numeral(x.0), tail])
    })
}

pub fn encode_sublevel(u: &SubLevel) -> RTerm {
    let set = encode_varset(u.set());
    match u.kind() {
        SubLevelKind::A(x) => RTerm::app(Sym::As, vec![set, numeral(x.0), numeral(u.shift())]),
        SubLevelKind::B => RTerm::app(Sym::Bs, vec![set, numeral(u.shift())]),
    }
}

pub fn encode_repr(r: &Repr) -> RTerm {
    let list = r.atoms().iter().rev().fold(RTerm::constant(Sym::NilS), |tail, u| {
        RTerm::app(Sym::ConsS, vec![encode_sublevel(u), tail])
    });
    RTerm::app(Sym::MaxS, vec![list])
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("expected {expected}, found `{found}`")]
    Shape { expected: &'static str, found: String },
    #[error("variable set is not strictly increasing")]
    UnsortedSet,
    #[error("atoms are not strictly increasing in storage order")]
    UnsortedAtoms,
    #[error("atoms are not pairwise incomparable")]
    NotMinimal,
    #[error(transparent)]
    Atom(#[from] SubLevelError),
}

fn shape(expected: &'static str, found: &RTerm) -> DecodeError {
    DecodeError::Shape { expected, found: found.to_string() }
}

pub fn decode_numeral(t: &RTerm) -> Result<u32, DecodeError> {
    let mut n = 0u32;
    let mut cur = t;
    loop {
        match cur {
            RTerm::App(Sym::ZeroN, _) => return Ok(n),
            RTerm::App(Sym::SuccN, a) => {
                n = n.checked_add(1).ok_or_else(|| shape("a numeral below 2^32", t))?;
                cur = &a[0];
            }
            _ => return Err(shape("a numeral", t)),
        }
    }
}

fn decode_varset(t: &RTerm) -> Result<VarSet, DecodeError> {
    let mut ids = Vec::new();
    let mut cur = t;
    loop {
        match cur {
            RTerm::App(Sym::NilN, _) => break,
            RTerm::App(Sym::ConsN, a) => {
                ids.push(VarId(decode_numeral(&a[0])?));
                cur = &a[1];
            }
            _ => return Err(shape("a variable set", t)),
        }
    }
    if ids.windows(2).any(|w| w[0] >= w[1]) {
        return Err(DecodeError::UnsortedSet);
    }
    Ok(ids.into_iter().collect())
}

fn decode_sublevel(t: &RTerm) -> Result<SubLevel, DecodeError> {
    match t {
        RTerm::App(Sym::As, a) => Ok(SubLevel::a(
            decode_varset(&a[0])?,
            VarId(decode_numeral(&a[1])?),
            decode_numeral(&a[2])?,
        )?),
        RTerm::App(Sym::Bs, a) => Ok(SubLevel::b(decode_varset(&a[0])?, decode_numeral(&a[1])?)?),
        _ => Err(shape("a sublevel", t)),
    }
}

/// Inverse of [`encode_repr`] on its image.
pub fn decode_repr(t: &RTerm) -> Result<Repr, DecodeError> {
    let RTerm::App(Sym::MaxS, args) = t else { return Err(shape("maxS", t)) };
    let mut atoms = Vec::new();
    let mut cur = &args[0];
    loop {
        match cur {
            RTerm::App(Sym::NilS, _) => break,
            RTerm::App(Sym::ConsS, a) => {
                atoms.push(decode_sublevel(&a[0])?);
                cur = &a[1];
            }
            _ => return Err(shape("a sublevel set", &args[0])),
        }
    }
    if atoms.windows(2).any(|w| w[0] >= w[1]) {
        return Err(DecodeError::UnsortedAtoms);
    }
    let r = Repr::from_atoms(atoms.iter().cloned());
    if r.atoms() != atoms.as_slice() {
        return Err(DecodeError::NotMinimal);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::term::parse_term;

    #[test]
    fn level_encoding() {
        assert_eq!(encode_level(&Level::Zero).to_string(), "zeroL");
        assert_eq!(
            encode_level(&Level::max(Level::var(0), Level::var(1))).to_string(),
            "maxL (varL zeroN) (varL (succN zeroN))"
        );
        assert_eq!(encode_level(&Level::numeral(1)).to_string(), "succL zeroL");
        assert_eq!(
            encode_level(&Level::imax(Level::Zero, Level::var(2))).to_string(),
            "ruleL zeroL (varL (succN (succN zeroN)))"
        );
    }

    #[test]
    fn repr_encoding() {
        assert_eq!(encode_repr(&Repr::zero()).to_string(), "maxS nilS");
        assert_eq!(
            encode_repr(&Repr::var(VarId(0))).to_string(),
            "maxS (consS (As (consN zeroN nilN) zeroN zeroN) nilS)"
        );
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode_repr(&parse_term("maxS nilS").unwrap()), Ok(Repr::zero()));
        assert!(matches!(
            decode_repr(&parse_term("succL zeroL").unwrap()),
            Err(DecodeError::Shape { .. })
        ));
        // B with shift 0 is not an atom
        assert!(matches!(
            decode_repr(&parse_term("maxS (consS (Bs nilN zeroN) nilS)").unwrap()),
            Err(DecodeError::Atom(_))
        ));
        // B({}, 1) below B({}, 2)
        let t = parse_term("maxS (consS (Bs nilN (succN zeroN)) (consS (Bs nilN (succN (succN zeroN))) nilS))");
        assert_eq!(decode_repr(&t.unwrap()), Err(DecodeError::NotMinimal));
        let t = parse_term("maxS (consS (Bs (consN (succN zeroN) (consN zeroN nilN)) (succN zeroN)) nilS)");
        assert_eq!(decode_repr(&t.unwrap()), Err(DecodeError::UnsortedSet));
    }
}
