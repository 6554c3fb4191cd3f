use std::fmt::Write;

use serde::Serialize;

use super::NameTable;
use crate::level::Level;
use crate::repr::Repr;
use crate::sublevel::{SubLevel, SubLevelKind};

/// Canonical text in the parser's grammar. Closed numerals print as digits.
pub fn print_level(t: &Level, names: &NameTable) -> String {
    let mut out = String::new();
    write_level(&mut out, t, names);
    out
}

fn write_level(out: &mut String, t: &Level, names: &NameTable) {
    match t {
        Level::Zero => out.push('0'),
        Level::Var(x) => out.push_str(&names.display(*x)),
        Level::Succ(inner) => {
            let mut k = 1u32;
            let mut base = inner.as_ref();
            while let Level::Succ(i) = base {
                k += 1;
                base = i;
            }
            if *base == Level::Zero {
                let _ = write!(out, "{k}");
            } else {
                out.push_str("s(");
                write_level(out, inner, names);
                out.push(')');
            }
        }
        Level::Max(a, b) | Level::IMax(a, b) => {
            out.push_str(if matches!(t, Level::Max(..)) { "max(" } else { "imax(" });
            write_level(out, a, names);
            out.push_str(", ");
            write_level(out, b, names);
            out.push(')');
        }
    }
}

fn write_set(out: &mut String, u: &SubLevel, names: &NameTable) {
    out.push('{');
    for (i, x) in u.set().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&names.display(x));
    }
    out.push('}');
}

/// `A{x,y}(x)+S` or `B{x,y}+S`.
pub fn print_sublevel(u: &SubLevel, names: &NameTable) -> String {
    let mut out = String::new();
    match u.kind() {
        SubLevelKind::A(x) => {
            out.push('A');
            write_set(&mut out, u, names);
            let _ = write!(out, "({})+{}", names.display(x), u.shift());
        }
        SubLevelKind::B => {
            out.push('B');
            write_set(&mut out, u, names);
            let _ = write!(out, "+{}", u.shift());
        }
    }
    out
}

/// `max{atom, ...}` in storage order; the empty representation is `max{}`.
pub fn print_repr(r: &Repr, names: &NameTable) -> String {
    let atoms: Vec<_> = r.atoms().iter().map(|u| print_sublevel(u, names)).collect();
    format!("max{{{}}}", atoms.join(", "))
}

#[derive(Serialize)]
struct JsonRepr {
    atoms: Vec<JsonAtom>,
}

#[derive(Serialize)]
struct JsonAtom {
    kind: &'static str,
    set: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    var: Option<String>,
    shift: u32,
}

/// `{"atoms":[{"kind":"A","set":[...],"var":...,"shift":n}, ...]}`; B atoms omit `var`.
pub fn print_repr_json(r: &Repr, names: &NameTable) -> String {
    let atoms = r
        .atoms()
        .iter()
        .map(|u| JsonAtom {
            kind: if u.var().is_some() { "A" } else { "B" },
            set: u.set().iter().map(|x| names.display(x)).collect(),
            var: u.var().map(|x| names.display(x)),
            shift: u.shift(),
        })
        .collect();
    serde_json::to_string(&JsonRepr { atoms }).expect("plain data serializes")
}
