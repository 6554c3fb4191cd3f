//! Concrete syntax: the name table, the level parser, printers, the
//! logical-framework export, and the command-line front end.

pub mod cli;
mod export;
mod parse;
mod print;

use std::collections::HashMap;

use crate::level::VarId;

pub use export::export_framework;
pub use parse::{parse_level, ParseError, MAX_NUMERAL};
pub use print::{print_level, print_repr, print_repr_json, print_sublevel};

/// Bijection between variable names and dense ids, assigned in first-appearance order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NameTable {
    names: Vec<String>,
    ids: HashMap<String, VarId>,
}

impl NameTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// A table naming ids `0..n` as `x`, `y`, `z`, `v3`, `v4`, ...
    pub fn generated(n: u32) -> Self {
        let mut t = Self::new();
        for i in 0..n {
            let name = match i {
                0 => "x".to_string(),
                1 => "y".to_string(),
                2 => "z".to_string(),
                _ => format!("v{i}"),
            };
            t.intern(&name);
        }
        t
    }

    pub fn intern(&mut self, name: &str) -> VarId {
        if let Some(id) = self.ids.get(name) {
            return *id;
        }
        let id = VarId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.ids.insert(name.to_string(), id);
        id
    }

    pub fn id(&self, name: &str) -> Option<VarId> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, id: VarId) -> Option<&str> {
        self.names.get(id.0 as usize).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Name for display; ids outside the table print as `#n`.
    pub(crate) fn display(&self, id: VarId) -> String {
        self.name(id).map_or_else(|| id.to_string(), str::to_string)
    }
}
