use crate::level::Level;
use crate::rewrite::{encode_level, RuleSet, Sort, Sym};

/// A self-contained development: sort and symbol declarations, the builtin rules
/// in `lhs --> rhs` form, and, when given, the encoded query as the last line.
pub fn export_framework(rules: &RuleSet, query: Option<&Level>) -> String {
    let mut out = String::new();
    for s in Sort::ALL {
        out.push_str(&format!("{} : Type\n", s.name()));
    }
    out.push('\n');
    for sym in Sym::ALL {
        out.push_str(&sym.declaration());
        out.push('\n');
    }
    out.push('\n');
    out.push_str(&rules.dump());
    if let Some(t) = query {
        out.push('\n');
        out.push_str(&encode_level(t).to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn export_shape() {
        let rules = RuleSet::builtin();
        let plain = export_framework(&rules, None);
        assert!(plain.lines().any(|l| l == "zeroL --> maxS nilS"));
        assert!(plain.lines().any(|l| l == "maxL : L -> L -> L"));
        assert_eq!(plain, export_framework(&rules, None));
        let q = export_framework(&rules, Some(&Level::var(0)));
        assert_eq!(q.lines().last(), Some("varL zeroN"));
        assert!(q.starts_with(&plain));
    }
}
