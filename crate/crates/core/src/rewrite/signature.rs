//! The first-order signature of the level rewrite system.

use std::fmt;

/// Sorts of the encoding. They are metadata for checking; matching ignores them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sort {
    Bool,
    Nat,
    NatSet,
    Level,
    SubLevel,
    SubLevelSet,
}

impl Sort {
    pub fn name(self) -> &'static str {
        match self {
            Sort::Bool => "B",
            Sort::Nat => "N",
            Sort::NatSet => "SetN",
            Sort::Level => "L",
            Sort::SubLevel => "LS",
            Sort::SubLevelSet => "SetLS",
        }
    }

    pub const ALL: [Sort; 6] =
        [Sort::Bool, Sort::Nat, Sort::NatSet, Sort::Level, Sort::SubLevel, Sort::SubLevelSet];
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

macro_rules! symbols {
    ($( $variant:ident = $name:literal : [$($arg:ident),*] -> $res:ident, $ctor:literal; )*) => {
        /// A function or constructor symbol.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Sym {
            $($variant,)*
        }

        impl Sym {
            pub const ALL: &'static [Sym] = &[$(Sym::$variant,)*];

            /// Stable external name.
            pub fn name(self) -> &'static str {
                match self {
                    $(Sym::$variant => $name,)*
                }
            }

            pub fn arg_sorts(self) -> &'static [Sort] {
                match self {
                    $(Sym::$variant => &[$(Sort::$arg),*],)*
                }
            }

            pub fn result_sort(self) -> Sort {
                match self {
                    $(Sym::$variant => Sort::$res,)*
                }
            }

            /// Constructors head no rule and make up normal forms.
            pub fn is_constructor(self) -> bool {
                match self {
                    $(Sym::$variant => $ctor,)*
                }
            }

            pub fn from_name(name: &str) -> Option<Sym> {
                match name {
                    $($name => Some(Sym::$variant),)*
                    _ => None,
                }
            }
        }
    };
}

symbols! {
    True = "true" : [] -> Bool, true;
    False = "false" : [] -> Bool, true;
    And = "and" : [Bool, Bool] -> Bool, false;
    Or = "or" : [Bool, Bool] -> Bool, false;
    Not = "not" : [Bool] -> Bool, false;

    ZeroN = "zeroN" : [] -> Nat, true;
    SuccN = "succN" : [Nat] -> Nat, true;
    Plus = "plus" : [Nat, Nat] -> Nat, false;
    MaxN = "maxN" : [Nat, Nat] -> Nat, false;
    LeqN = "leqN" : [Nat, Nat] -> Bool, false;
    EqN = "eqN" : [Nat, Nat] -> Bool, false;
    LtN = "ltN" : [Nat, Nat] -> Bool, false;

    IteL = "iteL" : [Bool, Level, Level] -> Level, false;
    IteNS = "iteNS" : [Bool, NatSet, NatSet] -> NatSet, false;
    IteSLS = "iteSLS" : [Bool, SubLevelSet, SubLevelSet] -> SubLevelSet, false;

    NilN = "nilN" : [] -> NatSet, true;
    ConsN = "consN" : [Nat, NatSet] -> NatSet, true;
    AddN = "addN" : [NatSet, Nat] -> NatSet, false;
    UnionN = "unionN" : [NatSet, NatSet] -> NatSet, false;
    MemN = "memN" : [Nat, NatSet] -> Bool, false;
    SubsetN = "subsetN" : [NatSet, NatSet] -> Bool, false;
    EqSetN = "eqSetN" : [NatSet, NatSet] -> Bool, false;
    OrdSetN = "ordSetN" : [NatSet, NatSet] -> Bool, false;
    LtSetN = "ltSetN" : [NatSet, NatSet] -> Bool, false;
    DelN = "delN" : [NatSet, Nat] -> NatSet, false;

    NilS = "nilS" : [] -> SubLevelSet, true;
    ConsS = "consS" : [SubLevel, SubLevelSet] -> SubLevelSet, true;
    AddS = "addS" : [SubLevelSet, SubLevel] -> SubLevelSet, false;

    ZeroL = "zeroL" : [] -> Level, false;
    SuccL = "succL" : [Level] -> Level, false;
    MaxL = "maxL" : [Level, Level] -> Level, false;
    RuleL = "ruleL" : [Level, Level] -> Level, false;
    VarL = "varL" : [Nat] -> Level, false;
    MaxS = "maxS" : [SubLevelSet] -> Level, true;

    As = "As" : [NatSet, Nat, Nat] -> SubLevel, true;
    Bs = "Bs" : [NatSet, Nat] -> SubLevel, true;
    OrdSL = "ordSL" : [SubLevel, SubLevel] -> Bool, false;
    LeqSL = "leqSL" : [SubLevel, SubLevel] -> Bool, false;
    SuccSL = "succSL" : [SubLevelSet] -> SubLevelSet, false;
    MaxHelper = "maxHelper" : [SubLevelSet, SubLevel] -> SubLevelSet, false;
    RuleHelper = "ruleHelper" : [SubLevel, Level] -> Level, false;
    RuleSL = "ruleSL" : [SubLevel, SubLevel] -> Level, false;
    EvalS = "evalS" : [SubLevel, Nat, Nat] -> Level, false;
    EvalL = "evalL" : [Level, Nat, Nat] -> Level, false;
}

impl Sym {
    pub fn arity(self) -> usize {
        self.arg_sorts().len()
    }

    /// Argument positions the strategies may rewrite before the symbol itself fires.
    /// The branches of if-then-else wait for the guard.
    pub fn is_active_arg(self, index: usize) -> bool {
        !matches!(self, Sym::IteL | Sym::IteNS | Sym::IteSLS) || index == 0
    }

    pub fn is_ite(self) -> bool {
        matches!(self, Sym::IteL | Sym::IteNS | Sym::IteSLS)
    }

    /// `NAME : S1 -> S2 -> R` declaration line.
    pub fn declaration(self) -> String {
        let mut out = format!("{} : ", self.name());
        for s in self.arg_sorts() {
            out.push_str(s.name());
            out.push_str(" -> ");
        }
        out.push_str(self.result_sort().name());
        out
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
