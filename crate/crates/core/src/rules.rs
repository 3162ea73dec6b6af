//! The closed inventory of inference rule schemas and the packs that group them.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pack {
    Core,
    Qubit,
    BetaIso,
    /// Formation of scalar constants, an extension outside the base calculus.
    Scalars,
}

impl Pack {
    pub fn name(self) -> &'static str {
        match self {
            Pack::Core => "core",
            Pack::Qubit => "qubit",
            Pack::BetaIso => "beta-iso",
            Pack::Scalars => "scalars",
        }
    }

    pub fn from_name(s: &str) -> Option<Pack> {
        match s {
            "core" => Some(Pack::Core),
            "qubit" => Some(Pack::Qubit),
            "beta-iso" => Some(Pack::BetaIso),
            "scalars" => Some(Pack::Scalars),
            _ => None,
        }
    }
}

/// Enabled rule packs. `core` is always on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packs(BTreeSet<Pack>);

impl Packs {
    pub fn new(extra: &[Pack]) -> Packs {
        let mut s: BTreeSet<Pack> = extra.iter().copied().collect();
        s.insert(Pack::Core);
        Packs(s)
    }

    pub fn all() -> Packs {
        Packs::new(&[Pack::Qubit, Pack::BetaIso, Pack::Scalars])
    }

    pub fn contains(&self, p: Pack) -> bool {
        self.0.contains(&p)
    }

    pub fn allows(&self, r: Rule) -> bool {
        self.contains(r.pack())
    }

    /// Parses a comma separated list such as `core,qubit`.
    pub fn parse(list: &str) -> Result<Packs, String> {
        let mut out = Vec::new();
        for part in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match Pack::from_name(part) {
                Some(p) => out.push(p),
                None => return Err(format!("unknown rule pack `{part}`")),
            }
        }
        Ok(Packs::new(&out))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.0.iter().map(|p| p.name()).collect()
    }
}

impl Default for Packs {
    fn default() -> Packs {
        Packs::new(&[Pack::Qubit, Pack::Scalars])
    }
}

macro_rules! rules {
    ($($variant:ident => $name:literal, $pack:ident;)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Rule { $($variant),* }

        impl Rule {
            pub const ALL: &'static [Rule] = &[$(Rule::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(Rule::$variant => $name),* }
            }

            pub fn pack(self) -> Pack {
                match self { $(Rule::$variant => Pack::$pack),* }
            }

            pub fn from_name(s: &str) -> Option<Rule> {
                match s { $($name => Some(Rule::$variant),)* _ => None }
            }
        }
    };
}

rules! {
    Exch => "exch", Core;
    Var => "var", Core;
    Tensor => "tensor", Core;
    Let => "let", Core;
    UnitIntro => "unit", Core;
    Inl => "inl", Core;
    Inr => "inr", Core;
    Case => "case", Core;
    Measure => "measure", Core;
    Ref => "ref", Core;
    Sym => "sym", Core;
    Trans => "trans", Core;
    TensorEq => "tensor-eq", Core;
    LetEq => "let-eq", Core;
    InlEq => "inl-eq", Core;
    InrEq => "inr-eq", Core;
    CaseEq => "case-eq", Core;
    MeasureEq => "measure-eq", Core;
    BetaTensor => "beta-tensor", Core;
    BetaPlus1 => "beta-plus-1", Core;
    BetaPlus2 => "beta-plus-2", Core;
    EtaTensor => "eta-tensor", Core;
    EtaUnit => "eta-unit", Core;
    EtaPlus => "eta-plus", Core;
    LetCommute => "let-commute", Core;
    LetCase => "let-case", Core;
    LetTensor => "let-tensor", Core;
    CaseCommute => "case-commute", Core;
    CaseTensor => "case-tensor", Core;
    MeasurePerm => "measure-perm", Core;
    Measure0 => "measure-0", Core;
    Measure1 => "measure-1", Core;
    MeasurePlus => "measure-plus", Core;
    MeasureCase => "measure-case", Core;
    Eff0 => "eff-0", Core;
    EffBot => "eff-bot", Core;
    EffOvee => "eff-ovee", Core;
    EffMult => "eff-mult", Core;
    EffCase => "eff-case", Core;
    LeqRef => "leq-ref", Core;
    LeqTrans => "leq-trans", Core;
    ZeroLeq => "zero-leq", Core;
    BotAntitone => "bot-antitone", Core;
    BotBot => "bot-bot", Core;
    LeqOvee => "leq-ovee", Core;
    OveeMono => "ovee-mono", Core;
    OveeComm => "ovee-comm", Core;
    PerpRotate => "perp-rotate", Core;
    OveeAssoc => "ovee-assoc", Core;
    Ovee0 => "ovee-0", Core;
    Ortho1 => "ortho-1", Core;
    Ortho2 => "ortho-2", Core;
    DistL => "dist-l", Core;
    DistR => "dist-r", Core;
    UnitL => "unit-l", Core;
    UnitR => "unit-r", Core;
    Assoc => "assoc", Core;
    Comm => "comm", Core;
    CaseCong => "case-cong", Core;
    CaseMono => "case-mono", Core;
    BetaPlus1Eff => "beta-plus-1-eff", Core;
    BetaPlus2Eff => "beta-plus-2-eff", Core;
    EtaPlusEff => "eta-plus-eff", Core;
    CaseOvee => "case-ovee", Core;
    CaseBot => "case-bot", Core;
    CaseLeq => "case-leq", Core;
    CaseTimes => "case-times", Core;
    QbitNew => "qbit-new", Qubit;
    QbitX => "qbit-x", Qubit;
    QbitZ => "qbit-z", Qubit;
    QbitCz => "qbit-cz", Qubit;
    QbitProj => "qbit-proj", Qubit;
    QbitCzX => "qbit-cz-x", Qubit;
    QbitCzZ => "qbit-cz-z", Qubit;
    QbitXProj => "qbit-x-proj", Qubit;
    QbitZProj => "qbit-z-proj", Qubit;
    QbitXX => "qbit-xx", Qubit;
    QbitZZ => "qbit-zz", Qubit;
    QbitXzZx => "qbit-xz-zx", Qubit;
    BetaIso => "beta-iso", BetaIso;
    EffConst => "eff-const", Scalars;
}

/// Kinds of explicit arguments a rule may take in a proof script.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArgKind {
    Nat,
    Term,
    Effect,
    Perm,
    Name,
}

impl Rule {
    /// Named explicit arguments, all mandatory.
    pub fn arg_schema(self) -> &'static [(&'static str, ArgKind)] {
        match self {
            Rule::Exch => &[("at", ArgKind::Nat)],
            Rule::Trans => &[("mid", ArgKind::Term)],
            Rule::LeqTrans => &[("mid", ArgKind::Effect)],
            Rule::MeasurePerm => &[("perm", ArgKind::Perm)],
            Rule::BetaIso => &[
                ("var", ArgKind::Name),
                ("body", ArgKind::Effect),
                ("scalar", ArgKind::Effect),
                ("left", ArgKind::Term),
                ("right", ArgKind::Term),
            ],
            _ => &[],
        }
    }

    /// Rules in the base inventory, excluding extension packs.
    pub fn base_inventory() -> Vec<Rule> {
        Rule::ALL
            .iter()
            .copied()
            .filter(|r| r.pack() != Pack::Scalars)
            .collect()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for r in Rule::ALL {
            assert_eq!(Rule::from_name(r.name()), Some(*r));
        }
        assert_eq!(Rule::from_name("nonsense"), None);
    }

    #[test]
    fn packs_parse() {
        let p = Packs::parse("qubit").unwrap();
        assert!(p.contains(Pack::Core));
        assert!(!p.allows(Rule::BetaIso));
        assert!(Packs::parse("core,bogus").is_err());
    }
}
