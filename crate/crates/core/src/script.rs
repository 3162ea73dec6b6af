//! Proof scripts: trees of rule names with explicit arguments.

use crate::rules::{ArgKind, Rule};
use crate::syntax::{Effect, Name, Term};
use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum ScriptArg {
    Nat(usize),
    Term(Term),
    Effect(Effect),
    Perm(Vec<usize>),
    Name(Name),
}

impl ScriptArg {
    pub fn kind(&self) -> ArgKind {
        match self {
            ScriptArg::Nat(_) => ArgKind::Nat,
            ScriptArg::Term(_) => ArgKind::Term,
            ScriptArg::Effect(_) => ArgKind::Effect,
            ScriptArg::Perm(_) => ArgKind::Perm,
            ScriptArg::Name(_) => ArgKind::Name,
        }
    }

    pub fn to_surface(&self) -> String {
        match self {
            ScriptArg::Nat(n) => n.to_string(),
            ScriptArg::Term(t) => crate::parse::print::term_inline(t),
            ScriptArg::Effect(e) => crate::parse::print::effect_inline(e),
            ScriptArg::Perm(p) => format!(
                "[{}]",
                p.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
            ),
            ScriptArg::Name(n) => n.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProofScript {
    Rule {
        rule: Rule,
        args: Vec<(String, ScriptArg)>,
        premises: Vec<ProofScript>,
    },
    /// Bounded proof search, with an optional depth override.
    Auto(Option<u32>),
    /// Premise left for automatic discharge.
    Hole,
    /// Separate scripts for the two directions of an equivalence.
    Both(Box<ProofScript>, Box<ProofScript>),
    /// A rule name outside the inventory; rejected by the checker.
    Unknown(String),
}

impl ProofScript {
    pub fn rule(rule: Rule, premises: Vec<ProofScript>) -> ProofScript {
        ProofScript::Rule {
            rule,
            args: Vec::new(),
            premises,
        }
    }

    pub fn rule_with(rule: Rule, args: Vec<(&str, ScriptArg)>, premises: Vec<ProofScript>) -> ProofScript {
        ProofScript::Rule {
            rule,
            args: args.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            premises,
        }
    }

    pub fn arg(&self, key: &str) -> Option<&ScriptArg> {
        match self {
            ProofScript::Rule { args, .. } => args.iter().find(|(k, _)| k == key).map(|(_, v)| v),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ProofScript::Rule {
                rule,
                args,
                premises,
            } => {
                let mut a = Map::new();
                for (k, v) in args {
                    let val = match v {
                        ScriptArg::Nat(n) => json!(n),
                        ScriptArg::Perm(p) => json!(p),
                        other => json!(other.to_surface()),
                    };
                    a.insert(k.clone(), val);
                }
                json!({
                    "rule": rule.name(),
                    "args": Value::Object(a),
                    "premises": premises.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
                })
            }
            ProofScript::Auto(d) => json!({ "auto": d }),
            ProofScript::Hole => json!("_"),
            ProofScript::Both(a, b) => json!({ "both": [a.to_json(), b.to_json()] }),
            ProofScript::Unknown(name) => json!({ "rule": name }),
        }
    }

    pub fn from_json(v: &Value) -> Result<ProofScript, String> {
        if v.as_str() == Some("_") {
            return Ok(ProofScript::Hole);
        }
        let obj = v.as_object().ok_or("proof script node must be an object")?;
        if let Some(d) = obj.get("auto") {
            let depth = match d {
                Value::Null => None,
                other => Some(other.as_u64().ok_or("auto depth must be a number")? as u32),
            };
            return Ok(ProofScript::Auto(depth));
        }
        if let Some(b) = obj.get("both") {
            let arr = b.as_array().ok_or("both expects two scripts")?;
            if arr.len() != 2 {
                return Err("both expects two scripts".into());
            }
            return Ok(ProofScript::Both(
                Box::new(ProofScript::from_json(&arr[0])?),
                Box::new(ProofScript::from_json(&arr[1])?),
            ));
        }
        let name = obj
            .get("rule")
            .and_then(Value::as_str)
            .ok_or("missing rule name")?;
        let Some(rule) = Rule::from_name(name) else {
            return Ok(ProofScript::Unknown(name.to_string()));
        };
        let mut args = Vec::new();
        if let Some(a) = obj.get("args") {
            let a = a.as_object().ok_or("args must be an object")?;
            for (key, val) in a {
                let kind = rule
                    .arg_schema()
                    .iter()
                    .find(|(k, _)| k == key)
                    .map(|(_, k)| *k)
                    .ok_or_else(|| format!("rule `{name}` takes no argument `{key}`"))?;
                args.push((key.clone(), json_arg(kind, val)?));
            }
        }
        let mut premises = Vec::new();
        if let Some(ps) = obj.get("premises") {
            for p in ps.as_array().ok_or("premises must be an array")? {
                premises.push(ProofScript::from_json(p)?);
            }
        }
        Ok(ProofScript::Rule {
            rule,
            args,
            premises,
        })
    }
}

fn json_arg(kind: ArgKind, v: &Value) -> Result<ScriptArg, String> {
    let text = || v.as_str().ok_or_else(|| "argument must be a string".to_string());
    match kind {
        ArgKind::Nat => Ok(ScriptArg::Nat(
            v.as_u64().ok_or("argument must be a number")? as usize,
        )),
        ArgKind::Perm => {
            let arr = v.as_array().ok_or("permutation must be an array")?;
            let mut out = Vec::new();
            for x in arr {
                out.push(x.as_u64().ok_or("permutation entries must be numbers")? as usize);
            }
            Ok(ScriptArg::Perm(out))
        }
        ArgKind::Term => crate::parse::parse_term(text()?)
            .map(ScriptArg::Term)
            .map_err(|e| e.to_string()),
        ArgKind::Effect => crate::parse::parse_effect(text()?)
            .map(ScriptArg::Effect)
            .map_err(|e| e.to_string()),
        ArgKind::Name => Ok(ScriptArg::Name(text()?.to_string())),
    }
}
