//! Pretty printer producing surface syntax that parses back to the same tree.

use crate::parse::{Decl, Module};
use crate::script::ProofScript;
use crate::syntax::{Context, Effect, Goal, Judgement, Term, Type};
use num_rational::Rational64;

pub fn type_to_string(t: &Type) -> String {
    fn go(t: &Type, prec: u8) -> String {
        match t {
            Type::Unit => "I".into(),
            Type::Qbit => "qbit".into(),
            Type::Sum(a, b) => {
                let s = format!("{} + {}", go(a, 1), go(b, 0));
                if prec > 0 {
                    format!("({s})")
                } else {
                    s
                }
            }
            Type::Tensor(a, b) => {
                let s = format!("{} * {}", go(a, 2), go(b, 1));
                if prec > 1 {
                    format!("({s})")
                } else {
                    s
                }
            }
        }
    }
    go(t, 0)
}

pub fn rational_to_string(r: &Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

// Term precedence: 0 anything, 1 pair, 2 prefix application, 3 atom.
struct Printer {
    out: String,
    indent: usize,
    multiline: bool,
}

impl Printer {
    fn newline(&mut self) {
        if self.multiline {
            self.out.push('\n');
            for _ in 0..self.indent {
                self.out.push_str("  ");
            }
        } else {
            self.out.push(' ');
        }
    }

    fn term(&mut self, t: &Term, prec: u8) {
        let own = match t {
            Term::LetPair { .. } | Term::Case { .. } => 0,
            Term::Pair(_, _) => 1,
            Term::Inl(_) | Term::Inr(_) | Term::PauliX(_) | Term::PauliZ(_) | Term::Cz(_, _) => 2,
            _ => 3,
        };
        let paren = own < prec;
        if paren {
            self.out.push('(');
        }
        match t {
            Term::Var(x) => self.out.push_str(x),
            Term::Unit => self.out.push_str("unit"),
            Term::Plus => self.out.push_str("plus"),
            Term::Pair(a, b) => {
                self.term(a, 2);
                self.out.push_str(" * ");
                self.term(b, 1);
            }
            Term::Inl(a) => {
                self.out.push_str("inl ");
                self.term(a, 2);
            }
            Term::Inr(a) => {
                self.out.push_str("inr ");
                self.term(a, 2);
            }
            Term::PauliX(a) => {
                self.out.push_str("X ");
                self.term(a, 2);
            }
            Term::PauliZ(a) => {
                self.out.push_str("Z ");
                self.term(a, 2);
            }
            Term::Cz(a, b) => {
                self.out.push_str("E ");
                self.term(a, 3);
                self.out.push(' ');
                self.term(b, 3);
            }
            Term::LetPair {
                left,
                right,
                bound,
                body,
            } => {
                self.out.push_str(&format!("let {left} * {right} = "));
                self.term(bound, 0);
                self.out.push_str(" in ");
                self.term(body, 0);
            }
            Term::Case {
                scrutinee,
                left,
                on_left,
                right,
                on_right,
            } => {
                self.out.push_str("case ");
                self.term(scrutinee, 0);
                self.out.push_str(&format!(" of inl {left} -> "));
                self.term(on_left, 0);
                self.out.push_str(&format!(" | inr {right} -> "));
                self.term(on_right, 0);
            }
            Term::Measure(bs) => {
                self.out.push_str("measure {");
                self.indent += 1;
                for (i, b) in bs.iter().enumerate() {
                    self.newline();
                    if i > 0 {
                        self.out.push_str("| ");
                    }
                    self.effect(&b.guard, 0);
                    self.out.push_str(" -> ");
                    self.term(&b.body, 0);
                }
                self.indent -= 1;
                self.newline();
                self.out.push('}');
            }
        }
        if paren {
            self.out.push(')');
        }
    }

    // Effect precedence: 0 anything, 1 product, 2 unary.
    fn effect(&mut self, e: &Effect, prec: u8) {
        let own = match e {
            Effect::Case { .. } => 0,
            Effect::Ovee(_, _) => 0,
            Effect::Scale(_, _) => 1,
            _ => 2,
        };
        let paren = own < prec;
        if paren {
            self.out.push('(');
        }
        match e {
            Effect::Zero => self.out.push('0'),
            Effect::Const(r) => self.out.push_str(&rational_to_string(r)),
            Effect::Orth(a) => {
                if **a == Effect::Zero {
                    self.out.push('1');
                } else {
                    self.out.push_str("bot(");
                    self.effect(a, 0);
                    self.out.push(')');
                }
            }
            Effect::Ovee(a, b) => {
                self.effect(a, 1);
                self.out.push_str(" o+ ");
                self.effect(b, 1);
            }
            Effect::Scale(a, b) => {
                self.effect(a, 2);
                self.out.push_str(" . ");
                self.effect(b, 1);
            }
            Effect::Proj(m, q) => {
                self.out.push_str("proj(");
                self.term(m, 0);
                self.out.push_str(", ");
                self.out.push_str(&rational_to_string(&q.turns()));
                self.out.push(')');
            }
            Effect::Case {
                scrutinee,
                left,
                on_left,
                right,
                on_right,
            } => {
                self.out.push_str("caseE ");
                self.term(scrutinee, 0);
                self.out.push_str(&format!(" of inl {left} -> "));
                self.effect(on_left, 0);
                self.out.push_str(&format!(" | inr {right} -> "));
                self.effect(on_right, 0);
            }
        }
        if paren {
            self.out.push(')');
        }
    }
}

fn printer(multiline: bool) -> Printer {
    Printer {
        out: String::new(),
        indent: 0,
        multiline,
    }
}

pub fn term_to_string(t: &Term) -> String {
    let mut p = printer(true);
    p.term(t, 0);
    p.out
}

pub fn effect_to_string(e: &Effect) -> String {
    let mut p = printer(true);
    p.effect(e, 0);
    p.out
}

/// Single-line rendering, used inside messages and script arguments.
pub fn term_inline(t: &Term) -> String {
    let mut p = printer(false);
    p.term(t, 0);
    p.out
}

pub fn effect_inline(e: &Effect) -> String {
    let mut p = printer(false);
    p.effect(e, 0);
    p.out
}

pub fn context_to_string(c: &Context) -> String {
    let items: Vec<String> = c
        .0
        .iter()
        .map(|(n, t)| format!("{n} : {}", type_to_string(t)))
        .collect();
    format!("({})", items.join(", "))
}

pub fn judgement_to_string(j: &Judgement) -> String {
    let body = match j {
        Judgement::Typing { term, ty, .. } => {
            format!("{} : {}", term_inline(term), type_to_string(ty))
        }
        Judgement::TermEq { lhs, rhs, ty, .. } => format!(
            "{} = {} : {}",
            term_inline(lhs),
            term_inline(rhs),
            type_to_string(ty)
        ),
        Judgement::EffForm { eff, .. } => format!("{} eff", effect_inline(eff)),
        Judgement::EffLeq { lhs, rhs, .. } => {
            format!("{} <= {}", effect_inline(lhs), effect_inline(rhs))
        }
    };
    format!("{} : {}", context_to_string(j.ctx()), body)
}

pub fn goal_to_string(g: &Goal) -> String {
    match g {
        Goal::Core(j) => judgement_to_string(j),
        Goal::Perp { ctx, lhs, rhs } => format!(
            "{} : {} perp {}",
            context_to_string(ctx),
            effect_inline(lhs),
            effect_inline(rhs)
        ),
        Goal::Equiv { ctx, lhs, rhs } => format!(
            "{} : {} == {}",
            context_to_string(ctx),
            effect_inline(lhs),
            effect_inline(rhs)
        ),
    }
}

pub fn script_to_string(s: &ProofScript) -> String {
    match s {
        ProofScript::Hole => "_".into(),
        ProofScript::Auto(None) => "auto".into(),
        ProofScript::Auto(Some(d)) => format!("auto({d})"),
        ProofScript::Both(a, b) => format!("both {{ {}; {} }}", script_to_string(a), script_to_string(b)),
        ProofScript::Unknown(name) => name.clone(),
        ProofScript::Rule { rule, args, premises } => {
            let mut out = rule.name().to_string();
            if !args.is_empty() {
                let items: Vec<String> = args.iter().map(|(k, v)| format!("{k} = {}", v.to_surface())).collect();
                out.push_str(&format!(" [{}]", items.join(", ")));
            }
            if !premises.is_empty() {
                let items: Vec<String> = premises.iter().map(script_to_string).collect();
                out.push_str(&format!(" {{ {} }}", items.join("; ")));
            }
            out
        }
    }
}

fn usings(out: &mut String, using: &[ProofScript]) {
    for u in using {
        out.push_str(&format!("\n  using {{ {} }}", script_to_string(u)));
    }
}

pub fn decl_to_string(d: &Decl) -> String {
    let mut out = String::new();
    match d {
        Decl::Term { name, ctx, ty, body, using, .. } => {
            out.push_str(&format!(
                "term {name} {} : {} =\n  {}",
                context_to_string(ctx),
                type_to_string(ty),
                term_to_string(body).replace('\n', "\n  ")
            ));
            usings(&mut out, using);
        }
        Decl::Effect { name, ctx, body, using, .. } => {
            out.push_str(&format!(
                "effect {name} {} =\n  {}",
                context_to_string(ctx),
                effect_to_string(body).replace('\n', "\n  ")
            ));
            usings(&mut out, using);
        }
        Decl::Lemma { name, goal, proofs, using, .. } => {
            out.push_str(&format!("lemma {name} {}\n  by {{ {} }}", goal_to_string(goal), script_to_string(&proofs[0])));
            for p in &proofs[1..] {
                out.push_str(&format!(" and {{ {} }}", script_to_string(p)));
            }
            usings(&mut out, using);
        }
        Decl::Check { name, backend, .. } => out.push_str(&format!("check {name} on {backend}")),
    }
    out
}

/// Prints a module with type abbreviations and declaration references expanded.
pub fn module_to_string(m: &Module) -> String {
    let mut out = String::new();
    for d in &m.decls {
        out.push_str(&decl_to_string(d));
        out.push_str("\n\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_effect, parse_goal, parse_term, parse_type};

    #[test]
    fn round_trips() {
        for src in [
            "let x * y = a in case x of inl p -> inl (p * y) | inr q -> inr (q * y)",
            "E (X a) (Z b)",
            "inl inr unit",
            "(a * b) * c",
            "measure {\n  1/3 -> plus\n  | bot(1/3) -> X plus\n}",
        ] {
            let t = parse_term(src).unwrap();
            assert_eq!(parse_term(&term_to_string(&t)).unwrap(), t, "{src}");
        }
        for src in [
            "(1/2 . bot(1/3)) o+ 1/4",
            "caseE c of inl a -> 1 | inr b -> (0 o+ 1/2)",
            "1/2 . 1/3 . proj(X q, 3/2)",
            "bot(caseE c of inl a -> 0 | inr b -> 1)",
        ] {
            let e = parse_effect(src).unwrap();
            assert_eq!(parse_effect(&effect_to_string(&e)).unwrap(), e, "{src}");
            assert_eq!(parse_effect(&effect_inline(&e)).unwrap(), e, "{src}");
        }
        let t = parse_type("(I + I) * qbit + I").unwrap();
        assert_eq!(parse_type(&type_to_string(&t)).unwrap(), t);
        let g = parse_goal("(c : I + I) : caseE c of inl a -> 1 | inr b -> 0 perp 0").unwrap();
        assert_eq!(parse_goal(&goal_to_string(&g)).unwrap(), g);
    }
}
