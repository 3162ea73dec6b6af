//! Surface syntax: lexer, recursive descent parser and pretty printer.

pub mod lexer;
pub mod print;

use crate::rules::{ArgKind, Rule};
use crate::script::{ProofScript, ScriptArg};
use crate::subst::{subst_effect_many, subst_term_many};
use crate::syntax::{Angle, Branch, Context, Effect, Goal, Judgement, Name, Term, Type};
use lexer::{lex, Spanned, Tok};
use num_rational::Rational64;
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
pub enum Decl {
    Term {
        name: Name,
        ctx: Context,
        ty: Type,
        body: Term,
        using: Vec<ProofScript>,
        line: usize,
    },
    Effect {
        name: Name,
        ctx: Context,
        body: Effect,
        using: Vec<ProofScript>,
        line: usize,
    },
    Lemma {
        name: Name,
        goal: Goal,
        proofs: Vec<ProofScript>,
        using: Vec<ProofScript>,
        line: usize,
    },
    Check {
        name: Name,
        backend: String,
        line: usize,
    },
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Term { name, .. }
            | Decl::Effect { name, .. }
            | Decl::Lemma { name, .. }
            | Decl::Check { name, .. } => name,
        }
    }

    pub fn line(&self) -> usize {
        match self {
            Decl::Term { line, .. }
            | Decl::Effect { line, .. }
            | Decl::Lemma { line, .. }
            | Decl::Check { line, .. } => *line,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Module {
    pub decls: Vec<Decl>,
}

impl Module {
    pub fn find(&self, name: &str) -> Option<&Decl> {
        self.decls
            .iter()
            .find(|d| d.name() == name && !matches!(d, Decl::Check { .. }))
    }
}

const KEYWORDS: &[&str] = &[
    "type", "term", "effect", "lemma", "check", "by", "using", "and", "on", "let", "in", "case",
    "caseE", "of", "inl", "inr", "measure", "unit", "plus", "X", "Z", "E", "I", "qbit", "bot",
    "proj", "auto", "eff", "perp", "both",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    type_aliases: HashMap<Name, Type>,
    term_defs: HashMap<Name, (Context, Term)>,
    effect_defs: HashMap<Name, (Context, Effect)>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn new(src: &str) -> PResult<Parser> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            type_aliases: HashMap::new(),
            term_defs: HashMap::new(),
            effect_defs: HashMap::new(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn line(&self) -> usize {
        self.toks[self.pos].line
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        let s = &self.toks[self.pos];
        Err(ParseError {
            line: s.line,
            col: s.col,
            message: message.into(),
        })
    }

    /// Skips a balanced `open ... close` group if one starts here.
    fn skip_group(&mut self, open: Tok, close: Tok) -> PResult<()> {
        if *self.peek() != open {
            return Ok(());
        }
        let mut depth = 0usize;
        loop {
            let t = self.bump();
            if t == open {
                depth += 1;
            } else if t == close {
                depth -= 1;
                if depth == 0 {
                    return Ok(());
                }
            } else if t == Tok::Eof {
                return self.error(format!("expected {}, found end of input", close.describe()));
            }
        }
    }

    fn expect(&mut self, t: Tok) -> PResult<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(format!(
                "expected {}, found {}",
                t.describe(),
                self.peek().describe()
            ))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<()> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected `{kw}`, found {}", self.peek().describe()))
        }
    }

    fn name(&mut self) -> PResult<Name> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) && !s.contains('-') => {
                self.bump();
                Ok(s)
            }
            other => self.error(format!("expected a name, found {}", other.describe())),
        }
    }

    // ---- types

    fn ty(&mut self) -> PResult<Type> {
        let a = self.ty_prod()?;
        if *self.peek() == Tok::Plus {
            self.bump();
            let b = self.ty()?;
            return Ok(Type::sum(a, b));
        }
        Ok(a)
    }

    fn ty_prod(&mut self) -> PResult<Type> {
        let a = self.ty_atom()?;
        if *self.peek() == Tok::Star {
            self.bump();
            let b = self.ty_prod()?;
            return Ok(Type::tensor(a, b));
        }
        Ok(a)
    }

    fn ty_atom(&mut self) -> PResult<Type> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "I" => {
                self.bump();
                Ok(Type::Unit)
            }
            Tok::Ident(s) if s == "qbit" => {
                self.bump();
                Ok(Type::Qbit)
            }
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(s) if self.type_aliases.contains_key(&s) => {
                self.bump();
                Ok(self.type_aliases[&s].clone())
            }
            other => self.error(format!("expected a type, found {}", other.describe())),
        }
    }

    // ---- terms

    fn term(&mut self) -> PResult<Term> {
        if self.is_kw("let") {
            self.bump();
            let x = self.name()?;
            self.expect(Tok::Star)?;
            let y = self.name()?;
            self.expect(Tok::Eq)?;
            let m = self.term()?;
            self.expect_kw("in")?;
            let n = self.term()?;
            return Ok(Term::let_pair(&x, &y, m, n));
        }
        if self.is_kw("case") {
            self.bump();
            let m = self.term()?;
            self.expect_kw("of")?;
            self.expect_kw("inl")?;
            let x = self.name()?;
            self.expect(Tok::Arrow)?;
            let n = self.term()?;
            self.expect(Tok::Bar)?;
            self.expect_kw("inr")?;
            let y = self.name()?;
            self.expect(Tok::Arrow)?;
            let p = self.term()?;
            return Ok(Term::case(m, &x, n, &y, p));
        }
        self.term_pair()
    }

    fn term_pair(&mut self) -> PResult<Term> {
        let a = self.term_app()?;
        if *self.peek() == Tok::Star {
            self.bump();
            let b = self.term_pair()?;
            return Ok(Term::pair(a, b));
        }
        Ok(a)
    }

    fn term_app(&mut self) -> PResult<Term> {
        if let Tok::Ident(s) = self.peek().clone() {
            match s.as_str() {
                "inl" => {
                    self.bump();
                    return Ok(Term::inl(self.term_app()?));
                }
                "inr" => {
                    self.bump();
                    return Ok(Term::inr(self.term_app()?));
                }
                "X" => {
                    self.bump();
                    return Ok(Term::x(self.term_app()?));
                }
                "Z" => {
                    self.bump();
                    return Ok(Term::z(self.term_app()?));
                }
                "E" => {
                    self.bump();
                    let a = self.term_atom()?;
                    let b = self.term_atom()?;
                    return Ok(Term::cz(a, b));
                }
                _ => {}
            }
        }
        self.term_atom()
    }

    fn term_atom(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Diamond => {
                self.bump();
                Ok(Term::Unit)
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::At => {
                self.bump();
                let n = self.name()?;
                let (ctx, body) = match self.term_defs.get(&n) {
                    Some(d) => d.clone(),
                    None => return self.error(format!("unknown term `@{n}`")),
                };
                let args = self.ref_args()?;
                self.instantiate(&n, &ctx, args).map(|s| subst_term_many(&body, &s))
            }
            Tok::Ident(s) if s == "unit" => {
                self.bump();
                Ok(Term::Unit)
            }
            Tok::Ident(s) if s == "plus" => {
                self.bump();
                Ok(Term::Plus)
            }
            Tok::Ident(s) if s == "measure" => {
                self.bump();
                self.expect(Tok::LBrace)?;
                let mut branches = Vec::new();
                if *self.peek() == Tok::Bar {
                    self.bump();
                }
                loop {
                    let guard = self.effect()?;
                    self.expect(Tok::Arrow)?;
                    let body = self.term()?;
                    branches.push(Branch { guard, body });
                    if *self.peek() == Tok::Bar {
                        self.bump();
                        continue;
                    }
                    break;
                }
                self.expect(Tok::RBrace)?;
                Ok(Term::Measure(branches))
            }
            Tok::Ident(s) if !is_keyword(&s) && !s.contains('-') => {
                self.bump();
                Ok(Term::Var(s))
            }
            other => self.error(format!("expected a term, found {}", other.describe())),
        }
    }

    fn ref_args(&mut self) -> PResult<Vec<Term>> {
        let mut args = Vec::new();
        if *self.peek() == Tok::LParen {
            self.bump();
            if *self.peek() != Tok::RParen {
                loop {
                    args.push(self.term()?);
                    if *self.peek() == Tok::Comma {
                        self.bump();
                        continue;
                    }
                    break;
                }
            }
            self.expect(Tok::RParen)?;
        }
        Ok(args)
    }

    fn instantiate(&self, name: &str, ctx: &Context, args: Vec<Term>) -> PResult<Vec<(Name, Term)>> {
        if args.is_empty() {
            return Ok(Vec::new());
        }
        if args.len() != ctx.len() {
            return self.error(format!(
                "`@{name}` expects {} arguments, got {}",
                ctx.len(),
                args.len()
            ));
        }
        Ok(ctx.0.iter().map(|(n, _)| n.clone()).zip(args).collect())
    }

    // ---- effects

    fn effect(&mut self) -> PResult<Effect> {
        if self.is_kw("caseE") {
            self.bump();
            let m = self.term()?;
            self.expect_kw("of")?;
            self.expect_kw("inl")?;
            let x = self.name()?;
            self.expect(Tok::Arrow)?;
            let a = self.effect()?;
            self.expect(Tok::Bar)?;
            self.expect_kw("inr")?;
            let y = self.name()?;
            self.expect(Tok::Arrow)?;
            let b = self.effect()?;
            return Ok(Effect::case(m, &x, a, &y, b));
        }
        let a = self.effect_prod()?;
        if *self.peek() == Tok::Ovee {
            self.bump();
            let b = self.effect_prod()?;
            if *self.peek() == Tok::Ovee {
                return self.error("`o+` is not associative; add parentheses");
            }
            return Ok(Effect::ovee(a, b));
        }
        Ok(a)
    }

    fn effect_prod(&mut self) -> PResult<Effect> {
        let a = self.effect_unary()?;
        if *self.peek() == Tok::Dot {
            self.bump();
            let b = self.effect_prod()?;
            return Ok(Effect::scale(a, b));
        }
        Ok(a)
    }

    fn rational(&mut self) -> PResult<Rational64> {
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let n = match self.bump() {
            Tok::Num(n) => n,
            other => return self.error(format!("expected a number, found {}", other.describe())),
        };
        let d = if *self.peek() == Tok::Slash {
            self.bump();
            match self.bump() {
                Tok::Num(0) => return self.error("zero denominator"),
                Tok::Num(d) => d,
                other => {
                    return self.error(format!("expected a number, found {}", other.describe()))
                }
            }
        } else {
            1
        };
        let r = Rational64::new(n, d);
        Ok(if neg { -r } else { r })
    }

    fn effect_unary(&mut self) -> PResult<Effect> {
        match self.peek().clone() {
            Tok::Num(_) => {
                let r = self.rational()?;
                if r == Rational64::from_integer(0) {
                    Ok(Effect::Zero)
                } else if r == Rational64::from_integer(1) {
                    Ok(Effect::one())
                } else if r > Rational64::from_integer(0) && r < Rational64::from_integer(1) {
                    Ok(Effect::Const(r))
                } else {
                    self.error(format!("scalar constant {r} is outside [0, 1]"))
                }
            }
            Tok::LParen => {
                self.bump();
                let e = self.effect()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::At => {
                self.bump();
                let n = self.name()?;
                let (ctx, body) = match self.effect_defs.get(&n) {
                    Some(d) => d.clone(),
                    None => return self.error(format!("unknown effect `@{n}`")),
                };
                let args = self.ref_args()?;
                self.instantiate(&n, &ctx, args).map(|s| subst_effect_many(&body, &s))
            }
            Tok::Ident(s) if s == "bot" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let e = self.effect()?;
                self.expect(Tok::RParen)?;
                Ok(Effect::orth(e))
            }
            Tok::Ident(s) if s == "proj" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let m = self.term()?;
                self.expect(Tok::Comma)?;
                let q = self.rational()?;
                self.expect(Tok::RParen)?;
                Ok(Effect::proj(m, Angle::new(q)))
            }
            other => self.error(format!("expected an effect, found {}", other.describe())),
        }
    }

    // ---- judgements and scripts

    fn context(&mut self) -> PResult<Context> {
        let mut ctx = Context::new();
        if *self.peek() != Tok::LParen {
            return Ok(ctx);
        }
        self.bump();
        if *self.peek() != Tok::RParen {
            loop {
                let x = self.name()?;
                self.expect(Tok::Colon)?;
                let t = self.ty()?;
                if ctx.lookup(&x).is_some() {
                    return self.error(format!("`{x}` appears twice in the context"));
                }
                ctx.0.push((x, t));
                if *self.peek() == Tok::Comma {
                    self.bump();
                    continue;
                }
                break;
            }
        }
        self.expect(Tok::RParen)?;
        Ok(ctx)
    }

    fn goal(&mut self, ctx: &Context) -> PResult<Goal> {
        let save = self.pos;
        if let Ok(m) = self.term() {
            match self.peek() {
                Tok::Eq => {
                    self.bump();
                    let n = self.term()?;
                    self.expect(Tok::Colon)?;
                    let ty = self.ty()?;
                    return Ok(Goal::Core(Judgement::term_eq(ctx, m, n, ty)));
                }
                Tok::Colon => {
                    self.bump();
                    let ty = self.ty()?;
                    return Ok(Goal::Core(Judgement::typing(ctx, m, ty)));
                }
                _ => {}
            }
        }
        self.pos = save;
        let a = self.effect()?;
        match self.peek().clone() {
            Tok::Leq => {
                self.bump();
                let b = self.effect()?;
                Ok(Goal::Core(Judgement::leq(ctx, a, b)))
            }
            Tok::EqEq => {
                self.bump();
                let b = self.effect()?;
                Ok(Goal::Equiv {
                    ctx: ctx.clone(),
                    lhs: a,
                    rhs: b,
                })
            }
            Tok::Ident(s) if s == "perp" => {
                self.bump();
                let b = self.effect()?;
                Ok(Goal::Perp {
                    ctx: ctx.clone(),
                    lhs: a,
                    rhs: b,
                })
            }
            Tok::Ident(s) if s == "eff" => {
                self.bump();
                Ok(Goal::Core(Judgement::form(ctx, a)))
            }
            other => self.error(format!(
                "expected `<=`, `==`, `perp` or `eff`, found {}",
                other.describe()
            )),
        }
    }

    fn script(&mut self) -> PResult<ProofScript> {
        match self.peek().clone() {
            Tok::Hole => {
                self.bump();
                Ok(ProofScript::Hole)
            }
            Tok::Ident(s) if s == "auto" => {
                self.bump();
                let mut depth = None;
                if *self.peek() == Tok::LParen {
                    self.bump();
                    match self.bump() {
                        Tok::Num(n) if n >= 0 => depth = Some(n as u32),
                        other => {
                            return self.error(format!(
                                "expected a search depth, found {}",
                                other.describe()
                            ))
                        }
                    }
                    self.expect(Tok::RParen)?;
                }
                Ok(ProofScript::Auto(depth))
            }
            Tok::Ident(s) if s == "both" => {
                self.bump();
                self.expect(Tok::LBrace)?;
                let a = self.script()?;
                self.expect(Tok::Semi)?;
                let b = self.script()?;
                self.expect(Tok::RBrace)?;
                Ok(ProofScript::Both(Box::new(a), Box::new(b)))
            }
            Tok::Ident(s) => {
                let Some(rule) = Rule::from_name(&s) else {
                    self.bump();
                    self.skip_group(Tok::LBracket, Tok::RBracket)?;
                    self.skip_group(Tok::LBrace, Tok::RBrace)?;
                    return Ok(ProofScript::Unknown(s));
                };
                self.bump();
                let mut args = Vec::new();
                if *self.peek() == Tok::LBracket {
                    self.bump();
                    loop {
                        let key = match self.bump() {
                            Tok::Ident(k) => k,
                            other => {
                                return self.error(format!(
                                    "expected an argument name, found {}",
                                    other.describe()
                                ))
                            }
                        };
                        let kind = match rule.arg_schema().iter().find(|(k, _)| *k == key) {
                            Some((_, kind)) => *kind,
                            None => {
                                return self
                                    .error(format!("rule `{s}` takes no argument `{key}`"))
                            }
                        };
                        self.expect(Tok::Eq)?;
                        let v = self.script_arg(kind)?;
                        args.push((key, v));
                        if *self.peek() == Tok::Comma {
                            self.bump();
                            continue;
                        }
                        break;
                    }
                    self.expect(Tok::RBracket)?;
                }
                let mut premises = Vec::new();
                if *self.peek() == Tok::LBrace {
                    self.bump();
                    if *self.peek() != Tok::RBrace {
                        loop {
                            premises.push(self.script()?);
                            if *self.peek() == Tok::Semi {
                                self.bump();
                                continue;
                            }
                            break;
                        }
                    }
                    self.expect(Tok::RBrace)?;
                }
                Ok(ProofScript::Rule {
                    rule,
                    args,
                    premises,
                })
            }
            other => self.error(format!("expected a proof script, found {}", other.describe())),
        }
    }

    fn script_arg(&mut self, kind: ArgKind) -> PResult<ScriptArg> {
        match kind {
            ArgKind::Nat => match self.bump() {
                Tok::Num(n) if n >= 0 => Ok(ScriptArg::Nat(n as usize)),
                other => self.error(format!("expected a number, found {}", other.describe())),
            },
            ArgKind::Term => Ok(ScriptArg::Term(self.term()?)),
            ArgKind::Effect => Ok(ScriptArg::Effect(self.effect()?)),
            ArgKind::Name => Ok(ScriptArg::Name(self.name()?)),
            ArgKind::Perm => {
                self.expect(Tok::LBracket)?;
                let mut out = Vec::new();
                loop {
                    match self.bump() {
                        Tok::Num(n) if n >= 0 => out.push(n as usize),
                        other => {
                            return self
                                .error(format!("expected a number, found {}", other.describe()))
                        }
                    }
                    if *self.peek() == Tok::Comma {
                        self.bump();
                        continue;
                    }
                    break;
                }
                self.expect(Tok::RBracket)?;
                Ok(ScriptArg::Perm(out))
            }
        }
    }

    fn block(&mut self) -> PResult<ProofScript> {
        self.expect(Tok::LBrace)?;
        let s = self.script()?;
        self.expect(Tok::RBrace)?;
        Ok(s)
    }

    fn usings(&mut self) -> PResult<Vec<ProofScript>> {
        let mut out = Vec::new();
        while self.is_kw("using") {
            self.bump();
            out.push(self.block()?);
        }
        Ok(out)
    }

    fn decl(&mut self) -> PResult<Option<Decl>> {
        let line = self.line();
        let kw = match self.peek().clone() {
            Tok::Eof => return Ok(None),
            Tok::Ident(s) => s,
            other => return self.error(format!("expected a declaration, found {}", other.describe())),
        };
        self.bump();
        match kw.as_str() {
            "type" => {
                let n = self.name()?;
                self.expect(Tok::Eq)?;
                let t = self.ty()?;
                self.type_aliases.insert(n, t);
                self.decl()
            }
            "term" => {
                let name = self.name()?;
                let ctx = self.context()?;
                self.expect(Tok::Colon)?;
                let ty = self.ty()?;
                self.expect(Tok::Eq)?;
                let body = self.term()?;
                let using = self.usings()?;
                self.term_defs.insert(name.clone(), (ctx.clone(), body.clone()));
                Ok(Some(Decl::Term {
                    name,
                    ctx,
                    ty,
                    body,
                    using,
                    line,
                }))
            }
            "effect" => {
                let name = self.name()?;
                let ctx = self.context()?;
                self.expect(Tok::Eq)?;
                let body = self.effect()?;
                let using = self.usings()?;
                self.effect_defs.insert(name.clone(), (ctx.clone(), body.clone()));
                Ok(Some(Decl::Effect {
                    name,
                    ctx,
                    body,
                    using,
                    line,
                }))
            }
            "lemma" => {
                let name = self.name()?;
                let ctx = self.context()?;
                self.expect(Tok::Colon)?;
                let goal = self.goal(&ctx)?;
                self.expect_kw("by")?;
                let mut proofs = vec![self.block()?];
                if self.is_kw("and") {
                    self.bump();
                    proofs.push(self.block()?);
                }
                let using = self.usings()?;
                Ok(Some(Decl::Lemma {
                    name,
                    goal,
                    proofs,
                    using,
                    line,
                }))
            }
            "check" => {
                let name = self.name()?;
                self.expect_kw("on")?;
                let backend = match self.bump() {
                    Tok::Ident(b) => b,
                    other => {
                        return self.error(format!("expected a backend, found {}", other.describe()))
                    }
                };
                Ok(Some(Decl::Check {
                    name,
                    backend,
                    line,
                }))
            }
            other => {
                self.pos -= 1;
                self.error(format!("expected a declaration, found `{other}`"))
            }
        }
    }

    fn finish(&mut self) -> PResult<()> {
        if *self.peek() != Tok::Eof {
            return self.error(format!("unexpected {}", self.peek().describe()));
        }
        Ok(())
    }
}

pub fn parse_module(src: &str) -> Result<Module, ParseError> {
    let mut p = Parser::new(src)?;
    let mut decls = Vec::new();
    while let Some(d) = p.decl()? {
        decls.push(d);
    }
    Ok(Module { decls })
}

pub fn parse_type(src: &str) -> Result<Type, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_effect(src: &str) -> Result<Effect, ParseError> {
    let mut p = Parser::new(src)?;
    let e = p.effect()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_script(src: &str) -> Result<ProofScript, ParseError> {
    let mut p = Parser::new(src)?;
    let s = p.script()?;
    p.finish()?;
    Ok(s)
}

pub fn parse_context(src: &str) -> Result<Context, ParseError> {
    let mut p = Parser::new(src)?;
    let c = p.context()?;
    p.finish()?;
    Ok(c)
}

/// Parses `(ctx) : J` in lemma statement syntax.
pub fn parse_goal(src: &str) -> Result<Goal, ParseError> {
    let mut p = Parser::new(src)?;
    let ctx = p.context()?;
    p.expect(Tok::Colon)?;
    let g = p.goal(&ctx)?;
    p.finish()?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::var;

    #[test]
    fn parses_nested_case_inside_measure() {
        let t = parse_term(
            "measure { 1/2 -> case c of inl a -> a | inr b -> b | bot(1/2) -> unit }",
        )
        .unwrap();
        match t {
            Term::Measure(bs) => {
                assert_eq!(bs.len(), 2);
                assert_eq!(bs[1].body, Term::Unit);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn pairs_associate_right() {
        let t = parse_term("a * b * c").unwrap();
        assert_eq!(t, Term::pair(var("a"), Term::pair(var("b"), var("c"))));
    }

    #[test]
    fn ovee_requires_parentheses() {
        assert!(parse_effect("0 o+ 0 o+ 0").is_err());
        assert!(parse_effect("(0 o+ 0) o+ 0").is_ok());
    }

    #[test]
    fn references_expand() {
        let m = parse_module(
            "term flip (c : I + I) : I + I = case c of inl a -> inr a | inr b -> inl b\n\
             term twice (d : I + I) : I + I = @flip(@flip(d))",
        )
        .unwrap();
        match &m.decls[1] {
            Decl::Term { body, .. } => assert!(matches!(body, Term::Case { .. })),
            _ => panic!(),
        }
    }

    #[test]
    fn goals_of_each_form() {
        assert!(matches!(
            parse_goal("(x : I) : x = unit : I").unwrap(),
            Goal::Core(Judgement::TermEq { .. })
        ));
        assert!(matches!(parse_goal("() : 1 == 1").unwrap(), Goal::Equiv { .. }));
        assert!(matches!(parse_goal("() : 0 perp 1").unwrap(), Goal::Perp { .. }));
        assert!(matches!(
            parse_goal("(q : qbit) : proj(q, 1/2) eff").unwrap(),
            Goal::Core(Judgement::EffForm { .. })
        ));
    }

    #[test]
    fn unknown_rules_parse_and_keep_their_name() {
        assert!(parse_script("leq-ref").is_ok());
        assert_eq!(parse_script("leq-refl").unwrap(), ProofScript::Unknown("leq-refl".into()));
        let s = parse_script("leq-trans { leq-refl [mid = 0] { auto }; _ }").unwrap();
        assert_eq!(print::script_to_string(&s), "leq-trans { leq-refl; _ }");
    }

    #[test]
    fn script_arguments() {
        let s = parse_script("leq-trans [mid = bot(0)] { auto; _ }").unwrap();
        assert_eq!(s.arg("mid"), Some(&ScriptArg::Effect(Effect::one())));
        let s = parse_script("measure-perm [perm = [2, 1]] { auto }").unwrap();
        assert_eq!(s.arg("perm"), Some(&ScriptArg::Perm(vec![2, 1])));
    }
}
