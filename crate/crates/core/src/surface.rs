//! Concrete syntax.
//!
//! ```text
//! program ::= decl*
//! decl    ::= "def" ident ":" term "=" term
//! term    ::= "fun" binder+ "=>" term
//!           | binder+ "->" term
//!           | spine ("->" term)?
//! binder  ::= "(" ident ":" term ")"
//! spine   ::= head atom*
//! head    ::= "brec" atom atom atom | atom
//! atom    ::= ident | "U" digits | "N2" | "0" | "1" | "(" term ")"
//! ```
//!
//! Comments run from `--` to the end of the line. Application is
//! left-associative and arrows are right-associative.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::syntax::{Level, Term};

/// 1-based line and column.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceTerm {
    Var(String, Pos),
    Lam(String, Box<SurfaceTerm>, Box<SurfaceTerm>),
    Pi(String, Box<SurfaceTerm>, Box<SurfaceTerm>),
    App(Box<SurfaceTerm>, Box<SurfaceTerm>),
    Univ(Level),
    Bool,
    Zero,
    One,
    Brec(Box<SurfaceTerm>, Box<SurfaceTerm>, Box<SurfaceTerm>),
}

/// Binder name used for the non-dependent arrow; it can never be referenced.
pub const ANONYMOUS: &str = "_";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub name: String,
    pub pos: Pos,
    pub ty: SurfaceTerm,
    pub body: SurfaceTerm,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub decls: Vec<Decl>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
    /// Tokens that would have been accepted here. Empty when the error is not
    /// about an unexpected token.
    pub expected: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{pos}: unbound identifier `{name}`")]
pub struct ScopeError {
    pub name: String,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Univ(Level),
    Def,
    Fun,
    Brec,
    Bool,
    Zero,
    One,
    LParen,
    RParen,
    Colon,
    Equals,
    FatArrow,
    Arrow,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Univ(n) => format!("`U{n}`"),
            Tok::Def => "`def`".into(),
            Tok::Fun => "`fun`".into(),
            Tok::Brec => "`brec`".into(),
            Tok::Bool => "`N2`".into(),
            Tok::Zero => "`0`".into(),
            Tok::One => "`1`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Equals => "`=`".into(),
            Tok::FatArrow => "`=>`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c == ' ' || c == '\t' || c == '\r' {
            i += 1;
            col += 1;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'-') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (tok, len) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            ':' => (Tok::Colon, 1),
            '=' if chars.get(i + 1) == Some(&'>') => (Tok::FatArrow, 2),
            '=' => (Tok::Equals, 1),
            '-' if chars.get(i + 1) == Some(&'>') => (Tok::Arrow, 2),
            c if c.is_ascii_digit() => {
                let len = chars[i..].iter().take_while(|c| c.is_ascii_digit()).count();
                let word: String = chars[i..i + len].iter().collect();
                let tok = match word.as_str() {
                    "0" => Tok::Zero,
                    "1" => Tok::One,
                    _ => {
                        return Err(ParseError {
                            pos,
                            message: format!("unexpected numeral `{word}`; only 0 and 1 are terms"),
                            expected: Vec::new(),
                        })
                    }
                };
                (tok, len)
            }
            c if is_ident_start(c) => {
                let len = chars[i..].iter().take_while(|c| is_ident_char(**c)).count();
                let word: String = chars[i..i + len].iter().collect();
                (keyword_or_ident(word, pos)?, len)
            }
            other => {
                return Err(ParseError {
                    pos,
                    message: format!("unexpected character `{other}`"),
                    expected: Vec::new(),
                })
            }
        };
        toks.push((tok, pos));
        i += len;
        col += len;
    }
    toks.push((Tok::Eof, Pos { line, col }));
    Ok(toks)
}

fn keyword_or_ident(word: String, pos: Pos) -> Result<Tok, ParseError> {
    Ok(match word.as_str() {
        "def" => Tok::Def,
        "fun" => Tok::Fun,
        "brec" => Tok::Brec,
        "N2" => Tok::Bool,
        w if w.len() > 1 && w.starts_with('U') && w[1..].bytes().all(|b| b.is_ascii_digit()) => {
            let level = w[1..].parse::<Level>().map_err(|_| ParseError {
                pos,
                message: format!("universe level in `{w}` is out of range"),
                expected: Vec::new(),
            })?;
            Tok::Univ(level)
        }
        _ => Tok::Ident(word),
    })
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.at + k).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let expected: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
        ParseError {
            pos: self.pos(),
            message: format!(
                "expected {}, found {}",
                expected.join(" or "),
                self.peek().describe()
            ),
            expected,
        }
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<Pos, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(&[name]))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let pos = self.bump().1;
                Ok((name, pos))
            }
            _ => Err(self.unexpected(&["identifier"])),
        }
    }

    fn program(&mut self) -> Result<Program, ParseError> {
        let mut decls: Vec<Decl> = Vec::new();
        while *self.peek() != Tok::Eof {
            self.expect(Tok::Def, "`def`")?;
            let (name, pos) = self.ident()?;
            if name == ANONYMOUS {
                return Err(ParseError {
                    pos,
                    message: "`_` cannot name a definition".into(),
                    expected: Vec::new(),
                });
            }
            if decls.iter().any(|d| d.name == name) {
                return Err(ParseError {
                    pos,
                    message: format!("duplicate definition `{name}`"),
                    expected: Vec::new(),
                });
            }
            self.expect(Tok::Colon, "`:`")?;
            let ty = self.term()?;
            self.expect(Tok::Equals, "`=`")?;
            let body = self.term()?;
            decls.push(Decl {
                name,
                pos,
                ty,
                body,
            });
        }
        Ok(Program { decls })
    }

    fn starts_binder(&self) -> bool {
        *self.peek() == Tok::LParen
            && matches!(self.peek_at(1), Tok::Ident(_))
            && *self.peek_at(2) == Tok::Colon
    }

    fn binders(&mut self) -> Result<Vec<(String, SurfaceTerm)>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.expect(Tok::LParen, "`(`")?;
            let (name, _) = self.ident()?;
            self.expect(Tok::Colon, "`:`")?;
            let ty = self.term()?;
            self.expect(Tok::RParen, "`)`")?;
            out.push((name, ty));
            if !self.starts_binder() {
                return Ok(out);
            }
        }
    }

    fn term(&mut self) -> Result<SurfaceTerm, ParseError> {
        if *self.peek() == Tok::Fun {
            self.bump();
            let binders = self.binders()?;
            self.expect(Tok::FatArrow, "`=>`")?;
            let body = self.term()?;
            return Ok(binders.into_iter().rev().fold(body, |acc, (x, a)| {
                SurfaceTerm::Lam(x, Box::new(a), Box::new(acc))
            }));
        }
        if self.starts_binder() {
            let binders = self.binders()?;
            self.expect(Tok::Arrow, "`->`")?;
            let body = self.term()?;
            return Ok(binders.into_iter().rev().fold(body, |acc, (x, a)| {
                SurfaceTerm::Pi(x, Box::new(a), Box::new(acc))
            }));
        }
        let lhs = self.spine()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.term()?;
            return Ok(SurfaceTerm::Pi(
                ANONYMOUS.into(),
                Box::new(lhs),
                Box::new(rhs),
            ));
        }
        Ok(lhs)
    }

    fn spine(&mut self) -> Result<SurfaceTerm, ParseError> {
        let mut head = if *self.peek() == Tok::Brec {
            self.bump();
            let motive = self.atom()?;
            let case0 = self.atom()?;
            let case1 = self.atom()?;
            SurfaceTerm::Brec(Box::new(motive), Box::new(case0), Box::new(case1))
        } else {
            self.atom()?
        };
        while self.starts_atom() {
            let arg = self.atom()?;
            head = SurfaceTerm::App(Box::new(head), Box::new(arg));
        }
        Ok(head)
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_) | Tok::Univ(_) | Tok::Bool | Tok::Zero | Tok::One | Tok::LParen
        )
    }

    fn atom(&mut self) -> Result<SurfaceTerm, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let pos = self.bump().1;
                Ok(SurfaceTerm::Var(name, pos))
            }
            Tok::Univ(n) => {
                self.bump();
                Ok(SurfaceTerm::Univ(n))
            }
            Tok::Bool => {
                self.bump();
                Ok(SurfaceTerm::Bool)
            }
            Tok::Zero => {
                self.bump();
                Ok(SurfaceTerm::Zero)
            }
            Tok::One => {
                self.bump();
                Ok(SurfaceTerm::One)
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => Err(self.unexpected(&["identifier", "`U<n>`", "`N2`", "`0`", "`1`", "`(`"])),
        }
    }
}

/// Parse a whole program.
pub fn parse(text: &str) -> Result<Program, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    p.program()
}

/// Parse a single term; the whole input must be consumed.
pub fn parse_term(text: &str) -> Result<SurfaceTerm, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let t = p.term()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected(&["end of input"]));
    }
    Ok(t)
}

/// Maps names to de Bruijn indices. Top-level definitions are inlined, so the
/// resulting core terms never mention globals.
#[derive(Clone, Debug, Default)]
pub struct Resolver {
    globals: HashMap<String, Term>,
}

impl Resolver {
    pub fn new() -> Resolver {
        Resolver::default()
    }

    /// Make `name` stand for the closed term `body` in later resolutions.
    pub fn define(&mut self, name: impl Into<String>, body: Term) {
        debug_assert!(body.is_scoped_in(0), "global definitions must be closed");
        self.globals.insert(name.into(), body);
    }

    /// Resolve `t` with local `scope`, innermost binder last.
    pub fn resolve(&self, scope: &[String], t: &SurfaceTerm) -> Result<Term, ScopeError> {
        let mut scope: Vec<&str> = scope.iter().map(String::as_str).collect();
        self.go(&mut scope, t)
    }

    fn go<'a>(&self, scope: &mut Vec<&'a str>, t: &'a SurfaceTerm) -> Result<Term, ScopeError> {
        Ok(match t {
            SurfaceTerm::Var(name, pos) => {
                let local = (name != ANONYMOUS)
                    .then(|| scope.iter().rev().position(|x| x == name))
                    .flatten();
                match (local, self.globals.get(name)) {
                    (Some(k), _) => Term::Var(k),
                    (None, Some(body)) => body.clone(),
                    (None, None) => {
                        return Err(ScopeError {
                            name: name.clone(),
                            pos: *pos,
                        })
                    }
                }
            }
            SurfaceTerm::Lam(x, a, b) => {
                let a = self.go(scope, a)?;
                Term::lam(a, self.under(scope, x, b)?)
            }
            SurfaceTerm::Pi(x, a, b) => {
                let a = self.go(scope, a)?;
                Term::pi(a, self.under(scope, x, b)?)
            }
            SurfaceTerm::App(f, a) => Term::app(self.go(scope, f)?, self.go(scope, a)?),
            SurfaceTerm::Univ(n) => Term::Univ(*n),
            SurfaceTerm::Bool => Term::Bool,
            SurfaceTerm::Zero => Term::Zero,
            SurfaceTerm::One => Term::One,
            SurfaceTerm::Brec(m, a, b) => {
                Term::brec(self.go(scope, m)?, self.go(scope, a)?, self.go(scope, b)?)
            }
        })
    }

    fn under<'a>(
        &self,
        scope: &mut Vec<&'a str>,
        x: &'a str,
        body: &'a SurfaceTerm,
    ) -> Result<Term, ScopeError> {
        scope.push(x);
        let r = self.go(scope, body);
        scope.pop();
        r
    }
}

/// Resolve a term against local names only.
pub fn resolve(scope: &[String], t: &SurfaceTerm) -> Result<Term, ScopeError> {
    Resolver::new().resolve(scope, t)
}

/// A declaration with names resolved and earlier definitions inlined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedDecl {
    pub name: String,
    pub pos: Pos,
    pub ty: Term,
    pub body: Term,
}

/// Resolve every declaration, inlining each body into the ones after it.
pub fn resolve_program(p: &Program) -> Result<Vec<ResolvedDecl>, ScopeError> {
    let mut resolver = Resolver::new();
    let mut out = Vec::with_capacity(p.decls.len());
    for d in &p.decls {
        let ty = resolver.resolve(&[], &d.ty)?;
        let body = resolver.resolve(&[], &d.body)?;
        resolver.define(d.name.clone(), body.clone());
        out.push(ResolvedDecl {
            name: d.name.clone(),
            pos: d.pos,
            ty,
            body,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Top,
    Spine,
    Atom,
}

/// Print a core term in concrete syntax. `hints` names the free variables,
/// outermost first. Binders are named `x<k>` where `k` is the number of names
/// in scope, bumped past any collision.
pub fn pretty(t: &Term, hints: &[String]) -> String {
    let mut names: Vec<String> = hints.to_vec();
    let mut out = String::new();
    write_term(&mut out, t, &mut names, Prec::Top);
    out
}

/// Names `x0 .. x<n-1>` for a context of length `n`, matching the names
/// [`pretty`] gives binders.
pub fn default_hints(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

fn fresh_name(names: &[String]) -> String {
    let mut k = names.len();
    loop {
        let candidate = format!("x{k}");
        if !names.contains(&candidate) {
            return candidate;
        }
        k += 1;
    }
}

fn occurs(t: &Term, k: usize) -> bool {
    match t {
        Term::Var(j) => *j == k,
        Term::Univ(_) | Term::Bool | Term::Zero | Term::One => false,
        Term::Lam(a, b) | Term::Pi(a, b) => occurs(a, k) || occurs(b, k + 1),
        Term::App(f, a) => occurs(f, k) || occurs(a, k),
        Term::Brec(m, a0, a1) => occurs(m, k) || occurs(a0, k) || occurs(a1, k),
    }
}

fn write_term(out: &mut String, t: &Term, names: &mut Vec<String>, prec: Prec) {
    match t {
        Term::Var(k) => {
            let n = names.len();
            assert!(*k < n, "pretty: index {k} escapes {n} names");
            out.push_str(&names[n - 1 - k]);
        }
        Term::Univ(n) => {
            out.push('U');
            out.push_str(&n.to_string());
        }
        Term::Bool => out.push_str("N2"),
        Term::Zero => out.push('0'),
        Term::One => out.push('1'),
        Term::Pi(a, b) if !occurs(b, 0) => {
            let wrap = prec > Prec::Top;
            if wrap {
                out.push('(');
            }
            write_term(out, a, names, Prec::Spine);
            out.push_str(" -> ");
            names.push(ANONYMOUS.to_string());
            write_term(out, b, names, Prec::Top);
            names.pop();
            if wrap {
                out.push(')');
            }
        }
        Term::Lam(a, b) | Term::Pi(a, b) => {
            let wrap = prec > Prec::Top;
            if wrap {
                out.push('(');
            }
            let x = fresh_name(names);
            let is_lam = matches!(t, Term::Lam(..));
            if is_lam {
                out.push_str("fun ");
            }
            out.push('(');
            out.push_str(&x);
            out.push_str(" : ");
            write_term(out, a, names, Prec::Top);
            out.push_str(if is_lam { ") => " } else { ") -> " });
            names.push(x);
            write_term(out, b, names, Prec::Top);
            names.pop();
            if wrap {
                out.push(')');
            }
        }
        Term::App(f, a) => {
            let wrap = prec > Prec::Spine;
            if wrap {
                out.push('(');
            }
            write_term(out, f, names, Prec::Spine);
            out.push(' ');
            write_term(out, a, names, Prec::Atom);
            if wrap {
                out.push(')');
            }
        }
        Term::Brec(m, a0, a1) => {
            let wrap = prec > Prec::Spine;
            if wrap {
                out.push('(');
            }
            out.push_str("brec ");
            write_term(out, m, names, Prec::Atom);
            out.push(' ');
            write_term(out, a0, names, Prec::Atom);
            out.push(' ');
            write_term(out, a1, names, Prec::Atom);
            if wrap {
                out.push(')');
            }
        }
    }
}
