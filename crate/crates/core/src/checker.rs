//! Bidirectional type checking with cumulative universes.
//!
//! Every λ carries its domain, so [`Checker::infer`] is total on well-formed
//! syntax and [`Checker::check`] is inference followed by subsumption.
//! Subsumption is conversion, except that a universe is accepted where a
//! higher universe is expected.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::semantics::{
    convertible_types, eval, fresh_var, instantiate, motive_closure, nf, reify, reify_type, v_app,
    Closure, Env, NormalTerm, Value,
};
use crate::surface::{default_hints, pretty, Pos, Program, Resolver, ScopeError};
use crate::syntax::{Level, Term};

/// Default ceiling on universe levels.
pub const DEFAULT_MAX_UNIVERSE: Level = 64;

/// Typing context: the type of each variable and the environment binding
/// each variable to itself.
#[derive(Clone, Default)]
pub struct CheckContext {
    types: Vec<Value>,
    env: Env,
}

impl CheckContext {
    pub fn new() -> CheckContext {
        CheckContext::default()
    }

    /// Context with the given variable types, oldest first.
    pub fn from_types(types: impl IntoIterator<Item = Value>) -> CheckContext {
        types
            .into_iter()
            .fold(CheckContext::new(), |ctx, ty| ctx.extend(ty))
    }

    pub fn size(&self) -> usize {
        self.types.len()
    }

    pub fn types(&self) -> &[Value] {
        &self.types
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    /// Bind a new variable of type `ty`.
    pub fn extend(&self, ty: Value) -> CheckContext {
        let var = fresh_var(ty.clone(), self.size());
        let mut types = self.types.clone();
        types.push(ty);
        CheckContext {
            types,
            env: self.env.push(var),
        }
    }

    pub fn eval(&self, t: &Term) -> Value {
        eval(&self.env, t)
    }

    fn type_of_index(&self, k: usize) -> Option<&Value> {
        let n = self.types.len();
        (k < n).then(|| &self.types[n - 1 - k])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeErrorKind {
    NotAFunction {
        got: NormalTerm,
    },
    NotAType {
        got: NormalTerm,
    },
    Mismatch {
        expected: NormalTerm,
        got: NormalTerm,
    },
    UnboundVariable {
        index: usize,
    },
    Scope(ScopeError),
    UniverseCeiling {
        level: Level,
        max: Level,
    },
    MotiveShape {
        got: NormalTerm,
    },
}

/// Where a type error surfaced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Location {
    pub decl: String,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct TypeError {
    pub kind: TypeErrorKind,
    /// Length of the context the normal forms in `kind` are scoped in.
    pub scope: usize,
    pub location: Option<Location>,
}

impl TypeError {
    fn new(kind: TypeErrorKind, scope: usize) -> TypeError {
        TypeError {
            kind,
            scope,
            location: None,
        }
    }

    fn at(mut self, decl: &str, pos: Pos) -> TypeError {
        self.location.get_or_insert(Location {
            decl: decl.to_string(),
            pos,
        });
        self
    }
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(loc) = &self.location {
            write!(f, "{}: in `{}`: ", loc.pos, loc.decl)?;
        }
        let hints = default_hints(self.scope);
        let show = |t: &NormalTerm| pretty(t.as_term(), &hints);
        match &self.kind {
            TypeErrorKind::NotAFunction { got } => {
                write!(f, "applied a term of non-function type {}", show(got))
            }
            TypeErrorKind::NotAType { got } => {
                write!(f, "expected a type, found a term of type {}", show(got))
            }
            TypeErrorKind::Mismatch { expected, got } => write!(
                f,
                "type mismatch: expected {}, found {}",
                show(expected),
                show(got)
            ),
            TypeErrorKind::UnboundVariable { index } => {
                write!(
                    f,
                    "variable #{index} is not bound in a context of length {}",
                    self.scope
                )
            }
            TypeErrorKind::Scope(e) => write!(f, "unbound identifier `{}`", e.name),
            TypeErrorKind::UniverseCeiling { level, max } => {
                write!(f, "universe U{level} exceeds the maximum level {max}")
            }
            TypeErrorKind::MotiveShape { got } => write!(
                f,
                "brec motive must have type (x : N2) -> U<n>, found {}",
                show(got)
            ),
        }
    }
}

impl From<ScopeError> for TypeError {
    fn from(e: ScopeError) -> TypeError {
        TypeError::new(TypeErrorKind::Scope(e), 0)
    }
}

/// A checked declaration.
#[derive(Clone, Debug)]
pub struct CheckedDecl {
    pub name: String,
    pub pos: Pos,
    /// Closed core term with earlier definitions inlined.
    pub term: Term,
    pub ty_value: Value,
    pub value: Value,
    pub ty_normal: NormalTerm,
    pub term_normal: NormalTerm,
}

#[derive(Clone, Copy, Debug)]
pub struct Checker {
    pub max_universe: Level,
}

impl Default for Checker {
    fn default() -> Self {
        Checker {
            max_universe: DEFAULT_MAX_UNIVERSE,
        }
    }
}

impl Checker {
    pub fn new(max_universe: Level) -> Checker {
        Checker { max_universe }
    }

    /// Infer the least type of `t`.
    pub fn infer(&self, ctx: &CheckContext, t: &Term) -> Result<Value, TypeError> {
        let size = ctx.size();
        match t {
            Term::Var(k) => ctx
                .type_of_index(*k)
                .cloned()
                .ok_or_else(|| TypeError::new(TypeErrorKind::UnboundVariable { index: *k }, size)),
            Term::Univ(n) => {
                let level = n
                    .checked_add(1)
                    .filter(|l| *l <= self.max_universe)
                    .ok_or_else(|| {
                        TypeError::new(
                            TypeErrorKind::UniverseCeiling {
                                level: *n,
                                max: self.max_universe,
                            },
                            size,
                        )
                    })?;
                Ok(Value::Univ(level))
            }
            Term::Bool => Ok(Value::Univ(0)),
            Term::Zero | Term::One => Ok(Value::Bool),
            Term::Pi(a, b) => {
                let la = self.infer_universe(ctx, a)?;
                let inner = ctx.extend(ctx.eval(a));
                let lb = self.infer_universe(&inner, b)?;
                Ok(Value::Univ(la.max(lb)))
            }
            Term::Lam(a, body) => {
                self.infer_universe(ctx, a)?;
                let dom = ctx.eval(a);
                let inner = ctx.extend(dom.clone());
                let body_ty = self.infer(&inner, body)?;
                // Close the body type over the context by reading it back.
                let cod = reify_type(inner.size(), &body_ty).into_term();
                Ok(Value::Pi(
                    Arc::new(dom),
                    Closure::new(ctx.env().clone(), Arc::new(cod)),
                ))
            }
            Term::App(f, a) => match self.infer(ctx, f)? {
                Value::Pi(dom, cod) => {
                    self.check(ctx, a, &dom)?;
                    Ok(instantiate(&cod, ctx.eval(a)))
                }
                other => Err(TypeError::new(
                    TypeErrorKind::NotAFunction {
                        got: reify_type(size, &other),
                    },
                    size,
                )),
            },
            Term::Brec(m, a0, a1) => {
                self.motive_level(ctx, m)?;
                let motive = ctx.eval(m);
                self.check(ctx, a0, &v_app(&motive, &Value::Zero))?;
                self.check(ctx, a1, &v_app(&motive, &Value::One))?;
                Ok(Value::Pi(
                    Arc::new(Value::Bool),
                    motive_closure(ctx.env(), m),
                ))
            }
        }
    }

    /// The `n` for which `m : (x : N2) -> U<n>`.
    fn motive_level(&self, ctx: &CheckContext, m: &Term) -> Result<Level, TypeError> {
        let size = ctx.size();
        let ty = self.infer(ctx, m)?;
        let shape_error = |ty: &Value| {
            TypeError::new(
                TypeErrorKind::MotiveShape {
                    got: reify_type(size, ty),
                },
                size,
            )
        };
        match &ty {
            Value::Pi(dom, cod) if convertible_types(size, dom, &Value::Bool) => {
                match instantiate(cod, fresh_var(Value::Bool, size)) {
                    Value::Univ(n) => Ok(n),
                    _ => Err(shape_error(&ty)),
                }
            }
            _ => Err(shape_error(&ty)),
        }
    }

    /// Check `t` against `expected`.
    pub fn check(&self, ctx: &CheckContext, t: &Term, expected: &Value) -> Result<(), TypeError> {
        let got = self.infer(ctx, t)?;
        if subsumes(ctx.size(), &got, expected) {
            Ok(())
        } else {
            Err(TypeError::new(
                TypeErrorKind::Mismatch {
                    expected: reify_type(ctx.size(), expected),
                    got: reify_type(ctx.size(), &got),
                },
                ctx.size(),
            ))
        }
    }

    /// The least `n` with `a : U<n>`.
    pub fn infer_universe(&self, ctx: &CheckContext, a: &Term) -> Result<Level, TypeError> {
        match self.infer(ctx, a)? {
            Value::Univ(n) => Ok(n),
            other => Err(TypeError::new(
                TypeErrorKind::NotAType {
                    got: reify_type(ctx.size(), &other),
                },
                ctx.size(),
            )),
        }
    }

    /// Check a closed term against a closed type.
    pub fn check_closed(&self, t: &Term, ty: &Term) -> Result<(Value, NormalTerm), TypeError> {
        let ctx = CheckContext::new();
        self.infer_universe(&ctx, ty)?;
        let ty_value = ctx.eval(ty);
        self.check(&ctx, t, &ty_value)?;
        let normal = nf(&[], &ty_value, t);
        Ok((ty_value, normal))
    }

    /// Resolve and check a program in order, inlining each definition into
    /// the declarations after it.
    pub fn check_program(&self, p: &Program) -> Result<Vec<CheckedDecl>, TypeError> {
        let ctx = CheckContext::new();
        let mut resolver = Resolver::new();
        let mut out = Vec::with_capacity(p.decls.len());
        for d in &p.decls {
            let located = |e: TypeError| e.at(&d.name, d.pos);
            let unbound = |e: ScopeError| {
                let pos = e.pos;
                TypeError::from(e).at(&d.name, pos)
            };
            let ty = resolver.resolve(&[], &d.ty).map_err(unbound)?;
            let body = resolver.resolve(&[], &d.body).map_err(unbound)?;
            self.infer_universe(&ctx, &ty).map_err(located)?;
            let ty_value = ctx.eval(&ty);
            self.check(&ctx, &body, &ty_value).map_err(located)?;
            let value = ctx.eval(&body);
            let ty_normal = reify_type(0, &ty_value);
            let term_normal = reify(0, &ty_value, &value);
            resolver.define(d.name.clone(), body.clone());
            out.push(CheckedDecl {
                name: d.name.clone(),
                pos: d.pos,
                term: body,
                ty_value,
                value,
                ty_normal,
                term_normal,
            });
        }
        Ok(out)
    }
}

/// Cumulative subsumption: universes are ordered by level, every other pair
/// of types must be convertible.
pub fn subsumes(size: usize, got: &Value, expected: &Value) -> bool {
    match (got, expected) {
        (Value::Univ(n), Value::Univ(m)) => n <= m,
        _ => convertible_types(size, got, expected),
    }
}

/// [`Checker::infer`] with the default configuration.
pub fn infer(ctx: &CheckContext, t: &Term) -> Result<Value, TypeError> {
    Checker::default().infer(ctx, t)
}

/// [`Checker::check`] with the default configuration.
pub fn check(ctx: &CheckContext, t: &Term, expected: &Value) -> Result<(), TypeError> {
    Checker::default().check(ctx, t, expected)
}

/// [`Checker::infer_universe`] with the default configuration.
pub fn infer_universe(ctx: &CheckContext, a: &Term) -> Result<Level, TypeError> {
    Checker::default().infer_universe(ctx, a)
}

/// [`Checker::check_program`] with the default configuration.
pub fn check_program(p: &Program) -> Result<Vec<CheckedDecl>, TypeError> {
    Checker::default().check_program(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::parse;

    fn not_term() -> Term {
        Term::brec(Term::lam(Term::Bool, Term::Bool), Term::One, Term::Zero)
    }

    #[test]
    fn infer_constants() {
        let ctx = CheckContext::new();
        assert!(matches!(
            infer(&ctx, &Term::Univ(0)).unwrap(),
            Value::Univ(1)
        ));
        assert!(matches!(infer(&ctx, &Term::Bool).unwrap(), Value::Univ(0)));
        assert!(matches!(infer(&ctx, &Term::One).unwrap(), Value::Bool));
    }

    #[test]
    fn infer_brec() {
        let ty = infer(&CheckContext::new(), &not_term()).unwrap();
        assert_eq!(reify_type(0, &ty), Term::pi(Term::Bool, Term::Bool));
    }

    #[test]
    fn check_examples() {
        let ctx = CheckContext::new();
        assert!(check(&ctx, &Term::Bool, &Value::Univ(3)).is_ok());
        assert!(check(&ctx, &Term::Zero, &Value::Bool).is_ok());
        let b2b = ctx.eval(&Term::pi(Term::Bool, Term::Bool));
        let err = check(&ctx, &Term::Zero, &b2b).unwrap_err();
        assert!(matches!(err.kind, TypeErrorKind::Mismatch { .. }));
    }

    #[test]
    fn infer_universe_examples() {
        let ctx = CheckContext::new();
        assert_eq!(infer_universe(&ctx, &Term::Bool).unwrap(), 0);
        assert_eq!(infer_universe(&ctx, &Term::Univ(2)).unwrap(), 3);
        let err = infer_universe(&ctx, &Term::Zero).unwrap_err();
        assert!(matches!(err.kind, TypeErrorKind::NotAType { .. }));
    }

    #[test]
    fn application_of_non_function() {
        let err = infer(&CheckContext::new(), &Term::app(Term::Zero, Term::One)).unwrap_err();
        assert!(matches!(err.kind, TypeErrorKind::NotAFunction { .. }));
    }

    #[test]
    fn unbound_index() {
        let err = infer(&CheckContext::new(), &Term::Var(0)).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::UnboundVariable { index: 0 });
    }

    #[test]
    fn universe_ceiling() {
        let checker = Checker::new(3);
        assert!(checker.infer(&CheckContext::new(), &Term::Univ(2)).is_ok());
        let err = checker
            .infer(&CheckContext::new(), &Term::Univ(3))
            .unwrap_err();
        assert_eq!(
            err.kind,
            TypeErrorKind::UniverseCeiling { level: 3, max: 3 }
        );
    }

    #[test]
    fn motive_must_land_in_a_universe() {
        let bad = Term::brec(Term::lam(Term::Bool, Term::Zero), Term::Zero, Term::One);
        let err = infer(&CheckContext::new(), &bad).unwrap_err();
        assert!(matches!(err.kind, TypeErrorKind::MotiveShape { .. }));
        let bad = Term::brec(Term::lam(Term::Univ(0), Term::Bool), Term::Zero, Term::One);
        assert!(matches!(
            infer(&CheckContext::new(), &bad).unwrap_err().kind,
            TypeErrorKind::MotiveShape { .. }
        ));
    }

    #[test]
    fn dependent_motive() {
        // brec (fun (x : N2) => brec (fun (_ : N2) => U0) N2 (N2 -> N2) x) 0 (fun (y : N2) => y)
        let family = Term::app(
            Term::brec(
                Term::lam(Term::Bool, Term::Univ(0)),
                Term::Bool,
                Term::pi(Term::Bool, Term::Bool),
            ),
            Term::Var(0),
        );
        let t = Term::brec(
            Term::lam(Term::Bool, family),
            Term::Zero,
            Term::lam(Term::Bool, Term::Var(0)),
        );
        let ctx = CheckContext::new();
        let ty = infer(&ctx, &t).unwrap();
        let one_case = Term::app(Term::app(t.clone(), Term::One), Term::Zero);
        assert!(check(&ctx, &one_case, &Value::Bool).is_ok());
        assert!(matches!(ty, Value::Pi(..)));
        // swapped cases do not check
        let swapped = Term::brec(
            Term::lam(
                Term::Bool,
                Term::app(
                    Term::brec(
                        Term::lam(Term::Bool, Term::Univ(0)),
                        Term::Bool,
                        Term::pi(Term::Bool, Term::Bool),
                    ),
                    Term::Var(0),
                ),
            ),
            Term::lam(Term::Bool, Term::Var(0)),
            Term::Zero,
        );
        assert!(infer(&ctx, &swapped).is_err());
    }

    #[test]
    fn non_lambda_motive() {
        // P : N2 -> U0, a : P 0, b : P 1 |- brec P a b : (x : N2) -> P x
        let mut ctx = CheckContext::new();
        ctx = ctx.extend(ctx.eval(&Term::pi(Term::Bool, Term::Univ(0))));
        ctx = ctx.extend(ctx.eval(&Term::app(Term::Var(0), Term::Zero)));
        ctx = ctx.extend(ctx.eval(&Term::app(Term::Var(1), Term::One)));
        let t = Term::brec(Term::Var(2), Term::Var(1), Term::Var(0));
        let ty = infer(&ctx, &t).unwrap();
        let expected = Term::pi(Term::Bool, Term::app(Term::Var(3), Term::Var(0)));
        assert_eq!(reify_type(3, &ty), expected);
        // the cases cannot be swapped
        let swapped = Term::brec(Term::Var(2), Term::Var(0), Term::Var(1));
        assert!(matches!(
            infer(&ctx, &swapped).unwrap_err().kind,
            TypeErrorKind::Mismatch { .. }
        ));
    }

    #[test]
    fn program_examples() {
        let p = parse("def b : N2 = 0").unwrap();
        let out = check_program(&p).unwrap();
        assert_eq!(out[0].name, "b");
        assert_eq!(out[0].ty_normal, Term::Bool);
        assert_eq!(out[0].term_normal, Term::Zero);

        let p = parse(
            "def not : N2 -> N2 = brec (fun (_ : N2) => N2) 1 0\n\
             def x : N2 = not 0",
        )
        .unwrap();
        let out = check_program(&p).unwrap();
        assert_eq!(out[1].term_normal, Term::One);

        let p = parse("def a : N2 = 0\ndef b : N2 = fun (x : N2) => x").unwrap();
        let err = check_program(&p).unwrap_err();
        assert_eq!(err.location.as_ref().unwrap().decl, "b");
    }

    #[test]
    fn scope_errors_surface_as_type_errors() {
        let p = parse("def a : N2 = nope").unwrap();
        let err = check_program(&p).unwrap_err();
        assert!(matches!(err.kind, TypeErrorKind::Scope(_)));
        assert!(err.to_string().contains("nope"));
    }
}
