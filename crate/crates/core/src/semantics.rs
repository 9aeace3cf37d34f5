//! Normalization by evaluation.
//!
//! Terms evaluate into [`Value`]s, where β and `brec` redexes are contracted
//! by the host language. Type-directed readback ([`reify`] / [`reify_type`])
//! turns values back into η-long β-normal terms, and [`reflect`] injects
//! stuck computations ([`Neutral`]) at a given type. Conversion is decided by
//! comparing normal forms.
//!
//! Fresh variables are de Bruijn levels; readback converts level `l` to the
//! index `size - l - 1`.

use std::fmt;
use std::sync::Arc;

use crate::syntax::{Level, Term};

/// Semantic values. Types and elements live in the same domain.
#[derive(Clone)]
pub enum Value {
    Univ(Level),
    Bool,
    Zero,
    One,
    Pi(Arc<Value>, Closure),
    Lam(Closure),
    /// `brec` awaiting its scrutinee. `motive` is the type family over `N2`.
    Brec {
        motive: Closure,
        case0: Arc<Value>,
        case1: Arc<Value>,
    },
    /// A stuck computation together with its type.
    Neutral(Arc<Value>, Arc<Neutral>),
}

/// Computations blocked on a variable.
#[derive(Clone)]
pub enum Neutral {
    Var(usize),
    App {
        fun: Arc<Neutral>,
        arg: Value,
        arg_ty: Value,
    },
    Brec {
        motive: Closure,
        case0: Value,
        case1: Value,
        scrutinee: Arc<Neutral>,
    },
}

/// Persistent environment, newest binding at the head.
#[derive(Clone, Default)]
pub struct Env {
    head: Option<Arc<EnvNode>>,
    len: usize,
}

struct EnvNode {
    value: Value,
    rest: Option<Arc<EnvNode>>,
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&self, value: Value) -> Env {
        Env {
            head: Some(Arc::new(EnvNode {
                value,
                rest: self.head.clone(),
            })),
            len: self.len + 1,
        }
    }

    /// Value of de Bruijn index `k`.
    pub fn lookup(&self, k: usize) -> &Value {
        let mut node = self.head.as_deref();
        for _ in 0..k {
            node = node.and_then(|n| n.rest.as_deref());
        }
        match node {
            Some(n) => &n.value,
            None => panic!("unbound index {k} in an environment of length {}", self.len),
        }
    }

    /// Values oldest first.
    pub fn to_vec(&self) -> Vec<Value> {
        let mut out = Vec::with_capacity(self.len);
        let mut node = self.head.as_deref();
        while let Some(n) = node {
            out.push(n.value.clone());
            node = n.rest.as_deref();
        }
        out.reverse();
        out
    }
}

impl FromIterator<Value> for Env {
    fn from_iter<I: IntoIterator<Item = Value>>(iter: I) -> Self {
        iter.into_iter().fold(Env::new(), |env, v| env.push(v))
    }
}

/// A term suspended in an environment, awaiting one more binding.
#[derive(Clone)]
pub struct Closure {
    pub env: Env,
    pub body: Arc<Term>,
}

impl Closure {
    pub fn new(env: Env, body: Arc<Term>) -> Closure {
        Closure { env, body }
    }

    /// A closure ignoring its argument.
    pub fn constant(value: Value) -> Closure {
        Closure {
            env: Env::new().push(value),
            body: Arc::new(Term::Var(1)),
        }
    }
}

/// Term produced by readback: η-long and free of β and `brec` redexes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NormalTerm(Term);

impl NormalTerm {
    pub fn as_term(&self) -> &Term {
        &self.0
    }

    pub fn into_term(self) -> Term {
        self.0
    }
}

impl fmt::Debug for NormalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<NormalTerm> for Term {
    fn from(n: NormalTerm) -> Term {
        n.0
    }
}

impl PartialEq<Term> for NormalTerm {
    fn eq(&self, other: &Term) -> bool {
        &self.0 == other
    }
}

pub fn eval(env: &Env, t: &Term) -> Value {
    match t {
        Term::Var(k) => env.lookup(*k).clone(),
        Term::Lam(_, body) => Value::Lam(Closure::new(env.clone(), body.clone())),
        Term::Pi(a, b) => Value::Pi(Arc::new(eval(env, a)), Closure::new(env.clone(), b.clone())),
        Term::App(f, a) => v_app(&eval(env, f), &eval(env, a)),
        Term::Univ(n) => Value::Univ(*n),
        Term::Bool => Value::Bool,
        Term::Zero => Value::Zero,
        Term::One => Value::One,
        Term::Brec(m, a0, a1) => Value::Brec {
            motive: motive_closure(env, m),
            case0: Arc::new(eval(env, a0)),
            case1: Arc::new(eval(env, a1)),
        },
    }
}

/// The family `x ↦ motive x` as a closure. A literal `fun` motive is used
/// directly; any other motive is applied through a two-variable body.
pub fn motive_closure(env: &Env, motive: &Term) -> Closure {
    match motive {
        Term::Lam(_, body) => Closure::new(env.clone(), body.clone()),
        _ => Closure::new(
            Env::new().push(eval(env, motive)),
            Arc::new(Term::app(Term::Var(1), Term::Var(0))),
        ),
    }
}

pub fn instantiate(c: &Closure, v: Value) -> Value {
    eval(&c.env.push(v), &c.body)
}

/// Semantic application.
pub fn v_app(f: &Value, a: &Value) -> Value {
    match f {
        Value::Lam(body) => instantiate(body, a.clone()),
        Value::Brec {
            motive,
            case0,
            case1,
        } => match a {
            Value::Zero => (**case0).clone(),
            Value::One => (**case1).clone(),
            Value::Neutral(_, scrutinee) => reflect(
                instantiate(motive, a.clone()),
                Neutral::Brec {
                    motive: motive.clone(),
                    case0: (**case0).clone(),
                    case1: (**case1).clone(),
                    scrutinee: scrutinee.clone(),
                },
            ),
            other => panic!("brec applied to a non-boolean value: {other:?}"),
        },
        Value::Neutral(ty, ne) => match &**ty {
            Value::Pi(dom, cod) => reflect(
                instantiate(cod, a.clone()),
                Neutral::App {
                    fun: ne.clone(),
                    arg: a.clone(),
                    arg_ty: (**dom).clone(),
                },
            ),
            other => panic!("neutral of non-function type {other:?} applied"),
        },
        other => panic!("applied a non-function value: {other:?}"),
    }
}

/// Inject a neutral at type `ty`. Application of the result at a Π type goes
/// through [`v_app`], which re-reflects at the codomain.
pub fn reflect(ty: Value, n: Neutral) -> Value {
    Value::Neutral(Arc::new(ty), Arc::new(n))
}

/// The fresh variable at level `size`, of type `ty`.
pub fn fresh_var(ty: Value, size: usize) -> Value {
    reflect(ty, Neutral::Var(size))
}

/// Type-directed readback of `v : ty` in a context of length `size`.
pub fn reify(size: usize, ty: &Value, v: &Value) -> NormalTerm {
    NormalTerm(reify_term(size, ty, v))
}

fn reify_term(size: usize, ty: &Value, v: &Value) -> Term {
    match ty {
        Value::Pi(dom, cod) => {
            let x = fresh_var((**dom).clone(), size);
            let body_ty = instantiate(cod, x.clone());
            let body = reify_term(size + 1, &body_ty, &v_app(v, &x));
            Term::lam(reify_type_term(size, dom), body)
        }
        Value::Bool => match v {
            Value::Zero => Term::Zero,
            Value::One => Term::One,
            Value::Neutral(_, ne) => readback_neutral(size, ne),
            other => panic!("reify: {other:?} is not a boolean"),
        },
        Value::Univ(_) => reify_type_term(size, v),
        Value::Neutral(..) => match v {
            Value::Neutral(_, ne) => readback_neutral(size, ne),
            other => panic!("reify: {other:?} at a neutral type"),
        },
        other => panic!("reify: {other:?} is not a type"),
    }
}

/// Readback of a type value.
pub fn reify_type(size: usize, ty: &Value) -> NormalTerm {
    NormalTerm(reify_type_term(size, ty))
}

fn reify_type_term(size: usize, ty: &Value) -> Term {
    match ty {
        Value::Univ(n) => Term::Univ(*n),
        Value::Bool => Term::Bool,
        Value::Pi(dom, cod) => {
            let x = fresh_var((**dom).clone(), size);
            Term::pi(
                reify_type_term(size, dom),
                reify_type_term(size + 1, &instantiate(cod, x)),
            )
        }
        Value::Neutral(_, ne) => readback_neutral(size, ne),
        other => panic!("reify_type: {other:?} is not a type"),
    }
}

pub fn readback_neutral(size: usize, n: &Neutral) -> Term {
    match n {
        Neutral::Var(level) => {
            assert!(
                *level < size,
                "level {level} escapes a context of length {size}"
            );
            Term::Var(size - level - 1)
        }
        Neutral::App { fun, arg, arg_ty } => {
            Term::app(readback_neutral(size, fun), reify_term(size, arg_ty, arg))
        }
        Neutral::Brec {
            motive,
            case0,
            case1,
            scrutinee,
        } => {
            let x = fresh_var(Value::Bool, size);
            let family = reify_type_term(size + 1, &instantiate(motive, x));
            let case0 = reify_term(size, &instantiate(motive, Value::Zero), case0);
            let case1 = reify_term(size, &instantiate(motive, Value::One), case1);
            Term::app(
                Term::brec(Term::lam(Term::Bool, family), case0, case1),
                readback_neutral(size, scrutinee),
            )
        }
    }
}

/// Environment binding each variable of `ctx_types` (oldest first) to itself.
pub fn fresh_env(ctx_types: &[Value]) -> Env {
    ctx_types
        .iter()
        .enumerate()
        .map(|(level, ty)| fresh_var(ty.clone(), level))
        .collect()
}

/// Normal form of `t : ty` in the context `ctx_types`.
pub fn nf(ctx_types: &[Value], ty: &Value, t: &Term) -> NormalTerm {
    let env = fresh_env(ctx_types);
    reify(ctx_types.len(), ty, &eval(&env, t))
}

/// Judgmental equality of `v` and `w` at `ty`.
pub fn convertible(size: usize, ty: &Value, v: &Value, w: &Value) -> bool {
    reify(size, ty, v) == reify(size, ty, w)
}

/// Judgmental equality of two types, compared at whatever universe holds them.
pub fn convertible_types(size: usize, a: &Value, b: &Value) -> bool {
    reify_type(size, a) == reify_type(size, b)
}

/// Syntactic classes of readback output.
pub mod grammar {
    use crate::syntax::Term;

    pub fn is_var(t: &Term) -> bool {
        matches!(t, Term::Var(_))
    }

    /// Neutral: a variable, an application of a neutral to a normal, or a
    /// `brec` with normal motive and cases applied to a neutral scrutinee.
    pub fn is_neutral(t: &Term) -> bool {
        match t {
            Term::Var(_) => true,
            Term::App(f, a) => match &**f {
                Term::Brec(m, a0, a1) => {
                    is_normal_motive(m) && is_normal(a0) && is_normal(a1) && is_neutral(a)
                }
                _ => is_neutral(f) && is_normal(a),
            },
            _ => false,
        }
    }

    /// Normal: neutrals, canonical forms, and binders over normals. A bare
    /// `brec` is never normal since it is η-expanded.
    pub fn is_normal(t: &Term) -> bool {
        match t {
            Term::Univ(_) | Term::Bool | Term::Zero | Term::One => true,
            Term::Lam(a, b) | Term::Pi(a, b) => is_normal(a) && is_normal(b),
            Term::Brec(..) => false,
            Term::Var(_) | Term::App(..) => is_neutral(t),
        }
    }

    fn is_normal_motive(m: &Term) -> bool {
        matches!(m, Term::Lam(a, b) if **a == Term::Bool && is_normal(b))
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Univ(n) => write!(f, "VUniv({n})"),
            Value::Bool => write!(f, "VBool"),
            Value::Zero => write!(f, "VZero"),
            Value::One => write!(f, "VOne"),
            Value::Pi(a, c) => write!(f, "VPi({a:?}, {c:?})"),
            Value::Lam(c) => write!(f, "VLam({c:?})"),
            Value::Brec {
                motive,
                case0,
                case1,
            } => {
                write!(f, "VBrec({motive:?}, {case0:?}, {case1:?})")
            }
            Value::Neutral(ty, ne) => write!(f, "VNeutral({ty:?}, {ne:?})"),
        }
    }
}

impl fmt::Debug for Neutral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Neutral::Var(l) => write!(f, "NVar({l})"),
            Neutral::App { fun, arg, .. } => write!(f, "NApp({fun:?}, {arg:?})"),
            Neutral::Brec { scrutinee, .. } => write!(f, "NBrec(.., {scrutinee:?})"),
        }
    }
}

impl fmt::Debug for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<closure/{} {:?}>", self.env.len(), self.body)
    }
}
