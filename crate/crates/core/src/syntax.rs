//! De Bruijn core syntax and explicit substitutions.
//!
//! Terms and types share one grammar. Variables are de Bruijn indices
//! counting binders outward from the occurrence. A [`Subst`] is a parallel
//! substitution `Δ → Γ`: one term per variable of `Γ`, oldest variable first,
//! each term scoped in `Δ`.

use std::fmt;
use std::sync::Arc;

/// Universe level.
pub type Level = u32;

/// Core term. Binder bodies (`Lam`, `Pi` codomain) are scoped in one extra
/// variable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Lam(Arc<Term>, Arc<Term>),
    Pi(Arc<Term>, Arc<Term>),
    App(Arc<Term>, Arc<Term>),
    Univ(Level),
    Bool,
    Zero,
    One,
    Brec(Arc<Term>, Arc<Term>, Arc<Term>),
}

impl Term {
    pub fn lam(annotation: Term, body: Term) -> Term {
        Term::Lam(Arc::new(annotation), Arc::new(body))
    }

    pub fn pi(domain: Term, codomain: Term) -> Term {
        Term::Pi(Arc::new(domain), Arc::new(codomain))
    }

    /// Non-dependent function type. `codomain` is scoped in the same context
    /// as `domain` and gets weakened under the binder.
    pub fn arrow(domain: Term, codomain: Term) -> Term {
        Term::pi(domain, codomain.shift(1))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Arc::new(fun), Arc::new(arg))
    }

    /// Left-nested application spine.
    pub fn apps(fun: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(fun, Term::app)
    }

    pub fn brec(motive: Term, case0: Term, case1: Term) -> Term {
        Term::Brec(Arc::new(motive), Arc::new(case0), Arc::new(case1))
    }

    /// Number of constructor nodes, variables included.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Univ(_) | Term::Bool | Term::Zero | Term::One => 1,
            Term::Lam(a, b) | Term::Pi(a, b) | Term::App(a, b) => 1 + a.size() + b.size(),
            Term::Brec(m, a, b) => 1 + m.size() + a.size() + b.size(),
        }
    }

    /// True when every variable is bound within `n` enclosing variables.
    pub fn is_scoped_in(&self, n: usize) -> bool {
        match self {
            Term::Var(k) => *k < n,
            Term::Univ(_) | Term::Bool | Term::Zero | Term::One => true,
            Term::Lam(a, b) | Term::Pi(a, b) => a.is_scoped_in(n) && b.is_scoped_in(n + 1),
            Term::App(f, a) => f.is_scoped_in(n) && a.is_scoped_in(n),
            Term::Brec(m, a, b) => m.is_scoped_in(n) && a.is_scoped_in(n) && b.is_scoped_in(n),
        }
    }

    /// Largest universe level mentioned anywhere in the term.
    pub fn max_level(&self) -> Option<Level> {
        match self {
            Term::Univ(n) => Some(*n),
            Term::Var(_) | Term::Bool | Term::Zero | Term::One => None,
            Term::Lam(a, b) | Term::Pi(a, b) | Term::App(a, b) => a.max_level().max(b.max_level()),
            Term::Brec(m, a, b) => m.max_level().max(a.max_level()).max(b.max_level()),
        }
    }

    /// Weaken by `by` fresh outer variables.
    pub fn shift(&self, by: usize) -> Term {
        self.shift_above(0, by)
    }

    fn shift_above(&self, cutoff: usize, by: usize) -> Term {
        if by == 0 {
            return self.clone();
        }
        match self {
            Term::Var(k) if *k >= cutoff => Term::Var(k + by),
            Term::Var(_) | Term::Univ(_) | Term::Bool | Term::Zero | Term::One => self.clone(),
            Term::Lam(a, b) => Term::lam(a.shift_above(cutoff, by), b.shift_above(cutoff + 1, by)),
            Term::Pi(a, b) => Term::pi(a.shift_above(cutoff, by), b.shift_above(cutoff + 1, by)),
            Term::App(f, a) => Term::app(f.shift_above(cutoff, by), a.shift_above(cutoff, by)),
            Term::Brec(m, a, b) => Term::brec(
                m.shift_above(cutoff, by),
                a.shift_above(cutoff, by),
                b.shift_above(cutoff, by),
            ),
        }
    }

    /// `self[s]`.
    pub fn subst(&self, s: &Subst) -> Term {
        apply_sub(self, s)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(k) => write!(f, "#{k}"),
            Term::Lam(a, b) => write!(f, "Lam({a:?}, {b:?})"),
            Term::Pi(a, b) => write!(f, "Pi({a:?}, {b:?})"),
            Term::App(a, b) => write!(f, "App({a:?}, {b:?})"),
            Term::Univ(n) => write!(f, "U{n}"),
            Term::Bool => write!(f, "N2"),
            Term::Zero => write!(f, "0"),
            Term::One => write!(f, "1"),
            Term::Brec(m, a, b) => write!(f, "Brec({m:?}, {a:?}, {b:?})"),
        }
    }
}

/// Ordered list of types, entry `i` scoped in the entries before it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Telescope {
    pub types: Vec<Term>,
}

impl Telescope {
    pub fn new(types: Vec<Term>) -> Self {
        Telescope { types }
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }
}

/// Parallel substitution. `terms[i]` is the image of the variable at de Bruijn
/// level `i` of the target context, so the newest variable (`Var(0)`) maps to
/// the last entry.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Subst {
    pub terms: Vec<Term>,
}

impl Subst {
    pub fn new(terms: Vec<Term>) -> Self {
        Subst { terms }
    }

    /// Length of the target context.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Image of de Bruijn index `k`.
    pub fn lookup(&self, k: usize) -> &Term {
        let n = self.terms.len();
        assert!(
            k < n,
            "substitution scope violation: index {k} in a substitution of length {n}"
        );
        &self.terms[n - 1 - k]
    }

    /// Drop the image of the newest variable.
    pub fn tail(&self) -> Subst {
        let mut terms = self.terms.clone();
        terms.pop();
        Subst { terms }
    }
}

/// Apply `s` to `t`. Capture is avoided by weakening substituted terms as
/// they cross binders, which is the same as pushing `s` through `s⁺`.
pub fn apply_sub(t: &Term, s: &Subst) -> Term {
    apply_under(t, s, 0)
}

fn apply_under(t: &Term, s: &Subst, depth: usize) -> Term {
    match t {
        Term::Var(k) if *k < depth => t.clone(),
        Term::Var(k) => s.lookup(k - depth).shift(depth),
        Term::Univ(_) | Term::Bool | Term::Zero | Term::One => t.clone(),
        Term::Lam(a, b) => Term::lam(apply_under(a, s, depth), apply_under(b, s, depth + 1)),
        Term::Pi(a, b) => Term::pi(apply_under(a, s, depth), apply_under(b, s, depth + 1)),
        Term::App(f, a) => Term::app(apply_under(f, s, depth), apply_under(a, s, depth)),
        Term::Brec(m, a, b) => Term::brec(
            apply_under(m, s, depth),
            apply_under(a, s, depth),
            apply_under(b, s, depth),
        ),
    }
}

/// The identity substitution on a context of length `n`.
pub fn id_sub(n: usize) -> Subst {
    Subst {
        terms: (0..n).rev().map(Term::Var).collect(),
    }
}

/// Composition `s ∘ d`: first `s`, then `d`.
pub fn comp_sub(s: &Subst, d: &Subst) -> Subst {
    Subst {
        terms: s.terms.iter().map(|t| apply_sub(t, d)).collect(),
    }
}

/// The projection `p : Γ.A → Γ` for `|Γ| = n`.
pub fn weaken_sub(n: usize) -> Subst {
    Subst {
        terms: (1..=n).rev().map(Term::Var).collect(),
    }
}

/// Extension `(s, a)`.
pub fn ext_sub(s: &Subst, a: Term) -> Subst {
    let mut terms = Vec::with_capacity(s.terms.len() + 1);
    terms.extend(s.terms.iter().cloned());
    terms.push(a);
    Subst { terms }
}

/// `⟨a⟩ = (1, a)` for `a` scoped in `n` variables.
pub fn single_sub(a: Term, n: usize) -> Subst {
    ext_sub(&id_sub(n), a)
}

/// `s⁺ = (s ∘ p, q)` where `m` is the length of the source context of `s`.
pub fn lift_sub(s: &Subst, m: usize) -> Subst {
    ext_sub(&comp_sub(s, &weaken_sub(m)), Term::Var(0))
}

/// Syntactic equality. De Bruijn indices make it alpha-equivalence.
pub fn alpha_eq(t: &Term, u: &Term) -> bool {
    t == u
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn var_zero_takes_last_entry() {
        assert_eq!(
            apply_sub(&Term::Var(0), &Subst::new(vec![Term::Zero])),
            Term::Zero
        );
    }

    #[test]
    fn substitution_under_binder() {
        let t = Term::lam(Term::Bool, Term::Var(1));
        let got = apply_sub(&t, &Subst::new(vec![Term::One]));
        assert_eq!(got, Term::lam(Term::Bool, Term::One));
    }

    #[test]
    fn substituted_terms_are_weakened_under_binders() {
        // (fun (y : N2) => x)[x := z] where z is the outer variable 0
        let t = Term::lam(Term::Bool, Term::Var(1));
        let s = Subst::new(vec![Term::Var(0)]);
        assert_eq!(apply_sub(&t, &s), Term::lam(Term::Bool, Term::Var(1)));
    }

    #[test]
    fn identity_and_weakening_shapes() {
        assert!(id_sub(0).is_empty());
        assert_eq!(id_sub(2).terms, vec![Term::Var(1), Term::Var(0)]);
        assert_eq!(weaken_sub(1).terms, vec![Term::Var(1)]);
        assert_eq!(apply_sub(&Term::Var(0), &weaken_sub(2)), Term::Var(1));
        assert_eq!(ext_sub(&id_sub(0), Term::Zero).terms, vec![Term::Zero]);
        assert_eq!(single_sub(Term::Zero, 0).terms, vec![Term::Zero]);
    }

    #[test]
    fn alpha_eq_is_structural() {
        assert!(alpha_eq(
            &Term::lam(Term::Bool, Term::Var(0)),
            &Term::lam(Term::Bool, Term::Var(0))
        ));
        assert!(!alpha_eq(&Term::Zero, &Term::One));
    }

    #[test]
    #[should_panic(expected = "scope violation")]
    fn out_of_scope_variable_panics() {
        apply_sub(&Term::Var(3), &id_sub(2));
    }

    #[test]
    fn arrow_weakens_codomain() {
        assert_eq!(
            Term::arrow(Term::Var(0), Term::Var(0)),
            Term::pi(Term::Var(0), Term::Var(1))
        );
    }

    #[test]
    fn size_counts_every_node() {
        let t = Term::app(
            Term::brec(Term::lam(Term::Bool, Term::Bool), Term::One, Term::Zero),
            Term::Zero,
        );
        assert_eq!(t.size(), 8);
    }
}
