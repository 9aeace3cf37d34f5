//! Reference normalizer built on named variables.
//!
//! Repeatedly contracts the leftmost-outermost β or `brec` redex using
//! capture-avoiding substitution, then η-expands the β-normal result against
//! its type. It shares nothing with the kernel's evaluator beyond the `Term`
//! type used at the boundary.

use std::cell::Cell;
use std::collections::HashSet;

use tt_core::syntax::Term;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Named {
    Var(String),
    Lam(String, Box<Named>, Box<Named>),
    Pi(String, Box<Named>, Box<Named>),
    App(Box<Named>, Box<Named>),
    Univ(u32),
    Bool,
    Zero,
    One,
    Brec(Box<Named>, Box<Named>, Box<Named>),
}

use Named as N;

fn app(f: Named, a: Named) -> Named {
    N::App(Box::new(f), Box::new(a))
}

fn var(x: &str) -> Named {
    N::Var(x.to_string())
}

#[derive(Default)]
pub struct Oracle {
    counter: Cell<usize>,
}

impl Oracle {
    pub fn new() -> Oracle {
        Oracle::default()
    }

    fn fresh(&self) -> String {
        let n = self.counter.get();
        self.counter.set(n + 1);
        format!("v{n}")
    }

    /// Convert from de Bruijn form. `scope` holds names outermost first.
    pub fn from_core(&self, t: &Term, scope: &mut Vec<String>) -> Named {
        match t {
            Term::Var(k) => N::Var(scope[scope.len() - 1 - k].clone()),
            Term::Lam(a, b) | Term::Pi(a, b) => {
                let a = self.from_core(a, scope);
                let x = self.fresh();
                scope.push(x.clone());
                let b = self.from_core(b, scope);
                scope.pop();
                if matches!(t, Term::Lam(..)) {
                    N::Lam(x, Box::new(a), Box::new(b))
                } else {
                    N::Pi(x, Box::new(a), Box::new(b))
                }
            }
            Term::App(f, a) => app(self.from_core(f, scope), self.from_core(a, scope)),
            Term::Univ(n) => N::Univ(*n),
            Term::Bool => N::Bool,
            Term::Zero => N::Zero,
            Term::One => N::One,
            Term::Brec(m, a0, a1) => N::Brec(
                Box::new(self.from_core(m, scope)),
                Box::new(self.from_core(a0, scope)),
                Box::new(self.from_core(a1, scope)),
            ),
        }
    }

    fn free_vars(t: &Named, bound: &mut Vec<String>, out: &mut HashSet<String>) {
        match t {
            N::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            N::Lam(x, a, b) | N::Pi(x, a, b) => {
                Self::free_vars(a, bound, out);
                bound.push(x.clone());
                Self::free_vars(b, bound, out);
                bound.pop();
            }
            N::App(f, a) => {
                Self::free_vars(f, bound, out);
                Self::free_vars(a, bound, out);
            }
            N::Brec(m, a0, a1) => {
                Self::free_vars(m, bound, out);
                Self::free_vars(a0, bound, out);
                Self::free_vars(a1, bound, out);
            }
            N::Univ(_) | N::Bool | N::Zero | N::One => {}
        }
    }

    /// `t[x := s]`, renaming binders that would capture free variables of `s`.
    pub fn subst(&self, t: &Named, x: &str, s: &Named) -> Named {
        let mut fv = HashSet::new();
        Self::free_vars(s, &mut Vec::new(), &mut fv);
        self.subst_fv(t, x, s, &fv)
    }

    fn subst_fv(&self, t: &Named, x: &str, s: &Named, fv: &HashSet<String>) -> Named {
        match t {
            N::Var(y) if y == x => s.clone(),
            N::Var(_) | N::Univ(_) | N::Bool | N::Zero | N::One => t.clone(),
            N::Lam(y, a, b) | N::Pi(y, a, b) => {
                let a = self.subst_fv(a, x, s, fv);
                let (y, b) = if y == x {
                    (y.clone(), (**b).clone())
                } else if fv.contains(y) {
                    let z = self.fresh();
                    let renamed = self.subst(b, y, &var(&z));
                    let b = self.subst_fv(&renamed, x, s, fv);
                    (z, b)
                } else {
                    (y.clone(), self.subst_fv(b, x, s, fv))
                };
                if matches!(t, N::Lam(..)) {
                    N::Lam(y, Box::new(a), Box::new(b))
                } else {
                    N::Pi(y, Box::new(a), Box::new(b))
                }
            }
            N::App(f, a) => app(self.subst_fv(f, x, s, fv), self.subst_fv(a, x, s, fv)),
            N::Brec(m, a0, a1) => N::Brec(
                Box::new(self.subst_fv(m, x, s, fv)),
                Box::new(self.subst_fv(a0, x, s, fv)),
                Box::new(self.subst_fv(a1, x, s, fv)),
            ),
        }
    }

    /// Contract head redexes until none is left.
    pub fn whnf(&self, t: &Named) -> Named {
        let mut t = t.clone();
        loop {
            let N::App(f, a) = &t else { return t };
            let f = self.whnf(f);
            match f {
                N::Lam(x, _, body) => t = self.subst(&body, &x, a),
                N::Brec(m, a0, a1) => match self.whnf(a) {
                    N::Zero => t = *a0,
                    N::One => t = *a1,
                    stuck => return app(N::Brec(m, a0, a1), stuck),
                },
                head => return app(head, (**a).clone()),
            }
        }
    }

    /// β/`brec` normal form (no η).
    pub fn normalize(&self, t: &Named) -> Named {
        match self.whnf(t) {
            N::Lam(x, a, b) => N::Lam(
                x,
                Box::new(self.normalize(&a)),
                Box::new(self.normalize(&b)),
            ),
            N::Pi(x, a, b) => N::Pi(
                x,
                Box::new(self.normalize(&a)),
                Box::new(self.normalize(&b)),
            ),
            N::App(f, a) => app(self.normalize(&f), self.normalize(&a)),
            N::Brec(m, a0, a1) => N::Brec(
                Box::new(self.normalize(&m)),
                Box::new(self.normalize(&a0)),
                Box::new(self.normalize(&a1)),
            ),
            leaf => leaf,
        }
    }

    fn lookup<'a>(ctx: &'a [(String, Named)], x: &str) -> &'a Named {
        &ctx.iter()
            .rev()
            .find(|(y, _)| y == x)
            .unwrap_or_else(|| panic!("oracle: unbound {x}"))
            .1
    }

    /// η-expand a β-normal `t` against the β-normal type `ty`.
    pub fn eta(&self, ctx: &mut Vec<(String, Named)>, t: &Named, ty: &Named) -> Named {
        match ty {
            N::Pi(x, dom, cod) => {
                let (y, ann, body) = match t {
                    N::Lam(y, ann, body) => (y.clone(), (**ann).clone(), (**body).clone()),
                    _ => {
                        let z = self.fresh();
                        (z.clone(), (**dom).clone(), app(t.clone(), var(&z)))
                    }
                };
                let ann = self.eta_type(ctx, &ann);
                let body_ty = self.normalize(&self.subst(cod, x, &var(&y)));
                ctx.push((y.clone(), (**dom).clone()));
                let body = self.eta(ctx, &body, &body_ty);
                ctx.pop();
                N::Lam(y, Box::new(ann), Box::new(body))
            }
            N::Univ(_) => self.eta_type(ctx, t),
            N::Bool if matches!(t, N::Zero | N::One) => t.clone(),
            _ => self.eta_neutral(ctx, t).0,
        }
    }

    pub fn eta_type(&self, ctx: &mut Vec<(String, Named)>, t: &Named) -> Named {
        match t {
            N::Pi(x, a, b) => {
                let a_eta = self.eta_type(ctx, a);
                ctx.push((x.clone(), (**a).clone()));
                let b = self.eta_type(ctx, b);
                ctx.pop();
                N::Pi(x.clone(), Box::new(a_eta), Box::new(b))
            }
            N::Univ(_) | N::Bool => t.clone(),
            _ => self.eta_neutral(ctx, t).0,
        }
    }

    /// Expand a neutral and return it with its β-normal type.
    fn eta_neutral(&self, ctx: &mut Vec<(String, Named)>, t: &Named) -> (Named, Named) {
        match t {
            N::Var(x) => (t.clone(), Self::lookup(ctx, x).clone()),
            N::App(f, s) => {
                if let N::Brec(m, a0, a1) = &**f {
                    let (s_eta, _) = self.eta_neutral(ctx, s);
                    let y = self.fresh();
                    ctx.push((y.clone(), N::Bool));
                    let family = self.normalize(&app((**m).clone(), var(&y)));
                    let family = self.eta_type(ctx, &family);
                    ctx.pop();
                    let ty0 = self.normalize(&app((**m).clone(), N::Zero));
                    let ty1 = self.normalize(&app((**m).clone(), N::One));
                    let a0 = self.eta(ctx, a0, &ty0);
                    let a1 = self.eta(ctx, a1, &ty1);
                    let ty = self.normalize(&app((**m).clone(), (**s).clone()));
                    let motive = N::Lam(y, Box::new(N::Bool), Box::new(family));
                    return (
                        app(N::Brec(Box::new(motive), Box::new(a0), Box::new(a1)), s_eta),
                        ty,
                    );
                }
                let (f_eta, f_ty) = self.eta_neutral(ctx, f);
                let N::Pi(x, dom, cod) = f_ty else {
                    panic!("oracle: neutral head of non-function type")
                };
                let arg = self.eta(ctx, s, &dom);
                let ty = self.normalize(&self.subst(&cod, &x, s));
                (app(f_eta, arg), ty)
            }
            other => panic!("oracle: expected a neutral, found {other:?}"),
        }
    }
}

/// Convert to de Bruijn form. `scope` holds names outermost first.
pub fn to_core(t: &Named, scope: &mut Vec<String>) -> Term {
    match t {
        N::Var(x) => {
            let k = scope
                .iter()
                .rev()
                .position(|y| y == x)
                .unwrap_or_else(|| panic!("oracle: unbound {x}"));
            Term::Var(k)
        }
        N::Lam(x, a, b) | N::Pi(x, a, b) => {
            let a = to_core(a, scope);
            scope.push(x.clone());
            let b = to_core(b, scope);
            scope.pop();
            if matches!(t, N::Lam(..)) {
                Term::lam(a, b)
            } else {
                Term::pi(a, b)
            }
        }
        N::App(f, a) => Term::app(to_core(f, scope), to_core(a, scope)),
        N::Univ(n) => Term::Univ(*n),
        N::Bool => Term::Bool,
        N::Zero => Term::Zero,
        N::One => Term::One,
        N::Brec(m, a0, a1) => Term::brec(to_core(m, scope), to_core(a0, scope), to_core(a1, scope)),
    }
}

/// η-long β-normal form of `t : ty` in the telescope `ctx` (oldest first,
/// each entry scoped in the ones before it; `ty` and `t` scoped in all).
pub fn reference_nf(ctx: &[Term], ty: &Term, t: &Term) -> Term {
    let o = Oracle::new();
    let mut names = Vec::new();
    let mut typed: Vec<(String, Named)> = Vec::new();
    for a in ctx {
        let a = o.normalize(&o.from_core(a, &mut names));
        let x = o.fresh();
        names.push(x.clone());
        typed.push((x, a));
    }
    let ty = o.normalize(&o.from_core(ty, &mut names));
    let t = o.normalize(&o.from_core(t, &mut names));
    let out = o.eta(&mut typed, &t, &ty);
    to_core(&out, &mut names)
}

/// β-normal form without η-expansion.
pub fn beta_nf(ctx_len: usize, t: &Term) -> Term {
    let o = Oracle::new();
    let mut names: Vec<String> = (0..ctx_len).map(|i| format!("ctx{i}")).collect();
    let n = o.normalize(&o.from_core(t, &mut names));
    to_core(&n, &mut names)
}
