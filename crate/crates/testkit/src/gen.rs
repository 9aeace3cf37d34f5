//! Random term generators.
//!
//! [`TypedGen`] builds well-typed terms against a small language of simple
//! types ([`Ty`]) extended with type variables, mixing β-redexes, `brec`
//! (including dependent motives), polymorphic identities at universe levels
//! up to 3, and η-style wrappers. [`scoped_term`] builds arbitrary well-scoped
//! (not necessarily typed) terms for the substitution laws.

use rand::seq::SliceRandom;
use rand::Rng;

use tt_core::syntax::{Subst, Term};

/// Simple types with type variables. `Var` holds the de Bruijn level of a
/// context variable whose type is a universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ty {
    Bool,
    Univ(u32),
    Arrow(Box<Ty>, Box<Ty>),
    Var(usize),
}

impl Ty {
    pub fn arrow(a: Ty, b: Ty) -> Ty {
        Ty::Arrow(Box::new(a), Box::new(b))
    }

    /// Core term for this type at binder depth `depth`.
    pub fn to_term(&self, depth: usize) -> Term {
        match self {
            Ty::Bool => Term::Bool,
            Ty::Univ(n) => Term::Univ(*n),
            Ty::Arrow(a, b) => Term::pi(a.to_term(depth), b.to_term(depth + 1)),
            Ty::Var(level) => Term::Var(depth - 1 - level),
        }
    }
}

/// Dependent family over `N2`: `U<n>`-valued, `N2` at 0 and `N2 -> N2` at 1.
pub fn dependent_family(level: u32) -> Term {
    Term::lam(
        Term::Bool,
        Term::app(
            Term::brec(
                Term::lam(Term::Bool, Term::Univ(level)),
                Term::Bool,
                Term::pi(Term::Bool, Term::Bool),
            ),
            Term::Var(0),
        ),
    )
}

pub struct TypedGen<R> {
    pub rng: R,
    ctx: Vec<Ty>,
    pub max_level: u32,
}

impl<R: Rng> TypedGen<R> {
    pub fn new(rng: R) -> Self {
        TypedGen {
            rng,
            ctx: Vec::new(),
            max_level: 3,
        }
    }

    /// Generator whose terms live in the context `ctx` (oldest first).
    pub fn with_context(rng: R, ctx: Vec<Ty>) -> Self {
        TypedGen {
            rng,
            ctx,
            max_level: 3,
        }
    }

    pub fn context(&self) -> &[Ty] {
        &self.ctx
    }

    /// Core telescope for the current context.
    pub fn telescope(&self) -> Vec<Term> {
        self.ctx
            .iter()
            .enumerate()
            .map(|(i, t)| t.to_term(i))
            .collect()
    }

    pub fn level(&self, ty: &Ty) -> u32 {
        match ty {
            Ty::Bool => 0,
            Ty::Univ(n) => n + 1,
            Ty::Arrow(a, b) => self.level(a).max(self.level(b)),
            Ty::Var(l) => match &self.ctx[*l] {
                Ty::Univ(n) => *n,
                other => panic!("type variable of type {other:?}"),
            },
        }
    }

    fn depth(&self) -> usize {
        self.ctx.len()
    }

    fn inhabited(&self, ty: &Ty, extra: &mut Vec<Ty>) -> bool {
        match ty {
            Ty::Var(_) => extra.contains(ty) || self.ctx.contains(ty),
            Ty::Arrow(a, b) => {
                extra.push((**a).clone());
                let r = self.inhabited(b, extra);
                extra.pop();
                r
            }
            Ty::Bool | Ty::Univ(_) => true,
        }
    }

    /// A random inhabited type.
    pub fn pick_ty(&mut self, depth: u32) -> Ty {
        let vars: Vec<Ty> = (0..self.ctx.len())
            .filter(|l| matches!(self.ctx[*l], Ty::Univ(_)))
            .map(Ty::Var)
            .filter(|t| self.ctx.contains(t))
            .collect();
        loop {
            let roll = self.rng.gen_range(0..10);
            let ty = match roll {
                0..=4 => Ty::Bool,
                5..=7 if depth > 0 => {
                    let a = self.pick_ty(depth - 1);
                    let b = self.pick_ty(depth - 1);
                    Ty::arrow(a, b)
                }
                8 if !vars.is_empty() => vars.choose(&mut self.rng).unwrap().clone(),
                9 => Ty::Univ(self.rng.gen_range(0..self.max_level)),
                _ => continue,
            };
            if self.inhabited(&ty, &mut Vec::new()) {
                return ty;
            }
        }
    }

    fn with_var<T>(&mut self, ty: Ty, f: impl FnOnce(&mut Self) -> T) -> T {
        self.ctx.push(ty);
        let r = f(self);
        self.ctx.pop();
        r
    }

    /// A term denoting `ty`, sometimes through a redex that computes it.
    pub fn type_term(&mut self, ty: &Ty) -> Term {
        self.type_term_within(ty, self.max_level)
    }

    /// Like [`Self::type_term`], with the term's own type no higher than `U<cap>`.
    pub fn type_term_within(&mut self, ty: &Ty, cap: u32) -> Term {
        let canonical = ty.to_term(self.depth());
        let level = self.level(ty);
        if level >= cap || self.rng.gen_range(0..4) != 0 {
            return canonical;
        }
        let k = self.rng.gen_range(level..cap);
        if self.rng.gen_bool(0.5) {
            // (fun (T : U<k>) => T) A
            Term::app(Term::lam(Term::Univ(k), Term::Var(0)), canonical)
        } else {
            // brec (fun (_ : N2) => U<k>) A B 0, or with the cases swapped and 1
            let other = if self.rng.gen_bool(0.5) {
                Term::Bool
            } else {
                Term::pi(Term::Bool, Term::Bool)
            };
            let motive = Term::lam(Term::Bool, Term::Univ(k));
            if self.rng.gen_bool(0.5) {
                Term::app(Term::brec(motive, canonical, other), Term::Zero)
            } else {
                Term::app(Term::brec(motive, other, canonical), Term::One)
            }
        }
    }

    fn vars_of(&self, ty: &Ty) -> Vec<usize> {
        let d = self.depth();
        (0..d)
            .filter(|l| &self.ctx[*l] == ty)
            .map(|l| d - 1 - l)
            .collect()
    }

    fn leaf(&mut self, ty: &Ty) -> Term {
        let vars = self.vars_of(ty);
        if !vars.is_empty() && self.rng.gen_bool(0.5) {
            return Term::Var(*vars.choose(&mut self.rng).unwrap());
        }
        match ty {
            Ty::Bool => {
                if self.rng.gen_bool(0.5) {
                    Term::Zero
                } else {
                    Term::One
                }
            }
            Ty::Univ(n) => {
                // the inferred type must be exactly U<n>, so smaller types are pinned
                let n = *n;
                let mut options = if n == 0 {
                    vec![Term::Bool]
                } else {
                    vec![Term::Univ(n - 1), pin(Term::Bool, n)]
                };
                let d = self.depth();
                options.extend(
                    (0..d)
                        .filter(|l| matches!(self.ctx[*l], Ty::Univ(m) if m < n))
                        .map(|l| pin(Term::Var(d - 1 - l), n)),
                );
                options.choose(&mut self.rng).unwrap().clone()
            }
            Ty::Arrow(a, b) => {
                let ann = a.to_term(self.depth());
                let body = self.with_var((**a).clone(), |g| g.leaf(b));
                Term::lam(ann, body)
            }
            Ty::Var(_) => Term::Var(*vars.first().expect("uninhabited type variable")),
        }
    }

    fn split(&mut self, fuel: usize, parts: usize) -> Vec<usize> {
        let mut out = vec![0; parts];
        for _ in 0..fuel {
            let i = self.rng.gen_range(0..parts);
            out[i] += 1;
        }
        out
    }

    /// A term of type `ty`, with roughly `fuel` nodes.
    pub fn gen(&mut self, ty: &Ty, fuel: usize) -> Term {
        if fuel <= 1 {
            return self.leaf(ty);
        }
        let fuel = fuel - 1;
        loop {
            match self.rng.gen_range(0..9) {
                0 if fuel < 4 => return self.leaf(ty),
                0 => {}
                1 => {
                    if let Ty::Arrow(a, b) = ty {
                        let ann = self.type_term(a);
                        let body = self.with_var((**a).clone(), |g| g.gen(b, fuel));
                        return Term::lam(ann, body);
                    }
                    if let Ty::Univ(n) = ty {
                        let n = *n;
                        let a = self.pick_ty(1);
                        let b = self.pick_ty(1);
                        let level = self.level(&a).max(self.level(&b));
                        if level <= n {
                            let pi = Term::pi(a.to_term(self.depth()), b.to_term(self.depth() + 1));
                            return if level < n { pin(pi, n) } else { pi };
                        }
                    }
                }
                2 => {
                    // (fun (x : A) => body) arg
                    let a = self.pick_ty(1);
                    let f = self.split(fuel, 2);
                    let ann = self.type_term(&a);
                    let body = self.with_var(a.clone(), |g| g.gen(ty, f[0]));
                    let arg = self.gen(&a, f[1]);
                    return Term::app(Term::lam(ann, body), arg);
                }
                3 => {
                    if let Some(t) = self.var_app(ty, fuel) {
                        return t;
                    }
                }
                4 => {
                    // brec (fun (_ : N2) => T) a0 a1 s
                    let f = self.split(fuel, 3);
                    let motive =
                        Term::lam(Term::Bool, self.with_var(Ty::Bool, |g| g.type_term(ty)));
                    let a0 = self.gen(ty, f[0]);
                    let a1 = self.gen(ty, f[1]);
                    let s = self.gen(&Ty::Bool, f[2]);
                    return Term::app(Term::brec(motive, a0, a1), s);
                }
                5 => {
                    if let Ty::Arrow(a, b) = ty {
                        if **a == Ty::Bool {
                            let f = self.split(fuel, 2);
                            let motive =
                                Term::lam(Term::Bool, self.with_var(Ty::Bool, |g| g.type_term(b)));
                            return Term::brec(motive, self.gen(b, f[0]), self.gen(b, f[1]));
                        }
                    }
                }
                6 => {
                    if *ty == Ty::Bool {
                        return self.dependent_brec(fuel);
                    }
                }
                7 => {
                    if self.level(ty) < self.max_level {
                        return self.polymorphic(ty, fuel);
                    }
                }
                8 => {
                    if let Ty::Arrow(a, _) = ty {
                        // fun (x : A) => f x, with f built under the binder
                        let ann = self.type_term(a);
                        let body = self.with_var((**a).clone(), |g| {
                            let f = g.gen(ty, fuel);
                            Term::app(f, Term::Var(0))
                        });
                        return Term::lam(ann, body);
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    fn var_app(&mut self, ty: &Ty, fuel: usize) -> Option<Term> {
        let d = self.depth();
        let mut candidates = Vec::new();
        for l in 0..d {
            let mut args = Vec::new();
            let mut cur = self.ctx[l].clone();
            while let Ty::Arrow(a, b) = cur {
                args.push(*a);
                cur = *b;
                if &cur == ty {
                    candidates.push((l, args.clone()));
                }
            }
        }
        let (l, args) = candidates.choose(&mut self.rng)?.clone();
        let f = self.split(fuel, args.len());
        let args: Vec<Term> = args.iter().zip(f).map(|(a, f)| self.gen(a, f)).collect();
        Some(Term::apps(Term::Var(d - 1 - l), args))
    }

    /// A boolean computed through a motive whose fibres at 0 and 1 differ.
    fn dependent_brec(&mut self, fuel: usize) -> Term {
        let level = self.rng.gen_range(0..=self.max_level);
        let family = dependent_family(level);
        let f = self.split(fuel, 3);
        let a0 = self.gen(&Ty::Bool, f[0]);
        let a1 = self.gen(&Ty::arrow(Ty::Bool, Ty::Bool), f[1]);
        let b = Term::brec(family, a0, a1);
        if self.rng.gen_bool(0.5) {
            Term::app(b, Term::Zero)
        } else {
            let arg = self.gen(&Ty::Bool, f[2]);
            Term::app(Term::app(b, Term::One), arg)
        }
    }

    /// (fun (T : U<n>) => fun (y : T) => body) A a
    fn polymorphic(&mut self, ty: &Ty, fuel: usize) -> Term {
        let n = self.rng.gen_range(self.level(ty)..=self.max_level.min(3));
        let f = self.split(fuel, 2);
        let t_level = self.depth();
        let body = self.with_var(Ty::Univ(n), |g| {
            g.with_var(Ty::Var(t_level), |g| g.gen(&Ty::Var(t_level), f[0]))
        });
        let fun = Term::lam(Term::Univ(n), Term::lam(Term::Var(0), body));
        let ty_arg = self.type_term_within(ty, n);
        let arg = self.gen(ty, f[1]);
        Term::apps(fun, [ty_arg, arg])
    }
}

/// `(fun (T : U<n>) => T) t`, which has type exactly `U<n>`.
pub fn pin(t: Term, n: u32) -> Term {
    Term::app(Term::lam(Term::Univ(n), Term::Var(0)), t)
}

/// Boolean of at most `max_size` nodes, built with fuel drawn from
/// `1..=fuel` on each attempt.
pub fn closed_bool<R: Rng>(g: &mut TypedGen<R>, fuel: usize, max_size: usize) -> Term {
    loop {
        let f = g.rng.gen_range(1..=fuel);
        let t = g.gen(&Ty::Bool, f);
        if t.size() <= max_size {
            return t;
        }
    }
}

/// Arbitrary well-scoped term over `n` free variables.
pub fn scoped_term<R: Rng>(rng: &mut R, n: usize, fuel: usize) -> Term {
    if fuel <= 1 {
        let mut leaves = vec![
            Term::Bool,
            Term::Zero,
            Term::One,
            Term::Univ(rng.gen_range(0..3)),
        ];
        leaves.extend((0..n).map(Term::Var));
        if n > 0 {
            // favour variables so substitutions have something to act on
            for _ in 0..3 {
                leaves.push(Term::Var(rng.gen_range(0..n)));
            }
        }
        return leaves.choose(rng).unwrap().clone();
    }
    let fuel = fuel - 1;
    match rng.gen_range(0..4) {
        0 => {
            let k = rng.gen_range(0..=fuel);
            Term::lam(scoped_term(rng, n, k), scoped_term(rng, n + 1, fuel - k))
        }
        1 => {
            let k = rng.gen_range(0..=fuel);
            Term::pi(scoped_term(rng, n, k), scoped_term(rng, n + 1, fuel - k))
        }
        2 => {
            let k = rng.gen_range(0..=fuel);
            Term::app(scoped_term(rng, n, k), scoped_term(rng, n, fuel - k))
        }
        _ => {
            let a = rng.gen_range(0..=fuel);
            let b = rng.gen_range(0..=fuel - a);
            Term::brec(
                scoped_term(rng, n, a),
                scoped_term(rng, n, b),
                scoped_term(rng, n, fuel - a - b),
            )
        }
    }
}

/// Random substitution from a context of length `source` to one of length
/// `target`.
pub fn scoped_subst<R: Rng>(rng: &mut R, target: usize, source: usize, fuel: usize) -> Subst {
    Subst::new(
        (0..target)
            .map(|_| scoped_term(rng, source, fuel))
            .collect(),
    )
}
