//! Exhaustive enumeration of well-typed terms by size.
//!
//! Terms are built bottom-up over `N2`, `0`, `1`, `U0`, variables, `fun`,
//! application, `brec` and `Π`. Every candidate is filtered through the
//! kernel's checker; results are memoized per (context, size).

use std::collections::HashMap;
use std::rc::Rc;

use tt_core::checker::{subsumes, CheckContext, Checker};
use tt_core::semantics::reify_type;
use tt_core::syntax::Term;

/// A checked term with its normal type.
#[derive(Clone, Debug)]
pub struct Typed {
    pub term: Term,
    pub ty: Term,
}

#[derive(Default)]
pub struct Enumerator {
    checker: Checker,
    memo: HashMap<(Vec<Term>, usize), Rc<Vec<Typed>>>,
    contexts: HashMap<Vec<Term>, CheckContext>,
}

impl Enumerator {
    pub fn new() -> Enumerator {
        Enumerator::default()
    }

    fn context(&mut self, tele: &[Term]) -> CheckContext {
        if let Some(c) = self.contexts.get(tele) {
            return c.clone();
        }
        let ctx = match tele.split_last() {
            None => CheckContext::new(),
            Some((last, init)) => {
                let outer = self.context(init);
                outer.extend(outer.eval(last))
            }
        };
        self.contexts.insert(tele.to_vec(), ctx.clone());
        ctx
    }

    fn typed(&mut self, tele: &[Term], term: Term) -> Option<Typed> {
        let ctx = self.context(tele);
        let ty = self.checker.infer(&ctx, &term).ok()?;
        Some(Typed {
            term,
            ty: reify_type(ctx.size(), &ty).into_term(),
        })
    }

    /// All well-typed terms of exactly `size` nodes in the telescope `tele`
    /// (normal types, oldest first).
    pub fn of_size(&mut self, tele: &[Term], size: usize) -> Rc<Vec<Typed>> {
        let key = (tele.to_vec(), size);
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let out = Rc::new(self.build(tele, size));
        self.memo.insert(key, out.clone());
        out
    }

    fn build(&mut self, tele: &[Term], size: usize) -> Vec<Typed> {
        let mut out = Vec::new();
        if size == 0 {
            return out;
        }
        if size == 1 {
            let mut leaves = vec![Term::Bool, Term::Zero, Term::One, Term::Univ(0)];
            leaves.extend((0..tele.len()).map(Term::Var));
            for t in leaves {
                out.extend(self.typed(tele, t));
            }
            return out;
        }
        let ctx_size = tele.len();
        // binders: fun and Π
        for a in 1..size - 1 {
            let domains: Vec<Typed> = self
                .of_size(tele, a)
                .iter()
                .filter(|d| matches!(d.ty, Term::Univ(_)))
                .cloned()
                .collect();
            for d in &domains {
                let ctx = self.context(tele);
                let dom_nf = reify_type(ctx_size, &ctx.eval(&d.term)).into_term();
                let mut inner = tele.to_vec();
                inner.push(dom_nf.clone());
                let bodies = self.of_size(&inner, size - 1 - a);
                for b in bodies.iter() {
                    out.push(Typed {
                        term: Term::lam(d.term.clone(), b.term.clone()),
                        ty: Term::pi(dom_nf.clone(), b.ty.clone()),
                    });
                    if let (Term::Univ(la), Term::Univ(lb)) = (&d.ty, &b.ty) {
                        out.push(Typed {
                            term: Term::pi(d.term.clone(), b.term.clone()),
                            ty: Term::Univ(*la.max(lb)),
                        });
                    }
                }
            }
        }
        // application
        for a in 1..size - 1 {
            let funs = self.of_size(tele, a);
            let args = self.of_size(tele, size - 1 - a);
            let ctx = self.context(tele);
            for f in funs.iter() {
                let Term::Pi(dom, _) = &f.ty else { continue };
                let dom_v = ctx.eval(dom);
                for x in args.iter() {
                    let fits = match (&x.ty, &**dom) {
                        (Term::Univ(n), Term::Univ(m)) => n <= m,
                        (t, d) => t == d,
                    };
                    if !fits {
                        continue;
                    }
                    debug_assert!(subsumes(ctx_size, &ctx.eval(&x.ty), &dom_v));
                    out.extend(self.typed(tele, Term::app(f.term.clone(), x.term.clone())));
                }
            }
        }
        // brec
        for m in 1..size - 2 {
            let motives: Vec<Typed> = self
                .of_size(tele, m)
                .iter()
                .filter(|t| matches!(&t.ty, Term::Pi(d, c) if **d == Term::Bool && matches!(**c, Term::Univ(_))))
                .cloned()
                .collect();
            if motives.is_empty() {
                continue;
            }
            for a in 1..size - 1 - m {
                let cases0 = self.of_size(tele, a);
                let cases1 = self.of_size(tele, size - 1 - m - a);
                for mo in &motives {
                    for c0 in cases0.iter() {
                        for c1 in cases1.iter() {
                            let t = Term::brec(mo.term.clone(), c0.term.clone(), c1.term.clone());
                            out.extend(self.typed(tele, t));
                        }
                    }
                }
            }
        }
        out
    }

    /// All closed well-typed terms with at most `max_size` nodes.
    pub fn closed_up_to(&mut self, max_size: usize) -> Vec<Typed> {
        (1..=max_size)
            .flat_map(|s| self.of_size(&[], s).iter().cloned().collect::<Vec<_>>())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sizes() {
        let mut e = Enumerator::new();
        // N2, 0, 1, U0
        assert_eq!(e.of_size(&[], 1).len(), 4);
        // no closed term of size 2
        assert_eq!(e.of_size(&[], 2).len(), 0);
        let three: Vec<Term> = e.of_size(&[], 3).iter().map(|t| t.term.clone()).collect();
        assert!(three.contains(&Term::lam(Term::Bool, Term::Var(0))));
        assert!(three.contains(&Term::pi(Term::Bool, Term::Bool)));
    }
}
