//! A fixed corpus of well-typed terms with their types and contexts.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tt_core::syntax::Term;

use crate::gen::{closed_bool, dependent_family, Ty, TypedGen};

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    /// Context types, oldest first.
    pub ctx: Vec<Term>,
    pub term: Term,
    pub ty: Term,
}

fn entry(name: &str, ctx: Vec<Term>, term: Term, ty: Term) -> Entry {
    Entry {
        name: name.to_string(),
        ctx,
        term,
        ty,
    }
}

fn not() -> Term {
    Term::lam(
        Term::Bool,
        Term::app(
            Term::brec(Term::lam(Term::Bool, Term::Bool), Term::One, Term::Zero),
            Term::Var(0),
        ),
    )
}

fn bool_to_bool() -> Term {
    Term::arrow(Term::Bool, Term::Bool)
}

/// Hand-written terms exercising every construct.
pub fn handwritten() -> Vec<Entry> {
    let bb = bool_to_bool();
    let id_poly = Term::lam(Term::Univ(0), Term::lam(Term::Var(0), Term::Var(0)));
    let id_poly_ty = Term::pi(Term::Univ(0), Term::pi(Term::Var(0), Term::Var(1)));
    let const_bool = Term::brec(Term::lam(Term::Bool, Term::Bool), Term::Zero, Term::Zero);
    let bare_not = Term::brec(Term::lam(Term::Bool, Term::Bool), Term::One, Term::Zero);
    let family = dependent_family(0);
    let dep = Term::brec(family.clone(), Term::One, not());
    let dep_ty = Term::pi(Term::Bool, Term::app(family.clone(), Term::Var(0)));
    vec![
        entry("zero", vec![], Term::Zero, Term::Bool),
        entry("one", vec![], Term::One, Term::Bool),
        entry("bool", vec![], Term::Bool, Term::Univ(0)),
        entry("u0", vec![], Term::Univ(0), Term::Univ(1)),
        entry("u3", vec![], Term::Univ(3), Term::Univ(4)),
        entry("not", vec![], not(), bb.clone()),
        entry(
            "not_not_zero",
            vec![],
            Term::app(not(), Term::app(not(), Term::Zero)),
            Term::Bool,
        ),
        entry("bare_not", vec![], bare_not.clone(), bb.clone()),
        entry("const_zero", vec![], const_bool, bb.clone()),
        entry("id_poly", vec![], id_poly.clone(), id_poly_ty),
        entry(
            "id_poly_applied",
            vec![],
            Term::apps(id_poly.clone(), [Term::Bool, Term::One]),
            Term::Bool,
        ),
        entry(
            "id_at_arrow",
            vec![],
            Term::apps(id_poly, [bb.clone(), not()]),
            bb.clone(),
        ),
        entry(
            "pi_type",
            vec![],
            Term::arrow(bb.clone(), Term::Bool),
            Term::Univ(0),
        ),
        entry("dep_brec", vec![], dep.clone(), dep_ty),
        entry(
            "dep_brec_one",
            vec![],
            Term::apps(dep.clone(), [Term::One, Term::Zero]),
            Term::Bool,
        ),
        entry("open_var", vec![Term::Bool], Term::Var(0), Term::Bool),
        entry("open_fun", vec![bb.clone()], Term::Var(0), bb.clone()),
        entry(
            "open_brec",
            vec![Term::Bool],
            Term::app(bare_not.clone(), Term::Var(0)),
            Term::Bool,
        ),
        entry(
            "open_dep_brec",
            vec![Term::Bool],
            Term::app(dep.clone(), Term::Var(0)),
            Term::app(family.clone(), Term::Var(0)),
        ),
        entry(
            "open_family",
            vec![
                Term::arrow(Term::Bool, Term::Univ(0)),
                Term::app(Term::Var(0), Term::Zero),
                Term::app(Term::Var(1), Term::One),
            ],
            Term::brec(Term::Var(2), Term::Var(1), Term::Var(0)),
            Term::pi(Term::Bool, Term::app(Term::Var(3), Term::Var(0))),
        ),
        entry(
            "open_type_var",
            vec![Term::Univ(0), Term::Var(0)],
            Term::app(Term::lam(Term::Var(1), Term::Var(0)), Term::Var(0)),
            Term::Var(1),
        ),
        entry(
            "higher_order",
            vec![],
            Term::lam(
                bb.clone(),
                Term::lam(
                    Term::Bool,
                    Term::app(Term::Var(1), Term::app(Term::Var(1), Term::Var(0))),
                ),
            ),
            Term::arrow(bb.clone(), bb.clone()),
        ),
    ]
}

/// Hand-written terms plus `generated` seeded random terms, some closed
/// booleans and some open terms of function type.
pub fn corpus(seed: u64, generated: usize) -> Vec<Entry> {
    let mut out = handwritten();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..generated {
        let ctx = match i % 3 {
            0 => vec![],
            1 => vec![Ty::Bool, Ty::arrow(Ty::Bool, Ty::Bool)],
            _ => vec![Ty::Univ(0), Ty::Var(0), Ty::Bool],
        };
        let mut g = TypedGen::with_context(&mut rng, ctx);
        let (term, ty) = if i % 2 == 0 {
            (closed_bool(&mut g, 20, 80), Ty::Bool)
        } else {
            let ty = g.pick_ty(2);
            (g.gen(&ty, 20), ty)
        };
        let tele = g.telescope();
        let ty = ty.to_term(tele.len());
        out.push(entry(&format!("generated_{i}"), tele, term, ty));
    }
    out
}
