use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tt_core::checker::{CheckContext, Checker};
use tt_core::semantics::{convertible, grammar, nf, reify_type, Value};
use tt_core::syntax::{apply_sub, Subst, Term};
use tt_testkit::gen::{Ty, TypedGen};
use tt_testkit::oracle::reference_nf;

fn context(tele: &[Term]) -> CheckContext {
    tele.iter().fold(CheckContext::new(), |ctx, t| {
        let v = ctx.eval(t);
        ctx.extend(v)
    })
}

struct Sample {
    tele: Vec<Term>,
    term: Term,
    ty: Term,
}

fn sample(seed: u64, ctx: Vec<Ty>, fuel: usize) -> Sample {
    let mut g = TypedGen::with_context(ChaCha8Rng::seed_from_u64(seed), ctx);
    let ty = g.pick_ty(2);
    let term = g.gen(&ty, fuel);
    let tele = g.telescope();
    let ty = ty.to_term(tele.len());
    Sample { tele, term, ty }
}

fn mentions_universe(t: &Term) -> bool {
    match t {
        Term::Univ(_) => true,
        Term::Var(_) | Term::Bool | Term::Zero | Term::One => false,
        Term::Lam(a, b) | Term::Pi(a, b) | Term::App(a, b) => {
            mentions_universe(a) || mentions_universe(b)
        }
        Term::Brec(m, a, b) => mentions_universe(m) || mentions_universe(a) || mentions_universe(b),
    }
}

fn mixed_context() -> Vec<Ty> {
    vec![
        Ty::Univ(0),
        Ty::Var(0),
        Ty::Bool,
        Ty::arrow(Ty::Bool, Ty::Bool),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn agrees_with_reference(seed in any::<u64>(), fuel in 1usize..30) {
        let s = sample(seed, mixed_context(), fuel);
        let ctx = context(&s.tele);
        let ours = nf(ctx.types(), &ctx.eval(&s.ty), &s.term);
        prop_assert_eq!(ours, reference_nf(&s.tele, &s.ty, &s.term));
    }

    #[test]
    fn normal_forms_are_normal_and_fixed(seed in any::<u64>(), fuel in 1usize..30) {
        let s = sample(seed, mixed_context(), fuel);
        let ctx = context(&s.tele);
        let ty = ctx.eval(&s.ty);
        let once = nf(ctx.types(), &ty, &s.term).into_term();
        prop_assert!(grammar::is_normal(&once), "{:?}", once);
        prop_assert_eq!(nf(ctx.types(), &ty, &once), once);
    }

    #[test]
    fn normal_forms_keep_their_type(seed in any::<u64>(), fuel in 1usize..30) {
        let s = sample(seed, mixed_context(), fuel);
        let ctx = context(&s.tele);
        let ty = ctx.eval(&s.ty);
        let n = nf(ctx.types(), &ty, &s.term).into_term();
        // Subsumption only looks at universe heads, so a normal form whose
        // pinned universes were computed away can fall below its type, even
        // inside a brec case. Without universes in the type it checks exactly.
        if matches!(s.ty, Term::Univ(_)) || !mentions_universe(&s.ty) {
            let r = Checker::default().check(&ctx, &n, &ty);
            prop_assert!(r.is_ok(), "{:?} : {:?} -> {:?}: {:?}", s.term, s.ty, n, r);
        }
        prop_assert!(convertible(ctx.size(), &ty, &ctx.eval(&s.term), &ctx.eval(&n)));
    }

    /// nf(t[σ]) = nf(nf(t)[σ]) for σ from [N2] to [N2, N2 -> N2].
    #[test]
    fn normalization_commutes_with_substitution(seed in any::<u64>(), fuel in 1usize..25) {
        let gamma = vec![Ty::Bool, Ty::arrow(Ty::Bool, Ty::Bool)];
        let s = sample(seed, gamma, fuel);
        let ctx = context(&s.tele);
        let ty_v = ctx.eval(&s.ty);
        let n = nf(ctx.types(), &ty_v, &s.term).into_term();

        let mut g = TypedGen::with_context(ChaCha8Rng::seed_from_u64(!seed), vec![Ty::Bool]);
        let b = g.gen(&Ty::Bool, 6);
        let f = g.gen(&Ty::arrow(Ty::Bool, Ty::Bool), 6);
        let sigma = Subst::new(vec![b, f]);
        let delta = context(&[Term::Bool]);
        // the types in this context are closed
        let ty_d = delta.eval(&s.ty);
        let lhs = nf(delta.types(), &ty_d, &apply_sub(&s.term, &sigma));
        let rhs = nf(delta.types(), &ty_d, &apply_sub(&n, &sigma));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn closed_booleans_are_literals(seed in any::<u64>(), fuel in 1usize..40) {
        let mut g = TypedGen::new(ChaCha8Rng::seed_from_u64(seed));
        let t = g.gen(&Ty::Bool, fuel);
        let n = nf(&[], &Value::Bool, &t).into_term();
        prop_assert!(n == Term::Zero || n == Term::One, "{:?}", n);
    }

    /// Π(A, B) ≡ Π(A', B') exactly when A ≡ A' and B ≡ B'.
    #[test]
    fn pi_is_injective(seed in any::<u64>()) {
        let mut g = TypedGen::new(ChaCha8Rng::seed_from_u64(seed));
        let a = g.pick_ty(2);
        let b = g.pick_ty(2);
        let (a2, b2) = if seed % 2 == 0 { (a.clone(), b.clone()) } else { (g.pick_ty(2), g.pick_ty(2)) };
        let pi1 = Term::pi(g.type_term(&a), Term::app(Term::lam(Term::Bool, g.type_term(&b).shift(1)), Term::Var(0)));
        let pi2 = Term::pi(g.type_term(&a2), g.type_term(&b2).shift(1));
        let ctx = CheckContext::new();
        let same_pi = reify_type(0, &ctx.eval(&pi1)) == reify_type(0, &ctx.eval(&pi2));
        let same_parts = reify_type(0, &ctx.eval(&a.to_term(0))) == reify_type(0, &ctx.eval(&a2.to_term(0)))
            && reify_type(0, &ctx.eval(&b.to_term(0))) == reify_type(0, &ctx.eval(&b2.to_term(0)));
        prop_assert_eq!(same_pi, same_parts);
        if a == a2 && b == b2 {
            prop_assert!(same_pi);
        }
    }
}

#[test]
fn eta_for_function_variables() {
    let ctx = context(&[Term::arrow(Term::Bool, Term::Bool)]);
    let ty = ctx.types()[0].clone();
    let f = Term::Var(0);
    let expanded = Term::lam(Term::Bool, Term::app(Term::Var(1), Term::Var(0)));
    assert!(convertible(1, &ty, &ctx.eval(&f), &ctx.eval(&expanded)));
    assert_eq!(nf(ctx.types(), &ty, &f), expanded);
}

#[test]
fn stuck_brec_reads_back_with_its_motive() {
    let ctx = context(&[Term::Bool]);
    let not = Term::brec(Term::lam(Term::Bool, Term::Bool), Term::One, Term::Zero);
    let t = Term::app(not.clone(), Term::Var(0));
    assert_eq!(nf(ctx.types(), &Value::Bool, &t), t);
}
