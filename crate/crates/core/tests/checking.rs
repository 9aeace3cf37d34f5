use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tt_core::checker::{subsumes, CheckContext, Checker, TypeErrorKind};
use tt_core::semantics::Value;
use tt_core::syntax::Term;
use tt_testkit::gen::{Ty, TypedGen};

#[test]
fn universes_are_cumulative() {
    let ctx = CheckContext::new();
    let checker = Checker::default();
    for n in 0..8 {
        for m in 0..=8 {
            let ok = checker.check(&ctx, &Term::Univ(n), &Value::Univ(m)).is_ok();
            assert_eq!(ok, n < m, "U{n} : U{m}");
        }
    }
}

#[test]
fn universe_ceiling() {
    let checker = Checker::new(4);
    let ctx = CheckContext::new();
    assert!(checker.infer(&ctx, &Term::Univ(3)).is_ok());
    let err = checker.infer(&ctx, &Term::Univ(4)).unwrap_err();
    assert!(matches!(
        err.kind,
        TypeErrorKind::UniverseCeiling { level: 4, max: 4 }
    ));
}

#[test]
fn no_subsumption_under_binders() {
    let ctx = CheckContext::new();
    let f = Term::lam(Term::Bool, Term::Bool);
    let target = ctx.eval(&Term::arrow(Term::Bool, Term::Univ(1)));
    let err = Checker::default().check(&ctx, &f, &target).unwrap_err();
    assert!(matches!(err.kind, TypeErrorKind::Mismatch { .. }));
}

#[test]
fn brec_needs_a_motive_into_a_universe() {
    let ctx = CheckContext::new();
    let bad = Term::brec(Term::lam(Term::Bool, Term::Zero), Term::Zero, Term::One);
    assert!(Checker::default().infer(&ctx, &bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// A type whose minimal level is n checks at every U_m with n ≤ m and
    /// at no lower universe.
    #[test]
    fn minimal_level_and_upward_closure(seed in any::<u64>()) {
        let mut g = TypedGen::with_context(ChaCha8Rng::seed_from_u64(seed), vec![Ty::Univ(1), Ty::Univ(0)]);
        let ty = g.pick_ty(3);
        let expected = g.level(&ty);
        let a = g.type_term(&ty);
        let ctx = g.telescope().iter().fold(CheckContext::new(), |c, t| {
            let v = c.eval(t);
            c.extend(v)
        });
        let checker = Checker::default();
        let n = checker.infer_universe(&ctx, &a).unwrap();
        prop_assert!(n >= expected);
        if a == ty.to_term(ctx.size()) {
            prop_assert_eq!(n, expected);
        }
        for m in 0..=8 {
            prop_assert_eq!(checker.check(&ctx, &a, &Value::Univ(m)).is_ok(), n <= m);
        }
    }

    #[test]
    fn subsumption_is_a_preorder_on_universes(a in 0u32..10, b in 0u32..10, c in 0u32..10) {
        let (va, vb, vc) = (Value::Univ(a), Value::Univ(b), Value::Univ(c));
        prop_assert!(subsumes(0, &va, &va));
        if subsumes(0, &va, &vb) && subsumes(0, &vb, &vc) {
            prop_assert!(subsumes(0, &va, &vc));
        }
        prop_assert_eq!(subsumes(0, &va, &vb), a <= b);
    }

    #[test]
    fn generated_terms_check_at_their_type(seed in any::<u64>(), fuel in 1usize..40) {
        let mut g = TypedGen::with_context(ChaCha8Rng::seed_from_u64(seed), vec![Ty::Univ(0), Ty::Var(0)]);
        let ty = g.pick_ty(2);
        let t = g.gen(&ty, fuel);
        let tele = g.telescope();
        let ctx = tele.iter().fold(CheckContext::new(), |c, t| {
            let v = c.eval(t);
            c.extend(v)
        });
        let expected = ctx.eval(&ty.to_term(ctx.size()));
        let r = Checker::default().check(&ctx, &t, &expected);
        prop_assert!(r.is_ok(), "{:?}: {:?}", t, r);
    }
}
