use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tt_core::canonicity::bool_witness;
use tt_core::checker::{check_program, CheckContext, Checker};
use tt_core::semantics::{convertible, nf, Value};
use tt_core::surface::parse;
use tt_core::syntax::Term;
use tt_testkit::gen::{closed_bool, TypedGen};

fn booleans(n: usize) -> Vec<Term> {
    let mut g = TypedGen::new(ChaCha8Rng::seed_from_u64(42));
    (0..n).map(|_| closed_bool(&mut g, 30, 60)).collect()
}

/// `not` applied `depth` times to a variable of type N2.
fn tower(depth: usize) -> Term {
    let not = Term::brec(Term::lam(Term::Bool, Term::Bool), Term::One, Term::Zero);
    let body = (0..depth).fold(Term::Var(0), |t, _| Term::app(not.clone(), t));
    Term::lam(Term::Bool, body)
}

const PROGRAM: &str = "
def not : N2 -> N2 = brec (fun (_ : N2) => N2) 1 0
def and : N2 -> N2 -> N2 = fun (a : N2) (b : N2) => brec (fun (_ : N2) => N2) 0 b a
def or : N2 -> N2 -> N2 = fun (a : N2) (b : N2) => brec (fun (_ : N2) => N2) b 1 a
def C : N2 -> U0 = fun (b : N2) => brec (fun (_ : N2) => U0) N2 (N2 -> N2) b
def pick : (b : N2) -> C b = brec C 1 (fun (x : N2) => x)
def idP : (A : U0) -> A -> A = fun (A : U0) (x : A) => x
def t : N2 = idP N2 (or (and (not 0) (pick 1 1)) (pick 0))
";

fn normalize(c: &mut Criterion) {
    let terms = booleans(200);
    c.bench_function("nf/200 closed booleans", |b| {
        b.iter(|| {
            for t in &terms {
                black_box(nf(&[], &Value::Bool, t));
            }
        })
    });
    let ty = CheckContext::new().eval(&Term::arrow(Term::Bool, Term::Bool));
    let t = tower(200);
    c.bench_function("nf/not tower 200", |b| {
        b.iter(|| black_box(nf(&[], &ty, &t)))
    });
}

fn conversion(c: &mut Criterion) {
    let ctx = CheckContext::new();
    let ty = ctx.eval(&Term::arrow(Term::Bool, Term::Bool));
    let (a, b) = (ctx.eval(&tower(200)), ctx.eval(&tower(202)));
    c.bench_function("conv/not towers", |bench| {
        bench.iter(|| black_box(convertible(0, &ty, &a, &b)))
    });
}

fn checking(c: &mut Criterion) {
    let program = parse(PROGRAM).unwrap();
    c.bench_function("check/program", |b| {
        b.iter(|| black_box(check_program(&program).unwrap()))
    });
    let terms = booleans(200);
    let checker = Checker::default();
    c.bench_function("check/200 closed booleans", |b| {
        b.iter(|| {
            for t in &terms {
                checker
                    .check(&CheckContext::new(), t, &Value::Bool)
                    .unwrap();
            }
        })
    });
}

fn canonicity(c: &mut Criterion) {
    c.bench_function("canonicity/witness", |b| {
        b.iter_batched(
            || booleans(50),
            |terms| {
                for t in &terms {
                    black_box(bool_witness(t).unwrap());
                }
            },
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, normalize, conversion, checking, canonicity);
criterion_main!(benches);
