//! Boolean witnesses for closed terms.
//!
//! A closed `t : N2` has no free variables to get stuck on, so its normal
//! form is `0` or `1`. The witness records which one, and the conversion
//! between `t` and that normal form is re-checked as a certificate.

use crate::checker::{CheckContext, Checker, TypeError};
use crate::semantics::{convertible, nf, NormalTerm, Value};
use crate::syntax::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoolValue {
    IsZero,
    IsOne,
}

impl BoolValue {
    pub fn as_term(self) -> Term {
        match self {
            BoolValue::IsZero => Term::Zero,
            BoolValue::IsOne => Term::One,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub value: BoolValue,
    /// The term the witness is about, unchanged.
    pub subject: Term,
    pub normal_form: NormalTerm,
    /// `subject` was re-checked convertible with `normal_form` at `N2`.
    pub certified: bool,
}

/// Extract the boolean value of a closed term of type `N2`.
pub fn bool_witness(t: &Term) -> Result<Witness, TypeError> {
    bool_witness_with(&Checker::default(), t)
}

pub fn bool_witness_with(checker: &Checker, t: &Term) -> Result<Witness, TypeError> {
    let ctx = CheckContext::new();
    checker.check(&ctx, t, &Value::Bool)?;
    let normal_form = nf(&[], &Value::Bool, t);
    let value = match normal_form.as_term() {
        Term::Zero => BoolValue::IsZero,
        Term::One => BoolValue::IsOne,
        other => unreachable!("closed boolean normalized to {other:?}"),
    };
    let certified = convertible(0, &Value::Bool, &ctx.eval(t), &ctx.eval(&value.as_term()));
    Ok(Witness {
        value,
        subject: t.clone(),
        normal_form,
        certified,
    })
}

/// True exactly when `0` and `1` are not convertible.
pub fn distinct01() -> bool {
    !convertible(0, &Value::Bool, &Value::Zero, &Value::One)
}
