//! A kernel for Martin-Löf type theory with cumulative universes, Π-types
//! with η, and booleans.
//!
//! Normalization is by evaluation: terms are evaluated into a semantic domain
//! and read back type-directedly into η-long normal forms, which decides
//! judgmental conversion. Closed booleans always normalize to `0` or `1`
//! (see [`canonicity`]).

pub mod canonicity;
pub mod checker;
pub mod semantics;
pub mod surface;
pub mod syntax;

pub use canonicity::{bool_witness, distinct01, BoolValue, Witness};
pub use checker::{CheckContext, CheckedDecl, Checker, TypeError, TypeErrorKind};
pub use semantics::{convertible, eval, nf, reflect, reify, reify_type, NormalTerm, Value};
pub use surface::{parse, pretty, Program, SurfaceTerm};
pub use syntax::{alpha_eq, apply_sub, Level, Subst, Term};
