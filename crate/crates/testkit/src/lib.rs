//! Test support for the kernel: a reference normalizer, random and
//! exhaustive term generators, and a fixed corpus of typed terms.

pub mod corpus;
pub mod enumerate;
pub mod gen;
pub mod oracle;
