//! The chapters of the guide in `book/`, compiled so their examples run as doctests.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}

#[doc = include_str!("../../../book/src/markov.md")]
pub mod markov {}

#[doc = include_str!("../../../book/src/contfrac.md")]
pub mod contfrac {}

#[doc = include_str!("../../../book/src/lattices.md")]
pub mod lattices {}

#[doc = include_str!("../../../book/src/plumbing.md")]
pub mod plumbing {}

#[doc = include_str!("../../../book/src/obstruction.md")]
pub mod obstruction {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
