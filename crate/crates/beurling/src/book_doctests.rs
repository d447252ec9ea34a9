//! Runs every code block of the guide under `book/` as a doc-test, so the
//! chapters cannot drift from the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod exact_arithmetic {}

#[doc = include_str!("../../../book/src/rational-functions.md")]
pub mod rational_functions {}

#[doc = include_str!("../../../book/src/hankel-kernels.md")]
pub mod hankel_kernels {}

#[doc = include_str!("../../../book/src/symbols-and-independency.md")]
pub mod symbols_and_independency {}

#[doc = include_str!("../../../book/src/inner-outer.md")]
pub mod inner_outer {}

#[doc = include_str!("../../../book/src/subspace-lattice.md")]
pub mod subspace_lattice {}

#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
