//! The book under `book/` compiled as doc-tests.
//!
//! Each chapter of the guide is included verbatim as the documentation of
//! an empty module here, so `cargo test --doc` compiles and runs every
//! code snippet the book shows. If a chapter drifts from the library, the
//! test suite fails.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod exact_arithmetic {}

#[doc = include_str!("../../../book/src/beta-shifts.md")]
pub mod beta_shifts {}

#[doc = include_str!("../../../book/src/sofic-presentations.md")]
pub mod sofic_presentations {}

#[doc = include_str!("../../../book/src/group-calculus.md")]
pub mod group_calculus {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli_guide {}
