//! Exact computation with beta-expansions and their full groups.
//!
//! For a real base `beta > 1`, the digit sequences admissible in base
//! beta form a one-sided shift space. This crate computes, in exact
//! arithmetic end to end:
//!
//! * greedy expansions, the supremum digit sequence, admissible words and
//!   their cylinder intervals ([`BetaContext`], [`Word`]);
//! * the SFT / sofic / non-sofic trichotomy of the shift, decided by exact
//!   remainder tests ([`ShiftClass`]);
//! * for sofic bases, the finite follower algebra as a partition of
//!   [0, 1], its left-resolving labeled graph, the edge/vertex matrices
//!   with their determinant identities, and the K-theoretic invariants
//!   that classify the associated full group among the Higman-Thompson
//!   groups ([`sofic_graph`]);
//! * the element calculus of that group: two-row tables of marked words,
//!   composition by common refinement, inversion, and the faithful
//!   piecewise-linear realization on [0, 1) ([`table_group`]).
//!
//! Everything is decided exactly: comparisons in Q(beta) go through
//! Sturm-certified root isolation, never floating point.
//!
//! ```
//! use betafull::{BetaContext, ShiftClass};
//!
//! let golden = BetaContext::new("digits=1,1")?;
//! assert_eq!(golden.classify_shift(64), ShiftClass::Sft { k: 2 });
//! assert_eq!(golden.beta().to_decimal(12), "1.618033988750");
//!
//! let words = golden.enumerate_words(10);
//! assert_eq!(words.len(), 144);
//! # Ok::<(), betafull::Error>(())
//! ```
//!
//! The `betafull` binary exposes every operation on the command line; the
//! book under `book/` walks through the mathematics chapter by chapter
//! (its code snippets compile as doc-tests of [`guide`]).

mod error;
mod poly;

pub mod beta_shift;
pub mod cli;
pub mod guide;
pub mod number_core;
pub mod sofic_graph;
pub mod table_group;

pub use beta_shift::{DigitSeq, ShiftClass, Word};
pub use error::{Error, Result};
pub use number_core::{BetaContext, BetaNumber};
pub use sofic_graph::{
    build_graph, group_class, homology, is_isomorphic, k0_group, matrices, projection_system,
    recode_generators, Edge, GroupClass, Homology, IsoVerdict, K0Result, LabeledGraph, MatrixSet,
    ProjectionSystem, SoficSystem,
};
pub use table_group::{
    commutator, compose, random_table, BetaTable, MarkedWord, PlFunction, PlSegment, TableRow,
};
