//! Coincidence points and common fixed points of mapping pairs `(f, g)`.
//!
//! The crate builds the Jungck-type sequence `f(x_n) = g(x_{n+1})` for a pair
//! of self-maps on a metric space, certifies its Cauchy behaviour with a
//! comparison-function tail bound, and checks every hypothesis of the
//! generalized α-ψ contractive pair theorems:
//!
//! * exhaustively on finite spaces, where every "for all" is decidable, and
//! * by grid plus seeded random sampling on closed real intervals, where a
//!   pass only supports the hypothesis and a failure refutes it.
//!
//! The [`oracle`] module enumerates coincidence sets by brute force and
//! cross-checks theorem conclusions; [`adapters`] turns partial orders,
//! cyclic partitions and classical contraction conditions into α/ψ data;
//! [`scenario`] drives everything from declarative text files.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::type_complexity)]

pub mod adapters;
pub mod check;
pub mod comparison;
pub mod iterate;
pub mod maps;
pub mod oracle;
pub mod pair;
pub mod scenario;
pub mod spaces;

pub use check::{CheckResult, CheckSummary};
pub use comparison::{ComparisonError, ComparisonFunction};
pub use iterate::{jungck_iterate, IterateOptions, IterationTrace, Outcome};
pub use maps::{RealMap, SelfMap, TableMap};
pub use pair::{Alpha, AlphaMatrix, MappingPair, RealAlpha};
pub use spaces::{FiniteSpace, IntervalSpace, MetricSpace, SpaceError};
