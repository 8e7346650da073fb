//! Generating invariants of finite matrix groups acting on the exterior
//! algebra, the (-1)-skew polynomial ring, and a degree-capped commutative
//! ring, over exact rationals.
//!
//! The crate enumerates a finite matrix group from generators, computes
//! per-degree invariant spaces via the Reynolds operator and a Molien-type
//! dimension oracle, extracts minimal algebra generators (and the degree
//! bound `beta`), and runs a subspace-arrangement elimination route to the
//! same generators: the vanishing ideal of the group arrangement is
//! intersected degreewise, minimal ideal generators are read off by graded
//! Nakayama, the `y`-variables are eliminated, and Reynolds projection
//! lands back in the invariant ring. Everything is exact; no floating
//! point is used anywhere.
//!
//! ```
//! use extinv::algebra::AlgebraCtx;
//! use extinv::groups::FiniteMatrixGroup;
//! use extinv::invariant::algebra_generators;
//! use extinv::linalg::MatrixQ;
//!
//! // the swap of two exterior variables has one generating invariant
//! let swap = MatrixQ::from_i64(2, 2, &[0, 1, 1, 0]);
//! let group = FiniteMatrixGroup::enumerate(&[swap], 100)?;
//! let ctx = AlgebraCtx::exterior(2);
//! let gens = algebra_generators(&group, &ctx)?;
//! assert_eq!(gens.gens()[0].1.to_string(), "x1 + x2");
//! assert_eq!(gens.beta(), 1);
//! # Ok::<(), extinv::Error>(())
//! ```

// index loops over graded spans read better than enumerate chains here
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod arrangement;
pub mod battery;
pub mod error;
pub mod groups;
pub mod invariant;
pub mod linalg;
pub mod pipeline;
pub mod problem;
pub mod rat;
pub mod report;
pub mod runner;
pub mod text;

pub use error::{Error, Result};
pub use rat::Rat;
