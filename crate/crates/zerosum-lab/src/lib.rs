//! zerosum-lab: exact computation of weighted zero-sum constants over
//! finite abelian groups.
//!
//! The crate computes the weighted Davenport constant d_A(G) and the
//! fixed-length constants ZS_A(G) and s_A(G) by exhaustive search with
//! exact pruning, evaluates every closed-form value the solver is checked
//! against, constructs the extremal sequences certifying the lower bounds,
//! and carries the `F_p[G]` group-algebra machinery behind the p-group upper
//! bound.

mod bits;
pub mod error;
pub mod group;
pub mod nt;
pub mod sequence;
pub mod weights;

pub mod algebra;
pub mod constructions;
pub mod engine;
pub mod solver;
pub mod statements;

pub use error::{Error, Result};
pub use group::{make_group, GroupElement, GroupSpec};
pub use sequence::{Sequence, Witness, WitnessJson};
pub use weights::{check_theorem1_hypothesis, HypothesisReport, WeightFamily, WeightSet};
