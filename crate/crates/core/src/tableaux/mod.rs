//! Kronecker tableaux: walks of shapes that move one corner per step.
//!
//! Walks starting at a single row `(n)` are counted by the coefficients of
//! `(s_(n-1,1) ⊙)^k s_(n)`. After the first row is stripped they are in
//! bijection with pairs (partial standard tableau, decreasing-cycle
//! permutation), built step by step with row insertion.

mod bijection;
mod rsk;
mod walk;

pub use bijection::{
    from_pair, pair_to_walk, to_pair, walk_to_pair, walk_to_pair_traced, DecCyclePermutation, KroneckerPair,
};
pub use rsk::PartialStandardTableau;
pub use walk::{
    count_all_kronecker_tableaux, count_kronecker_tableaux, in_regime, list_kronecker_tableaux, strip_first_row,
    strip_first_row_unchecked, successors, unstrip, KroneckerTableau, ReducedStep, ReducedWalk, TransferMatrix,
};
