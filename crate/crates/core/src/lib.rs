//! Exact computation of Kronecker products of irreducible characters of the
//! symmetric group, by three independent routes:
//!
//! * character tables ([`characters`]),
//! * operators acting on Schur functions ([`kron_ops`]),
//! * enumeration of Kronecker tableaux and closed formulas for the powers of
//!   `chi^(n-1,1)` ([`tableaux`], [`enumeration`]).

pub mod arith;
pub mod characters;
pub mod enumeration;
pub mod error;
pub mod kron_ops;
pub mod partition;
pub mod symfunc;
pub mod tableaux;

pub use characters::{character_table, character_value, kron_coefficient, kron_product, CharacterTable};
pub use enumeration::{egf_check, egf_rhs, multiplicity_formula, p2, EgfReport, TruncatedEgf};
pub use error::{Error, Result};
pub use kron_ops::{build_operator, kron_power_nm1, kron_product_via_operator, KroneckerOperator};
pub use partition::{partitions_of, Cell, CornerSet, Partition};
pub use symfunc::{HMonomial, SchurSum};
pub use tableaux::{
    count_kronecker_tableaux, from_pair, list_kronecker_tableaux, to_pair, DecCyclePermutation, KroneckerPair,
    KroneckerTableau, PartialStandardTableau, ReducedWalk,
};
