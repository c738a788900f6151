//! Operators on Schur functions that realize Kronecker products without
//! character tables.
//!
//! For a truncated partition `λ̄ = (λ_2, ..., λ_m)` the determinant whose
//! first row is all ones and whose row `i >= 2` reads `h_{λ_i - i + j}` is
//! expanded, and every monomial `h_α` is replaced by the sum over
//! `ν_j ⊢ α_j` of `(∏ s_ν)(∏ s_ν^⊥)`. The resulting operator sends `s_μ` to
//! `s_λ ⊙ s_μ` for every `λ` with that truncation, whatever its first part.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::symfunc::{apply_composite, expand_h_determinant, for_each_partition_tuple, HEntry, SchurSum};

/// One composite `(∏ s_ν)(∏ s_ν^⊥)`, scaled by `coeff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorTerm {
    pub coeff: BigInt,
    pub nus: Vec<Partition>,
}

/// A signed sum of composite multiply/skew terms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KroneckerOperator {
    pub terms: Vec<OperatorTerm>,
}

impl KroneckerOperator {
    pub fn identity() -> Self {
        KroneckerOperator { terms: vec![OperatorTerm { coeff: BigInt::one(), nus: Vec::new() }] }
    }

    /// Sorts each term's factors canonically and merges equal factor lists.
    ///
    /// Multiplications commute among themselves, as do skews, so this never
    /// changes the operator.
    pub fn normalized(&self) -> Self {
        let mut merged: BTreeMap<Vec<Partition>, BigInt> = BTreeMap::new();
        for t in &self.terms {
            let mut nus: Vec<Partition> = t.nus.iter().filter(|p| !p.is_empty()).cloned().collect();
            nus.sort();
            *merged.entry(nus).or_default() += &t.coeff;
        }
        let mut terms: Vec<OperatorTerm> =
            merged.into_iter().filter(|(_, c)| !c.is_zero()).map(|(nus, coeff)| OperatorTerm { coeff, nus }).collect();
        // longer composites first, the bare identity last
        terms.sort_by(|a, b| {
            let wa: usize = a.nus.iter().map(Partition::weight).sum();
            let wb: usize = b.nus.iter().map(Partition::weight).sum();
            wb.cmp(&wa).then_with(|| a.nus.cmp(&b.nus))
        });
        KroneckerOperator { terms }
    }

    pub fn apply(&self, f: &SchurSum) -> SchurSum {
        let mut out = SchurSum::zero(f.degree());
        for t in &self.terms {
            out += &apply_composite(&t.nus, f).scaled(&t.coeff);
        }
        out
    }
}

impl fmt::Display for KroneckerOperator {
    /// Renders e.g. `s[1] s[1]^⊥ - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i == 0 {
                if t.coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if t.coeff.is_negative() { "-" } else { "+" })?;
            }
            let mag = t.coeff.magnitude();
            if t.nus.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            let mults: Vec<String> = t.nus.iter().map(|p| format!("s{p}")).collect();
            let perps: Vec<String> = t.nus.iter().map(|p| format!("s{p}^⊥")).collect();
            write!(f, "{} {}", mults.join(" "), perps.join(" "))?;
        }
        Ok(())
    }
}

/// Builds the operator attached to the truncated partition `lambda_bar`.
///
/// Terms are left unmerged; see [`KroneckerOperator::normalized`].
pub fn build_operator(lambda_bar: &Partition) -> KroneckerOperator {
    let m = lambda_bar.len() + 1;
    let mut rows = vec![vec![HEntry::One; m]];
    for i in 2..=m {
        let part = lambda_bar.part(i - 1) as isize;
        rows.push((1..=m).map(|j| HEntry::H(part - i as isize + j as isize)).collect());
    }
    let mut terms = Vec::new();
    for mono in expand_h_determinant(&rows) {
        for_each_partition_tuple(mono.indices.parts(), |nus| {
            terms.push(OperatorTerm { coeff: mono.coeff.clone(), nus: nus.to_vec() });
        });
    }
    KroneckerOperator { terms }
}

/// `s_lambda ⊙ s_mu` computed as the operator of `λ̄` applied to `s_mu`.
pub fn kron_product_via_operator(lambda: &Partition, mu: &Partition) -> Result<SchurSum> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch { left: lambda.clone(), right: mu.clone() });
    }
    Ok(build_operator(&lambda.truncated()).normalized().apply(&SchurSum::schur(mu)))
}

/// `U_(1)^k s_(n)`: the Frobenius image of `(chi^(n-1,1))^{⊗k}`.
pub fn kron_power_nm1(n: usize, k: usize) -> Result<SchurSum> {
    if n < 2 {
        return Err(Error::Precondition(format!("n must be at least 2, got {n}")));
    }
    let op = build_operator(&Partition::from_parts(&[1])).normalized();
    let mut f = SchurSum::schur(&Partition::row(n));
    for _ in 0..k {
        f = op.apply(&f);
    }
    Ok(f)
}
