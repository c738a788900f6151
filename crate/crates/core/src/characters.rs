//! Irreducible characters of `S_n` and the character-table route to
//! Kronecker coefficients.
//!
//! Values come from the Murnaghan–Nakayama rule on beta-sets. Every
//! projection onto irreducibles divides by `n!` exactly and reports a
//! non-integral sum as an error instead of rounding.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::symfunc::SchurSum;

static CHAR_CACHE: LazyLock<RwLock<HashMap<(Partition, Partition), BigInt>>> = LazyLock::new(Default::default);
static TABLE_CACHE: LazyLock<RwLock<HashMap<usize, Arc<CharacterTable>>>> = LazyLock::new(Default::default);

/// `chi^lambda_mu`, the value of the irreducible character `lambda` on the
/// conjugacy class of cycle type `mu`.
pub fn character_value(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch { left: lambda.clone(), right: mu.clone() });
    }
    Ok(mn(lambda, mu.parts()))
}

fn mn(lambda: &Partition, cycles: &[usize]) -> BigInt {
    let Some((&r, rest)) = cycles.split_first() else {
        return BigInt::one();
    };
    let key = (lambda.clone(), Partition::from_parts(cycles));
    if let Some(v) = CHAR_CACHE.read().unwrap().get(&key) {
        return v.clone();
    }

    let len = lambda.len();
    let beta: Vec<usize> = (1..=len).map(|i| lambda.part(i) + len - i).collect();
    let mut total = BigInt::zero();
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        // beta numbers strictly between target and b give the leg length
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[idx] = target;
        next.sort_unstable_by(|x, y| y.cmp(x));
        let parts: Vec<usize> = next.iter().enumerate().map(|(i, &x)| x - (len - 1 - i)).collect();
        let smaller = Partition::from_unsorted(parts);
        let value = mn(&smaller, rest);
        if height % 2 == 0 {
            total += value;
        } else {
            total -= value;
        }
    }
    CHAR_CACHE.write().unwrap().insert(key, total.clone());
    total
}

/// The full table of `S_n`, rows indexed by characters and columns by
/// cycle types, both in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    pub n: usize,
    pub partitions: Vec<Partition>,
    pub values: Vec<Vec<BigInt>>,
}

impl CharacterTable {
    fn index(&self, p: &Partition) -> Option<usize> {
        self.partitions.binary_search(p).ok()
    }

    /// `chi^lambda_mu`, or `None` if either is not a partition of `n`.
    pub fn get(&self, lambda: &Partition, mu: &Partition) -> Option<&BigInt> {
        Some(&self.values[self.index(lambda)?][self.index(mu)?])
    }

    pub fn row(&self, lambda: &Partition) -> Option<&[BigInt]> {
        self.index(lambda).map(|i| self.values[i].as_slice())
    }

    /// Aligned text rendering with the cycle types as column headers.
    pub fn to_ascii(&self) -> String {
        let header = "lambda\\mu".to_string();
        let labels: Vec<String> = self.partitions.iter().map(|p| p.to_string()).collect();
        let cells: Vec<Vec<String>> =
            self.values.iter().map(|row| row.iter().map(|v| v.to_string()).collect()).collect();
        let first = labels.iter().map(String::len).chain([header.len()]).max().unwrap_or(0);
        let widths: Vec<usize> = (0..labels.len())
            .map(|j| cells.iter().map(|r| r[j].len()).chain([labels[j].len()]).max().unwrap())
            .collect();
        let mut out = String::new();
        let mut line = format!("{header:<first$} |");
        for (j, l) in labels.iter().enumerate() {
            line.push_str(&format!(" {l:>w$}", w = widths[j]));
        }
        out.push_str(line.trim_end());
        out.push('\n');
        out.push_str(&"-".repeat(line.trim_end().len()));
        out.push('\n');
        for (i, row) in cells.iter().enumerate() {
            let mut line = format!("{:<first$} |", labels[i]);
            for (j, v) in row.iter().enumerate() {
                line.push_str(&format!(" {v:>w$}", w = widths[j]));
            }
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

impl Serialize for CharacterTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json<'a> {
            n: usize,
            partitions: &'a [Partition],
            values: Vec<Vec<String>>,
        }
        Json {
            n: self.n,
            partitions: &self.partitions,
            values: self.values.iter().map(|row| row.iter().map(|v| v.to_string()).collect()).collect(),
        }
        .serialize(serializer)
    }
}

impl fmt::Display for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

/// The character table of `S_n`, memoized per `n`.
pub fn character_table(n: usize) -> Arc<CharacterTable> {
    if let Some(t) = TABLE_CACHE.read().unwrap().get(&n) {
        return t.clone();
    }
    let partitions = partitions_of(n);
    let values = partitions.iter().map(|lambda| partitions.iter().map(|mu| mn(lambda, mu.parts())).collect()).collect();
    let table = Arc::new(CharacterTable { n, partitions, values });
    TABLE_CACHE.write().unwrap().entry(n).or_insert(table).clone()
}

/// Exact division of a character sum by `n!`.
fn divide_exact(numerator: BigInt, n: usize) -> Result<BigInt> {
    let denominator = BigInt::from(factorial(n));
    let (q, r) = numerator.div_rem(&denominator);
    if !r.is_zero() {
        return Err(Error::NonIntegral { numerator: numerator.to_string(), denominator: denominator.to_string() });
    }
    Ok(q)
}

/// Expands a class function of `S_n` (values per cycle type, canonical
/// order) in the irreducible characters, returned as its Frobenius image.
pub fn frobenius_image(n: usize, class_function: &[BigInt]) -> Result<SchurSum> {
    let table = character_table(n);
    assert_eq!(class_function.len(), table.partitions.len(), "class function length");
    let weighted: Vec<BigInt> =
        table.partitions.iter().zip(class_function).map(|(gamma, v)| BigInt::from(gamma.class_size()) * v).collect();
    let mut out = SchurSum::zero(n);
    for (alpha, row) in table.partitions.iter().zip(&table.values) {
        let numerator: BigInt = weighted.iter().zip(row).map(|(w, chi)| w * chi).sum();
        out.add_term(alpha.clone(), divide_exact(numerator, n)?);
    }
    Ok(out)
}

/// The Kronecker coefficient `t^alpha_{lambda, mu}`, the multiplicity of
/// `chi^alpha` in `chi^lambda ⊗ chi^mu`.
pub fn kron_coefficient(lambda: &Partition, mu: &Partition, alpha: &Partition) -> Result<BigUint> {
    for other in [mu, alpha] {
        if lambda.weight() != other.weight() {
            return Err(Error::WeightMismatch { left: lambda.clone(), right: other.clone() });
        }
    }
    let n = lambda.weight();
    let table = character_table(n);
    let (l, m, a) = (table.row(lambda).unwrap(), table.row(mu).unwrap(), table.row(alpha).unwrap());
    let numerator: BigInt = table
        .partitions
        .iter()
        .enumerate()
        .map(|(g, gamma)| BigInt::from(gamma.class_size()) * &l[g] * &m[g] * &a[g])
        .sum();
    let t = divide_exact(numerator, n)?;
    if t.is_negative() {
        return Err(Error::Precondition(format!("negative multiplicity {t}")));
    }
    Ok(t.magnitude().clone())
}

/// `s_lambda ⊙ s_mu` by the character table.
pub fn kron_product(lambda: &Partition, mu: &Partition) -> Result<SchurSum> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch { left: lambda.clone(), right: mu.clone() });
    }
    let n = lambda.weight();
    let table = character_table(n);
    let (l, m) = (table.row(lambda).unwrap(), table.row(mu).unwrap());
    let product: Vec<BigInt> = l.iter().zip(m).map(|(a, b)| a * b).collect();
    frobenius_image(n, &product)
}

/// Frobenius image of `(chi^(n-1,1))^{⊗k}` by pointwise powers of characters.
pub fn kron_power_oracle(n: usize, k: usize) -> Result<SchurSum> {
    if n < 2 {
        return Err(Error::Precondition(format!("n must be at least 2, got {n}")));
    }
    let table = character_table(n);
    let standard = Partition::from_parts(&[n - 1, 1]);
    let row = table.row(&standard).unwrap();
    let powers: Vec<BigInt> = row.iter().map(|v| v.pow(k as u32)).collect();
    frobenius_image(n, &powers)
}

/// Number of ways to distribute the (distinguishable) cycles of `gamma`
/// into the parts of `lambda` with exactly matching sums: the value on
/// `gamma` of the permutation character induced from the Young subgroup.
pub fn young_permutation_character(lambda: &Partition, gamma: &Partition) -> BigUint {
    fn rec(cycles: &[usize], room: &mut [usize]) -> BigUint {
        let Some((&c, rest)) = cycles.split_first() else {
            return if room.iter().all(|&r| r == 0) { BigUint::one() } else { BigUint::zero() };
        };
        let mut total = BigUint::zero();
        for i in 0..room.len() {
            if room[i] >= c {
                room[i] -= c;
                total += rec(rest, room);
                room[i] += c;
            }
        }
        total
    }
    if lambda.weight() != gamma.weight() {
        return BigUint::zero();
    }
    rec(gamma.parts(), &mut lambda.parts().to_vec())
}

/// `h_lambda ⊙ s_mu` through characters: pointwise product of the Young
/// permutation character of `lambda` with `chi^mu`.
pub fn h_kron_oracle(lambda: &Partition, mu: &Partition) -> Result<SchurSum> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch { left: lambda.clone(), right: mu.clone() });
    }
    let n = mu.weight();
    let table = character_table(n);
    let chi_mu = table.row(mu).unwrap();
    let values: Vec<BigInt> = table
        .partitions
        .iter()
        .zip(chi_mu)
        .map(|(gamma, chi)| BigInt::from(young_permutation_character(lambda, gamma)) * chi)
        .collect();
    frobenius_image(n, &values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::{h_inner_s, h_to_schur};

    fn p(parts: &[usize]) -> Partition {
        Partition::from_parts(parts)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn s4_table() {
        let t = character_table(4);
        let expected = [[1, 1, 1, 1, 1], [-1, 0, -1, 1, 3], [0, -1, 2, 0, 2], [1, 0, -1, -1, 3], [-1, 1, 1, -1, 1]];
        for (row, exp) in t.values.iter().zip(expected) {
            assert_eq!(row, &ints(&exp));
        }
        assert_eq!(character_value(&p(&[3, 1]), &p(&[2, 2])).unwrap(), BigInt::from(-1));
        assert_eq!(character_value(&p(&[2, 2]), &p(&[2, 2])).unwrap(), BigInt::from(2));
        assert!(character_value(&p(&[3, 1]), &p(&[2, 2, 1])).is_err());
    }

    #[test]
    fn small_tables() {
        assert_eq!(character_table(1).values, vec![vec![BigInt::one()]]);
        let t5 = character_table(5);
        assert!(t5.row(&p(&[5])).unwrap().iter().all(|v| v.is_one()));
    }

    #[test]
    fn dimensions_and_orthogonality() {
        for n in 1..=7 {
            let t = character_table(n);
            let ones = Partition::from_parts(&vec![1; n]);
            let sizes: Vec<BigInt> = t.partitions.iter().map(|g| BigInt::from(g.class_size())).collect();
            let nfact = BigInt::from(factorial(n));
            for (i, a) in t.partitions.iter().enumerate() {
                assert_eq!(t.get(a, &ones).unwrap(), &BigInt::from(a.standard_tableaux_count()), "dimension of {a}");
                for (j, _) in t.partitions.iter().enumerate() {
                    let row: BigInt =
                        (0..t.partitions.len()).map(|g| &sizes[g] * &t.values[i][g] * &t.values[j][g]).sum();
                    assert_eq!(row, if i == j { nfact.clone() } else { BigInt::zero() });
                    // column orthogonality: sum over characters equals z_gamma delta
                    let col: BigInt = (0..t.partitions.len()).map(|l| &t.values[l][i] * &t.values[l][j]).sum();
                    let expect = if i == j { BigInt::from(t.partitions[i].z()) } else { BigInt::zero() };
                    assert_eq!(col, expect);
                }
            }
        }
    }

    #[test]
    fn example_square_of_standard() {
        let l = p(&[3, 1]);
        let got: Vec<u32> =
            partitions_of(4).iter().map(|a| kron_coefficient(&l, &l, a).unwrap().try_into().unwrap()).collect();
        assert_eq!(got, vec![1, 1, 1, 1, 0]);
    }

    #[test]
    fn trivial_factor() {
        for n in 1..=6 {
            for mu in partitions_of(n) {
                for alpha in partitions_of(n) {
                    let t = kron_coefficient(&Partition::row(n), &mu, &alpha).unwrap();
                    assert_eq!(t, if alpha == mu { BigUint::one() } else { BigUint::zero() });
                }
            }
        }
    }

    #[test]
    fn s3_symmetry() {
        for n in 1..=5 {
            let parts = partitions_of(n);
            for a in &parts {
                for b in &parts {
                    for c in &parts {
                        let t = kron_coefficient(a, b, c).unwrap();
                        for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                            assert_eq!(kron_coefficient(x, y, z).unwrap(), t);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn power_oracle() {
        let sq = kron_power_oracle(4, 2).unwrap();
        assert_eq!(sq, kron_product(&p(&[3, 1]), &p(&[3, 1])).unwrap());
        for n in 2..=6 {
            assert_eq!(kron_power_oracle(n, 0).unwrap(), SchurSum::schur(&Partition::row(n)));
        }
        assert_eq!(kron_power_oracle(4, 1).unwrap(), SchurSum::schur(&p(&[3, 1])));
        assert!(kron_power_oracle(1, 3).is_err());
    }

    #[test]
    fn permutation_character_is_frobenius_preimage_of_h() {
        for n in 1..=6 {
            for lambda in partitions_of(n) {
                let t = character_table(n);
                let values: Vec<BigInt> =
                    t.partitions.iter().map(|g| BigInt::from(young_permutation_character(&lambda, g))).collect();
                assert_eq!(frobenius_image(n, &values).unwrap(), h_to_schur(&lambda));
            }
        }
    }

    #[test]
    fn h_kron_matches_schur_side() {
        for n in 1..=6 {
            for lambda in partitions_of(n) {
                for mu in partitions_of(n) {
                    assert_eq!(
                        h_kron_oracle(&lambda, &mu).unwrap(),
                        h_inner_s(&lambda, &mu).unwrap(),
                        "h{lambda} ⊙ s{mu}"
                    );
                }
            }
        }
    }

    #[test]
    fn h_of_ones_gives_regular_multiplicities() {
        // h_(1^n) ⊙ s_mu = f^mu * sum_alpha f^alpha s_alpha (regular character times chi^mu)
        for n in 1..=4 {
            let ones = Partition::from_parts(&vec![1; n]);
            for mu in partitions_of(n) {
                let got = h_kron_oracle(&ones, &mu).unwrap();
                let f_mu = BigInt::from(mu.standard_tableaux_count());
                let expected = SchurSum::from_terms(
                    n,
                    partitions_of(n).into_iter().map(|a| {
                        let f = BigInt::from(a.standard_tableaux_count());
                        (a, &f_mu * f)
                    }),
                );
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn ascii_table_layout() {
        let text = character_table(4).to_ascii();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 7);
        assert!(lines[0].starts_with("lambda\\mu |"));
        let (label, values) = lines[3].split_once('|').unwrap();
        assert_eq!(label.trim(), "[3,1]");
        assert_eq!(values.split_whitespace().collect::<Vec<_>>(), ["-1", "0", "-1", "1", "3"]);
    }
}
