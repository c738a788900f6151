//! Homogeneous symmetric functions in the Schur basis.
//!
//! Products and skews go through the Littlewood–Richardson rule; the complete
//! homogeneous functions `h_r` enter through Jacobi–Trudi determinants and
//! Pieri chains.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::{partitions_containing, partitions_of, Cell, Partition};

/// A finite integer combination of Schur functions of one common degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchurSum {
    degree: usize,
    terms: BTreeMap<Partition, BigInt>,
}

impl SchurSum {
    pub fn zero(degree: usize) -> Self {
        SchurSum { degree, terms: BTreeMap::new() }
    }

    /// The single Schur function `s_p`.
    pub fn schur(p: &Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(p.clone(), BigInt::one());
        SchurSum { degree: p.weight(), terms }
    }

    /// Collects `(partition, coefficient)` pairs; all partitions must share `degree`.
    pub fn from_terms<I, C>(degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Partition, C)>,
        C: Into<BigInt>,
    {
        let mut out = SchurSum::zero(degree);
        for (p, c) in terms {
            out.add_term(p, c.into());
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `s_p`; zero when absent.
    pub fn coeff(&self, p: &Partition) -> BigInt {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    /// Terms in canonical partition order.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, p: Partition, c: BigInt) {
        assert_eq!(p.weight(), self.degree, "inhomogeneous term {p} in degree {}", self.degree);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scaled(&self, c: &BigInt) -> SchurSum {
        if c.is_zero() {
            return SchurSum::zero(self.degree);
        }
        SchurSum { degree: self.degree, terms: self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect() }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Coefficient vector over all partitions of the degree, in canonical order.
    pub fn dense(&self) -> Vec<BigInt> {
        partitions_of(self.degree).iter().map(|p| self.coeff(p)).collect()
    }
}

impl AddAssign<&SchurSum> for SchurSum {
    fn add_assign(&mut self, rhs: &SchurSum) {
        if self.is_zero() && self.degree != rhs.degree {
            self.degree = rhs.degree;
        }
        if rhs.is_zero() {
            return;
        }
        for (p, c) in &rhs.terms {
            self.add_term(p.clone(), c.clone());
        }
    }
}

impl Add for &SchurSum {
    type Output = SchurSum;
    fn add(self, rhs: &SchurSum) -> SchurSum {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &SchurSum {
    type Output = SchurSum;
    fn neg(self) -> SchurSum {
        self.scaled(&BigInt::from(-1))
    }
}

impl Sub for &SchurSum {
    type Output = SchurSum;
    fn sub(self, rhs: &SchurSum) -> SchurSum {
        self + &(-rhs)
    }
}

impl Mul for &SchurSum {
    type Output = SchurSum;
    fn mul(self, rhs: &SchurSum) -> SchurSum {
        multiply(self, rhs)
    }
}

impl fmt::Display for SchurSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.magnitude();
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write!(f, "s{p}")?;
        }
        Ok(())
    }
}

struct JsonTerms<'a>(&'a BTreeMap<Partition, BigInt>);

impl Serialize for JsonTerms<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            partition: &'a Partition,
            coeff: String,
        }
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for (p, c) in self.0 {
            seq.serialize_element(&Term { partition: p, coeff: c.to_string() })?;
        }
        seq.end()
    }
}

/// `{"degree": n, "terms": [{"partition": [...], "coeff": "<decimal>"}]}`
impl Serialize for SchurSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("degree", &self.degree)?;
        map.serialize_entry("terms", &JsonTerms(&self.terms))?;
        map.end()
    }
}

// ---------------------------------------------------------------------------
// Littlewood–Richardson engine

type Expansion = Arc<BTreeMap<Partition, BigInt>>;

static SKEW_CACHE: LazyLock<RwLock<HashMap<(Partition, Partition), Expansion>>> = LazyLock::new(Default::default);
static PRODUCT_CACHE: LazyLock<RwLock<HashMap<(Partition, Partition), Expansion>>> = LazyLock::new(Default::default);

fn cached<F>(
    cache: &RwLock<HashMap<(Partition, Partition), Expansion>>,
    key: (Partition, Partition),
    compute: F,
) -> Expansion
where
    F: FnOnce(&Partition, &Partition) -> BTreeMap<Partition, BigInt>,
{
    if let Some(hit) = cache.read().unwrap().get(&key) {
        return hit.clone();
    }
    let value = Arc::new(compute(&key.0, &key.1));
    cache.write().unwrap().entry(key).or_insert(value).clone()
}

/// Expansion of the skew Schur function `s_{outer/inner}` in the Schur basis.
///
/// Enumerates LR tableaux of shape `outer/inner`: semistandard fillings whose
/// reading word (row 1 right to left, then row 2, ...) is a lattice word.
pub fn skew_expansion(outer: &Partition, inner: &Partition) -> Expansion {
    cached(&SKEW_CACHE, (outer.clone(), inner.clone()), enumerate_lr_fillings)
}

fn enumerate_lr_fillings(outer: &Partition, inner: &Partition) -> BTreeMap<Partition, BigInt> {
    let mut out = BTreeMap::new();
    if !outer.contains(inner) {
        return out;
    }
    if inner.is_empty() {
        out.insert(outer.clone(), BigInt::one());
        return out;
    }
    let cells: Vec<Cell> = (1..=outer.len())
        .flat_map(|r| {
            let lo = inner.part(r);
            (lo + 1..=outer.part(r)).rev().map(move |c| Cell::new(r, c))
        })
        .collect();
    if cells.is_empty() {
        out.insert(Partition::empty(), BigInt::one());
        return out;
    }

    struct Search<'a> {
        outer: &'a Partition,
        inner: &'a Partition,
        cells: Vec<Cell>,
        grid: Vec<Vec<usize>>,
        content: Vec<usize>,
        out: BTreeMap<Partition, u64>,
    }

    impl Search<'_> {
        fn in_skew(&self, r: usize, c: usize) -> bool {
            r >= 1 && c > self.inner.part(r) && c <= self.outer.part(r)
        }

        fn run(&mut self, idx: usize) {
            if idx == self.cells.len() {
                let content = Partition::from_unsorted(self.content.clone());
                *self.out.entry(content).or_insert(0) += 1;
                return;
            }
            let Cell { row, col } = self.cells[idx];
            let max_value = self.content.iter().take_while(|&&m| m > 0).count() + 1;
            let mut hi = max_value;
            if self.in_skew(row, col + 1) {
                hi = hi.min(self.grid[row - 1][col]);
            }
            let mut lo = 1;
            if self.in_skew(row - 1, col) {
                lo = self.grid[row - 2][col - 1] + 1;
            }
            for v in lo..=hi {
                if v >= 2 && self.content[v - 1] + 1 > self.content[v - 2] {
                    continue;
                }
                self.content[v - 1] += 1;
                self.grid[row - 1][col - 1] = v;
                self.run(idx + 1);
                self.content[v - 1] -= 1;
            }
            self.grid[row - 1][col - 1] = 0;
        }
    }

    let n = cells.len();
    let mut search = Search {
        outer,
        inner,
        grid: (1..=outer.len()).map(|r| vec![0; outer.part(r)]).collect(),
        cells,
        content: vec![0; n + 1],
        out: BTreeMap::new(),
    };
    search.run(0);
    search.out.into_iter().map(|(p, c)| (p, BigInt::from(c))).collect()
}

/// Expansion of `s_a * s_b` in the Schur basis.
pub fn schur_product(a: &Partition, b: &Partition) -> Expansion {
    // LR symmetry: skew by the larger factor, which leaves fewer cells to fill
    let (big, small) = if (a.weight(), a) >= (b.weight(), b) { (a, b) } else { (b, a) };
    cached(&PRODUCT_CACHE, (big.clone(), small.clone()), |big, small| {
        let n = big.weight() + small.weight();
        if small.is_empty() {
            return BTreeMap::from([(big.clone(), BigInt::one())]);
        }
        let union = Partition::from_unsorted(
            (1..=big.len().max(small.len())).map(|r| big.part(r).max(small.part(r))).collect(),
        );
        partitions_containing(n, &union, big.len() + small.len(), big.part(1) + small.part(1))
            .into_iter()
            .filter_map(|mu| {
                let c = skew_expansion(&mu, big).get(small).cloned()?;
                Some((mu, c))
            })
            .collect()
    })
}

/// `LR^mu_{gamma, alpha}`: the coefficient of `s_mu` in `s_gamma * s_alpha`.
pub fn lr_coefficient(gamma: &Partition, alpha: &Partition, mu: &Partition) -> BigUint {
    if gamma.weight() + alpha.weight() != mu.weight() || !mu.contains(gamma) {
        return BigUint::zero();
    }
    skew_expansion(mu, gamma).get(alpha).map(|c| c.magnitude().clone()).unwrap_or_default()
}

/// Bilinear product of Schur sums.
pub fn multiply(f: &SchurSum, g: &SchurSum) -> SchurSum {
    let mut out = SchurSum::zero(f.degree + g.degree);
    for (a, ca) in &f.terms {
        for (b, cb) in &g.terms {
            let coeff = ca * cb;
            for (mu, c) in schur_product(a, b).iter() {
                out.add_term(mu.clone(), &coeff * c);
            }
        }
    }
    out
}

/// Multiplication by the single Schur function `s_nu`.
pub fn multiply_by(nu: &Partition, f: &SchurSum) -> SchurSum {
    multiply(&SchurSum::schur(nu), f)
}

/// The skewing operator `s_gamma^perp`, adjoint to multiplication by `s_gamma`.
pub fn perp(gamma: &Partition, f: &SchurSum) -> SchurSum {
    let degree = f.degree.saturating_sub(gamma.weight());
    let mut out = SchurSum::zero(degree);
    if gamma.weight() > f.degree {
        return out;
    }
    for (lambda, c) in &f.terms {
        for (alpha, d) in skew_expansion(lambda, gamma).iter() {
            out.add_term(alpha.clone(), c * d);
        }
    }
    out
}

/// Hall scalar product; Schur functions are orthonormal.
pub fn scalar(f: &SchurSum, g: &SchurSum) -> BigInt {
    if f.degree != g.degree {
        return BigInt::zero();
    }
    f.terms.iter().filter_map(|(p, c)| g.terms.get(p).map(|d| c * d)).sum()
}

/// `(s_{nu_1} ... s_{nu_r}) (s_{nu_1}^perp ... s_{nu_r}^perp) f`: all perps
/// first, then all multiplications.
pub fn apply_composite(nus: &[Partition], f: &SchurSum) -> SchurSum {
    let skewed = nus.iter().fold(f.clone(), |acc, nu| perp(nu, &acc));
    nus.iter().fold(skewed, |acc, nu| multiply_by(nu, &acc))
}

// ---------------------------------------------------------------------------
// Complete homogeneous functions

/// A signed product `coeff * h_{indices}` of complete homogeneous functions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HMonomial {
    pub indices: Partition,
    pub coeff: BigInt,
}

impl fmt::Display for HMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} h{}", self.coeff, self.indices)
    }
}

/// Entry of a determinant of `h`'s; `H(0)` counts as 1 and `H(r < 0)` as 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum HEntry {
    One,
    H(isize),
}

/// Laplace expansion over permutations of a square matrix of `h` entries,
/// merged by monomial and returned in canonical order.
pub(crate) fn expand_h_determinant(rows: &[Vec<HEntry>]) -> Vec<HMonomial> {
    fn rec(
        rows: &[Vec<HEntry>],
        row: usize,
        used: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        indices: &mut Vec<usize>,
        acc: &mut BTreeMap<Partition, BigInt>,
    ) {
        if row == rows.len() {
            let inversions = (0..chosen.len())
                .flat_map(|i| (i + 1..chosen.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| chosen[i] > chosen[j])
                .count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            let key = Partition::from_unsorted(indices.clone());
            *acc.entry(key).or_default() += sign;
            return;
        }
        for col in 0..rows.len() {
            if used[col] {
                continue;
            }
            let pushed = match rows[row][col] {
                HEntry::One | HEntry::H(0) => false,
                HEntry::H(r) if r < 0 => continue,
                HEntry::H(r) => {
                    indices.push(r as usize);
                    true
                }
            };
            used[col] = true;
            chosen.push(col);
            rec(rows, row + 1, used, chosen, indices, acc);
            chosen.pop();
            used[col] = false;
            if pushed {
                indices.pop();
            }
        }
    }
    let mut acc = BTreeMap::new();
    rec(rows, 0, &mut vec![false; rows.len()], &mut Vec::new(), &mut Vec::new(), &mut acc);
    acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(indices, coeff)| HMonomial { indices, coeff }).collect()
}

/// `s_lambda = det(h_{lambda_i - i + j})`, expanded into signed `h` monomials.
pub fn jacobi_trudi(lambda: &Partition) -> Vec<HMonomial> {
    let m = lambda.len();
    let rows: Vec<Vec<HEntry>> = (1..=m)
        .map(|i| (1..=m).map(|j| HEntry::H(lambda.part(i) as isize - i as isize + j as isize)).collect())
        .collect();
    expand_h_determinant(&rows)
}

/// Schur expansion of `h_indices` by successive Pieri rules (horizontal strips).
pub fn h_to_schur(indices: &Partition) -> SchurSum {
    let mut current = SchurSum::schur(&Partition::empty());
    for &r in indices.parts() {
        let mut next = SchurSum::zero(current.degree + r);
        for (lambda, c) in &current.terms {
            for mu in horizontal_strips(lambda, r) {
                next.add_term(mu, c.clone());
            }
        }
        current = next;
    }
    current
}

/// All `mu` with `mu / lambda` a horizontal strip of `r` cells.
fn horizontal_strips(lambda: &Partition, r: usize) -> Vec<Partition> {
    fn rec(lambda: &Partition, row: usize, left: usize, parts: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if row > lambda.len() + 1 {
            if left == 0 {
                out.push(Partition::from_unsorted(parts.clone()));
            }
            return;
        }
        let base = lambda.part(row);
        // a horizontal strip never passes the row below's original length
        let cap = if row == 1 { left } else { (lambda.part(row - 1) - base).min(left) };
        for add in (0..=cap).rev() {
            parts.push(base + add);
            rec(lambda, row + 1, left - add, parts, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    rec(lambda, 1, r, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Visits every tuple `(nu_1 |- parts[0], nu_2 |- parts[1], ...)`.
pub(crate) fn for_each_partition_tuple<F: FnMut(&[Partition])>(parts: &[usize], mut visit: F) {
    fn rec<F: FnMut(&[Partition])>(parts: &[usize], acc: &mut Vec<Partition>, visit: &mut F) {
        match parts.split_first() {
            None => visit(acc),
            Some((&first, rest)) => {
                for nu in partitions_of(first) {
                    acc.push(nu);
                    rec(rest, acc, visit);
                    acc.pop();
                }
            }
        }
    }
    rec(parts, &mut Vec::new(), &mut visit);
}

/// `h_lambda ⊙ s_mu` (Frobenius image of the pointwise product of characters),
/// as the sum over `nu_i |- lambda_i`, `i >= 2`, of the composite
/// `(prod s_nu)(prod s_nu^perp) s_mu`.
pub fn h_inner_s(lambda: &Partition, mu: &Partition) -> Result<SchurSum> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch { left: lambda.clone(), right: mu.clone() });
    }
    let start = SchurSum::schur(mu);
    let mut out = SchurSum::zero(mu.weight());
    let tail = &lambda.parts()[lambda.len().min(1)..];
    for_each_partition_tuple(tail, |nus| {
        out += &apply_composite(nus, &start);
    });
    Ok(out)
}
