//! Integer partitions and the geometry of their Ferrers diagrams.
//!
//! Diagrams are drawn in French convention: row 1 is the longest row at the
//! bottom, rows are numbered upwards and columns from the left, both 1-based.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::factorial;
use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// `Ord` is the canonical order used for every table and formal sum:
/// reverse lexicographic, so `[4] < [3,1] < [2,2] < [2,1,1] < [1,1,1,1]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

/// A cell of a Ferrers diagram, 1-based, row 1 being the longest row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.row, self.col)
    }
}

/// The corners of a diagram, ordered by row, with the first corner flagged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerSet {
    pub corners: Vec<Cell>,
    pub first_corner: Option<Cell>,
}

impl CornerSet {
    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.corners.contains(&cell)
    }

    /// Corners other than the first corner.
    pub fn non_first(&self) -> impl Iterator<Item = Cell> + '_ {
        self.corners.iter().copied().filter(move |c| Some(*c) != self.first_corner)
    }
}

impl Partition {
    /// Builds a partition, rejecting zero parts and increasing sequences.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from parts already known to be valid.
    ///
    /// Panics on invalid input; meant for literals and internal code.
    pub fn from_parts(parts: &[usize]) -> Self {
        Partition::new(parts.to_vec()).expect("valid partition")
    }

    /// Sorts arbitrary nonnegative integers into a partition, dropping zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts (rows).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of row `row` (1-based); zero past the last row.
    pub fn part(&self, row: usize) -> usize {
        if row == 0 {
            return 0;
        }
        self.parts.get(row - 1).copied().unwrap_or(0)
    }

    pub fn contains_cell(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.part(cell.row)
    }

    /// Whether the diagram of `self` contains the diagram of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(1);
        let parts = (1..=width).map(|c| self.parts.iter().filter(|&&p| p >= c).count()).collect();
        Partition { parts }
    }

    /// The partition with its largest part removed.
    pub fn truncated(&self) -> Partition {
        Partition { parts: self.parts.iter().skip(1).copied().collect() }
    }

    /// Prepends a new first row; fails if it would be shorter than row 1.
    pub fn with_first_row(&self, len: usize) -> Result<Partition> {
        let mut parts = Vec::with_capacity(self.len() + 1);
        parts.push(len);
        parts.extend_from_slice(&self.parts);
        Partition::new(parts)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &len)| (1..=len).map(move |c| Cell::new(i + 1, c)))
    }

    /// Cells at the end of a row with no cell above them.
    pub fn corners(&self) -> CornerSet {
        let mut corners = Vec::new();
        for (i, &len) in self.parts.iter().enumerate() {
            if self.part(i + 2) < len {
                corners.push(Cell::new(i + 1, len));
            }
        }
        // the topmost row of maximal length
        let first_corner = self.parts.first().map(|&width| {
            let rows = self.parts.iter().take_while(|&&p| p == width).count();
            Cell::new(rows, width)
        });
        CornerSet { corners, first_corner }
    }

    pub fn is_corner(&self, cell: Cell) -> bool {
        self.contains_cell(cell) && cell.col == self.part(cell.row) && self.part(cell.row + 1) < cell.col
    }

    /// Cells that can be added while keeping a partition, ordered by row.
    pub fn addable_cells(&self) -> Vec<Cell> {
        (1..=self.len() + 1)
            .filter(|&r| r == 1 || self.part(r - 1) > self.part(r))
            .map(|r| Cell::new(r, self.part(r) + 1))
            .collect()
    }

    pub fn remove_corner(&self, cell: Cell) -> Result<Partition> {
        if !self.is_corner(cell) {
            return Err(Error::NotACorner { partition: self.clone(), cell });
        }
        let mut parts = self.parts.clone();
        parts[cell.row - 1] -= 1;
        if parts[cell.row - 1] == 0 {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn add_cell(&self, cell: Cell) -> Result<Partition> {
        if !self.addable_cells().contains(&cell) {
            return Err(Error::Precondition(format!("cell {cell} cannot be added to {self}")));
        }
        let mut parts = self.parts.clone();
        if cell.row > parts.len() {
            parts.push(1);
        } else {
            parts[cell.row - 1] += 1;
        }
        Ok(Partition { parts })
    }

    /// All partitions obtained by adding one cell, in canonical order.
    pub fn add_corner_positions(&self) -> Vec<Partition> {
        self.addable_cells().into_iter().map(|c| self.add_cell(c).expect("addable")).collect()
    }

    /// Multiplicity of each part size.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `z_mu = prod_i i^{m_i} m_i!`, the order of the centralizer.
    pub fn z(&self) -> BigUint {
        self.multiplicities()
            .into_iter()
            .fold(BigUint::from(1u32), |acc, (i, m)| acc * BigUint::from(i).pow(m as u32) * factorial(m))
    }

    /// Size of the conjugacy class of cycle type `self` in `S_n`.
    pub fn class_size(&self) -> BigUint {
        let (q, r) = factorial(self.weight()).div_rem(&self.z());
        debug_assert!(r == BigUint::from(0u32));
        q
    }

    pub fn hook_length(&self, cell: Cell) -> usize {
        let arm = self.part(cell.row) - cell.col;
        let leg = self.parts[cell.row..].iter().filter(|&&p| p >= cell.col).count();
        arm + leg + 1
    }

    /// Number of standard tableaux of this shape, by the hook-length formula.
    pub fn standard_tableaux_count(&self) -> BigUint {
        let hooks = self.cells().fold(BigUint::from(1u32), |acc, c| acc * BigUint::from(self.hook_length(c)));
        factorial(self.weight()) / hooks
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses the bracketed form `[4,4,2,1]`; `[]` is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidPartition(format!("expected `[a,b,...]`, got `{s}`")))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part `{}` in `{s}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in canonical (reverse lexicographic) order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: current.clone() });
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            current.push(p);
            rec(remaining - p, p, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `n` whose diagram contains `inner` and fits inside
/// `bound_rows` rows and `bound_cols` columns.
pub(crate) fn partitions_containing(
    n: usize,
    inner: &Partition,
    bound_rows: usize,
    bound_cols: usize,
) -> Vec<Partition> {
    fn rec(
        row: usize,
        remaining: usize,
        max: usize,
        inner: &Partition,
        bound_rows: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        let floor = inner.part(row);
        if remaining == 0 {
            if floor == 0 {
                out.push(Partition { parts: current.clone() });
            }
            return;
        }
        if row > bound_rows {
            return;
        }
        for p in (floor.max(1)..=remaining.min(max)).rev() {
            current.push(p);
            rec(row + 1, remaining - p, p, inner, bound_rows, current, out);
            current.pop();
        }
    }
    if inner.weight() > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(1, n, bound_cols, inner, bound_rows, &mut Vec::new(), &mut out);
    out
}
