use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{Cell, Partition};

/// A filling of a Ferrers diagram by distinct positive labels, increasing
/// along rows and up columns. `rows[0]` is the bottom (longest) row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PartialStandardTableau {
    rows: Vec<Vec<u32>>,
}

impl PartialStandardTableau {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidTableau(msg));
        let mut seen = BTreeSet::new();
        for (r, row) in rows.iter().enumerate() {
            if row.is_empty() {
                return bad(format!("row {} is empty", r + 1));
            }
            if r > 0 && row.len() > rows[r - 1].len() {
                return bad(format!("row {} is longer than the row below it", r + 1));
            }
            for (c, &x) in row.iter().enumerate() {
                if x == 0 {
                    return bad("labels must be positive".into());
                }
                if !seen.insert(x) {
                    return Err(Error::DuplicateLabel(x));
                }
                if c > 0 && row[c - 1] >= x {
                    return bad(format!("row {} is not increasing", r + 1));
                }
                if r > 0 && rows[r - 1][c] >= x {
                    return bad(format!("column {} is not increasing", c + 1));
                }
            }
        }
        Ok(PartialStandardTableau { rows })
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("rows weakly decrease")
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn labels(&self) -> BTreeSet<u32> {
        self.rows.iter().flatten().copied().collect()
    }

    pub fn position(&self, label: u32) -> Option<Cell> {
        self.rows
            .iter()
            .enumerate()
            .find_map(|(r, row)| row.iter().position(|&x| x == label).map(|c| Cell::new(r + 1, c + 1)))
    }

    pub fn get(&self, cell: Cell) -> Option<u32> {
        self.rows.get(cell.row.checked_sub(1)?)?.get(cell.col.checked_sub(1)?).copied()
    }

    /// Row insertion of `x`. Returns the cell the shape grew by.
    pub fn insert(&mut self, x: u32) -> Result<Cell> {
        if x == 0 {
            return Err(Error::InvalidTableau("labels must be positive".into()));
        }
        if self.position(x).is_some() {
            return Err(Error::DuplicateLabel(x));
        }
        let mut carry = x;
        for (r, row) in self.rows.iter_mut().enumerate() {
            match row.iter().position(|&y| y > carry) {
                Some(c) => carry = std::mem::replace(&mut row[c], carry),
                None => {
                    row.push(carry);
                    return Ok(Cell::new(r + 1, row.len()));
                }
            }
        }
        self.rows.push(vec![carry]);
        Ok(Cell::new(self.rows.len(), 1))
    }

    /// Reverse row insertion from the corner `cell`; returns the label that
    /// leaves through the bottom row.
    pub fn delete(&mut self, cell: Cell) -> Result<u32> {
        if !self.shape().is_corner(cell) {
            return Err(Error::NotACorner { partition: self.shape(), cell });
        }
        let r = cell.row - 1;
        let mut carry = self.rows[r].pop().expect("corner");
        if self.rows[r].is_empty() {
            self.rows.pop();
        }
        for row in self.rows[..r].iter_mut().rev() {
            let c = row.iter().rposition(|&y| y < carry).expect("column strictness");
            carry = std::mem::replace(&mut row[c], carry);
        }
        Ok(carry)
    }

    /// Removes the label at a corner without any bumping.
    pub fn remove_corner(&mut self, cell: Cell) -> Result<u32> {
        if !self.shape().is_corner(cell) {
            return Err(Error::NotACorner { partition: self.shape(), cell });
        }
        let x = self.rows[cell.row - 1].pop().expect("corner");
        if self.rows[cell.row - 1].is_empty() {
            self.rows.pop();
        }
        Ok(x)
    }

    /// Places `label`, larger than every present label, at addable `cell`.
    pub fn add_largest(&mut self, cell: Cell, label: u32) -> Result<()> {
        if self.rows.iter().flatten().any(|&x| x >= label) {
            return Err(Error::InvalidTableau(format!("{label} is not the largest label")));
        }
        if !self.shape().addable_cells().contains(&cell) {
            return Err(Error::InvalidTableau(format!("{cell} is not addable to {}", self.shape())));
        }
        if cell.row > self.rows.len() {
            self.rows.push(vec![label]);
        } else {
            self.rows[cell.row - 1].push(label);
        }
        Ok(())
    }
}

/// Rows top to bottom, separated by `/`, e.g. `8,12/4,10`.
impl fmt::Display for PartialStandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "∅");
        }
        let rows: Vec<String> =
            self.rows.iter().rev().map(|row| row.iter().map(u32::to_string).collect::<Vec<_>>().join(",")).collect();
        write!(f, "{}", rows.join("/"))
    }
}

impl FromStr for PartialStandardTableau {
    type Err = Error;

    /// Parses the [`Display`](fmt::Display) form; `∅` or `-` is empty.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" || s == "-" {
            return Ok(Self::empty());
        }
        let mut rows = s
            .split('/')
            .map(|row| {
                row.split(',')
                    .map(|x| x.trim().parse::<u32>().map_err(|_| Error::InvalidTableau(format!("bad label `{x}`"))))
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        rows.reverse();
        Self::new(rows)
    }
}

impl Serialize for PartialStandardTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            shape: Partition,
            rows: &'a [Vec<u32>],
        }
        Repr { shape: self.shape(), rows: &self.rows }.serialize(s)
    }
}
