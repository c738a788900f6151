use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::{partitions_of, Cell, Partition};

/// Every legal next shape from `p`: each corner move once (canonical
/// order), then a stay for each corner other than the first corner.
pub fn successors(p: &Partition) -> Vec<(Partition, Option<Cell>)> {
    let corners = p.corners();
    let mut moved = BTreeSet::new();
    for &c in &corners.corners {
        let smaller = p.remove_corner(c).expect("corner");
        for d in smaller.addable_cells() {
            if d != c {
                moved.insert(smaller.add_cell(d).expect("addable"));
            }
        }
    }
    let mut out: Vec<(Partition, Option<Cell>)> = moved.into_iter().map(|q| (q, None)).collect();
    out.extend(corners.non_first().map(|c| (p.clone(), Some(c))));
    out
}

/// `next` is obtained from `prev` by moving one corner (and differs from it).
fn differs_by_corner_move(prev: &Partition, next: &Partition) -> bool {
    if prev == next || prev.weight() != next.weight() {
        return false;
    }
    let rows = prev.len().max(next.len());
    let diff: usize = (1..=rows).map(|r| prev.part(r).abs_diff(next.part(r))).sum();
    diff == 2
}

/// A walk `mu^0, ..., mu^k` of equal-weight shapes in which every step
/// moves a corner, or stays put with a distinguished corner other than the
/// first corner.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KroneckerTableau {
    shapes: Vec<Partition>,
    /// `marks[i - 1]` is the distinguished corner of step `i`.
    marks: Vec<Option<Cell>>,
}

impl KroneckerTableau {
    pub fn new(shapes: Vec<Partition>, marks: Vec<Option<Cell>>) -> Result<Self> {
        if shapes.is_empty() {
            return Err(Error::InvalidWalk("a walk needs at least one shape".into()));
        }
        if marks.len() + 1 != shapes.len() {
            return Err(Error::InvalidWalk(format!(
                "{} shapes need {} step marks, got {}",
                shapes.len(),
                shapes.len() - 1,
                marks.len()
            )));
        }
        for (i, (w, mark)) in shapes.windows(2).zip(&marks).enumerate() {
            let (prev, next) = (&w[0], &w[1]);
            let ok = match mark {
                None => differs_by_corner_move(prev, next),
                Some(c) => {
                    let corners = next.corners();
                    prev == next && corners.contains(*c) && corners.first_corner != Some(*c)
                }
            };
            if !ok {
                let shown = mark.map(|c| format!("*{c}")).unwrap_or_default();
                return Err(Error::InvalidWalk(format!("illegal step {}: {prev} -> {next}{shown}", i + 1)));
            }
        }
        Ok(KroneckerTableau { shapes, marks })
    }

    /// Number of steps `k`.
    pub fn length(&self) -> usize {
        self.marks.len()
    }

    pub fn weight(&self) -> usize {
        self.shapes[0].weight()
    }

    pub fn shapes(&self) -> &[Partition] {
        &self.shapes
    }

    pub fn marks(&self) -> &[Option<Cell>] {
        &self.marks
    }

    pub fn initial(&self) -> &Partition {
        &self.shapes[0]
    }

    pub fn final_shape(&self) -> &Partition {
        self.shapes.last().unwrap()
    }
}

fn write_walk(f: &mut fmt::Formatter<'_>, shapes: &[Partition], marks: &[Option<Cell>]) -> fmt::Result {
    for (i, shape) in shapes.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "{shape}")?;
        if let Some(Some(c)) = i.checked_sub(1).map(|s| marks[s]) {
            write!(f, "*{c}")?;
        }
    }
    Ok(())
}

fn parse_walk(s: &str) -> Result<(Vec<Partition>, Vec<Option<Cell>>)> {
    let mut shapes = Vec::new();
    let mut marks = Vec::new();
    for (i, token) in s.split_whitespace().enumerate() {
        let (shape, mark) = match token.split_once('*') {
            None => (token, None),
            Some((shape, mark)) => {
                let (r, c) = mark
                    .split_once(':')
                    .ok_or_else(|| Error::InvalidWalk(format!("bad mark `{mark}`, expected row:col")))?;
                let parse = |t: &str| t.parse::<usize>().map_err(|_| Error::InvalidWalk(format!("bad mark `{mark}`")));
                (shape, Some(Cell::new(parse(r)?, parse(c)?)))
            }
        };
        if i == 0 && mark.is_some() {
            return Err(Error::InvalidWalk("the initial shape cannot carry a mark".into()));
        }
        shapes.push(shape.parse::<Partition>()?);
        if i > 0 {
            marks.push(mark);
        }
    }
    // the empty partition renders as `[]`, so an empty line is no walk at all
    if shapes.is_empty() {
        return Err(Error::InvalidWalk("empty walk".into()));
    }
    Ok((shapes, marks))
}

/// One shape per token, e.g. `[5] [4,1] [4,1]*2:1 [3,2]`, with the
/// distinguished corner of a stay written `*row:col`.
impl fmt::Display for KroneckerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_walk(f, &self.shapes, &self.marks)
    }
}

impl FromStr for KroneckerTableau {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (shapes, marks) = parse_walk(s)?;
        KroneckerTableau::new(shapes, marks)
    }
}

/// Successor multiplicities between the partitions of `n`: entry
/// `(p, q)` counts the Kronecker steps from `p` to `q`.
#[derive(Debug, Clone)]
pub struct TransferMatrix {
    pub partitions: Vec<Partition>,
    /// Sparse rows: `(target index, multiplicity)`.
    pub rows: Vec<Vec<(usize, usize)>>,
}

impl TransferMatrix {
    pub fn new(n: usize) -> Self {
        let partitions = partitions_of(n);
        let rows = partitions
            .iter()
            .map(|p| {
                let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
                for (q, _) in successors(p) {
                    let idx = partitions.binary_search(&q).expect("same weight");
                    *counts.entry(idx).or_insert(0) += 1;
                }
                counts.into_iter().collect()
            })
            .collect();
        TransferMatrix { partitions, rows }
    }

    fn index(&self, p: &Partition) -> usize {
        self.partitions.binary_search(p).expect("partition of n")
    }

    /// Vector of walk counts `mu -> q` after `k` steps for every `q`.
    pub fn iterate(&self, mu: &Partition, k: usize) -> Vec<BigUint> {
        let mut v = vec![BigUint::zero(); self.partitions.len()];
        v[self.index(mu)] = BigUint::one();
        for _ in 0..k {
            let mut next = vec![BigUint::zero(); v.len()];
            for (i, count) in v.iter().enumerate() {
                if count.is_zero() {
                    continue;
                }
                for &(j, m) in &self.rows[i] {
                    next[j] += count * BigUint::from(m);
                }
            }
            v = next;
        }
        v
    }

    /// Counts of walks from every partition to `target` in `k` steps.
    fn reverse_counts(&self, target: &Partition, k: usize) -> Vec<Vec<BigUint>> {
        let size = self.partitions.len();
        let mut layers = vec![vec![BigUint::zero(); size]];
        layers[0][self.index(target)] = BigUint::one();
        for s in 1..=k {
            let prev = &layers[s - 1];
            let layer =
                (0..size).map(|i| self.rows[i].iter().map(|&(j, m)| &prev[j] * BigUint::from(m)).sum()).collect();
            layers.push(layer);
        }
        layers
    }
}

/// `|KT^k_{mu, lambda}|` by iterating the transfer matrix.
pub fn count_kronecker_tableaux(mu: &Partition, lambda: &Partition, k: usize) -> Result<BigUint> {
    if mu.weight() != lambda.weight() {
        return Err(Error::WeightMismatch { left: mu.clone(), right: lambda.clone() });
    }
    let tm = TransferMatrix::new(mu.weight());
    Ok(tm.iterate(mu, k).swap_remove(tm.index(lambda)))
}

/// `|KT^k_{mu, lambda}|` for every final shape `lambda`, zero counts omitted.
pub fn count_all_kronecker_tableaux(mu: &Partition, k: usize) -> BTreeMap<Partition, BigUint> {
    let tm = TransferMatrix::new(mu.weight());
    tm.iterate(mu, k)
        .into_iter()
        .zip(&tm.partitions)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, p)| (p.clone(), c))
        .collect()
}

/// Lists `KT^k_{mu, lambda}` depth first, successors in [`successors`]
/// order. Fails with [`Error::LimitExceeded`] rather than truncating.
pub fn list_kronecker_tableaux(
    mu: &Partition,
    lambda: &Partition,
    k: usize,
    limit: usize,
) -> Result<Vec<KroneckerTableau>> {
    if mu.weight() != lambda.weight() {
        return Err(Error::WeightMismatch { left: mu.clone(), right: lambda.clone() });
    }
    let tm = TransferMatrix::new(mu.weight());
    let reach = tm.reverse_counts(lambda, k);
    let total = &reach[k][tm.index(mu)];
    if total.is_zero() {
        return Ok(Vec::new());
    }
    if *total > BigUint::from(limit) {
        return Err(Error::LimitExceeded { limit });
    }

    struct Dfs<'a> {
        tm: &'a TransferMatrix,
        reach: &'a [Vec<BigUint>],
        shapes: Vec<Partition>,
        marks: Vec<Option<Cell>>,
        out: Vec<KroneckerTableau>,
    }

    impl Dfs<'_> {
        fn run(&mut self, left: usize) {
            let here = self.shapes.last().unwrap().clone();
            if left == 0 {
                self.out.push(KroneckerTableau { shapes: self.shapes.clone(), marks: self.marks.clone() });
                return;
            }
            for (q, mark) in successors(&here) {
                if self.reach[left - 1][self.tm.index(&q)].is_zero() {
                    continue;
                }
                self.shapes.push(q);
                self.marks.push(mark);
                self.run(left - 1);
                self.shapes.pop();
                self.marks.pop();
            }
        }
    }

    let mut dfs = Dfs { tm: &tm, reach: &reach, shapes: vec![mu.clone()], marks: Vec::new(), out: Vec::new() };
    dfs.run(k);
    Ok(dfs.out)
}

/// One step of a reduced walk, in the coordinates of the later shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReducedStep {
    Add(Cell),
    Remove(Cell),
    Move { removed: Cell, added: Cell },
    Stay(Cell),
}

fn classify(prev: &Partition, next: &Partition, mark: Option<Cell>) -> Option<ReducedStep> {
    let rows = prev.len().max(next.len());
    let mut grown = Vec::new();
    let mut shrunk = Vec::new();
    for r in 1..=rows {
        let (a, b) = (prev.part(r), next.part(r));
        if b == a + 1 {
            grown.push(Cell::new(r, b));
        } else if a == b + 1 {
            shrunk.push(Cell::new(r, a));
        } else if a != b {
            return None;
        }
    }
    match (grown.as_slice(), shrunk.as_slice(), mark) {
        ([], [], Some(c)) if prev.is_corner(c) => Some(ReducedStep::Stay(c)),
        ([d], [], None) => Some(ReducedStep::Add(*d)),
        ([], [c], None) => Some(ReducedStep::Remove(*c)),
        ([d], [c], None) => {
            let middle = prev.remove_corner(*c).ok()?;
            middle.addable_cells().contains(d).then_some(ReducedStep::Move { removed: *c, added: *d })
        }
        _ => None,
    }
}

/// A walk `nu^0 = ∅, ..., nu^k` whose steps add, remove or move one corner,
/// or stay put with any corner distinguished.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWalk {
    shapes: Vec<Partition>,
    marks: Vec<Option<Cell>>,
}

impl ReducedWalk {
    pub fn new(shapes: Vec<Partition>, marks: Vec<Option<Cell>>) -> Result<Self> {
        if shapes.first() != Some(&Partition::empty()) {
            return Err(Error::InvalidWalk("a reduced walk starts at the empty shape".into()));
        }
        if marks.len() + 1 != shapes.len() {
            return Err(Error::InvalidWalk("one mark slot per step expected".into()));
        }
        for (i, (w, mark)) in shapes.windows(2).zip(&marks).enumerate() {
            if classify(&w[0], &w[1], *mark).is_none() {
                return Err(Error::InvalidWalk(format!("illegal reduced step {}: {} -> {}", i + 1, w[0], w[1])));
            }
        }
        Ok(ReducedWalk { shapes, marks })
    }

    pub fn length(&self) -> usize {
        self.marks.len()
    }

    pub fn shapes(&self) -> &[Partition] {
        &self.shapes
    }

    pub fn marks(&self) -> &[Option<Cell>] {
        &self.marks
    }

    pub fn steps(&self) -> Vec<ReducedStep> {
        self.shapes.windows(2).zip(&self.marks).map(|(w, m)| classify(&w[0], &w[1], *m).expect("validated")).collect()
    }
}

impl fmt::Display for ReducedWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_walk(f, &self.shapes, &self.marks)
    }
}

impl FromStr for ReducedWalk {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (shapes, marks) = parse_walk(s)?;
        ReducedWalk::new(shapes, marks)
    }
}

/// Whether `n >= k + lambda_2`, the range where first-row stripping is a
/// bijection onto reduced walks.
pub fn in_regime(n: usize, k: usize, lambda: &Partition) -> bool {
    n >= k + lambda.part(2)
}

/// Removes the first row of every shape of a walk starting at a single row.
///
/// Does not check the regime; outside it the map is injective but not onto.
pub fn strip_first_row_unchecked(walk: &KroneckerTableau) -> Result<ReducedWalk> {
    if walk.initial().len() > 1 {
        return Err(Error::InvalidWalk(format!("initial shape {} is not a single row", walk.initial())));
    }
    let shapes = walk.shapes.iter().map(Partition::truncated).collect();
    let marks = walk
        .marks
        .iter()
        .map(|m| match m {
            Some(c) if c.row == 1 => Err(Error::InvalidWalk(format!("mark {c} lies on the first row"))),
            Some(c) => Ok(Some(Cell::new(c.row - 1, c.col))),
            None => Ok(None),
        })
        .collect::<Result<Vec<_>>>()?;
    ReducedWalk::new(shapes, marks)
}

/// The first-row-stripping bijection `KT^k_{(n), lambda} -> reduced walks`,
/// defined when `n >= k + lambda_2`.
pub fn strip_first_row(walk: &KroneckerTableau) -> Result<ReducedWalk> {
    let (n, k) = (walk.weight(), walk.length());
    if !in_regime(n, k, walk.final_shape()) {
        return Err(Error::Regime { n, k, lambda2: walk.final_shape().part(2) });
    }
    strip_first_row_unchecked(walk)
}

/// Inverse of [`strip_first_row`]: adds a first row of length `n - |nu^i|`.
pub fn unstrip(walk: &ReducedWalk, n: usize) -> Result<KroneckerTableau> {
    let shapes = walk
        .shapes
        .iter()
        .map(|nu| {
            let len = n
                .checked_sub(nu.weight())
                .filter(|&len| len >= nu.part(1))
                .ok_or_else(|| Error::InvalidWalk(format!("cannot put a first row under {nu} with n = {n}")))?;
            if len == 0 {
                Ok(Partition::empty())
            } else {
                nu.with_first_row(len)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let marks = walk.marks.iter().map(|m| m.map(|c| Cell::new(c.row + 1, c.col))).collect();
    KroneckerTableau::new(shapes, marks)
}
