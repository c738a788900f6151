use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::Partition;

use super::rsk::PartialStandardTableau;
use super::walk::{strip_first_row_unchecked, unstrip, KroneckerTableau, ReducedStep, ReducedWalk};

/// A permutation of `{1, ..., k}` each of whose cycles, read from its
/// largest element, is decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecCyclePermutation {
    /// `image[i - 1] = π(i)`.
    image: Vec<u32>,
}

impl DecCyclePermutation {
    pub fn identity(k: usize) -> Self {
        DecCyclePermutation { image: (1..=k as u32).collect() }
    }

    pub fn from_image(image: Vec<u32>) -> Result<Self> {
        let k = image.len();
        let mut seen = vec![false; k];
        for &x in &image {
            if x == 0 || x as usize > k || std::mem::replace(&mut seen[x as usize - 1], true) {
                return Err(Error::InvalidPair(format!("{image:?} is not a permutation")));
            }
        }
        let perm = DecCyclePermutation { image };
        for cycle in perm.cycles() {
            if cycle.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidPair(format!("cycle {cycle:?} is not decreasing")));
            }
        }
        Ok(perm)
    }

    /// Builds the permutation from cycles given in any rotation.
    pub fn from_cycles(k: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut image: Vec<u32> = vec![0; k];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if x == 0 || x as usize > k || image[x as usize - 1] != 0 {
                    return Err(Error::InvalidPair(format!("bad or repeated element {x}")));
                }
                image[x as usize - 1] = y;
            }
        }
        for (i, slot) in image.iter_mut().enumerate() {
            if *slot == 0 {
                *slot = i as u32 + 1;
            }
        }
        Self::from_image(image)
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.image[i as usize - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    pub fn fixed_points(&self) -> Vec<u32> {
        (1..=self.size() as u32).filter(|&i| self.apply(i) == i).collect()
    }

    /// Cycles written greatest element first, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let k = self.size();
        let mut done = vec![false; k];
        let mut out = Vec::new();
        for top in (1..=k as u32).rev() {
            if done[top as usize - 1] {
                continue;
            }
            let mut cycle = vec![top];
            done[top as usize - 1] = true;
            let mut x = self.apply(top);
            while x != top {
                done[x as usize - 1] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out.reverse();
        out
    }

    /// The largest element of each cycle.
    pub fn cycle_maxima(&self) -> Vec<u32> {
        self.cycles().iter().map(|c| c[0]).collect()
    }

    /// `π ← (i j) ∘ π`.
    fn left_multiply(&mut self, i: u32, j: u32) {
        for x in &mut self.image {
            if *x == i {
                *x = j;
            } else if *x == j {
                *x = i;
            }
        }
    }
}

/// E.g. `(4)(5,3)(9,2,1)`, fixed points included.
impl fmt::Display for DecCyclePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.image.is_empty() {
            return write!(f, "()");
        }
        for cycle in self.cycles() {
            let body: Vec<String> = cycle.iter().map(u32::to_string).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for DecCyclePermutation {
    type Err = Error;

    /// Parses the [`Display`](fmt::Display) form. Every element must be
    /// listed, so the size is the number of elements.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "()" {
            return Ok(Self::identity(0));
        }
        let body = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidPair(format!("bad cycle notation `{s}`")))?;
        let cycles = body
            .split(")(")
            .map(|c| {
                c.split(',')
                    .map(|x| x.parse::<u32>().map_err(|_| Error::InvalidPair(format!("bad element `{x}`"))))
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let k = cycles.iter().map(Vec::len).sum();
        Self::from_cycles(k, &cycles)
    }
}

impl Serialize for DecCyclePermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.cycles().serialize(s)
    }
}

/// A partial standard tableau together with a decreasing-cycle permutation
/// of `{1, ..., k}`, such that the labels of the tableau are cycle maxima
/// and include every fixed point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct KroneckerPair {
    pub tableau: PartialStandardTableau,
    pub permutation: DecCyclePermutation,
}

impl KroneckerPair {
    pub fn new(tableau: PartialStandardTableau, permutation: DecCyclePermutation) -> Result<Self> {
        let k = permutation.size() as u32;
        let maxima = permutation.cycle_maxima();
        let labels = tableau.labels();
        if let Some(&x) = labels.iter().find(|&&x| x > k) {
            return Err(Error::InvalidPair(format!("label {x} exceeds k = {k}")));
        }
        if let Some(x) = labels.iter().find(|x| !maxima.contains(x)) {
            return Err(Error::InvalidPair(format!("label {x} is not the largest element of its cycle")));
        }
        if let Some(x) = permutation.fixed_points().into_iter().find(|x| !labels.contains(x)) {
            return Err(Error::InvalidPair(format!("fixed point {x} is not a label")));
        }
        Ok(KroneckerPair { tableau, permutation })
    }

    pub fn k(&self) -> usize {
        self.permutation.size()
    }

    pub fn shape(&self) -> Partition {
        self.tableau.shape()
    }
}

impl fmt::Display for KroneckerPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T = {}  π = {}", self.tableau, self.permutation)
    }
}

/// Runs a reduced walk, returning every intermediate tableau `T_0, ..., T_k`
/// and the final permutation.
pub fn walk_to_pair_traced(walk: &ReducedWalk) -> Result<(Vec<PartialStandardTableau>, KroneckerPair)> {
    let k = walk.length();
    let mut t = PartialStandardTableau::empty();
    let mut pi = DecCyclePermutation::identity(k);
    let mut trace = vec![t.clone()];
    for (step, i) in walk.steps().into_iter().zip(1u32..) {
        match step {
            ReducedStep::Add(c) => t.add_largest(c, i)?,
            ReducedStep::Remove(c) => {
                let j = t.delete(c)?;
                pi.left_multiply(i, j);
            }
            ReducedStep::Move { removed, added } => {
                let j = t.delete(removed)?;
                t.add_largest(added, i)?;
                pi.left_multiply(i, j);
            }
            ReducedStep::Stay(c) => {
                let j = t.delete(c)?;
                t.add_largest(c, i)?;
                pi.left_multiply(i, j);
            }
        }
        trace.push(t.clone());
    }
    let pair = KroneckerPair::new(t, pi)?;
    Ok((trace, pair))
}

pub fn walk_to_pair(walk: &ReducedWalk) -> Result<KroneckerPair> {
    walk_to_pair_traced(walk).map(|(_, pair)| pair)
}

/// Inverse of [`walk_to_pair`].
pub fn pair_to_walk(pair: &KroneckerPair) -> Result<ReducedWalk> {
    let k = pair.k();
    let mut t = pair.tableau.clone();
    let mut pi = pair.permutation.clone();
    let mut shapes = vec![t.shape()];
    let mut marks = Vec::with_capacity(k);
    for i in (1..=k as u32).rev() {
        let j = pi.apply(i);
        let mark = match t.position(i) {
            None => {
                if j >= i {
                    return Err(Error::InvalidPair(format!("step {i}: π({i}) = {j} is not smaller")));
                }
                t.insert(j)?;
                pi.left_multiply(i, j);
                None
            }
            Some(cell) => {
                t.remove_corner(cell)?;
                if j == i {
                    None
                } else if j > i {
                    return Err(Error::InvalidPair(format!("step {i}: π({i}) = {j} is larger")));
                } else {
                    let grown = t.insert(j)?;
                    pi.left_multiply(i, j);
                    (grown == cell).then_some(cell)
                }
            }
        };
        shapes.push(t.shape());
        marks.push(mark);
    }
    if !t.labels().is_empty() || !pi.is_identity() {
        return Err(Error::InvalidPair("pair does not unwind to the empty tableau".into()));
    }
    shapes.reverse();
    marks.reverse();
    ReducedWalk::new(shapes, marks)
}

/// Sends a walk starting at a single row to its pair. Outside the range
/// `n >= k + lambda_2` the result is still well defined but the map is no
/// longer onto, see [`from_pair`].
pub fn to_pair(walk: &KroneckerTableau) -> Result<KroneckerPair> {
    walk_to_pair(&strip_first_row_unchecked(walk)?)
}

/// Rebuilds the walk of weight `n` from a pair.
///
/// Fails when the intermediate shapes do not fit under a first row of
/// length `n - |nu^i|`, which can only happen outside the bijective range.
pub fn from_pair(pair: &KroneckerPair, n: usize) -> Result<KroneckerTableau> {
    unstrip(&pair_to_walk(pair)?, n)
}
