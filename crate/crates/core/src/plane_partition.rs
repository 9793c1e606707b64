//! Plane partitions, their canonical enumeration, and cyclic colorings.
//!
//! A plane partition is stored as a height function over a Young-diagram
//! base: `rows[i][j]` is the number of boxes stacked over cell `(i, j)`.
//! Rows are weakly decreasing left to right and weakly decreasing top to
//! bottom, and every stored height is positive. Downward closure of the box
//! set therefore holds by construction.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::quiver::DimensionVector;
use crate::series::{Exponent, TruncatedSeries};

/// A box `(i, j, k)` in the non-negative octant.
pub type BoxCoord = [u32; 3];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("box set is not downward closed: {present:?} is present but {missing:?} is not")]
    NotDownwardClosed { present: BoxCoord, missing: BoxCoord },
    #[error("invalid color weights: r = {r}, weights ({a}, {b}, {c})")]
    InvalidWeights { r: u32, a: u32, b: u32, c: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PlanePartition {
    rows: Vec<Vec<u32>>,
    size: u32,
}

impl PlanePartition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition from a box set, rejecting sets that are not
    /// downward closed.
    pub fn from_boxes<I: IntoIterator<Item = BoxCoord>>(boxes: I) -> Result<Self, PartitionError> {
        let set: BTreeSet<BoxCoord> = boxes.into_iter().collect();
        for &b in &set {
            for axis in 0..3 {
                if b[axis] > 0 {
                    let mut p = b;
                    p[axis] -= 1;
                    if !set.contains(&p) {
                        return Err(PartitionError::NotDownwardClosed { present: b, missing: p });
                    }
                }
            }
        }
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for &[i, j, k] in &set {
            let (i, j) = (i as usize, j as usize);
            if rows.len() <= i {
                rows.resize(i + 1, Vec::new());
            }
            if rows[i].len() <= j {
                rows[i].resize(j + 1, 0);
            }
            rows[i][j] = rows[i][j].max(k + 1);
        }
        Ok(Self {
            size: set.len() as u32,
            rows,
        })
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Height over cell `(i, j)`; zero outside the base.
    pub fn height(&self, i: usize, j: usize) -> u32 {
        self.rows.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0)
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn contains(&self, b: BoxCoord) -> bool {
        b[2] < self.height(b[0] as usize, b[1] as usize)
    }

    /// All boxes in lexicographic order.
    pub fn boxes(&self) -> Vec<BoxCoord> {
        let mut out = Vec::with_capacity(self.size as usize);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &h) in row.iter().enumerate() {
                for k in 0..h {
                    out.push([i as u32, j as u32, k]);
                }
            }
        }
        out
    }
}

impl fmt::Display for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

/// Serialized as the sorted list of `[i, j, k]` triples.
impl Serialize for PlanePartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.boxes().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlanePartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let boxes = Vec::<BoxCoord>::deserialize(d)?;
        PlanePartition::from_boxes(boxes).map_err(serde::de::Error::custom)
    }
}

/// Weights `(a, b, c)` of a cyclic group action of order `r` on three
/// coordinates; box `(i, j, k)` gets color `a i + b j + c k mod r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColorWeights {
    r: u32,
    a: u32,
    b: u32,
    c: u32,
}

impl ColorWeights {
    pub fn new(r: u32, a: u32, b: u32, c: u32) -> Result<Self, PartitionError> {
        if r == 0 || a >= r || b >= r || c >= r {
            return Err(PartitionError::InvalidWeights { r, a, b, c });
        }
        Ok(Self { r, a, b, c })
    }

    /// Weights reduced modulo `r` first.
    pub fn reduced(r: u32, a: u32, b: u32, c: u32) -> Result<Self, PartitionError> {
        if r == 0 {
            return Err(PartitionError::InvalidWeights { r, a, b, c });
        }
        Self::new(r, a % r, b % r, c % r)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn weights(&self) -> [u32; 3] {
        [self.a, self.b, self.c]
    }

    pub fn color(&self, [i, j, k]: BoxCoord) -> u32 {
        let r = self.r as u64;
        ((self.a as u64 * i as u64 + self.b as u64 * j as u64 + self.c as u64 * k as u64) % r) as u32
    }
}

/// The weights `(1, 1, 3)` modulo 5 of the quintic local model.
pub const QUINTIC_WEIGHTS: ColorWeights = ColorWeights { r: 5, a: 1, b: 1, c: 3 };

/// Plane partitions of exactly one size, in increasing lexicographic order
/// of their sorted box lists.
///
/// Heights are chosen cell by cell in row-major order, largest first. A
/// larger height at the first differing cell means a lexicographically
/// smaller box list, so this depth-first order is the box-list order. Each
/// step backtracks to the last cell that can be lowered and refills the rest
/// greedily; the greedy fill succeeds exactly when some completion exists.
#[derive(Debug, Clone)]
pub struct PartitionsOfSize {
    size: u32,
    rows: Vec<Vec<u32>>,
    started: bool,
    done: bool,
}

impl PartitionsOfSize {
    pub fn new(size: u32) -> Self {
        Self {
            size,
            rows: Vec::new(),
            started: false,
            done: false,
        }
    }

    fn bound(&self, i: usize, j: usize) -> u32 {
        let up = if i == 0 {
            u32::MAX
        } else {
            self.rows[i - 1].get(j).copied().unwrap_or(0)
        };
        let left = if j == 0 { u32::MAX } else { self.rows[i][j - 1] };
        up.min(left)
    }

    /// Greedily places `remaining` boxes starting at cell `(i0, j0)`, where
    /// everything after `(i0, j0)` is currently empty. On failure the state is
    /// left unchanged.
    fn fill_from(&mut self, i0: usize, j0: usize, remaining: u32) -> bool {
        let (mut i, mut j, mut r) = (i0, j0, remaining);
        while r > 0 {
            if self.rows.len() == i {
                self.rows.push(Vec::new());
            }
            let h = self.bound(i, j).min(r);
            if h == 0 {
                if j == 0 {
                    break;
                }
                i += 1;
                j = 0;
                continue;
            }
            self.rows[i].push(h);
            r -= h;
            j += 1;
        }
        if r == 0 {
            return true;
        }
        if j0 == 0 {
            self.rows.truncate(i0);
        } else {
            self.rows.truncate(i0 + 1);
            self.rows[i0].truncate(j0);
        }
        false
    }

    /// Steps to the next partition, walking back over cells in reverse
    /// row-major order.
    fn advance(&mut self) -> bool {
        // Boxes on cells up to and including the current last cell.
        let mut placed = self.size;
        while let Some(i) = self.rows.len().checked_sub(1) {
            let h = self.rows[i].pop().expect("stored rows are nonempty");
            let j = self.rows[i].len();
            placed -= h;
            for lowered in (1..h).rev() {
                self.rows[i].push(lowered);
                if self.fill_from(i, j + 1, self.size - placed - lowered) {
                    return true;
                }
                self.rows[i].pop();
            }
            // Height zero at (i, j) ends row i; a zero in column 0 ends the partition.
            if j > 0 && self.fill_from(i + 1, 0, self.size - placed) {
                return true;
            }
            if self.rows[i].is_empty() {
                self.rows.pop();
            }
        }
        false
    }
}

impl Iterator for PartitionsOfSize {
    type Item = PlanePartition;

    fn next(&mut self) -> Option<PlanePartition> {
        if self.done {
            return None;
        }
        let ok = if !self.started {
            self.started = true;
            self.size == 0 || self.fill_from(0, 0, self.size)
        } else {
            self.size != 0 && self.advance()
        };
        if !ok {
            self.done = true;
            return None;
        }
        Some(PlanePartition {
            rows: self.rows.clone(),
            size: self.size,
        })
    }
}

/// Every plane partition of size at most `max_size`, by size and then in
/// lexicographic order of the sorted box list. Includes the empty partition.
pub fn enumerate_plane_partitions(max_size: u32) -> impl Iterator<Item = PlanePartition> {
    (0..=max_size).flat_map(PartitionsOfSize::new)
}

/// Number of plane partitions of each size `0..=max_size`.
pub fn size_counts(max_size: u32) -> Vec<u64> {
    (0..=max_size).map(|n| PartitionsOfSize::new(n).count() as u64).collect()
}

/// `|pi|_m` for each color `m`.
pub fn color_counts(pi: &PlanePartition, w: &ColorWeights) -> DimensionVector {
    let mut counts = vec![0i64; w.r() as usize];
    for b in pi.boxes() {
        counts[w.color(b) as usize] += 1;
    }
    DimensionVector::new(counts)
}

/// Generating function of `w`-colored plane partitions: the coefficient at
/// exponent `d` counts partitions with color counts `d`, over `|pi| <= trunc`.
pub fn colored_gf(w: &ColorWeights, trunc: u32) -> TruncatedSeries {
    let terms = enumerate_plane_partitions(trunc).map(|pi| {
        let e: Exponent = color_counts(&pi, w)
            .entries()
            .iter()
            .map(|&c| c as u32)
            .collect();
        (e, BigInt::from(1))
    });
    TruncatedSeries::from_terms(w.r() as usize, trunc, terms).expect("exponents have length r")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::macmahon;

    #[test]
    fn small_enumerations() {
        let all: Vec<_> = enumerate_plane_partitions(0).collect();
        assert_eq!(all, vec![PlanePartition::empty()]);
        let all: Vec<_> = enumerate_plane_partitions(1).collect();
        assert_eq!(all.len(), 2);
        assert_eq!(all[1].boxes(), vec![[0, 0, 0]]);
        assert_eq!(size_counts(5), vec![1, 1, 3, 6, 13, 24]);
    }

    #[test]
    fn counts_match_macmahon_to_ten() {
        let m = macmahon(10);
        for (n, c) in size_counts(10).into_iter().enumerate() {
            assert_eq!(m.coeff(&[n as u32]), BigInt::from(c), "size {n}");
        }
    }

    #[test]
    fn order_is_lexicographic_and_closed() {
        for n in 0..=7 {
            let parts: Vec<_> = PartitionsOfSize::new(n).collect();
            let lists: Vec<_> = parts.iter().map(|p| p.boxes()).collect();
            for w in lists.windows(2) {
                assert!(w[0] < w[1], "order broken at size {n}");
            }
            for p in &parts {
                assert_eq!(p.boxes().len() as u32, n);
                let rebuilt = PlanePartition::from_boxes(p.boxes()).unwrap();
                assert_eq!(&rebuilt, p);
            }
        }
    }

    #[test]
    fn size_three_in_order() {
        let got: Vec<Vec<Vec<u32>>> = PartitionsOfSize::new(3).map(|p| p.rows().to_vec()).collect();
        assert_eq!(
            got,
            vec![
                vec![vec![3]],
                vec![vec![2, 1]],
                vec![vec![2], vec![1]],
                vec![vec![1, 1, 1]],
                vec![vec![1, 1], vec![1]],
                vec![vec![1], vec![1], vec![1]],
            ]
        );
    }

    #[test]
    fn rejects_unclosed_sets() {
        let err = PlanePartition::from_boxes([[0, 0, 0], [0, 0, 2]]).unwrap_err();
        assert_eq!(
            err,
            PartitionError::NotDownwardClosed { present: [0, 0, 2], missing: [0, 0, 1] }
        );
        assert!(PlanePartition::from_boxes([[1, 0, 0]]).is_err());
    }

    #[test]
    fn coloring() {
        let w = QUINTIC_WEIGHTS;
        let single = PlanePartition::from_boxes([[0, 0, 0]]).unwrap();
        assert_eq!(color_counts(&single, &w).entries(), &[1, 0, 0, 0, 0]);
        let column = PlanePartition::from_boxes([[0, 0, 0], [0, 0, 1]]).unwrap();
        assert_eq!(color_counts(&column, &w).entries(), &[1, 0, 0, 1, 0]);
        let corner = PlanePartition::from_boxes([[0, 0, 0], [1, 0, 0], [0, 1, 0]]).unwrap();
        assert_eq!(color_counts(&corner, &w).entries(), &[1, 2, 0, 0, 0]);
        let other = ColorWeights::new(7, 2, 3, 6).unwrap();
        assert_eq!(color_counts(&single, &other).entries()[0], 1);
    }

    #[test]
    fn weights_validation() {
        assert!(ColorWeights::new(0, 0, 0, 0).is_err());
        assert!(ColorWeights::new(5, 5, 1, 1).is_err());
        assert_eq!(ColorWeights::reduced(1, 1, 1, 1).unwrap().weights(), [0, 0, 0]);
    }

    #[test]
    fn colored_generating_function() {
        let w = QUINTIC_WEIGHTS;
        assert_eq!(colored_gf(&w, 0), TruncatedSeries::one(5, 0));
        let g1 = colored_gf(&w, 1);
        assert_eq!(g1.len(), 2);
        assert_eq!(g1.coeff(&[1, 0, 0, 0, 0]), BigInt::from(1));
        assert_eq!(colored_gf(&w, 5).specialize(), macmahon(5));
    }

    #[test]
    fn serializes_as_sorted_triples() {
        let p = PlanePartition::from_boxes([[0, 1, 0], [0, 0, 1], [0, 0, 0]]).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[0,0,0],[0,0,1],[0,1,0]]");
        let back: PlanePartition = serde_json::from_str("[[0,0,0],[0,0,1],[0,1,0]]").unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<PlanePartition>("[[0,0,1]]").is_err());
    }
}
