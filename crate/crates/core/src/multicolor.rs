//! Multi-colored plane partitions and their counts `n_Q(d)`.
//!
//! A multi-coloring assigns to every box of a plane partition a nonempty
//! set of quiver vertices. For each arrow `v -> w` with label `x` (resp.
//! `y`, `z`), if `w` is in the set of box `(i, j, k)` and `i >= 1` (resp.
//! `j >= 1`, `k >= 1`), then `v` must be in the set of the box one step back
//! along that axis. Predecessors with a negative coordinate impose nothing.
//!
//! Two independent routes compute the counts:
//! - [`multicolor_oracle`] enumerates every valid coloring box by box;
//! - [`multicolor_product`] multiplies the five rotations of the
//!   `(1, 1, 3)`-colored generating function.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::plane_partition::{
    colored_gf, enumerate_plane_partitions, BoxCoord, ColorWeights, PlanePartition, QUINTIC_WEIGHTS,
};
use crate::quiver::{DimensionVector, Quiver};
use crate::series::{Exponent, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CountingError {
    #[error("unsupported quiver: {0}")]
    UnsupportedQuiver(String),
    #[error("invalid multi-coloring: {0}")]
    InvalidColoring(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("coefficient at {0:?} is not a non-negative 64-bit count")]
    NotACount(Exponent),
}

/// Nonempty subset of the vertices `0..32`, as a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColorSet(u32);

impl ColorSet {
    pub fn from_bits(bits: u32) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 32 && self.0 >> v & 1 == 1
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&v| self.contains(v))
    }
}

impl FromIterator<usize> for ColorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self(iter.into_iter().fold(0, |m, v| m | 1 << v))
    }
}

impl Serialize for ColorSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// A plane partition together with a valid multi-coloring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiColoredPartition {
    partition: PlanePartition,
    coloring: BTreeMap<BoxCoord, ColorSet>,
}

/// Incoming arrows of each vertex, as `(source, axis)` pairs.
fn incoming(q: &Quiver) -> Vec<Vec<(usize, usize)>> {
    let mut inc = vec![Vec::new(); q.num_vertices()];
    for a in q.arrows() {
        inc[a.target].push((a.source, a.label.axis()));
    }
    inc
}

fn predecessor(b: BoxCoord, axis: usize) -> Option<BoxCoord> {
    let mut p = b;
    p[axis] = b[axis].checked_sub(1)?;
    Some(p)
}

impl MultiColoredPartition {
    /// Validates the coloring against the arrows of `q`.
    pub fn new(
        q: &Quiver,
        partition: PlanePartition,
        coloring: BTreeMap<BoxCoord, ColorSet>,
    ) -> Result<Self, CountingError> {
        let boxes = partition.boxes();
        if boxes.len() != coloring.len() || boxes.iter().any(|b| !coloring.contains_key(b)) {
            return Err(CountingError::InvalidColoring(
                "coloring keys must be exactly the boxes of the partition".into(),
            ));
        }
        let full = if q.num_vertices() >= 32 { u32::MAX } else { (1u32 << q.num_vertices()) - 1 };
        let inc = incoming(q);
        for (&b, &set) in &coloring {
            if set.is_empty() || set.bits() & !full != 0 {
                return Err(CountingError::InvalidColoring(format!("bad color set at {b:?}")));
            }
            for w in set.iter() {
                for &(v, axis) in &inc[w] {
                    if let Some(p) = predecessor(b, axis) {
                        if !coloring[&p].contains(v) {
                            return Err(CountingError::InvalidColoring(format!(
                                "color {w} at {b:?} needs color {v} at {p:?}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(Self { partition, coloring })
    }

    pub fn partition(&self) -> &PlanePartition {
        &self.partition
    }

    pub fn coloring(&self) -> &BTreeMap<BoxCoord, ColorSet> {
        &self.coloring
    }

    /// Entry `v` counts boxes whose color set contains `v`.
    pub fn dimension_vector(&self, num_vertices: usize) -> DimensionVector {
        let mut d = vec![0i64; num_vertices];
        for set in self.coloring.values() {
            for v in set.iter() {
                d[v] += 1;
            }
        }
        DimensionVector::new(d)
    }
}

/// `n_Q(d)` for every dimension vector with `|d| <= trunc`. Absent keys are zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CountTable {
    trunc: u32,
    counts: BTreeMap<Exponent, u64>,
}

#[derive(Serialize, Deserialize)]
struct CountEntry {
    dimension: Exponent,
    count: u64,
}

/// Serialized as `[{"dimension": [...], "count": n}, ...]` in lexicographic order.
impl Serialize for CountTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.counts.iter().map(|(d, &c)| CountEntry { dimension: d.clone(), count: c }))
    }
}

impl CountTable {
    pub fn new(trunc: u32) -> Self {
        Self { trunc, counts: BTreeMap::new() }
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn get(&self, d: &[u32]) -> u64 {
        self.counts.get(d).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exponent, u64)> {
        self.counts.iter().map(|(d, &c)| (d, c))
    }

    fn add(&mut self, d: Exponent, n: u64) {
        if n > 0 && d.iter().sum::<u32>() <= self.trunc {
            *self.counts.entry(d).or_insert(0) += n;
        }
    }

    fn merge(mut self, other: CountTable) -> CountTable {
        for (d, c) in other.counts {
            self.add(d, c);
        }
        self
    }

    /// Reads counts off the coefficients of a generating function.
    pub fn from_series(s: &TruncatedSeries) -> Result<Self, CountingError> {
        let mut t = Self::new(s.trunc());
        for (e, c) in s.terms() {
            if c.is_negative() {
                return Err(CountingError::NotACount(e.clone()));
            }
            let n = c.to_u64().ok_or_else(|| CountingError::NotACount(e.clone()))?;
            t.add(e.clone(), n);
        }
        Ok(t)
    }

    pub fn to_series(&self, num_vars: usize) -> TruncatedSeries {
        TruncatedSeries::from_terms(
            num_vars,
            self.trunc,
            self.counts.iter().map(|(d, &c)| (d.clone(), BigInt::from(c))),
        )
        .expect("dimension vectors have the quiver's length")
    }
}

/// Box-by-box enumeration of the valid colorings of one partition.
struct ColoringSearch<'a> {
    boxes: Vec<BoxCoord>,
    /// Index into `boxes` of the predecessor along each axis.
    preds: Vec<[Option<usize>; 3]>,
    incoming: &'a [Vec<(usize, usize)>],
    num_vertices: usize,
    max_total: u32,
}

impl<'a> ColoringSearch<'a> {
    fn new(pi: &PlanePartition, incoming: &'a [Vec<(usize, usize)>], max_total: u32) -> Self {
        let boxes = pi.boxes();
        let index: BTreeMap<BoxCoord, usize> = boxes.iter().enumerate().map(|(n, &b)| (b, n)).collect();
        let preds = boxes
            .iter()
            .map(|&b| [0, 1, 2].map(|axis| predecessor(b, axis).map(|p| index[&p])))
            .collect();
        Self {
            boxes,
            preds,
            incoming,
            num_vertices: incoming.len(),
            max_total,
        }
    }

    /// Colors allowed at box `idx` given the sets already chosen before it.
    fn allowed(&self, idx: usize, sets: &[ColorSet]) -> u32 {
        let mut mask = 0u32;
        'color: for w in 0..self.num_vertices {
            for &(v, axis) in &self.incoming[w] {
                if let Some(p) = self.preds[idx][axis] {
                    if !sets[p].contains(v) {
                        continue 'color;
                    }
                }
            }
            mask |= 1 << w;
        }
        mask
    }

    fn run<F: FnMut(&[ColorSet])>(&self, sets: &mut Vec<ColorSet>, used: u32, emit: &mut F) {
        let idx = sets.len();
        if idx == self.boxes.len() {
            emit(sets);
            return;
        }
        // Every later box needs at least one color.
        let later = (self.boxes.len() - idx - 1) as u32;
        let Some(budget) = self.max_total.checked_sub(used + later) else {
            return;
        };
        let allowed = self.allowed(idx, sets);
        let mut sub = allowed;
        while sub != 0 {
            let n = sub.count_ones();
            if n <= budget {
                sets.push(ColorSet(sub));
                self.run(sets, used + n, emit);
                sets.pop();
            }
            sub = (sub - 1) & allowed;
        }
    }
}

fn check_supported(q: &Quiver) -> Result<(), CountingError> {
    if q.num_vertices() > 32 {
        return Err(CountingError::UnsupportedQuiver("more than 32 vertices".into()));
    }
    if !q.has_one_arrow_per_label() {
        return Err(CountingError::UnsupportedQuiver(
            "every vertex needs exactly one incoming and one outgoing arrow per label".into(),
        ));
    }
    Ok(())
}

/// Calls `visit` on every `q`-multi-colored plane partition whose dimension
/// vector has total at most `max_total`, partitions in enumeration order and
/// colorings in decreasing bit-mask order box by box.
pub fn for_each_multicolored<F>(q: &Quiver, max_total: u32, mut visit: F) -> Result<(), CountingError>
where
    F: FnMut(&MultiColoredPartition),
{
    check_supported(q)?;
    let inc = incoming(q);
    for pi in enumerate_plane_partitions(max_total) {
        let search = ColoringSearch::new(&pi, &inc, max_total);
        search.run(&mut Vec::new(), 0, &mut |sets| {
            let coloring = search.boxes.iter().copied().zip(sets.iter().copied()).collect();
            visit(&MultiColoredPartition {
                partition: pi.clone(),
                coloring,
            });
        });
    }
    Ok(())
}

/// Counts multi-colored plane partitions by direct enumeration of colorings.
/// Work is split across the rayon pool by plane partition.
pub fn multicolor_oracle(q: &Quiver, max_total: u32) -> Result<CountTable, CountingError> {
    check_supported(q)?;
    let inc = incoming(q);
    let n = q.num_vertices();
    let partitions: Vec<PlanePartition> = enumerate_plane_partitions(max_total).collect();
    let table = partitions
        .par_iter()
        .map(|pi| {
            let mut local = CountTable::new(max_total);
            let search = ColoringSearch::new(pi, &inc, max_total);
            search.run(&mut Vec::new(), 0, &mut |sets| {
                let mut d = vec![0u32; n];
                for s in sets {
                    for v in s.iter() {
                        d[v] += 1;
                    }
                }
                local.add(d, 1);
            });
            local
        })
        .reduce(|| CountTable::new(max_total), CountTable::merge);
    Ok(table)
}

/// `prod_{i in Z/5} Z_PL(t_i, ..., t_{i+4})` for the `(1, 1, 3)` coloring;
/// the coefficient at `d` is `n_Q(d)`.
pub fn multicolor_product(trunc: u32) -> TruncatedSeries {
    let base = colored_gf(&QUINTIC_WEIGHTS, trunc);
    let r = QUINTIC_WEIGHTS.r() as i64;
    (0..r).fold(TruncatedSeries::one(r as usize, trunc), |acc, i| {
        acc.mul(&base.cyclic_shift(i)).expect("same shape")
    })
}

/// Splits a multi-colored partition of the quintic quiver into the five
/// plane partitions `pi_v = {b : v + K(b) in K_set(b)}`, where `K(b)` is the
/// `(1, 1, 3)` color of `b`.
pub fn decompose(m: &MultiColoredPartition) -> Result<Vec<PlanePartition>, CountingError> {
    decompose_with(m, &QUINTIC_WEIGHTS)
}

pub fn decompose_with(m: &MultiColoredPartition, w: &ColorWeights) -> Result<Vec<PlanePartition>, CountingError> {
    let r = w.r() as usize;
    let mut parts = Vec::with_capacity(r);
    for v in 0..r {
        let boxes = m
            .coloring
            .iter()
            .filter(|(&b, set)| set.contains((v + w.color(b) as usize) % r))
            .map(|(&b, _)| b);
        let pi = PlanePartition::from_boxes(boxes)
            .map_err(|e| CountingError::Inconsistent(format!("component {v}: {e}")))?;
        parts.push(pi);
    }
    let back = recompose_with(&parts, w);
    if &back != m {
        return Err(CountingError::Inconsistent("recomposition does not reproduce the input".into()));
    }
    Ok(parts)
}

/// Inverse of [`decompose`]: the union of the parts, box `b` of part `v`
/// contributing color `v + K(b)`.
pub fn recompose(parts: &[PlanePartition]) -> MultiColoredPartition {
    recompose_with(parts, &QUINTIC_WEIGHTS)
}

pub fn recompose_with(parts: &[PlanePartition], w: &ColorWeights) -> MultiColoredPartition {
    let r = w.r() as usize;
    let mut coloring: BTreeMap<BoxCoord, ColorSet> = BTreeMap::new();
    for (v, pi) in parts.iter().enumerate() {
        for b in pi.boxes() {
            let c = (v + w.color(b) as usize) % r;
            coloring.entry(b).or_default().0 |= 1 << c;
        }
    }
    let partition = PlanePartition::from_boxes(coloring.keys().copied())
        .expect("a union of plane partitions is a plane partition");
    MultiColoredPartition { partition, coloring }
}
