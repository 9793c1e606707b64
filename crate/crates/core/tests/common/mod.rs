#![allow(dead_code)]

use proptest::prelude::*;
use quintic_dt::TruncatedSeries;

/// Random series in `num_vars` variables truncated at `trunc`, with small
/// integer coefficients.
pub fn series(num_vars: usize, trunc: u32) -> impl Strategy<Value = TruncatedSeries> {
    let term = (proptest::collection::vec(0..=trunc, num_vars), -9i64..=9);
    proptest::collection::vec(term, 0..12)
        .prop_map(move |terms| TruncatedSeries::from_terms(num_vars, trunc, terms).unwrap())
}

/// Random series with constant term `+1` or `-1`.
pub fn unit_series(num_vars: usize, trunc: u32) -> impl Strategy<Value = TruncatedSeries> {
    (series(num_vars, trunc), prop_oneof![Just(1i64), Just(-1i64)]).prop_map(move |(s, c)| {
        let zero = vec![0; num_vars];
        let mut terms: Vec<_> = s
            .terms()
            .iter()
            .filter(|(e, _)| **e != zero)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        terms.push((zero, c.into()));
        TruncatedSeries::from_terms(num_vars, trunc, terms).unwrap()
    })
}

/// A pair of series of one common shape.
pub fn series_pair() -> impl Strategy<Value = (TruncatedSeries, TruncatedSeries)> {
    (1usize..=3, 0u32..=5).prop_flat_map(|(n, t)| (series(n, t), series(n, t)))
}

pub fn series_triple() -> impl Strategy<Value = (TruncatedSeries, TruncatedSeries, TruncatedSeries)> {
    (1usize..=3, 0u32..=4).prop_flat_map(|(n, t)| (series(n, t), series(n, t), series(n, t)))
}

/// Sum of all rotations of `s`, which is cyclically symmetric.
pub fn symmetrize(s: &TruncatedSeries) -> TruncatedSeries {
    (1..s.num_vars() as i64).fold(s.clone(), |acc, k| acc.add(&s.cyclic_shift(k)).unwrap())
}
