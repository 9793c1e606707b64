mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use quintic_dt::assembly::quiver_sign;
use quintic_dt::multicolor::{decompose, for_each_multicolored, recompose, ColorSet};
use quintic_dt::plane_partition::{colored_gf, enumerate_plane_partitions};
use quintic_dt::{multicolor_product, DimensionVector, PlanePartition, Quiver, TruncatedSeries, QUINTIC_WEIGHTS};

use common::{series, series_pair, series_triple, symmetrize, unit_series};

proptest! {
    #[test]
    fn addition_is_commutative_and_has_inverse((a, b) in series_pair()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.add(&b).unwrap().sub(&b).unwrap(), a);
    }

    #[test]
    fn ring_laws((a, b, c) in series_triple()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        let one = TruncatedSeries::one(a.num_vars(), a.trunc());
        prop_assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn inverse_and_powers(s in (1usize..=3, 0u32..=5).prop_flat_map(|(n, t)| unit_series(n, t)), k in -3i64..=3, l in -3i64..=3) {
        let one = TruncatedSeries::one(s.num_vars(), s.trunc());
        prop_assert_eq!(s.mul(&s.inverse().unwrap()).unwrap(), one.clone());
        prop_assert_eq!(s.pow(-1).unwrap(), s.inverse().unwrap());
        prop_assert_eq!(s.pow(0).unwrap(), one);
        prop_assert_eq!(s.pow(k + l).unwrap(), s.pow(k).unwrap().mul(&s.pow(l).unwrap()).unwrap());
    }

    #[test]
    fn specialization_is_a_ring_homomorphism((a, b) in series_pair()) {
        prop_assert_eq!(a.mul(&b).unwrap().specialize(), a.specialize().mul(&b.specialize()).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().specialize(), a.specialize().add(&b.specialize()).unwrap());
    }

    #[test]
    fn cyclic_shift_is_a_ring_automorphism((a, b) in series_pair(), k in -7i64..=7) {
        let n = a.num_vars() as i64;
        prop_assert_eq!(a.mul(&b).unwrap().cyclic_shift(k), a.cyclic_shift(k).mul(&b.cyclic_shift(k)).unwrap());
        prop_assert_eq!(a.cyclic_shift(k).cyclic_shift(-k), a.clone());
        prop_assert_eq!(a.cyclic_shift(n), a.clone());
        prop_assert_eq!(a.cyclic_shift(k).specialize(), a.specialize());
    }

    #[test]
    fn orbit_round_trip(s in (1usize..=5, 0u32..=4).prop_flat_map(|(n, t)| series(n, t))) {
        let sym = symmetrize(&s);
        let orbits = sym.orbit_compress().unwrap();
        prop_assert_eq!(TruncatedSeries::from_orbits(sym.num_vars(), sym.trunc(), &orbits).unwrap(), sym.clone());
        let members: usize = orbits.iter().map(|o| o.orbit_size).sum();
        prop_assert_eq!(members, sym.len());
        for o in &orbits {
            prop_assert_eq!(o.members().len(), o.orbit_size);
            prop_assert_eq!(o.members().into_iter().next().unwrap(), o.rep_exponent.clone());
        }
    }

    #[test]
    fn bilinear_form_is_shift_invariant(d in proptest::collection::vec(-6i64..=6, 5), e in proptest::collection::vec(-6i64..=6, 5), k in 0i64..5) {
        let q = Quiver::mckay(&QUINTIC_WEIGHTS);
        let (d, e) = (DimensionVector::new(d), DimensionVector::new(e));
        prop_assert_eq!(
            q.bilinear_form(&d, &e).unwrap(),
            q.bilinear_form(&d.cyclic_shift(k), &e.cyclic_shift(k)).unwrap()
        );
        prop_assert_eq!(q.euler_pairing(&d, &e).unwrap(), -q.euler_pairing(&e, &d).unwrap());
    }

    #[test]
    fn sign_matches_framed_dimension(d in proptest::collection::vec(0i64..=9, 5)) {
        let q = Quiver::mckay(&QUINTIC_WEIGHTS);
        let d = DimensionVector::new(d);
        let dim = q.framed_moduli_dim(&d).unwrap();
        prop_assert_eq!(quiver_sign(&q, &d).unwrap(), if dim % 2 == 0 { 1 } else { -1 });
    }

    #[test]
    fn recompose_then_decompose(idx in proptest::collection::vec(0usize..20, 5)) {
        let small: Vec<PlanePartition> = enumerate_plane_partitions(3).collect();
        let parts: Vec<PlanePartition> = idx.iter().map(|&i| small[i % small.len()].clone()).collect();
        prop_assert_eq!(decompose(&recompose(&parts)).unwrap(), parts);
    }
}

#[test]
fn multicolor_counts_are_cyclically_symmetric() {
    let p = multicolor_product(7);
    for k in 1..5 {
        assert_eq!(p.cyclic_shift(k), p);
    }
    let z = quintic_dt::dt_quiver_series(6).unwrap().multivariate;
    assert_eq!(z.cyclic_shift(2), z);
}

#[test]
fn decomposition_round_trip_is_exhaustive_through_three_boxes() {
    let q = Quiver::mckay(&QUINTIC_WEIGHTS);
    let mut instances = 0;
    for_each_multicolored(&q, 3, |m| {
        instances += 1;
        let parts = decompose(m).unwrap();
        assert_eq!(&recompose(&parts), m);
        let total: u32 = parts.iter().map(|p| p.size()).sum();
        assert_eq!(i64::from(total), m.dimension_vector(5).total());
    })
    .unwrap();
    let expected: u64 = multicolor_product(3).terms().values().map(|c| u64::try_from(c).unwrap()).sum();
    assert_eq!(instances as u64, expected);
}

#[test]
fn singleton_colorings_reproduce_colored_partitions() {
    let q = Quiver::mckay(&QUINTIC_WEIGHTS);
    let w = QUINTIC_WEIGHTS;
    let mut counts: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    for_each_multicolored(&q, 5, |m| {
        let natural = m
            .coloring()
            .iter()
            .all(|(&b, &set)| set == ColorSet::from_bits(1 << w.color(b)));
        if natural {
            let d = m.dimension_vector(5).to_exponent().unwrap();
            *counts.entry(d).or_default() += 1;
        }
    })
    .unwrap();
    let restricted = TruncatedSeries::from_terms(5, 5, counts).unwrap();
    assert_eq!(restricted, colored_gf(&w, 5));
}
