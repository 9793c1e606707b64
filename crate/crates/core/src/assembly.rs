//! Signed generating functions: the quiver series `Z^{Q,W}`, the orbifold
//! series of a cyclic quotient of C^3, the Quot factor, stratum Euler
//! characteristics of the quintic hyperplane, and the quintic series.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::multicolor::{multicolor_product, CountingError};
use crate::plane_partition::{color_counts, enumerate_plane_partitions, ColorWeights, PartitionError, QUINTIC_WEIGHTS};
use crate::quiver::{DimensionVector, Quiver, QuiverError};
use crate::series::{macmahon, orbit_representative, Exponent, OrbitTerm, SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssemblyError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Counting(#[from] CountingError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// `(-1)^{|d| + <d, d>}`.
pub fn quiver_sign(q: &Quiver, d: &DimensionVector) -> Result<i32, QuiverError> {
    let e = d.total() + q.bilinear_form(d, d)?;
    Ok(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// Multivariate and specialized forms of a signed series, with its cyclic
/// orbits and notes on disagreements with printed reference values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedSeriesReport {
    pub multivariate: TruncatedSeries,
    pub univariate: TruncatedSeries,
    #[serde(rename = "orbits")]
    pub orbit_view: Vec<OrbitTerm>,
    pub anomalies: Vec<String>,
}

/// `Z^{Q,W}(t) = sum_d (-1)^{|d| + <d,d>} n_Q(d) t^d` for the quintic quiver.
pub fn dt_quiver_series(trunc: u32) -> Result<SignedSeriesReport, AssemblyError> {
    let q = Quiver::mckay(&QUINTIC_WEIGHTS);
    let counts = multicolor_product(trunc);
    let mut terms = Vec::with_capacity(counts.len());
    for (e, c) in counts.terms() {
        let sign = quiver_sign(&q, &DimensionVector::from(e.as_slice()))?;
        terms.push((e.clone(), c * sign));
    }
    let multivariate = TruncatedSeries::from_terms(5, trunc, terms)?;
    let univariate = multivariate.specialize();
    let orbit_view = multivariate.orbit_compress()?;
    let mut anomalies: Vec<String> = reference_discrepancies(&orbit_view)
        .iter()
        .map(|d| d.to_string())
        .collect();
    anomalies.extend(
        coefficient_discrepancies(&univariate, &REFERENCE_UNIVARIATE)
            .into_iter()
            .map(|(n, printed, computed)| format!("univariate degree {n}: printed {printed}, enumerated {computed}")),
    );
    Ok(SignedSeriesReport {
        multivariate,
        univariate,
        orbit_view,
        anomalies,
    })
}

/// Printed orbit coefficients of `Z^{Q,W}` through total degree 5, keyed by
/// the exponent vector exactly as printed. Each `t^(a)` stands for the sum
/// of the distinct rotations of `a`.
pub const REFERENCE_ORBITS: &[([u32; 5], i64)] = &[
    ([0, 0, 0, 0, 0], 1),
    ([1, 0, 0, 0, 0], 1),
    ([1, 1, 0, 0, 0], 3),
    ([1, 0, 1, 0, 0], -2),
    ([1, 2, 0, 0, 0], 3),
    ([2, 0, 1, 0, 0], 1),
    ([1, 1, 1, 0, 0], -8),
    ([1, 1, 0, 1, 0], 8),
    ([1, 3, 0, 0, 0], 1),
    ([2, 1, 1, 0, 0], 3),
    ([1, 2, 1, 0, 0], -12),
    ([1, 1, 2, 0, 0], 7),
    ([1, 2, 0, 1, 0], -12),
    ([1, 1, 0, 2, 0], 5),
    ([1, 1, 1, 1, 0], -34),
    ([2, 2, 1, 0, 0], -3),
    ([2, 1, 2, 0, 0], -4),
    ([1, 3, 1, 0, 0], -6),
    ([1, 2, 2, 0, 0], 18),
    ([1, 1, 3, 0, 0], -2),
    ([1, 3, 0, 1, 0], 8),
    ([1, 2, 0, 2, 0], 10),
    ([2, 1, 1, 1, 0], 20),
    ([1, 2, 1, 1, 0], 56),
    ([1, 1, 2, 1, 0], 35),
    ([1, 1, 1, 2, 0], -54),
    ([1, 1, 1, 1, 1], -171),
];

/// Printed univariate coefficients of `Z^{Q,W}(t)` in degrees 0..=5.
pub const REFERENCE_UNIVARIATE: [i64; 6] = [1, 5, 5, 20, -210, -131];

/// Printed coefficients of the quintic series in degrees 0..=5.
pub const REFERENCE_QUINTIC: [i64; 6] = [1, 50, 1175, 17450, 184275, 1450740];

/// One orbit where the computed coefficient differs from the printed table
/// (a printed coefficient of zero means the orbit is missing from the table).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitDiscrepancy {
    pub printed_exponent: Exponent,
    pub representative: Exponent,
    pub printed: i64,
    #[serde(with = "crate::series::decimal")]
    pub computed: BigInt,
}

impl std::fmt::Display for OrbitDiscrepancy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let e: Vec<String> = self.printed_exponent.iter().map(|a| a.to_string()).collect();
        write!(
            f,
            "orbit t^({}) degree {}: printed {}, enumerated {}",
            e.join(","),
            self.printed_exponent.iter().sum::<u32>(),
            self.printed,
            self.computed
        )
    }
}

/// Compares computed orbits against [`REFERENCE_ORBITS`] on every degree
/// that both cover. Orbits present on only one side are reported too.
pub fn reference_discrepancies(orbits: &[OrbitTerm]) -> Vec<OrbitDiscrepancy> {
    let max_degree = orbits.iter().map(|o| o.degree()).max().unwrap_or(0).min(5);
    let mut out = Vec::new();
    let mut printed_reps = Vec::new();
    for (e, c) in REFERENCE_ORBITS {
        let degree: u32 = e.iter().sum();
        if degree > max_degree {
            continue;
        }
        let rep = orbit_representative(e);
        let computed = orbits
            .iter()
            .find(|o| o.rep_exponent == rep)
            .map(|o| o.coefficient.clone())
            .unwrap_or_else(BigInt::zero);
        if computed != BigInt::from(*c) {
            out.push(OrbitDiscrepancy {
                printed_exponent: e.to_vec(),
                representative: rep.clone(),
                printed: *c,
                computed,
            });
        }
        printed_reps.push(rep);
    }
    for o in orbits.iter().filter(|o| o.degree() <= max_degree) {
        if !printed_reps.contains(&o.rep_exponent) {
            out.push(OrbitDiscrepancy {
                printed_exponent: o.rep_exponent.clone(),
                representative: o.rep_exponent.clone(),
                printed: 0,
                computed: o.coefficient.clone(),
            });
        }
    }
    out
}

/// Degrees `n` (up to the truncation of `s`) where `[t^n] s` differs from `printed[n]`.
pub fn coefficient_discrepancies(s: &TruncatedSeries, printed: &[i64]) -> Vec<(u32, i64, BigInt)> {
    s.degree_sums()
        .into_iter()
        .zip(printed)
        .enumerate()
        .filter(|(_, (c, p))| *c != BigInt::from(**p))
        .map(|(n, (c, p))| (n as u32, *p, c))
        .collect()
}

/// `sum_pi (-1)^{|pi|_0 + <|pi|, |pi|>} t^{|pi|}` over `w`-colored plane
/// partitions, with the bilinear form of the McKay quiver of `w`.
pub fn dt_orbifold_series(w: &ColorWeights, trunc: u32) -> Result<TruncatedSeries, AssemblyError> {
    let q = Quiver::mckay(w);
    let mut terms = Vec::new();
    for pi in enumerate_plane_partitions(trunc) {
        let d = color_counts(&pi, w);
        let e = d.entries()[0] + q.bilinear_form(&d, &d)?;
        let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
        let exponent = d.to_exponent().expect("color counts are non-negative");
        terms.push((exponent, BigInt::from(sign)));
    }
    Ok(TruncatedSeries::from_terms(w.r() as usize, trunc, terms)?)
}

/// `M(-t)^5`, the weighted Euler characteristics of Quot schemes of the
/// rank-5 trivial sheaf on C^3.
pub fn quot_factor(trunc: u32) -> TruncatedSeries {
    macmahon(trunc)
        .substitute_power(-1, 1, trunc)
        .and_then(|m| m.pow(5))
        .expect("univariate with unit constant term")
}

/// Euler characteristics of the strata of the hyperplane `sum x_i = 0` in
/// `P^n`, stratified by the number of nonzero coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumEulerChars {
    pub ambient: u32,
    /// `torus[k - 2]` is the Euler characteristic of the locus with exactly
    /// `k` given coordinates nonzero, for `k = 2..=n+1`.
    pub torus: Vec<i64>,
    /// `strata[i]` is the Euler characteristic of the stratum with `i + 2`
    /// nonzero coordinates.
    pub strata: Vec<i64>,
    /// `sum_{i >= 1} 5^{i-1} strata[i]`.
    pub weighted: i64,
    /// `sum_i strata[i]`, which must equal `n` (the Euler characteristic of
    /// the hyperplane).
    pub total: i64,
}

fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128) as i64
}

pub fn stratum_euler_chars(n: u32) -> Result<StratumEulerChars, AssemblyError> {
    if !(2..=24).contains(&n) {
        return Err(AssemblyError::InvalidArgument(format!(
            "ambient dimension must be in 2..=24, got {n}"
        )));
    }
    let coords = n as u64 + 1;
    // chi(T_k): the hyperplane in P^{k-1} is P^{k-2}, with chi = k - 1, and
    // splits by support into C(k, j) copies of T_j for j = 2..=k.
    let mut torus: Vec<i64> = Vec::new();
    for k in 2..=coords {
        let lower: i64 = (2..k).map(|j| binomial(k, j) * torus[(j - 2) as usize]).sum();
        torus.push(k as i64 - 1 - lower);
    }
    let strata: Vec<i64> = (0..n as u64)
        .map(|i| binomial(coords, i + 2) * torus[i as usize])
        .collect();
    let weighted = strata
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &chi)| 5i64.pow(i as u32 - 1) * chi)
        .sum();
    let total = strata.iter().sum();
    Ok(StratumEulerChars {
        ambient: n,
        torus,
        strata,
        weighted,
        total,
    })
}

/// Euler characteristics of the same stratification restricted to the
/// affine chart C^3 around a point of the smallest stratum: only the point
/// itself carries the quiver model, so the Quot factors cancel out.
pub const AFFINE_CHART_STRATA: [i64; 4] = [1, 0, 0, 0];

/// The two factors of the quintic series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuinticFactors {
    /// `Z^{Q,W}(t)^{chi(X_(0))}`.
    pub quiver_part: TruncatedSeries,
    /// `(M(-t^5)^5)^{weighted}`.
    pub macmahon_part: TruncatedSeries,
    pub quiver_exponent: i64,
    pub macmahon_exponent: i64,
}

impl QuinticFactors {
    pub fn product(&self) -> TruncatedSeries {
        self.quiver_part.mul(&self.macmahon_part).expect("same shape")
    }
}

/// Exponents come from the stratification of the hyperplane in `P^4`:
/// `chi(X_(0)) = 10` copies of the quiver model and `5 * weighted = -50`
/// for the Quot factor in `t^5`.
pub fn quintic_factors(trunc: u32) -> Result<QuinticFactors, AssemblyError> {
    let strata = stratum_euler_chars(4)?;
    let quiver_exponent = strata.strata[0];
    let macmahon_exponent = 5 * strata.weighted;
    let z = dt_quiver_series(trunc)?.univariate;
    let quiver_part = z.pow(quiver_exponent)?;
    let m = macmahon(trunc.div_ceil(5)).substitute_power(-1, 5, trunc)?;
    let macmahon_part = m.pow(macmahon_exponent)?;
    Ok(QuinticFactors {
        quiver_part,
        macmahon_part,
        quiver_exponent,
        macmahon_exponent,
    })
}

/// `Z(t) = Z^{Q,W}(t)^{10} M(-t^5)^{-50}`.
pub fn quintic_series(trunc: u32) -> Result<TruncatedSeries, AssemblyError> {
    Ok(quintic_factors(trunc)?.product())
}

/// Coefficients of a univariate series as `i64`, for comparisons in tests and reports.
pub fn small_coefficients(s: &TruncatedSeries) -> Option<Vec<i64>> {
    s.degree_sums().iter().map(|c| c.to_i64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn univariate_quiver_series() {
        let r = dt_quiver_series(5).unwrap();
        let u = small_coefficients(&r.univariate).unwrap();
        assert_eq!(u[..5], REFERENCE_UNIVARIATE[..5]);
        assert_eq!(u[5], 89);
        assert_eq!(dt_quiver_series(0).unwrap().univariate, TruncatedSeries::one(1, 0));
    }

    #[test]
    fn degree_three_orbits() {
        let r = dt_quiver_series(3).unwrap();
        let get = |e: [u32; 5]| {
            let rep = orbit_representative(&e);
            r.orbit_view.iter().find(|o| o.rep_exponent == rep).map(|o| o.coefficient.clone())
        };
        assert_eq!(get([1, 2, 0, 0, 0]), Some(BigInt::from(3)));
        assert_eq!(get([2, 0, 1, 0, 0]), Some(BigInt::from(1)));
        assert_eq!(get([1, 1, 1, 0, 0]), Some(BigInt::from(-8)));
        assert_eq!(get([1, 1, 0, 1, 0]), Some(BigInt::from(8)));
        assert!(r.anomalies.is_empty(), "{:?}", r.anomalies);
    }

    #[test]
    fn orbifold_series() {
        let w = QUINTIC_WEIGHTS;
        assert_eq!(dt_orbifold_series(&w, 0).unwrap(), TruncatedSeries::one(5, 0));
        let s = dt_orbifold_series(&w, 1).unwrap();
        assert_eq!(s.coeff(&[1, 0, 0, 0, 0]), BigInt::from(1));
        let c3 = dt_orbifold_series(&ColorWeights::reduced(1, 1, 1, 1).unwrap(), 5).unwrap();
        assert_eq!(small_coefficients(&c3).unwrap(), vec![1, -1, 3, -6, 13, -24]);
    }

    #[test]
    fn quot_factor_low_degrees() {
        let q = small_coefficients(&quot_factor(2)).unwrap();
        assert_eq!(q, vec![1, -5, 25]);
    }

    #[test]
    fn euler_characteristics() {
        let s = stratum_euler_chars(4).unwrap();
        assert_eq!(s.strata, vec![10, -10, 5, -1]);
        assert_eq!(s.weighted, -10);
        assert_eq!(s.total, 4);
        assert_eq!(s.torus[0], 1);
        let line = stratum_euler_chars(2).unwrap();
        assert_eq!(line.strata, vec![3, -1]);
        assert_eq!(line.total, 2);
        for n in 2..=12 {
            assert_eq!(stratum_euler_chars(n).unwrap().total, n as i64);
        }
        assert!(stratum_euler_chars(1).is_err());
    }

    #[test]
    fn quintic() {
        let f = quintic_factors(5).unwrap();
        assert_eq!(f.quiver_exponent, 10);
        assert_eq!(f.macmahon_exponent, -50);
        let z = small_coefficients(&f.product()).unwrap();
        assert_eq!(z[..5], REFERENCE_QUINTIC[..5]);
        assert_eq!(z[5], 1452940);
        assert_eq!(f.quiver_part.coeff(&[5]), BigInt::from(1452890));
        assert_eq!(f.macmahon_part.coeff(&[5]), BigInt::from(50));
        let short = quintic_series(4).unwrap();
        assert_eq!(short, dt_quiver_series(4).unwrap().univariate.pow(10).unwrap());
    }

    #[test]
    fn affine_chart_has_no_quot_contribution() {
        let [chi0, rest @ ..] = AFFINE_CHART_STRATA;
        let weighted: i64 = rest.iter().enumerate().map(|(i, &c)| 5i64.pow(i as u32) * c).sum();
        assert_eq!((chi0, weighted), (1, 0));
    }
}
