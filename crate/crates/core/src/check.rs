//! Cross-validation of every module against the others and against printed
//! reference values.

use num_bigint::BigInt;
use serde::Serialize;

use crate::assembly::{
    coefficient_discrepancies, dt_orbifold_series, dt_quiver_series, quiver_sign, quintic_factors,
    reference_discrepancies, stratum_euler_chars, AssemblyError, REFERENCE_QUINTIC, REFERENCE_UNIVARIATE,
};
use crate::multicolor::{decompose, for_each_multicolored, multicolor_oracle, multicolor_product};
use crate::plane_partition::{colored_gf, size_counts, ColorWeights, QUINTIC_WEIGHTS};
use crate::quiver::{DimensionVector, QuantumMatrix, Quiver};
use crate::series::{macmahon, TruncatedSeries};

/// Largest truncation at which the coloring oracle is run.
pub const ORACLE_CEILING: u32 = 5;
/// Largest truncation accepted by [`run_check`].
pub const PRODUCT_CEILING: u32 = 10;
/// Boxes per instance in the exhaustive decomposition round trip.
pub const ROUND_TRIP_BOXES: u32 = 3;
/// Highest degree of the printed multivariate table that must agree exactly.
pub const EXACT_ORBIT_DEGREE: u32 = 4;

/// Local exponent matrix of the quintic at vertex 0.
pub const LOCAL_QUINTIC_EXPONENTS: [[u32; 4]; 4] = [[0, 3, 4, 3], [2, 0, 4, 4], [1, 1, 0, 3], [2, 1, 2, 0]];

/// Euler characteristics of the strata of the quintic hyperplane in `P^4`.
pub const QUINTIC_STRATA: [i64; 4] = [10, -10, 5, -1];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
    /// The computation is self-consistent but disagrees with a printed value.
    ReferenceAnomaly,
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
            CheckStatus::ReferenceAnomaly => "reference_anomaly",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
    pub witnesses: Vec<String>,
}

impl CheckItem {
    fn from_witnesses(name: &'static str, detail: impl Into<String>, witnesses: Vec<String>) -> Self {
        let status = if witnesses.is_empty() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self {
            name,
            status,
            detail: detail.into(),
            witnesses,
        }
    }

    fn anomaly_if_any(name: &'static str, detail: impl Into<String>, witnesses: Vec<String>) -> Self {
        let mut item = Self::from_witnesses(name, detail, witnesses);
        if item.status == CheckStatus::Fail {
            item.status = CheckStatus::ReferenceAnomaly;
        }
        item
    }

    fn skipped(name: &'static str, detail: impl Into<String>) -> Self {
        Self {
            name,
            status: CheckStatus::Skipped,
            detail: detail.into(),
            witnesses: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub trunc: u32,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    /// True when no item has status `fail`.
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status != CheckStatus::Fail)
    }

    pub fn item(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.name == name)
    }
}

fn series_witnesses(label: &str, left: &TruncatedSeries, right: &TruncatedSeries) -> Vec<String> {
    if left == right {
        return Vec::new();
    }
    let mut keys: Vec<_> = left.terms().keys().chain(right.terms().keys()).cloned().collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter(|e| left.coeff(e) != right.coeff(e))
        .take(8)
        .map(|e| format!("{label} at {e:?}: {} vs {}", left.coeff(&e), right.coeff(&e)))
        .collect()
}

fn printed_prefix(printed: &[i64], upto: u32) -> &[i64] {
    &printed[..printed.len().min(upto as usize + 1)]
}

/// Runs every check at truncation `trunc`. Oracle-based checks are skipped
/// above [`ORACLE_CEILING`]; truncations above [`PRODUCT_CEILING`] are rejected.
pub fn run_check(trunc: u32) -> Result<CheckReport, AssemblyError> {
    if trunc > PRODUCT_CEILING {
        return Err(AssemblyError::InvalidArgument(format!(
            "check supports truncation up to {PRODUCT_CEILING}, got {trunc}"
        )));
    }
    let mut items = Vec::new();
    let q = Quiver::mckay(&QUINTIC_WEIGHTS);

    let counts = size_counts(trunc);
    let m = macmahon(trunc);
    let w: Vec<String> = counts
        .iter()
        .zip(m.degree_sums())
        .enumerate()
        .filter(|(_, (c, s))| BigInt::from(**c) != *s)
        .map(|(n, (c, s))| format!("size {n}: enumerated {c}, MacMahon {s}"))
        .collect();
    items.push(CheckItem::from_witnesses(
        "macmahon_enumeration",
        format!("plane partition counts equal MacMahon coefficients to degree {trunc}"),
        w,
    ));

    let product = multicolor_product(trunc);
    if trunc <= ORACLE_CEILING {
        let oracle = multicolor_oracle(&q, trunc)?;
        let w = series_witnesses("oracle vs product", &oracle.to_series(5), &product);
        items.push(CheckItem::from_witnesses(
            "oracle_product_equivalence",
            format!("direct coloring enumeration equals the product formula, {} dimension vectors", oracle.len()),
            w,
        ));
    } else {
        items.push(CheckItem::skipped(
            "oracle_product_equivalence",
            format!("truncation above oracle ceiling {ORACLE_CEILING}"),
        ));
    }

    let mut w = Vec::new();
    for e in product.terms().keys() {
        let d = DimensionVector::from(e.as_slice());
        let sign = quiver_sign(&q, &d)?;
        let dim = q.framed_moduli_dim(&d)?;
        let other = if dim.rem_euclid(2) == 0 { 1 } else { -1 };
        if sign != other {
            w.push(format!("{d}: sign {sign}, framed dimension {dim}"));
        }
    }
    items.push(CheckItem::from_witnesses(
        "sign_rule_identity",
        format!("(-1)^(|d|+<d,d>) equals (-1)^(framed dimension) on {} vectors", product.len()),
        w,
    ));

    let report = dt_quiver_series(trunc)?;
    let mut w = series_witnesses("n_Q shift", &product, &product.cyclic_shift(1));
    w.extend(series_witnesses(
        "Z shift",
        &report.multivariate,
        &report.multivariate.cyclic_shift(1),
    ));
    items.push(CheckItem::from_witnesses(
        "cyclic_symmetry",
        "counts and signed series are invariant under rotating vertices",
        w,
    ));

    let from_orbits = TruncatedSeries::from_orbits(5, trunc, &report.orbit_view)?;
    let mut w = series_witnesses("orbit round trip", &from_orbits, &report.multivariate);
    w.extend(series_witnesses(
        "specialized orbits",
        &from_orbits.specialize(),
        &report.univariate,
    ));
    w.extend(series_witnesses(
        "colored specialization",
        &colored_gf(&QUINTIC_WEIGHTS, trunc).specialize(),
        &m,
    ));
    items.push(CheckItem::from_witnesses(
        "specialization_consistency",
        "specializing commutes with orbit compression and colored counting",
        w,
    ));

    let diffs = reference_discrepancies(&report.orbit_view);
    let (low, high): (Vec<_>, Vec<_>) = diffs
        .iter()
        .partition(|d| d.printed_exponent.iter().sum::<u32>() <= EXACT_ORBIT_DEGREE);
    items.push(CheckItem::from_witnesses(
        "reference_orbits",
        format!(
            "printed orbit coefficients through degree {}",
            trunc.min(EXACT_ORBIT_DEGREE)
        ),
        low.iter().map(|d| d.to_string()).collect(),
    ));
    if trunc > EXACT_ORBIT_DEGREE {
        items.push(CheckItem::anomaly_if_any(
            "reference_orbits_degree5",
            "printed degree-5 orbit row against the enumerated table",
            high.iter().map(|d| d.to_string()).collect(),
        ));
    } else {
        items.push(CheckItem::skipped("reference_orbits_degree5", "truncation below 5"));
    }

    let factors = quintic_factors(trunc)?;
    let quintic = factors.product();
    for (name, series, printed) in [
        ("reference_univariate", &report.univariate, &REFERENCE_UNIVARIATE[..]),
        ("reference_quintic", &quintic, &REFERENCE_QUINTIC[..]),
    ] {
        let diffs = coefficient_discrepancies(series, printed_prefix(printed, trunc.min(EXACT_ORBIT_DEGREE)));
        items.push(CheckItem::from_witnesses(
            name,
            format!("printed coefficients through degree {}", trunc.min(EXACT_ORBIT_DEGREE)),
            diffs
                .iter()
                .map(|(n, p, c)| format!("degree {n}: printed {p}, computed {c}"))
                .collect(),
        ));
    }
    if trunc > EXACT_ORBIT_DEGREE {
        let mut w = Vec::new();
        for (label, series, printed) in [
            ("univariate", &report.univariate, &REFERENCE_UNIVARIATE[..]),
            ("quintic", &quintic, &REFERENCE_QUINTIC[..]),
        ] {
            w.extend(
                coefficient_discrepancies(series, printed)
                    .into_iter()
                    .filter(|(n, _, _)| *n == 5)
                    .map(|(n, p, c)| format!("{label} degree {n}: printed {p}, computed {c}")),
            );
        }
        items.push(CheckItem::anomaly_if_any(
            "reference_degree5",
            "printed degree-5 univariate and quintic coefficients",
            w,
        ));
    } else {
        items.push(CheckItem::skipped("reference_degree5", "truncation below 5"));
    }

    let mut w = Vec::new();
    if factors.macmahon_part.coeff(&[5]) != BigInt::from(if trunc >= 5 { 50 } else { 0 }) {
        w.push(format!("MacMahon factor at t^5: {}", factors.macmahon_part.coeff(&[5])));
    }
    if quintic.coeff(&[5]) != factors.quiver_part.coeff(&[5]) + factors.macmahon_part.coeff(&[5]) {
        w.push("degree-5 coefficient is not the sum of the factor contributions".into());
    }
    if (factors.quiver_exponent, factors.macmahon_exponent) != (10, -50) {
        w.push(format!(
            "exponents {} and {}",
            factors.quiver_exponent, factors.macmahon_exponent
        ));
    }
    items.push(CheckItem::from_witnesses(
        "quintic_decomposition",
        format!(
            "t^5: {} from the quiver factor plus {} from the MacMahon factor",
            factors.quiver_part.coeff(&[5]),
            factors.macmahon_part.coeff(&[5])
        ),
        w,
    ));

    let euler = stratum_euler_chars(4)?;
    let mut w = Vec::new();
    if euler.strata != QUINTIC_STRATA {
        w.push(format!("strata {:?}", euler.strata));
    }
    if euler.weighted != -10 {
        w.push(format!("weighted combination {}", euler.weighted));
    }
    if euler.total != 4 {
        w.push(format!("total {}", euler.total));
    }
    items.push(CheckItem::from_witnesses(
        "euler_characteristics",
        format!("strata {:?}, weighted {}, total {}", euler.strata, euler.weighted, euler.total),
        w,
    ));
    items.push(CheckItem::anomaly_if_any(
        "stratum_zero_reference",
        "the smallest stratum consists of the 10 points with two nonzero coordinates",
        vec![format!(
            "printed chi(X_(0)) = 0, but the quiver exponent requires {}",
            euler.strata[0]
        )],
    ));

    let global = QuantumMatrix::generic_quintic();
    let mut w = Vec::new();
    let local = global.local(0)?;
    let expected: Vec<Vec<u32>> = LOCAL_QUINTIC_EXPONENTS.iter().map(|r| r.to_vec()).collect();
    if local.exponents() != expected.as_slice() {
        w.push(format!("local matrix at 0: {:?}", local.exponents()));
    }
    for base in 0..5 {
        let ext = global.local(base)?.ext_quiver()?;
        if ext.find_label_isomorphism(&q).is_none() {
            w.push(format!("Ext quiver at base {base} is not label-isomorphic to the McKay quiver"));
        }
    }
    items.push(CheckItem::from_witnesses(
        "quantum_matrix_chain",
        "local matrices and their Ext quivers at all five bases",
        w,
    ));

    let c3 = dt_orbifold_series(&ColorWeights::reduced(1, 1, 1, 1)?, trunc)?;
    let signed_macmahon = m.substitute_power(-1, 1, trunc)?;
    items.push(CheckItem::from_witnesses(
        "commutative_sanity",
        format!("orbifold series of the trivial group equals M(-t) to degree {trunc}"),
        series_witnesses("C^3", &c3, &signed_macmahon),
    ));

    let boxes = trunc.min(ROUND_TRIP_BOXES);
    let mut w = Vec::new();
    let mut instances = 0usize;
    for_each_multicolored(&q, boxes, |mc| {
        instances += 1;
        if let Err(e) = decompose(mc) {
            w.push(format!("{}: {e}", mc.partition()));
        }
    })?;
    items.push(CheckItem::from_witnesses(
        "decomposition_round_trip",
        format!("{instances} multi-colored partitions with total at most {boxes}"),
        w,
    ));

    Ok(CheckReport { trunc, items })
}
