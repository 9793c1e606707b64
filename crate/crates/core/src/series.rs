//! Truncated multivariate power series with exact integer coefficients.
//!
//! A [`TruncatedSeries`] represents f(t_0, ..., t_{k-1}) modulo every monomial
//! of total degree greater than its truncation bound `N`.
//!
//! Invariants:
//! - every stored exponent vector has length `num_vars` and total degree <= `N`
//! - no stored coefficient is zero
//! - terms are kept in a `BTreeMap`, so iteration order is lexicographic on
//!   exponent vectors and equality is structural

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Exponent vector of a monomial, one entry per variable.
pub type Exponent = Vec<u32>;

/// Products with more than this many term pairs are split across the rayon pool.
const PARALLEL_MUL_THRESHOLD: usize = 1 << 14;
const PARALLEL_CHUNK: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error(
        "dimension mismatch: ({left_vars} vars, trunc {left_trunc}) vs ({right_vars} vars, trunc {right_trunc})"
    )]
    DimensionMismatch {
        left_vars: usize,
        left_trunc: u32,
        right_vars: usize,
        right_trunc: u32,
    },
    #[error("exponent {exponent:?} has length {len}, expected {expected}")]
    ExponentLength {
        exponent: Exponent,
        len: usize,
        expected: usize,
    },
    #[error("constant term {0} is not a unit, series cannot be inverted")]
    NotInvertible(BigInt),
    #[error("series is not cyclically symmetric: coefficient at {exponent:?} differs from {shifted:?}")]
    SymmetryViolation { exponent: Exponent, shifted: Exponent },
    #[error("expected a univariate series, found {0} variables")]
    NotUnivariate(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, SeriesError>;

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// Rotates an exponent vector so that variable `j` becomes variable `j + s`.
fn rotate(e: &[u32], s: i64) -> Exponent {
    let k = e.len();
    let s = s.rem_euclid(k as i64) as usize;
    let mut out = vec![0; k];
    for (j, &a) in e.iter().enumerate() {
        out[(j + s) % k] = a;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "SeriesDoc", try_from = "SeriesDoc")]
pub struct TruncatedSeries {
    num_vars: usize,
    trunc: u32,
    terms: BTreeMap<Exponent, BigInt>,
}

impl TruncatedSeries {
    /// The zero series in `num_vars` variables.
    ///
    /// Panics if `num_vars` is zero.
    pub fn zero(num_vars: usize, trunc: u32) -> Self {
        assert!(num_vars >= 1, "a series needs at least one variable");
        Self {
            num_vars,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative identity.
    pub fn one(num_vars: usize, trunc: u32) -> Self {
        let mut s = Self::zero(num_vars, trunc);
        s.terms.insert(vec![0; num_vars], BigInt::one());
        s
    }

    /// Builds a one-variable series from coefficients listed by degree.
    /// Coefficients past `trunc` are dropped.
    pub fn univariate<I, C>(trunc: u32, coeffs: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: Into<BigInt>,
    {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .map(|(n, c)| (vec![n as u32], c.into()));
        Self::from_raw(1, trunc, terms)
    }

    /// Builds a series from arbitrary terms. Duplicate exponents are summed,
    /// zero coefficients and exponents past the truncation are dropped.
    pub fn from_terms<I, C>(num_vars: usize, trunc: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, C)>,
        C: Into<BigInt>,
    {
        if num_vars == 0 {
            return Err(SeriesError::InvalidArgument(
                "a series needs at least one variable".into(),
            ));
        }
        let mut checked = Vec::new();
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(SeriesError::ExponentLength {
                    len: e.len(),
                    exponent: e,
                    expected: num_vars,
                });
            }
            checked.push((e, c.into()));
        }
        Ok(Self::from_raw(num_vars, trunc, checked))
    }

    /// Single-term series `c * t^e`.
    pub fn monomial(num_vars: usize, trunc: u32, exponent: Exponent, coeff: impl Into<BigInt>) -> Result<Self> {
        Self::from_terms(num_vars, trunc, [(exponent, coeff.into())])
    }

    fn from_raw<I>(num_vars: usize, trunc: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigInt)>,
    {
        let mut map: BTreeMap<Exponent, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            if degree(&e) > trunc || c.is_zero() {
                continue;
            }
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self {
            num_vars,
            trunc,
            terms: map,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `t^e`; zero when absent.
    pub fn coeff(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&vec![0; self.num_vars])
    }

    /// Sum of the coefficients in each total degree `0..=trunc`.
    pub fn degree_sums(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.trunc as usize + 1];
        for (e, c) in &self.terms {
            out[degree(e) as usize] += c;
        }
        out
    }

    /// The homogeneous part of total degree `n`.
    pub fn homogeneous(&self, n: u32) -> Self {
        Self {
            num_vars: self.num_vars,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| degree(e) == n)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-truncates at a lower total degree. Raising the bound is not possible
    /// and is clamped to the current one.
    pub fn truncated(&self, trunc: u32) -> Self {
        let trunc = trunc.min(self.trunc);
        Self::from_raw(
            self.num_vars,
            trunc,
            self.terms.iter().map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars || self.trunc != other.trunc {
            return Err(SeriesError::DimensionMismatch {
                left_vars: self.num_vars,
                left_trunc: self.trunc,
                right_vars: other.num_vars,
                right_trunc: other.trunc,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            *terms.entry(e.clone()).or_insert_with(BigInt::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Self { terms, ..self.clone_empty() })
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return self.clone_empty();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
            ..self.clone_empty()
        }
    }

    fn clone_empty(&self) -> Self {
        Self::zero(self.num_vars, self.trunc)
    }

    /// Truncated product. Large products are split over the rayon pool; the
    /// result does not depend on the split since integer addition is exact.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let trunc = self.trunc as usize;
        let mut by_degree: Vec<Vec<(&Exponent, &BigInt)>> = vec![Vec::new(); trunc + 1];
        for (e, c) in &other.terms {
            by_degree[degree(e) as usize].push((e, c));
        }
        let left: Vec<(&Exponent, &BigInt)> = self.terms.iter().collect();

        let partial = |chunk: &[(&Exponent, &BigInt)]| {
            let mut acc: HashMap<Exponent, BigInt> = HashMap::new();
            for &(ea, ca) in chunk {
                let room = trunc - degree(ea) as usize;
                for bucket in &by_degree[..=room] {
                    for &(eb, cb) in bucket {
                        let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                        *acc.entry(e).or_insert_with(BigInt::zero) += ca * cb;
                    }
                }
            }
            acc
        };

        let acc = if left.len() * other.terms.len() > PARALLEL_MUL_THRESHOLD {
            left.par_chunks(PARALLEL_CHUNK).map(partial).reduce(HashMap::new, |mut a, b| {
                for (e, c) in b {
                    *a.entry(e).or_insert_with(BigInt::zero) += c;
                }
                a
            })
        } else {
            partial(&left)
        };
        Ok(Self::from_raw(self.num_vars, self.trunc, acc))
    }

    /// Multiplicative inverse, computed one homogeneous degree at a time from
    /// c_0 b_n = -sum_{0<k<=n} a_k b_{n-k}. Requires constant term +1 or -1.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.abs() != BigInt::one() {
            return Err(SeriesError::NotInvertible(c0));
        }
        let slices: Vec<Self> = (0..=self.trunc).map(|n| self.homogeneous(n)).collect();
        // 1/c0 == c0 for a unit.
        let mut inv: Vec<Self> = vec![Self::one(self.num_vars, self.trunc).scale(&c0)];
        let minus_c0 = -c0;
        for n in 1..=self.trunc as usize {
            let mut acc = self.clone_empty();
            for k in 1..=n {
                if slices[k].is_zero() || inv[n - k].is_zero() {
                    continue;
                }
                acc = acc.add(&slices[k].mul(&inv[n - k])?)?;
            }
            inv.push(acc.scale(&minus_c0));
        }
        let mut out = self.clone_empty();
        for slice in inv {
            out.terms.extend(slice.terms);
        }
        Ok(out)
    }

    /// Integer power. Negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inverse()?.pow_unsigned(e.unsigned_abs());
        }
        self.pow_unsigned(e as u64)
    }

    fn pow_unsigned(&self, mut e: u64) -> Result<Self> {
        let mut result = Self::one(self.num_vars, self.trunc);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Sets every variable equal to a single variable `t`.
    pub fn specialize(&self) -> Self {
        Self::univariate(self.trunc, self.degree_sums())
    }

    /// Formal substitution `t -> sign * t^m` into a univariate series, keeping
    /// degrees up to `new_trunc`.
    pub fn substitute_power(&self, sign: i32, m: u32, new_trunc: u32) -> Result<Self> {
        if self.num_vars != 1 {
            return Err(SeriesError::NotUnivariate(self.num_vars));
        }
        if sign != 1 && sign != -1 {
            return Err(SeriesError::InvalidArgument(format!("sign must be +1 or -1, got {sign}")));
        }
        if m == 0 {
            return Err(SeriesError::InvalidArgument("substitution power must be positive".into()));
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let n = e[0];
            let c = if sign == -1 && n % 2 == 1 { -c } else { c.clone() };
            (vec![n as u64 * m as u64], c)
        });
        let terms = terms
            .filter(|(e, _)| e[0] <= new_trunc as u64)
            .map(|(e, c)| (vec![e[0] as u32], c));
        Ok(Self::from_raw(1, new_trunc, terms))
    }

    /// Relabels `t_j` as `t_{j+s mod num_vars}`.
    pub fn cyclic_shift(&self, s: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (rotate(e, s), c.clone())).collect(),
            ..self.clone_empty()
        }
    }

    /// Compresses a cyclically symmetric series into one term per orbit of
    /// exponent vectors under rotation. Orbits are listed by total degree,
    /// then by representative.
    pub fn orbit_compress(&self) -> Result<Vec<OrbitTerm>> {
        for (e, c) in &self.terms {
            let shifted = rotate(e, 1);
            if self.terms.get(&shifted) != Some(c) {
                return Err(SeriesError::SymmetryViolation {
                    exponent: e.clone(),
                    shifted,
                });
            }
        }
        let mut seen: BTreeSet<&Exponent> = BTreeSet::new();
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            if seen.contains(e) {
                continue;
            }
            let orbit: BTreeSet<Exponent> = (0..self.num_vars as i64).map(|s| rotate(e, s)).collect();
            let rep = orbit.iter().next().cloned().expect("orbit is nonempty");
            for member in &orbit {
                let (key, _) = self.terms.get_key_value(member).expect("orbit member is stored");
                seen.insert(key);
            }
            out.push(OrbitTerm {
                rep_exponent: rep,
                coefficient: c.clone(),
                orbit_size: orbit.len(),
            });
        }
        out.sort_by(|a, b| {
            (degree(&a.rep_exponent), &a.rep_exponent).cmp(&(degree(&b.rep_exponent), &b.rep_exponent))
        });
        Ok(out)
    }

    /// Inverse of [`orbit_compress`](Self::orbit_compress).
    pub fn from_orbits(num_vars: usize, trunc: u32, orbits: &[OrbitTerm]) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for o in orbits {
            if o.rep_exponent.len() != num_vars {
                return Err(SeriesError::ExponentLength {
                    exponent: o.rep_exponent.clone(),
                    len: o.rep_exponent.len(),
                    expected: num_vars,
                });
            }
            for s in 0..num_vars as i64 {
                terms.insert(rotate(&o.rep_exponent, s), o.coefficient.clone());
            }
        }
        Ok(Self::from_raw(num_vars, trunc, terms))
    }
}

/// One cyclic orbit of monomials sharing a coefficient.
///
/// `rep_exponent` is the lexicographically smallest rotation; the orbit
/// stands for the sum of its `orbit_size` distinct monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitTerm {
    #[serde(rename = "exponent")]
    pub rep_exponent: Exponent,
    #[serde(with = "decimal")]
    pub coefficient: BigInt,
    pub orbit_size: usize,
}

impl OrbitTerm {
    pub fn degree(&self) -> u32 {
        degree(&self.rep_exponent)
    }

    /// All distinct monomials in the orbit.
    pub fn members(&self) -> BTreeSet<Exponent> {
        let k = self.rep_exponent.len() as i64;
        (0..k).map(|s| rotate(&self.rep_exponent, s)).collect()
    }
}

/// Lexicographically smallest rotation of `e`.
pub fn orbit_representative(e: &[u32]) -> Exponent {
    (0..e.len() as i64).map(|s| rotate(e, s)).min().unwrap_or_default()
}

/// MacMahon's function prod_{n>=1} (1 - t^n)^{-n}, truncated at degree `trunc`.
pub fn macmahon(trunc: u32) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(1, trunc);
    for n in 1..=trunc {
        let factor = TruncatedSeries::from_raw(
            1,
            trunc,
            [(vec![0], BigInt::one()), (vec![n], BigInt::from(-1))],
        );
        let factor = factor.pow(-(n as i64)).expect("1 - t^n is a unit");
        acc = acc.mul(&factor).expect("same shape");
    }
    acc
}

/// Serde helper storing a `BigInt` as a decimal string.
pub mod decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Wire form of a series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub variables: usize,
    pub truncation: u32,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub exponent: Exponent,
    #[serde(with = "decimal")]
    pub coefficient: BigInt,
}

impl From<TruncatedSeries> for SeriesDoc {
    fn from(s: TruncatedSeries) -> Self {
        SeriesDoc {
            variables: s.num_vars,
            truncation: s.trunc,
            terms: s
                .terms
                .into_iter()
                .map(|(exponent, coefficient)| TermDoc { exponent, coefficient })
                .collect(),
        }
    }
}

impl TryFrom<SeriesDoc> for TruncatedSeries {
    type Error = SeriesError;

    fn try_from(doc: SeriesDoc) -> Result<Self> {
        for t in &doc.terms {
            if degree(&t.exponent) > doc.truncation {
                return Err(SeriesError::InvalidArgument(format!(
                    "term {:?} exceeds truncation {}",
                    t.exponent, doc.truncation
                )));
            }
        }
        TruncatedSeries::from_terms(
            doc.variables,
            doc.truncation,
            doc.terms.into_iter().map(|t| (t.exponent, t.coefficient)),
        )
    }
}

fn write_signed_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &BigInt,
    monomial: &str,
) -> fmt::Result {
    let mag = c.abs();
    match (first, c.is_negative()) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if monomial.is_empty() {
        write!(f, "{mag}")
    } else if mag.is_one() {
        write!(f, "{monomial}")
    } else {
        write!(f, "{mag}{monomial}")
    }
}

fn monomial_text(e: &[u32]) -> String {
    if e.len() == 1 {
        return match e[0] {
            0 => String::new(),
            1 => "t".into(),
            n => format!("t^{n}"),
        };
    }
    let factors: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(j, &a)| if a == 1 { format!("t{j}") } else { format!("t{j}^{a}") })
        .collect();
    factors.join("*")
}

/// Text form: `1 + t + 3t^2` for one variable, `1 + t0 - 2t0*t2^3` otherwise,
/// ordered by total degree then lexicographically.
impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| (degree(a.0), a.0).cmp(&(degree(b.0), b.0)));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            write_signed_term(f, i == 0, c, &monomial_text(e))?;
        }
        Ok(())
    }
}

/// Renders orbits as `1 + t^(1,0,0,0,0) + 3t^(1,1,0,0,0) - ...`, where each
/// `t^(a)` is the sum of the distinct monomials in the rotation orbit of `a`.
pub fn render_orbits(orbits: &[OrbitTerm]) -> String {
    struct View<'a>(&'a [OrbitTerm]);
    impl fmt::Display for View<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if self.0.is_empty() {
                return write!(f, "0");
            }
            for (i, o) in self.0.iter().enumerate() {
                let mono = if o.degree() == 0 {
                    String::new()
                } else {
                    let parts: Vec<String> = o.rep_exponent.iter().map(|a| a.to_string()).collect();
                    format!("t^({})", parts.join(","))
                };
                write_signed_term(f, i == 0, &o.coefficient, &mono)?;
            }
            Ok(())
        }
    }
    View(orbits).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni(trunc: u32, c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::univariate(trunc, c.iter().copied())
    }

    fn coeffs(s: &TruncatedSeries) -> Vec<i64> {
        s.degree_sums().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn one_is_identity() {
        assert_eq!(TruncatedSeries::one(1, 5).terms().len(), 1);
        assert_eq!(TruncatedSeries::one(5, 3).coeff(&[0, 0, 0, 0, 0]), BigInt::one());
        let s = uni(4, &[2, -1, 0, 7, 3]);
        assert_eq!(s.mul(&TruncatedSeries::one(1, 4)).unwrap(), s);
    }

    #[test]
    fn small_products() {
        let p = uni(3, &[1, 1]).mul(&uni(3, &[1, -1])).unwrap();
        assert_eq!(p, uni(3, &[1, 0, -1]));
        let p = uni(3, &[1, 1, 1, 1]).mul(&uni(3, &[1, -1])).unwrap();
        assert_eq!(p, TruncatedSeries::one(1, 3));
        let p = uni(2, &[1, 5]).mul(&uni(2, &[1, 5])).unwrap();
        assert_eq!(coeffs(&p), vec![1, 10, 25]);
    }

    #[test]
    fn mismatched_shapes_are_rejected() {
        let a = TruncatedSeries::one(1, 3);
        let b = TruncatedSeries::one(2, 3);
        let c = TruncatedSeries::one(1, 4);
        assert!(matches!(a.mul(&b), Err(SeriesError::DimensionMismatch { .. })));
        assert!(matches!(a.mul(&c), Err(SeriesError::DimensionMismatch { .. })));
    }

    #[test]
    fn powers() {
        assert_eq!(coeffs(&uni(3, &[1, 1]).pow(-1).unwrap()), vec![1, -1, 1, -1]);
        assert_eq!(coeffs(&uni(5, &[1, 0, 0, 0, 0, -1]).pow(-50).unwrap()), vec![1, 0, 0, 0, 0, 50]);
        let z = uni(5, &[1, 5, 5, 20, -210, -131]);
        assert_eq!(
            coeffs(&z.pow(10).unwrap()),
            vec![1, 50, 1175, 17450, 184275, 1450690]
        );
        assert_eq!(z.pow(0).unwrap(), TruncatedSeries::one(1, 5));
    }

    #[test]
    fn non_unit_inverse_fails() {
        let s = uni(3, &[2, 1]);
        assert_eq!(s.pow(-1), Err(SeriesError::NotInvertible(BigInt::from(2))));
        assert!(uni(3, &[0, 1]).inverse().is_err());
        assert_eq!(coeffs(&uni(3, &[-1, 1]).inverse().unwrap()), vec![-1, -1, -1, -1]);
    }

    #[test]
    fn multivariate_inverse() {
        let s = TruncatedSeries::from_terms(
            2,
            4,
            [(vec![0, 0], 1), (vec![1, 0], 3), (vec![1, 1], -2), (vec![0, 3], 5)],
        )
        .unwrap();
        let inv = s.inverse().unwrap();
        assert_eq!(s.mul(&inv).unwrap(), TruncatedSeries::one(2, 4));
    }

    #[test]
    fn specialize_sums_by_degree() {
        let orbit = TruncatedSeries::from_orbits(
            5,
            3,
            &[OrbitTerm {
                rep_exponent: vec![0, 0, 0, 0, 1],
                coefficient: BigInt::one(),
                orbit_size: 5,
            }],
        )
        .unwrap();
        assert_eq!(orbit.specialize(), uni(3, &[0, 5]));
        assert_eq!(TruncatedSeries::one(5, 3).specialize(), TruncatedSeries::one(1, 3));
    }

    #[test]
    fn substitution() {
        let m = uni(2, &[1, 1, 3]);
        assert_eq!(m.substitute_power(-1, 5, 10).unwrap(), {
            let mut c = vec![0; 11];
            c[0] = 1;
            c[5] = -1;
            c[10] = 3;
            uni(10, &c)
        });
        assert_eq!(uni(3, &[1, 1]).substitute_power(1, 2, 3).unwrap(), uni(3, &[1, 0, 1]));
        assert_eq!(uni(3, &[1, 1]).substitute_power(-1, 1, 3).unwrap(), uni(3, &[1, -1]));
        assert!(TruncatedSeries::one(2, 3).substitute_power(1, 1, 3).is_err());
        assert!(uni(3, &[1]).substitute_power(2, 1, 3).is_err());
    }

    #[test]
    fn shifts() {
        let s = TruncatedSeries::monomial(5, 3, vec![1, 0, 0, 0, 0], 1).unwrap();
        assert_eq!(s.cyclic_shift(0), s);
        assert_eq!(s.cyclic_shift(5), s);
        assert_eq!(
            s.cyclic_shift(2),
            TruncatedSeries::monomial(5, 3, vec![0, 0, 1, 0, 0], 1).unwrap()
        );
        assert_eq!(s.cyclic_shift(-1), s.cyclic_shift(4));
    }

    #[test]
    fn orbit_compression() {
        let fixed = TruncatedSeries::monomial(5, 5, vec![1, 1, 1, 1, 1], 7).unwrap();
        let orbits = fixed.orbit_compress().unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].orbit_size, 1);

        let one = TruncatedSeries::one(5, 2).orbit_compress().unwrap();
        assert_eq!(
            one,
            vec![OrbitTerm { rep_exponent: vec![0; 5], coefficient: BigInt::one(), orbit_size: 1 }]
        );

        let lopsided = TruncatedSeries::monomial(5, 2, vec![1, 0, 0, 0, 0], 1).unwrap();
        match lopsided.orbit_compress() {
            Err(SeriesError::SymmetryViolation { exponent, shifted }) => {
                assert_eq!(exponent, vec![1, 0, 0, 0, 0]);
                assert_eq!(shifted, vec![0, 1, 0, 0, 0]);
            }
            other => panic!("expected symmetry violation, got {other:?}"),
        }
    }

    #[test]
    fn macmahon_coefficients() {
        assert_eq!(macmahon(0), TruncatedSeries::one(1, 0));
        assert_eq!(coeffs(&macmahon(5)), vec![1, 1, 3, 6, 13, 24]);
        assert_eq!(macmahon(10).coeff(&[10]), BigInt::from(500));
    }

    #[test]
    fn text_rendering() {
        assert_eq!(macmahon(5).to_string(), "1 + t + 3t^2 + 6t^3 + 13t^4 + 24t^5");
        assert_eq!(uni(3, &[1, -1, 0, -4]).to_string(), "1 - t - 4t^3");
        assert_eq!(uni(3, &[0, -1]).to_string(), "-t");
        assert_eq!(TruncatedSeries::zero(1, 3).to_string(), "0");
        let m = TruncatedSeries::from_terms(3, 4, [(vec![0, 0, 0], 1), (vec![1, 0, 2], -2)]).unwrap();
        assert_eq!(m.to_string(), "1 - 2t0*t2^2");
    }

    #[test]
    fn json_round_trip_and_validation() {
        let s = uni(4, &[1, -3, 0, 12]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"variables":1,"truncation":4,"terms":[{"exponent":[0],"coefficient":"1"},{"exponent":[1],"coefficient":"-3"},{"exponent":[3],"coefficient":"12"}]}"#
        );
        let back: TruncatedSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        let bad = r#"{"variables":1,"truncation":1,"terms":[{"exponent":[2],"coefficient":"1"}]}"#;
        assert!(serde_json::from_str::<TruncatedSeries>(bad).is_err());
    }

    #[test]
    fn big_coefficients_do_not_wrap() {
        let s = uni(1, &[1, i64::MAX]);
        let p = s.pow(3).unwrap();
        let expected = BigInt::from(i64::MAX) * 3;
        assert_eq!(p.coeff(&[1]), expected);
        let big = uni(2, &[3, 1]).pow(200).unwrap();
        assert_eq!(big.coeff(&[0]), BigInt::from(3).pow(200));
    }
}
