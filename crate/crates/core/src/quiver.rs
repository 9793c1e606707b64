//! Labeled quivers, dimension vectors, and quantum parameter matrices.
//!
//! Vertices are residues `0..r`. Every arrow carries one of the labels
//! `x`, `y`, `z`, which tie it to a coordinate direction of a plane partition.
//! Quantum parameters `q_ij = q^{m_ij}` are stored by their integer
//! exponents modulo `r`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::plane_partition::ColorWeights;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("arrow {source_vertex} -> {target} is out of range for {vertices} vertices")]
    VertexOutOfRange {
        source_vertex: usize,
        target: usize,
        vertices: usize,
    },
    #[error("quiver must have at least one vertex")]
    NoVertices,
    #[error("quantum matrix is not antisymmetric mod {r} at ({i}, {j})")]
    NotAntisymmetric { r: u32, i: usize, j: usize },
    #[error("quantum matrix must be square")]
    NotSquare,
    #[error("base index {base} out of range for a {n}x{n} matrix")]
    BaseOutOfRange { base: usize, n: usize },
    #[error("expected a 4x4 local matrix, got {0}x{0}")]
    NotLocalQuintic(usize),
}

/// Integer vector indexed by quiver vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimensionVector(Vec<i64>);

impl DimensionVector {
    pub fn new(entries: Vec<i64>) -> Self {
        Self(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|d|`, the sum of the entries.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Moves entry `i` to position `i + s mod len`.
    pub fn cyclic_shift(&self, s: i64) -> Self {
        let n = self.0.len();
        let mut out = vec![0; n];
        for (i, &v) in self.0.iter().enumerate() {
            out[(i as i64 + s).rem_euclid(n as i64) as usize] = v;
        }
        Self(out)
    }

    /// The entries as a monomial exponent; `None` if any entry is negative.
    pub fn to_exponent(&self) -> Option<Vec<u32>> {
        self.0.iter().map(|&v| u32::try_from(v).ok()).collect()
    }
}

impl From<&[u32]> for DimensionVector {
    fn from(e: &[u32]) -> Self {
        Self(e.iter().map(|&v| v as i64).collect())
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    X,
    Y,
    Z,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::X, Label::Y, Label::Z];

    /// Coordinate axis of a box that this label moves along.
    pub fn axis(self) -> usize {
        match self {
            Label::X => 0,
            Label::Y => 1,
            Label::Z => 2,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Label::X => "x",
            Label::Y => "y",
            Label::Z => "z",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: Label,
}

/// Serialized as `[source, target, "label"]`.
impl Serialize for Arrow {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.source, self.target, self.label).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Arrow {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (source, target, label) = <(usize, usize, Label)>::deserialize(d)?;
        Ok(Arrow { source, target, label })
    }
}

/// A quiver with labeled arrows. Arrows are kept sorted by
/// `(source, label, target)`, so two quivers with the same arrow multiset
/// compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Quiver {
    #[serde(rename = "vertices")]
    num_vertices: usize,
    arrows: Vec<Arrow>,
}

#[derive(Deserialize)]
struct QuiverDoc {
    vertices: usize,
    arrows: Vec<Arrow>,
}

impl<'de> Deserialize<'de> for Quiver {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = QuiverDoc::deserialize(d)?;
        Quiver::new(doc.vertices, doc.arrows).map_err(serde::de::Error::custom)
    }
}

impl Quiver {
    pub fn new(num_vertices: usize, mut arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        if num_vertices == 0 {
            return Err(QuiverError::NoVertices);
        }
        for a in &arrows {
            if a.source >= num_vertices || a.target >= num_vertices {
                return Err(QuiverError::VertexOutOfRange {
                    source_vertex: a.source,
                    target: a.target,
                    vertices: num_vertices,
                });
            }
        }
        arrows.sort_by_key(|a| (a.source, a.label, a.target));
        Ok(Self { num_vertices, arrows })
    }

    /// McKay quiver of the cyclic action with weights `w`: arrows
    /// `x_i: i -> i+a`, `y_i: i -> i+b`, `z_i: i -> i+c`.
    pub fn mckay(w: &ColorWeights) -> Self {
        let r = w.r() as usize;
        let [a, b, c] = w.weights().map(|v| v as usize);
        let arrows = (0..r)
            .flat_map(|i| {
                [
                    Arrow { source: i, target: (i + a) % r, label: Label::X },
                    Arrow { source: i, target: (i + b) % r, label: Label::Y },
                    Arrow { source: i, target: (i + c) % r, label: Label::Z },
                ]
            })
            .collect();
        Self::new(r, arrows).expect("targets reduced mod r")
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Every vertex has exactly one outgoing and one incoming arrow of each label.
    pub fn has_one_arrow_per_label(&self) -> bool {
        let n = self.num_vertices;
        let mut out = vec![[0usize; 3]; n];
        let mut inc = vec![[0usize; 3]; n];
        for a in &self.arrows {
            out[a.source][a.label.axis()] += 1;
            inc[a.target][a.label.axis()] += 1;
        }
        out.iter().chain(&inc).all(|c| *c == [1, 1, 1])
    }

    fn check_len(&self, d: &DimensionVector) -> Result<(), QuiverError> {
        if d.len() != self.num_vertices {
            return Err(QuiverError::DimensionMismatch {
                expected: self.num_vertices,
                got: d.len(),
            });
        }
        Ok(())
    }

    /// `<d, d'> = sum_i d_i d'_i - sum_{a: i -> j} d_i d'_j`.
    pub fn bilinear_form(&self, d: &DimensionVector, d2: &DimensionVector) -> Result<i64, QuiverError> {
        self.check_len(d)?;
        self.check_len(d2)?;
        let (u, v) = (d.entries(), d2.entries());
        let diag: i64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
        let arrows: i64 = self.arrows.iter().map(|a| u[a.source] * v[a.target]).sum();
        Ok(diag - arrows)
    }

    /// `chi(d, d') = <d, d'> - <d', d>`.
    pub fn euler_pairing(&self, d: &DimensionVector, d2: &DimensionVector) -> Result<i64, QuiverError> {
        Ok(self.bilinear_form(d, d2)? - self.bilinear_form(d2, d)?)
    }

    /// `|d| - <d, d>`, the dimension of the smooth space of framed
    /// representations whose critical locus carries the fixed points.
    pub fn framed_moduli_dim(&self, d: &DimensionVector) -> Result<i64, QuiverError> {
        Ok(d.total() - self.bilinear_form(d, d)?)
    }

    /// The quiver obtained by sending vertex `v` to `vertex_map[v]` and each
    /// label through `label_map` (indexed by [`Label::axis`]).
    pub fn relabeled(&self, vertex_map: &[usize], label_map: [Label; 3]) -> Result<Self, QuiverError> {
        if vertex_map.len() != self.num_vertices {
            return Err(QuiverError::DimensionMismatch {
                expected: self.num_vertices,
                got: vertex_map.len(),
            });
        }
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                source: vertex_map[a.source],
                target: vertex_map[a.target],
                label: label_map[a.label.axis()],
            })
            .collect();
        Self::new(self.num_vertices, arrows)
    }

    /// Searches for a vertex bijection and label permutation carrying `self`
    /// onto `other`. Returns the lexicographically first one found.
    pub fn find_label_isomorphism(&self, other: &Quiver) -> Option<LabeledIsomorphism> {
        if self.num_vertices != other.num_vertices || self.arrows.len() != other.arrows.len() {
            return None;
        }
        let n = self.num_vertices;
        let label_perms = permutations(3);
        // Exhaustive for small quivers; larger ones only try affine maps of Z/n.
        let vertex_maps: Vec<Vec<usize>> = if n <= 7 {
            permutations(n)
        } else {
            (1..n)
                .flat_map(|scale| (0..n).map(move |off| (0..n).map(|v| (scale * v + off) % n).collect()))
                .filter(|m: &Vec<usize>| is_bijection(m))
                .collect()
        };
        for vm in &vertex_maps {
            for lp in &label_perms {
                let labels = [Label::ALL[lp[0]], Label::ALL[lp[1]], Label::ALL[lp[2]]];
                if self.relabeled(vm, labels).ok().as_ref() == Some(other) {
                    return Some(LabeledIsomorphism {
                        vertex_map: vm.clone(),
                        label_map: labels,
                    });
                }
            }
        }
        None
    }
}

fn is_bijection(m: &[usize]) -> bool {
    let mut seen = vec![false; m.len()];
    m.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledIsomorphism {
    pub vertex_map: Vec<usize>,
    pub label_map: [Label; 3],
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vertices;", self.num_vertices)?;
        for a in &self.arrows {
            write!(f, " {}{}: {} -> {}", a.label, a.source, a.source, a.target)?;
        }
        Ok(())
    }
}

/// Antisymmetric exponent matrix over `Z/r`: entry `(i, j)` is `m_ij` with
/// `q_ij = q^{m_ij}`, `m_ji = -m_ij` and `m_ii = 0` modulo `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuantumMatrix {
    r: u32,
    exponents: Vec<Vec<u32>>,
}

impl QuantumMatrix {
    /// Entries are reduced modulo `r` before validation.
    pub fn new(r: u32, exponents: Vec<Vec<i64>>) -> Result<Self, QuiverError> {
        let n = exponents.len();
        if exponents.iter().any(|row| row.len() != n) {
            return Err(QuiverError::NotSquare);
        }
        let reduced: Vec<Vec<u32>> = exponents
            .iter()
            .map(|row| row.iter().map(|&m| m.rem_euclid(r as i64) as u32).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                if !(reduced[i][j] + reduced[j][i]).is_multiple_of(r) {
                    return Err(QuiverError::NotAntisymmetric { r, i, j });
                }
            }
        }
        Ok(Self { r, exponents: reduced })
    }

    /// Quantum parameters of the generic quantum Fermat quintic: `q` above the
    /// diagonal at odd offsets, `q^{-1}` at even offsets.
    pub fn generic_quintic() -> Self {
        let m = (0..5)
            .map(|i: i64| {
                (0..5)
                    .map(|j: i64| match (j - i).signum() {
                        0 => 0,
                        s => s * if (j - i).abs() % 2 == 1 { 1 } else { -1 },
                    })
                    .collect()
            })
            .collect();
        Self::new(5, m).expect("antisymmetric by construction")
    }

    pub fn modulus(&self) -> u32 {
        self.r
    }

    pub fn size(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponent(&self, i: usize, j: usize) -> u32 {
        self.exponents[i][j]
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    /// Commutation exponents of the localized generators `u_i = t_i t_base^{-1}`:
    /// entry `(i, j)` is `(e_i - e_base)^T M (e_j - e_base) mod r` over the
    /// indices `i, j != base`, in increasing order.
    pub fn local(&self, base: usize) -> Result<Self, QuiverError> {
        let n = self.size();
        if base >= n {
            return Err(QuiverError::BaseOutOfRange { base, n });
        }
        let m = |i: usize, j: usize| self.exponents[i][j] as i64;
        let others: Vec<usize> = (0..n).filter(|&i| i != base).collect();
        let local = others
            .iter()
            .map(|&i| {
                others
                    .iter()
                    .map(|&j| m(i, j) - m(i, base) - m(base, j) + m(base, base))
                    .collect()
            })
            .collect();
        Self::new(self.r, local)
    }

    /// Ext-quiver of the one-dimensional simple modules of the localized
    /// algebra. Generator 0 acts invertibly; each other generator `k = 1, 2, 3`
    /// contributes one arrow `i -> i + m_{0k}` at every vertex `i`, labeled
    /// `x`, `y`, `z` respectively.
    pub fn ext_quiver(&self) -> Result<Quiver, QuiverError> {
        if self.size() != 4 {
            return Err(QuiverError::NotLocalQuintic(self.size()));
        }
        let r = self.r as usize;
        let arrows = (0..r)
            .flat_map(|i| {
                Label::ALL.into_iter().enumerate().map(move |(k, label)| (i, k + 1, label))
            })
            .map(|(i, k, label)| Arrow {
                source: i,
                target: (i + self.exponents[0][k] as usize) % r,
                label,
            })
            .collect();
        Quiver::new(r, arrows)
    }
}

impl fmt::Display for QuantumMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.exponents.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row
                .iter()
                .map(|&m| match m {
                    0 => "1".to_string(),
                    1 => "q".to_string(),
                    m => format!("q^{m}"),
                })
                .collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The fixed identification of the Ext-quiver with the McKay quiver of
/// `(1, 1, 3)` mod 5: vertex `i` goes to `2 i`, the two generators shifting
/// by 3 become `x` and `y`, and the one shifting by 4 becomes `z`. The other
/// identifications are this one followed by a rotation.
pub fn quintic_identification() -> LabeledIsomorphism {
    LabeledIsomorphism {
        vertex_map: (0..5).map(|i| (2 * i) % 5).collect(),
        label_map: [Label::X, Label::Z, Label::Y],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_partition::QUINTIC_WEIGHTS;

    fn dv(v: &[i64]) -> DimensionVector {
        DimensionVector::new(v.to_vec())
    }

    #[test]
    fn mckay_quivers() {
        let q = Quiver::mckay(&QUINTIC_WEIGHTS);
        assert_eq!(q.num_vertices(), 5);
        assert_eq!(q.arrows().len(), 15);
        for a in q.arrows() {
            let shift = (a.target + 5 - a.source) % 5;
            match a.label {
                Label::X | Label::Y => assert_eq!(shift, 1),
                Label::Z => assert_eq!(shift, 3),
            }
        }
        assert!(q.has_one_arrow_per_label());

        let trivial = Quiver::mckay(&ColorWeights::new(1, 0, 0, 0).unwrap());
        assert_eq!(trivial.num_vertices(), 1);
        assert!(trivial.arrows().iter().all(|a| a.source == 0 && a.target == 0));
        assert_eq!(trivial.arrows().len(), 3);

        let two = Quiver::mckay(&ColorWeights::new(2, 1, 1, 1).unwrap());
        assert_eq!(two.arrows().iter().filter(|a| a.source == 0 && a.target == 1).count(), 3);
        assert_eq!(two.arrows().iter().filter(|a| a.source == 1 && a.target == 0).count(), 3);
    }

    #[test]
    fn forms_on_the_quintic_quiver() {
        let q = Quiver::mckay(&QUINTIC_WEIGHTS);
        let e = |i| DimensionVector::unit(5, i);
        assert_eq!(q.bilinear_form(&e(0), &e(0)).unwrap(), 1);
        assert_eq!(q.bilinear_form(&dv(&[1, 1, 0, 0, 0]), &dv(&[1, 1, 0, 0, 0])).unwrap(), 0);
        assert_eq!(q.bilinear_form(&dv(&[1, 0, 1, 0, 0]), &dv(&[1, 0, 1, 0, 0])).unwrap(), 1);
        assert_eq!(q.euler_pairing(&e(0), &e(1)).unwrap(), -2);
        assert_eq!(q.euler_pairing(&e(0), &e(3)).unwrap(), -1);
        assert_eq!(q.euler_pairing(&dv(&[3, 1, 4, 1, 5]), &dv(&[3, 1, 4, 1, 5])).unwrap(), 0);
        assert_eq!(q.framed_moduli_dim(&e(0)).unwrap(), 0);
        assert_eq!(q.framed_moduli_dim(&dv(&[1, 1, 0, 0, 0])).unwrap(), 2);
        assert_eq!(q.framed_moduli_dim(&dv(&[1, 0, 1, 0, 0])).unwrap(), 1);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let q = Quiver::mckay(&QUINTIC_WEIGHTS);
        assert_eq!(
            q.bilinear_form(&dv(&[1, 0]), &DimensionVector::zeros(5)),
            Err(QuiverError::DimensionMismatch { expected: 5, got: 2 })
        );
    }

    #[test]
    fn local_matrix_of_the_quintic() {
        let global = QuantumMatrix::generic_quintic();
        assert_eq!(global.exponents()[0], vec![0, 1, 4, 1, 4]);
        let local = global.local(0).unwrap();
        let expected = QuantumMatrix::new(
            5,
            vec![
                vec![0, 3, 4, 3],
                vec![2, 0, 4, 4],
                vec![1, 1, 0, 3],
                vec![2, 1, 2, 0],
            ],
        )
        .unwrap();
        assert_eq!(local, expected);

        let zero = QuantumMatrix::new(5, vec![vec![0; 5]; 5]).unwrap();
        assert_eq!(zero.local(2).unwrap(), QuantumMatrix::new(5, vec![vec![0; 4]; 4]).unwrap());
        assert!(global.local(5).is_err());
    }

    #[test]
    fn antisymmetry_is_enforced() {
        assert!(matches!(
            QuantumMatrix::new(5, vec![vec![0, 1], vec![1, 0]]),
            Err(QuiverError::NotAntisymmetric { .. })
        ));
        assert!(QuantumMatrix::new(5, vec![vec![0, 1], vec![0]]).is_err());
    }

    #[test]
    fn ext_quiver_of_the_quintic() {
        let local = QuantumMatrix::generic_quintic().local(0).unwrap();
        let ext = local.ext_quiver().unwrap();
        for i in 0..5 {
            let shifts: Vec<usize> = ext
                .arrows()
                .iter()
                .filter(|a| a.source == i)
                .map(|a| (a.target + 5 - i) % 5)
                .collect();
            assert_eq!(shifts, vec![3, 4, 3]);
        }
        let iso = quintic_identification();
        let image = ext.relabeled(&iso.vertex_map, iso.label_map).unwrap();
        assert_eq!(image, Quiver::mckay(&QUINTIC_WEIGHTS));
        assert!(ext.find_label_isomorphism(&Quiver::mckay(&QUINTIC_WEIGHTS)).is_some());

        let commuting = QuantumMatrix::new(5, vec![vec![0; 4]; 4]).unwrap().ext_quiver().unwrap();
        assert_eq!(commuting.num_vertices(), 5);
        assert!(commuting.arrows().iter().all(|a| a.source == a.target));
        assert_eq!(commuting.arrows().len(), 15);
    }

    #[test]
    fn every_rotation_of_the_identification_works() {
        let ext = QuantumMatrix::generic_quintic().local(0).unwrap().ext_quiver().unwrap();
        let mckay = Quiver::mckay(&QUINTIC_WEIGHTS);
        let base = quintic_identification();
        for v in 0..5 {
            let vm: Vec<usize> = base.vertex_map.iter().map(|&u| (u + 5 - base.vertex_map[v]) % 5).collect();
            assert_eq!(vm[v], 0);
            assert_eq!(ext.relabeled(&vm, base.label_map).unwrap(), mckay);
        }
    }

    #[test]
    fn quiver_json_shape() {
        let q = Quiver::mckay(&ColorWeights::new(2, 1, 0, 1).unwrap());
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(
            json,
            r#"{"vertices":2,"arrows":[[0,1,"x"],[0,0,"y"],[0,1,"z"],[1,0,"x"],[1,1,"y"],[1,0,"z"]]}"#
        );
        let back: Quiver = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<Quiver>(r#"{"vertices":1,"arrows":[[0,3,"x"]]}"#).is_err());
    }
}
