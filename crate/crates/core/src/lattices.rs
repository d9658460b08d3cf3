//! Root-system fingerprints for the unit sets of the integer rings.
//!
//! Inner products are `Re(x ȳ)` computed in the ring itself: every family
//! carries a rational metric on its coordinates, so the Eisenstein plane
//! never needs `√3`.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{rat, EisensteinRational, Octonion, Quaternion, Rational};

/// Vectors with rational coordinates and a shared positive-definite metric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorFamily {
    pub vectors: Vec<Vec<Rational>>,
    pub metric: Vec<Vec<Rational>>,
}

impl VectorFamily {
    pub fn new(vectors: Vec<Vec<Rational>>, metric: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = metric.len();
        if metric.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidInput("metric must be square".into()));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::InvalidInput(format!(
                "vector of length {} in dimension {dim}",
                v.len()
            )));
        }
        Ok(Self { vectors, metric })
    }

    /// Standard dot product.
    pub fn euclidean(vectors: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = vectors.first().map_or(0, Vec::len);
        Self::new(vectors, identity(dim))
    }

    /// Coordinates `(a, b)` of `a + bω`, metric `|a + bω|² = a² − ab + b²`.
    pub fn from_eisenstein(zs: &[EisensteinRational]) -> Self {
        let half = rat(-1, 2);
        let metric = vec![
            vec![Rational::one(), half.clone()],
            vec![half, Rational::one()],
        ];
        let vectors = zs.iter().map(|z| vec![z.a.clone(), z.b.clone()]).collect();
        Self { vectors, metric }
    }

    pub fn from_quaternions(qs: &[Quaternion]) -> Self {
        let vectors = qs
            .iter()
            .map(|q| q.coords().into_iter().cloned().collect())
            .collect();
        Self {
            vectors,
            metric: identity(4),
        }
    }

    pub fn from_octonions(os: &[Octonion]) -> Self {
        Self {
            vectors: os.iter().map(|o| o.c.to_vec()).collect(),
            metric: identity(8),
        }
    }

    pub fn dim(&self) -> usize {
        self.metric.len()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn inner(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                let m = &self.metric[i][j];
                if !m.is_zero() && !vj.is_zero() {
                    acc += ui * m * vj;
                }
            }
        }
        acc
    }

    /// Same vectors with the metric multiplied by `r`.
    pub fn scaled(&self, r: &Rational) -> Self {
        Self {
            vectors: self.vectors.clone(),
            metric: self
                .metric
                .iter()
                .map(|row| row.iter().map(|m| m * r).collect())
                .collect(),
        }
    }
}

fn identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

pub fn gram(v: &VectorFamily) -> Vec<Vec<Rational>> {
    v.vectors
        .iter()
        .map(|a| v.vectors.iter().map(|b| v.inner(a, b)).collect())
        .collect()
}

/// Rank by Gaussian elimination.
pub fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r == rank || m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pivot;
            for k in c..cols {
                let sub = &f * &m[rank][k];
                m[r][k] -= sub;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

pub fn rational_det(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pivot;
            for k in c..n {
                let sub = &f * &m[c][k];
                m[r][k] -= sub;
            }
        }
    }
    det
}

/// Integer lattice kept in row echelon (Hermite) form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl IntegerLattice {
    /// The ℤ-span of `generators`.
    pub fn span(generators: &[Vec<BigInt>]) -> Self {
        let mut m: Vec<Vec<BigInt>> = generators.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
        let cols = m.first().map_or(0, Vec::len);
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for c in 0..cols {
            // Euclid on column c among the remaining rows.
            loop {
                let nonzero: Vec<usize> = (0..m.len()).filter(|&r| !m[r][c].is_zero()).collect();
                if nonzero.len() <= 1 {
                    break;
                }
                let p = *nonzero.iter().min_by_key(|&&r| m[r][c].abs()).expect("nonempty");
                let pivot_row = m[p].clone();
                for &r in &nonzero {
                    if r == p {
                        continue;
                    }
                    let q = m[r][c].div_floor(&pivot_row[c]);
                    for k in c..cols {
                        let sub = &q * &pivot_row[k];
                        m[r][k] -= sub;
                    }
                }
            }
            if let Some(p) = (0..m.len()).find(|&r| !m[r][c].is_zero()) {
                let mut row = m.swap_remove(p);
                if row[c].is_negative() {
                    row.iter_mut().for_each(|x| *x = -x.clone());
                }
                rows.push(row);
                pivots.push(c);
            }
            m.retain(|r| r.iter().any(|x| !x.is_zero()));
        }
        // reduce entries above each pivot
        for i in (0..rows.len()).rev() {
            let c = pivots[i];
            for j in 0..i {
                let q = rows[j][c].div_floor(&rows[i][c]);
                if q.is_zero() {
                    continue;
                }
                for k in c..cols {
                    let sub = &q * &rows[i][k];
                    rows[j][k] -= sub;
                }
            }
        }
        Self { rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[c].is_zero() {
                continue;
            }
            let (q, r) = v[c].div_rem(&row[c]);
            if !r.is_zero() {
                return false;
            }
            for (x, y) in v.iter_mut().zip(row).skip(c) {
                *x -= &q * y;
            }
        }
        v.iter().all(Zero::is_zero)
    }
}

/// Lattice spanned by rational vectors, stored as an integer lattice after
/// clearing a common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalLattice {
    pub denominator: BigInt,
    pub integral: IntegerLattice,
}

impl RationalLattice {
    pub fn span(vectors: &[Vec<Rational>]) -> Self {
        let denominator = vectors
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<Vec<BigInt>> = vectors
            .iter()
            .map(|v| v.iter().map(|x| (x * &denominator).to_integer()).collect())
            .collect();
        Self {
            integral: IntegerLattice::span(&ints),
            denominator,
        }
    }

    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.integral
            .basis()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| Rational::new(x.clone(), self.denominator.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.integral.rank()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let scaled: Vec<Rational> = v.iter().map(|x| x * &self.denominator).collect();
        scaled.iter().all(|x| x.is_integer())
            && self
                .integral
                .contains(&scaled.iter().map(Rational::to_integer).collect::<Vec<_>>())
    }
}

/// True iff the ℤ-span of the family has an integral Gram matrix with even
/// diagonal and determinant 1 (the family is taken as given, not rescaled).
pub fn is_even_unimodular(v: &VectorFamily) -> bool {
    let lattice = RationalLattice::span(&v.vectors);
    if lattice.rank() != v.dim() {
        return false;
    }
    let basis = lattice.basis();
    let g: Vec<Vec<Rational>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| v.inner(a, b)).collect())
        .collect();
    let integral = g.iter().flatten().all(Rational::is_integer);
    let even = (0..g.len()).all(|i| g[i][i].to_integer().is_even());
    integral && even && rational_det(&g) == Rational::one()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RootLabel {
    A2,
    D4,
    E8,
    #[serde(rename = "unknown")]
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSystemId {
    pub label: RootLabel,
    /// Size of the input family before canonicalization.
    pub input_count: usize,
    /// Size of the family after removing duplicates and closing under `v ↦ −v`.
    pub root_count: usize,
    pub rank: usize,
    /// Off-diagonal `⟨α,β⟩/⟨α,α⟩` values with multiplicities.
    #[serde(serialize_with = "ser_multiset")]
    pub inner_products: BTreeMap<Rational, usize>,
    pub common_norm: Option<String>,
    pub reflection_closed: bool,
    /// Only evaluated for the E₈ row of the table.
    pub even_unimodular: Option<bool>,
}

fn ser_multiset<S: serde::Serializer>(
    m: &BTreeMap<Rational, usize>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(k, v)| (k.to_string(), v)))
}

/// (label, root count, rank) rows of the classification table.
const TABLE: [(RootLabel, usize, usize); 3] = [
    (RootLabel::A2, 6, 2),
    (RootLabel::D4, 24, 4),
    (RootLabel::E8, 240, 8),
];

/// Removes duplicates and adds `−v` for every `v`, keeping first-seen order.
pub fn symmetrize(v: &VectorFamily) -> VectorFamily {
    let mut seen = HashSet::new();
    let mut vectors = Vec::new();
    for x in &v.vectors {
        let neg: Vec<Rational> = x.iter().map(|c| -c.clone()).collect();
        for y in [x.clone(), neg] {
            if seen.insert(y.clone()) {
                vectors.push(y);
            }
        }
    }
    VectorFamily {
        vectors,
        metric: v.metric.clone(),
    }
}

/// Fingerprint match on the family taken up to sign, so the label does not
/// depend on the order of the input or on which of `±v` was supplied.
pub fn identify_root_system(input: &VectorFamily) -> RootSystemId {
    let sym = symmetrize(input);
    let v = &sym;
    let g = gram(v);
    let n = v.len();
    let norms: HashSet<&Rational> = (0..n).map(|i| &g[i][i]).collect();
    let common = (norms.len() == 1)
        .then(|| g[0][0].clone())
        .filter(|x| x.is_positive());
    let rank = rational_rank(&g);

    let mut inner_products = BTreeMap::new();
    if let Some(c) = &common {
        for (i, row) in g.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j {
                    *inner_products.entry(x / c).or_insert(0) += 1;
                }
            }
        }
    }

    let members: HashSet<&Vec<Rational>> = v.vectors.iter().collect();
    let reflection_closed = common.is_some()
        && (0..n).all(|a| {
            (0..n).all(|b| {
                let c = &g[b][a] * Rational::from_integer(2.into()) / &g[a][a];
                if c.is_zero() {
                    return true;
                }
                let image: Vec<Rational> = v.vectors[b]
                    .iter()
                    .zip(&v.vectors[a])
                    .map(|(x, y)| x - &c * y)
                    .collect();
                members.contains(&image)
            })
        });

    let allowed = [rat(-1, 1), rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1)];
    let simply_laced = inner_products.keys().all(|k| allowed.contains(k));

    let mut label = RootLabel::Unknown;
    let mut even_unimodular = None;
    if let Some(c) = &common {
        if reflection_closed && simply_laced {
            for (l, count, r) in TABLE {
                if n == count && rank == r {
                    if l == RootLabel::E8 {
                        let ok = is_even_unimodular(&v.scaled(&(rat(2, 1) / c)));
                        even_unimodular = Some(ok);
                        if !ok {
                            break;
                        }
                    }
                    label = l;
                }
            }
        }
    }
    RootSystemId {
        label,
        input_count: input.len(),
        root_count: n,
        rank,
        inner_products,
        common_norm: common.map(|c| c.to_string()),
        reflection_closed,
        even_unimodular,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn identity_gram() {
        let f = VectorFamily::euclidean((0..3).map(|i| ints(&[(i == 0) as i64, (i == 1) as i64, (i == 2) as i64])).collect()).unwrap();
        assert_eq!(gram(&f), identity(3));
    }

    #[test]
    fn cubic_lattice_is_not_even() {
        let f = VectorFamily::euclidean((0..8).map(|i| (0..8).map(|j| int((i == j) as i64)).collect()).collect()).unwrap();
        assert!(!is_even_unimodular(&f));
        // doubled: even but determinant 2⁸
        assert!(!is_even_unimodular(&f.scaled(&int(2))));
    }

    #[test]
    fn hermite_membership() {
        let l = IntegerLattice::span(&[
            vec![2.into(), 0.into()],
            vec![1.into(), 1.into()],
            vec![3.into(), 1.into()],
        ]);
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&[BigInt::from(0), BigInt::from(2)]));
        assert!(!l.contains(&[BigInt::from(1), BigInt::from(0)]));
    }

    #[test]
    fn determinants() {
        let m = vec![ints(&[2, -1]), ints(&[-1, 2])];
        assert_eq!(rational_det(&m), int(3));
        assert_eq!(rational_rank(&[ints(&[1, 2]), ints(&[2, 4])]), 1);
    }

    #[test]
    fn a1_squared_is_unknown() {
        // ±e₁, ±e₂: reflection-closed but orthogonal, so not in the table
        let f = VectorFamily::euclidean(vec![ints(&[1, 0]), ints(&[-1, 0]), ints(&[0, 1]), ints(&[0, -1])]).unwrap();
        let id = identify_root_system(&f);
        assert!(id.reflection_closed);
        assert_eq!(id.label, RootLabel::Unknown);
    }

    #[test]
    fn mixed_norms_are_unknown() {
        let f = VectorFamily::euclidean(vec![ints(&[1, 0]), ints(&[0, 2])]).unwrap();
        let id = identify_root_system(&f);
        assert_eq!(id.label, RootLabel::Unknown);
        assert!(!id.reflection_closed);
    }
}
