//! Eisenstein, Hurwitz and Cayley integers, their units, and the
//! automorphisms of the Cayley integers.
//!
//! Cayley units are handled through doubled integer coordinates (every
//! coordinate of a unit is a multiple of 1/2), which keeps the 240×240
//! product table and the automorphism search in small-integer arithmetic.
//! Exact [`Octonion`] values are still what the API hands out.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    int, quat_mul, rat, EisensteinRational, ExactScalar, Octonion, Quaternion, Rational,
    FANO_TRIPLES, OCTONION_TABLE,
};
use crate::groups::{FiniteGroup, GroupElement, Perm};
use crate::lattices::{rational_det, RationalLattice, VectorFamily};
use crate::SAMPLE_SEED;

impl GroupElement for EisensteinRational {
    fn compose(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }
}

impl GroupElement for Quaternion {
    fn compose(&self, rhs: &Self) -> Self {
        quat_mul(self, rhs)
    }
}

/// Norm-1 Eisenstein integers `a + bω` with `|a|, |b| ≤ bound`.
pub fn eisenstein_unit_scan(bound: i64) -> Vec<EisensteinRational> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            if a * a - a * b + b * b == 1 {
                out.push(EisensteinRational::from_ints(a, b));
            }
        }
    }
    out
}

/// `{±1, ±ω, ±ω²}` under multiplication.
pub fn eisenstein_units() -> FiniteGroup<EisensteinRational> {
    // a² − ab + b² = 1 forces |a|, |b| ≤ 1
    FiniteGroup::from_members(EisensteinRational::one(), eisenstein_unit_scan(1))
        .expect("units are closed")
}

/// The unit group modulo `{±1}`.
pub fn eisenstein_units_mod_sign() -> Result<FiniteGroup<Perm>> {
    let g = eisenstein_units();
    let minus = g
        .index_of(&-EisensteinRational::one())
        .ok_or_else(|| Error::Construction("−1 missing".into()))?;
    let n = g.subgroup(&[minus]);
    g.quotient(&n)
}

fn is_hurwitz(doubled: &[i64; 4]) -> bool {
    let parity = doubled[0].rem_euclid(2);
    doubled.iter().all(|x| x.rem_euclid(2) == parity)
}

/// Norm-1 quaternions whose coordinates lie in `{−1, −1/2, 0, 1/2, 1}` and
/// are all integers or all half-odd-integers.
pub fn hurwitz_unit_scan() -> Vec<Quaternion> {
    let mut out = Vec::new();
    for w in -2..=2i64 {
        for x in -2..=2i64 {
            for y in -2..=2i64 {
                for z in -2..=2i64 {
                    let c = [w, x, y, z];
                    if is_hurwitz(&c) && c.iter().map(|v| v * v).sum::<i64>() == 4 {
                        out.push(Quaternion::from_halves(w, x, y, z));
                    }
                }
            }
        }
    }
    out
}

/// The binary tetrahedral group.
pub fn hurwitz_units() -> FiniteGroup<Quaternion> {
    FiniteGroup::from_members(Quaternion::one(), hurwitz_unit_scan()).expect("units are closed")
}

// ---------------------------------------------------------------------------
// Cayley integers.

/// The 14 quads `{0} ∪ L` and their complements for each Fano line `L`,
/// after applying the coordinate transposition `swap` if given.
pub fn halving_quads(swap: Option<(usize, usize)>) -> Vec<[usize; 4]> {
    let tau = |i: usize| match swap {
        Some((a, b)) if i == a => b,
        Some((a, b)) if i == b => a,
        _ => i,
    };
    let mut quads = Vec::new();
    for line in FANO_TRIPLES {
        let q = [0, line[0], line[1], line[2]];
        let rest: Vec<usize> = (1..8).filter(|i| !line.contains(i)).collect();
        for quad in [q, [rest[0], rest[1], rest[2], rest[3]]] {
            let mut t = quad.map(tau);
            t.sort_unstable();
            quads.push(t);
        }
    }
    quads
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CayleyAttempt {
    pub swap: Option<(usize, usize)>,
    pub closed: bool,
    /// First basis pair whose product left the lattice.
    pub failing_pair: Option<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct CayleyRing {
    pub basis: Vec<Octonion>,
    pub lattice: RationalLattice,
    pub swap: Option<(usize, usize)>,
    /// Every candidate tried, in order, including the accepted one.
    pub attempts: Vec<CayleyAttempt>,
}

fn candidate_lattice(swap: Option<(usize, usize)>) -> RationalLattice {
    let mut gens: Vec<Vec<Rational>> = (0..8).map(|i| Octonion::basis(i).c.to_vec()).collect();
    for quad in halving_quads(swap) {
        let mut v = vec![Rational::zero(); 8];
        for i in quad {
            v[i] = rat(1, 2);
        }
        gens.push(v);
    }
    RationalLattice::span(&gens)
}

fn to_octonion(v: &[Rational]) -> Octonion {
    Octonion::new(std::array::from_fn(|i| v[i].clone()))
}

fn first_failing_pair(lattice: &RationalLattice) -> Option<(usize, usize)> {
    let basis: Vec<Octonion> = lattice.basis().iter().map(|v| to_octonion(v)).collect();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            if !lattice.contains(&(a * b).c) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Candidate orders in the order they are tried: the unswapped halving set,
/// then every coordinate transposition.
fn swap_candidates() -> Vec<Option<(usize, usize)>> {
    let mut out = vec![None];
    for a in 0..8 {
        for b in a + 1..8 {
            out.push(Some((a, b)));
        }
    }
    out
}

/// The first candidate order that passes the multiplicative-closure gate.
pub fn cayley_ring() -> Result<CayleyRing> {
    let mut attempts = Vec::new();
    for swap in swap_candidates() {
        let lattice = candidate_lattice(swap);
        let failing = if lattice.rank() == 8 && lattice.contains(&Octonion::one().c) {
            first_failing_pair(&lattice)
        } else {
            Some((0, 0))
        };
        attempts.push(CayleyAttempt {
            swap,
            closed: failing.is_none(),
            failing_pair: failing,
        });
        if failing.is_none() {
            return Ok(CayleyRing {
                basis: lattice.basis().iter().map(|v| to_octonion(v)).collect(),
                lattice,
                swap,
                attempts,
            });
        }
    }
    Err(Error::Construction(
        "no coordinate swap yields a multiplicatively closed order".into(),
    ))
}

impl CayleyRing {
    pub fn contains(&self, x: &Octonion) -> bool {
        self.lattice.contains(&x.c)
    }

    /// All 64 basis products lie in the lattice.
    pub fn basis_closed(&self) -> bool {
        self.basis
            .iter()
            .all(|a| self.basis.iter().all(|b| self.contains(&(a * b))))
    }

    pub fn gram(&self) -> Vec<Vec<Rational>> {
        self.basis
            .iter()
            .map(|a| self.basis.iter().map(|b| a.inner(b)).collect())
            .collect()
    }

    /// Determinant of `2·Gram`.
    pub fn doubled_gram_det(&self) -> Rational {
        let g: Vec<Vec<Rational>> = self
            .gram()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x * int(2)).collect())
            .collect();
        rational_det(&g)
    }

    /// Norms are integral on the whole lattice iff the Gram diagonal is
    /// integral and twice every off-diagonal entry is.
    pub fn norms_integral(&self) -> bool {
        let g = self.gram();
        (0..8).all(|i| {
            (0..8).all(|j| {
                let x = if i == j { g[i][j].clone() } else { &g[i][j] * int(2) };
                x.is_integer()
            })
        })
    }

    /// Smallest nonzero norm. The lattice lies in `½ℤ⁸`, so a vector of norm
    /// below 1 has every coordinate in `{−½, 0, ½}`; those are scanned, and
    /// norm 1 is attained by `1`.
    pub fn min_norm(&self) -> Rational {
        let mut best = Rational::one();
        for code in 0..3usize.pow(8) {
            let mut c = [0i64; 8];
            let mut k = code;
            for x in c.iter_mut() {
                *x = (k % 3) as i64 - 1;
                k /= 3;
            }
            let o = Octonion::from_halves(c);
            if !o.is_zero() && self.contains(&o) && o.norm() < best {
                best = o.norm();
            }
        }
        best
    }
}

type Doubled = [i8; 8];

fn doubled_of(o: &Octonion) -> Doubled {
    std::array::from_fn(|i| (&o.c[i] * int(2)).to_integer().try_into().expect("small"))
}

/// Product of doubled coordinates: returns `2xy` given `2x`, `2y`.
fn doubled_mul(x: &Doubled, y: &Doubled) -> Option<Doubled> {
    let mut acc = [0i32; 8];
    for i in 0..8 {
        if x[i] == 0 {
            continue;
        }
        for j in 0..8 {
            if y[j] == 0 {
                continue;
            }
            let (sign, k) = OCTONION_TABLE[i][j];
            acc[k as usize] += sign as i32 * x[i] as i32 * y[j] as i32;
        }
    }
    // acc = 4xy
    acc.iter()
        .all(|v| v % 2 == 0)
        .then(|| acc.map(|v| (v / 2) as i8))
}

fn doubled_dot(x: &Doubled, y: &Doubled) -> i32 {
    x.iter().zip(y).map(|(a, b)| *a as i32 * *b as i32).sum()
}

/// The 240 Cayley units with their multiplication table.
#[derive(Clone, Debug)]
pub struct UnitLoop {
    pub units: Vec<Octonion>,
    doubled: Vec<Doubled>,
    index: HashMap<Doubled, u8>,
    table: Vec<Vec<u8>>,
    /// `4⟨u, v⟩`.
    dot4: Vec<Vec<i8>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoufangCheck {
    pub identity: &'static str,
    pub triples: usize,
    pub exhaustive: bool,
    pub holds: bool,
}

pub const MOUFANG_SAMPLES: usize = 100_000;

/// Norm-1 lattice elements, found by scanning coordinates in
/// `{−1, −½, 0, ½, 1}`; then closed under multiplication or an error.
pub fn cayley_units(ring: &CayleyRing) -> Result<UnitLoop> {
    let mut units = Vec::new();
    for code in 0..5usize.pow(8) {
        let mut c = [0i64; 8];
        let mut k = code;
        for x in c.iter_mut() {
            *x = (k % 5) as i64 - 2;
            k /= 5;
        }
        if c.iter().map(|x| x * x).sum::<i64>() != 4 {
            continue;
        }
        let o = Octonion::from_halves(c);
        if ring.contains(&o) {
            units.push(o);
        }
    }
    units.sort_by_key(doubled_of);
    UnitLoop::new(units)
}

impl UnitLoop {
    fn new(units: Vec<Octonion>) -> Result<Self> {
        if units.len() > 256 {
            return Err(Error::Construction(format!("{} units", units.len())));
        }
        let doubled: Vec<Doubled> = units.iter().map(doubled_of).collect();
        let index: HashMap<Doubled, u8> = doubled
            .iter()
            .enumerate()
            .map(|(i, d)| (*d, i as u8))
            .collect();
        let table = doubled
            .par_iter()
            .map(|x| {
                doubled
                    .iter()
                    .map(|y| doubled_mul(x, y).and_then(|p| index.get(&p).copied()))
                    .collect::<Option<Vec<u8>>>()
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Construction("unit set is not closed".into()))?;
        let dot4 = doubled
            .iter()
            .map(|x| doubled.iter().map(|y| doubled_dot(x, y) as i8).collect())
            .collect();
        Ok(Self {
            units,
            doubled,
            index,
            table,
            dot4,
        })
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn index_of(&self, o: &Octonion) -> Option<usize> {
        self.index.get(&doubled_of(o)).map(|&i| i as usize)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b] as usize
    }

    pub fn one(&self) -> usize {
        self.index_of(&Octonion::one()).expect("1 is a unit")
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.index_of(&self.units[a].conj())
    }

    /// Every unit has its conjugate as two-sided inverse.
    pub fn inverses_closed(&self) -> bool {
        let one = self.one();
        (0..self.len()).all(|a| {
            self.inverse(a)
                .is_some_and(|b| self.mul(a, b) == one && self.mul(b, a) == one)
        })
    }

    /// `z(x(zy)) = ((zx)z)y` on every triple.
    pub fn moufang_exhaustive(&self) -> MoufangCheck {
        let n = self.len();
        let holds = (0..n).into_par_iter().all(|z| {
            (0..n).all(|x| {
                let zx_z = self.mul(self.mul(z, x), z);
                (0..n).all(|y| self.mul(z, self.mul(x, self.mul(z, y))) == self.mul(zx_z, y))
            })
        });
        MoufangCheck {
            identity: "z(x(zy)) = ((zx)z)y",
            triples: n * n * n,
            exhaustive: true,
            holds,
        }
    }

    /// The other two Moufang forms on seeded random triples.
    pub fn moufang_sampled(&self, samples: usize) -> [MoufangCheck; 2] {
        let n = self.len();
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        let triples: Vec<[usize; 3]> = (0..samples)
            .map(|_| std::array::from_fn(|_| rng.gen_range(0..n)))
            .collect();
        let m = |a, b| self.mul(a, b);
        let right = triples
            .iter()
            .all(|&[x, y, z]| m(x, m(z, m(y, z))) == m(m(m(x, z), y), z));
        let middle = triples
            .iter()
            .all(|&[x, y, z]| m(m(z, x), m(y, z)) == m(m(z, m(x, y)), z));
        [
            MoufangCheck {
                identity: "x(z(yz)) = ((xz)y)z",
                triples: samples,
                exhaustive: false,
                holds: right,
            },
            MoufangCheck {
                identity: "(zx)(yz) = (z(xy))z",
                triples: samples,
                exhaustive: false,
                holds: middle,
            },
        ]
    }

    /// First triple in index order with `(uv)w ≠ u(vw)`.
    pub fn associativity_witness(&self) -> Option<[usize; 3]> {
        let n = self.len();
        for u in 0..n {
            for v in 0..n {
                let uv = self.mul(u, v);
                for w in 0..n {
                    if self.mul(uv, w) != self.mul(u, self.mul(v, w)) {
                        return Some([u, v, w]);
                    }
                }
            }
        }
        None
    }

    pub fn family(&self) -> VectorFamily {
        VectorFamily::from_octonions(&self.units)
    }

    /// Imaginary units sorted lexicographically by coordinates.
    pub fn imaginary(&self) -> Vec<usize> {
        // units are stored in coordinate order already
        (0..self.len()).filter(|&i| self.doubled[i][0] == 0).collect()
    }

    fn orthogonal(&self, a: usize, b: usize) -> bool {
        self.dot4[a][b] == 0
    }

    /// `(1, i, j, ij, k, ik, jk, (ij)k)` as unit indices.
    fn cd_basis(&self, [i, j, k]: [usize; 3]) -> [usize; 8] {
        let ij = self.mul(i, j);
        [
            self.one(),
            i,
            j,
            ij,
            k,
            self.mul(i, k),
            self.mul(j, k),
            self.mul(ij, k),
        ]
    }
}

/// Automorphisms of the Cayley integers, acting on the 240 units.
#[derive(Clone, Debug)]
pub struct CayleyAutomorphisms {
    pub group: FiniteGroup<Perm>,
    /// The canonical basic triple `(i, j, k)` as unit indices.
    pub basic_triple: [usize; 3],
    /// Accepted image triples, in search order.
    pub image_triples: Vec<[usize; 3]>,
    /// The induced permutation for each accepted image triple.
    pub permutations: Vec<Perm>,
    pub candidates_tested: usize,
}

fn basic_triples_from(loop_: &UnitLoop, imag: &[usize], i: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for &j in imag {
        if !loop_.orthogonal(i, j) {
            continue;
        }
        let ij = loop_.mul(i, j);
        for &k in imag {
            if loop_.orthogonal(i, k) && loop_.orthogonal(j, k) && loop_.orthogonal(ij, k) {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// The unit permutation induced by sending the basic triple `src` to `dst`,
/// if the induced linear map sends every unit to a unit.
fn induced_permutation(loop_: &UnitLoop, src: &[usize; 8], dst: &[usize; 8]) -> Option<Vec<usize>> {
    let mut images = Vec::with_capacity(loop_.len());
    for u in 0..loop_.len() {
        // 2·A(u) = Σ_m ⟨u, B_m⟩ · 2B'_m, and ⟨u, B_m⟩ = dot4 / 4
        let mut acc = [0i32; 8];
        for m in 0..8 {
            let c = loop_.dot4[u][src[m]] as i32;
            if c == 0 {
                continue;
            }
            for (a, &x) in acc.iter_mut().zip(&loop_.doubled[dst[m]]) {
                *a += c * x as i32;
            }
        }
        if acc.iter().any(|v| v % 4 != 0) {
            return None;
        }
        let img: Doubled = acc.map(|v| (v / 4) as i8);
        images.push(*loop_.index.get(&img)? as usize);
    }
    Some(images)
}

/// Backtracking over images of the canonical basic triple.
pub fn cayley_automorphisms(loop_: &UnitLoop) -> Result<CayleyAutomorphisms> {
    let imag = loop_.imaginary();
    let basic_triple = imag
        .iter()
        .find_map(|&i| basic_triples_from(loop_, &imag, i).into_iter().next())
        .ok_or_else(|| Error::Construction("no basic triple".into()))?;
    let src = loop_.cd_basis(basic_triple);
    let src_set: Vec<usize> = src.to_vec();

    let found: Vec<(Vec<([usize; 3], Vec<usize>)>, usize)> = imag
        .par_iter()
        .map(|&i| {
            let triples = basic_triples_from(loop_, &imag, i);
            let tested = triples.len();
            let kept = triples
                .into_iter()
                .filter_map(|t| {
                    let dst = loop_.cd_basis(t);
                    let images = induced_permutation(loop_, &src, &dst)?;
                    // multiplicative on every (unit, basis element) pair
                    let hom = (0..loop_.len()).all(|u| {
                        src_set
                            .iter()
                            .all(|&b| images[loop_.mul(u, b)] == loop_.mul(images[u], images[b]))
                    });
                    hom.then_some((t, images))
                })
                .collect();
            (kept, tested)
        })
        .collect();

    let mut image_triples = Vec::new();
    let mut permutations = Vec::new();
    let mut candidates_tested = 0;
    for (kept, tested) in found {
        candidates_tested += tested;
        for (t, images) in kept {
            image_triples.push(t);
            permutations.push(Perm::from_images(images));
        }
    }
    let group = FiniteGroup::from_members(Perm::identity(loop_.len()), permutations.clone())?;
    Ok(CayleyAutomorphisms {
        group,
        basic_triple,
        image_triples,
        permutations,
        candidates_tested,
    })
}

impl CayleyAutomorphisms {
    /// The 8×8 rational matrix (columns are images of `1, e₁, …, e₇`) of the
    /// automorphism sending the basic triple to `image_triples[k]`.
    pub fn matrix(&self, loop_: &UnitLoop, k: usize) -> [[Rational; 8]; 8] {
        let src = loop_.cd_basis(self.basic_triple);
        let dst = loop_.cd_basis(self.image_triples[k]);
        let mut m: [[Rational; 8]; 8] = std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()));
        for n in 0..8 {
            let e = Octonion::basis(n);
            for t in 0..8 {
                let c = e.inner(&loop_.units[src[t]]);
                if c.is_zero() {
                    continue;
                }
                for (r, row) in m.iter_mut().enumerate() {
                    row[n] += &c * &loop_.units[dst[t]].c[r];
                }
            }
        }
        m
    }
}

/// Apply a coordinate matrix to an octonion.
pub fn apply_matrix(m: &[[Rational; 8]; 8], x: &Octonion) -> Octonion {
    Octonion::new(std::array::from_fn(|r| {
        (0..8).map(|c| &m[r][c] * &x.c[c]).sum()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eisenstein_unit_group() {
        let g = eisenstein_units();
        assert_eq!(g.order(), 6);
        assert_eq!(g.order_histogram().get(&6), Some(&2));
        assert_eq!(eisenstein_unit_scan(2).len(), 6);
        let q = eisenstein_units_mod_sign().unwrap();
        assert_eq!(q.order(), 3);
        assert!(q.is_abelian());
    }

    #[test]
    fn hurwitz_unit_group() {
        let g = hurwitz_units();
        assert_eq!(g.order(), 24);
        let units = hurwitz_unit_scan();
        for a in &units {
            for b in &units {
                assert!(units.contains(&quat_mul(a, b)));
            }
        }
        assert_eq!(units.iter().filter(|q| q.w.is_integer()).count(), 8);
    }

    #[test]
    fn naive_halving_set_is_not_closed() {
        let l = candidate_lattice(None);
        assert_eq!(l.rank(), 8);
        assert!(first_failing_pair(&l).is_some());
    }

    #[test]
    fn cayley_ring_gate() {
        let r = cayley_ring().unwrap();
        assert!(r.basis_closed());
        assert!(r.attempts.len() >= 2);
        assert!(!r.attempts[0].closed);
        assert!(r.attempts.last().unwrap().closed);
        assert_eq!(r.doubled_gram_det(), Rational::one());
        assert!(r.norms_integral());
        assert_eq!(r.min_norm(), Rational::one());
    }

    #[test]
    fn doubled_product_matches_exact() {
        let r = cayley_ring().unwrap();
        let u = cayley_units(&r).unwrap();
        for a in (0..u.len()).step_by(7) {
            for b in (0..u.len()).step_by(11) {
                assert_eq!(u.units[u.mul(a, b)], &u.units[a] * &u.units[b]);
            }
        }
    }
}
