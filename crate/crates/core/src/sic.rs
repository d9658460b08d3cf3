//! The qubit, Hesse and Hoggar SICs in exact arithmetic.
//!
//! Vectors are kept unnormalized, so every SIC identity is checked in the
//! cleared-denominator form `(d+1)·|⟨ψ̃ⱼ|ψ̃ₖ⟩|² = ‖ψ̃‖⁴` for `j ≠ k`. Symmetries
//! are found combinatorially: a permutation of labels is a (unitary)
//! symmetry iff it preserves every triple product.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, EisensteinRational, ExactScalar, GaussianRational, Rational};
use crate::groups::{closure, FiniteGroup, Perm};
use crate::matgroups::{preserves_symplectic_form, sp62_with_first_column, BinaryMatrix6};
use crate::SAMPLE_SEED;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SicLabel {
    /// `(a, b) ∈ ℤ_d²` for `X^a Z^b`.
    Heisenberg { a: u8, b: u8 },
    /// `(a₁a₂a₃ | b₁b₂b₃)` packed into bits 0..6 (bit `i` = coordinate `i`).
    Pauli3(u8),
    /// Vertex of the Bloch tetrahedron.
    Vertex(u8),
}

impl fmt::Display for SicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SicLabel::Heisenberg { a, b } => write!(f, "({a},{b})"),
            SicLabel::Pauli3(p) => {
                let bit = |i: u8| (p >> i) & 1;
                write!(
                    f,
                    "({}{}{}|{}{}{})",
                    bit(0),
                    bit(1),
                    bit(2),
                    bit(3),
                    bit(4),
                    bit(5)
                )
            }
            SicLabel::Vertex(v) => write!(f, "v{v}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarRing {
    Eisenstein,
    Gaussian,
    Rational,
}

/// Unnormalized fiducial vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiducial<S: ExactScalar> {
    coords: Vec<S>,
    norm_sq: Rational,
}

impl<S: ExactScalar> Fiducial<S> {
    pub fn new(coords: Vec<S>) -> Result<Self> {
        let norm_sq = inner(&coords, &coords);
        if norm_sq.is_zero() {
            return Err(Error::InvalidInput("zero fiducial".into()));
        }
        let norm_sq = real_of(&norm_sq);
        Ok(Self { coords, norm_sq })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn norm_sq(&self) -> &Rational {
        &self.norm_sq
    }
}

impl Fiducial<EisensteinRational> {
    /// `(0, 1, −1)`.
    pub fn hesse() -> Self {
        let c = |a| EisensteinRational::from_ints(a, 0);
        Self::new(vec![c(0), c(1), c(-1)]).expect("nonzero")
    }
}

impl Fiducial<GaussianRational> {
    /// `(−1+2i, 1, 1, 1, 1, 1, 1, 1)`.
    pub fn hoggar() -> Self {
        let mut c = vec![GaussianRational::from_ints(1, 0); 8];
        c[0] = GaussianRational::from_ints(-1, 2);
        Self::new(c).expect("nonzero")
    }
}

/// `⟨u|v⟩ = Σ conj(uᵢ)·vᵢ`.
pub fn inner<S: ExactScalar>(u: &[S], v: &[S]) -> S {
    u.iter()
        .zip(v)
        .fold(S::zero(), |acc, (a, b)| acc + a.conj() * b.clone())
}

/// Real part of a self-adjoint scalar, read off as `(z + z̄)/2`.
fn real_of<S: ExactScalar>(z: &S) -> Rational {
    // norm(z) = z·z̄; for real z this is z², and z + z̄ = 2z carries the sign.
    let twice = z.clone() + z.conj();
    let half_sq = twice.norm() / int(4);
    let root = rational_sqrt(&half_sq).expect("real scalar has rational square");
    if is_negative_real(&twice) {
        -root
    } else {
        root
    }
}

fn is_negative_real<S: ExactScalar>(z: &S) -> bool {
    // z is real here; compare with its embedding of -|z|.
    let n = z.norm();
    if n.is_zero() {
        return false;
    }
    let root = rational_sqrt(&n).expect("square");
    *z == S::from_rational(-root)
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

#[derive(Clone, Debug)]
pub struct SicSystem<S: ExactScalar> {
    pub d: usize,
    pub labels: Vec<SicLabel>,
    pub vectors: Vec<Vec<S>>,
    pub norm_sq: Rational,
    pub ring: ScalarRing,
}

impl<S: ExactScalar> SicSystem<S> {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn gram(&self) -> Vec<Vec<S>> {
        self.vectors
            .par_iter()
            .map(|u| self.vectors.iter().map(|v| inner(u, v)).collect())
            .collect()
    }

    pub fn label_index(&self, label: SicLabel) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }
}

/// `X^a Z^b ψ` on ℤ₃ with `Z = diag(1, ω, ω²)` and `X|j⟩ = |j+1⟩`.
pub fn qutrit_displace(a: u8, b: u8, v: &[EisensteinRational]) -> Vec<EisensteinRational> {
    let omega = EisensteinRational::omega();
    let mut phased = Vec::with_capacity(3);
    for (j, x) in v.iter().enumerate() {
        let mut p = EisensteinRational::one();
        for _ in 0..(b as usize * j) % 3 {
            p = p * omega.clone();
        }
        phased.push(p * x.clone());
    }
    let mut out = vec![EisensteinRational::zero(); 3];
    for (j, x) in phased.into_iter().enumerate() {
        out[(j + a as usize) % 3] = x;
    }
    out
}

/// Weyl–Heisenberg orbit of a qutrit fiducial; label `(a, b)` sits at index `3a + b`.
pub fn wh_qutrit_orbit(f: &Fiducial<EisensteinRational>) -> Result<SicSystem<EisensteinRational>> {
    if f.dim() != 3 {
        return Err(Error::InvalidInput(format!("expected d = 3, got {}", f.dim())));
    }
    let mut labels = Vec::new();
    let mut vectors = Vec::new();
    for a in 0..3u8 {
        for b in 0..3u8 {
            labels.push(SicLabel::Heisenberg { a, b });
            vectors.push(qutrit_displace(a, b, f.coords()));
        }
    }
    Ok(SicSystem {
        d: 3,
        labels,
        vectors,
        norm_sq: f.norm_sq().clone(),
        ring: ScalarRing::Eisenstein,
    })
}

/// `⊗ₖ X^{aₖ} Z^{bₖ}` on three qubits; basis index `4j₁ + 2j₂ + j₃`.
pub fn pauli3_displace(p: u8, v: &[GaussianRational]) -> Vec<GaussianRational> {
    let (mut flip, mut phase) = (0usize, 0usize);
    for k in 0..3 {
        let bit = 2 - k;
        flip |= ((p >> k) as usize & 1) << bit;
        phase |= ((p >> (k + 3)) as usize & 1) << bit;
    }
    let mut out = vec![GaussianRational::zero(); 8];
    for (j, x) in v.iter().enumerate() {
        let sign_negative = (j & phase).count_ones() % 2 == 1;
        out[j ^ flip] = if sign_negative { -x.clone() } else { x.clone() };
    }
    out
}

/// Orbit of a three-qubit fiducial under the tensor-cubed qubit Pauli group;
/// label `p` sits at index `p`.
pub fn pauli3_orbit(f: &Fiducial<GaussianRational>) -> Result<SicSystem<GaussianRational>> {
    if f.dim() != 8 {
        return Err(Error::InvalidInput(format!("expected d = 8, got {}", f.dim())));
    }
    Ok(SicSystem {
        d: 8,
        labels: (0..64).map(SicLabel::Pauli3).collect(),
        vectors: (0..64).map(|p| pauli3_displace(p, f.coords())).collect(),
        norm_sq: f.norm_sq().clone(),
        ring: ScalarRing::Gaussian,
    })
}

pub fn hesse_system() -> SicSystem<EisensteinRational> {
    wh_qutrit_orbit(&Fiducial::hesse()).expect("d = 3")
}

pub fn hoggar_system() -> SicSystem<GaussianRational> {
    pauli3_orbit(&Fiducial::hoggar()).expect("d = 8")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SicCheck {
    pub holds: bool,
    /// Ordered pairs whose identity was checked.
    pub ordered_pairs: usize,
    /// `|⟨ψ̃ⱼ|ψ̃ₖ⟩|²` values seen off the diagonal.
    #[serde(serialize_with = "ser_rationals")]
    pub cross_overlaps: Vec<Rational>,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

/// Cleared-denominator SIC condition over all `d⁴` ordered pairs.
pub fn check_sic<S: ExactScalar>(s: &SicSystem<S>) -> SicCheck {
    let n = s.len();
    let d1 = int(s.d as i64 + 1);
    let target = &s.norm_sq * &s.norm_sq;
    let results: Vec<(bool, Option<Rational>)> = (0..n * n)
        .into_par_iter()
        .map(|jk| {
            let (j, k) = (jk / n, jk % n);
            let ov = inner(&s.vectors[j], &s.vectors[k]).norm();
            if j == k {
                (ov == target, None)
            } else {
                (&d1 * &ov == target, Some(ov))
            }
        })
        .collect();
    let mut cross: Vec<Rational> = results.iter().filter_map(|r| r.1.clone()).collect();
    cross.sort();
    cross.dedup();
    SicCheck {
        holds: n == s.d * s.d && results.iter().all(|r| r.0),
        ordered_pairs: n * n,
        cross_overlaps: cross,
    }
}

pub fn verify_sic<S: ExactScalar>(s: &SicSystem<S>) -> bool {
    check_sic(s).holds
}

/// Interned triple products `T(p,q,r) = ⟨ψ̃_p|ψ̃_q⟩⟨ψ̃_q|ψ̃_r⟩⟨ψ̃_r|ψ̃_p⟩`.
///
/// `based[p][q]` is the id of `T(0,p,q)`; ids index `values`, and
/// `conj_id[id]` is the id of the conjugate value when it occurs.
#[derive(Clone, Debug)]
pub struct TripleProductTable<S: ExactScalar> {
    pub gram: Vec<Vec<S>>,
    pub values: Vec<S>,
    pub based: Vec<Vec<u32>>,
    pub conj_id: Vec<Option<u32>>,
}

impl<S: ExactScalar> TripleProductTable<S> {
    pub fn triple(&self, p: usize, q: usize, r: usize) -> S {
        self.gram[p][q].clone() * self.gram[q][r].clone() * self.gram[r][p].clone()
    }

    pub fn based_value(&self, p: usize, q: usize) -> &S {
        &self.values[self.based[p][q] as usize]
    }

    pub fn len(&self) -> usize {
        self.gram.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gram.is_empty()
    }

    /// True when every `T(0,p,q)` has integral coordinates.
    pub fn based_values_integral(&self) -> bool {
        self.values.iter().all(ExactScalar::is_integral)
    }

    /// Ids of every `T(p,q,r)`, flattened as `(p·n + q)·n + r`.
    pub fn full_ids(&self) -> (Vec<u32>, Vec<Option<u32>>) {
        let n = self.len();
        let values: Vec<S> = (0..n * n * n)
            .into_par_iter()
            .map(|i| self.triple(i / (n * n), (i / n) % n, i % n))
            .collect();
        let (ids, distinct) = intern(values);
        let conj = conj_ids(&distinct);
        (ids, conj)
    }
}

fn intern<S: ExactScalar>(values: Vec<S>) -> (Vec<u32>, Vec<S>) {
    let mut index: HashMap<S, u32> = HashMap::new();
    let mut distinct = Vec::new();
    let ids = values
        .into_iter()
        .map(|v| {
            *index.entry(v.clone()).or_insert_with(|| {
                distinct.push(v);
                distinct.len() as u32 - 1
            })
        })
        .collect();
    (ids, distinct)
}

fn conj_ids<S: ExactScalar>(distinct: &[S]) -> Vec<Option<u32>> {
    let lookup: HashMap<&S, u32> = distinct.iter().enumerate().map(|(i, v)| (v, i as u32)).collect();
    distinct
        .iter()
        .map(|v| lookup.get(&v.conj()).copied())
        .collect()
}

pub fn triple_products<S: ExactScalar>(s: &SicSystem<S>) -> TripleProductTable<S> {
    let gram = s.gram();
    let n = gram.len();
    let raw: Vec<S> = (0..n * n)
        .into_par_iter()
        .map(|i| {
            let (p, q) = (i / n, i % n);
            gram[0][p].clone() * gram[p][q].clone() * gram[q][0].clone()
        })
        .collect();
    let (ids, values) = intern(raw);
    let conj_id = conj_ids(&values);
    TripleProductTable {
        gram,
        values,
        based: ids.chunks(n).map(<[u32]>::to_vec).collect(),
        conj_id,
    }
}

/// Self-conjugacy of the projector set under entrywise conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwinStatus {
    SelfConjugate,
    Twinned,
}

/// Vectors are compared projectively: `v ∝ w` iff `|⟨v|w⟩|² = ‖v‖²‖w‖²`.
pub fn twin_check<S: ExactScalar>(s: &SicSystem<S>) -> TwinStatus {
    let target = &s.norm_sq * &s.norm_sq;
    let all_found = s.vectors.iter().all(|v| {
        let c: Vec<S> = v.iter().map(ExactScalar::conj).collect();
        s.vectors.iter().any(|w| inner(&c, w).norm() == target)
    });
    if all_found {
        TwinStatus::SelfConjugate
    } else {
        TwinStatus::Twinned
    }
}

/// Result of a symmetry scan over label permutations.
#[derive(Clone, Debug)]
pub struct HesseSymmetries {
    pub full_group: FiniteGroup<Perm>,
    pub stabilizer0: FiniteGroup<Perm>,
    /// Permutations taking every triple product to its conjugate.
    pub antiunitary: Vec<Perm>,
    /// Search-tree nodes visited (for reporting the pruning).
    pub nodes_visited: usize,
}

/// Every permutation `π` of the labels with `T(πp,πq,πr) = T(p,q,r)` (and
/// separately `= conj T(p,q,r)`), by exhaustive backtracking with pruning on
/// the first violated triple.
pub fn scan_triple_symmetries<S: ExactScalar>(
    table: &TripleProductTable<S>,
) -> (Vec<Perm>, Vec<Perm>, usize) {
    let n = table.len();
    let (ids, conj) = table.full_ids();
    let at = |p: usize, q: usize, r: usize| ids[(p * n + q) * n + r];
    let conj_at = |p: usize, q: usize, r: usize| conj[at(p, q, r) as usize];

    // Each first image is an independent subtree.
    let per_root: Vec<(Vec<Perm>, Vec<Perm>, usize)> = (0..n)
        .into_par_iter()
        .map(|root| {
            let mut unitary = Vec::new();
            let mut anti = Vec::new();
            let mut nodes = 0usize;
            let mut image = vec![usize::MAX; n];
            let mut used = vec![false; n];
            image[0] = root;
            used[root] = true;
            // stack of (depth, next candidate to try)
            fn rec<F: Fn(usize, usize, usize) -> u32, G: Fn(usize, usize, usize) -> Option<u32>>(
                k: usize,
                n: usize,
                image: &mut Vec<usize>,
                used: &mut Vec<bool>,
                lin: bool,
                anti_ok: bool,
                at: &F,
                conj_at: &G,
                unitary: &mut Vec<Perm>,
                anti: &mut Vec<Perm>,
                nodes: &mut usize,
            ) {
                *nodes += 1;
                // check every triple whose largest index is k-1
                let m = k - 1;
                let mut lin = lin;
                let mut anti_ok = anti_ok;
                'outer: for i in 0..=m {
                    for j in 0..=m {
                        if i.max(j) != m && m != m.max(i).max(j) {
                            continue;
                        }
                        for (p, q, r) in [(i, j, m), (i, m, j), (m, i, j)] {
                            if p.max(q).max(r) != m {
                                continue;
                            }
                            let now = at(image[p], image[q], image[r]);
                            if lin && now != at(p, q, r) {
                                lin = false;
                            }
                            if anti_ok && Some(now) != conj_at(p, q, r) {
                                anti_ok = false;
                            }
                            if !lin && !anti_ok {
                                break 'outer;
                            }
                        }
                    }
                }
                if !lin && !anti_ok {
                    return;
                }
                if k == n {
                    let p = Perm::from_images(image.clone());
                    if lin {
                        unitary.push(p.clone());
                    }
                    if anti_ok {
                        anti.push(p);
                    }
                    return;
                }
                for c in 0..n {
                    if used[c] {
                        continue;
                    }
                    used[c] = true;
                    image[k] = c;
                    rec(k + 1, n, image, used, lin, anti_ok, at, conj_at, unitary, anti, nodes);
                    used[c] = false;
                    image[k] = usize::MAX;
                }
            }
            rec(
                1, n, &mut image, &mut used, true, true, &at, &conj_at, &mut unitary, &mut anti,
                &mut nodes,
            );
            (unitary, anti, nodes)
        })
        .collect();
    let mut unitary = Vec::new();
    let mut anti = Vec::new();
    let mut nodes = 0;
    for (u, a, k) in per_root {
        unitary.extend(u);
        anti.extend(a);
        nodes += k;
    }
    (unitary, anti, nodes)
}

pub fn hesse_symmetries(table: &TripleProductTable<EisensteinRational>) -> Result<HesseSymmetries> {
    let (unitary, antiunitary, nodes_visited) = scan_triple_symmetries(table);
    let n = table.len();
    let full_group = FiniteGroup::from_members(Perm::identity(n), unitary)?;
    let stabilizer0 = full_group.point_stabilizer(0);
    Ok(HesseSymmetries {
        full_group,
        stabilizer0,
        antiunitary,
        nodes_visited,
    })
}

#[derive(Clone, Debug)]
pub struct HoggarStabilizer {
    /// Symplectic matrices preserving every `T(0,p,q)`, sorted.
    pub unitary_matrices: Vec<BinaryMatrix6>,
    /// Symplectic matrices conjugating every `T(0,p,q)`, sorted.
    pub antiunitary_matrices: Vec<BinaryMatrix6>,
    /// The unitary part as a permutation group on the 64 labels.
    pub unitary: FiniteGroup<Perm>,
    pub candidates_scanned: usize,
}

impl HoggarStabilizer {
    pub fn antiunitary_coset_size(&self) -> usize {
        self.antiunitary_matrices.len()
    }

    /// Every product of two stabilizer matrices is again in the stabilizer,
    /// and every matrix fixes label 0.
    pub fn audit_matrix_closure(&self) -> bool {
        let set: std::collections::HashSet<&BinaryMatrix6> = self.unitary_matrices.iter().collect();
        self.unitary_matrices.iter().all(|m| m.apply(0) == 0)
            && self.unitary_matrices.par_iter().all(|a| {
                self.unitary_matrices
                    .iter()
                    .all(|b| set.contains(&crate::groups::GroupElement::compose(a, b)))
            })
    }

    /// Unitary and antiunitary symmetries together, acting on labels.
    pub fn extended(&self) -> Result<FiniteGroup<Perm>> {
        let perms = self
            .unitary_matrices
            .iter()
            .chain(&self.antiunitary_matrices)
            .map(BinaryMatrix6::label_permutation)
            .collect();
        FiniteGroup::from_members(Perm::identity(64), perms)
    }
}

/// Predicate used by the Sp(6,2) scan: `(unitary, antiunitary)`.
fn classify_symplectic(s: &BinaryMatrix6, table: &TripleProductTable<GaussianRational>) -> (bool, bool) {
    let img: [usize; 64] = std::array::from_fn(|p| s.apply(p as u8) as usize);
    let mut lin = true;
    let mut anti = true;
    for p in 1..64 {
        let (row, moved) = (&table.based[p], &table.based[img[p]]);
        for q in 1..64 {
            let id = row[q];
            let now = moved[img[q]];
            lin &= now == id;
            anti &= Some(now) == table.conj_id[id as usize];
            if !lin && !anti {
                return (false, false);
            }
        }
    }
    (lin, anti)
}

/// Scan all of Sp(6,2) for label maps preserving (or conjugating) the
/// triple products based at label 0. The stream is partitioned by first
/// column; the merged result is sorted and does not depend on scheduling.
pub fn hoggar_stabilizer(table: &TripleProductTable<GaussianRational>) -> Result<HoggarStabilizer> {
    if table.len() != 64 {
        return Err(Error::InvalidInput("expected the 64-vector Hoggar table".into()));
    }
    let parts: Vec<(Vec<BinaryMatrix6>, Vec<BinaryMatrix6>, usize)> = (1..64u8)
        .into_par_iter()
        .map(|u1| {
            let mut lin = Vec::new();
            let mut anti = Vec::new();
            let mut count = 0;
            for s in sp62_with_first_column(u1) {
                count += 1;
                match classify_symplectic(&s, table) {
                    (true, _) => lin.push(s),
                    (false, true) => anti.push(s),
                    _ => {}
                }
            }
            (lin, anti, count)
        })
        .collect();
    let mut unitary_matrices = Vec::new();
    let mut antiunitary_matrices = Vec::new();
    let mut candidates_scanned = 0;
    for (l, a, c) in parts {
        unitary_matrices.extend(l);
        antiunitary_matrices.extend(a);
        candidates_scanned += c;
    }
    unitary_matrices.sort_unstable();
    antiunitary_matrices.sort_unstable();
    let perms = unitary_matrices.iter().map(BinaryMatrix6::label_permutation).collect();
    let unitary = FiniteGroup::from_members(Perm::identity(64), perms)?;
    Ok(HoggarStabilizer {
        unitary_matrices,
        antiunitary_matrices,
        unitary,
        candidates_scanned,
    })
}

/// Rebuild a scan result from stored matrices, re-checking each one against
/// the symplectic form and the triple-product predicate.
pub fn hoggar_stabilizer_from_parts(
    table: &TripleProductTable<GaussianRational>,
    unitary_matrices: Vec<BinaryMatrix6>,
    antiunitary_matrices: Vec<BinaryMatrix6>,
    candidates_scanned: usize,
) -> Result<HoggarStabilizer> {
    let symplectic = |m: &BinaryMatrix6| preserves_symplectic_form(&m.to_matrix());
    let lin_ok = unitary_matrices
        .iter()
        .all(|m| symplectic(m) && classify_symplectic(m, table).0);
    let anti_ok = antiunitary_matrices
        .iter()
        .all(|m| symplectic(m) && classify_symplectic(m, table) == (false, true));
    if !lin_ok || !anti_ok {
        return Err(Error::InvalidInput("stored stabilizer fails re-verification".into()));
    }
    let perms = unitary_matrices.iter().map(BinaryMatrix6::label_permutation).collect();
    let unitary = FiniteGroup::from_members(Perm::identity(64), perms)?;
    Ok(HoggarStabilizer {
        unitary_matrices,
        antiunitary_matrices,
        unitary,
        candidates_scanned,
    })
}

/// Label translations `p ↦ p ⊕ eᵢ` together with the stabilizer.
pub fn hoggar_full_symmetry(stab: &HoggarStabilizer) -> Result<FiniteGroup<Perm>> {
    let mut gens: Vec<Perm> = (0..6)
        .map(|i| Perm::from_images((0..64usize).map(|p| p ^ (1 << i)).collect()))
        .collect();
    gens.extend(stab.unitary.generator_elements());
    closure(Perm::identity(64), &gens)
}

/// Re-verify label maps against freshly computed triple products on a
/// seeded random sample of triples.
pub fn resample_symmetries<S: ExactScalar>(
    table: &TripleProductTable<S>,
    perms: &[Perm],
    samples: usize,
    conjugate: bool,
) -> bool {
    let n = table.len();
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let triples: Vec<(usize, usize, usize)> = (0..samples)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    perms.par_iter().all(|pi| {
        triples.iter().all(|&(p, q, r)| {
            let before = table.triple(p, q, r);
            let after = table.triple(pi.apply(p), pi.apply(q), pi.apply(r));
            if conjugate {
                after == before.conj()
            } else {
                after == before
            }
        })
    })
}

// ---------------------------------------------------------------------------
// Qubit SIC in Bloch coordinates.

/// Four Bloch vectors with entries ±1 (unnormalized).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlochTetrahedron {
    pub vertices: [[i64; 3]; 4],
}

pub fn qubit_model() -> BlochTetrahedron {
    BlochTetrahedron {
        vertices: [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]],
    }
}

impl BlochTetrahedron {
    pub fn dot(&self, i: usize, j: usize) -> i64 {
        (0..3).map(|k| self.vertices[i][k] * self.vertices[j][k]).sum()
    }

    /// Twin check with conjugation acting as `y ↦ −y` on the Bloch sphere.
    pub fn twin_check(&self) -> TwinStatus {
        let flipped = self.vertices.map(|[x, y, z]| [x, -y, z]);
        if flipped.iter().all(|v| self.vertices.contains(v)) {
            TwinStatus::SelfConjugate
        } else {
            TwinStatus::Twinned
        }
    }
}

type Mat3 = [[Rational; 3]; 3];

fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| &a[i][k] * &b[k][j]).sum()))
}

fn mat3_det(m: &Mat3) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

fn mat3_inverse(m: &Mat3) -> Option<Mat3> {
    let det = mat3_det(m);
    if det.is_zero() {
        return None;
    }
    let c = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
    };
    // inverse = adjugate / det, adjugate = transpose of cofactors
    Some(std::array::from_fn(|i| std::array::from_fn(|j| c(j, i) / &det)))
}

/// The linear map sending vertex `i` to vertex `π(i)`, if one exists.
fn realizing_map(t: &BlochTetrahedron, pi: &[usize; 4]) -> Option<Mat3> {
    let col = |v: [i64; 3]| v.map(int);
    let src: Mat3 = std::array::from_fn(|r| std::array::from_fn(|c| col(t.vertices[c])[r].clone()));
    let dst: Mat3 =
        std::array::from_fn(|r| std::array::from_fn(|c| col(t.vertices[pi[c]])[r].clone()));
    let m = mat3_mul(&dst, &mat3_inverse(&src)?);
    let v3 = col(t.vertices[3]);
    let image: [Rational; 3] = std::array::from_fn(|r| (0..3).map(|k| &m[r][k] * &v3[k]).sum());
    (image == col(t.vertices[pi[3]])).then_some(m)
}

/// Vertex permutations realized by orthogonal maps; rotations only unless
/// `allow_reflections`.
pub fn qubit_symmetries(allow_reflections: bool) -> FiniteGroup<Perm> {
    let t = qubit_model();
    let mut realized = Vec::new();
    for pi in permutations4() {
        let Some(m) = realizing_map(&t, &pi) else {
            continue;
        };
        let mt: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()));
        let identity: Mat3 = std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { Rational::one() } else { Rational::zero() })
        });
        if mat3_mul(&mt, &m) != identity {
            continue;
        }
        let det = mat3_det(&m);
        if det == Rational::one() || (allow_reflections && det == -Rational::one()) {
            realized.push(Perm::from_images(pi.to_vec()));
        }
    }
    FiniteGroup::from_members(Perm::identity(4), realized).expect("realized maps form a group")
}

/// Rotations fixing vertex 0.
pub fn qubit_stabilizer() -> FiniteGroup<Perm> {
    qubit_symmetries(false).point_stabilizer(0)
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    if p.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Transitivity;

    #[test]
    fn hesse_labels() {
        let s = hesse_system();
        let e = |a| EisensteinRational::from_ints(a, 0);
        assert_eq!(s.vectors[0], vec![e(0), e(1), e(-1)]);
        let i10 = s.label_index(SicLabel::Heisenberg { a: 1, b: 0 }).unwrap();
        assert_eq!(s.vectors[i10], vec![e(-1), e(0), e(1)]);
        assert_eq!(s.norm_sq, int(2));
    }

    #[test]
    fn hesse_is_sic() {
        let c = check_sic(&hesse_system());
        assert!(c.holds);
        assert_eq!(c.ordered_pairs, 81);
        assert_eq!(c.cross_overlaps, vec![int(1)]);
    }

    #[test]
    fn corrupted_hesse_is_not_sic() {
        let mut s = hesse_system();
        s.vectors[4][0] = s.vectors[4][0].clone() + EisensteinRational::one();
        assert!(!verify_sic(&s));
    }

    #[test]
    fn hoggar_is_sic() {
        let s = hoggar_system();
        assert_eq!(s.norm_sq, int(12));
        let c = check_sic(&s);
        assert!(c.holds);
        assert_eq!(c.cross_overlaps, vec![int(16)]);
    }

    #[test]
    fn hoggar_coordinates_have_odd_norm() {
        // regression fingerprint: every one of the 512 coordinates has odd norm
        let s = hoggar_system();
        let odd = s
            .vectors
            .iter()
            .flatten()
            .filter(|z| z.is_integral() && z.norm().to_integer() % 2 != num_bigint::BigInt::from(0))
            .count();
        assert_eq!(odd, 512);
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        let f = Fiducial::new(vec![EisensteinRational::one(); 2]).unwrap();
        assert!(wh_qutrit_orbit(&f).is_err());
        assert!(Fiducial::new(vec![GaussianRational::zero(); 8]).is_err());
    }

    #[test]
    fn triple_product_identities() {
        let s = hesse_system();
        let t = triple_products(&s);
        let n3 = &s.norm_sq * &s.norm_sq * &s.norm_sq;
        for p in 0..9 {
            assert_eq!(t.triple(p, p, p), EisensteinRational::from_rational(n3.clone()));
        }
        for p in 0..9 {
            for q in 0..9 {
                for r in 0..9 {
                    let v = t.triple(p, q, r);
                    assert_eq!(v.conj(), t.triple(r, q, p));
                    assert_eq!(v, t.triple(q, r, p));
                }
            }
        }
    }

    #[test]
    fn twin_status() {
        assert_eq!(twin_check(&hesse_system()), TwinStatus::SelfConjugate);
        assert_eq!(twin_check(&hoggar_system()), TwinStatus::Twinned);
        assert_eq!(qubit_model().twin_check(), TwinStatus::Twinned);
    }

    #[test]
    fn tetrahedron_geometry() {
        let t = qubit_model();
        for i in 0..4 {
            assert_eq!(t.dot(i, i), 3);
            for j in 0..4 {
                if i != j {
                    assert_eq!(t.dot(i, j), -1);
                }
            }
        }
    }

    #[test]
    fn qubit_symmetry_groups() {
        let rot = qubit_symmetries(false);
        assert_eq!(rot.order(), 12);
        assert_eq!(rot.transitivity(), Transitivity::DoublyTransitive);
        let st = qubit_stabilizer();
        assert_eq!(st.order(), 3);
        assert!(st.is_abelian());
        let full = qubit_symmetries(true);
        assert_eq!(full.order(), 24);
        assert_eq!(full.point_stabilizer(0).order(), 6);
    }

    #[test]
    fn hesse_covariance() {
        let s = hesse_system();
        let target = &s.norm_sq * &s.norm_sq;
        for (idx, v) in s.vectors.iter().enumerate() {
            for a in 0..3u8 {
                for b in 0..3u8 {
                    let w = qutrit_displace(a, b, v);
                    let hits = s.vectors.iter().filter(|u| inner(&w, u).norm() == target).count();
                    assert_eq!(hits, 1, "vector {idx} displaced by ({a},{b})");
                }
            }
        }
    }
}
