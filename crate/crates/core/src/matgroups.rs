//! Classical groups over small finite fields: SL(2,3), GU(3,3) → PSU(3,3) and
//! a streaming enumeration of Sp(6,2).

use std::fmt::{self, Debug};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Result;
use crate::groups::{FiniteGroup, GroupElement, Perm};

pub trait FiniteField:
    Copy
    + Debug
    + Eq
    + Hash
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const Q: usize;
    fn zero() -> Self;
    fn one() -> Self;
    /// All field elements, zero first.
    fn elements() -> Vec<Self>;
    /// Position in [`FiniteField::elements`].
    fn ordinal(self) -> usize;

    /// Frobenius `x ↦ x^p`; trivial on prime fields.
    fn frobenius(self) -> Self {
        self
    }

    fn inv(self) -> Option<Self> {
        Self::elements().into_iter().find(|&y| self * y == Self::one())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2(pub u8);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F3(pub u8);

/// `a + b·t` over F₃ with `t² = −1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F9 {
    pub a: F3,
    pub b: F3,
}

macro_rules! prime_field {
    ($ty:ident, $p:expr) => {
        impl $ty {
            pub const fn new(x: i64) -> Self {
                $ty((((x % $p) + $p) % $p) as u8)
            }
        }
        impl Add for $ty {
            type Output = Self;
            fn add(self, r: Self) -> Self {
                $ty((self.0 + r.0) % $p)
            }
        }
        impl Sub for $ty {
            type Output = Self;
            fn sub(self, r: Self) -> Self {
                $ty((self.0 + $p - r.0) % $p)
            }
        }
        impl Mul for $ty {
            type Output = Self;
            fn mul(self, r: Self) -> Self {
                $ty((self.0 * r.0) % $p)
            }
        }
        impl Neg for $ty {
            type Output = Self;
            fn neg(self) -> Self {
                $ty(($p - self.0) % $p)
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
        impl FiniteField for $ty {
            const Q: usize = $p;
            fn zero() -> Self {
                $ty(0)
            }
            fn one() -> Self {
                $ty(1)
            }
            fn elements() -> Vec<Self> {
                (0..$p).map($ty).collect()
            }
            fn ordinal(self) -> usize {
                self.0 as usize
            }
        }
    };
}

prime_field!(F2, 2);
prime_field!(F3, 3);

impl F9 {
    pub const fn new(a: i64, b: i64) -> Self {
        F9 {
            a: F3::new(a),
            b: F3::new(b),
        }
    }

    pub fn t() -> Self {
        F9::new(0, 1)
    }
}

impl fmt::Display for F9 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.0, self.b.0) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "t"),
            (0, b) => write!(f, "{b}t"),
            (a, 1) => write!(f, "{a}+t"),
            (a, b) => write!(f, "{a}+{b}t"),
        }
    }
}

impl Add for F9 {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        F9 {
            a: self.a + r.a,
            b: self.b + r.b,
        }
    }
}

impl Sub for F9 {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        F9 {
            a: self.a - r.a,
            b: self.b - r.b,
        }
    }
}

impl Mul for F9 {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        // (a + bt)(c + dt) = (ac − bd) + (ad + bc)t
        F9 {
            a: self.a * r.a - self.b * r.b,
            b: self.a * r.b + self.b * r.a,
        }
    }
}

impl Neg for F9 {
    type Output = Self;
    fn neg(self) -> Self {
        F9 {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl FiniteField for F9 {
    const Q: usize = 9;
    fn zero() -> Self {
        F9::new(0, 0)
    }
    fn one() -> Self {
        F9::new(1, 0)
    }
    fn elements() -> Vec<Self> {
        (0..9).map(|i| F9::new(i % 3, i / 3)).collect()
    }
    fn ordinal(self) -> usize {
        self.a.0 as usize + 3 * self.b.0 as usize
    }
    /// `x³`, which negates the `t` coordinate since `t³ = −t`.
    fn frobenius(self) -> Self {
        F9 { a: self.a, b: -self.b }
    }
}

/// Square matrix over a finite field, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SqMatrix<F: FiniteField, const N: usize>(pub [[F; N]; N]);

impl<F: FiniteField, const N: usize> SqMatrix<F, N> {
    pub fn identity() -> Self {
        let mut m = [[F::zero(); N]; N];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = F::one();
        }
        SqMatrix(m)
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> F) -> Self {
        SqMatrix(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::from_fn(|i, j| {
            (0..N).fold(F::zero(), |acc, k| acc + self.0[i][k] * rhs.0[k][j])
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i])
    }

    /// Conjugate transpose under Frobenius.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].frobenius())
    }

    pub fn apply(&self, v: &[F; N]) -> [F; N] {
        std::array::from_fn(|i| (0..N).fold(F::zero(), |acc, k| acc + self.0[i][k] * v[k]))
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> F {
        let mut m = self.0;
        let mut det = F::one();
        for col in 0..N {
            let Some(p) = (col..N).find(|&r| m[r][col] != F::zero()) else {
                return F::zero();
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            let pivot = m[col][col];
            det = det * pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..N {
                let factor = m[r][col] * inv;
                for c in col..N {
                    let v = m[col][c];
                    m[r][c] = m[r][c] - factor * v;
                }
            }
        }
        det
    }
}

impl<F: FiniteField, const N: usize> GroupElement for SqMatrix<F, N> {
    fn compose(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
}

impl<F: FiniteField + fmt::Display, const N: usize> fmt::Display for SqMatrix<F, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Every vector of `F^N` in a fixed order.
pub fn all_vectors<F: FiniteField, const N: usize>() -> Vec<[F; N]> {
    let elems = F::elements();
    let total = F::Q.pow(N as u32);
    (0..total)
        .map(|mut k| {
            std::array::from_fn(|_| {
                let e = elems[k % F::Q];
                k /= F::Q;
                e
            })
        })
        .collect()
}

fn vector_index<F: FiniteField, const N: usize>(v: &[F; N]) -> usize {
    v.iter().rev().fold(0, |acc, x| acc * F::Q + x.ordinal())
}

/// Faithful permutation image of a matrix group on the nonzero vectors of
/// `F^N`. Matrices act on column vectors, so the image is anti-isomorphic to
/// the matrix group under left-to-right permutation composition, which is
/// again a group isomorphic to it (via inversion).
pub fn action_on_vectors<F: FiniteField, const N: usize>(
    g: &FiniteGroup<SqMatrix<F, N>>,
) -> Result<FiniteGroup<Perm>> {
    let vectors = all_vectors::<F, N>();
    let nonzero = vectors.len() - 1;
    g.faithful_image(Perm::identity(nonzero), |m| {
        Perm::from_images(
            vectors[1..]
                .iter()
                .map(|v| vector_index(&m.apply(v)) - 1)
                .collect(),
        )
    })
}

/// SL(2,3) as the closure of `[[1,1],[0,1]]` and `[[1,0],[1,1]]`.
pub fn build_sl23() -> FiniteGroup<SqMatrix<F3, 2>> {
    let one = F3::new(1);
    let zero = F3::new(0);
    let upper = SqMatrix([[one, one], [zero, one]]);
    let lower = SqMatrix([[one, zero], [one, one]]);
    crate::groups::closure(SqMatrix::identity(), &[upper, lower]).expect("order 24")
}

/// Hermitian product `Σ conj(u_k) v_k` on F₉³.
fn hermitian(u: &[F9; 3], v: &[F9; 3]) -> F9 {
    u.iter()
        .zip(v)
        .fold(F9::zero(), |acc, (a, b)| acc + a.frobenius() * *b)
}

/// Every 3×3 matrix over F₉ with `M†M = I`, by choosing orthonormal columns
/// one at a time.
pub fn enumerate_gu33() -> Vec<SqMatrix<F9, 3>> {
    let vectors = all_vectors::<F9, 3>();
    let units: Vec<[F9; 3]> = vectors
        .iter()
        .copied()
        .filter(|v| hermitian(v, v) == F9::one())
        .collect();
    let mut out = Vec::new();
    for c0 in &units {
        for c1 in units.iter().filter(|c| hermitian(c0, c) == F9::zero()) {
            for c2 in units
                .iter()
                .filter(|c| hermitian(c0, c) == F9::zero() && hermitian(c1, c) == F9::zero())
            {
                let cols = [c0, c1, c2];
                out.push(SqMatrix::from_fn(|i, j| cols[j][i]));
            }
        }
    }
    out
}

/// GU(3,3) as a permutation group on the 728 nonzero vectors of F₉³.
pub fn build_gu33() -> FiniteGroup<Perm> {
    let elements = enumerate_gu33();
    let mats = FiniteGroup::from_members(SqMatrix::identity(), elements)
        .expect("GU(3,3) is closed");
    action_on_vectors(&mats).expect("faithful on vectors")
}

/// GU(3,3) modulo its scalar center.
pub fn build_psu33() -> FiniteGroup<Perm> {
    let gu = build_gu33();
    let z = gu.center();
    gu.quotient(&z).expect("center is normal")
}

/// 6×6 matrix over F₂ stored by columns as bitmasks. Coordinates are ordered
/// `(a₁,a₂,a₃ | b₁,b₂,b₃)`, bit `i` of a label holding coordinate `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryMatrix6 {
    pub cols: [u8; 6],
}

impl BinaryMatrix6 {
    pub const IDENTITY: BinaryMatrix6 = BinaryMatrix6 {
        cols: [1, 2, 4, 8, 16, 32],
    };

    #[inline]
    pub fn apply(&self, p: u8) -> u8 {
        let mut out = 0;
        for (i, &c) in self.cols.iter().enumerate() {
            if p >> i & 1 == 1 {
                out ^= c;
            }
        }
        out
    }

    pub fn to_matrix(&self) -> SqMatrix<F2, 6> {
        SqMatrix::from_fn(|i, j| F2(self.cols[j] >> i & 1))
    }

    pub fn label_permutation(&self) -> Perm {
        Perm::from_images((0..64u8).map(|p| self.apply(p) as usize).collect())
    }
}

impl GroupElement for BinaryMatrix6 {
    /// Matrix product `self · rhs`.
    fn compose(&self, rhs: &Self) -> Self {
        BinaryMatrix6 {
            cols: rhs.cols.map(|c| self.apply(c)),
        }
    }
}

/// `⟨p,q⟩ = a·b′ + a′·b (mod 2)`.
#[inline]
pub fn symplectic_form(p: u8, q: u8) -> u8 {
    (((p & 7) & (q >> 3)).count_ones() + ((p >> 3) & (q & 7)).count_ones()) as u8 & 1
}

/// `J = [[0, I], [I, 0]]` over F₂.
pub fn symplectic_gram() -> SqMatrix<F2, 6> {
    SqMatrix::from_fn(|i, j| F2(u8::from(i + 3 == j || j + 3 == i)))
}

pub fn preserves_symplectic_form(s: &SqMatrix<F2, 6>) -> bool {
    let j = symplectic_gram();
    s.transpose().mul(&j).mul(s) == j
}

/// The 23,040 elements of Sp(6,2) whose first column is `u1`, in deterministic
/// order: columns are built as a symplectic basis `(u₁,u₂,u₃ | v₁,v₂,v₃)` with
/// `⟨uᵢ,vⱼ⟩ = δᵢⱼ` and all other pairings zero.
pub fn sp62_with_first_column(u1: u8) -> Vec<BinaryMatrix6> {
    assert!((1..64).contains(&u1));
    let mut out = Vec::with_capacity(23_040);
    let mut cols = [0u8; 6];
    cols[0] = u1;
    fill_symplectic(&mut cols, 0, &mut out);
    out
}

fn fill_symplectic(cols: &mut [u8; 6], k: usize, out: &mut Vec<BinaryMatrix6>) {
    // cols[0..k] and cols[3..3+k] already hold the first k hyperbolic pairs;
    // cols[k] is set when called from the top level with k = 0.
    if k == 3 {
        out.push(BinaryMatrix6 { cols: *cols });
        return;
    }
    let orth = |x: u8, cols: &[u8; 6]| (0..k).all(|i| symplectic_form(x, cols[i]) == 0 && symplectic_form(x, cols[3 + i]) == 0);
    let u_choices: Vec<u8> = if k == 0 {
        vec![cols[0]]
    } else {
        (1..64u8).filter(|&x| orth(x, cols)).collect()
    };
    for u in u_choices {
        cols[k] = u;
        for v in 1..64u8 {
            if symplectic_form(u, v) == 1 && orth(v, cols) {
                cols[3 + k] = v;
                fill_symplectic(cols, k + 1, out);
            }
        }
    }
}

/// Every element of Sp(6,2), grouped by first column `1..64`.
pub fn build_sp62() -> impl Iterator<Item = BinaryMatrix6> {
    (1..64u8).flat_map(sp62_with_first_column)
}

pub const SP62_ORDER: usize = 1_451_520;

/// A generating pair for Sp(6,2): the transvection `x ↦ x + ⟨x,e₁⟩e₁` and
/// the first element of a fixed-stride scan of [`build_sp62`] that completes it.
pub fn sp62_generators() -> [BinaryMatrix6; 2] {
    [
        // transvection along e1 (adds the b1 coordinate into a1)
        BinaryMatrix6 {
            cols: [1, 2, 4, 9, 16, 32],
        },
        BinaryMatrix6 {
            cols: SP62_SECOND_GENERATOR,
        },
    ]
}

const SP62_SECOND_GENERATOR: [u8; 6] = [5, 63, 60, 30, 42, 45];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{isomorphic, IsoOptions};

    #[test]
    fn f9_arithmetic() {
        let t = F9::t();
        assert_eq!(t * t, -F9::one());
        for x in F9::elements() {
            let cube = x * x * x;
            assert_eq!(x.frobenius(), cube);
            assert_eq!(x.frobenius().frobenius(), x);
            if x != F9::zero() {
                assert_eq!(x * x.inv().unwrap(), F9::one());
            }
        }
        let fixed: Vec<F9> = F9::elements().into_iter().filter(|x| x.frobenius() == *x).collect();
        assert_eq!(fixed.len(), 3);
    }

    #[test]
    fn sl23_by_exhaustive_scan() {
        let scan: Vec<SqMatrix<F3, 2>> = all_vectors::<F3, 4>()
            .into_iter()
            .map(|v| SqMatrix([[v[0], v[1]], [v[2], v[3]]]))
            .filter(|m| m.det() == F3::one())
            .collect();
        assert_eq!(scan.len(), 24);
        let g = build_sl23();
        assert_eq!(g.order(), 24);
        assert!(scan.iter().all(|m| g.contains(m)));
    }

    #[test]
    fn sl23_structure() {
        let g = build_sl23();
        let z = g.center();
        assert_eq!(z.order(), 2);
        let minus = SqMatrix([[F3::new(-1), F3::new(0)], [F3::new(0), F3::new(-1)]]);
        assert!(z.contains(&minus));
        assert_eq!(g.quotient(&z).unwrap().order(), 12);
        assert_eq!(g.conjugacy_classes().len(), 7);
        assert!(!g.is_simple());
    }

    #[test]
    fn sl23_vector_action_is_isomorphic() {
        let g = build_sl23();
        let p = action_on_vectors(&g).unwrap();
        assert_eq!(p.degree(), 8);
        assert!(isomorphic(&g, &p, &IsoOptions::default()).is_isomorphic());
    }

    #[test]
    fn gu33_order_and_membership() {
        let gu = enumerate_gu33();
        let (q, order) = (3usize, gu.len());
        assert_eq!(order, q.pow(3) * (q + 1) * (q * q - 1) * (q.pow(3) + 1));
        assert_eq!(order, 24_192);
        assert!(gu.iter().all(|m| m.adjoint().mul(m) == SqMatrix::identity()));
    }

    #[test]
    fn determinant_is_multiplicative() {
        let gu = enumerate_gu33();
        for (a, b) in gu.iter().step_by(997).zip(gu.iter().skip(5).step_by(1009)) {
            assert_eq!(a.mul(b).det(), a.det() * b.det());
        }
    }

    #[test]
    fn binary_matrix_agrees_with_generic_product() {
        let stream: Vec<BinaryMatrix6> = sp62_with_first_column(37).into_iter().step_by(501).collect();
        for a in &stream {
            for b in stream.iter().take(5) {
                assert_eq!(a.compose(b).to_matrix(), a.to_matrix().mul(&b.to_matrix()));
            }
        }
    }

    #[test]
    fn symplectic_form_matches_gram() {
        let j = symplectic_gram();
        for p in 0..64u8 {
            for q in 0..64u8 {
                let pv: [F2; 6] = std::array::from_fn(|i| F2(p >> i & 1));
                let qv: [F2; 6] = std::array::from_fn(|i| F2(q >> i & 1));
                let jq = j.apply(&qv);
                let form = pv.iter().zip(&jq).fold(F2(0), |acc, (a, b)| acc + *a * *b);
                assert_eq!(form.0, symplectic_form(p, q));
            }
        }
    }

    #[test]
    fn identity_is_symplectic() {
        assert!(preserves_symplectic_form(&SqMatrix::identity()));
        assert!(preserves_symplectic_form(&BinaryMatrix6::IDENTITY.to_matrix()));
    }

    #[test]
    fn stream_prefix_is_symplectic_and_distinct() {
        let part = sp62_with_first_column(1);
        assert_eq!(part.len(), 23_040);
        let set: std::collections::HashSet<_> = part.iter().collect();
        assert_eq!(set.len(), part.len());
        for s in part.iter().step_by(97) {
            let m = s.to_matrix();
            assert!(preserves_symplectic_form(&m));
            assert_ne!(m.det(), F2(0));
        }
    }
}
