//! Exact scalar and hypercomplex arithmetic.
//!
//! Everything downstream is built on these types; there is no floating point
//! anywhere in the crate. Rationals are `num-rational` big rationals, always
//! in lowest terms with a positive denominator.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// `n / d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A commutative exact field with an involutive conjugation and a rational norm
/// `x * conj(x)`.
pub trait ExactScalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: Rational) -> Self;
    fn conj(&self) -> Self;
    fn norm(&self) -> Rational;
    fn is_zero(&self) -> bool;

    fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.inv()?)
    }

    fn scale(&self, r: &Rational) -> Self {
        self.clone() * Self::from_rational(r.clone())
    }

    /// True when every coordinate is an integer.
    fn is_integral(&self) -> bool;
}

macro_rules! forward_ref_binop {
    ($ty:ident, $trait:ident, $method:ident) => {
        impl<'a> $trait<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                $trait::$method(self.clone(), rhs.clone())
            }
        }
    };
}

/// `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(int(re), int(im))
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

forward_ref_binop!(GaussianRational, Add, add);
forward_ref_binop!(GaussianRational, Sub, sub);
forward_ref_binop!(GaussianRational, Mul, mul);

impl ExactScalar for GaussianRational {
    fn zero() -> Self {
        Self::from_ints(0, 0)
    }
    fn one() -> Self {
        Self::from_ints(1, 0)
    }
    fn from_rational(r: Rational) -> Self {
        Self::new(r, Zero::zero())
    }
    fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }
    fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn is_integral(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im.is_negative() => {
                write!(f, "{}-{}i", self.re, -self.im.clone())
            }
            _ => write!(f, "{}+{}i", self.re, self.im),
        }
    }
}

/// `a + b·ω` with `ω² = −1 − ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EisensteinRational {
    pub a: Rational,
    pub b: Rational,
}

impl EisensteinRational {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(int(a), int(b))
    }

    pub fn omega() -> Self {
        Self::from_ints(0, 1)
    }

    /// `Re(z)`: ω contributes −1/2.
    pub fn real_part(&self) -> Rational {
        &self.a - &self.b / int(2)
    }
}

impl Add for EisensteinRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for EisensteinRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Mul for EisensteinRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // (a + bω)(c + dω) = ac + (ad + bc)ω + bd·ω², ω² = −1 − ω
        let bd = &self.b * &rhs.b;
        Self::new(
            &self.a * &rhs.a - &bd,
            &self.a * &rhs.b + &self.b * &rhs.a - bd,
        )
    }
}

impl Neg for EisensteinRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

forward_ref_binop!(EisensteinRational, Add, add);
forward_ref_binop!(EisensteinRational, Sub, sub);
forward_ref_binop!(EisensteinRational, Mul, mul);

impl ExactScalar for EisensteinRational {
    fn zero() -> Self {
        Self::from_ints(0, 0)
    }
    fn one() -> Self {
        Self::from_ints(1, 0)
    }
    fn from_rational(r: Rational) -> Self {
        Self::new(r, Zero::zero())
    }
    fn conj(&self) -> Self {
        // conj(ω) = ω² = −1 − ω
        Self::new(&self.a - &self.b, -self.b.clone())
    }
    fn norm(&self) -> Rational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }
}

impl fmt::Display for EisensteinRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}w", self.b),
            (false, false) if self.b.is_negative() => {
                write!(f, "{}-{}w", self.a, -self.b.clone())
            }
            _ => write!(f, "{}+{}w", self.a, self.b),
        }
    }
}

/// `w + x·i + y·j + z·k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub w: Rational,
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Quaternion {
    pub fn new(w: Rational, x: Rational, y: Rational, z: Rational) -> Self {
        Self { w, x, y, z }
    }

    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Self {
        Self::new(int(w), int(x), int(y), int(z))
    }

    /// Coordinates given as numerators over a common denominator.
    pub fn from_halves(w: i64, x: i64, y: i64, z: i64) -> Self {
        Self::new(rat(w, 2), rat(x, 2), rat(y, 2), rat(z, 2))
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }

    pub fn coords(&self) -> [&Rational; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }

    pub fn conj(&self) -> Self {
        Self::new(
            self.w.clone(),
            -self.x.clone(),
            -self.y.clone(),
            -self.z.clone(),
        )
    }

    pub fn norm(&self) -> Rational {
        self.coords().iter().map(|c| *c * *c).sum()
    }

    /// `Re(p q̄)`, the Euclidean inner product of coordinate vectors.
    pub fn inner(&self, other: &Self) -> Rational {
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(a, b)| *a * b)
            .sum()
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let r = n.recip();
        let c = self.conj();
        Ok(Self::new(&c.w * &r, &c.x * &r, &c.y * &r, &c.z * &r))
    }
}

/// Hamilton product.
pub fn quat_mul(p: &Quaternion, q: &Quaternion) -> Quaternion {
    Quaternion::new(
        &p.w * &q.w - &p.x * &q.x - &p.y * &q.y - &p.z * &q.z,
        &p.w * &q.x + &p.x * &q.w + &p.y * &q.z - &p.z * &q.y,
        &p.w * &q.y - &p.x * &q.z + &p.y * &q.w + &p.z * &q.x,
        &p.w * &q.z + &p.x * &q.y - &p.y * &q.x + &p.z * &q.w,
    )
}

impl Mul for &Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: &Quaternion) -> Quaternion {
        quat_mul(self, rhs)
    }
}

impl Add for &Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: &Quaternion) -> Quaternion {
        Quaternion::new(
            &self.w + &rhs.w,
            &self.x + &rhs.x,
            &self.y + &rhs.y,
            &self.z + &rhs.z,
        )
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(
            -self.w.clone(),
            -self.x.clone(),
            -self.y.clone(),
            -self.z.clone(),
        )
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.w, self.x, self.y, self.z)
    }
}

/// Oriented lines of the Fano plane: `e_a·e_b = e_c` for each cyclic rotation
/// of `(a, b, c)`.
pub const FANO_TRIPLES: [[usize; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 5],
    [1, 7, 6],
    [2, 4, 6],
    [2, 5, 7],
    [3, 4, 7],
    [3, 6, 5],
];

/// `OCTONION_TABLE[a][b] = (sign, c)` with `e_a·e_b = sign·e_c`, index 0 being
/// the real unit.
pub const OCTONION_TABLE: [[(i8, u8); 8]; 8] = build_octonion_table();

const fn build_octonion_table() -> [[(i8, u8); 8]; 8] {
    let mut t = [[(0i8, 0u8); 8]; 8];
    let mut i = 0;
    while i < 8 {
        t[0][i] = (1, i as u8);
        t[i][0] = (1, i as u8);
        if i > 0 {
            t[i][i] = (-1, 0);
        }
        i += 1;
    }
    let mut l = 0;
    while l < 7 {
        let [a, b, c] = FANO_TRIPLES[l];
        let rot = [[a, b, c], [b, c, a], [c, a, b]];
        let mut r = 0;
        while r < 3 {
            let [x, y, z] = rot[r];
            t[x][y] = (1, z as u8);
            t[y][x] = (-1, z as u8);
            r += 1;
        }
        l += 1;
    }
    t
}

/// Octonion over the basis `{1, e1, …, e7}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Octonion {
    pub c: [Rational; 8],
}

impl Octonion {
    pub fn new(c: [Rational; 8]) -> Self {
        Self { c }
    }

    pub fn zero() -> Self {
        Self::new(std::array::from_fn(|_| Rational::zero()))
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    /// `e_i`, with `e_0 = 1`.
    pub fn basis(i: usize) -> Self {
        let mut o = Self::zero();
        o.c[i] = Rational::one();
        o
    }

    pub fn from_ints(c: [i64; 8]) -> Self {
        Self::new(c.map(int))
    }

    /// Coordinates are `c[i] / 2`.
    pub fn from_halves(c: [i64; 8]) -> Self {
        Self::new(c.map(|x| rat(x, 2)))
    }

    pub fn conj(&self) -> Self {
        let mut c = self.c.clone();
        for x in c.iter_mut().skip(1) {
            *x = -x.clone();
        }
        Self::new(c)
    }

    pub fn norm(&self) -> Rational {
        self.c.iter().map(|x| x * x).sum()
    }

    /// `Re(x ȳ)`.
    pub fn inner(&self, other: &Self) -> Rational {
        self.c.iter().zip(&other.c).map(|(a, b)| a * b).sum()
    }

    pub fn real(&self) -> &Rational {
        &self.c[0]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(std::array::from_fn(|i| &self.c[i] * r))
    }
}

/// Product per [`OCTONION_TABLE`], extended bilinearly.
pub fn oct_mul(x: &Octonion, y: &Octonion) -> Octonion {
    let mut out = Octonion::zero();
    for (i, xi) in x.c.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.c.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let (sign, k) = OCTONION_TABLE[i][j];
            let p = xi * yj;
            if sign > 0 {
                out.c[k as usize] += p;
            } else {
                out.c[k as usize] -= p;
            }
        }
    }
    out
}

impl Mul for &Octonion {
    type Output = Octonion;
    fn mul(self, rhs: &Octonion) -> Octonion {
        oct_mul(self, rhs)
    }
}

impl Add for &Octonion {
    type Output = Octonion;
    fn add(self, rhs: &Octonion) -> Octonion {
        Octonion::new(std::array::from_fn(|i| &self.c[i] + &rhs.c[i]))
    }
}

impl Sub for &Octonion {
    type Output = Octonion;
    fn sub(self, rhs: &Octonion) -> Octonion {
        Octonion::new(std::array::from_fn(|i| &self.c[i] - &rhs.c[i]))
    }
}

impl Neg for &Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion::new(std::array::from_fn(|i| -self.c[i].clone()))
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_norm() {
        assert_eq!(GaussianRational::from_ints(-1, 2).norm(), int(5));
    }

    #[test]
    fn omega_is_cube_root_of_unity() {
        let w = EisensteinRational::omega();
        assert_eq!(w.norm(), int(1));
        let w3 = w.clone() * w.clone() * w;
        assert_eq!(w3, EisensteinRational::one());
    }

    #[test]
    fn eisenstein_conj_and_real_part() {
        let w = EisensteinRational::omega();
        assert_eq!(w.conj(), w.clone() * w.clone());
        assert_eq!(w.real_part(), rat(-1, 2));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(
            GaussianRational::zero().inv(),
            Err(Error::DivisionByZero)
        ));
        assert!(EisensteinRational::one()
            .div(&EisensteinRational::zero())
            .is_err());
        assert!(Quaternion::from_ints(0, 0, 0, 0).inv().is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let z = EisensteinRational::new(rat(3, 7), rat(-2, 5));
        assert_eq!(z.clone() * z.inv().unwrap(), EisensteinRational::one());
        let g = GaussianRational::new(rat(1, 3), rat(4, 9));
        assert_eq!(g.div(&g).unwrap(), GaussianRational::one());
    }

    #[test]
    fn quaternion_units() {
        let i = Quaternion::from_ints(0, 1, 0, 0);
        let j = Quaternion::from_ints(0, 0, 1, 0);
        let k = Quaternion::from_ints(0, 0, 0, 1);
        assert_eq!(quat_mul(&i, &j), k);
        assert_eq!(quat_mul(&j, &i), -&k);
        let h = Quaternion::from_halves(1, 1, 1, 1);
        assert_eq!(quat_mul(&h, &h), Quaternion::from_halves(-1, 1, 1, 1));
    }

    #[test]
    fn octonion_table_is_consistent() {
        let e = Octonion::basis;
        assert_eq!(oct_mul(&e(1), &e(2)), e(3));
        for a in 1..8 {
            assert_eq!(oct_mul(&e(a), &e(a)), -&e(0));
            for b in 1..8 {
                if a != b {
                    // distinct imaginary units anticommute
                    assert_eq!(oct_mul(&e(a), &e(b)), -&oct_mul(&e(b), &e(a)));
                }
            }
        }
    }

    #[test]
    fn octonion_associativity_failure_witness() {
        let e = Octonion::basis;
        let left = oct_mul(&oct_mul(&e(1), &e(2)), &e(4));
        let right = oct_mul(&e(1), &oct_mul(&e(2), &e(4)));
        // (e1 e2) e4 = e3 e4 = e7, e1 (e2 e4) = e1 e6 = -e7
        assert_eq!(left, e(7));
        assert_eq!(right, -&e(7));
        assert_eq!(left, -&right);
    }
}
