use proptest::prelude::*;
use sporadic_core::exact::{
    int, rat, EisensteinRational, ExactScalar, GaussianRational, Octonion, Quaternion, Rational,
};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (small_rat(), small_rat()).prop_map(|(a, b)| GaussianRational::new(a, b))
}

fn eisenstein() -> impl Strategy<Value = EisensteinRational> {
    (small_rat(), small_rat()).prop_map(|(a, b)| EisensteinRational::new(a, b))
}

fn quaternion() -> impl Strategy<Value = Quaternion> {
    [small_rat(), small_rat(), small_rat(), small_rat()]
        .prop_map(|[w, x, y, z]| Quaternion::new(w, x, y, z))
}

fn octonion() -> impl Strategy<Value = Octonion> {
    proptest::array::uniform8(small_rat()).prop_map(Octonion::new)
}

type Mat2<T> = [[T; 2]; 2];

fn mat_mul<T: Clone + std::ops::Add<Output = T> + std::ops::Mul<Output = T>>(
    a: &Mat2<T>,
    b: &Mat2<T>,
) -> Mat2<T> {
    let e = |i: usize, j: usize| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone();
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

// w + xi + yj + zk as [[w+xi, y+zi], [-y+zi, w-xi]].
fn quat_matrix(q: &Quaternion) -> Mat2<GaussianRational> {
    let g = |re: &Rational, im: &Rational| GaussianRational::new(re.clone(), im.clone());
    [
        [g(&q.w, &q.x), g(&q.y, &q.z)],
        [g(&-q.y.clone(), &q.z), g(&q.w, &-q.x.clone())],
    ]
}

// Multiplication by a + bω on the basis (1, ω).
fn eis_matrix(e: &EisensteinRational) -> Mat2<Rational> {
    [[e.a.clone(), -e.b.clone()], [e.b.clone(), e.a.clone() - e.b.clone()]]
}

proptest! {
    #[test]
    fn gaussian_field_laws(x in gaussian(), y in gaussian(), z in gaussian()) {
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
        prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z);
        prop_assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
        if !x.is_zero() {
            prop_assert_eq!(x.clone() * x.inv().unwrap(), GaussianRational::one());
        }
    }

    #[test]
    fn eisenstein_matches_matrix_model(x in eisenstein(), y in eisenstein()) {
        let p = x.clone() * y.clone();
        prop_assert_eq!(eis_matrix(&p), mat_mul(&eis_matrix(&x), &eis_matrix(&y)));
        prop_assert_eq!(p.norm(), x.norm() * y.norm());
        // Norm is the determinant of the multiplication matrix.
        let m = eis_matrix(&x);
        prop_assert_eq!(x.norm(), m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone());
        if !x.is_zero() {
            prop_assert_eq!(x.clone() * x.inv().unwrap(), EisensteinRational::one());
        }
    }

    #[test]
    fn quaternion_matches_matrix_model(p in quaternion(), q in quaternion()) {
        prop_assert_eq!(quat_matrix(&(&p * &q)), mat_mul(&quat_matrix(&p), &quat_matrix(&q)));
    }

    #[test]
    fn quaternion_laws(p in quaternion(), q in quaternion(), r in quaternion()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!((&p * &q).norm(), p.norm() * q.norm());
        prop_assert_eq!((&p * &q).conj(), &q.conj() * &p.conj());
        if p.norm() != int(0) {
            prop_assert_eq!(&p * &p.inv().unwrap(), Quaternion::one());
        }
    }

    #[test]
    fn octonion_laws(x in octonion(), y in octonion(), z in octonion()) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!((&x * &y).conj(), &y.conj() * &x.conj());
        prop_assert_eq!(&(&x * &x) * &y, &x * &(&x * &y));
        prop_assert_eq!(&(&y * &x) * &x, &y * &(&x * &x));
        prop_assert_eq!(&(&x * &y) * &x, &x * &(&y * &x));
        // Moufang: z(x(zy)) = ((zx)z)y
        prop_assert_eq!(&z * &(&x * &(&z * &y)), &(&(&z * &x) * &z) * &y);
        prop_assert_eq!(x.inner(&y), (&x * &y.conj()).real().clone());
    }
}

#[test]
fn octonions_are_not_associative() {
    let e = Octonion::basis;
    let found = (1..8).any(|a| {
        (1..8).any(|b| (1..8).any(|c| &(&e(a) * &e(b)) * &e(c) != &e(a) * &(&e(b) * &e(c))))
    });
    assert!(found);
}

#[test]
fn imaginary_units_square_to_minus_one() {
    for i in 1..8 {
        assert_eq!(&Octonion::basis(i) * &Octonion::basis(i), -&Octonion::one());
        for j in (1..8).filter(|&j| j != i) {
            let (a, b) = (Octonion::basis(i), Octonion::basis(j));
            assert_eq!(&a * &b, -&(&b * &a), "e{i} e{j}");
        }
    }
}
