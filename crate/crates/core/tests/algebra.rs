use ctcsim::algebra::{characteristic_polynomial, hermitian_psd_check, lagrange_interpolate, rat, Polynomial};
use ctcsim::{GaussianRational, Matrix, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn gr() -> impl Strategy<Value = GaussianRational> {
    (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9)
        .prop_map(|(a, b, c, d)| GaussianRational::new(rat(a, b), rat(c, d)))
}

fn gmatrix(n: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(gr(), n * n).prop_map(move |v| Matrix::from_vec(n, n, v).unwrap())
}

/// Laplace expansion along the first row; exponential, fine for n ≤ 4.
fn cofactor_det(m: &Matrix) -> GaussianRational {
    let n = m.rows();
    if n == 1 {
        return m[(0, 0)].clone();
    }
    let mut acc = GaussianRational::zero();
    for j in 0..n {
        let minor = Matrix::from_fn(n - 1, n - 1, |r, c| m[(r + 1, if c < j { c } else { c + 1 })].clone());
        let term = &m[(0, j)] * &cofactor_det(&minor);
        if j % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in gr(), b in gr(), c in gr()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, GaussianRational::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), GaussianRational::one());
        } else {
            prop_assert!(a.recip().is_err());
        }
    }

    #[test]
    fn text_form_round_trips(a in gr()) {
        let s = a.to_string();
        prop_assert!(!s.contains(" +") && !s.contains("+ "), "term contains a space: {}", s);
        prop_assert_eq!(s.parse::<GaussianRational>().unwrap(), a);
    }

    #[test]
    fn determinant_matches_cofactor_expansion(m in gmatrix(3)) {
        prop_assert_eq!(m.determinant().unwrap(), cofactor_det(&m));
    }

    #[test]
    fn determinant_is_multiplicative(a in gmatrix(3), b in gmatrix(3)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), &a.determinant().unwrap() * &b.determinant().unwrap());
    }

    #[test]
    fn inverse_is_two_sided(a in gmatrix(3)) {
        match a.inverse() {
            Ok(inv) => {
                prop_assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(3));
                prop_assert_eq!(inv.mul(&a).unwrap(), Matrix::identity(3));
            }
            Err(_) => prop_assert!(cofactor_det(&a).is_zero()),
        }
    }

    #[test]
    fn gram_matrices_are_psd(b in proptest::collection::vec(gr(), 6)) {
        let b = Matrix::from_vec(2, 3, b).unwrap();
        prop_assert!(hermitian_psd_check(&b.dagger().mul(&b).unwrap()).is_psd());
    }

    #[test]
    fn interpolation_recovers_polynomial(coeffs in proptest::collection::vec(gr(), 1..6)) {
        let p = Polynomial::new(coeffs.clone());
        let pts: Vec<(Rational, GaussianRational)> =
            (0..coeffs.len() as i64 + 2).map(|x| (rat(x, 1), p.evaluate_rational(&rat(x, 1)))).collect();
        prop_assert_eq!(lagrange_interpolate(&pts, coeffs.len() - 1).unwrap(), p);
    }

    #[test]
    fn characteristic_polynomial_matches_determinant(m in gmatrix(3), t in -5i64..=5) {
        let cp = characteristic_polynomial(&m);
        let shifted = Matrix::identity(3).scale(&GaussianRational::from_int(t)).sub(&m).unwrap();
        prop_assert_eq!(cp.evaluate_rational(&rat(t, 1)), cofactor_det(&shifted));
    }
}

#[test]
fn indefinite_matrix_is_rejected() {
    let m = Matrix::parse_rows(&[&["1", "2"], &["2", "1"]]);
    assert!(!hermitian_psd_check(&m).is_psd());
    let h = Matrix::parse_rows(&[&["2", "1+i"], &["1-i", "1"]]);
    assert!(hermitian_psd_check(&h).is_psd());
}

#[test]
fn interpolation_rejects_off_curve_points() {
    let pts = vec![
        (rat(0, 1), GaussianRational::from_int(1)),
        (rat(1, 1), GaussianRational::from_int(2)),
        (rat(2, 1), GaussianRational::from_int(7)),
    ];
    assert!(lagrange_interpolate(&pts, 1).is_err());
}
