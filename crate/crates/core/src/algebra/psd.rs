//! Exact positive-semidefiniteness via the characteristic polynomial.
//!
//! A Hermitian matrix has only real eigenvalues, so by Descartes' rule it is
//! PSD exactly when the coefficients of `det(tI - A)` alternate in sign:
//! `(-1)^(n-k) c_k >= 0` for every `k`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::gint::GaussInt;
use super::matrix::{gauss_int_rows, rational_scale_of, Matrix};
use super::poly::Polynomial;
use super::scalar::{GaussianRational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsdFailure {
    NotSquare,
    NotHermitian { row: usize, col: usize },
    /// The coefficient of `t^power` in the characteristic polynomial has the
    /// wrong sign, so some eigenvalue is negative.
    SignPattern { power: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsdCheck {
    pub failure: Option<PsdFailure>,
}

impl PsdCheck {
    pub fn is_psd(&self) -> bool {
        self.failure.is_none()
    }
}

/// Faddeev–LeVerrier on the integer-scaled matrix. Returns the coefficients
/// `c_0..=c_n` of `det(tI - sA)` together with the scale `s`.
fn scaled_charpoly(a: &Matrix) -> (Vec<GaussInt>, BigInt) {
    let n = a.rows();
    let scale = rational_scale_of(a);
    let ai = gauss_int_rows(a, &scale);
    let mut coeffs = vec![GaussInt::zero(); n + 1];
    coeffs[n] = GaussInt::one();
    // m holds M_k; start from M_0 = 0 so that M_1 = I.
    let mut m = vec![vec![GaussInt::zero(); n]; n];
    for k in 1..=n {
        let c_prev = coeffs[n - k + 1].clone();
        let mut next = if k == 1 { vec![vec![GaussInt::zero(); n]; n] } else { int_matmul(&ai, &m) };
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = row[i].add(&c_prev);
        }
        m = next;
        // tr(A M_k)
        let mut tr = GaussInt::zero();
        for (i, arow) in ai.iter().enumerate() {
            for (j, aij) in arow.iter().enumerate() {
                if !aij.is_zero() && !m[j][i].is_zero() {
                    tr = tr.add(&aij.mul(&m[j][i]));
                }
            }
        }
        coeffs[n - k] = tr.neg().div_exact(&GaussInt { re: BigInt::from(k), im: BigInt::zero() });
    }
    (coeffs, scale)
}

fn int_matmul(a: &[Vec<GaussInt>], b: &[Vec<GaussInt>]) -> Vec<Vec<GaussInt>> {
    let n = a.len();
    let cols = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![GaussInt::zero(); cols]; n];
    for (i, arow) in a.iter().enumerate() {
        for (k, aik) in arow.iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for (j, bkj) in b[k].iter().enumerate() {
                if !bkj.is_zero() {
                    out[i][j] = out[i][j].add(&aik.mul(bkj));
                }
            }
        }
    }
    out
}

/// `det(tI - A)` as an exact polynomial in `t`.
pub fn characteristic_polynomial(a: &Matrix) -> Polynomial {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let n = a.rows();
    let (coeffs, scale) = scaled_charpoly(a);
    // det(tI - sA) = s^n det((t/s)I - A), so c_k(A) = c_k(sA) / s^(n-k).
    Polynomial::new(
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_rational(&scale.pow((n - k) as u32)))
            .collect(),
    )
}

/// Exact Hermitian-PSD test. Non-Hermitian input is reported, not raised.
pub fn hermitian_psd_check(a: &Matrix) -> PsdCheck {
    if !a.is_square() {
        return PsdCheck { failure: Some(PsdFailure::NotSquare) };
    }
    let n = a.rows();
    for i in 0..n {
        for j in i..n {
            if a[(i, j)] != a[(j, i)].conj() {
                return PsdCheck { failure: Some(PsdFailure::NotHermitian { row: i, col: j }) };
            }
        }
    }
    let (coeffs, _) = scaled_charpoly(a);
    for (k, c) in coeffs.iter().enumerate() {
        debug_assert!(c.im.is_zero(), "Hermitian characteristic polynomial is real");
        let signed = if (n - k).is_multiple_of(2) { c.re.clone() } else { -c.re.clone() };
        if signed.is_negative() {
            return PsdCheck { failure: Some(PsdFailure::SignPattern { power: k }) };
        }
    }
    PsdCheck { failure: None }
}

/// Real part of a polynomial's coefficients, for reporting.
pub fn real_coefficients(p: &Polynomial) -> Vec<Rational> {
    p.coeffs().iter().map(|c: &GaussianRational| c.re.clone()).collect()
}
