//! Univariate polynomials in `z` over the Gaussian rationals, and exact
//! Lagrange interpolation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::gint::GaussInt;
use super::scalar::{GaussianRational, Rational};
use crate::error::{Error, Result};

/// Coefficient `k` multiplies `z^k`. Trailing zeros are always trimmed, so
/// the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<GaussianRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `z`.
    pub fn z() -> Self {
        Self::new(vec![GaussianRational::zero(), GaussianRational::one()])
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with −1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    /// Smallest `k` with a nonzero coefficient; `None` for the zero polynomial.
    pub fn lowest_nonzero_index(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Horner evaluation.
    pub fn evaluate(&self, z0: &GaussianRational) -> GaussianRational {
        self.coeffs.iter().rev().fold(GaussianRational::zero(), |acc, c| acc * z0 + c)
    }

    pub fn evaluate_rational(&self, z0: &Rational) -> GaussianRational {
        self.evaluate(&GaussianRational::real(z0.clone()))
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Polynomial::new(out)
    }
}

macro_rules! owned_poly_op {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_poly_op!(Add, add);
owned_poly_op!(Sub, sub);
owned_poly_op!(Mul, mul);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        Ok(())
    }
}

/// The unique polynomial of degree ≤ `degree_bound` through `points`.
///
/// The first `degree_bound + 1` points determine the interpolant; any further
/// points must lie on it.
pub fn lagrange_interpolate(
    points: &[(Rational, GaussianRational)],
    degree_bound: usize,
) -> Result<Polynomial> {
    let needed = degree_bound + 1;
    if points.len() < needed {
        return Err(Error::Input(format!(
            "interpolation with degree bound {degree_bound} needs {needed} points, got {}",
            points.len()
        )));
    }
    for (i, (xi, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(xj, _)| xj == xi) {
            return Err(Error::Input(format!("duplicate abscissa {xi}")));
        }
    }
    let (used, extra) = points.split_at(needed);
    let mut result = Polynomial::zero();
    for (k, (xk, vk)) in used.iter().enumerate() {
        if vk.is_zero() {
            continue;
        }
        let mut basis = Polynomial::constant(vk.clone());
        let mut weight = Rational::one();
        for (j, (xj, _)) in used.iter().enumerate() {
            if j != k {
                let factor = Polynomial::new(vec![
                    GaussianRational::real(-xj.clone()),
                    GaussianRational::one(),
                ]);
                basis = &basis * &factor;
                weight *= xk - xj;
            }
        }
        let inv = GaussianRational::real(weight.recip());
        result = &result + &basis.scale(&inv);
    }
    for (x, v) in extra {
        if &result.evaluate_rational(x) != v {
            return Err(Error::Input(format!(
                "points are not on a polynomial of degree ≤ {degree_bound} (mismatch at z = {x})"
            )));
        }
    }
    Ok(result)
}

/// Interpolation at fixed integer abscissae with Gaussian-integer values,
/// kept in integer arithmetic until the final division.
pub(crate) struct IntegerInterpolator {
    abscissae: Vec<i64>,
    /// `basis[k][i]`: coefficient of `z^i` in `(W / w_k) * prod_{j != k} (z - x_j)`.
    basis: Vec<Vec<BigInt>>,
    /// `W = lcm_k w_k` with `w_k = prod_{j != k} (x_k - x_j)`.
    common: BigInt,
}

impl IntegerInterpolator {
    pub fn new(abscissae: &[i64]) -> Self {
        let n = abscissae.len();
        let mut numerators = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for (k, &xk) in abscissae.iter().enumerate() {
            let mut p = vec![BigInt::one()];
            let mut w = BigInt::one();
            for (j, &xj) in abscissae.iter().enumerate() {
                if j == k {
                    continue;
                }
                // p *= (z - xj)
                let mut next = vec![BigInt::zero(); p.len() + 1];
                for (i, c) in p.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * xj;
                }
                p = next;
                w *= BigInt::from(xk - xj);
            }
            numerators.push(p);
            weights.push(w);
        }
        let common = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w));
        let basis = numerators
            .into_iter()
            .zip(&weights)
            .map(|(p, w)| {
                let m = &common / w;
                p.into_iter().map(|c| c * &m).collect()
            })
            .collect();
        Self { abscissae: abscissae.to_vec(), basis, common }
    }

    /// Polynomial through `(x_k, values[k] / scale)`.
    pub fn interpolate(&self, values: &[GaussInt], scale: &BigInt) -> Polynomial {
        debug_assert_eq!(values.len(), self.abscissae.len());
        let len = self.abscissae.len();
        let mut acc = vec![GaussInt::zero(); len];
        for (v, row) in values.iter().zip(&self.basis) {
            if v.is_zero() {
                continue;
            }
            for (a, c) in acc.iter_mut().zip(row) {
                if !c.is_zero() {
                    *a = a.add(&v.scale(c));
                }
            }
        }
        let denom = &self.common * scale;
        Polynomial::new(acc.iter().map(|a| a.to_rational(&denom)).collect())
    }
}
