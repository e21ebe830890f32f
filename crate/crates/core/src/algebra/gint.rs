//! Gaussian integers, the working type of the fraction-free elimination
//! kernels. Rational matrices are scaled to integer ones before elimination
//! and the scale is divided back out afterwards.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::scalar::{GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self { re: BigInt::one(), im: BigInt::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn mul(&self, o: &Self) -> Self {
        if o.im.is_zero() {
            return Self { re: &self.re * &o.re, im: &self.im * &o.re };
        }
        if self.im.is_zero() {
            return Self { re: &self.re * &o.re, im: &self.re * &o.im };
        }
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn neg(&self) -> Self {
        Self { re: -&self.re, im: -&self.im }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self { re: &self.re * k, im: &self.im * k }
    }

    /// `a*b - c*d`, the Bareiss cross term.
    pub fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        a.mul(b).sub(&c.mul(d))
    }

    /// Exact quotient; the caller guarantees divisibility.
    pub fn div_exact(&self, d: &Self) -> Self {
        if d.im.is_zero() {
            debug_assert!((&self.re % &d.re).is_zero() && (&self.im % &d.re).is_zero());
            return Self { re: &self.re / &d.re, im: &self.im / &d.re };
        }
        let norm = &d.re * &d.re + &d.im * &d.im;
        let num = self.mul(&Self { re: d.re.clone(), im: -&d.im });
        debug_assert!((&num.re % &norm).is_zero() && (&num.im % &norm).is_zero());
        Self { re: num.re / &norm, im: num.im / &norm }
    }

    pub fn to_rational(&self, denom: &BigInt) -> GaussianRational {
        GaussianRational::new(
            Rational::new(self.re.clone(), denom.clone()),
            Rational::new(self.im.clone(), denom.clone()),
        )
    }
}

/// Least common multiple of every denominator (real and imaginary parts).
pub(crate) fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a GaussianRational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| {
        acc.lcm(x.re.denom()).lcm(x.im.denom())
    })
}

/// `x * scale`, which must be integral.
pub(crate) fn scale_to_int(x: &GaussianRational, scale: &BigInt) -> GaussInt {
    let re = &x.re * Rational::from_integer(scale.clone());
    let im = &x.im * Rational::from_integer(scale.clone());
    debug_assert!(re.is_integer() && im.is_integer());
    GaussInt { re: re.to_integer(), im: im.to_integer() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(re: i64, im: i64) -> GaussInt {
        GaussInt { re: re.into(), im: im.into() }
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = gi(3, -7);
        let b = gi(2, 5);
        assert_eq!(a.mul(&b).div_exact(&b), a);
        assert_eq!(a.mul(&gi(4, 0)).div_exact(&gi(4, 0)), a);
    }

    #[test]
    fn lcm_of_denominators() {
        let xs: Vec<GaussianRational> =
            ["1/4+1/6 i", "3/10"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(common_denominator(&xs), BigInt::from(60));
        assert_eq!(scale_to_int(&xs[0], &BigInt::from(60)), gi(15, 10));
    }
}
