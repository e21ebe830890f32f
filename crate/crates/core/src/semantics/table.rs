use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{rat, GaussianRational, Matrix, Rational};
use crate::error::{Error, Result};

/// A total function `{0,1}^p -> {0,1}^p`, stored densely. Bit strings are
/// indexed with the first bit most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionTable {
    bits: usize,
    map: Vec<usize>,
}

impl FunctionTable {
    pub fn new(bits: usize, map: Vec<usize>) -> Result<Self> {
        let size = 1usize << bits;
        if map.len() != size {
            return Err(Error::Input(format!("a {bits}-bit table needs {size} entries, got {}", map.len())));
        }
        if let Some(x) = map.iter().position(|&y| y >= size) {
            return Err(Error::Input(format!("entry {x} maps outside {bits} bits")));
        }
        Ok(Self { bits, map })
    }

    pub fn from_fn(bits: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::new(bits, (0..1usize << bits).map(f).collect())
    }

    pub fn identity(bits: usize) -> Self {
        Self { bits, map: (0..1usize << bits).collect() }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn size(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FunctionTable) -> FunctionTable {
        FunctionTable { bits: self.bits, map: other.map.iter().map(|&y| self.map[y]).collect() }
    }

    pub fn format_bits(&self, x: usize) -> String {
        format_bits(x, self.bits)
    }

    /// The 0/1 column-stochastic matrix of the function.
    pub fn to_matrix(&self) -> Matrix {
        let n = self.size();
        Matrix::from_fn(n, n, |i, j| GaussianRational::from_int((self.map[j] == i) as i64))
    }
}

pub fn format_bits(x: usize, width: usize) -> String {
    (0..width).map(|k| if (x >> (width - 1 - k)) & 1 == 1 { '1' } else { '0' }).collect()
}

/// Parses a bit string with the first character most significant.
pub fn parse_bits(s: &str) -> Result<usize> {
    if s.is_empty() || s.len() > 60 || !s.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::Input(format!("`{s}` is not a bit string")));
    }
    Ok(usize::from_str_radix(s, 2).expect("binary digits"))
}

/// Probability distribution over `{0,1}^p` with exact rational weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalDistribution {
    bits: usize,
    probabilities: Vec<Rational>,
}

impl ClassicalDistribution {
    pub fn new(bits: usize, probabilities: Vec<Rational>) -> Result<Self> {
        if probabilities.len() != 1usize << bits {
            return Err(Error::Input(format!(
                "a distribution on {bits} bits needs {} weights, got {}",
                1usize << bits,
                probabilities.len()
            )));
        }
        if probabilities.iter().any(Signed::is_negative) {
            return Err(Error::Input("negative probability".into()));
        }
        let total: Rational = probabilities.iter().sum();
        if !total.is_one() {
            return Err(Error::Input(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Self { bits, probabilities })
    }

    pub fn point_mass(bits: usize, x: usize) -> Self {
        let mut p = vec![Rational::zero(); 1usize << bits];
        p[x] = Rational::one();
        Self { bits, probabilities: p }
    }

    /// Uniform over `support` (which must be nonempty and duplicate-free).
    pub fn uniform_on(bits: usize, support: &[usize]) -> Self {
        let mut p = vec![Rational::zero(); 1usize << bits];
        let w = rat(1, support.len() as i64);
        for &x in support {
            p[x] = w.clone();
        }
        Self { bits, probabilities: p }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn probabilities(&self) -> &[Rational] {
        &self.probabilities
    }

    pub fn probability(&self, x: usize) -> &Rational {
        &self.probabilities[x]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.probabilities.len()).filter(|&x| !self.probabilities[x].is_zero()).collect()
    }

    /// Pushforward through a function table.
    pub fn push_forward(&self, f: &FunctionTable) -> ClassicalDistribution {
        let mut out = vec![Rational::zero(); self.probabilities.len()];
        for (x, p) in self.probabilities.iter().enumerate() {
            if !p.is_zero() {
                out[f.apply(x)] += p;
            }
        }
        ClassicalDistribution { bits: self.bits, probabilities: out }
    }

    /// Total variation distance `(1/2) Σ |p - q|`.
    pub fn distance(&self, other: &ClassicalDistribution) -> Rational {
        let l1: Rational = self.probabilities.iter().zip(&other.probabilities).map(|(a, b)| (a - b).abs()).sum();
        l1 / Rational::from_integer(2.into())
    }
}

impl fmt::Display for ClassicalDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .support()
            .into_iter()
            .map(|x| format!("{}: {}", format_bits(x, self.bits), self.probabilities[x]))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_checks_range() {
        assert!(FunctionTable::new(1, vec![0, 2]).is_err());
        assert!(FunctionTable::new(1, vec![0]).is_err());
        let not = FunctionTable::new(1, vec![1, 0]).unwrap();
        assert_eq!(not.compose(&not), FunctionTable::identity(1));
    }

    #[test]
    fn distribution_invariants() {
        assert!(ClassicalDistribution::new(1, vec![rat(1, 2), rat(1, 3)]).is_err());
        assert!(ClassicalDistribution::new(1, vec![rat(3, 2), rat(-1, 2)]).is_err());
        let d = ClassicalDistribution::uniform_on(2, &[1, 2]);
        assert_eq!(d.to_string(), "{01: 1/2, 10: 1/2}");
        let swap = FunctionTable::new(2, vec![0, 2, 1, 3]).unwrap();
        assert_eq!(d.push_forward(&swap), d);
        assert_eq!(d.distance(&ClassicalDistribution::point_mass(2, 1)), rat(1, 2));
    }
}
