use super::matrix::Matrix;
use super::poly::Polynomial;
use super::scalar::Rational;
use crate::error::{Error, Result};

/// Dense matrix of polynomials in `z` with a declared degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
    degree_bound: usize,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial>, degree_bound: usize) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} polynomials cannot fill a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(p) = entries.iter().find(|p| p.degree() > degree_bound as isize) {
            return Err(Error::Input(format!(
                "entry of degree {} exceeds bound {degree_bound}",
                p.degree()
            )));
        }
        Ok(Self { rows, cols, entries, degree_bound })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn max_degree(&self) -> isize {
        self.entries.iter().map(Polynomial::degree).max().unwrap_or(-1)
    }

    pub fn evaluate(&self, z0: &Rational) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.entry(i, j).evaluate_rational(z0))
    }
}
