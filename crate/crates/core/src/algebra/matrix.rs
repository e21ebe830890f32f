//! Dense matrices over the Gaussian rationals.

use std::fmt;
use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::gint::{common_denominator, scale_to_int, GaussInt};
use super::scalar::{GaussianRational, Rational};
use crate::error::{Error, Result};

/// Row-major dense matrix. Equality is exact entrywise equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<GaussianRational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::Shape(format!(
                "row {bad} has {} entries, expected {c}",
                rows[bad].len()
            )));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from text entries; panics on malformed input.
    pub fn parse_rows(rows: &[&[&str]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse().expect("valid entry")).collect())
            .collect();
        Self::from_rows(rows).expect("rectangular")
    }

    pub fn column(entries: Vec<GaussianRational>) -> Self {
        let n = entries.len();
        Self { rows: n, cols: 1, data: entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<GaussianRational> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn require_square(&self, op: &str) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::Shape(format!("{op} needs a square matrix, got {}x{}", self.rows, self.cols)));
        }
        Ok(self.rows)
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Matrix, op: &str, f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "cannot {op} {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, "subtract", |a, b| a - b)
    }

    pub fn scale(&self, k: &GaussianRational) -> Matrix {
        self.map(|x| x * k)
    }

    pub fn map(&self, f: impl Fn(&GaussianRational) -> GaussianRational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Kronecker product: block `(i, j)` of the result is `self[i, j] * rhs`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let (r, c) = (self.rows * rhs.rows, self.cols * rhs.cols);
        let mut out = Matrix::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out[(i * rhs.rows + k, j * rhs.cols + l)] = a * &rhs[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj(&self) -> Matrix {
        self.map(GaussianRational::conj)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Result<GaussianRational> {
        let n = self.require_square("trace")?;
        Ok((0..n).fold(GaussianRational::zero(), |acc, i| acc + &self[(i, i)]))
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.dagger()
    }

    /// Entrywise product sum `sum_ij self[i,j] * rhs[i,j]`.
    pub fn frobenius_dot(&self, rhs: &Matrix) -> Result<GaussianRational> {
        let prod = self.zip_with(rhs, "pair", |a, b| a * b)?;
        Ok(prod.data.iter().fold(GaussianRational::zero(), |acc, x| acc + x))
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_complex())
    }

    fn to_gauss_ints(&self) -> (Vec<Vec<GaussInt>>, BigInt) {
        let scale = common_denominator(&self.data);
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| scale_to_int(x, &scale)).collect())
            .collect();
        (rows, scale)
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<GaussianRational> {
        let n = self.require_square("determinant")?;
        if n == 0 {
            return Ok(GaussianRational::one());
        }
        let (rows, scale) = self.to_gauss_ints();
        let det = match bareiss(rows, n) {
            Ok(elim) => elim.det,
            Err(Error::Singular { .. }) => return Ok(GaussianRational::zero()),
            Err(e) => return Err(e),
        };
        Ok(det.to_rational(&scale.pow(n as u32)))
    }

    /// Determinant and adjugate together.
    pub fn det_and_adjugate(&self) -> Result<(GaussianRational, Matrix)> {
        let n = self.require_square("adjugate")?;
        let (rows, scale) = self.to_gauss_ints();
        let (det, adj) = gauss_int_det_adjugate(rows, n)?;
        let det = det.to_rational(&scale.pow(n as u32));
        let adj_scale = scale.pow(n.saturating_sub(1) as u32);
        let data = adj.iter().flatten().map(|x| x.to_rational(&adj_scale)).collect();
        Ok((det, Matrix { rows: n, cols: n, data }))
    }

    /// Exact inverse; a singular input reports the elimination step at which
    /// no pivot was available.
    pub fn inverse(&self) -> Result<Matrix> {
        let (det, adj) = self.det_and_adjugate()?;
        let inv = det.recip()?;
        Ok(adj.scale(&inv))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip().expect("nonzero pivot");
            for j in col..m.cols {
                m[(row, j)] = &m[(row, j)] * &inv;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for j in col..m.cols {
                    let t = &f * &m[(row, j)];
                    m[(r, j)] -= &t;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self * v = 0}`, one column vector per free variable.
    pub fn nullspace(&self) -> Vec<Matrix> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![GaussianRational::zero(); self.cols];
                v[f] = GaussianRational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&r[(row, f)];
                }
                Matrix::column(v)
            })
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn max_abs_diff_f64(&self, other: &DMatrix<Complex64>) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max((self[(i, j)].to_complex() - other[(i, j)]).norm());
            }
        }
        worst
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub(crate) struct Elimination {
    /// Upper-triangular rows after forward elimination (including any
    /// augmented columns).
    pub rows: Vec<Vec<GaussInt>>,
    pub det: GaussInt,
}

/// Bareiss forward elimination on the first `n` columns. Extra columns are
/// carried along as an augmented block.
pub(crate) fn bareiss(mut a: Vec<Vec<GaussInt>>, n: usize) -> Result<Elimination> {
    let width = a.first().map_or(0, Vec::len);
    let mut prev = GaussInt::one();
    let mut negate = false;
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(Error::Singular { step: k })?;
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..width {
                let v = if lead.is_zero() {
                    row[j].mul(&pivot_row[k])
                } else {
                    GaussInt::cross(&pivot_row[k], &row[j], &lead, &pivot_row[j])
                };
                row[j] = v.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let det = if negate { prev.neg() } else { prev };
    Ok(Elimination { rows: a, det })
}

/// Determinant and adjugate of an integer matrix, by Bareiss elimination of
/// `[A | I]` and fraction-free back substitution against `det * I`.
pub(crate) fn gauss_int_det_adjugate(a: Vec<Vec<GaussInt>>, n: usize) -> Result<(GaussInt, Vec<Vec<GaussInt>>)> {
    if n == 0 {
        return Ok((GaussInt::one(), Vec::new()));
    }
    let augmented = a
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| if i == j { GaussInt::one() } else { GaussInt::zero() }));
            row
        })
        .collect();
    let Elimination { rows: u, det } = bareiss(augmented, n)?;
    let mut adj = vec![vec![GaussInt::zero(); n]; n];
    for col in 0..n {
        for i in (0..n).rev() {
            let mut acc = det.mul(&u[i][n + col]);
            for j in i + 1..n {
                if !u[i][j].is_zero() {
                    acc = acc.sub(&u[i][j].mul(&adj[j][col]));
                }
            }
            adj[i][col] = acc.div_exact(&u[i][i]);
        }
    }
    Ok((det, adj))
}

/// Rational entries scaled to integers, for callers that drive the integer
/// kernels directly.
pub(crate) fn rational_scale_of(m: &Matrix) -> BigInt {
    common_denominator(m.entries())
}

pub(crate) fn gauss_int_rows(m: &Matrix, scale: &BigInt) -> Vec<Vec<GaussInt>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| scale_to_int(x, scale)).collect()).collect()
}

pub fn real_diag(entries: &[Rational]) -> Matrix {
    let n = entries.len();
    let mut m = Matrix::zeros(n, n);
    for (i, e) in entries.iter().enumerate() {
        m[(i, i)] = GaussianRational::real(e.clone());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_gate() -> Matrix {
        Matrix::parse_rows(&[&["0", "1"], &["1", "0"]])
    }

    #[test]
    fn kron_of_paulis() {
        let xx = x_gate().kron(&x_gate());
        let expected = Matrix::from_fn(4, 4, |i, j| GaussianRational::from_int((i + j == 3) as i64));
        assert_eq!(xx, expected);
    }

    #[test]
    fn dagger_conjugates() {
        let a = Matrix::parse_rows(&[&["0", "i"], &["0", "0"]]);
        assert_eq!(a.dagger(), Matrix::parse_rows(&[&["0", "0"], &["-i", "0"]]));
    }

    #[test]
    fn trace_of_identity() {
        assert_eq!(Matrix::identity(4).trace().unwrap(), GaussianRational::from_int(4));
    }

    #[test]
    fn shape_errors() {
        let a = Matrix::zeros(2, 3);
        assert!(matches!(a.mul(&a), Err(Error::Shape(_))));
        assert!(matches!(a.trace(), Err(Error::Shape(_))));
        assert!(matches!(a.add(&Matrix::zeros(3, 2)), Err(Error::Shape(_))));
    }

    #[test]
    fn inverse_examples() {
        let a = Matrix::parse_rows(&[&["1", "0"], &["0", "2"]]);
        assert_eq!(a.inverse().unwrap(), Matrix::parse_rows(&[&["1", "0"], &["0", "1/2"]]));

        let half = GaussianRational::from_ratio(1, 2);
        let b = Matrix::identity(2).sub(&x_gate().scale(&half)).unwrap();
        let inv = b.inverse().unwrap();
        assert_eq!(inv, Matrix::parse_rows(&[&["4/3", "2/3"], &["2/3", "4/3"]]));
        assert_eq!(b.mul(&inv).unwrap(), Matrix::identity(2));

        let s = Matrix::parse_rows(&[&["1", "1"], &["1", "1"]]);
        assert_eq!(s.inverse(), Err(Error::Singular { step: 1 }));
    }

    #[test]
    fn determinant_examples() {
        let a = Matrix::parse_rows(&[&["1", "1/2"], &["1/2", "1"]]);
        assert_eq!(a.determinant().unwrap(), GaussianRational::from_ratio(3, 4));
        assert_eq!(Matrix::identity(5).determinant().unwrap(), GaussianRational::one());
        let s = Matrix::parse_rows(&[&["1", "2"], &["2", "4"]]);
        assert!(s.determinant().unwrap().is_zero());
        // Needs a row swap: det [[0,1],[1,0]] = -1.
        assert_eq!(x_gate().determinant().unwrap(), GaussianRational::from_int(-1));
    }

    #[test]
    fn complex_adjugate() {
        let a = Matrix::parse_rows(&[&["1+1 i", "2"], &["1/3", "-i"]]);
        let (det, adj) = a.det_and_adjugate().unwrap();
        // det = (1+i)(-i) - 2/3 = 1 - i - 2/3
        assert_eq!(det, "1/3-1 i".parse().unwrap());
        assert_eq!(adj, Matrix::parse_rows(&[&["-i", "-2"], &["-1/3", "1+1 i"]]));
    }

    #[test]
    fn nullspace_basis() {
        let a = Matrix::parse_rows(&[&["1", "2", "3"], &["2", "4", "6"]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.mul(&v).unwrap().is_zero());
        }
        assert_eq!(a.rank(), 1);
    }
}
