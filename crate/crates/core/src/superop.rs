//! Channels on the CTC register in natural (vectorized) form.
//!
//! `vec` stacks rows, so `vec(|x⟩⟨y|) = |x⟩|y⟩` and a Kraus family `{A_j}`
//! acts as `K = Σ A_j ⊗ conj(A_j)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::One;

use crate::algebra::{hermitian_psd_check, GaussianRational, Matrix, PsdCheck};
use crate::circuits::elaborate::circuit_isometry;
use crate::circuits::{circuit_unitary, CtcProgram};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Row-stacking vectorization, as an `n·m x 1` column.
pub fn vec(a: &Matrix) -> Matrix {
    Matrix::column(a.entries().to_vec())
}

/// Inverse of [`vec`] for a square `n x n` result.
pub fn unvec(v: &Matrix, n: usize) -> Result<Matrix> {
    if v.cols() != 1 || v.rows() != n * n {
        return Err(Error::Input(format!("unvec to {n}x{n} needs a column of length {}, got {}x{}", n * n, v.rows(), v.cols())));
    }
    Matrix::from_vec(n, n, v.entries().to_vec())
}

/// Exact density matrix: Hermitian, unit trace, PSD.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityMatrix {
    matrix: Matrix,
}

impl DensityMatrix {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Input(format!("density matrix must be square, got {}x{}", matrix.rows(), matrix.cols())));
        }
        if !matrix.is_hermitian() {
            return Err(Error::Input("density matrix is not Hermitian".into()));
        }
        let tr = matrix.trace()?;
        if !tr.is_one() {
            return Err(Error::Input(format!("density matrix has trace {tr}, expected 1")));
        }
        if let Some(f) = hermitian_psd_check(&matrix).failure {
            return Err(Error::Input(format!("density matrix is not PSD ({f:?})")));
        }
        Ok(Self { matrix })
    }

    /// `|k⟩⟨k|`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let matrix = Matrix::from_fn(dim, dim, |i, j| GaussianRational::from_int((i == k && j == k) as i64));
        Self { matrix }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let w = GaussianRational::from_ratio(1, dim as i64);
        Self { matrix: Matrix::identity(dim).scale(&w) }
    }

    /// `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩` for an unnormalized rational amplitude vector.
    pub fn from_pure(amplitudes: &[GaussianRational]) -> Result<Self> {
        let norm: GaussianRational = amplitudes.iter().map(|a| GaussianRational::real(a.norm_sqr())).sum();
        let inv = norm.recip()?;
        let n = amplitudes.len();
        let matrix = Matrix::from_fn(n, n, |i, j| &(&amplitudes[i] * &amplitudes[j].conj()) * &inv);
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    /// Entrywise bound on the trace distance: `(1/2) Σ |re| + |im|` of the difference.
    pub fn l1_bound(&self, other: &DensityMatrix) -> crate::algebra::Rational {
        let d = self.matrix.sub(&other.matrix).expect("equal dims");
        let s: crate::algebra::Rational = d.entries().iter().map(GaussianRational::abs_l1).sum();
        s / crate::algebra::rat_int(2)
    }
}

/// Trace distance `(1/2)||A - B||_1` computed in floating point.
pub fn trace_distance_f64(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    let d = a - b;
    d.singular_values().iter().sum::<f64>() / 2.0
}

/// A channel on `N`-dimensional states, stored as its `N² x N²` natural matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superoperator {
    input_dim: usize,
    k_matrix: Matrix,
    completeness_warning: Option<String>,
}

impl Superoperator {
    pub fn new(input_dim: usize, k_matrix: Matrix) -> Result<Self> {
        let n2 = input_dim * input_dim;
        if k_matrix.rows() != n2 || k_matrix.cols() != n2 {
            return Err(Error::Input(format!(
                "natural matrix for N={input_dim} must be {n2}x{n2}, got {}x{}",
                k_matrix.rows(),
                k_matrix.cols()
            )));
        }
        Ok(Self { input_dim, k_matrix, completeness_warning: None })
    }

    pub fn identity(n: usize) -> Self {
        Self { input_dim: n, k_matrix: Matrix::identity(n * n), completeness_warning: None }
    }

    /// Natural representation of `x ↦ S` acting on diagonals: `K = Σ S_ij |ii⟩⟨jj|`.
    /// Off-diagonal inputs are annihilated, so the channel dephases then
    /// applies the column-stochastic `S`.
    pub fn from_stochastic(s: &Matrix) -> Result<Self> {
        if !s.is_square() {
            return Err(Error::Input("stochastic matrix must be square".into()));
        }
        let n = s.rows();
        let mut k = Matrix::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                k[(i * n + i, j * n + j)] = s[(i, j)].clone();
            }
        }
        Self::new(n, k)
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn k_matrix(&self) -> &Matrix {
        &self.k_matrix
    }

    /// Set when a Kraus family failed `Σ A†A = I`.
    pub fn completeness_warning(&self) -> Option<&str> {
        self.completeness_warning.as_deref()
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Superoperator) -> Result<Superoperator> {
        Superoperator::new(self.input_dim, self.k_matrix.mul(&first.k_matrix)?)
    }

    /// `Φ(A)` for an arbitrary operator (not necessarily a state).
    pub fn apply_to_operator(&self, a: &Matrix) -> Result<Matrix> {
        if a.rows() != self.input_dim || a.cols() != self.input_dim {
            return Err(Error::Input(format!(
                "channel on dimension {} applied to a {}x{} operator",
                self.input_dim,
                a.rows(),
                a.cols()
            )));
        }
        unvec(&self.k_matrix.mul(&vec(a))?, self.input_dim)
    }

    /// `vec(I)† K = vec(I)†`, checked exactly.
    pub fn is_trace_preserving(&self) -> bool {
        let n = self.input_dim;
        (0..n * n).all(|c| {
            let s: GaussianRational = (0..n).map(|i| self.k_matrix[(i * n + i, c)].clone()).sum();
            let expected = (c / n == c % n) as i64;
            s == GaussianRational::from_int(expected)
        })
    }

    /// `Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)`, a reshuffle of `K`.
    pub fn choi_matrix(&self) -> Matrix {
        let n = self.input_dim;
        Matrix::from_fn(n * n, n * n, |r, c| {
            let (i, a) = (r / n, r % n);
            let (j, b) = (c / n, c % n);
            self.k_matrix[(a * n + b, i * n + j)].clone()
        })
    }

    pub fn complete_positivity_check(&self) -> PsdCheck {
        hermitian_psd_check(&self.choi_matrix())
    }

    /// Largest eigenvalue modulus of `K`, in floating point.
    pub fn spectral_radius(&self) -> f64 {
        spectral_radius_f64(&self.k_matrix.to_complex())
    }
}

pub(crate) fn spectral_radius_f64(m: &DMatrix<Complex64>) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    let eig = m.clone().schur().eigenvalues().expect("complex Schur form is triangular");
    eig.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `K = Σ A_j ⊗ conj(A_j)`. An incomplete family still yields a result, with
/// a warning attached.
pub fn kraus_to_natural(kraus: &[Matrix]) -> Result<Superoperator> {
    let first = kraus.first().ok_or_else(|| Error::Input("empty Kraus family".into()))?;
    let n = first.rows();
    if let Some((j, a)) = kraus.iter().enumerate().find(|(_, a)| a.rows() != n || a.cols() != n) {
        return Err(Error::Input(format!("Kraus operator {j} is {}x{}, expected {n}x{n}", a.rows(), a.cols())));
    }
    let mut k = Matrix::zeros(n * n, n * n);
    let mut gram = Matrix::zeros(n, n);
    for a in kraus {
        k = k.add(&a.kron(&a.conj()))?;
        gram = gram.add(&a.dagger().mul(a)?)?;
    }
    let mut s = Superoperator::new(n, k)?;
    if gram != Matrix::identity(n) {
        s.completeness_warning = Some("Kraus operators do not satisfy Σ A†A = I".into());
    }
    Ok(s)
}

/// `A_y = (I ⊗ ⟨y|) U (I ⊗ |0…0⟩)` for each CR basis string `y`.
pub fn kraus_family(p: &CtcProgram, limits: &Limits) -> Result<Vec<Matrix>> {
    let c = quantum_body(p)?;
    let v = circuit_isometry(c, limits)?;
    let (n, r) = (1usize << c.ctc_qubits, c.cr_qubits);
    Ok((0..1usize << r)
        .map(|y| Matrix::from_fn(n, n, |i, j| v[((i << r) | y, j)].clone()))
        .filter(|a| !a.is_zero())
        .collect())
}

fn quantum_body(p: &CtcProgram) -> Result<&crate::circuits::QuantumCircuit> {
    let c = p.as_quantum().ok_or_else(|| Error::Input(format!("expected a quantum program, got {}", p.kind())))?;
    Ok(c)
}

/// Natural representation of `ρ ↦ Tr_CR(U (ρ ⊗ |0⟩⟨0|) U†)`.
pub fn program_to_natural(p: &CtcProgram, limits: &Limits) -> Result<Superoperator> {
    let c = quantum_body(p)?;
    if c.ctc_qubits > limits.max_ctc_qubits {
        return Err(Error::Resource(format!(
            "{} CTC qubits exceed the cap of {} (M would be {d}x{d})",
            c.ctc_qubits,
            limits.max_ctc_qubits,
            d = 1usize << (2 * c.ctc_qubits)
        )));
    }
    let mut k = kraus_to_natural(&kraus_family(p, limits)?)?;
    // An isometry always gives a complete family; anything else is a bug.
    if k.completeness_warning.take().is_some() {
        return Err(Error::Internal("circuit Kraus family is incomplete".into()));
    }
    Ok(k)
}

/// The same channel via `M₁ (U ⊗ Ū) M₀` on the doubled space. Only for
/// small circuits (`q + r ≤ 3`); used as a cross-check.
pub fn program_to_natural_direct(p: &CtcProgram, limits: &Limits) -> Result<Superoperator> {
    let c = quantum_body(p)?;
    let (q, r) = (c.ctc_qubits, c.cr_qubits);
    if q + r > 3 {
        return Err(Error::Resource(format!("direct route limited to 3 qubits, circuit has {}", q + r)));
    }
    let u = circuit_unitary(c, limits)?;
    let uu = u.kron(&u.conj());
    let (n, d) = (1usize << q, 1usize << r);
    let big = n * d;
    // M₀ = I ⊗ |0⟩ ⊗ I ⊗ |0⟩ : index (i, j) ↦ (i·d, j·d) in the doubled basis.
    let m0 = Matrix::from_fn(big * big, n * n, |row, col| {
        let (i, j) = (col / n, col % n);
        GaussianRational::from_int((row == (i * d) * big + j * d) as i64)
    });
    // M₁ = Σ_y I ⊗ ⟨y| ⊗ I ⊗ ⟨y|.
    let m1 = Matrix::from_fn(n * n, big * big, |row, col| {
        let (i, j) = (row / n, row % n);
        let (a, b) = (col / big, col % big);
        let hit = a / d == i && b / d == j && a % d == b % d;
        GaussianRational::from_int(hit as i64)
    });
    Superoperator::new(n, m1.mul(&uu)?.mul(&m0)?)
}

/// `unvec(K vec(ρ))`, re-checked to be a density matrix.
pub fn apply_channel(s: &Superoperator, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let out = s.apply_to_operator(rho.matrix())?;
    DensityMatrix::new(out).map_err(|e| Error::Internal(format!("channel output is not a density matrix: {e}")))
}

/// Traces out the low-order `D`-dimensional factor of an `N·D` operator.
pub fn partial_trace(a: &Matrix, keep_dim: usize) -> Result<Matrix> {
    if !a.is_square() || keep_dim == 0 || !a.rows().is_multiple_of(keep_dim) {
        return Err(Error::Input(format!("cannot keep a {keep_dim}-dim factor of a {}x{} operator", a.rows(), a.cols())));
    }
    let d = a.rows() / keep_dim;
    Ok(Matrix::from_fn(keep_dim, keep_dim, |i, j| (0..d).map(|y| a[(i * d + y, j * d + y)].clone()).sum()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::parse_program;
    use num_traits::Zero;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn x() -> Matrix {
        Matrix::parse_rows(&[&["0", "1"], &["1", "0"]])
    }

    #[test]
    fn vec_stacks_rows() {
        let a = Matrix::parse_rows(&[&["1", "2"], &["3", "4"]]);
        assert_eq!(vec(&a).entries(), Matrix::parse_rows(&[&["1"], &["2"], &["3"], &["4"]]).entries());
        assert_eq!(unvec(&vec(&a), 2).unwrap(), a);
        assert!(unvec(&vec(&a), 3).is_err());
    }

    #[test]
    fn s_gate_natural_is_diagonal() {
        let s = Matrix::from_rows(vec![vec![g("1"), g("0")], vec![g("0"), g("i")]]).unwrap();
        let k = kraus_to_natural(&[s]).unwrap();
        let expected = Matrix::from_fn(4, 4, |i, j| {
            if i != j {
                GaussianRational::zero()
            } else {
                [g("1"), g("-i"), g("i"), g("1")][i].clone()
            }
        });
        assert_eq!(k.k_matrix(), &expected);
    }

    #[test]
    fn reset_channel() {
        let a0 = Matrix::parse_rows(&[&["1", "0"], &["0", "0"]]);
        let a1 = Matrix::parse_rows(&[&["0", "1"], &["0", "0"]]);
        let k = kraus_to_natural(&[a0, a1]).unwrap();
        assert!(k.completeness_warning().is_none());
        for i in 0..2 {
            for j in 0..2 {
                let e = Matrix::from_fn(2, 2, |a, b| GaussianRational::from_int((a == i && b == j) as i64));
                let out = k.apply_to_operator(&e).unwrap();
                let expected = Matrix::from_fn(2, 2, |a, b| GaussianRational::from_int((a == 0 && b == 0 && i == j) as i64));
                assert_eq!(out, expected);
            }
        }
        assert!(k.is_trace_preserving());
        assert!(k.complete_positivity_check().is_psd());
    }

    #[test]
    fn incomplete_family_warns() {
        let a0 = Matrix::parse_rows(&[&["1", "0"], &["0", "0"]]);
        assert!(kraus_to_natural(&[a0]).unwrap().completeness_warning().is_some());
    }

    #[test]
    fn cnot_to_cr_dephases() {
        let p = parse_program("quantum\nregisters ctc=1 cr=1\napply CNOT ctc[0], cr[0]\noutput cr[0]").unwrap();
        let k = program_to_natural(&p, &Limits::default()).unwrap();
        let expected = crate::algebra::matrix::real_diag(&[
            crate::algebra::rat_int(1),
            crate::algebra::rat_int(0),
            crate::algebra::rat_int(0),
            crate::algebra::rat_int(1),
        ]);
        assert_eq!(k.k_matrix(), &expected);
        assert_eq!(program_to_natural_direct(&p, &Limits::default()).unwrap(), k);
        let plus = DensityMatrix::new(Matrix::parse_rows(&[&["1/2", "1/2"], &["1/2", "1/2"]])).unwrap();
        assert_eq!(apply_channel(&k, &plus).unwrap(), DensityMatrix::maximally_mixed(2));
    }

    #[test]
    fn x_program_and_identity() {
        let p = parse_program("quantum\nregisters ctc=1 cr=1\napply X ctc[0]\noutput cr[0]").unwrap();
        let k = program_to_natural(&p, &Limits::default()).unwrap();
        assert_eq!(k.k_matrix(), &x().kron(&x()));
        let id = parse_program("quantum\nregisters ctc=1 cr=1\noutput cr[0]").unwrap();
        assert_eq!(program_to_natural(&id, &Limits::default()).unwrap(), Superoperator::identity(2));
        assert_eq!(
            apply_channel(&k, &DensityMatrix::basis(2, 0)).unwrap(),
            DensityMatrix::basis(2, 1)
        );
    }

    #[test]
    fn partial_traces() {
        assert_eq!(partial_trace(&Matrix::identity(4), 2).unwrap(), Matrix::identity(2).scale(&g("2")));
        let h = g("1/2");
        let z = g("0");
        let bell = Matrix::from_rows(vec![
            vec![h.clone(), z.clone(), z.clone(), h.clone()],
            vec![z.clone(), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), z.clone()],
            vec![h.clone(), z.clone(), z.clone(), h.clone()],
        ])
        .unwrap();
        assert_eq!(partial_trace(&bell, 2).unwrap(), DensityMatrix::maximally_mixed(2).into_matrix());
        assert!(partial_trace(&Matrix::identity(4), 3).is_err());
    }

    #[test]
    fn spectral_radius_of_unitary_channel() {
        let k = Superoperator::new(2, x().kron(&x())).unwrap();
        assert!((k.spectral_radius() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn stochastic_embedding() {
        let s = Matrix::parse_rows(&[&["1/2", "1/4"], &["1/2", "3/4"]]);
        let k = Superoperator::from_stochastic(&s).unwrap();
        assert!(k.is_trace_preserving());
        assert!(k.complete_positivity_check().is_psd());
        let out = k.apply_to_operator(DensityMatrix::basis(2, 0).matrix()).unwrap();
        assert_eq!(out, crate::algebra::matrix::real_diag(&[crate::algebra::rat(1, 2), crate::algebra::rat(1, 2)]));
    }
}
