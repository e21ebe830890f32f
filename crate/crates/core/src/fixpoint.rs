//! Fixed-point projector of a channel.
//!
//! For a natural matrix `M`, `R_z = z (I - (1 - z) M)^{-1}` is a matrix of
//! rational functions in `z`, bounded on `(0, 1)`. Each entry is
//! `z·adj(z)_ij / det(z)` with both polynomials of degree at most `n + 1`
//! (`n = dim M`), so they are recovered exactly by interpolation at integer
//! points. The limit `R = lim_{z→0+} R_z` is then read off the lowest
//! nonvanishing coefficient of the denominator.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::gint::{common_denominator, scale_to_int, GaussInt};
use crate::algebra::matrix::gauss_int_det_adjugate;
use crate::algebra::poly::IntegerInterpolator;
use crate::algebra::{GaussianRational, Matrix, PolyMatrix, Polynomial};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::superop::{apply_channel, vec, unvec, DensityMatrix, Superoperator};

/// `R_z` as numerator polynomials over a shared denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicResolvent {
    /// Entry `(i, j)` is `z · adj(I - (1 - z) M)_ij`.
    pub numerators: PolyMatrix,
    /// `det(I - (1 - z) M)`.
    pub denominator: Polynomial,
    pub dim: usize,
}

impl SymbolicResolvent {
    /// `R_{z0}` for a rational `z0` where the denominator does not vanish.
    pub fn evaluate(&self, z0: &crate::algebra::Rational) -> Result<Matrix> {
        let d = self.denominator.evaluate_rational(z0);
        let inv = d.recip()?;
        Ok(self.numerators.evaluate(z0).scale(&inv))
    }
}

/// Evaluation of `B(z0) = L (I - (1 - z0) M)` at one integer abscissa.
struct Sample {
    z0: i64,
    det: GaussInt,
    adj: Vec<Vec<GaussInt>>,
}

fn sample(m_int: &[Vec<GaussInt>], scale: &BigInt, n: usize, z0: i64) -> Result<Option<Sample>> {
    let factor = BigInt::from(1 - z0);
    let b: Vec<Vec<GaussInt>> = m_int
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    let mut v = x.scale(&factor).neg();
                    if i == j {
                        v.re += scale;
                    }
                    v
                })
                .collect()
        })
        .collect();
    match gauss_int_det_adjugate(b, n) {
        Ok((det, adj)) => Ok(Some(Sample { z0, det, adj })),
        Err(Error::Singular { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Exact `R_z` for a square `M`, by evaluation at `n + 2` integer abscissae
/// `z0 = 1, 2, …` (singular ones skipped) and interpolation.
pub fn symbolic_resolvent(m: &Matrix) -> Result<SymbolicResolvent> {
    if !m.is_square() {
        return Err(Error::Shape(format!("resolvent needs a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    let n = m.rows();
    let needed = n + 2;
    let scale = common_denominator(m.entries());
    let m_int: Vec<Vec<GaussInt>> =
        (0..n).map(|i| m.row(i).iter().map(|x| scale_to_int(x, &scale)).collect()).collect();

    // det(I - (1 - z) M) has at most n roots, so n extra candidates always
    // suffice; more are tried only as a guard.
    let max_candidates = (2 * n + 2) as i64 + 8;
    let mut samples: Vec<Sample> = Vec::with_capacity(needed);
    let mut next = 1i64;
    while samples.len() < needed {
        if next > max_candidates {
            return Err(Error::Internal(format!(
                "only {} of {needed} abscissae were nonsingular",
                samples.len()
            )));
        }
        let batch: Vec<i64> = (next..next + (needed - samples.len()) as i64).collect();
        next += batch.len() as i64;
        let results: Vec<Option<Sample>> = batch
            .par_iter()
            .map(|&z0| sample(&m_int, &scale, n, z0))
            .collect::<Result<_>>()?;
        samples.extend(results.into_iter().flatten());
    }

    let abscissae: Vec<i64> = samples.iter().map(|s| s.z0).collect();
    let interp = IntegerInterpolator::new(&abscissae);
    // det(B) = L^n det(A), adj(B) = L^(n-1) adj(A).
    let det_scale = scale.pow(n as u32);
    let adj_scale = scale.pow(n.saturating_sub(1) as u32);
    let dets: Vec<GaussInt> = samples.iter().map(|s| s.det.clone()).collect();
    let denominator = interp.interpolate(&dets, &det_scale);

    let numerators: Vec<Polynomial> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            let values: Vec<GaussInt> =
                samples.iter().map(|s| s.adj[i][j].scale(&BigInt::from(s.z0))).collect();
            if values.iter().all(GaussInt::is_zero) {
                Polynomial::zero()
            } else {
                interp.interpolate(&values, &adj_scale)
            }
        })
        .collect();
    Ok(SymbolicResolvent { numerators: PolyMatrix::new(n, n, numerators, n + 1)?, denominator, dim: n })
}

/// `lim_{z→0+}` of each entry: with `k` the order of the denominator, the
/// entry is `c_k / d_k`. A numerator of lower order than `k` would diverge,
/// which cannot happen for a bounded resolvent and is reported as a
/// contract violation.
pub fn projector_limit_matrix(s: &SymbolicResolvent) -> Result<Matrix> {
    let k = s
        .denominator
        .lowest_nonzero_index()
        .ok_or_else(|| Error::Contract("resolvent denominator is identically zero".into()))?;
    // Linear scan for the lowest coefficient; see lowest_nonzero_index.
    let dk_inv = s.denominator.coeff(k).recip()?;
    let n = s.dim;
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let num = s.numerators.entry(i, j);
            match num.lowest_nonzero_index() {
                Some(order) if order < k => {
                    return Err(Error::Contract(format!(
                        "resolvent entry ({i}, {j}) diverges as z→0 (numerator order {order} < denominator order {k})"
                    )));
                }
                _ => data.push(&num.coeff(k) * &dk_inv),
            }
        }
    }
    Matrix::from_vec(n, n, data)
}

/// `R = K(Λ)` together with the channel it was derived from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointProjector {
    pub r_matrix: Matrix,
    pub source: Superoperator,
}

impl FixedPointProjector {
    pub fn as_superoperator(&self) -> Superoperator {
        Superoperator::new(self.source.input_dim(), self.r_matrix.clone()).expect("same shape as source")
    }
}

/// Limit of a resolvent as a projector for `source`, without verification.
pub fn projector_limit(s: &SymbolicResolvent, source: Superoperator) -> Result<FixedPointProjector> {
    Ok(FixedPointProjector { r_matrix: projector_limit_matrix(s)?, source })
}

/// Exact checks: `R² = R`, `KR = RK = R`, trace preservation, and complete
/// positivity of `R`.
pub fn verify_projector(p: &FixedPointProjector) -> Result<()> {
    let r = &p.r_matrix;
    let k = p.source.k_matrix();
    if r.mul(r)? != *r {
        return Err(Error::Contract("projector is not idempotent".into()));
    }
    if k.mul(r)? != *r {
        return Err(Error::Contract("K·R ≠ R: projector image is not fixed by the channel".into()));
    }
    if r.mul(k)? != *r {
        return Err(Error::Contract("R·K ≠ R: projector does not absorb the channel".into()));
    }
    let lambda = p.as_superoperator();
    if !lambda.is_trace_preserving() {
        return Err(Error::Contract("projector is not trace preserving".into()));
    }
    if let Some(f) = lambda.complete_positivity_check().failure {
        return Err(Error::Contract(format!("projector Choi matrix is not PSD ({f:?})")));
    }
    Ok(())
}

fn check_cap(phi: &Superoperator, limits: &Limits) -> Result<()> {
    let cap = 1usize << limits.max_ctc_qubits;
    if phi.input_dim() > cap {
        return Err(Error::Resource(format!(
            "channel on dimension {} exceeds the cap of {cap} ({} CTC qubits)",
            phi.input_dim(),
            limits.max_ctc_qubits
        )));
    }
    Ok(())
}

/// `Λ` for `Φ` under the default size cap, verified exactly.
pub fn fixed_point_projector(phi: &Superoperator) -> Result<FixedPointProjector> {
    fixed_point_projector_with(phi, &Limits::default())
}

pub fn fixed_point_projector_with(phi: &Superoperator, limits: &Limits) -> Result<FixedPointProjector> {
    check_cap(phi, limits)?;
    let s = symbolic_resolvent(phi.k_matrix())?;
    let p = projector_limit(&s, phi.clone())?;
    verify_projector(&p)?;
    Ok(p)
}

/// `ρ = unvec(R vec(σ))`, checked to be a density matrix and a fixed point.
pub fn compute_fixed_point(lambda: &FixedPointProjector, sigma: &DensityMatrix) -> Result<DensityMatrix> {
    let n = lambda.source.input_dim();
    if sigma.dim() != n {
        return Err(Error::Input(format!("seed has dimension {}, channel has {n}", sigma.dim())));
    }
    let out = unvec(&lambda.r_matrix.mul(&vec(sigma.matrix()))?, n)?;
    let rho = DensityMatrix::new(out).map_err(|e| Error::Contract(format!("Λ(σ) is not a density matrix: {e}")))?;
    if !verify_fixed_point(&lambda.source, &rho) {
        return Err(Error::Contract("Λ(σ) is not a fixed point of Φ".into()));
    }
    Ok(rho)
}

/// `Φ(ρ) = ρ`, exactly.
pub fn verify_fixed_point(phi: &Superoperator, rho: &DensityMatrix) -> bool {
    match apply_channel(phi, rho) {
        Ok(out) => out == *rho,
        Err(_) => false,
    }
}

/// Floating-point Cesàro mean `(1/T) Σ_{k<T} Φ^k(σ)`. A numerical
/// cross-check only.
pub fn cesaro_oracle(phi: &Superoperator, sigma: &DensityMatrix, steps: usize) -> DMatrix<Complex64> {
    let n = phi.input_dim();
    let k = phi.k_matrix().to_complex();
    let mut x = DVector::from_iterator(n * n, sigma.matrix().entries().iter().map(GaussianRational::to_complex));
    let mut y = DVector::zeros(n * n);
    let mut sum = DVector::<Complex64>::zeros(n * n);
    for _ in 0..steps.max(1) {
        sum += &x;
        y.gemv(Complex64::one(), &k, &x, Complex64::zero());
        std::mem::swap(&mut x, &mut y);
    }
    sum /= Complex64::new(steps.max(1) as f64, 0.0);
    DMatrix::from_row_iterator(n, n, sum.iter().cloned())
}

/// Cesàro mean for a column-stochastic matrix acting on a probability
/// vector; the diagonal special case of [`cesaro_oracle`] without the
/// `N²`-dimensional lift.
pub fn cesaro_oracle_stochastic(s: &Matrix, seed: &[crate::algebra::Rational], steps: usize) -> DVector<f64> {
    let n = s.rows();
    let k = DMatrix::from_fn(n, n, |i, j| crate::algebra::rational_to_f64(&s[(i, j)].re));
    let mut x = DVector::from_iterator(n, seed.iter().map(crate::algebra::rational_to_f64));
    let mut y = DVector::zeros(n);
    let mut sum = DVector::<f64>::zeros(n);
    for _ in 0..steps.max(1) {
        sum += &x;
        y.gemv(1.0, &k, &x, 0.0);
        std::mem::swap(&mut x, &mut y);
    }
    sum / steps.max(1) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::superop::kraus_to_natural;

    fn x() -> Matrix {
        Matrix::parse_rows(&[&["0", "1"], &["1", "0"]])
    }

    fn bit_flip() -> Superoperator {
        Superoperator::new(2, x().kron(&x())).unwrap()
    }

    fn reset() -> Superoperator {
        let a0 = Matrix::parse_rows(&[&["1", "0"], &["0", "0"]]);
        let a1 = Matrix::parse_rows(&[&["0", "1"], &["0", "0"]]);
        kraus_to_natural(&[a0, a1]).unwrap()
    }

    #[test]
    fn identity_resolvent() {
        let s = symbolic_resolvent(&Matrix::identity(4)).unwrap();
        assert_eq!(s.denominator, Polynomial::from_ints(&[0, 0, 0, 0, 1]));
        assert_eq!(s.numerators.entry(0, 0), &Polynomial::from_ints(&[0, 0, 0, 0, 1]));
        assert!(s.numerators.entry(0, 1).is_zero());
        assert_eq!(s.evaluate(&rat(1, 3)).unwrap(), Matrix::identity(4));
    }

    #[test]
    fn bit_flip_resolvent_pointwise() {
        let m = x().kron(&x());
        let s = symbolic_resolvent(&m).unwrap();
        for z0 in [rat(1, 2), rat(1, 3)] {
            let one_minus = GaussianRational::real(rat(1, 1) - &z0);
            let direct = Matrix::identity(4).sub(&m.scale(&one_minus)).unwrap().inverse().unwrap();
            assert_eq!(s.evaluate(&z0).unwrap(), direct.scale(&GaussianRational::real(z0)));
        }
    }

    #[test]
    fn limit_rule() {
        let num = PolyMatrix::new(1, 1, vec![Polynomial::from_ints(&[0, 2, 3])], 2).unwrap();
        let s = SymbolicResolvent { numerators: num, denominator: Polynomial::from_ints(&[0, 4]), dim: 1 };
        assert_eq!(projector_limit_matrix(&s).unwrap()[(0, 0)], GaussianRational::from_ratio(1, 2));

        let num = PolyMatrix::new(1, 1, vec![Polynomial::from_ints(&[0, 0, 1])], 2).unwrap();
        let s = SymbolicResolvent { numerators: num, denominator: Polynomial::from_ints(&[0, 1]), dim: 1 };
        assert!(projector_limit_matrix(&s).unwrap()[(0, 0)].is_zero());

        let num = PolyMatrix::new(1, 1, vec![Polynomial::from_ints(&[1])], 2).unwrap();
        let s = SymbolicResolvent { numerators: num, denominator: Polynomial::from_ints(&[0, 1]), dim: 1 };
        assert!(matches!(projector_limit_matrix(&s), Err(Error::Contract(_))));
    }

    #[test]
    fn bit_flip_projector_averages() {
        let p = fixed_point_projector(&bit_flip()).unwrap();
        let expected = Matrix::identity(4).add(&x().kron(&x())).unwrap().scale(&GaussianRational::from_ratio(1, 2));
        assert_eq!(p.r_matrix, expected);
        let rho = compute_fixed_point(&p, &DensityMatrix::basis(2, 0)).unwrap();
        assert_eq!(rho, DensityMatrix::maximally_mixed(2));
        assert!(!verify_fixed_point(&bit_flip(), &DensityMatrix::basis(2, 0)));
        assert!(verify_fixed_point(&bit_flip(), &DensityMatrix::maximally_mixed(2)));
    }

    #[test]
    fn identity_and_reset_projectors() {
        let id = fixed_point_projector(&Superoperator::identity(2)).unwrap();
        assert_eq!(id.r_matrix, Matrix::identity(4));
        assert_eq!(compute_fixed_point(&id, &DensityMatrix::basis(2, 1)).unwrap(), DensityMatrix::basis(2, 1));

        let r = fixed_point_projector(&reset()).unwrap();
        assert_eq!(
            compute_fixed_point(&r, &DensityMatrix::maximally_mixed(2)).unwrap(),
            DensityMatrix::basis(2, 0)
        );
    }

    #[test]
    fn cesaro_examples() {
        let avg = cesaro_oracle(&bit_flip(), &DensityMatrix::basis(2, 0), 10_000);
        assert!(DensityMatrix::maximally_mixed(2).matrix().max_abs_diff_f64(&avg) < 1e-4);
        let avg = cesaro_oracle(&reset(), &DensityMatrix::maximally_mixed(2), 100);
        assert!(DensityMatrix::basis(2, 0).matrix().max_abs_diff_f64(&avg) < 1e-2);
        let s = Matrix::parse_rows(&[&["0", "1"], &["1", "0"]]);
        let avg = cesaro_oracle_stochastic(&s, &[rat(1, 1), rat(0, 1)], 1000);
        assert!((avg[0] - 0.5).abs() < 1e-9 && (avg[1] - 0.5).abs() < 1e-9);
        let avg = cesaro_oracle(&Superoperator::identity(2), &DensityMatrix::basis(2, 1), 7);
        assert!(DensityMatrix::basis(2, 1).matrix().max_abs_diff_f64(&avg) < 1e-12);
    }
}
