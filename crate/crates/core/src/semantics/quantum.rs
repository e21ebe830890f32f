//! Quantum programs: the canonical consistent state `Λ(|0⟩⟨0|)` and the
//! range of acceptance probabilities over every fixed point.

use num_traits::Zero;

use super::verdict::{compare_to_half, threshold_decision, Verdict, Witness};
use crate::algebra::{GaussianRational, Matrix, Rational};
use crate::circuits::elaborate::circuit_isometry;
use crate::circuits::{CtcProgram, QuantumCircuit};
use crate::error::{Error, Result};
use crate::fixpoint::{compute_fixed_point, fixed_point_projector_with, FixedPointProjector};
use crate::limits::Limits;
use crate::superop::{program_to_natural, DensityMatrix, Superoperator};

fn quantum_body(p: &CtcProgram) -> Result<&QuantumCircuit> {
    p.as_quantum().ok_or_else(|| Error::Input(format!("expected a quantum program, got {}", p.kind())))
}

/// `E = V† F V` with `V = U (I ⊗ |0…0⟩)` and `F` the projector of the output
/// bit onto 1, so that the acceptance probability of `ρ` is `tr(E ρ)`.
pub fn acceptance_operator(p: &CtcProgram, limits: &Limits) -> Result<Matrix> {
    let c = quantum_body(p)?;
    let v = circuit_isometry(c, limits)?;
    let shift = c.cr_qubits - 1 - p.output_bit;
    let rows: Vec<usize> = (0..v.rows()).filter(|k| (k >> shift) & 1 == 1).collect();
    let n = v.cols();
    Ok(Matrix::from_fn(n, n, |i, j| {
        let mut acc = GaussianRational::zero();
        for &k in &rows {
            let (a, b) = (&v[(k, i)], &v[(k, j)]);
            if !a.is_zero() && !b.is_zero() {
                acc += &(&a.conj() * b);
            }
        }
        acc
    }))
}

fn trace_against(e: &Matrix, rho: &DensityMatrix) -> Result<Rational> {
    if rho.dim() != e.rows() {
        return Err(Error::Input(format!("state has dimension {}, program expects {}", rho.dim(), e.rows())));
    }
    let t = e.mul(rho.matrix())?.trace()?;
    if !t.is_real() {
        return Err(Error::Internal(format!("acceptance probability {t} is not real")));
    }
    Ok(t.re)
}

/// `tr(F · U (ρ ⊗ |0…0⟩⟨0…0|) U†)`, exactly.
pub fn accept_probability(p: &CtcProgram, rho: &DensityMatrix, limits: &Limits) -> Result<Rational> {
    trace_against(&acceptance_operator(p, limits)?, rho)
}

/// Everything computed for a quantum program at one seed.
pub struct QuantumFixedPoint {
    pub channel: Superoperator,
    pub projector: FixedPointProjector,
    pub state: DensityMatrix,
}

pub fn quantum_fixed_point(p: &CtcProgram, seed: &DensityMatrix, limits: &Limits) -> Result<QuantumFixedPoint> {
    let channel = program_to_natural(p, limits)?;
    let projector = fixed_point_projector_with(&channel, limits)?;
    let state = compute_fixed_point(&projector, seed)?;
    Ok(QuantumFixedPoint { channel, projector, state })
}

/// Hermitian `H` with `tr(H σ) = tr(E Λ(σ))` for every `σ`. Since every fixed
/// point is `Λ(σ)` for some state `σ`, the spectrum of `H` bounds the
/// acceptance probability over all fixed points.
pub fn fixed_point_acceptance_operator(e: &Matrix, r: &Matrix) -> Result<Matrix> {
    let n = e.rows();
    let row = Matrix::from_fn(1, n * n, |_, c| {
        let mut acc = GaussianRational::zero();
        for a in 0..n {
            for b in 0..n {
                let w = &e[(b, a)];
                let x = &r[(a * n + b, c)];
                if !w.is_zero() && !x.is_zero() {
                    acc += &(w * x);
                }
            }
        }
        acc
    });
    let h = Matrix::from_fn(n, n, |i, j| row[(0, j * n + i)].clone());
    if !h.is_hermitian() {
        return Err(Error::Internal("fixed-point acceptance operator is not Hermitian".into()));
    }
    Ok(h)
}

fn eigen_range(h: &Matrix) -> (f64, f64) {
    let eig = h.to_complex().symmetric_eigenvalues();
    let lo = eig.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = eig.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

/// Canonical fixed point from the all-zeros seed, its exact acceptance
/// probability, and the numeric range over all fixed points.
pub fn quantum_decide(p: &CtcProgram, limits: &Limits) -> Result<Verdict> {
    let (q, _) = p.registers();
    let seed = DensityMatrix::basis(1usize << q, 0);
    let fp = quantum_fixed_point(p, &seed, limits)?;
    let e = acceptance_operator(p, limits)?;
    let exact = trace_against(&e, &fp.state)?;
    let h = fixed_point_acceptance_operator(&e, &fp.projector.r_matrix)?;
    let range = eigen_range(&h);
    Ok(Verdict {
        decision: threshold_decision(&exact, range),
        compare_to_half: compare_to_half(&exact),
        exact_accept_probability: exact,
        probability_range: range,
        witness: Witness::State(fp.state),
        certified: true,
        notes: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::circuits::parse_program;
    use crate::semantics::verdict::Decision;

    fn prog(body: &str) -> CtcProgram {
        parse_program(&format!("quantum\nregisters ctc=1 cr=1\n{body}output cr[0]")).unwrap()
    }

    #[test]
    fn accept_probability_examples() {
        let l = Limits::default();
        let mixed = DensityMatrix::maximally_mixed(2);
        assert_eq!(accept_probability(&prog(""), &mixed, &l).unwrap(), rat(0, 1));
        assert_eq!(accept_probability(&prog("apply X cr[0]\n"), &mixed, &l).unwrap(), rat(1, 1));
        assert_eq!(accept_probability(&prog("apply CNOT ctc[0], cr[0]\n"), &mixed, &l).unwrap(), rat(1, 2));
    }

    #[test]
    fn grandfather_is_ambiguous_at_half() {
        let v = quantum_decide(&prog("apply X ctc[0]\napply CNOT ctc[0], cr[0]\n"), &Limits::default()).unwrap();
        assert_eq!(v.exact_accept_probability, rat(1, 2));
        assert_eq!(v.decision, Decision::Ambiguous);
        assert_eq!(v.witness, Witness::State(DensityMatrix::maximally_mixed(2)));
        assert!((v.probability_range.0 - 0.5).abs() < 1e-9 && (v.probability_range.1 - 0.5).abs() < 1e-9);
    }

    #[test]
    fn unconditional_accept() {
        let v = quantum_decide(&prog("apply X cr[0]\n"), &Limits::default()).unwrap();
        assert_eq!(v.decision, Decision::Accept);
        assert_eq!(v.exact_accept_probability, rat(1, 1));
        assert!((v.probability_range.0 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn forced_one_then_copy() {
        // Swap the CTC qubit with a fresh |1⟩ on cr[0]: the CTC is reset to
        // |1⟩ and its old contents go to cr[0], which is then overwritten.
        let p = parse_program(
            "quantum\nregisters ctc=1 cr=2\napply X cr[0]\napply SWAP ctc[0], cr[0]\napply CNOT ctc[0], cr[1]\noutput cr[1]",
        )
        .unwrap();
        let v = quantum_decide(&p, &Limits::default()).unwrap();
        assert_eq!(v.witness, Witness::State(DensityMatrix::basis(2, 1)));
        assert_eq!(v.exact_accept_probability, rat(1, 1));
        assert_eq!(v.decision, Decision::Accept);
    }

    #[test]
    fn identity_channel_range_spans_both() {
        // Every state is consistent: CNOT copies the CTC basis value out.
        let v = quantum_decide(&prog("apply CNOT ctc[0], cr[0]\n"), &Limits::default()).unwrap();
        assert_eq!(v.exact_accept_probability, rat(0, 1));
        assert!(v.probability_range.0.abs() < 1e-9 && (v.probability_range.1 - 1.0).abs() < 1e-9);
        assert_eq!(v.decision, Decision::Ambiguous);
    }
}
