use num_traits::Zero;

use super::gates::QuantumGate;
use super::ir::{ClassicalCircuit, QuantumCircuit, Register};
use crate::algebra::{GaussianRational, Matrix};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::semantics::table::FunctionTable;

/// Left-multiplies the rows of `state` (a `2^n`-row matrix) by `gate` acting
/// on the given global wires.
pub(crate) fn apply_gate_rows(state: &mut Matrix, n: usize, gate: &QuantumGate, targets: &[usize]) {
    let k = targets.len();
    let local = 1usize << k;
    let shifts: Vec<usize> = targets.iter().map(|&w| n - 1 - w).collect();
    let mask: usize = shifts.iter().map(|s| 1usize << s).sum();
    let offsets: Vec<usize> = (0..local)
        .map(|t| (0..k).filter(|&b| (t >> (k - 1 - b)) & 1 == 1).map(|b| 1usize << shifts[b]).sum())
        .collect();
    let g = &gate.matrix;
    let mut gathered = vec![GaussianRational::zero(); local];
    for col in 0..state.cols() {
        for base in (0..1usize << n).filter(|b| b & mask == 0) {
            let mut any = false;
            for (t, off) in offsets.iter().enumerate() {
                gathered[t] = state[(base | off, col)].clone();
                any |= !gathered[t].is_zero();
            }
            if !any {
                continue;
            }
            for (row, off) in offsets.iter().enumerate() {
                let mut acc = GaussianRational::zero();
                for (t, v) in gathered.iter().enumerate() {
                    let c = &g[(row, t)];
                    if !c.is_zero() && !v.is_zero() {
                        acc += &(c * v);
                    }
                }
                state[(base | off, col)] = acc;
            }
        }
    }
}

fn check_size(c: &QuantumCircuit, limits: &Limits) -> Result<usize> {
    let n = c.total_qubits();
    if n > limits.max_total_qubits {
        return Err(Error::Resource(format!(
            "circuit on {n} qubits would need a {d}x{d} unitary (cap is {} qubits)",
            limits.max_total_qubits,
            d = 1u128 << n.min(127)
        )));
    }
    Ok(n)
}

/// The full `2^(q+r)` unitary, gates applied in program order. Wire 0 is the
/// most significant bit; CTC wires form the high-order block.
pub fn circuit_unitary(c: &QuantumCircuit, limits: &Limits) -> Result<Matrix> {
    let n = check_size(c, limits)?;
    let mut u = Matrix::identity(1usize << n);
    for op in &c.ops {
        apply_gate_rows(&mut u, n, &op.gate, &op.targets);
    }
    Ok(u)
}

/// `U (I ⊗ |0…0⟩)`: the columns of the unitary whose CR input is all zeros,
/// as a `2^(q+r) x 2^q` matrix.
pub fn circuit_isometry(c: &QuantumCircuit, limits: &Limits) -> Result<Matrix> {
    let n = check_size(c, limits)?;
    let r = c.cr_qubits;
    let mut v = Matrix::from_fn(1usize << n, 1usize << c.ctc_qubits, |row, col| {
        GaussianRational::from_int((row == col << r) as i64)
    });
    for op in &c.ops {
        apply_gate_rows(&mut v, n, &op.gate, &op.targets);
    }
    Ok(v)
}

/// Runs the straight-line gate list on input `x = (ctc << cr_bits) | cr`.
pub(crate) fn evaluate_gates(c: &ClassicalCircuit, x: u64) -> u64 {
    let (p, qc) = (c.ctc_bits, c.cr_bits);
    let width = p + qc;
    let mut ctc: Vec<bool> = (0..p).map(|i| (x >> (width - 1 - i)) & 1 == 1).collect();
    let mut cr: Vec<bool> = (0..qc).map(|i| (x >> (qc - 1 - i)) & 1 == 1).collect();
    let mut tmp = vec![false; c.tmp_bits()];
    for g in &c.gates {
        let inputs: Vec<bool> = g
            .inputs
            .iter()
            .map(|w| match w.register {
                Register::Ctc => ctc[w.index],
                Register::Cr => cr[w.index],
                Register::Tmp => tmp[w.index],
            })
            .collect();
        let v = g.op.eval(&inputs);
        match g.output.register {
            Register::Ctc => ctc[g.output.index] = v,
            Register::Cr => cr[g.output.index] = v,
            Register::Tmp => tmp[g.output.index] = v,
        }
    }
    ctc.iter().chain(&cr).fold(0u64, |acc, &b| (acc << 1) | b as u64)
}

/// The full table of `C` on `p + qc` bits and the induced CTC map
/// `C'(y) = [C(y, 0…0)]_CTC` on `p` bits. A table body takes precedence over
/// gates when both are present (the validator checks they agree).
pub fn classical_table(c: &ClassicalCircuit, limits: &Limits) -> Result<(FunctionTable, FunctionTable)> {
    let width = c.total_bits();
    if width > limits.max_classical_bits {
        return Err(Error::Resource(format!(
            "classical circuit on {width} bits exceeds the cap of {} bits",
            limits.max_classical_bits
        )));
    }
    let size = 1usize << width;
    let map: Vec<usize> = match &c.table {
        Some(t) => t.iter().map(|&y| y as usize).collect(),
        None => (0..size as u64).map(|x| evaluate_gates(c, x) as usize).collect(),
    };
    let full = FunctionTable::new(width, map)?;
    let induced = FunctionTable::from_fn(c.ctc_bits, |y| full.apply(y << c.cr_bits) >> c.cr_bits)?;
    Ok((full, induced))
}
