/// Size caps for the exact pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Cap on `q + r` when elaborating a quantum circuit to a full unitary.
    pub max_total_qubits: usize,
    /// Cap on `q` for fixed-point computation; the natural representation is
    /// `4^q x 4^q`.
    pub max_ctc_qubits: usize,
    /// Cap on `p + qc` for classical function tables.
    pub max_classical_bits: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_total_qubits: 10, max_ctc_qubits: 3, max_classical_bits: 20 }
    }
}

impl Limits {
    /// Lifts the CTC cap to four qubits (a 256x256 natural representation).
    /// Expect minutes to hours of exact arithmetic.
    pub fn with_four_ctc_qubits(self) -> Self {
        Self { max_ctc_qubits: self.max_ctc_qubits.max(4), ..self }
    }
}
