use std::fmt;

use super::gates::QuantumGate;
use crate::algebra::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Register {
    Ctc,
    Cr,
    Tmp,
}

impl fmt::Display for Register {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Register::Ctc => "ctc",
            Register::Cr => "cr",
            Register::Tmp => "tmp",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wire {
    pub register: Register,
    pub index: usize,
}

impl Wire {
    pub fn ctc(index: usize) -> Self {
        Self { register: Register::Ctc, index }
    }
    pub fn cr(index: usize) -> Self {
        Self { register: Register::Cr, index }
    }
    pub fn tmp(index: usize) -> Self {
        Self { register: Register::Tmp, index }
    }
}

impl fmt::Display for Wire {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.register, self.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateOp {
    pub gate: QuantumGate,
    /// Global wire indices: CTC wires are `0..q`, CR wires `q..q+r`.
    pub targets: Vec<usize>,
}

/// Unitary circuit on `q` CTC qubits followed by `r` CR qubits. Wire 0 is the
/// most significant bit of the basis-state index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumCircuit {
    pub ctc_qubits: usize,
    pub cr_qubits: usize,
    /// User-defined gates, in definition order.
    pub definitions: Vec<QuantumGate>,
    pub ops: Vec<GateOp>,
}

impl QuantumCircuit {
    pub fn new(ctc_qubits: usize, cr_qubits: usize) -> Self {
        Self { ctc_qubits, cr_qubits, definitions: Vec::new(), ops: Vec::new() }
    }

    pub fn total_qubits(&self) -> usize {
        self.ctc_qubits + self.cr_qubits
    }

    pub fn push(&mut self, gate: QuantumGate, targets: Vec<usize>) -> &mut Self {
        self.ops.push(GateOp { gate, targets });
        self
    }

    /// Gate-wise daggers in reverse order.
    pub fn inverse(&self) -> Self {
        let ops = self
            .ops
            .iter()
            .rev()
            .map(|op| GateOp { gate: op.gate.dagger(), targets: op.targets.clone() })
            .collect();
        Self { ops, ..self.clone() }
    }

    pub fn wire_name(&self, global: usize) -> Wire {
        if global < self.ctc_qubits {
            Wire::ctc(global)
        } else {
            Wire::cr(global - self.ctc_qubits)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
    Not,
    Copy,
}

impl BoolOp {
    pub fn arity(self) -> usize {
        match self {
            BoolOp::And | BoolOp::Or => 2,
            BoolOp::Not | BoolOp::Copy => 1,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            BoolOp::And => "and",
            BoolOp::Or => "or",
            BoolOp::Not => "not",
            BoolOp::Copy => "copy",
        }
    }

    pub fn eval(self, inputs: &[bool]) -> bool {
        match self {
            BoolOp::And => inputs.iter().all(|&b| b),
            BoolOp::Or => inputs.iter().any(|&b| b),
            BoolOp::Not => !inputs[0],
            BoolOp::Copy => inputs[0],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolGate {
    pub op: BoolOp,
    pub output: Wire,
    pub inputs: Vec<Wire>,
}

/// Classical circuit on `p` CTC bits and `qc` CR bits. The body is a
/// straight-line gate list over `ctc`/`cr`/`tmp` wires, an explicit function
/// table on all `p + qc` bits, or both (which must then agree).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalCircuit {
    pub ctc_bits: usize,
    pub cr_bits: usize,
    pub gates: Vec<BoolGate>,
    /// `table[x]` for input index `x = (ctc << cr_bits) | cr`, with `ctc[0]`
    /// the most significant bit.
    pub table: Option<Vec<u64>>,
}

impl ClassicalCircuit {
    pub fn new(ctc_bits: usize, cr_bits: usize) -> Self {
        Self { ctc_bits, cr_bits, gates: Vec::new(), table: None }
    }

    pub fn total_bits(&self) -> usize {
        self.ctc_bits + self.cr_bits
    }

    pub fn tmp_bits(&self) -> usize {
        self.gates
            .iter()
            .flat_map(|g| std::iter::once(&g.output).chain(&g.inputs))
            .filter(|w| w.register == Register::Tmp)
            .map(|w| w.index + 1)
            .max()
            .unwrap_or(0)
    }
}

/// Stochastic evolution of the CTC register; the CR register is written from
/// the final CTC contents by `output_rule`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StochasticProgram {
    pub ctc_bits: usize,
    pub cr_bits: usize,
    /// Column-stochastic `2^p x 2^p` matrix.
    pub matrix: Matrix,
    /// Bit patterns over `{0,1,*}` of length `p`; the output bit is 1 exactly
    /// when the CTC contents match one of them.
    pub output_rule: Vec<String>,
}

impl StochasticProgram {
    pub fn output_for(&self, state: usize) -> bool {
        self.output_rule.iter().any(|pat| pattern_matches(pat, state, self.ctc_bits))
    }
}

pub fn pattern_matches(pattern: &str, state: usize, bits: usize) -> bool {
    pattern.len() == bits
        && pattern.bytes().enumerate().all(|(k, c)| {
            let bit = (state >> (bits - 1 - k)) & 1;
            match c {
                b'*' => true,
                b'0' => bit == 0,
                b'1' => bit == 1,
                _ => false,
            }
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProgramKind {
    Quantum,
    Classical,
    Stochastic,
}

impl fmt::Display for ProgramKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProgramKind::Quantum => "quantum",
            ProgramKind::Classical => "classical",
            ProgramKind::Stochastic => "stochastic",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProgramBody {
    Quantum(QuantumCircuit),
    Classical(ClassicalCircuit),
    Stochastic(StochasticProgram),
}

/// A parsed CTC program. `output_bit` indexes the CR register.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtcProgram {
    pub body: ProgramBody,
    pub output_bit: usize,
}

impl CtcProgram {
    pub fn kind(&self) -> ProgramKind {
        match self.body {
            ProgramBody::Quantum(_) => ProgramKind::Quantum,
            ProgramBody::Classical(_) => ProgramKind::Classical,
            ProgramBody::Stochastic(_) => ProgramKind::Stochastic,
        }
    }

    /// `(ctc, cr)` register widths.
    pub fn registers(&self) -> (usize, usize) {
        match &self.body {
            ProgramBody::Quantum(c) => (c.ctc_qubits, c.cr_qubits),
            ProgramBody::Classical(c) => (c.ctc_bits, c.cr_bits),
            ProgramBody::Stochastic(s) => (s.ctc_bits, s.cr_bits),
        }
    }

    pub fn quantum(circuit: QuantumCircuit, output_bit: usize) -> Self {
        Self { body: ProgramBody::Quantum(circuit), output_bit }
    }

    pub fn classical(circuit: ClassicalCircuit, output_bit: usize) -> Self {
        Self { body: ProgramBody::Classical(circuit), output_bit }
    }

    pub fn stochastic(program: StochasticProgram, output_bit: usize) -> Self {
        Self { body: ProgramBody::Stochastic(program), output_bit }
    }

    pub fn as_quantum(&self) -> Option<&QuantumCircuit> {
        match &self.body {
            ProgramBody::Quantum(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_classical(&self) -> Option<&ClassicalCircuit> {
        match &self.body {
            ProgramBody::Classical(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_stochastic(&self) -> Option<&StochasticProgram> {
        match &self.body {
            ProgramBody::Stochastic(s) => Some(s),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn patterns() {
        assert!(pattern_matches("1*", 0b10, 2));
        assert!(pattern_matches("1*", 0b11, 2));
        assert!(!pattern_matches("1*", 0b01, 2));
        assert!(!pattern_matches("1", 0b01, 2));
    }
}
