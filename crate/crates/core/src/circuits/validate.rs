use std::fmt;

use num_traits::{One, Signed, Zero};

use super::elaborate::evaluate_gates;
use super::gates::QuantumGate;
use super::ir::{ClassicalCircuit, CtcProgram, ProgramBody, QuantumCircuit, Register, StochasticProgram};
use crate::algebra::{GaussianRational, Matrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    NonUnitary,
    NotStochastic,
    CyclicDependency,
    WireOutOfRange,
    ArityMismatch,
    DuplicateTarget,
    MalformedTable,
    TableMismatch,
    OutputOutOfRange,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.message)
    }
}

/// Every violation found, not just the first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: ViolationKind, message: String) {
        self.violations.push(Violation { kind, message });
    }
}

pub fn validate_program(p: &CtcProgram) -> ValidationReport {
    let mut report = ValidationReport::default();
    let (_, cr) = p.registers();
    match &p.body {
        ProgramBody::Quantum(c) => check_quantum(c, &mut report),
        ProgramBody::Classical(c) => check_classical(c, &mut report),
        ProgramBody::Stochastic(s) => check_stochastic(s, &mut report),
    }
    if p.output_bit >= cr {
        report.push(
            ViolationKind::OutputOutOfRange,
            format!("output cr[{}] but the CR register has {cr} wires", p.output_bit),
        );
    }
    report
}

/// Row-by-row check of `G G† = I`.
pub fn unitarity_violations(gate: &QuantumGate) -> Vec<String> {
    let m = &gate.matrix;
    let gram = m.mul(&m.dagger()).expect("square gate");
    let mut out = Vec::new();
    for i in 0..gram.rows() {
        if gram[(i, i)] != GaussianRational::one() {
            out.push(format!("gate {}: row {i} has squared norm {} (expected 1)", gate.name, gram[(i, i)]));
        }
        for j in i + 1..gram.cols() {
            if !gram[(i, j)].is_zero() {
                out.push(format!("gate {}: rows {i} and {j} are not orthogonal", gate.name));
            }
        }
    }
    out
}

fn check_quantum(c: &QuantumCircuit, report: &mut ValidationReport) {
    let mut checked: Vec<&str> = Vec::new();
    let used = c.ops.iter().map(|op| &op.gate);
    for gate in c.definitions.iter().chain(used) {
        if checked.contains(&gate.name.as_str()) {
            continue;
        }
        checked.push(&gate.name);
        for msg in unitarity_violations(gate) {
            report.push(ViolationKind::NonUnitary, msg);
        }
    }
    let wires = c.total_qubits();
    for (k, op) in c.ops.iter().enumerate() {
        if op.targets.len() != op.gate.arity {
            report.push(
                ViolationKind::ArityMismatch,
                format!("op {k}: gate {} acts on {} wires, given {}", op.gate.name, op.gate.arity, op.targets.len()),
            );
        }
        for (a, &t) in op.targets.iter().enumerate() {
            if t >= wires {
                report.push(ViolationKind::WireOutOfRange, format!("op {k}: wire {t} is outside 0..{wires}"));
            }
            if op.targets[..a].contains(&t) {
                report.push(ViolationKind::DuplicateTarget, format!("op {k}: wire {t} targeted twice"));
            }
        }
    }
}

fn check_classical(c: &ClassicalCircuit, report: &mut ValidationReport) {
    let mut written_tmp = vec![false; c.tmp_bits()];
    let mut wires_ok = true;
    for (k, g) in c.gates.iter().enumerate() {
        if g.inputs.len() != g.op.arity() {
            report.push(
                ViolationKind::ArityMismatch,
                format!("gate {k}: `{}` takes {} inputs, given {}", g.op.keyword(), g.op.arity(), g.inputs.len()),
            );
        }
        for w in g.inputs.iter().chain(std::iter::once(&g.output)) {
            let size = match w.register {
                Register::Ctc => c.ctc_bits,
                Register::Cr => c.cr_bits,
                Register::Tmp => usize::MAX,
            };
            if w.index >= size {
                wires_ok = false;
                report.push(ViolationKind::WireOutOfRange, format!("gate {k}: {w} is out of range"));
            }
        }
        for w in &g.inputs {
            if w.register == Register::Tmp && !written_tmp[w.index] {
                report.push(
                    ViolationKind::CyclicDependency,
                    format!("gate {k}: {w} is read before any gate writes it"),
                );
            }
        }
        if g.output.register == Register::Tmp {
            written_tmp[g.output.index] = true;
        }
    }
    let width = c.total_bits();
    if let Some(table) = &c.table {
        let size = 1usize << width;
        if table.len() != size {
            report.push(ViolationKind::MalformedTable, format!("table has {} rows, expected {size}", table.len()));
        } else if let Some(x) = table.iter().position(|&y| y >= size as u64) {
            report.push(ViolationKind::MalformedTable, format!("table row {x} maps outside {width} bits"));
        } else if !c.gates.is_empty() && wires_ok {
            for x in 0..size as u64 {
                let via_gates = evaluate_gates(c, x);
                if via_gates != table[x as usize] {
                    report.push(
                        ViolationKind::TableMismatch,
                        format!(
                            "gates map {x:0w$b} to {via_gates:0w$b} but the table says {:0w$b}",
                            table[x as usize],
                            w = width
                        ),
                    );
                    break;
                }
            }
        }
    }
}

fn check_stochastic(s: &StochasticProgram, report: &mut ValidationReport) {
    for msg in stochastic_violations(&s.matrix) {
        report.push(ViolationKind::NotStochastic, msg);
    }
    let dim = 1usize << s.ctc_bits;
    if s.matrix.rows() != dim || s.matrix.cols() != dim {
        report.push(
            ViolationKind::NotStochastic,
            format!("matrix is {}x{}, expected {dim}x{dim}", s.matrix.rows(), s.matrix.cols()),
        );
    }
    if s.cr_bits == 0 {
        report.push(ViolationKind::OutputOutOfRange, "stochastic programs need a CR output bit".into());
    }
}

/// Exact column-stochasticity: real entries in `[0, 1]`, columns summing to 1.
pub fn stochastic_violations(m: &Matrix) -> Vec<String> {
    let mut out = Vec::new();
    if !m.is_square() {
        out.push(format!("matrix is {}x{}, not square", m.rows(), m.cols()));
        return out;
    }
    for j in 0..m.cols() {
        let mut sum = Rational::zero();
        for i in 0..m.rows() {
            let x = &m[(i, j)];
            if !x.is_real() {
                out.push(format!("entry ({i}, {j}) = {x} is not real"));
            } else if x.re.is_negative() || x.re > Rational::one() {
                out.push(format!("entry ({i}, {j}) = {x} is outside [0, 1]"));
            }
            sum += &x.re;
        }
        if !sum.is_one() {
            out.push(format!("column {j} sums to {sum} (expected 1)"));
        }
    }
    out
}
