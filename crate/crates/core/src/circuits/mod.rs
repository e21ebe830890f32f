//! Program representation: quantum, classical and stochastic CTC programs,
//! the text DSL, validation and elaboration to matrices and tables.

pub mod elaborate;
pub mod gates;
pub mod ir;
pub mod parser;
pub mod printer;
pub mod validate;

pub use elaborate::{circuit_isometry, circuit_unitary, classical_table};
pub use gates::{builtin, QuantumGate};
pub use ir::{
    BoolGate, BoolOp, ClassicalCircuit, CtcProgram, GateOp, ProgramBody, ProgramKind, QuantumCircuit,
    Register, StochasticProgram, Wire,
};
pub use parser::parse_program;
pub use printer::print_program;
pub use validate::{validate_program, ValidationReport, Violation, ViolationKind};
