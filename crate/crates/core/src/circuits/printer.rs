use std::fmt::Write;

use super::gates::is_builtin;
use super::ir::{CtcProgram, ProgramBody};
use crate::algebra::Matrix;

fn matrix_literal(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
        .collect();
    format!("[{}]", rows.join("; "))
}

fn bits(x: u64, width: usize) -> String {
    (0..width).map(|k| if (x >> (width - 1 - k)) & 1 == 1 { '1' } else { '0' }).collect()
}

/// Renders a program in the DSL accepted by [`super::parse_program`].
pub fn print_program(p: &CtcProgram) -> String {
    let mut out = String::new();
    let (ctc, cr) = p.registers();
    let _ = writeln!(out, "{}", p.kind());
    let _ = writeln!(out, "registers ctc={ctc} cr={cr}");
    match &p.body {
        ProgramBody::Quantum(c) => {
            let mut defined: Vec<&str> = Vec::new();
            let extra = c.ops.iter().map(|op| &op.gate).filter(|g| !is_builtin(&g.name));
            for g in c.definitions.iter().chain(extra) {
                if !defined.contains(&g.name.as_str()) {
                    defined.push(&g.name);
                    let _ = writeln!(out, "defgate {} = {}", g.name, matrix_literal(&g.matrix));
                }
            }
            for op in &c.ops {
                let wires: Vec<String> = op.targets.iter().map(|&t| c.wire_name(t).to_string()).collect();
                let _ = writeln!(out, "apply {} {}", op.gate.name, wires.join(", "));
            }
        }
        ProgramBody::Classical(c) => {
            for g in &c.gates {
                let ins: Vec<String> = g.inputs.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "{} {} <- {}", g.op.keyword(), g.output, ins.join(", "));
            }
            if let Some(table) = &c.table {
                let width = c.total_bits();
                let _ = writeln!(out, "table");
                for (x, y) in table.iter().enumerate() {
                    let _ = writeln!(out, "{} -> {}", bits(x as u64, width), bits(*y, width));
                }
            }
        }
        ProgramBody::Stochastic(s) => {
            let _ = writeln!(out, "matrix = {}", matrix_literal(&s.matrix));
            if !s.output_rule.is_empty() {
                let _ = writeln!(out, "output-rule {}", s.output_rule.join(" "));
            }
        }
    }
    let _ = writeln!(out, "output cr[{}]", p.output_bit);
    out
}
