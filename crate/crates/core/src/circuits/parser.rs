//! Line-oriented program DSL.
//!
//! ```text
//! quantum                       # or: classical | stochastic
//! registers ctc=1 cr=1
//! defgate R = [3/5, -4/5; 4/5, 3/5]
//! apply R ctc[0]
//! apply CNOT ctc[0], cr[0]
//! output cr[0]
//! ```
//!
//! Classical programs use `and|or|not|copy <out> <- <in>(, <in>)` over
//! `ctc[i]`/`cr[i]`/`tmp[i]` wires and/or a `table` block of
//! `<inbits> -> <outbits>` rows. Stochastic programs give `matrix = [...]`
//! (column-stochastic, on the CTC register) and `output-rule <patterns>`.

use std::collections::HashMap;

use super::gates::{builtin, is_builtin, QuantumGate};
use super::ir::{
    BoolGate, BoolOp, ClassicalCircuit, CtcProgram, ProgramKind, QuantumCircuit, Register,
    StochasticProgram, Wire,
};
use crate::algebra::{GaussianRational, Matrix};
use crate::error::{ParseError, ParseErrorKind};

/// Upper bound on `tmp[i]` indices in classical programs.
pub const MAX_TMP_WIRES: usize = 64;

type PResult<T> = Result<T, ParseError>;

struct Line<'a> {
    number: usize,
    raw: &'a str,
}

impl<'a> Line<'a> {
    fn col(&self, sub: &str) -> usize {
        let start = self.raw.as_ptr() as usize;
        let at = sub.as_ptr() as usize;
        if at >= start && at <= start + self.raw.len() {
            at - start + 1
        } else {
            1
        }
    }

    fn err(&self, at: &str, kind: ParseErrorKind, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.number, self.col(at), kind, msg)
    }

    fn syntax(&self, at: &str, msg: impl Into<String>) -> ParseError {
        self.err(at, ParseErrorKind::Syntax, msg)
    }
}

/// Strips a `#` comment and surrounding whitespace.
fn content(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

/// Splits `s` at the first run of whitespace.
fn split_word(s: &str) -> (&str, &str) {
    match s.find(char::is_whitespace) {
        Some(k) => (&s[..k], s[k..].trim_start()),
        None => (s, &s[s.len()..]),
    }
}

fn parse_count(line: &Line, s: &str, what: &str) -> PResult<usize> {
    s.parse().map_err(|_| line.err(s, ParseErrorKind::MalformedNumber, format!("invalid {what} `{s}`")))
}

fn parse_matrix(line: &Line, s: &str) -> PResult<Matrix> {
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| line.syntax(s, "matrix literal must be enclosed in [ ]"))?;
    let mut rows = Vec::new();
    for row in inner.split(';') {
        let mut entries = Vec::new();
        for item in row.split(',') {
            let item = item.trim();
            if item.is_empty() {
                return Err(line.syntax(row, "empty matrix entry"));
            }
            let value: GaussianRational = item.parse().map_err(|_| {
                line.err(item, ParseErrorKind::MalformedNumber, format!("malformed number `{item}`"))
            })?;
            entries.push(value);
        }
        rows.push(entries);
    }
    let width = rows[0].len();
    if rows.iter().any(|r| r.len() != width) {
        return Err(line.syntax(s, "matrix rows have different lengths"));
    }
    Matrix::from_rows(rows).map_err(|e| line.syntax(s, e.to_string()))
}

struct Registers {
    ctc: usize,
    cr: usize,
}

fn parse_wire(line: &Line, s: &str, regs: &Registers, allow_tmp: bool) -> PResult<Wire> {
    let s = s.trim();
    let open = s.find('[').ok_or_else(|| line.syntax(s, format!("expected a wire like ctc[0], found `{s}`")))?;
    let idx_str = s[open + 1..]
        .strip_suffix(']')
        .ok_or_else(|| line.syntax(s, format!("unterminated wire index in `{s}`")))?;
    let index: usize = parse_count(line, idx_str, "wire index")?;
    let (register, size) = match &s[..open] {
        "ctc" => (Register::Ctc, regs.ctc),
        "cr" => (Register::Cr, regs.cr),
        "tmp" if allow_tmp => (Register::Tmp, MAX_TMP_WIRES),
        other => return Err(line.syntax(s, format!("unknown register `{other}`"))),
    };
    if index >= size {
        return Err(line.err(
            s,
            ParseErrorKind::RegisterOverflow,
            format!("{register}[{index}] is out of range ({register} has {size} wires)"),
        ));
    }
    Ok(Wire { register, index })
}

fn parse_bits(line: &Line, s: &str, width: usize) -> PResult<u64> {
    if s.len() != width || !s.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(line.syntax(s, format!("expected a {width}-bit string, found `{s}`")));
    }
    Ok(if width == 0 { 0 } else { u64::from_str_radix(s, 2).expect("binary digits") })
}

enum Body {
    Quantum {
        circuit: QuantumCircuit,
        gates: HashMap<String, QuantumGate>,
    },
    Classical {
        circuit: ClassicalCircuit,
        table: Option<(usize, HashMap<u64, u64>)>,
    },
    Stochastic {
        matrix: Option<Matrix>,
        rule: Option<Vec<String>>,
    },
}

/// Parses a program. Semantic constraints that need exact checks (unitarity,
/// stochasticity, acyclicity) are left to the validator.
pub fn parse_program(text: &str) -> Result<CtcProgram, ParseError> {
    let mut lines = text
        .split('\n')
        .enumerate()
        .map(|(i, raw)| Line { number: i + 1, raw: raw.strip_suffix('\r').unwrap_or(raw) })
        .filter(|l| !content(l.raw).is_empty());

    let header = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, ParseErrorKind::Syntax, "empty program"))?;
    let head = content(header.raw);
    let kind = match head {
        "quantum" => ProgramKind::Quantum,
        "classical" => ProgramKind::Classical,
        "stochastic" => ProgramKind::Stochastic,
        _ => return Err(header.syntax(head, "expected `quantum`, `classical` or `stochastic`")),
    };

    let reg_line = lines
        .next()
        .ok_or_else(|| ParseError::new(header.number, 1, ParseErrorKind::Syntax, "missing `registers` line"))?;
    let regs = parse_registers(&reg_line)?;

    let mut body = match kind {
        ProgramKind::Quantum => Body::Quantum {
            circuit: QuantumCircuit::new(regs.ctc, regs.cr),
            gates: HashMap::new(),
        },
        ProgramKind::Classical => Body::Classical { circuit: ClassicalCircuit::new(regs.ctc, regs.cr), table: None },
        ProgramKind::Stochastic => Body::Stochastic { matrix: None, rule: None },
    };
    let mut output: Option<usize> = None;
    let mut last_line = reg_line.number;

    for line in lines {
        last_line = line.number;
        let text = content(line.raw);
        let (word, rest) = split_word(text);
        if word == "output" {
            if output.is_some() {
                return Err(line.syntax(word, "duplicate `output` statement"));
            }
            let wire = parse_wire(&line, rest, &regs, false)?;
            if wire.register != Register::Cr {
                return Err(line.syntax(rest, "output must be a CR wire"));
            }
            output = Some(wire.index);
            continue;
        }
        match &mut body {
            Body::Quantum { circuit, gates } => parse_quantum_stmt(&line, word, rest, &regs, circuit, gates)?,
            Body::Classical { circuit, table } => parse_classical_stmt(&line, text, word, rest, &regs, circuit, table)?,
            Body::Stochastic { matrix, rule } => match word {
                "matrix" => {
                    let lit = rest
                        .strip_prefix('=')
                        .ok_or_else(|| line.syntax(rest, "expected `matrix = [...]`"))?
                        .trim();
                    if matrix.is_some() {
                        return Err(line.syntax(word, "duplicate `matrix` statement"));
                    }
                    let m = parse_matrix(&line, lit)?;
                    let dim = 1usize << regs.ctc;
                    if m.rows() != dim || m.cols() != dim {
                        return Err(line.syntax(lit, format!("stochastic matrix must be {dim}x{dim} for ctc={}", regs.ctc)));
                    }
                    *matrix = Some(m);
                }
                "output-rule" => {
                    let mut pats = Vec::new();
                    for pat in rest.split_whitespace() {
                        if pat.len() != regs.ctc || !pat.bytes().all(|b| matches!(b, b'0' | b'1' | b'*')) {
                            return Err(line.syntax(pat, format!("pattern `{pat}` must be {} characters of 0, 1, *", regs.ctc)));
                        }
                        pats.push(pat.to_string());
                    }
                    if rule.replace(pats).is_some() {
                        return Err(line.syntax(word, "duplicate `output-rule` statement"));
                    }
                }
                _ => return Err(line.syntax(word, format!("unexpected statement `{word}` in a stochastic program"))),
            },
        }
    }

    let output_bit = output.ok_or_else(|| ParseError::new(last_line, 1, ParseErrorKind::Syntax, "missing `output cr[i]` statement"))?;
    let body = match body {
        Body::Quantum { circuit, .. } => super::ir::ProgramBody::Quantum(circuit),
        Body::Classical { mut circuit, table } => {
            if let Some((table_line, rows)) = table {
                let n = 1u64 << circuit.total_bits();
                let mut full = Vec::with_capacity(n as usize);
                for x in 0..n {
                    match rows.get(&x) {
                        Some(&y) => full.push(y),
                        None => {
                            return Err(ParseError::new(
                                table_line,
                                1,
                                ParseErrorKind::Syntax,
                                format!("table has no row for input {x:0w$b}", w = circuit.total_bits()),
                            ))
                        }
                    }
                }
                circuit.table = Some(full);
            }
            super::ir::ProgramBody::Classical(circuit)
        }
        Body::Stochastic { matrix, rule } => {
            let matrix = matrix.ok_or_else(|| ParseError::new(last_line, 1, ParseErrorKind::Syntax, "missing `matrix = [...]`"))?;
            super::ir::ProgramBody::Stochastic(StochasticProgram {
                ctc_bits: regs.ctc,
                cr_bits: regs.cr,
                matrix,
                output_rule: rule.unwrap_or_default(),
            })
        }
    };
    Ok(CtcProgram { body, output_bit })
}

fn parse_registers(line: &Line) -> PResult<Registers> {
    let text = content(line.raw);
    let (word, rest) = split_word(text);
    if word != "registers" {
        return Err(line.syntax(word, "expected `registers ctc=<int> cr=<int>`"));
    }
    let mut ctc = None;
    let mut cr = None;
    for item in rest.split_whitespace() {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| line.syntax(item, format!("expected key=value, found `{item}`")))?;
        let n = parse_count(line, value, "register size")?;
        let slot = match key {
            "ctc" => &mut ctc,
            "cr" => &mut cr,
            _ => return Err(line.syntax(item, format!("unknown register `{key}`"))),
        };
        if slot.replace(n).is_some() {
            return Err(line.syntax(item, format!("register `{key}` given twice")));
        }
    }
    match (ctc, cr) {
        (Some(ctc), Some(cr)) if ctc + cr <= 62 => Ok(Registers { ctc, cr }),
        (Some(_), Some(_)) => Err(line.err(text, ParseErrorKind::RegisterOverflow, "at most 62 wires in total")),
        _ => Err(line.syntax(text, "both ctc= and cr= must be given")),
    }
}

fn parse_quantum_stmt(
    line: &Line,
    word: &str,
    rest: &str,
    regs: &Registers,
    circuit: &mut QuantumCircuit,
    gates: &mut HashMap<String, QuantumGate>,
) -> PResult<()> {
    match word {
        "defgate" => {
            let (name, after) = rest
                .split_once('=')
                .ok_or_else(|| line.syntax(rest, "expected `defgate NAME = [...]`"))?;
            let name = name.trim();
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(line.syntax(rest, format!("invalid gate name `{name}`")));
            }
            if is_builtin(name) || gates.contains_key(name) {
                return Err(line.syntax(name, format!("gate `{name}` is already defined")));
            }
            let lit = after.trim();
            let matrix = parse_matrix(line, lit)?;
            let gate = QuantumGate::new(name, matrix)
                .ok_or_else(|| line.syntax(lit, "gate matrix must be square with power-of-two dimension ≥ 2"))?;
            gates.insert(name.to_string(), gate.clone());
            circuit.definitions.push(gate);
        }
        "apply" => {
            let (name, wires) = split_word(rest);
            if name.is_empty() {
                return Err(line.syntax(rest, "expected a gate name"));
            }
            let gate = gates
                .get(name)
                .cloned()
                .or_else(|| builtin(name))
                .ok_or_else(|| line.err(name, ParseErrorKind::UnknownGate, format!("unknown gate `{name}`")))?;
            let mut targets = Vec::new();
            for w in wires.split(',') {
                let wire = parse_wire(line, w, regs, false)?;
                let global = match wire.register {
                    Register::Ctc => wire.index,
                    _ => regs.ctc + wire.index,
                };
                if targets.contains(&global) {
                    return Err(line.syntax(w.trim(), format!("wire {wire} appears twice")));
                }
                targets.push(global);
            }
            if targets.len() != gate.arity {
                return Err(line.syntax(wires, format!("gate `{name}` acts on {} wires, got {}", gate.arity, targets.len())));
            }
            circuit.push(gate, targets);
        }
        _ => return Err(line.syntax(word, format!("unexpected statement `{word}` in a quantum program"))),
    }
    Ok(())
}

fn parse_classical_stmt(
    line: &Line,
    text: &str,
    word: &str,
    rest: &str,
    regs: &Registers,
    circuit: &mut ClassicalCircuit,
    table: &mut Option<(usize, HashMap<u64, u64>)>,
) -> PResult<()> {
    let op = match word {
        "and" => Some(BoolOp::And),
        "or" => Some(BoolOp::Or),
        "not" => Some(BoolOp::Not),
        "copy" => Some(BoolOp::Copy),
        _ => None,
    };
    if let Some(op) = op {
        let (out, ins) = rest
            .split_once("<-")
            .ok_or_else(|| line.syntax(rest, format!("expected `{word} <out> <- <in>`")))?;
        let output = parse_wire(line, out, regs, true)?;
        let inputs = ins
            .split(',')
            .map(|w| parse_wire(line, w, regs, true))
            .collect::<PResult<Vec<_>>>()?;
        if inputs.len() != op.arity() {
            return Err(line.syntax(ins.trim(), format!("`{word}` takes {} input(s), got {}", op.arity(), inputs.len())));
        }
        circuit.gates.push(BoolGate { op, output, inputs });
        return Ok(());
    }
    if word == "table" {
        if !rest.is_empty() {
            return Err(line.syntax(rest, "`table` takes no arguments"));
        }
        if table.is_some() {
            return Err(line.syntax(word, "duplicate `table` block"));
        }
        *table = Some((line.number, HashMap::new()));
        return Ok(());
    }
    if let Some((lhs, rhs)) = text.split_once("->") {
        let Some((_, rows)) = table.as_mut() else {
            return Err(line.syntax(text, "table row outside a `table` block"));
        };
        let width = regs.ctc + regs.cr;
        let input = parse_bits(line, lhs.trim(), width)?;
        let output = parse_bits(line, rhs.trim(), width)?;
        if rows.insert(input, output).is_some() {
            return Err(line.syntax(lhs.trim(), "duplicate table row"));
        }
        return Ok(());
    }
    Err(line.syntax(word, format!("unexpected statement `{word}` in a classical program")))
}
