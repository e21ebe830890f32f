//! Program generators for the standard constructions: NP search by a
//! fixed-point loop, PSPACE machines on a clocked configuration cycle, and
//! one-bit stochastic CTCs.

use std::collections::HashMap;

use num_traits::{One, Signed};

use super::stochastic::{stationary_distribution, Stationary, StochasticMatrix};
use super::table::{format_bits, parse_bits, FunctionTable};
use crate::algebra::{rat, Rational};
use crate::circuits::{ClassicalCircuit, CtcProgram, StochasticProgram};
use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::limits::Limits;

/// Predicate table from a list of bit strings.
pub fn predicate_from_strings<S: AsRef<str>>(n: usize, strings: &[S]) -> Result<Vec<bool>> {
    let mut table = vec![false; 1usize << n];
    for s in strings {
        let s = s.as_ref();
        if s.len() != n {
            return Err(Error::Input(format!("`{s}` is not an {n}-bit string")));
        }
        table[parse_bits(s)?] = true;
    }
    Ok(table)
}

fn check_predicate(n: usize, pred: &[bool], limits: &Limits) -> Result<()> {
    if n == 0 || n + 1 > limits.max_classical_bits {
        return Err(Error::Resource(format!("{n}-bit search exceeds the cap of {} bits", limits.max_classical_bits)));
    }
    if pred.len() != 1usize << n {
        return Err(Error::Input(format!("predicate needs {} entries, got {}", 1usize << n, pred.len())));
    }
    Ok(())
}

/// `M(x) = x` on solutions, `x + 1 mod 2^n` otherwise.
pub fn np_search_map(n: usize, solutions: &[bool]) -> FunctionTable {
    let size = 1usize << n;
    FunctionTable::from_fn(n, |x| if solutions[x] { x } else { (x + 1) % size }).expect("in range")
}

/// Table-mode program on `n` CTC bits and one CR bit: the CTC register is
/// replaced by `M(x)` and the CR bit by the predicate at `M(x)`.
pub fn gadget_np_search(n: usize, solutions: &[bool], limits: &Limits) -> Result<CtcProgram> {
    check_predicate(n, solutions, limits)?;
    let m = np_search_map(n, solutions);
    let table = (0..1u64 << (n + 1))
        .map(|x| {
            let y = m.apply((x >> 1) as usize);
            ((y as u64) << 1) | solutions[y] as u64
        })
        .collect();
    let mut c = ClassicalCircuit::new(n, 1);
    c.table = Some(table);
    Ok(CtcProgram::classical(c, 0))
}

/// A deterministic machine given by its configuration graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MachineSpec {
    /// Configuration names; index 0 is the start configuration.
    pub names: Vec<String>,
    /// Successor of each non-halting configuration.
    pub successor: Vec<Option<usize>>,
    /// `Some(answer)` for halting configurations.
    pub halting: Vec<Option<bool>>,
}

impl MachineSpec {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// The run from the start configuration up to and including the first
    /// halting configuration, and its answer.
    pub fn run(&self) -> (Vec<usize>, bool) {
        let mut path = vec![0];
        let mut m = 0;
        loop {
            if let Some(answer) = self.halting[m] {
                return (path, answer);
            }
            m = self.successor[m].expect("validated");
            path.push(m);
        }
    }

    fn validate(&self) -> Result<()> {
        for (m, name) in self.names.iter().enumerate() {
            match (self.halting[m], self.successor[m]) {
                (None, None) => return Err(Error::Semantic(format!("configuration `{name}` has no successor"))),
                (Some(_), Some(_)) => {
                    return Err(Error::Semantic(format!("halting configuration `{name}` also has a successor")))
                }
                _ => {}
            }
        }
        // Every configuration must halt within `len` steps; otherwise it is
        // on (or feeds) a non-halting loop.
        for start in 0..self.len() {
            let mut m = start;
            let mut steps = 0;
            while self.halting[m].is_none() {
                m = self.successor[m].expect("checked above");
                steps += 1;
                if steps > self.len() {
                    return Err(Error::Semantic(format!(
                        "configuration `{}` never reaches an accepting or rejecting configuration",
                        self.names[start]
                    )));
                }
            }
        }
        Ok(())
    }
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> Error {
    Error::Parse(ParseError::new(line, column, ParseErrorKind::Syntax, msg))
}

/// Parses `config <a> -> <b>`, `accept <a>`, `reject <a>`, `start <a>`
/// lines; `#` starts a comment.
pub fn parse_machine(text: &str) -> Result<MachineSpec> {
    let mut order: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, String, String)> = Vec::new();
    let mut flags: Vec<(usize, String, bool)> = Vec::new();
    let mut start: Option<String> = None;
    let intern = |name: &str, order: &mut Vec<String>| {
        if !order.iter().any(|n| n == name) {
            order.push(name.to_string());
        }
    };
    for (k, raw) in text.lines().enumerate() {
        let lineno = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim_end_matches('\r');
        let words: Vec<&str> = line.split_whitespace().collect();
        let col = raw.len() - raw.trim_start().len() + 1;
        match words.as_slice() {
            [] => {}
            ["config", a, "->", b] => {
                intern(a, &mut order);
                intern(b, &mut order);
                edges.push((lineno, a.to_string(), b.to_string()));
            }
            ["accept", a] | ["reject", a] => {
                intern(a, &mut order);
                flags.push((lineno, a.to_string(), words[0] == "accept"));
            }
            ["start", a] => {
                if start.is_some() {
                    return Err(syntax(lineno, col, "more than one `start` line"));
                }
                intern(a, &mut order);
                start = Some(a.to_string());
            }
            _ => return Err(syntax(lineno, col, format!("expected `config a -> b`, `accept a`, `reject a` or `start a`, found `{}`", line.trim()))),
        }
    }
    let start = start.ok_or_else(|| syntax(text.lines().count().max(1), 1, "missing `start` line"))?;
    // Renumber so the start configuration comes first.
    let mut names = vec![start.clone()];
    names.extend(order.into_iter().filter(|n| *n != start));
    let pos: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut successor = vec![None; names.len()];
    let mut halting = vec![None; names.len()];
    for (line, a, b) in edges {
        let slot = &mut successor[pos[a.as_str()]];
        if slot.is_some() {
            return Err(syntax(line, 1, format!("configuration `{a}` has two successors")));
        }
        *slot = Some(pos[b.as_str()]);
    }
    for (line, a, answer) in flags {
        let slot = &mut halting[pos[a.as_str()]];
        if slot.is_some() {
            return Err(syntax(line, 1, format!("configuration `{a}` is flagged twice")));
        }
        *slot = Some(answer);
    }
    let spec = MachineSpec { names, successor, halting };
    spec.validate()?;
    Ok(spec)
}

/// The PSPACE construction for one machine.
#[derive(Clone, Debug)]
pub struct PspaceGadget {
    pub program: CtcProgram,
    /// Width of the configuration field; the CTC register has one more bit
    /// (the answer bit `b`, least significant).
    pub config_bits: usize,
    /// Configurations visited from the start up to the halting one.
    pub run: Vec<usize>,
    pub answer: bool,
}

impl PspaceGadget {
    /// CTC index of `⟨m, b⟩`.
    pub fn encode(&self, m: usize, b: bool) -> usize {
        (m << 1) | b as usize
    }

    /// The cycle the construction forces: `{⟨m_i, answer⟩}` along the run.
    pub fn expected_cycle(&self) -> Vec<usize> {
        self.run.iter().map(|&m| self.encode(m, self.answer)).collect()
    }
}

/// `C'(⟨m, b⟩)`: advance a running configuration keeping `b`; from an
/// accepting one go to `⟨m₁, 1⟩`, from a rejecting one to `⟨m₁, 0⟩`. Codes
/// beyond the configuration count go to `⟨m₁, b⟩`. The CR bit receives the
/// new `b`.
pub fn gadget_pspace(machine: &MachineSpec, limits: &Limits) -> Result<PspaceGadget> {
    machine.validate()?;
    let count = machine.len();
    let config_bits = (usize::BITS - (count.max(2) - 1).leading_zeros()) as usize;
    let ctc_bits = config_bits + 1;
    if ctc_bits + 1 > limits.max_classical_bits {
        return Err(Error::Resource(format!(
            "{count} configurations need {} bits, over the cap of {}",
            ctc_bits + 1,
            limits.max_classical_bits
        )));
    }
    let step = |y: usize| -> usize {
        let (m, b) = (y >> 1, y & 1);
        if m >= count {
            return b;
        }
        match machine.halting[m] {
            Some(answer) => answer as usize,
            None => (machine.successor[m].expect("validated") << 1) | b,
        }
    };
    let table = (0..1u64 << (ctc_bits + 1))
        .map(|x| {
            let next = step((x >> 1) as usize) as u64;
            (next << 1) | (next & 1)
        })
        .collect();
    let mut c = ClassicalCircuit::new(ctc_bits, 1);
    c.table = Some(table);
    let (run, answer) = machine.run();
    Ok(PspaceGadget { program: CtcProgram::classical(c, 0), config_bits, run, answer })
}

/// A one-bit stochastic CTC and its exact stationary behaviour.
#[derive(Clone, Debug)]
pub struct NarrowGadget {
    pub program: CtcProgram,
    pub matrix: StochasticMatrix,
    pub stationary: Stationary,
    pub warning: Option<String>,
}

fn narrow_program(matrix: &StochasticMatrix) -> CtcProgram {
    CtcProgram::stochastic(
        StochasticProgram { ctc_bits: 1, cr_bits: 1, matrix: matrix.matrix().clone(), output_rule: vec!["1".into()] },
        0,
    )
}

/// Two-state chain on `b` from the transition probabilities `P(1|0)` and `P(0|1)`.
fn two_state(up: Rational, down: Rational) -> Result<StochasticMatrix> {
    let one = Rational::one();
    StochasticMatrix::from_rationals(&[vec![&one - &up, down.clone()], vec![up, &one - &down]])
}

fn count(pred: &[bool]) -> i64 {
    pred.iter().filter(|&&w| w).count() as i64
}

/// NP variant: with probability `ε` set `b = 0`; otherwise guess `w`
/// uniformly and set `b = 1` if it is a witness, leaving `b` alone if not.
/// Marginalizing over `w` gives `P(1|0) = (1-ε)k/2^n`, `P(0|1) = ε`.
pub fn gadget_narrow_np(n: usize, witnesses: &[bool], eps: &Rational, limits: &Limits) -> Result<NarrowGadget> {
    check_predicate(n, witnesses, limits)?;
    if eps.is_negative() || *eps > Rational::one() {
        return Err(Error::Input(format!("ε = {eps} is not a probability")));
    }
    let size = Rational::from_integer((1i64 << n).into());
    let warning = (*eps >= Rational::one() / &size)
        .then(|| format!("ε = {eps} is not below 2^-{n}; the witness signal may be swamped"));
    let up = (Rational::one() - eps) * rat(count(witnesses), 1) / &size;
    let matrix = two_state(up, eps.clone())?;
    let stationary = stationary_distribution(&matrix)?;
    Ok(NarrowGadget { program: narrow_program(&matrix), matrix, stationary, warning })
}

/// NP∩coNP variant: guess `w`; a yes-witness sets `b = 1`, a no-witness sets
/// `b = 0`, anything else leaves `b` alone.
pub fn gadget_narrow_np_conp(n: usize, yes: &[bool], no: &[bool], limits: &Limits) -> Result<NarrowGadget> {
    check_predicate(n, yes, limits)?;
    check_predicate(n, no, limits)?;
    if yes.iter().zip(no).any(|(a, b)| *a && *b) {
        return Err(Error::Input("a string cannot be both a yes- and a no-witness".into()));
    }
    let size = 1i64 << n;
    let matrix = two_state(rat(count(yes), size), rat(count(no), size))?;
    let stationary = stationary_distribution(&matrix)?;
    Ok(NarrowGadget { program: narrow_program(&matrix), matrix, stationary, warning: None })
}

/// Human-readable list of the strings a predicate accepts.
pub fn predicate_strings(n: usize, pred: &[bool]) -> Vec<String> {
    (0..pred.len()).filter(|&x| pred[x]).map(|x| format_bits(x, n)).collect()
}
