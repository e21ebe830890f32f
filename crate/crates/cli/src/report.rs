//! The run report: one structure for every subcommand, printed as JSON or
//! as plain text. Exact quantities are always strings in the textual forms
//! of the algebra crate; floats appear only in `*_approx` fields.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use ctcsim::circuits::CtcProgram;
use ctcsim::semantics::table::{format_bits, ClassicalDistribution};
use ctcsim::semantics::{Decision, Verdict, Witness};
use ctcsim::{Matrix, Rational};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::exit;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ProgramSummary {
    pub name: String,
    pub kind: String,
    pub ctc: usize,
    pub cr: usize,
    pub output_bit: usize,
}

impl ProgramSummary {
    pub fn of(name: impl Into<String>, p: &CtcProgram) -> Self {
        let (ctc, cr) = p.registers();
        Self { name: name.into(), kind: p.kind().to_string(), ctc, cr, output_bit: p.output_bit }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub program: Option<ProgramSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valid: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<String>,
    /// Rows of the consistent state; the diagonal matrix for classical and
    /// stochastic programs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_point: Option<Vec<Vec<String>>>,
    /// Nonzero weights of a classical consistent distribution, by bit string.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distribution: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_accept_probability: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accept_probability_approx: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probability_range_approx: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compare_to_half: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

/// A finished command: what to print and how to exit.
pub struct Outcome {
    pub report: Report,
    pub code: u8,
}

pub fn decision_code(d: Decision) -> u8 {
    match d {
        Decision::Accept => exit::ACCEPT,
        Decision::Reject => exit::REJECT,
        Decision::Ambiguous => exit::AMBIGUOUS,
    }
}

fn ordering_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "below",
        Ordering::Equal => "equal",
        Ordering::Greater => "above",
    }
}

pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
}

pub fn diagonal_strings(d: &ClassicalDistribution) -> Vec<Vec<String>> {
    let n = d.probabilities().len();
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { d.probability(i).to_string() } else { "0".into() }).collect())
        .collect()
}

pub fn distribution_map(d: &ClassicalDistribution) -> BTreeMap<String, String> {
    d.support().into_iter().map(|x| (format_bits(x, d.bits()), d.probability(x).to_string())).collect()
}

/// Optional per-stage stopwatch.
pub struct Timings {
    enabled: bool,
    last: Instant,
    stages: BTreeMap<String, f64>,
}

impl Timings {
    pub fn new(enabled: bool) -> Self {
        Self { enabled, last: Instant::now(), stages: BTreeMap::new() }
    }

    pub fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        *self.stages.entry(stage.to_string()).or_default() += (now - self.last).as_secs_f64() * 1e3;
        self.last = now;
    }

    pub fn finish(self) -> Option<BTreeMap<String, f64>> {
        self.enabled.then_some(self.stages)
    }
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self { schema_version: SCHEMA_VERSION, command: command.into(), ..Self::default() }
    }

    pub fn set_accept_probability(&mut self, p: &Rational) {
        self.exact_accept_probability = Some(p.to_string());
        self.accept_probability_approx = Some(ctcsim::algebra::rational_to_f64(p));
    }

    pub fn set_witness(&mut self, w: &Witness) {
        match w {
            Witness::Distribution(d) => {
                self.fixed_point = Some(diagonal_strings(d));
                self.distribution = Some(distribution_map(d));
            }
            Witness::State(rho) => self.fixed_point = Some(matrix_strings(rho.matrix())),
        }
    }

    /// Fills the verdict fields and returns the matching exit code.
    pub fn set_verdict(&mut self, v: &Verdict) -> u8 {
        self.set_witness(&v.witness);
        self.set_accept_probability(&v.exact_accept_probability);
        self.probability_range_approx = Some([v.probability_range.0, v.probability_range.1]);
        self.verdict = Some(v.decision.to_string());
        self.compare_to_half = Some(ordering_name(v.compare_to_half).into());
        self.certified = Some(v.certified);
        self.notes.extend(v.notes.iter().cloned());
        decision_code(v.decision)
    }

    pub fn detail(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.into(), value.into());
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(p) = &self.program {
            let _ = writeln!(s, "program: {} ({}, ctc={}, cr={}, output cr[{}])", p.name, p.kind, p.ctc, p.cr, p.output_bit);
        }
        if let Some(valid) = self.valid {
            let _ = writeln!(s, "valid: {}", if valid { "yes" } else { "no" });
        }
        for v in &self.violations {
            let _ = writeln!(s, "  violation: {v}");
        }
        if let Some(seed) = &self.seed {
            let _ = writeln!(s, "seed: {seed}");
        }
        if let Some(d) = &self.distribution {
            let parts: Vec<String> = d.iter().map(|(k, v)| format!("{k}: {v}")).collect();
            let _ = writeln!(s, "consistent distribution: {{{}}}", parts.join(", "));
        } else if let Some(m) = &self.fixed_point {
            let _ = writeln!(s, "consistent state:");
            for row in m {
                let _ = writeln!(s, "  [{}]", row.join(", "));
            }
        }
        if let Some(p) = &self.exact_accept_probability {
            let _ = writeln!(s, "exact accept probability: {p}");
        }
        if let Some([lo, hi]) = self.probability_range_approx {
            let _ = writeln!(s, "accept probability range over consistent states: [{lo:.9}, {hi:.9}]");
        }
        if let Some(v) = &self.verdict {
            let _ = writeln!(s, "verdict: {v}");
        }
        if let Some(c) = &self.compare_to_half {
            let _ = writeln!(s, "compared to 1/2: {c}");
        }
        if let Some(false) = self.certified {
            let _ = writeln!(s, "range not certified over all consistent states");
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        for (k, v) in &self.details {
            match v {
                Value::String(x) => {
                    let _ = writeln!(s, "{k}: {x}");
                }
                other => {
                    let _ = writeln!(s, "{k}: {other}");
                }
            }
        }
        if let Some(t) = &self.timings_ms {
            for (stage, ms) in t {
                let _ = writeln!(s, "time {stage}: {ms:.1} ms");
            }
        }
        s
    }
}
