//! The demo gallery.

use std::collections::BTreeMap;

use clap::ValueEnum;
use ctcsim::algebra::parse_rational;
use ctcsim::circuits::parse_program;
use ctcsim::programs;
use ctcsim::semantics::gadgets::{gadget_pspace, predicate_from_strings, predicate_strings, NarrowGadget};
use ctcsim::semantics::perturb::{epsilon_check_stochastic, perturbation_pair};
use ctcsim::semantics::table::ClassicalDistribution;
use ctcsim::semantics::{
    decide, gadget_narrow_np, gadget_narrow_np_conp, gadget_np_search, parse_machine, stationary_distribution,
    Witness,
};
use ctcsim::{Error, Limits, Rational, Result};
use serde_json::Value;

use crate::exit;
use crate::report::{distribution_map, Outcome, ProgramSummary, Report, Timings};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    Grandfather,
    NpSearch,
    Pspace,
    Narrow,
    Perturb,
}

/// `key=value` parameters, each key allowed at most once and only from
/// `allowed`.
struct Params(BTreeMap<String, String>);

impl Params {
    fn parse(raw: &[String], allowed: &[&str]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for item in raw {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("parameter `{item}` is not key=value")))?;
            if !allowed.contains(&k) {
                return Err(Error::Input(format!("unknown parameter `{k}`; expected one of {}", allowed.join(", "))));
            }
            if map.insert(k.to_string(), v.to_string()).is_some() {
                return Err(Error::Input(format!("parameter `{k}` given twice")));
            }
        }
        Ok(Self(map))
    }

    fn get<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.0.get(key).map(String::as_str).unwrap_or(default)
    }

    fn usize(&self, key: &str, default: &str) -> Result<usize> {
        let v = self.get(key, default);
        v.parse().map_err(|_| Error::Input(format!("{key}={v} is not a non-negative integer")))
    }

    fn rational(&self, key: &str, default: &str) -> Result<Rational> {
        parse_rational(self.get(key, default))
    }

    /// Comma-separated bit strings; empty or `none` for the empty set.
    fn predicate(&self, key: &str, default: &str, n: usize) -> Result<Vec<bool>> {
        let v = self.get(key, default);
        let items: Vec<&str> = if v.is_empty() || v == "none" { Vec::new() } else { v.split(',').map(str::trim).collect() };
        predicate_from_strings(n, &items)
    }
}

pub fn run(name: DemoName, raw: &[String], limits: &Limits, timed: bool) -> Result<Outcome> {
    let mut timings = Timings::new(timed);
    let mut outcome = match name {
        DemoName::Grandfather => grandfather(&Params::parse(raw, &[])?, limits),
        DemoName::NpSearch => np_search(&Params::parse(raw, &["n", "solutions"])?, limits),
        DemoName::Pspace => pspace(&Params::parse(raw, &["machine"])?, limits),
        DemoName::Narrow => narrow(&Params::parse(raw, &["variant", "n", "witnesses", "eps", "yes", "no"])?, limits),
        DemoName::Perturb => perturb(&Params::parse(raw, &["eps"])?),
    }?;
    timings.lap("demo");
    outcome.report.timings_ms = timings.finish();
    Ok(outcome)
}

fn demo_report(name: &str) -> Report {
    let mut r = Report::new("demo");
    r.detail("demo", name);
    r
}

/// X on the CTC qubit, then CNOT into the output: the only consistent
/// state is maximally mixed, so the output is 1 with probability 1/2.
fn grandfather(_: &Params, limits: &Limits) -> Result<Outcome> {
    let p = parse_program(programs::GRANDFATHER)?;
    let mut report = demo_report("grandfather");
    report.program = Some(ProgramSummary::of("grandfather", &p));
    let code = report.set_verdict(&decide(&p, 0, limits)?);
    let classical = parse_program(programs::GRANDFATHER_CLASSICAL)?;
    let cv = decide(&classical, 0, limits)?;
    if let Witness::Distribution(d) = &cv.witness {
        report.detail("classical_distribution", Value::Object(as_json(distribution_map(d))));
    }
    report.detail("classical_accept_probability", cv.exact_accept_probability.to_string());
    Ok(Outcome { report, code })
}

fn as_json(m: BTreeMap<String, String>) -> serde_json::Map<String, Value> {
    m.into_iter().map(|(k, v)| (k, Value::String(v))).collect()
}

/// Search loop: stays put on a solution, otherwise steps to the next
/// string. Accepts iff some solution exists.
fn np_search(params: &Params, limits: &Limits) -> Result<Outcome> {
    let n = params.usize("n", "2")?;
    let pred = params.predicate("solutions", "10", n)?;
    let p = gadget_np_search(n, &pred, limits)?;
    let mut report = demo_report("np-search");
    report.program = Some(ProgramSummary::of("np-search", &p));
    report.detail("solutions", predicate_strings(n, &pred));
    let code = report.set_verdict(&decide(&p, 0, limits)?);
    Ok(Outcome { report, code })
}

/// The clocked configuration loop; its consistent distribution is uniform
/// over the run with the answer bit attached.
fn pspace(params: &Params, limits: &Limits) -> Result<Outcome> {
    let text = match params.0.get("machine") {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {path}: {e}")))?,
        None => programs::ACCEPTING_MACHINE.to_string(),
    };
    let machine = parse_machine(&text)?;
    let g = gadget_pspace(&machine, limits)?;
    let v = decide(&g.program, 0, limits)?;
    let mut report = demo_report("pspace");
    report.program = Some(ProgramSummary::of("pspace", &g.program));
    report.detail("configurations", machine.len());
    report.detail("run_length", g.run.len());
    report.detail("halting_answer", g.answer);
    let expected = ClassicalDistribution::uniform_on(g.program.registers().0, &g.expected_cycle());
    report.detail("matches_uniform_run", v.witness == Witness::Distribution(expected));
    let code = report.set_verdict(&v);
    Ok(Outcome { report, code })
}

/// One-bit stochastic CTC: a witness found by a random guess sets the bit,
/// with a small leak back to 0.
fn narrow(params: &Params, limits: &Limits) -> Result<Outcome> {
    let n = params.usize("n", "4")?;
    let variant = params.get("variant", "np");
    let g: NarrowGadget = match variant {
        "np" => {
            let w = params.predicate("witnesses", "0101", n)?;
            gadget_narrow_np(n, &w, &params.rational("eps", "1/1024")?, limits)?
        }
        "npconp" => {
            let yes = params.predicate("yes", "0101", n)?;
            let no = params.predicate("no", "", n)?;
            gadget_narrow_np_conp(n, &yes, &no, limits)?
        }
        other => return Err(Error::Input(format!("variant `{other}` is not np or npconp"))),
    };
    let mut report = demo_report("narrow");
    report.program = Some(ProgramSummary::of(format!("narrow-{variant}"), &g.program));
    if let Some(w) = &g.warning {
        eprintln!("warning: {w}");
        report.notes.push(w.clone());
    }
    report.detail("variant", variant);
    report.detail("p_one_given_zero", g.matrix.entry(1, 0).to_string());
    report.detail("p_zero_given_one", g.matrix.entry(0, 1).to_string());
    let code = report.set_verdict(&decide(&g.program, 0, limits)?);
    Ok(Outcome { report, code })
}

/// Two stochastic matrices within `ε` of each other whose stationary
/// distributions are as far apart as possible.
fn perturb(params: &Params) -> Result<Outcome> {
    let eps = params.rational("eps", "1/10")?;
    let (a, b) = perturbation_pair(&eps)?;
    let pa = stationary_distribution(&a)?.distribution;
    let pb = stationary_distribution(&b)?.distribution;
    let check = epsilon_check_stochastic(&b, &pa, &eps)?;
    let mut report = demo_report("perturb");
    report.detail("eps", eps.to_string());
    report.detail("stationary_a", Value::Object(as_json(distribution_map(&pa))));
    report.detail("stationary_b", Value::Object(as_json(distribution_map(&pb))));
    report.detail("stationary_distance", pa.distance(&pb).to_string());
    report.detail("a_stationary_under_b_distance", check.distance.to_string());
    report.detail("a_is_eps_fixed_under_b", check.holds);
    Ok(Outcome { report, code: exit::ACCEPT })
}
