//! `validate`, `fixpoint`, `decide` and `oracle`.

use std::path::Path;

use ctcsim::algebra::rational_to_f64;
use ctcsim::circuits::{parse_program, validate_program, CtcProgram, ProgramKind};
use ctcsim::fixpoint::{cesaro_oracle, cesaro_oracle_stochastic, compute_fixed_point, fixed_point_projector_with};
use ctcsim::semantics::classical::{classical_projector, ClassicalInstance};
use ctcsim::semantics::quantum::accept_probability;
use ctcsim::semantics::stochastic::{program_matrix, stochastic_accept_probability, stochastic_fixed_point};
use ctcsim::semantics::table::{parse_bits, ClassicalDistribution};
use ctcsim::semantics::{decide as decide_program, Witness};
use ctcsim::superop::{program_to_natural, DensityMatrix};
use ctcsim::{Error, Limits, Rational, Result};

use crate::exit;
use crate::report::{Outcome, ProgramSummary, Report, Timings};

/// Initial CTC state handed to `Λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Seed {
    /// All-zeros basis state.
    Zero,
    /// Maximally mixed (uniform) state.
    Mixed,
    Basis(usize),
}

impl Seed {
    pub fn parse(s: &str) -> std::result::Result<Seed, String> {
        match s {
            "zero" => Ok(Seed::Zero),
            "mixed" => Ok(Seed::Mixed),
            _ => s
                .strip_prefix("basis:")
                .and_then(|k| k.parse().ok())
                .map(Seed::Basis)
                .ok_or_else(|| format!("`{s}` is not zero, mixed or basis:<k>")),
        }
    }

    fn index(&self, dim: usize) -> Result<usize> {
        match self {
            Seed::Basis(k) if *k >= dim => Err(Error::Input(format!("basis:{k} is out of range for dimension {dim}"))),
            Seed::Basis(k) => Ok(*k),
            _ => Ok(0),
        }
    }

    pub fn density(&self, dim: usize) -> Result<DensityMatrix> {
        Ok(match self {
            Seed::Mixed => DensityMatrix::maximally_mixed(dim),
            _ => DensityMatrix::basis(dim, self.index(dim)?),
        })
    }

    pub fn distribution(&self, bits: usize) -> Result<ClassicalDistribution> {
        Ok(match self {
            Seed::Mixed => ClassicalDistribution::uniform_on(bits, &(0..1usize << bits).collect::<Vec<_>>()),
            _ => ClassicalDistribution::point_mass(bits, self.index(1usize << bits)?),
        })
    }
}

impl std::fmt::Display for Seed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Seed::Zero => f.write_str("zero"),
            Seed::Mixed => f.write_str("mixed"),
            Seed::Basis(k) => write!(f, "basis:{k}"),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn name_of(path: &Path) -> String {
    path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string())
}

/// Parses and validates; validation failures become a semantic error.
pub fn load(path: &Path) -> Result<CtcProgram> {
    let p = parse_program(&read(path)?)?;
    let report = validate_program(&p);
    if !report.is_valid() {
        let list: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        return Err(Error::Semantic(list.join("; ")));
    }
    Ok(p)
}

fn cr_input_value(p: &CtcProgram, bits: Option<&str>) -> Result<usize> {
    let Some(bits) = bits else { return Ok(0) };
    let (_, cr) = p.registers();
    if p.kind() != ProgramKind::Classical {
        return Err(Error::Input("--cr-input applies to classical programs only".into()));
    }
    if bits.len() != cr {
        return Err(Error::Input(format!("--cr-input needs {cr} bits, got `{bits}`")));
    }
    parse_bits(bits)
}

pub fn validate(path: &Path) -> Result<Outcome> {
    let p = parse_program(&read(path)?)?;
    let v = validate_program(&p);
    let mut report = Report::new("validate");
    report.program = Some(ProgramSummary::of(name_of(path), &p));
    report.valid = Some(v.is_valid());
    report.violations = v.violations.iter().map(ToString::to_string).collect();
    for line in &report.violations {
        eprintln!("violation: {line}");
    }
    let code = if v.is_valid() { exit::ACCEPT } else { exit::SEMANTIC };
    Ok(Outcome { report, code })
}

/// The consistent state reached from `seed` and its acceptance probability.
struct FixedPoint {
    witness: Witness,
    accept: Rational,
}

fn fixed_point_of(
    p: &CtcProgram,
    seed: &Seed,
    cr_input: usize,
    limits: &Limits,
    timings: &mut Timings,
) -> Result<FixedPoint> {
    let (q, _) = p.registers();
    match p.kind() {
        ProgramKind::Quantum => {
            let phi = program_to_natural(p, limits)?;
            timings.lap("channel");
            let lambda = fixed_point_projector_with(&phi, limits)?;
            timings.lap("projector");
            let rho = compute_fixed_point(&lambda, &seed.density(1usize << q)?)?;
            let accept = accept_probability(p, &rho, limits)?;
            timings.lap("fixed_point");
            Ok(FixedPoint { witness: Witness::State(rho), accept })
        }
        ProgramKind::Classical => {
            let inst = ClassicalInstance::new(p, cr_input, limits)?;
            timings.lap("table");
            let d = classical_projector(&inst.induced, &seed.distribution(q)?);
            let accept = inst.accept_probability(&d);
            timings.lap("fixed_point");
            Ok(FixedPoint { witness: Witness::Distribution(d), accept })
        }
        ProgramKind::Stochastic => {
            let s = program_matrix(p, limits)?;
            let d = stochastic_fixed_point(&s, &seed.distribution(q)?, limits)?;
            let body = p.as_stochastic().expect("stochastic kind");
            let accept = stochastic_accept_probability(body, &d);
            timings.lap("fixed_point");
            Ok(FixedPoint { witness: Witness::Distribution(d), accept })
        }
    }
}

pub fn fixpoint(path: &Path, seed: &Seed, cr_input: Option<&str>, limits: &Limits, timed: bool) -> Result<Outcome> {
    let mut timings = Timings::new(timed);
    let p = load(path)?;
    let cr = cr_input_value(&p, cr_input)?;
    timings.lap("parse");
    let fp = fixed_point_of(&p, seed, cr, limits, &mut timings)?;
    let mut report = Report::new("fixpoint");
    report.program = Some(ProgramSummary::of(name_of(path), &p));
    report.seed = Some(seed.to_string());
    report.set_witness(&fp.witness);
    report.set_accept_probability(&fp.accept);
    report.timings_ms = timings.finish();
    Ok(Outcome { report, code: exit::ACCEPT })
}

pub fn decide(path: &Path, cr_input: Option<&str>, limits: &Limits, timed: bool) -> Result<Outcome> {
    let mut timings = Timings::new(timed);
    let p = load(path)?;
    let cr = cr_input_value(&p, cr_input)?;
    timings.lap("parse");
    let v = decide_program(&p, cr, limits)?;
    timings.lap("decide");
    let mut report = Report::new("decide");
    report.program = Some(ProgramSummary::of(name_of(path), &p));
    let code = report.set_verdict(&v);
    report.timings_ms = timings.finish();
    Ok(Outcome { report, code })
}

/// Exact `Λ(seed)` next to the floating-point Cesàro mean over `steps`
/// iterations; reports the largest entrywise deviation.
pub fn oracle(path: &Path, steps: usize, seed: &Seed, limits: &Limits) -> Result<Outcome> {
    if steps == 0 {
        return Err(Error::Input("--steps must be positive".into()));
    }
    let p = load(path)?;
    let (q, _) = p.registers();
    let fp = fixed_point_of(&p, seed, 0, limits, &mut Timings::new(false))?;
    let deviation = match (&fp.witness, p.kind()) {
        (Witness::State(rho), _) => {
            let phi = program_to_natural(&p, limits)?;
            let avg = cesaro_oracle(&phi, &seed.density(1usize << q)?, steps);
            rho.matrix().max_abs_diff_f64(&avg)
        }
        (Witness::Distribution(d), kind) => {
            let s = match kind {
                ProgramKind::Classical => ClassicalInstance::new(&p, 0, limits)?.induced.to_matrix(),
                _ => program_matrix(&p, limits)?.matrix().clone(),
            };
            let avg = cesaro_oracle_stochastic(&s, seed.distribution(q)?.probabilities(), steps);
            d.probabilities().iter().zip(avg.iter()).map(|(e, a)| (rational_to_f64(e) - a).abs()).fold(0.0, f64::max)
        }
    };
    let mut report = Report::new("oracle");
    report.program = Some(ProgramSummary::of(name_of(path), &p));
    report.seed = Some(seed.to_string());
    report.set_witness(&fp.witness);
    report.detail("steps", steps);
    report.detail("max_deviation_approx", deviation);
    Ok(Outcome { report, code: exit::ACCEPT })
}
