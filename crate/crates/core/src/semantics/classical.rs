//! Deterministic programs: consistent distributions are exactly the mixtures
//! of uniform distributions on cycles of the induced map `C'`.

use num_traits::{One, Zero};

use super::table::{ClassicalDistribution, FunctionTable};
use super::verdict::{compare_to_half, Decision, Verdict, Witness};
use crate::algebra::{rat, rational_to_f64, Rational};
use crate::circuits::elaborate::classical_table;
use crate::circuits::CtcProgram;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Largest CTC width for which every cycle is enumerated.
pub const EXHAUSTIVE_CYCLE_BITS: usize = 16;

/// `t^(2^p)`, by `p` squarings. Every point's image under it is cyclic.
pub fn iterate_to_cycles(t: &FunctionTable) -> FunctionTable {
    let mut f = t.clone();
    for _ in 0..t.bits() {
        f = f.compose(&f);
    }
    f
}

/// The cycle through a cyclic point `y`, starting at `y`.
pub fn walk_cycle(t: &FunctionTable, y: usize) -> Vec<usize> {
    let mut cycle = vec![y];
    let mut x = t.apply(y);
    while x != y {
        cycle.push(x);
        x = t.apply(x);
    }
    cycle
}

/// The cycle reached from `0…0`, and the uniform distribution on it.
pub fn cycle_fixed_point(t: &FunctionTable) -> (ClassicalDistribution, Vec<usize>) {
    let y = iterate_to_cycles(t).apply(0);
    let cycle = walk_cycle(t, y);
    (ClassicalDistribution::uniform_on(t.bits(), &cycle), cycle)
}

/// Every cycle of `t`, each listed from its smallest element, ordered by
/// that element.
pub fn all_cycles(t: &FunctionTable) -> Vec<Vec<usize>> {
    // 0 = unvisited, 1 = on the current path, 2 = finished.
    let mut state = vec![0u8; t.size()];
    let mut cycles = Vec::new();
    for start in 0..t.size() {
        let mut path = Vec::new();
        let mut x = start;
        while state[x] == 0 {
            state[x] = 1;
            path.push(x);
            x = t.apply(x);
        }
        if state[x] == 1 {
            let pos = path.iter().position(|&p| p == x).expect("on path");
            let mut cycle = path[pos..].to_vec();
            let min_pos = cycle.iter().enumerate().min_by_key(|(_, &v)| v).map(|(i, _)| i).unwrap();
            cycle.rotate_left(min_pos);
            cycles.push(cycle);
        }
        for p in path {
            state[p] = 2;
        }
    }
    cycles.sort_by_key(|c| c[0]);
    cycles
}

/// `Λ(seed)`: each seed point's mass is spread uniformly over the cycle it
/// eventually enters.
pub fn classical_projector(t: &FunctionTable, seed: &ClassicalDistribution) -> ClassicalDistribution {
    let limit = iterate_to_cycles(t);
    let mut out = vec![Rational::zero(); t.size()];
    for x in seed.support() {
        let cycle = walk_cycle(t, limit.apply(x));
        let share = seed.probability(x) / Rational::from_integer((cycle.len() as i64).into());
        for y in cycle {
            out[y] += &share;
        }
    }
    ClassicalDistribution::new(t.bits(), out).expect("mass is conserved")
}

/// `C'(y) = [C(y, x)]_CTC` for a fixed CR input `x`.
pub fn induced_table(full: &FunctionTable, ctc_bits: usize, cr_bits: usize, cr_input: usize) -> FunctionTable {
    FunctionTable::from_fn(ctc_bits, |y| full.apply((y << cr_bits) | cr_input) >> cr_bits).expect("in range")
}

/// Elaborated classical program at a given CR input.
pub struct ClassicalInstance {
    pub full: FunctionTable,
    pub induced: FunctionTable,
    pub ctc_bits: usize,
    pub cr_bits: usize,
    pub cr_input: usize,
    pub output_bit: usize,
}

impl ClassicalInstance {
    pub fn new(p: &CtcProgram, cr_input: usize, limits: &Limits) -> Result<Self> {
        let c = p
            .as_classical()
            .ok_or_else(|| Error::Input(format!("expected a classical program, got {}", p.kind())))?;
        if cr_input >= 1usize << c.cr_bits {
            return Err(Error::Input(format!("CR input {cr_input} does not fit in {} bits", c.cr_bits)));
        }
        let (full, _) = classical_table(c, limits)?;
        let induced = induced_table(&full, c.ctc_bits, c.cr_bits, cr_input);
        Ok(Self { full, induced, ctc_bits: c.ctc_bits, cr_bits: c.cr_bits, cr_input, output_bit: p.output_bit })
    }

    /// The designated CR output bit after running `C` on CTC contents `y`.
    pub fn output(&self, y: usize) -> bool {
        let out = self.full.apply((y << self.cr_bits) | self.cr_input);
        (out >> (self.cr_bits - 1 - self.output_bit)) & 1 == 1
    }

    pub fn accept_probability(&self, d: &ClassicalDistribution) -> Rational {
        d.support().into_iter().filter(|&y| self.output(y)).map(|y| d.probability(y).clone()).sum()
    }

    fn cycle_fraction(&self, cycle: &[usize]) -> Rational {
        let ones = cycle.iter().filter(|&&y| self.output(y)).count();
        rat(ones as i64, cycle.len() as i64)
    }
}

/// Accept when every cyclic string outputs 1, reject when every one outputs
/// 0, otherwise ambiguous. The range is over the per-cycle acceptance
/// fractions, whose convex hull is the set of consistent acceptance
/// probabilities.
pub fn classical_decide(p: &CtcProgram, cr_input: usize, limits: &Limits) -> Result<Verdict> {
    let inst = ClassicalInstance::new(p, cr_input, limits)?;
    let (dist, _) = cycle_fixed_point(&inst.induced);
    let exact = inst.accept_probability(&dist);
    let mut notes = Vec::new();
    let (lo, hi, certified) = if inst.ctc_bits <= EXHAUSTIVE_CYCLE_BITS {
        let fractions: Vec<Rational> = all_cycles(&inst.induced).iter().map(|c| inst.cycle_fraction(c)).collect();
        let lo = fractions.iter().min().expect("some cycle exists").clone();
        let hi = fractions.iter().max().expect("some cycle exists").clone();
        if fractions.len() > 1 {
            notes.push(format!("{} cycles", fractions.len()));
        }
        (lo, hi, true)
    } else {
        notes.push(format!("{} CTC bits: only the canonical cycle was examined", inst.ctc_bits));
        (exact.clone(), exact.clone(), false)
    };
    let decision = if lo.is_one() {
        Decision::Accept
    } else if hi.is_zero() {
        Decision::Reject
    } else {
        Decision::Ambiguous
    };
    Ok(Verdict {
        decision,
        compare_to_half: compare_to_half(&exact),
        exact_accept_probability: exact,
        probability_range: (rational_to_f64(&lo), rational_to_f64(&hi)),
        witness: Witness::Distribution(dist),
        certified,
        notes,
    })
}

/// Whether `d` is consistent: `C'(d) = d`.
pub fn is_consistent(t: &FunctionTable, d: &ClassicalDistribution) -> bool {
    d.push_forward(t) == *d
}
