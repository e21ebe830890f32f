//! Approximate fixed points: ε-checks for stochastic and quantum maps, the
//! perturbation pair whose exact fixed points are far apart, and the
//! distance from an approximate fixed point of a function to the set of
//! cycle-supported distributions.

use num_traits::{One, Zero};

use super::classical::all_cycles;
use super::stochastic::StochasticMatrix;
use super::table::{ClassicalDistribution, FunctionTable};
use crate::algebra::{rat_int, Rational};
use crate::error::{Error, Result};
use crate::superop::{trace_distance_f64, DensityMatrix, Superoperator};

/// Tolerance on the floating-point trace distance.
pub const TRACE_DISTANCE_TOLERANCE: f64 = 1e-9;

/// `S_a = [[1, ε], [0, 1-ε]]` and `S_b = [[1-ε, 0], [ε, 1]]`: within `ε` of
/// each other, yet their unique stationary distributions are `(1,0)` and
/// `(0,1)`.
pub fn perturbation_pair(eps: &Rational) -> Result<(StochasticMatrix, StochasticMatrix)> {
    let one = Rational::one();
    let zero = Rational::zero();
    let a = StochasticMatrix::from_rationals(&[vec![one.clone(), eps.clone()], vec![zero.clone(), &one - eps]])?;
    let b = StochasticMatrix::from_rationals(&[vec![&one - eps, zero], vec![eps.clone(), one]])?;
    Ok((a, b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalEpsilonCheck {
    /// `(1/2)||π - Sπ||_1`, exactly.
    pub distance: Rational,
    pub holds: bool,
}

pub fn epsilon_check_stochastic(s: &StochasticMatrix, pi: &ClassicalDistribution, eps: &Rational) -> Result<ClassicalEpsilonCheck> {
    if pi.bits() != s.bits() {
        return Err(Error::Input(format!("distribution on {} bits, matrix on {}", pi.bits(), s.bits())));
    }
    let distance = pi.distance(&s.apply(pi));
    Ok(ClassicalEpsilonCheck { holds: distance <= *eps, distance })
}

pub fn epsilon_check_table(t: &FunctionTable, pi: &ClassicalDistribution, eps: &Rational) -> ClassicalEpsilonCheck {
    let distance = pi.distance(&pi.push_forward(t));
    ClassicalEpsilonCheck { holds: distance <= *eps, distance }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuantumEpsilonCheck {
    /// `(1/2)||ρ - Φ(ρ)||_tr` in floating point.
    pub trace_distance: f64,
    /// `(1/2) Σ |re| + |im|` over the entries of `ρ - Φ(ρ)`, exactly. Bounds
    /// the trace distance up to a factor of the dimension.
    pub entrywise_bound: Rational,
    /// `trace_distance ≤ ε` up to [`TRACE_DISTANCE_TOLERANCE`].
    pub holds: bool,
}

pub fn epsilon_check_quantum(phi: &Superoperator, rho: &DensityMatrix, eps: &Rational) -> Result<QuantumEpsilonCheck> {
    let out = phi.apply_to_operator(rho.matrix())?;
    let out = DensityMatrix::new(out).map_err(|e| Error::Internal(format!("Φ(ρ) is not a state: {e}")))?;
    let trace_distance = trace_distance_f64(&rho.matrix().to_complex(), &out.matrix().to_complex());
    let entrywise_bound = rho.l1_bound(&out);
    let holds = trace_distance <= crate::algebra::rational_to_f64(eps) + TRACE_DISTANCE_TOLERANCE;
    Ok(QuantumEpsilonCheck { trace_distance, entrywise_bound, holds })
}

/// Exact distance from `π` to the nearest distribution supported on cyclic
/// strings of `t`, by minimizing over where the off-cycle mass is moved.
pub fn distance_to_cycle_support(t: &FunctionTable, pi: &ClassicalDistribution) -> Rational {
    let cyclic: Vec<usize> = all_cycles(t).into_iter().flatten().collect();
    let mut on_cycles = vec![false; t.size()];
    for &c in &cyclic {
        on_cycles[c] = true;
    }
    let outside: Rational = (0..t.size()).filter(|&x| !on_cycles[x]).map(|x| pi.probability(x).clone()).sum();
    cyclic
        .iter()
        .map(|&c| {
            let candidate: Vec<Rational> = (0..t.size())
                .map(|x| {
                    let base = if on_cycles[x] { pi.probability(x).clone() } else { Rational::zero() };
                    if x == c {
                        base + &outside
                    } else {
                        base
                    }
                })
                .collect();
            pi.distance(&ClassicalDistribution::new(t.bits(), candidate).expect("mass is conserved"))
        })
        .min()
        .expect("every function has a cycle")
}

/// `2 · 2^p · ε`, the bound on [`distance_to_cycle_support`] for an
/// ε-fixed-point of a function on `p` bits.
pub fn cycle_support_bound(bits: usize, eps: &Rational) -> Rational {
    rat_int(2) * Rational::from_integer((1i64 << bits).into()) * eps
}
