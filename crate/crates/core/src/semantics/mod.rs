//! Program semantics: consistent states and verdicts for classical,
//! stochastic and quantum programs, the complexity gadgets, and
//! approximate-fixed-point analysis.

pub mod classical;
pub mod gadgets;
pub mod perturb;
pub mod quantum;
pub mod stochastic;
pub mod table;
pub mod verdict;

pub use classical::{all_cycles, classical_decide, classical_projector, cycle_fixed_point};
pub use gadgets::{gadget_narrow_np, gadget_narrow_np_conp, gadget_np_search, gadget_pspace, parse_machine, MachineSpec};
pub use perturb::{distance_to_cycle_support, epsilon_check_quantum, epsilon_check_stochastic, perturbation_pair};
pub use quantum::{accept_probability, quantum_decide};
pub use stochastic::{stationary_distribution, stochastic_decide, StochasticMatrix};
pub use table::{ClassicalDistribution, FunctionTable};
pub use verdict::{Decision, Verdict, Witness};

use crate::circuits::{CtcProgram, ProgramKind};
use crate::error::Result;
use crate::limits::Limits;

/// Decide any program. `cr_input` fixes the CR register of a classical
/// program and is ignored otherwise.
pub fn decide(p: &CtcProgram, cr_input: usize, limits: &Limits) -> Result<Verdict> {
    match p.kind() {
        ProgramKind::Quantum => quantum_decide(p, limits),
        ProgramKind::Classical => classical_decide(p, cr_input, limits),
        ProgramKind::Stochastic => stochastic_decide(p, limits),
    }
}
