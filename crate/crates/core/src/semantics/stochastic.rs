//! Stochastic programs: consistent distributions are the stationary
//! distributions of a column-stochastic matrix.

use num_traits::{Signed, Zero};

use super::table::ClassicalDistribution;
use super::verdict::{compare_to_half, Decision, Verdict, Witness};
use crate::algebra::{rat, rational_to_f64, GaussianRational, Matrix, Rational};
use crate::circuits::validate::stochastic_violations;
use crate::circuits::{CtcProgram, StochasticProgram};
use crate::error::{Error, Result};
use crate::fixpoint::{projector_limit_matrix, symbolic_resolvent};
use crate::limits::Limits;

/// Column-stochastic matrix with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StochasticMatrix {
    matrix: Matrix,
}

impl StochasticMatrix {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let problems = stochastic_violations(&matrix);
        if let Some(first) = problems.first() {
            return Err(Error::Input(format!("not column-stochastic: {first}")));
        }
        if !matrix.rows().is_power_of_two() {
            return Err(Error::Input(format!("dimension {} is not a power of two", matrix.rows())));
        }
        Ok(Self { matrix })
    }

    /// From rational entries, `rows[i][j] = P(i | j)`.
    pub fn from_rationals(rows: &[Vec<Rational>]) -> Result<Self> {
        let m = Matrix::from_rows(
            rows.iter().map(|r| r.iter().cloned().map(GaussianRational::real).collect()).collect(),
        )?;
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn bits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.matrix[(i, j)].re
    }

    pub fn apply(&self, d: &ClassicalDistribution) -> ClassicalDistribution {
        let n = self.dim();
        let out = (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j) * d.probability(j)).sum())
            .collect();
        ClassicalDistribution::new(d.bits(), out).expect("stochastic maps preserve distributions")
    }
}

/// Strongly connected components of the support graph (edge `j → i` when
/// `S_ij > 0`) that no edge leaves. Each carries exactly one stationary
/// distribution, and every stationary distribution mixes those.
pub fn closed_classes(s: &StochasticMatrix) -> Vec<Vec<usize>> {
    let n = s.dim();
    let succ: Vec<Vec<usize>> = (0..n).map(|j| (0..n).filter(|&i| !s.entry(i, j).is_zero()).collect()).collect();
    let comp = strongly_connected(&succ);
    let count = comp.iter().max().map_or(0, |m| m + 1);
    let mut closed = vec![true; count];
    for j in 0..n {
        if succ[j].iter().any(|&i| comp[i] != comp[j]) {
            closed[comp[j]] = false;
        }
    }
    let mut classes: Vec<Vec<usize>> = (0..count)
        .filter(|&c| closed[c])
        .map(|c| (0..n).filter(|&v| comp[v] == c).collect())
        .collect();
    classes.sort_by_key(|c| c[0]);
    classes
}

/// Kosaraju; returns a component id per vertex.
fn strongly_connected(succ: &[Vec<usize>]) -> Vec<usize> {
    let n = succ.len();
    let mut pred = vec![Vec::new(); n];
    for (v, out) in succ.iter().enumerate() {
        for &w in out {
            pred[w].push(v);
        }
    }
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some((v, k)) = stack.pop() {
            if k < succ[v].len() {
                stack.push((v, k + 1));
                let w = succ[v][k];
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for &root in order.iter().rev() {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = next;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &pred[v] {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    comp
}

fn normalize(v: &[GaussianRational], bits: usize) -> Result<ClassicalDistribution> {
    let total: Rational = v.iter().map(|x| x.re.clone()).sum();
    if total.is_zero() || v.iter().any(|x| !x.is_real()) {
        return Err(Error::Internal("stationary vector is not a real nonzero vector".into()));
    }
    let p: Vec<Rational> = v.iter().map(|x| &x.re / &total).collect();
    if p.iter().any(Signed::is_negative) {
        return Err(Error::Internal("stationary vector has mixed signs".into()));
    }
    ClassicalDistribution::new(bits, p)
}

/// The stationary distribution supported on one closed class.
fn class_stationary(s: &StochasticMatrix, class: &[usize]) -> Result<ClassicalDistribution> {
    let k = class.len();
    let sub = Matrix::from_fn(k, k, |a, b| {
        let mut x = s.matrix[(class[a], class[b])].clone();
        if a == b {
            x -= &GaussianRational::from_int(1);
        }
        x
    });
    let ns = sub.nullspace();
    if ns.len() != 1 {
        return Err(Error::Internal(format!("closed class has a {}-dimensional stationary space", ns.len())));
    }
    let mut full = vec![GaussianRational::zero(); s.dim()];
    for (a, &v) in class.iter().enumerate() {
        full[v] = ns[0][(a, 0)].clone();
    }
    normalize(&full, s.bits())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stationary {
    /// The canonical stationary distribution.
    pub distribution: ClassicalDistribution,
    /// True when the stationary set is more than a single point.
    pub multiple: bool,
    /// One extreme stationary distribution per closed class.
    pub extremes: Vec<ClassicalDistribution>,
}

/// Exact solve of `(S - I)π = 0`, `Σπ = 1`. When the solution is not
/// unique, the canonical choice is the uniform mixture of the extreme
/// stationary distributions (one per closed class); for `S = I` this is the
/// uniform distribution.
pub fn stationary_distribution(s: &StochasticMatrix) -> Result<Stationary> {
    let bits = s.bits();
    let shifted = s.matrix.sub(&Matrix::identity(s.dim()))?;
    let ns = shifted.nullspace();
    let classes = closed_classes(s);
    if ns.len() != classes.len() {
        return Err(Error::Internal(format!(
            "stationary space has dimension {} but there are {} closed classes",
            ns.len(),
            classes.len()
        )));
    }
    let extremes = classes.iter().map(|c| class_stationary(s, c)).collect::<Result<Vec<_>>>()?;
    let distribution = if ns.len() == 1 {
        normalize(ns[0].entries(), bits)?
    } else {
        let w = rat(1, extremes.len() as i64);
        let mix = (0..s.dim())
            .map(|x| extremes.iter().map(|e| e.probability(x) * &w).sum())
            .collect();
        ClassicalDistribution::new(bits, mix)?
    };
    if s.apply(&distribution) != distribution {
        return Err(Error::Internal("computed distribution is not stationary".into()));
    }
    Ok(Stationary { distribution, multiple: ns.len() > 1, extremes })
}

fn stochastic_body(p: &CtcProgram) -> Result<&StochasticProgram> {
    p.as_stochastic().ok_or_else(|| Error::Input(format!("expected a stochastic program, got {}", p.kind())))
}

fn check_cap(bits: usize, limits: &Limits) -> Result<()> {
    if bits > limits.max_classical_bits {
        return Err(Error::Resource(format!("{bits} CTC bits exceed the cap of {}", limits.max_classical_bits)));
    }
    Ok(())
}

pub fn program_matrix(p: &CtcProgram, limits: &Limits) -> Result<StochasticMatrix> {
    let s = stochastic_body(p)?;
    check_cap(s.ctc_bits, limits)?;
    StochasticMatrix::new(s.matrix.clone())
}

/// Probability that the output rule fires under `d`.
pub fn stochastic_accept_probability(p: &StochasticProgram, d: &ClassicalDistribution) -> Rational {
    d.support().into_iter().filter(|&x| p.output_for(x)).map(|x| d.probability(x).clone()).sum()
}

/// Thresholds 2/3 and 1/3 applied exactly to the extreme stationary
/// distributions, which bound every consistent acceptance probability.
pub fn stochastic_decide(p: &CtcProgram, limits: &Limits) -> Result<Verdict> {
    let body = stochastic_body(p)?;
    let s = program_matrix(p, limits)?;
    let st = stationary_distribution(&s)?;
    let exact = stochastic_accept_probability(body, &st.distribution);
    let probs: Vec<Rational> = st.extremes.iter().map(|e| stochastic_accept_probability(body, e)).collect();
    let lo = probs.iter().min().expect("a closed class exists").clone();
    let hi = probs.iter().max().expect("a closed class exists").clone();
    let decision = if lo >= rat(2, 3) {
        Decision::Accept
    } else if hi <= rat(1, 3) {
        Decision::Reject
    } else {
        Decision::Ambiguous
    };
    let mut notes = Vec::new();
    if st.multiple {
        notes.push(format!("{} closed classes; canonical state is their uniform mixture", st.extremes.len()));
    }
    Ok(Verdict {
        decision,
        compare_to_half: compare_to_half(&exact),
        exact_accept_probability: exact,
        probability_range: (rational_to_f64(&lo), rational_to_f64(&hi)),
        witness: Witness::Distribution(st.distribution),
        certified: true,
        notes,
    })
}

/// `R = lim_{z→0+} z (I - (1 - z) S)^{-1}` for a stochastic matrix; maps
/// any seed to a stationary distribution.
pub fn stochastic_projector(s: &StochasticMatrix, limits: &Limits) -> Result<Matrix> {
    let cap = 1usize << (2 * limits.max_ctc_qubits);
    if s.dim() > cap {
        return Err(Error::Resource(format!("stochastic matrix of dimension {} exceeds the resolvent cap {cap}", s.dim())));
    }
    let r = projector_limit_matrix(&symbolic_resolvent(s.matrix())?)?;
    if r.mul(&r)? != r || s.matrix().mul(&r)? != r {
        return Err(Error::Contract("stochastic projector failed R² = R or SR = R".into()));
    }
    Ok(r)
}

/// `Λ(seed)` for a stochastic program.
pub fn stochastic_fixed_point(
    s: &StochasticMatrix,
    seed: &ClassicalDistribution,
    limits: &Limits,
) -> Result<ClassicalDistribution> {
    let r = stochastic_projector(s, limits)?;
    let v = Matrix::column(seed.probabilities().iter().cloned().map(GaussianRational::real).collect());
    let out = r.mul(&v)?;
    let d = normalize(out.entries(), s.bits())?;
    if s.apply(&d) != d {
        return Err(Error::Contract("Λ(seed) is not stationary".into()));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[&str]]) -> StochasticMatrix {
        StochasticMatrix::new(Matrix::parse_rows(rows)).unwrap()
    }

    #[test]
    fn identity_has_multiplicity() {
        let st = stationary_distribution(&m(&[&["1", "0"], &["0", "1"]])).unwrap();
        assert!(st.multiple);
        assert_eq!(st.distribution, ClassicalDistribution::uniform_on(1, &[0, 1]));
    }

    #[test]
    fn perturbation_pair() {
        let a = m(&[&["1", "1/100"], &["0", "99/100"]]);
        let b = m(&[&["99/100", "0"], &["1/100", "1"]]);
        let sa = stationary_distribution(&a).unwrap();
        let sb = stationary_distribution(&b).unwrap();
        assert!(!sa.multiple && !sb.multiple);
        assert_eq!(sa.distribution, ClassicalDistribution::point_mass(1, 0));
        assert_eq!(sb.distribution, ClassicalDistribution::point_mass(1, 1));
    }

    #[test]
    fn two_state_chain() {
        let s = m(&[&["1/2", "1/4"], &["1/2", "3/4"]]);
        let st = stationary_distribution(&s).unwrap();
        assert_eq!(st.distribution.probabilities(), &[rat(1, 3), rat(2, 3)]);
        let seeded = stochastic_fixed_point(&s, &ClassicalDistribution::point_mass(1, 0), &Limits::default()).unwrap();
        assert_eq!(seeded, st.distribution);
    }

    #[test]
    fn transient_states_are_dropped() {
        // 0 -> {0,1}; 1 -> 2; 2 -> 1; 3 -> 3
        let s = m(&[
            &["1/2", "0", "0", "0"],
            &["1/2", "0", "1", "0"],
            &["0", "1", "0", "0"],
            &["0", "0", "0", "1"],
        ]);
        assert_eq!(closed_classes(&s), vec![vec![1, 2], vec![3]]);
        let st = stationary_distribution(&s).unwrap();
        assert!(st.multiple);
        assert_eq!(st.distribution.probabilities(), &[rat(0, 1), rat(1, 4), rat(1, 4), rat(1, 2)]);
        let seeded = stochastic_fixed_point(&s, &ClassicalDistribution::point_mass(2, 0), &Limits::default()).unwrap();
        assert_eq!(seeded, ClassicalDistribution::uniform_on(2, &[1, 2]));
    }
}
