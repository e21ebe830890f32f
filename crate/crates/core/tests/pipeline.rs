mod common;

use ctcsim::algebra::{rat, rational_to_f64};
use ctcsim::circuits::{circuit_unitary, parse_program, print_program, validate_program, ViolationKind};
use ctcsim::fixpoint::{compute_fixed_point, fixed_point_projector, symbolic_resolvent};
use ctcsim::semantics::classical::{all_cycles, classical_projector, cycle_fixed_point, is_consistent};
use ctcsim::semantics::quantum::quantum_decide;
use ctcsim::semantics::stochastic::stationary_distribution;
use ctcsim::semantics::table::{ClassicalDistribution, FunctionTable};
use ctcsim::semantics::StochasticMatrix;
use ctcsim::semantics::perturb::epsilon_check_quantum;
use ctcsim::superop::{
    kraus_family, program_to_natural, program_to_natural_direct, unvec, vec, DensityMatrix, Superoperator,
};
use ctcsim::{GaussianRational, Limits, Matrix, Rational};
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;

#[test]
fn printed_programs_parse_back() {
    let mut rng = common::rng(1);
    for _ in 0..40 {
        let (_, p) = common::random_quantum_program(&mut rng, 2, 2);
        assert_eq!(parse_program(&print_program(&p)).unwrap(), p);
    }
}

#[test]
fn random_circuits_are_unitary() {
    let mut rng = common::rng(2);
    for _ in 0..20 {
        let (src, p) = common::random_quantum_program(&mut rng, 2, 2);
        let u = circuit_unitary(p.as_quantum().unwrap(), &Limits::default()).unwrap();
        assert_eq!(u.dagger().mul(&u).unwrap(), Matrix::identity(u.rows()), "{src}");
        assert!(validate_program(&p).is_valid());
    }
}

#[test]
fn non_unitary_defgate_names_the_row() {
    let p = parse_program("quantum\nregisters ctc=1 cr=1\ndefgate B = [1, 1; 0, 1]\napply B ctc[0]\noutput cr[0]\n").unwrap();
    let report = validate_program(&p);
    assert!(report.violations.iter().any(|v| v.kind == ViolationKind::NonUnitary && v.message.contains("row")));
}

#[test]
fn natural_matrix_agrees_with_kraus_and_direct_routes() {
    let mut rng = common::rng(3);
    let limits = Limits::default();
    for _ in 0..25 {
        let q = rng.gen_range(1..=2);
        let r = rng.gen_range(1..=3 - q);
        let src = common::random_quantum_source(&mut rng, q, r);
        let p = parse_program(&src).unwrap();
        let phi = program_to_natural(&p, &limits).unwrap();
        assert_eq!(phi.k_matrix(), program_to_natural_direct(&p, &limits).unwrap().k_matrix(), "{src}");
        assert!(phi.is_trace_preserving() && phi.complete_positivity_check().is_psd(), "{src}");
        let kraus = kraus_family(&p, &limits).unwrap();
        for sigma in common::seeds(&mut rng, 1 << q) {
            let mut by_kraus = Matrix::zeros(1 << q, 1 << q);
            for a in &kraus {
                by_kraus = by_kraus.add(&a.mul(sigma.matrix()).unwrap().mul(&a.dagger()).unwrap()).unwrap();
            }
            let by_k = unvec(&phi.k_matrix().mul(&vec(sigma.matrix())).unwrap(), 1 << q).unwrap();
            assert_eq!(by_k, by_kraus, "{src}");
        }
    }
}

/// `z Σ_{k<64} (1-z)^k M^k` at `z = 1/2`; the tail is below `2^-64`.
fn neumann_half(m: &Matrix) -> DMatrix<Complex64> {
    let k = m.to_complex();
    let n = m.rows();
    let mut term = DMatrix::<Complex64>::identity(n, n);
    let mut sum = DMatrix::<Complex64>::zeros(n, n);
    for _ in 0..64 {
        sum += &term;
        term = (&k * &term) * Complex64::new(0.5, 0.0);
    }
    sum * Complex64::new(0.5, 0.0)
}

#[test]
fn symbolic_resolvent_matches_neumann_series() {
    let mut rng = common::rng(4);
    for _ in 0..15 {
        let (src, p) = common::random_quantum_program(&mut rng, 2, 2);
        let phi = program_to_natural(&p, &Limits::default()).unwrap();
        let s = symbolic_resolvent(phi.k_matrix()).unwrap();
        let exact = s.evaluate(&rat(1, 2)).unwrap();
        let dev = exact.max_abs_diff_f64(&neumann_half(phi.k_matrix()));
        assert!(dev < 1e-9, "deviation {dev} for\n{src}");
    }
}

#[test]
fn projector_image_is_the_nullspace() {
    let mut rng = common::rng(5);
    for _ in 0..15 {
        let (src, p) = common::random_quantum_program(&mut rng, 2, 1);
        let phi = program_to_natural(&p, &Limits::default()).unwrap();
        let lambda = fixed_point_projector(&phi).unwrap();
        let basis = common::nullspace_fixed_points(phi.k_matrix(), phi.input_dim());
        assert_eq!(lambda.r_matrix.rank(), basis.len(), "rank of R vs fixed-space dimension for\n{src}");
    }
}

#[test]
fn quantum_probability_lies_in_reported_range() {
    let mut rng = common::rng(6);
    for _ in 0..25 {
        let (src, p) = common::random_quantum_program(&mut rng, 2, 2);
        let v = quantum_decide(&p, &Limits::default()).unwrap();
        let x = rational_to_f64(&v.exact_accept_probability);
        let (lo, hi) = v.probability_range;
        assert!(lo - 1e-6 <= x && x <= hi + 1e-6, "{x} outside [{lo}, {hi}] for\n{src}");
    }
}

#[test]
fn cycles_match_brute_force() {
    let mut rng = common::rng(7);
    for _ in 0..200 {
        let bits = rng.gen_range(1..=5);
        let size = 1usize << bits;
        let t = FunctionTable::new(bits, (0..size).map(|_| rng.gen_range(0..size)).collect()).unwrap();
        let cyclic = common::brute_force_cyclic(|x| t.apply(x), size);
        let mut found: Vec<usize> = all_cycles(&t).into_iter().flatten().collect();
        found.sort_unstable();
        assert_eq!(found, (0..size).filter(|&x| cyclic[x]).collect::<Vec<_>>());
        let (d, cycle) = cycle_fixed_point(&t);
        assert!(is_consistent(&t, &d));
        assert!(cycle.iter().all(|&x| cyclic[x]));
        let seed = ClassicalDistribution::uniform_on(bits, &(0..size).collect::<Vec<_>>());
        let proj = classical_projector(&t, &seed);
        assert!(is_consistent(&t, &proj));
        assert!(proj.support().iter().all(|&x| cyclic[x]));
    }
}

#[test]
fn stationary_distribution_matches_nullspace() {
    let mut rng = common::rng(8);
    for _ in 0..50 {
        let n = 1usize << rng.gen_range(1..=3);
        // Sparse random columns so that several closed classes can occur.
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|_| {
                let mut w: Vec<Rational> = (0..n).map(|_| if rng.gen_bool(0.35) { rat(rng.gen_range(1..=5), 1) } else { Rational::zero() }).collect();
                if w.iter().all(Zero::is_zero) {
                    w[rng.gen_range(0..n)] = rat(1, 1);
                }
                let total: Rational = w.iter().sum();
                w.into_iter().map(|x| x / &total).collect()
            })
            .collect();
        let m = Matrix::from_fn(n, n, |i, j| GaussianRational::real(cols[j][i].clone()));
        let s = StochasticMatrix::new(m.clone()).unwrap();
        let st = stationary_distribution(&s).unwrap();
        let dim = m.sub(&Matrix::identity(n)).unwrap().nullspace().len();
        assert_eq!(st.multiple, dim > 1);
        assert_eq!(st.extremes.len(), dim);
        for e in st.extremes.iter().chain([&st.distribution]) {
            assert_eq!(&s.apply(e), e);
        }
    }
}

#[test]
fn crlf_and_lf_sources_agree() {
    let src = ctcsim::programs::ROTATION;
    assert_eq!(parse_program(&src.replace('\n', "\r\n")).unwrap(), parse_program(src).unwrap());
}

/// Mixing a channel with weight `t` into another moves it by at most `2t`
/// in diamond norm, so every fixed point of the first is a `t`-fixed point
/// of the mixture.
#[test]
fn convex_mixing_keeps_fixed_points_approximately() {
    let mut rng = common::rng(9);
    let limits = Limits::default();
    for _ in 0..15 {
        let (_, a) = common::random_quantum_program(&mut rng, 1, 2);
        let (_, b) = common::random_quantum_program(&mut rng, 1, 2);
        let (phi, psi) = (program_to_natural(&a, &limits).unwrap(), program_to_natural(&b, &limits).unwrap());
        if phi.input_dim() != psi.input_dim() {
            continue;
        }
        let lambda = fixed_point_projector(&phi).unwrap();
        let rho = compute_fixed_point(&lambda, &DensityMatrix::maximally_mixed(phi.input_dim())).unwrap();
        for t in [rat(1, 10), rat(1, 100)] {
            let one_minus = GaussianRational::real(rat(1, 1) - &t);
            let k = phi.k_matrix().scale(&one_minus).add(&psi.k_matrix().scale(&GaussianRational::real(t.clone()))).unwrap();
            let mixed = Superoperator::new(phi.input_dim(), k).unwrap();
            let check = epsilon_check_quantum(&mixed, &rho, &t).unwrap();
            assert!(check.holds, "trace distance {} > {t}", check.trace_distance);
        }
    }
}
