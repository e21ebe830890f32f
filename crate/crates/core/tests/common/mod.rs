//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use ctcsim::circuits::{parse_program, CtcProgram};
use ctcsim::superop::{unvec, DensityMatrix};
use ctcsim::algebra::{rat, rat_int};
use ctcsim::{GaussianRational, Matrix};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn g(s: &str) -> GaussianRational {
    s.parse().unwrap()
}

/// Pythagorean triples give rational points on the unit circle.
const TRIPLES: [(i64, i64, i64); 4] = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25)];

/// A unit-modulus Gaussian rational.
pub fn random_phase(rng: &mut impl Rng) -> GaussianRational {
    let (a, b, c) = *TRIPLES.choose(rng).unwrap();
    match rng.gen_range(0..6) {
        0 => g("1"),
        1 => g("-1"),
        2 => g("i"),
        3 => g("-i"),
        4 => GaussianRational::new(rat(a, c), rat(b, c)),
        _ => GaussianRational::new(rat(b, c), rat(-a, c)),
    }
}

/// Rational rotation times a diagonal phase: a random exactly unitary 2x2.
pub fn random_unitary_1q(rng: &mut impl Rng) -> Matrix {
    let (a, b, c) = *TRIPLES.choose(rng).unwrap();
    let (cs, sn) = (GaussianRational::from_ratio(a, c), GaussianRational::from_ratio(b, c));
    let rot = Matrix::from_rows(vec![vec![cs.clone(), -&sn], vec![sn, cs]]).unwrap();
    let u = random_phase(rng);
    let zero = GaussianRational::from_int(0);
    let phase = Matrix::from_rows(vec![vec![g("1"), zero.clone()], vec![zero, u]]).unwrap();
    phase.mul(&rot).unwrap()
}

/// Controlled rotation or a product of two single-qubit unitaries.
pub fn random_unitary_2q(rng: &mut impl Rng) -> Matrix {
    if rng.gen_bool(0.5) {
        let u = random_unitary_1q(rng);
        Matrix::from_fn(4, 4, |i, j| match (i < 2, j < 2) {
            (true, true) => GaussianRational::from_int((i == j) as i64),
            (false, false) => u[(i - 2, j - 2)].clone(),
            _ => GaussianRational::from_int(0),
        })
    } else {
        random_unitary_1q(rng).kron(&random_unitary_1q(rng))
    }
}

pub fn matrix_literal(m: &Matrix) -> String {
    let rows: Vec<String> =
        (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")).collect();
    format!("[{}]", rows.join("; "))
}

fn wire(q: usize, k: usize) -> String {
    if k < q {
        format!("ctc[{k}]")
    } else {
        format!("cr[{}]", k - q)
    }
}

/// Source text of a random quantum program on `q` CTC and `r` CR qubits
/// mixing built-in gates with rational defgates.
pub fn random_quantum_source(rng: &mut impl Rng, q: usize, r: usize) -> String {
    let total = q + r;
    let mut src = format!("quantum\nregisters ctc={q} cr={r}\n");
    let mut defs = 0;
    for _ in 0..rng.gen_range(1..=6) {
        let mut wires: Vec<usize> = (0..total).collect();
        wires.shuffle(rng);
        let (name, arity) = match rng.gen_range(0..10) {
            0..=2 => {
                defs += 1;
                let name = format!("U{defs}");
                src += &format!("defgate {name} = {}\n", matrix_literal(&random_unitary_1q(rng)));
                (name, 1)
            }
            3 | 4 if total >= 2 => {
                defs += 1;
                let name = format!("U{defs}");
                src += &format!("defgate {name} = {}\n", matrix_literal(&random_unitary_2q(rng)));
                (name, 2)
            }
            5 if total >= 3 => ("TOFFOLI".into(), 3),
            6 | 7 if total >= 2 => (["CNOT", "CZ", "SWAP"].choose(rng).unwrap().to_string(), 2),
            _ => (["X", "Y", "Z", "S"].choose(rng).unwrap().to_string(), 1),
        };
        let targets: Vec<String> = wires[..arity].iter().map(|&k| wire(q, k)).collect();
        src += &format!("apply {name} {}\n", targets.join(", "));
    }
    src += &format!("output cr[{}]\n", rng.gen_range(0..r));
    src
}

pub fn random_quantum_program(rng: &mut impl Rng, max_q: usize, max_r: usize) -> (String, CtcProgram) {
    let q = rng.gen_range(1..=max_q);
    let r = rng.gen_range(1..=max_r);
    let src = random_quantum_source(rng, q, r);
    let p = parse_program(&src).unwrap_or_else(|e| panic!("generated program does not parse: {e}\n{src}"));
    (src, p)
}

/// Fixed points of `K` from the exact nullspace of `K - I`, reshaped to
/// `n x n` operators (a basis of the fixed-point space).
pub fn nullspace_fixed_points(k: &Matrix, n: usize) -> Vec<Matrix> {
    k.sub(&Matrix::identity(n * n)).unwrap().nullspace().iter().map(|v| unvec(v, n).unwrap()).collect()
}

/// A spread of seeds: basis states, the maximally mixed state and a random
/// rational pure state.
pub fn seeds(rng: &mut impl Rng, n: usize) -> Vec<DensityMatrix> {
    let mut out: Vec<DensityMatrix> = (0..n).map(|k| DensityMatrix::basis(n, k)).collect();
    out.push(DensityMatrix::maximally_mixed(n));
    let amps: Vec<GaussianRational> = (0..n)
        .map(|_| GaussianRational::new(rat_int(rng.gen_range(-3..=3)), rat_int(rng.gen_range(-3..=3))))
        .collect();
    if amps.iter().any(|a| a.norm_sqr() != rat_int(0)) {
        out.push(DensityMatrix::from_pure(&amps).unwrap());
    }
    out
}

/// Cyclic points of `f` on `0..size`, by iterating `size` times from every
/// point and then walking one full loop.
pub fn brute_force_cyclic(f: impl Fn(usize) -> usize, size: usize) -> Vec<bool> {
    let mut cyclic = vec![false; size];
    for x in 0..size {
        let mut y = x;
        for _ in 0..size {
            y = f(y);
        }
        let start = y;
        loop {
            cyclic[y] = true;
            y = f(y);
            if y == start {
                break;
            }
        }
    }
    cyclic
}
