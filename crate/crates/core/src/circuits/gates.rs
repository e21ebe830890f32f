use crate::algebra::{GaussianRational, Matrix};

/// A named gate with a `2^k x 2^k` matrix acting on `k` wires. The first
/// target wire is the most significant bit of the gate's local index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumGate {
    pub name: String,
    pub matrix: Matrix,
    pub arity: usize,
}

impl QuantumGate {
    /// Builds a gate, inferring the arity from the matrix size. Returns `None`
    /// if the matrix is not square with a power-of-two dimension ≥ 2.
    pub fn new(name: impl Into<String>, matrix: Matrix) -> Option<Self> {
        let dim = matrix.rows();
        if !matrix.is_square() || dim < 2 || !dim.is_power_of_two() {
            return None;
        }
        Some(Self { name: name.into(), arity: dim.trailing_zeros() as usize, matrix })
    }

    pub fn dagger(&self) -> Self {
        Self { name: format!("{}^dag", self.name), matrix: self.matrix.dagger(), arity: self.arity }
    }

    pub fn is_unitary(&self) -> bool {
        self.matrix.dagger().mul(&self.matrix).ok() == Some(Matrix::identity(self.matrix.rows()))
    }
}

pub const BUILTIN_NAMES: [&str; 8] = ["X", "Y", "Z", "S", "CNOT", "CZ", "SWAP", "TOFFOLI"];

fn permutation(dim: usize, f: impl Fn(usize) -> usize) -> Matrix {
    let mut m = Matrix::zeros(dim, dim);
    for col in 0..dim {
        m[(f(col), col)] = GaussianRational::from_int(1);
    }
    m
}

fn diag(entries: &[GaussianRational]) -> Matrix {
    let mut m = Matrix::zeros(entries.len(), entries.len());
    for (i, e) in entries.iter().enumerate() {
        m[(i, i)] = e.clone();
    }
    m
}

/// The built-in gate library. All entries are Gaussian integers.
pub fn builtin(name: &str) -> Option<QuantumGate> {
    let one = GaussianRational::from_int(1);
    let i = GaussianRational::i();
    let matrix = match name {
        "X" => permutation(2, |b| b ^ 1),
        "Y" => Matrix::from_rows(vec![
            vec![GaussianRational::from_int(0), -&i],
            vec![i.clone(), GaussianRational::from_int(0)],
        ])
        .ok()?,
        "Z" => diag(&[one.clone(), -&one]),
        "S" => diag(&[one.clone(), i]),
        "CNOT" => permutation(4, |b| if b & 2 != 0 { b ^ 1 } else { b }),
        "CZ" => diag(&[one.clone(), one.clone(), one.clone(), -&one]),
        "SWAP" => permutation(4, |b| ((b & 1) << 1) | (b >> 1)),
        "TOFFOLI" => permutation(8, |b| if b & 6 == 6 { b ^ 1 } else { b }),
        _ => return None,
    };
    QuantumGate::new(name, matrix)
}

pub fn is_builtin(name: &str) -> bool {
    BUILTIN_NAMES.contains(&name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_unitary() {
        for name in BUILTIN_NAMES {
            let g = builtin(name).unwrap();
            assert!(g.is_unitary(), "{name}");
        }
        assert_eq!(builtin("TOFFOLI").unwrap().arity, 3);
        assert!(builtin("H").is_none());
    }

    #[test]
    fn cnot_flips_target_when_control_set() {
        let cnot = builtin("CNOT").unwrap().matrix;
        // |10> -> |11>
        assert_eq!(cnot[(3, 2)], GaussianRational::from_int(1));
        assert_eq!(cnot[(2, 3)], GaussianRational::from_int(1));
        assert_eq!(cnot[(0, 0)], GaussianRational::from_int(1));
    }

    #[test]
    fn rational_rotation_is_unitary() {
        let r = QuantumGate::new("R", Matrix::parse_rows(&[&["3/5", "-4/5"], &["4/5", "3/5"]])).unwrap();
        assert!(r.is_unitary());
        assert!(QuantumGate::new("bad", Matrix::zeros(3, 3)).is_none());
    }
}
