//! Classical simulation of the quantum contraction algorithm: each contraction step is
//! dilated to a unitary and the designated matrix element is estimated with Hadamard tests.

use crate::scalars::Scalar;
use crate::tensornet::{spectral_norm, NetError, TensorNetwork};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_MAX_QUBITS: usize = 20;
/// A step whose normalized matrix is this close to unitary needs no ancilla.
pub const UNITARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QsimError {
    #[error("cannot dilate a zero matrix")]
    ZeroMatrix,
    #[error("circuit needs {qubits} qubits, simulator limit is {limit}")]
    TooWide { qubits: usize, limit: usize },
    #[error("epsilon must be positive, got {0}")]
    BadEpsilon(f64),
    #[error(transparent)]
    Net(#[from] NetError),
}

/// Unitary `[[AΣB†, ASA†], [BSB†, −BΣA†]]` with `S = √(1−Σ²)`, where `AΣB†` is the SVD of
/// `M/‖M‖` padded to a square. The top-left block is `M/‖M‖`.
pub fn dilate(m: &DMatrix<f64>) -> Result<DMatrix<f64>, QsimError> {
    let norm = spectral_norm(m);
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(QsimError::ZeroMatrix);
    }
    let n = m.nrows().max(m.ncols());
    let mut sq = DMatrix::zeros(n, n);
    sq.view_mut((0, 0), (m.nrows(), m.ncols())).copy_from(&(m / norm));
    let svd = sq.svd(true, true);
    let a = svd.u.unwrap();
    let b = svd.v_t.unwrap().transpose();
    let sigma = svd.singular_values.map(|s| s.min(1.0));
    let comp = sigma.map(|s| (1.0 - s * s).max(0.0).sqrt());
    let s_diag = DMatrix::from_diagonal(&sigma);
    let c_diag = DMatrix::from_diagonal(&comp);
    let mut u = DMatrix::zeros(2 * n, 2 * n);
    u.view_mut((0, 0), (n, n)).copy_from(&(&a * &s_diag * b.transpose()));
    u.view_mut((0, n), (n, n)).copy_from(&(&a * &c_diag * a.transpose()));
    u.view_mut((n, 0), (n, n)).copy_from(&(&b * &c_diag * b.transpose()));
    u.view_mut((n, n), (n, n)).copy_from(&(-(&b * &s_diag * a.transpose())));
    Ok(u)
}

/// Spectral distance of `u` from being unitary.
pub fn unitarity_error(u: &DMatrix<f64>) -> f64 {
    let g = u.transpose() * u - DMatrix::identity(u.ncols(), u.ncols());
    spectral_norm(&g)
}

#[derive(Debug, Clone)]
pub struct DilatedStep {
    pub vertex: usize,
    pub norm: f64,
    /// `M_j/‖M_j‖` on the padded main register.
    pub block: DMatrix<f64>,
    /// Acts on the main register, or on (ancilla, main) with the ancilla as the high bit.
    pub unitary: DMatrix<f64>,
    pub ancilla: Option<usize>,
}

/// Product of dilated steps; the target is the all-zeros to all-zeros matrix element.
#[derive(Debug, Clone)]
pub struct DilatedCircuit {
    pub main_qubits: usize,
    pub ancillas: usize,
    pub steps: Vec<DilatedStep>,
    /// Product of the step norms.
    pub delta: f64,
}

impl DilatedCircuit {
    pub fn qubits(&self) -> usize {
        self.main_qubits + self.ancillas
    }

    /// Largest deviation of any step unitary from unitarity.
    pub fn unitarity_error(&self) -> f64 {
        self.steps.iter().map(|s| unitarity_error(&s.unitary)).fold(0.0, f64::max)
    }

    /// Largest deviation of a step's designated block from its normalized step matrix.
    pub fn block_error(&self) -> f64 {
        let n = 1 << self.main_qubits;
        self.steps
            .iter()
            .map(|s| spectral_norm(&(s.unitary.view((0, 0), (n, n)) - &s.block)))
            .fold(0.0, f64::max)
    }

    /// Applies every step to |0…0⟩ and returns the amplitude of |0…0⟩.
    pub fn entry(&self) -> f64 {
        let n = 1usize << self.main_qubits;
        let mut state = vec![0.0; n << self.ancillas];
        state[0] = 1.0;
        let mut buf = Vec::new();
        for step in &self.steps {
            match step.ancilla {
                None => {
                    for chunk in state.chunks_mut(n) {
                        apply(&step.unitary, chunk, &mut buf);
                    }
                }
                Some(k) => {
                    let stride = n << k;
                    for base in 0..(n << self.ancillas) {
                        // Visit each (other ancillas) block once, from its bit-k-clear half.
                        if base % n != 0 || base & stride != 0 {
                            continue;
                        }
                        let mut v: Vec<f64> = state[base..base + n].to_vec();
                        v.extend_from_slice(&state[base + stride..base + stride + n]);
                        apply(&step.unitary, &mut v, &mut buf);
                        state[base..base + n].copy_from_slice(&v[..n]);
                        state[base + stride..base + stride + n].copy_from_slice(&v[n..]);
                    }
                }
            }
        }
        state[0]
    }
}

fn apply(u: &DMatrix<f64>, v: &mut [f64], buf: &mut Vec<f64>) {
    buf.clear();
    buf.extend((0..u.nrows()).map(|r| (0..u.ncols()).map(|c| u[(r, c)] * v[c]).sum::<f64>()));
    v.copy_from_slice(buf);
}

/// Dilates each contraction step of `plan`, padding every open-wire space to one main register.
pub fn compile<S: Scalar>(net: &TensorNetwork<S>, plan: &[usize], max_qubits: usize) -> Result<DilatedCircuit, QsimError> {
    let cap = 1usize << max_qubits.min(usize::BITS as usize - 2);
    let mats = net.step_matrices(plan, cap)?;
    let widest = mats.iter().map(|(m, _)| m.nrows().max(m.ncols())).max().unwrap_or(1);
    let main_qubits = widest.next_power_of_two().trailing_zeros() as usize;
    let n = 1usize << main_qubits;
    let mut steps = Vec::with_capacity(mats.len());
    let mut ancillas = 0;
    let mut delta = 1.0;
    for ((m, norm), &vertex) in mats.into_iter().zip(plan) {
        if !(norm > 0.0) {
            return Err(QsimError::ZeroMatrix);
        }
        delta *= norm;
        let mut block = DMatrix::zeros(n, n);
        block.view_mut((0, 0), (m.nrows(), m.ncols())).copy_from(&(m / norm));
        let (unitary, ancilla) = if unitarity_error(&block) <= UNITARY_TOL {
            (block.clone(), None)
        } else {
            ancillas += 1;
            (dilate(&block)?, Some(ancillas - 1))
        };
        steps.push(DilatedStep { vertex, norm, block, unitary, ancilla });
        if main_qubits + ancillas > max_qubits {
            return Err(QsimError::TooWide { qubits: main_qubits + ancillas, limit: max_qubits });
        }
    }
    Ok(DilatedCircuit { main_qubits, ancillas, steps, delta })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HadamardEstimate {
    /// `Δ` times the estimated entry.
    pub x: Complex64,
    pub entry: Complex64,
    /// Shots per part.
    pub samples: u64,
}

/// Shots per part needed for additive error `ε` with failure probability at most 1/4.
pub fn hadamard_samples(eps: f64) -> u64 {
    (8.0 / (eps * eps)).ceil() as u64
}

/// Samples the control-qubit outcomes of the real and imaginary Hadamard tests.
pub fn hadamard_estimate(c: &DilatedCircuit, eps: f64, seed: u64) -> Result<HadamardEstimate, QsimError> {
    if !(eps > 0.0) {
        return Err(QsimError::BadEpsilon(eps));
    }
    let w = c.entry();
    let samples = hadamard_samples(eps);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p_re = ((1.0 + w) / 2.0).clamp(0.0, 1.0);
    // The entry is real, so the imaginary test's outcome is a fair coin.
    let p_im = 0.5;
    let n0 = (0..samples).filter(|_| rng.gen_bool(p_re)).count() as f64;
    let m0 = (0..samples).filter(|_| rng.gen_bool(p_im)).count() as f64;
    let s = samples as f64;
    let entry = Complex64::new(2.0 * n0 / s - 1.0, 1.0 - 2.0 * m0 / s);
    Ok(HadamardEstimate { x: entry * c.delta, entry, samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{QuadScalar, Scalar};
    use crate::tensornet::{Endpoint, Tensor};

    #[test]
    fn dilate_identity_and_diagonal() {
        let u = dilate(&DMatrix::identity(2, 2)).unwrap();
        assert!(unitarity_error(&u) < 1e-12);
        assert!((u.view((0, 0), (2, 2)) - DMatrix::<f64>::identity(2, 2)).abs().max() < 1e-12);
        let u = dilate(&DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 1.0]))).unwrap();
        assert!(unitarity_error(&u) < 1e-12);
        assert!((u[(0, 0)] - 1.0).abs() < 1e-12 && (u[(1, 1)] - 0.5).abs() < 1e-12);
        assert!(u[(0, 1)].abs() < 1e-12 && u[(1, 0)].abs() < 1e-12);
        assert_eq!(dilate(&DMatrix::zeros(2, 3)), Err(QsimError::ZeroMatrix));
    }

    #[test]
    fn rectangular_dilation() {
        let m = DMatrix::from_row_slice(1, 3, &[1.0, 2.0, 2.0]);
        let u = dilate(&m).unwrap();
        assert_eq!(u.nrows(), 6);
        assert!(unitarity_error(&u) < 1e-12);
        assert!((u[(0, 1)] - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn trace_of_identity() {
        let mut net = TensorNetwork::new();
        let id = |i: &[usize]| if i[0] == i[1] { QuadScalar::one() } else { QuadScalar::zero() };
        let a = net.add_tensor(Tensor::from_fn(&[2, 2], id));
        let b = net.add_tensor(Tensor::from_fn(&[2, 2], id));
        net.connect(Endpoint { vertex: a, axis: 0 }, Endpoint { vertex: b, axis: 0 }).unwrap();
        net.connect(Endpoint { vertex: a, axis: 1 }, Endpoint { vertex: b, axis: 1 }).unwrap();
        let c = compile(&net, &[0, 1], DEFAULT_MAX_QUBITS).unwrap();
        assert!((c.delta - 2.0).abs() < 1e-12);
        assert!((c.entry() * c.delta - 2.0).abs() < 1e-9);
        assert!(c.unitarity_error() < 1e-9 && c.block_error() < 1e-9);
        let e1 = hadamard_estimate(&c, 0.1, 7).unwrap();
        assert_eq!(e1, hadamard_estimate(&c, 0.1, 7).unwrap());
    }

    #[test]
    fn width_limit() {
        let mut net = TensorNetwork::new();
        let id = |i: &[usize]| if i[0] == i[1] { QuadScalar::one() } else { QuadScalar::zero() };
        let a = net.add_tensor(Tensor::from_fn(&[2, 2], id));
        let b = net.add_tensor(Tensor::from_fn(&[2, 2], id));
        net.connect(Endpoint { vertex: a, axis: 0 }, Endpoint { vertex: b, axis: 0 }).unwrap();
        net.connect(Endpoint { vertex: a, axis: 1 }, Endpoint { vertex: b, axis: 1 }).unwrap();
        assert!(matches!(compile(&net, &[0, 1], 2), Err(QsimError::TooWide { .. })));
    }
}
