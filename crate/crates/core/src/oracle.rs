//! Brute-force reference for the heralded states.
//!
//! Everything here is built from explicit dense state vectors over atoms,
//! light and loss ancillas, with amplitudes computed by plain products rather
//! than the log-domain kernels. Loss is realized as a beamsplitter onto an
//! ancilla mode that is traced out, and the click projector `1 - |0><0|` is
//! applied to both light modes before they are traced out.

use crate::eigen::{symmetric_eigenvalues, SymMatrix};
use crate::error::{domain, integrity, Error, Result};
use crate::fock::check_eta;
use crate::params::{check_lambda, check_phi};
use crate::state::ConditionalAtomicState;

/// Largest truncation the dense pipeline accepts.
pub const ORACLE_MAX_N: usize = 6;
/// Largest truncation for which the full partial transpose is materialized.
pub const DENSE_PT_MAX_N: usize = 10;

pub const ATOM_1: usize = 0;
pub const ATOM_2: usize = 1;
pub const LIGHT_3: usize = 2;
pub const LIGHT_4: usize = 3;
pub const ANCILLA_3: usize = 4;
pub const ANCILLA_4: usize = 5;

/// Real pure state on a tensor product of truncated Fock spaces. Mode 0 is
/// the most significant index.
#[derive(Debug, Clone)]
pub struct DenseMultiModeState {
    mode_dims: Vec<usize>,
    amplitudes: Vec<f64>,
}

impl DenseMultiModeState {
    pub fn vacuum(mode_dims: Vec<usize>) -> Self {
        let size = mode_dims.iter().product();
        let mut amplitudes = vec![0.0; size];
        amplitudes[0] = 1.0;
        Self { mode_dims, amplitudes }
    }

    pub fn zeros(mode_dims: Vec<usize>) -> Self {
        let size = mode_dims.iter().product();
        Self { mode_dims, amplitudes: vec![0.0; size] }
    }

    pub fn mode_dims(&self) -> &[usize] {
        &self.mode_dims
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn flatten(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.mode_dims.len());
        index.iter().zip(&self.mode_dims).fold(0, |acc, (&i, &d)| {
            debug_assert!(i < d);
            acc * d + i
        })
    }

    pub fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut index = vec![0; self.mode_dims.len()];
        for (slot, &d) in index.iter_mut().zip(&self.mode_dims).rev() {
            *slot = flat % d;
            flat /= d;
        }
        index
    }

    pub fn get(&self, index: &[usize]) -> f64 {
        self.amplitudes[self.flatten(index)]
    }

    pub fn set(&mut self, index: &[usize], value: f64) {
        let flat = self.flatten(index);
        self.amplitudes[flat] = value;
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum()
    }

    /// Applies `|n>_src |0>_dst -> sum_k coeff(n, k) |n - k>_src |k>_dst`.
    /// Components with `dst` already occupied are not in the map's domain.
    pub fn apply_pair_map(&self, src: usize, dst: usize, coeff: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let mut out = Self::zeros(self.mode_dims.clone());
        for (flat, &amp) in self.amplitudes.iter().enumerate() {
            if amp == 0.0 {
                continue;
            }
            let mut index = self.unflatten(flat);
            if index[dst] != 0 {
                return Err(integrity(format!("mode {dst} is not in vacuum before the map")));
            }
            let n = index[src];
            for k in 0..=n {
                if k >= self.mode_dims[dst] {
                    return Err(integrity(format!("mode {dst} is too small for {k} quanta")));
                }
                index[src] = n - k;
                index[dst] = k;
                let target = self.flatten(&index);
                out.amplitudes[target] += amp * coeff(n, k);
            }
        }
        Ok(out)
    }

    /// Element `<ket| Tr_rest |psi><psi| |bra>` of the reduced density matrix
    /// on `keep`, with the modes in `clicked` restricted to nonzero occupation
    /// (the on-off click projector) before the trace.
    pub fn reduced_element(&self, keep: &[usize], ket: &[usize], bra: &[usize], clicked: &[usize]) -> f64 {
        let traced: Vec<usize> = (0..self.mode_dims.len()).filter(|m| !keep.contains(m)).collect();
        let rest_dims: Vec<usize> = traced.iter().map(|&m| self.mode_dims[m]).collect();
        let rest_size: usize = rest_dims.iter().product();
        let mut ket_index = vec![0; self.mode_dims.len()];
        let mut bra_index = vec![0; self.mode_dims.len()];
        for (i, &m) in keep.iter().enumerate() {
            ket_index[m] = ket[i];
            bra_index[m] = bra[i];
        }
        let mut acc = 0.0;
        for mut r in 0..rest_size {
            let mut skip = false;
            for (&m, &d) in traced.iter().zip(&rest_dims).rev() {
                let occ = r % d;
                r /= d;
                if occ == 0 && clicked.contains(&m) {
                    skip = true;
                }
                ket_index[m] = occ;
                bra_index[m] = occ;
            }
            if !skip {
                acc += self.get(&ket_index) * self.get(&bra_index);
            }
        }
        acc
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn check_oracle_size(n_max: usize) -> Result<()> {
    if n_max > ORACLE_MAX_N {
        return Err(Error::CostGuard { requested: n_max, limit: ORACLE_MAX_N });
    }
    if n_max < 1 {
        return Err(domain("n_max must be at least 1"));
    }
    Ok(())
}

/// Joint state of atoms, light and loss ancillas directly before detection.
pub fn oracle_joint_state(lambda: f64, phi: f64, eta: f64, n_max: usize) -> Result<DenseMultiModeState> {
    check_lambda(lambda)?;
    check_phi(phi)?;
    check_eta(eta)?;
    check_oracle_size(n_max)?;
    let mut psi = DenseMultiModeState::zeros(vec![n_max + 1; 6]);
    for n in 0..=n_max {
        psi.set(&[n, n, 0, 0, 0, 0], (1.0 - lambda * lambda).sqrt() * lambda.powi(n as i32));
    }
    let t = 1.0 - phi * phi;
    let splitter = |n: usize, k: usize| binomial(n, k).sqrt() * phi.powi(k as i32) * t.powi((n - k) as i32);
    psi = psi.apply_pair_map(ATOM_1, LIGHT_3, splitter)?;
    psi = psi.apply_pair_map(ATOM_2, LIGHT_4, splitter)?;
    // j photons reflected into the ancilla, k - j transmitted to the detector
    let (nu, mu) = (eta.sqrt(), (1.0 - eta).sqrt());
    let loss = |k: usize, j: usize| binomial(k, j).sqrt() * nu.powi((k - j) as i32) * mu.powi(j as i32);
    psi = psi.apply_pair_map(LIGHT_3, ANCILLA_3, loss)?;
    psi = psi.apply_pair_map(LIGHT_4, ANCILLA_4, loss)?;
    Ok(psi)
}

/// Unnormalized atomic state heralded by clicks at both detectors.
pub fn oracle_conditional_state(lambda: f64, phi: f64, eta: f64, n_max: usize) -> Result<ConditionalAtomicState> {
    let psi = oracle_joint_state(lambda, phi, eta, n_max)?;
    let mut state = ConditionalAtomicState::zeros(n_max);
    let keep = [ATOM_1, ATOM_2];
    let clicked = [LIGHT_3, LIGHT_4];
    for a in 0..=n_max {
        for b in 0..=n_max {
            for c in 0..=n_max {
                for d in 0..=n_max {
                    let v = psi.reduced_element(&keep, &[a, b], &[c, d], &clicked);
                    if a as isize - b as isize != c as isize - d as isize {
                        if v != 0.0 {
                            return Err(integrity(format!("coherence ({a},{b},{c},{d}) = {v:e} off the selection rule")));
                        }
                        continue;
                    }
                    if (a, b) <= (c, d) {
                        state.insert(a, b, c, d, v)?;
                    }
                }
            }
        }
    }
    Ok(state)
}

pub fn oracle_success_probability(lambda: f64, phi: f64, eta: f64, n_max: usize) -> Result<f64> {
    Ok(oracle_conditional_state(lambda, phi, eta, n_max)?.trace())
}

/// Full partial transpose on mode 2, indexed by `a (n_max + 1) + b`.
pub fn dense_partial_transpose(state: &ConditionalAtomicState) -> Result<SymMatrix> {
    let n_max = state.n_max();
    if n_max > DENSE_PT_MAX_N {
        return Err(Error::CostGuard { requested: n_max, limit: DENSE_PT_MAX_N });
    }
    let dim = n_max + 1;
    Ok(SymMatrix::from_fn(dim * dim, |row, col| {
        let (a, b) = (row / dim, row % dim);
        let (c, d) = (col / dim, col % dim);
        state.get(a, d, c, b)
    }))
}

/// Negativity of a normalized state from the spectrum of the full partial
/// transpose.
pub fn dense_negativity(state: &ConditionalAtomicState) -> Result<f64> {
    if !state.is_normalized() {
        return Err(domain("negativity requires a normalized state"));
    }
    let values = symmetric_eigenvalues(&dense_partial_transpose(state)?)?;
    Ok(values.iter().filter(|&&v| v < 0.0).map(|v| -v).sum())
}
