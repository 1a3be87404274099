//! Two-mode squeezed input, the post-beamsplitter amplitude table, and the
//! atomic state conditioned on clicks at both on-off detectors.

use rayon::prelude::*;

use crate::error::{domain, integrity, Result};
use crate::fock::{ln_pow, mode_norm_base, LogBinomialTable};
use crate::params::{check_lambda, check_phi};

/// Truncation used when nothing else is requested.
pub const DEFAULT_N_MAX: usize = 100;

/// Truncated two-mode squeezed state `sqrt(1 - lambda^2) sum_n lambda^n |n>|n>`.
#[derive(Debug, Clone)]
pub struct TmssVector {
    lambda: f64,
    coeffs: Vec<f64>,
}

pub fn build_tmss(lambda: f64, n_max: usize) -> Result<TmssVector> {
    check_lambda(lambda)?;
    if n_max < 1 {
        return Err(domain("n_max must be at least 1"));
    }
    let coeffs = (0..=n_max).map(|n| ln_tmss_coeff(lambda, n).exp()).collect();
    Ok(TmssVector { lambda, coeffs })
}

fn ln_tmss_coeff(lambda: f64, n: usize) -> f64 {
    0.5 * (-lambda * lambda).ln_1p() + ln_pow(lambda, n)
}

impl TmssVector {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Probability mass lost to the truncation, `lambda^(2 (n_max + 1))`.
    pub fn tail_mass(&self) -> f64 {
        self.lambda.powi(2 * (self.n_max() as i32 + 1))
    }

    /// The (unconditioned) atomic density matrix `|TMSS><TMSS|`.
    pub fn density(&self) -> ConditionalAtomicState {
        let n_max = self.n_max();
        let mut state = ConditionalAtomicState::zeros(n_max);
        let block = &mut state.offsets[n_max];
        for a in 0..=n_max {
            for c in 0..=n_max {
                block.data[a * block.len + c] = self.coeffs[a] * self.coeffs[c];
            }
        }
        state.norm = state.trace();
        state
    }
}

/// Amplitudes of `|n-k1>_1 |n-k2>_2 |k1>_3 |k2>_4` after both atomic modes
/// pass the effective beamsplitter, for `0 <= k1, k2 <= n <= n_max`.
///
/// The table is unnormalized: its squared norm is
/// `(1 - lambda^2) / (1 - lambda^2 (phi^2 + (1 - phi^2)^2)^2)` up to truncation.
#[derive(Debug, Clone)]
pub struct JointAmplitudeTable {
    n_max: usize,
    lambda: f64,
    phi: f64,
    amps: Vec<f64>,
}

pub fn apply_effective_beamsplitter(tmss: &TmssVector, phi: f64) -> Result<JointAmplitudeTable> {
    check_phi(phi)?;
    let n_max = tmss.n_max();
    let dim = n_max + 1;
    let binom = LogBinomialTable::new(n_max);
    let mut amps = vec![0.0; dim * dim * dim];
    amps.par_chunks_mut(dim * dim).enumerate().for_each(|(n, slab)| {
        let ln_c = ln_tmss_coeff(tmss.lambda, n);
        let per_mode: Vec<f64> = (0..=n).map(|k| binom.ln_bs_amplitude(n, k, phi)).collect();
        for k1 in 0..=n {
            for k2 in 0..=n {
                slab[k1 * dim + k2] = (ln_c + per_mode[k1] + per_mode[k2]).exp();
            }
        }
    });
    Ok(JointAmplitudeTable { n_max, lambda: tmss.lambda, phi, amps })
}

impl JointAmplitudeTable {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Zero whenever `k1 > n` or `k2 > n`.
    #[inline]
    pub fn amp(&self, n: usize, k1: usize, k2: usize) -> f64 {
        let dim = self.n_max + 1;
        if n > self.n_max || k1 > n || k2 > n {
            return 0.0;
        }
        self.amps[(n * dim + k1) * dim + k2]
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a * a).sum()
    }
}

/// Dense `(a, c)` matrix for one coherence offset `a - b = c - d`.
#[derive(Debug, Clone)]
struct OffsetBlock {
    first: usize,
    len: usize,
    data: Vec<f64>,
}

/// Two-mode atomic density matrix `rho[(a,b),(c,d)] = <a|<b| rho |c>|d>`.
///
/// Only entries obeying `a - b = c - d` can be stored. They are grouped by
/// that offset, each group a dense symmetric matrix over `(a, c)`.
#[derive(Debug, Clone)]
pub struct ConditionalAtomicState {
    n_max: usize,
    offsets: Vec<OffsetBlock>,
    norm: f64,
    normalized: bool,
}

impl ConditionalAtomicState {
    pub fn zeros(n_max: usize) -> Self {
        let offsets = (0..=2 * n_max)
            .map(|i| {
                let delta = i as isize - n_max as isize;
                let len = n_max + 1 - delta.unsigned_abs();
                OffsetBlock { first: delta.max(0) as usize, len, data: vec![0.0; len * len] }
            })
            .collect();
        Self { n_max, offsets, norm: 0.0, normalized: false }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// The trace before normalization, i.e. the success probability of the
    /// heralding event that produced this state.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    fn locate(&self, a: usize, b: usize, c: usize, d: usize) -> Option<(usize, usize)> {
        let n = self.n_max;
        if a > n || b > n || c > n || d > n {
            return None;
        }
        let delta = a as isize - b as isize;
        if delta != c as isize - d as isize {
            return None;
        }
        let block = &self.offsets[(delta + n as isize) as usize];
        Some(((delta + n as isize) as usize, (a - block.first) * block.len + (c - block.first)))
    }

    /// `rho[(a,b),(c,d)]`; zero outside the stored pattern.
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        match self.locate(a, b, c, d) {
            Some((blk, idx)) => self.offsets[blk].data[idx],
            None => 0.0,
        }
    }

    /// Writes `rho[(a,b),(c,d)]` and its mirror `rho[(c,d),(a,b)]`.
    pub fn insert(&mut self, a: usize, b: usize, c: usize, d: usize, value: f64) -> Result<()> {
        if a as isize - b as isize != c as isize - d as isize {
            return Err(integrity(format!(
                "entry ({a},{b},{c},{d}) violates the selection rule a - b = c - d"
            )));
        }
        let (blk, idx) = self
            .locate(a, b, c, d)
            .ok_or_else(|| domain(format!("entry ({a},{b},{c},{d}) exceeds n_max = {}", self.n_max)))?;
        let (_, mirror) = self.locate(c, d, a, b).expect("mirror of a valid entry");
        self.offsets[blk].data[idx] = value;
        self.offsets[blk].data[mirror] = value;
        self.norm = self.trace();
        Ok(())
    }

    pub fn trace(&self) -> f64 {
        self.offsets
            .iter()
            .map(|b| (0..b.len).map(|i| b.data[i * b.len + i]).sum::<f64>())
            .sum()
    }

    /// Copy divided by its trace. Fails on a zero-probability state.
    pub fn normalized(&self) -> Result<Self> {
        let tr = self.trace();
        if tr <= 0.0 || tr.is_nan() {
            return Err(domain("cannot normalize a state with zero trace"));
        }
        let mut out = self.clone();
        for b in &mut out.offsets {
            b.data.iter_mut().for_each(|x| *x /= tr);
        }
        out.normalized = true;
        Ok(out)
    }

    /// All stored entries as `((a, b, c, d), value)`, zero values included.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize, usize), f64)> + '_ {
        let n = self.n_max as isize;
        self.offsets.iter().enumerate().flat_map(move |(i, blk)| {
            let delta = i as isize - n;
            (0..blk.len).flat_map(move |ia| {
                (0..blk.len).map(move |ic| {
                    let a = blk.first + ia;
                    let c = blk.first + ic;
                    let b = (a as isize - delta) as usize;
                    let d = (c as isize - delta) as usize;
                    ((a, b, c, d), blk.data[ia * blk.len + ic])
                })
            })
        })
    }

    /// Dense `(n_max+1)^2` square matrix indexed by `a (n_max+1) + b`.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let dim = self.n_max + 1;
        let mut out = vec![vec![0.0; dim * dim]; dim * dim];
        for ((a, b, c, d), v) in self.entries() {
            out[a * dim + b][c * dim + d] = v;
        }
        out
    }
}

/// Builds the heralded atomic state
/// `sum_{k1,k2} w(k1,k2) |psi_{k1 k2}><psi_{k1 k2}|`, where `psi_{k1 k2}` is
/// the atomic part of the table with `k1`, `k2` photons in the light modes.
pub(crate) fn condition_with_weights<W>(table: &JointAmplitudeTable, weight: W) -> ConditionalAtomicState
where
    W: Fn(usize, usize) -> f64 + Sync,
{
    let n_max = table.n_max();
    let mut state = ConditionalAtomicState::zeros(n_max);
    let n = n_max as isize;
    state.offsets.par_iter_mut().enumerate().for_each(|(i, blk)| {
        let delta = i as isize - n;
        // photon numbers (u, u + delta), both at least one
        let u_min = (1 - delta).max(1) as usize;
        if u_min > n_max {
            return;
        }
        let weights: Vec<f64> = (0..=n_max)
            .map(|u| {
                let v = u as isize + delta;
                if u < u_min || v < 0 || v as usize > n_max {
                    0.0
                } else {
                    weight(u, v as usize)
                }
            })
            .collect();
        // profile[ia][u] = amp(a + u, u, u + delta)
        let profiles: Vec<Vec<f64>> = (0..blk.len)
            .map(|ia| {
                let a = blk.first + ia;
                (0..=n_max)
                    .map(|u| {
                        if u < u_min || a + u > n_max || weights[u] == 0.0 {
                            0.0
                        } else {
                            table.amp(a + u, u, (u as isize + delta) as usize)
                        }
                    })
                    .collect()
            })
            .collect();
        for ia in 0..blk.len {
            let a = blk.first + ia;
            for ic in ia..blk.len {
                let u_max = n_max - (blk.first + ic).max(a);
                let mut acc = 0.0;
                for u in u_min..=u_max {
                    acc += weights[u] * profiles[ia][u] * profiles[ic][u];
                }
                blk.data[ia * blk.len + ic] = acc;
                blk.data[ic * blk.len + ia] = acc;
            }
        }
    });
    state.norm = state.trace();
    state
}

/// Atomic state conditioned on clicks at both ideal on-off detectors.
/// Unnormalized; its trace is the success probability.
pub fn condition_on_clicks_ideal(table: &JointAmplitudeTable) -> ConditionalAtomicState {
    condition_with_weights(table, |_, _| 1.0)
}

/// Closed-form probability that both ideal on-off detectors click.
pub fn success_probability_ideal(lambda: f64, phi: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_phi(phi)?;
    let t = 1.0 - phi * phi;
    Ok(three_term_success(lambda, mode_norm_base(phi), t * t))
}

/// `(1-l^2) [1/(1 - l^2 M^2) - 2/(1 - l^2 M L) + 1/(1 - l^2 L^2)]`, where
/// `M` and `L` are the per-photon weights summed over all outcomes and over
/// the no-click outcome respectively.
pub(crate) fn three_term_success(lambda: f64, all: f64, no_click: f64) -> f64 {
    let l2 = lambda * lambda;
    let pref = 1.0 - l2;
    pref / (1.0 - l2 * all * all) - 2.0 * pref / (1.0 - l2 * no_click * all)
        + pref / (1.0 - l2 * no_click * no_click)
}
