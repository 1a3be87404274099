//! Combinatorial kernels shared by the state constructions.
//!
//! Every amplitude is assembled as a sum of logarithms and exponentiated
//! once, so that `lambda^n phi^k` products at `n ~ 100` never underflow
//! before they are combined.

use crate::error::{domain, Result};

/// `ln C(n, k)` for `0 <= k <= n <= max_n`.
#[derive(Debug, Clone)]
pub struct LogBinomialTable {
    max_n: usize,
    // Row n starts at n(n+1)/2.
    entries: Vec<f64>,
}

impl LogBinomialTable {
    pub fn new(max_n: usize) -> Self {
        let mut entries = vec![0.0; (max_n + 1) * (max_n + 2) / 2];
        for n in 1..=max_n {
            let row = n * (n + 1) / 2;
            for k in 1..=n / 2 {
                // C(n, k) = C(n, k - 1) (n - k + 1) / k
                let prev = entries[row + k - 1];
                entries[row + k] = prev + ((n - k + 1) as f64 / k as f64).ln();
            }
            for k in n / 2 + 1..=n {
                entries[row + k] = entries[row + n - k];
            }
        }
        Self { max_n, entries }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// Natural log of the binomial coefficient. Out-of-range indices are an
    /// error rather than `-inf`.
    pub fn log_binomial(&self, n: usize, k: usize) -> Result<f64> {
        if n > self.max_n {
            return Err(domain(format!("n = {n} exceeds table size {}", self.max_n)));
        }
        if k > n {
            return Err(domain(format!("k = {k} exceeds n = {n}")));
        }
        Ok(self.get(n, k))
    }

    #[inline]
    pub(crate) fn get(&self, n: usize, k: usize) -> f64 {
        self.entries[n * (n + 1) / 2 + k]
    }

    /// Amplitude for `|n>_atom |0>_light -> |n-k>_atom |k>_light` under the
    /// effective beamsplitter: `sqrt(C(n,k)) phi^k (1 - phi^2)^(n - k)`.
    ///
    /// The map is not unitary; see [`mode_norm_sq`].
    pub fn bs_amplitude(&self, n: usize, k: usize, phi: f64) -> Result<f64> {
        check_phi(phi)?;
        self.log_binomial(n, k)?;
        Ok(self.ln_bs_amplitude(n, k, phi).exp())
    }

    #[inline]
    pub(crate) fn ln_bs_amplitude(&self, n: usize, k: usize, phi: f64) -> f64 {
        0.5 * self.get(n, k) + ln_pow(phi, k) + (n - k) as f64 * (-phi * phi).ln_1p()
    }

    /// Amplitude for `s` of `k` photons surviving a loss beamsplitter of
    /// transmittivity `eta`: `sqrt(C(k,s)) sqrt(eta)^s sqrt(1-eta)^(k-s)`.
    pub fn loss_amplitude(&self, k: usize, s: usize, eta: f64) -> Result<f64> {
        check_eta(eta)?;
        self.log_binomial(k, s)?;
        let ln = 0.5 * (self.get(k, s) + ln_pow(eta, s) + ln_pow(1.0 - eta, k - s));
        Ok(ln.exp())
    }
}

/// `k * ln(x)` with the convention `0 * ln(0) = 0`.
#[inline]
pub(crate) fn ln_pow(x: f64, k: usize) -> f64 {
    if k == 0 {
        0.0
    } else {
        k as f64 * x.ln()
    }
}

/// Squared norm of the transformed `|n>`: `(phi^2 + (1 - phi^2)^2)^n`.
///
/// Strictly below one for `n >= 1` and `0 < phi < 1`.
pub fn mode_norm_sq(n: usize, phi: f64) -> Result<f64> {
    check_phi(phi)?;
    Ok(mode_norm_base(phi).powi(n as i32))
}

/// `phi^2 + (1 - phi^2)^2`, the per-photon weight of the transformed mode.
pub fn mode_norm_base(phi: f64) -> f64 {
    let t = 1.0 - phi * phi;
    phi * phi + t * t
}

pub(crate) fn check_phi(phi: f64) -> Result<()> {
    crate::params::check_phi(phi)
}

pub(crate) fn check_eta(eta: f64) -> Result<()> {
    if !eta.is_finite() || !(0.0..=1.0).contains(&eta) {
        return Err(domain(format!("eta must lie in [0, 1], got {eta}")));
    }
    Ok(())
}
