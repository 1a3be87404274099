//! Conversions between the entangling coupling strength, the squeezing
//! parameter and the two-mode squeezed state weight.

use crate::error::{domain, Result};

/// Beamsplitter strengths above this value leave the regime where the
/// double-pass interaction is known to approximate a beamsplitter with
/// fidelity around 0.99.
pub const PHI_FIDELITY_BOUND: f64 = 0.35;

/// The scalar triple `(kappa, r, lambda)`.
///
/// `r = ln(1 + 2 kappa^2) / 2` and `lambda = tanh(r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingParams {
    pub kappa: f64,
    pub r: f64,
    pub lambda: f64,
}

impl SqueezingParams {
    pub fn from_kappa(kappa: f64) -> Result<Self> {
        squeezing_from_kappa(kappa)
    }

    pub fn from_r(r: f64) -> Result<Self> {
        let lambda = lambda_from_r(r)?;
        Ok(Self { kappa: kappa_from_r(r)?, r, lambda })
    }
}

pub fn squeezing_from_kappa(kappa: f64) -> Result<SqueezingParams> {
    if !kappa.is_finite() {
        return Err(domain(format!("kappa must be finite, got {kappa}")));
    }
    if kappa < 0.0 {
        return Err(domain(format!("kappa must be nonnegative, got {kappa}")));
    }
    let r = 0.5 * (2.0 * kappa * kappa).ln_1p();
    let lambda = lambda_from_r(r)?;
    Ok(SqueezingParams { kappa, r, lambda })
}

/// `tanh(r)`, kept strictly below one.
///
/// For large `r` the double-precision `tanh` rounds to exactly 1.0 although
/// the true value is smaller; the result is then the largest double below 1.
pub fn lambda_from_r(r: f64) -> Result<f64> {
    check_r(r)?;
    let lambda = r.tanh();
    Ok(if lambda >= 1.0 { 1.0 - f64::EPSILON / 2.0 } else { lambda })
}

/// Inverse of `r = ln(1 + 2 kappa^2) / 2`.
pub fn kappa_from_r(r: f64) -> Result<f64> {
    check_r(r)?;
    Ok((0.5 * (2.0 * r).exp_m1()).sqrt())
}

fn check_r(r: f64) -> Result<()> {
    if !r.is_finite() || r < 0.0 {
        return Err(domain(format!("r must be finite and nonnegative, got {r}")));
    }
    Ok(())
}

/// Validates a TMSS weight: `0 <= lambda < 1`.
pub fn check_lambda(lambda: f64) -> Result<()> {
    if !lambda.is_finite() || !(0.0..1.0).contains(&lambda) {
        return Err(domain(format!("lambda must lie in [0, 1), got {lambda}")));
    }
    Ok(())
}

/// Strength of the effective atom-light beamsplitter, `0 <= phi < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionStrength(f64);

impl InteractionStrength {
    pub fn new(phi: f64) -> Result<Self> {
        check_phi(phi)?;
        Ok(Self(phi))
    }

    pub fn phi(self) -> f64 {
        self.0
    }

    /// True when the beamsplitter approximation is used past its validated range.
    pub fn beyond_fidelity_bound(self) -> bool {
        self.0 > PHI_FIDELITY_BOUND
    }
}

pub fn check_phi(phi: f64) -> Result<()> {
    if !phi.is_finite() || !(0.0..1.0).contains(&phi) {
        return Err(domain(format!("phi must lie in [0, 1), got {phi}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_coupling_is_vacuum() {
        let p = squeezing_from_kappa(0.0).unwrap();
        assert_eq!(p.r, 0.0);
        assert_eq!(p.lambda, 0.0);
    }

    #[test]
    fn unit_coupling() {
        let p = squeezing_from_kappa(1.0).unwrap();
        assert!((p.r - 0.5 * 3f64.ln()).abs() < 1e-15);
        // tanh(ln(x)/2) = (x - 1)/(x + 1)
        assert!((p.lambda - 0.5).abs() < 1e-15);
    }

    #[test]
    fn strong_coupling() {
        let p = squeezing_from_kappa(10.0).unwrap();
        assert!((p.r - 0.5 * 201f64.ln()).abs() < 1e-14);
        assert!((p.lambda - 200.0 / 202.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_kappa() {
        assert!(matches!(squeezing_from_kappa(-1e-3), Err(crate::Error::Domain(_))));
        assert!(squeezing_from_kappa(f64::NAN).is_err());
        assert!(squeezing_from_kappa(f64::INFINITY).is_err());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_from_r(0.0).unwrap(), 0.0);
        assert!((lambda_from_r(0.5 * 3f64.ln()).unwrap() - 0.5).abs() < 1e-15);
        let big = lambda_from_r(20.0).unwrap();
        assert!((1.0 - 1e-8..1.0).contains(&big));
        assert!(lambda_from_r(-0.1).is_err());
        assert!(lambda_from_r(f64::NAN).is_err());
    }

    #[test]
    fn lambda_range() {
        assert!(check_lambda(0.0).is_ok());
        assert!(check_lambda(0.999).is_ok());
        assert!(check_lambda(1.0).is_err());
        assert!(check_lambda(-0.1).is_err());
    }

    #[test]
    fn phi_warning_threshold() {
        assert!(!InteractionStrength::new(0.35).unwrap().beyond_fidelity_bound());
        assert!(InteractionStrength::new(0.36).unwrap().beyond_fidelity_bound());
        assert!(InteractionStrength::new(1.0).is_err());
        assert!(InteractionStrength::new(-0.01).is_err());
    }

    #[test]
    fn from_r_populates_all_fields() {
        let p = SqueezingParams::from_r(0.7).unwrap();
        assert!((p.r - 0.5 * (2.0 * p.kappa * p.kappa).ln_1p()).abs() < 1e-12);
        assert!((p.lambda - 0.7f64.tanh()).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn kappa_round_trip(kappa in 0.0f64..100.0) {
            let p = squeezing_from_kappa(kappa).unwrap();
            let back = kappa_from_r(p.r).unwrap();
            prop_assert!((back - kappa).abs() <= 1e-10 * kappa.max(1e-300) || (back - kappa).abs() < 1e-15);
            prop_assert!((p.lambda - p.r.tanh()).abs() <= 1e-12);
        }

        #[test]
        fn lambda_increases_with_kappa(kappa in 1e-3f64..20.0, step in 1e-3f64..1.0) {
            let lo = squeezing_from_kappa(kappa).unwrap().lambda;
            let hi = squeezing_from_kappa(kappa + step).unwrap().lambda;
            prop_assert!(hi > lo);
        }
    }
}
