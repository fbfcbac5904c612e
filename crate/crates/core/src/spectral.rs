//! Fourier transform `q̂(ω) = ∫ q(t) exp(-iωt) dt` of the coupling.
//!
//! Sampled signals use trapezoidal quadrature on their uniform grid; the
//! ramp and Gaussian profiles also have closed forms. Only isolated
//! frequencies are ever needed, so there is no FFT.
//!
//! For the abrupt exponential ramp the product `q̂(ω) q̂(-ω)` evaluates to
//! `γ² / (η² + ω²)²`. Some printed versions of this result drop the outer
//! square in the denominator; everything here computes the product from the
//! transform itself.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coupling::{CouplingProfile, CouplingSignal};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::params::ComplexValue;

/// Default tail threshold, relative to `max|q|`.
pub const DEFAULT_TAIL_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralValue {
    pub omega: f64,
    pub value: ComplexValue,
    /// Set when the signal has not decayed below the tail threshold at the
    /// grid edges, so truncation of the infinite integral may matter.
    pub tail_warning: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierOptions {
    /// Edge magnitude allowed before warning, relative to `max|q|`.
    pub tail_threshold: f64,
    pub execution: Execution,
}

impl Default for FourierOptions {
    fn default() -> Self {
        FourierOptions {
            tail_threshold: DEFAULT_TAIL_THRESHOLD,
            execution: Execution::default(),
        }
    }
}

/// Trapezoidal `q̂(ω)` of a sampled signal with default options.
pub fn fourier_numeric(signal: &CouplingSignal, omega: f64) -> Result<SpectralValue> {
    fourier_numeric_with(signal, omega, &FourierOptions::default())
}

pub fn fourier_numeric_with(
    signal: &CouplingSignal,
    omega: f64,
    options: &FourierOptions,
) -> Result<SpectralValue> {
    let values = signal.values();
    if values.is_empty() {
        return Err(Error::EmptySignal);
    }
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteSample { index });
    }
    if !omega.is_finite() {
        return Err(Error::param(
            "omega",
            format!("must be finite, got {omega}"),
        ));
    }
    let grid = signal.grid();
    let n = values.len();
    // Evaluate at |ω| and conjugate for negative frequencies: exact Hermitian
    // symmetry for real q.
    let w = omega.abs();
    let sum = exec::chunked_sum(n, options.execution, |range| {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in range {
            let q = values[i];
            if q == 0.0 {
                continue;
            }
            let weight = if i == 0 || i + 1 == n { 0.5 } else { 1.0 };
            let (s, c) = (w * grid.time(i)).sin_cos();
            acc += Complex64::new(c, -s) * (weight * q);
        }
        acc
    });
    let mut value = sum * grid.dt();
    if omega < 0.0 {
        value = value.conj();
    }
    Ok(SpectralValue {
        omega,
        value,
        tail_warning: !signal.tails_settled(options.tail_threshold),
    })
}

/// `q̂(ω)` at many frequencies over one signal, in input order.
pub fn fourier_numeric_many(
    signal: &CouplingSignal,
    omegas: &[f64],
    options: &FourierOptions,
) -> Result<Vec<SpectralValue>> {
    let inner = FourierOptions {
        execution: Execution::Sequential,
        ..*options
    };
    exec::map_ordered(omegas, options.execution, |&w| {
        fourier_numeric_with(signal, w, &inner)
    })
    .into_iter()
    .collect()
}

/// Closed-form `q̂(ω)` for the ramp and Gaussian profiles.
pub fn fourier_analytic(profile: &CouplingProfile, omega: f64) -> Result<SpectralValue> {
    let i = Complex64::i();
    let value = match *profile {
        CouplingProfile::ExponentialRamp { gamma, eta } => {
            let z = eta + i * omega;
            gamma / (z * z)
        }
        CouplingProfile::SymmetricRamp { gamma, eta } => {
            let d = eta * eta + omega * omega;
            -4.0 * i * eta * omega * gamma / (d * d)
        }
        CouplingProfile::GaussianPulse { q0, tau } => {
            let x = omega * tau;
            Complex64::new(q0 * tau * PI.sqrt() * (-x * x / 4.0).exp(), 0.0)
        }
        CouplingProfile::Flyby { .. } | CouplingProfile::Sampled { .. } => {
            return Err(Error::UnsupportedProfile {
                operation: "analytic Fourier transform",
                variant: profile.kind(),
            })
        }
    };
    Ok(SpectralValue {
        omega,
        value,
        tail_warning: false,
    })
}

/// Anything with a Fourier transform: sampled signals (numerically) and
/// closed-form profiles (analytically).
pub trait Spectrum {
    fn transform(&self, omega: f64) -> Result<SpectralValue>;
}

impl Spectrum for CouplingSignal {
    fn transform(&self, omega: f64) -> Result<SpectralValue> {
        fourier_numeric(self, omega)
    }
}

impl Spectrum for CouplingProfile {
    fn transform(&self, omega: f64) -> Result<SpectralValue> {
        fourier_analytic(self, omega)
    }
}

/// `q̂(ω) q̂(-ω)`, which for real `q` equals `|q̂(ω)|²`.
pub fn power_at<S: Spectrum + ?Sized>(source: &S, omega: f64) -> Result<f64> {
    let plus = source.transform(omega)?.value;
    let minus = source.transform(-omega)?.value;
    Ok((plus * minus).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::sample;
    use crate::params::TimeGrid;
    use approx::assert_relative_eq;

    #[test]
    fn zero_signal_transforms_to_zero() {
        let s = CouplingSignal::zeros(TimeGrid::new(-5.0, 5.0, 101).unwrap());
        let v = fourier_numeric(&s, 1.3).unwrap();
        assert_eq!(v.value, Complex64::new(0.0, 0.0));
        assert!(!v.tail_warning);
        assert_eq!(power_at(&s, 0.7).unwrap(), 0.0);
    }

    #[test]
    fn gaussian_quadrature_matches_closed_form() {
        let p = CouplingProfile::GaussianPulse { q0: 1.0, tau: 1.0 };
        let s = sample(&p, &TimeGrid::new(-12.0, 12.0, 4801).unwrap()).unwrap();
        let v = fourier_numeric(&s, 2.0).unwrap();
        let expected = PI.sqrt() * (-1.0f64).exp();
        assert!((v.value - Complex64::new(expected, 0.0)).norm() < 1e-8);
        assert_relative_eq!(expected, 0.652049, max_relative = 1e-6);
    }

    #[test]
    fn exponential_ramp_quadrature_matches_closed_form() {
        let p = CouplingProfile::ExponentialRamp {
            gamma: 1.0,
            eta: 1.0,
        };
        let s = sample(&p, &TimeGrid::new(0.0, 40.0, 16001).unwrap()).unwrap();
        let v = fourier_numeric(&s, 1.0).unwrap();
        assert!(
            (v.value - Complex64::new(0.0, -0.5)).norm() < 1e-6,
            "{}",
            v.value
        );
    }

    #[test]
    fn analytic_examples() {
        let v = |p: CouplingProfile, w| fourier_analytic(&p, w).unwrap().value;
        assert_eq!(
            v(
                CouplingProfile::ExponentialRamp {
                    gamma: 1.0,
                    eta: 1.0
                },
                0.0
            ),
            Complex64::new(1.0, 0.0)
        );
        assert_eq!(
            v(
                CouplingProfile::SymmetricRamp {
                    gamma: 1.0,
                    eta: 1.0
                },
                0.0
            )
            .norm(),
            0.0
        );
        assert_relative_eq!(
            v(CouplingProfile::GaussianPulse { q0: 2.0, tau: 1.0 }, 0.0).re,
            2.0 * PI.sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn analytic_rejects_flyby_and_sampled() {
        let f = CouplingProfile::Flyby {
            charge: 1.0,
            d: 1.0,
            v: 1.0,
        };
        assert!(matches!(
            fourier_analytic(&f, 1.0),
            Err(Error::UnsupportedProfile { .. })
        ));
        let s = CouplingSignal::zeros(TimeGrid::new(0.0, 1.0, 2).unwrap()).to_profile();
        assert!(fourier_analytic(&s, 1.0).is_err());
    }

    #[test]
    fn power_examples() {
        let ramp = CouplingProfile::ExponentialRamp {
            gamma: 1.0,
            eta: 1.0,
        };
        assert_relative_eq!(power_at(&ramp, 1.0).unwrap(), 0.25, max_relative = 1e-15);
        let gauss = CouplingProfile::GaussianPulse { q0: 1.0, tau: 1.0 };
        assert_relative_eq!(
            power_at(&gauss, 2.0).unwrap(),
            PI * (-2.0f64).exp(),
            max_relative = 1e-15
        );
        let s = sample(&gauss, &TimeGrid::new(-12.0, 12.0, 4801).unwrap()).unwrap();
        assert_relative_eq!(power_at(&s, 2.0).unwrap(), 0.425168, max_relative = 1e-6);
    }

    #[test]
    fn truncated_tail_warns() {
        let p = CouplingProfile::GaussianPulse { q0: 1.0, tau: 1.0 };
        let s = sample(&p, &TimeGrid::new(-2.0, 2.0, 401).unwrap()).unwrap();
        assert!(fourier_numeric(&s, 1.0).unwrap().tail_warning);
    }

    #[test]
    fn many_frequencies_match_single_calls() {
        let p = CouplingProfile::Flyby {
            charge: 1.0,
            d: 1.0,
            v: 1.0,
        };
        let s = sample(&p, &TimeGrid::new(-50.0, 50.0, 10001).unwrap()).unwrap();
        let omegas = [-2.0, -0.5, 0.0, 1.0, 3.0];
        let many = fourier_numeric_many(&s, &omegas, &FourierOptions::default()).unwrap();
        for (w, v) in omegas.iter().zip(&many) {
            assert_eq!(v.value, fourier_numeric(&s, *w).unwrap().value);
        }
    }
}
