//! Exact mode-function evolution of the two normal modes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{require_settled_tails, rk4_step};
use crate::coupling::CouplingSignal;
use crate::error::{Error, Result};
use crate::params::{ComplexValue, PhysicalParams};

/// Which normal mode: `y+` sees `+q/m`, `y-` sees `-q/m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModeSign {
    Plus,
    Minus,
}

impl ModeSign {
    pub fn factor(self) -> f64 {
        match self {
            ModeSign::Plus => 1.0,
            ModeSign::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeFunctionState {
    pub f: ComplexValue,
    pub fdot: ComplexValue,
}

impl ModeFunctionState {
    /// Positive-frequency free solution `e^{-iωt}` at time `t`.
    pub fn incoming(omega: f64, t: f64) -> Self {
        let f = Complex64::from_polar(1.0, -omega * t);
        ModeFunctionState {
            f,
            fdot: Complex64::new(0.0, -omega) * f,
        }
    }

    /// `i (f conj(ḟ) - conj(f) ḟ)`; equals `-2ω` for the incoming solution
    /// and is conserved by the exact dynamics.
    pub fn wronskian(&self) -> f64 {
        let z = self.f * self.fdot.conj() - self.f.conj() * self.fdot;
        (Complex64::i() * z).re
    }

    /// Decomposes `f = α e^{-iωt} + β e^{iωt}` at time `t`.
    pub fn project(&self, omega: f64, t: f64) -> BogoliubovPair {
        let i = Complex64::i();
        let alpha = (self.f * omega + i * self.fdot) / (2.0 * omega)
            * Complex64::from_polar(1.0, omega * t);
        let beta = (self.f * omega - i * self.fdot) / (2.0 * omega)
            * Complex64::from_polar(1.0, -omega * t);
        BogoliubovPair { alpha, beta }
    }
}

/// Map between incoming and outgoing free solutions; `|β|²` is the number of
/// quanta created in the mode from its ground state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BogoliubovPair {
    pub alpha: ComplexValue,
    pub beta: ComplexValue,
}

impl BogoliubovPair {
    /// `|α|² - |β|² - 1`, zero for exact evolution.
    pub fn normalization_defect(&self) -> f64 {
        self.alpha.norm_sqr() - self.beta.norm_sqr() - 1.0
    }

    pub fn occupation(&self) -> f64 {
        self.beta.norm_sqr()
    }
}

/// Integrates `f̈ + (ω² ± q(t)/m) f = 0` across the signal's grid with one RK4
/// step per sample interval, starting from the incoming solution.
///
/// Fails with [`Error::InvertedMode`] if `Ω²` is not positive at some sample.
pub fn evolve_mode(
    signal: &CouplingSignal,
    params: &PhysicalParams,
    sign: ModeSign,
) -> Result<BogoliubovPair> {
    evolve_mode_state(signal, params, sign).map(|(_, pair)| pair)
}

/// As [`evolve_mode`], also returning the final mode-function state.
pub fn evolve_mode_state(
    signal: &CouplingSignal,
    params: &PhysicalParams,
    sign: ModeSign,
) -> Result<(ModeFunctionState, BogoliubovPair)> {
    require_settled_tails(signal)?;
    let grid = signal.grid();
    let omega = params.omega();
    let omega_sq = omega * omega;
    let coupling = sign.factor() / params.mass();
    for (k, &q) in signal.values().iter().enumerate() {
        let w2 = omega_sq + coupling * q;
        if w2.is_nan() || w2 <= 0.0 {
            return Err(Error::InvertedMode {
                t: grid.time(k),
                omega_sq: w2,
            });
        }
    }
    let start = ModeFunctionState::incoming(omega, grid.t_start());
    let mut y = [start.f, start.fdot];
    let h = grid.dt();
    for k in 0..grid.n_samples() - 1 {
        rk4_step(&mut y, grid.time(k), h, |t, y| {
            let w2 = omega_sq + coupling * signal.cubic_at(t);
            [y[1], -y[0] * w2]
        });
    }
    let end = ModeFunctionState {
        f: y[0],
        fdot: y[1],
    };
    Ok((end, end.project(omega, grid.t_end())))
}

/// `ħω (|β+|² + |β-|²)`: energy gained by the initially empty pair.
pub fn delta_e_modes(
    plus: &BogoliubovPair,
    minus: &BogoliubovPair,
    params: &PhysicalParams,
) -> f64 {
    params.quantum() * (plus.occupation() + minus.occupation())
}
