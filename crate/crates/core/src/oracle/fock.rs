//! Direct Schrödinger evolution of the coupled pair in a truncated number
//! basis `|n1, n2⟩`, `0 <= n1, n2 <= N`.
//!
//! Integration runs in the interaction picture of `H0 = ħω (n1 + n2 + 1)`,
//! where the coupling `q(t) b (a1 + a1†)(a2 + a2†)` only connects states whose
//! total quantum number differs by 0 or ±2, carrying phases `e^{±2iωτ}`. The
//! returned amplitudes are transformed back to the Schrödinger picture.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::require_settled_tails;
use crate::coupling::CouplingSignal;
use crate::error::{Error, Result};
use crate::params::{ladder_factor, ComplexValue, PhysicalParams};

/// Norm drift tolerated before the evolution is rejected.
pub const MAX_NORM_DRIFT: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FockStateVector {
    truncation: usize,
    amplitudes: Vec<ComplexValue>,
}

impl FockStateVector {
    /// `|00⟩` with occupations up to `truncation` per oscillator.
    pub fn ground(truncation: usize) -> Result<Self> {
        if truncation < 2 {
            return Err(Error::TruncationTooSmall(truncation));
        }
        let dim = (truncation + 1) * (truncation + 1);
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(FockStateVector {
            truncation,
            amplitudes,
        })
    }

    /// Pure number state `|n1, n2⟩`.
    pub fn basis(truncation: usize, n1: usize, n2: usize) -> Result<Self> {
        let mut state = Self::ground(truncation)?;
        if n1 > truncation || n2 > truncation {
            return Err(Error::param(
                "level",
                format!("({n1}, {n2}) exceeds truncation {truncation}"),
            ));
        }
        state.amplitudes[0] = Complex64::new(0.0, 0.0);
        let idx = state.index(n1, n2);
        state.amplitudes[idx] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    fn index(&self, n1: usize, n2: usize) -> usize {
        n1 * (self.truncation + 1) + n2
    }

    pub fn amplitude(&self, n1: usize, n2: usize) -> ComplexValue {
        self.amplitudes[self.index(n1, n2)]
    }

    pub fn population(&self, n1: usize, n2: usize) -> f64 {
        self.amplitude(n1, n2).norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `(n1, n2, |amplitude|²)` for every basis state.
    pub fn populations(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let side = self.truncation + 1;
        self.amplitudes
            .iter()
            .enumerate()
            .map(move |(k, a)| (k / side, k % side, a.norm_sqr()))
    }
}

/// Writes `X_I(τ) ψ` into `out`, `X = (a1 + a1†)(a2 + a2†)` in the interaction
/// picture; `phase = e^{2iωτ}`.
fn apply_coupling(
    psi: &[Complex64],
    out: &mut [Complex64],
    side: usize,
    sqrt: &[f64],
    phase: Complex64,
) {
    out.iter_mut().for_each(|o| *o = Complex64::new(0.0, 0.0));
    let top = side - 1;
    let raise_both = phase;
    let lower_both = phase.conj();
    for n1 in 0..side {
        for n2 in 0..side {
            let c = psi[n1 * side + n2];
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            if n1 < top && n2 < top {
                out[(n1 + 1) * side + n2 + 1] += c * raise_both * (sqrt[n1 + 1] * sqrt[n2 + 1]);
            }
            if n1 > 0 && n2 > 0 {
                out[(n1 - 1) * side + n2 - 1] += c * lower_both * (sqrt[n1] * sqrt[n2]);
            }
            if n1 < top && n2 > 0 {
                out[(n1 + 1) * side + n2 - 1] += c * (sqrt[n1 + 1] * sqrt[n2]);
            }
            if n1 > 0 && n2 < top {
                out[(n1 - 1) * side + n2 + 1] += c * (sqrt[n1] * sqrt[n2 + 1]);
            }
        }
    }
}

/// Evolves `|00⟩` under `H0 + q(t) y1 y2` over the signal's grid with RK4 at
/// step `dt / substeps`. Norm is not renormalized; drift above
/// [`MAX_NORM_DRIFT`] is an error.
pub fn evolve_fock(
    signal: &CouplingSignal,
    params: &PhysicalParams,
    truncation: usize,
    substeps: usize,
) -> Result<FockStateVector> {
    let mut state = FockStateVector::ground(truncation)?;
    if substeps == 0 {
        return Err(Error::param("substeps", "must be at least 1"));
    }
    require_settled_tails(signal)?;
    let grid = signal.grid();
    let side = truncation + 1;
    let dim = side * side;
    let sqrt: Vec<f64> = (0..=side).map(|n| (n as f64).sqrt()).collect();
    let omega = params.omega();
    let t0 = grid.t_start();
    // dψ/dt = -(i/ħ) q b X_I ψ
    let scale = Complex64::new(0.0, -ladder_factor(params) / params.hbar());
    let h = grid.dt() / substeps as f64;

    let mut psi = state.amplitudes.clone();
    let mut stage = vec![Complex64::new(0.0, 0.0); dim];
    let mut ks: [Vec<Complex64>; 4] = std::array::from_fn(|_| vec![Complex64::new(0.0, 0.0); dim]);
    let derivative = |t: f64, y: &[Complex64], out: &mut [Complex64]| {
        let phase = Complex64::from_polar(1.0, 2.0 * omega * (t - t0));
        apply_coupling(y, out, side, &sqrt, phase);
        let factor = scale * signal.cubic_at(t);
        out.iter_mut().for_each(|o| *o *= factor);
    };

    for k in 0..grid.n_samples() - 1 {
        let base = grid.time(k);
        for j in 0..substeps {
            let t = base + j as f64 * h;
            derivative(t, &psi, &mut ks[0]);
            for (s, (p, k1)) in stage.iter_mut().zip(psi.iter().zip(&ks[0])) {
                *s = p + k1 * (0.5 * h);
            }
            derivative(t + 0.5 * h, &stage, &mut ks[1]);
            for (s, (p, k2)) in stage.iter_mut().zip(psi.iter().zip(&ks[1])) {
                *s = p + k2 * (0.5 * h);
            }
            derivative(t + 0.5 * h, &stage, &mut ks[2]);
            for (s, (p, k3)) in stage.iter_mut().zip(psi.iter().zip(&ks[2])) {
                *s = p + k3 * h;
            }
            derivative(t + h, &stage, &mut ks[3]);
            for (i, p) in psi.iter_mut().enumerate() {
                *p += (ks[0][i] + 2.0 * ks[1][i] + 2.0 * ks[2][i] + ks[3][i]) * (h / 6.0);
            }
        }
    }

    // back to the Schrödinger picture: e^{-i E τ / ħ}
    let tau = grid.t_end() - t0;
    for n1 in 0..side {
        for n2 in 0..side {
            let quanta = (n1 + n2 + 1) as f64;
            psi[n1 * side + n2] *= Complex64::from_polar(1.0, -omega * quanta * tau);
        }
    }
    state.amplitudes = psi;
    let drift = (state.norm() - 1.0).abs();
    if drift > MAX_NORM_DRIFT {
        return Err(Error::NormDrift { drift });
    }
    Ok(state)
}

/// `⟨H0⟩ - E_00 = Σ ħω (n1 + n2) |c_{n1 n2}|²`.
pub fn delta_e_fock(state: &FockStateVector, params: &PhysicalParams) -> f64 {
    params.quantum()
        * state
            .populations()
            .map(|(n1, n2, p)| (n1 + n2) as f64 * p)
            .sum::<f64>()
}
