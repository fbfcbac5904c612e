//! Non-perturbative references for the dissipated energy.
//!
//! Both oracles solve the full coupled problem `H0 + q(t) y1 y2` without
//! expanding in `q`:
//!
//! * [`modes`] evolves the classical mode functions of the normal modes
//!   `y± = (y1 ± y2)/√2`, whose frequencies are `Ω±² = ω² ± q(t)/m`, and reads
//!   off Bogoliubov coefficients;
//! * [`fock`] integrates the Schrödinger equation in a truncated number basis
//!   of the two oscillators.

pub mod fock;
pub mod modes;

pub use fock::{delta_e_fock, evolve_fock, FockStateVector};
pub use modes::{delta_e_modes, evolve_mode, BogoliubovPair, ModeFunctionState, ModeSign};

use crate::coupling::CouplingSignal;
use crate::error::{Error, Result};
use crate::spectral::DEFAULT_TAIL_THRESHOLD;

/// Both oracles need free asymptotics at the grid ends.
pub(crate) fn require_settled_tails(signal: &CouplingSignal) -> Result<()> {
    if signal.tails_settled(DEFAULT_TAIL_THRESHOLD) {
        Ok(())
    } else {
        Err(Error::TailNotSettled {
            edge: signal.edge_magnitude(),
            threshold: DEFAULT_TAIL_THRESHOLD * signal.max_abs(),
        })
    }
}

/// One classical fourth-order Runge-Kutta step for `y' = f(t, y)` on a
/// fixed-size state.
pub(crate) fn rk4_step<const N: usize, F>(y: &mut [num_complex::Complex64; N], t: f64, h: f64, f: F)
where
    F: Fn(f64, &[num_complex::Complex64; N]) -> [num_complex::Complex64; N],
{
    let axpy = |y: &[num_complex::Complex64; N], k: &[num_complex::Complex64; N], a: f64| {
        let mut out = *y;
        for (o, k) in out.iter_mut().zip(k) {
            *o += k * a;
        }
        out
    };
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &axpy(y, &k1, 0.5 * h));
    let k3 = f(t + 0.5 * h, &axpy(y, &k2, 0.5 * h));
    let k4 = f(t + h, &axpy(y, &k3, h));
    for i in 0..N {
        y[i] += (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (h / 6.0);
    }
}
