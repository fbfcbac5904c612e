//! Runs several dissipation routes on one sampled coupling and collects
//! them into a [`DissipationReport`].

use serde::{Deserialize, Serialize};

use crate::coupling::CouplingSignal;
use crate::dissipation::{
    barton_amplitude, delta_e_barton, delta_e_hb, DissipationReport, VALIDITY_THRESHOLD,
};
use crate::error::Result;
use crate::exec::{self, Execution};
use crate::oracle::{delta_e_fock, delta_e_modes, evolve_fock, evolve_mode, ModeSign};
use crate::params::{ladder_factor, PhysicalParams};
use crate::spectral::DEFAULT_TAIL_THRESHOLD;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Barton,
    Hb,
    ModeOracle,
    FockOracle,
}

impl Route {
    pub const ALL: [Route; 4] = [
        Route::Barton,
        Route::Hb,
        Route::ModeOracle,
        Route::FockOracle,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FockSettings {
    pub truncation: usize,
    pub substeps: usize,
}

impl Default for FockSettings {
    fn default() -> Self {
        FockSettings {
            truncation: 10,
            substeps: 1,
        }
    }
}

/// Evaluates each requested route on `signal`. The validity flag is derived
/// from `B_1100 = 4 b² |I(∞)|²` whichever routes are selected.
pub fn compare_routes(
    signal: &CouplingSignal,
    params: &PhysicalParams,
    routes: &[Route],
    fock: &FockSettings,
    execution: Execution,
) -> Result<DissipationReport> {
    let wants = |r| routes.contains(&r);
    let b = ladder_factor(params);
    let transition_probability = 4.0 * b * b * barton_amplitude(signal, params)?.norm_sqr();

    let perturbative = || -> Result<(Option<f64>, Option<f64>)> {
        let barton = wants(Route::Barton)
            .then(|| delta_e_barton(signal, params))
            .transpose()?;
        let hb = wants(Route::Hb)
            .then(|| delta_e_hb(signal, params))
            .transpose()?;
        Ok((barton, hb))
    };
    let modes = || -> Result<Option<f64>> {
        if !wants(Route::ModeOracle) {
            return Ok(None);
        }
        let (plus, minus) = exec::join(
            execution,
            || evolve_mode(signal, params, ModeSign::Plus),
            || evolve_mode(signal, params, ModeSign::Minus),
        );
        Ok(Some(delta_e_modes(&plus?, &minus?, params)))
    };
    let fock_route = || -> Result<Option<f64>> {
        if !wants(Route::FockOracle) {
            return Ok(None);
        }
        let state = evolve_fock(signal, params, fock.truncation, fock.substeps)?;
        Ok(Some(delta_e_fock(&state, params)))
    };

    let ((first, mode), fock_value) = exec::join(
        execution,
        || exec::join(execution, perturbative, modes),
        fock_route,
    );
    let (barton, hb) = first?;
    Ok(DissipationReport {
        delta_e_barton: barton,
        delta_e_hb: hb,
        delta_e_mode_oracle: mode?,
        delta_e_fock_oracle: fock_value?,
        relative_spread: 0.0,
        validity_flag: transition_probability > VALIDITY_THRESHOLD,
        transition_probability,
        tail_warning: !signal.tails_settled(DEFAULT_TAIL_THRESHOLD),
        grid: *signal.grid(),
    }
    .with_spread())
}
