//! Energy dissipated at zero temperature, first-order in the coupling.
//!
//! Two formulations are kept deliberately separate:
//!
//! * the time-domain route accumulates
//!   `I(t) = -(i/2ħ) ∫_{-∞}^t q(t') exp(2iωt') dt'` and gives
//!   `ΔE = 8ħω b² |I(∞)|²`;
//! * the transition route writes the interaction as `-A q(t)` with
//!   `A = -y1 y2`, takes the single open channel `|00⟩ → |11⟩` with matrix
//!   element `A_1100 = -b`, and gives `ΔE = 2ħω B_1100` with
//!   `B_1100 = |A_1100|² |q̂(-2ω)|² / ħ²`.
//!
//! They share only the sampled coupling. Since `q` is real only `|q̂|`
//! enters, so the sign convention of the transition frequency is immaterial;
//! the literal `q̂(-2ω)` is used.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coupling::{sample, CouplingProfile, CouplingSignal};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::params::{ladder_factor, ComplexValue, PhysicalParams, TimeGrid};
use crate::spectral::{fourier_numeric_with, FourierOptions, Spectrum, DEFAULT_TAIL_THRESHOLD};

/// Transition probability above which first-order results are flagged.
pub const VALIDITY_THRESHOLD: f64 = 0.1;

/// Guard against `0/0` in relative comparisons.
pub const SPREAD_FLOOR: f64 = 1e-300;

/// Number states `|n1, n2⟩` of the uncoupled pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Level {
    pub n1: u32,
    pub n2: u32,
}

impl Level {
    pub const fn new(n1: u32, n2: u32) -> Self {
        Level { n1, n2 }
    }

    /// Unperturbed energy `ħω (n1 + n2 + 1)`.
    pub fn energy(&self, params: &PhysicalParams) -> f64 {
        params.quantum() * (self.n1 + self.n2 + 1) as f64
    }
}

/// First-order amplitude `b_nm` for `from → to`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionAmplitude {
    pub from: Level,
    pub to: Level,
    pub amplitude: ComplexValue,
}

impl TransitionAmplitude {
    pub fn probability(&self) -> f64 {
        self.amplitude.norm_sqr()
    }

    /// False once `|b|² > 0.1`; the amplitude is still reported.
    pub fn is_perturbative(&self) -> bool {
        self.probability() <= VALIDITY_THRESHOLD
    }
}

/// Cumulative `I(t_k)` on every grid node, trapezoidal in time.
pub fn barton_running_integral(
    signal: &CouplingSignal,
    params: &PhysicalParams,
) -> Vec<ComplexValue> {
    let grid = signal.grid();
    let dt = grid.dt();
    let two_omega = 2.0 * params.omega();
    let prefactor = Complex64::new(0.0, -0.5 / params.hbar());
    let integrand = |k: usize| {
        let q = signal.values()[k];
        prefactor * Complex64::from_polar(q, two_omega * grid.time(k))
    };
    let mut out = Vec::with_capacity(grid.n_samples());
    let mut running = Complex64::new(0.0, 0.0);
    let mut previous = integrand(0);
    out.push(running);
    for k in 1..grid.n_samples() {
        let current = integrand(k);
        running += (previous + current) * (0.5 * dt);
        out.push(running);
        previous = current;
    }
    out
}

/// `I(∞)`, evaluated in the time domain.
pub fn barton_amplitude(signal: &CouplingSignal, params: &PhysicalParams) -> Result<ComplexValue> {
    if signal.values().is_empty() {
        return Err(Error::EmptySignal);
    }
    Ok(*barton_running_integral(signal, params)
        .last()
        .expect("grid has at least two samples"))
}

/// `8ħω b² |I(∞)|²`.
pub fn delta_e_barton(signal: &CouplingSignal, params: &PhysicalParams) -> Result<f64> {
    let amplitude = barton_amplitude(signal, params)?;
    let b = ladder_factor(params);
    Ok(8.0 * params.quantum() * b * b * amplitude.norm_sqr())
}

/// `A_1100 = ⟨11| -y1 y2 |00⟩ = -b`.
pub fn matrix_element_a1100(params: &PhysicalParams) -> f64 {
    -ladder_factor(params)
}

/// `b_1100 = -(1/iħ) A_1100 q̂(-2ω)`.
pub fn hb_transition_coefficient(
    qhat_at_minus_2omega: ComplexValue,
    params: &PhysicalParams,
) -> ComplexValue {
    let minus_one_over_i_hbar = Complex64::new(0.0, 1.0 / params.hbar());
    minus_one_over_i_hbar * matrix_element_a1100(params) * qhat_at_minus_2omega
}

/// `B_1100 = |b_1100|²` from any transform source.
pub fn transition_probability_hb<S: Spectrum + ?Sized>(
    source: &S,
    params: &PhysicalParams,
) -> Result<f64> {
    let qhat = source.transform(-2.0 * params.omega())?.value;
    Ok(hb_transition_coefficient(qhat, params).norm_sqr())
}

/// `(E_11 - E_00) B_1100 = 2ħω B_1100`.
pub fn delta_e_hb<S: Spectrum + ?Sized>(source: &S, params: &PhysicalParams) -> Result<f64> {
    let gap = Level::new(1, 1).energy(params) - Level::new(0, 0).energy(params);
    Ok(gap * transition_probability_hb(source, params)?)
}

/// `ΔE = Σ (E_n - E_m) P_m B_nm` over the supplied channels.
///
/// `levels` assigns energies, `occupation` initial probabilities (must sum to
/// one); every state named by a coefficient needs an energy.
pub fn dissipation_from_transitions(
    levels: &[(Level, f64)],
    occupation: &[(Level, f64)],
    coefficients: &[TransitionAmplitude],
) -> Result<f64> {
    let energies: BTreeMap<Level, f64> = levels.iter().copied().collect();
    let mut probabilities = BTreeMap::new();
    let mut total = 0.0;
    for &(level, p) in occupation {
        if p.is_nan() || p < 0.0 {
            return Err(Error::InvalidOccupation(format!(
                "probability of {level:?} is {p}"
            )));
        }
        *probabilities.entry(level).or_insert(0.0) += p;
        total += p;
    }
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidOccupation(format!(
            "probabilities sum to {total}, not 1"
        )));
    }
    let energy = |level: &Level| {
        energies
            .get(level)
            .copied()
            .ok_or_else(|| Error::InvalidOccupation(format!("no energy given for {level:?}")))
    };
    coefficients.iter().try_fold(0.0, |acc, c| {
        let p = probabilities.get(&c.from).copied().unwrap_or(0.0);
        Ok(acc + (energy(&c.to)? - energy(&c.from)?) * p * c.probability())
    })
}

/// Energies from each route on one grid, and how far apart they are.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DissipationReport {
    pub delta_e_barton: Option<f64>,
    pub delta_e_hb: Option<f64>,
    pub delta_e_mode_oracle: Option<f64>,
    pub delta_e_fock_oracle: Option<f64>,
    /// Largest pairwise relative difference among the populated entries.
    pub relative_spread: f64,
    /// `B_1100 > 0.1`: first-order theory is strained.
    pub validity_flag: bool,
    pub transition_probability: f64,
    pub tail_warning: bool,
    pub grid: TimeGrid,
}

impl DissipationReport {
    pub fn entries(&self) -> impl Iterator<Item = f64> {
        [
            self.delta_e_barton,
            self.delta_e_hb,
            self.delta_e_mode_oracle,
            self.delta_e_fock_oracle,
        ]
        .into_iter()
        .flatten()
    }

    /// Recomputes `relative_spread` from the populated entries.
    pub fn with_spread(mut self) -> Self {
        self.relative_spread = relative_spread(&self.entries().collect::<Vec<_>>());
        self
    }
}

/// `max_{i<j} |x_i - x_j| / max(|x_i|, |x_j|, floor)`.
pub fn relative_spread(values: &[f64]) -> f64 {
    let mut spread: f64 = 0.0;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            let scale = a.abs().max(b.abs()).max(SPREAD_FLOOR);
            spread = spread.max((a - b).abs() / scale);
        }
    }
    spread
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::param(
            "scan",
            "need at least two matching points to fit",
        ));
    }
    if xs.iter().chain(ys).any(|v| v.is_nan() || *v <= 0.0) {
        return Err(Error::param(
            "scan",
            "log-log fit needs strictly positive values",
        ));
    }
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::param("scan", "abscissae must not all coincide"));
    }
    Ok(sxy / sxx)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSettings {
    /// Edge magnitude allowed relative to `max|q|`.
    pub tail_threshold: f64,
    /// Fixed spacing; by default the largest power of two not exceeding
    /// `min(1/(16ω), 1/(16η))`, which keeps every node exactly representable.
    pub dt: Option<f64>,
    pub execution: Execution,
}

impl Default for ScanSettings {
    fn default() -> Self {
        ScanSettings {
            tail_threshold: DEFAULT_TAIL_THRESHOLD,
            dt: None,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub eta: f64,
    pub delta_e: f64,
    /// Energy per decay time `1/η`, the dissipation rate.
    pub delta_e_times_eta: f64,
    pub n_samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdiabaticScan {
    pub points: Vec<ScanPoint>,
    /// `d ln ΔE / d ln η`.
    pub slope: f64,
    /// `d ln (ΔE η) / d ln η`.
    pub slope_times_eta: f64,
}

/// Grid wide enough that a ramp of rate `eta` has decayed below
/// `tail_threshold` of its peak at both edges.
pub fn ramp_grid(
    profile: &CouplingProfile,
    params: &PhysicalParams,
    settings: &ScanSettings,
) -> Result<TimeGrid> {
    let (eta, symmetric) = match *profile {
        CouplingProfile::ExponentialRamp { eta, .. } => (eta, false),
        CouplingProfile::SymmetricRamp { eta, .. } => (eta, true),
        _ => {
            return Err(Error::UnsupportedProfile {
                operation: "adiabatic scan",
                variant: profile.kind(),
            })
        }
    };
    let dt = match settings.dt {
        Some(dt) if dt.is_finite() && dt > 0.0 => dt,
        Some(dt) => return Err(Error::param("dt", format!("must be > 0, got {dt}"))),
        None => {
            let target = (1.0 / (16.0 * params.omega())).min(1.0 / (16.0 * eta));
            2f64.powi(target.log2().floor() as i32)
        }
    };
    // |q(t)| / max|q| = x e^{1-x} with x = η|t|. Cutting the tail costs about
    // q(T)/ω while a smooth ramp only transforms to O(η γ / ω³), so the cut
    // tightens with (η/ω)².
    let ratio = eta / params.omega();
    let threshold = settings
        .tail_threshold
        .min(1e-8 * ratio * ratio)
        .clamp(1e-300, 1.0);
    let mut x: f64 = 1.0;
    while x * (1.0 - x).exp() > threshold {
        x += 0.25;
    }
    let half_steps = ((x + 1.0) / eta / dt).ceil() as usize;
    if symmetric {
        TimeGrid::with_spacing(-(half_steps as f64) * dt, dt, 2 * half_steps)
    } else {
        TimeGrid::with_spacing(0.0, dt, half_steps)
    }
}

/// `ΔE(η)` along a family of ramps sharing `gamma`, via the transition route
/// on numerically transformed samples. Grids widen as `1/η`.
pub fn adiabatic_scan(
    family: &CouplingProfile,
    etas: &[f64],
    params: &PhysicalParams,
    settings: &ScanSettings,
) -> Result<AdiabaticScan> {
    if etas.is_empty() {
        return Err(Error::param("etas", "scan list is empty"));
    }
    if let Some(bad) = etas.iter().find(|e| !(e.is_finite() && **e > 0.0)) {
        return Err(Error::param("etas", format!("must be positive, got {bad}")));
    }
    let (lo, hi) = etas.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &e| {
        (lo.min(e), hi.max(e))
    });
    if hi / lo < 10.0 {
        return Err(Error::param("etas", "scan must span at least one decade"));
    }
    let fourier = FourierOptions {
        tail_threshold: settings.tail_threshold,
        execution: settings.execution,
    };
    let points = exec::map_ordered(etas, settings.execution, |&eta| -> Result<ScanPoint> {
        let profile = family.with_eta(eta)?;
        let grid = ramp_grid(&profile, params, settings)?;
        let signal = sample(&profile, &grid)?;
        let qhat = fourier_numeric_with(&signal, -2.0 * params.omega(), &fourier)?;
        if qhat.tail_warning {
            return Err(Error::TailNotSettled {
                edge: signal.edge_magnitude(),
                threshold: settings.tail_threshold * signal.max_abs(),
            });
        }
        let gap = 2.0 * params.quantum();
        let delta_e = gap * hb_transition_coefficient(qhat.value, params).norm_sqr();
        Ok(ScanPoint {
            eta,
            delta_e,
            delta_e_times_eta: delta_e * eta,
            n_samples: grid.n_samples(),
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = points.iter().map(|p| p.eta).collect();
    let slope = loglog_slope(&xs, &points.iter().map(|p| p.delta_e).collect::<Vec<_>>())?;
    let slope_times_eta = loglog_slope(
        &xs,
        &points
            .iter()
            .map(|p| p.delta_e_times_eta)
            .collect::<Vec<_>>(),
    )?;
    Ok(AdiabaticScan {
        points,
        slope,
        slope_times_eta,
    })
}
