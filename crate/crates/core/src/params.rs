//! Physical parameters, uniform time grids and the ladder normalization.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex amplitudes, transforms and transition coefficients.
pub type ComplexValue = Complex64;

/// Mass, eigenfrequency, charge and reduced Planck constant shared by both
/// oscillators.
///
/// Natural units (`mass = omega = charge = hbar = 1`) are the default, but
/// every constant stays explicit so that other unit systems work unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct PhysicalParams {
    mass: f64,
    omega: f64,
    charge: f64,
    hbar: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    mass: f64,
    omega: f64,
    #[serde(default = "one")]
    charge: f64,
    #[serde(default = "one")]
    hbar: f64,
}

fn one() -> f64 {
    1.0
}

impl TryFrom<RawParams> for PhysicalParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        PhysicalParams::new(raw.mass, raw.omega, raw.charge, raw.hbar)
    }
}

impl From<PhysicalParams> for RawParams {
    fn from(p: PhysicalParams) -> Self {
        RawParams {
            mass: p.mass,
            omega: p.omega,
            charge: p.charge,
            hbar: p.hbar,
        }
    }
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::param(
            name,
            format!("must be finite and > 0, got {value}"),
        ))
    }
}

impl PhysicalParams {
    pub fn new(mass: f64, omega: f64, charge: f64, hbar: f64) -> Result<Self> {
        let params = PhysicalParams {
            mass: positive("mass", mass)?,
            omega: positive("omega", omega)?,
            charge: positive("charge", charge)?,
            hbar: positive("hbar", hbar)?,
        };
        let b = ladder_factor(&params);
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::param(
                "hbar",
                format!("ladder factor hbar/(2 m omega) = {b} is not finite and positive"),
            ));
        }
        Ok(params)
    }

    /// `mass = omega = charge = hbar = 1`.
    pub fn natural() -> Self {
        PhysicalParams {
            mass: 1.0,
            omega: 1.0,
            charge: 1.0,
            hbar: 1.0,
        }
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn charge(&self) -> f64 {
        self.charge
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Energy quantum `hbar * omega`.
    pub fn quantum(&self) -> f64 {
        self.hbar * self.omega
    }
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self::natural()
    }
}

/// Squared position scale `b = hbar / (2 m omega)`, so that
/// `y = sqrt(b) (a + a†)` for each oscillator.
pub fn ladder_factor(params: &PhysicalParams) -> f64 {
    params.hbar / (2.0 * params.mass * params.omega)
}

/// Uniformly spaced sample times `t_start, t_start + dt, ..., t_end`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGrid", into = "RawGrid")]
pub struct TimeGrid {
    t_start: f64,
    t_end: f64,
    n_samples: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    t_start: f64,
    t_end: f64,
    n_samples: usize,
}

impl TryFrom<RawGrid> for TimeGrid {
    type Error = Error;

    fn try_from(raw: RawGrid) -> Result<Self> {
        TimeGrid::new(raw.t_start, raw.t_end, raw.n_samples)
    }
}

impl From<TimeGrid> for RawGrid {
    fn from(g: TimeGrid) -> Self {
        RawGrid {
            t_start: g.t_start,
            t_end: g.t_end,
            n_samples: g.n_samples,
        }
    }
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, n_samples: usize) -> Result<Self> {
        if n_samples < 2 {
            return Err(Error::InvalidGrid(format!(
                "n_samples must be >= 2, got {n_samples}"
            )));
        }
        if !(t_start.is_finite() && t_end.is_finite()) {
            return Err(Error::InvalidGrid("endpoints must be finite".into()));
        }
        if t_end <= t_start {
            return Err(Error::InvalidGrid(format!(
                "t_end ({t_end}) must exceed t_start ({t_start})"
            )));
        }
        let grid = TimeGrid {
            t_start,
            t_end,
            n_samples,
        };
        if grid.dt().is_nan() || grid.dt() <= 0.0 {
            return Err(Error::InvalidGrid("spacing underflows to zero".into()));
        }
        Ok(grid)
    }

    /// Grid with spacing exactly `dt` covering `[t_start, t_start + steps * dt]`.
    pub fn with_spacing(t_start: f64, dt: f64, steps: usize) -> Result<Self> {
        TimeGrid::new(t_start, t_start + steps as f64 * dt, steps + 1)
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn dt(&self) -> f64 {
        (self.t_end - self.t_start) / (self.n_samples - 1) as f64
    }

    /// The `i`-th sample time; the last index returns `t_end` exactly.
    #[inline]
    pub fn time(&self, i: usize) -> f64 {
        if i + 1 == self.n_samples {
            self.t_end
        } else {
            self.t_start + i as f64 * self.dt()
        }
    }

    /// Same span with `2 (n - 1) + 1` samples.
    pub fn refined(&self) -> Self {
        TimeGrid {
            n_samples: 2 * (self.n_samples - 1) + 1,
            ..*self
        }
    }
}

/// All sample times of `grid`, first = `t_start`, last = `t_end`.
pub fn grid_times(grid: &TimeGrid) -> Vec<f64> {
    (0..grid.n_samples).map(|i| grid.time(i)).collect()
}
