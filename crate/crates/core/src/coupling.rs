//! Time-dependent coupling strength `q(t)` between the two oscillators.
//!
//! The interaction is `q(t) y1 y2`. For oscillators carrying charge `e` at
//! separation `s`, `q = e^2 / s^3`; the analytic profiles below are either
//! smooth switch-on/switch-off shapes or the straight-line flyby.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::TimeGrid;

/// Coupling strength as a function of time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProfile", into = "RawProfile")]
pub enum CouplingProfile {
    /// `gamma * t * exp(-eta t)` for `t > 0`, zero before. Switches on abruptly.
    ExponentialRamp { gamma: f64, eta: f64 },
    /// `gamma * t * exp(-eta |t|)` for all `t`.
    SymmetricRamp { gamma: f64, eta: f64 },
    /// `q0 * exp(-t^2 / tau^2)`.
    GaussianPulse { q0: f64, tau: f64 },
    /// `e^2 / (d^2 + v^2 t^2)^(3/2)`: constant-velocity passage at impact
    /// distance `d`.
    Flyby { charge: f64, d: f64, v: f64 },
    /// Tabulated values, linearly interpolated.
    Sampled { grid: TimeGrid, values: Vec<f64> },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum RawProfile {
    ExponentialRamp { gamma: f64, eta: f64 },
    SymmetricRamp { gamma: f64, eta: f64 },
    GaussianPulse { q0: f64, tau: f64 },
    Flyby { charge: f64, d: f64, v: f64 },
    Sampled { grid: TimeGrid, values: Vec<f64> },
}

impl TryFrom<RawProfile> for CouplingProfile {
    type Error = Error;

    fn try_from(raw: RawProfile) -> Result<Self> {
        let profile = match raw {
            RawProfile::ExponentialRamp { gamma, eta } => {
                CouplingProfile::ExponentialRamp { gamma, eta }
            }
            RawProfile::SymmetricRamp { gamma, eta } => {
                CouplingProfile::SymmetricRamp { gamma, eta }
            }
            RawProfile::GaussianPulse { q0, tau } => CouplingProfile::GaussianPulse { q0, tau },
            RawProfile::Flyby { charge, d, v } => CouplingProfile::Flyby { charge, d, v },
            RawProfile::Sampled { grid, values } => CouplingProfile::Sampled { grid, values },
        };
        profile.validate()?;
        Ok(profile)
    }
}

impl From<CouplingProfile> for RawProfile {
    fn from(p: CouplingProfile) -> Self {
        match p {
            CouplingProfile::ExponentialRamp { gamma, eta } => {
                RawProfile::ExponentialRamp { gamma, eta }
            }
            CouplingProfile::SymmetricRamp { gamma, eta } => {
                RawProfile::SymmetricRamp { gamma, eta }
            }
            CouplingProfile::GaussianPulse { q0, tau } => RawProfile::GaussianPulse { q0, tau },
            CouplingProfile::Flyby { charge, d, v } => RawProfile::Flyby { charge, d, v },
            CouplingProfile::Sampled { grid, values } => RawProfile::Sampled { grid, values },
        }
    }
}

fn finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be finite, got {value}")))
    }
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::param(
            name,
            format!("must be finite and > 0, got {value}"),
        ))
    }
}

impl CouplingProfile {
    pub fn validate(&self) -> Result<()> {
        match self {
            CouplingProfile::ExponentialRamp { gamma, eta }
            | CouplingProfile::SymmetricRamp { gamma, eta } => {
                finite("gamma", *gamma)?;
                positive("eta", *eta)
            }
            CouplingProfile::GaussianPulse { q0, tau } => {
                finite("q0", *q0)?;
                positive("tau", *tau)
            }
            CouplingProfile::Flyby { charge, d, v } => {
                positive("charge", *charge)?;
                positive("d", *d)?;
                positive("v", *v)
            }
            CouplingProfile::Sampled { grid, values } => check_samples(grid, values),
        }
    }

    /// Snake-case variant name, as used in configs and reports.
    pub fn kind(&self) -> &'static str {
        match self {
            CouplingProfile::ExponentialRamp { .. } => "exponential_ramp",
            CouplingProfile::SymmetricRamp { .. } => "symmetric_ramp",
            CouplingProfile::GaussianPulse { .. } => "gaussian_pulse",
            CouplingProfile::Flyby { .. } => "flyby",
            CouplingProfile::Sampled { .. } => "sampled",
        }
    }

    /// `q(t)`. Sampled profiles interpolate linearly and reject times outside
    /// their grid.
    pub fn evaluate(&self, t: f64) -> Result<f64> {
        Ok(match *self {
            CouplingProfile::ExponentialRamp { gamma, eta } => {
                if t > 0.0 {
                    gamma * t * (-eta * t).exp()
                } else {
                    0.0
                }
            }
            CouplingProfile::SymmetricRamp { gamma, eta } => gamma * t * (-eta * t.abs()).exp(),
            CouplingProfile::GaussianPulse { q0, tau } => {
                let x = t / tau;
                q0 * (-x * x).exp()
            }
            CouplingProfile::Flyby { charge, d, v } => {
                coupling_from_separation(charge, d.hypot(v * t))?
            }
            CouplingProfile::Sampled {
                ref grid,
                ref values,
            } => interpolate_linear(grid, values, t)?,
        })
    }

    /// The scale parameter an amplitude sweep acts on: `gamma`, `q0`, the
    /// closest-approach coupling `e^2/d^3`, or the peak `|q|` of a table.
    pub fn amplitude(&self) -> f64 {
        match self {
            CouplingProfile::ExponentialRamp { gamma, .. }
            | CouplingProfile::SymmetricRamp { gamma, .. } => *gamma,
            CouplingProfile::GaussianPulse { q0, .. } => *q0,
            CouplingProfile::Flyby { charge, d, .. } => charge * charge / (d * d * d),
            CouplingProfile::Sampled { values, .. } => max_abs(values),
        }
    }

    /// Copy of the profile with its amplitude (see [`amplitude`](Self::amplitude))
    /// set to `amplitude`.
    pub fn with_amplitude(&self, amplitude: f64) -> Result<Self> {
        let profile = match self.clone() {
            CouplingProfile::ExponentialRamp { eta, .. } => CouplingProfile::ExponentialRamp {
                gamma: amplitude,
                eta,
            },
            CouplingProfile::SymmetricRamp { eta, .. } => CouplingProfile::SymmetricRamp {
                gamma: amplitude,
                eta,
            },
            CouplingProfile::GaussianPulse { tau, .. } => {
                CouplingProfile::GaussianPulse { q0: amplitude, tau }
            }
            CouplingProfile::Flyby { d, v, .. } => {
                positive("amplitude", amplitude)?;
                CouplingProfile::Flyby {
                    charge: (amplitude * d * d * d).sqrt(),
                    d,
                    v,
                }
            }
            CouplingProfile::Sampled { grid, values } => {
                let peak = max_abs(&values);
                let factor = if peak > 0.0 { amplitude / peak } else { 0.0 };
                CouplingProfile::Sampled {
                    grid,
                    values: values.iter().map(|v| v * factor).collect(),
                }
            }
        };
        profile.validate()?;
        Ok(profile)
    }

    /// Copy of a ramp profile with decay rate `eta`.
    pub fn with_eta(&self, eta: f64) -> Result<Self> {
        let profile = match *self {
            CouplingProfile::ExponentialRamp { gamma, .. } => {
                CouplingProfile::ExponentialRamp { gamma, eta }
            }
            CouplingProfile::SymmetricRamp { gamma, .. } => {
                CouplingProfile::SymmetricRamp { gamma, eta }
            }
            _ => {
                return Err(Error::UnsupportedProfile {
                    operation: "eta substitution",
                    variant: self.kind(),
                })
            }
        };
        profile.validate()?;
        Ok(profile)
    }

    /// Two-column `time,q` CSV with a single header line. Times must be
    /// strictly increasing and uniform to 1e-9 relative spacing.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut times = Vec::new();
        let mut values = Vec::new();
        for (row, record) in rdr.records().enumerate() {
            let line = row + 2;
            let record = record.map_err(|e| Error::Csv(format!("line {line}: {e}")))?;
            if record.len() != 2 {
                return Err(Error::Csv(format!(
                    "line {line}: expected 2 columns, found {}",
                    record.len()
                )));
            }
            let parse = |field: &str| {
                field
                    .parse::<f64>()
                    .map_err(|e| Error::Csv(format!("line {line}: `{field}`: {e}")))
            };
            times.push(parse(&record[0])?);
            values.push(parse(&record[1])?);
        }
        if times.len() < 2 {
            return Err(Error::Csv(format!(
                "need at least 2 samples, found {}",
                times.len()
            )));
        }
        let n = times.len();
        let dt = (times[n - 1] - times[0]) / (n - 1) as f64;
        for (i, pair) in times.windows(2).enumerate() {
            let step = pair[1] - pair[0];
            if step <= 0.0 {
                return Err(Error::Csv(format!(
                    "line {}: times must be strictly increasing",
                    i + 3
                )));
            }
            if (step - dt).abs() > 1e-9 * dt {
                return Err(Error::Csv(format!(
                    "line {}: spacing {step} deviates from uniform {dt}",
                    i + 3
                )));
            }
        }
        let grid = TimeGrid::new(times[0], times[n - 1], n)?;
        let profile = CouplingProfile::Sampled { grid, values };
        profile.validate()?;
        Ok(profile)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path)
            .map_err(|e| Error::Csv(format!("{}: {e}", path.display())))?;
        Self::from_csv_reader(std::io::BufReader::new(file))
    }
}

fn check_samples(grid: &TimeGrid, values: &[f64]) -> Result<()> {
    if values.len() != grid.n_samples() {
        return Err(Error::param(
            "values",
            format!(
                "length {} does not match grid n_samples {}",
                values.len(),
                grid.n_samples()
            ),
        ));
    }
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFiniteSample { index }),
        None => Ok(()),
    }
}

fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

fn interpolate_linear(grid: &TimeGrid, values: &[f64], t: f64) -> Result<f64> {
    let (start, end) = (grid.t_start(), grid.t_end());
    if !(t >= start && t <= end) {
        return Err(Error::OutOfSpan { t, start, end });
    }
    let last = grid.n_samples() - 1;
    let x = (t - start) / grid.dt();
    let i = (x.floor() as usize).min(last - 1);
    let frac = (x - i as f64).clamp(0.0, 1.0);
    Ok(values[i] + frac * (values[i + 1] - values[i]))
}

/// `e^2 / s^3`, the coupling of two oscillators at separation `s`.
pub fn coupling_from_separation(charge: f64, separation: f64) -> Result<f64> {
    if separation.is_nan() || separation <= 0.0 {
        return Err(Error::CoincidentOscillators(separation));
    }
    Ok(charge * charge / (separation * separation * separation))
}

/// `q(t)` sampled on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingSignal {
    grid: TimeGrid,
    values: Vec<f64>,
}

impl CouplingSignal {
    pub fn new(grid: TimeGrid, values: Vec<f64>) -> Result<Self> {
        check_samples(&grid, &values)?;
        Ok(CouplingSignal { grid, values })
    }

    pub fn zeros(grid: TimeGrid) -> Self {
        CouplingSignal {
            grid,
            values: vec![0.0; grid.n_samples()],
        }
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.values)
    }

    /// Larger of `|q|` at the two grid ends.
    pub fn edge_magnitude(&self) -> f64 {
        self.values[0]
            .abs()
            .max(self.values[self.values.len() - 1].abs())
    }

    /// Whether both edge values are at most `relative * max|q|`.
    pub fn tails_settled(&self, relative: f64) -> bool {
        self.edge_magnitude() <= relative * self.max_abs()
    }

    /// Signal multiplied pointwise by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        CouplingSignal {
            grid: self.grid,
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    /// `a * self + b * other` on a shared grid.
    pub fn combine(&self, a: f64, other: &CouplingSignal, b: f64) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::InvalidGrid("signals live on different grids".into()));
        }
        Ok(CouplingSignal {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        })
    }

    /// Sampled-profile view of this signal.
    pub fn to_profile(&self) -> CouplingProfile {
        CouplingProfile::Sampled {
            grid: self.grid,
            values: self.values.clone(),
        }
    }

    /// Four-point Lagrange interpolation; fourth-order accurate for smooth
    /// signals, used by the time integrators between grid nodes.
    pub(crate) fn cubic_at(&self, t: f64) -> f64 {
        let n = self.values.len();
        let x = (t - self.grid.t_start()) / self.grid.dt();
        let nearest = x.round();
        if (x - nearest).abs() < 1e-9 {
            let i = nearest.clamp(0.0, (n - 1) as f64) as usize;
            return self.values[i];
        }
        if n < 4 {
            let i = (x.floor().max(0.0) as usize).min(n - 2);
            let frac = x - i as f64;
            return self.values[i] + frac * (self.values[i + 1] - self.values[i]);
        }
        let base = (x.floor() as isize - 1).clamp(0, n as isize - 4) as usize;
        let s = x - base as f64;
        let q = &self.values[base..base + 4];
        let l0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
        let l1 = s * (s - 2.0) * (s - 3.0) / 2.0;
        let l2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
        let l3 = s * (s - 1.0) * (s - 2.0) / 6.0;
        l0 * q[0] + l1 * q[1] + l2 * q[2] + l3 * q[3]
    }
}

/// `values[i] = profile.evaluate(grid.time(i))`.
pub fn sample(profile: &CouplingProfile, grid: &TimeGrid) -> Result<CouplingSignal> {
    let values = (0..grid.n_samples())
        .map(|i| profile.evaluate(grid.time(i)))
        .collect::<Result<Vec<_>>>()?;
    CouplingSignal::new(*grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn evaluate_examples() {
        let ramp = CouplingProfile::ExponentialRamp {
            gamma: 1.0,
            eta: 1.0,
        };
        assert_eq!(ramp.evaluate(-0.5).unwrap(), 0.0);
        let ramp = CouplingProfile::ExponentialRamp {
            gamma: 2.0,
            eta: 1.0,
        };
        assert_relative_eq!(
            ramp.evaluate(1.0).unwrap(),
            0.735758882342885,
            max_relative = 1e-14
        );
        let flyby = CouplingProfile::Flyby {
            charge: 1.0,
            d: 1.0,
            v: 1.0,
        };
        assert_eq!(flyby.evaluate(0.0).unwrap(), 1.0);
    }

    #[test]
    fn separation_examples() {
        assert_eq!(coupling_from_separation(1.0, 1.0).unwrap(), 1.0);
        assert_eq!(coupling_from_separation(2.0, 1.0).unwrap(), 4.0);
        assert_eq!(coupling_from_separation(1.0, 2.0).unwrap(), 0.125);
        assert!(matches!(
            coupling_from_separation(1.0, 0.0),
            Err(Error::CoincidentOscillators(_))
        ));
        assert!(coupling_from_separation(1.0, -1.0).is_err());
    }

    #[test]
    fn sample_examples() {
        let zero = CouplingProfile::GaussianPulse { q0: 0.0, tau: 1.0 };
        let grid = TimeGrid::new(-3.0, 3.0, 13).unwrap();
        assert!(sample(&zero, &grid)
            .unwrap()
            .values()
            .iter()
            .all(|&v| v == 0.0));

        let gauss = CouplingProfile::GaussianPulse { q0: 1.0, tau: 1.0 };
        let s = sample(&gauss, &TimeGrid::new(-1.0, 1.0, 3).unwrap()).unwrap();
        let e1 = (-1.0f64).exp();
        assert_eq!(s.values(), &[e1, 1.0, e1]);

        let ramp = CouplingProfile::ExponentialRamp {
            gamma: 1.0,
            eta: 2.0,
        };
        let s = sample(&ramp, &TimeGrid::new(0.0, 1.0, 3).unwrap()).unwrap();
        assert_eq!(s.values()[0], 0.0);
        assert_relative_eq!(s.values()[1], 0.5 * e1, max_relative = 1e-15);
        assert_relative_eq!(s.values()[2], (-2.0f64).exp(), max_relative = 1e-15);
    }

    #[test]
    fn sampled_profile_interpolates_and_rejects_out_of_span() {
        let grid = TimeGrid::new(0.0, 2.0, 3).unwrap();
        let p = CouplingProfile::Sampled {
            grid,
            values: vec![0.0, 2.0, -2.0],
        };
        assert_eq!(p.evaluate(0.5).unwrap(), 1.0);
        assert_eq!(p.evaluate(1.5).unwrap(), 0.0);
        assert_eq!(p.evaluate(2.0).unwrap(), -2.0);
        assert!(matches!(p.evaluate(2.1), Err(Error::OutOfSpan { .. })));
        assert!(p.evaluate(-1e-9).is_err());
        assert!(p.evaluate(f64::NAN).is_err());
    }

    #[test]
    fn invalid_profiles_rejected() {
        assert!(CouplingProfile::ExponentialRamp {
            gamma: 1.0,
            eta: 0.0
        }
        .validate()
        .is_err());
        assert!(CouplingProfile::GaussianPulse { q0: 1.0, tau: -1.0 }
            .validate()
            .is_err());
        assert!(CouplingProfile::Flyby {
            charge: 1.0,
            d: 0.0,
            v: 1.0
        }
        .validate()
        .is_err());
        let grid = TimeGrid::new(0.0, 1.0, 3).unwrap();
        assert!(CouplingProfile::Sampled {
            grid,
            values: vec![0.0; 2]
        }
        .validate()
        .is_err());
        assert!(matches!(
            CouplingSignal::new(grid, vec![0.0, f64::NAN, 0.0]),
            Err(Error::NonFiniteSample { index: 1 })
        ));
    }

    #[test]
    fn flyby_tail_is_inverse_cube() {
        let p = CouplingProfile::Flyby {
            charge: 1.3,
            d: 0.7,
            v: 2.0,
        };
        for &t in &[35.0, 100.0, 1e3] {
            let ratio = p.evaluate(t).unwrap() / p.evaluate(2.0 * t).unwrap();
            assert!((ratio - 8.0).abs() < 0.08, "ratio {ratio} at t = {t}");
        }
    }

    #[test]
    fn flyby_matches_separation_at_closest_approach() {
        let (e, d) = (1.7, 0.4);
        let p = CouplingProfile::Flyby {
            charge: e,
            d,
            v: 3.0,
        };
        assert_eq!(
            p.evaluate(0.0).unwrap(),
            coupling_from_separation(e, d).unwrap()
        );
    }

    #[test]
    fn csv_loading() {
        let csv = "time,q\n0.0,0.0\n0.5,1.0\n1.0,0.5\n";
        let p = CouplingProfile::from_csv_reader(csv.as_bytes()).unwrap();
        assert_eq!(p.evaluate(0.75).unwrap(), 0.75);
        assert!(CouplingProfile::from_csv_reader("t,q\n0,0\n0.5,1\n1.2,0\n".as_bytes()).is_err());
        assert!(CouplingProfile::from_csv_reader("t,q\n0,0\n0,1\n".as_bytes()).is_err());
        assert!(CouplingProfile::from_csv_reader("t,q\n0,0\n".as_bytes()).is_err());
        let err = CouplingProfile::from_csv_reader("t,q\n0,0\n1,x\n".as_bytes()).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn amplitude_substitution() {
        let flyby = CouplingProfile::Flyby {
            charge: 1.0,
            d: 2.0,
            v: 1.0,
        };
        let scaled = flyby.with_amplitude(0.5).unwrap();
        assert_relative_eq!(scaled.evaluate(0.0).unwrap(), 0.5, max_relative = 1e-15);
        let gauss = CouplingProfile::GaussianPulse { q0: 1.0, tau: 2.0 };
        assert_eq!(gauss.with_amplitude(3.0).unwrap().amplitude(), 3.0);
        assert!(gauss.with_eta(0.1).is_err());
    }

    #[test]
    fn cubic_interpolation_is_exact_for_cubics() {
        let grid = TimeGrid::new(-1.0, 2.0, 7).unwrap();
        let f = |t: f64| 0.3 - t + 2.0 * t * t - 0.5 * t * t * t;
        let values = crate::params::grid_times(&grid)
            .into_iter()
            .map(f)
            .collect();
        let s = CouplingSignal::new(grid, values).unwrap();
        for &t in &[-1.0, -0.9, 0.26, 1.49, 1.8, 2.0] {
            assert_relative_eq!(s.cubic_at(t), f(t), epsilon = 1e-13);
        }
    }
}
