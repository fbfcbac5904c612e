#![allow(dead_code)]

use casimir_friction::{sample, CouplingProfile, CouplingSignal, TimeGrid};

pub fn gaussian(q0: f64) -> CouplingSignal {
    let p = CouplingProfile::GaussianPulse { q0, tau: 1.0 };
    sample(&p, &TimeGrid::new(-12.0, 12.0, 4801).unwrap()).unwrap()
}

/// One signal per profile variant, each on a grid wide enough for its tails.
pub fn corpus() -> Vec<(&'static str, CouplingSignal)> {
    let table = {
        let p = CouplingProfile::GaussianPulse { q0: 0.02, tau: 2.0 };
        let grid = TimeGrid::new(-20.0, 20.0, 1601).unwrap();
        let mut csv = String::from("time,q\n");
        for i in 0..grid.n_samples() {
            let t = grid.time(i);
            csv.push_str(&format!(
                "{t},{}\n",
                p.evaluate(t).unwrap() * (1.0 + 0.3 * t.sin())
            ));
        }
        CouplingProfile::from_csv_reader(csv.as_bytes()).unwrap()
    };
    let table_grid = match &table {
        CouplingProfile::Sampled { grid, .. } => *grid,
        _ => unreachable!(),
    };
    vec![
        (
            "exponential_ramp",
            sample(
                &CouplingProfile::ExponentialRamp {
                    gamma: 0.01,
                    eta: 0.5,
                },
                &TimeGrid::new(0.0, 80.0, 16001).unwrap(),
            )
            .unwrap(),
        ),
        (
            "symmetric_ramp",
            sample(
                &CouplingProfile::SymmetricRamp {
                    gamma: 0.01,
                    eta: 0.5,
                },
                &TimeGrid::new(-80.0, 80.0, 32001).unwrap(),
            )
            .unwrap(),
        ),
        ("gaussian_pulse", gaussian(0.01)),
        (
            "flyby",
            sample(
                &CouplingProfile::Flyby {
                    charge: 0.1,
                    d: 1.0,
                    v: 1.0,
                },
                &TimeGrid::new(-200.0, 200.0, 80001).unwrap(),
            )
            .unwrap(),
        ),
        ("sampled", sample(&table, &table_grid).unwrap()),
    ]
}
