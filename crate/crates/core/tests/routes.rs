mod common;

use casimir_friction::dissipation::{
    barton_running_integral, relative_spread, transition_probability_hb,
};
use casimir_friction::spectral::fourier_numeric;
use casimir_friction::{
    compare_routes, delta_e_barton, delta_e_hb, dissipation_from_transitions,
    hb_transition_coefficient, ladder_factor, sample, CouplingProfile, CouplingSignal, Execution,
    FockSettings, Level, PhysicalParams, Route, TimeGrid, TransitionAmplitude,
};
use num_complex::Complex64;

#[test]
fn barton_and_hb_agree_on_every_profile() {
    for params in [
        PhysicalParams::natural(),
        PhysicalParams::new(2.0, 0.7, 1.0, 1.3).unwrap(),
    ] {
        for (name, signal) in common::corpus() {
            let barton = delta_e_barton(&signal, &params).unwrap();
            let hb = delta_e_hb(&signal, &params).unwrap();
            assert!(barton > 0.0, "{name}");
            let rel = (barton - hb).abs() / barton;
            assert!(
                rel <= 1e-12,
                "{name}: barton {barton:e} hb {hb:e} rel {rel:e}"
            );
        }
    }
}

#[test]
fn fourier_bridge_holds_on_samples() {
    // q̂(-2ω) = 2iħ I(∞)
    let params = PhysicalParams::new(1.0, 1.3, 1.0, 0.8).unwrap();
    for (name, signal) in common::corpus() {
        let qhat = fourier_numeric(&signal, -2.0 * params.omega())
            .unwrap()
            .value;
        let i_inf = *barton_running_integral(&signal, &params).last().unwrap();
        let bridge = Complex64::new(0.0, 2.0 * params.hbar()) * i_inf;
        assert!((qhat - bridge).norm() <= 1e-12 * qhat.norm(), "{name}");
    }
}

#[test]
fn running_integral_starts_at_zero_and_saturates() {
    let signal = common::gaussian(0.01);
    let path = barton_running_integral(&signal, &PhysicalParams::natural());
    assert_eq!(path[0], Complex64::new(0.0, 0.0));
    let n = path.len();
    assert!((path[n - 1] - path[n - 400]).norm() < 1e-14);
}

#[test]
fn transition_sum_reproduces_hb_route() {
    let params = PhysicalParams::natural();
    let signal = common::gaussian(0.01);
    let qhat = fourier_numeric(&signal, -2.0).unwrap().value;
    let g = Level::new(0, 0);
    let e = Level::new(1, 1);
    let coefficient = TransitionAmplitude {
        from: g,
        to: e,
        amplitude: hb_transition_coefficient(qhat, &params),
    };
    let levels = [(g, g.energy(&params)), (e, e.energy(&params))];
    let de = dissipation_from_transitions(&levels, &[(g, 1.0)], &[coefficient]).unwrap();
    let hb = delta_e_hb(&signal, &params).unwrap();
    assert!((de - hb).abs() <= 1e-15 * hb);
    // B_1100 = 4 b² |I|²
    let b = ladder_factor(&params);
    let i_inf = *barton_running_integral(&signal, &params).last().unwrap();
    let b1100 = transition_probability_hb(&signal, &params).unwrap();
    assert!((b1100 - 4.0 * b * b * i_inf.norm_sqr()).abs() <= 1e-12 * b1100);
}

#[test]
fn analytic_and_sampled_hb_agree() {
    let params = PhysicalParams::natural();
    let profile = CouplingProfile::ExponentialRamp {
        gamma: 1e-3,
        eta: 1.0,
    };
    let signal = sample(&profile, &TimeGrid::new(0.0, 40.0, 16001).unwrap()).unwrap();
    let analytic = delta_e_hb(&profile, &params).unwrap();
    let numeric = delta_e_hb(&signal, &params).unwrap();
    assert!((analytic - 2e-8).abs() < 1e-20);
    assert!((numeric - analytic).abs() / analytic < 1e-5);
}

#[test]
fn report_on_zero_signal() {
    let signal = CouplingSignal::zeros(TimeGrid::new(-10.0, 10.0, 401).unwrap());
    let report = compare_routes(
        &signal,
        &PhysicalParams::natural(),
        &Route::ALL,
        &FockSettings::default(),
        Execution::Parallel,
    )
    .unwrap();
    assert_eq!(report.entries().collect::<Vec<_>>(), vec![0.0; 4]);
    assert_eq!(report.relative_spread, 0.0);
    assert!(!report.validity_flag);
}

#[test]
fn report_on_gaussian_benchmark() {
    let signal = common::gaussian(0.01);
    let report = compare_routes(
        &signal,
        &PhysicalParams::natural(),
        &Route::ALL,
        &FockSettings::default(),
        Execution::Parallel,
    )
    .unwrap();
    assert!(report.relative_spread < 0.01, "{report:?}");
    assert_eq!(report.entries().count(), 4);
    assert!(!report.validity_flag && !report.tail_warning);
    let sequential = compare_routes(
        &signal,
        &PhysicalParams::natural(),
        &Route::ALL,
        &FockSettings::default(),
        Execution::Sequential,
    )
    .unwrap();
    assert_eq!(report, sequential);
}

#[test]
fn strong_pulse_sets_validity_flag() {
    // B_1100 = |q0 √π e^{-1}|²/4 > 0.1  ⇔  q0 > ~0.97; stay below the inversion
    let p = CouplingProfile::GaussianPulse { q0: 0.99, tau: 1.0 };
    let signal = sample(&p, &TimeGrid::new(-12.0, 12.0, 4801).unwrap()).unwrap();
    let report = compare_routes(
        &signal,
        &PhysicalParams::natural(),
        &[Route::Barton, Route::Hb, Route::ModeOracle],
        &FockSettings::default(),
        Execution::Parallel,
    )
    .unwrap();
    assert!(report.transition_probability > 0.1);
    assert!(report.validity_flag);
    assert!(report.delta_e_fock_oracle.is_none());
    assert_eq!(
        report.relative_spread,
        relative_spread(&report.entries().collect::<Vec<_>>())
    );
}
