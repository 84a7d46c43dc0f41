use super::*;
use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI};

const T: f64 = FRAC_PI_4;
const F: f64 = FRAC_PI_3;

fn sim(ch: ChannelSpec, r: Agent, t: f64, f: f64) -> f64 {
    simulate(ch, r, t, f, Convention::CALIBRATED).unwrap()
}

#[test]
fn ideal_channel_averages_to_one_under_every_convention() {
    for c in Convention::all() {
        for r in Agent::ALL {
            let v = simulate(ChannelSpec::Ideal, r, 0.4, 2.2, c).unwrap();
            assert!((v - 1.0).abs() < 1e-12, "{c} {r}: {v}");
        }
    }
}

#[test]
fn zero_damping_averages_to_one() {
    let v = sim(ChannelSpec::AmplitudeDamping(0.0), Agent::Bob2, T, F);
    assert!((v - 1.0).abs() < 1e-12);
}

#[test]
fn half_damping_matches_closed_form() {
    let ch = ChannelSpec::AmplitudeDamping(0.5);
    for r in [Agent::Bob2, Agent::Bob3] {
        let s = sim(ch, r, T, F);
        let c = closed_form(&ch, r, T, F).unwrap();
        assert!((s - c).abs() < 1e-6, "{r}: {s} vs {c}");
    }
}

#[test]
fn probabilistic_config_rejected() {
    let cfg = ProtocolConfig::probabilistic(TargetState::new(T, F), Agent::Bob2, 0.8, 0.6);
    assert!(matches!(
        average_fidelity_sim(&cfg, Averaging::Uniform),
        Err(AnalysisError::WrongVariant)
    ));
}

#[test]
fn single_helper_under_noise_does_not_reproduce_closed_form() {
    let ch = ChannelSpec::AmplitudeDamping(0.5);
    let c = closed_form(&ch, Agent::Bob2, T, F).unwrap();
    for averaging in Averaging::ALL {
        let conv = Convention {
            averaging,
            bob2_helpers: Bob2Helpers::Bob1,
        };
        let s = simulate(ch, Agent::Bob2, T, F, conv).unwrap();
        assert!((s - c).abs() > 1e-4, "{conv}: {s} vs {c}");
    }
}

#[test]
fn calibration_selects_uniform_with_both_helpers() {
    let report = calibrate().unwrap();
    assert_eq!(report.selected, Convention::CALIBRATED);
    assert_eq!(report.entries.len(), Convention::all().len() * 4 * 2);
    for e in report
        .entries
        .iter()
        .filter(|e| e.convention == Convention::CALIBRATED)
    {
        assert!(e.max_abs_diff < 1e-6, "{e:?}");
    }
    let ad_best = report
        .entries
        .iter()
        .filter(|e| e.channel == "ad")
        .map(|e| e.max_abs_diff)
        .fold(f64::INFINITY, f64::min);
    assert!(ad_best < 1e-6);
    let (_, printed, normalized) = report
        .pauli_bob3_readings
        .iter()
        .find(|r| r.0 == Convention::CALIBRATED)
        .copied()
        .unwrap();
    assert!(printed < 1e-6 && normalized > 1e-3);
    let text = report.to_string();
    assert!(text.contains("selected: uniform/both"));
}

#[test]
fn cd_special_point_by_simulation() {
    let ch = ChannelSpec::CollectiveDephasing(PI);
    assert!((sim(ch, Agent::Bob2, T, F) - 1.0).abs() < 1e-9);
    assert!(sim(ch, Agent::Bob3, T, F).abs() < 1e-9);
}

#[test]
fn pauli_special_examples() {
    let dep = pauli_special(PauliSpecial::Depolarizing, 0.0, Agent::Bob2, T, F).unwrap();
    assert!((dep - 1.0).abs() < 1e-12);
    let b2 = pauli_special(PauliSpecial::BitPhaseFlip, 0.75, Agent::Bob2, T, F).unwrap();
    let b3 = pauli_special(PauliSpecial::BitPhaseFlip, 0.75, Agent::Bob3, T, F).unwrap();
    assert!(b3 > b2, "{b3} <= {b2}");
    let pf = pauli_special(PauliSpecial::PhaseFlip, 1.0, Agent::Bob2, T, F).unwrap();
    assert!((pf - 1.0).abs() < 1e-12);
    assert!(matches!(
        pauli_special(PauliSpecial::BitFlip, 1.5, Agent::Bob2, T, F),
        Err(AnalysisError::BadParameter(_))
    ));
}

#[test]
fn pauli_special_mapping() {
    assert_eq!(
        PauliSpecial::BitFlip.probabilities(0.3).unwrap(),
        [0.3, 0.0, 0.0, 0.7]
    );
    assert_eq!(
        PauliSpecial::BitPhaseFlip.probabilities(0.3).unwrap(),
        [0.0, 0.3, 0.0, 0.7]
    );
    assert_eq!(
        PauliSpecial::PhaseFlip.probabilities(0.3).unwrap(),
        [0.0, 0.0, 0.3, 0.7]
    );
    let d = PauliSpecial::Depolarizing.probabilities(0.3).unwrap();
    assert!((d[0] - 0.1).abs() < 1e-15 && d[0] == d[1] && d[1] == d[2]);
}

#[test]
fn bob1_and_bob3_agree_across_channels() {
    for ch in calibration_channels()
        .into_iter()
        .chain([ChannelSpec::CollectiveRotation(1.1)])
    {
        for c in [
            Convention::CALIBRATED,
            Convention {
                averaging: Averaging::Weighted,
                bob2_helpers: Bob2Helpers::Both,
            },
        ] {
            let a = simulate(ch, Agent::Bob1, 0.7, 1.9, c).unwrap();
            let b = simulate(ch, Agent::Bob3, 0.7, 1.9, c).unwrap();
            assert!((a - b).abs() < 1e-9, "{ch:?}: {a} vs {b}");
        }
    }
}

#[test]
fn axis_construction() {
    let g = SweepGrid::with_default_angles(Axis::single(0.5).unwrap());
    assert_eq!(g.theta.len(), 25);
    assert_eq!(g.phi.len(), 48);
    assert!((g.theta.values()[24] - PI).abs() < 1e-12);
    assert!(g.phi.values()[47] < 2.0 * PI);
    assert_eq!(Axis::linspace(0.0, 1.0, 11).unwrap().values()[10], 1.0);
    assert!(Axis::new(vec![]).is_err());
    assert!(Axis::new(vec![f64::NAN]).is_err());
    assert!(Axis::stepped(0.0, 1.0, 0.0, true).is_err());
    assert_eq!(Axis::stepped(0.0, 1.0, 0.25, false).unwrap().len(), 4);
    assert_eq!(Axis::stepped(0.0, 1.1, 0.25, false).unwrap().len(), 5);
}

#[test]
fn family_names_round_trip() {
    for name in [
        "ideal",
        "ad",
        "pd",
        "cd",
        "cr",
        "bitflip",
        "bitphaseflip",
        "phaseflip",
        "depolarizing",
    ] {
        assert_eq!(name.parse::<ChannelFamily>().unwrap().name(), name);
    }
    assert!("xyz".parse::<ChannelFamily>().is_err());
}

fn shape_grid(param: Axis) -> SweepGrid {
    SweepGrid {
        param,
        theta: Axis::single(T).unwrap(),
        phi: Axis::single(F).unwrap(),
    }
}

#[test]
fn ad_and_pd_sweeps_favour_bob2() {
    for family in [ChannelFamily::AmplitudeDamping, ChannelFamily::PhaseDamping] {
        let grid = shape_grid(family.default_param_axis(11).unwrap());
        let pts = sweep(
            &grid,
            family,
            &[Agent::Bob2, Agent::Bob3],
            Convention::CALIBRATED,
        )
        .unwrap();
        assert_eq!(pts.len(), 22);
        for pair in pts.chunks(2) {
            assert_eq!(pair[0].reconstructor, Agent::Bob2);
            assert_eq!(pair[1].reconstructor, Agent::Bob3);
            assert!(pair[0].f_sim >= pair[1].f_sim - 1e-12, "{pair:?}");
            assert!(pair[0].abs_diff.unwrap() < 1e-6);
        }
    }
}

#[test]
fn pd_sweep_is_phase_independent() {
    let grid = SweepGrid {
        param: Axis::single(0.6).unwrap(),
        theta: Axis::single(0.5).unwrap(),
        phi: Axis::linspace(0.0, 2.0 * PI, 25).unwrap(),
    };
    let pts = sweep(
        &grid,
        ChannelFamily::PhaseDamping,
        &[Agent::Bob2, Agent::Bob3],
        Convention::CALIBRATED,
    )
    .unwrap();
    for r in [Agent::Bob2, Agent::Bob3] {
        let vals: Vec<f64> = pts
            .iter()
            .filter(|p| p.reconstructor == r)
            .map(|p| p.f_sim)
            .collect();
        let spread = vals.iter().cloned().fold(f64::MIN, f64::max)
            - vals.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread < 1e-9);
    }
}

#[test]
fn cr_window_has_bob3_ahead() {
    let grid = shape_grid(Axis::linspace(FRAC_PI_3 + 0.01, 2.0 * FRAC_PI_3 - 0.01, 21).unwrap());
    let pts = sweep(
        &grid,
        ChannelFamily::CollectiveRotation,
        &[Agent::Bob2, Agent::Bob3],
        Convention::CALIBRATED,
    )
    .unwrap();
    assert!(pts.chunks(2).any(|p| p[1].f_sim > p[0].f_sim));
}

#[test]
fn sweep_order_independent_of_thread_count() {
    let grid = SweepGrid {
        param: Axis::linspace(0.0, 1.0, 3).unwrap(),
        theta: Axis::linspace(0.0, PI, 3).unwrap(),
        phi: Axis::linspace(0.0, PI, 2).unwrap(),
    };
    let run = |n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
            .install(|| {
                sweep(
                    &grid,
                    ChannelFamily::AmplitudeDamping,
                    &Agent::ALL,
                    Convention::CALIBRATED,
                )
                .unwrap()
            })
    };
    let one = run(1);
    assert_eq!(one.len(), 18 * 3);
    assert_eq!(one, run(4));
    assert_eq!(one[0].param_value, 0.0);
    assert_eq!(one[53].param_value, 1.0);
}

#[test]
fn sweep_fidelities_stay_in_unit_interval() {
    let grid = SweepGrid {
        param: Axis::linspace(0.0, 2.0 * PI, 5).unwrap(),
        theta: Axis::linspace(0.0, PI, 4).unwrap(),
        phi: Axis::linspace(0.0, PI, 3).unwrap(),
    };
    for family in [
        ChannelFamily::CollectiveDephasing,
        ChannelFamily::CollectiveRotation,
    ] {
        for p in sweep(&grid, family, &Agent::ALL, Convention::CALIBRATED).unwrap() {
            assert!((-1e-9..=1.0 + 1e-9).contains(&p.f_sim), "{p:?}");
        }
    }
}

#[test]
fn cr_report_is_deterministic_and_helper_symmetric() {
    let a = cr_report(3).unwrap();
    assert_eq!(a.points.len(), 54);
    assert!(a.helper_asymmetry < 1e-9, "{}", a.helper_asymmetry);
    assert_eq!(a, cr_report(3).unwrap());
}

#[test]
fn empty_reconstructor_list_rejected() {
    let grid = shape_grid(Axis::single(0.1).unwrap());
    assert!(sweep(
        &grid,
        ChannelFamily::AmplitudeDamping,
        &[],
        Convention::CALIBRATED
    )
    .is_err());
}
