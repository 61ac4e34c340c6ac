#![allow(clippy::excessive_precision)]

use faddeev_core::analysis::validate_initial_data;
use faddeev_core::model::{energy, topological_charge};
use faddeev_core::{CutoffProfile, ModelParams, RadialGrid};
use faddeev_harness::config::DataProfile;
use faddeev_harness::registry::initial_data_registry;
use proptest::prelude::*;

fn setup(n: usize) -> (ModelParams, RadialGrid, CutoffProfile) {
    let params = ModelParams { n_cells: n, ..Default::default() };
    let grid = RadialGrid::new(params.r_max, n).unwrap();
    let cut = CutoffProfile::new(params.n1, &grid, &params.tolerances).unwrap();
    (params, grid, cut)
}

#[test]
fn every_profile_passes_validation() {
    let (params, grid, cut) = setup(1024);
    for name in DataProfile::NAMES {
        let profile = DataProfile::lookup(name).unwrap();
        let d = initial_data_registry(&profile, &params, &cut, &grid).unwrap();
        let report = validate_initial_data(&d.u0, &d.u1, &params, &cut, &grid).unwrap();
        assert!(report.passed(), "{name}: {:?}", report.failures);
        assert!(report.phi_time_norms().unwrap().is_finite(), "{name}");
    }
}

#[test]
fn plateau_has_charge_minus_one_and_oracle_energy() {
    let (params, grid, cut) = setup(2048);
    let d = initial_data_registry(&DataProfile::Plateau, &params, &cut, &grid).unwrap();
    let u = d.state(1);
    assert_eq!(topological_charge(&u, &grid, &params.tolerances).unwrap().charge, -1);
    let e = energy(&u, &grid).unwrap().total;
    assert!((e - 15.357110101969569858).abs() < 1e-4, "{e}");
}

#[test]
fn gauss_bump_energy_matches_oracle() {
    let (params, grid, cut) = setup(2048);
    let d = initial_data_registry(&DataProfile::GaussBump { alpha: 1.0 }, &params, &cut, &grid).unwrap();
    let e = energy(&d.state(1), &grid).unwrap().total;
    assert!((e - 14.669255037362440224).abs() < 1e-5, "{e}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn bumps_and_kicks_stay_admissible(alpha in 0.3..4.0f64, beta in -3.0..3.0f64) {
        let (params, grid, cut) = setup(512);
        for profile in [DataProfile::GaussBump { alpha }, DataProfile::KineticKick { beta }] {
            let d = initial_data_registry(&profile, &params, &cut, &grid).unwrap();
            let report = validate_initial_data(&d.u0, &d.u1, &params, &cut, &grid).unwrap();
            prop_assert!(report.passed(), "{:?}: {:?}", profile, report.failures);
        }
    }
}
