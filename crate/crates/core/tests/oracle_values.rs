// oracle digits are kept exactly as printed by the reference script
#![allow(clippy::excessive_precision)]

//! Reference values computed independently at 40 digits by
//! `tests/oracles/oracle.py` and frozen here.

use std::f64::consts::PI;

use faddeev_core::analysis::{sobolev_norm, NormSpec};
use faddeev_core::cutoff::{bridge, StaticPoint};
use faddeev_core::grid::{l2_norm, Dimension, RadialGrid};
use faddeev_core::model::{build_phi, energy, nonlinearity_point};
use faddeev_core::{CutoffProfile, Tolerances, UState, VState};

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn bridge_and_derivatives() {
    let cases = [
        (0.3, 0.12957046939970591747, 1.4833001917996044935, 6.7562698930600470638),
        (0.5, 0.5, 2.0, 0.0),
        (0.8, 0.97702263008997438505, 0.59631246327302952358, -9.5869878292966179784),
    ];
    for (x, b, b1, b2) in cases {
        let (v, d1, d2) = bridge(x);
        assert!(close(v, b, 1e-15), "b({x}) = {v}");
        assert!(close(d1, b1, 1e-14), "b'({x}) = {d1}");
        assert!(close(d2, b2, 1e-13), "b''({x}) = {d2}");
    }
}

#[test]
fn nonlinearity_pointwise() {
    let cases = [
        ((0.5, 2.0, -1.5, 0.3), 4.1993813382168768287),
        ((1.7, 0.4, 0.9, -2.0), -0.5468840534841150238),
        ((3.0, 3.0, 0.1, 0.0), 0.01518673032655570972),
    ];
    for ((r, u, ur, ut), expect) in cases {
        let got = nonlinearity_point(r, f64::sin(u), f64::sin(2.0 * u), ur, ut);
        assert!(close(got, expect, 1e-13), "{got} vs {expect}");
    }
}

#[test]
fn energy_of_gaussian_angle() {
    let grid = RadialGrid::new(16.0, 2048).unwrap();
    let u = grid.sample(|r| PI * (-r * r).exp());
    let mut state = UState { u, u_t: vec![0.0; 2048], t: 0.0, n1: 1 };
    assert!(close(energy(&state, &grid).unwrap().total, 5.3665119245489741967, 1e-7));
    state.u_t = grid.sample(|r| r * (-r * r).exp());
    let e = energy(&state, &grid).unwrap();
    assert!(close(e.total, 5.4915119245489741967, 1e-7));
    assert!(close(e.kinetic, 0.125, 1e-7));
}

#[test]
fn energy_of_blended_bump_and_plateau() {
    let grid = RadialGrid::new(16.0, 4096).unwrap();
    let cut = CutoffProfile::new(1, &grid, &Tolerances::default()).unwrap();
    let plateau = cut.phi_cut.value.clone();
    let bump: Vec<f64> = grid
        .radii()
        .iter()
        .zip(&plateau)
        .map(|(r, p)| p + (1.0 - p / PI) * PI * (-r * r).exp())
        .collect();
    let e = |u: Vec<f64>| energy(&UState { u, u_t: vec![0.0; 4096], t: 0.0, n1: 1 }, &grid).unwrap().total;
    assert!(close(e(bump), 14.669255037362440224, 1e-6));
    assert!(close(e(plateau), 15.357110101969569858, 1e-6));
}

#[test]
fn static_term_far_field() {
    let tol = Tolerances::default();
    for (r, g) in [(2.5, -0.18006718803116852309), (3.03125, -0.10443654906419260246), (6.0, -0.01424908529972654178)] {
        let s = StaticPoint::at(r, 1, &tol, 0).unwrap();
        assert!((s.g - g).abs() < 1e-11, "G({r}) = {}", s.g);
    }
}

#[test]
fn auxiliary_field_body_integral() {
    let grid = RadialGrid::new(16.0, 256).unwrap();
    let tol = Tolerances::default();
    let cut = CutoffProfile::new(1, &grid, &tol).unwrap();
    // nodes 48 and 40 sit at r = 3.03125 and r = 2.53125
    for (j, v, body) in [(48, 0.7, 0.7225625350179464722), (40, -1.3, -1.3471283758212745498)] {
        let state = VState { v: vec![v; 256], v_t: vec![0.0; 256], t: 0.0 };
        let phi = build_phi(&state, &cut, &grid, &tol).unwrap();
        assert!((phi.phi[j] - cut.static_term[j] - body).abs() < 1e-10);
    }
}

#[test]
fn spectral_and_grid_norms() {
    let grid = RadialGrid::new(16.0, 1024).unwrap();
    let f = grid.sample(|r| (-0.5 * r * r).exp());
    let h32 = sobolev_norm(&f, &NormSpec::homogeneous(1.5, Dimension::Four), &grid).unwrap();
    assert!((h32 - 5.7271423384002442511).abs() < 1e-8, "{h32}");
    let g = grid.sample(|r| (-r * r).exp());
    assert!((l2_norm(&g, &grid, Dimension::Two).unwrap() - 1.2533141373155002512).abs() < 1e-12);
}
