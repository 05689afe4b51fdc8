//! Closed forms against the truncated Fock-space solver.

use twomode::entanglement::{moments_with_phase, negativity};
use twomode::fock::{
    evolve, materialize, moments_numeric, negativity_numeric, EvolveOptions, TruncatedDensityMatrix,
};
use twomode::weinorman::{integrate_at, IntegrateOptions, WnState};
use twomode::SystemParams;

fn wn_at(p: &SystemParams, t: f64) -> WnState {
    let opts = IntegrateOptions::with_tolerances(1e-12, 1e-14);
    integrate_at(p, &[t], &opts, &WnState::vacuum())
        .unwrap()
        .samples[0]
}

#[test]
fn asymmetric_detuned_evolution_matches_materialized_state() {
    let p = SystemParams::new(0.7, 1.1, 0.2, 0.05, 0.3, 1.2, 0.8).unwrap();
    let t = 0.8;
    let n = 14;
    let s = wn_at(&p, t);
    let [f3, f5, f9, f12] = s.quad();
    assert!(f9.abs() > 1e-3, "asymmetric baths should populate f9");
    let closed = materialize(f3, f5, f9, f12, p.phi, n).unwrap();
    let rep = evolve(
        &TruncatedDensityMatrix::vacuum(n).unwrap(),
        &p,
        t,
        EvolveOptions::default(),
    )
    .unwrap();
    assert!(rep.richardson_error.unwrap() < 1e-8);
    assert!(rep.max_tail_mass < 1e-9);
    let dist = closed.frobenius_distance(&rep.rho).unwrap();
    assert!(dist < 1e-7, "distance {dist:e}");
    let neg = negativity(f3, f5, f9, f12).unwrap().value;
    assert!((neg - negativity_numeric(&rep.rho)).abs() < 1e-7);
}

#[test]
fn moments_match_oracle() {
    let p = SystemParams::new(0.5, 0.9, 0.3, 0.1, -0.4, 1.5, 2.1).unwrap();
    let s = wn_at(&p, 1.2);
    let [f3, f5, f9, f12] = s.quad();
    let closed = moments_with_phase(f3, f5, f9, f12, p.phi).unwrap();
    let numeric = moments_numeric(&materialize(f3, f5, f9, f12, p.phi, 40).unwrap());
    assert!(
        (closed.n_a - numeric.n_a).abs() < 1e-9,
        "{closed:?} {numeric:?}"
    );
    assert!((closed.n_b - numeric.n_b).abs() < 1e-9);
    assert!((closed.ab - numeric.ab).norm() < 1e-9);
}

#[test]
fn negativity_is_phase_independent() {
    let p = SystemParams::symmetric(1.0, 0.1, 1.5, 0.0).unwrap();
    let [f3, f5, f9, f12] = wn_at(&p, 1.0).quad();
    let base = negativity_numeric(&materialize(f3, f5, f9, f12, 0.0, 24).unwrap());
    for phi in [0.9, 2.5, 4.0] {
        let v = negativity_numeric(&materialize(f3, f5, f9, f12, phi, 24).unwrap());
        assert!((v - base).abs() < 1e-10);
    }
    assert!((base - negativity(f3, f5, f9, f12).unwrap().value).abs() < 1e-8);
}
