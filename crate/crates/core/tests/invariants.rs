//! Property tests for invariants that must hold on every admissible input.

use proptest::prelude::*;
use twomode::algebra::{structure_constants, DIM};
use twomode::entanglement::{
    cvs_separable, moments, negativity, steady_negativity_symmetric, trace_power,
    transient_negativity,
};
use twomode::fock::{lindblad_rhs, TruncatedDensityMatrix};
use twomode::weinorman::{analytic_symmetric, integrate_at, IntegrateOptions, WnState};
use twomode::SystemParams;

/// Physical `(f₃, f₅, f₉, f₁₂)`: `|f₉| ≤ f₃` and `x₊ < 1`.
fn state() -> impl Strategy<Value = [f64; 4]> {
    (
        0.0..0.6f64,
        -1.0..1.0f64,
        0.0..0.98f64,
        0.0..std::f64::consts::TAU,
    )
        .prop_map(|(f3, u, frac, ang)| {
            let rmax = 0.99 - f3;
            let f9 = u * f3.min(rmax);
            let z = frac * (rmax * rmax - f9 * f9).sqrt();
            [f3, z * ang.cos(), f9, z * ang.sin()]
        })
}

fn params() -> impl Strategy<Value = SystemParams> {
    (
        0.1..2.0f64,
        0.1..2.0f64,
        0.0..1.5f64,
        0.0..1.5f64,
        -1.0..1.0f64,
        0.0..3.0f64,
        0.0..6.2f64,
    )
        .prop_map(|(k1, k2, n1, n2, d, xi, phi)| {
            SystemParams::new(k1, k2, n1, n2, d, xi, phi).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn negativity_is_nonnegative_and_matches_sign(f in state()) {
        let n = negativity(f[0], f[1], f[2], f[3]).unwrap();
        prop_assert!(n.value >= 0.0);
        prop_assert_eq!(n.separable, n.value == 0.0);
        prop_assert_eq!(n.separable, n.x_minus >= 0.0);
    }

    #[test]
    fn pt_trace_and_purity(f in state()) {
        let t1 = trace_power(f[0], f[1], f[2], f[3], 1).unwrap();
        let t2 = trace_power(f[0], f[1], f[2], f[3], 2).unwrap();
        prop_assert!((t1 - 1.0).abs() < 1e-10, "trace {}", t1);
        prop_assert!(t2 > 0.0 && t2 <= 1.0 + 1e-12, "purity {}", t2);
    }

    #[test]
    fn criteria_agree_without_f9(f in state()) {
        let sep = cvs_separable(f[0], f[1], 0.0, f[3]).unwrap();
        let neg = negativity(f[0], f[1], 0.0, f[3]).unwrap();
        prop_assert_eq!(sep, neg.separable);
    }

    #[test]
    fn occupations_are_physical(f in state()) {
        let m = moments(f[0], f[1], f[2], f[3]).unwrap();
        prop_assert!(m.n_a >= -1e-12 && m.n_b >= -1e-12);
        // |⟨ab⟩|² ≤ ⟨a†a⟩⟨bb†⟩
        prop_assert!(m.ab.norm_sqr() <= m.n_a * (m.n_b + 1.0) + 1e-9);
    }

    #[test]
    fn trajectories_keep_their_invariants(p in params(), t in 0.1..4.0f64) {
        let opts = IntegrateOptions::with_tolerances(1e-10, 1e-12);
        if let Ok(traj) = integrate_at(&p, &[t], &opts, &WnState::vacuum()) {
            let s = traj.samples[0];
            prop_assert!(s.normalization_residual().abs() < 1e-8);
            prop_assert!(s.f3() >= -1e-12);
            prop_assert!(s.x_plus() < 1.0);
            prop_assert!(traj.meta.max_invariant_residual < 1e-8);
        }
    }

    #[test]
    fn transient_negativity_grows_to_its_limit(
        k in 0.1..2.0f64, n in 0.0..1.0f64, xi in 0.0..4.0f64, t in 0.0..20.0f64, dt in 0.0..5.0f64,
    ) {
        let a = transient_negativity(t, k, n, xi).unwrap();
        let b = transient_negativity(t + dt, k, n, xi).unwrap();
        let lim = steady_negativity_symmetric(k, n, xi).unwrap();
        prop_assert!(a <= b + 1e-14 && b <= lim + 1e-14, "{} {} {}", a, b, lim);
    }

    #[test]
    fn f32_tracks_f64(k in 0.2..2.0f64, n in 0.0..1.0f64, xi in 0.0..3.0f64, t in 0.0..5.0f64) {
        let hi = analytic_symmetric(t, k, n, xi).unwrap();
        let lo = analytic_symmetric(t as f32, k as f32, n as f32, xi as f32).unwrap();
        for i in [3, 5] {
            prop_assert!((hi.f[i] - lo.f[i] as f64).abs() < 1e-4, "f{}: {} vs {}", i, hi.f[i], lo.f[i]);
        }
    }

    #[test]
    fn lindblad_output_is_traceless_and_hermitian(p in params(), seed in 0.0..10.0f64) {
        let n = 4;
        let mut rho = TruncatedDensityMatrix::zeros(n).unwrap();
        for (k, v) in rho.matrix_mut().iter_mut().enumerate() {
            *v = num_complex::Complex64::new((k as f64 * 0.7 + seed).sin(), (k as f64 * 1.3 - seed).cos());
        }
        rho.hermitize();
        let out = lindblad_rhs(&rho, &p).unwrap();
        prop_assert!(out.trace().norm() < 1e-11);
        prop_assert!(out.hermiticity_error() < 1e-11);
    }

    #[test]
    fn bracket_is_antisymmetric(i in 1..=DIM, j in 1..=DIM) {
        let table = structure_constants();
        let a = table.bracket(i, j).unwrap();
        let b = table.bracket(j, i).unwrap();
        prop_assert!(a.iter().zip(b.iter()).all(|(x, y)| *x == -*y));
    }
}
