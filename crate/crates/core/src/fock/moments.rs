use super::TruncatedDensityMatrix;
use crate::entanglement::MomentSet;
use num_complex::Complex64;

/// `⟨a†a⟩`, `⟨b†b⟩` and `⟨ab⟩` by direct traces with truncated operators.
pub fn moments_numeric(rho: &TruncatedDensityMatrix) -> MomentSet<f64> {
    let n = rho.cutoff();
    let (mut na, mut nb) = (0.0, 0.0);
    let mut ab = Complex64::new(0.0, 0.0);
    for n1 in 0..n {
        for n2 in 0..n {
            let p = rho.get((n1, n2), (n1, n2)).re;
            na += n1 as f64 * p;
            nb += n2 as f64 * p;
            if n1 + 1 < n && n2 + 1 < n {
                let s = ((n1 + 1) as f64 * (n2 + 1) as f64).sqrt();
                ab += rho.get((n1 + 1, n2 + 1), (n1, n2)) * s;
            }
        }
    }
    MomentSet {
        n_a: na,
        n_b: nb,
        ab,
    }
}
