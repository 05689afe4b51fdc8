//! Partial transposition and Hermitian spectra of two-mode matrices.

use super::TruncatedDensityMatrix;
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Eigenvalues below `-NEG_THRESHOLD` count towards the negativity.
pub const NEG_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Transposes the indices of one mode: for `A`, `|n₁n₂⟩⟨m₁m₂| → |m₁n₂⟩⟨n₁m₂|`.
pub fn partial_transpose(rho: &TruncatedDensityMatrix, which: Subsystem) -> TruncatedDensityMatrix {
    let n = rho.cutoff();
    let mut out = TruncatedDensityMatrix::zeros(n).expect("cutoff already validated");
    for n1 in 0..n {
        for n2 in 0..n {
            for m1 in 0..n {
                for m2 in 0..n {
                    let v = rho.get((n1, n2), (m1, m2));
                    match which {
                        Subsystem::A => out.set((m1, n2), (n1, m2), v),
                        Subsystem::B => out.set((n1, m2), (m1, n2), v),
                    }
                }
            }
        }
    }
    out
}

/// Groups indices into the connected components of the nonzero pattern.
///
/// A symmetric permutation to these blocks is exact, so the spectrum is the
/// union of the block spectra.
fn blocks(m: &DMatrix<Complex64>) -> Vec<Vec<usize>> {
    let d = m.nrows();
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for j in 0..d {
        for i in 0..d {
            if i != j && m[(i, j)] != Complex64::new(0.0, 0.0) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..d {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

fn sub(m: &DMatrix<Complex64>, idx: &[usize]) -> DMatrix<Complex64> {
    DMatrix::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])])
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut out = Vec::with_capacity(m.nrows());
    for idx in blocks(m) {
        if idx.len() == 1 {
            out.push(m[(idx[0], idx[0])].re);
        } else {
            let e = sub(m, &idx).symmetric_eigenvalues();
            out.extend(e.iter().copied());
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Eigenvalues of `ρ^{T_A}`, ascending.
pub fn pt_eigenvalues(rho: &TruncatedDensityMatrix) -> Vec<f64> {
    hermitian_eigenvalues(partial_transpose(rho, Subsystem::A).matrix())
}

/// `Σ |λ|` over eigenvalues of `ρ^{T_A}` below `−1e−10`.
pub fn negativity_numeric(rho: &TruncatedDensityMatrix) -> f64 {
    negativity_numeric_with(rho, Subsystem::A)
}

pub fn negativity_numeric_with(rho: &TruncatedDensityMatrix, which: Subsystem) -> f64 {
    hermitian_eigenvalues(partial_transpose(rho, which).matrix())
        .into_iter()
        .filter(|&l| l < -NEG_THRESHOLD)
        .map(f64::abs)
        .sum()
}

/// `Tr(Mʲ)` by repeated multiplication, block by block.
pub fn trace_of_power(m: &DMatrix<Complex64>, j: u32) -> Result<Complex64> {
    if j == 0 {
        return Err(Error::ZeroPower);
    }
    let mut total = Complex64::new(0.0, 0.0);
    for idx in blocks(m) {
        let b = sub(m, &idx);
        let mut p = b.clone();
        for _ in 1..j {
            p = &p * &b;
        }
        total += p.trace();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell() -> TruncatedDensityMatrix {
        let mut r = TruncatedDensityMatrix::zeros(2).unwrap();
        let h = Complex64::new(0.5, 0.0);
        for a in [(0, 0), (1, 1)] {
            for b in [(0, 0), (1, 1)] {
                r.set(a, b, h);
            }
        }
        r
    }

    #[test]
    fn transpose_is_involution() {
        let mut r = TruncatedDensityMatrix::zeros(3).unwrap();
        for (k, v) in r.matrix_mut().iter_mut().enumerate() {
            *v = Complex64::new(k as f64, -(k as f64) * 0.5);
        }
        for s in [Subsystem::A, Subsystem::B] {
            assert_eq!(partial_transpose(&partial_transpose(&r, s), s), r);
            assert_eq!(partial_transpose(&r, s).trace(), r.trace());
        }
    }

    #[test]
    fn bell_pair() {
        let e = pt_eigenvalues(&bell());
        assert!((e[0] + 0.5).abs() < 1e-15);
        assert!((negativity_numeric(&bell()) - 0.5).abs() < 1e-15);
        assert!((negativity_numeric_with(&bell(), Subsystem::B) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn product_state_stays_positive() {
        let r = TruncatedDensityMatrix::thermal_product(4, 0.3, 0.6).unwrap();
        let before = hermitian_eigenvalues(r.matrix());
        let after = pt_eigenvalues(&r);
        assert_eq!(before, after);
        assert_eq!(negativity_numeric(&r), 0.0);
    }

    #[test]
    fn matrix_power_trace() {
        let b = bell();
        let t2 = trace_of_power(b.matrix(), 2).unwrap();
        assert!((t2.re - 1.0).abs() < 1e-15);
        assert!(trace_of_power(b.matrix(), 0).is_err());
    }
}
