//! Direct Lindblad right-hand side in the truncated Fock basis.

use super::TruncatedDensityMatrix;
use crate::error::{Error, Result};
use crate::params::SystemParams;
use num_complex::Complex64;

/// Precomputed Lindblad generator for fixed parameters and cutoff.
///
/// `H = −δ(a†a + b†b) + (ξ/4) a†b† + (ξ*/4) ab` with `ξ = |ξ| e^{i(π−φ)}`,
/// plus damping `κ(n+1)𝒟[a]` and heating `κn𝒟[a†]` on each mode.
/// Ladder products are truncated, so the map is exactly trace preserving on
/// the truncated space.
#[derive(Debug, Clone)]
pub struct LindbladGenerator {
    n: usize,
    delta: f64,
    c: Complex64,
    down: [f64; 2],
    up: [f64; 2],
    sq: Vec<f64>,
}

impl LindbladGenerator {
    pub fn new(params: &SystemParams, cutoff: usize) -> Result<Self> {
        if cutoff < 2 {
            return Err(Error::CutoffTooSmall(cutoff));
        }
        let xi = Complex64::from_polar(params.xi_abs, std::f64::consts::PI - params.phi);
        Ok(Self {
            n: cutoff,
            delta: params.delta,
            c: xi / 4.0,
            down: [
                params.kappa1 * (params.nth1 + 1.0),
                params.kappa2 * (params.nth2 + 1.0),
            ],
            up: [params.kappa1 * params.nth1, params.kappa2 * params.nth2],
            sq: (0..=cutoff).map(|k| (k as f64).sqrt()).collect(),
        })
    }

    pub fn cutoff(&self) -> usize {
        self.n
    }

    /// Diagonal of the truncated `a a†`: `k + 1` below the top level, 0 on it.
    #[inline]
    fn raise_lower(&self, k: usize) -> f64 {
        if k + 1 < self.n {
            (k + 1) as f64
        } else {
            0.0
        }
    }

    /// Writes `L(ρ)` into `out`; both are column-major `N² × N²` buffers.
    pub fn apply_raw(&self, rho: &[Complex64], out: &mut [Complex64]) {
        self.apply_inner(rho, out, false)
    }

    /// As [`apply_raw`](Self::apply_raw) for `ρ` supported on
    /// `n₁ − n₂ = m₁ − m₂`, a subspace `L` preserves. Entries outside it
    /// are left untouched in `out`.
    pub fn apply_raw_sector(&self, rho: &[Complex64], out: &mut [Complex64]) {
        self.apply_inner(rho, out, true)
    }

    fn apply_inner(&self, rho: &[Complex64], out: &mut [Complex64], sector: bool) {
        let n = self.n;
        let d = n * n;
        debug_assert_eq!(rho.len(), d * d);
        debug_assert_eq!(out.len(), d * d);
        let sq = &self.sq;
        let at = |r: usize, c: usize| rho[r + c * d];
        let mi = Complex64::new(0.0, -1.0);
        let cc = self.c.conj();
        for m1 in 0..n {
            for m2 in 0..n {
                let col = m1 * n + m2;
                for n1 in 0..n {
                    let n2_range = if sector {
                        // n₂ = n₁ − m₁ + m₂
                        match (n1 + m2).checked_sub(m1) {
                            Some(v) if v < n => v..v + 1,
                            _ => continue,
                        }
                    } else {
                        0..n
                    };
                    for n2 in n2_range {
                        let row = n1 * n + n2;
                        let r = at(row, col);
                        // commutator part, -i[H, ρ]
                        let mut h = r * (-self.delta * ((n1 + n2) as f64 - (m1 + m2) as f64));
                        if n1 > 0 && n2 > 0 {
                            h += self.c * (sq[n1] * sq[n2]) * at(row - n - 1, col);
                        }
                        if n1 + 1 < n && n2 + 1 < n {
                            h += cc * (sq[n1 + 1] * sq[n2 + 1]) * at(row + n + 1, col);
                        }
                        if m1 + 1 < n && m2 + 1 < n {
                            h -= self.c * (sq[m1 + 1] * sq[m2 + 1]) * at(row, col + n + 1);
                        }
                        if m1 > 0 && m2 > 0 {
                            h -= cc * (sq[m1] * sq[m2]) * at(row, col - n - 1);
                        }
                        let mut v = mi * h;

                        // mode a: jumps shift the first index by ±1 (stride n)
                        let (g_dn, g_up) = (self.down[0], self.up[0]);
                        if g_dn != 0.0 {
                            if n1 + 1 < n && m1 + 1 < n {
                                v += g_dn * sq[n1 + 1] * sq[m1 + 1] * at(row + n, col + n);
                            }
                            v -= 0.5 * g_dn * (n1 + m1) as f64 * r;
                        }
                        if g_up != 0.0 {
                            if n1 > 0 && m1 > 0 {
                                v += g_up * sq[n1] * sq[m1] * at(row - n, col - n);
                            }
                            v -= 0.5 * g_up * (self.raise_lower(n1) + self.raise_lower(m1)) * r;
                        }
                        // mode b: stride 1
                        let (g_dn, g_up) = (self.down[1], self.up[1]);
                        if g_dn != 0.0 {
                            if n2 + 1 < n && m2 + 1 < n {
                                v += g_dn * sq[n2 + 1] * sq[m2 + 1] * at(row + 1, col + 1);
                            }
                            v -= 0.5 * g_dn * (n2 + m2) as f64 * r;
                        }
                        if g_up != 0.0 {
                            if n2 > 0 && m2 > 0 {
                                v += g_up * sq[n2] * sq[m2] * at(row - 1, col - 1);
                            }
                            v -= 0.5 * g_up * (self.raise_lower(n2) + self.raise_lower(m2)) * r;
                        }
                        out[row + col * d] = v;
                    }
                }
            }
        }
    }

    /// True when `ρ` vanishes outside `n₁ − n₂ = m₁ − m₂`.
    pub fn in_sector(rho: &TruncatedDensityMatrix) -> bool {
        let n = rho.cutoff();
        let m = rho.matrix();
        (0..n * n).all(|col| {
            (0..n * n).all(|row| {
                let (n1, n2, m1, m2) = (row / n, row % n, col / n, col % n);
                n1 + m2 == n2 + m1 || m[(row, col)] == Complex64::new(0.0, 0.0)
            })
        })
    }

    pub fn apply(&self, rho: &TruncatedDensityMatrix) -> Result<TruncatedDensityMatrix> {
        if rho.cutoff() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n * self.n,
                got: rho.dim(),
            });
        }
        let mut out = TruncatedDensityMatrix::zeros(self.n)?;
        self.apply_raw(rho.matrix().as_slice(), out.matrix_mut().as_mut_slice());
        Ok(out)
    }
}

/// Right-hand side of the master equation at `rho`.
pub fn lindblad_rhs(
    rho: &TruncatedDensityMatrix,
    params: &SystemParams,
) -> Result<TruncatedDensityMatrix> {
    LindbladGenerator::new(params, rho.cutoff())?.apply(rho)
}
