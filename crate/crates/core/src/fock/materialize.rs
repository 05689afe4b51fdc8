//! Fock-basis matrix elements of the closed-form state.

use super::TruncatedDensityMatrix;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// `ln k!` for `k = 0..=n`.
pub(crate) fn ln_factorials(n: usize) -> Vec<f64> {
    let mut t = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    t.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        t.push(acc);
    }
    t
}

/// Builds `𝓝 Σ g₊ⁱ g₋ʲ zᵏ z̄ˡ √((i+k)!(j+k)!(i+l)!(j+l)!)/(i! j! k! l!) |i+k, j+k⟩⟨i+l, j+l|`
/// with `g± = f₃ ± f₉`, `z = (f₁₂ + i f₅) e^{−iφ}` and `𝓝 = (1−x₊)(1−x₋)`,
/// keeping every term with all occupations below `cutoff`.
pub fn materialize(
    f3: f64,
    f5: f64,
    f9: f64,
    f12: f64,
    phi: f64,
    cutoff: usize,
) -> Result<TruncatedDensityMatrix> {
    let mut rho = TruncatedDensityMatrix::zeros(cutoff)?;
    let r = (f5 * f5 + f9 * f9 + f12 * f12).sqrt();
    let (xp, xm) = (f3 + r, f3 - r);
    if !(xp < 1.0 && xm > -1.0) || !xp.is_finite() {
        return Err(Error::NonNormalizable {
            x_plus: xp,
            x_minus: xm,
        });
    }
    let norm = (1.0 - xp) * (1.0 - xm);
    let gp = f3 + f9;
    let gm = f3 - f9;
    let z = Complex64::new(f12, f5) * Complex64::from_polar(1.0, -phi);
    let n = cutoff;
    let lf = ln_factorials(2 * n);
    let pow = |x: f64| -> Vec<f64> { (0..n).map(|k| x.powi(k as i32)).collect() };
    let (gp_pow, gm_pow) = (pow(gp), pow(gm));
    let zp: Vec<Complex64> = (0..n).map(|k| z.powu(k as u32)).collect();
    let m = rho.matrix_mut();
    for i in 0..n {
        for j in 0..n {
            let gij = norm * gp_pow[i] * gm_pow[j];
            if gij == 0.0 {
                continue;
            }
            let kmax = n - i.max(j);
            for k in 0..kmax {
                let row = (i + k) * n + (j + k);
                for l in 0..kmax {
                    let col = (i + l) * n + (j + l);
                    let lnc = 0.5 * (lf[i + k] + lf[j + k] + lf[i + l] + lf[j + l])
                        - (lf[i] + lf[j] + lf[k] + lf[l]);
                    m[(row, col)] += zp[k] * zp[l].conj() * (gij * lnc.exp());
                }
            }
        }
    }
    Ok(rho)
}
