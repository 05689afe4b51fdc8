//! Spectrum and trace powers of the partially transposed state.

use super::negativity::normalizable;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Omitted spectral mass targeted by [`auto_order`].
pub const SPECTRUM_EPS: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtEigenvalue<T = f64> {
    pub p: u32,
    pub q: u32,
    pub value: T,
}

/// `λ_{p,q} = 𝓝 x₊^p x₋^q` for `0 ≤ p ≤ p_max`, `0 ≤ q ≤ q_max`.
pub fn pt_spectrum<T: Real>(
    f3: T,
    f5: T,
    f9: T,
    f12: T,
    p_max: u32,
    q_max: u32,
) -> Result<Vec<PtEigenvalue<T>>> {
    let (xp, xm) = normalizable(f3, f5, f9, f12)?;
    let norm = (T::one() - xp) * (T::one() - xm);
    let mut out = Vec::with_capacity(((p_max + 1) * (q_max + 1)) as usize);
    let mut a = norm;
    for p in 0..=p_max {
        let mut v = a;
        for q in 0..=q_max {
            out.push(PtEigenvalue { p, q, value: v });
            v *= xm;
        }
        a *= xp;
    }
    Ok(out)
}

/// `ceil(ln ε / ln max|x±|)`: the order beyond which terms fall below `ε`.
pub fn auto_order<T: Real>(f3: T, f5: T, f9: T, f12: T) -> Result<u32> {
    let (xp, xm) = normalizable(f3, f5, f9, f12)?;
    let m = xp.abs().max(xm.abs());
    if m == T::zero() {
        return Ok(0);
    }
    let n = (T::lit(SPECTRUM_EPS).ln() / m.ln()).ceil();
    Ok(n.as_f64().max(0.0) as u32)
}

/// `Tr[(ρ^{T_A})ʲ] = (1−x₊)ʲ(1−x₋)ʲ / ((1−x₊ʲ)(1−x₋ʲ))`.
pub fn trace_power<T: Real>(f3: T, f5: T, f9: T, f12: T, j: u32) -> Result<T> {
    if j == 0 {
        return Err(Error::ZeroPower);
    }
    let (xp, xm) = normalizable(f3, f5, f9, f12)?;
    let one = T::one();
    let ji = j as i32;
    Ok(((one - xp) * (one - xm)).powi(ji) / ((one - xp.powi(ji)) * (one - xm.powi(ji))))
}

/// Exponents `(F₃⁽ʲ⁾, F₅⁽ʲ⁾, F₉⁽ʲ⁾, F₁₂⁽ʲ⁾)` of the `j`-th power:
/// `F₃⁽ʲ⁾ = (x₊ʲ + x₋ʲ)/2`, `F_k⁽ʲ⁾ = f_k (x₊ʲ − x₋ʲ)/(x₊ − x₋)`.
pub fn recursive_exponents<T: Real>(f3: T, f5: T, f9: T, f12: T, j: u32) -> Result<[T; 4]> {
    if j == 0 {
        return Err(Error::ZeroPower);
    }
    let (xp, xm) = normalizable(f3, f5, f9, f12)?;
    let ji = j as i32;
    let two = T::lit(2.0);
    let ratio = if xp == xm {
        T::lit(j as f64) * f3.powi(ji - 1)
    } else {
        (xp.powi(ji) - xm.powi(ji)) / (xp - xm)
    };
    Ok([
        (xp.powi(ji) + xm.powi(ji)) / two,
        f5 * ratio,
        f9 * ratio,
        f12 * ratio,
    ])
}

/// [`trace_power`] through the recursive exponents:
/// `𝓝ʲ / ((1 − F₃⁽ʲ⁾)² − F₅⁽ʲ⁾² − F₉⁽ʲ⁾² − F₁₂⁽ʲ⁾²)`.
pub fn trace_power_recursive<T: Real>(f3: T, f5: T, f9: T, f12: T, j: u32) -> Result<T> {
    let [g3, g5, g9, g12] = recursive_exponents(f3, f5, f9, f12, j)?;
    let (xp, xm) = normalizable(f3, f5, f9, f12)?;
    let one = T::one();
    let norm = (one - xp) * (one - xm);
    Ok(norm.powi(j as i32) / ((one - g3) * (one - g3) - g5 * g5 - g9 * g9 - g12 * g12))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_and_squeezed() {
        let s = pt_spectrum(0.1f64, 0.2, 0.05, -0.1, 0, 0).unwrap();
        let (xp, xm) = super::super::x_pm(0.1, 0.2, 0.05, -0.1);
        assert!((s[0].value - (1.0 - xp) * (1.0 - xm)).abs() < 1e-16);
        let s = pt_spectrum(0.0f64, 0.5, 0.0, 0.0, 3, 3).unwrap();
        for e in s {
            let want = 0.75 * 0.5f64.powi(e.p as i32) * (-0.5f64).powi(e.q as i32);
            assert!((e.value - want).abs() < 1e-16);
        }
    }

    #[test]
    fn full_spectrum_sums_to_one() {
        let s = pt_spectrum(0.1f64, 0.3, 0.1, 0.2, 60, 60).unwrap();
        let total: f64 = s.iter().map(|e| e.value).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trace_powers() {
        assert!((trace_power(0.1f64, 0.3, 0.1, 0.2, 1).unwrap() - 1.0).abs() < 1e-15);
        assert!((trace_power(0.0f64, 0.5, 0.0, 0.0, 2).unwrap() - 1.0).abs() < 1e-15);
        assert!((trace_power(0.5f64, 0.0, 0.0, 0.0, 2).unwrap() - 1.0 / 9.0).abs() < 1e-15);
        assert_eq!(trace_power(0.5f64, 0.0, 0.0, 0.0, 0), Err(Error::ZeroPower));
    }

    #[test]
    fn recursion_agrees() {
        for f in [
            [0.1f64, 0.3, 0.1, 0.2],
            [0.4, 0.0, 0.0, 0.0],
            [0.0, -0.6, 0.1, 0.0],
        ] {
            for j in 1..=6 {
                let a = trace_power(f[0], f[1], f[2], f[3], j).unwrap();
                let b = trace_power_recursive(f[0], f[1], f[2], f[3], j).unwrap();
                assert!((a - b).abs() < 1e-13 * a.abs().max(1.0), "{f:?} j={j}");
            }
        }
        let e = recursive_exponents(0.3f64, 0.0, 0.0, 0.0, 3).unwrap();
        assert!((e[0] - 0.027).abs() < 1e-16);
    }

    #[test]
    fn order_estimate() {
        assert_eq!(auto_order(0.0f64, 0.0, 0.0, 0.0).unwrap(), 0);
        let n = auto_order(0.0f64, 0.5, 0.0, 0.0).unwrap();
        assert!(0.5f64.powi(n as i32) <= SPECTRUM_EPS);
        assert!(0.5f64.powi(n as i32 - 1) > SPECTRUM_EPS);
    }
}
