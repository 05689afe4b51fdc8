//! Matrix realizations of the superoperators `H_0 … H_15` on a truncated
//! two-mode Fock space.

use super::alpha::alpha_vector;
use crate::error::{Error, Result};
use crate::fock::TruncatedDensityMatrix;
use crate::params::SystemParams;
use nalgebra::DMatrix;
use num_complex::Complex64;

type CMat = DMatrix<Complex64>;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `ρ ↦ Σ c · L ρ R`.
#[derive(Debug, Clone)]
pub struct Superoperator {
    cutoff: usize,
    terms: Vec<(Complex64, CMat, CMat)>,
}

impl Superoperator {
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn apply(&self, rho: &TruncatedDensityMatrix) -> Result<TruncatedDensityMatrix> {
        if rho.cutoff() != self.cutoff {
            return Err(Error::DimensionMismatch {
                expected: self.cutoff * self.cutoff,
                got: rho.dim(),
            });
        }
        let d = rho.dim();
        let mut out = CMat::zeros(d, d);
        for (c, l, r) in &self.terms {
            out += (l * rho.matrix() * r) * *c;
        }
        TruncatedDensityMatrix::from_matrix(self.cutoff, out)
    }

    /// Matrix on column-stacked `vec(ρ)`: `vec(LρR) = (Rᵀ ⊗ L) vec(ρ)`.
    pub fn to_matrix(&self) -> CMat {
        let d = self.cutoff * self.cutoff;
        let mut m = CMat::zeros(d * d, d * d);
        for (c, l, r) in &self.terms {
            m += r.transpose().kronecker(l) * *c;
        }
        m
    }
}

/// Truncated ladder operators on the two-mode space.
struct Ladders {
    a: CMat,
    ad: CMat,
    b: CMat,
    bd: CMat,
    id: CMat,
}

impl Ladders {
    fn new(n: usize) -> Self {
        let mut lower = CMat::zeros(n, n);
        for k in 1..n {
            lower[(k - 1, k)] = re((k as f64).sqrt());
        }
        let one = CMat::identity(n, n);
        let a = lower.kronecker(&one);
        let b = one.kronecker(&lower);
        Self {
            ad: a.adjoint(),
            bd: b.adjoint(),
            a,
            b,
            id: CMat::identity(n * n, n * n),
        }
    }
}

/// Superoperator `H_i` (`i = 0` is the identity) at drive phase `phi`.
pub fn superoperator(i: usize, cutoff: usize, phi: f64) -> Result<Superoperator> {
    if cutoff < 2 {
        return Err(Error::CutoffTooSmall(cutoff));
    }
    if i > 15 {
        return Err(Error::SuperoperatorIndex(i));
    }
    let Ladders { a, ad, b, bd, id } = Ladders::new(cutoff);
    let w = Complex64::from_polar(1.0, phi);
    let wc = w.conj();
    let half = re(0.5);
    let ih = I * 0.5;
    let aad = &a * &ad;
    let ada = &ad * &a;
    let bbd = &b * &bd;
    let bdb = &bd * &b;
    let ab = &a * &b;
    let adbd = &ad * &bd;
    let anti =
        |c: Complex64, x: &CMat| vec![(c, x.clone(), id.clone()), (c, id.clone(), x.clone())];
    let mut t: Vec<(Complex64, CMat, CMat)> = Vec::new();
    match i {
        0 => t.push((re(1.0), id.clone(), id.clone())),
        1 | 7 => {
            let (ca, cb) = if i == 1 {
                (half, half)
            } else {
                (re(0.25), re(-0.25))
            };
            for x in [&aad, &ada] {
                t.extend(anti(ca, x));
            }
            for x in [&bbd, &bdb] {
                t.extend(anti(cb, x));
            }
        }
        2 | 8 => {
            let s = if i == 2 { 1.0 } else { -1.0 };
            t.push((re(1.0), a.clone(), ad.clone()));
            t.push((re(s), b.clone(), bd.clone()));
        }
        3 | 9 => {
            let s = if i == 3 { 1.0 } else { -1.0 };
            t.push((re(1.0), ad.clone(), a.clone()));
            t.push((re(s), bd.clone(), b.clone()));
        }
        4 => {
            t.push((I * w, ab.clone(), id.clone()));
            t.push((-I * wc, id.clone(), adbd.clone()));
        }
        11 => {
            t.push((w, ab.clone(), id.clone()));
            t.push((wc, id.clone(), adbd.clone()));
        }
        5 => {
            t.push((I * wc, adbd.clone(), id.clone()));
            t.push((-I * w, id.clone(), ab.clone()));
        }
        12 => {
            t.push((wc, adbd.clone(), id.clone()));
            t.push((w, id.clone(), ab.clone()));
        }
        6 | 10 => {
            let s = if i == 6 { -1.0 } else { 1.0 };
            t.push((ih * wc, bd.clone(), ad.clone()));
            t.push((-ih * w, a.clone(), b.clone()));
            t.push((ih * w * s, b.clone(), a.clone()));
            t.push((-ih * wc * s, ad.clone(), bd.clone()));
        }
        13 | 14 => {
            let s = if i == 13 { 1.0 } else { -1.0 };
            t.push((half * w, a.clone(), b.clone()));
            t.push((half * w * s, b.clone(), a.clone()));
            t.push((half * wc * s, ad.clone(), bd.clone()));
            t.push((half * wc, bd.clone(), ad.clone()));
        }
        15 => {
            for x in [&ada, &bdb] {
                t.push((ih, x.clone(), id.clone()));
                t.push((-ih, id.clone(), x.clone()));
            }
        }
        _ => unreachable!(),
    }
    Ok(Superoperator { cutoff, terms: t })
}

/// Dense `N⁴ × N⁴` matrix of `H_i` on column-stacked density matrices.
pub fn superoperator_matrix(i: usize, cutoff: usize, phi: f64) -> Result<CMat> {
    Ok(superoperator(i, cutoff, phi)?.to_matrix())
}

/// `Σ_i α_i H_i ρ`.
pub fn master_rhs_from_alphas(
    rho: &TruncatedDensityMatrix,
    params: &SystemParams,
) -> Result<TruncatedDensityMatrix> {
    let alpha = alpha_vector(params);
    let n = rho.cutoff();
    let mut out = TruncatedDensityMatrix::zeros(n)?;
    for (i, &ai) in alpha.as_slice().iter().enumerate() {
        if ai == 0.0 {
            continue;
        }
        let term = superoperator(i, n, params.phi)?.apply(rho)?;
        *out.matrix_mut() += term.into_matrix() * re(ai);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(n: usize, ket: (usize, usize), bra: (usize, usize)) -> TruncatedDensityMatrix {
        let mut r = TruncatedDensityMatrix::zeros(n).unwrap();
        r.set(ket, bra, re(1.0));
        r
    }

    #[test]
    fn identity_and_h3_on_vacuum() {
        let vac = TruncatedDensityMatrix::vacuum(4).unwrap();
        let h0 = superoperator(0, 4, 0.3).unwrap().apply(&vac).unwrap();
        assert_eq!(h0, vac);
        let h3 = superoperator(3, 4, 0.3).unwrap().apply(&vac).unwrap();
        let expect = {
            let mut e = basis(4, (1, 0), (1, 0));
            e.set((0, 1), (0, 1), re(1.0));
            e
        };
        assert!(h3.frobenius_distance(&expect).unwrap() < 1e-15);
    }

    #[test]
    fn matrix_form_matches_apply() {
        let n = 3;
        let mut rho = TruncatedDensityMatrix::zeros(n).unwrap();
        for (k, v) in rho.matrix_mut().iter_mut().enumerate() {
            *v = Complex64::new((k as f64 * 0.37).sin(), (k as f64 * 0.11).cos());
        }
        let d = n * n;
        for i in [1, 4, 6, 13, 15] {
            let s = superoperator(i, n, 0.8).unwrap();
            let direct = s.apply(&rho).unwrap();
            let vec_rho = CMat::from_column_slice(d * d, 1, rho.matrix().as_slice());
            let out = s.to_matrix() * vec_rho;
            let reshaped = CMat::from_column_slice(d, d, out.as_slice());
            assert!((reshaped - direct.matrix()).norm() < 1e-12, "H{i}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            superoperator(16, 4, 0.0),
            Err(Error::SuperoperatorIndex(16))
        ));
        assert!(matches!(
            superoperator(1, 1, 0.0),
            Err(Error::CutoffTooSmall(1))
        ));
        let s = superoperator(1, 3, 0.0).unwrap();
        let r = TruncatedDensityMatrix::vacuum(4).unwrap();
        assert!(s.apply(&r).is_err());
    }

    #[test]
    fn dark_vacuum_and_trace_preservation() {
        let p = SystemParams::new(0.6f64, 0.9, 0.0, 0.0, 0.4, 0.0, 0.0).unwrap();
        let vac = TruncatedDensityMatrix::vacuum(5).unwrap();
        let out = master_rhs_from_alphas(&vac, &p).unwrap();
        assert!(out.matrix().norm() < 1e-15);
        let p = SystemParams::new(0.6f64, 0.9, 0.3, 0.2, 0.4, 1.1, 2.0).unwrap();
        let mut rho = TruncatedDensityMatrix::zeros(5).unwrap();
        for (k, v) in rho.matrix_mut().iter_mut().enumerate() {
            *v = Complex64::new((k as f64 * 0.71).cos(), (k as f64 * 0.29).sin());
        }
        rho.hermitize();
        // interior support keeps the truncated ladders exact
        for i in 0..25 {
            for j in 0..25 {
                if i / 5 > 2 || i % 5 > 2 || j / 5 > 2 || j % 5 > 2 {
                    rho.matrix_mut()[(i, j)] = re(0.0);
                }
            }
        }
        let out = master_rhs_from_alphas(&rho, &p).unwrap();
        assert!(out.trace().norm() < 1e-12);
    }
}
