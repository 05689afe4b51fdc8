use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::json;

/// Two-mode density matrix on a Fock space truncated at `cutoff` levels per
/// mode. Basis state `|n1, n2⟩` sits at index `n1 * cutoff + n2`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedDensityMatrix {
    cutoff: usize,
    data: DMatrix<Complex64>,
}

impl TruncatedDensityMatrix {
    pub fn zeros(cutoff: usize) -> Result<Self> {
        if cutoff < 2 {
            return Err(Error::CutoffTooSmall(cutoff));
        }
        let d = cutoff * cutoff;
        Ok(Self {
            cutoff,
            data: DMatrix::zeros(d, d),
        })
    }

    pub fn from_matrix(cutoff: usize, data: DMatrix<Complex64>) -> Result<Self> {
        if cutoff < 2 {
            return Err(Error::CutoffTooSmall(cutoff));
        }
        let d = cutoff * cutoff;
        if data.nrows() != d || data.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: data.nrows().max(data.ncols()),
            });
        }
        Ok(Self { cutoff, data })
    }

    /// `|00⟩⟨00|`.
    pub fn vacuum(cutoff: usize) -> Result<Self> {
        let mut r = Self::zeros(cutoff)?;
        r.data[(0, 0)] = Complex64::new(1.0, 0.0);
        Ok(r)
    }

    /// Product of two thermal states `(1−τ)τ^n` truncated at the cutoff
    /// (not renormalized).
    pub fn thermal_product(cutoff: usize, tau1: f64, tau2: f64) -> Result<Self> {
        let mut r = Self::zeros(cutoff)?;
        for n1 in 0..cutoff {
            for n2 in 0..cutoff {
                let p = (1.0 - tau1) * tau1.powi(n1 as i32) * (1.0 - tau2) * tau2.powi(n2 as i32);
                let i = r.index(n1, n2);
                r.data[(i, i)] = Complex64::new(p, 0.0);
            }
        }
        Ok(r)
    }

    #[inline]
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.cutoff * self.cutoff
    }

    #[inline]
    pub fn index(&self, n1: usize, n2: usize) -> usize {
        n1 * self.cutoff + n2
    }

    /// `⟨n1 n2|ρ|m1 m2⟩`.
    pub fn get(&self, n: (usize, usize), m: (usize, usize)) -> Complex64 {
        self.data[(self.index(n.0, n.1), self.index(m.0, m.1))]
    }

    pub fn set(&mut self, n: (usize, usize), m: (usize, usize), v: Complex64) {
        let (i, j) = (self.index(n.0, n.1), self.index(m.0, m.1));
        self.data[(i, j)] = v;
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn matrix_mut(&mut self) -> &mut DMatrix<Complex64> {
        &mut self.data
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.data
    }

    pub fn trace(&self) -> Complex64 {
        self.data.trace()
    }

    /// Largest entry of `|ρ − ρ†|`.
    pub fn hermiticity_error(&self) -> f64 {
        let d = self.dim();
        let mut e = 0.0f64;
        for i in 0..d {
            for j in i..d {
                e = e.max((self.data[(i, j)] - self.data[(j, i)].conj()).norm());
            }
        }
        e
    }

    /// Replaces `ρ` by `(ρ + ρ†)/2`.
    pub fn hermitize(&mut self) {
        let d = self.dim();
        for i in 0..d {
            self.data[(i, i)].im = 0.0;
            for j in i + 1..d {
                let v = (self.data[(i, j)] + self.data[(j, i)].conj()) * 0.5;
                self.data[(i, j)] = v;
                self.data[(j, i)] = v.conj();
            }
        }
    }

    /// Population with either mode in the top level `N − 1`.
    pub fn tail_mass(&self) -> f64 {
        let n = self.cutoff;
        let mut s = 0.0;
        for n1 in 0..n {
            for n2 in 0..n {
                if n1 == n - 1 || n2 == n - 1 {
                    let i = self.index(n1, n2);
                    s += self.data[(i, i)].re;
                }
            }
        }
        s
    }

    pub fn frobenius_distance(&self, other: &Self) -> Result<f64> {
        self.check_same(other)?;
        Ok((&self.data - &other.data).norm())
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self.cutoff != other.cutoff {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(())
    }

    /// `{"cutoff", "dim", "data": [[re, im], ...]}` in row-major order.
    pub fn to_json(&self) -> serde_json::Value {
        let d = self.dim();
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let z = self.data[(i, j)];
                entries.push(json!([z.re, z.im]));
            }
        }
        json!({ "cutoff": self.cutoff, "dim": d, "data": entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks() {
        assert_eq!(
            TruncatedDensityMatrix::zeros(1),
            Err(Error::CutoffTooSmall(1))
        );
        assert!(TruncatedDensityMatrix::from_matrix(3, DMatrix::zeros(8, 8)).is_err());
        let v = TruncatedDensityMatrix::vacuum(3).unwrap();
        assert_eq!(v.trace(), Complex64::new(1.0, 0.0));
        assert_eq!(v.tail_mass(), 0.0);
    }

    #[test]
    fn hermitize_and_json() {
        let mut r = TruncatedDensityMatrix::zeros(2).unwrap();
        r.set((0, 0), (1, 1), Complex64::new(1.0, 2.0));
        assert!(r.hermiticity_error() > 1.0);
        r.hermitize();
        assert!(r.hermiticity_error() < 1e-15);
        let j = r.to_json();
        assert_eq!(j["dim"], 4);
        assert_eq!(j["data"].as_array().unwrap().len(), 16);
        assert_eq!(j["data"][3][1], 1.0);
    }

    #[test]
    fn thermal_tail() {
        let r = TruncatedDensityMatrix::thermal_product(30, 0.5, 0.0).unwrap();
        assert!((r.tail_mass() - 0.5f64.powi(30)).abs() < 1e-15);
    }
}
