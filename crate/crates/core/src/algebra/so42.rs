//! Six-dimensional integer representation of the algebra.

use super::structure::{Combination, DIM};
use crate::error::{Error, Result};
use std::ops::{Add, Mul, Neg, Sub};

/// 6×6 integer matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct So42Matrix(pub [[i32; 6]; 6]);

/// The invariant metric `diag(−1, −1, 1, 1, 1, 1)`.
pub const METRIC: [i32; 6] = [-1, -1, 1, 1, 1, 1];

impl So42Matrix {
    pub fn zero() -> Self {
        Self::default()
    }

    fn unit(i: usize, j: usize) -> Self {
        let mut m = Self::zero();
        m.0[i - 1][j - 1] = 1;
        m
    }

    /// `L_{ij} = E_{ij} + E_{ji}` (1-based).
    pub fn l(i: usize, j: usize) -> Self {
        Self::unit(i, j) + Self::unit(j, i)
    }

    /// `K_{ij} = E_{ij} − E_{ji}` (1-based).
    pub fn k(i: usize, j: usize) -> Self {
        Self::unit(i, j) - Self::unit(j, i)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero();
        for i in 0..6 {
            for j in 0..6 {
                t.0[j][i] = self.0[i][j];
            }
        }
        t
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// True when `AᵀM + MA = 0`.
    pub fn preserves_metric(&self) -> bool {
        (0..6).all(|i| (0..6).all(|j| self.0[j][i] * METRIC[j] + METRIC[i] * self.0[i][j] == 0))
    }

    /// Frobenius inner product.
    pub fn dot(&self, other: &Self) -> i32 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Expands the matrix in the generator basis.
    ///
    /// The fifteen generators are mutually orthogonal under the Frobenius
    /// product, so coefficients are exact quotients. Returns `None` if the
    /// matrix is not an integer combination of them.
    pub fn decompose(&self) -> Option<Combination> {
        let mut out = [0i32; DIM + 1];
        let mut rebuilt = Self::zero();
        for (k, g) in GENERATORS.iter().enumerate() {
            let g = g();
            let num = self.dot(&g);
            let den = g.dot(&g);
            if num % den != 0 {
                return None;
            }
            out[k + 1] = num / den;
            rebuilt = rebuilt + g * out[k + 1];
        }
        (rebuilt == *self).then_some(out)
    }
}

impl Add for So42Matrix {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..6 {
            for j in 0..6 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl Sub for So42Matrix {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for So42Matrix {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1
    }
}

impl Mul<i32> for So42Matrix {
    type Output = Self;
    fn mul(mut self, s: i32) -> Self {
        self.0.iter_mut().flatten().for_each(|x| *x *= s);
        self
    }
}

impl Mul for So42Matrix {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for i in 0..6 {
            for j in 0..6 {
                out.0[i][j] = (0..6).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        out
    }
}

type L = So42Matrix;

const GENERATORS: [fn() -> So42Matrix; DIM] = [
    || L::l(2, 3) * -2,
    || L::k(1, 2) - L::l(1, 3),
    || L::k(1, 2) + L::l(1, 3),
    || L::l(2, 5) + L::k(3, 5),
    || L::l(2, 5) - L::k(3, 5),
    || L::l(1, 5),
    || -L::l(1, 4),
    || L::k(3, 4) + L::l(2, 4),
    || L::k(3, 4) - L::l(2, 4),
    || L::k(4, 5),
    || -L::k(3, 6) - L::l(2, 6),
    || -L::k(3, 6) + L::l(2, 6),
    || L::l(1, 6),
    // 14 and 15 are K_{4,6} and K_{5,6} in this order; the other pairing
    // does not reproduce the commutator table.
    || L::k(4, 6),
    || L::k(5, 6),
];

/// Matrix image of generator `H_i`, `i ∈ 1..=15`.
pub fn so42_generator(i: usize) -> Result<So42Matrix> {
    if (1..=DIM).contains(&i) {
        Ok(GENERATORS[i - 1]())
    } else {
        Err(Error::GeneratorIndex(i))
    }
}
