//! Commutator table of the fifteen superoperators.

use crate::error::{Error, Result};

/// Number of non-identity generators.
pub const DIM: usize = 15;

/// Integer coefficients of a combination `Σ c_k H_k`, slot 0 is the identity.
pub type Combination = [i32; DIM + 1];

const Z: (i8, u8) = (0, 0);

// Row i, column j holds (c, k) with [H_i, H_j] = c·H_k. Every nonzero
// commutator in this algebra is a single generator.
#[rustfmt::skip]
const TABLE: [[(i8, u8); DIM]; DIM] = [
    [Z, (-2, 2), (2, 3), (-2, 4), (2, 5), Z, Z, (-2, 8), (2, 9), Z, (-2, 11), (2, 12), Z, Z, Z],
    [(2, 2), Z, (1, 1), Z, (2, 6), (-1, 4), (1, 8), Z, (2, 7), Z, Z, (2, 13), (1, 11), Z, Z],
    [(-2, 3), (-1, 1), Z, (2, 6), Z, (-1, 5), (-1, 9), (-2, 7), Z, Z, (-2, 13), Z, (-1, 12), Z, Z],
    [(2, 4), Z, (-2, 6), Z, (-1, 1), (-1, 2), Z, Z, (2, 10), (-1, 8), Z, (2, 15), Z, Z, (-1, 11)],
    [(-2, 5), (-2, 6), Z, (1, 1), Z, (-1, 3), Z, (-2, 10), Z, (1, 9), (-2, 15), Z, Z, Z, (1, 12)],
    [Z, (1, 4), (1, 5), (1, 2), (1, 3), Z, (1, 10), Z, Z, (1, 7), Z, Z, (1, 15), Z, (1, 13)],
    [Z, (-1, 8), (1, 9), Z, Z, (-1, 10), Z, (-1, 2), (1, 3), (-1, 6), Z, Z, (-1, 14), (-1, 13), Z],
    [(2, 8), Z, (2, 7), Z, (2, 10), Z, (1, 2), Z, (1, 1), (1, 4), Z, (2, 14), Z, (-1, 11), Z],
    [(-2, 9), (-2, 7), Z, (-2, 10), Z, Z, (-1, 3), (-1, 1), Z, (-1, 5), (2, 14), Z, Z, (-1, 12), Z],
    [Z, Z, Z, (1, 8), (-1, 9), (-1, 7), (1, 6), (-1, 4), (1, 5), Z, Z, Z, Z, (-1, 15), (1, 14)],
    [(2, 11), Z, (2, 13), Z, (2, 15), Z, Z, Z, (-2, 14), Z, Z, (1, 1), (1, 2), (1, 8), (1, 4)],
    [(-2, 12), (-2, 13), Z, (-2, 15), Z, Z, Z, (-2, 14), Z, Z, (-1, 1), Z, (-1, 3), (1, 9), (-1, 5)],
    [Z, (-1, 11), (1, 12), Z, Z, (-1, 15), (1, 14), Z, Z, Z, (-1, 2), (1, 3), Z, (1, 7), (-1, 6)],
    [Z, Z, Z, Z, Z, Z, (1, 13), (1, 11), (1, 12), (1, 15), (-1, 8), (-1, 9), (-1, 7), Z, (-1, 10)],
    [Z, Z, Z, (1, 11), (-1, 12), (-1, 13), Z, Z, Z, (-1, 14), (-1, 4), (1, 5), (1, 6), (1, 10), Z],
];

/// `[H_i, H_j] = Σ_k c_{ij}^k H_k` for `i, j ∈ 1..=15`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTable {
    c: Box<[[Combination; DIM]; DIM]>,
}

/// The commutator table of the algebra.
pub fn structure_constants() -> StructureTable {
    let mut c = Box::new([[[0i32; DIM + 1]; DIM]; DIM]);
    for (i, row) in TABLE.iter().enumerate() {
        for (j, &(coef, k)) in row.iter().enumerate() {
            if coef != 0 {
                c[i][j][k as usize] = coef as i32;
            }
        }
    }
    StructureTable { c }
}

fn check(i: usize) -> Result<usize> {
    if (1..=DIM).contains(&i) {
        Ok(i - 1)
    } else {
        Err(Error::GeneratorIndex(i))
    }
}

impl StructureTable {
    /// Coefficients of `[H_i, H_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> Result<Combination> {
        Ok(self.c[check(i)?][check(j)?])
    }

    /// Nonzero `(k, c_{ij}^k)` pairs of `[H_i, H_j]`.
    pub fn entries(&self, i: usize, j: usize) -> Result<Vec<(usize, i32)>> {
        let b = self.bracket(i, j)?;
        Ok(b.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k, c))
            .collect())
    }

    /// Bracket of two arbitrary combinations (identity components are central).
    pub fn bracket_combination(&self, x: &Combination, y: &Combination) -> Combination {
        let mut out = [0i32; DIM + 1];
        for i in 0..DIM {
            if x[i + 1] == 0 {
                continue;
            }
            for j in 0..DIM {
                if y[j + 1] == 0 {
                    continue;
                }
                let s = x[i + 1] * y[j + 1];
                for (o, c) in out.iter_mut().zip(self.c[i][j].iter()) {
                    *o += s * c;
                }
            }
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..DIM).all(|i| {
            (0..DIM).all(|j| {
                self.c[i][j]
                    .iter()
                    .zip(self.c[j][i].iter())
                    .all(|(a, b)| *a == -*b)
            })
        })
    }

    /// No commutator has an identity component.
    pub fn is_closed(&self) -> bool {
        self.c.iter().flatten().all(|b| b[0] == 0)
    }

    /// Index triples `(i, j, k)` with `i < j < k` where the Jacobi sum is nonzero.
    pub fn jacobi_violations(&self) -> Vec<(usize, usize, usize)> {
        let mut bad = Vec::new();
        for i in 1..=DIM {
            for j in i + 1..=DIM {
                for k in j + 1..=DIM {
                    let (ei, ej, ek) = (unit(i), unit(j), unit(k));
                    let a = self.bracket_combination(&ei, &self.bracket_combination(&ej, &ek));
                    let b = self.bracket_combination(&ej, &self.bracket_combination(&ek, &ei));
                    let c = self.bracket_combination(&ek, &self.bracket_combination(&ei, &ej));
                    if (0..=DIM).any(|n| a[n] + b[n] + c[n] != 0) {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }
}

/// The combination consisting of `H_i` alone.
pub fn unit(i: usize) -> Combination {
    let mut e = [0i32; DIM + 1];
    e[i] = 1;
    e
}
