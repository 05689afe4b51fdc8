//! Coefficients of the master equation in the superoperator basis.

use crate::params::{Sign, SystemParams};
use crate::scalar::Real;

/// `ρ̇ = Σ_{i=0}^{15} α_i H_i ρ`, with `H_0` the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaVector<T = f64>(pub [T; 16]);

impl<T: Real> AlphaVector<T> {
    pub fn get(&self, i: usize) -> T {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[T; 16] {
        &self.0
    }
}

pub fn alpha_vector<T: Real>(p: &SystemParams<T>) -> AlphaVector<T> {
    let half = T::lit(0.5);
    let quarter = T::lit(0.25);
    let (one, two) = (T::one(), T::lit(2.0));
    let mut a = [T::zero(); 16];
    a[0] = half * p.kappa_sum();
    a[1] = -quarter * p.c(two, one, Sign::Plus);
    a[2] = half * p.c(one, one, Sign::Plus);
    a[3] = half * p.c(one, T::zero(), Sign::Plus);
    a[4] = quarter * p.xi_abs;
    a[5] = quarter * p.xi_abs;
    a[7] = -half * p.c(two, one, Sign::Minus);
    a[8] = half * p.c(one, one, Sign::Minus);
    a[9] = half * p.c(one, T::zero(), Sign::Minus);
    a[15] = two * p.delta;
    AlphaVector(a)
}
