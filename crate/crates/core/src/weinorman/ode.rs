//! Dormand-Prince 5(4) with continuous output, for small fixed-size systems.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl<T> {
    pub rtol: T,
    pub atol: T,
    pub max_steps: usize,
    /// Upper bound on the step size; `None` means unbounded.
    pub h_max: Option<T>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
    pub rhs_evals: usize,
}

/// Quartic interpolant over the last accepted step.
#[derive(Debug, Clone, Copy)]
pub struct DenseStep<T, const D: usize> {
    pub t0: T,
    pub h: T,
    rc: [[T; D]; 5],
}

impl<T: Real, const D: usize> DenseStep<T, D> {
    pub fn eval(&self, t: T) -> [T; D] {
        let th = (t - self.t0) / self.h;
        let th1 = T::one() - th;
        let mut y = [T::zero(); D];
        for (i, yi) in y.iter_mut().enumerate() {
            let rc = |k: usize| self.rc[k][i];
            *yi = rc(0) + th * (rc(1) + th1 * (rc(2) + th * (rc(3) + th1 * rc(4))));
        }
        y
    }
}

fn c<T: Real>(x: f64) -> T {
    T::lit(x)
}

fn axpy<T: Real, const D: usize>(y: &[T; D], terms: &[(T, &[T; D])]) -> [T; D] {
    let mut out = *y;
    for (a, k) in terms {
        for i in 0..D {
            out[i] += *a * k[i];
        }
    }
    out
}

fn err_norm<T: Real, const D: usize>(
    e: &[T; D],
    y0: &[T; D],
    y1: &[T; D],
    ctl: &StepControl<T>,
) -> T {
    let mut s = T::zero();
    for i in 0..D {
        let sc = ctl.atol + ctl.rtol * y0[i].abs().max(y1[i].abs());
        let q = e[i] / sc;
        s += q * q;
    }
    (s / T::lit(D as f64)).sqrt()
}

/// Integrates `y' = f(t, y)` from `(t0, y0)` to `t_end`.
///
/// `on_step` sees every accepted step (as a dense interpolant plus the new
/// state) and may abort the run by returning an error.
pub fn solve<T, const D: usize, F, S>(
    mut f: F,
    t0: T,
    y0: [T; D],
    t_end: T,
    ctl: &StepControl<T>,
    mut on_step: S,
) -> Result<([T; D], StepStats)>
where
    T: Real,
    F: FnMut(T, &[T; D]) -> [T; D],
    S: FnMut(&DenseStep<T, D>, T, &[T; D]) -> Result<()>,
{
    let mut stats = StepStats::default();
    let (mut t, mut y) = (t0, y0);
    if t_end <= t0 {
        return Ok((y, stats));
    }
    let span = t_end - t0;
    let h_max = ctl.h_max.unwrap_or(span).min(span);

    let mut k1 = f(t, &y);
    stats.rhs_evals += 1;
    let mut h = initial_step(&mut f, t, &y, &k1, ctl, h_max, &mut stats);

    let (a21, a31, a32) = (c::<T>(1.0 / 5.0), c::<T>(3.0 / 40.0), c::<T>(9.0 / 40.0));
    let (a41, a42, a43) = (
        c::<T>(44.0 / 45.0),
        c::<T>(-56.0 / 15.0),
        c::<T>(32.0 / 9.0),
    );
    let (a51, a52, a53, a54) = (
        c::<T>(19372.0 / 6561.0),
        c::<T>(-25360.0 / 2187.0),
        c::<T>(64448.0 / 6561.0),
        c::<T>(-212.0 / 729.0),
    );
    let (a61, a62, a63, a64, a65) = (
        c::<T>(9017.0 / 3168.0),
        c::<T>(-355.0 / 33.0),
        c::<T>(46732.0 / 5247.0),
        c::<T>(49.0 / 176.0),
        c::<T>(-5103.0 / 18656.0),
    );
    let (a71, a73, a74, a75, a76) = (
        c::<T>(35.0 / 384.0),
        c::<T>(500.0 / 1113.0),
        c::<T>(125.0 / 192.0),
        c::<T>(-2187.0 / 6784.0),
        c::<T>(11.0 / 84.0),
    );
    let (e1, e3, e4, e5, e6, e7) = (
        c::<T>(71.0 / 57600.0),
        c::<T>(-71.0 / 16695.0),
        c::<T>(71.0 / 1920.0),
        c::<T>(-17253.0 / 339200.0),
        c::<T>(22.0 / 525.0),
        c::<T>(-1.0 / 40.0),
    );
    let (d1, d3, d4, d5, d6, d7) = (
        c::<T>(-12715105075.0 / 11282082432.0),
        c::<T>(87487479700.0 / 32700410799.0),
        c::<T>(-10690763975.0 / 1880347072.0),
        c::<T>(701980252875.0 / 199316789632.0),
        c::<T>(-1453857185.0 / 822651844.0),
        c::<T>(69997945.0 / 29380423.0),
    );
    let (c2, c3, c4, c5) = (c::<T>(0.2), c::<T>(0.3), c::<T>(0.8), c::<T>(8.0 / 9.0));
    let safety = c::<T>(0.9);
    let eps = T::epsilon();

    while t < t_end {
        if stats.accepted + stats.rejected >= ctl.max_steps {
            return Err(Error::TooManySteps(ctl.max_steps));
        }
        let mut last = false;
        if t + h >= t_end || (t_end - t - h).abs() <= eps * t_end.abs() * c(16.0) {
            h = t_end - t;
            last = true;
        }
        if !(h > T::zero()) || !h.is_finite() || h <= eps * c::<T>(16.0) * t.abs() {
            return Err(Error::StepSizeUnderflow {
                t: t.as_f64(),
                h: h.as_f64(),
            });
        }
        let k2 = f(t + c2 * h, &axpy(&y, &[(h * a21, &k1)]));
        let k3 = f(t + c3 * h, &axpy(&y, &[(h * a31, &k1), (h * a32, &k2)]));
        let k4 = f(
            t + c4 * h,
            &axpy(&y, &[(h * a41, &k1), (h * a42, &k2), (h * a43, &k3)]),
        );
        let k5 = f(
            t + c5 * h,
            &axpy(
                &y,
                &[
                    (h * a51, &k1),
                    (h * a52, &k2),
                    (h * a53, &k3),
                    (h * a54, &k4),
                ],
            ),
        );
        let k6 = f(
            t + h,
            &axpy(
                &y,
                &[
                    (h * a61, &k1),
                    (h * a62, &k2),
                    (h * a63, &k3),
                    (h * a64, &k4),
                    (h * a65, &k5),
                ],
            ),
        );
        let y1 = axpy(
            &y,
            &[
                (h * a71, &k1),
                (h * a73, &k3),
                (h * a74, &k4),
                (h * a75, &k5),
                (h * a76, &k6),
            ],
        );
        let k7 = f(t + h, &y1);
        stats.rhs_evals += 6;

        let mut e = [T::zero(); D];
        for i in 0..D {
            e[i] =
                h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        }
        let finite = y1.iter().all(|v| v.is_finite());
        let err = if finite {
            err_norm(&e, &y, &y1, ctl)
        } else {
            T::infinity()
        };

        if err <= T::one() {
            let mut rc = [[T::zero(); D]; 5];
            for i in 0..D {
                let ydiff = y1[i] - y[i];
                let bspl = h * k1[i] - ydiff;
                rc[0][i] = y[i];
                rc[1][i] = ydiff;
                rc[2][i] = bspl;
                rc[3][i] = ydiff - h * k7[i] - bspl;
                rc[4][i] = h
                    * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
            }
            let dense = DenseStep { t0: t, h, rc };
            let t_new = if last { t_end } else { t + h };
            stats.accepted += 1;
            on_step(&dense, t_new, &y1)?;
            t = t_new;
            y = y1;
            k1 = k7;
            let fac = if err == T::zero() {
                c(5.0)
            } else {
                (safety * err.powf(c(-0.2))).min(c(5.0)).max(c(0.2))
            };
            h = (h * fac).min(h_max);
        } else {
            stats.rejected += 1;
            let fac = if err.is_finite() {
                (safety * err.powf(c(-0.2))).max(c(0.1))
            } else {
                c(0.1)
            };
            h *= fac;
        }
    }
    Ok((y, stats))
}

fn initial_step<T, const D: usize, F>(
    f: &mut F,
    t: T,
    y: &[T; D],
    k1: &[T; D],
    ctl: &StepControl<T>,
    h_max: T,
    stats: &mut StepStats,
) -> T
where
    T: Real,
    F: FnMut(T, &[T; D]) -> [T; D],
{
    let scale = |v: &[T; D]| {
        let mut s = T::zero();
        for i in 0..D {
            let sc = ctl.atol + ctl.rtol * y[i].abs();
            s += (v[i] / sc) * (v[i] / sc);
        }
        (s / T::lit(D as f64)).sqrt()
    };
    let d0 = scale(y);
    let d1 = scale(k1);
    let h0 = if d0 < c(1e-5) || d1 < c(1e-5) {
        c(1e-6)
    } else {
        c::<T>(0.01) * d0 / d1
    }
    .min(h_max);
    let y1 = axpy(y, &[(h0, k1)]);
    let k = f(t + h0, &y1);
    stats.rhs_evals += 1;
    let mut diff = [T::zero(); D];
    for i in 0..D {
        diff[i] = k[i] - k1[i];
    }
    let d2 = scale(&diff) / h0;
    let m = d1.max(d2);
    let h1 = if m <= c(1e-15) {
        (h0 * c(1e-3)).max(c(1e-6))
    } else {
        (c::<T>(0.01) / m).powf(c(0.2))
    };
    (h0 * c(100.0)).min(h1).min(h_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctl(tol: f64) -> StepControl<f64> {
        StepControl {
            rtol: tol,
            atol: tol * 1e-2,
            max_steps: 100_000,
            h_max: None,
        }
    }

    #[test]
    fn exponential_decay() {
        let (y, st) = solve(
            |_, y: &[f64; 1]| [-y[0]],
            0.0,
            [1.0],
            5.0,
            &ctl(1e-10),
            |_, _, _| Ok(()),
        )
        .unwrap();
        assert!((y[0] - (-5.0f64).exp()).abs() < 1e-10);
        assert!(st.accepted > 10);
    }

    #[test]
    fn dense_output_of_oscillator() {
        let mut worst = 0.0f64;
        solve(
            |_, y: &[f64; 2]| [y[1], -y[0]],
            0.0,
            [0.0, 1.0],
            10.0,
            &ctl(1e-11),
            |d, t1, _| {
                for k in 1..8 {
                    let t = d.t0 + (t1 - d.t0) * k as f64 / 8.0;
                    let y = d.eval(t);
                    worst = worst
                        .max((y[0] - t.sin()).abs())
                        .max((y[1] - t.cos()).abs());
                }
                Ok(())
            },
        )
        .unwrap();
        assert!(worst < 1e-9, "{worst}");
    }

    #[test]
    fn blow_up_is_reported() {
        // y' = y², y(0) = 1 blows up at t = 1
        let r = solve(
            |_, y: &[f64; 1]| [y[0] * y[0]],
            0.0,
            [1.0],
            2.0,
            &ctl(1e-8),
            |_, _, _| Ok(()),
        );
        assert!(matches!(
            r,
            Err(Error::StepSizeUnderflow { .. }) | Err(Error::TooManySteps(_))
        ));
    }

    #[test]
    fn works_in_f32() {
        let c = StepControl {
            rtol: 1e-5f32,
            atol: 1e-7,
            max_steps: 10_000,
            h_max: None,
        };
        let (y, _) = solve(
            |_, y: &[f32; 1]| [-2.0 * y[0]],
            0.0,
            [1.0],
            1.0,
            &c,
            |_, _, _| Ok(()),
        )
        .unwrap();
        assert!((y[0] - (-2.0f32).exp()).abs() < 1e-4);
    }
}
