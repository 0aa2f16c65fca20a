//! Small fixed- and adaptive-step Runge-Kutta helpers on flat state vectors.

/// Classical RK4 with a fixed number of steps; calls `observer` with
/// `(step_index, t, state)` after every step including the initial one.
pub fn rk4<const N: usize>(
    f: &dyn Fn(f64, &[f64; N]) -> [f64; N],
    mut y: [f64; N],
    t0: f64,
    t1: f64,
    steps: usize,
    mut observer: impl FnMut(usize, f64, &[f64; N]),
) -> [f64; N] {
    let h = (t1 - t0) / steps as f64;
    observer(0, t0, &y);
    let mut t = t0;
    for s in 0..steps {
        y = rk4_step(f, t, &y, h);
        t = t0 + (s + 1) as f64 * h;
        observer(s + 1, t, &y);
    }
    y
}

pub fn rk4_step<const N: usize>(
    f: &dyn Fn(f64, &[f64; N]) -> [f64; N],
    t: f64,
    y: &[f64; N],
    h: f64,
) -> [f64; N] {
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &axpy(y, &k1, 0.5 * h));
    let k3 = f(t + 0.5 * h, &axpy(y, &k2, 0.5 * h));
    let k4 = f(t + h, &axpy(y, &k3, h));
    let mut out = *y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn axpy<const N: usize>(y: &[f64; N], k: &[f64; N], a: f64) -> [f64; N] {
    let mut out = *y;
    for i in 0..N {
        out[i] += a * k[i];
    }
    out
}

/// Cash–Karp embedded 4(5) pair with proportional step control.
/// Returns the final state, or an error message if the step size underflows.
pub fn rkck_adaptive<const N: usize>(
    f: &dyn Fn(f64, &[f64; N]) -> [f64; N],
    mut y: [f64; N],
    t0: f64,
    t1: f64,
    rel_tol: f64,
    mut macro_step: impl FnMut(f64, &mut [f64; N]),
) -> Result<[f64; N], String> {
    const A: [f64; 6] = [0.0, 0.2, 0.3, 0.6, 1.0, 0.875];
    const B: [[f64; 5]; 6] = [
        [0.0, 0.0, 0.0, 0.0, 0.0],
        [0.2, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0],
        [0.3, -0.9, 1.2, 0.0, 0.0],
        [-11.0 / 54.0, 2.5, -70.0 / 27.0, 35.0 / 27.0, 0.0],
        [
            1631.0 / 55296.0,
            175.0 / 512.0,
            575.0 / 13824.0,
            44275.0 / 110592.0,
            253.0 / 4096.0,
        ],
    ];
    const C5: [f64; 6] = [37.0 / 378.0, 0.0, 250.0 / 621.0, 125.0 / 594.0, 0.0, 512.0 / 1771.0];
    const C4: [f64; 6] = [
        2825.0 / 27648.0,
        0.0,
        18575.0 / 48384.0,
        13525.0 / 55296.0,
        277.0 / 14336.0,
        0.25,
    ];

    let span = t1 - t0;
    let mut t = t0;
    let mut h = span / 100.0;
    let min_h = span.abs() * 1e-14;
    let scale = |y: &[f64; N]| -> f64 {
        y.iter().map(|v| v.abs()).fold(1e-8f64, f64::max)
    };
    while (t - t1).abs() > 1e-300 && (t1 - t) * span.signum() > 0.0 {
        if (t + h - t1) * span.signum() > 0.0 {
            h = t1 - t;
        }
        let mut k: [[f64; N]; 6] = [[0.0; N]; 6];
        k[0] = f(t, &y);
        for s in 1..6 {
            let mut ys = y;
            for j in 0..s {
                for i in 0..N {
                    ys[i] += h * B[s][j] * k[j][i];
                }
            }
            k[s] = f(t + A[s] * h, &ys);
        }
        let mut y5 = y;
        let mut err = 0.0f64;
        for i in 0..N {
            let mut d5 = 0.0;
            let mut d4 = 0.0;
            for s in 0..6 {
                d5 += C5[s] * k[s][i];
                d4 += C4[s] * k[s][i];
            }
            y5[i] += h * d5;
            err = err.max((h * (d5 - d4)).abs());
        }
        let tol = rel_tol * scale(&y);
        if err <= tol || h.abs() <= min_h {
            t += h;
            y = y5;
            macro_step(t, &mut y);
            if err > 0.0 {
                h *= (tol / err).powf(0.2).clamp(0.5, 4.0);
            } else {
                h *= 4.0;
            }
        } else {
            h *= (tol / err).powf(0.25).max(0.1);
            if h.abs() < min_h {
                return Err(format!("step underflow at t={t}: err {err:.3e} > tol {tol:.3e}"));
            }
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rk4_harmonic_oscillator() {
        let f = |_t: f64, y: &[f64; 2]| [y[1], -y[0]];
        let y = rk4(&f, [1.0, 0.0], 0.0, std::f64::consts::TAU, 4096, |_, _, _| {});
        assert!((y[0] - 1.0).abs() < 1e-10);
        assert!(y[1].abs() < 1e-10);
    }

    #[test]
    fn adaptive_matches_exponential() {
        let f = |_t: f64, y: &[f64; 1]| [y[0]];
        let y = rkck_adaptive(&f, [1.0], 0.0, 1.0, 1e-12, |_, _| {}).unwrap();
        assert!((y[0] - 1.0f64.exp()).abs() < 1e-9);
    }
}
