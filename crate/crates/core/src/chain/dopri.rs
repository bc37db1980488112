//! Dormand–Prince 5(4) stages for the chain right-hand side.

/// `f = M y`.
pub(crate) fn rhs(b: &[f64], y: &[f64], f: &mut [f64]) {
    let n = y.len();
    for k in 0..n {
        let up = if k + 1 < n { b[k + 1] * y[k + 1] } else { 0.0 };
        let down = if k > 0 { b[k] * y[k - 1] } else { 0.0 };
        f[k] = -up + down;
    }
}

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order minus embedded fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Default)]
pub(crate) struct DopriWork {
    k: [Vec<f64>; 7],
    tmp: Vec<f64>,
}

/// One step; writes the fifth-order solution to `out` and returns the
/// scaled max-norm error estimate.
pub(crate) fn dopri_step(
    b: &[f64],
    y: &[f64],
    h: f64,
    out: &mut [f64],
    work: &mut DopriWork,
    rel_tol: f64,
    abs_tol: f64,
) -> f64 {
    let n = y.len();
    for k in work.k.iter_mut() {
        k.resize(n, 0.0);
    }
    work.tmp.resize(n, 0.0);
    rhs(b, y, &mut work.k[0]);
    for s in 1..7 {
        for i in 0..n {
            let mut acc = y[i];
            for j in 0..s {
                acc += h * A[s][j] * work.k[j][i];
            }
            work.tmp[i] = acc;
        }
        let (_, tail) = work.k.split_at_mut(s);
        rhs(b, &work.tmp, &mut tail[0]);
        if s == 6 {
            out.copy_from_slice(&work.tmp);
        }
    }
    let mut err: f64 = 0.0;
    for i in 0..n {
        let mut e = 0.0;
        for s in 0..7 {
            e += E[s] * work.k[s][i];
        }
        let scale = abs_tol + rel_tol * y[i].abs().max(out[i].abs());
        err = err.max((h * e).abs() / scale);
    }
    err
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_accuracy() {
        let b = [0.0, 1.0];
        let mut y = vec![1.0, 0.0];
        let mut out = vec![0.0; 2];
        let mut w = DopriWork::default();
        for _ in 0..100 {
            let e = dopri_step(&b, &y, 1e-2, &mut out, &mut w, 1e-10, 1e-12);
            assert!(e < 1.0);
            y.copy_from_slice(&out);
        }
        assert!((y[0] - 1f64.cos()).abs() < 1e-12);
    }
}
