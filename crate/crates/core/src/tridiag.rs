//! Symmetric tridiagonal eigenproblem: implicit-shift QL that tracks only the
//! first component of every eigenvector (enough for Golub–Welsch weights).

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 30;

/// Eigenvalues (ascending) and eigenvector first components of the symmetric
/// tridiagonal matrix with diagonal `diag` and off-diagonal `off`
/// (`off.len() == diag.len() - 1`).
pub fn eigen_first_components<T: Real>(diag: &[T], off: &[T]) -> Result<(Vec<T>, Vec<T>)> {
    let n = diag.len();
    assert!(n >= 1 && off.len() + 1 == n, "tridiagonal shape mismatch");
    let mut d = diag.to_vec();
    let mut e: Vec<T> = off.iter().copied().chain(std::iter::once(T::zero())).collect();
    let mut z = vec![T::zero(); n];
    z[0] = T::one();
    let eps = T::epsilon();

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                if e[m].abs() <= eps * (d[m].abs() + d[m + 1].abs()) {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if sweeps >= MAX_SWEEPS {
                return Err(Error::NoConvergence {
                    index: l,
                    sweeps,
                    size: n,
                    residual: e[l].abs().as_f64(),
                });
            }
            sweeps += 1;

            let mut p = d[l];
            let mut g = (d[l + 1] - p) / (T::two() * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - p + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (T::one(), T::one());
            p = T::zero();
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r.is_zero() {
                    // split: deflate and restart at l
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + T::two() * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if underflow {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap_or(std::cmp::Ordering::Equal));
    Ok((
        order.iter().map(|&i| d[i]).collect(),
        order.iter().map(|&i| z[i]).collect(),
    ))
}
