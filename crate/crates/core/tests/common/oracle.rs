//! Eigenvalues of small symmetric tridiagonal matrices from the characteristic
//! polynomial alone: three-term determinant recurrence, a sign-change scan,
//! then bisection on the sign of the polynomial itself.

/// `det(T - xI)` by the recurrence `p_i = (d_i - x) p_{i-1} - e_{i-1}² p_{i-2}`.
pub fn char_poly(diag: &[f64], offdiag: &[f64], x: f64) -> f64 {
    let mut prev = 1.0;
    let mut cur = diag[0] - x;
    for i in 1..diag.len() {
        let next = (diag[i] - x) * cur - offdiag[i - 1] * offdiag[i - 1] * prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn bisect_sign_change(diag: &[f64], offdiag: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = char_poly(diag, offdiag, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = char_poly(diag, offdiag, mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All roots in increasing order, or `None` if a grid of up to 2^22 cells
/// cannot separate them (near-degenerate matrix).
pub fn char_poly_roots(diag: &[f64], offdiag: &[f64]) -> Option<Vec<f64>> {
    let n = diag.len();
    let radius = diag
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let left = if i > 0 { offdiag[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { offdiag[i].abs() } else { 0.0 };
            (d - left - right, d + left + right)
        })
        .fold((f64::INFINITY, f64::NEG_INFINITY), |acc, (l, h)| {
            (acc.0.min(l), acc.1.max(h))
        });
    let (lo, hi) = (radius.0 - 1.0, radius.1 + 1.0);
    let mut cells = 1 << 12;
    while cells <= 1 << 22 {
        let step = (hi - lo) / cells as f64;
        let mut roots = Vec::with_capacity(n);
        let mut x0 = lo;
        let mut f0 = char_poly(diag, offdiag, x0);
        for i in 1..=cells {
            let x1 = lo + step * i as f64;
            let f1 = char_poly(diag, offdiag, x1);
            if f0 == 0.0 {
                roots.push(x0);
            } else if f1 != 0.0 && (f0 < 0.0) != (f1 < 0.0) {
                roots.push(bisect_sign_change(diag, offdiag, x0, x1));
            }
            x0 = x1;
            f0 = f1;
        }
        if roots.len() == n {
            return Some(roots);
        }
        cells *= 4;
    }
    None
}
