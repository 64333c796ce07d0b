//! Golden-section search on a bracket.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes `f` on `[a, b]`; returns `(x, f(x))` with the best point seen.
pub fn maximize(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, rel_tol: f64, max_iter: usize) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let (mut best_x, mut best_f) = if fc >= fd { (c, fc) } else { (d, fd) };
    for _ in 0..max_iter {
        if (b - a).abs() <= rel_tol * (a.abs() + b.abs()).max(1e-300) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            if fc > best_f {
                best_x = c;
                best_f = fc;
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            if fd > best_f {
                best_x = d;
                best_f = fd;
            }
        }
    }
    (best_x, best_f)
}

/// Minimizes `f` on `[a, b]`.
pub fn minimize(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, rel_tol: f64, max_iter: usize) -> (f64, f64) {
    let (x, v) = maximize(|x| -f(x), a, b, rel_tol, max_iter);
    (x, -v)
}

/// Log-spaced grid of `n ≥ 2` points from `a` to `b` (both positive), endpoints included.
pub fn log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(a > 0.0 && b > a && n >= 2);
    let (la, lb) = (a.ln(), b.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                a
            } else if i == n - 1 {
                b
            } else {
                (la + (lb - la) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// Uniform grid of `n ≥ 2` points, endpoints included.
pub fn lin_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n).map(|i| if i == n - 1 { b } else { a + (b - a) * i as f64 / (n - 1) as f64 }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_peak() {
        let (x, v) = maximize(|x| -(x - 1.3) * (x - 1.3) + 2.0, 0.0, 5.0, 1e-12, 200);
        assert!((x - 1.3).abs() < 1e-7);
        assert!((v - 2.0).abs() < 1e-14);
    }

    #[test]
    fn minimize_is_mirror() {
        let (x, v) = minimize(|x| (x - 0.25).powi(2), -1.0, 1.0, 1e-12, 200);
        assert!((x - 0.25).abs() < 1e-7 && v < 1e-13);
    }

    #[test]
    fn grids_hit_endpoints() {
        let g = log_grid(2.0, 200.0, 512);
        assert_eq!(g[0], 2.0);
        assert_eq!(g[511], 200.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        let l = lin_grid(1.0, 2.0, 3);
        assert_eq!(l, vec![1.0, 1.5, 2.0]);
    }
}
