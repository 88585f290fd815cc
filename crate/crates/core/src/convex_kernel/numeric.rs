//! Small one-dimensional solvers shared by the geometry routines.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
/// Returns `(argmax, max)`.
pub fn golden_max(mut a: f64, mut b: f64, iters: usize, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        if (b - a).abs() <= 1e-15 * (1.0 + a.abs()) {
            break;
        }
    }
    let fa = f(a);
    let fb = f(b);
    let mut best = if fc >= fd { (c, fc) } else { (d, fd) };
    if fa > best.1 {
        best = (a, fa);
    }
    if fb > best.1 {
        best = (b, fb);
    }
    best
}

/// Bisection for a sign change of `f` on `[a, b]`, given `fa = f(a)`.
pub fn bisect_root(mut a: f64, mut b: f64, fa: f64, iters: usize, tol: f64, f: impl Fn(f64) -> f64) -> f64 {
    let positive_a = fa > 0.0;
    for _ in 0..iters {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= tol {
            return m;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm > 0.0) == positive_a {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Smallest `t ∈ [a, b]` (up to `tol`) with `pred(t)` true, assuming `pred(a)` is false,
/// `pred(b)` is true and the predicate is monotone on the interval.
pub fn bisect_predicate(mut a: f64, mut b: f64, iters: usize, tol: f64, mut pred: impl FnMut(f64) -> bool) -> f64 {
    for _ in 0..iters {
        if (b - a).abs() <= tol {
            break;
        }
        let m = 0.5 * (a + b);
        if pred(m) {
            b = m;
        } else {
            a = m;
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, fx) = golden_max(-3.0, 5.0, 200, |x| -(x - 1.25) * (x - 1.25) + 2.0);
        assert!((x - 1.25).abs() < 1e-7);
        assert!((fx - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bisection_finds_cos_root() {
        let r = bisect_root(0.0, 3.0, 1.0, 200, 1e-15, f64::cos);
        assert!((r - std::f64::consts::FRAC_PI_2).abs() < 1e-13);
    }

    #[test]
    fn predicate_bisection() {
        let t = bisect_predicate(0.0, 1.0, 100, 1e-14, |t| t >= 0.3);
        assert!((t - 0.3).abs() < 1e-13);
    }
}
