//! One-dimensional maximization: uniform grid scan plus golden-section refinement.

const INV_PHI: f64 = 0.618_033_988_749_894_9; // (sqrt(5) - 1) / 2

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `tol`. Returns the best point
/// evaluated (including the bracket ends); ties go to the smaller abscissa.
pub fn golden_section_max<F>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut best = Best::new();
    best.offer(a, f(a));
    best.offer(b, f(b));

    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    best.offer(c, fc);
    best.offer(d, fd);

    // each iteration shrinks the bracket by INV_PHI; 200 is far past f64 resolution
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            best.offer(c, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            best.offer(d, fd);
        }
    }
    (best.x, best.fx)
}

/// Scans `n >= 2` uniformly spaced points on `[lo, hi]`, then refines around
/// the best grid point with golden-section search to `tol`.
pub fn grid_then_golden<F>(f: F, lo: f64, hi: f64, n: usize, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    assert!(n >= 2, "grid needs at least two points");
    if hi <= lo {
        return (lo, f(lo));
    }
    let step = (hi - lo) / (n - 1) as f64;
    let at = |i: usize| if i + 1 == n { hi } else { lo + step * i as f64 };

    let mut best = Best::new();
    let mut best_i = 0;
    for i in 0..n {
        let x = at(i);
        if best.offer(x, f(x)) {
            best_i = i;
        }
    }
    let left = at(best_i.saturating_sub(1));
    let right = at((best_i + 1).min(n - 1));
    let (x, fx) = golden_section_max(&f, left, right, tol);
    let mut out = Best::new();
    // grid point first so an exact tie keeps it when it is the smaller abscissa
    if best.x <= x {
        out.offer(best.x, best.fx);
        out.offer(x, fx);
    } else {
        out.offer(x, fx);
        out.offer(best.x, best.fx);
    }
    (out.x, out.fx)
}

struct Best {
    x: f64,
    fx: f64,
}

impl Best {
    fn new() -> Self {
        Self {
            x: f64::NAN,
            fx: f64::NEG_INFINITY,
        }
    }

    /// Keeps the strictly larger value; on an exact tie keeps the smaller x.
    fn offer(&mut self, x: f64, fx: f64) -> bool {
        let better = fx > self.fx || (fx == self.fx && x < self.x) || self.x.is_nan();
        if better && !fx.is_nan() {
            self.x = x;
            self.fx = fx;
            return true;
        }
        false
    }
}
