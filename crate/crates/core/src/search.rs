//! One-dimensional search primitives: golden-section minimization of a convex
//! function and sign-change bisection.

const INV_PHI: f64 = 0.618_033_988_749_894_9; // (sqrt(5) - 1) / 2

/// Result of a golden-section search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub arg: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Minimizes a unimodal `f` on `[lo, hi]` until the bracket is narrower than
/// `xtol` or `max_iter` shrink steps have been taken. The endpoints are
/// evaluated too, so a minimum sitting on the boundary is returned exactly.
pub fn golden_section<F>(f: F, lo: f64, hi: f64, xtol: f64, max_iter: usize) -> Minimum
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut best = {
        let (fa, fb) = (f(a), f(b));
        if fa <= fb {
            (a, fa)
        } else {
            (b, fb)
        }
    };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iterations = 0;
    while (b - a) > xtol && iterations < max_iter {
        if fc <= fd {
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
        iterations += 1;
    }
    for (x, fx) in [(c, fc), (d, fd)] {
        if fx < best.1 {
            best = (x, fx);
        }
    }
    Minimum {
        arg: best.0,
        value: best.1,
        iterations,
    }
}

/// Outcome of [`bisect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub arg: f64,
    pub residual: f64,
    /// False when `g` had the same strict sign at both ends; `arg` is then the
    /// endpoint with the smaller `|g|`.
    pub bracketed: bool,
}

/// Finds a sign change of `g` between `a` and `b` (in either order).
///
/// Stops when `|g| <= ftol`, when `g` vanishes, or when the bracket can no
/// longer be split in floating point.
pub fn bisect<G>(g: G, a: f64, b: f64, ftol: f64) -> Root
where
    G: Fn(f64) -> f64,
{
    let (ga, gb) = (g(a), g(b));
    if ga == 0.0 || ga.abs() <= ftol {
        return Root { arg: a, residual: ga.abs(), bracketed: true };
    }
    if gb == 0.0 || gb.abs() <= ftol {
        return Root { arg: b, residual: gb.abs(), bracketed: true };
    }
    if ga.signum() == gb.signum() {
        let (arg, residual) = if ga.abs() <= gb.abs() { (a, ga.abs()) } else { (b, gb.abs()) };
        return Root { arg, residual, bracketed: false };
    }
    let (mut lo, mut hi) = (a, b);
    let lo_sign = ga.signum();
    let mut best = if ga.abs() <= gb.abs() { (a, ga.abs()) } else { (b, gb.abs()) };
    // 2100 halvings exhaust any pair of finite doubles.
    for _ in 0..2100 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let gm = g(mid);
        if gm.abs() < best.1 {
            best = (mid, gm.abs());
        }
        if gm == 0.0 || gm.abs() <= ftol {
            break;
        }
        if gm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Root { arg: best.0, residual: best.1, bracketed: true }
}
