//! Bracketed root isolation: uniform sign scan plus bisection.

/// A sign-change bracket: f(lo) and f(hi) have opposite (or zero) signs.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

/// Scans f on `points` equally spaced samples over [lo, hi] (endpoints
/// included) and returns every cell in which the sign changes. Exact zeros
/// at sample points yield degenerate brackets.
pub(crate) fn scan_brackets<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    points: usize,
) -> Vec<Bracket> {
    assert!(points >= 2 && hi > lo);
    let step = (hi - lo) / (points - 1) as f64;
    let mut brackets = Vec::new();
    let mut x_prev = lo;
    let mut f_prev = f(lo);
    for j in 1..points {
        let x = if j == points - 1 { hi } else { lo + j as f64 * step };
        let fx = f(x);
        if f_prev == 0.0 {
            brackets.push(Bracket {
                lo: x_prev,
                hi: x_prev,
                f_lo: 0.0,
                f_hi: 0.0,
            });
        } else if fx != 0.0 && f_prev.signum() != fx.signum() {
            brackets.push(Bracket {
                lo: x_prev,
                hi: x,
                f_lo: f_prev,
                f_hi: fx,
            });
        }
        x_prev = x;
        f_prev = fx;
    }
    if f_prev == 0.0 {
        brackets.push(Bracket {
            lo: x_prev,
            hi: x_prev,
            f_lo: 0.0,
            f_hi: 0.0,
        });
    }
    brackets
}

/// Bisects a bracket until its width is at most `xtol` or the midpoint can
/// no longer be distinguished from the endpoints. Deterministic; always
/// converges for a valid bracket.
pub(crate) fn bisect<F: FnMut(f64) -> f64>(mut f: F, bracket: Bracket, xtol: f64) -> f64 {
    let Bracket {
        mut lo,
        mut hi,
        f_lo: mut flo,
        f_hi,
    } = bracket;
    if lo == hi || flo == 0.0 {
        return lo;
    }
    if f_hi == 0.0 {
        return hi;
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if hi - lo <= xtol {
            break;
        }
    }
    0.5 * (lo + hi)
}
