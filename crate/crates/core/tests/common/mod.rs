//! Reference numerics for tests, deliberately independent of the library's
//! Gauss–Legendre machinery.

#![allow(dead_code)]

/// Adaptive Simpson with Richardson correction; absolute tolerance `tol`.
pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    // split first so oscillatory integrands are not under-sampled at the top level
    let pieces = 64;
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|k| {
            let (lo, hi) = (a + h * k as f64, a + h * (k + 1) as f64);
            let (fa, fm, fb) = (f(lo), f(0.5 * (lo + hi)), f(hi));
            let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
            rec(f, lo, hi, fa, fm, fb, whole, tol / pieces as f64, 40)
        })
        .sum()
}

/// Dawson's integral F(x) = ∫₀ˣ e^{u²−x²} du.
pub fn dawson(x: f64) -> f64 {
    simpson(&|u: f64| (u * u - x * x).exp(), 0.0, x, 1e-15)
}

/// (α/2)(√π t/4) e^{−t²/4}
pub fn phase_flat_closed(alpha: f64, t: f64) -> f64 {
    0.5 * alpha * std::f64::consts::PI.sqrt() * t / 4.0 * (-t * t / 4.0).exp()
}

/// (α t/4)·F(t/2)
pub fn decay_flat_zero_temperature(alpha: f64, t: f64) -> f64 {
    alpha * t / 4.0 * dawson(0.5 * t)
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}
