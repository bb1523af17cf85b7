//! Shared numeric helpers: factorial tables, Laguerre polynomials, phase
//! wrapping, quadrature, and least-squares fits.

use std::sync::OnceLock;

const LN_FACTORIAL_TABLE_LEN: usize = 257;

fn ln_factorial_table() -> &'static [f64; LN_FACTORIAL_TABLE_LEN] {
    static TABLE: OnceLock<[f64; LN_FACTORIAL_TABLE_LEN]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0; LN_FACTORIAL_TABLE_LEN];
        for k in 2..LN_FACTORIAL_TABLE_LEN {
            t[k] = t[k - 1] + (k as f64).ln();
        }
        t
    })
}

/// Natural log of `n!`. Supports `n < 257`, which covers every bound-state
/// label used in this crate.
pub fn ln_factorial(n: u32) -> f64 {
    ln_factorial_table()[n as usize]
}

/// Associated Laguerre polynomial `L_p^alpha(x)` by the three-term recurrence
///
/// `(k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}`,
///
/// which is stable for the `p`, `x` ranges used here.
pub fn laguerre(p: u32, alpha: f64, x: f64) -> f64 {
    if p == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..p {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Wrap an angle difference onto the principal branch `(-pi, pi]`.
///
/// Antisymmetric (`wrap(-d) == -wrap(d)`) so that traversing a link in both
/// directions cancels exactly; plaquette/boundary winding bookkeeping relies
/// on this.
pub fn wrap_phase(d: f64) -> f64 {
    d - std::f64::consts::TAU * (d / std::f64::consts::TAU).round()
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive_simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)
        + adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` with absolute tolerance
/// `eps`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, eps: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    // Seed the recursion from a handful of panels so an integrand that is
    // zero at the coarse sample points is still resolved.
    let panels = 16;
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let x0 = a + k as f64 * h;
        let x1 = x0 + h;
        let xm = 0.5 * (x0 + x1);
        let (f0, fm, f1) = (f(x0), f(xm), f(x1));
        let whole = simpson(f0, fm, f1, h);
        total += adaptive_simpson_rec(&f, x0, x1, f0, fm, f1, whole, eps / panels as f64, 40);
    }
    total
}

/// Ordinary least-squares line fit. Returns `(slope, intercept, r_squared)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    assert_eq!(x.len(), y.len());
    assert!(x.len() >= 2, "need at least two points to fit a line");
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
        syy += (yi - my) * (yi - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, intercept, r2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn laguerre_low_orders() {
        // L_0 = 1, L_1^a = 1 + a - x, L_2^0 = 1 - 2x + x^2/2
        assert_eq!(laguerre(0, 3.0, 2.5), 1.0);
        assert!((laguerre(1, 2.0, 0.7) - (3.0 - 0.7)).abs() < 1e-15);
        let x = 1.3;
        let l20 = 1.0 - 2.0 * x + x * x / 2.0;
        assert!((laguerre(2, 0.0, x) - l20).abs() < 1e-14);
    }

    #[test]
    fn wrap_phase_is_antisymmetric_and_bounded() {
        for k in -100..=100 {
            let d = 0.137 * k as f64;
            let w = wrap_phase(d);
            assert!(w <= PI + 1e-15 && w >= -PI - 1e-15);
            assert_eq!(wrap_phase(-d), -w);
        }
    }

    #[test]
    fn simpson_integrates_gaussian() {
        let val = adaptive_simpson(|x: f64| (-x * x).exp(), -8.0, 8.0, 1e-12);
        assert!((val - PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn fit_recovers_exact_line() {
        let x: Vec<f64> = (0..10).map(|k| k as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 2.5 * v - 1.0).collect();
        let (s, b, r2) = linear_fit(&x, &y);
        assert!((s - 2.5).abs() < 1e-12);
        assert!((b + 1.0).abs() < 1e-12);
        assert!((r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ln_factorial_matches_direct_product() {
        let direct: f64 = (1..=20u32).map(|k| (k as f64).ln()).sum();
        assert!((ln_factorial(20) - direct).abs() < 1e-12);
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(ln_factorial(1), 0.0);
    }
}
