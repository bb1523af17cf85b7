//! Hydrogenic bound states in host-scaled atomic units (`hbar = m* = q = 1`,
//! lengths in the effective Bohr radius, energies in the effective Hartree):
//! level energies, radial wavefunctions, radial dipole integrals, and the
//! exact angular factors of the circular operators `r+- = x +- i y`.

use crate::math::{adaptive_simpson, laguerre, ln_factorial};

/// Bound-state energy `-1/(2 n^2)` in effective Hartree.
pub fn energy(n: u32) -> f64 {
    -0.5 / (n as f64 * n as f64)
}

/// Bound-state energy with a quantum defect, `-1/(2 (n - delta_l)^2)`.
/// `defects` is indexed by `l`; missing entries mean zero defect. Lifts the
/// hydrogenic l-degeneracy for alkali-like hosts.
pub fn energy_with_defects(n: u32, l: u32, defects: &[f64]) -> f64 {
    let delta = defects.get(l as usize).copied().unwrap_or(0.0);
    let eff = n as f64 - delta;
    -0.5 / (eff * eff)
}

/// Normalized radial wavefunction `R_{n,l}(r)`, lengths in effective Bohr
/// radii. The normalization is evaluated in log space so high shells do not
/// overflow.
pub fn radial_wavefunction(n: u32, l: u32, r: f64) -> f64 {
    assert!(n >= 1 && l < n, "invalid hydrogenic state n={n} l={l}");
    let nf = n as f64;
    let ln_norm = 1.5 * (2.0 / nf).ln()
        + 0.5 * (ln_factorial(n - l - 1) - (2.0 * nf).ln() - ln_factorial(n + l));
    let x = 2.0 * r / nf;
    let poly = laguerre(n - l - 1, (2 * l + 1) as f64, x);
    if r == 0.0 {
        return if l == 0 { ln_norm.exp() * poly } else { 0.0 };
    }
    let ln_mag = ln_norm - r / nf + l as f64 * x.ln();
    ln_mag.exp() * poly
}

/// Radial dipole integral `int R_{n2,l2} r R_{n1,l1} r^2 dr` by adaptive
/// quadrature of the closed-form wavefunctions. Requires `|l1 - l2| = 1`.
pub fn radial_dipole(n1: u32, l1: u32, n2: u32, l2: u32) -> f64 {
    assert!(
        l1.abs_diff(l2) == 1,
        "dipole selection rule needs |l1 - l2| = 1, got l1={l1} l2={l2}"
    );
    let n_hi = n1.max(n2) as f64;
    let r_max = n_hi * (3.0 * n_hi + 30.0);
    let scale = n_hi * n_hi;
    adaptive_simpson(
        |r| radial_wavefunction(n1, l1, r) * radial_wavefunction(n2, l2, r) * r * r * r,
        0.0,
        r_max,
        1e-11 * scale,
    )
}

/// `< l_to, m+1 | sin(theta) e^{i phi} | l, m >` in the Condon–Shortley
/// convention. Zero when the target state does not exist or is not reached.
pub fn angular_raise(l: u32, m: i32, l_to: u32) -> f64 {
    let lf = l as f64;
    let mf = m as f64;
    if (m + 1).unsigned_abs() > l_to {
        return 0.0;
    }
    if l_to == l + 1 {
        -(((lf + mf + 1.0) * (lf + mf + 2.0)) / ((2.0 * lf + 1.0) * (2.0 * lf + 3.0))).sqrt()
    } else if l >= 1 && l_to == l - 1 {
        (((lf - mf) * (lf - mf - 1.0)) / ((2.0 * lf - 1.0) * (2.0 * lf + 1.0))).sqrt()
    } else {
        0.0
    }
}

/// `< l_to, m-1 | sin(theta) e^{-i phi} | l, m >` in the Condon–Shortley
/// convention.
pub fn angular_lower(l: u32, m: i32, l_to: u32) -> f64 {
    let lf = l as f64;
    let mf = m as f64;
    if (m - 1).unsigned_abs() > l_to {
        return 0.0;
    }
    if l_to == l + 1 {
        (((lf - mf + 1.0) * (lf - mf + 2.0)) / ((2.0 * lf + 1.0) * (2.0 * lf + 3.0))).sqrt()
    } else if l >= 1 && l_to == l - 1 {
        -(((lf + mf) * (lf + mf - 1.0)) / ((2.0 * lf - 1.0) * (2.0 * lf + 1.0))).sqrt()
    } else {
        0.0
    }
}
