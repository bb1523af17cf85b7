//! Second-order effective Zeeman field printed on hydrogenic states by a
//! circularly polarized drive.
//!
//! The effective Hamiltonian matrix element between bound states `a`, `b` is
//!
//! `<a|H|b> = mu_B * (2 m q / hbar^2) omega (E_R^2 - E_L^2)
//!   sum_c [ <a|r+|c><c|r-|b> - <a|r-|c><c|r+|b> ] / (omega_bc^2 - omega^2)`
//!
//! with `r+- = x +- iy` and the sum over bound intermediate states `c` up to
//! a shell cutoff; continuum states are omitted and the truncation is
//! reported through the last-shell ratio. Everything is computed in
//! host-scaled atomic units (`hbar = m* = q = 1`, energies in effective
//! Hartree, lengths in effective Bohr radii), in which the prefactor
//! `2 m q / hbar^2` is 2 and `mu_B = 1/2`.

use num_complex::Complex64;
use thiserror::Error;

use crate::hydrogen::{angular_lower, angular_raise, energy, radial_dipole};
use crate::units;

/// A hydrogenic state label `|n, l, m>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HydrogenicState {
    pub n: u32,
    pub l: u32,
    pub m: i32,
}

impl HydrogenicState {
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self, RydbergError> {
        let s = Self { n, l, m };
        s.validate()?;
        Ok(s)
    }

    /// Circular state `|n, n-1, n-1>`.
    pub fn circular(n: u32) -> Self {
        Self { n, l: n - 1, m: n as i32 - 1 }
    }

    pub fn validate(&self) -> Result<(), RydbergError> {
        if self.n < 1 || self.l >= self.n || self.m.unsigned_abs() > self.l {
            return Err(RydbergError::BadState { n: self.n, l: self.l, m: self.m });
        }
        Ok(())
    }
}

/// Host-material scaling for hydrogenic states, in SI.
#[derive(Clone, Copy, Debug)]
pub struct MaterialHost {
    /// Effective Bohr radius [m].
    pub a_star: f64,
    /// Effective Rydberg energy [J].
    pub ry_star: f64,
    /// Effective mass [kg].
    pub m_star: f64,
    /// Carrier charge [C].
    pub q: f64,
    /// Effective Bohr magneton `q hbar / (2 m*)` [J/T].
    pub mu_b_eff: f64,
}

impl MaterialHost {
    /// Build a consistent hydrogenic host from the effective Bohr radius and
    /// mass: `Ry* = hbar^2 / (2 m* a*^2)`.
    pub fn from_radius_and_mass(a_star: f64, m_star: f64, q: f64) -> Self {
        let ry_star = units::HBAR * units::HBAR / (2.0 * m_star * a_star * a_star);
        Self {
            a_star,
            ry_star,
            m_star,
            q,
            mu_b_eff: q.abs() * units::HBAR / (2.0 * m_star),
        }
    }

    /// Free hydrogen (electron mass, Bohr radius).
    pub fn hydrogen() -> Self {
        Self::from_radius_and_mass(
            units::BOHR_RADIUS,
            units::ELECTRON_MASS,
            units::ELEMENTARY_CHARGE,
        )
    }

    /// Shallow phosphorus donor in silicon: 3.17 nm effective Bohr radius
    /// with a light effective mass.
    pub fn silicon_phosphorus() -> Self {
        Self::from_radius_and_mass(
            3.17e-9,
            0.2 * units::ELECTRON_MASS,
            units::ELEMENTARY_CHARGE,
        )
    }

    /// Effective Hartree [J].
    pub fn hartree(&self) -> f64 {
        2.0 * self.ry_star
    }

    /// Convert an SI angular frequency [rad/s] to internal units.
    pub fn omega_to_internal(&self, omega_si: f64) -> f64 {
        omega_si * units::HBAR / self.hartree()
    }

    /// Convert an SI electric field [V/m] to internal units.
    pub fn field_to_internal(&self, e_si: f64) -> f64 {
        e_si * self.q.abs() * self.a_star / self.hartree()
    }

    /// Convert an internal effective-field value to tesla.
    pub fn b_eff_to_tesla(&self, b_internal: f64) -> f64 {
        // Internal Zeeman unit: one effective Hartree per internal mu_B (1/2).
        b_internal * self.hartree() / (2.0 * self.mu_b_eff)
    }
}

/// Circular drive amplitudes and frequency for the perturbative sum, in
/// internal host units.
#[derive(Clone, Copy, Debug)]
pub struct RydbergDrive {
    pub e_r: f64,
    pub e_l: f64,
    pub omega: f64,
}

/// Intermediate-state cutoff, resonance guard, and spectrum model.
#[derive(Clone, Debug, Default)]
pub struct CutoffParams {
    /// Sum over intermediate shells up to this principal quantum number.
    pub n_max: u32,
    /// Reject drives with `|omega_bc^2 - omega^2|` below this (internal
    /// squared-frequency units).
    pub resonance_delta: f64,
    /// Quantum defects per `l` (empty = pure hydrogenic spectrum). Lifting
    /// the l-degeneracy this way models alkali-like hosts; radial integrals
    /// stay hydrogenic.
    pub quantum_defects: Vec<f64>,
}

impl CutoffParams {
    pub fn new(n_max: u32) -> Self {
        Self { n_max, resonance_delta: 1e-6, quantum_defects: Vec::new() }
    }

    fn energy(&self, n: u32, l: u32) -> f64 {
        if self.quantum_defects.is_empty() {
            energy(n)
        } else {
            crate::hydrogen::energy_with_defects(n, l, &self.quantum_defects)
        }
    }
}

#[derive(Debug, Error)]
pub enum RydbergError {
    #[error("invalid hydrogenic state n={n} l={l} m={m}")]
    BadState { n: u32, l: u32, m: i32 },
    #[error("cutoff n_max={n_max} must exceed max(n_a, n_b)={n_ab}")]
    CutoffTooLow { n_max: u32, n_ab: u32 },
    #[error(
        "drive within resonance guard of |{n}, {l}, {m}>: |omega_bc^2 - omega^2| = {gap:.3e} < {delta:.3e}"
    )]
    Resonance { n: u32, l: u32, m: i32, gap: f64, delta: f64 },
}

/// Matrix element plus its truncation report.
#[derive(Clone, Copy, Debug)]
pub struct IfeMatrixElement {
    pub value: Complex64,
    /// |contribution of the n = n_max shell| / |total|.
    pub last_shell_ratio: f64,
    /// Set when the last-shell ratio exceeds 1e-3.
    pub cutoff_warning: bool,
}

/// Effective field `B_eff = <a|H|a> / mu_B` (internal units) with the same
/// truncation report.
#[derive(Clone, Copy, Debug)]
pub struct EffectiveField {
    pub b_eff: f64,
    pub last_shell_ratio: f64,
    pub cutoff_warning: bool,
}

const CUTOFF_WARN_RATIO: f64 = 1e-3;

fn intermediate_l(l_a: u32, l_b: u32) -> Vec<u32> {
    let mut ls = Vec::new();
    for cand in [l_a.checked_sub(1), Some(l_a + 1)].into_iter().flatten() {
        if (cand == l_b + 1 || l_b == cand + 1) && !ls.contains(&cand) {
            ls.push(cand);
        }
    }
    ls
}

/// Second-order effective Hamiltonian matrix element `<a|H|b>` in internal
/// units. Exactly zero unless `m_a = m_b` (the `r+ r-` chain returns to the
/// same magnetic quantum number).
pub fn ife_matrix_element(
    a: HydrogenicState,
    b: HydrogenicState,
    drive: &RydbergDrive,
    cut: &CutoffParams,
) -> Result<IfeMatrixElement, RydbergError> {
    a.validate()?;
    b.validate()?;
    let n_ab = a.n.max(b.n);
    if cut.n_max <= n_ab {
        return Err(RydbergError::CutoffTooLow { n_max: cut.n_max, n_ab });
    }
    if a.m != b.m {
        return Ok(IfeMatrixElement {
            value: Complex64::default(),
            last_shell_ratio: 0.0,
            cutoff_warning: false,
        });
    }

    // mu_B (2 m q / hbar^2) omega (E_R^2 - E_L^2) in internal units:
    // mu_B = 1/2 and the bracket prefactor is 2, so they cancel.
    let prefactor = drive.omega * (drive.e_r * drive.e_r - drive.e_l * drive.e_l);

    let e_b = cut.energy(b.n, b.l);
    let mut total = 0.0;
    let mut last_shell = 0.0;

    for l_c in intermediate_l(a.l, b.l) {
        // r+ then r-: c carries m - 1; r- then r+: c carries m + 1. The
        // angular weights pair <a|r±|c> (raise/lower acting on c) with
        // <c|r∓|b> (acting on b); they do not depend on n_c.
        let branches: Vec<(f64, f64, f64)> = [(a.m - 1, 1.0), (a.m + 1, -1.0)]
            .into_iter()
            .filter(|&(m_c, _)| m_c.unsigned_abs() <= l_c)
            .filter_map(|(m_c, sign)| {
                let (ang_ac, ang_cb) = if sign > 0.0 {
                    (angular_raise(l_c, m_c, a.l), angular_lower(b.l, b.m, l_c))
                } else {
                    (angular_lower(l_c, m_c, a.l), angular_raise(b.l, b.m, l_c))
                };
                (ang_ac != 0.0 && ang_cb != 0.0).then_some((sign, ang_ac, ang_cb))
            })
            .collect();
        if branches.is_empty() {
            continue;
        }
        for n_c in (l_c + 1)..=cut.n_max {
            let omega_bc = e_b - cut.energy(n_c, l_c);
            let denom = omega_bc * omega_bc - drive.omega * drive.omega;
            if denom.abs() < cut.resonance_delta {
                return Err(RydbergError::Resonance {
                    n: n_c,
                    l: l_c,
                    m: a.m,
                    gap: denom.abs(),
                    delta: cut.resonance_delta,
                });
            }
            let rad_ac = radial_dipole(a.n, a.l, n_c, l_c);
            let rad_cb = if (a.n, a.l) == (b.n, b.l) {
                rad_ac
            } else {
                radial_dipole(n_c, l_c, b.n, b.l)
            };
            let radial = rad_ac * rad_cb / denom;
            for &(sign, ang_ac, ang_cb) in &branches {
                let term = sign * ang_ac * ang_cb * radial;
                total += term;
                if n_c == cut.n_max {
                    last_shell += term;
                }
            }
        }
    }

    let value = prefactor * total;
    let last_ratio = if value != 0.0 {
        (prefactor * last_shell / value).abs()
    } else {
        0.0
    };
    Ok(IfeMatrixElement {
        value: Complex64::new(value, 0.0),
        last_shell_ratio: last_ratio,
        cutoff_warning: last_ratio > CUTOFF_WARN_RATIO,
    })
}

/// Effective magnetic field on state `a`, `B_eff = <a|H|a> / mu_B`, internal
/// units (use [`MaterialHost::b_eff_to_tesla`] to report in SI).
pub fn effective_field(
    a: HydrogenicState,
    drive: &RydbergDrive,
    cut: &CutoffParams,
) -> Result<EffectiveField, RydbergError> {
    let me = ife_matrix_element(a, a, drive, cut)?;
    // Internal mu_B = 1/2.
    Ok(EffectiveField {
        b_eff: 2.0 * me.value.re,
        last_shell_ratio: me.last_shell_ratio,
        cutoff_warning: me.cutoff_warning,
    })
}
