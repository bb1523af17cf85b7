//! Laguerre–Gaussian beam synthesis: transverse electric-field phasors,
//! temporal-gauge vector potentials, and the longitudinal magnetic component.
//!
//! The transverse mode is the standard normalized LG profile
//!
//! `u_{p,l}(r, phi) = N_{p,l} (sqrt(2) r / w0)^{|l|} L_p^{|l|}(2 r^2 / w0^2)
//!  exp(-r^2 / w0^2) exp(-i l phi)`
//!
//! with `N_{p,l} = sqrt(2 p! / (pi (p + |l|)!)) / w0`, so that the mode
//! intensity integrates to one and `E0` carries the drive amplitude. All
//! fields are evaluated in the focal plane; the scalar potential is zero
//! (temporal gauge), so the real drive field is `E = -dA/dt`.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::grid::{GridSpec, ScalarField, VectorField};
use crate::math::{laguerre, ln_factorial};

/// Temporal envelope of the drive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Envelope {
    /// Continuous wave: envelope is identically one.
    Cw,
    /// Gaussian pulse `exp(-(t - t0)^2 / (2 tau^2))` multiplying the phasor.
    GaussianPulse { t0: f64, tau: f64 },
}

impl Envelope {
    pub fn amplitude(&self, t: f64) -> f64 {
        match *self {
            Envelope::Cw => 1.0,
            Envelope::GaussianPulse { t0, tau } => {
                let s = (t - t0) / tau;
                (-0.5 * s * s).exp()
            }
        }
    }
}

/// Full parameterization of a structured LG drive beam.
#[derive(Clone, Copy, Debug)]
pub struct BeamSpec {
    /// Radial order (number of radial nodes).
    pub p: u32,
    /// Azimuthal index; the mode carries phase `exp(-i l phi)`.
    pub l: i32,
    /// SAM phase parameter, one of -1, 0, +1, entering `exp(i sigma pi/2)`.
    pub sigma: i8,
    /// Polarization mixing angle; `pi/4` with `sigma = +-1` gives circular
    /// polarization, `sigma = 0` linear.
    pub theta_pol: f64,
    /// Peak field amplitude in the drive units of the target solver.
    pub e0: f64,
    /// Beam waist in grid length units.
    pub w0: f64,
    /// Angular frequency in the inverse time units of the target solver.
    pub omega: f64,
    /// Beam-axis position.
    pub center: [f64; 2],
    pub envelope: Envelope,
}

#[derive(Debug, Error)]
pub enum BeamError {
    #[error("beam waist must be positive, got {0}")]
    BadWaist(f64),
    #[error("angular frequency must be positive, got {0}")]
    BadFrequency(f64),
    #[error("field amplitude must be non-negative, got {0}")]
    BadAmplitude(f64),
    #[error("sigma must be -1, 0, or +1, got {0}")]
    BadSigma(i8),
    #[error("pulse width must be positive, got {0}")]
    BadPulseWidth(f64),
}

impl BeamSpec {
    pub fn validate(&self) -> Result<(), BeamError> {
        if !(self.w0 > 0.0) {
            return Err(BeamError::BadWaist(self.w0));
        }
        if !(self.omega > 0.0) {
            return Err(BeamError::BadFrequency(self.omega));
        }
        if !(self.e0 >= 0.0) {
            return Err(BeamError::BadAmplitude(self.e0));
        }
        if !matches!(self.sigma, -1 | 0 | 1) {
            return Err(BeamError::BadSigma(self.sigma));
        }
        if let Envelope::GaussianPulse { tau, .. } = self.envelope {
            if !(tau > 0.0) {
                return Err(BeamError::BadPulseWidth(tau));
            }
        }
        Ok(())
    }

    fn mode_norm(&self) -> f64 {
        let p = self.p;
        let al = self.l.unsigned_abs();
        (2.0 / std::f64::consts::PI * (ln_factorial(p) - ln_factorial(p + al)).exp()).sqrt()
            / self.w0
    }

    /// Normalized transverse mode `u_{p,l}` at radius `r` and azimuth `phi`.
    pub fn mode(&self, r: f64, phi: f64) -> Complex64 {
        let al = self.l.unsigned_abs();
        let rho = 2.0 * r * r / (self.w0 * self.w0);
        let radial_pow = if al == 0 {
            1.0
        } else {
            (std::f64::consts::SQRT_2 * r / self.w0).powi(al as i32)
        };
        let radial = self.mode_norm()
            * radial_pow
            * laguerre(self.p, al as f64, rho)
            * (-r * r / (self.w0 * self.w0)).exp();
        radial * Complex64::from_polar(1.0, -(self.l as f64) * phi)
    }

    /// Jones vector `(cos theta, exp(i sigma pi/2) sin theta)`. The phase
    /// factor is exact for the three allowed sigma values.
    pub fn polarization(&self) -> [Complex64; 2] {
        let phase = match self.sigma {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            -1 => Complex64::new(0.0, -1.0),
            s => panic!("invalid sigma {s}"),
        };
        [
            Complex64::new(self.theta_pol.cos(), 0.0),
            phase * self.theta_pol.sin(),
        ]
    }

    fn polar_coords(&self, x: f64, y: f64) -> (f64, f64) {
        let dx = x - self.center[0];
        let dy = y - self.center[1];
        (dx.hypot(dy), dy.atan2(dx))
    }

    /// Spatial field phasor `E0 * u_{p,l} * polarization`, without the time
    /// factor.
    pub fn field_phasor(&self, x: f64, y: f64) -> [Complex64; 2] {
        let (r, phi) = self.polar_coords(x, y);
        let u = self.e0 * self.mode(r, phi);
        let pol = self.polarization();
        [u * pol[0], u * pol[1]]
    }

    /// Complex electric field `phasor * envelope(t) * exp(i omega t)`; the
    /// physical drive field is its real part.
    pub fn electric_field(&self, x: f64, y: f64, t: f64) -> [Complex64; 2] {
        let phasor = self.field_phasor(x, y);
        let rot = Complex64::from_polar(self.envelope.amplitude(t), self.omega * t);
        [phasor[0] * rot, phasor[1] * rot]
    }

    /// Real drive field `Re[E]`.
    pub fn real_electric_field(&self, x: f64, y: f64, t: f64) -> [f64; 2] {
        let e = self.electric_field(x, y, t);
        [e[0].re, e[1].re]
    }

    /// Temporal-gauge vector potential `A = -int_0^t Re[E] dt'`.
    ///
    /// For a CW envelope the antiderivative is taken in closed form,
    /// `A = -Im[phasor * exp(i omega t)] / omega` (zero-mean over a cycle);
    /// pulsed envelopes are integrated by the trapezoid rule with fixed step
    /// [`INTEGRATION_STEP_CYCLES`] of a cycle. Requires `t >= 0` for pulsed
    /// envelopes.
    pub fn vector_potential(&self, x: f64, y: f64, t: f64) -> [f64; 2] {
        let phasor = self.field_phasor(x, y);
        match self.envelope {
            Envelope::Cw => {
                let rot = Complex64::from_polar(1.0, self.omega * t);
                [
                    -(phasor[0] * rot).im / self.omega,
                    -(phasor[1] * rot).im / self.omega,
                ]
            }
            Envelope::GaussianPulse { .. } => {
                assert!(t >= 0.0, "pulsed vector potential needs t >= 0");
                if t == 0.0 {
                    return [0.0, 0.0];
                }
                let h_max = std::f64::consts::TAU / (INTEGRATION_STEP_CYCLES * self.omega);
                let n = (t / h_max).ceil() as usize;
                let h = t / n as f64;
                let sample = |s: f64| {
                    let rot = Complex64::from_polar(self.envelope.amplitude(s), self.omega * s);
                    [(phasor[0] * rot).re, (phasor[1] * rot).re]
                };
                let mut acc = [0.0; 2];
                let mut prev = sample(0.0);
                for k in 1..=n {
                    let cur = sample(k as f64 * h);
                    acc[0] += 0.5 * h * (prev[0] + cur[0]);
                    acc[1] += 0.5 * h * (prev[1] + cur[1]);
                    prev = cur;
                }
                [-acc[0], -acc[1]]
            }
        }
    }

    /// Longitudinal magnetic component `Bz = dAy/dx - dAx/dy` on the grid,
    /// by central differences (one-sided on the edges).
    pub fn longitudinal_b(&self, grid: &GridSpec, t: f64) -> ScalarField {
        let a = self.vector_potential_grid(grid, t);
        crate::grid::curl_z(&a)
    }

    /// Vector potential sampled on every cell of `grid`.
    pub fn vector_potential_grid(&self, grid: &GridSpec, t: f64) -> VectorField {
        let mut values = vec![[0.0; 2]; grid.len()];
        values
            .par_chunks_mut(grid.nx)
            .enumerate()
            .for_each(|(iy, row)| {
                for (ix, v) in row.iter_mut().enumerate() {
                    let p = grid.pos(ix, iy);
                    *v = self.vector_potential(p[0], p[1], t);
                }
            });
        VectorField { grid: *grid, values }
    }
}

/// Trapezoid panels per drive cycle for pulsed-envelope integration. Fine
/// enough that differentiating the accumulated potential reproduces the
/// field to better than 1e-4 relative.
pub const INTEGRATION_STEP_CYCLES: f64 = 1024.0;

/// Incremental sampler of the drive vector potential on a fixed set of
/// points.
///
/// CW envelopes use the closed form at every request; pulsed envelopes keep
/// the running integral `-int Re[E] dt` per point, advanced in substeps of
/// [`INTEGRATION_STEP_CYCLES`] of a cycle. Calls must advance time
/// monotonically.
pub struct DriveSampler {
    spec: BeamSpec,
    phasors: Vec<[Complex64; 2]>,
    potential: Vec<[f64; 2]>,
    t: f64,
}

impl DriveSampler {
    pub fn new(spec: BeamSpec, points: &[[f64; 2]]) -> Self {
        let phasors: Vec<[Complex64; 2]> = points
            .par_iter()
            .map(|p| spec.field_phasor(p[0], p[1]))
            .collect();
        let mut sampler = Self {
            spec,
            phasors,
            potential: vec![[0.0; 2]; points.len()],
            t: 0.0,
        };
        sampler.write_potential(0.0);
        sampler
    }

    fn write_potential(&mut self, t: f64) {
        match self.spec.envelope {
            Envelope::Cw => {
                let rot = Complex64::from_polar(1.0, self.spec.omega * t);
                let omega = self.spec.omega;
                let phasors = &self.phasors;
                self.potential
                    .par_iter_mut()
                    .enumerate()
                    .for_each(|(i, a)| {
                        let p = phasors[i];
                        *a = [-(p[0] * rot).im / omega, -(p[1] * rot).im / omega];
                    });
            }
            Envelope::GaussianPulse { .. } => {
                // t = 0 start; the running integral begins at zero.
            }
        }
        self.t = t;
    }

    /// Advance the sampler to time `t` and return the potential per point.
    pub fn advance_to(&mut self, t: f64) -> &[[f64; 2]] {
        assert!(t >= self.t, "DriveSampler must advance monotonically");
        match self.spec.envelope {
            Envelope::Cw => self.write_potential(t),
            Envelope::GaussianPulse { .. } => {
                if t > self.t {
                    let h_max = std::f64::consts::TAU / (INTEGRATION_STEP_CYCLES * self.spec.omega);
                    let n = ((t - self.t) / h_max).ceil().max(1.0) as usize;
                    let h = (t - self.t) / n as f64;
                    // Shared substep times keep the panel boundaries identical
                    // for every point, independent of worker count.
                    let times: Vec<f64> = (0..=n).map(|k| self.t + k as f64 * h).collect();
                    let spec = self.spec;
                    let phasors = &self.phasors;
                    self.potential
                        .par_iter_mut()
                        .enumerate()
                        .for_each(|(i, a)| {
                            let p = phasors[i];
                            let field = |s: f64| {
                                let rot = Complex64::from_polar(
                                    spec.envelope.amplitude(s),
                                    spec.omega * s,
                                );
                                [(p[0] * rot).re, (p[1] * rot).re]
                            };
                            let mut prev = field(times[0]);
                            for &s in &times[1..] {
                                let cur = field(s);
                                a[0] -= 0.5 * h * (prev[0] + cur[0]);
                                a[1] -= 0.5 * h * (prev[1] + cur[1]);
                                prev = cur;
                            }
                        });
                    self.t = t;
                }
            }
        }
        &self.potential
    }

    pub fn potential(&self) -> &[[f64; 2]] {
        &self.potential
    }

    /// Real electric field per point at time `t` (stateless).
    pub fn real_field(&self, t: f64) -> Vec<[f64; 2]> {
        let rot = Complex64::from_polar(self.spec.envelope.amplitude(t), self.spec.omega * t);
        self.phasors
            .par_iter()
            .map(|p| [(p[0] * rot).re, (p[1] * rot).re])
            .collect()
    }
}
