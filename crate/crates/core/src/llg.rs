//! Landau–Lifshitz–Gilbert dynamics of a 2D collinear ferromagnet driven by
//! the magnetic field of a structured beam, plus topological-charge
//! diagnostics for the printed textures.
//!
//! The equation of motion is integrated in the explicit Landau–Lifshitz form
//!
//! `dM/dt = -gamma / (1 + alpha^2) [ M x H + alpha M x (M x H) ]`
//!
//! (algebraically equivalent to the implicit Gilbert form) with a Heun
//! predictor–corrector step and per-site renormalization to `|M| = 1`.
//! Boundaries are open: edge sites simply have fewer exchange neighbours.
//!
//! The beam couples through its magnetic field, assembled from the beam's
//! vector potential as `B = (z x E, curl A)` in dimensionless form — the
//! in-plane part is the plane-wave relation with the speed of light absorbed
//! into `zeeman_scale`, the out-of-plane part the grid curl of `A`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::beam::{BeamSpec, DriveSampler};
use crate::grid::{curl_z, GridSpec, ScalarField, VectorField};
use crate::vec3::Vector3;

/// 2D lattice of unit spins. Site `(ix, iy)` sits at
/// `origin + (ix, iy) * a0`, row-major with `iy` slow.
#[derive(Clone, Debug)]
pub struct SpinLattice {
    pub nx: usize,
    pub ny: usize,
    /// Lattice constant (the length unit of the drive grid).
    pub a0: f64,
    pub origin: [f64; 2],
    pub spins: Vec<Vector3>,
}

impl SpinLattice {
    pub fn uniform(nx: usize, ny: usize, a0: f64, dir: Vector3) -> Self {
        Self {
            nx,
            ny,
            a0,
            origin: [0.0, 0.0],
            spins: vec![dir.normalized(); nx * ny],
        }
    }

    #[inline]
    pub fn idx(&self, ix: usize, iy: usize) -> usize {
        iy * self.nx + ix
    }

    pub fn grid(&self) -> GridSpec {
        GridSpec { nx: self.nx, ny: self.ny, dx: self.a0, origin: self.origin }
    }

    pub fn site_positions(&self) -> Vec<[f64; 2]> {
        let g = self.grid();
        (0..self.ny)
            .flat_map(|iy| (0..self.nx).map(move |ix| (ix, iy)))
            .map(|(ix, iy)| g.pos(ix, iy))
            .collect()
    }

    pub fn max_norm_deviation(&self) -> f64 {
        self.spins
            .iter()
            .map(|m| (m.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Domain-wall Néel skyrmion ansatz: core polarity down at the centre,
    /// background up, unit in-plane winding. `radius` and `wall_width` are in
    /// units of `a0`.
    pub fn neel_skyrmion(nx: usize, ny: usize, a0: f64, radius: f64, wall_width: f64) -> Self {
        let mut lat = Self::uniform(nx, ny, a0, Vector3::new(0.0, 0.0, 1.0));
        let g = lat.grid();
        let c = g.centre();
        for iy in 0..ny {
            for ix in 0..nx {
                let p = g.pos(ix, iy);
                let dx = p[0] - c[0];
                let dy = p[1] - c[1];
                let r = dx.hypot(dy);
                let theta = 2.0 * ((radius - r) / (wall_width * a0)).exp().atan();
                let phi = dy.atan2(dx);
                lat.spins[iy * nx + ix] = Vector3::new(
                    theta.sin() * phi.cos(),
                    theta.sin() * phi.sin(),
                    theta.cos(),
                );
            }
        }
        lat
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LlgParams {
    /// Nearest-neighbour exchange.
    pub j_ex: f64,
    /// Easy-axis anisotropy along z (non-negative).
    pub k_z: f64,
    /// Gyromagnetic ratio.
    pub gamma: f64,
    /// Gilbert damping in `[0, 1]`.
    pub alpha: f64,
    pub dt: f64,
    pub steps: usize,
    /// Coupling of the beam magnetic field to the spins.
    pub zeeman_scale: f64,
    pub seed: u64,
}

impl Default for LlgParams {
    fn default() -> Self {
        Self {
            j_ex: 1.0,
            k_z: 0.1,
            gamma: 1.0,
            alpha: 0.1,
            dt: 0.01,
            steps: 1000,
            zeeman_scale: 1.0,
            seed: 0,
        }
    }
}

#[derive(Debug, Error)]
pub enum LlgError {
    #[error("accuracy guard tripped: dt * gamma * max|H| = {value:.3e} >= 0.1")]
    AccuracyGuard { value: f64 },
    #[error("damping must lie in [0, 1], got {0}")]
    BadDamping(f64),
}

impl LlgParams {
    pub fn validate(&self) -> Result<(), LlgError> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(LlgError::BadDamping(self.alpha));
        }
        Ok(())
    }
}

/// `H_i = J_ex sum_nn M_j + K_z M_i^z e_z + zeeman_scale * B_light(r_i)`.
/// Open boundaries: missing neighbours are omitted.
pub fn effective_field(
    lattice: &SpinLattice,
    params: &LlgParams,
    b_light: Option<&[Vector3]>,
    out: &mut Vec<Vector3>,
) {
    let (nx, ny) = (lattice.nx, lattice.ny);
    let spins = &lattice.spins;
    out.clear();
    out.resize(spins.len(), Vector3::zero());
    out.par_chunks_mut(nx).enumerate().for_each(|(iy, row)| {
        for (ix, h) in row.iter_mut().enumerate() {
            let i = iy * nx + ix;
            let mut ex = Vector3::zero();
            if ix + 1 < nx {
                ex += spins[i + 1];
            }
            if ix > 0 {
                ex += spins[i - 1];
            }
            if iy + 1 < ny {
                ex += spins[i + nx];
            }
            if iy > 0 {
                ex += spins[i - nx];
            }
            let mut field = ex * params.j_ex;
            field.z += params.k_z * spins[i].z;
            if let Some(b) = b_light {
                field += b[i] * params.zeeman_scale;
            }
            *h = field;
        }
    });
}

#[inline]
fn ll_torque(m: Vector3, h: Vector3, gamma: f64, alpha: f64) -> Vector3 {
    let mxh = m.cross(h);
    let rhs = mxh + alpha * m.cross(mxh);
    rhs * (-gamma / (1.0 + alpha * alpha))
}

/// Scratch buffers reused across [`step_llg`] calls.
#[derive(Default)]
pub struct HeunScratch {
    h: Vec<Vector3>,
    k1: Vec<Vector3>,
    predictor: Vec<Vector3>,
    h2: Vec<Vector3>,
}

/// One Heun step under fields `b_t` (at the current time) and `b_t_next` (at
/// `t + dt`), followed by per-site renormalization.
pub fn step_llg(
    lattice: &mut SpinLattice,
    params: &LlgParams,
    b_t: Option<&[Vector3]>,
    b_t_next: Option<&[Vector3]>,
    scratch: &mut HeunScratch,
) -> Result<(), LlgError> {
    effective_field(lattice, params, b_t, &mut scratch.h);

    let max_h = scratch.h.iter().map(|h| h.norm()).fold(0.0, f64::max);
    let guard = params.dt * params.gamma * max_h;
    if guard >= 0.1 {
        return Err(LlgError::AccuracyGuard { value: guard });
    }

    let n = lattice.spins.len();
    scratch.k1.clear();
    scratch.k1.resize(n, Vector3::zero());
    scratch.predictor.clear();
    scratch.predictor.resize(n, Vector3::zero());

    let spins = &lattice.spins;
    let h = &scratch.h;
    scratch
        .k1
        .par_iter_mut()
        .zip(scratch.predictor.par_iter_mut())
        .enumerate()
        .for_each(|(i, (k1, pred))| {
            *k1 = ll_torque(spins[i], h[i], params.gamma, params.alpha);
            *pred = spins[i] + *k1 * params.dt;
        });

    // Corrector stage: field of the full predictor lattice (barrier between
    // the two stages).
    let predictor_lattice = SpinLattice {
        nx: lattice.nx,
        ny: lattice.ny,
        a0: lattice.a0,
        origin: lattice.origin,
        spins: std::mem::take(&mut scratch.predictor),
    };
    effective_field(&predictor_lattice, params, b_t_next, &mut scratch.h2);
    scratch.predictor = predictor_lattice.spins;

    let k1 = &scratch.k1;
    let pred = &scratch.predictor;
    let h2 = &scratch.h2;
    lattice
        .spins
        .par_iter_mut()
        .enumerate()
        .for_each(|(i, m)| {
            let k2 = ll_torque(pred[i], h2[i], params.gamma, params.alpha);
            *m = (*m + (k1[i] + k2) * (0.5 * params.dt)).normalized();
        });
    Ok(())
}

/// Total energy `-J sum_pairs M_i.M_j - K_z/2 sum (M_i^z)^2 - zeeman sum B.M`,
/// summed in a fixed order.
pub fn energy(lattice: &SpinLattice, params: &LlgParams, b_light: Option<&[Vector3]>) -> f64 {
    let (nx, ny) = (lattice.nx, lattice.ny);
    let spins = &lattice.spins;
    let mut e = 0.0;
    for iy in 0..ny {
        for ix in 0..nx {
            let i = iy * nx + ix;
            if ix + 1 < nx {
                e -= params.j_ex * spins[i].dot(spins[i + 1]);
            }
            if iy + 1 < ny {
                e -= params.j_ex * spins[i].dot(spins[i + nx]);
            }
            e -= 0.5 * params.k_z * spins[i].z * spins[i].z;
            if let Some(b) = b_light {
                e -= params.zeeman_scale * b[i].dot(spins[i]);
            }
        }
    }
    e
}

/// Topological charge diagnostics: a central-difference density map plus the
/// signed-spherical-triangle (solid-angle) total.
#[derive(Clone, Debug)]
pub struct TopologicalChargeMap {
    /// Charge density per site (zero on the open boundary ring).
    pub density: ScalarField,
    /// Integral of the density map.
    pub q_density: f64,
    /// Solid-angle total over split plaquettes; near-integer for smooth
    /// textures.
    pub q_lattice: f64,
    /// Triangles skipped because the three spins were close to antipodal or
    /// degenerate.
    pub degenerate_skipped: usize,
}

const SOLID_ANGLE_EPS: f64 = 1e-12;

fn triangle_solid_angle(m1: Vector3, m2: Vector3, m3: Vector3) -> Option<f64> {
    let numer = m1.dot(m2.cross(m3));
    let denom = 1.0 + m1.dot(m2) + m2.dot(m3) + m3.dot(m1);
    if denom <= SOLID_ANGLE_EPS && numer.abs() <= SOLID_ANGLE_EPS {
        return None;
    }
    Some(2.0 * numer.atan2(denom))
}

/// Evaluate both topological-charge routes on the lattice.
pub fn topological_charge(lattice: &SpinLattice) -> TopologicalChargeMap {
    let (nx, ny) = (lattice.nx, lattice.ny);
    let g = lattice.grid();
    let spins = &lattice.spins;
    let inv_2a = 1.0 / (2.0 * lattice.a0);
    let mut density = ScalarField::zeros(g);
    for iy in 1..ny - 1 {
        for ix in 1..nx - 1 {
            let i = iy * nx + ix;
            let dmx = (spins[i + 1] - spins[i - 1]) * inv_2a;
            let dmy = (spins[i + nx] - spins[i - nx]) * inv_2a;
            let q = spins[i].dot(dmx.cross(dmy)) / (4.0 * std::f64::consts::PI);
            density.values[i] = q;
        }
    }
    let q_density: f64 = density.values.iter().sum::<f64>() * lattice.a0 * lattice.a0;

    let mut omega_total = 0.0;
    let mut skipped = 0;
    for iy in 0..ny - 1 {
        for ix in 0..nx - 1 {
            let m00 = spins[iy * nx + ix];
            let m10 = spins[iy * nx + ix + 1];
            let m11 = spins[(iy + 1) * nx + ix + 1];
            let m01 = spins[(iy + 1) * nx + ix];
            // Two counter-clockwise triangles per plaquette.
            match triangle_solid_angle(m00, m10, m11) {
                Some(w) => omega_total += w,
                None => skipped += 1,
            }
            match triangle_solid_angle(m00, m11, m01) {
                Some(w) => omega_total += w,
                None => skipped += 1,
            }
        }
    }
    TopologicalChargeMap {
        density,
        q_density,
        q_lattice: omega_total / (4.0 * std::f64::consts::PI),
        degenerate_skipped: skipped,
    }
}

/// Beam magnetic field sampled on the lattice (see the module docs for the
/// assembly convention).
pub struct MagnetDrive {
    sampler: DriveSampler,
    grid: GridSpec,
}

impl MagnetDrive {
    pub fn new(beam: BeamSpec, lattice: &SpinLattice) -> Self {
        Self {
            sampler: DriveSampler::new(beam, &lattice.site_positions()),
            grid: lattice.grid(),
        }
    }

    /// Fill `out` with `B_light` per site at time `t`. Calls must advance
    /// monotonically (pulsed envelopes integrate the potential forward).
    pub fn fill(&mut self, t: f64, out: &mut Vec<Vector3>) {
        let potentials = self.sampler.advance_to(t);
        let a_field = VectorField { grid: self.grid, values: potentials.to_vec() };
        let bz = curl_z(&a_field);
        let e = self.sampler.real_field(t);
        out.clear();
        out.resize(self.grid.len(), Vector3::zero());
        for (i, o) in out.iter_mut().enumerate() {
            *o = Vector3::new(-e[i][1], e[i][0], bz.values[i]);
        }
    }
}

/// Diagnostics cadence for [`run_magnet`]; zero disables an output.
#[derive(Clone, Copy, Debug)]
pub struct MagnetRunOutputs {
    pub snapshot_every: usize,
    pub charge_every: usize,
}

impl Default for MagnetRunOutputs {
    fn default() -> Self {
        Self { snapshot_every: 0, charge_every: 10 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ChargeSample {
    pub t: f64,
    pub q_lattice: f64,
    pub q_density: f64,
}

pub struct MagnetRunArtifacts {
    pub final_lattice: SpinLattice,
    pub charge_series: Vec<ChargeSample>,
    pub snapshots: Vec<(f64, SpinLattice)>,
    pub charge_maps: Vec<(f64, ScalarField)>,
}

/// Evolve `lattice0` under the beam for `params.steps` steps. `noise` tilts
/// the initial spins by up to the given angle (seeded) to break exact
/// collinearity; pass 0.0 for a pristine start.
pub fn run_magnet(
    beam: &BeamSpec,
    lattice0: &SpinLattice,
    params: &LlgParams,
    noise: f64,
    outputs: &MagnetRunOutputs,
) -> Result<MagnetRunArtifacts, LlgError> {
    params.validate()?;
    let mut lattice = lattice0.clone();
    if noise > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        for m in &mut lattice.spins {
            let tilt = Vector3::new(
                noise * (rng.gen::<f64>() - 0.5),
                noise * (rng.gen::<f64>() - 0.5),
                noise * (rng.gen::<f64>() - 0.5),
            );
            *m = (*m + tilt).normalized();
        }
    }

    let mut drive = MagnetDrive::new(*beam, &lattice);
    let mut b_now = Vec::new();
    let mut b_next = Vec::new();
    drive.fill(0.0, &mut b_now);

    let mut scratch = HeunScratch::default();
    let mut artifacts = MagnetRunArtifacts {
        final_lattice: lattice.clone(),
        charge_series: Vec::new(),
        snapshots: Vec::new(),
        charge_maps: Vec::new(),
    };

    for step in 0..params.steps {
        let t_next = (step + 1) as f64 * params.dt;
        drive.fill(t_next, &mut b_next);
        step_llg(&mut lattice, params, Some(&b_now), Some(&b_next), &mut scratch)?;
        std::mem::swap(&mut b_now, &mut b_next);

        if outputs.charge_every != 0 && (step + 1) % outputs.charge_every == 0 {
            let q = topological_charge(&lattice);
            artifacts.charge_series.push(ChargeSample {
                t: t_next,
                q_lattice: q.q_lattice,
                q_density: q.q_density,
            });
            if outputs.snapshot_every != 0 && (step + 1) % outputs.snapshot_every == 0 {
                artifacts.charge_maps.push((t_next, q.density));
            }
        }
        if outputs.snapshot_every != 0 && (step + 1) % outputs.snapshot_every == 0 {
            artifacts.snapshots.push((t_next, lattice.clone()));
        }
    }
    artifacts.final_lattice = lattice;
    Ok(artifacts)
}
