//! Dimensionless time-dependent Ginzburg–Landau solver for a 2D film driven
//! through its vector potential, with vortex detection and supercurrent
//! diagnostics.
//!
//! Units: lengths in the coherence length, time in the GL relaxation time,
//! and gauge fields scaled so the flux quantum is `2 pi`. The evolution is
//!
//! `d psi / dt = (grad - i A)^2 psi + psi - |psi|^2 psi`
//!
//! discretized with link variables `U = exp(-i a)` (`a` the line integral of
//! `A` along a link), forward Euler in time, and insulating boundaries
//! (missing neighbours simply drop out, which sets the covariant normal
//! derivative to zero). The drive is external only: the film's own induced
//! field is neglected (thin-film, large-kappa limit) and the scalar
//! potential is zero throughout.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::beam::{BeamSpec, DriveSampler};
use crate::grid::{GridSpec, VectorField};
use crate::phase::{boundary_contour, phase_winding, WindingError};

/// Complex order parameter on a grid; equilibrium is `|psi| = 1`.
#[derive(Clone, Debug)]
pub struct ComplexGridField {
    pub grid: GridSpec,
    pub psi: Vec<Complex64>,
}

impl ComplexGridField {
    pub fn uniform(grid: GridSpec, value: Complex64) -> Self {
        Self { grid, psi: vec![value; grid.len()] }
    }

    #[inline]
    pub fn get(&self, ix: usize, iy: usize) -> Complex64 {
        self.psi[self.grid.idx(ix, iy)]
    }

    pub fn max_abs(&self) -> f64 {
        self.psi.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Gauge-field line integrals on the links of a grid.
///
/// `ax[iy * (nx-1) + ix]` lives on the link `(ix, iy) -> (ix+1, iy)`;
/// `ay[iy * nx + ix]` on `(ix, iy) -> (ix, iy+1)`.
#[derive(Clone, Debug)]
pub struct LinkField {
    pub grid: GridSpec,
    pub ax: Vec<f64>,
    pub ay: Vec<f64>,
}

impl LinkField {
    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            ax: vec![0.0; (grid.nx - 1) * grid.ny],
            ay: vec![0.0; grid.nx * (grid.ny - 1)],
        }
    }

    #[inline]
    pub fn ax_idx(&self, ix: usize, iy: usize) -> usize {
        debug_assert!(ix < self.grid.nx - 1 && iy < self.grid.ny);
        iy * (self.grid.nx - 1) + ix
    }

    #[inline]
    pub fn ay_idx(&self, ix: usize, iy: usize) -> usize {
        debug_assert!(ix < self.grid.nx && iy < self.grid.ny - 1);
        iy * self.grid.nx + ix
    }

    /// Midpoints of all links, x-links first; the order matches
    /// [`LinkField::fill_from_potentials`].
    pub fn link_midpoints(grid: &GridSpec) -> Vec<[f64; 2]> {
        let mut pts = Vec::with_capacity((grid.nx - 1) * grid.ny + grid.nx * (grid.ny - 1));
        for iy in 0..grid.ny {
            for ix in 0..grid.nx - 1 {
                let p = grid.pos(ix, iy);
                pts.push([p[0] + 0.5 * grid.dx, p[1]]);
            }
        }
        for iy in 0..grid.ny - 1 {
            for ix in 0..grid.nx {
                let p = grid.pos(ix, iy);
                pts.push([p[0], p[1] + 0.5 * grid.dx]);
            }
        }
        pts
    }

    /// Fill from per-midpoint potentials (same order as
    /// [`LinkField::link_midpoints`]): `a = A . dl` with `dl` the link vector.
    pub fn fill_from_potentials(&mut self, potentials: &[[f64; 2]]) {
        let nx_links = (self.grid.nx - 1) * self.grid.ny;
        for (a, p) in self.ax.iter_mut().zip(&potentials[..nx_links]) {
            *a = p[0] * self.grid.dx;
        }
        for (a, p) in self.ay.iter_mut().zip(&potentials[nx_links..]) {
            *a = p[1] * self.grid.dx;
        }
    }

    /// Plaquette curl `(curl A)_z` at the plaquette with lower-left corner
    /// `(ix, iy)`: the loop sum of `a` divided by the plaquette area.
    pub fn plaquette_curl(&self, ix: usize, iy: usize) -> f64 {
        let d2 = self.grid.dx * self.grid.dx;
        (self.ax[self.ax_idx(ix, iy)] + self.ay[self.ay_idx(ix + 1, iy)]
            - self.ax[self.ax_idx(ix, iy + 1)]
            - self.ay[self.ay_idx(ix, iy)])
            / d2
    }
}

/// Boundary handling for the film edge.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BoundaryCondition {
    #[default]
    Insulating,
}

#[derive(Clone, Copy, Debug)]
pub struct TdglParams {
    /// Time step in GL relaxation-time units.
    pub dt: f64,
    pub steps: usize,
    /// Relaxation rate coefficient; 1 in the dimensionless form.
    pub eta: f64,
    /// Amplitude of the unit-circle complex noise added to the uniform
    /// initial condition.
    pub noise_amp: f64,
    pub seed: u64,
    pub bc: BoundaryCondition,
}

impl Default for TdglParams {
    fn default() -> Self {
        Self {
            dt: 0.01,
            steps: 1000,
            eta: 1.0,
            noise_amp: 1e-3,
            seed: 0,
            bc: BoundaryCondition::Insulating,
        }
    }
}

#[derive(Debug, Error)]
pub enum TdglError {
    #[error("time step {dt} must be positive and at most dx^2/4 = {bound}")]
    UnstableStep { dt: f64, bound: f64 },
    #[error("order parameter diverged: max |psi| = {max_abs:.3e} (reduce dt)")]
    Instability { max_abs: f64 },
    #[error(transparent)]
    Winding(#[from] WindingError),
}

impl TdglParams {
    pub fn validate(&self, grid: &GridSpec) -> Result<(), TdglError> {
        let bound = grid.dx * grid.dx / 4.0;
        if !(self.dt > 0.0) || self.dt > bound {
            return Err(TdglError::UnstableStep { dt: self.dt, bound });
        }
        Ok(())
    }
}

const DIVERGENCE_LIMIT: f64 = 10.0;

/// One forward-Euler step with the gauge-covariant five-point Laplacian.
pub fn step_tdgl(
    state: &ComplexGridField,
    links: &LinkField,
    params: &TdglParams,
) -> Result<ComplexGridField, TdglError> {
    let g = state.grid;
    let (nx, ny) = (g.nx, g.ny);
    let inv_d2 = 1.0 / (g.dx * g.dx);
    let psi = &state.psi;
    let mut next = vec![Complex64::default(); psi.len()];

    next.par_chunks_mut(nx).enumerate().for_each(|(iy, row)| {
        for (ix, out) in row.iter_mut().enumerate() {
            let c = psi[iy * nx + ix];
            let mut lap = Complex64::default();
            // Insulating boundary: absent neighbours contribute nothing,
            // which is the discrete zero covariant normal derivative.
            if ix + 1 < nx {
                let u = Complex64::from_polar(1.0, -links.ax[links.ax_idx(ix, iy)]);
                lap += u * psi[iy * nx + ix + 1] - c;
            }
            if ix > 0 {
                let u = Complex64::from_polar(1.0, links.ax[links.ax_idx(ix - 1, iy)]);
                lap += u * psi[iy * nx + ix - 1] - c;
            }
            if iy + 1 < ny {
                let u = Complex64::from_polar(1.0, -links.ay[links.ay_idx(ix, iy)]);
                lap += u * psi[(iy + 1) * nx + ix] - c;
            }
            if iy > 0 {
                let u = Complex64::from_polar(1.0, links.ay[links.ay_idx(ix, iy - 1)]);
                lap += u * psi[(iy - 1) * nx + ix] - c;
            }
            let rhs = lap * inv_d2 + c * (1.0 - c.norm_sqr());
            *out = c + params.eta * params.dt * rhs;
        }
    });

    let out = ComplexGridField { grid: g, psi: next };
    let max_abs = out.max_abs();
    if !max_abs.is_finite() || max_abs > DIVERGENCE_LIMIT {
        return Err(TdglError::Instability { max_abs });
    }
    Ok(out)
}

/// Clamp `|psi|` to one everywhere, keeping the phase (London-limit,
/// phase-only evolution).
pub fn clamp_magnitude(state: &mut ComplexGridField) {
    for v in &mut state.psi {
        let n = v.norm();
        if n > 0.0 {
            *v /= n;
        } else {
            *v = Complex64::new(1.0, 0.0);
        }
    }
}

/// Gauge-invariant supercurrent `J = Im[psi* (grad - iA) psi]`, evaluated on
/// links and averaged to cell centres.
pub fn supercurrent(state: &ComplexGridField, links: &LinkField) -> VectorField {
    let g = state.grid;
    let (nx, ny) = (g.nx, g.ny);
    let psi = &state.psi;
    let jx_link = |ix: usize, iy: usize| {
        let u = Complex64::from_polar(1.0, -links.ax[links.ax_idx(ix, iy)]);
        (psi[iy * nx + ix].conj() * u * psi[iy * nx + ix + 1]).im / g.dx
    };
    let jy_link = |ix: usize, iy: usize| {
        let u = Complex64::from_polar(1.0, -links.ay[links.ay_idx(ix, iy)]);
        (psi[iy * nx + ix].conj() * u * psi[(iy + 1) * nx + ix]).im / g.dx
    };

    let mut values = vec![[0.0; 2]; g.len()];
    values.par_chunks_mut(nx).enumerate().for_each(|(iy, row)| {
        for (ix, v) in row.iter_mut().enumerate() {
            let jx = if ix == 0 {
                jx_link(0, iy)
            } else if ix == nx - 1 {
                jx_link(nx - 2, iy)
            } else {
                0.5 * (jx_link(ix - 1, iy) + jx_link(ix, iy))
            };
            let jy = if iy == 0 {
                jy_link(ix, 0)
            } else if iy == ny - 1 {
                jy_link(ix, ny - 2)
            } else {
                0.5 * (jy_link(ix, iy - 1) + jy_link(ix, iy))
            };
            *v = [jx, jy];
        }
    });
    VectorField { grid: g, values }
}

/// Residual of the London relation `curl J + |psi|^2 (curl A) = 0`, one value
/// per plaquette (row-major over the `(nx-1) x (ny-1)` plaquette lattice).
///
/// Both curls are loop sums around the same plaquette so the residual
/// measures only the nonlinearity of the link current, which vanishes at
/// second order in the spacing for smooth phase fields.
pub fn london_residual(state: &ComplexGridField, links: &LinkField) -> Vec<f64> {
    let g = state.grid;
    let (nx, ny) = (g.nx, g.ny);
    let psi = &state.psi;
    let d2 = g.dx * g.dx;
    let jx_line = |ix: usize, iy: usize| {
        let u = Complex64::from_polar(1.0, -links.ax[links.ax_idx(ix, iy)]);
        (psi[iy * nx + ix].conj() * u * psi[iy * nx + ix + 1]).im
    };
    let jy_line = |ix: usize, iy: usize| {
        let u = Complex64::from_polar(1.0, -links.ay[links.ay_idx(ix, iy)]);
        (psi[iy * nx + ix].conj() * u * psi[(iy + 1) * nx + ix]).im
    };
    let mut out = Vec::with_capacity((nx - 1) * (ny - 1));
    for iy in 0..ny - 1 {
        for ix in 0..nx - 1 {
            let curl_j = (jx_line(ix, iy) + jy_line(ix + 1, iy)
                - jx_line(ix, iy + 1)
                - jy_line(ix, iy))
                / d2;
            let ns = 0.25
                * (psi[iy * nx + ix].norm_sqr()
                    + psi[iy * nx + ix + 1].norm_sqr()
                    + psi[(iy + 1) * nx + ix].norm_sqr()
                    + psi[(iy + 1) * nx + ix + 1].norm_sqr());
            out.push(curl_j + ns * links.plaquette_curl(ix, iy));
        }
    }
    out
}

/// A detected vortex core.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VortexRecord {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub charge: i32,
}

/// Core threshold used only to refine the reported position.
pub const CORE_THRESHOLD: f64 = 0.3;

/// Plaquette-winding vortex detector. Charge is threshold-free; the position
/// is the corner centroid weighted toward suppressed `|psi|` whenever a
/// corner sits below [`CORE_THRESHOLD`].
pub fn detect_vortices(state: &ComplexGridField, t: f64) -> Vec<VortexRecord> {
    let g = state.grid;
    let mut records = Vec::new();
    for iy in 0..g.ny - 1 {
        for ix in 0..g.nx - 1 {
            let corners = [
                (ix, iy),
                (ix + 1, iy),
                (ix + 1, iy + 1),
                (ix, iy + 1),
            ];
            let charge = plaquette_charge(state, ix, iy);
            if charge == 0 {
                continue;
            }
            let refine = corners.iter().any(|&(cx, cy)| state.get(cx, cy).norm() < CORE_THRESHOLD);
            let mut wsum = 0.0;
            let mut pos = [0.0, 0.0];
            for &(cx, cy) in &corners {
                let w = if refine {
                    1.0 / (state.get(cx, cy).norm() + 1e-6)
                } else {
                    1.0
                };
                let p = g.pos(cx, cy);
                pos[0] += w * p[0];
                pos[1] += w * p[1];
                wsum += w;
            }
            records.push(VortexRecord {
                t,
                x: pos[0] / wsum,
                y: pos[1] / wsum,
                charge,
            });
        }
    }
    records
}

#[inline]
fn plaquette_charge(state: &ComplexGridField, ix: usize, iy: usize) -> i32 {
    let th = |cx: usize, cy: usize| state.get(cx, cy).arg();
    let mut total = crate::math::wrap_phase(th(ix + 1, iy) - th(ix, iy));
    total += crate::math::wrap_phase(th(ix + 1, iy + 1) - th(ix + 1, iy));
    total += crate::math::wrap_phase(th(ix, iy + 1) - th(ix + 1, iy + 1));
    total += crate::math::wrap_phase(th(ix, iy) - th(ix, iy + 1));
    (total / std::f64::consts::TAU).round() as i32
}

/// Sum of all plaquette charges. Equals the boundary winding exactly, as
/// integers, at every instant.
pub fn total_plaquette_charge(state: &ComplexGridField) -> i64 {
    let g = state.grid;
    let (nx, ny) = (g.nx, g.ny);
    let phases: Vec<f64> = state.psi.par_iter().map(|v| v.arg()).collect();
    let mut total = 0i64;
    for iy in 0..ny - 1 {
        for ix in 0..nx - 1 {
            let t00 = phases[iy * nx + ix];
            let t10 = phases[iy * nx + ix + 1];
            let t11 = phases[(iy + 1) * nx + ix + 1];
            let t01 = phases[(iy + 1) * nx + ix];
            let sum = crate::math::wrap_phase(t10 - t00)
                + crate::math::wrap_phase(t11 - t10)
                + crate::math::wrap_phase(t01 - t11)
                + crate::math::wrap_phase(t00 - t01);
            total += (sum / std::f64::consts::TAU).round() as i64;
        }
    }
    total
}

/// Winding of the order-parameter phase around the outer boundary ring.
pub fn boundary_winding(state: &ComplexGridField) -> Result<i64, WindingError> {
    let contour = boundary_contour(&state.grid);
    Ok(phase_winding(&state.psi, &state.grid, &contour)? as i64)
}

/// Apply a gauge transformation `psi -> psi exp(i chi)`,
/// `a_link -> a_link + delta chi` in place. `chi` is one value per cell.
pub fn apply_gauge(state: &mut ComplexGridField, links: &mut LinkField, chi: &[f64]) {
    let g = state.grid;
    assert_eq!(chi.len(), g.len());
    for (v, &c) in state.psi.iter_mut().zip(chi) {
        *v *= Complex64::from_polar(1.0, c);
    }
    for iy in 0..g.ny {
        for ix in 0..g.nx - 1 {
            let i = links.ax_idx(ix, iy);
            links.ax[i] += chi[g.idx(ix + 1, iy)] - chi[g.idx(ix, iy)];
        }
    }
    for iy in 0..g.ny - 1 {
        for ix in 0..g.nx {
            let i = links.ay_idx(ix, iy);
            links.ay[i] += chi[g.idx(ix, iy + 1)] - chi[g.idx(ix, iy)];
        }
    }
}

/// Isotropically averaged two-point correlation of a vector field,
/// `C(r) = <J(x) . J(x')>` binned by `|x - x'|` with bin width `dx` and
/// normalized so `C(0) = 1`.
#[derive(Clone, Debug)]
pub struct CorrelationProfile {
    /// Bin centres (multiples of the grid spacing).
    pub r: Vec<f64>,
    pub c: Vec<f64>,
    pub pairs: Vec<u64>,
}

/// Direct pair-sum correlation; per-row partial histograms are accumulated
/// in row order so the result is independent of worker count.
pub fn current_correlation(field: &VectorField) -> CorrelationProfile {
    let g = field.grid;
    let n = g.len();
    let max_r = (((g.nx - 1) * (g.nx - 1) + (g.ny - 1) * (g.ny - 1)) as f64).sqrt();
    let bins = max_r.round() as usize + 2;
    let vals = &field.values;

    let partials: Vec<(Vec<f64>, Vec<u64>)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut sums = vec![0.0; bins];
            let mut counts = vec![0u64; bins];
            let (ix, iy) = (i % g.nx, i / g.nx);
            let vi = vals[i];
            // Self-pair defines the zero-separation bin.
            sums[0] += vi[0] * vi[0] + vi[1] * vi[1];
            counts[0] += 1;
            for j in i + 1..n {
                let (jx, jy) = (j % g.nx, j / g.nx);
                let ddx = jx as f64 - ix as f64;
                let ddy = jy as f64 - iy as f64;
                let bin = (ddx * ddx + ddy * ddy).sqrt().round() as usize;
                let vj = vals[j];
                sums[bin] += vi[0] * vj[0] + vi[1] * vj[1];
                counts[bin] += 1;
            }
            (sums, counts)
        })
        .collect();

    let mut sums = vec![0.0; bins];
    let mut counts = vec![0u64; bins];
    for (s, c) in &partials {
        for b in 0..bins {
            sums[b] += s[b];
            counts[b] += c[b];
        }
    }

    let c0 = sums[0] / counts[0] as f64;
    let mut r = Vec::new();
    let mut c = Vec::new();
    let mut pairs = Vec::new();
    for b in 0..bins {
        if counts[b] == 0 {
            continue;
        }
        r.push(b as f64 * g.dx);
        let mean = sums[b] / counts[b] as f64;
        c.push(if c0 != 0.0 { mean / c0 } else { 0.0 });
        pairs.push(counts[b]);
    }
    CorrelationProfile { r, c, pairs }
}

/// Diagnostics cadence for [`run_sc`]; a zero interval disables the output.
/// The winding series is always recorded at every step.
#[derive(Clone, Copy, Debug)]
pub struct ScRunOutputs {
    pub snapshot_every: usize,
    pub vortex_every: usize,
    pub correlation_every: usize,
}

impl Default for ScRunOutputs {
    fn default() -> Self {
        Self { snapshot_every: 0, vortex_every: 0, correlation_every: 0 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct WindingSample {
    pub t: f64,
    pub plaquette_total: i64,
    pub boundary: i64,
}

/// Artifacts of a driven film run.
pub struct ScRunArtifacts {
    pub final_state: ComplexGridField,
    pub snapshots: Vec<(f64, ComplexGridField)>,
    pub vortex_trace: Vec<VortexRecord>,
    pub winding_series: Vec<WindingSample>,
    pub correlation_series: Vec<(f64, CorrelationProfile)>,
}

/// Evolve a film under a beam drive for `params.steps` steps. Deterministic
/// for a given seed and configuration.
pub fn run_sc(
    beam: &BeamSpec,
    grid: &GridSpec,
    params: &TdglParams,
    outputs: &ScRunOutputs,
) -> Result<ScRunArtifacts, TdglError> {
    params.validate(grid)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut state = ComplexGridField::uniform(*grid, Complex64::new(1.0, 0.0));
    for v in &mut state.psi {
        let theta: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
        *v += params.noise_amp * Complex64::from_polar(1.0, theta);
    }

    let midpoints = LinkField::link_midpoints(grid);
    let mut sampler = DriveSampler::new(*beam, &midpoints);
    let mut links = LinkField::zeros(*grid);

    let mut artifacts = ScRunArtifacts {
        final_state: state.clone(),
        snapshots: Vec::new(),
        vortex_trace: Vec::new(),
        winding_series: Vec::with_capacity(params.steps),
        correlation_series: Vec::new(),
    };

    for step in 0..params.steps {
        let t = step as f64 * params.dt;
        links.fill_from_potentials(sampler.advance_to(t));
        state = step_tdgl(&state, &links, params)?;
        let t_next = t + params.dt;

        artifacts.winding_series.push(WindingSample {
            t: t_next,
            plaquette_total: total_plaquette_charge(&state),
            boundary: boundary_winding(&state)?,
        });
        if outputs.vortex_every != 0 && (step + 1) % outputs.vortex_every == 0 {
            for rec in detect_vortices(&state, t_next) {
                artifacts.vortex_trace.push(rec);
            }
        }
        if outputs.snapshot_every != 0 && (step + 1) % outputs.snapshot_every == 0 {
            artifacts.snapshots.push((t_next, state.clone()));
        }
        if outputs.correlation_every != 0 && (step + 1) % outputs.correlation_every == 0 {
            let j = supercurrent(&state, &links);
            artifacts
                .correlation_series
                .push((t_next, current_correlation(&j)));
        }
    }
    artifacts.final_state = state;
    Ok(artifacts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beam::Envelope;

    fn grid16() -> GridSpec {
        GridSpec::new(16, 16, 0.5)
    }

    fn params(dt: f64) -> TdglParams {
        TdglParams { dt, ..TdglParams::default() }
    }

    fn vortex_state(grid: GridSpec, charge: i32) -> ComplexGridField {
        // f(r) e^{i q phi} with f(r) = tanh(r), an isolated core at centre.
        let c = grid.centre();
        let psi = (0..grid.ny)
            .flat_map(|iy| (0..grid.nx).map(move |ix| (ix, iy)))
            .map(|(ix, iy)| {
                let p = grid.pos(ix, iy);
                let (dx, dy) = (p[0] - c[0] - 0.01, p[1] - c[1] - 0.01);
                let r = dx.hypot(dy);
                Complex64::from_polar(r.tanh(), charge as f64 * dy.atan2(dx))
            })
            .collect();
        ComplexGridField { grid, psi }
    }

    #[test]
    fn uniform_state_is_fixed_point() {
        let g = grid16();
        let state = ComplexGridField::uniform(g, Complex64::new(1.0, 0.0));
        let links = LinkField::zeros(g);
        let next = step_tdgl(&state, &links, &params(0.05)).unwrap();
        for (a, b) in state.psi.iter().zip(&next.psi) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn subcritical_amplitude_relaxes_toward_one() {
        let g = grid16();
        let mut state = ComplexGridField::uniform(g, Complex64::new(0.5, 0.0));
        let links = LinkField::zeros(g);
        let p = params(0.05);
        let mut prev = 0.5;
        for _ in 0..200 {
            state = step_tdgl(&state, &links, &p).unwrap();
            let amp = state.psi[g.idx(8, 8)].norm();
            assert!(amp >= prev - 1e-14, "|psi| must grow monotonically");
            prev = amp;
        }
        assert!((prev - 1.0).abs() < 1e-3);
    }

    #[test]
    fn relaxed_film_stays_within_band() {
        let g = grid16();
        let p = TdglParams { steps: 2000, dt: 0.05, ..TdglParams::default() };
        let beam = BeamSpec {
            p: 0,
            l: 0,
            sigma: 0,
            theta_pol: 0.0,
            e0: 0.0,
            w0: 2.0,
            omega: 1.0,
            center: [4.0, 4.0],
            envelope: Envelope::Cw,
        };
        let art = run_sc(&beam, &g, &p, &ScRunOutputs::default()).unwrap();
        for v in &art.final_state.psi {
            assert!((v.norm() - 1.0).abs() < 1e-6);
        }
        assert!(art.vortex_trace.is_empty());
    }

    #[test]
    fn divergence_is_reported() {
        let g = grid16();
        let state = ComplexGridField::uniform(g, Complex64::new(7.0, 0.0));
        let links = LinkField::zeros(g);
        // |psi| = 7 with dt near the bound drives the cubic term over the cap.
        let mut s = state;
        let mut diverged = false;
        for _ in 0..50 {
            match step_tdgl(&s, &links, &params(0.0625)) {
                Ok(next) => s = next,
                Err(TdglError::Instability { .. }) => {
                    diverged = true;
                    break;
                }
                Err(e) => panic!("unexpected error {e}"),
            }
        }
        assert!(diverged);
    }

    #[test]
    fn dt_bound_is_enforced() {
        let g = grid16();
        let p = params(0.1); // dx^2/4 = 0.0625
        assert!(matches!(
            p.validate(&g),
            Err(TdglError::UnstableStep { .. })
        ));
    }

    #[test]
    fn vortex_winding_survives_evolution() {
        let g = GridSpec::new(32, 32, 0.5);
        let mut state = vortex_state(g, 1);
        let links = LinkField::zeros(g);
        let p = params(0.05);
        assert_eq!(total_plaquette_charge(&state), 1);
        for _ in 0..1000 {
            state = step_tdgl(&state, &links, &p).unwrap();
        }
        assert_eq!(total_plaquette_charge(&state), 1);
        assert_eq!(boundary_winding(&state).unwrap(), 1);
    }

    #[test]
    fn quiescent_current_vanishes() {
        let g = grid16();
        let state = ComplexGridField::uniform(g, Complex64::new(1.0, 0.0));
        let links = LinkField::zeros(g);
        let j = supercurrent(&state, &links);
        assert!(j.values.iter().all(|v| v == &[0.0, 0.0]));
    }

    #[test]
    fn uniform_potential_gives_minus_a() {
        let g = GridSpec::new(24, 24, 0.5);
        let state = ComplexGridField::uniform(g, Complex64::new(1.0, 0.0));
        let mut links = LinkField::zeros(g);
        let a = [1e-3, -2e-3];
        for v in &mut links.ax {
            *v = a[0] * g.dx;
        }
        for v in &mut links.ay {
            *v = a[1] * g.dx;
        }
        let j = supercurrent(&state, &links);
        for iy in 1..g.ny - 1 {
            for ix in 1..g.nx - 1 {
                let v = j.get(ix, iy);
                assert!((v[0] + a[0]).abs() < 1e-8);
                assert!((v[1] + a[1]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn single_vortex_circulation_is_quantized() {
        let g = GridSpec::new(48, 48, 0.5);
        let state = vortex_state(g, 1);
        let links = LinkField::zeros(g);
        let j = supercurrent(&state, &links);
        // Line integral of J around a ring far from the core approaches
        // 2 pi (the quantum of circulation) since |psi| ~ 1 there.
        let c = g.centre();
        let radius = 8.0 * g.dx;
        let n = 720;
        let mut circ = 0.0;
        for k in 0..n {
            let th = std::f64::consts::TAU * k as f64 / n as f64;
            let x = c[0] + radius * th.cos();
            let y = c[1] + radius * th.sin();
            let ix = ((x - g.origin[0]) / g.dx).round() as usize;
            let iy = ((y - g.origin[1]) / g.dx).round() as usize;
            let v = j.get(ix, iy);
            let tang = [-th.sin(), th.cos()];
            circ += (v[0] * tang[0] + v[1] * tang[1]) * std::f64::consts::TAU * radius / n as f64;
        }
        assert!(
            (circ - std::f64::consts::TAU).abs() < 0.2,
            "circulation {circ}"
        );
        // Azimuthal magnitude decays outward.
        let near = j.get(g.nx / 2 + 3, g.ny / 2);
        let far = j.get(g.nx / 2 + 11, g.ny / 2);
        assert!(near[1].abs() > far[1].abs());
    }

    #[test]
    fn detector_finds_nothing_in_uniform_state() {
        let g = grid16();
        let state = ComplexGridField::uniform(g, Complex64::new(1.0, 0.0));
        assert!(detect_vortices(&state, 0.0).is_empty());
    }

    #[test]
    fn detector_locates_analytic_vortex() {
        let g = GridSpec::new(32, 32, 0.5);
        let state = vortex_state(g, 1);
        let recs = detect_vortices(&state, 2.0);
        assert_eq!(recs.len(), 1);
        let r = recs[0];
        assert_eq!(r.charge, 1);
        assert_eq!(r.t, 2.0);
        let c = g.centre();
        assert!((r.x - c[0]).abs() < g.dx && (r.y - c[1]).abs() < g.dx);
    }

    #[test]
    fn detector_resolves_vortex_antivortex_pair() {
        let g = GridSpec::new(48, 48, 0.5);
        let c = g.centre();
        let (x1, y1) = (c[0] - 3.0, c[1]);
        let (x2, y2) = (c[0] + 3.0, c[1]);
        let psi = (0..g.ny)
            .flat_map(|iy| (0..g.nx).map(move |ix| (ix, iy)))
            .map(|(ix, iy)| {
                let p = g.pos(ix, iy);
                let f1 = Complex64::from_polar(
                    (p[0] - x1 - 0.01).hypot(p[1] - y1 - 0.01).tanh(),
                    (p[1] - y1 - 0.01).atan2(p[0] - x1 - 0.01),
                );
                let f2 = Complex64::from_polar(
                    (p[0] - x2 - 0.01).hypot(p[1] - y2 - 0.01).tanh(),
                    -(p[1] - y2 - 0.01).atan2(p[0] - x2 - 0.01),
                );
                f1 * f2
            })
            .collect();
        let state = ComplexGridField { grid: g, psi };
        let mut recs = detect_vortices(&state, 0.0);
        recs.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].charge, 1);
        assert_eq!(recs[1].charge, -1);
        assert_eq!(recs.iter().map(|r| r.charge as i64).sum::<i64>(), 0);
        assert_eq!(total_plaquette_charge(&state), 0);
    }

    #[test]
    fn correlation_of_uniform_current_is_one() {
        let g = grid16();
        let f = VectorField { grid: g, values: vec![[0.7, -0.2]; g.len()] };
        let prof = current_correlation(&f);
        for (&c, &r) in prof.c.iter().zip(&prof.r) {
            assert!((c - 1.0).abs() < 1e-12, "C({r}) = {c}");
        }
    }

    #[test]
    fn correlation_of_white_noise_decorrelates() {
        use rand::Rng;
        let g = GridSpec::new(32, 32, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let values: Vec<[f64; 2]> = (0..g.len())
            .map(|_| [rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5])
            .collect();
        let f = VectorField { grid: g, values };
        let prof = current_correlation(&f);
        for b in 1..prof.c.len() {
            let bound = 5.0 / (prof.pairs[b] as f64).sqrt();
            assert!(
                prof.c[b].abs() < bound,
                "bin {b}: |{}| >= {bound}",
                prof.c[b]
            );
        }
    }

    #[test]
    fn gauge_transformation_preserves_observables() {
        let g = GridSpec::new(24, 24, 0.5);
        let mut state = vortex_state(g, 1);
        let mut links = LinkField::zeros(g);
        let base_j = supercurrent(&state, &links);
        let base_abs: Vec<f64> = state.psi.iter().map(|v| v.norm()).collect();
        let chi: Vec<f64> = (0..g.len())
            .map(|i| {
                let (ix, iy) = (i % g.nx, i / g.nx);
                0.3 * (ix as f64 * 0.2).sin() + 0.4 * (iy as f64 * 0.15).cos()
            })
            .collect();
        apply_gauge(&mut state, &mut links, &chi);
        let j = supercurrent(&state, &links);
        for (a, b) in base_j.values.iter().zip(&j.values) {
            assert!((a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
        }
        for (a, v) in base_abs.iter().zip(&state.psi) {
            assert!((a - v.norm()).abs() < 1e-12);
        }
        assert_eq!(total_plaquette_charge(&state), 1);
    }

    #[test]
    fn determinism_same_seed_same_artifacts() {
        let g = grid16();
        let p = TdglParams { steps: 50, dt: 0.05, seed: 3, ..TdglParams::default() };
        let beam = BeamSpec {
            p: 0,
            l: 1,
            sigma: 1,
            theta_pol: std::f64::consts::FRAC_PI_4,
            e0: 2.0,
            w0: 2.0,
            omega: 1.0,
            center: [3.75, 3.75],
            envelope: Envelope::Cw,
        };
        let outs = ScRunOutputs { snapshot_every: 25, correlation_every: 0 };
        let a = run_sc(&beam, &g, &p, &outs).unwrap();
        let b = run_sc(&beam, &g, &p, &outs).unwrap();
        assert_eq!(a.final_state.psi, b.final_state.psi);
        assert_eq!(a.snapshots.len(), b.snapshots.len());
        for (x, y) in a.snapshots.iter().zip(&b.snapshots) {
            assert_eq!(x.0, y.0);
            assert_eq!(x.1.psi, y.1.psi);
        }
    }
}
