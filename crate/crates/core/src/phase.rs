//! Phase-winding extraction on complex grid fields.
//!
//! The winding of a field around a closed contour is the sum of
//! principal-branch phase differences between successive contour cells,
//! divided by `2 pi`. It is an integer by construction whenever the field is
//! nonzero on every contour cell.

use num_complex::Complex64;
use thiserror::Error;

use crate::grid::GridSpec;
use crate::math::wrap_phase;

/// Magnitudes below this on a contour make the phase meaningless.
pub const MIN_CONTOUR_MAG: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum WindingError {
    #[error("field magnitude {mag:.3e} below {MIN_CONTOUR_MAG:.0e} on contour cell ({ix}, {iy})")]
    ZeroOnContour { ix: usize, iy: usize, mag: f64 },
    #[error("contour needs at least 3 cells, got {0}")]
    DegenerateContour(usize),
}

/// Winding number of `values` (laid out on `grid`) around the closed contour
/// given as cell indices. The closing leg from the last cell back to the
/// first is implied.
pub fn phase_winding(
    values: &[Complex64],
    grid: &GridSpec,
    contour: &[(usize, usize)],
) -> Result<i32, WindingError> {
    if contour.len() < 3 {
        return Err(WindingError::DegenerateContour(contour.len()));
    }
    let mut phases = Vec::with_capacity(contour.len());
    for &(ix, iy) in contour {
        let v = values[grid.idx(ix, iy)];
        let mag = v.norm();
        if mag < MIN_CONTOUR_MAG {
            return Err(WindingError::ZeroOnContour { ix, iy, mag });
        }
        phases.push(v.arg());
    }
    let mut total = 0.0;
    for k in 0..phases.len() {
        let next = phases[(k + 1) % phases.len()];
        total += wrap_phase(next - phases[k]);
    }
    Ok((total / std::f64::consts::TAU).round() as i32)
}

/// Closed contour of grid cells tracing a circle of given centre and radius
/// (physical units). Consecutive duplicates are dropped so every step moves
/// to a new cell.
pub fn circle_contour(grid: &GridSpec, centre: [f64; 2], radius: f64) -> Vec<(usize, usize)> {
    let steps = ((std::f64::consts::TAU * radius / grid.dx).ceil() as usize * 8).max(64);
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for k in 0..steps {
        let th = std::f64::consts::TAU * k as f64 / steps as f64;
        let x = centre[0] + radius * th.cos();
        let y = centre[1] + radius * th.sin();
        let ix = ((x - grid.origin[0]) / grid.dx).round();
        let iy = ((y - grid.origin[1]) / grid.dx).round();
        if ix < 0.0 || iy < 0.0 || ix >= grid.nx as f64 || iy >= grid.ny as f64 {
            continue;
        }
        let cell = (ix as usize, iy as usize);
        if cells.last() != Some(&cell) {
            cells.push(cell);
        }
    }
    while cells.len() > 1 && cells.first() == cells.last() {
        cells.pop();
    }
    cells
}

/// The outermost ring of grid cells, traversed counter-clockwise.
pub fn boundary_contour(grid: &GridSpec) -> Vec<(usize, usize)> {
    let (nx, ny) = (grid.nx, grid.ny);
    let mut cells = Vec::with_capacity(2 * (nx + ny) - 4);
    for ix in 0..nx {
        cells.push((ix, 0));
    }
    for iy in 1..ny {
        cells.push((nx - 1, iy));
    }
    for ix in (0..nx - 1).rev() {
        cells.push((ix, ny - 1));
    }
    for iy in (1..ny - 1).rev() {
        cells.push((0, iy));
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vortex_field(grid: &GridSpec, charge: i32) -> Vec<Complex64> {
        let c = grid.centre();
        (0..grid.ny)
            .flat_map(|iy| (0..grid.nx).map(move |ix| (ix, iy)))
            .map(|(ix, iy)| {
                let p = grid.pos(ix, iy);
                let phi = (p[1] - c[1]).atan2(p[0] - c[0]);
                Complex64::from_polar(1.0, charge as f64 * phi)
            })
            .collect()
    }

    #[test]
    fn constant_field_has_zero_winding() {
        let g = GridSpec::new(16, 16, 1.0);
        let vals = vec![Complex64::new(0.3, -0.1); g.len()];
        let contour = circle_contour(&g, g.centre(), 5.0);
        assert_eq!(phase_winding(&vals, &g, &contour).unwrap(), 0);
        assert_eq!(phase_winding(&vals, &g, &boundary_contour(&g)).unwrap(), 0);
    }

    #[test]
    fn synthetic_vortex_counts_correctly() {
        let g = GridSpec::new(32, 32, 1.0);
        for charge in [-2, -1, 1, 3] {
            let vals = vortex_field(&g, charge);
            let contour = circle_contour(&g, g.centre(), 9.0);
            assert_eq!(phase_winding(&vals, &g, &contour).unwrap(), charge);
            assert_eq!(
                phase_winding(&vals, &g, &boundary_contour(&g)).unwrap(),
                charge
            );
        }
    }

    #[test]
    fn zero_on_contour_is_reported() {
        let g = GridSpec::new(8, 8, 1.0);
        let mut vals = vec![Complex64::new(1.0, 0.0); g.len()];
        vals[g.idx(4, 0)] = Complex64::new(0.0, 0.0);
        let err = phase_winding(&vals, &g, &boundary_contour(&g)).unwrap_err();
        match err {
            WindingError::ZeroOnContour { ix, iy, .. } => assert_eq!((ix, iy), (4, 0)),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
