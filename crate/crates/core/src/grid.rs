//! Uniform 2D sampling grids and the scalar/vector fields that live on them.

use thiserror::Error;

/// A uniform 2D grid. Cell `(ix, iy)` has its centre at
/// `origin + (ix * dx, iy * dx)`; storage is row-major with `iy` the slow
/// index (`idx = iy * nx + ix`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub origin: [f64; 2],
}

#[derive(Debug, Error)]
pub enum GridError {
    #[error("grid must be at least 4x4, got {nx}x{ny}")]
    TooSmall { nx: usize, ny: usize },
    #[error("grid spacing must be positive, got {0}")]
    BadSpacing(f64),
}

impl GridSpec {
    pub fn new(nx: usize, ny: usize, dx: f64) -> Self {
        Self { nx, ny, dx, origin: [0.0, 0.0] }
    }

    pub fn validate(&self) -> Result<(), GridError> {
        if self.nx < 4 || self.ny < 4 {
            return Err(GridError::TooSmall { nx: self.nx, ny: self.ny });
        }
        if !(self.dx > 0.0) {
            return Err(GridError::BadSpacing(self.dx));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn idx(&self, ix: usize, iy: usize) -> usize {
        debug_assert!(ix < self.nx && iy < self.ny);
        iy * self.nx + ix
    }

    /// Physical position of the cell centre.
    #[inline]
    pub fn pos(&self, ix: usize, iy: usize) -> [f64; 2] {
        [
            self.origin[0] + ix as f64 * self.dx,
            self.origin[1] + iy as f64 * self.dx,
        ]
    }

    /// Physical centre of the grid.
    pub fn centre(&self) -> [f64; 2] {
        [
            self.origin[0] + 0.5 * (self.nx - 1) as f64 * self.dx,
            self.origin[1] + 0.5 * (self.ny - 1) as f64 * self.dx,
        ]
    }
}

/// Real scalar samples on a [`GridSpec`].
#[derive(Clone, Debug)]
pub struct ScalarField {
    pub grid: GridSpec,
    pub values: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(grid: GridSpec) -> Self {
        Self { grid, values: vec![0.0; grid.len()] }
    }

    #[inline]
    pub fn get(&self, ix: usize, iy: usize) -> f64 {
        self.values[self.grid.idx(ix, iy)]
    }

    #[inline]
    pub fn set(&mut self, ix: usize, iy: usize, v: f64) {
        let i = self.grid.idx(ix, iy);
        self.values[i] = v;
    }
}

/// Real 2-vector samples on a [`GridSpec`].
#[derive(Clone, Debug)]
pub struct VectorField {
    pub grid: GridSpec,
    pub values: Vec<[f64; 2]>,
}

impl VectorField {
    pub fn zeros(grid: GridSpec) -> Self {
        Self { grid, values: vec![[0.0; 2]; grid.len()] }
    }

    #[inline]
    pub fn get(&self, ix: usize, iy: usize) -> [f64; 2] {
        self.values[self.grid.idx(ix, iy)]
    }
}

/// Out-of-plane curl `d(v_y)/dx - d(v_x)/dy` by central differences, falling
/// back to one-sided two-point differences on the edges.
pub fn curl_z(field: &VectorField) -> ScalarField {
    let g = field.grid;
    let mut out = ScalarField::zeros(g);
    let d = |hi: [f64; 2], lo: [f64; 2], span: f64, comp: usize| (hi[comp] - lo[comp]) / span;
    for iy in 0..g.ny {
        for ix in 0..g.nx {
            let dvy_dx = if ix == 0 {
                d(field.get(1, iy), field.get(0, iy), g.dx, 1)
            } else if ix == g.nx - 1 {
                d(field.get(ix, iy), field.get(ix - 1, iy), g.dx, 1)
            } else {
                d(field.get(ix + 1, iy), field.get(ix - 1, iy), 2.0 * g.dx, 1)
            };
            let dvx_dy = if iy == 0 {
                d(field.get(ix, 1), field.get(ix, 0), g.dx, 0)
            } else if iy == g.ny - 1 {
                d(field.get(ix, iy), field.get(ix, iy - 1), g.dx, 0)
            } else {
                d(field.get(ix, iy + 1), field.get(ix, iy - 1), 2.0 * g.dx, 0)
            };
            out.set(ix, iy, dvy_dx - dvx_dy);
        }
    }
    out
}
