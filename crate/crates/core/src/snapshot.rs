//! Suite-wide binary snapshot format for grid fields.
//!
//! Layout, all little-endian:
//!
//! ```text
//! bytes 0..8    magic "QPRINT01"
//! bytes 8..12   field kind (u32): 0 complex-scalar, 1 real-vector2,
//!               2 real-vector3, 3 real-scalar
//! bytes 12..16  nx (u32)
//! bytes 16..20  ny (u32)
//! bytes 20..28  dx (f64)
//! bytes 28..36  simulation time t (f64)
//! bytes 36..    nx * ny * components f64 values, row-major (iy slow),
//!               components interleaved
//! ```

use std::io::{Read, Write};

use num_complex::Complex64;
use thiserror::Error;

use crate::grid::{GridSpec, ScalarField, VectorField};
use crate::llg::SpinLattice;
use crate::tdgl::ComplexGridField;

pub const MAGIC: [u8; 8] = *b"QPRINT01";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    ComplexScalar,
    RealVector2,
    RealVector3,
    RealScalar,
}

impl FieldKind {
    pub fn components(self) -> usize {
        match self {
            FieldKind::ComplexScalar | FieldKind::RealVector2 => 2,
            FieldKind::RealVector3 => 3,
            FieldKind::RealScalar => 1,
        }
    }

    fn code(self) -> u32 {
        match self {
            FieldKind::ComplexScalar => 0,
            FieldKind::RealVector2 => 1,
            FieldKind::RealVector3 => 2,
            FieldKind::RealScalar => 3,
        }
    }

    fn from_code(code: u32) -> Option<Self> {
        match code {
            0 => Some(FieldKind::ComplexScalar),
            1 => Some(FieldKind::RealVector2),
            2 => Some(FieldKind::RealVector3),
            3 => Some(FieldKind::RealScalar),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad magic: not a snapshot file")]
    BadMagic,
    #[error("unknown field kind {0}")]
    BadKind(u32),
    #[error("payload size mismatch: expected {expected} values, got {got}")]
    SizeMismatch { expected: usize, got: usize },
}

/// A self-describing grid-field snapshot.
#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub kind: FieldKind,
    pub nx: u32,
    pub ny: u32,
    pub dx: f64,
    pub t: f64,
    /// Interleaved components, `nx * ny * components` values.
    pub data: Vec<f64>,
}

impl Snapshot {
    pub fn from_complex_field(field: &ComplexGridField, t: f64) -> Self {
        let mut data = Vec::with_capacity(field.psi.len() * 2);
        for v in &field.psi {
            data.push(v.re);
            data.push(v.im);
        }
        Self {
            kind: FieldKind::ComplexScalar,
            nx: field.grid.nx as u32,
            ny: field.grid.ny as u32,
            dx: field.grid.dx,
            t,
            data,
        }
    }

    pub fn from_vector_field(field: &VectorField, t: f64) -> Self {
        let mut data = Vec::with_capacity(field.values.len() * 2);
        for v in &field.values {
            data.extend_from_slice(v);
        }
        Self {
            kind: FieldKind::RealVector2,
            nx: field.grid.nx as u32,
            ny: field.grid.ny as u32,
            dx: field.grid.dx,
            t,
            data,
        }
    }

    pub fn from_scalar_field(field: &ScalarField, t: f64) -> Self {
        Self {
            kind: FieldKind::RealScalar,
            nx: field.grid.nx as u32,
            ny: field.grid.ny as u32,
            dx: field.grid.dx,
            t,
            data: field.values.clone(),
        }
    }

    pub fn from_spin_lattice(lattice: &SpinLattice, t: f64) -> Self {
        let mut data = Vec::with_capacity(lattice.spins.len() * 3);
        for m in &lattice.spins {
            data.push(m.x);
            data.push(m.y);
            data.push(m.z);
        }
        Self {
            kind: FieldKind::RealVector3,
            nx: lattice.nx as u32,
            ny: lattice.ny as u32,
            dx: lattice.a0,
            t,
            data,
        }
    }

    pub fn grid(&self) -> GridSpec {
        GridSpec::new(self.nx as usize, self.ny as usize, self.dx)
    }

    /// Complex view of a complex-scalar snapshot.
    pub fn as_complex(&self) -> Option<Vec<Complex64>> {
        (self.kind == FieldKind::ComplexScalar).then(|| {
            self.data
                .chunks_exact(2)
                .map(|c| Complex64::new(c[0], c[1]))
                .collect()
        })
    }

    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<(), SnapshotError> {
        w.write_all(&MAGIC)?;
        w.write_all(&self.kind.code().to_le_bytes())?;
        w.write_all(&self.nx.to_le_bytes())?;
        w.write_all(&self.ny.to_le_bytes())?;
        w.write_all(&self.dx.to_le_bytes())?;
        w.write_all(&self.t.to_le_bytes())?;
        let expected = self.nx as usize * self.ny as usize * self.kind.components();
        if self.data.len() != expected {
            return Err(SnapshotError::SizeMismatch { expected, got: self.data.len() });
        }
        for v in &self.data {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self, SnapshotError> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if magic != MAGIC {
            return Err(SnapshotError::BadMagic);
        }
        let mut u32buf = [0u8; 4];
        r.read_exact(&mut u32buf)?;
        let code = u32::from_le_bytes(u32buf);
        let kind = FieldKind::from_code(code).ok_or(SnapshotError::BadKind(code))?;
        r.read_exact(&mut u32buf)?;
        let nx = u32::from_le_bytes(u32buf);
        r.read_exact(&mut u32buf)?;
        let ny = u32::from_le_bytes(u32buf);
        let mut f64buf = [0u8; 8];
        r.read_exact(&mut f64buf)?;
        let dx = f64::from_le_bytes(f64buf);
        r.read_exact(&mut f64buf)?;
        let t = f64::from_le_bytes(f64buf);
        let expected = nx as usize * ny as usize * kind.components();
        let mut data = Vec::with_capacity(expected);
        for _ in 0..expected {
            r.read_exact(&mut f64buf)?;
            data.push(f64::from_le_bytes(f64buf));
        }
        Ok(Self { kind, nx, ny, dx, t, data })
    }

    pub fn write_to_file(&self, path: &std::path::Path) -> Result<(), SnapshotError> {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_to(&mut w)
    }

    pub fn read_from_file(path: &std::path::Path) -> Result<Self, SnapshotError> {
        let mut r = std::io::BufReader::new(std::fs::File::open(path)?);
        Self::read_from(&mut r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vec3::Vector3;

    #[test]
    fn round_trip_is_bit_exact() {
        let g = GridSpec::new(5, 4, 0.25);
        let field = ComplexGridField {
            grid: g,
            psi: (0..g.len())
                .map(|i| Complex64::new(i as f64 * 0.1, -(i as f64) * 0.3))
                .collect(),
        };
        let snap = Snapshot::from_complex_field(&field, 1.75);
        let mut bytes = Vec::new();
        snap.write_to(&mut bytes).unwrap();
        assert_eq!(bytes.len(), 36 + g.len() * 2 * 8);
        let back = Snapshot::read_from(&mut bytes.as_slice()).unwrap();
        assert_eq!(snap, back);
        // And the byte stream itself reproduces exactly.
        let mut bytes2 = Vec::new();
        back.write_to(&mut bytes2).unwrap();
        assert_eq!(bytes, bytes2);
    }

    #[test]
    fn spin_lattice_carries_three_components() {
        let mut lat = SpinLattice::uniform(4, 4, 1.0, Vector3::new(0.0, 0.0, 1.0));
        lat.spins[5] = Vector3::new(0.6, 0.0, 0.8);
        let snap = Snapshot::from_spin_lattice(&lat, 0.0);
        assert_eq!(snap.kind, FieldKind::RealVector3);
        assert_eq!(snap.data.len(), 48);
        assert_eq!(&snap.data[15..18], &[0.6, 0.0, 0.8]);
    }

    #[test]
    fn bad_magic_is_rejected() {
        let bytes = b"NOTQPRNT\x00\x00\x00\x00";
        let err = Snapshot::read_from(&mut bytes.as_slice()).unwrap_err();
        assert!(matches!(err, SnapshotError::BadMagic));
    }

    #[test]
    fn unknown_kind_is_rejected() {
        let mut bytes = Vec::new();
        bytes.extend_from_slice(&MAGIC);
        bytes.extend_from_slice(&9u32.to_le_bytes());
        bytes.extend_from_slice(&[0u8; 24]);
        let err = Snapshot::read_from(&mut bytes.as_slice()).unwrap_err();
        assert!(matches!(err, SnapshotError::BadKind(9)));
    }
}
