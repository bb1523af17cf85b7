//! SI constants used when converting internal results for reporting.

/// Elementary charge [C].
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Reduced Planck constant [J s].
pub const HBAR: f64 = 1.054_571_817e-34;

/// Planck constant [J s].
pub const PLANCK_H: f64 = 6.626_070_15e-34;

/// Electron mass [kg].
pub const ELECTRON_MASS: f64 = 9.109_383_7015e-31;

/// Bohr radius [m].
pub const BOHR_RADIUS: f64 = 5.291_772_109_03e-11;

/// Bohr magneton [J/T].
pub const BOHR_MAGNETON: f64 = 9.274_010_0783e-24;

/// Nuclear magneton [J/T].
pub const NUCLEAR_MAGNETON: f64 = 5.050_783_7461e-27;

/// Vacuum permittivity [F/m].
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_8128e-12;

/// Speed of light [m/s].
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;
