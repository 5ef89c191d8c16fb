//! Physical constants, SI units.
//!
//! Single home for every dimensional constant in the crate, so that no
//! two modules can disagree on a digit. Values follow the 2019 SI
//! redefinition (c, k_B and e are exact by definition; ħ is the CODATA
//! 2018 recommended value).

/// Reduced Planck constant ħ, J·s.
pub const HBAR: f64 = 1.054571817e-34;

/// Speed of light in vacuum c, m/s.
pub const C: f64 = 2.99792458e8;

/// Boltzmann constant k_B, J/K.
pub const K_B: f64 = 1.380649e-23;

/// Elementary charge e, C. Used only at the CLI boundary to convert
/// photon energies quoted in eV into rad/s; the library itself is
/// eV-free.
pub const E_CHARGE: f64 = 1.602176634e-19;
