//! Phase space on the sphere: the Stratonovich–Weyl kernel, symbols, star
//! products, amplitudes, Wigner and Husimi fields.

mod coeffs;
mod field;
mod kernel;
mod space;

pub(crate) use coeffs::dyad;
pub use coeffs::{
    amplitude_coeffs_half, rotated_coeffs_half, rotation_symbol_half, wigner_coeffs_half,
    HalfSpinCoeffs,
};
pub use field::SphereField;
pub use kernel::SwKernel;
pub use space::{
    default_band_limit, modulus_squared_harmonics, SpherePhaseSpace, StarRoute, Superposition,
};
