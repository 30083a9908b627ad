//! Discrete phase space on the `(2j+1) × (2j+1)` lattice.

mod closed;
mod field;
mod kernel;

pub use closed::{amplitude_half, rotated_amplitude_half, wigner_half, wigner_half_unchecked};
pub(crate) use closed::{from_points, h, Parts};
pub use field::LatticeField;
pub use kernel::{AxiomReport, LatticeKernel};
