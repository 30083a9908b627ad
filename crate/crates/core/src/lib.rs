//! Phase-space spinor amplitudes, Wigner and Husimi functions for finite spin
//! systems, on the sphere and on the finite `(2j+1) × (2j+1)` lattice.
//!
//! Everything is generic over the real scalar ([`Real`], implemented for
//! `f32` and `f64`); the `*F64` aliases below cover the common case.
//!
//! ```
//! use spinphase_core::{Spin, SpinStateF64, SpherePhaseSpaceF64, StarRoute};
//!
//! let space = SpherePhaseSpaceF64::standard(Spin::HALF);
//! let up = SpinStateF64::up(Spin::HALF);
//! let amp = space.amplitude(&up, &up).unwrap();
//! let w = space.star(&amp, &amp.conj(), StarRoute::Operator).unwrap();
//! assert!(w.max_abs_diff(&space.wigner(&up).unwrap()) < 1e-12);
//! ```

pub mod error;
pub mod lattice;
pub mod matrix;
pub mod nmr;
pub mod quadrature;
pub mod scalar;
pub mod special;
pub mod sphere;
pub mod states;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{AxiomReport, LatticeField, LatticeKernel};
pub use matrix::CMatrix;
pub use nmr::NmrParams;
pub use quadrature::SphereGrid;
pub use scalar::{Real, C};
pub use special::{CouplingIndex, HarmonicIndex};
pub use sphere::{
    HalfSpinCoeffs, SphereField, SpherePhaseSpace, StarRoute, Superposition, SwKernel,
};
pub use states::{AmplitudeOperator, Axis, Spin, SpinOperator, SpinState};

pub type Complex64 = C<f64>;
pub type CMatrixF64 = CMatrix<f64>;
pub type SpinStateF64 = SpinState<f64>;
pub type SpinOperatorF64 = SpinOperator<f64>;
pub type AmplitudeOperatorF64 = AmplitudeOperator<f64>;
pub type SphereGridF64 = SphereGrid<f64>;
pub type SwKernelF64 = SwKernel<f64>;
pub type SphereFieldF64 = SphereField<f64>;
pub type SpherePhaseSpaceF64 = SpherePhaseSpace<f64>;
pub type HalfSpinCoeffsF64 = HalfSpinCoeffs<f64>;
pub type LatticeKernelF64 = LatticeKernel<f64>;
pub type LatticeFieldF64 = LatticeField<f64>;
pub type NmrParamsF64 = NmrParams<f64>;

pub type SpinStateF32 = SpinState<f32>;
pub type SpherePhaseSpaceF32 = SpherePhaseSpace<f32>;
pub type LatticeKernelF32 = LatticeKernel<f32>;
