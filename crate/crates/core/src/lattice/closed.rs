//! Closed-form spin-½ lattice fields, written out point by point.
//!
//! Shorthand: `P = ψ_{1/2}`, `M = ψ_{-1/2}`, `A = φ̄_{1/2}`, `B = φ̄_{-1/2}`,
//! `X = PB − MA`, `Z = PA + MB`, `h = (1+i)/2`.

use crate::error::Result;
use crate::scalar::{c, Real, C};
use crate::sphere::dyad;
use crate::states::SpinState;

use super::field::LatticeField;

pub(crate) struct Parts<T> {
    pub p: C<T>,
    pub m: C<T>,
    pub a: C<T>,
    pub b: C<T>,
}

impl<T: Real> Parts<T> {
    pub fn new(psi: &SpinState<T>, window: &SpinState<T>) -> Result<Self> {
        dyad(psi, window)?;
        let (s, w) = (psi.components(), window.components());
        Ok(Self {
            p: s[0],
            m: s[1],
            a: w[0].conj(),
            b: w[1].conj(),
        })
    }

    pub fn x(&self) -> C<T> {
        self.p * self.b - self.m * self.a
    }

    pub fn z(&self) -> C<T> {
        self.p * self.a + self.m * self.b
    }
}

pub(crate) fn h<T: Real>() -> C<T> {
    c(T::lit(0.5), T::lit(0.5))
}

pub(crate) fn from_points<T: Real>(v: [C<T>; 4]) -> LatticeField<T> {
    LatticeField::new(2, v.to_vec()).expect("four points")
}

/// Lattice amplitude of `|ψ⟩⟨φ|` for spin ½.
pub fn amplitude_half<T: Real>(
    psi: &SpinState<T>,
    window: &SpinState<T>,
) -> Result<LatticeField<T>> {
    window.check_normalized()?;
    let s = Parts::new(psi, window)?;
    let (x, h) = (s.x(), h::<T>());
    let hc = h.conj();
    Ok(from_points([
        s.a * (s.p + s.m) + h * x,
        s.m * (s.b + s.a) + hc * x,
        s.a * (s.p - s.m) - h * x,
        s.m * (s.b - s.a) - hc * x,
    ]))
}

/// Lattice Wigner function of `|ψ⟩` for spin ½; the amplitude formula with
/// `φ = ψ`, halved.
pub fn wigner_half<T: Real>(psi: &SpinState<T>) -> Result<LatticeField<T>> {
    psi.check_normalized()?;
    wigner_half_unchecked(psi)
}

pub fn wigner_half_unchecked<T: Real>(psi: &SpinState<T>) -> Result<LatticeField<T>> {
    let s = Parts::new(psi, psi)?;
    let (x, h) = (s.x(), h::<T>());
    let hc = h.conj();
    let half = T::lit(0.5);
    Ok(from_points([
        (s.a * (s.p + s.m) + h * x) * half,
        (s.m * (s.b + s.a) + hc * x) * half,
        (s.a * (s.p - s.m) - h * x) * half,
        (s.m * (s.b - s.a) - hc * x) * half,
    ]))
}

/// Lattice amplitude after a rotation by `angle` about `y`.
pub fn rotated_amplitude_half<T: Real>(
    psi: &SpinState<T>,
    window: &SpinState<T>,
    angle: T,
) -> Result<LatticeField<T>> {
    window.check_normalized()?;
    let s = Parts::new(psi, window)?;
    let (sn, cs) = (angle / T::lit(2.0)).sin_cos();
    let (h, k) = (h::<T>(), s.x() * cs - s.z() * sn);
    let hc = h.conj();
    Ok(from_points([
        s.a * (s.p + s.m) * cs + s.a * (s.p - s.m) * sn + h * k,
        s.m * (s.b + s.a) * cs + s.p * (s.a + s.b) * sn + hc * k,
        s.a * (s.p - s.m) * cs - s.a * (s.p + s.m) * sn - h * k,
        s.m * (s.b - s.a) * cs + s.p * (s.b - s.a) * sn - hc * k,
    ]))
}
