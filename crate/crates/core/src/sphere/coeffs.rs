//! Spin-½ harmonic coefficients in the `Ψ = √π Σ_{l≤1} a_lm Y_lm` normalization.

use std::sync::Arc;

use crate::error::Result;
use crate::quadrature::SphereGrid;
use crate::scalar::{cr, Real, C};
use crate::special::spherical_harmonics_table;
use crate::states::{check_dim, Spin, SpinState};

use super::field::SphereField;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfSpinCoeffs<T> {
    pub a00: C<T>,
    pub a1m1: C<T>,
    pub a10: C<T>,
    pub a11: C<T>,
}

impl<T: Real> HalfSpinCoeffs<T> {
    pub fn new(a00: C<T>, a1m1: C<T>, a10: C<T>, a11: C<T>) -> Self {
        Self {
            a00,
            a1m1,
            a10,
            a11,
        }
    }

    /// In [`crate::special::HarmonicIndex::flat`] order: `a00, a1-1, a10, a11`.
    pub fn to_array(&self) -> [C<T>; 4] {
        [self.a00, self.a1m1, self.a10, self.a11]
    }

    pub fn from_array(a: [C<T>; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    /// `√π Σ a_lm Y_lm(θ, φ)`.
    pub fn evaluate(&self, theta: T, phi: T) -> C<T> {
        let ys = spherical_harmonics_table(1, theta, phi);
        let s = self
            .to_array()
            .iter()
            .zip(&ys)
            .fold(C::new(T::zero(), T::zero()), |acc, (a, y)| acc + a * y);
        s * T::PI().sqrt()
    }

    pub fn to_field(&self, grid: Arc<SphereGrid<T>>) -> SphereField<T> {
        SphereField::from_fn(grid, |t, p| self.evaluate(t, p))
    }

    /// Projects a field onto `l ≤ 1` and divides out the `√π`.
    pub fn from_field(field: &SphereField<T>) -> Self {
        let a = field.harmonic_coefficients(1);
        let s = T::one() / T::PI().sqrt();
        Self::new(a[0] * s, a[1] * s, a[2] * s, a[3] * s)
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self::from_array(self.to_array().map(|a| a * s))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.to_array()
            .iter()
            .zip(other.to_array().iter())
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm()))
    }
}

fn half_components<T: Real>(state: &SpinState<T>) -> Result<(C<T>, C<T>)> {
    check_dim(Spin::HALF.dim(), state.dim())?;
    Ok((state.components()[0], state.components()[1]))
}

/// Products `ψ_a conj(φ_b)` for the four sign pairs, named `pp, pm, mp, mm`
/// with the first letter for `ψ` and the second for `φ`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Dyad<T> {
    pub pp: C<T>,
    pub pm: C<T>,
    pub mp: C<T>,
    pub mm: C<T>,
}

pub(crate) fn dyad<T: Real>(psi: &SpinState<T>, window: &SpinState<T>) -> Result<Dyad<T>> {
    let (p, m) = half_components(psi)?;
    let (fp, fm) = half_components(window)?;
    let (fp, fm) = (fp.conj(), fm.conj());
    Ok(Dyad {
        pp: p * fp,
        pm: p * fm,
        mp: m * fp,
        mm: m * fm,
    })
}

/// Amplitude coefficients of `|ψ⟩⟨φ|` for spin ½.
pub fn amplitude_coeffs_half<T: Real>(
    psi: &SpinState<T>,
    window: &SpinState<T>,
) -> Result<HalfSpinCoeffs<T>> {
    window.check_normalized()?;
    let d = dyad(psi, window)?;
    Ok(HalfSpinCoeffs::new(
        d.pp + d.mm,
        d.mp * T::SQRT_2(),
        d.pp - d.mm,
        -d.pm * T::SQRT_2(),
    ))
}

/// Wigner coefficients `c_lm` of `|ψ⟩⟨ψ|` for spin ½.
pub fn wigner_coeffs_half<T: Real>(psi: &SpinState<T>) -> Result<HalfSpinCoeffs<T>> {
    psi.check_normalized()?;
    let (p, m) = half_components(psi)?;
    Ok(HalfSpinCoeffs::new(
        cr(T::one()),
        m * p.conj() * T::SQRT_2(),
        cr(p.norm_sqr() - m.norm_sqr()),
        -p * m.conj() * T::SQRT_2(),
    ))
}

/// Amplitude coefficients after a rotation by `α` about `y`.
pub fn rotated_coeffs_half<T: Real>(
    psi: &SpinState<T>,
    window: &SpinState<T>,
    alpha: T,
) -> Result<HalfSpinCoeffs<T>> {
    window.check_normalized()?;
    let d = dyad(psi, window)?;
    let (s, c) = (alpha / T::lit(2.0)).sin_cos();
    Ok(HalfSpinCoeffs::new(
        (d.pp + d.mm) * c - (d.mp - d.pm) * s,
        (d.mp * c + d.pp * s) * T::SQRT_2(),
        (d.pp - d.mm) * c - (d.mp + d.pm) * s,
        -(d.pm * c - d.mm * s) * T::SQRT_2(),
    ))
}

/// Rotation symbol `cos(α/2) − i√3 sin(α/2) sinθ sinφ` for spin ½ about `y`.
pub fn rotation_symbol_half<T: Real>(alpha: T, theta: T, phi: T) -> C<T> {
    let (s, c) = (alpha / T::lit(2.0)).sin_cos();
    C::new(c, -T::lit(3.0).sqrt() * s * theta.sin() * phi.sin())
}
