//! Spin-½ in a static field plus a rotating control field, in the frame
//! rotating at the spectrometer reference frequency.

use crate::error::Result;
use crate::lattice::{from_points, h, LatticeField, LatticeKernel, Parts};
use crate::matrix::CMatrix;
use crate::scalar::{c, cis, cr, Real, C};
use crate::sphere::{dyad, HalfSpinCoeffs, SphereField, SpherePhaseSpace, StarRoute};
use crate::states::{pauli, Axis, Spin, SpinOperator, SpinState};

/// Frequencies in rad per unit time, phase in rad.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NmrParams<T> {
    pub omega0: T,
    pub omega_nut: T,
    pub omega_ref: T,
    pub chi: T,
}

impl<T: Real> NmrParams<T> {
    pub fn new(omega0: T, omega_nut: T, omega_ref: T, chi: T) -> Self {
        Self {
            omega0,
            omega_nut,
            omega_ref,
            chi,
        }
    }

    /// On resonance: `ω₀ = ω_ref`.
    pub fn resonant(omega_nut: T, chi: T) -> Self {
        Self::new(T::zero(), omega_nut, T::zero(), chi)
    }

    /// `ω_res = ω₀ − ω_ref`.
    pub fn omega_res(&self) -> T {
        self.omega0 - self.omega_ref
    }

    /// `ω_eff = √(ω_res² + ω_nut²)`.
    pub fn omega_eff(&self) -> T {
        self.omega_res().hypot(self.omega_nut)
    }

    /// `α = ω_eff t`.
    pub fn flip_angle(&self, t: T) -> T {
        self.omega_eff() * t
    }

    /// `(cos(α/2), sin(α/2)/ω_eff)`, the second taken as 0 when `ω_eff = 0`
    /// (it only ever multiplies `ω_res` or `ω_nut`).
    fn half_angle(&self, t: T) -> (T, T) {
        let we = self.omega_eff();
        let (s, co) = (self.flip_angle(t) / T::lit(2.0)).sin_cos();
        let k = if we == T::zero() { T::zero() } else { s / we };
        (co, k)
    }
}

fn op<T: Real>(m: CMatrix<T>) -> SpinOperator<T> {
    SpinOperator::new(Spin::HALF, m).expect("2 × 2")
}

/// Lab-frame `½ω₀σ_z + ½ω_nut[cos(ω_ref t + χ)σ_x + sin(ω_ref t + χ)σ_y]`.
pub fn hamiltonian_lab<T: Real>(p: &NmrParams<T>, t: T) -> SpinOperator<T> {
    let half = T::lit(0.5);
    let ph = p.omega_ref * t + p.chi;
    let m = &(&pauli::<T>(Axis::Z).matrix().scale_real(half * p.omega0)
        + &pauli::<T>(Axis::X)
            .matrix()
            .scale_real(half * p.omega_nut * ph.cos()))
        + &pauli::<T>(Axis::Y)
            .matrix()
            .scale_real(half * p.omega_nut * ph.sin());
    op(m)
}

/// Rotating-frame `½ω_res σ_z + ½ω_nut(σ_x cos χ + σ_y sin χ)`.
pub fn hamiltonian_rot<T: Real>(p: &NmrParams<T>) -> SpinOperator<T> {
    let half = T::lit(0.5);
    let m = &(&pauli::<T>(Axis::Z)
        .matrix()
        .scale_real(half * p.omega_res())
        + &pauli::<T>(Axis::X)
            .matrix()
            .scale_real(half * p.omega_nut * p.chi.cos()))
        + &pauli::<T>(Axis::Y)
            .matrix()
            .scale_real(half * p.omega_nut * p.chi.sin());
    op(m)
}

/// `U = exp(−i H_rot t)` in closed form.
pub fn propagator<T: Real>(p: &NmrParams<T>, t: T) -> SpinOperator<T> {
    let (co, k) = p.half_angle(t);
    let wr = p.omega_res() * k;
    let wn = p.omega_nut * k;
    let mi = c(T::zero(), -T::one());
    let m = CMatrix::from_rows(&[
        &[c(co, -wr), mi * cis(-p.chi) * wn],
        &[mi * cis(p.chi) * wn, c(co, wr)],
    ]);
    op(m)
}

/// Rotating-frame amplitude on the sphere by both routes, plus its closed-form
/// coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereEvolution<T> {
    /// `U ⋆ Ψ`
    pub star: SphereField<T>,
    /// `Tr(U Ψ̂ Δ)`
    pub trace: SphereField<T>,
    pub coeffs: HalfSpinCoeffs<T>,
}

pub fn evolve_sphere<T: Real>(
    space: &SpherePhaseSpace<T>,
    psi: &SpinState<T>,
    window: &SpinState<T>,
    p: &NmrParams<T>,
    t: T,
) -> Result<SphereEvolution<T>> {
    let u = propagator(p, t);
    let amp = space.amplitude(psi, window)?;
    let star = space.star(&space.symbol(&u)?, &amp, StarRoute::Operator)?;
    let trace = space.amplitude(&psi.transformed(&u)?, window)?;
    let coeffs = evolved_coeffs_half(psi, window, p, t)?;
    Ok(SphereEvolution {
        star,
        trace,
        coeffs,
    })
}

/// Closed-form harmonic coefficients of the evolved spin-½ amplitude.
pub fn evolved_coeffs_half<T: Real>(
    psi: &SpinState<T>,
    window: &SpinState<T>,
    p: &NmrParams<T>,
    t: T,
) -> Result<HalfSpinCoeffs<T>> {
    window.check_normalized()?;
    let d = dyad(psi, window)?;
    let (co, k) = p.half_angle(t);
    let (wr, wn) = (cr(p.omega_res()), cr(p.omega_nut));
    let (e, ec) = (cis(p.chi), cis(-p.chi));
    let i = C::<T>::i();
    let r2 = T::SQRT_2();
    Ok(HalfSpinCoeffs::new(
        (d.pp + d.mm) * co - i * ((d.pp - d.mm) * wr + (ec * d.mp + e * d.pm) * wn) * k,
        (d.mp * co + i * (d.mp * wr - e * d.pp * wn) * k) * r2,
        (d.pp - d.mm) * co - i * ((d.pp + d.mm) * wr + (ec * d.mp - e * d.pm) * wn) * k,
        -(d.pm * co - i * (d.pm * wr + ec * d.mm * wn) * k) * r2,
    ))
}

/// The same coefficients on resonance (`ω_res = 0`, `ω_nut > 0`).
pub fn evolved_coeffs_resonant<T: Real>(
    psi: &SpinState<T>,
    window: &SpinState<T>,
    omega_nut: T,
    chi: T,
    t: T,
) -> Result<HalfSpinCoeffs<T>> {
    window.check_normalized()?;
    let d = dyad(psi, window)?;
    let (s, co) = (omega_nut * t / T::lit(2.0)).sin_cos();
    let (e, ec) = (cis(chi), cis(-chi));
    let i = C::<T>::i();
    let r2 = T::SQRT_2();
    Ok(HalfSpinCoeffs::new(
        (d.pp + d.mm) * co - i * (ec * d.mp + e * d.pm) * s,
        (d.mp * co - i * e * d.pp * s) * r2,
        (d.pp - d.mm) * co - i * (ec * d.mp - e * d.pm) * s,
        -(d.pm * co - i * ec * d.mm * s) * r2,
    ))
}

/// `Tr(U Ψ̂ Δ(α,β))` on the lattice.
pub fn evolve_lattice<T: Real>(
    kernel: &LatticeKernel<T>,
    psi: &SpinState<T>,
    window: &SpinState<T>,
    p: &NmrParams<T>,
    t: T,
) -> Result<LatticeField<T>> {
    let u = propagator(p, t);
    kernel.amplitude(&psi.transformed(&u)?, window)
}

/// Closed-form evolved lattice amplitude for spin ½.
pub fn evolved_lattice_half<T: Real>(
    psi: &SpinState<T>,
    window: &SpinState<T>,
    p: &NmrParams<T>,
    t: T,
) -> Result<LatticeField<T>> {
    window.check_normalized()?;
    let s = Parts::new(psi, window)?;
    let (co, k) = p.half_angle(t);
    let (wr, wn) = (cr(p.omega_res()), cr(p.omega_nut));
    let (e, ec) = (cis(p.chi), cis(-p.chi));
    let i = C::<T>::i();
    let h = h::<T>();
    let (x, y) = (s.x(), s.p * s.a * e + s.m * s.b * ec);
    let up = s.p * wr + s.m * wn * ec;
    let down = s.m * wr - s.p * wn * e;
    let drive = x * wr + y * wn;
    Ok(from_points([
        s.a * (s.p + s.m) * co + (s.b - i * s.a) * up * k + h * (x * co - drive * k),
        s.b * (s.p + s.m) * co - (s.a - i * s.b) * down * k + h * (-x * co - drive * k),
        s.a * (s.p - s.m) * co - (s.b + i * s.a) * up * k - h * (x * co - drive * k),
        s.b * (s.m - s.p) * co + (s.a + i * s.b) * down * k + h * (x * co + drive * k),
    ]))
}

/// The evolved lattice amplitude on resonance (`ω_res = 0`, `ω_nut > 0`).
pub fn evolved_lattice_resonant<T: Real>(
    psi: &SpinState<T>,
    window: &SpinState<T>,
    omega_nut: T,
    chi: T,
    t: T,
) -> Result<LatticeField<T>> {
    window.check_normalized()?;
    let s = Parts::new(psi, window)?;
    let (sn, co) = (omega_nut * t / T::lit(2.0)).sin_cos();
    let (e, ec) = (cis(chi), cis(-chi));
    let i = C::<T>::i();
    let h = h::<T>();
    let hc = h.conj();
    let (x, y) = (s.x(), s.p * s.a * e + s.m * s.b * ec);
    Ok(from_points([
        s.a * (s.p + s.m) * co + s.m * ec * (s.b - i * s.a) * sn + h * (x * co - y * sn),
        s.m * (s.b + s.a) * co - s.b * (s.m * ec + i * s.p * e) * sn + hc * (x * co + y * sn),
        s.a * (s.p - s.m) * co - s.m * ec * (s.b + i * s.a) * sn - h * (x * co - y * sn),
        s.m * (s.b - s.a) * co + s.b * (s.m * ec - i * s.p * e) * sn - hc * (x * co + y * sn),
    ]))
}
