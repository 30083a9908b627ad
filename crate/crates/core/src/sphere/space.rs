use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::quadrature::SphereGrid;
use crate::scalar::{cr, Real, C};
use crate::special::{wigner3j, HarmonicIndex};
use crate::states::{check_dim, Spin, SpinOperator, SpinState};

use super::field::SphereField;
use super::kernel::SwKernel;

/// How [`SpherePhaseSpace::star`] evaluates `F ⋆ G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StarRoute {
    /// Map both symbols to operators, multiply, map back.
    #[default]
    Operator,
    /// The triple-kernel double integral, summed node by node.
    Integral,
}

/// Field triple produced by [`SpherePhaseSpace::superpose`].
#[derive(Debug, Clone, PartialEq)]
pub struct Superposition<T> {
    pub amplitude: SphereField<T>,
    pub wigner: SphereField<T>,
    pub husimi: SphereField<T>,
}

/// A kernel together with a quadrature grid and the kernel matrices cached at
/// every node.
#[derive(Debug, Clone)]
pub struct SpherePhaseSpace<T> {
    kernel: SwKernel<T>,
    grid: Arc<SphereGrid<T>>,
    cache: Arc<Vec<CMatrix<T>>>,
}

/// `2·(2j) + 1`, enough for products of two symbols.
pub fn default_band_limit(spin: Spin) -> usize {
    2 * spin.twice() as usize + 1
}

impl<T: Real> SpherePhaseSpace<T> {
    pub fn new(kernel: SwKernel<T>, band_limit: usize) -> Self {
        Self::with_grid(kernel, Arc::new(SphereGrid::new(band_limit)))
    }

    pub fn with_grid(kernel: SwKernel<T>, grid: Arc<SphereGrid<T>>) -> Self {
        let cache = (0..grid.len())
            .into_par_iter()
            .map(|k| {
                let (t, p) = grid.node(k);
                kernel.evaluate(t, p)
            })
            .collect();
        Self {
            kernel,
            grid,
            cache: Arc::new(cache),
        }
    }

    /// Copy with every cached kernel matrix passed through `f`; used to feed
    /// deliberately broken kernels to the verification suite.
    pub(crate) fn map_cache(&self, f: impl Fn(&CMatrix<T>) -> CMatrix<T>) -> Self {
        let cache = self.cache.iter().map(f).collect();
        Self {
            kernel: self.kernel.clone(),
            grid: self.grid.clone(),
            cache: Arc::new(cache),
        }
    }

    /// Standard kernel at the default band limit.
    pub fn standard(spin: Spin) -> Self {
        Self::new(SwKernel::standard(spin), default_band_limit(spin))
    }

    pub fn kernel(&self) -> &SwKernel<T> {
        &self.kernel
    }

    pub fn grid(&self) -> &Arc<SphereGrid<T>> {
        &self.grid
    }

    pub fn spin(&self) -> Spin {
        self.kernel.spin()
    }

    pub fn dim(&self) -> usize {
        self.kernel.dim()
    }

    /// `Δ` at node `k`.
    pub fn kernel_at(&self, k: usize) -> &CMatrix<T> {
        &self.cache[k]
    }

    /// `(2j+1)/4π`.
    pub fn measure(&self) -> T {
        T::from_count(self.dim()) / (T::lit(4.0) * T::PI())
    }

    fn field(&self, values: Vec<C<T>>) -> SphereField<T> {
        SphereField::new(self.grid.clone(), values).expect("one value per node")
    }

    fn check_grid(&self, f: &SphereField<T>) -> Result<()> {
        if Arc::ptr_eq(f.grid(), &self.grid) || **f.grid() == *self.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch {
                left: self.grid.band_limit(),
                right: f.grid().band_limit(),
            })
        }
    }

    fn symbol_of_matrix(&self, x: &CMatrix<T>) -> SphereField<T> {
        let values = self.cache.par_iter().map(|d| x.trace_product(d)).collect();
        self.field(values)
    }

    /// `X(Ω) = Tr(X Δ(Ω))` at every node.
    pub fn symbol(&self, op: &SpinOperator<T>) -> Result<SphereField<T>> {
        check_dim(self.dim(), op.dim())?;
        Ok(self.symbol_of_matrix(op.matrix()))
    }

    /// `((2j+1)/4π) ∫ F Δ dΩ`. Needs `L ≥ 4j` so that the quadrature is exact
    /// for symbols of degree `2j`.
    pub fn operator_of(&self, f: &SphereField<T>) -> Result<SpinOperator<T>> {
        self.check_grid(f)?;
        let required = 2 * self.spin().twice() as usize;
        if self.grid.band_limit() < required {
            return Err(Error::InsufficientBandLimit {
                required,
                found: self.grid.band_limit(),
            });
        }
        let m = self
            .weighted_kernel_sum(f.values())
            .scale_real(self.measure());
        SpinOperator::new(self.spin(), m)
    }

    /// `Σ_k w_k F_k Δ_k`.
    fn weighted_kernel_sum(&self, values: &[C<T>]) -> CMatrix<T> {
        let d = self.dim();
        let mut acc = CMatrix::zeros(d, d);
        for (k, (delta, &v)) in self.cache.iter().zip(values).enumerate() {
            let s = v * self.grid.weight(k);
            acc = &acc + &delta.scale(s);
        }
        acc
    }

    /// Spinor amplitude `Ψ = Tr(|ψ⟩⟨φ| Δ)`; the window must be normalized.
    pub fn amplitude(&self, psi: &SpinState<T>, window: &SpinState<T>) -> Result<SphereField<T>> {
        window.check_normalized()?;
        check_dim(self.dim(), psi.dim())?;
        check_dim(self.dim(), window.dim())?;
        Ok(self.symbol_of_matrix(&CMatrix::outer(psi.components(), window.components())))
    }

    /// `W = Tr(|ψ⟩⟨ψ| Δ)` for a normalized state.
    pub fn wigner(&self, psi: &SpinState<T>) -> Result<SphereField<T>> {
        psi.check_normalized()?;
        check_dim(self.dim(), psi.dim())?;
        Ok(self.symbol_of_matrix(&CMatrix::outer(psi.components(), psi.components())))
    }

    /// `H = |Ψ|²`.
    pub fn husimi(&self, psi: &SpinState<T>, window: &SpinState<T>) -> Result<SphereField<T>> {
        psi.check_normalized()?;
        Ok(self.amplitude(psi, window)?.modulus_squared())
    }

    /// `⟨φ| Δ ρ Δ |φ⟩` with `ρ = |ψ⟩⟨ψ|`, an independent route to the Husimi field.
    pub fn husimi_sandwich(
        &self,
        psi: &SpinState<T>,
        window: &SpinState<T>,
    ) -> Result<SphereField<T>> {
        psi.check_normalized()?;
        window.check_normalized()?;
        check_dim(self.dim(), psi.dim())?;
        check_dim(self.dim(), window.dim())?;
        let rho = CMatrix::outer(psi.components(), psi.components());
        let phi = window.components();
        let values = self
            .cache
            .par_iter()
            .map(|d| {
                let w = (d * &(&rho * d)).apply(phi);
                phi.iter()
                    .zip(&w)
                    .fold(C::new(T::zero(), T::zero()), |acc, (a, b)| {
                        acc + a.conj() * b
                    })
            })
            .collect();
        Ok(self.field(values))
    }

    /// `F ⋆ G`.
    pub fn star(
        &self,
        f: &SphereField<T>,
        g: &SphereField<T>,
        route: StarRoute,
    ) -> Result<SphereField<T>> {
        self.check_grid(f)?;
        self.check_grid(g)?;
        match route {
            StarRoute::Operator => {
                let a = self.operator_of(f)?;
                let b = self.operator_of(g)?;
                Ok(self.symbol_of_matrix(&(a.matrix() * b.matrix())))
            }
            StarRoute::Integral => Ok(self.star_integral(f, g)),
        }
    }

    /// `((2j+1)/4π)² ∫∫ F(Ω₁) G(Ω₂) Tr(Δ(Ω) Δ(Ω₁) Δ(Ω₂)) dΩ₁ dΩ₂`, evaluated
    /// as a literal double sum over nodes.
    fn star_integral(&self, f: &SphereField<T>, g: &SphereField<T>) -> SphereField<T> {
        let n = self.grid.len();
        let wf: Vec<C<T>> = (0..n)
            .map(|a| f.values()[a] * self.grid.weight(a))
            .collect();
        let wg: Vec<C<T>> = (0..n)
            .map(|b| g.values()[b] * self.grid.weight(b))
            .collect();
        let pref = self.measure() * self.measure();
        let values = self
            .cache
            .par_iter()
            .map(|dk| {
                let mut acc = C::new(T::zero(), T::zero());
                for (a, da) in self.cache.iter().enumerate() {
                    let m = dk * da;
                    let mut inner = C::new(T::zero(), T::zero());
                    for (b, db) in self.cache.iter().enumerate() {
                        inner = inner + wg[b] * m.trace_product(db);
                    }
                    acc = acc + wf[a] * inner;
                }
                acc * pref
            })
            .collect();
        self.field(values)
    }

    /// `Ψ_R = R ⋆ Ψ` for a unitary `R`.
    pub fn rotate_amplitude(
        &self,
        psi: &SpinState<T>,
        window: &SpinState<T>,
        rotation: &SpinOperator<T>,
        route: StarRoute,
    ) -> Result<SphereField<T>> {
        check_dim(self.dim(), rotation.dim())?;
        rotation.check_unitary()?;
        let r = self.symbol(rotation)?;
        let amp = self.amplitude(psi, window)?;
        self.star(&r, &amp, route)
    }

    /// Amplitude, Wigner and Husimi fields of `αψ₁ + βψ₂` assembled from the
    /// fields of `ψ₁` and `ψ₂` and their cross terms. Both amplitudes must
    /// share a window.
    #[allow(clippy::too_many_arguments)]
    pub fn superpose(
        &self,
        psi1: &SpinState<T>,
        window1: &SpinState<T>,
        psi2: &SpinState<T>,
        window2: &SpinState<T>,
        alpha: C<T>,
        beta: C<T>,
        route: StarRoute,
    ) -> Result<Superposition<T>> {
        if window1.dim() != window2.dim() || window1.max_abs_diff(window2) > T::tol(1e-12) {
            return Err(Error::WindowMismatch);
        }
        let a1 = self.amplitude(psi1, window1)?;
        let a2 = self.amplitude(psi2, window1)?;
        let amplitude = a1.scale(alpha).add(&a2.scale(beta))?;

        let (c1, c2) = (a1.conj(), a2.conj());
        let w11 = self.star(&a1, &c1, route)?;
        let w22 = self.star(&a2, &c2, route)?;
        let w12 = self.star(&a1, &c2, route)?;
        let w21 = self.star(&a2, &c1, route)?;
        let wigner = w11
            .scale(cr(alpha.norm_sqr()))
            .add(&w22.scale(cr(beta.norm_sqr())))?
            .add(&w12.scale(alpha * beta.conj()))?
            .add(&w21.scale(beta * alpha.conj()))?;

        // |αΨ₁ + βΨ₂|² = |α|²|Ψ₁|² + |β|²|Ψ₂|² + 2 Re(αβ̄ Ψ₁Ψ̄₂)
        let cross = a1.mul(&c2)?.map(|z| z * alpha * beta.conj());
        let husimi = a1
            .modulus_squared()
            .scale(cr(alpha.norm_sqr()))
            .add(&a2.modulus_squared().scale(cr(beta.norm_sqr())))?
            .add(&cross.map(|z| cr(z.re + z.re)))?;
        Ok(Superposition {
            amplitude,
            wigner,
            husimi,
        })
    }

    /// `((2j+1)/4π) ∫ conj(F) G dΩ`.
    pub fn overlap(&self, f: &SphereField<T>, g: &SphereField<T>) -> Result<C<T>> {
        Ok(f.conj().mul(g)?.integrate() * self.measure())
    }

    /// `⟨ψ|A|ψ⟩` computed in phase space as `((2j+1)/4π) ∫ conj(Ψ) (A ⋆ Ψ) dΩ`.
    pub fn expectation(
        &self,
        op: &SpinOperator<T>,
        psi: &SpinState<T>,
        window: &SpinState<T>,
        route: StarRoute,
    ) -> Result<C<T>> {
        psi.check_normalized()?;
        let amp = self.amplitude(psi, window)?;
        let a = self.symbol(op)?;
        let prod = self.star(&a, &amp, route)?;
        self.overlap(&amp, &prod)
    }

    /// Harmonic coefficients of `|Ψ|²` up to `l = 2·(2j)` from the amplitude
    /// coefficients and Gaunt integrals, in [`HarmonicIndex::flat`] order.
    pub fn husimi_harmonics(&self, psi: &SpinState<T>, window: &SpinState<T>) -> Result<Vec<C<T>>> {
        let tw = self.spin().twice();
        let a = self.amplitude(psi, window)?.harmonic_coefficients(tw);
        Ok(modulus_squared_harmonics(&a, tw))
    }
}

/// Coefficients of `|Σ a_lm Y_lm|²` for a table of degree `l_max`, using
/// `conj(Y_{l,m}) = (-1)^m Y_{l,-m}` and the Gaunt coefficients.
pub fn modulus_squared_harmonics<T: Real>(a: &[C<T>], l_max: u32) -> Vec<C<T>> {
    let out_max = 2 * l_max;
    let mut out = vec![C::new(T::zero(), T::zero()); (out_max as usize + 1).pow(2)];
    let idx: Vec<HarmonicIndex> = HarmonicIndex::up_to(l_max).collect();
    let four_pi = T::lit(4.0) * T::PI();
    for i1 in &idx {
        let a1 = a[i1.flat()];
        for i2 in &idx {
            // Y_{l1 m1} · conj(Y_{l2 m2}) = (-1)^{m2} Y_{l1 m1} Y_{l2, -m2}
            let w = a1 * a[i2.flat()].conj();
            if w == C::new(T::zero(), T::zero()) {
                continue;
            }
            let (l1, m1, l2, m2) = (
                i1.l() as i64,
                i1.m() as i64,
                i2.l() as i64,
                -(i2.m() as i64),
            );
            let sign = if i2.m() % 2 == 0 { T::one() } else { -T::one() };
            let m = m1 + m2;
            for l in (l1 - l2).abs()..=(l1 + l2) {
                if m.abs() > l {
                    continue;
                }
                let g0: T = wigner3j(2 * l1, 2 * l2, 2 * l, 0, 0, 0).unwrap_or(T::zero());
                if g0 == T::zero() {
                    continue;
                }
                let gm: T =
                    wigner3j(2 * l1, 2 * l2, 2 * l, 2 * m1, 2 * m2, -2 * m).unwrap_or(T::zero());
                let pref = (T::from_count(((2 * l1 + 1) * (2 * l2 + 1) * (2 * l + 1)) as usize)
                    / four_pi)
                    .sqrt();
                let msign = if m % 2 == 0 { T::one() } else { -T::one() };
                let k = HarmonicIndex::new(l as u32, m as i32)
                    .expect("|m| ≤ l")
                    .flat();
                out[k] = out[k] + w * (sign * msign * pref * g0 * gm);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use crate::sphere::{amplitude_coeffs_half, rotation_symbol_half, HalfSpinCoeffs};
    use crate::states::{pauli, rotation_y_half, Axis};
    use std::f64::consts::PI;

    fn st(v: &[(f64, f64)]) -> SpinState<f64> {
        SpinState::from_components(v.iter().map(|&(a, b)| c(a, b)).collect()).unwrap()
    }

    fn half() -> SpherePhaseSpace<f64> {
        SpherePhaseSpace::standard(Spin::HALF)
    }

    #[test]
    fn symbols_of_basic_operators() {
        let s = half();
        let one = s.symbol(&SpinOperator::identity(Spin::HALF)).unwrap();
        assert!(one
            .values()
            .iter()
            .all(|z| (z - c(1.0, 0.0)).norm() < 1e-14));
        let z = s.symbol(&pauli(Axis::Z)).unwrap();
        let expect = SphereField::from_fn(s.grid().clone(), |t, _| c(3f64.sqrt() * t.cos(), 0.0));
        assert!(z.max_abs_diff(&expect) < 1e-14);
        let alpha = 1.3;
        let r = s.symbol(&rotation_y_half(alpha)).unwrap();
        let expect =
            SphereField::from_fn(s.grid().clone(), |t, p| rotation_symbol_half(alpha, t, p));
        assert!(r.max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn operator_round_trip() {
        let s = half();
        let sz = pauli::<f64>(Axis::Z);
        let back = s.operator_of(&s.symbol(&sz).unwrap()).unwrap();
        assert!(back.max_abs_diff(&sz) < 1e-12);
        let one = SphereField::constant(s.grid().clone(), c(1.0, 0.0));
        assert!(
            s.operator_of(&one)
                .unwrap()
                .max_abs_diff(&SpinOperator::identity(Spin::HALF))
                < 1e-12
        );
    }

    #[test]
    fn low_band_limit_is_rejected() {
        let s = SpherePhaseSpace::<f64>::new(SwKernel::standard(Spin::from_twice(2)), 1);
        let f = SphereField::constant(s.grid().clone(), c(1.0, 0.0));
        assert_eq!(
            s.operator_of(&f).unwrap_err(),
            Error::InsufficientBandLimit {
                required: 4,
                found: 1
            }
        );
    }

    #[test]
    fn amplitude_matches_coefficients() {
        let s = half();
        let psi = st(&[(0.6, 0.1), (-0.3, 0.734846922834953)]).normalized();
        let phi = st(&[(0.0, 1.0), (0.0, 0.0)]);
        let field = s.amplitude(&psi, &phi).unwrap();
        let coeffs = amplitude_coeffs_half(&psi, &phi).unwrap();
        assert!(field.max_abs_diff(&coeffs.to_field(s.grid().clone())) < 1e-12);
        assert!(HalfSpinCoeffs::from_field(&field).max_abs_diff(&coeffs) < 1e-12);
    }

    #[test]
    fn star_commutator_of_paulis() {
        let s = half();
        let x = s.symbol(&pauli(Axis::X)).unwrap();
        let y = s.symbol(&pauli(Axis::Y)).unwrap();
        for route in [StarRoute::Operator, StarRoute::Integral] {
            let comm = s
                .star(&x, &y, route)
                .unwrap()
                .sub(&s.star(&y, &x, route).unwrap())
                .unwrap();
            let expect =
                SphereField::from_fn(s.grid().clone(), |t, _| c(0.0, 2.0 * 3f64.sqrt() * t.cos()));
            assert!(comm.max_abs_diff(&expect) < 1e-10, "{route:?}");
        }
    }

    #[test]
    fn born_rule_and_husimi_routes() {
        let s = half();
        let psi = st(&[(1.0, 0.0), (0.0, 0.0)]);
        let phi = crate::states::css_state(Spin::HALF, 0.7, 2.1);
        let amp = s.amplitude(&psi, &phi).unwrap();
        let w = s.wigner(&psi).unwrap();
        for route in [StarRoute::Operator, StarRoute::Integral] {
            assert!(s.star(&amp, &amp.conj(), route).unwrap().max_abs_diff(&w) < 1e-10);
        }
        let h = s.husimi(&psi, &phi).unwrap();
        assert!(h.max_abs_diff(&s.husimi_sandwich(&psi, &phi).unwrap()) < 1e-12);
        assert!(h.min_real() >= 0.0);
        let total = s
            .grid()
            .integrate_fn(|t, _| c(0.25 * (1.0 + 3f64.sqrt() * t.cos()).powi(2), 0.0));
        let h0 = s.husimi(&psi, &psi).unwrap().integrate();
        assert!((h0 - total).norm() < 1e-12 && (h0.re - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn full_turn_flips_sign() {
        let s = half();
        let psi = st(&[(0.6, 0.0), (0.0, 0.8)]);
        let phi = st(&[(1.0, 0.0), (0.0, 0.0)]);
        let amp = s.amplitude(&psi, &phi).unwrap();
        let r = s
            .rotate_amplitude(&psi, &phi, &rotation_y_half(2.0 * PI), StarRoute::Operator)
            .unwrap();
        assert!(r.max_abs_diff(&amp.scale(c(-1.0, 0.0))) < 1e-12);
        let r = s
            .rotate_amplitude(&psi, &phi, &rotation_y_half(4.0 * PI), StarRoute::Operator)
            .unwrap();
        assert!(r.max_abs_diff(&amp) < 1e-12);
    }

    #[test]
    fn non_unitary_rotation_is_rejected() {
        let s = half();
        let up = st(&[(1.0, 0.0), (0.0, 0.0)]);
        let bad = pauli::<f64>(Axis::X).scale(c(2.0, 0.0));
        assert!(matches!(
            s.rotate_amplitude(&up, &up, &bad, StarRoute::Operator),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn equal_superposition_reconstructs() {
        let s = half();
        let up = st(&[(1.0, 0.0), (0.0, 0.0)]);
        let down = st(&[(0.0, 0.0), (1.0, 0.0)]);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let sup = s
            .superpose(
                &up,
                &up,
                &down,
                &up,
                c(r, 0.0),
                c(r, 0.0),
                StarRoute::Operator,
            )
            .unwrap();
        let both = st(&[(r, 0.0), (r, 0.0)]);
        assert!(sup.wigner.max_abs_diff(&s.wigner(&both).unwrap()) < 1e-10);
        assert!(sup.husimi.max_abs_diff(&s.husimi(&both, &up).unwrap()) < 1e-12);
        let err = s.superpose(
            &up,
            &up,
            &down,
            &down,
            c(r, 0.0),
            c(r, 0.0),
            StarRoute::Operator,
        );
        assert_eq!(err.unwrap_err(), Error::WindowMismatch);
    }

    #[test]
    fn expectation_values() {
        let s = half();
        let up = st(&[(1.0, 0.0), (0.0, 0.0)]);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let plus = st(&[(r, 0.0), (r, 0.0)]);
        let e = s
            .expectation(&pauli(Axis::Z), &up, &plus, StarRoute::Operator)
            .unwrap();
        assert!((e - c(1.0, 0.0)).norm() < 1e-12);
        let e = s
            .expectation(&pauli(Axis::X), &plus, &up, StarRoute::Operator)
            .unwrap();
        assert!((e - c(1.0, 0.0)).norm() < 1e-12);
        let e = s
            .expectation(
                &SpinOperator::identity(Spin::HALF),
                &plus,
                &plus,
                StarRoute::Integral,
            )
            .unwrap();
        assert!((e - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn husimi_harmonics_match_projection() {
        for tw in [1u32, 2] {
            let spin = Spin::from_twice(tw);
            let s = SpherePhaseSpace::<f64>::standard(spin);
            let psi = crate::states::css_state(spin, 0.4, 1.0);
            let phi = crate::states::css_state(spin, 2.0, 4.0);
            let gaunt = s.husimi_harmonics(&psi, &phi).unwrap();
            let direct = s.husimi(&psi, &phi).unwrap().harmonic_coefficients(2 * tw);
            for (a, b) in gaunt.iter().zip(&direct) {
                assert!((a - b).norm() < 1e-12, "{a} {b}");
            }
        }
    }

    #[test]
    fn husimi_has_quadrupole_content() {
        let s = half();
        let up = st(&[(1.0, 0.0), (0.0, 0.0)]);
        let y20 = s
            .husimi(&up, &up)
            .unwrap()
            .project(HarmonicIndex::new(2, 0).unwrap());
        assert!((y20 - c((PI / 5.0).sqrt(), 0.0)).norm() < 1e-12);
    }
}
