//! Spin states, window states, amplitude dyads and the standard spin operators.
//!
//! Components are always ordered `m = j, j-1, …, -j`; row `k` of every
//! matrix in the crate corresponds to `m = j - k`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{c, cis, cr, Real, C};

/// Spin quantum number `j`, stored exactly as the integer `2j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spin {
    twice: u32,
}

impl Spin {
    pub const HALF: Spin = Spin { twice: 1 };

    pub const fn from_twice(twice: u32) -> Self {
        Self { twice }
    }

    /// Parses a floating `j` such as `0.5` or `1.5`.
    pub fn from_f64(j: f64) -> Result<Self> {
        let twice = 2.0 * j;
        if !(twice.is_finite() && twice >= 0.0 && (twice - twice.round()).abs() < 1e-9) {
            return Err(Error::InvalidSpin((twice * 1e6).round() as i64));
        }
        Ok(Self {
            twice: twice.round() as u32,
        })
    }

    /// The spin whose space has dimension `dim`.
    pub fn from_dim(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSpin(-1));
        }
        Ok(Self {
            twice: (dim - 1) as u32,
        })
    }

    pub fn twice(self) -> u32 {
        self.twice
    }

    pub fn dim(self) -> usize {
        self.twice as usize + 1
    }

    pub fn value<T: Real>(self) -> T {
        T::from_count(self.twice as usize) / T::lit(2.0)
    }

    pub fn is_half_integer(self) -> bool {
        self.twice % 2 == 1
    }

    /// `2m` for row index `k`.
    pub fn twice_m(self, index: usize) -> i32 {
        self.twice as i32 - 2 * index as i32
    }

    pub fn index_of(self, twice_m: i32) -> Option<usize> {
        let k = self.twice as i32 - twice_m;
        (k >= 0 && k % 2 == 0 && k <= 2 * self.twice as i32).then_some((k / 2) as usize)
    }

    /// All `2m` values in storage order.
    pub fn twice_ms(self) -> impl Iterator<Item = i32> {
        let tw = self.twice as i32;
        (0..=self.twice as i32).map(move |k| tw - 2 * k)
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice.is_multiple_of(2) {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// A pure spin state `|ψ⟩` in the `|j, m⟩` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinState<T> {
    spin: Spin,
    components: Vec<C<T>>,
}

impl<T: Real> SpinState<T> {
    /// Validates the component count and, if requested, the unit norm
    /// (tolerance `1e-12`).
    pub fn new(spin: Spin, components: Vec<C<T>>, require_normalized: bool) -> Result<Self> {
        check_dim(spin.dim(), components.len())?;
        let state = Self { spin, components };
        if require_normalized {
            state.check_normalized()?;
        }
        Ok(state)
    }

    /// Infers `j` from the number of components; no normalization check.
    pub fn from_components(components: Vec<C<T>>) -> Result<Self> {
        let spin = Spin::from_dim(components.len())?;
        Self::new(spin, components, false)
    }

    /// Basis state `|j, m⟩` given `2m`.
    pub fn basis(spin: Spin, twice_m: i32) -> Result<Self> {
        let k = spin
            .index_of(twice_m)
            .ok_or_else(|| Error::InvalidIndex(format!("2m = {twice_m} for j = {spin}")))?;
        let mut components = vec![C::zero(); spin.dim()];
        components[k] = C::one();
        Ok(Self { spin, components })
    }

    /// `|j, j⟩`.
    pub fn up(spin: Spin) -> Self {
        Self::basis(spin, spin.twice() as i32).expect("m = j is valid")
    }

    /// `|j, -j⟩`.
    pub fn down(spin: Spin) -> Self {
        Self::basis(spin, -(spin.twice() as i32)).expect("m = -j is valid")
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[C<T>] {
        &self.components
    }

    /// Component `ψ_m` given `2m`.
    pub fn component(&self, twice_m: i32) -> Option<C<T>> {
        self.spin.index_of(twice_m).map(|k| self.components[k])
    }

    pub fn norm_sqr(&self) -> T {
        self.components.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn check_normalized(&self) -> Result<()> {
        let deviation = (self.norm() - T::one()).abs();
        if deviation > T::tol(1e-12) {
            Err(Error::NotNormalized {
                deviation: deviation.to_f64().unwrap_or(f64::NAN),
            })
        } else {
            Ok(())
        }
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self {
            spin: self.spin,
            components: self.components.iter().map(|z| z / n).collect(),
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<C<T>> {
        check_dim(self.dim(), other.dim())?;
        Ok(self
            .components
            .iter()
            .zip(&other.components)
            .fold(C::zero(), |acc, (a, b)| acc + a.conj() * b))
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: C<T>, other: &Self, b: C<T>) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self {
            spin: self.spin,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        })
    }

    /// `X|ψ⟩`.
    pub fn transformed(&self, op: &SpinOperator<T>) -> Result<Self> {
        check_dim(self.dim(), op.dim())?;
        Ok(Self {
            spin: self.spin,
            components: op.matrix().apply(&self.components),
        })
    }

    /// Largest componentwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        if self.dim() != other.dim() {
            return T::infinity();
        }
        self.components
            .iter()
            .zip(&other.components)
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm()))
    }
}

/// Coherent spin state pointing along `(θ, φ)`:
/// `ψ_m = √((2j)!/((j+m)!(j-m)!)) cos^{j+m}(θ/2) sin^{j-m}(θ/2) e^{-imφ}`.
pub fn css_state<T: Real>(spin: Spin, theta: T, phi: T) -> SpinState<T> {
    let (theta, phi) = reduce_angles(theta, phi);
    let (s, co) = (theta / T::lit(2.0)).sin_cos();
    let tw = spin.twice();
    let components = spin
        .twice_ms()
        .map(|twice_m| {
            let up = ((tw as i32 + twice_m) / 2) as u32; // j + m
            let down = tw - up; // j - m
            let amp = binomial_sqrt::<T>(tw, up) * co.powi(up as i32) * s.powi(down as i32);
            let m = T::from_i32(twice_m).unwrap() / T::lit(2.0);
            cis(-m * phi) * amp
        })
        .collect();
    SpinState { spin, components }
}

/// Maps `(θ, φ)` to `0 ≤ θ ≤ π`, `0 ≤ φ < 2π`, preserving the point on the sphere.
pub fn reduce_angles<T: Real>(theta: T, phi: T) -> (T, T) {
    let two_pi = T::TAU();
    let mut theta = theta % two_pi;
    let mut phi = phi;
    if theta < T::zero() {
        theta = theta + two_pi;
    }
    if theta > T::PI() {
        theta = two_pi - theta;
        phi = phi + T::PI();
    }
    phi = phi % two_pi;
    if phi < T::zero() {
        phi = phi + two_pi;
    }
    (theta, phi)
}

fn binomial_sqrt<T: Real>(n: u32, k: u32) -> T {
    let k = k.min(n - k);
    let mut b = 1.0f64;
    for i in 0..k {
        b = b * f64::from(n - i) / f64::from(i + 1);
    }
    T::lit(b.sqrt())
}

/// The dyad `Ψ̂ = |ψ⟩⟨φ|`; entry `(m, m')` is `ψ_m conj(φ_{m'})`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeOperator<T> {
    spin: Spin,
    matrix: CMatrix<T>,
}

impl<T: Real> AmplitudeOperator<T> {
    pub fn new(psi: &SpinState<T>, window: &SpinState<T>) -> Result<Self> {
        check_dim(psi.dim(), window.dim())?;
        Ok(Self {
            spin: psi.spin(),
            matrix: CMatrix::outer(psi.components(), window.components()),
        })
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn to_operator(&self) -> SpinOperator<T> {
        SpinOperator {
            spin: self.spin,
            matrix: self.matrix.clone(),
        }
    }
}

pub fn amplitude_operator<T: Real>(
    psi: &SpinState<T>,
    window: &SpinState<T>,
) -> Result<AmplitudeOperator<T>> {
    AmplitudeOperator::new(psi, window)
}

/// A linear operator on the spin-`j` space.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinOperator<T> {
    spin: Spin,
    matrix: CMatrix<T>,
}

impl<T: Real> SpinOperator<T> {
    pub fn new(spin: Spin, matrix: CMatrix<T>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        check_dim(spin.dim(), matrix.rows())?;
        Ok(Self { spin, matrix })
    }

    pub fn from_matrix(matrix: CMatrix<T>) -> Result<Self> {
        let spin = Spin::from_dim(matrix.rows())?;
        Self::new(spin, matrix)
    }

    pub fn identity(spin: Spin) -> Self {
        Self {
            spin,
            matrix: CMatrix::identity(spin.dim()),
        }
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn dim(&self) -> usize {
        self.spin.dim()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self {
            spin: self.spin,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.dim(), rhs.dim())?;
        Ok(Self {
            spin: self.spin,
            matrix: &self.matrix * &rhs.matrix,
        })
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self {
            spin: self.spin,
            matrix: self.matrix.scale(s),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.dim(), rhs.dim())?;
        Ok(Self {
            spin: self.spin,
            matrix: &self.matrix + &rhs.matrix,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.dim(), rhs.dim())?;
        Ok(Self {
            spin: self.spin,
            matrix: &self.matrix - &rhs.matrix,
        })
    }

    /// `⟨ψ|X|ψ⟩`.
    pub fn expectation(&self, psi: &SpinState<T>) -> Result<C<T>> {
        psi.inner(&psi.transformed(self)?)
    }

    pub fn check_unitary(&self) -> Result<()> {
        let deviation = self.matrix.unitarity_error();
        if deviation > T::tol(1e-10) {
            Err(Error::NotUnitary {
                deviation: deviation.to_f64().unwrap_or(f64::NAN),
            })
        } else {
            Ok(())
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.matrix.max_abs_diff(&other.matrix)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Pauli matrix `σ_axis`.
pub fn pauli<T: Real>(axis: Axis) -> SpinOperator<T> {
    let (o, z) = (C::<T>::one(), C::<T>::zero());
    let i = C::<T>::i();
    let m = match axis {
        Axis::X => CMatrix::from_rows(&[&[z, o], &[o, z]]),
        Axis::Y => CMatrix::from_rows(&[&[z, -i], &[i, z]]),
        Axis::Z => CMatrix::from_rows(&[&[o, z], &[z, -o]]),
    };
    SpinOperator {
        spin: Spin::HALF,
        matrix: m,
    }
}

/// `(Ĵ_3, Ĵ²)`: `Ĵ_3` diagonal with entries `j … -j`, `Ĵ² = j(j+1)·I`.
pub fn angular_momentum<T: Real>(spin: Spin) -> (SpinOperator<T>, SpinOperator<T>) {
    let j: T = spin.value();
    let jz = spin_component(spin, Axis::Z);
    let j2 = CMatrix::identity(spin.dim()).scale_real(j * (j + T::one()));
    (jz, SpinOperator { spin, matrix: j2 })
}

/// Spin component `Ĵ_axis` in the standard (Condon–Shortley) representation.
/// For `j = 1/2` this is `σ_axis / 2`.
pub fn spin_component<T: Real>(spin: Spin, axis: Axis) -> SpinOperator<T> {
    let n = spin.dim();
    let half = T::lit(0.5);
    let m_of = |k: usize| T::from_i32(spin.twice_m(k)).unwrap() * half;
    let j: T = spin.value();
    // ⟨m+1|Ĵ_+|m⟩ = √(j(j+1) − m(m+1)); row k-1 holds m+1 when column k holds m
    let raise = CMatrix::from_fn(n, n, |r, col| {
        if col == r + 1 {
            let m = m_of(col);
            cr((j * (j + T::one()) - m * (m + T::one())).sqrt())
        } else {
            C::zero()
        }
    });
    let lower = raise.adjoint();
    let matrix = match axis {
        Axis::X => (&raise + &lower).scale_real(half),
        Axis::Y => (&raise - &lower).scale(c(T::zero(), -half)),
        Axis::Z => CMatrix::from_fn(
            n,
            n,
            |r, col| if r == col { cr(m_of(r)) } else { C::zero() },
        ),
    };
    SpinOperator { spin, matrix }
}

/// `exp(-i·angle·Ĵ_axis)`, built by exponentiating the generator.
pub fn rotation<T: Real>(spin: Spin, axis: Axis, angle: T) -> SpinOperator<T> {
    let gen = spin_component::<T>(spin, axis)
        .matrix
        .scale(c(T::zero(), -angle));
    SpinOperator {
        spin,
        matrix: gen.expm(),
    }
}

/// Euler rotation `R(γ, α, β) = e^{-iγĴ_z} e^{-iαĴ_y} e^{-iβĴ_z}`.
pub fn euler_rotation<T: Real>(spin: Spin, gamma: T, alpha: T, beta: T) -> SpinOperator<T> {
    let a = rotation(spin, Axis::Z, gamma);
    let b = rotation(spin, Axis::Y, alpha);
    let g = rotation(spin, Axis::Z, beta);
    a.compose(&b)
        .and_then(|ab| ab.compose(&g))
        .expect("same spin")
}

/// Spin-½ rotation about `y`: `cos(α/2) I − i sin(α/2) σ_y`.
pub fn rotation_y_half<T: Real>(alpha: T) -> SpinOperator<T> {
    let (s, co) = (alpha / T::lit(2.0)).sin_cos();
    let m = CMatrix::from_rows(&[&[cr(co), cr(-s)], &[cr(s), cr(co)]]);
    SpinOperator {
        spin: Spin::HALF,
        matrix: m,
    }
}
