use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::SphereGrid;
use crate::scalar::{Real, C};
use crate::special::{spherical_harmonics_table, HarmonicIndex};

/// Complex function sampled at the nodes of a [`SphereGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SphereField<T> {
    grid: Arc<SphereGrid<T>>,
    values: Vec<C<T>>,
}

impl<T: Real> SphereField<T> {
    pub fn new(grid: Arc<SphereGrid<T>>, values: Vec<C<T>>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Arc<SphereGrid<T>>, f: impl Fn(T, T) -> C<T>) -> Self {
        let values = grid.nodes().map(|(t, p)| f(t, p)).collect();
        Self { grid, values }
    }

    /// Field `Σ a_lm Y_lm` from a coefficient table in [`HarmonicIndex::flat`] order.
    pub fn from_harmonics(grid: Arc<SphereGrid<T>>, coeffs: &[C<T>]) -> Self {
        let l_max = table_degree(coeffs.len());
        Self::from_fn(grid, |t, p| {
            let ys = spherical_harmonics_table(l_max, t, p);
            coeffs
                .iter()
                .zip(&ys)
                .fold(C::new(T::zero(), T::zero()), |acc, (a, y)| acc + a * y)
        })
    }

    pub fn constant(grid: Arc<SphereGrid<T>>, value: C<T>) -> Self {
        let values = vec![value; grid.len()];
        Self { grid, values }
    }

    pub fn grid(&self) -> &Arc<SphereGrid<T>> {
        &self.grid
    }

    pub fn values(&self) -> &[C<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn ensure_same_grid(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.grid, &other.grid) || self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch {
                left: self.grid.band_limit(),
                right: other.grid.band_limit(),
            })
        }
    }

    pub fn map(&self, f: impl Fn(C<T>) -> C<T>) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(C<T>, C<T>) -> C<T>) -> Result<Self> {
        self.ensure_same_grid(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self {
            grid: self.grid.clone(),
            values,
        })
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn scale(&self, s: C<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    /// `|F|²` pointwise.
    pub fn modulus_squared(&self) -> Self {
        self.map(|z| C::new(z.norm_sqr(), T::zero()))
    }

    pub fn integrate(&self) -> C<T> {
        self.grid
            .integrate_samples(&self.values)
            .expect("field matches its own grid")
    }

    /// `((2j+1)/4π) ∫ F dΩ` for a spin space of dimension `dim`.
    pub fn normalized_integral(&self, dim: usize) -> C<T> {
        self.integrate() * (T::from_count(dim) / (T::lit(4.0) * T::PI()))
    }

    /// `a_lm = ∫ F conj(Y_lm) dΩ` for all `l ≤ l_max`, exact when `F` is band
    /// limited and `deg F + l_max ≤ 2L + 1`.
    pub fn harmonic_coefficients(&self, l_max: u32) -> Vec<C<T>> {
        let n = (l_max as usize + 1).pow(2);
        let mut acc = vec![C::new(T::zero(), T::zero()); n];
        for (k, (t, p)) in self.grid.nodes().enumerate() {
            let ys = spherical_harmonics_table(l_max, t, p);
            let wf = self.values[k] * self.grid.weight(k);
            for (a, y) in acc.iter_mut().zip(&ys) {
                *a = *a + wf * y.conj();
            }
        }
        acc
    }

    /// Single projection `∫ F conj(Y_lm) dΩ`.
    pub fn project(&self, idx: HarmonicIndex) -> C<T> {
        self.harmonic_coefficients(idx.l())[idx.flat()]
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        if self.values.len() != other.values.len() {
            return T::infinity();
        }
        self.values
            .iter()
            .zip(&other.values)
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn max_imag(&self) -> T {
        self.values.iter().fold(T::zero(), |m, z| m.max(z.im.abs()))
    }

    pub fn min_real(&self) -> T {
        self.values.iter().fold(T::infinity(), |m, z| m.min(z.re))
    }
}

/// `l_max` of a table of `(l_max + 1)²` coefficients.
pub(crate) fn table_degree(len: usize) -> u32 {
    let l = (len as f64).sqrt().round() as usize;
    assert_eq!(
        l * l,
        len,
        "coefficient table length must be a perfect square"
    );
    l.saturating_sub(1) as u32
}
