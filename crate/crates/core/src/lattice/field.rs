use crate::error::{Error, Result};
use crate::scalar::{Real, C};

/// Complex values on the `d × d` lattice, row-major in `(α, β)`: the order is
/// `(0,0), (0,1), …, (0,d-1), (1,0), …`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeField<T> {
    dim: usize,
    values: Vec<C<T>>,
}

impl<T: Real> LatticeField<T> {
    pub fn new(dim: usize, values: Vec<C<T>>) -> Result<Self> {
        if values.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: values.len(),
            });
        }
        Ok(Self { dim, values })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let values = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Self { dim, values }
    }

    pub fn constant(dim: usize, value: C<T>) -> Self {
        Self {
            dim,
            values: vec![value; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[C<T>] {
        &self.values
    }

    pub fn get(&self, alpha: usize, beta: usize) -> C<T> {
        self.values[alpha * self.dim + beta]
    }

    /// `((α, β), value)` in storage order.
    pub fn points(&self) -> impl Iterator<Item = ((usize, usize), C<T>)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(k, &v)| ((k / self.dim, k % self.dim), v))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            })
        }
    }

    pub fn map(&self, f: impl Fn(C<T>) -> C<T>) -> Self {
        Self {
            dim: self.dim,
            values: self.values.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(C<T>, C<T>) -> C<T>) -> Result<Self> {
        self.check(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Self {
            dim: self.dim,
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

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn modulus_squared(&self) -> Self {
        self.map(|z| C::new(z.norm_sqr(), T::zero()))
    }

    pub fn sum(&self) -> C<T> {
        self.values
            .iter()
            .fold(C::new(T::zero(), T::zero()), |a, &b| a + b)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        if self.dim != other.dim {
            return T::infinity();
        }
        self.values
            .iter()
            .zip(&other.values)
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn max_imag(&self) -> T {
        self.values.iter().fold(T::zero(), |m, z| m.max(z.im.abs()))
    }

    pub fn min_real(&self) -> T {
        self.values.iter().fold(T::infinity(), |m, z| m.min(z.re))
    }
}
