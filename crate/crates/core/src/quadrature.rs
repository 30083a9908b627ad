//! Product quadrature on the unit sphere.
//!
//! Gauss–Legendre in `cos θ` times a uniform trapezoid in `φ`. A grid of band
//! limit `L` has `L + 1` polar and `2L + 2` azimuthal nodes and integrates any
//! product `Y_{l,m} conj(Y_{l',m'})` with `l, l' ≤ L` exactly.

use crate::error::{Error, Result};
use crate::scalar::{Real, C};

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n > 0, "at least one node");
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf = T::from_count(n);
    let two = T::lit(2.0);
    let tol = T::epsilon() * T::lit(4.0);
    for i in 0..n.div_ceil(2) {
        // Chebyshev-like initial guess for the i-th largest root
        let mut x = (T::PI() * (T::from_count(i) + T::lit(0.75)) / (nf + T::lit(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x = x - dx;
            if dx.abs() <= tol {
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
                break;
            }
        }
        let w = two / ((T::one() - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = T::zero();
    }
    (nodes, weights)
}

/// `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    if n == 0 {
        return (p0, T::zero());
    }
    for k in 2..=n {
        let kf = T::from_count(k);
        let p2 = ((T::lit(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = T::from_count(n);
    let d = nf * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SphereGrid<T> {
    band_limit: usize,
    thetas: Vec<T>,
    phis: Vec<T>,
    polar_weights: Vec<T>,
}

impl<T: Real> SphereGrid<T> {
    /// Grid exact for products of harmonics up to total degree `2L + 1`.
    pub fn new(band_limit: usize) -> Self {
        let n_theta = band_limit + 1;
        let n_phi = 2 * band_limit + 2;
        let (xs, ws) = gauss_legendre::<T>(n_theta);
        // θ ascending means cos θ descending
        let thetas = xs.iter().rev().map(|&x| x.acos()).collect();
        let polar_weights = ws.into_iter().rev().collect();
        let step = T::TAU() / T::from_count(n_phi);
        let phis = (0..n_phi).map(|k| step * T::from_count(k)).collect();
        Self {
            band_limit,
            thetas,
            phis,
            polar_weights,
        }
    }

    pub fn band_limit(&self) -> usize {
        self.band_limit
    }

    pub fn thetas(&self) -> &[T] {
        &self.thetas
    }

    pub fn phis(&self) -> &[T] {
        &self.phis
    }

    pub fn len(&self) -> usize {
        self.thetas.len() * self.phis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(θ, φ)` of node `k`; polar index outer, azimuthal inner.
    pub fn node(&self, k: usize) -> (T, T) {
        let np = self.phis.len();
        (self.thetas[k / np], self.phis[k % np])
    }

    pub fn nodes(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.thetas
            .iter()
            .flat_map(move |&t| self.phis.iter().map(move |&p| (t, p)))
    }

    pub fn weight(&self, k: usize) -> T {
        let np = self.phis.len();
        self.polar_weights[k / np] * T::TAU() / T::from_count(np)
    }

    pub fn weights(&self) -> Vec<T> {
        (0..self.len()).map(|k| self.weight(k)).collect()
    }

    /// `Σ_k w_k F_k` in fixed node order.
    pub fn integrate_samples(&self, samples: &[C<T>]) -> Result<C<T>> {
        if samples.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: samples.len(),
            });
        }
        let mut acc = C::new(T::zero(), T::zero());
        for (k, &s) in samples.iter().enumerate() {
            acc = acc + s * self.weight(k);
        }
        Ok(acc)
    }

    /// Integrates a closure evaluated at every node.
    pub fn integrate_fn(&self, f: impl Fn(T, T) -> C<T>) -> C<T> {
        let mut acc = C::new(T::zero(), T::zero());
        for (k, (t, p)) in self.nodes().enumerate() {
            acc = acc + f(t, p) * self.weight(k);
        }
        acc
    }
}

/// Same as [`SphereGrid::new`].
pub fn build_grid<T: Real>(band_limit: usize) -> SphereGrid<T> {
    SphereGrid::new(band_limit)
}
