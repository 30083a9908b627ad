use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{c, cis, cr, Real, C};
use crate::states::{check_dim, Spin, SpinOperator, SpinState};

use super::field::LatticeField;

/// Largest deviation from each of the four kernel axioms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxiomReport<T> {
    /// `max |Δ − Δ†|`
    pub hermiticity: T,
    /// `max |Tr Δ − 1|`
    pub trace: T,
    /// `max |Tr(Δ(p) Δ(q)) − d δ_pq|`
    pub orthogonality: T,
    /// `max |Σ Δ − d I|`
    pub completeness: T,
}

impl<T: Real> AxiomReport<T> {
    pub fn max(&self) -> T {
        self.hermiticity
            .max(self.trace)
            .max(self.orthogonality)
            .max(self.completeness)
    }
}

/// Discrete Wigner kernel: `d²` matrices `Δ(α, β)` on the `d × d` lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeKernel<T> {
    dim: usize,
    matrices: Vec<CMatrix<T>>,
}

impl<T: Real> LatticeKernel<T> {
    /// The four `2 × 2` matrices for spin ½, entered verbatim.
    pub fn half() -> Self {
        let (o, z) = (cr(T::one()), cr(T::zero()));
        let h = T::lit(0.5);
        let a = c(h, -h); // (1 − i)/2
        let b = c(h, h); // (1 + i)/2
        let d00 = CMatrix::from_rows(&[&[o, a], &[b, z]]);
        let d10 = CMatrix::from_rows(&[&[o, -a], &[-b, z]]);
        let d01 = CMatrix::from_rows(&[&[z, b], &[a, o]]);
        let d11 = CMatrix::from_rows(&[&[z, -b], &[-a, o]]);
        Self::from_matrices(2, vec![d00, d01, d10, d11])
            .expect("spin-½ kernel satisfies the axioms")
    }

    /// Kernel for odd `d ≥ 3`:
    /// `⟨β'|Δ(α,β)|β''⟩ = (1/d) ω^{α(β''−β')} Σ_{α'=-j..j} ω^{−α'[β + (β'+β'')/2]}`
    /// with `ω = e^{2πi/d}` and the half taken as the inverse of 2 mod `d`.
    pub fn odd(dim: usize) -> Result<Self> {
        if dim.is_multiple_of(2) || dim < 3 {
            return Err(Error::EvenDimension(dim));
        }
        let inv2 = dim.div_ceil(2); // 2·(d+1)/2 ≡ 1 mod d
        let j = (dim as i64 - 1) / 2;
        let omega = |k: i64| {
            cis(T::TAU() * T::from_i64(k.rem_euclid(dim as i64)).unwrap() / T::from_count(dim))
        };
        let inv_d = T::one() / T::from_count(dim);
        let mut matrices = Vec::with_capacity(dim * dim);
        for alpha in 0..dim as i64 {
            for beta in 0..dim as i64 {
                let m = CMatrix::from_fn(dim, dim, |r, col| {
                    let (b1, b2) = (r as i64, col as i64);
                    let shift = (beta + (b1 + b2) * inv2 as i64).rem_euclid(dim as i64);
                    let sum = (-j..=j).fold(C::new(T::zero(), T::zero()), |acc, a1| {
                        acc + omega(-a1 * shift)
                    });
                    omega(alpha * (b2 - b1)) * sum * inv_d
                });
                matrices.push(m);
            }
        }
        Self::from_matrices(dim, matrices)
    }

    /// [`LatticeKernel::half`] for `d = 2`, [`LatticeKernel::odd`] otherwise.
    pub fn for_dim(dim: usize) -> Result<Self> {
        if dim == 2 {
            Ok(Self::half())
        } else {
            Self::odd(dim)
        }
    }

    /// Matrices in `(α, β)` row-major order; rejected unless all four axioms
    /// hold to `1e-12`.
    pub fn from_matrices(dim: usize, matrices: Vec<CMatrix<T>>) -> Result<Self> {
        let k = Self::from_matrices_unchecked(dim, matrices)?;
        let report = k.axiom_report();
        if report.max() > T::tol(1e-12) {
            return Err(Error::KernelAxiom(format!("{report:?}")));
        }
        Ok(k)
    }

    /// Shape checks only; use [`LatticeKernel::axiom_report`] to inspect.
    pub fn from_matrices_unchecked(dim: usize, matrices: Vec<CMatrix<T>>) -> Result<Self> {
        check_dim(dim * dim, matrices.len())?;
        for m in &matrices {
            check_dim(dim, m.rows())?;
            check_dim(dim, m.cols())?;
        }
        Ok(Self { dim, matrices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spin(&self) -> Spin {
        Spin::from_dim(self.dim).expect("positive dimension")
    }

    pub fn matrix(&self, alpha: usize, beta: usize) -> &CMatrix<T> {
        &self.matrices[alpha * self.dim + beta]
    }

    pub fn matrices(&self) -> &[CMatrix<T>] {
        &self.matrices
    }

    pub fn axiom_report(&self) -> AxiomReport<T> {
        let d = self.dim;
        let df = T::from_count(d);
        let one = cr(T::one());
        let mut rep = AxiomReport {
            hermiticity: T::zero(),
            trace: T::zero(),
            orthogonality: T::zero(),
            completeness: T::zero(),
        };
        let mut total = CMatrix::zeros(d, d);
        for (p, m) in self.matrices.iter().enumerate() {
            rep.hermiticity = rep.hermiticity.max(m.hermiticity_error());
            rep.trace = rep.trace.max((m.trace() - one).norm());
            for (q, n) in self.matrices.iter().enumerate() {
                let expect = if p == q { df } else { T::zero() };
                rep.orthogonality = rep
                    .orthogonality
                    .max((m.trace_product(n) - cr(expect)).norm());
            }
            total = &total + m;
        }
        rep.completeness = total.max_abs_diff(&CMatrix::identity(d).scale_real(df));
        rep
    }

    fn field(&self, values: Vec<C<T>>) -> LatticeField<T> {
        LatticeField::new(self.dim, values).expect("d² values")
    }

    fn symbol_of_matrix(&self, x: &CMatrix<T>) -> LatticeField<T> {
        self.field(self.matrices.iter().map(|d| x.trace_product(d)).collect())
    }

    /// `X(α,β) = Tr(X Δ(α,β))`.
    pub fn symbol(&self, op: &SpinOperator<T>) -> Result<LatticeField<T>> {
        check_dim(self.dim, op.dim())?;
        Ok(self.symbol_of_matrix(op.matrix()))
    }

    /// `X = (1/d) Σ X(α,β) Δ(α,β)`.
    pub fn operator(&self, f: &LatticeField<T>) -> Result<SpinOperator<T>> {
        check_dim(self.dim, f.dim())?;
        let mut acc = CMatrix::zeros(self.dim, self.dim);
        for (m, &v) in self.matrices.iter().zip(f.values()) {
            acc = &acc + &m.scale(v);
        }
        SpinOperator::new(
            self.spin(),
            acc.scale_real(T::one() / T::from_count(self.dim)),
        )
    }

    /// `(F ⋆ G)(p) = (1/d²) Σ_{q,r} F(q) G(r) Tr(Δ(p) Δ(q) Δ(r))`.
    pub fn star(&self, f: &LatticeField<T>, g: &LatticeField<T>) -> Result<LatticeField<T>> {
        check_dim(self.dim, f.dim())?;
        check_dim(self.dim, g.dim())?;
        let inv = T::one() / T::from_count(self.dim * self.dim);
        let values = self
            .matrices
            .iter()
            .map(|dp| {
                let mut acc = C::new(T::zero(), T::zero());
                for (dq, &fq) in self.matrices.iter().zip(f.values()) {
                    let m = dp * dq;
                    for (dr, &gr) in self.matrices.iter().zip(g.values()) {
                        acc = acc + fq * gr * m.trace_product(dr);
                    }
                }
                acc * inv
            })
            .collect();
        Ok(self.field(values))
    }

    /// `symbol(operator(F) · operator(G))`.
    pub fn star_via_operators(
        &self,
        f: &LatticeField<T>,
        g: &LatticeField<T>,
    ) -> Result<LatticeField<T>> {
        let a = self.operator(f)?;
        let b = self.operator(g)?;
        Ok(self.symbol_of_matrix(&(a.matrix() * b.matrix())))
    }

    /// `Ψ(α,β) = Tr(|ψ⟩⟨φ| Δ(α,β))`; the window must be normalized.
    pub fn amplitude(&self, psi: &SpinState<T>, window: &SpinState<T>) -> Result<LatticeField<T>> {
        window.check_normalized()?;
        check_dim(self.dim, psi.dim())?;
        check_dim(self.dim, window.dim())?;
        Ok(self.symbol_of_matrix(&CMatrix::outer(psi.components(), window.components())))
    }

    /// `W(α,β) = Tr(|ψ⟩⟨ψ| Δ(α,β)) / d` for a normalized state.
    pub fn wigner(&self, psi: &SpinState<T>) -> Result<LatticeField<T>> {
        psi.check_normalized()?;
        self.wigner_unchecked(psi)
    }

    /// As [`LatticeKernel::wigner`] without the normalization check.
    pub fn wigner_unchecked(&self, psi: &SpinState<T>) -> Result<LatticeField<T>> {
        check_dim(self.dim, psi.dim())?;
        let inv = T::one() / T::from_count(self.dim);
        Ok(self
            .symbol_of_matrix(&CMatrix::outer(psi.components(), psi.components()))
            .map(|z| z * inv))
    }

    /// `H(α,β) = |Ψ(α,β)|²`.
    pub fn husimi(&self, psi: &SpinState<T>, window: &SpinState<T>) -> Result<LatticeField<T>> {
        psi.check_normalized()?;
        Ok(self.amplitude(psi, window)?.modulus_squared())
    }

    /// `(1/d) Σ conj(F) G`.
    pub fn overlap(&self, f: &LatticeField<T>, g: &LatticeField<T>) -> Result<C<T>> {
        Ok(f.conj().mul(g)?.sum() * (T::one() / T::from_count(self.dim)))
    }

    /// Displacement operators `D(α,β) = (1/d) Σ ω^{αβ' − α'β} Δ(α',β')`, in
    /// `(α, β)` row-major order.
    pub fn symplectic_fourier(&self) -> Vec<SpinOperator<T>> {
        let d = self.dim;
        let spin = self.spin();
        let mut out = Vec::with_capacity(d * d);
        for alpha in 0..d {
            for beta in 0..d {
                let m = if d == 2 {
                    let s = |k: usize| {
                        if k.is_multiple_of(2) {
                            T::one()
                        } else {
                            -T::one()
                        }
                    };
                    let parts = [
                        self.matrix(0, 0).clone(),
                        self.matrix(0, 1).scale_real(s(alpha)),
                        self.matrix(1, 0).scale_real(s(beta)),
                        self.matrix(1, 1).scale_real(s(alpha + beta)),
                    ];
                    let sum = parts
                        .iter()
                        .skip(1)
                        .fold(parts[0].clone(), |acc, p| &acc + p);
                    sum.scale_real(T::lit(0.5))
                } else {
                    let mut acc = CMatrix::zeros(d, d);
                    for a1 in 0..d {
                        for b1 in 0..d {
                            let k = (alpha * b1 + d * d - a1 * beta) % d;
                            let ph = cis(T::TAU() * T::from_count(k) / T::from_count(d));
                            acc = &acc + &self.matrix(a1, b1).scale(ph);
                        }
                    }
                    acc.scale_real(T::one() / T::from_count(d))
                };
                out.push(SpinOperator::new(spin, m).expect("d × d"));
            }
        }
        out
    }

    /// Symbol of the spin-½ rotation about `y`: `R(0,0) = R(1,1) = e^{-iα/2}`,
    /// `R(0,1) = R(1,0) = e^{iα/2}`.
    pub fn rotation_symbol(&self, angle: T) -> Result<LatticeField<T>> {
        check_dim(2, self.dim)?;
        let h = angle / T::lit(2.0);
        Ok(LatticeField::from_fn(2, |a, b| {
            if a == b {
                cis(-h)
            } else {
                cis(h)
            }
        }))
    }

    /// `Ψ_R = R ⋆ Ψ` for a rotation by `angle` about `y` (spin ½ only).
    pub fn rotate(
        &self,
        psi: &SpinState<T>,
        window: &SpinState<T>,
        angle: T,
    ) -> Result<LatticeField<T>> {
        let r = self.rotation_symbol(angle)?;
        let amp = self.amplitude(psi, window)?;
        self.star(&r, &amp)
    }
}
