//! Numerical self-checks of the phase-space invariants, grouped for reporting.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::lattice::LatticeKernel;
use crate::matrix::CMatrix;
use crate::nmr::{evolve_sphere, propagator, NmrParams};
use crate::scalar::C;
use crate::sphere::{SpherePhaseSpace, StarRoute, SwKernel};
use crate::states::{pauli, rotation_y_half, Axis, Spin, SpinOperator, SpinState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Level {
    /// Kernel axioms on both phase spaces, Born rule, sign flip.
    #[default]
    Fast,
    /// Adds the integral star route at `L = 8`, odd lattices and NMR routes.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyOptions {
    pub level: Level,
    /// Perturbs the kernels before checking; every affected group must fail.
    pub corrupt_kernel: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.max_error.is_finite() && self.max_error <= self.tolerance
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{tag} {:<44} max_err={:.3e} tol={:.1e}",
            self.name, self.max_error, self.tolerance
        )
    }
}

/// Uniformly random unit vector in `C^d` (normalized complex Gaussian).
pub fn random_state<R: Rng>(spin: Spin, rng: &mut R) -> SpinState<f64> {
    loop {
        let v: Vec<C<f64>> = (0..spin.dim())
            .map(|_| C::new(gauss(rng), gauss(rng)))
            .collect();
        let s = SpinState::new(spin, v, false).expect("right length");
        if s.norm() > 1e-3 {
            return s.normalized();
        }
    }
}

/// Matrix with independent complex Gaussian entries.
pub fn random_operator<R: Rng>(spin: Spin, rng: &mut R) -> SpinOperator<f64> {
    let d = spin.dim();
    let m = CMatrix::from_fn(d, d, |_, _| C::new(gauss(rng), gauss(rng)));
    SpinOperator::new(spin, m).expect("square")
}

fn gauss<R: Rng>(rng: &mut R) -> f64 {
    // Box–Muller
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (2.0 * PI * v).cos()
}

struct Suite {
    results: Vec<CheckResult>,
}

impl Suite {
    fn push(&mut self, name: impl Into<String>, max_error: f64, tolerance: f64) {
        self.results.push(CheckResult {
            name: name.into(),
            max_error,
            tolerance,
        });
    }
}

fn spins() -> [Spin; 3] {
    [Spin::HALF, Spin::from_twice(2), Spin::from_twice(3)]
}

fn sphere_space(spin: Spin, band_limit: usize, corrupt: bool) -> SpherePhaseSpace<f64> {
    let s = SpherePhaseSpace::new(SwKernel::standard(spin), band_limit);
    if corrupt {
        s.map_cache(|m| m.scale_real(1.001))
    } else {
        s
    }
}

fn lattice_kernel(dim: usize, corrupt: bool) -> Result<LatticeKernel<f64>> {
    let k = LatticeKernel::for_dim(dim)?;
    if !corrupt {
        return Ok(k);
    }
    let mut m = k.matrices().to_vec();
    let last = m.len() - 1;
    m[last] = m[last].scale_real(1.001);
    LatticeKernel::from_matrices_unchecked(dim, m)
}

/// Runs every group for the chosen level and returns one result per group.
pub fn run(opts: VerifyOptions) -> Result<Vec<CheckResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut suite = Suite {
        results: Vec::new(),
    };
    let full = opts.level == Level::Full;
    let bad = opts.corrupt_kernel;

    for spin in spins() {
        let space = sphere_space(spin, 2 * spin.twice() as usize + 2, bad);
        let n = space.grid().len();
        let (mut herm, mut tr) = (0f64, 0f64);
        for k in 0..n {
            let d = space.kernel_at(k);
            herm = herm.max(d.hermiticity_error());
            tr = tr.max((d.trace() - C::new(1.0, 0.0)).norm());
        }
        suite.push(
            format!("sphere kernel hermitian, unit trace (j={spin})"),
            herm.max(tr),
            1e-12,
        );

        let mut sum = CMatrix::zeros(spin.dim(), spin.dim());
        for k in 0..n {
            sum = &sum + &space.kernel_at(k).scale_real(space.grid().weight(k));
        }
        let err = sum
            .scale_real(space.measure())
            .max_abs_diff(&CMatrix::identity(spin.dim()));
        suite.push(
            format!("sphere kernel resolves identity (j={spin})"),
            err,
            1e-10,
        );

        let mut err = 0f64;
        for _ in 0..if full { 20 } else { 5 } {
            let x = space.symbol(&random_operator(spin, &mut rng))?;
            for k in 0..n {
                let mut acc = C::new(0.0, 0.0);
                for q in 0..n {
                    let w = space.grid().weight(q) * space.measure();
                    acc += x.values()[q] * space.kernel_at(k).trace_product(space.kernel_at(q)) * w;
                }
                err = err.max((acc - x.values()[k]).norm());
            }
        }
        suite.push(
            format!("sphere kernel reproducing property (j={spin})"),
            err,
            1e-9,
        );
    }

    let dims: &[usize] = if full { &[2, 3, 5, 7] } else { &[2] };
    for &d in dims {
        let k = lattice_kernel(d, bad)?;
        suite.push(
            format!("lattice kernel axioms (d={d})"),
            k.axiom_report().max(),
            1e-12,
        );
    }
    let lk = lattice_kernel(2, bad)?;
    let paulis = [
        SpinOperator::identity(Spin::HALF),
        pauli(Axis::X),
        pauli(Axis::Z),
        pauli(Axis::Y),
    ];
    let err = lk
        .symplectic_fourier()
        .iter()
        .zip(&paulis)
        .map(|(a, b)| a.max_abs_diff(b))
        .fold(0.0, f64::max);
    suite.push("lattice symplectic transform gives Paulis", err, 1e-15);

    let half = sphere_space(Spin::HALF, 3, bad);
    let (mut sphere_err, mut lattice_err, mut window_err) = (0f64, 0f64, 0f64);
    for _ in 0..20 {
        let psi = random_state(Spin::HALF, &mut rng);
        let phi = random_state(Spin::HALF, &mut rng);
        let phi2 = random_state(Spin::HALF, &mut rng);
        let w = half.wigner(&psi)?;
        let a = half.amplitude(&psi, &phi)?;
        let born = half.star(&a, &a.conj(), StarRoute::Operator)?;
        sphere_err = sphere_err.max(born.max_abs_diff(&w));
        let a2 = half.amplitude(&psi, &phi2)?;
        window_err = window_err.max(
            half.star(&a2, &a2.conj(), StarRoute::Operator)?
                .max_abs_diff(&born),
        );
        let la = lk.amplitude(&psi, &phi)?;
        let lw = lk.wigner(&psi)?;
        let lborn = lk.star(&la, &la.conj())?.scale(C::new(0.5, 0.0));
        lattice_err = lattice_err.max(lborn.max_abs_diff(&lw));
    }
    suite.push("Born rule on the sphere (operator route)", sphere_err, 1e-9);
    suite.push("Wigner window independence (sphere)", window_err, 1e-10);
    suite.push("Born rule on the lattice", lattice_err, 1e-12);

    let (mut s_err, mut l_err) = (0f64, 0f64);
    for _ in 0..5 {
        let psi = random_state(Spin::HALF, &mut rng);
        let phi = random_state(Spin::HALF, &mut rng);
        let a = half.amplitude(&psi, &phi)?;
        let l = lk.amplitude(&psi, &phi)?;
        for (turns, sign) in [(1.0, -1.0), (2.0, 1.0)] {
            let angle = 2.0 * PI * turns;
            let r =
                half.rotate_amplitude(&psi, &phi, &rotation_y_half(angle), StarRoute::Operator)?;
            s_err = s_err.max(r.max_abs_diff(&a.scale(C::new(sign, 0.0))));
            let r = lk.rotate(&psi, &phi, angle)?;
            l_err = l_err.max(r.max_abs_diff(&l.scale(C::new(sign, 0.0))));
        }
    }
    suite.push("spinor sign flip (sphere)", s_err, 1e-12);
    suite.push("spinor sign flip (lattice)", l_err, 1e-12);

    if full {
        let space = sphere_space(Spin::HALF, 8, bad);
        let mut err = 0f64;
        for _ in 0..3 {
            let psi = random_state(Spin::HALF, &mut rng);
            let phi = random_state(Spin::HALF, &mut rng);
            let a = space.amplitude(&psi, &phi)?;
            let born = space.star(&a, &a.conj(), StarRoute::Integral)?;
            err = err.max(born.max_abs_diff(&space.wigner(&psi)?));
        }
        suite.push("Born rule on the sphere (integral route, L=8)", err, 1e-9);

        let (mut route, mut unit) = (0f64, 0f64);
        for _ in 0..10 {
            let p = NmrParams::new(
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(0.0..2.0 * PI),
            );
            let t = rng.gen_range(0.0..5.0);
            let psi = random_state(Spin::HALF, &mut rng);
            let phi = random_state(Spin::HALF, &mut rng);
            let ev = evolve_sphere(&half, &psi, &phi, &p, t)?;
            route = route.max(ev.star.max_abs_diff(&ev.trace));
            unit = unit.max(propagator(&p, t).matrix().unitarity_error());
        }
        suite.push("NMR star and trace routes agree", route, 1e-10);
        suite.push("NMR propagator unitary", unit, 1e-12);
    }

    Ok(suite.results)
}
