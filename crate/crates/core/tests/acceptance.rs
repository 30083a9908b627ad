//! Acceptance criteria, one line each. Runs as a plain binary so the report
//! is always printed; exits non-zero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spinphase_core::lattice::{amplitude_half, rotated_amplitude_half, wigner_half};
use spinphase_core::nmr::{
    evolve_lattice, evolve_sphere, evolved_coeffs_half, evolved_coeffs_resonant,
    evolved_lattice_half, evolved_lattice_resonant, propagator,
};
use spinphase_core::sphere::{amplitude_coeffs_half, rotated_coeffs_half, wigner_coeffs_half};
use spinphase_core::states::{pauli, rotation, rotation_y_half, Axis};
use spinphase_core::{
    CMatrix, HarmonicIndex, LatticeField, LatticeKernel, NmrParams, SphereField, SpherePhaseSpace,
    Spin, SpinOperator, SpinState, StarRoute, SwKernel,
};

type Rng64 = ChaCha8Rng;

struct Line {
    id: u32,
    what: &'static str,
    err: f64,
    tol: f64,
    extra: String,
}

impl Line {
    fn ok(&self) -> bool {
        self.err.is_finite() && self.err <= self.tol
    }
}

fn gauss(rng: &mut Rng64) -> f64 {
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (2.0 * PI * v).cos()
}

fn state(spin: Spin, rng: &mut Rng64) -> SpinState<f64> {
    let v = (0..spin.dim())
        .map(|_| C::new(gauss(rng), gauss(rng)))
        .collect();
    SpinState::new(spin, v, false).unwrap().normalized()
}

fn operator(spin: Spin, rng: &mut Rng64) -> SpinOperator<f64> {
    let d = spin.dim();
    SpinOperator::new(
        spin,
        CMatrix::from_fn(d, d, |_, _| C::new(gauss(rng), gauss(rng))),
    )
    .unwrap()
}

fn angles(rng: &mut Rng64) -> (f64, f64) {
    (
        rng.gen::<f64>().mul_add(2.0, -1.0).acos(),
        rng.gen_range(0.0..2.0 * PI),
    )
}

fn half() -> Spin {
    Spin::HALF
}

/// `(I + √3 n·σ)/2`, typed in directly.
fn half_kernel_oracle(theta: f64, phi: f64) -> CMatrix<f64> {
    let r3 = 3f64.sqrt();
    let (x, y, z) = (
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    );
    CMatrix::from_rows(&[
        &[
            C::new((1.0 + r3 * z) / 2.0, 0.0),
            C::new(r3 * x / 2.0, -r3 * y / 2.0),
        ],
        &[
            C::new(r3 * x / 2.0, r3 * y / 2.0),
            C::new((1.0 - r3 * z) / 2.0, 0.0),
        ],
    ])
}

fn max_sphere(a: &SphereField<f64>, b: &SphereField<f64>) -> f64 {
    a.max_abs_diff(b)
}

fn max_lattice(a: &LatticeField<f64>, b: &LatticeField<f64>) -> f64 {
    a.max_abs_diff(b)
}

fn kernel_axioms(rng: &mut Rng64) -> Line {
    let start = Instant::now();
    let mut err = 0f64;
    let mut ok = true;
    let mut parts = Vec::new();
    for tw in 1..=3 {
        let spin = Spin::from_twice(tw);
        let kernel = SwKernel::<f64>::standard(spin);
        let (mut herm, mut trace) = (0f64, 0f64);
        for _ in 0..200 {
            let (t, p) = angles(rng);
            let m = kernel.evaluate(t, p);
            herm = herm.max(m.hermiticity_error());
            trace = trace.max((m.trace() - C::new(1.0, 0.0)).norm());
        }
        ok &= herm.max(trace) <= 1e-12;

        let space = SpherePhaseSpace::new(kernel.clone(), 2 * tw as usize + 2);
        let mut sum = CMatrix::zeros(spin.dim(), spin.dim());
        for k in 0..space.grid().len() {
            sum = &sum + &space.kernel_at(k).scale_real(space.grid().weight(k));
        }
        let ident = sum
            .scale_real(space.measure())
            .max_abs_diff(&CMatrix::identity(spin.dim()));
        ok &= ident <= 1e-10;

        let mut repro = 0f64;
        for _ in 0..20 {
            let x = operator(spin, rng);
            let field = space.symbol(&x).unwrap();
            let (t, p) = angles(rng);
            let here = kernel.evaluate(t, p);
            let mut acc = C::new(0.0, 0.0);
            for k in 0..space.grid().len() {
                acc += here.trace_product(space.kernel_at(k))
                    * field.values()[k]
                    * space.grid().weight(k);
            }
            let exact = x.matrix().trace_product(&here);
            repro = repro.max((acc * space.measure() - exact).norm());
        }
        err = err.max(repro);
        parts.push(format!(
            "j={spin}: herm/trace {:.1e}, identity {ident:.1e}, reproducing {repro:.1e}",
            herm.max(trace)
        ));
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 5.0 || !ok {
        err = f64::INFINITY;
    }
    Line {
        id: 1,
        what: "sphere kernel axioms for j = 1/2, 1, 3/2",
        err,
        tol: 1e-9,
        extra: format!(
            "{}; {secs:.2}s (hermiticity/trace tol 1e-12, identity tol 1e-10)",
            parts.join("; ")
        ),
    }
}

fn half_closed_form(rng: &mut Rng64) -> Line {
    let kernel = SwKernel::<f64>::standard(half());
    let mut err = 0f64;
    for _ in 0..200 {
        let (t, p) = angles(rng);
        err = err.max(
            kernel
                .evaluate(t, p)
                .max_abs_diff(&half_kernel_oracle(t, p)),
        );
    }
    Line {
        id: 2,
        what: "general-j kernel equals (I + sqrt3 n.sigma)/2 at j = 1/2",
        err,
        tol: 1e-12,
        extra: String::new(),
    }
}

fn born_rule(rng: &mut Rng64) -> Line {
    let space = SpherePhaseSpace::<f64>::standard(half());
    let lk = LatticeKernel::<f64>::half();
    let (mut op, mut int, mut lat, mut win) = (0f64, 0f64, 0f64, 0f64);
    for _ in 0..100 {
        let psi = state(half(), rng);
        let phi = state(half(), rng);
        let phi2 = state(half(), rng);
        let w = space.wigner(&psi).unwrap();
        let a = space.amplitude(&psi, &phi).unwrap();
        let via_op = space.star(&a, &a.conj(), StarRoute::Operator).unwrap();
        op = op.max(max_sphere(&via_op, &w));
        int = int.max(max_sphere(
            &space.star(&a, &a.conj(), StarRoute::Integral).unwrap(),
            &w,
        ));
        let a2 = space.amplitude(&psi, &phi2).unwrap();
        win = win.max(max_sphere(
            &space.star(&a2, &a2.conj(), StarRoute::Operator).unwrap(),
            &via_op,
        ));
        let la = lk.amplitude(&psi, &phi).unwrap();
        let lw = lk.wigner(&psi).unwrap();
        lat = lat.max(max_lattice(
            &lk.star(&la, &la.conj()).unwrap().scale(C::new(0.5, 0.0)),
            &lw,
        ));
        let la2 = lk.amplitude(&psi, &phi2).unwrap();
        win = win.max(max_lattice(
            &lk.star(&la2, &la2.conj()).unwrap().scale(C::new(0.5, 0.0)),
            &lw,
        ));
    }
    let pass = op <= 1e-9 && int <= 1e-9 && lat <= 1e-12 && win <= 1e-10;
    Line {
        id: 3,
        what: "Born rule on sphere (both star routes) and lattice; window independence",
        err: if pass { op.max(int) } else { f64::INFINITY },
        tol: 1e-9,
        extra: format!("sphere operator {op:.1e}, sphere integral {int:.1e}, lattice {lat:.1e}, window {win:.1e}"),
    }
}

/// The lattice NMR closed forms exactly as printed, before correction.
fn lattice_nmr_uncorrected(
    psi: &SpinState<f64>,
    phi: &SpinState<f64>,
    p: &NmrParams<f64>,
    t: f64,
) -> [C; 4] {
    let (pp, m) = (psi.components()[0], psi.components()[1]);
    let (a, b) = (phi.components()[0].conj(), phi.components()[1].conj());
    let we = p.omega_eff();
    let (s, co) = (we * t / 2.0).sin_cos();
    let k = s / we;
    let (wr, wn) = (p.omega_res(), p.omega_nut);
    let (e, ec) = (C::from_polar(1.0, p.chi), C::from_polar(1.0, -p.chi));
    let i = C::i();
    let h = C::new(0.5, 0.5);
    let x = pp * b - m * a;
    let y = pp * a * e + m * b * ec;
    [
        a * (pp + m) * co
            + (b - i * a) * (pp * wr + m * wn * ec) * k
            + h * (x * co + (-x * wr - y * wn) * k),
        b * (pp + m) * co - (a - b) * (m * wr - pp * wn * e) * k
            + h * (-x * co + (-x * wr - y * wn) * k),
        a * (pp - m) * co
            - (b + i * a) * (pp * wr + m * wn * ec) * k
            - h * (x * co - (x * wr + y * wn) * k),
        b * (m - pp) * co
            + (a + b) * (m * wr - pp * wn * e) * k
            + h * (x * co + (x * wr + y * wn) * k),
    ]
}

fn lattice_nmr_resonant_uncorrected(
    psi: &SpinState<f64>,
    phi: &SpinState<f64>,
    wn: f64,
    chi: f64,
    t: f64,
) -> [C; 4] {
    let (pp, m) = (psi.components()[0], psi.components()[1]);
    let (a, b) = (phi.components()[0].conj(), phi.components()[1].conj());
    let (s, co) = (wn * t / 2.0).sin_cos();
    let (e, ec) = (C::from_polar(1.0, chi), C::from_polar(1.0, -chi));
    let i = C::i();
    let (h, hc) = (C::new(0.5, 0.5), C::new(0.5, -0.5));
    let x = pp * b - m * a;
    let y = pp * a * e + m * b * ec;
    [
        a * (pp + m) * co + m * ec * (b - i * a) * s + h * (x * co - y * s),
        m * (b + a) * co + b * (m * ec + i * pp * e) * s + hc * (x * co + y * s),
        a * (pp - m) * co - m * ec * (b + i * a) * s - h * (x * co - y * s),
        m * (b - a) * co + b * (m * ec - i * pp * e) * s - hc * (x * co + y * s),
    ]
}

fn random_params(rng: &mut Rng64) -> NmrParams<f64> {
    NmrParams::new(
        rng.gen_range(-3.0..3.0),
        rng.gen_range(-3.0..3.0),
        rng.gen_range(-3.0..3.0),
        rng.gen_range(0.0..2.0 * PI),
    )
}

fn closed_forms(rng: &mut Rng64) -> (Line, String) {
    let space = SpherePhaseSpace::<f64>::standard(half());
    let lk = LatticeKernel::<f64>::half();
    let grid = space.grid().clone();
    let names = [
        "amplitude coeffs",
        "Wigner coeffs",
        "rotated coeffs",
        "lattice amplitude",
        "lattice Wigner",
        "lattice rotation symbol",
        "lattice rotated amplitude",
        "NMR coeffs",
        "NMR resonant coeffs",
        "NMR lattice",
        "NMR lattice resonant",
    ];
    let mut errs = [0f64; 11];
    let (mut raw, mut raw_res) = (0f64, 0f64);
    for _ in 0..100 {
        let psi = state(half(), rng);
        let phi = state(half(), rng);
        let alpha = rng.gen_range(-4.0 * PI..4.0 * PI);
        let p = random_params(rng);
        let t = rng.gen_range(0.0..5.0);
        let wn = rng.gen_range(0.1..3.0);
        let chi = rng.gen_range(0.0..2.0 * PI);
        let res = NmrParams::resonant(wn, chi);
        let upd = |e: &mut f64, v: f64| *e = e.max(v);

        let amp = space.amplitude(&psi, &phi).unwrap();
        upd(
            &mut errs[0],
            max_sphere(
                &amplitude_coeffs_half(&psi, &phi)
                    .unwrap()
                    .to_field(grid.clone()),
                &amp,
            ),
        );
        upd(
            &mut errs[1],
            max_sphere(
                &wigner_coeffs_half(&psi).unwrap().to_field(grid.clone()),
                &space.wigner(&psi).unwrap(),
            ),
        );
        let rot = space
            .rotate_amplitude(&psi, &phi, &rotation_y_half(alpha), StarRoute::Operator)
            .unwrap();
        upd(
            &mut errs[2],
            max_sphere(
                &rotated_coeffs_half(&psi, &phi, alpha)
                    .unwrap()
                    .to_field(grid.clone()),
                &rot,
            ),
        );
        upd(
            &mut errs[3],
            max_lattice(
                &amplitude_half(&psi, &phi).unwrap(),
                &lk.amplitude(&psi, &phi).unwrap(),
            ),
        );
        upd(
            &mut errs[4],
            max_lattice(&wigner_half(&psi).unwrap(), &lk.wigner(&psi).unwrap()),
        );
        upd(
            &mut errs[5],
            max_lattice(
                &lk.rotation_symbol(alpha).unwrap(),
                &lk.symbol(&rotation_y_half(alpha)).unwrap(),
            ),
        );
        upd(
            &mut errs[6],
            max_lattice(
                &rotated_amplitude_half(&psi, &phi, alpha).unwrap(),
                &lk.rotate(&psi, &phi, alpha).unwrap(),
            ),
        );
        let ev = evolve_sphere(&space, &psi, &phi, &p, t).unwrap();
        upd(
            &mut errs[7],
            max_sphere(
                &evolved_coeffs_half(&psi, &phi, &p, t)
                    .unwrap()
                    .to_field(grid.clone()),
                &ev.star,
            ),
        );
        let ev = evolve_sphere(&space, &psi, &phi, &res, t).unwrap();
        upd(
            &mut errs[8],
            max_sphere(
                &evolved_coeffs_resonant(&psi, &phi, wn, chi, t)
                    .unwrap()
                    .to_field(grid.clone()),
                &ev.star,
            ),
        );
        let lat = evolve_lattice(&lk, &psi, &phi, &p, t).unwrap();
        upd(
            &mut errs[9],
            max_lattice(&evolved_lattice_half(&psi, &phi, &p, t).unwrap(), &lat),
        );
        let lat_res = evolve_lattice(&lk, &psi, &phi, &res, t).unwrap();
        upd(
            &mut errs[10],
            max_lattice(
                &evolved_lattice_resonant(&psi, &phi, wn, chi, t).unwrap(),
                &lat_res,
            ),
        );

        let v = lattice_nmr_uncorrected(&psi, &phi, &p, t);
        raw = v
            .iter()
            .zip(lat.values())
            .fold(raw, |m, (a, b)| m.max((a - b).norm()));
        let v = lattice_nmr_resonant_uncorrected(&psi, &phi, wn, chi, t);
        raw_res = v
            .iter()
            .zip(lat_res.values())
            .fold(raw_res, |m, (a, b)| m.max((a - b).norm()));
    }
    let worst = errs.iter().cloned().fold(0.0, f64::max);
    let detail = names
        .iter()
        .zip(&errs)
        .map(|(n, e)| format!("{n} {e:.1e}"))
        .collect::<Vec<_>>()
        .join(", ");
    let note = format!(
        "NOTE  lattice NMR closed forms as printed deviate from Tr(U Psi Delta): general {raw:.2e}, resonant {raw_res:.2e}; corrected forms are the ones checked above"
    );
    (
        Line {
            id: 4,
            what: "closed-form coefficient suites vs generic trace/star routes",
            err: worst,
            tol: 1e-12,
            extra: detail,
        },
        note,
    )
}

fn sign_flip(rng: &mut Rng64) -> Line {
    let space = SpherePhaseSpace::<f64>::standard(half());
    let lk = LatticeKernel::<f64>::half();
    let mut err = 0f64;
    for _ in 0..20 {
        let psi = state(half(), rng);
        let phi = state(half(), rng);
        let a = space.amplitude(&psi, &phi).unwrap();
        let l = lk.amplitude(&psi, &phi).unwrap();
        for (angle, sign) in [(2.0 * PI, -1.0), (4.0 * PI, 1.0)] {
            let r = rotation(half(), Axis::Y, angle);
            let rs = space
                .rotate_amplitude(&psi, &phi, &r, StarRoute::Operator)
                .unwrap();
            err = err.max(max_sphere(&rs, &a.scale(C::new(sign, 0.0))));
            err = err.max(max_lattice(
                &lk.rotate(&psi, &phi, angle).unwrap(),
                &l.scale(C::new(sign, 0.0)),
            ));
        }
    }
    Line {
        id: 5,
        what: "2pi rotation negates amplitude, 4pi restores (sphere, lattice)",
        err,
        tol: 1e-12,
        extra: String::new(),
    }
}

fn lattice_axioms() -> Line {
    let mut err = 0f64;
    let mut parts = Vec::new();
    for d in [2, 3, 5, 7] {
        let e = LatticeKernel::<f64>::for_dim(d)
            .unwrap()
            .axiom_report()
            .max();
        parts.push(format!("d={d} {e:.1e}"));
        err = err.max(e);
    }
    let lk = LatticeKernel::<f64>::half();
    let d = lk.symplectic_fourier();
    let exact = d[0] == SpinOperator::identity(half())
        && d[1] == pauli(Axis::X)
        && d[3] == pauli(Axis::Y)
        && d[2] == pauli(Axis::Z);
    if !exact {
        err = f64::INFINITY;
    }
    Line {
        id: 6,
        what: "lattice kernel axioms d = 2,3,5,7; symplectic transform gives I, sx, sy, sz",
        err,
        tol: 1e-12,
        extra: format!("{}; Pauli identification exact: {exact}", parts.join(", ")),
    }
}

fn negativity() -> Line {
    let r = 2f64.sqrt();
    let up = C::new(1.0, -1.0) / r;
    let down = C::new(r, r);
    let psi = SpinState::new(half(), vec![up, down], false).unwrap();
    let w = LatticeKernel::<f64>::half()
        .wigner_unchecked(&psi)
        .unwrap()
        .get(1, 0);
    // brute force: Tr(|ψ⟩⟨ψ| Δ(1,0)) / 2 with Δ(1,0) = [[1, -(1-i)/2], [-(1+i)/2, 0]]
    let d10 = [
        [C::new(1.0, 0.0), C::new(-0.5, 0.5)],
        [C::new(-0.5, -0.5), C::new(0.0, 0.0)],
    ];
    let v = [up, down];
    let mut brute = C::new(0.0, 0.0);
    for a in 0..2 {
        for b in 0..2 {
            brute += v[a] * v[b].conj() * d10[b][a];
        }
    }
    brute /= 2.0;
    let err = (w - C::new(-0.5, 0.0))
        .norm()
        .max((brute - C::new(-0.5, 0.0)).norm());
    Line {
        id: 7,
        what: "lattice Wigner negativity, W(1,0) of the unnormalized example",
        err,
        tol: 1e-12,
        extra: format!("W(1,0) = {:.15} (brute force {:.15})", w.re, brute.re),
    }
}

fn superposition(rng: &mut Rng64) -> Line {
    let space = SpherePhaseSpace::<f64>::standard(half());
    let (mut we, mut he) = (0f64, 0f64);
    for _ in 0..50 {
        let p1 = state(half(), rng);
        let p2 = state(half(), rng);
        let phi = state(half(), rng);
        let (a, b) = (
            C::new(gauss(rng), gauss(rng)),
            C::new(gauss(rng), gauss(rng)),
        );
        let combo = p1.combine(a, &p2, b).unwrap();
        let n = combo.norm();
        let (a, b) = (a / n, b / n);
        let combo = combo.normalized();
        let sup = space
            .superpose(&p1, &phi, &p2, &phi, a, b, StarRoute::Operator)
            .unwrap();
        we = we.max(max_sphere(&sup.wigner, &space.wigner(&combo).unwrap()));
        he = he.max(max_sphere(
            &sup.husimi,
            &space.husimi(&combo, &phi).unwrap(),
        ));
    }
    let pass = we <= 1e-10 && he <= 1e-12;
    Line {
        id: 8,
        what: "superposition cross terms rebuild Wigner and Husimi",
        err: if pass { we } else { f64::INFINITY },
        tol: 1e-10,
        extra: format!("Wigner {we:.1e}, Husimi {he:.1e}"),
    }
}

fn nmr_limits(rng: &mut Rng64) -> Line {
    let space = SpherePhaseSpace::<f64>::standard(half());
    let lk = LatticeKernel::<f64>::half();
    let (mut rot, mut modulus, mut unit, mut routes) = (0f64, 0f64, 0f64, 0f64);
    let up = SpinState::up(half());
    let down = SpinState::down(half());
    for _ in 0..50 {
        let psi = state(half(), rng);
        let phi = state(half(), rng);
        let wn = rng.gen_range(0.1..3.0);
        let t = rng.gen_range(0.0..5.0);
        let p = NmrParams::resonant(wn, FRAC_PI_2);
        let alpha = wn * t;
        let ev = evolve_sphere(&space, &psi, &phi, &p, t).unwrap();
        let r = space
            .rotate_amplitude(&psi, &phi, &rotation_y_half(alpha), StarRoute::Operator)
            .unwrap();
        rot = rot
            .max(max_sphere(&ev.trace, &r))
            .max(max_sphere(&ev.star, &r));
        rot = rot.max(
            ev.coeffs
                .max_abs_diff(&rotated_coeffs_half(&psi, &phi, alpha).unwrap()),
        );
        let l = evolve_lattice(&lk, &psi, &phi, &p, t).unwrap();
        rot = rot.max(max_lattice(&l, &lk.rotate(&psi, &phi, alpha).unwrap()));

        // free precession: equilibrium states keep their lattice moduli, and with
        // a σ_z-eigenstate window every harmonic coefficient keeps its modulus
        let free = NmrParams::new(
            rng.gen_range(-3.0..3.0),
            0.0,
            rng.gen_range(-3.0..3.0),
            rng.gen_range(0.0..2.0 * PI),
        );
        let eq = if rng.gen::<bool>() { &up } else { &down };
        let eq = eq
            .combine(
                C::from_polar(1.0, rng.gen_range(0.0..2.0 * PI)),
                eq,
                C::new(0.0, 0.0),
            )
            .unwrap();
        let window = if rng.gen::<bool>() { &up } else { &down };
        let h0 = evolve_lattice(&lk, &eq, &phi, &free, 0.0)
            .unwrap()
            .modulus_squared();
        let c0 = evolved_coeffs_half(&psi, window, &free, 0.0)
            .unwrap()
            .to_array();
        for _ in 0..5 {
            let t = rng.gen_range(0.0..10.0);
            let h = evolve_lattice(&lk, &eq, &phi, &free, t)
                .unwrap()
                .modulus_squared();
            modulus = modulus.max(max_lattice(&h, &h0));
            let ct = evolved_coeffs_half(&psi, window, &free, t)
                .unwrap()
                .to_array();
            for (x, y) in c0.iter().zip(&ct) {
                modulus = modulus.max((x.norm() - y.norm()).abs());
            }
        }

        let p = random_params(rng);
        let t = rng.gen_range(0.0..5.0);
        unit = unit.max(propagator(&p, t).matrix().unitarity_error());
        let ev = evolve_sphere(&space, &psi, &phi, &p, t).unwrap();
        routes = routes.max(max_sphere(&ev.star, &ev.trace));
    }
    let pass = rot <= 1e-12 && modulus <= 1e-12 && unit <= 1e-12 && routes <= 1e-10;
    Line {
        id: 9,
        what: "NMR limits: resonant y-pulse, free precession, unitarity, route agreement",
        err: if pass {
            rot.max(modulus)
        } else {
            f64::INFINITY
        },
        tol: 1e-12,
        extra: format!(
            "y-rotation {rot:.1e}, moduli {modulus:.1e}, unitarity {unit:.1e}, routes {routes:.1e}"
        ),
    }
}

fn expectations(rng: &mut Rng64) -> Line {
    let space = SpherePhaseSpace::<f64>::standard(half());
    let mut err = 0f64;
    for _ in 0..50 {
        let psi = state(half(), rng);
        let phi = state(half(), rng);
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let op = pauli(axis);
            let v = space
                .expectation(&op, &psi, &phi, StarRoute::Operator)
                .unwrap();
            // matrix oracle: Σ conj(ψ_a) σ_ab ψ_b
            let mut m = C::new(0.0, 0.0);
            for a in 0..2 {
                for b in 0..2 {
                    m += psi.components()[a].conj() * op.matrix()[(a, b)] * psi.components()[b];
                }
            }
            err = err.max((v - m).norm());
        }
    }
    Line {
        id: 10,
        what: "phase-space expectation values of sx, sy, sz",
        err,
        tol: 1e-9,
        extra: String::new(),
    }
}

fn husimi_quadrupole() -> Line {
    let space = SpherePhaseSpace::<f64>::standard(half());
    let up = SpinState::up(half());
    let h = space.husimi(&up, &up).unwrap();
    let idx = HarmonicIndex::new(2, 0).unwrap();
    let quad = h.project(idx);
    let gaunt = space.husimi_harmonics(&up, &up).unwrap()[idx.flat()];
    let expect = (PI / 5.0).sqrt();
    let nonzero = quad.norm() > 0.5;
    let err = if nonzero {
        (quad - C::new(expect, 0.0))
            .norm()
            .max((gaunt - quad).norm())
    } else {
        f64::INFINITY
    };
    Line {
        id: 11,
        what: "l <= 1 Husimi expansion refuted: |Psi|^2 has a Y_20 component",
        err,
        tol: 1e-12,
        extra: format!(
            "<Y20, |Psi|^2> = {:.15} (sqrt(pi/5) = {expect:.15}, Gaunt route {:.15})",
            quad.re, gaunt.re
        ),
    }
}

fn main() -> ExitCode {
    let mut rng = Rng64::seed_from_u64(20240601);
    let (four, note) = closed_forms(&mut rng);
    let lines = vec![
        kernel_axioms(&mut rng),
        half_closed_form(&mut rng),
        born_rule(&mut rng),
        four,
        sign_flip(&mut rng),
        lattice_axioms(),
        negativity(),
        superposition(&mut rng),
        nmr_limits(&mut rng),
        expectations(&mut rng),
        husimi_quadrupole(),
    ];
    let mut lines = lines;
    lines.sort_by_key(|l| l.id);
    let mut failed = 0;
    for l in &lines {
        let tag = if l.ok() { "PASS" } else { "FAIL" };
        if !l.ok() {
            failed += 1;
        }
        println!(
            "{tag}  criterion {:>2}: {} | max_err={:.3e} tol={:.0e}",
            l.id, l.what, l.err, l.tol
        );
        if !l.extra.is_empty() {
            println!("      {}", l.extra);
        }
    }
    println!("{note}");
    println!(
        "acceptance: {} passed, {} failed",
        lines.len() - failed,
        failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
