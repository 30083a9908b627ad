use num_complex::Complex64 as C;
use serde_json::{json, Map, Value};

use spinphase_core::lattice::LatticeKernel;
use spinphase_core::nmr::{evolve_lattice, evolved_coeffs_half, evolved_lattice_half, propagator};
use spinphase_core::sphere::{amplitude_coeffs_half, default_band_limit, HalfSpinCoeffs};
use spinphase_core::states::{rotation, Axis};
use spinphase_core::verify::{self, Level, VerifyOptions};
use spinphase_core::{
    LatticeFieldF64, NmrParamsF64, SphereFieldF64, SpherePhaseSpaceF64, Spin, SpinStateF64,
    StarRoute, SwKernelF64,
};

use crate::output::{complex, emit, render, Cell, Format, Table};
use crate::spec::{eval_real, parse_state};
use crate::{
    AxisArg, CliError, EvolveArgs, FieldArgs, KernelArgs, LatticeArgs, LevelArg, RotateArgs, Route,
    StarArgs, VerifyArgs,
};

/// Wigner values must be real to this tolerance; larger parts are logged.
const IMAG_TOL: f64 = 1e-12;

fn params<T: serde::Serialize>(args: &T) -> Map<String, Value> {
    match serde_json::to_value(args) {
        Ok(Value::Object(m)) => m,
        _ => Map::new(),
    }
}

fn spin_arg(j: Option<f64>) -> Result<Option<Spin>, CliError> {
    j.map(|j| Spin::from_f64(j).map_err(|e| CliError::Parse(e.to_string())))
        .transpose()
}

fn route(r: Route) -> StarRoute {
    match r {
        Route::Operator => StarRoute::Operator,
        Route::Integral => StarRoute::Integral,
    }
}

/// State and window parsed together so that a component list fixes the spin
/// for a symbolic window.
fn states(a: &FieldArgs) -> Result<(SpinStateF64, SpinStateF64), CliError> {
    states_of(&a.state, &a.window, a.j, a.no_normalize)
}

fn states_of(
    state: &str,
    window: &str,
    j: Option<f64>,
    no_normalize: bool,
) -> Result<(SpinStateF64, SpinStateF64), CliError> {
    let spin = spin_arg(j)?;
    let psi = parse_state(state, spin, !no_normalize)?;
    let phi = parse_state(window, Some(spin.unwrap_or(psi.spin())), true)?;
    Ok((psi, phi))
}

fn space_for(spin: Spin, band_limit: Option<usize>) -> SpherePhaseSpaceF64 {
    let l = band_limit.unwrap_or_else(|| default_band_limit(spin));
    SpherePhaseSpaceF64::new(SwKernelF64::standard(spin), l)
}

fn sphere_table(command: &str, p: Map<String, Value>, f: &SphereFieldF64) -> Table {
    let mut t = Table::new(command, p, vec!["theta", "phi", "value"]);
    for ((theta, phi), &v) in f.grid().nodes().zip(f.values()) {
        t.push(vec![Cell::Real(theta), Cell::Real(phi), Cell::Complex(v)]);
    }
    t
}

fn lattice_table(command: &str, p: Map<String, Value>, f: &LatticeFieldF64) -> Table {
    let mut t = Table::new(command, p, vec!["alpha", "beta", "value"]);
    for ((a, b), v) in f.points() {
        t.push(vec![
            Cell::Int(a as i64),
            Cell::Int(b as i64),
            Cell::Complex(v),
        ]);
    }
    t
}

fn coeff_meta(c: &HalfSpinCoeffs<f64>) -> Value {
    let [a00, a1m1, a10, a11] = c.to_array();
    json!({ "a00": complex(a00), "a1m1": complex(a1m1), "a10": complex(a10), "a11": complex(a11) })
}

fn warn_imag(max_imag: f64) {
    if max_imag > IMAG_TOL {
        log::warn!(
            "Wigner function has imaginary part up to {max_imag:e} (tolerance {IMAG_TOL:e})"
        );
    }
}

fn write(
    t: &Table,
    format: Format,
    out: Option<&std::path::Path>,
    extra: Option<Map<String, Value>>,
) -> Result<(), CliError> {
    emit(&render(t, format, extra)?, out)
}

pub fn kernel(a: &KernelArgs) -> Result<(), CliError> {
    let p = params(a);
    let mut cols = vec![];
    let mut rows: Vec<Vec<Cell>> = vec![];
    let push_matrix =
        |prefix: Vec<Cell>, m: &spinphase_core::CMatrixF64, rows: &mut Vec<Vec<Cell>>| {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let mut row = prefix.clone();
                    row.extend([
                        Cell::Int(r as i64),
                        Cell::Int(c as i64),
                        Cell::Complex(m[(r, c)]),
                    ]);
                    rows.push(row);
                }
            }
        };
    if let Some(d) = a.lattice_dim {
        let k = LatticeKernel::<f64>::for_dim(d)?;
        cols.extend(["alpha", "beta"]);
        for alpha in 0..d {
            for beta in 0..d {
                push_matrix(
                    vec![Cell::Int(alpha as i64), Cell::Int(beta as i64)],
                    k.matrix(alpha, beta),
                    &mut rows,
                );
            }
        }
    } else {
        let spin = spin_arg(a.j)?.unwrap_or(Spin::HALF);
        match (&a.theta, &a.phi) {
            (Some(t), Some(ph)) => {
                let (t, ph) = (eval_real(t)?, eval_real(ph)?);
                push_matrix(
                    vec![],
                    &SwKernelF64::standard(spin).evaluate(t, ph),
                    &mut rows,
                );
            }
            (None, None) => {
                let space = space_for(spin, a.band_limit);
                cols.extend(["theta", "phi"]);
                for (k, (t, ph)) in space.grid().nodes().enumerate() {
                    push_matrix(
                        vec![Cell::Real(t), Cell::Real(ph)],
                        space.kernel_at(k),
                        &mut rows,
                    );
                }
            }
            _ => return Err(CliError::Parse("--theta and --phi go together".into())),
        }
    }
    cols.extend(["row", "col", "value"]);
    let mut t = Table::new("kernel", p, cols);
    rows.into_iter().for_each(|r| t.push(r));
    write(&t, a.common.format, a.common.out.as_deref(), None)
}

pub fn sphere_field(command: &str, a: &FieldArgs) -> Result<(), CliError> {
    let (psi, phi) = states(a)?;
    let space = space_for(psi.spin(), a.band_limit);
    let mut extra = Map::new();
    let field = match command {
        "amplitude" => {
            if psi.spin() == Spin::HALF {
                extra.insert(
                    "coefficients".into(),
                    coeff_meta(&amplitude_coeffs_half(&psi, &phi)?),
                );
            }
            space.amplitude(&psi, &phi)?
        }
        "wigner" => {
            let w = space.wigner(&psi)?;
            warn_imag(w.max_imag());
            w
        }
        _ => space.husimi(&psi, &phi)?,
    };
    let t = sphere_table(command, params(a), &field);
    write(&t, a.common.format, a.common.out.as_deref(), Some(extra))
}

pub fn star(a: &StarArgs) -> Result<(), CliError> {
    let f = &a.field;
    let (psi, phi) = states(f)?;
    let (psi2, phi2) = states_of(
        a.state2.as_deref().unwrap_or(&f.state),
        a.window2.as_deref().unwrap_or(&f.window),
        Some(psi.spin().value::<f64>()),
        f.no_normalize,
    )?;
    let space = space_for(psi.spin(), f.band_limit);
    let a1 = space.amplitude(&psi, &phi)?;
    let a2 = space.amplitude(&psi2, &phi2)?;
    let s = space.star(&a1, &a2.conj(), route(a.route))?;
    let t = sphere_table("star", params(a), &s);
    write(&t, f.common.format, f.common.out.as_deref(), None)
}

pub fn rotate(a: &RotateArgs) -> Result<(), CliError> {
    let f = &a.field;
    let (psi, phi) = states(f)?;
    let angle = eval_real(&a.angle)?;
    let axis = match a.axis {
        AxisArg::X => Axis::X,
        AxisArg::Y => Axis::Y,
        AxisArg::Z => Axis::Z,
    };
    let space = space_for(psi.spin(), f.band_limit);
    let r = space.rotate_amplitude(
        &psi,
        &phi,
        &rotation(psi.spin(), axis, angle),
        route(a.route),
    )?;
    let t = sphere_table("rotate", params(a), &r);
    write(&t, f.common.format, f.common.out.as_deref(), None)
}

pub fn lattice_field(command: &str, a: &LatticeArgs) -> Result<(), CliError> {
    let (psi, phi) = states_of(&a.state, &a.window, a.j, a.no_normalize)?;
    let k = LatticeKernel::<f64>::for_dim(psi.dim())?;
    let field = if command == "wigner-lattice" {
        let w = if a.no_normalize {
            k.wigner_unchecked(&psi)?
        } else {
            k.wigner(&psi)?
        };
        warn_imag(w.max_imag());
        w
    } else {
        k.amplitude(&psi, &phi)?
    };
    let t = lattice_table(command, params(a), &field);
    write(&t, a.common.format, a.common.out.as_deref(), None)
}

/// Closed forms are checked against the propagated state at every time point.
const ROUTE_TOL: f64 = 1e-10;

fn time_points(a: &EvolveArgs) -> Result<Vec<f64>, CliError> {
    if let Some(list) = &a.times {
        return list.split(',').map(eval_real).collect();
    }
    let t_max = eval_real(
        a.t_max
            .as_deref()
            .ok_or_else(|| CliError::Parse("give --times or --t-max".into()))?,
    )?;
    if a.steps == 0 {
        return Ok(vec![t_max]);
    }
    Ok((0..=a.steps)
        .map(|k| t_max * k as f64 / a.steps as f64)
        .collect())
}

pub fn evolve(a: &EvolveArgs) -> Result<(), CliError> {
    let (psi, phi) = states_of(&a.state, &a.window, Some(0.5), false)?;
    let p = NmrParamsF64::new(
        eval_real(&a.omega0)?,
        eval_real(&a.omega_nut)?,
        eval_real(&a.omega_ref)?,
        eval_real(&a.chi)?,
    );
    let times = time_points(a)?;
    let lk = LatticeKernel::<f64>::half();
    let space = space_for(Spin::HALF, None);
    let c0 = evolved_coeffs_half(&psi, &phi, &p, 0.0)?.to_array();
    let l0 = evolved_lattice_half(&psi, &phi, &p, 0.0)?;

    let mut t = Table::new(
        "evolve",
        params(a),
        vec!["t", "component", "value", "modulus"],
    );
    let labels = ["a00", "a1m1", "a10", "a11", "L00", "L01", "L10", "L11"];
    let (mut same, mut flipped) = (0f64, 0f64);
    for &time in &times {
        let c = evolved_coeffs_half(&psi, &phi, &p, time)?;
        let l = evolved_lattice_half(&psi, &phi, &p, time)?;
        let evolved = psi.transformed(&propagator(&p, time))?;
        let sphere_route = c
            .to_field(space.grid().clone())
            .max_abs_diff(&space.amplitude(&evolved, &phi)?);
        let lattice_route = l.max_abs_diff(&evolve_lattice(&lk, &psi, &phi, &p, time)?);
        let route_err = sphere_route.max(lattice_route);
        if route_err > ROUTE_TOL {
            return Err(CliError::Contract(format!(
                "closed form and propagated state differ by {route_err:e} at t = {time}"
            )));
        }
        let values: Vec<C> = c
            .to_array()
            .into_iter()
            .chain(l.values().iter().copied())
            .collect();
        let initial: Vec<C> = c0.iter().chain(l0.values()).copied().collect();
        same = values
            .iter()
            .zip(&initial)
            .fold(0.0, |m, (v, w)| f64::max(m, (v - w).norm()));
        flipped = values
            .iter()
            .zip(&initial)
            .fold(0.0, |m, (v, w)| f64::max(m, (v + w).norm()));
        for (label, v) in labels.iter().zip(values) {
            t.push(vec![
                Cell::Real(time),
                Cell::Text((*label).into()),
                Cell::Complex(v),
                Cell::Real(v.norm()),
            ]);
        }
    }
    eprintln!("final time: max |A(t) - A(0)| = {same:.3e}, max |A(t) + A(0)| = {flipped:.3e}");
    let mut extra = Map::new();
    extra.insert(
        "flip_angle".into(),
        json!(p.flip_angle(*times.last().unwrap_or(&0.0))),
    );
    extra.insert("final_deviation_from_initial".into(), json!(same));
    extra.insert(
        "final_deviation_from_negated_initial".into(),
        json!(flipped),
    );
    write(&t, a.common.format, a.common.out.as_deref(), Some(extra))
}

pub fn verify(a: &VerifyArgs) -> Result<(), CliError> {
    let level = match a.level {
        LevelArg::Fast => Level::Fast,
        LevelArg::Full => Level::Full,
    };
    let results = verify::run(VerifyOptions {
        level,
        corrupt_kernel: a.corrupt_kernel,
        seed: a.seed,
    })?;
    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    println!(
        "{} groups, {} passed, {} failed",
        results.len(),
        results.len() - failed,
        failed
    );
    if failed > 0 {
        return Err(CliError::VerifyFailed(failed));
    }
    Ok(())
}
