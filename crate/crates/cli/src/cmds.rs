//! The five subcommand bodies.  Each returns the process exit code:
//! 0 success/quantized, 2 for a computed but non-quantized (or
//! non-conserved, non-convergent) result, errors bubble up as exit 1,
//! and usage problems exit 64 before reaching here.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use topodef::charges::{charge, ChargeOptions, ChargeReport, Method};
use topodef::defects::{baryon_integrals, compat_residual, nye_tensor, rotation_field, BaryonRoute};
use topodef::fields::{sample, AnalyticField, Axial, Nested, SkyrmeU, Vortex};
use topodef::grid::{Grid, MatrixField};
use topodef::homotopy::{classify, probe_dimension, Space};
use topodef::linalg::{mat3_mul, Mat3};
use topodef::monopole::GaugeConfig;
use topodef::profiles::Profile;
use topodef::rotations::rodrigues;
use topodef::solitons::{
    energy, evolve, kink_state, sector_charge, state_from, DsgParams, Kink, WaveState,
};

use crate::config::{self, Config};
use crate::output::{echo_json, emit, fnum, json_object, write_file, Val};
use crate::{ChargeArgs, ClassifyArgs, CompatArgs, DumpArgs, EvolveArgs, OutputArgs};

type Exit = Result<i32, String>;

fn estr(e: topodef::Error) -> String {
    e.to_string()
}

/// Parse an axis spec "lo,hi,n"; full grids join axes with ';'.  A single
/// axis spec is replicated across `dim` axes.
fn parse_grid(spec: &str, dim: usize) -> Result<Grid, String> {
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    let mut n = Vec::new();
    for axis in spec.split(';') {
        let parts: Vec<&str> = axis.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("grid axis '{axis}' is not of the form lo,hi,n"));
        }
        lo.push(parts[0].parse::<f64>().map_err(|_| format!("bad grid bound '{}'", parts[0]))?);
        hi.push(parts[1].parse::<f64>().map_err(|_| format!("bad grid bound '{}'", parts[1]))?);
        n.push(parts[2].parse::<usize>().map_err(|_| format!("bad grid count '{}'", parts[2]))?);
    }
    if lo.len() == 1 && dim > 1 {
        lo = vec![lo[0]; dim];
        hi = vec![hi[0]; dim];
        n = vec![n[0]; dim];
    }
    if lo.len() != dim {
        return Err(format!("grid has {} axes, field needs {dim}", lo.len()));
    }
    Grid::new(&lo, &hi, &n).map_err(estr)
}

/// Comma-free grid description usable inside CSV rows.
fn grid_label(grid: &Grid) -> String {
    let axes: Vec<String> = (0..grid.dim())
        .map(|a| format!("{}..{} n={}", grid.lo(a), grid.hi(a), grid.len_axis(a)))
        .collect();
    axes.join(" x ")
}

/// The three equivalent volume formulas, with spellings for both the
/// matrix-determinant and trace views.
fn parse_formula(s: &str) -> Result<BaryonRoute, String> {
    match s {
        "det-B" | "det-b" => Ok(BaryonRoute::BDeterminant),
        "det-Gamma" | "det-gamma" => Ok(BaryonRoute::NyeDeterminant),
        "tr-CCC" | "tr-ccc" | "trace-ccc" => Ok(BaryonRoute::ContortionTrace),
        other => BaryonRoute::from_str(other).map_err(estr),
    }
}

fn report_json(command: &str, cfg: &Config, r: &ChargeReport) -> String {
    json_object(&[
        ("command", Val::Str(command.into())),
        ("config_echo", echo_json(cfg)),
        ("error_estimate", Val::Num(fnum(r.error_estimate))),
        ("grid", Val::Str(r.grid.clone())),
        ("method", Val::Str(r.method.as_str().into())),
        ("nearest_integer", Val::Num(r.nearest_integer.to_string())),
        ("quantity", Val::Str(r.quantity.clone())),
        ("value", Val::Num(fnum(r.value))),
    ])
}

fn emit_report(command: &str, cfg: &Config, r: &ChargeReport, out: &OutputArgs) -> Exit {
    let text = if out.output == "csv" {
        format!("{}\n{}", ChargeReport::csv_header(), r.to_csv_row())
    } else {
        report_json(command, cfg, r)
    };
    emit(&text, &out.out_file, out.quiet)?;
    Ok(0)
}

/// Build the analytic constructor named by `preset` (the presets whose
/// charge comes from a plain field, not a gauge pair).
fn build_constructor(cfg: &Config) -> Result<Box<dyn AnalyticField>, String> {
    let n = config::get_i32(cfg, "n")?;
    match config::get_str(cfg, "preset")? {
        "vortex" | "vacuum" => Ok(Box::new(Vortex { winding: n })),
        "hedgehog" => Ok(Box::new(Axial { winding: n })),
        "n3" => Ok(Box::new(Nested::polar(3, n).map_err(estr)?)),
        "skyrme" => {
            let scale = config::get_f64_or(cfg, "scale", 1.0)?;
            let omega =
                Profile::by_name(config::get_or(cfg, "profile", "skyrme-exp"), scale, 1.0)
                    .map_err(estr)?;
            Ok(Box::new(SkyrmeU { winding: n, omega }))
        }
        other => Err(format!("preset '{other}' has no plain field constructor")),
    }
}

const CHARGE_KEYS: [&str; 12] = [
    "preset", "n", "g", "profile", "scale", "radius", "n_quad", "n_grid", "method", "formula",
    "grid", "tolerance",
];

pub fn cmd_charge(args: &ChargeArgs) -> Exit {
    let mut cfg = config::resolve(&args.config, &CHARGE_KEYS)?;
    config::put(&mut cfg, "n", &args.n);
    config::put(&mut cfg, "g", &args.g);
    config::put(&mut cfg, "profile", &args.profile);
    config::put(&mut cfg, "scale", &args.scale);
    config::put(&mut cfg, "radius", &args.radius);
    config::put(&mut cfg, "n_quad", &args.n_quad);
    config::put(&mut cfg, "n_grid", &args.n_grid);
    config::put(&mut cfg, "method", &args.method);
    config::put(&mut cfg, "formula", &args.formula);
    config::put(&mut cfg, "grid", &args.grid);
    config::put(&mut cfg, "tolerance", &args.tolerance);

    let preset = config::get_str(&cfg, "preset")?.to_string();
    let tolerance = config::get_f64_or(&cfg, "tolerance", 1e-3)?;
    let method = Method::from_str(config::get_or(&cfg, "method", "contour")).map_err(estr)?;
    cfg.insert("tolerance".into(), tolerance.to_string());
    cfg.insert("method".into(), method.as_str().to_string());
    if config::get_usize_or(&cfg, "n_quad", 64)? < 2 {
        return Err("n_quad must be at least 2".into());
    }

    let report = match preset.as_str() {
        "skyrme" => {
            if method != Method::VolumeDensity {
                return Err("the skyrme preset computes its charge by volume density; \
                     pass --method volume-density or omit --method"
                    .into());
            }
            let field = build_constructor(&cfg)?;
            let grid = parse_grid(config::get_or(&cfg, "grid", "-8,8,161"), 3)?;
            let b = baryon_integrals(field.as_ref(), grid).map_err(estr)?;
            let route = parse_formula(config::get_or(&cfg, "formula", "b-determinant"))?;
            let vals = [b.from_b_determinant, b.from_nye_determinant, b.from_contortion_trace];
            let spread = vals
                .iter()
                .flat_map(|v| vals.iter().map(move |w| (v - w).abs()))
                .fold(0.0, f64::max);
            ChargeReport::new(
                "baryon-number",
                b.get(route),
                Method::VolumeDensity,
                grid_label(&grid),
                spread,
            )
        }
        "monopole" => {
            if method != Method::SurfaceFlux {
                return Err("the monopole preset measures flux; pass --method surface-flux \
                     or omit --method"
                    .into());
            }
            let gauge = GaugeConfig::standard(
                config::get_i32(&cfg, "n")?,
                config::get_f64(&cfg, "g")?,
                config::get_f64_or(&cfg, "scale", 1.0)?,
                1.0,
            )
            .map_err(estr)?;
            gauge
                .charge_report(
                    config::get_f64_or(&cfg, "radius", 3.0)?,
                    config::get_usize_or(&cfg, "n_quad", 48)?,
                )
                .map_err(estr)?
        }
        _ => {
            let field = build_constructor(&cfg)?;
            let opts = ChargeOptions {
                radius: config::get_f64_or(&cfg, "radius", 2.0)?,
                n_quad: config::get_usize_or(&cfg, "n_quad", 64)?,
                n_grid: config::get_usize_or(&cfg, "n_grid", 41)?,
                ..Default::default()
            };
            charge(field.as_ref(), method, &opts).map_err(estr)?
        }
    };

    if !args.out.quiet {
        eprintln!(
            "{} = {} (nearest integer {}, estimated error {:.1e})",
            report.quantity, report.value, report.nearest_integer, report.error_estimate
        );
    }
    let code = if report.is_quantized(tolerance) { 0 } else { 2 };
    emit_report("charge", &cfg, &report, &args.out)?;
    Ok(code)
}

const COMPAT_KEYS: [&str; 4] = ["field", "levels", "grid", "seed"];

/// Two superposed twists with mixed-coordinate angles: a smooth rotation
/// field whose connection has no special lattice structure (rotations that
/// each depend on a single coordinate satisfy the identity exactly even
/// after differencing).
fn twist_rotation(x: &[f64]) -> Mat3 {
    let about_z = rodrigues(0.9 * x[2] + 0.3 * (1.1 * x[0]).sin(), [0.0, 0.0, 1.0]).unwrap();
    let about_x = rodrigues(0.7 * x[0] + 0.4 * (1.3 * x[1]).cos(), [1.0, 0.0, 0.0]).unwrap();
    mat3_mul(&about_z, &about_x)
}

pub fn cmd_compat(args: &CompatArgs) -> Exit {
    let mut cfg = match &args.config {
        Some(path) => config::resolve(path, &COMPAT_KEYS)?,
        None => Config::new(),
    };
    config::put(&mut cfg, "field", &args.field);
    config::put(&mut cfg, "levels", &args.levels);
    config::put(&mut cfg, "grid", &args.grid);
    config::put(&mut cfg, "seed", &args.seed);

    let field_name = config::get_or(&cfg, "field", "twist").to_string();
    let levels_spec = config::get_or(&cfg, "levels", "21,41,81").to_string();
    let grid_spec = config::get_or(&cfg, "grid", "-1,1,21").to_string();
    let seed: u64 = config::get_or(&cfg, "seed", "7")
        .parse()
        .map_err(|_| "bad seed".to_string())?;
    cfg.insert("field".into(), field_name.clone());
    cfg.insert("levels".into(), levels_spec.clone());
    cfg.insert("grid".into(), grid_spec.clone());
    cfg.insert("seed".into(), seed.to_string());
    let levels: Vec<usize> = levels_spec
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| format!("bad level count '{s}'")))
        .collect::<Result<_, _>>()?;
    if levels.len() < 2 {
        return Err("need at least two refinement levels".into());
    }
    let base = parse_grid(&grid_spec, 3)?;

    // Coefficients for the non-compatible control field are drawn once so
    // every refinement level sees the same function.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut amp = [[0.0f64; 3]; 3];
    let mut wave = [[[0.0f64; 3]; 3]; 3];
    let mut phase = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            amp[i][j] = rng.gen_range(0.5..1.5);
            phase[i][j] = rng.gen_range(0.0..std::f64::consts::TAU);
            for a in 0..3 {
                wave[i][j][a] = rng.gen_range(0.5..2.0);
            }
        }
    }

    let mut hs = Vec::new();
    let mut residuals = Vec::new();
    for &npts in &levels {
        let lo: Vec<f64> = (0..3).map(|a| base.lo(a)).collect();
        let hi: Vec<f64> = (0..3).map(|a| base.hi(a)).collect();
        let grid = Grid::new(&lo, &hi, &[npts, npts, npts]).map_err(estr)?;
        let gamma = match field_name.as_str() {
            "twist" => nye_tensor(&MatrixField::from_fn(grid, twist_rotation)).map_err(estr)?,
            "skyrme" => {
                let u = sample(
                    &SkyrmeU { winding: 1, omega: Profile::SkyrmeArctan { a: 1.0 } },
                    grid,
                )
                .map_err(estr)?;
                nye_tensor(&rotation_field(&u).map_err(estr)?).map_err(estr)?
            }
            "constant" => {
                let r = rodrigues(0.7, [1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0]).map_err(estr)?;
                nye_tensor(&MatrixField::from_fn(grid, move |_| r)).map_err(estr)?
            }
            // Not a rotation gradient: the identity must fail.
            "random" => MatrixField::from_fn(grid, |x| {
                let mut m = [[0.0f64; 3]; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        let arg: f64 =
                            (0..3).map(|a| wave[i][j][a] * x[a]).sum::<f64>() + phase[i][j];
                        m[i][j] = amp[i][j] * arg.sin();
                    }
                }
                m
            }),
            other => return Err(format!("unknown field '{other}'")),
        };
        let (max_res, _) = compat_residual(&gamma, 2).map_err(estr)?;
        hs.push(grid.spacing(0));
        residuals.push(max_res);
    }

    let exact = residuals.iter().all(|r| *r < 1e-12);
    let order = if exact {
        f64::NAN
    } else {
        let mut acc = 0.0;
        for w in residuals.windows(2) {
            acc += (w[0] / w[1]).log2();
        }
        acc / (residuals.len() - 1) as f64
    };
    let pass = exact || order >= 1.7;

    let text = if args.out.output == "csv" {
        let mut rows = vec!["h,max_residual".to_string()];
        for (h, r) in hs.iter().zip(&residuals) {
            rows.push(format!("{},{}", fnum(*h), fnum(*r)));
        }
        rows.join("\n")
    } else {
        let rows: Vec<String> = hs
            .iter()
            .zip(&residuals)
            .map(|(h, r)| {
                json_object(&[("h", Val::Num(fnum(*h))), ("residual", Val::Num(fnum(*r)))])
            })
            .collect();
        json_object(&[
            ("command", Val::Str("compat".into())),
            ("config_echo", echo_json(&cfg)),
            ("levels", Val::Raw(format!("[{}]", rows.join(",")))),
            (
                "order",
                if exact { Val::Raw("null".into()) } else { Val::Num(fnum(order)) },
            ),
            ("pass", Val::Raw(pass.to_string())),
        ])
    };
    if !args.out.quiet {
        if exact {
            eprintln!("residuals at rounding level on all {} grids", residuals.len());
        } else {
            eprintln!("observed convergence order {order:.2} over {} levels", residuals.len());
        }
    }
    emit(&text, &args.out.out_file, args.out.quiet)?;
    Ok(if pass { 0 } else { 2 })
}

const EVOLVE_KEYS: [&str; 10] = [
    "initial", "mass", "b", "velocity", "x0", "dt", "t_final", "snap_every", "grid", "tolerance",
];

fn snapshot_rows(out: &mut Vec<String>, state: &WaveState) {
    let g = &state.grid;
    for i in 0..g.len_axis(0) {
        out.push(format!(
            "{},{},{},{}",
            fnum(state.time),
            fnum(g.coord(0, i)),
            fnum(state.theta[i]),
            fnum(state.theta_dot[i])
        ));
    }
}

pub fn cmd_evolve(args: &EvolveArgs) -> Exit {
    let mut cfg = match &args.config {
        Some(path) => config::resolve(path, &EVOLVE_KEYS)?,
        None => Config::new(),
    };
    config::put(&mut cfg, "initial", &args.initial);
    config::put(&mut cfg, "mass", &args.mass);
    config::put(&mut cfg, "b", &args.b);
    config::put(&mut cfg, "velocity", &args.velocity);
    config::put(&mut cfg, "x0", &args.x0);
    config::put(&mut cfg, "dt", &args.dt);
    config::put(&mut cfg, "t_final", &args.t_final);
    config::put(&mut cfg, "snap_every", &args.snap_every);
    config::put(&mut cfg, "grid", &args.grid);
    config::put(&mut cfg, "tolerance", &args.tolerance);

    let initial = config::get_or(&cfg, "initial", "kink").to_string();
    let mass = config::get_f64_or(&cfg, "mass", 1.0)?;
    let b = config::get_f64_or(&cfg, "b", 0.0)?;
    let velocity = config::get_f64_or(&cfg, "velocity", 0.5)?;
    let x0 = config::get_f64_or(&cfg, "x0", 0.0)?;
    let t_final = config::get_f64_or(&cfg, "t_final", 5.0)?;
    let tolerance = config::get_f64_or(&cfg, "tolerance", 1e-3)?;
    let grid_spec = config::get_or(&cfg, "grid", "-20,20,2001").to_string();
    cfg.insert("grid".into(), grid_spec.clone());
    let grid = parse_grid(&grid_spec, 1)?;
    if grid.dim() != 1 {
        return Err("evolve runs on a one-dimensional grid".into());
    }
    let h = grid.spacing(0);
    let dt_target = config::get_f64_or(&cfg, "dt", 0.4 * h)?;
    if !(dt_target > 0.0) || !(t_final > 0.0) {
        return Err("dt and t_final must be positive".into());
    }
    // Land exactly on t_final so the analytic comparison is fair.
    let steps = (t_final / dt_target).round().max(1.0) as usize;
    let dt = t_final / steps as f64;
    for (k, v) in [
        ("initial", initial.clone()),
        ("mass", mass.to_string()),
        ("b", b.to_string()),
        ("velocity", velocity.to_string()),
        ("x0", x0.to_string()),
        ("dt", dt.to_string()),
        ("t_final", t_final.to_string()),
        ("tolerance", tolerance.to_string()),
    ] {
        cfg.insert(k.into(), v);
    }

    let params = DsgParams { mass, b };
    let kink = Kink::at_center(mass, velocity, x0).map_err(estr)?;
    let mut state = match initial.as_str() {
        "kink" => kink_state(grid, &kink, 0.0).map_err(estr)?,
        "vacuum" => state_from(grid, 0.0, |_| (0.0, 0.0)).map_err(estr)?,
        "pair" => {
            let sep = if x0 != 0.0 { x0.abs() } else { 8.0 };
            let left = Kink::at_center(mass, 0.0, -sep).map_err(estr)?;
            let right = Kink::at_center(mass, 0.0, sep).map_err(estr)?;
            state_from(grid, 0.0, |x| (left.theta(x, 0.0) - right.theta(x, 0.0), 0.0))
                .map_err(estr)?
        }
        other => return Err(format!("unknown initial state '{other}'")),
    };

    let slope_tol = 1e-3;
    let q0 = sector_charge(&state, slope_tol).map_err(estr)?;
    let e0 = energy(&state, params);

    let snap_every = match cfg.get("snap_every") {
        Some(_) => config::get_usize(&cfg, "snap_every")?,
        None if args.out.out_file.is_some() => (steps / 10).max(1),
        None => 0,
    };
    let mut snapshots = vec!["time,x,theta,theta_dot".to_string()];
    if snap_every > 0 {
        snapshot_rows(&mut snapshots, &state);
        let mut done = 0;
        while done < steps {
            let chunk = snap_every.min(steps - done);
            evolve(&mut state, params, dt, chunk).map_err(estr)?;
            snapshot_rows(&mut snapshots, &state);
            done += chunk;
        }
    } else {
        evolve(&mut state, params, dt, steps).map_err(estr)?;
    }

    let q1 = sector_charge(&state, slope_tol).map_err(estr)?;
    let e1 = energy(&state, params);
    let drift = (q1 - q0).abs();

    if !args.out.quiet {
        eprintln!(
            "evolved to t = {} in {steps} steps (dt = {dt:.6}); sector {q0} -> {q1}, \
             relative energy drift {:.2e}",
            state.time,
            (e1 / e0 - 1.0).abs()
        );
        if initial == "kink" && b == 0.0 {
            let mut linf = 0.0f64;
            for i in 0..state.grid.len_axis(0) {
                let x = state.grid.coord(0, i);
                linf = linf.max((state.theta[i] - kink.theta(x, state.time)).abs());
            }
            eprintln!("final L-infinity distance to the analytic kink: {linf:.2e}");
        }
    }
    if let Some(path) = &args.out.out_file {
        write_file(path, &snapshots.join("\n"))?;
    }

    let report = ChargeReport::new(
        "kink-sector",
        q1,
        Method::AsymptoticPhase,
        format!("{} dt={dt:.6} steps={steps}", grid_label(&state.grid)),
        drift,
    );
    let text = if args.out.output == "csv" {
        format!("{}\n{}", ChargeReport::csv_header(), report.to_csv_row())
    } else {
        report_json("evolve", &cfg, &report)
    };
    if !args.out.quiet {
        println!("{text}");
    }
    Ok(if drift <= tolerance { 0 } else { 2 })
}

pub fn cmd_classify(args: &ClassifyArgs) -> Exit {
    let n = match probe_dimension(args.m, args.d) {
        Ok(n) => n,
        Err(e) => {
            eprintln!("{e}");
            return Ok(64);
        }
    };
    let space: Space = match args.space.parse() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return Ok(64);
        }
    };
    let c = classify(space, n);
    let mut cfg = Config::new();
    cfg.insert("d".into(), args.d.to_string());
    cfg.insert("m".into(), args.m.to_string());
    cfg.insert("space".into(), space.to_string());
    let text = if args.out.output == "csv" {
        format!(
            "m,d,space,n,group,source\n{},{},{space},{n},{},{}",
            args.m,
            args.d,
            c.group.as_str(),
            c.source
        )
    } else {
        json_object(&[
            ("command", Val::Str("classify".into())),
            ("config_echo", echo_json(&cfg)),
            ("group", Val::Str(c.group.as_str().into())),
            ("n", Val::Num(n.to_string())),
            ("source", Val::Str(c.source.clone())),
        ])
    };
    emit(&text, &args.out.out_file, args.out.quiet)?;
    Ok(0)
}

// Accept every preset-provided key so `--config skyrme` etc. resolve; the
// constructor picks out what it needs.
const DUMP_KEYS: [&str; 11] = [
    "preset", "n", "g", "profile", "scale", "radius", "n_quad", "n_grid", "method", "formula",
    "grid",
];

pub fn cmd_dump_field(args: &DumpArgs) -> Exit {
    let mut cfg = config::resolve(&args.config, &DUMP_KEYS)?;
    config::put(&mut cfg, "n", &args.n);
    config::put(&mut cfg, "profile", &args.profile);
    config::put(&mut cfg, "scale", &args.scale);
    config::put(&mut cfg, "grid", &args.grid);

    let field = build_constructor(&cfg)?;
    let grid_spec = config::get_or(&cfg, "grid", "-2,2,21").to_string();
    cfg.insert("grid".into(), grid_spec.clone());
    let grid = parse_grid(&grid_spec, field.dim())?;
    if grid.dim() != field.dim() {
        return Err(format!(
            "grid has {} axes but the field lives in {} dimensions",
            grid.dim(),
            field.dim()
        ));
    }

    let coord_names = ["x", "y", "z", "w"];
    let mut columns: Vec<String> =
        coord_names[..field.dim()].iter().map(|s| s.to_string()).collect();
    for c in 0..field.components() {
        columns.push(format!("c{}", c + 1));
    }

    let k = field.components();
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(grid.npoints());
    let mut buf = vec![0.0f64; k];
    for p in 0..grid.npoints() {
        let idx = grid.unflat(p);
        let x = grid.point(&idx[..grid.dim()]);
        let mut row: Vec<f64> = x[..grid.dim()].to_vec();
        match field.eval(&x[..grid.dim()], &mut buf) {
            Ok(()) => row.extend_from_slice(&buf),
            // Isolated constructor singularities become nan cells.
            Err(_) => row.extend(std::iter::repeat(f64::NAN).take(k)),
        }
        rows.push(row);
    }

    let text = if args.out.output == "json" {
        let rendered: Vec<String> = rows
            .iter()
            .map(|row| {
                let cells: Vec<String> = row
                    .iter()
                    .map(|v| if v.is_nan() { "null".to_string() } else { fnum(*v) })
                    .collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        let cols: Vec<String> = columns.iter().map(|c| format!("\"{c}\"")).collect();
        json_object(&[
            ("columns", Val::Raw(format!("[{}]", cols.join(",")))),
            ("command", Val::Str("dump-field".into())),
            ("config_echo", echo_json(&cfg)),
            ("rows", Val::Raw(format!("[{}]", rendered.join(",")))),
        ])
    } else {
        let mut lines = vec![columns.join(",")];
        for row in &rows {
            let cells: Vec<String> = row.iter().map(|v| fnum(*v)).collect();
            lines.push(cells.join(","));
        }
        lines.join("\n")
    };
    emit(&text, &args.out.out_file, args.out.quiet)?;
    Ok(0)
}
