//! Topological currents, degree integrals, and quantization reports.
//!
//! For a unit field n: R^d -> S^{d-1} the current
//!
//!   J^mu = (-1)^mu det[n, d_{c1} n, ..., d_{c_{d-1}} n] / |S^{d-1}|,
//!
//! with (c1 < ... < c_{d-1}) the axes other than mu, is identically
//! divergence-free where n is smooth, and its flux through a closed
//! hypersurface counts the enclosed defects.  The determinant form is what
//! the library evaluates; the explicit epsilon-contraction is kept (3D) as
//! an independent route for tests.

use crate::error::{Error, Result};
use crate::exec;
use crate::fields::AnalyticField;
use crate::grid::{Grid, VectorField};
use crate::linalg::{det2_cols, det3_cols, det4_cols, eps3};
use crate::quadrature::{
    circle_integral, contour_phase_total, sphere3_integral, sphere_area, sphere_integral,
};
use std::cell::RefCell;
use std::f64::consts::PI;
use std::fmt;

/// How a charge was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Contour,
    SurfaceFlux,
    VolumeDensity,
    AsymptoticPhase,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Contour => "contour",
            Method::SurfaceFlux => "surface-flux",
            Method::VolumeDensity => "volume-density",
            Method::AsymptoticPhase => "asymptotic-phase",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "contour" => Ok(Method::Contour),
            "surface-flux" => Ok(Method::SurfaceFlux),
            "volume-density" => Ok(Method::VolumeDensity),
            "asymptotic-phase" => Ok(Method::AsymptoticPhase),
            _ => Err(Error::UnknownName(format!("method '{s}'"))),
        }
    }
}

/// Result of one charge computation, serializable as JSON or CSV.
#[derive(Clone, Debug)]
pub struct ChargeReport {
    pub quantity: String,
    pub value: f64,
    pub nearest_integer: i64,
    pub method: Method,
    pub grid: String,
    pub error_estimate: f64,
}

impl ChargeReport {
    pub fn new(
        quantity: &str,
        value: f64,
        method: Method,
        grid: String,
        error_estimate: f64,
    ) -> Self {
        ChargeReport {
            quantity: quantity.to_string(),
            value,
            // Round half away from zero so -1.5 reports -2.
            nearest_integer: value.round() as i64,
            method,
            grid,
            error_estimate,
        }
    }

    pub fn deviation(&self) -> f64 {
        (self.value - self.nearest_integer as f64).abs()
    }

    pub fn is_quantized(&self, tol: f64) -> bool {
        self.deviation() <= tol
    }

    /// One JSON object, keys sorted, floats at full precision.
    pub fn to_json(&self) -> String {
        format!(
            "{{\"error_estimate\":{},\"grid\":{},\"method\":{},\"nearest_integer\":{},\"quantity\":{},\"value\":{}}}",
            json_f64(self.error_estimate),
            json_str(&self.grid),
            json_str(self.method.as_str()),
            self.nearest_integer,
            json_str(&self.quantity),
            json_f64(self.value),
        )
    }

    pub fn csv_header() -> &'static str {
        "quantity,method,grid,value,nearest_integer,error_estimate"
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            csv_str(&self.quantity),
            csv_str(self.method.as_str()),
            csv_str(&self.grid),
            json_f64(self.value),
            self.nearest_integer,
            json_f64(self.error_estimate),
        )
    }
}

/// Full-precision float literal (17 significant digits, exponent form).
pub fn json_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        // JSON has no inf/nan literals; quote them.
        format!("\"{v}\"")
    }
}

fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn csv_str(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// The determinant-form current at one point; `n` has d components and
/// `jac[c][a] = d n_c / d x_a`.  Returns the d current components.
pub fn topological_current(d: usize, n: &[f64], jac: &[[f64; 4]; 4]) -> Result<[f64; 4]> {
    if n.len() < d {
        return Err(Error::ComponentMismatch { expected: d, got: n.len() });
    }
    let omega = sphere_area(d);
    let mut j = [0.0f64; 4];
    match d {
        2 => {
            let col = |a: usize| [jac[0][a], jac[1][a]];
            j[0] = det2_cols(&n[..2], &col(1)) / omega;
            j[1] = -det2_cols(&n[..2], &col(0)) / omega;
        }
        3 => {
            let col = |a: usize| [jac[0][a], jac[1][a], jac[2][a]];
            let (c0, c1, c2) = (col(0), col(1), col(2));
            j[0] = det3_cols(&n[..3], &c1, &c2) / omega;
            j[1] = -det3_cols(&n[..3], &c0, &c2) / omega;
            j[2] = det3_cols(&n[..3], &c0, &c1) / omega;
        }
        4 => {
            let col = |a: usize| [jac[0][a], jac[1][a], jac[2][a], jac[3][a]];
            let (c0, c1, c2, c3) = (col(0), col(1), col(2), col(3));
            j[0] = det4_cols([&n[..4], &c1, &c2, &c3]) / omega;
            j[1] = -det4_cols([&n[..4], &c0, &c2, &c3]) / omega;
            j[2] = det4_cols([&n[..4], &c0, &c1, &c3]) / omega;
            j[3] = -det4_cols([&n[..4], &c0, &c1, &c2]) / omega;
        }
        _ => return Err(Error::BadDimension(d)),
    }
    Ok(j)
}

/// 3D current by brute-force epsilon contraction,
/// J^mu = eps^{mu nu rho} eps_abc n_a d_nu n_b d_rho n_c / (8 pi).
/// Slow; kept as the independent oracle for [`topological_current`].
pub fn current_3d_epsilon(n: &[f64], jac: &[[f64; 4]; 4]) -> [f64; 3] {
    let mut j = [0.0f64; 3];
    for (mu, out) in j.iter_mut().enumerate() {
        let mut sum = 0.0;
        for nu in 0..3 {
            for rho in 0..3 {
                let e1 = eps3(mu, nu, rho);
                if e1 == 0.0 {
                    continue;
                }
                for a in 0..3 {
                    for b in 0..3 {
                        for c in 0..3 {
                            let e2 = eps3(a, b, c);
                            if e2 != 0.0 {
                                sum += e1 * e2 * n[a] * jac[b][nu] * jac[c][rho];
                            }
                        }
                    }
                }
            }
        }
        *out = sum / (8.0 * PI);
    }
    j
}

/// Defect-counting density d * det(jacobian) / |S^{d-1}|; equals the
/// divergence of [`topological_current`] and vanishes wherever the field is
/// smooth, leaving delta functions at the defects.
pub fn defect_density(d: usize, jac: &[[f64; 4]; 4]) -> Result<f64> {
    let det = match d {
        2 => {
            let col = |a: usize| [jac[0][a], jac[1][a]];
            det2_cols(&col(0), &col(1))
        }
        3 => {
            let col = |a: usize| [jac[0][a], jac[1][a], jac[2][a]];
            det3_cols(&col(0), &col(1), &col(2))
        }
        4 => {
            let col = |a: usize| [jac[0][a], jac[1][a], jac[2][a], jac[3][a]];
            det4_cols([&col(0), &col(1), &col(2), &col(3)])
        }
        _ => return Err(Error::BadDimension(d)),
    };
    Ok(d as f64 * det / sphere_area(d))
}

/// Current field of a sampled 1+1 configuration (axis 0 = t, axis 1 = x):
/// J^t = eps_ab n_a d_x n_b / 2 pi and J^x = -eps_ab n_a d_t n_b / 2 pi.
pub fn current_1p1(f: &VectorField) -> Result<VectorField> {
    if f.grid.dim() != 2 {
        return Err(Error::BadDimension(f.grid.dim()));
    }
    if f.k != 2 {
        return Err(Error::ComponentMismatch { expected: 2, got: f.k });
    }
    let grid = f.grid;
    let npts = grid.npoints();
    let mut data = vec![0.0f64; npts * 2];
    for p in 0..npts {
        let idx = grid.unflat(p);
        let jac = f.jacobian_at(&idx[..2]);
        let n = f.at(p);
        let j = topological_current(2, n, &jac)?;
        data[2 * p] = j[0];
        data[2 * p + 1] = j[1];
    }
    Ok(VectorField { grid, k: 2, data })
}

/// Spatial integral of J^t on one time slice of a 1+1 current field.
pub fn conserved_charge_1p1(current: &VectorField, t_index: usize) -> Result<f64> {
    let grid = current.grid;
    if grid.dim() != 2 || current.k != 2 {
        return Err(Error::BadDimension(grid.dim()));
    }
    if t_index >= grid.len_axis(0) {
        return Err(Error::AxisOutOfRange { axis: 0, dim: grid.len_axis(0) });
    }
    let nx = grid.len_axis(1);
    let h = grid.spacing(1);
    let mut q = 0.0;
    for i in 0..nx {
        let w = if i == 0 || i == nx - 1 { 0.5 } else { 1.0 };
        q += w * current.at(grid.flat(&[t_index, i]))[0];
    }
    Ok(q * h)
}

/// Total winding of the planar field's phase around a circle, by adaptively
/// refined phase accumulation.  Exactly integral up to rounding when the
/// contour closes.
pub fn winding_number(
    field: &dyn AnalyticField,
    center: &[f64; 2],
    radius: f64,
    n_quad: usize,
) -> Result<f64> {
    if field.dim() != 2 {
        return Err(Error::BadDimension(field.dim()));
    }
    let err: RefCell<Option<Error>> = RefCell::new(None);
    let total = contour_phase_total(center, radius, n_quad, |x| {
        let mut out = [0.0f64; 4];
        match field.eval(x, &mut out[..field.components()]) {
            Ok(()) => out[1].atan2(out[0]),
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    })?;
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    Ok(total / (2.0 * PI))
}

/// Current flux density through a surface element with unit normal `nrm`.
fn flux_integrand(field: &dyn AnalyticField, x: &[f64], nrm: &[f64]) -> Result<f64> {
    let d = field.dim();
    let mut n = [0.0f64; 4];
    field.eval(x, &mut n[..field.components()])?;
    let mut jac = [[0.0f64; 4]; 4];
    field.jacobian(x, &mut jac)?;
    let j = topological_current(d, &n[..d], &jac)?;
    Ok((0..d).map(|a| j[a] * nrm[a]).sum())
}

fn flux_once(field: &dyn AnalyticField, radius: f64, n_quad: usize) -> Result<f64> {
    let err: RefCell<Option<Error>> = RefCell::new(None);
    let capture = |x: &[f64], nrm: &[f64]| match flux_integrand(field, x, nrm) {
        Ok(v) => v,
        Err(e) => {
            err.borrow_mut().get_or_insert(e);
            0.0
        }
    };
    let value = match field.dim() {
        2 => circle_integral(&[0.0, 0.0], radius, n_quad, |x, n| capture(x, n)),
        3 => sphere_integral(&[0.0; 3], radius, n_quad, |x, n| capture(x, n)),
        4 => sphere3_integral(&[0.0; 4], radius, n_quad, |x, n| capture(x, n)),
        d => return Err(Error::BadDimension(d)),
    };
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    Ok(value)
}

/// Options shared by the charge drivers.
#[derive(Clone, Copy, Debug)]
pub struct ChargeOptions {
    /// Radius of the flux surface / contour; half-width of the volume cube.
    pub radius: f64,
    /// Contour center (contour methods only).
    pub center: [f64; 2],
    /// Quadrature order for surfaces and contours.
    pub n_quad: usize,
    /// Points per axis for volume grids.
    pub n_grid: usize,
}

impl Default for ChargeOptions {
    fn default() -> Self {
        ChargeOptions { radius: 2.0, center: [0.0, 0.0], n_quad: 64, n_grid: 41 }
    }
}

fn quantity_name(d: usize) -> &'static str {
    match d {
        2 => "s1-degree",
        3 => "s2-degree",
        _ => "s3-degree",
    }
}

/// Degree of the field restricted to the sphere of `radius`, by quadrature
/// of the current flux at order `n_quad`.  The error estimate compares the
/// value against a half-order quadrature of the same integral.
pub fn charge_surface_flux(field: &dyn AnalyticField, opts: &ChargeOptions) -> Result<ChargeReport> {
    let value = flux_once(field, opts.radius, opts.n_quad)?;
    let check = flux_once(field, opts.radius, (opts.n_quad / 2).max(2))?;
    let d = field.dim();
    let grid = match d {
        2 => format!("circle r={} nodes={}", opts.radius, opts.n_quad),
        3 => format!("sphere r={} gl={}", opts.radius, opts.n_quad),
        _ => format!("3-sphere r={} gl={}", opts.radius, opts.n_quad),
    };
    Ok(ChargeReport::new(
        quantity_name(d),
        value,
        Method::SurfaceFlux,
        grid,
        (value - check).abs(),
    ))
}

/// Winding number from the accumulated phase along a circle.
pub fn charge_contour(field: &dyn AnalyticField, opts: &ChargeOptions) -> Result<ChargeReport> {
    let w = winding_number(field, &opts.center, opts.radius, opts.n_quad)?;
    let w_fine = winding_number(field, &opts.center, opts.radius, opts.n_quad * 4)?;
    Ok(ChargeReport::new(
        quantity_name(2),
        w_fine,
        Method::Contour,
        format!(
            "circle c=({},{}) r={} start-nodes={}",
            opts.center[0], opts.center[1], opts.radius, opts.n_quad
        ),
        (w_fine - w).abs(),
    ))
}

/// Winding number read off at large radius, with the radius-doubling
/// difference as the error estimate.
pub fn charge_asymptotic_phase(
    field: &dyn AnalyticField,
    opts: &ChargeOptions,
) -> Result<ChargeReport> {
    let near = winding_number(field, &[0.0, 0.0], opts.radius, opts.n_quad)?;
    let far = winding_number(field, &[0.0, 0.0], 2.0 * opts.radius, opts.n_quad)?;
    Ok(ChargeReport::new(
        quantity_name(2),
        far,
        Method::AsymptoticPhase,
        format!("circles r={} and r={}", opts.radius, 2.0 * opts.radius),
        (far - near).abs(),
    ))
}

/// Charge inside the cube of half-width `radius`: lattice integral of the
/// defect density, plus the analytic flux through a small sphere that
/// excises the origin when the constructor is singular there.  Lattice
/// points where the constructor itself is singular (isolated axes) carry
/// zero density and are skipped.
pub fn charge_volume_density(
    field: &dyn AnalyticField,
    opts: &ChargeOptions,
) -> Result<ChargeReport> {
    let d = field.dim();
    let run = |n_grid: usize| -> Result<f64> {
        let grid = Grid::centered_cube(d, opts.radius, n_grid)?;
        let h: f64 = (0..d).map(|a| grid.spacing(a)).fold(0.0, f64::max);
        let eps = if field.singular_at_origin() { 3.0 * h } else { 0.0 };
        let bulk = exec::sum_indexed(grid.npoints(), |p| {
            let idx = grid.unflat(p);
            let x = grid.point(&idx[..d]);
            let r2: f64 = x[..d].iter().map(|v| v * v).sum();
            if r2 <= eps * eps {
                return 0.0;
            }
            let mut jac = [[0.0f64; 4]; 4];
            match field.jacobian(&x[..d], &mut jac) {
                Ok(()) => {
                    let rho = defect_density(d, &jac).unwrap_or(0.0);
                    rho * grid.trapezoid_weight(&idx[..d])
                }
                Err(_) => 0.0,
            }
        });
        let core = if eps > 0.0 {
            flux_once(field, eps, opts.n_quad)?
        } else {
            0.0
        };
        Ok(bulk + core)
    };
    let coarse_n = (opts.n_grid / 2).max(5) | 1;
    let coarse = run(coarse_n)?;
    let fine = run(opts.n_grid)?;
    Ok(ChargeReport::new(
        quantity_name(d),
        fine,
        Method::VolumeDensity,
        format!("cube half-width={} n={} per axis", opts.radius, opts.n_grid),
        (fine - coarse).abs(),
    ))
}

/// Compute a charge by the requested method.
pub fn charge(
    field: &dyn AnalyticField,
    method: Method,
    opts: &ChargeOptions,
) -> Result<ChargeReport> {
    match method {
        Method::Contour => charge_contour(field, opts),
        Method::SurfaceFlux => charge_surface_flux(field, opts),
        Method::VolumeDensity => charge_volume_density(field, opts),
        Method::AsymptoticPhase => charge_asymptotic_phase(field, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{Axial, Nested, Vortex};
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn determinant_current_matches_epsilon_contraction() {
        // Pure algebra: the two routes agree for arbitrary inputs, not just
        // unit fields.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n: [f64; 3] = core::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let mut jac = [[0.0f64; 4]; 4];
            for row in jac.iter_mut().take(3) {
                for v in row.iter_mut().take(3) {
                    *v = rng.gen_range(-1.0..1.0);
                }
            }
            let det_route = topological_current(3, &n, &jac).unwrap();
            let eps_route = current_3d_epsilon(&n, &jac);
            for mu in 0..3 {
                assert_relative_eq!(det_route[mu], eps_route[mu], epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn hedgehog_current_is_radial_inverse_square() {
        let field = Axial::hedgehog();
        let x = [0.8, -0.3, 1.1];
        let r2: f64 = x.iter().map(|v| v * v).sum();
        let mut n = [0.0f64; 4];
        field.eval(&x, &mut n[..3]).unwrap();
        let mut jac = [[0.0f64; 4]; 4];
        field.jacobian(&x, &mut jac).unwrap();
        let j = topological_current(3, &n[..3], &jac).unwrap();
        for a in 0..3 {
            assert_relative_eq!(
                j[a],
                x[a] / r2.sqrt() / (4.0 * PI * r2),
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn flux_counts_winding_for_each_constructor_dimension() {
        for wind in [-2i32, 1, 3] {
            let opts = ChargeOptions { n_quad: 24, ..Default::default() };
            let r2 = charge_surface_flux(&Vortex { winding: wind }, &opts).unwrap();
            assert_relative_eq!(r2.value, wind as f64, epsilon = 1e-10);
            let r3 = charge_surface_flux(&Axial { winding: wind }, &opts).unwrap();
            assert_relative_eq!(r3.value, wind as f64, epsilon = 1e-10);
            let nested = Nested::polar(4, wind).unwrap();
            let r4 = charge_surface_flux(&nested, &opts).unwrap();
            assert_relative_eq!(r4.value, wind as f64, epsilon = 1e-9);
        }
    }

    #[test]
    fn flux_is_radius_independent() {
        let field = Axial { winding: 2 };
        let a = flux_once(&field, 0.7, 32).unwrap();
        let b = flux_once(&field, 5.9, 32).unwrap();
        assert_relative_eq!(a, b, epsilon = 1e-12);
    }

    #[test]
    fn contour_winding_is_exact_for_integers() {
        for wind in [-3i32, -1, 0, 2] {
            let w = winding_number(&Vortex { winding: wind }, &[0.0, 0.0], 1.5, 16).unwrap();
            assert!((w - wind as f64).abs() < 1e-12, "winding {wind}: got {w}");
        }
        // A contour that does not enclose the defect sees zero winding.
        let w = winding_number(&Vortex { winding: 2 }, &[3.0, 0.0], 1.0, 16).unwrap();
        assert!(w.abs() < 1e-12);
    }

    #[test]
    fn volume_density_recovers_the_charge_through_the_excision_flux() {
        let opts = ChargeOptions { radius: 1.0, n_grid: 21, n_quad: 32, ..Default::default() };
        let r = charge_volume_density(&Vortex { winding: 1 }, &opts).unwrap();
        assert_relative_eq!(r.value, 1.0, epsilon = 1e-9);
        let r3 = charge_volume_density(&Axial { winding: -2 }, &opts).unwrap();
        assert_relative_eq!(r3.value, -2.0, epsilon = 1e-9);
    }

    #[test]
    fn conserved_charge_of_a_travelling_phase_front() {
        // Phase climbs by 2 pi across the line; the front moves rigidly, so
        // the slice charge is 1 at every time and the current is conserved.
        // Differencing the components (not the phase) leaves an O(h^2) bias,
        // so the charge is checked together with its refinement rate.
        let theta = |t: f64, x: f64| 2.0 * PI / (1.0 + (-2.0 * (x - 0.3 * t)).exp());
        let front = |nx: usize| -> VectorField {
            let grid = Grid::new(&[0.0, -15.0], &[1.0, 15.0], &[9, nx]).unwrap();
            let mut data = vec![0.0f64; grid.npoints() * 2];
            for p in 0..grid.npoints() {
                let idx = grid.unflat(p);
                let pt = grid.point(&idx[..2]);
                let th = theta(pt[0], pt[1]);
                data[2 * p] = th.cos();
                data[2 * p + 1] = th.sin();
            }
            VectorField { grid, k: 2, data }
        };

        let cur = current_1p1(&front(601)).unwrap();
        let mut coarse_err = 0.0f64;
        for t_idx in 0..9 {
            let q = conserved_charge_1p1(&cur, t_idx).unwrap();
            assert_relative_eq!(q, 1.0, epsilon = 5e-3);
            coarse_err = coarse_err.max((q - 1.0).abs());
        }
        let fine = current_1p1(&front(1201)).unwrap();
        let fine_err = (conserved_charge_1p1(&fine, 0).unwrap() - 1.0).abs();
        let ratio = coarse_err / fine_err;
        assert!(
            (2.5..6.0).contains(&ratio),
            "second-order refinement expected: {coarse_err} -> {fine_err} (ratio {ratio})"
        );
        // Divergence vanishes to stencil accuracy in the interior.
        let mut worst = 0.0f64;
        for it in 1..8 {
            for ix in 1..600 {
                let div = cur.partial(&[it, ix], 0, 0) + cur.partial(&[it, ix], 1, 1);
                worst = worst.max(div.abs());
            }
        }
        assert!(worst < 1e-3, "max divergence {worst}");
    }

    #[test]
    fn report_serialization_is_stable() {
        // 2^-6 keeps the golden strings exact in binary.
        let rep = ChargeReport::new(
            "s1-degree",
            2.0,
            Method::SurfaceFlux,
            "circle r=2 nodes=64".into(),
            0.015625,
        );
        assert_eq!(
            rep.to_json(),
            "{\"error_estimate\":1.5625000000000000e-2,\"grid\":\"circle r=2 nodes=64\",\
             \"method\":\"surface-flux\",\"nearest_integer\":2,\"quantity\":\"s1-degree\",\
             \"value\":2.0000000000000000e0}"
        );
        assert_eq!(
            rep.to_csv_row(),
            "s1-degree,surface-flux,circle r=2 nodes=64,2.0000000000000000e0,2,1.5625000000000000e-2"
        );
        assert!(rep.is_quantized(1e-9));
        let half = ChargeReport::new("s1-degree", -1.5, Method::Contour, String::new(), 0.0);
        assert_eq!(half.nearest_integer, -2);
    }
}
