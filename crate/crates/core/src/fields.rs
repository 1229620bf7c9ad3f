//! Analytic unit-field constructors.
//!
//! Each constructor evaluates the field and, where the closed form is
//! available, its exact Jacobian; the default Jacobian falls back to central
//! differences.  Surface and contour quadrature sample these constructors
//! directly, so charge integrals are limited by quadrature error rather than
//! lattice interpolation.
//!
//! Conventions: `phi = atan2(y, x)` is the azimuth, `theta` the polar angle
//! measured from the last axis of the relevant subspace.  Points on a
//! constructor's singular set report [`Error::SingularPoint`] instead of NaN.

use crate::error::{Error, Result};
use crate::grid::{Grid, VectorField};
use crate::profiles::Profile;

/// A smooth map from a d-dimensional domain into unit vectors of R^k,
/// with k, d <= 4.
pub trait AnalyticField: Sync {
    /// Domain dimension.
    fn dim(&self) -> usize;
    /// Number of components (the field lives on S^{k-1}).
    fn components(&self) -> usize;
    /// Field value; `out[..components()]` is filled.
    fn eval(&self, x: &[f64], out: &mut [f64]) -> Result<()>;
    /// Jacobian `jac[c][a] = d n_c / d x_a`.  Default: central differences.
    fn jacobian(&self, x: &[f64], jac: &mut [[f64; 4]; 4]) -> Result<()> {
        fd_jacobian(self, x, jac)
    }
    /// Whether the field is singular at the coordinate origin (charges
    /// integrated as volume densities then need an exclusion ball).
    fn singular_at_origin(&self) -> bool {
        false
    }
}

/// Central-difference Jacobian with a scale-aware step.
pub fn fd_jacobian<F: AnalyticField + ?Sized>(
    field: &F,
    x: &[f64],
    jac: &mut [[f64; 4]; 4],
) -> Result<()> {
    let d = field.dim();
    let k = field.components();
    let scale = 1.0 + x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let h = f64::EPSILON.cbrt() * scale;
    let mut xp = [0.0f64; 4];
    let mut plus = [0.0f64; 4];
    let mut minus = [0.0f64; 4];
    for a in 0..d {
        xp[..d].copy_from_slice(&x[..d]);
        xp[a] = x[a] + h;
        field.eval(&xp[..d], &mut plus[..k])?;
        xp[a] = x[a] - h;
        field.eval(&xp[..d], &mut minus[..k])?;
        for c in 0..k {
            jac[c][a] = (plus[c] - minus[c]) / (2.0 * h);
        }
    }
    Ok(())
}

/// Sample an analytic field on a grid.  Fails if the grid touches the
/// field's singular set.
pub fn sample(field: &dyn AnalyticField, grid: Grid) -> Result<VectorField> {
    if grid.dim() != field.dim() {
        return Err(Error::BadDimension(grid.dim()));
    }
    let k = field.components();
    let npts = grid.npoints();
    let mut data = vec![0.0f64; npts * k];
    for p in 0..npts {
        let idx = grid.unflat(p);
        let x = grid.point(&idx[..grid.dim()]);
        let mut out = [0.0f64; 4];
        field.eval(&x[..grid.dim()], &mut out[..k])?;
        data[p * k..p * k + k].copy_from_slice(&out[..k]);
    }
    Ok(VectorField { grid, k, data })
}

/// Planar winding field (cos N phi, sin N phi).
#[derive(Clone, Copy, Debug)]
pub struct Vortex {
    pub winding: i32,
}

impl AnalyticField for Vortex {
    fn dim(&self) -> usize {
        2
    }
    fn components(&self) -> usize {
        2
    }
    fn eval(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        if x[0] == 0.0 && x[1] == 0.0 {
            return Err(Error::SingularPoint);
        }
        let nphi = self.winding as f64 * x[1].atan2(x[0]);
        out[0] = nphi.cos();
        out[1] = nphi.sin();
        Ok(())
    }
    fn jacobian(&self, x: &[f64], jac: &mut [[f64; 4]; 4]) -> Result<()> {
        let rho2 = x[0] * x[0] + x[1] * x[1];
        if rho2 == 0.0 {
            return Err(Error::SingularPoint);
        }
        let nf = self.winding as f64;
        let nphi = nf * x[1].atan2(x[0]);
        let (s, c) = nphi.sin_cos();
        let dphi = [-x[1] / rho2, x[0] / rho2];
        for a in 0..2 {
            jac[0][a] = -nf * s * dphi[a];
            jac[1][a] = nf * c * dphi[a];
        }
        Ok(())
    }
    fn singular_at_origin(&self) -> bool {
        true
    }
}

/// Three-component winding field
/// (sin theta cos N phi, sin theta sin N phi, cos theta)
/// with theta, phi the spherical angles of the point.  `winding = 1` is the
/// hedgehog n = x/r, which is regular away from the origin; other windings
/// are additionally singular on the polar axis.
#[derive(Clone, Copy, Debug)]
pub struct Axial {
    pub winding: i32,
}

impl Axial {
    pub fn hedgehog() -> Self {
        Axial { winding: 1 }
    }
}

impl AnalyticField for Axial {
    fn dim(&self) -> usize {
        3
    }
    fn components(&self) -> usize {
        3
    }
    fn eval(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        if r2 == 0.0 {
            return Err(Error::SingularPoint);
        }
        let r = r2.sqrt();
        if self.winding == 1 {
            out[0] = x[0] / r;
            out[1] = x[1] / r;
            out[2] = x[2] / r;
            return Ok(());
        }
        let rho = (x[0] * x[0] + x[1] * x[1]).sqrt();
        if rho == 0.0 {
            // Continuous limit on the axis for any winding.
            out[0] = 0.0;
            out[1] = 0.0;
            out[2] = x[2].signum();
            return Ok(());
        }
        let nphi = self.winding as f64 * x[1].atan2(x[0]);
        let (sp, cp) = nphi.sin_cos();
        let st = rho / r;
        out[0] = st * cp;
        out[1] = st * sp;
        out[2] = x[2] / r;
        Ok(())
    }
    fn jacobian(&self, x: &[f64], jac: &mut [[f64; 4]; 4]) -> Result<()> {
        let r2: f64 = x[..3].iter().map(|v| v * v).sum();
        if r2 == 0.0 {
            return Err(Error::SingularPoint);
        }
        let r = r2.sqrt();
        if self.winding == 1 {
            for c in 0..3 {
                for a in 0..3 {
                    let delta = if c == a { 1.0 } else { 0.0 };
                    jac[c][a] = (delta - x[c] * x[a] / r2) / r;
                }
            }
            return Ok(());
        }
        let rho2 = x[0] * x[0] + x[1] * x[1];
        if rho2 == 0.0 {
            return Err(Error::SingularPoint);
        }
        let rho = rho2.sqrt();
        let nf = self.winding as f64;
        let nphi = nf * x[1].atan2(x[0]);
        let (sp, cp) = nphi.sin_cos();
        let (st, ct) = (rho / r, x[2] / r);
        let dtheta = [
            x[2] * x[0] / (r2 * rho),
            x[2] * x[1] / (r2 * rho),
            -rho / r2,
        ];
        let dphi = [-x[1] / rho2, x[0] / rho2, 0.0];
        for a in 0..3 {
            jac[0][a] = ct * cp * dtheta[a] - nf * st * sp * dphi[a];
            jac[1][a] = ct * sp * dtheta[a] + nf * st * cp * dphi[a];
            jac[2][a] = -st * dtheta[a];
        }
        Ok(())
    }
    fn singular_at_origin(&self) -> bool {
        true
    }
}

/// How one recursion level of [`Nested`] obtains its angle.
#[derive(Clone, Copy, Debug)]
pub enum AngleSpec {
    /// Polar angle of the point within the level's subspace.
    Polar,
    /// Radial profile of the level's sub-radius.
    Radial(Profile),
}

/// Recursive unit field on R^d (d = 2 + levels): each level wraps the
/// previous field as (sin w * inner, cos w), starting from a planar winding
/// field.  All-polar levels give the degree-N generalization of the
/// hedgehog to higher dimensions.
#[derive(Clone, Debug)]
pub struct Nested {
    pub winding: i32,
    pub levels: Vec<AngleSpec>,
}

impl Nested {
    /// The all-polar construction in dimension d (2, 3, or 4).
    pub fn polar(d: usize, winding: i32) -> Result<Self> {
        if !(2..=4).contains(&d) {
            return Err(Error::BadDimension(d));
        }
        Ok(Nested {
            winding,
            levels: vec![AngleSpec::Polar; d - 2],
        })
    }

    fn eval_rec(&self, nlev: usize, x: &[f64], out: &mut [f64]) -> Result<()> {
        if nlev == 0 {
            return Vortex { winding: self.winding }.eval(x, out);
        }
        let d = 2 + nlev;
        let (s, c) = self.angle_sincos(nlev - 1, &x[..d])?;
        self.eval_rec(nlev - 1, &x[..d - 1], out)?;
        for v in out.iter_mut().take(d - 1) {
            *v *= s;
        }
        out[d - 1] = c;
        Ok(())
    }

    fn angle_sincos(&self, level: usize, x: &[f64]) -> Result<(f64, f64)> {
        let d = x.len();
        let r2: f64 = x.iter().map(|v| v * v).sum();
        if r2 == 0.0 {
            return Err(Error::SingularPoint);
        }
        match self.levels[level] {
            AngleSpec::Polar => {
                let r = r2.sqrt();
                let rho = (r2 - x[d - 1] * x[d - 1]).max(0.0).sqrt();
                Ok((rho / r, x[d - 1] / r))
            }
            AngleSpec::Radial(p) => {
                let w = p.value(r2.sqrt());
                Ok((w.sin(), w.cos()))
            }
        }
    }

    fn jac_rec(
        &self,
        nlev: usize,
        x: &[f64],
        val: &mut [f64],
        jac: &mut [[f64; 4]; 4],
    ) -> Result<()> {
        if nlev == 0 {
            Vortex { winding: self.winding }.eval(x, val)?;
            return Vortex { winding: self.winding }.jacobian(x, jac);
        }
        let d = 2 + nlev;
        let mut inner_jac = [[0.0f64; 4]; 4];
        self.jac_rec(nlev - 1, &x[..d - 1], val, &mut inner_jac)?;
        let (s, c) = self.angle_sincos(nlev - 1, &x[..d])?;

        // Gradients of sin w and cos w over all d coordinates.
        let mut ds = [0.0f64; 4];
        let mut dc = [0.0f64; 4];
        let r2: f64 = x[..d].iter().map(|v| v * v).sum();
        let r = r2.sqrt();
        match self.levels[nlev - 1] {
            AngleSpec::Polar => {
                let q = x[d - 1];
                let rho2 = (r2 - q * q).max(0.0);
                let rho = rho2.sqrt();
                if rho == 0.0 {
                    return Err(Error::SingularPoint);
                }
                let r3 = r2 * r;
                for a in 0..d - 1 {
                    ds[a] = x[a] * q * q / (rho * r3);
                    dc[a] = -q * x[a] / r3;
                }
                ds[d - 1] = -rho * q / r3;
                dc[d - 1] = rho2 / r3;
            }
            AngleSpec::Radial(p) => {
                let wp = p.deriv(r);
                for a in 0..d {
                    ds[a] = c * wp * x[a] / r;
                    dc[a] = -s * wp * x[a] / r;
                }
            }
        }

        for i in 0..d - 1 {
            for a in 0..d {
                let inner = if a < d - 1 { inner_jac[i][a] } else { 0.0 };
                jac[i][a] = ds[a] * val[i] + s * inner;
            }
        }
        for a in 0..d {
            jac[d - 1][a] = dc[a];
        }
        // Update values to this level's field.
        for v in val.iter_mut().take(d - 1) {
            *v *= s;
        }
        val[d - 1] = c;
        Ok(())
    }
}

impl AnalyticField for Nested {
    fn dim(&self) -> usize {
        2 + self.levels.len()
    }
    fn components(&self) -> usize {
        self.dim()
    }
    fn eval(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        self.eval_rec(self.levels.len(), x, out)
    }
    fn jacobian(&self, x: &[f64], jac: &mut [[f64; 4]; 4]) -> Result<()> {
        let mut val = [0.0f64; 4];
        self.jac_rec(self.levels.len(), x, &mut val, jac)
    }
    fn singular_at_origin(&self) -> bool {
        true
    }
}

/// Four-component field over R^3 built from a radial angle profile `omega`
/// around an embedded [`Axial`] field:
/// n = (sin omega(r) * m(x), cos omega(r)).
///
/// With omega(0) = pi and omega(inf) = 0 (the library's `skyrme-*` profiles)
/// the map is smooth at the origin for winding 1 and extends continuously
/// to r = 0 as (0, 0, 0, -1).
#[derive(Clone, Copy, Debug)]
pub struct SkyrmeU {
    pub winding: i32,
    pub omega: Profile,
}

impl SkyrmeU {
    const TINY_R: f64 = 1e-14;
}

impl AnalyticField for SkyrmeU {
    fn dim(&self) -> usize {
        3
    }
    fn components(&self) -> usize {
        4
    }
    fn eval(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        let r2: f64 = x[..3].iter().map(|v| v * v).sum();
        let r = r2.sqrt();
        if r < Self::TINY_R {
            out[0] = 0.0;
            out[1] = 0.0;
            out[2] = 0.0;
            out[3] = self.omega.at_zero().cos();
            return Ok(());
        }
        let (s, c) = self.omega.value(r).sin_cos();
        let mut m = [0.0f64; 4];
        Axial { winding: self.winding }.eval(x, &mut m[..3])?;
        out[0] = s * m[0];
        out[1] = s * m[1];
        out[2] = s * m[2];
        out[3] = c;
        Ok(())
    }
    fn jacobian(&self, x: &[f64], jac: &mut [[f64; 4]; 4]) -> Result<()> {
        let r2: f64 = x[..3].iter().map(|v| v * v).sum();
        let r = r2.sqrt();
        if r < Self::TINY_R {
            // sin omega(r)/r -> cos(omega(0)) * omega'(0); finite because
            // sin(omega(0)) = 0 for boundary-respecting profiles.
            let slope = self.omega.at_zero().cos() * self.omega.deriv(0.0);
            for c in 0..4 {
                for a in 0..3 {
                    jac[c][a] = if c == a { slope } else { 0.0 };
                }
            }
            return Ok(());
        }
        let w = self.omega.value(r);
        let wp = self.omega.deriv(r);
        let (s, c) = w.sin_cos();
        let axial = Axial { winding: self.winding };
        let mut m = [0.0f64; 4];
        axial.eval(x, &mut m[..3])?;
        let mut jm = [[0.0f64; 4]; 4];
        axial.jacobian(x, &mut jm)?;
        for a in 0..3 {
            let rhat_a = x[a] / r;
            for ci in 0..3 {
                jac[ci][a] = c * wp * rhat_a * m[ci] + s * jm[ci][a];
            }
            jac[3][a] = -s * wp * rhat_a;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_unit(field: &dyn AnalyticField, x: &[f64]) {
        let mut out = [0.0f64; 4];
        field.eval(x, &mut out[..field.components()]).unwrap();
        let norm2: f64 = out[..field.components()].iter().map(|v| v * v).sum();
        assert!((norm2 - 1.0).abs() < 1e-12, "|n|^2 = {norm2} at {x:?}");
    }

    fn check_jacobian(field: &dyn AnalyticField, x: &[f64], tol: f64) {
        let mut exact = [[0.0f64; 4]; 4];
        field.jacobian(x, &mut exact).unwrap();
        let mut fd = [[0.0f64; 4]; 4];
        fd_jacobian(field, x, &mut fd).unwrap();
        for c in 0..field.components() {
            for a in 0..field.dim() {
                assert!(
                    (exact[c][a] - fd[c][a]).abs() < tol,
                    "jac[{c}][{a}]: exact {} vs fd {} at {x:?}",
                    exact[c][a],
                    fd[c][a]
                );
            }
        }
    }

    #[test]
    fn vortex_values_at_cardinal_points() {
        let mut out = [0.0f64; 2];
        Vortex { winding: 1 }.eval(&[1.0, 0.0], &mut out).unwrap();
        assert_relative_eq!(out[0], 1.0, epsilon = 1e-15);
        assert_relative_eq!(out[1], 0.0, epsilon = 1e-15);
        Vortex { winding: 1 }.eval(&[0.0, 1.0], &mut out).unwrap();
        assert_relative_eq!(out[0], 0.0, epsilon = 1e-15);
        assert_relative_eq!(out[1], 1.0, epsilon = 1e-15);
        // winding 2 doubles the phase: at phi = pi/2 the field points to -x.
        Vortex { winding: 2 }.eval(&[0.0, 1.0], &mut out).unwrap();
        assert_relative_eq!(out[0], -1.0, epsilon = 1e-15);
        assert!(out[1].abs() < 1e-15);
    }

    #[test]
    fn vortex_origin_is_singular() {
        let mut out = [0.0f64; 2];
        assert!(Vortex { winding: 1 }.eval(&[0.0, 0.0], &mut out).is_err());
    }

    #[test]
    fn axial_equator_value() {
        // theta = pi/2, phi = pi/4, winding 2: azimuth doubles to pi/2.
        let p = [(0.25f64 * std::f64::consts::PI).cos(), (0.25f64 * std::f64::consts::PI).sin(), 0.0];
        let mut out = [0.0f64; 3];
        Axial { winding: 2 }.eval(&p, &mut out).unwrap();
        assert!(out[0].abs() < 1e-15);
        assert_relative_eq!(out[1], 1.0, epsilon = 1e-15);
        assert!(out[2].abs() < 1e-15);
    }

    #[test]
    fn hedgehog_is_radial_unit_vector() {
        let x = [0.3, -1.2, 2.2];
        let r: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut out = [0.0f64; 3];
        Axial::hedgehog().eval(&x, &mut out).unwrap();
        for c in 0..3 {
            assert_relative_eq!(out[c], x[c] / r, epsilon = 1e-15);
        }
    }

    #[test]
    fn constructors_stay_on_the_unit_sphere() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let nested4 = Nested::polar(4, 3).unwrap();
        let sky = SkyrmeU { winding: 1, omega: Profile::SkyrmeExp { a: 1.0 } };
        for _ in 0..200 {
            let p: [f64; 4] = [
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            ];
            check_unit(&Vortex { winding: -2 }, &p[..2]);
            check_unit(&Axial { winding: 3 }, &p[..3]);
            check_unit(&nested4, &p);
            check_unit(&sky, &p[..3]);
        }
    }

    #[test]
    fn exact_jacobians_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let nested4 = Nested::polar(4, -2).unwrap();
        let mixed = Nested {
            winding: 1,
            levels: vec![AngleSpec::Radial(Profile::SkyrmeExp { a: 1.0 })],
        };
        let sky = SkyrmeU { winding: 1, omega: Profile::SkyrmeArctan { a: 0.8 } };
        for _ in 0..50 {
            let p: [f64; 4] = [
                rng.gen_range(0.3..1.5),
                rng.gen_range(0.3..1.5),
                rng.gen_range(0.3..1.5),
                rng.gen_range(0.3..1.5),
            ];
            check_jacobian(&Vortex { winding: 3 }, &p[..2], 1e-7);
            check_jacobian(&Axial { winding: 1 }, &p[..3], 1e-7);
            check_jacobian(&Axial { winding: -2 }, &p[..3], 1e-6);
            check_jacobian(&nested4, &p, 1e-6);
            check_jacobian(&mixed, &p[..3], 1e-6);
            check_jacobian(&sky, &p[..3], 1e-6);
        }
    }

    #[test]
    fn nested_polar_3d_matches_axial() {
        let nested = Nested::polar(3, 2).unwrap();
        let axial = Axial { winding: 2 };
        let x = [0.4, -0.9, 0.7];
        let mut a = [0.0f64; 4];
        let mut b = [0.0f64; 4];
        nested.eval(&x, &mut a[..3]).unwrap();
        axial.eval(&x, &mut b[..3]).unwrap();
        for c in 0..3 {
            assert_relative_eq!(a[c], b[c], epsilon = 1e-14);
        }
    }

    #[test]
    fn nested_polar_4d_degree_one_is_radial() {
        let nested = Nested::polar(4, 1).unwrap();
        let x = [0.3, -0.4, 1.1, 0.6];
        let r: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut out = [0.0f64; 4];
        nested.eval(&x, &mut out).unwrap();
        for c in 0..4 {
            assert_relative_eq!(out[c], x[c] / r, epsilon = 1e-14);
        }
    }

    #[test]
    fn nested_radial_level_matches_recursive_closed_form() {
        let omega = Profile::SkyrmeExp { a: 1.0 };
        let field = Nested { winding: 2, levels: vec![AngleSpec::Radial(omega)] };
        let x = [0.5, 0.4, -0.8];
        let r: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let w = omega.value(r);
        let phi = x[1].atan2(x[0]);
        let mut out = [0.0f64; 3];
        field.eval(&x, &mut out).unwrap();
        assert_relative_eq!(out[0], w.sin() * (2.0 * phi).cos(), epsilon = 1e-14);
        assert_relative_eq!(out[1], w.sin() * (2.0 * phi).sin(), epsilon = 1e-14);
        assert_relative_eq!(out[2], w.cos(), epsilon = 1e-14);
    }

    #[test]
    fn skyrme_field_is_smooth_through_the_origin() {
        let sky = SkyrmeU { winding: 1, omega: Profile::SkyrmeExp { a: 1.0 } };
        let mut out = [0.0f64; 4];
        sky.eval(&[0.0, 0.0, 0.0], &mut out).unwrap();
        assert_eq!(out, [0.0, 0.0, 0.0, -1.0]);
        // Values just off the origin approach the same limit.
        sky.eval(&[1e-9, -1e-9, 1e-9], &mut out).unwrap();
        assert!(out[3] + 1.0 < 1e-12);
        // Jacobian limit: -omega'(0) * identity on the vector part.
        let mut jac = [[0.0f64; 4]; 4];
        sky.jacobian(&[0.0, 0.0, 0.0], &mut jac).unwrap();
        assert_relative_eq!(jac[0][0], std::f64::consts::PI, epsilon = 1e-12);
        let mut jac_near = [[0.0f64; 4]; 4];
        sky.jacobian(&[1e-7, 0.0, 0.0], &mut jac_near).unwrap();
        assert_relative_eq!(jac[0][0], jac_near[0][0], max_relative = 1e-5);
        assert_relative_eq!(jac[1][1], jac_near[1][1], max_relative = 1e-5);
    }

    #[test]
    fn sampling_respects_grid_and_unit_norm() {
        let grid = Grid::new(&[0.5, 0.5, 0.5], &[2.0, 2.0, 2.0], &[6, 6, 6]).unwrap();
        let vf = sample(&Axial::hedgehog(), grid).unwrap();
        assert!(vf.max_unit_defect() < 1e-12);
        let bad = Grid::centered_cube(3, 1.0, 5).unwrap(); // contains the origin
        assert!(sample(&Axial::hedgehog(), bad).is_err());
    }
}
