//! Gauged Higgs-triplet configurations and their magnetic structure.
//!
//! A configuration pairs a winding direction field n (the Higgs direction),
//! a radial Higgs magnitude F(r), and a radial gauge profile W(r):
//!
//!   phi^a   = F(r) n_a,
//!   A^a_i   = W(r) eps_{aib} n_b,
//!
//! where the gauge orientation is chosen so the vector potential cancels the
//! angular gradient of n at large radius: the covariant derivative of the
//! hedgehog direction is (1/r - g W)(delta - rr), which decays exponentially
//! for the library's `gauge-bps` profile.
//!
//! The abelian (electromagnetic-like) tensor is evaluated two ways:
//!
//!   F_ij = (1/g) eps_abc n_a (D_i n)_b (D_j n)_c - n_a G^a_ij
//!        = (1/g) eps_abc n_a d_i n_b d_j n_c - (d_i C_j - d_j C_i),
//!
//! with C_i = n_a A^a_i; the two lines agree identically for any gauge
//! field whenever |n| = 1.  The overall orientation is fixed so that a
//! positive Higgs winding carries positive magnetic charge: the magnetic
//! field B^k = eps^{kij} F_ij / 2 of a winding-N configuration has total
//! flux 4 pi N / g through every enclosing sphere, i.e. m = N / g.

use crate::charges::{ChargeReport, Method};
use crate::error::{Error, Result};
use crate::fields::{AnalyticField, Axial};
use crate::linalg::{eps3, Mat3, MAT3_ZERO};
use crate::profiles::Profile;
use crate::quadrature::sphere_integral;
use std::cell::RefCell;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug)]
pub struct GaugeConfig {
    pub winding: i32,
    /// Gauge coupling g > 0.
    pub coupling: f64,
    /// Higgs magnitude profile F(r).
    pub higgs: Profile,
    /// Gauge profile W(r).
    pub gauge: Profile,
}

impl GaugeConfig {
    /// The standard smooth configuration: tanh Higgs core and the
    /// exponentially saturating gauge profile for this coupling.
    pub fn standard(winding: i32, coupling: f64, scale: f64, amplitude: f64) -> Result<Self> {
        if coupling <= 0.0 || !coupling.is_finite() {
            return Err(Error::Invalid(format!("coupling g = {coupling}")));
        }
        Ok(GaugeConfig {
            winding,
            coupling,
            higgs: Profile::HiggsTanh { f: amplitude, a: scale },
            gauge: Profile::GaugeBps { g: coupling, a: scale },
        })
    }

    fn direction(&self) -> Axial {
        Axial { winding: self.winding }
    }

    /// Direction field value and Jacobian at `x`.
    fn frame(&self, x: &[f64; 3]) -> Result<([f64; 3], Mat3)> {
        let dir = self.direction();
        let mut n4 = [0.0f64; 4];
        dir.eval(x, &mut n4[..3])?;
        let mut jac = [[0.0f64; 4]; 4];
        dir.jacobian(x, &mut jac)?;
        let mut dn = MAT3_ZERO;
        for a in 0..3 {
            for i in 0..3 {
                dn[a][i] = jac[a][i];
            }
        }
        Ok(([n4[0], n4[1], n4[2]], dn))
    }

    /// phi^a = F(r) n_a.
    pub fn higgs_at(&self, x: &[f64; 3]) -> Result<[f64; 3]> {
        let (n, _) = self.frame(x)?;
        let r = norm3(x);
        let f = self.higgs.value(r);
        Ok([f * n[0], f * n[1], f * n[2]])
    }

    /// A[a][i] = W(r) eps_{aib} n_b.
    pub fn gauge_at(&self, x: &[f64; 3]) -> Result<Mat3> {
        let (n, _) = self.frame(x)?;
        let w = self.gauge.value(norm3(x));
        let mut a_mat = MAT3_ZERO;
        for a in 0..3 {
            for i in 0..3 {
                let mut s = 0.0;
                for b in 0..3 {
                    s += eps3(a, i, b) * n[b];
                }
                a_mat[a][i] = w * s;
            }
        }
        Ok(a_mat)
    }

    /// d_i A^a_j, exact through the profile and direction Jacobians.
    fn gauge_gradient(&self, x: &[f64; 3]) -> Result<[Mat3; 3]> {
        let (n, dn) = self.frame(x)?;
        let r = norm3(x);
        let w = self.gauge.value(r);
        let wp = self.gauge.deriv(r);
        let mut grad = [MAT3_ZERO; 3]; // grad[i][a][j] = d_i A^a_j
        for i in 0..3 {
            let rhat_i = x[i] / r;
            for a in 0..3 {
                for j in 0..3 {
                    let mut s = 0.0;
                    for b in 0..3 {
                        s += eps3(a, j, b) * (wp * rhat_i * n[b] + w * dn[b][i]);
                    }
                    grad[i][a][j] = s;
                }
            }
        }
        Ok(grad)
    }

    /// Covariant derivative of the unit direction,
    /// (D_i n)_a = d_i n_a + g eps_abc A^b_i n_c; columns indexed by i.
    pub fn covariant_direction(&self, x: &[f64; 3]) -> Result<Mat3> {
        let (n, dn) = self.frame(x)?;
        let a_mat = self.gauge_at(x)?;
        Ok(covariant_of(&n, &dn, &a_mat, self.coupling, &n))
    }

    /// Covariant derivative of the Higgs field,
    /// (D_i phi)_a = d_i phi_a + g eps_abc A^b_i phi_c.
    pub fn covariant_higgs(&self, x: &[f64; 3]) -> Result<Mat3> {
        let (n, dn) = self.frame(x)?;
        let r = norm3(x);
        let f = self.higgs.value(r);
        let fp = self.higgs.deriv(r);
        // d_i phi_a = F' rhat_i n_a + F d_i n_a
        let mut dphi = MAT3_ZERO;
        for a in 0..3 {
            for i in 0..3 {
                dphi[a][i] = fp * x[i] / r * n[a] + f * dn[a][i];
            }
        }
        let phi = [f * n[0], f * n[1], f * n[2]];
        let a_mat = self.gauge_at(x)?;
        Ok(covariant_of(&phi, &dphi, &a_mat, self.coupling, &phi))
    }

    /// Plain gradient of the Higgs field (for decay comparisons).
    pub fn higgs_gradient(&self, x: &[f64; 3]) -> Result<Mat3> {
        let (n, dn) = self.frame(x)?;
        let r = norm3(x);
        let f = self.higgs.value(r);
        let fp = self.higgs.deriv(r);
        let mut dphi = MAT3_ZERO;
        for a in 0..3 {
            for i in 0..3 {
                dphi[a][i] = fp * x[i] / r * n[a] + f * dn[a][i];
            }
        }
        Ok(dphi)
    }

    /// Nonabelian field tensor G^a_ij = d_i A^a_j - d_j A^a_i
    /// + g eps_abc A^b_i A^c_j, as three antisymmetric matrices indexed a.
    pub fn field_tensor(&self, x: &[f64; 3]) -> Result<[Mat3; 3]> {
        let grad = self.gauge_gradient(x)?;
        let a_mat = self.gauge_at(x)?;
        let g = self.coupling;
        let mut gt = [MAT3_ZERO; 3];
        for a in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    let mut s = grad[i][a][j] - grad[j][a][i];
                    for b in 0..3 {
                        for c in 0..3 {
                            let e = eps3(a, b, c);
                            if e != 0.0 {
                                s += g * e * a_mat[b][i] * a_mat[c][j];
                            }
                        }
                    }
                    gt[a][i][j] = s;
                }
            }
        }
        Ok(gt)
    }

    /// Abelian tensor from the covariant route:
    /// F_ij = (1/g) eps_abc n_a (D_i n)_b (D_j n)_c - n_a G^a_ij.
    pub fn thooft_tensor(&self, x: &[f64; 3]) -> Result<Mat3> {
        let (n, _) = self.frame(x)?;
        let dcov = self.covariant_direction(x)?;
        let gt = self.field_tensor(x)?;
        let g = self.coupling;
        let mut f = MAT3_ZERO;
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for a in 0..3 {
                    for b in 0..3 {
                        for c in 0..3 {
                            let e = eps3(a, b, c);
                            if e != 0.0 {
                                s += e * n[a] * dcov[b][i] * dcov[c][j] / g;
                            }
                        }
                    }
                    s -= n[a] * gt[a][i][j];
                }
                f[i][j] = s;
            }
        }
        Ok(f)
    }

    /// Same tensor through the abelian decomposition:
    /// F_ij = (1/g) eps_abc n_a d_i n_b d_j n_c - (d_i C_j - d_j C_i)
    /// with C_i = n_a A^a_i.  Identical to [`Self::thooft_tensor`] for any
    /// gauge profile; kept as the independent route.
    pub fn thooft_abelian(&self, x: &[f64; 3]) -> Result<Mat3> {
        let (n, dn) = self.frame(x)?;
        let a_mat = self.gauge_at(x)?;
        let grad = self.gauge_gradient(x)?;
        let g = self.coupling;
        // d_i C_j = d_i n_a A^a_j + n_a d_i A^a_j
        let mut dc = MAT3_ZERO;
        for i in 0..3 {
            for j in 0..3 {
                for a in 0..3 {
                    dc[i][j] += dn[a][i] * a_mat[a][j] + n[a] * grad[i][a][j];
                }
            }
        }
        let mut f = MAT3_ZERO;
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for a in 0..3 {
                    for b in 0..3 {
                        for c in 0..3 {
                            let e = eps3(a, b, c);
                            if e != 0.0 {
                                s += e * n[a] * dn[b][i] * dn[c][j] / g;
                            }
                        }
                    }
                }
                f[i][j] = s - (dc[i][j] - dc[j][i]);
            }
        }
        Ok(f)
    }

    /// B^k = eps^{kij} F_ij / 2.
    pub fn magnetic_field(&self, x: &[f64; 3]) -> Result<[f64; 3]> {
        let f = self.thooft_tensor(x)?;
        Ok([
            f[1][2] - f[2][1],
            f[2][0] - f[0][2],
            f[0][1] - f[1][0],
        ]
        .map(|v| 0.5 * v))
    }

    /// Central-difference divergence of the magnetic field at spacing `h`.
    pub fn divergence_b(&self, x: &[f64; 3], h: f64) -> Result<f64> {
        let mut div = 0.0;
        for k in 0..3 {
            let mut xp = *x;
            xp[k] = x[k] + h;
            let bp = self.magnetic_field(&xp)?[k];
            xp[k] = x[k] - h;
            let bm = self.magnetic_field(&xp)?[k];
            div += (bp - bm) / (2.0 * h);
        }
        Ok(div)
    }

    /// Pointlike topological density j0 = 3 det(dn) / 4 pi, which vanishes
    /// wherever the direction field is smooth (the image is 2-dimensional,
    /// so the spatial Jacobian is rank-deficient).
    pub fn topological_density(&self, x: &[f64; 3]) -> Result<f64> {
        let (_, dn) = self.frame(x)?;
        Ok(3.0 / (4.0 * PI) * crate::linalg::mat3_det(&dn))
    }

    /// Total magnetic flux through the sphere of `radius`.
    pub fn magnetic_flux(&self, radius: f64, n_quad: usize) -> Result<f64> {
        let err: RefCell<Option<Error>> = RefCell::new(None);
        let flux = sphere_integral(&[0.0; 3], radius, n_quad, |x, nrm| {
            match self.magnetic_field(x) {
                Ok(b) => b[0] * nrm[0] + b[1] * nrm[1] + b[2] * nrm[2],
                Err(e) => {
                    err.borrow_mut().get_or_insert(e);
                    0.0
                }
            }
        });
        if let Some(e) = err.into_inner() {
            return Err(e);
        }
        Ok(flux)
    }

    /// Quantization report: g/(4 pi) times the magnetic flux, which is the
    /// Higgs winding N; the monopole charge itself is value / g = N / g.
    pub fn charge_report(&self, radius: f64, n_quad: usize) -> Result<ChargeReport> {
        let coarse = self.magnetic_flux(radius, n_quad)?;
        let fine = self.magnetic_flux(radius, n_quad * 2)?;
        let scale = self.coupling / (4.0 * PI);
        Ok(ChargeReport::new(
            "coupling-times-monopole-charge",
            fine * scale,
            Method::SurfaceFlux,
            format!("sphere r={radius} gl={}", 2 * n_quad),
            (fine - coarse).abs() * scale,
        ))
    }
}

fn norm3(x: &[f64; 3]) -> f64 {
    (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

/// (D_i v)_a = d_i v_a + g eps_abc A^b_i v_c, with dv[a][i] the plain
/// gradient of v.
fn covariant_of(_v: &[f64; 3], dv: &Mat3, a_mat: &Mat3, g: f64, v: &[f64; 3]) -> Mat3 {
    let mut out = *dv;
    for a in 0..3 {
        for i in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let e = eps3(a, b, c);
                    if e != 0.0 {
                        out[a][i] += g * e * a_mat[b][i] * v[c];
                    }
                }
            }
        }
    }
    out
}
