//! SU(2) elements, the induced SO(3) rotations, and related maps.
//!
//! An SU(2) element is stored as a unit quaternion (n1, n2, n3, n4) meaning
//! U = n4 I + i (n1 s1 + n2 s2 + n3 s3) with s_a the Pauli matrices.  The
//! induced rotation R satisfies U s_a U^dag = R_ab s_b; in components
//!
//!   R_ij = 2 n_i n_j - 2 eps_ijk n_k n4 + delta_ij (2 n4^2 - 1),
//!
//! which equals the axis-angle rotation by twice the quaternion angle and
//! makes U -> R the usual two-to-one cover (R(U) = R(-U)).  Note the induced
//! map reverses products: R(UV) = R(V) R(U).

use crate::error::{Error, Result};
use crate::linalg::{cross3, dot3, Mat3};
use num_complex::Complex64;

const UNIT_TOL: f64 = 1e-12;

/// Unit quaternion; `n[3]` is the scalar part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Su2 {
    pub n: [f64; 4],
}

impl Su2 {
    /// Build from components, renormalizing when the norm has drifted.
    pub fn new(n1: f64, n2: f64, n3: f64, n4: f64) -> Result<Self> {
        let mut n = [n1, n2, n3, n4];
        let norm2: f64 = n.iter().map(|v| v * v).sum();
        if norm2 == 0.0 || !norm2.is_finite() {
            return Err(Error::Invalid(format!(
                "quaternion norm^2 = {norm2}, cannot normalize"
            )));
        }
        if (norm2 - 1.0).abs() > UNIT_TOL {
            log::debug!("renormalizing quaternion, |n|^2 - 1 = {:e}", norm2 - 1.0);
            let norm = norm2.sqrt();
            for v in &mut n {
                *v /= norm;
            }
        }
        Ok(Su2 { n })
    }

    pub fn from_components(n: &[f64]) -> Result<Self> {
        if n.len() != 4 {
            return Err(Error::ComponentMismatch { expected: 4, got: n.len() });
        }
        Su2::new(n[0], n[1], n[2], n[3])
    }

    pub fn identity() -> Self {
        Su2 { n: [0.0, 0.0, 0.0, 1.0] }
    }

    /// U = cos(omega) I + i sin(omega) axis . sigma.
    pub fn from_axis_angle(omega: f64, axis: [f64; 3]) -> Result<Self> {
        let norm = dot3(&axis, &axis).sqrt();
        if norm == 0.0 {
            return Err(Error::Invalid("zero rotation axis".into()));
        }
        let (s, c) = omega.sin_cos();
        Su2::new(
            s * axis[0] / norm,
            s * axis[1] / norm,
            s * axis[2] / norm,
            c,
        )
    }

    /// 2x2 complex matrix [[n4 + i n3, i n1 + n2], [i n1 - n2, n4 - i n3]].
    pub fn to_matrix(self) -> [[Complex64; 2]; 2] {
        let [n1, n2, n3, n4] = self.n;
        [
            [Complex64::new(n4, n3), Complex64::new(n2, n1)],
            [Complex64::new(-n2, n1), Complex64::new(n4, -n3)],
        ]
    }

    /// Inverse of [`Su2::to_matrix`] (projects onto the closest unit
    /// quaternion if the matrix is slightly off SU(2)).
    pub fn from_matrix(m: &[[Complex64; 2]; 2]) -> Result<Self> {
        Su2::new(
            0.5 * (m[0][1].im + m[1][0].im),
            0.5 * (m[0][1].re - m[1][0].re),
            0.5 * (m[0][0].im - m[1][1].im),
            0.5 * (m[0][0].re + m[1][1].re),
        )
    }

    /// Quaternion (= matrix) product.
    pub fn mul(self, rhs: Su2) -> Su2 {
        let a = [self.n[0], self.n[1], self.n[2]];
        let b = [rhs.n[0], rhs.n[1], rhs.n[2]];
        let (a4, b4) = (self.n[3], rhs.n[3]);
        let axb = cross3(&a, &b);
        let mut n = [0.0f64; 4];
        for i in 0..3 {
            n[i] = a4 * b[i] + b4 * a[i] - axb[i];
        }
        n[3] = a4 * b4 - dot3(&a, &b);
        Su2 { n }
    }

    /// U^dag, the group inverse.
    pub fn conj(self) -> Su2 {
        Su2 { n: [-self.n[0], -self.n[1], -self.n[2], self.n[3]] }
    }

    pub fn neg(self) -> Su2 {
        Su2 { n: [-self.n[0], -self.n[1], -self.n[2], -self.n[3]] }
    }

    /// The induced SO(3) rotation, R_ij as documented at module level.
    pub fn rotation(self) -> Mat3 {
        let [n1, n2, n3, n4] = self.n;
        let v = [n1, n2, n3];
        let diag = 2.0 * n4 * n4 - 1.0;
        let mut r = [[0.0f64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                r[i][j] = 2.0 * v[i] * v[j];
                if i == j {
                    r[i][j] += diag;
                }
            }
        }
        // -2 eps_ijk n_k n4 terms.
        r[0][1] -= 2.0 * v[2] * n4;
        r[1][0] += 2.0 * v[2] * n4;
        r[1][2] -= 2.0 * v[0] * n4;
        r[2][1] += 2.0 * v[0] * n4;
        r[2][0] -= 2.0 * v[1] * n4;
        r[0][2] += 2.0 * v[1] * n4;
        r
    }

    /// Same rotation through traces, R_ij = tr(s_i U^dag s_j U) / 2.
    /// Kept as an independent route for consistency tests.
    pub fn rotation_via_traces(self) -> Mat3 {
        let u = self.to_matrix();
        let ud = dagger(&u);
        let mut r = [[0.0f64; 3]; 3];
        for (j, row) in pauli().iter().enumerate() {
            // M_j = U^dag s_j U
            let m = mat2_mul(&mat2_mul(&ud, row), &u);
            for (i, si) in pauli().iter().enumerate() {
                let t = mat2_mul(si, &m);
                r[i][j] = 0.5 * (t[0][0] + t[1][1]).re;
            }
        }
        r
    }

    /// First column of U: the image of the reference doublet (1, 0).
    pub fn doublet(self) -> [Complex64; 2] {
        let m = self.to_matrix();
        [m[0][0], m[1][0]]
    }
}

/// Pauli matrices s1, s2, s3.
pub fn pauli() -> [[[Complex64; 2]; 2]; 3] {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        [[z, one], [one, z]],
        [[z, -i], [i, z]],
        [[one, z], [z, -one]],
    ]
}

pub fn mat2_mul(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn dagger(a: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

/// Axis-angle rotation by `theta` about the (normalized) `axis`:
/// R_ij = cos t d_ij + (1 - cos t) n_i n_j - sin t eps_ijk n_k.
pub fn rodrigues(theta: f64, axis: [f64; 3]) -> Result<Mat3> {
    let norm = dot3(&axis, &axis).sqrt();
    if norm == 0.0 {
        return Err(Error::Invalid("zero rotation axis".into()));
    }
    let n = [axis[0] / norm, axis[1] / norm, axis[2] / norm];
    let (s, c) = theta.sin_cos();
    let mut r = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            r[i][j] = (1.0 - c) * n[i] * n[j];
            if i == j {
                r[i][j] += c;
            }
        }
    }
    r[0][1] -= s * n[2];
    r[1][0] += s * n[2];
    r[1][2] -= s * n[0];
    r[2][1] += s * n[0];
    r[2][0] -= s * n[1];
    r[0][2] += s * n[1];
    Ok(r)
}

/// Hopf image of a normalized doublet: H_a = z^dag s_a z.
pub fn hopf(z: &[Complex64; 2]) -> [f64; 3] {
    let cross = z[0].conj() * z[1];
    [
        2.0 * cross.re,
        2.0 * cross.im,
        (z[0].norm_sqr() - z[1].norm_sqr()),
    ]
}

/// One-point compactification of R^3 into SU(2):
/// U(x) = [(r^2 - 1) I + 2 i x . sigma] / (1 + r^2).
/// U(0) = -I exactly and U -> +I as |x| -> infinity, so the map extends to
/// S^3 and covers SU(2) once.
pub fn point_to_su2(x: &[f64; 3]) -> Su2 {
    let r2 = dot3(x, x);
    let denom = 1.0 + r2;
    Su2 {
        n: [
            2.0 * x[0] / denom,
            2.0 * x[1] / denom,
            2.0 * x[2] / denom,
            (r2 - 1.0) / denom,
        ],
    }
}

/// Uniaxial order parameter Q_ab = amplitude * (n_a n_b - delta_ab / 3):
/// traceless, symmetric, and invariant under n -> -n, so it sees only the
/// line through n (the head-sign is unobservable).
pub fn order_parameter(dir: &[f64; 3], amplitude: f64) -> Result<Mat3> {
    let norm2 = dot3(dir, dir);
    if norm2 == 0.0 {
        return Err(Error::Invalid("zero director".into()));
    }
    let mut q = [[0.0f64; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            q[a][b] = amplitude * dir[a] * dir[b] / norm2;
            if a == b {
                q[a][b] -= amplitude / 3.0;
            }
        }
    }
    Ok(q)
}
