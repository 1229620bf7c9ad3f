//! Defect-theory tensors for rotation-valued fields.
//!
//! A quaternion field n(x) induces a rotation field R(x); the lattice
//! machinery here builds, from either description,
//!
//!   C_mu  = R^T d_mu R            (contortion; antisymmetric 3x3 per axis)
//!   Gamma_ij = axial(C_j)_i       (Nye tensor)
//!   K     = R^T Curl R            (dislocation density)
//!   B^a_mu = n4 d_mu n_a - n_a d_mu n4 - eps_abc n_b d_mu n_c
//!
//! and checks the identities that tie them together: Gamma = 2B, the
//! compatibility law Curl Gamma + Cof Gamma = 0, the vanishing of the
//! curvature d_mu C_nu - d_nu C_mu + [C_mu, C_nu], and the equality of the
//! three volume integrals that all compute the field's degree
//! (det B, det Gamma, and the contortion triple trace).

use crate::error::{Error, Result};
use crate::exec;
use crate::fields::AnalyticField;
use crate::grid::{cof_matrix, curl_matrix_at, Grid, MatrixField, VectorField};
use crate::linalg::{
    axial_of, mat3_det, mat3_frobenius, mat3_mul, mat3_trace_product3, mat3_tmul,
    orthogonality_defect, Mat3, MAT3_ZERO,
};
use crate::rotations::{dagger, mat2_mul, pauli, Su2};
use std::f64::consts::PI;

const ROTATION_TOL: f64 = 1e-6;

/// B[a][mu] from quaternion components and per-axis derivatives
/// v[mu] = d_mu n.
pub fn b_quaternion_point(n: &[f64; 4], v: &[[f64; 4]; 3]) -> Mat3 {
    let mut b = MAT3_ZERO;
    for (mu, vm) in v.iter().enumerate() {
        b[0][mu] = n[3] * vm[0] - n[0] * vm[3] - (n[1] * vm[2] - n[2] * vm[1]);
        b[1][mu] = n[3] * vm[1] - n[1] * vm[3] - (n[2] * vm[0] - n[0] * vm[2]);
        b[2][mu] = n[3] * vm[2] - n[2] * vm[3] - (n[0] * vm[1] - n[1] * vm[0]);
    }
    b
}

/// Same object through complex traces, B^a_mu = tr(U^dag s_a d_mu U) / 2i.
/// Agrees with [`b_quaternion_point`] identically (any n, v); kept as the
/// independent route.
pub fn b_trace_point(n: &[f64; 4], v: &[[f64; 4]; 3]) -> Mat3 {
    let u = embed(n);
    let ud = dagger(&u);
    let mut b = MAT3_ZERO;
    for (mu, vm) in v.iter().enumerate() {
        let du = embed(vm);
        for (a, sa) in pauli().iter().enumerate() {
            let t = mat2_mul(&ud, &mat2_mul(sa, &du));
            // tr / 2i: the real coefficient is Im(tr) / 2.
            b[a][mu] = 0.5 * (t[0][0] + t[1][1]).im;
        }
    }
    b
}

/// Linear embedding q -> q4 I + i q . sigma (no unit-norm requirement).
fn embed(q: &[f64; 4]) -> [[num_complex::Complex64; 2]; 2] {
    use num_complex::Complex64;
    [
        [Complex64::new(q[3], q[2]), Complex64::new(q[1], q[0])],
        [Complex64::new(-q[1], q[0]), Complex64::new(q[3], -q[2])],
    ]
}

/// R(n), valid for unit quaternions (polynomial in the components).
pub fn rotation_of(n: &[f64; 4]) -> Mat3 {
    Su2 { n: *n }.rotation()
}

/// Exact derivative of R(n(x)) along one direction: since R is quadratic in
/// the quaternion, dR is the symmetric bilinear form evaluated on (n, v).
pub fn rotation_derivative(n: &[f64; 4], v: &[f64; 4]) -> Mat3 {
    let mut dr = MAT3_ZERO;
    for i in 0..3 {
        for j in 0..3 {
            dr[i][j] = 2.0 * (v[i] * n[j] + n[i] * v[j]);
            if i == j {
                dr[i][j] += 4.0 * n[3] * v[3];
            }
        }
    }
    // -2 eps_ijk (v_k n4 + n_k v4)
    let w: [f64; 3] = core::array::from_fn(|k| v[k] * n[3] + n[k] * v[3]);
    dr[0][1] -= 2.0 * w[2];
    dr[1][0] += 2.0 * w[2];
    dr[1][2] -= 2.0 * w[0];
    dr[2][1] += 2.0 * w[0];
    dr[2][0] -= 2.0 * w[1];
    dr[0][2] += 2.0 * w[1];
    dr
}

/// Contortion matrices C_mu = R^T d_mu R from quaternion data.
pub fn contortion_point(n: &[f64; 4], v: &[[f64; 4]; 3]) -> [Mat3; 3] {
    let r = rotation_of(n);
    core::array::from_fn(|mu| mat3_tmul(&r, &rotation_derivative(n, &v[mu])))
}

/// Nye tensor Gamma_ij = axial(C_j)_i.
pub fn nye_point(c: &[Mat3; 3]) -> Mat3 {
    let mut g = MAT3_ZERO;
    for (j, cj) in c.iter().enumerate() {
        let a = axial_of(cj);
        for i in 0..3 {
            g[i][j] = a[i];
        }
    }
    g
}

/// eps^{mu nu rho} tr(C_mu C_nu C_rho), reduced by cyclicity to
/// 3 [tr(C0 C1 C2) - tr(C0 C2 C1)].
pub fn contortion_triple_trace(c: &[Mat3; 3]) -> f64 {
    3.0 * (mat3_trace_product3(&c[0], &c[1], &c[2])
        - mat3_trace_product3(&c[0], &c[2], &c[1]))
}

/// Rotation field R(U(x)) from a sampled quaternion field (k = 4).
pub fn rotation_field(u: &VectorField) -> Result<MatrixField> {
    if u.k != 4 {
        return Err(Error::ComponentMismatch { expected: 4, got: u.k });
    }
    let grid = u.grid;
    let mut out = MatrixField::zeros(grid);
    for p in 0..grid.npoints() {
        let n = u.at(p);
        let r = rotation_of(&[n[0], n[1], n[2], n[3]]);
        out.set(p, &r);
    }
    Ok(out)
}

fn require_rotations(r: &MatrixField) -> Result<()> {
    let mut worst = 0.0f64;
    for p in 0..r.grid.npoints() {
        worst = worst.max(orthogonality_defect(&r.at(p)));
    }
    if worst > ROTATION_TOL {
        return Err(Error::NotARotation(worst));
    }
    Ok(())
}

fn matrix_partial(r: &MatrixField, idx: &[usize], axis: usize) -> Mat3 {
    let mut d = MAT3_ZERO;
    for i in 0..3 {
        for j in 0..3 {
            d[i][j] = r.partial(idx, i, j, axis);
        }
    }
    d
}

/// Contortion fields C_mu = R^T d_mu R by lattice differencing of a sampled
/// rotation field.  Rejects inputs that are not rotations.
pub fn contortion_fields(r: &MatrixField) -> Result<[MatrixField; 3]> {
    if r.grid.dim() != 3 {
        return Err(Error::BadDimension(r.grid.dim()));
    }
    require_rotations(r)?;
    let grid = r.grid;
    let mut out = [
        MatrixField::zeros(grid),
        MatrixField::zeros(grid),
        MatrixField::zeros(grid),
    ];
    for p in 0..grid.npoints() {
        let idx = grid.unflat(p);
        let rt = r.at(p);
        for (mu, field) in out.iter_mut().enumerate() {
            let dr = matrix_partial(r, &idx[..3], mu);
            field.set(p, &mat3_tmul(&rt, &dr));
        }
    }
    Ok(out)
}

/// Nye tensor field from a sampled rotation field.
pub fn nye_tensor(r: &MatrixField) -> Result<MatrixField> {
    let c = contortion_fields(r)?;
    let grid = r.grid;
    let mut out = MatrixField::zeros(grid);
    for p in 0..grid.npoints() {
        let cp = [c[0].at(p), c[1].at(p), c[2].at(p)];
        out.set(p, &nye_point(&cp));
    }
    Ok(out)
}

/// Dislocation density K = R^T Curl R.
pub fn dislocation_density(r: &MatrixField) -> Result<MatrixField> {
    if r.grid.dim() != 3 {
        return Err(Error::BadDimension(r.grid.dim()));
    }
    require_rotations(r)?;
    let grid = r.grid;
    let mut out = MatrixField::zeros(grid);
    for p in 0..grid.npoints() {
        let idx = grid.unflat(p);
        let curl = curl_matrix_at(r, &idx[..3]);
        out.set(p, &mat3_tmul(&r.at(p), &curl));
    }
    Ok(out)
}

/// Max and mean Frobenius norm of Curl Gamma + Cof Gamma over interior
/// points (at least `margin` cells from every face).
pub fn compat_residual(gamma: &MatrixField, margin: usize) -> Result<(f64, f64)> {
    if gamma.grid.dim() != 3 {
        return Err(Error::BadDimension(gamma.grid.dim()));
    }
    let grid = gamma.grid;
    let mut worst = 0.0f64;
    let mut total = 0.0f64;
    let mut count = 0usize;
    for p in 0..grid.npoints() {
        let idx = grid.unflat(p);
        if !grid.is_interior(&idx[..3], margin) {
            continue;
        }
        let curl = curl_matrix_at(gamma, &idx[..3]);
        let cof = cof_matrix(&gamma.at(p));
        let mut res = MAT3_ZERO;
        for i in 0..3 {
            for j in 0..3 {
                res[i][j] = curl[i][j] + cof[i][j];
            }
        }
        let f = mat3_frobenius(&res);
        worst = worst.max(f);
        total += f;
        count += 1;
    }
    if count == 0 {
        return Err(Error::TooFewPoints(0));
    }
    Ok((worst, total / count as f64))
}

/// Max Frobenius norm over interior points and axis pairs of the curvature
/// d_mu C_nu - d_nu C_mu + [C_mu, C_nu], which vanishes identically for
/// contortions of actual rotation fields.
pub fn maurer_cartan_residual(r: &MatrixField, margin: usize) -> Result<f64> {
    let c = contortion_fields(r)?;
    let grid = r.grid;
    let mut worst = 0.0f64;
    for p in 0..grid.npoints() {
        let idx = grid.unflat(p);
        if !grid.is_interior(&idx[..3], margin) {
            continue;
        }
        for mu in 0..3 {
            for nu in mu + 1..3 {
                let dmu_cnu = matrix_partial(&c[nu], &idx[..3], mu);
                let dnu_cmu = matrix_partial(&c[mu], &idx[..3], nu);
                let cm = c[mu].at(p);
                let cn = c[nu].at(p);
                let prod1 = mat3_mul(&cm, &cn);
                let prod2 = mat3_mul(&cn, &cm);
                let mut f = MAT3_ZERO;
                for i in 0..3 {
                    for j in 0..3 {
                        f[i][j] =
                            dmu_cnu[i][j] - dnu_cmu[i][j] + prod1[i][j] - prod2[i][j];
                    }
                }
                worst = worst.max(mat3_frobenius(&f));
            }
        }
    }
    Ok(worst)
}

/// Chern-Simons density of the contortion,
/// eps^{mu nu rho} [tr(C_mu d_nu C_rho) + (2/3) tr(C_mu C_nu C_rho)],
/// returned as a flat per-point vector on the field's grid.
pub fn chern_simons_density(r: &MatrixField) -> Result<Vec<f64>> {
    let c = contortion_fields(r)?;
    let grid = r.grid;
    let mut out = vec![0.0f64; grid.npoints()];
    for (p, slot) in out.iter_mut().enumerate() {
        let idx = grid.unflat(p);
        let mut cs = 0.0;
        for (perm, sign) in crate::linalg::PERM3 {
            let [mu, nu, rho] = perm;
            let cmu = c[mu].at(p);
            let d_nu_crho = matrix_partial(&c[rho], &idx[..3], nu);
            let crho = c[rho].at(p);
            let cnu = c[nu].at(p);
            let mut tr1 = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    tr1 += cmu[i][j] * d_nu_crho[j][i];
                }
            }
            cs += sign * (tr1 + (2.0 / 3.0) * mat3_trace_product3(&cmu, &cnu, &crho));
        }
        *slot = cs;
    }
    Ok(out)
}

/// The three equivalent degree integrals of a quaternion field.
#[derive(Clone, Copy, Debug)]
pub struct BaryonIntegrals {
    /// -1/(2 pi^2) * integral of det B.
    pub from_b_determinant: f64,
    /// -1/(16 pi^2) * integral of det Gamma.
    pub from_nye_determinant: f64,
    /// 1/(96 pi^2) * integral of eps tr(C C C).
    pub from_contortion_trace: f64,
}

/// Which of the three integrals to report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaryonRoute {
    BDeterminant,
    NyeDeterminant,
    ContortionTrace,
}

impl std::str::FromStr for BaryonRoute {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "b-determinant" => Ok(BaryonRoute::BDeterminant),
            "nye-determinant" => Ok(BaryonRoute::NyeDeterminant),
            "contortion-trace" => Ok(BaryonRoute::ContortionTrace),
            _ => Err(Error::UnknownName(format!("baryon formula '{s}'"))),
        }
    }
}

impl BaryonIntegrals {
    pub fn get(&self, route: BaryonRoute) -> f64 {
        match route {
            BaryonRoute::BDeterminant => self.from_b_determinant,
            BaryonRoute::NyeDeterminant => self.from_nye_determinant,
            BaryonRoute::ContortionTrace => self.from_contortion_trace,
        }
    }
}

/// Fourth-order first derivative of 4-vectors along a line of `n >= 5`
/// samples accessed through `g`; offset stencils of the same order cover
/// the two points nearest each end.
fn stencil4<G: Fn(usize) -> [f64; 4]>(g: G, i: usize, n: usize, h: f64) -> [f64; 4] {
    let combine = |terms: &[(f64, usize)]| -> [f64; 4] {
        let mut out = [0.0f64; 4];
        for &(c, j) in terms {
            let f = g(j);
            for k in 0..4 {
                out[k] += c * f[k];
            }
        }
        for v in &mut out {
            *v /= 12.0 * h;
        }
        out
    };
    if i == 0 {
        combine(&[(-25.0, 0), (48.0, 1), (-36.0, 2), (16.0, 3), (-3.0, 4)])
    } else if i == 1 {
        combine(&[(-3.0, 0), (-10.0, 1), (18.0, 2), (-6.0, 3), (1.0, 4)])
    } else if i == n - 2 {
        combine(&[(3.0, n - 1), (10.0, n - 2), (-18.0, n - 3), (6.0, n - 4), (-1.0, n - 5)])
    } else if i == n - 1 {
        combine(&[(25.0, n - 1), (-48.0, n - 2), (36.0, n - 3), (-16.0, n - 4), (3.0, n - 5)])
    } else {
        combine(&[(1.0, i - 2), (-8.0, i - 1), (8.0, i + 1), (-1.0, i + 2)])
    }
}

/// All three degree integrals of a 4-component field over `grid`, in one
/// sweep with a rolling window of sample planes (axis 0 is streamed, so a
/// full-volume array is never held).  Every route sees the same lattice
/// derivative, projected onto the tangent space of the unit sphere, so the
/// comparison isolates the algebraic identities rather than stencil noise.
pub fn baryon_integrals(field: &dyn AnalyticField, grid: Grid) -> Result<BaryonIntegrals> {
    if field.dim() != 3 || grid.dim() != 3 {
        return Err(Error::BadDimension(grid.dim()));
    }
    if field.components() != 4 {
        return Err(Error::ComponentMismatch { expected: 4, got: field.components() });
    }
    let (n0, n1, n2) = (grid.len_axis(0), grid.len_axis(1), grid.len_axis(2));
    if n0.min(n1).min(n2) < 5 {
        return Err(Error::TooFewPoints(n0.min(n1).min(n2)));
    }
    let (h0, h1, h2) = (grid.spacing(0), grid.spacing(1), grid.spacing(2));

    let load_plane = |i0: usize| -> Result<Vec<[f64; 4]>> {
        let x0 = grid.coord(0, i0);
        let mut plane = vec![[0.0f64; 4]; n1 * n2];
        for (q, slot) in plane.iter_mut().enumerate() {
            let (i1, i2) = (q / n2, q % n2);
            let x = [x0, grid.coord(1, i1), grid.coord(2, i2)];
            field.eval(&x, slot)?;
        }
        Ok(plane)
    };

    let mut window: Vec<Vec<[f64; 4]>> = Vec::with_capacity(5);
    let mut base = 0usize; // plane index of window[0]
    for i0 in 0..5.min(n0) {
        window.push(load_plane(i0)?);
    }

    let edge_w = |i: usize, n: usize| if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
    let mut acc = [0.0f64; 3];

    for i0 in 0..n0 {
        // Keep planes [needed_lo, needed_hi] resident: the stencil reaches
        // two planes either side, or the first/last five near the ends.
        let needed_hi = (i0 + 2).min(n0 - 1).max(4);
        while base + window.len() <= needed_hi {
            window.push(load_plane(base + window.len())?);
        }
        let needed_lo = i0.saturating_sub(2).min(n0 - 5);
        while base < needed_lo {
            window.remove(0);
            base += 1;
        }

        let win = &window;
        let plane_sums = exec::sum_indexed_multi::<3, _>(n1 * n2, |q| {
            let (i1, i2) = (q / n2, q % n2);
            let cur = &win[i0 - base];
            let mut n = cur[q];
            let norm = (n.iter().map(|v| v * v).sum::<f64>()).sqrt();
            for v in &mut n {
                *v /= norm;
            }
            let mut v = [
                stencil4(|j| win[j - base][q], i0, n0, h0),
                stencil4(|j| cur[j * n2 + i2], i1, n1, h1),
                stencil4(|j| cur[i1 * n2 + j], i2, n2, h2),
            ];
            // Project onto the tangent space of the unit sphere so that all
            // three densities are evaluated on the constraint surface.
            for vm in &mut v {
                let along: f64 = (0..4).map(|k| n[k] * vm[k]).sum();
                for k in 0..4 {
                    vm[k] -= along * n[k];
                }
            }
            let b = b_quaternion_point(&n, &v);
            let c = contortion_point(&n, &v);
            let gamma = nye_point(&c);
            let w = edge_w(i1, n1) * edge_w(i2, n2) * h1 * h2;
            [
                mat3_det(&b) * w,
                mat3_det(&gamma) * w,
                contortion_triple_trace(&c) * w,
            ]
        });
        let w0 = edge_w(i0, n0) * h0;
        for (a, s) in acc.iter_mut().zip(plane_sums) {
            *a += s * w0;
        }
    }

    let pi2 = PI * PI;
    Ok(BaryonIntegrals {
        from_b_determinant: -acc[0] / (2.0 * pi2),
        from_nye_determinant: -acc[1] / (16.0 * pi2),
        from_contortion_trace: acc[2] / (96.0 * pi2),
    })
}

/// Gaps between independently differenced routes to the same tensors:
/// the quaternion-stencil B against the rotation-stencil Nye tensor
/// (|2B - Gamma|), and the complex-trace B against the rotation-route B.
/// Both shrink at second order in the lattice spacing.
#[derive(Clone, Copy, Debug)]
pub struct BGammaGaps {
    pub quaternion_vs_nye: f64,
    pub trace_vs_rotation: f64,
}

pub fn b_gamma_gaps(u: &VectorField, margin: usize) -> Result<BGammaGaps> {
    if u.grid.dim() != 3 {
        return Err(Error::BadDimension(u.grid.dim()));
    }
    if u.k != 4 {
        return Err(Error::ComponentMismatch { expected: 4, got: u.k });
    }
    let grid = u.grid;
    let r = rotation_field(u)?;
    let c = contortion_fields(&r)?;
    let mut gap_nye = 0.0f64;
    let mut gap_trace = 0.0f64;
    for p in 0..grid.npoints() {
        let idx = grid.unflat(p);
        if !grid.is_interior(&idx[..3], margin) {
            continue;
        }
        let np = u.at(p);
        let n = [np[0], np[1], np[2], np[3]];
        let v: [[f64; 4]; 3] =
            core::array::from_fn(|mu| core::array::from_fn(|k| u.partial(&idx[..3], k, mu)));
        let b_q = b_quaternion_point(&n, &v);
        let b_tr = b_trace_point(&n, &v);
        let cp = [c[0].at(p), c[1].at(p), c[2].at(p)];
        let gamma = nye_point(&cp);
        let mut d_nye = MAT3_ZERO;
        let mut d_trace = MAT3_ZERO;
        for i in 0..3 {
            for j in 0..3 {
                d_nye[i][j] = 2.0 * b_q[i][j] - gamma[i][j];
                d_trace[i][j] = b_tr[i][j] - 0.5 * gamma[i][j];
            }
        }
        gap_nye = gap_nye.max(mat3_frobenius(&d_nye));
        gap_trace = gap_trace.max(mat3_frobenius(&d_trace));
    }
    Ok(BGammaGaps { quaternion_vs_nye: gap_nye, trace_vs_rotation: gap_trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{sample, SkyrmeU};
    use crate::profiles::Profile;
    use crate::rotations::rodrigues;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_unit_tangent(rng: &mut ChaCha8Rng) -> ([f64; 4], [[f64; 4]; 3]) {
        let mut n: [f64; 4] = core::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let norm = n.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in &mut n {
            *v /= norm;
        }
        let mut vs = [[0.0f64; 4]; 3];
        for vm in &mut vs {
            for v in vm.iter_mut() {
                *v = rng.gen_range(-1.0..1.0);
            }
            let along: f64 = (0..4).map(|k| n[k] * vm[k]).sum();
            for k in 0..4 {
                vm[k] -= along * n[k];
            }
        }
        (n, vs)
    }

    #[test]
    fn trace_and_component_b_agree_for_arbitrary_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let n: [f64; 4] = core::array::from_fn(|_| rng.gen_range(-2.0..2.0));
            let v: [[f64; 4]; 3] =
                core::array::from_fn(|_| core::array::from_fn(|_| rng.gen_range(-2.0..2.0)));
            let a = b_quaternion_point(&n, &v);
            let b = b_trace_point(&n, &v);
            for i in 0..3 {
                for j in 0..3 {
                    assert_relative_eq!(a[i][j], b[i][j], epsilon = 1e-13);
                }
            }
        }
    }

    #[test]
    fn rotation_derivative_is_the_exact_bilinear_term() {
        // R is quadratic in the quaternion, so a central difference along
        // any straight line recovers the derivative exactly.
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..50 {
            let n: [f64; 4] = core::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let v: [f64; 4] = core::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let plus: [f64; 4] = core::array::from_fn(|k| n[k] + 0.5 * v[k]);
            let minus: [f64; 4] = core::array::from_fn(|k| n[k] - 0.5 * v[k]);
            let fd_p = Su2 { n: plus }.rotation();
            let fd_m = Su2 { n: minus }.rotation();
            let dr = rotation_derivative(&n, &v);
            for i in 0..3 {
                for j in 0..3 {
                    assert_relative_eq!(
                        dr[i][j],
                        fd_p[i][j] - fd_m[i][j],
                        epsilon = 1e-12
                    );
                }
            }
        }
    }

    #[test]
    fn nye_tensor_doubles_the_b_field_on_the_constraint_surface() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let (n, v) = random_unit_tangent(&mut rng);
            let b = b_quaternion_point(&n, &v);
            let gamma = nye_point(&contortion_point(&n, &v));
            for i in 0..3 {
                for j in 0..3 {
                    assert_relative_eq!(gamma[i][j], 2.0 * b[i][j], epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn pointwise_degree_densities_are_proportional() {
        // det Gamma = 8 det B and eps tr(CCC) = -48 det B wherever |n| = 1
        // and the derivatives are tangent.
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..50 {
            let (n, v) = random_unit_tangent(&mut rng);
            let det_b = mat3_det(&b_quaternion_point(&n, &v));
            let c = contortion_point(&n, &v);
            let det_g = mat3_det(&nye_point(&c));
            let kkk = contortion_triple_trace(&c);
            assert_relative_eq!(det_g, 8.0 * det_b, epsilon = 1e-11, max_relative = 1e-11);
            assert_relative_eq!(kkk, -48.0 * det_b, epsilon = 1e-10, max_relative = 1e-10);
        }
    }

    fn twist_field(alpha: f64, n: usize) -> MatrixField {
        let grid = Grid::centered_cube(3, 1.0, n).unwrap();
        MatrixField::from_fn(grid, |x| rodrigues(alpha * x[2], [0.0, 0.0, 1.0]).unwrap())
    }

    #[test]
    fn constant_twist_oracles() {
        let alpha = 0.7;
        let r = twist_field(alpha, 9);
        let grid = r.grid;
        let p = grid.flat(&[4, 4, 4]);

        // Central differencing of Rz(alpha z) is exactly a twist at the
        // aliased rate sin(alpha h) / h, so the lattice tensors are known in
        // closed form.
        let eff = (alpha * grid.spacing(2)).sin() / grid.spacing(2);
        let k = dislocation_density(&r).unwrap();
        let expect_k = [[eff, 0.0, 0.0], [0.0, eff, 0.0], [0.0, 0.0, 0.0]];
        let gamma = nye_tensor(&r).unwrap();
        let mut expect_g = MAT3_ZERO;
        expect_g[2][2] = eff;
        for i in 0..3 {
            for j in 0..3 {
                assert_relative_eq!(k.at(p)[i][j], expect_k[i][j], epsilon = 1e-10);
                assert_relative_eq!(gamma.at(p)[i][j], expect_g[i][j], epsilon = 1e-10);
            }
        }

        // Constant contortion: curvature and Chern-Simons density vanish.
        assert!(maurer_cartan_residual(&r, 1).unwrap() < 1e-10);
        let cs = chern_simons_density(&r).unwrap();
        assert!(cs.iter().all(|v| v.abs() < 1e-9));
        let (worst, _) = compat_residual(&gamma, 2).unwrap();
        assert!(worst < 1e-9);
    }

    #[test]
    fn non_rotation_input_is_rejected() {
        let grid = Grid::centered_cube(3, 1.0, 5).unwrap();
        let m = MatrixField::from_fn(grid, |x| {
            [[1.0 + x[0] * x[0], 0.3, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
        });
        assert!(matches!(nye_tensor(&m), Err(Error::NotARotation(_))));
    }

    #[test]
    fn degree_integrals_agree_and_count_one() {
        let field = SkyrmeU { winding: 1, omega: Profile::SkyrmeExp { a: 1.0 } };
        let grid = Grid::centered_cube(3, 6.0, 81).unwrap();
        let b = baryon_integrals(&field, grid).unwrap();
        // Same stencil, three algebraic pipelines: mutual agreement is tight
        // even where each integral still carries lattice error.
        assert_relative_eq!(
            b.from_b_determinant,
            b.from_nye_determinant,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            b.from_b_determinant,
            b.from_contortion_trace,
            max_relative = 1e-9
        );
        assert_relative_eq!(b.from_b_determinant, 1.0, epsilon = 0.02);
    }

    #[test]
    fn independent_stencils_converge_on_each_other() {
        let field = SkyrmeU { winding: 1, omega: Profile::SkyrmeExp { a: 1.0 } };
        let gaps = |n: usize| {
            let grid = Grid::centered_cube(3, 1.5, n).unwrap();
            let u = sample(&field, grid).unwrap();
            b_gamma_gaps(&u, 1).unwrap()
        };
        let coarse = gaps(11);
        let fine = gaps(21);
        let ratio = coarse.quaternion_vs_nye / fine.quaternion_vs_nye;
        assert!(
            (2.5..6.0).contains(&ratio),
            "expected ~4x shrink, got {ratio} ({} -> {})",
            coarse.quaternion_vs_nye,
            fine.quaternion_vs_nye
        );
        assert!(fine.trace_vs_rotation <= fine.quaternion_vs_nye * 0.75);
    }
}
