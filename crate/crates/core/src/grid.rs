//! Uniform rectangular lattices in 1 to 4 dimensions with second-order
//! finite differences and trapezoidal volume integration.
//!
//! Derivatives use the central stencil (f[i+1] - f[i-1]) / 2h in the
//! interior and one-sided second-order stencils on the boundary, so every
//! lattice operator here converges at O(h^2).

use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::{Mat3, MAT3_ZERO};

pub const MAX_DIM: usize = 4;

/// Uniform lattice over an axis-aligned box.  Cheap to copy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    dim: usize,
    lo: [f64; MAX_DIM],
    hi: [f64; MAX_DIM],
    n: [usize; MAX_DIM],
    h: [f64; MAX_DIM],
}

impl Grid {
    pub fn new(lo: &[f64], hi: &[f64], n: &[usize]) -> Result<Self> {
        let dim = lo.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::BadDimension(dim));
        }
        if hi.len() != dim || n.len() != dim {
            return Err(Error::BadDimension(dim));
        }
        let mut g = Grid {
            dim,
            lo: [0.0; MAX_DIM],
            hi: [0.0; MAX_DIM],
            n: [1; MAX_DIM],
            h: [0.0; MAX_DIM],
        };
        for a in 0..dim {
            if n[a] < 4 {
                return Err(Error::TooFewPoints(n[a]));
            }
            if !(hi[a] > lo[a]) {
                return Err(Error::BadBounds(a));
            }
            g.lo[a] = lo[a];
            g.hi[a] = hi[a];
            g.n[a] = n[a];
            g.h[a] = (hi[a] - lo[a]) / (n[a] - 1) as f64;
        }
        Ok(g)
    }

    /// Cube [-half, half]^dim with `n` points per axis.
    pub fn centered_cube(dim: usize, half: f64, n: usize) -> Result<Self> {
        let lo = vec![-half; dim];
        let hi = vec![half; dim];
        let nn = vec![n; dim];
        Grid::new(&lo, &hi, &nn)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len_axis(&self, axis: usize) -> usize {
        self.n[axis]
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        self.h[axis]
    }

    pub fn lo(&self, axis: usize) -> f64 {
        self.lo[axis]
    }

    pub fn hi(&self, axis: usize) -> f64 {
        self.hi[axis]
    }

    pub fn npoints(&self) -> usize {
        self.n[..self.dim].iter().product()
    }

    /// Coordinate of lattice index `i` on `axis`.
    pub fn coord(&self, axis: usize, i: usize) -> f64 {
        self.lo[axis] + self.h[axis] * i as f64
    }

    /// Row-major flat index (last axis fastest).
    #[inline]
    pub fn flat(&self, idx: &[usize]) -> usize {
        let mut f = 0;
        for a in 0..self.dim {
            f = f * self.n[a] + idx[a];
        }
        f
    }

    /// Inverse of [`Grid::flat`].
    #[inline]
    pub fn unflat(&self, mut flat: usize) -> [usize; MAX_DIM] {
        let mut idx = [0usize; MAX_DIM];
        for a in (0..self.dim).rev() {
            idx[a] = flat % self.n[a];
            flat /= self.n[a];
        }
        idx
    }

    /// Physical coordinates of the point with multi-index `idx`.
    #[inline]
    pub fn point(&self, idx: &[usize]) -> [f64; MAX_DIM] {
        let mut x = [0.0; MAX_DIM];
        for a in 0..self.dim {
            x[a] = self.coord(a, idx[a]);
        }
        x
    }

    /// True if `idx` is at least `margin` cells away from every face.
    pub fn is_interior(&self, idx: &[usize], margin: usize) -> bool {
        (0..self.dim).all(|a| idx[a] >= margin && idx[a] + margin < self.n[a])
    }

    /// Trapezoidal weight (product rule) of the point `idx`, including the
    /// h-volume factor.
    #[inline]
    pub fn trapezoid_weight(&self, idx: &[usize]) -> f64 {
        let mut w = 1.0;
        for a in 0..self.dim {
            let edge = idx[a] == 0 || idx[a] + 1 == self.n[a];
            w *= self.h[a] * if edge { 0.5 } else { 1.0 };
        }
        w
    }

    /// Second-order partial derivative along `axis` of a per-point quantity
    /// supplied by `value` (indexed by the flat index), at multi-index `idx`.
    pub fn partial_of<F: Fn(usize) -> f64>(&self, value: F, idx: &[usize], axis: usize) -> f64 {
        let h = self.h[axis];
        let n = self.n[axis];
        let i = idx[axis];
        let at = |j: usize| {
            let mut m = [0usize; MAX_DIM];
            m[..self.dim].copy_from_slice(&idx[..self.dim]);
            m[axis] = j;
            value(self.flat(&m[..self.dim]))
        };
        if i == 0 {
            (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h)
        } else if i + 1 == n {
            (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * h)
        } else {
            (at(i + 1) - at(i - 1)) / (2.0 * h)
        }
    }
}

/// Scalar samples on a grid.
#[derive(Clone, Debug)]
pub struct ScalarField {
    pub grid: Grid,
    pub data: Vec<f64>,
}

impl ScalarField {
    pub fn from_fn<F: Fn(&[f64]) -> f64 + Sync>(grid: Grid, f: F) -> Self {
        let mut data = vec![0.0; grid.npoints()];
        exec::fill_indexed(&mut data, |i| {
            let idx = grid.unflat(i);
            f(&grid.point(&idx[..grid.dim()])[..grid.dim()])
        });
        ScalarField { grid, data }
    }

    pub fn partial(&self, idx: &[usize], axis: usize) -> f64 {
        self.grid.partial_of(|f| self.data[f], idx, axis)
    }

    /// Trapezoidal integral over the whole box.
    pub fn volume_integral(&self) -> f64 {
        let g = self.grid;
        exec::sum_indexed(g.npoints(), |i| {
            let idx = g.unflat(i);
            self.data[i] * g.trapezoid_weight(&idx[..g.dim()])
        })
    }
}

/// k-component samples on a grid, stored point-major.
#[derive(Clone, Debug)]
pub struct VectorField {
    pub grid: Grid,
    pub k: usize,
    pub data: Vec<f64>,
}

impl VectorField {
    pub fn from_fn<F: Fn(&[f64], &mut [f64]) + Sync>(grid: Grid, k: usize, f: F) -> Self {
        let npts = grid.npoints();
        let mut rows: Vec<[f64; 4]> = vec![[0.0; 4]; npts];
        exec::fill_indexed(&mut rows, |i| {
            let idx = grid.unflat(i);
            let x = grid.point(&idx[..grid.dim()]);
            let mut out = [0.0f64; 4];
            f(&x[..grid.dim()], &mut out[..k]);
            out
        });
        let mut data = vec![0.0; npts * k];
        for (i, row) in rows.iter().enumerate() {
            data[i * k..(i + 1) * k].copy_from_slice(&row[..k]);
        }
        VectorField { grid, k, data }
    }

    #[inline]
    pub fn at(&self, flat: usize) -> &[f64] {
        &self.data[flat * self.k..(flat + 1) * self.k]
    }

    /// d(component c)/d(axis) at `idx`.
    pub fn partial(&self, idx: &[usize], c: usize, axis: usize) -> f64 {
        self.grid
            .partial_of(|f| self.data[f * self.k + c], idx, axis)
    }

    /// Jacobian J[c][a] = d n_c / d x_a at `idx` (components x dim).
    pub fn jacobian_at(&self, idx: &[usize]) -> [[f64; MAX_DIM]; 4] {
        let mut j = [[0.0; MAX_DIM]; 4];
        for c in 0..self.k {
            for a in 0..self.grid.dim() {
                j[c][a] = self.partial(idx, c, a);
            }
        }
        j
    }

    /// Multilinear interpolation at an arbitrary point inside the box
    /// (dim <= 3).  Clamps to the boundary cell.
    pub fn interp(&self, x: &[f64], out: &mut [f64]) {
        let g = self.grid;
        let d = g.dim();
        assert!(d <= 3, "interpolation supported for dim <= 3");
        let mut base = [0usize; MAX_DIM];
        let mut frac = [0.0f64; MAX_DIM];
        for a in 0..d {
            let t = ((x[a] - g.lo[a]) / g.h[a]).clamp(0.0, (g.n[a] - 1) as f64);
            let i = (t.floor() as usize).min(g.n[a] - 2);
            base[a] = i;
            frac[a] = t - i as f64;
        }
        out[..self.k].fill(0.0);
        let corners = 1usize << d;
        for corner in 0..corners {
            let mut w = 1.0;
            let mut idx = [0usize; MAX_DIM];
            for a in 0..d {
                let up = (corner >> a) & 1 == 1;
                idx[a] = base[a] + up as usize;
                w *= if up { frac[a] } else { 1.0 - frac[a] };
            }
            let v = self.at(g.flat(&idx[..d]));
            for c in 0..self.k {
                out[c] += w * v[c];
            }
        }
    }

    /// Largest deviation of |n| from 1 over all points.
    pub fn max_unit_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for p in 0..self.grid.npoints() {
            let s: f64 = self.at(p).iter().map(|x| x * x).sum();
            worst = worst.max((s - 1.0).abs());
        }
        worst
    }
}

/// 3x3 matrix samples on a grid (9 values per point, row-major).
#[derive(Clone, Debug)]
pub struct MatrixField {
    pub grid: Grid,
    pub data: Vec<f64>,
}

impl MatrixField {
    pub fn from_fn<F: Fn(&[f64]) -> Mat3 + Sync>(grid: Grid, f: F) -> Self {
        let npts = grid.npoints();
        let mut rows: Vec<Mat3> = vec![MAT3_ZERO; npts];
        exec::fill_indexed(&mut rows, |i| {
            let idx = grid.unflat(i);
            f(&grid.point(&idx[..grid.dim()])[..grid.dim()])
        });
        let mut data = vec![0.0; npts * 9];
        for (p, m) in rows.iter().enumerate() {
            for i in 0..3 {
                for j in 0..3 {
                    data[p * 9 + 3 * i + j] = m[i][j];
                }
            }
        }
        MatrixField { grid, data }
    }

    pub fn zeros(grid: Grid) -> Self {
        MatrixField {
            grid,
            data: vec![0.0; grid.npoints() * 9],
        }
    }

    #[inline]
    pub fn at(&self, flat: usize) -> Mat3 {
        let s = &self.data[flat * 9..flat * 9 + 9];
        [
            [s[0], s[1], s[2]],
            [s[3], s[4], s[5]],
            [s[6], s[7], s[8]],
        ]
    }

    #[inline]
    pub fn set(&mut self, flat: usize, m: &Mat3) {
        for i in 0..3 {
            for j in 0..3 {
                self.data[flat * 9 + 3 * i + j] = m[i][j];
            }
        }
    }

    /// d m_{ij} / d x_axis at `idx`.
    pub fn partial(&self, idx: &[usize], i: usize, j: usize, axis: usize) -> f64 {
        self.grid
            .partial_of(|f| self.data[f * 9 + 3 * i + j], idx, axis)
    }
}

/// Matrix curl, (Curl M)_{ij} = eps_{jmn} d_m M_{in}, evaluated at one point
/// of a 3D matrix field.
pub fn curl_matrix_at(m: &MatrixField, idx: &[usize]) -> Mat3 {
    assert_eq!(m.grid.dim(), 3, "matrix curl needs a 3D grid");
    let mut out = MAT3_ZERO;
    // eps_{jmn}: for each j the two (m, n) pairs with sign.
    const EPS_PAIRS: [[(usize, usize, f64); 2]; 3] = [
        [(1, 2, 1.0), (2, 1, -1.0)],
        [(2, 0, 1.0), (0, 2, -1.0)],
        [(0, 1, 1.0), (1, 0, -1.0)],
    ];
    for i in 0..3 {
        for (j, pairs) in EPS_PAIRS.iter().enumerate() {
            let mut s = 0.0;
            for &(mm, nn, sign) in pairs {
                s += sign * m.partial(idx, i, nn, mm);
            }
            out[i][j] = s;
        }
    }
    out
}

/// Whole-field matrix curl.
pub fn curl_matrix(m: &MatrixField) -> MatrixField {
    let mut out = MatrixField::zeros(m.grid);
    let npts = m.grid.npoints();
    let mut vals: Vec<Mat3> = vec![MAT3_ZERO; npts];
    exec::fill_indexed(&mut vals, |p| {
        let idx = m.grid.unflat(p);
        curl_matrix_at(m, &idx[..3])
    });
    for (p, v) in vals.iter().enumerate() {
        out.set(p, v);
    }
    out
}

/// Matrix cofactor combination (Cof M)_{ij} = 1/2 eps_{ims} eps_{jnt} M_{mn} M_{st}.
pub fn cof_matrix(m: &Mat3) -> Mat3 {
    let mut out = MAT3_ZERO;
    for i in 0..3 {
        for j in 0..3 {
            // Pairs (m,s) with eps_{ims} != 0 and (n,t) with eps_{jnt} != 0.
            let (m1, s1) = ((i + 1) % 3, (i + 2) % 3);
            let (n1, t1) = ((j + 1) % 3, (j + 2) % 3);
            // eps_{i,m1,s1} = +1 and eps_{i,s1,m1} = -1; expanding the four
            // sign combinations and dividing by two leaves:
            out[i][j] = m[m1][n1] * m[s1][t1] - m[m1][t1] * m[s1][n1];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn spacing_follows_bounds() {
        let g = Grid::new(&[0.0, -1.0], &[1.0, 1.0], &[11, 21]).unwrap();
        assert_relative_eq!(g.spacing(0), 0.1, epsilon = 1e-15);
        assert_relative_eq!(g.spacing(1), 0.1, epsilon = 1e-15);
        assert_eq!(g.npoints(), 11 * 21);
    }

    #[test]
    fn rejects_tiny_axes() {
        assert!(Grid::new(&[0.0], &[1.0], &[3]).is_err());
        assert!(Grid::new(&[1.0], &[0.0], &[5]).is_err());
    }

    #[test]
    fn flat_and_unflat_roundtrip() {
        let g = Grid::new(&[0.0, 0.0, 0.0], &[1.0, 1.0, 1.0], &[4, 5, 6]).unwrap();
        for p in 0..g.npoints() {
            let idx = g.unflat(p);
            assert_eq!(g.flat(&idx[..3]), p);
        }
    }

    #[test]
    fn central_difference_is_exact_on_squares() {
        // f = x^2 sampled around x = 1 with h = 0.1: (1.21 - 0.81)/0.2 = 2.
        let g = Grid::new(&[0.0], &[2.0], &[21]).unwrap();
        let f = ScalarField::from_fn(g, |x| x[0] * x[0]);
        let d = f.partial(&[10], 0);
        assert_relative_eq!(d, 2.0, epsilon = 1e-13);
    }

    #[test]
    fn one_sided_stencils_are_second_order() {
        let g = Grid::new(&[0.0], &[1.0], &[101]).unwrap();
        let f = ScalarField::from_fn(g, |x| (2.0 * x[0]).exp());
        let d0 = f.partial(&[0], 0);
        let dn = f.partial(&[100], 0);
        assert_relative_eq!(d0, 2.0, epsilon = 2e-3);
        assert_relative_eq!(dn, 2.0 * (2.0f64).exp(), epsilon = 2e-2);
    }

    #[test]
    fn trapezoid_integrates_linear_exactly() {
        let g = Grid::new(&[0.0, 0.0], &[2.0, 3.0], &[5, 7]).unwrap();
        let f = ScalarField::from_fn(g, |x| 1.0 + x[0] + x[1]);
        // integral of (1 + x + y) over [0,2]x[0,3] = 6 + 6 + 9
        assert_relative_eq!(f.volume_integral(), 21.0, epsilon = 1e-12);
    }

    #[test]
    fn curl_of_linear_matrix_field_matches_hand_value() {
        // M_{in} = delta_{in} x_0  =>  (Curl M)_{ij} = eps_{j0i}.
        let g = Grid::centered_cube(3, 1.0, 5).unwrap();
        let m = MatrixField::from_fn(g, |x| {
            let mut v = MAT3_ZERO;
            for i in 0..3 {
                v[i][i] = x[0];
            }
            v
        });
        let c = curl_matrix_at(&m, &[2, 2, 2]);
        for i in 0..3 {
            for j in 0..3 {
                assert_relative_eq!(c[i][j], crate::linalg::eps3(j, 0, i), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn cof_of_diagonal_matrix() {
        let m: Mat3 = [[2.0, 0.0, 0.0], [0.0, 3.0, 0.0], [0.0, 0.0, 5.0]];
        let c = cof_matrix(&m);
        let expect: Mat3 = [[15.0, 0.0, 0.0], [0.0, 10.0, 0.0], [0.0, 0.0, 6.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert_relative_eq!(c[i][j], expect[i][j], epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn cof_matches_adjugate_transpose_identity() {
        // For 3x3, Cof(M)_{ij} as defined equals det(M) (M^{-1})_{ji} when M
        // is invertible; check via M * adj(M) = det(M) I with adj = Cof^T.
        let m: Mat3 = [[1.0, 2.0, 0.5], [0.0, 1.0, -1.0], [2.0, 0.3, 1.0]];
        let c = cof_matrix(&m);
        let det = crate::linalg::mat3_det(&m);
        let prod = crate::linalg::mat3_mul(&m, &crate::linalg::mat3_transpose(&c));
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { det } else { 0.0 };
                assert_relative_eq!(prod[i][j], expect, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn interpolation_reproduces_linear_fields() {
        let g = Grid::new(&[0.0, 0.0, 0.0], &[1.0, 1.0, 1.0], &[5, 5, 5]).unwrap();
        let vf = VectorField::from_fn(g, 2, |x, out| {
            out[0] = 1.0 + 2.0 * x[0] - x[1] + 0.5 * x[2];
            out[1] = x[0] * 0.0 + 3.0 * x[2];
        });
        let mut out = [0.0; 2];
        vf.interp(&[0.3, 0.62, 0.17], &mut out);
        assert_relative_eq!(out[0], 1.0 + 0.6 - 0.62 + 0.085, epsilon = 1e-12);
        assert_relative_eq!(out[1], 0.51, epsilon = 1e-12);
    }
}
