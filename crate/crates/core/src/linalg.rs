//! Small fixed-size vector/matrix helpers used throughout.
//!
//! Everything here works on plain arrays so that field storage stays a flat
//! `Vec<f64>` and hot loops stay allocation-free.

/// 3x3 row-major matrix.
pub type Mat3 = [[f64; 3]; 3];

pub const MAT3_ZERO: Mat3 = [[0.0; 3]; 3];
pub const MAT3_ID: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

/// Levi-Civita symbol on three indices.
#[inline]
pub fn eps3(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// All even/odd permutations of (0,1,2) with their signs, for explicit
/// epsilon-symbol sums.
pub const PERM3: [([usize; 3], f64); 6] = [
    ([0, 1, 2], 1.0),
    ([1, 2, 0], 1.0),
    ([2, 0, 1], 1.0),
    ([0, 2, 1], -1.0),
    ([2, 1, 0], -1.0),
    ([1, 0, 2], -1.0),
];

#[inline]
pub fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[inline]
pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut c = MAT3_ZERO;
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    c
}

#[inline]
pub fn mat3_transpose(a: &Mat3) -> Mat3 {
    let mut t = MAT3_ZERO;
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = a[j][i];
        }
    }
    t
}

/// a^T * b without materializing the transpose.
#[inline]
pub fn mat3_tmul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut c = MAT3_ZERO;
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = a[0][i] * b[0][j] + a[1][i] * b[1][j] + a[2][i] * b[2][j];
        }
    }
    c
}

#[inline]
pub fn mat3_det(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

#[inline]
pub fn mat3_trace_product3(a: &Mat3, b: &Mat3, c: &Mat3) -> f64 {
    // tr(a b c) accumulated without temporaries.
    let mut t = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let mut bc = 0.0;
            for k in 0..3 {
                bc += b[j][k] * c[k][i];
            }
            t += a[i][j] * bc;
        }
    }
    t
}

#[inline]
pub fn mat3_frobenius(m: &Mat3) -> f64 {
    let mut s = 0.0;
    for row in m {
        for x in row {
            s += x * x;
        }
    }
    s.sqrt()
}

/// Frobenius deviation of m from an orthogonal matrix: ||m^T m - I||.
pub fn orthogonality_defect(m: &Mat3) -> f64 {
    let mut g = mat3_tmul(m, m);
    for i in 0..3 {
        g[i][i] -= 1.0;
    }
    mat3_frobenius(&g)
}

/// Axial vector of an antisymmetric matrix: a_k = -1/2 eps_{kij} m_{ij}.
#[inline]
pub fn axial_of(m: &Mat3) -> [f64; 3] {
    [
        -(m[1][2] - m[2][1]) / 2.0,
        -(m[2][0] - m[0][2]) / 2.0,
        -(m[0][1] - m[1][0]) / 2.0,
    ]
}

/// Antisymmetric matrix with axial vector a: m_{ij} = -eps_{ijk} a_k.
#[inline]
pub fn skew_of(a: &[f64; 3]) -> Mat3 {
    [
        [0.0, -a[2], a[1]],
        [a[2], 0.0, -a[0]],
        [-a[1], a[0], 0.0],
    ]
}

/// Determinant of the 2x2 matrix with columns `c0`, `c1`.
#[inline]
pub fn det2_cols(c0: &[f64], c1: &[f64]) -> f64 {
    c0[0] * c1[1] - c0[1] * c1[0]
}

/// Determinant of the 3x3 matrix with the given columns.
#[inline]
pub fn det3_cols(c0: &[f64], c1: &[f64], c2: &[f64]) -> f64 {
    c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) - c1[0] * (c0[1] * c2[2] - c0[2] * c2[1])
        + c2[0] * (c0[1] * c1[2] - c0[2] * c1[1])
}

/// Determinant of the 4x4 matrix with the given columns (Laplace expansion
/// down the first row).
pub fn det4_cols(c: [&[f64]; 4]) -> f64 {
    let minor = |rows: [usize; 3], cols: [usize; 3]| -> f64 {
        let m = |r: usize, k: usize| c[cols[k]][rows[r]];
        m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
            - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
    };
    let rows = [1, 2, 3];
    c[0][0] * minor(rows, [1, 2, 3]) - c[1][0] * minor(rows, [0, 2, 3])
        + c[2][0] * minor(rows, [0, 1, 3])
        - c[3][0] * minor(rows, [0, 1, 2])
}
