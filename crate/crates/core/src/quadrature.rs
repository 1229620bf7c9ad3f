//! Quadrature over contours, spheres, and the 3-sphere.
//!
//! Spheres use a product rule: Gauss–Legendre in the polar direction and a
//! uniform (trapezoidal, hence spectrally accurate for periodic integrands)
//! rule in the azimuth.  Contours use the uniform rule alone.

use std::f64::consts::PI;

/// Surface area of the unit sphere S^{d-1} embedded in d dimensions,
/// 2 pi^{d/2} / Gamma(d/2).
pub fn sphere_area(d: usize) -> f64 {
    match d {
        1 => 2.0,            // two points
        2 => 2.0 * PI,       // circle
        3 => 4.0 * PI,       // sphere
        4 => 2.0 * PI * PI,  // 3-sphere
        _ => panic!("sphere_area defined for d in 1..=4"),
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre polynomial.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 0..n.div_ceil(2) {
        // Chebyshev-like initial guess.
        let mut x = (PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n and P_n' by upward recurrence.
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[k] = -x;
        weights[k] = w;
        nodes[n - 1 - k] = x;
        weights[n - 1 - k] = w;
    }
    (nodes, weights)
}

/// Integral of `f` over the circle of given center and radius (arc-length
/// measure), sampled at `n_quad` uniform points.
pub fn circle_integral<F: Fn(&[f64; 2], &[f64; 2]) -> f64>(
    center: &[f64; 2],
    radius: f64,
    n_quad: usize,
    f: F,
) -> f64 {
    let mut sum = 0.0;
    for j in 0..n_quad {
        let phi = 2.0 * PI * j as f64 / n_quad as f64;
        let nrm = [phi.cos(), phi.sin()];
        let x = [center[0] + radius * nrm[0], center[1] + radius * nrm[1]];
        sum += f(&x, &nrm);
    }
    sum * 2.0 * PI * radius / n_quad as f64
}

/// Integral of `f(x, outward_normal)` over the sphere of given center and
/// radius in 3D (area measure).  `n_quad` Gauss–Legendre nodes in cos(theta)
/// and 2 n_quad uniform azimuthal nodes.
pub fn sphere_integral<F: Fn(&[f64; 3], &[f64; 3]) -> f64>(
    center: &[f64; 3],
    radius: f64,
    n_quad: usize,
    f: F,
) -> f64 {
    let (nodes, weights) = gauss_legendre(n_quad);
    let nphi = 2 * n_quad;
    let dphi = 2.0 * PI / nphi as f64;
    let mut sum = 0.0;
    for (u, wu) in nodes.iter().zip(&weights) {
        let sin_t = (1.0 - u * u).sqrt();
        for j in 0..nphi {
            let phi = dphi * j as f64;
            let nrm = [sin_t * phi.cos(), sin_t * phi.sin(), *u];
            let x = [
                center[0] + radius * nrm[0],
                center[1] + radius * nrm[1],
                center[2] + radius * nrm[2],
            ];
            sum += wu * f(&x, &nrm);
        }
    }
    sum * radius * radius * dphi
}

/// Integral of `f(x, outward_normal)` over the 3-sphere of given center and
/// radius in 4D.  Gauss–Legendre in the two polar angles, uniform azimuth.
pub fn sphere3_integral<F: Fn(&[f64; 4], &[f64; 4]) -> f64>(
    center: &[f64; 4],
    radius: f64,
    n_quad: usize,
    f: F,
) -> f64 {
    let (nodes, weights) = gauss_legendre(n_quad);
    let nphi = 2 * n_quad;
    let dphi = 2.0 * PI / nphi as f64;
    let mut sum = 0.0;
    // psi in [0, pi] via GL on [-1, 1]; measure sin^2(psi) dpsi.
    for (t, wt) in nodes.iter().zip(&weights) {
        let psi = 0.5 * PI * (t + 1.0);
        let (sin_p, cos_p) = psi.sin_cos();
        let wpsi = wt * 0.5 * PI * sin_p * sin_p;
        for (u, wu) in nodes.iter().zip(&weights) {
            let sin_t = (1.0 - u * u).sqrt();
            for j in 0..nphi {
                let phi = dphi * j as f64;
                let nrm = [
                    sin_p * sin_t * phi.cos(),
                    sin_p * sin_t * phi.sin(),
                    sin_p * u,
                    cos_p,
                ];
                let mut x = [0.0; 4];
                for a in 0..4 {
                    x[a] = center[a] + radius * nrm[a];
                }
                sum += wpsi * wu * f(&x, &nrm);
            }
        }
    }
    sum * radius.powi(3) * dphi
}

/// Sum of branch-corrected increments of the angle-valued function `phase`
/// around the circle, i.e. the total change of phase along the contour.
/// Each increment is wrapped into (-pi, pi]; the sampling is doubled until
/// the largest increment falls below pi/4 (or the cap is hit).
pub fn contour_phase_total<F: Fn(&[f64; 2]) -> f64>(
    center: &[f64; 2],
    radius: f64,
    n_quad_start: usize,
    phase: F,
) -> crate::error::Result<f64> {
    let mut n = n_quad_start.max(8);
    loop {
        let mut total = 0.0;
        let mut worst = 0.0f64;
        let mut prev = phase(&[center[0] + radius, center[1]]);
        for j in 1..=n {
            let t = 2.0 * PI * j as f64 / n as f64;
            let x = [center[0] + radius * t.cos(), center[1] + radius * t.sin()];
            let cur = phase(&x);
            let mut inc = cur - prev;
            // wrap into (-pi, pi]
            inc -= 2.0 * PI * ((inc + PI) / (2.0 * PI)).floor();
            worst = worst.max(inc.abs());
            total += inc;
            prev = cur;
        }
        if worst < PI / 4.0 {
            return Ok(total);
        }
        if n >= 1 << 20 {
            return Err(crate::error::Error::Undersampled(worst));
        }
        n *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sphere_areas_match_gamma_function_formula() {
        // 2 pi^{d/2} / Gamma(d/2) with Gamma(1) = 1, Gamma(3/2) = sqrt(pi)/2,
        // Gamma(2) = 1.
        assert_relative_eq!(sphere_area(2), 2.0 * PI.powf(1.0) / 1.0, epsilon = 1e-14);
        assert_relative_eq!(
            sphere_area(3),
            2.0 * PI.powf(1.5) / (PI.sqrt() / 2.0),
            epsilon = 1e-12
        );
        assert_relative_eq!(sphere_area(4), 2.0 * PI.powf(2.0) / 1.0, epsilon = 1e-14);
    }

    #[test]
    fn gauss_legendre_integrates_high_degree_polynomials() {
        let (x, w) = gauss_legendre(8);
        // degree 15 is exact for n = 8
        let integral: f64 = x
            .iter()
            .zip(&w)
            .map(|(xi, wi)| wi * (xi.powi(14) + 3.0 * xi.powi(7)))
            .sum();
        assert_relative_eq!(integral, 2.0 / 15.0, epsilon = 1e-13);
    }

    #[test]
    fn sphere_integral_of_unity_is_area() {
        let a = sphere_integral(&[0.0; 3], 2.0, 16, |_, _| 1.0);
        assert_relative_eq!(a, 4.0 * PI * 4.0, epsilon = 1e-10);
    }

    #[test]
    fn sphere_flux_of_inverse_square_field_radius_independent() {
        // v = r_hat / r^2 about the origin: flux = 4 pi at any radius.
        let flux = |radius: f64| {
            sphere_integral(&[0.0; 3], radius, 24, |x, nrm| {
                let r2 = x.iter().map(|a| a * a).sum::<f64>();
                let r = r2.sqrt();
                (x[0] * nrm[0] + x[1] * nrm[1] + x[2] * nrm[2]) / (r * r2)
            })
        };
        assert_relative_eq!(flux(1.0), 4.0 * PI, epsilon = 1e-10);
        assert_relative_eq!(flux(3.5), 4.0 * PI, epsilon = 1e-10);
    }

    #[test]
    fn sphere3_integral_of_unity_is_area() {
        let a = sphere3_integral(&[0.0; 4], 1.5, 16, |_, _| 1.0);
        assert_relative_eq!(a, 2.0 * PI * PI * 1.5f64.powi(3), epsilon = 1e-8);
    }

    #[test]
    fn contour_phase_of_pure_angle_is_two_pi() {
        let total =
            contour_phase_total(&[0.0, 0.0], 1.0, 16, |x| x[1].atan2(x[0])).unwrap();
        assert_relative_eq!(total, 2.0 * PI, epsilon = 1e-12);
    }

    #[test]
    fn contour_phase_away_from_origin_is_zero() {
        let total =
            contour_phase_total(&[5.0, 0.0], 1.0, 16, |x| x[1].atan2(x[0])).unwrap();
        assert_relative_eq!(total, 0.0, epsilon = 1e-12);
    }
}
