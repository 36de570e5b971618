//! Quadrature check of the Fourier multiplier of the standard intertwiner on
//! vector fields over `R^3`.
//!
//! The kernel `|u|^{2 lambda - 3} (I - 2uu^t/|u|^2)` is paired with fields
//! `f(x) = A x exp(-|x|^2/2)`, whose transforms `-i A xi exp(-|xi|^2/2)` split
//! into a longitudinal part (along `xi`) and a transversal part. Fitting the
//! spatial pairings against the two spectral weights gives the multipliers on
//! both pieces up to a common constant.

use gauss_quad::{GaussHermite, GaussLegendre};
use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use quadrature::double_exponential;
use serde::{Deserialize, Serialize};

use crate::error::{NumericError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum TestField {
    /// Gradient of the Gaussian, longitudinal on the Fourier side.
    Gradient,
    /// Gradient crossed with a fixed vector, transversal on the Fourier side.
    Curl([f64; 3]),
    Mixed([f64; 3]),
}

fn cross_matrix(c: &[f64; 3]) -> Matrix3<f64> {
    Matrix3::new(0.0, -c[2], c[1], c[2], 0.0, -c[0], -c[1], c[0], 0.0)
}

impl TestField {
    /// `A` with `f(x) = A x exp(-|x|^2/2)`.
    pub fn matrix(&self) -> Matrix3<f64> {
        match self {
            TestField::Gradient => -Matrix3::identity(),
            TestField::Curl(c) => cross_matrix(c),
            TestField::Mixed(c) => cross_matrix(c) - Matrix3::identity(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TestField::Gradient => "gradient",
            TestField::Curl(_) => "curl",
            TestField::Mixed(_) => "mixed",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSetup {
    pub hermite_points: usize,
    pub polar_points: usize,
    pub azimuth_points: usize,
    pub radius_cutoff: f64,
    pub target_error: f64,
}

impl Default for QuadratureSetup {
    fn default() -> Self {
        QuadratureSetup {
            hermite_points: 4,
            polar_points: 8,
            azimuth_points: 16,
            radius_cutoff: 14.0,
            target_error: 1e-11,
        }
    }
}

/// Product rule on `S^2`: Gauss-Legendre in `cos theta`, trapezoid in `phi`.
fn sphere_rule(setup: &QuadratureSetup) -> Result<Vec<(Vector3<f64>, f64)>> {
    let deg = setup
        .polar_points
        .try_into()
        .map_err(|_| NumericError::InvalidParameter("polar_points must be positive".into()))?;
    let gl = GaussLegendre::new(deg);
    let dphi = 2.0 * std::f64::consts::PI / setup.azimuth_points as f64;
    let mut out = Vec::new();
    for &(c, w) in gl.as_node_weight_pairs() {
        let s = (1.0 - c * c).sqrt();
        for k in 0..setup.azimuth_points {
            let phi = k as f64 * dphi;
            out.push((Vector3::new(s * phi.cos(), s * phi.sin(), c), w * dphi));
        }
    }
    Ok(out)
}

fn hermite_cube(points: usize) -> Result<Vec<(Vector3<f64>, f64)>> {
    let deg = points
        .try_into()
        .map_err(|_| NumericError::InvalidParameter("hermite_points must be positive".into()))?;
    let gh = GaussHermite::new(deg);
    let p = gh.as_node_weight_pairs();
    let mut out = Vec::with_capacity(points.pow(3));
    for &(x, wx) in p {
        for &(y, wy) in p {
            for &(z, wz) in p {
                out.push((Vector3::new(x, y, z), wx * wy * wz));
            }
        }
    }
    Ok(out)
}

/// `C(u) = int f(y+u) f(y)^t dy` by Gauss-Hermite after centering at `-u/2`.
pub fn correlation(a: &Matrix3<f64>, u: &Vector3<f64>, cube: &[(Vector3<f64>, f64)]) -> Matrix3<f64> {
    let half = u / 2.0;
    let mut c = Matrix3::zeros();
    for (w, wt) in cube {
        let p = a * (w + half);
        let q = a * (w - half);
        c += p * q.transpose() * *wt;
    }
    c * (-u.norm_squared() / 4.0).exp()
}

fn de_integral<F: Fn(f64) -> f64>(f: F, hi: f64, setup: &QuadratureSetup, what: &str) -> Result<f64> {
    let out = double_exponential::integrate(f, 0.0, hi, setup.target_error);
    let allowed = 1e3 * setup.target_error * out.integral.abs().max(1.0);
    if !out.integral.is_finite() || out.error_estimate > allowed {
        return Err(NumericError::Quadrature(format!(
            "{what}: integral {} with error estimate {:e} after {} evaluations",
            out.integral, out.error_estimate, out.num_function_evaluations
        )));
    }
    Ok(out.integral)
}

/// `int <f(x), K(x - y) f(y)> dx dy` for `f(x) = A x exp(-|x|^2/2)`.
///
/// In polar coordinates the radial factor is `r^{2 lambda - 1}`; the
/// substitution `r = s^{1/(2 lambda)}` turns it into the constant
/// `1/(2 lambda)`.
pub fn spatial_pairing(a: &Matrix3<f64>, lambda: f64, setup: &QuadratureSetup) -> Result<f64> {
    let sphere = sphere_rule(setup)?;
    let cube = hermite_cube(setup.hermite_points)?;
    let angular = |r: f64| -> f64 {
        sphere
            .iter()
            .map(|(d, wt)| {
                let c = correlation(a, &(d * r), &cube);
                let refl = Matrix3::identity() - d * d.transpose() * 2.0;
                refl.component_mul(&c).sum() * wt
            })
            .sum()
    };
    let p = 1.0 / (2.0 * lambda);
    let top = setup.radius_cutoff.powf(2.0 * lambda);
    Ok(de_integral(|s| angular(s.powf(p)), top, setup, "spatial pairing")? * p)
}

/// `(int |P0 f^|^2 |xi|^{-2 lambda}, int |P_perp f^|^2 |xi|^{-2 lambda})`.
pub fn spectral_weights(a: &Matrix3<f64>, lambda: f64, setup: &QuadratureSetup) -> Result<(f64, f64)> {
    let radial = de_integral(
        |r| r.powf(4.0 - 2.0 * lambda) * (-r * r).exp(),
        setup.radius_cutoff,
        setup,
        "spectral radial factor",
    )?;
    let mut long = 0.0;
    let mut trans = 0.0;
    for (d, wt) in sphere_rule(setup)? {
        let v = a * d;
        let along = d.dot(&v);
        long += along * along * wt;
        trans += (v - d * along).norm_squared() * wt;
    }
    Ok((long * radial, trans * radial))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldMeasurement {
    pub field: String,
    pub spatial: f64,
    pub longitudinal: f64,
    pub transversal: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplierMeasurement {
    pub lambda: f64,
    pub fields: Vec<FieldMeasurement>,
    /// Fitted multiplier on longitudinal vectors, up to the kernel constant.
    pub longitudinal: f64,
    pub transversal: f64,
    pub ratio: f64,
    pub expected: f64,
}

pub fn default_fields() -> Vec<TestField> {
    vec![
        TestField::Gradient,
        TestField::Curl([0.3, -0.5, 0.8]),
        TestField::Mixed([-0.6, 0.2, 0.4]),
    ]
}

/// Transversal over longitudinal multiplier for the standard representation
/// of `SO(3)`, fitted by least squares over `fields`.
pub fn quadrature_multiplier_check(
    n: usize,
    lambda: f64,
    fields: &[TestField],
    setup: &QuadratureSetup,
) -> Result<MultiplierMeasurement> {
    if n != 3 {
        return Err(NumericError::InvalidParameter(format!("quadrature check needs n = 3, got {n}")));
    }
    if !(lambda > 0.0 && lambda < 0.5) {
        return Err(NumericError::InvalidParameter(format!("lambda = {lambda} outside (0, 1/2)")));
    }
    if fields.len() < 2 {
        return Err(NumericError::InvalidParameter("need at least two test fields".into()));
    }
    let mut rows = Vec::new();
    for f in fields {
        let a = f.matrix();
        let spatial = spatial_pairing(&a, lambda, setup)?;
        let (long, trans) = spectral_weights(&a, lambda, setup)?;
        rows.push(FieldMeasurement {
            field: f.name().to_string(),
            spatial,
            longitudinal: long,
            transversal: trans,
        });
    }
    let design = DMatrix::from_fn(rows.len(), 2, |i, j| {
        if j == 0 {
            rows[i].longitudinal
        } else {
            rows[i].transversal
        }
    });
    let rhs = DVector::from_iterator(rows.len(), rows.iter().map(|r| r.spatial));
    let fit = design
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .map_err(|e| NumericError::Quadrature(format!("least squares failed: {e}")))?;
    let (long, trans) = (fit[0], fit[1]);
    if long == 0.0 {
        return Err(NumericError::Quadrature("longitudinal multiplier vanished".into()));
    }
    let half = n as f64 / 2.0 - 1.0;
    Ok(MultiplierMeasurement {
        lambda,
        fields: rows,
        longitudinal: long,
        transversal: trans,
        ratio: trans / long,
        expected: (half - lambda) / (half + lambda),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact_correlation(a: &Matrix3<f64>, u: &Vector3<f64>) -> Matrix3<f64> {
        let pi32 = std::f64::consts::PI.powf(1.5);
        let inner = Matrix3::identity() / 2.0 - u * u.transpose() / 4.0;
        a * inner * a.transpose() * (pi32 * (-u.norm_squared() / 4.0).exp())
    }

    #[test]
    fn hermite_correlation_is_exact_for_quadratic_fields() {
        let cube = hermite_cube(4).unwrap();
        for f in default_fields() {
            let a = f.matrix();
            for u in [Vector3::new(0.0, 0.0, 0.0), Vector3::new(0.7, -1.2, 2.0)] {
                let diff = correlation(&a, &u, &cube) - exact_correlation(&a, &u);
                assert!(diff.amax() < 1e-13, "{diff}");
            }
        }
    }

    #[test]
    fn sphere_rule_integrates_quartics() {
        let rule = sphere_rule(&QuadratureSetup::default()).unwrap();
        let area: f64 = rule.iter().map(|(_, w)| w).sum();
        assert!((area - 4.0 * std::f64::consts::PI).abs() < 1e-13);
        let z4: f64 = rule.iter().map(|(d, w)| d[2].powi(4) * w).sum();
        assert!((z4 - 4.0 * std::f64::consts::PI / 5.0).abs() < 1e-13);
    }

    #[test]
    fn gradient_field_is_purely_longitudinal() {
        let (l, t) = spectral_weights(&TestField::Gradient.matrix(), 0.25, &QuadratureSetup::default()).unwrap();
        assert!(l > 0.0 && t.abs() < 1e-14 * l);
        let (l, t) = spectral_weights(&TestField::Curl([0.0, 0.0, 1.0]).matrix(), 0.25, &QuadratureSetup::default()).unwrap();
        assert!(t > 0.0 && l.abs() < 1e-14 * t);
    }

    #[test]
    fn ratio_at_quarter() {
        let m = quadrature_multiplier_check(3, 0.25, &default_fields(), &QuadratureSetup::default()).unwrap();
        assert!((m.expected - 1.0 / 3.0).abs() < 1e-15);
        assert!((m.ratio - m.expected).abs() < 1e-2, "{m:?}");
    }

    #[test]
    fn ratio_tends_to_one_as_lambda_shrinks() {
        let m = quadrature_multiplier_check(3, 1.0 / 64.0, &default_fields(), &QuadratureSetup::default()).unwrap();
        assert!((m.ratio - m.expected).abs() < 1e-2, "{m:?}");
        assert!(m.ratio > 0.9);
    }

    #[test]
    fn rejects_bad_input() {
        let s = QuadratureSetup::default();
        assert!(quadrature_multiplier_check(4, 0.25, &default_fields(), &s).is_err());
        assert!(quadrature_multiplier_check(3, 0.5, &default_fields(), &s).is_err());
        assert!(quadrature_multiplier_check(3, 0.25, &[TestField::Gradient], &s).is_err());
    }
}
