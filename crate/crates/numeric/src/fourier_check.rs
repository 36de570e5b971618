//! Finite-difference check of how `d pi-hat(N_j)` moves sections of one
//! `M_xi`-eigenbundle into the neighbouring ones, for `n = 3` and the
//! standard representation of `SO(3)`.
//!
//! At `xi != 0` the space `C^3` splits into `span(xi)` (`tau = 0`) and the
//! two complex lines `(P_perp -+ i J) / 2` (`tau = +-1`), where `J v = xi^ x v`.

use nalgebra::{Complex, Matrix3, Vector3};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{NumericError, Result};

type C = Complex<f64>;

const N: f64 = 3.0;
const STEP: f64 = 1e-4;

fn cplx(m: &Matrix3<f64>) -> Matrix3<C> {
    m.map(|v| C::new(v, 0.0))
}

/// Pointwise projection onto the `tau`-eigenline at `xi`.
pub fn projector(tau: i32, xi: &Vector3<f64>) -> Result<Matrix3<C>> {
    let r = xi.norm();
    if r == 0.0 {
        return Err(NumericError::Singular("xi = 0".into()));
    }
    let u = xi / r;
    let p0 = u * u.transpose();
    let perp = Matrix3::identity() - p0;
    let j = u.cross_matrix();
    match tau {
        0 => Ok(cplx(&p0)),
        1 | -1 => {
            let s = -(tau as f64);
            Ok((cplx(&perp) + cplx(&j) * C::new(0.0, s)) * C::new(0.5, 0.0))
        }
        _ => Err(NumericError::InvalidParameter(format!("tau = {tau} is not a weight of SO(2) in C^3"))),
    }
}

/// `b(|xi|) P_tau(xi) c` with `b` a smooth bump on the shell
/// `inner < |xi| < outer`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShellSection {
    pub tau: i32,
    pub c: Vector3<f64>,
    pub inner: f64,
    pub outer: f64,
}

impl ShellSection {
    pub fn new(tau: i32, c: Vector3<f64>, inner: f64, outer: f64) -> Result<Self> {
        if !(inner > 0.0) {
            return Err(NumericError::Singular("support touches xi = 0".into()));
        }
        if !(outer > inner) {
            return Err(NumericError::InvalidParameter("empty shell".into()));
        }
        projector(tau, &Vector3::x())?;
        Ok(ShellSection { tau, c, inner, outer })
    }

    fn bump(&self, r: f64) -> f64 {
        if r <= self.inner || r >= self.outer {
            return 0.0;
        }
        (-1.0 / ((r - self.inner) * (self.outer - r))).exp()
    }

    pub fn eval(&self, xi: &Vector3<f64>) -> Vector3<C> {
        let b = self.bump(xi.norm());
        if b == 0.0 {
            return Vector3::zeros();
        }
        let p = projector(self.tau, xi).expect("checked in new");
        p * self.c.map(|v| C::new(v, 0.0)) * C::new(b, 0.0)
    }

    fn shifted(&self, xi: &Vector3<f64>, moves: &[(usize, f64)]) -> Vector3<C> {
        let mut p = *xi;
        for &(k, h) in moves {
            p[k] += h;
        }
        self.eval(&p)
    }

    fn partial(&self, xi: &Vector3<f64>, k: usize) -> Vector3<C> {
        (self.shifted(xi, &[(k, STEP)]) - self.shifted(xi, &[(k, -STEP)])) / C::new(2.0 * STEP, 0.0)
    }

    fn second(&self, xi: &Vector3<f64>, k: usize, l: usize) -> Vector3<C> {
        let h = STEP;
        if k == l {
            (self.shifted(xi, &[(k, h)]) - self.eval(xi) * C::new(2.0, 0.0) + self.shifted(xi, &[(k, -h)]))
                / C::new(h * h, 0.0)
        } else {
            (self.shifted(xi, &[(k, h), (l, h)]) - self.shifted(xi, &[(k, h), (l, -h)])
                - self.shifted(xi, &[(k, -h), (l, h)])
                + self.shifted(xi, &[(k, -h), (l, -h)]))
                / C::new(4.0 * h * h, 0.0)
        }
    }
}

/// `d pi-hat(N_j) f = -i (xi_j Lap f - 2 (E - lambda + rho) d_j f
/// - 2 (grad f_j - e_j div f))`, zero-based `j`.
pub fn fpicture_n_action(f: &ShellSection, lambda: f64, j: usize, xi: &Vector3<f64>) -> Vector3<C> {
    let rho = N / 2.0;
    let grads: Vec<Vector3<C>> = (0..3).map(|k| f.partial(xi, k)).collect();
    let lap: Vector3<C> = (0..3).map(|k| f.second(xi, k, k)).sum();
    let euler_dj: Vector3<C> = (0..3).map(|k| f.second(xi, k, j) * C::new(xi[k], 0.0)).sum();
    let dj = &grads[j];
    let grad_fj = Vector3::new(grads[0][j], grads[1][j], grads[2][j]);
    let div = grads[0][0] + grads[1][1] + grads[2][2];
    let mut ej_div = Vector3::zeros();
    ej_div[j] = div;
    let inner = lap * C::new(xi[j], 0.0) - (euler_dj + dj * C::new(rho - lambda, 0.0)) * C::new(2.0, 0.0)
        - (grad_fj - ej_div) * C::new(2.0, 0.0);
    inner * C::new(0.0, -1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecursionCheck {
    pub tau: i32,
    pub target: i32,
    pub j: usize,
    pub lambda: f64,
    /// `2 lambda + 1 +- 2 tau`.
    pub scalar: f64,
    pub max_abs_error: f64,
    /// `max |pr (d_j f)|` over the samples.
    pub scale: f64,
    /// Error over `max(|rhs|, |pr d_j f|)`.
    pub relative_error: f64,
}

/// Compares `pr_target(d pi-hat(N_j) f)` with
/// `-i (2 lambda + 1 +- 2 tau) pr_target(d_j f)` at seeded points inside the
/// support of `f`.
pub fn projection_recursion_check(
    f: &ShellSection,
    lambda: f64,
    step: i32,
    j: usize,
    samples: usize,
    seed: u64,
) -> Result<RecursionCheck> {
    if step != 1 && step != -1 {
        return Err(NumericError::InvalidParameter("step must be +1 or -1".into()));
    }
    if j >= 3 {
        return Err(NumericError::Dimension { expected: 3, found: j });
    }
    let target = f.tau + step;
    projector(target, &Vector3::x())?;
    let scalar = 2.0 * lambda + 1.0 + 2.0 * step as f64 * f.tau as f64;
    let mut rng = StdRng::seed_from_u64(seed);
    let margin = 0.15 * (f.outer - f.inner);
    let (lo, hi) = (f.inner + margin, f.outer - margin);
    let mut err: f64 = 0.0;
    let mut rhs_max: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for _ in 0..samples {
        let dir = loop {
            let v = Vector3::from_fn(|_, _| rng.random_range(-1.0..1.0));
            let r = v.norm();
            if r > 1e-3 && r <= 1.0 {
                break v / r;
            }
        };
        let xi = dir * rng.random_range(lo..hi);
        let p = projector(target, &xi)?;
        let lhs = p * fpicture_n_action(f, lambda, j, &xi);
        let pd = p * f.partial(&xi, j);
        let rhs = pd * C::new(0.0, -scalar);
        err = err.max((lhs - rhs).camax());
        rhs_max = rhs_max.max(rhs.camax());
        scale = scale.max(pd.camax());
    }
    let denom = rhs_max.max(scale);
    Ok(RecursionCheck {
        tau: f.tau,
        target,
        j,
        lambda,
        scalar,
        max_abs_error: err,
        scale,
        relative_error: if denom > 0.0 { err / denom } else { err },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn section(tau: i32) -> ShellSection {
        ShellSection::new(tau, Vector3::new(0.4, -0.9, 0.6), 0.5, 2.0).unwrap()
    }

    #[test]
    fn projectors_split_c3() {
        let xi = Vector3::new(0.3, -1.1, 0.8);
        let ps: Vec<Matrix3<C>> = [-1, 0, 1].iter().map(|t| projector(*t, &xi).unwrap()).collect();
        let sum = ps[0] + ps[1] + ps[2];
        assert!((sum - Matrix3::identity().map(|v| C::new(v, 0.0))).camax() < 1e-15);
        for (a, p) in ps.iter().enumerate() {
            assert!((p * p - p).camax() < 1e-15);
            assert!((p.adjoint() - p).camax() < 1e-15);
            for (b, q) in ps.iter().enumerate() {
                if a != b {
                    assert!((p * q).camax() < 1e-15);
                }
            }
        }
        assert!(projector(2, &xi).is_err());
        assert!(projector(0, &Vector3::zeros()).is_err());
    }

    #[test]
    fn support_must_avoid_origin() {
        assert!(ShellSection::new(0, Vector3::x(), 0.0, 1.0).is_err());
        assert!(ShellSection::new(0, Vector3::x(), 1.0, 0.5).is_err());
    }

    #[test]
    fn transitions_from_the_longitudinal_line() {
        for lambda in [-0.7, 0.0, 0.3, 1.25] {
            for step in [1, -1] {
                for j in 0..3 {
                    let r = projection_recursion_check(&section(0), lambda, step, j, 40, 5).unwrap();
                    assert_eq!(r.scalar, 2.0 * lambda + 1.0);
                    assert!(r.relative_error < 1e-4, "{r:?}");
                }
            }
        }
    }

    #[test]
    fn transitions_back_to_the_longitudinal_line() {
        for (tau, step) in [(1, -1), (-1, 1)] {
            for lambda in [-0.2, 0.8, 2.0] {
                for j in 0..3 {
                    let r = projection_recursion_check(&section(tau), lambda, step, j, 40, 6).unwrap();
                    assert_eq!(r.scalar, 2.0 * lambda - 1.0);
                    assert!(r.relative_error < 1e-4, "{r:?}");
                }
            }
        }
    }

    #[test]
    fn vanishing_coefficient_at_half() {
        for j in 0..3 {
            let r = projection_recursion_check(&section(1), 0.5, -1, j, 40, 7).unwrap();
            assert_eq!(r.scalar, 0.0);
            assert!(r.max_abs_error < 1e-6 * r.scale.max(1.0), "{r:?}");
        }
    }

    #[test]
    fn no_neighbour_beyond_the_standard_weights() {
        assert!(projection_recursion_check(&section(1), 0.3, 1, 0, 4, 1).is_err());
        assert!(projection_recursion_check(&section(0), 0.3, 2, 0, 4, 1).is_err());
    }
}
