//! Verification suites producing one `Report` per check.

use std::str::FromStr;

use nalgebra::Vector3;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::json;

use crate::action::{
    finite_diff_check_lie_action, homomorphism_defect, random_grid, random_nbar_ma, GaussianSection, LieGenerator,
    Rep,
};
use crate::bruhat::random_decomposition_sweep;
use crate::error::{NumericError, Result};
use crate::fourier_check::{projection_recursion_check, ShellSection};
use crate::group::GroupMatrix;
use crate::multiplier::{default_fields, quadrature_multiplier_check, QuadratureSetup};
use crate::report::{params, Report, Tolerances};

pub const DECOMPOSITION_SAMPLES: usize = 1000;
pub const LIE_STEP: f64 = 1e-5;
pub const HOMOMORPHISM_TOLERANCE: f64 = 1e-8;
pub const MULTIPLIER_LAMBDAS: [f64; 3] = [0.125, 0.25, 0.375];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Decomposition,
    LieAction,
    Multiplier,
    All,
}

impl FromStr for Suite {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "decomposition" => Ok(Suite::Decomposition),
            "lie-action" => Ok(Suite::LieAction),
            "multiplier" => Ok(Suite::Multiplier),
            "all" => Ok(Suite::All),
            _ => Err(NumericError::InvalidParameter(format!("unknown suite {s}"))),
        }
    }
}

pub fn decomposition_reports(n: usize, seed: u64, tol: &Tolerances) -> Result<Vec<Report>> {
    let sweep = random_decomposition_sweep(n, DECOMPOSITION_SAMPLES, seed, 1e-3)?;
    let p = || params([("n", json!(n)), ("samples", json!(sweep.samples)), ("seed", json!(seed))]);
    let mut out = vec![
        Report::residual("w0_nbar_decomposition", p(), sweep.max_w0_residual, tol.decomposition),
        Report::residual("bruhat_decomposition", p(), sweep.max_bruhat_residual, tol.decomposition),
        Report::residual("m_part_orthogonality", p(), sweep.max_orthogonality_defect, tol.decomposition),
    ];
    let mut rng = StdRng::seed_from_u64(seed ^ 0x5eed);
    let mut defect: f64 = 0.0;
    for _ in 0..100 {
        let g = random_nbar_ma(n, &mut rng)?.compose(&GroupMatrix::n_pos(&crate::bruhat::random_vector(
            &mut rng, n, 0.0, 1.0,
        )));
        defect = defect.max(g.form_defect());
    }
    out.push(Report::residual("form_preservation", p(), defect, tol.decomposition));
    Ok(out)
}

pub fn lie_action_reports(seed: u64, tol: &Tolerances) -> Result<Vec<Report>> {
    let n = 3;
    let grid = random_grid(n, 24, 1.5, seed);
    let mut out = Vec::new();
    for rep in [Rep::Trivial, Rep::Standard] {
        let f = GaussianSection::random(n, rep.dim(n), seed.wrapping_add(1));
        for lambda in [0.0, 0.35, -1.2] {
            for gen in LieGenerator::all(n) {
                let p = params([
                    ("n", json!(n)),
                    ("sigma", json!(rep.name())),
                    ("lambda", json!(lambda)),
                    ("generator", json!(gen.label())),
                    ("step", json!(LIE_STEP)),
                    ("seed", json!(seed)),
                ]);
                out.push(match finite_diff_check_lie_action(gen, &f, rep, lambda, LIE_STEP, &grid) {
                    Ok(e) => Report::residual("lie_action", p, e, tol.finite_diff),
                    Err(e) => Report::failed("lie_action", p, 0.0, tol.finite_diff, e.to_string()),
                });
            }
        }
        let mut rng = StdRng::seed_from_u64(seed.wrapping_add(2));
        let mut worst: f64 = 0.0;
        for _ in 0..5 {
            let g1 = random_nbar_ma(n, &mut rng)?;
            let g2 = random_nbar_ma(n, &mut rng)?;
            worst = worst.max(homomorphism_defect(&g1, &g2, &f, rep, 0.35, &grid)?);
        }
        let p = params([("n", json!(n)), ("sigma", json!(rep.name())), ("lambda", json!(0.35)), ("seed", json!(seed))]);
        out.push(Report::residual("homomorphism", p, worst, HOMOMORPHISM_TOLERANCE));
    }
    Ok(out)
}

pub fn multiplier_reports(seed: u64, tol: &Tolerances) -> Result<Vec<Report>> {
    let setup = QuadratureSetup::default();
    let mut out = Vec::new();
    for lambda in MULTIPLIER_LAMBDAS {
        let p = params([("n", json!(3)), ("sigma", json!("standard")), ("lambda", json!(lambda))]);
        let expected = (0.5 - lambda) / (0.5 + lambda);
        out.push(match quadrature_multiplier_check(3, lambda, &default_fields(), &setup) {
            Ok(m) => Report::compare("multiplier_ratio", p, m.expected, m.ratio, tol.quadrature),
            Err(e) => Report::failed("multiplier_ratio", p, expected, tol.quadrature, e.to_string()),
        });
    }
    let c = Vector3::new(0.4, -0.9, 0.6);
    for (tau, step) in [(0, 1), (0, -1), (1, -1), (-1, 1)] {
        let f = ShellSection::new(tau, c, 0.5, 2.0)?;
        for lambda in [0.3, 0.5, 1.7] {
            let mut worst: f64 = 0.0;
            let mut scalar = 0.0;
            for j in 0..3 {
                let r = projection_recursion_check(&f, lambda, step, j, 30, seed)?;
                worst = worst.max(r.relative_error);
                scalar = r.scalar;
            }
            let p = params([
                ("n", json!(3)),
                ("sigma", json!("standard")),
                ("lambda", json!(lambda)),
                ("tau", json!(tau)),
                ("target", json!(tau + step)),
                ("scalar", json!(scalar)),
                ("seed", json!(seed)),
            ]);
            out.push(Report::residual("projection_recursion", p, worst, tol.finite_diff));
        }
    }
    Ok(out)
}

pub fn run_suite(suite: Suite, seed: u64, tol: &Tolerances) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Decomposition | Suite::All) {
        for n in [3, 4, 5] {
            out.extend(decomposition_reports(n, seed, tol)?);
        }
    }
    if matches!(suite, Suite::LieAction | Suite::All) {
        out.extend(lie_action_reports(seed, tol)?);
    }
    if matches!(suite, Suite::Multiplier | Suite::All) {
        out.extend(multiplier_reports(seed, tol)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!("lie-action".parse::<Suite>().unwrap(), Suite::LieAction);
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn decomposition_suite_passes() {
        let r = run_suite(Suite::Decomposition, 1, &Tolerances::default()).unwrap();
        assert_eq!(r.len(), 12);
        assert!(r.iter().all(|x| x.pass), "{r:?}");
    }
}
