//! Closed-form Bruhat factorizations of `w0 n-bar_x` and `n_y^{-1} n-bar_x`,
//! with residuals measured against the matrices themselves.

use nalgebra::{DMatrix, DVector};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use crate::error::{NumericError, Result};
use crate::group::{a, build_generators, m_block, max_abs, n_pos, nbar};

#[derive(Clone, Debug, PartialEq)]
pub struct W0Decomposition {
    pub y: DVector<f64>,
    pub m_part: DMatrix<f64>,
    pub t: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BruhatDecomposition {
    pub z: DVector<f64>,
    pub m_part: DMatrix<f64>,
    pub t: f64,
    pub residual: f64,
}

fn reflection(u: &DVector<f64>) -> DMatrix<f64> {
    let n = u.len();
    u * u.transpose() * (2.0 / u.norm_squared()) - DMatrix::identity(n, n)
}

/// `max |m^t m - I|`.
pub fn orthogonality_defect(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    max_abs(&(m.transpose() * m - DMatrix::identity(n, n)))
}

/// `w0 n-bar_x = n-bar_y m exp(t H0) n_y` with `y = -x/|x|^2`,
/// `m = 2xx^t/|x|^2 - I`, `t = 2 log |x|`. The residual is the largest entry
/// of the difference relative to `max(1, max|w0 n-bar_x|)`.
pub fn decompose_w0_nbar(x: &DVector<f64>) -> Result<W0Decomposition> {
    let n = x.len();
    let r2 = x.norm_squared();
    if r2 == 0.0 {
        return Err(NumericError::Singular("x = 0".into()));
    }
    let y = -x / r2;
    let m_part = reflection(x);
    let t = r2.ln();
    let lhs = build_generators(n)?.w0 * nbar(x);
    let rhs = nbar(&y) * m_block(&m_part) * a(n, t) * n_pos(&y);
    let residual = max_abs(&(&lhs - rhs)) / max_abs(&lhs).max(1.0);
    Ok(W0Decomposition {
        y,
        m_part,
        t,
        residual,
    })
}

/// `n_y^{-1} n-bar_x = n-bar_z m exp(t H0) n_1`. With `u = x + |x|^2 y`:
/// `z = |x|^2 u/|u|^2`, `m = (2uu^t/|u|^2 - I)(2xx^t/|x|^2 - I)`,
/// `t = 2 log(|u|/|x|)`. The residual is the distance of
/// `(n-bar_z m exp(t H0))^{-1} n_y^{-1} n-bar_x` from `N`, relative to the
/// size of the factors.
pub fn decompose_bruhat(y: &DVector<f64>, x: &DVector<f64>) -> Result<BruhatDecomposition> {
    let n = x.len();
    if y.len() != n {
        return Err(NumericError::Dimension {
            expected: n,
            found: y.len(),
        });
    }
    if n < 2 {
        return Err(NumericError::Rank { min: 2, found: n });
    }
    let r2 = x.norm_squared();
    if r2 == 0.0 {
        return Err(NumericError::Singular("x = 0".into()));
    }
    let u: DVector<f64> = x + y * r2;
    let u2 = u.norm_squared();
    if u2 == 0.0 {
        return Err(NumericError::Singular("|x|^2 y + x = 0".into()));
    }
    let z = &u * (r2 / u2);
    let m_part = reflection(&u) * reflection(x);
    let t = (u2 / r2).ln();
    let h = n_pos(&-y) * nbar(x);
    let head_inv = a(n, -t) * m_block(&m_part.transpose()) * nbar(&-&z);
    let q = &head_inv * &h;
    let w: DVector<f64> = q.view((0, n), (n, 1)).column(0).into_owned();
    let scale = (max_abs(&head_inv) * max_abs(&h)).max(1.0);
    let residual = max_abs(&(q - n_pos(&w))) / scale;
    Ok(BruhatDecomposition {
        z,
        m_part,
        t,
        residual,
    })
}

/// Uniform direction times a norm drawn from `[lo, hi]`.
pub fn random_vector(rng: &mut StdRng, n: usize, lo: f64, hi: f64) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
        let r = v.norm();
        if r > 1e-3 && r <= 1.0 {
            return v * (rng.random_range(lo..=hi) / r);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepResult {
    pub samples: usize,
    pub max_w0_residual: f64,
    pub max_bruhat_residual: f64,
    pub max_orthogonality_defect: f64,
}

/// Random inputs with `|x|, |y|` in `[0.1, 10]`; Bruhat inputs closer than
/// `margin` to the singular set `|x|^2 y + x = 0` are redrawn.
pub fn random_decomposition_sweep(n: usize, samples: usize, seed: u64, margin: f64) -> Result<SweepResult> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = SweepResult {
        samples,
        max_w0_residual: 0.0,
        max_bruhat_residual: 0.0,
        max_orthogonality_defect: 0.0,
    };
    for _ in 0..samples {
        let x = random_vector(&mut rng, n, 0.1, 10.0);
        let d = decompose_w0_nbar(&x)?;
        out.max_w0_residual = out.max_w0_residual.max(d.residual);
        out.max_orthogonality_defect = out.max_orthogonality_defect.max(orthogonality_defect(&d.m_part));
        let (x, y) = loop {
            let x = random_vector(&mut rng, n, 0.1, 10.0);
            let y = random_vector(&mut rng, n, 0.1, 10.0);
            if (&x + &y * x.norm_squared()).norm() > margin {
                break (x, y);
            }
        };
        let b = decompose_bruhat(&y, &x)?;
        out.max_bruhat_residual = out.max_bruhat_residual.max(b.residual);
        out.max_orthogonality_defect = out.max_orthogonality_defect.max(orthogonality_defect(&b.m_part));
    }
    Ok(out)
}
