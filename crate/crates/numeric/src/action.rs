//! Principal series on sections over `R^n`:
//! `(pi(g) f)(x) = e^{-t(lambda+rho)} sigma(m)^{-1} f(z)` where
//! `g^{-1} n-bar_x = n-bar_z m exp(t H0) n`.

use nalgebra::{DMatrix, DVector};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::bruhat::random_vector;
use crate::error::{NumericError, Result};
use crate::group::{decompose_nbar_man, nbar, GroupMatrix};

/// Spacing of the central differences used for spatial derivatives.
pub const SPATIAL_STEP: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rep {
    Trivial,
    Standard,
}

impl Rep {
    pub fn dim(&self, n: usize) -> usize {
        match self {
            Rep::Trivial => 1,
            Rep::Standard => n,
        }
    }

    /// `sigma(m)` for `m` in `O(n)`, using the matrix itself on the standard
    /// representation.
    pub fn apply(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        match self {
            Rep::Trivial => DMatrix::identity(1, 1),
            Rep::Standard => m.clone(),
        }
    }

    /// `d sigma(T)` for `T` in `so(n)`.
    pub fn differential(&self, t: &DMatrix<f64>) -> DMatrix<f64> {
        match self {
            Rep::Trivial => DMatrix::zeros(1, 1),
            Rep::Standard => t.clone(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Rep::Trivial => "trivial",
            Rep::Standard => "standard",
        }
    }
}

pub trait Section {
    fn n(&self) -> usize;
    fn dim(&self) -> usize;
    fn eval(&self, x: &DVector<f64>) -> Result<DVector<f64>>;
}

/// `(c + L(x - x0)) exp(-|x - x0|^2 / (2 w^2))`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianSection {
    pub center: DVector<f64>,
    pub width: f64,
    pub constant: DVector<f64>,
    pub linear: DMatrix<f64>,
}

impl GaussianSection {
    pub fn random(n: usize, dim: usize, seed: u64) -> Self {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut draw = |_, _| rng.random_range(-1.0..1.0);
        let center = DVector::from_fn(n, &mut draw) * 0.3;
        let constant = DVector::from_fn(dim, &mut draw);
        let linear = DMatrix::from_fn(dim, n, &mut draw);
        GaussianSection {
            center,
            width: 1.0,
            constant,
            linear,
        }
    }

    /// Radial Gaussian centered at the origin.
    pub fn radial(n: usize, dim: usize) -> Self {
        GaussianSection {
            center: DVector::zeros(n),
            width: 1.0,
            constant: DVector::from_element(dim, 1.0),
            linear: DMatrix::zeros(dim, n),
        }
    }
}

impl Section for GaussianSection {
    fn n(&self) -> usize {
        self.center.len()
    }

    fn dim(&self) -> usize {
        self.constant.len()
    }

    fn eval(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        let d = x - &self.center;
        let g = (-d.norm_squared() / (2.0 * self.width * self.width)).exp();
        Ok((&self.constant + &self.linear * d) * g)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstantSection {
    pub n: usize,
    pub value: DVector<f64>,
}

impl Section for ConstantSection {
    fn n(&self) -> usize {
        self.n
    }

    fn dim(&self) -> usize {
        self.value.len()
    }

    fn eval(&self, _x: &DVector<f64>) -> Result<DVector<f64>> {
        Ok(self.value.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampledSection {
    pub grid: Vec<DVector<f64>>,
    pub values: Vec<DVector<f64>>,
}

impl SampledSection {
    pub fn sample(f: &dyn Section, grid: &[DVector<f64>]) -> Result<Self> {
        let values = grid.iter().map(|x| f.eval(x)).collect::<Result<_>>()?;
        Ok(SampledSection {
            grid: grid.to_vec(),
            values,
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.amax()))
    }

    pub fn max_abs_diff(&self, other: &SampledSection) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).amax()))
    }
}

/// `pi_{sigma,lambda}(g) f` as a section, so actions can be composed.
pub struct Acted<'a> {
    pub g: GroupMatrix,
    pub f: &'a dyn Section,
    pub rep: Rep,
    pub lambda: f64,
}

impl Section for Acted<'_> {
    fn n(&self) -> usize {
        self.f.n()
    }

    fn dim(&self) -> usize {
        self.f.dim()
    }

    fn eval(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        let n = self.f.n();
        if x.len() != n || self.g.n() != n {
            return Err(NumericError::Dimension {
                expected: n,
                found: x.len(),
            });
        }
        let h = self.g.inverse().entries() * nbar(x);
        let parts = decompose_nbar_man(&h)?;
        let rho = n as f64 / 2.0;
        let scale = (-parts.t * (self.lambda + rho)).exp();
        Ok(self.rep.apply(&parts.m.transpose()) * self.f.eval(&parts.z)? * scale)
    }
}

pub fn noncompact_action(
    g: &GroupMatrix,
    f: &dyn Section,
    rep: Rep,
    lambda: f64,
    grid: &[DVector<f64>],
) -> Result<SampledSection> {
    let acted = Acted {
        g: g.clone(),
        f,
        rep,
        lambda,
    };
    SampledSection::sample(&acted, grid)
}

/// Basis elements of the Lie algebra used by the checks. Indices are
/// zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieGenerator {
    Nbar(usize),
    M(usize, usize),
    H0,
    N(usize),
}

impl LieGenerator {
    pub fn all(n: usize) -> Vec<LieGenerator> {
        let mut v: Vec<LieGenerator> = (0..n).map(LieGenerator::Nbar).collect();
        for a in 0..n {
            for b in a + 1..n {
                v.push(LieGenerator::M(a, b));
            }
        }
        v.push(LieGenerator::H0);
        v.extend((0..n).map(LieGenerator::N));
        v
    }

    pub fn family(&self) -> &'static str {
        match self {
            LieGenerator::Nbar(_) => "nbar",
            LieGenerator::M(..) => "m",
            LieGenerator::H0 => "a",
            LieGenerator::N(_) => "n",
        }
    }

    pub fn label(&self) -> String {
        match self {
            LieGenerator::Nbar(j) => format!("Nbar_{}", j + 1),
            LieGenerator::M(a, b) => format!("X_{}{}", a + 1, b + 1),
            LieGenerator::H0 => "H0".into(),
            LieGenerator::N(j) => format!("N_{}", j + 1),
        }
    }

    fn m_part(n: usize, a: usize, b: usize) -> DMatrix<f64> {
        let mut t = DMatrix::zeros(n, n);
        t[(a, b)] = 1.0;
        t[(b, a)] = -1.0;
        t
    }

    /// `exp(s X)`.
    pub fn exp(&self, n: usize, s: f64) -> Result<GroupMatrix> {
        let unit = |j: usize| {
            let mut v = DVector::zeros(n);
            v[j] = s;
            v
        };
        Ok(match *self {
            LieGenerator::Nbar(j) => GroupMatrix::nbar(&unit(j)),
            LieGenerator::N(j) => GroupMatrix::n_pos(&unit(j)),
            LieGenerator::H0 => GroupMatrix::a(n, s),
            LieGenerator::M(a, b) => GroupMatrix::m(&(Self::m_part(n, a, b) * s).exp())?,
        })
    }
}

fn partial(f: &dyn Section, x: &DVector<f64>, j: usize) -> Result<DVector<f64>> {
    let mut p = x.clone();
    let mut q = x.clone();
    p[j] += SPATIAL_STEP;
    q[j] -= SPATIAL_STEP;
    Ok((f.eval(&p)? - f.eval(&q)?) / (2.0 * SPATIAL_STEP))
}

/// `d pi(X) f (x)` from the explicit first-order operators, with spatial
/// derivatives by central differences.
pub fn lie_action_formula(
    gen: LieGenerator,
    f: &dyn Section,
    rep: Rep,
    lambda: f64,
    x: &DVector<f64>,
) -> Result<DVector<f64>> {
    let n = f.n();
    let rho = n as f64 / 2.0;
    let grads: Vec<DVector<f64>> = (0..n).map(|j| partial(f, x, j)).collect::<Result<_>>()?;
    let euler = |v: &DVector<f64>| -> DVector<f64> { grads.iter().zip(v.iter()).map(|(g, c)| g * *c).sum() };
    let fx = f.eval(x)?;
    Ok(match gen {
        LieGenerator::Nbar(j) => -&grads[j],
        LieGenerator::H0 => euler(x) + &fx * (lambda + rho),
        LieGenerator::M(a, b) => {
            let t = LieGenerator::m_part(n, a, b);
            rep.differential(&t) * &fx - euler(&(&t * x))
        }
        LieGenerator::N(j) => {
            let mut e = DVector::zeros(n);
            e[j] = 1.0;
            let skew = x * e.transpose() - &e * x.transpose();
            &grads[j] * x.norm_squared() - (euler(x) + &fx * (lambda + rho)) * (2.0 * x[j])
                + rep.differential(&skew) * &fx * 2.0
        }
    })
}

/// `max |(pi(exp(sX)) f - f)/s - d pi(X) f|` over the grid, relative to
/// `max |d pi(X) f|` (absolute when the latter vanishes).
pub fn finite_diff_check_lie_action(
    gen: LieGenerator,
    f: &dyn Section,
    rep: Rep,
    lambda: f64,
    step: f64,
    grid: &[DVector<f64>],
) -> Result<f64> {
    if !(1e-6..=1e-3).contains(&step) {
        return Err(NumericError::InvalidParameter(format!("step {step} outside [1e-6, 1e-3]")));
    }
    let n = f.n();
    let moved = noncompact_action(&gen.exp(n, step)?, f, rep, lambda, grid)?;
    let base = SampledSection::sample(f, grid)?;
    let mut err: f64 = 0.0;
    let mut size: f64 = 0.0;
    for (k, x) in grid.iter().enumerate() {
        let quotient = (&moved.values[k] - &base.values[k]) / step;
        let exact = lie_action_formula(gen, f, rep, lambda, x)?;
        err = err.max((quotient - &exact).amax());
        size = size.max(exact.amax());
    }
    Ok(if size > 0.0 { err / size } else { err })
}

/// Random `n-bar_y m exp(t H0)` with `|y| <= 1`, `|t| <= 1`.
pub fn random_nbar_ma(n: usize, rng: &mut StdRng) -> Result<GroupMatrix> {
    let y = random_vector(rng, n, 0.0, 1.0);
    let skew = DMatrix::from_fn(n, n, |i, j| if i < j { rng.random_range(-1.0..1.0) } else { 0.0 });
    let m = (&skew - skew.transpose()).exp();
    let t = rng.random_range(-1.0..1.0);
    Ok(GroupMatrix::nbar(&y)
        .compose(&GroupMatrix::m(&m)?)
        .compose(&GroupMatrix::a(n, t)))
}

/// `max |pi(g1 g2) f - pi(g1) pi(g2) f|` relative to `max |pi(g1 g2) f|`.
pub fn homomorphism_defect(
    g1: &GroupMatrix,
    g2: &GroupMatrix,
    f: &dyn Section,
    rep: Rep,
    lambda: f64,
    grid: &[DVector<f64>],
) -> Result<f64> {
    let direct = noncompact_action(&g1.compose(g2), f, rep, lambda, grid)?;
    let inner = Acted {
        g: g2.clone(),
        f,
        rep,
        lambda,
    };
    let nested = noncompact_action(g1, &inner, rep, lambda, grid)?;
    Ok(direct.max_abs_diff(&nested) / direct.max_abs().max(f64::MIN_POSITIVE))
}

/// Seeded sample points in the ball of radius `radius`.
pub fn random_grid(n: usize, count: usize, radius: f64, seed: u64) -> Vec<DVector<f64>> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| random_vector(&mut rng, n, 0.0, radius)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Vec<DVector<f64>> {
        random_grid(3, 20, 1.5, 3)
    }

    #[test]
    fn nbar_translates() {
        let f = GaussianSection::random(3, 3, 1);
        let y = DVector::from_vec(vec![0.2, -0.5, 1.0]);
        let out = noncompact_action(&GroupMatrix::nbar(&y), &f, Rep::Standard, 0.3, &grid()).unwrap();
        for (x, v) in out.grid.iter().zip(&out.values) {
            assert!((v - f.eval(&(x - &y)).unwrap()).amax() < 1e-12);
        }
    }

    #[test]
    fn a_dilates() {
        let f = GaussianSection::random(3, 1, 2);
        let (t, lambda) = (0.7, -0.4);
        let out = noncompact_action(&GroupMatrix::a(3, t), &f, Rep::Trivial, lambda, &grid()).unwrap();
        for (x, v) in out.grid.iter().zip(&out.values) {
            let want = f.eval(&(x * t.exp())).unwrap() * ((lambda + 1.5) * t).exp();
            assert!((v - want).amax() < 1e-12);
        }
    }

    #[test]
    fn m_rotates() {
        let f = GaussianSection::random(3, 3, 4);
        let g = LieGenerator::M(0, 2).exp(3, 0.9).unwrap();
        let m: DMatrix<f64> = g.entries().view((0, 0), (3, 3)).into_owned();
        let out = noncompact_action(&g, &f, Rep::Standard, 0.1, &grid()).unwrap();
        for (x, v) in out.grid.iter().zip(&out.values) {
            let want = &m * f.eval(&(m.transpose() * x)).unwrap();
            assert!((v - want).amax() < 1e-12);
        }
    }

    #[test]
    fn identity_is_trivial() {
        let f = GaussianSection::random(3, 3, 5);
        let out = noncompact_action(&GroupMatrix::identity(3), &f, Rep::Standard, 0.2, &grid()).unwrap();
        assert!(out.max_abs_diff(&SampledSection::sample(&f, &grid()).unwrap()) < 1e-15);
    }

    #[test]
    fn constant_section_has_no_nbar_derivative() {
        let f = ConstantSection {
            n: 3,
            value: DVector::from_vec(vec![2.0]),
        };
        for j in 0..3 {
            for x in grid() {
                let d = lie_action_formula(LieGenerator::Nbar(j), &f, Rep::Trivial, 0.0, &x).unwrap();
                assert_eq!(d[0], 0.0);
            }
            let e = finite_diff_check_lie_action(LieGenerator::Nbar(j), &f, Rep::Trivial, 0.0, 1e-5, &grid()).unwrap();
            assert!(e < 1e-9, "{e}");
        }
    }

    #[test]
    fn radial_h0_at_zero_lambda() {
        let f = GaussianSection::radial(3, 1);
        let e = finite_diff_check_lie_action(LieGenerator::H0, &f, Rep::Trivial, 0.0, 1e-5, &grid()).unwrap();
        assert!(e < 1e-4, "{e}");
    }

    #[test]
    fn step_outside_range_is_rejected() {
        let f = GaussianSection::radial(3, 1);
        assert!(finite_diff_check_lie_action(LieGenerator::H0, &f, Rep::Trivial, 0.0, 1e-2, &grid()).is_err());
    }

    #[test]
    fn every_generator_matches_its_formula() {
        for rep in [Rep::Trivial, Rep::Standard] {
            let f = GaussianSection::random(3, rep.dim(3), 11);
            for gen in LieGenerator::all(3) {
                let e = finite_diff_check_lie_action(gen, &f, rep, 0.35, 1e-5, &grid()).unwrap();
                assert!(e < 1e-4, "{gen:?} {rep:?} {e}");
            }
        }
    }

    #[test]
    fn composition_is_a_homomorphism() {
        let mut rng = StdRng::seed_from_u64(9);
        let f = GaussianSection::random(3, 3, 12);
        for _ in 0..5 {
            let g1 = random_nbar_ma(3, &mut rng).unwrap();
            let g2 = random_nbar_ma(3, &mut rng).unwrap();
            let d = homomorphism_defect(&g1, &g2, &f, Rep::Standard, 0.25, &grid()).unwrap();
            assert!(d < 1e-8, "{d}");
        }
    }
}
