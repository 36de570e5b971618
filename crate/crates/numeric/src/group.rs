//! Matrices of `SO0(n+1,1)` preserving `x_1^2 + ... + x_{n+1}^2 - x_{n+2}^2`.
//!
//! Coordinates are zero-based: `0..n` span `R^n`, then `n` and `n+1` carry
//! the split `A`-direction.

use nalgebra::{DMatrix, DVector};

use crate::error::{NumericError, Result};

/// `diag(1,...,1,-1)` of size `n+2`.
pub fn form(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::identity(n + 2, n + 2);
    j[(n + 1, n + 1)] = -1.0;
    j
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

/// `E_{ij}` of size `dim`.
pub fn unit(dim: usize, i: usize, j: usize) -> DMatrix<f64> {
    let mut e = DMatrix::zeros(dim, dim);
    e[(i, j)] = 1.0;
    e
}

/// Cartan involution on the Lie algebra.
pub fn theta(x: &DMatrix<f64>) -> DMatrix<f64> {
    -x.transpose()
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupMatrix {
    n: usize,
    entries: DMatrix<f64>,
}

impl GroupMatrix {
    pub const FORM_TOLERANCE: f64 = 1e-10;

    /// Accepts `g` if it preserves the form to `FORM_TOLERANCE` (relative to
    /// the squared size of its entries) and lies in the identity component.
    pub fn new(n: usize, entries: DMatrix<f64>) -> Result<Self> {
        if entries.nrows() != n + 2 || entries.ncols() != n + 2 {
            return Err(NumericError::Dimension {
                expected: n + 2,
                found: entries.nrows(),
            });
        }
        let g = GroupMatrix { n, entries };
        let defect = g.form_defect();
        if !(defect <= Self::FORM_TOLERANCE) || g.entries[(n + 1, n + 1)] < 1.0 - 1e-12 || g.det() < 0.0 {
            return Err(NumericError::NotInGroup(defect));
        }
        Ok(g)
    }

    pub fn identity(n: usize) -> Self {
        GroupMatrix {
            n,
            entries: DMatrix::identity(n + 2, n + 2),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// `max |g^t J g - J|` scaled by `max(1, max|g|^2)`.
    pub fn form_defect(&self) -> f64 {
        let j = form(self.n);
        let d = self.entries.transpose() * &j * &self.entries - &j;
        max_abs(&d) / max_abs(&self.entries).powi(2).max(1.0)
    }

    fn det(&self) -> f64 {
        self.entries.clone().lu().determinant()
    }

    pub fn compose(&self, other: &GroupMatrix) -> GroupMatrix {
        GroupMatrix {
            n: self.n,
            entries: &self.entries * &other.entries,
        }
    }

    /// `J g^t J`, exact for elements of the group.
    pub fn inverse(&self) -> GroupMatrix {
        let j = form(self.n);
        GroupMatrix {
            n: self.n,
            entries: &j * self.entries.transpose() * &j,
        }
    }

    pub fn nbar(x: &DVector<f64>) -> Self {
        GroupMatrix {
            n: x.len(),
            entries: nbar(x),
        }
    }

    pub fn n_pos(x: &DVector<f64>) -> Self {
        GroupMatrix {
            n: x.len(),
            entries: n_pos(x),
        }
    }

    pub fn a(n: usize, t: f64) -> Self {
        GroupMatrix { n, entries: a(n, t) }
    }

    /// Embeds `m` in `SO(n)` as `diag(m, 1, 1)`.
    pub fn m(mat: &DMatrix<f64>) -> Result<Self> {
        GroupMatrix::new(mat.nrows(), m_block(mat))
    }

    /// `exp(X)` for `X` in the Lie algebra.
    pub fn exp(n: usize, x: &DMatrix<f64>) -> Result<Self> {
        GroupMatrix::new(n, x.clone().exp())
    }
}

/// Lie algebra generators in the defining representation.
#[derive(Clone, Debug, PartialEq)]
pub struct Generators {
    pub n: usize,
    pub h0: DMatrix<f64>,
    pub n_pos: Vec<DMatrix<f64>>,
    pub n_neg: Vec<DMatrix<f64>>,
    pub w0: DMatrix<f64>,
}

pub fn build_generators(n: usize) -> Result<Generators> {
    if n < 2 {
        return Err(NumericError::Rank { min: 2, found: n });
    }
    let d = n + 2;
    let h0 = unit(d, n, n + 1) + unit(d, n + 1, n);
    let n_pos: Vec<DMatrix<f64>> = (0..n)
        .map(|j| unit(d, j, n) - unit(d, j, n + 1) - unit(d, n, j) - unit(d, n + 1, j))
        .collect();
    let n_neg = n_pos.iter().map(theta).collect();
    let mut w0 = -DMatrix::identity(d, d);
    w0[(n + 1, n + 1)] = 1.0;
    Ok(Generators {
        n,
        h0,
        n_pos,
        n_neg,
        w0,
    })
}

impl Generators {
    /// `X_ab = E_ab - E_ba` in `m`, zero-based.
    pub fn m_basis(&self, a: usize, b: usize) -> DMatrix<f64> {
        let d = self.n + 2;
        unit(d, a, b) - unit(d, b, a)
    }

    pub fn n_sum(&self, x: &DVector<f64>) -> DMatrix<f64> {
        x.iter().zip(&self.n_pos).map(|(c, g)| g * *c).sum()
    }

    pub fn nbar_sum(&self, x: &DVector<f64>) -> DMatrix<f64> {
        x.iter().zip(&self.n_neg).map(|(c, g)| g * *c).sum()
    }
}

/// `exp(X)` for nilpotent `X` by its finite series, stopping once `X^k`
/// drops below `1e-14` relative to `max(1, |X|)^k`.
pub fn exp_nilpotent(x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let d = x.nrows();
    let scale = max_abs(x).max(1.0);
    let mut sum = DMatrix::identity(d, d);
    let mut power = DMatrix::identity(d, d);
    let mut fact = 1.0;
    for k in 1..=d + 1 {
        power = &power * x;
        if max_abs(&power) <= 1e-14 * scale.powi(k as i32) {
            return Ok(sum);
        }
        fact *= k as f64;
        sum += &power / fact;
    }
    Err(NumericError::NotNilpotent)
}

/// Closed form of `n-bar_x`.
pub fn nbar(x: &DVector<f64>) -> DMatrix<f64> {
    let n = x.len();
    let s = x.norm_squared() / 2.0;
    let mut g = DMatrix::identity(n + 2, n + 2);
    for i in 0..n {
        g[(i, n)] = x[i];
        g[(i, n + 1)] = x[i];
        g[(n, i)] = -x[i];
        g[(n + 1, i)] = x[i];
    }
    g[(n, n)] = 1.0 - s;
    g[(n, n + 1)] = -s;
    g[(n + 1, n)] = s;
    g[(n + 1, n + 1)] = 1.0 + s;
    g
}

/// Closed form of `n_x`.
pub fn n_pos(x: &DVector<f64>) -> DMatrix<f64> {
    let n = x.len();
    let s = x.norm_squared() / 2.0;
    let mut g = DMatrix::identity(n + 2, n + 2);
    for i in 0..n {
        g[(i, n)] = x[i];
        g[(i, n + 1)] = -x[i];
        g[(n, i)] = -x[i];
        g[(n + 1, i)] = -x[i];
    }
    g[(n, n)] = 1.0 - s;
    g[(n, n + 1)] = s;
    g[(n + 1, n)] = -s;
    g[(n + 1, n + 1)] = 1.0 + s;
    g
}

/// `exp(t H0)`.
pub fn a(n: usize, t: f64) -> DMatrix<f64> {
    let mut g = DMatrix::identity(n + 2, n + 2);
    g[(n, n)] = t.cosh();
    g[(n + 1, n + 1)] = t.cosh();
    g[(n, n + 1)] = t.sinh();
    g[(n + 1, n)] = t.sinh();
    g
}

/// `diag(m, 1, 1)`.
pub fn m_block(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    let mut g = DMatrix::identity(n + 2, n + 2);
    g.view_mut((0, 0), (n, n)).copy_from(m);
    g
}

/// Factors of `h = n-bar_z m exp(t H0) n_w`.
#[derive(Clone, Debug, PartialEq)]
pub struct NbarManParts {
    pub z: DVector<f64>,
    pub m: DMatrix<f64>,
    pub t: f64,
    pub w: DVector<f64>,
}

impl NbarManParts {
    pub fn product(&self) -> DMatrix<f64> {
        let n = self.z.len();
        nbar(&self.z) * m_block(&self.m) * a(n, self.t) * n_pos(&self.w)
    }
}

/// Generic `N-bar M A N` factorization read off from the image of the null
/// vector `e_{n+1} + e_{n+2}`, which `MAN` fixes up to the `A`-scalar.
pub fn decompose_nbar_man(h: &DMatrix<f64>) -> Result<NbarManParts> {
    let d = h.nrows();
    if d < 4 || h.ncols() != d {
        return Err(NumericError::Dimension {
            expected: 4,
            found: d,
        });
    }
    let n = d - 2;
    let v: DVector<f64> = h.column(n) + h.column(n + 1);
    let et = (v[n] + v[n + 1]) / 2.0;
    if !(et > 1e-13 * v.amax()) {
        return Err(NumericError::Singular("element lies outside the open cell N-bar M A N".into()));
    }
    let z: DVector<f64> = v.rows(0, n) / (2.0 * et);
    let t = et.ln();
    let p = nbar(&-&z) * h;
    let m: DMatrix<f64> = p.view((0, 0), (n, n)).into_owned();
    let q = a(n, -t) * m_block(&m.transpose()) * p;
    let w: DVector<f64> = q.view((0, n), (n, 1)).column(0).into_owned();
    Ok(NbarManParts { z, m, t, w })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bracket(x: &DMatrix<f64>, y: &DMatrix<f64>) -> DMatrix<f64> {
        x * y - y * x
    }

    #[test]
    fn root_relations() {
        for n in 2..=6 {
            let g = build_generators(n).unwrap();
            for j in 0..n {
                assert_eq!(theta(&g.n_pos[j]), g.n_neg[j]);
                assert_eq!(bracket(&g.h0, &g.n_pos[j]), g.n_pos[j]);
                assert_eq!(bracket(&g.h0, &g.n_neg[j]), -&g.n_neg[j]);
                for k in 0..n {
                    assert_eq!(bracket(&g.n_pos[j], &g.n_pos[k]), DMatrix::zeros(n + 2, n + 2));
                }
            }
            let j = form(n);
            for x in g.n_pos.iter().chain(&g.n_neg).chain([&g.h0]) {
                assert_eq!(x.transpose() * &j + &j * x, DMatrix::zeros(n + 2, n + 2));
            }
        }
        assert!(build_generators(1).is_err());
    }

    #[test]
    fn exp_zero_is_identity() {
        let z = DMatrix::zeros(5, 5);
        assert_eq!(exp_nilpotent(&z).unwrap(), DMatrix::identity(5, 5));
        assert!(exp_nilpotent(&DMatrix::identity(3, 3)).is_err());
    }

    #[test]
    fn closed_forms_match_series() {
        let g = build_generators(4).unwrap();
        let x = DVector::from_vec(vec![0.3, -1.2, 2.0, 0.7]);
        let s = exp_nilpotent(&g.nbar_sum(&x)).unwrap();
        assert!(max_abs(&(s - nbar(&x))) < 1e-12);
        let s = exp_nilpotent(&g.n_sum(&x)).unwrap();
        assert!(max_abs(&(s - n_pos(&x))) < 1e-12);
        let e = (&g.h0 * 0.8).exp();
        assert!(max_abs(&(e - a(4, 0.8))) < 1e-12);
    }

    #[test]
    fn w0_is_outside_the_identity_component_for_even_rank() {
        let g = build_generators(4).unwrap();
        assert!(GroupMatrix::new(4, g.w0.clone()).is_err());
        let g = build_generators(3).unwrap();
        assert!(GroupMatrix::new(3, g.w0.clone()).is_ok());
        assert!(GroupMatrix::new(3, a(3, 1.0)).is_ok());
        assert!(GroupMatrix::new(3, DMatrix::identity(4, 4)).is_err());
    }

    fn vec_strategy(n: usize) -> impl Strategy<Value = DVector<f64>> {
        proptest::collection::vec(-3.0f64..3.0, n).prop_map(DVector::from_vec)
    }

    proptest! {
        #[test]
        fn constructed_elements_preserve_the_form(x in vec_strategy(3), y in vec_strategy(3), t in -2.0f64..2.0) {
            let h = GroupMatrix::nbar(&x).compose(&GroupMatrix::a(3, t)).compose(&GroupMatrix::n_pos(&y));
            prop_assert!(h.form_defect() < 1e-12);
            prop_assert!(GroupMatrix::new(3, h.entries().clone()).is_ok());
            let i = h.compose(&h.inverse());
            prop_assert!(max_abs(&(i.entries() - DMatrix::identity(5, 5))) < 1e-9);
        }

        #[test]
        fn generic_factorization_round_trips(x in vec_strategy(3), y in vec_strategy(3), t in -2.0f64..2.0, th in -3.0f64..3.0) {
            let mut m = DMatrix::identity(3, 3);
            m[(0, 0)] = th.cos();
            m[(0, 1)] = -th.sin();
            m[(1, 0)] = th.sin();
            m[(1, 1)] = th.cos();
            let h = nbar(&x) * m_block(&m) * a(3, t) * n_pos(&y);
            let parts = decompose_nbar_man(&h).unwrap();
            prop_assert!((&parts.z - &x).amax() < 1e-9);
            prop_assert!((&parts.w - &y).amax() < 1e-7 * (1.0 + y.amax()));
            prop_assert!((parts.t - t).abs() < 1e-9);
            prop_assert!(max_abs(&(&parts.m - &m)) < 1e-9);
        }
    }
}
