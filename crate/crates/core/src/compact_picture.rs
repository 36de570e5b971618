//! K-type eigenvalues of the standard intertwining operator in the compact
//! picture, reducibility points and composition series.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{gamma_is_pole, gamma_sign, pochhammer_signed, reciprocal_gamma_at_integer, Rational};
use crate::weight_lattice::{enumerate_ktypes, k_contains_sigma, HighestWeight, ParamContext};

/// The continuous parameter of the principal series.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum LambdaSpec {
    RealRational(Rational),
    /// `lambda = i q`.
    PureImaginary(Rational),
}

impl LambdaSpec {
    pub fn real(q: Rational) -> Self {
        LambdaSpec::RealRational(q)
    }

    pub fn as_real(&self) -> Option<&Rational> {
        match self {
            LambdaSpec::RealRational(q) => Some(q),
            LambdaSpec::PureImaginary(_) => None,
        }
    }

    /// True on the imaginary axis, which includes zero.
    pub fn is_imaginary_axis(&self) -> bool {
        match self {
            LambdaSpec::RealRational(q) => q.is_zero(),
            LambdaSpec::PureImaginary(_) => true,
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            LambdaSpec::RealRational(q) => LambdaSpec::RealRational(-q),
            LambdaSpec::PureImaginary(q) => LambdaSpec::PureImaginary(-q),
        }
    }
}

impl fmt::Display for LambdaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaSpec::RealRational(q) => write!(f, "{q}"),
            LambdaSpec::PureImaginary(q) => write!(f, "i{q}"),
        }
    }
}

impl FromStr for LambdaSpec {
    type Err = Error;

    /// `p/q` for real values, `i p/q` for imaginary ones.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.strip_prefix('i') {
            Some(rest) => Ok(LambdaSpec::PureImaginary(rest.parse()?)),
            None => Ok(LambdaSpec::RealRational(t.parse()?)),
        }
    }
}

impl Serialize for LambdaSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LambdaSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A point `(sigma, lambda)` of the principal series.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PrincipalSeriesPoint {
    pub ctx: ParamContext,
    pub sigma: HighestWeight,
    pub lambda: LambdaSpec,
}

impl PrincipalSeriesPoint {
    pub fn new(ctx: ParamContext, sigma: HighestWeight, lambda: LambdaSpec) -> Result<Self> {
        ctx.check_sigma(&sigma)?;
        Ok(PrincipalSeriesPoint { ctx, sigma, lambda })
    }

    pub fn real(ctx: ParamContext, sigma: HighestWeight, lambda: Rational) -> Result<Self> {
        Self::new(ctx, sigma, LambdaSpec::RealRational(lambda))
    }

    pub fn real_lambda(&self) -> Result<&Rational> {
        self.lambda
            .as_real()
            .ok_or_else(|| Error::InvalidParameter("lambda must be real".into()))
    }

    /// The contragredient point `(sigma*, -lambda)`.
    pub fn dual(&self) -> Self {
        PrincipalSeriesPoint {
            ctx: self.ctx,
            sigma: self.sigma.dual(),
            lambda: self.lambda.neg(),
        }
    }
}

/// Which constituent of the composition series is meant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum FactorTag {
    FullIrreducible,
    Sub { i: usize, j: i64 },
    SubPlus { i: usize, j: i64 },
    SubMinus { i: usize, j: i64 },
    Quotient { i: usize, j: i64 },
}

impl FactorTag {
    pub fn indices(&self) -> Option<(usize, i64)> {
        match *self {
            FactorTag::FullIrreducible => None,
            FactorTag::Sub { i, j }
            | FactorTag::SubPlus { i, j }
            | FactorTag::SubMinus { i, j }
            | FactorTag::Quotient { i, j } => Some((i, j)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FactorTag::FullIrreducible => "FullIrreducible",
            FactorTag::Sub { .. } => "Sub",
            FactorTag::SubPlus { .. } => "SubPlus",
            FactorTag::SubMinus { .. } => "SubMinus",
            FactorTag::Quotient { .. } => "Quotient",
        }
    }

    fn is_sub_tag(&self) -> bool {
        matches!(
            self,
            FactorTag::Sub { .. } | FactorTag::SubPlus { .. } | FactorTag::SubMinus { .. }
        )
    }
}

/// An irreducible constituent of `I(sigma, lambda)`.
///
/// For negative `lambda` the tag describes the constituent of
/// `I(sigma*, -lambda)` whose contragredient this is, and `dual` is set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CompositionFactor {
    pub base: PrincipalSeriesPoint,
    pub tag: FactorTag,
    pub dual: bool,
}

impl CompositionFactor {
    /// The point at which the tag was classified: `base`, or its dual when
    /// `dual` is set.
    pub fn classified_point(&self) -> PrincipalSeriesPoint {
        if self.dual {
            self.base.dual()
        } else {
            self.base.clone()
        }
    }

    /// Whether this constituent is a subrepresentation of `I(sigma, lambda)`.
    pub fn is_subrepresentation(&self) -> bool {
        match self.tag {
            FactorTag::FullIrreducible => true,
            t => t.is_sub_tag() != self.dual,
        }
    }

    pub fn record(&self) -> FactorRecord {
        let (i, j) = match self.tag.indices() {
            Some((i, j)) => (Some(i), Some(j)),
            None => (None, None),
        };
        FactorRecord {
            tag: self.tag.name().to_string(),
            i,
            j,
            lambda: self.base.lambda.clone(),
            sigma: self.base.sigma.to_csv(),
            dual: self.dual,
        }
    }
}

impl fmt::Display for CompositionFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let star = if self.dual { "*" } else { "" };
        match self.tag.indices() {
            None => write!(f, "I{}(lambda={})", self.base.sigma, self.base.lambda),
            Some((i, j)) => write!(
                f,
                "{}{}(sigma={}, i={i}, j={j}, lambda={})",
                self.tag.name(),
                star,
                self.base.sigma,
                self.base.lambda
            ),
        }
    }
}

/// JSON form of a composition factor.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FactorRecord {
    pub tag: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<i64>,
    pub lambda: LambdaSpec,
    pub sigma: String,
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub dual: bool,
}

fn check_k(ctx: &ParamContext, k: usize) -> Result<()> {
    if k == 0 || k > ctx.m() {
        return Err(Error::InvalidParameter(format!(
            "index k = {k} outside 1..={}",
            ctx.m()
        )));
    }
    Ok(())
}

/// Coefficient of the step `alpha -> alpha + e_k`.
pub fn c_plus(ctx: &ParamContext, lambda: &Rational, alpha: &HighestWeight, k: usize) -> Result<Rational> {
    check_k(ctx, k)?;
    Ok(ctx.rho() + (1 - k as i64 + alpha.get(k)) + lambda)
}

/// Coefficient of the step `alpha -> alpha - e_k`.
pub fn c_minus(ctx: &ParamContext, lambda: &Rational, alpha: &HighestWeight, k: usize) -> Result<Rational> {
    check_k(ctx, k)?;
    Ok(ctx.rho() + (alpha.get(k) - k as i64) - lambda)
}

fn require_eigen_input(p: &PrincipalSeriesPoint, alpha: &HighestWeight) -> Result<Rational> {
    let lambda = p.real_lambda()?.clone();
    if !p.ctx.has_intertwiner(&p.sigma) {
        return Err(Error::NoIntertwiner);
    }
    if !k_contains_sigma(alpha, &p.sigma, &p.ctx)? {
        return Err(Error::NotContained(alpha.to_string(), p.sigma.to_string()));
    }
    Ok(lambda)
}

/// Everything in the eigenvalue except the `alpha_1` gamma quotient.
fn numerator(p: &PrincipalSeriesPoint, lambda: &Rational, alpha: &HighestWeight) -> Result<Rational> {
    let rho = p.ctx.rho();
    let s = &p.sigma;
    let mut acc = pochhammer_signed(&(&rho + s.get(1) - lambda), alpha.get(1) - s.get(1))?;
    for k in 2..=p.ctx.m() {
        let shift = 1 - k as i64;
        let ak = alpha.get(k).abs();
        acc *= pochhammer_signed(&(&rho + (shift + s.get(k)) - lambda), ak - s.get(k))?;
        acc *= pochhammer_signed(&(&rho + (shift + ak) + lambda), s.get(k - 1) - ak)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// Argument of the gamma factor pulled out of every eigenvalue.
pub fn reduction_argument(p: &PrincipalSeriesPoint) -> Result<Rational> {
    Ok(p.ctx.rho() + p.sigma.get(1) + p.real_lambda()?)
}

/// Sign of the gamma factor removed by [`reduced_compact_eigenvalue`].
pub fn reduction_gamma_sign(p: &PrincipalSeriesPoint) -> Result<i32> {
    gamma_sign(&reduction_argument(p)?)
}

/// K-type eigenvalue multiplied by `Gamma(rho + sigma_1 + lambda)`.
pub fn reduced_compact_eigenvalue(p: &PrincipalSeriesPoint, alpha: &HighestWeight) -> Result<Rational> {
    let lambda = require_eigen_input(p, alpha)?;
    let x0 = reduction_argument(p)?;
    if gamma_is_pole(&x0) {
        return Err(Error::Pole(x0.to_string()));
    }
    let den = pochhammer_signed(&x0, alpha.get(1) - p.sigma.get(1))?;
    if den.is_zero() {
        return Err(Error::Pole((&x0 + (alpha.get(1) - p.sigma.get(1))).to_string()));
    }
    numerator(p, &lambda, alpha)?.checked_div(&den)
}

/// K-type eigenvalue of the holomorphically normalized family, defined for
/// every real `lambda`. It agrees with [`reduced_compact_eigenvalue`] away
/// from the poles of `Gamma(rho + sigma_1 + lambda)`; at those poles
/// `1/Gamma` is evaluated exactly instead. In both cases the result is the
/// true eigenvalue times a nonzero constant depending only on `(sigma, lambda)`.
pub fn scaled_compact_eigenvalue(p: &PrincipalSeriesPoint, alpha: &HighestWeight) -> Result<Rational> {
    let lambda = require_eigen_input(p, alpha)?;
    let x0 = reduction_argument(p)?;
    if gamma_is_pole(&x0) {
        let arg = &x0 + (alpha.get(1) - p.sigma.get(1));
        let rg = reciprocal_gamma_at_integer(arg.to_i64().expect("integer argument"));
        return Ok(numerator(p, &lambda, alpha)? * rg);
    }
    let den = pochhammer_signed(&x0, alpha.get(1) - p.sigma.get(1))?;
    numerator(p, &lambda, alpha)?.checked_div(&den)
}

fn unit_shift(alpha: &HighestWeight, k: usize, ctx: &ParamContext, sigma: &HighestWeight) -> Result<HighestWeight> {
    let next = alpha.shifted(k, 1)?;
    if !k_contains_sigma(&next, sigma, ctx)? {
        return Err(Error::NotContained(next.to_string(), sigma.to_string()));
    }
    Ok(next)
}

/// Checks `c_plus(alpha, k) r(alpha + e_k) = (rho + 1 - k + alpha_k - lambda) r(alpha)`.
pub fn check_compact_recurrence(p: &PrincipalSeriesPoint, alpha: &HighestWeight, k: usize) -> Result<bool> {
    let lambda = p.real_lambda()?.clone();
    check_k(&p.ctx, k)?;
    let next = unit_shift(alpha, k, &p.ctx, &p.sigma)?;
    let lhs = c_plus(&p.ctx, &lambda, alpha, k)? * scaled_compact_eigenvalue(p, &next)?;
    let coef = p.ctx.rho() + (1 - k as i64 + alpha.get(k)) - &lambda;
    let rhs = coef * scaled_compact_eigenvalue(p, alpha)?;
    Ok(lhs == rhs)
}

/// Positive reducibility points up to `rho - a + j_max`.
///
/// Points on the imaginary axis, zero included, are always irreducible.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReducibilitySet {
    pub positive_points: Vec<Rational>,
    pub imaginary_axis_irreducible: bool,
}

impl ReducibilitySet {
    pub fn contains(&self, lambda: &Rational) -> bool {
        self.positive_points.contains(&lambda.abs())
    }
}

/// Reducibility points listed as `(rho - a + N0)` minus the exceptional values
/// `rho - k + |sigma_k|`, `k = 1..a`, with `a = min{k : sigma_{k+1} = 0}`.
///
/// For even `n` with `sigma_m != 0` that set also contains points below
/// `1 + |sigma_m|` at which the series is irreducible; those are dropped by
/// intersecting with [`reducibility_family`].
pub fn reducibility_points(sigma: &HighestWeight, ctx: &ParamContext, j_max: i64) -> Result<ReducibilitySet> {
    ctx.check_sigma(sigma)?;
    let a = ctx.a_sigma(sigma);
    let rho = ctx.rho();
    let excluded: BTreeSet<Rational> = (1..=a)
        .map(|k| &rho + (sigma.get(k).abs() - k as i64))
        .collect();
    let positive_points = (0..=j_max)
        .map(|j| &rho + (j - a as i64))
        .filter(|x| x.is_positive() && !excluded.contains(x))
        .filter(|x| reducibility_family(sigma, ctx, x).is_some())
        .collect();
    Ok(ReducibilitySet {
        positive_points,
        imaginary_axis_irreducible: true,
    })
}

/// Family indices `(i, j)` for a positive reducibility point.
pub fn reducibility_family(sigma: &HighestWeight, ctx: &ParamContext, lambda: &Rational) -> Option<(usize, i64)> {
    if !lambda.is_positive() {
        return None;
    }
    let rho = ctx.rho();
    let j0 = lambda - &rho - sigma.get(1).abs();
    if let Some(j) = j0.to_i64() {
        if j >= 0 {
            return Some((0, j));
        }
    }
    for i in 1..ctx.m() {
        let next = sigma.get(i + 1).abs();
        let j = lambda - &rho + (i as i64 - next);
        if let Some(j) = j.to_i64() {
            if j >= 0 && j < sigma.get(i) - next {
                return Some((i, j));
            }
        }
    }
    None
}

fn factors_positive(p: &PrincipalSeriesPoint, lambda: &Rational, dual: bool, base: &PrincipalSeriesPoint) -> Vec<CompositionFactor> {
    let make = |tag| CompositionFactor {
        base: base.clone(),
        tag,
        dual,
    };
    match reducibility_family(&p.sigma, &p.ctx, lambda) {
        None => vec![make(FactorTag::FullIrreducible)],
        Some((i, j)) => {
            if !p.ctx.is_even() && i == p.ctx.m() - 1 {
                vec![
                    make(FactorTag::SubPlus { i, j }),
                    make(FactorTag::SubMinus { i, j }),
                    make(FactorTag::Quotient { i, j }),
                ]
            } else {
                vec![make(FactorTag::Sub { i, j }), make(FactorTag::Quotient { i, j })]
            }
        }
    }
}

/// The composition series of `I(sigma, lambda)`.
pub fn composition_factors(p: &PrincipalSeriesPoint) -> Result<Vec<CompositionFactor>> {
    p.ctx.check_sigma(&p.sigma)?;
    match &p.lambda {
        LambdaSpec::PureImaginary(_) => Ok(vec![CompositionFactor {
            base: p.clone(),
            tag: FactorTag::FullIrreducible,
            dual: false,
        }]),
        LambdaSpec::RealRational(l) => {
            if l.is_negative() {
                let d = p.dual();
                let pos = d.real_lambda()?.clone();
                Ok(factors_positive(&d, &pos, true, p))
            } else {
                Ok(factors_positive(p, l, false, p))
            }
        }
    }
}

pub fn is_reducible(p: &PrincipalSeriesPoint) -> Result<bool> {
    Ok(composition_factors(p)?.len() > 1)
}

fn tag_contains(tag: &FactorTag, sigma: &HighestWeight, alpha: &HighestWeight) -> bool {
    let sub_holds = |i: usize, j: i64| -> bool {
        if i == 0 {
            alpha.get(1) > sigma.get(1) + j
        } else {
            alpha.get(i + 1) > sigma.get(i + 1).abs() + j
        }
    };
    match *tag {
        FactorTag::FullIrreducible => true,
        FactorTag::Sub { i, j } => sub_holds(i, j),
        FactorTag::SubPlus { i, j } => alpha.get(i + 1) > j,
        FactorTag::SubMinus { i, j } => -alpha.get(i + 1) > j,
        FactorTag::Quotient { i, j } => {
            if i > 0 && sigma.group_order() % 2 == 1 && i == alpha.rank() - 1 {
                alpha.get(i + 1).abs() <= j
            } else {
                !sub_holds(i, j)
            }
        }
    }
}

/// Whether the K-type `alpha` occurs in the constituent `f`.
pub fn factor_contains_ktype(f: &CompositionFactor, alpha: &HighestWeight) -> Result<bool> {
    let p = &f.base;
    if !k_contains_sigma(alpha, &p.sigma, &p.ctx)? {
        return Ok(false);
    }
    if f.dual {
        let q = f.classified_point();
        Ok(tag_contains(&f.tag, &q.sigma, &alpha.dual()))
    } else {
        Ok(tag_contains(&f.tag, &p.sigma, alpha))
    }
}

/// K-types with first entry at most `bound` on which the intertwiner vanishes.
pub fn kernel_ktypes(p: &PrincipalSeriesPoint, bound: i64) -> Result<Vec<HighestWeight>> {
    let mut out = Vec::new();
    for alpha in enumerate_ktypes(&p.sigma, &p.ctx, bound)? {
        if scaled_compact_eigenvalue(p, &alpha)?.is_zero() {
            out.push(alpha);
        }
    }
    Ok(out)
}

/// Compares the zero set of the eigenvalues with the K-types of the
/// subrepresentations in the composition series.
pub fn kernel_matches_factor(p: &PrincipalSeriesPoint, bound: i64) -> Result<bool> {
    let factors = composition_factors(p)?;
    if factors.len() < 2 {
        return Err(Error::NotReducible(p.lambda.to_string()));
    }
    let zeros: BTreeSet<HighestWeight> = kernel_ktypes(p, bound)?.into_iter().collect();
    let mut subs = BTreeSet::new();
    for alpha in enumerate_ktypes(&p.sigma, &p.ctx, bound)? {
        for f in factors.iter().filter(|f| f.is_subrepresentation()) {
            if factor_contains_ktype(f, &alpha)? {
                subs.insert(alpha.clone());
            }
        }
    }
    Ok(zeros == subs)
}

pub const DEFAULT_BOUND: i64 = 6;
