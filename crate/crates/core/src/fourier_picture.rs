//! Multipliers of the intertwining operator in the Fourier-transformed
//! noncompact picture, indexed by `M_xi`-types, and the invariant Hermitian
//! forms they produce.

use serde::{Deserialize, Serialize};

use crate::compact_picture::{CompositionFactor, FactorRecord, FactorTag, LambdaSpec, PrincipalSeriesPoint};
use crate::error::{Error, Result};
use crate::exact_arith::{pochhammer_signed, Rational};
use crate::unitary_dual::factor_unitarizable;
use crate::weight_lattice::{enumerate_tau, sigma_contains_tau, HighestWeight, ParamContext};

/// Direction of a unit step in an `M_xi`-type.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    pub fn sign(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Down => -1,
        }
    }
}

/// Multiplier `a(tau)` with the entire normalizing factor set to 1.
pub fn a_f(p: &PrincipalSeriesPoint, tau: &HighestWeight) -> Result<Rational> {
    let lambda = p.real_lambda()?;
    a_f_at(&p.ctx, &p.sigma, lambda, tau)
}

/// [`a_f`] for an explicit real parameter.
pub fn a_f_at(ctx: &ParamContext, sigma: &HighestWeight, lambda: &Rational, tau: &HighestWeight) -> Result<Rational> {
    if !ctx.has_intertwiner(sigma) {
        return Err(Error::NoIntertwiner);
    }
    if !sigma_contains_tau(sigma, tau, ctx)? {
        return Err(Error::NotContained(tau.to_string(), sigma.to_string()));
    }
    let rho = ctx.rho();
    let mut acc = Rational::one();
    for i in 1..ctx.m() {
        let t = tau.get(i).abs();
        let next = sigma.get(i + 1);
        let base = &rho - i as i64;
        acc *= pochhammer_signed(&(&base + next - lambda), t - next)?;
        acc *= pochhammer_signed(&(&base + t + lambda), sigma.get(i) - t)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// The scalar `2 lambda + 1 +- 2 (tau_i + (n - 2i - 1)/2)`. The projected
/// action of `N_j` from `tau` to `tau +- e_i` is `-i` times this on `d/dxi_j`.
pub fn projected_action_scalar(ctx: &ParamContext, lambda: &Rational, tau: &HighestWeight, i: usize, step: Step) -> Rational {
    let shift = Rational::half(ctx.n() as i64 - 2 * i as i64 - 1) + tau.get(i);
    lambda * 2 + 1 + shift * (2 * step.sign())
}

/// Checks `(2l+1 +- 2c) a(tau +- e_i) = (-2l+1 +- 2c) a(tau)` with
/// `c = tau_i + (n-2i-1)/2`.
pub fn check_f_recursion(p: &PrincipalSeriesPoint, tau: &HighestWeight, i: usize, step: Step) -> Result<bool> {
    let lambda = p.real_lambda()?;
    if i == 0 || i > tau.rank() {
        return Err(Error::InvalidParameter(format!("index i = {i} out of range")));
    }
    let next = tau.shifted(i, step.sign())?;
    if !sigma_contains_tau(&p.sigma, &next, &p.ctx)? {
        return Err(Error::NotContained(next.to_string(), p.sigma.to_string()));
    }
    let left = projected_action_scalar(&p.ctx, lambda, tau, i, step);
    let right = projected_action_scalar(&p.ctx, &-lambda, tau, i, step);
    Ok(left * a_f(p, &next)? == right * a_f(p, tau)?)
}

fn tau_tag_holds(tag: &FactorTag, sigma: &HighestWeight, tau: &HighestWeight) -> bool {
    match *tag {
        FactorTag::FullIrreducible => true,
        FactorTag::Sub { i, j } => tau.get(i) > sigma.get(i + 1).abs() + j,
        FactorTag::SubPlus { i, j } => tau.get(i) > j,
        FactorTag::SubMinus { i, j } => -tau.get(i) > j,
        FactorTag::Quotient { i, j } => {
            if sigma.group_order() % 2 == 1 && i == tau.rank() {
                tau.get(i).abs() <= j
            } else {
                tau.get(i) <= sigma.get(i + 1).abs() + j
            }
        }
    }
}

/// The `M_xi`-types carried by a constituent in the Fourier picture.
pub fn f_picture_factor_tau_set(f: &CompositionFactor) -> Result<Vec<HighestWeight>> {
    if let Some((0, _)) = f.tag.indices() {
        return Err(Error::NotFourierRealizable(
            "constituents with i = 0 are not seen by the Fourier picture".into(),
        ));
    }
    let q = f.classified_point();
    let taus = enumerate_tau(&q.sigma, &q.ctx)?;
    let kept = taus.into_iter().filter(|t| tau_tag_holds(&f.tag, &q.sigma, t));
    if f.dual {
        let mut v: Vec<HighestWeight> = kept.map(|t| t.dual()).collect();
        v.sort();
        Ok(v)
    } else {
        Ok(kept.collect())
    }
}

/// Invariant Hermitian form of a unitarizable constituent:
/// `<f, g> = sum_tau c(tau) int <pr_tau f(xi), pr_tau g(xi)> |xi|^power dxi`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InnerProductTable {
    pub factor: CompositionFactor,
    pub weight_power: Rational,
    pub coefficients: Vec<(HighestWeight, Rational)>,
}

impl InnerProductTable {
    pub fn description(&self) -> MultiplierDescription {
        MultiplierDescription {
            power: self.weight_power.clone(),
            coefficients: self
                .coefficients
                .iter()
                .map(|(t, c)| (t.to_csv(), c.clone()))
                .collect(),
        }
    }

    pub fn record(&self) -> InnerProductRecord {
        InnerProductRecord {
            factor: self.factor.record(),
            multiplier: self.description(),
        }
    }
}

/// JSON form of a multiplier: `{"power":"-1/2","coefficients":{"0":"3/4"}}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MultiplierDescription {
    pub power: Rational,
    #[serde(with = "ordered_map")]
    pub coefficients: Vec<(String, Rational)>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct InnerProductRecord {
    pub factor: FactorRecord,
    #[serde(flatten)]
    pub multiplier: MultiplierDescription,
}

/// Serde adapter writing `Vec<(String, V)>` as a JSON object in order.
pub mod ordered_map {
    use serde::de::{MapAccess, Visitor};
    use serde::ser::SerializeMap;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::fmt;
    use std::marker::PhantomData;

    pub fn serialize<S: Serializer, V: Serialize>(v: &[(String, V)], s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(v.len()))?;
        for (k, val) in v {
            map.serialize_entry(k, val)?;
        }
        map.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>, V: Deserialize<'de>>(d: D) -> Result<Vec<(String, V)>, D::Error> {
        struct V2<V>(PhantomData<V>);
        impl<'de, V: Deserialize<'de>> Visitor<'de> for V2<V> {
            type Value = Vec<(String, V)>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut a: A) -> Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = a.next_entry()? {
                    out.push((k, v));
                }
                Ok(out)
            }
        }
        d.deserialize_map(V2(PhantomData))
    }
}

/// The invariant form of a unitarizable constituent in the Fourier picture.
pub fn inner_product_table(f: &CompositionFactor) -> Result<InnerProductTable> {
    if f.dual {
        return Err(Error::NotCovered(
            "negative lambda; use the contragredient point".into(),
        ));
    }
    let (ok, reason) = factor_unitarizable(f)?;
    if !ok {
        return Err(Error::NotUnitarizable(reason));
    }
    let p = &f.base;
    let ctx = &p.ctx;
    let table = |power: Rational, coefficients| {
        Ok(InnerProductTable {
            factor: f.clone(),
            weight_power: power,
            coefficients,
        })
    };
    let lambda = match &p.lambda {
        LambdaSpec::PureImaginary(_) => None,
        LambdaSpec::RealRational(l) if l.is_zero() => None,
        LambdaSpec::RealRational(l) => Some(l.clone()),
    };
    let Some(lambda) = lambda else {
        let ones = enumerate_tau(&p.sigma, ctx)?
            .into_iter()
            .map(|t| (t, Rational::one()))
            .collect();
        return table(Rational::zero(), ones);
    };
    let power = -(&lambda * 2);
    match f.tag {
        FactorTag::FullIrreducible => {
            let c = enumerate_tau(&p.sigma, ctx)?
                .into_iter()
                .map(|t| a_f(p, &t).map(|v| (t, v)))
                .collect::<Result<Vec<_>>>()?;
            table(power, c)
        }
        FactorTag::Sub { i, .. } | FactorTag::SubPlus { i, .. } | FactorTag::SubMinus { i, .. } => {
            let taus = if i == 0 {
                enumerate_tau(&p.sigma, ctx)?
            } else {
                f_picture_factor_tau_set(f)?
            };
            let neg = -&lambda;
            let c = taus
                .into_iter()
                .map(|t| {
                    let v = a_f_at(ctx, &p.sigma, &neg, &t)?;
                    v.recip().map(|r| (t, r))
                })
                .collect::<Result<Vec<_>>>()?;
            table(power, c)
        }
        FactorTag::Quotient { i, .. } => {
            if i == 0 {
                return Err(Error::NotCovered(
                    "the trivial representation is finite-dimensional".into(),
                ));
            }
            let c = f_picture_factor_tau_set(f)?
                .into_iter()
                .map(|t| a_f(p, &t).map(|v| (t, v)))
                .collect::<Result<Vec<_>>>()?;
            table(power, c)
        }
    }
}

/// Compares "every multiplier is positive" with `|lambda| < rho - a_sigma`.
pub fn positivity_unitarity_crosscheck(p: &PrincipalSeriesPoint) -> Result<bool> {
    let lambda = p.real_lambda()?;
    if !p.ctx.has_intertwiner(&p.sigma) {
        return Err(Error::NoIntertwiner);
    }
    let mut positive = true;
    for t in enumerate_tau(&p.sigma, &p.ctx)? {
        if !a_f(p, &t)?.is_positive() {
            positive = false;
            break;
        }
    }
    let bound = p.ctx.rho() - p.ctx.a_sigma(&p.sigma) as i64;
    Ok(positive == (lambda.abs() < bound))
}
