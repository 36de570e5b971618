//! Unitarity of principal series points and of their constituents, the
//! irreducible unitary representations up to equivalence, and infinitesimal
//! characters of the constituents.

use serde::{Deserialize, Serialize};

use crate::compact_picture::{composition_factors, CompositionFactor, FactorRecord, FactorTag, PrincipalSeriesPoint};
use crate::error::{Error, Result};
use crate::exact_arith::Rational;
use crate::weight_lattice::{enumerate_sigmas, HighestWeight, ParamContext};

/// A constituent together with its unitarizability verdict.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactorVerdict {
    pub factor: CompositionFactor,
    pub unitarizable: bool,
    pub reason: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Classification {
    UnitaryPrincipal,
    ComplementarySeries,
    IrreducibleNonUnitary,
    ReduciblePoint(Vec<FactorVerdict>),
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::UnitaryPrincipal => "UnitaryPrincipal",
            Classification::ComplementarySeries => "ComplementarySeries",
            Classification::IrreducibleNonUnitary => "IrreducibleNonUnitary",
            Classification::ReduciblePoint(_) => "ReduciblePoint",
        }
    }
}

fn complementary_bound(ctx: &ParamContext, sigma: &HighestWeight) -> Rational {
    ctx.rho() - ctx.a_sigma(sigma) as i64
}

fn in_complementary_range(p: &PrincipalSeriesPoint) -> bool {
    match p.lambda.as_real() {
        Some(l) => {
            p.ctx.has_intertwiner(&p.sigma)
                && !l.is_zero()
                && l.abs() < complementary_bound(&p.ctx, &p.sigma)
        }
        None => false,
    }
}

/// Whether a constituent admits an invariant inner product, with a short
/// explanation.
pub fn factor_unitarizable(f: &CompositionFactor) -> Result<(bool, String)> {
    let q = f.classified_point();
    let ctx = &q.ctx;
    let sigma = &q.sigma;
    let say = |ok: bool, why: &str| Ok((ok, why.to_string()));
    if f.tag == FactorTag::FullIrreducible {
        if q.lambda.is_imaginary_axis() {
            return say(true, "irreducible point on the imaginary axis");
        }
        if in_complementary_range(&q) {
            return say(true, "complementary series: |lambda| < rho - a_sigma");
        }
        return say(false, "irreducible real point outside the complementary range");
    }
    if !ctx.has_intertwiner(sigma) {
        return say(false, "sigma is not self-dual, so no invariant Hermitian form exists");
    }
    let a = ctx.a_sigma(sigma);
    match f.tag {
        FactorTag::FullIrreducible => unreachable!(),
        FactorTag::SubPlus { .. } | FactorTag::SubMinus { .. } => {
            say(true, "the two extreme subrepresentations are always unitarizable")
        }
        FactorTag::Sub { i: 0, .. } => {
            if sigma.is_zero() {
                say(true, "subrepresentation with i = 0 and trivial sigma")
            } else {
                say(false, "subrepresentation with i = 0 needs trivial sigma")
            }
        }
        FactorTag::Quotient { i: 0, j } => {
            if sigma.is_zero() && j == 0 {
                say(true, "the trivial representation")
            } else {
                say(false, "finite-dimensional quotient other than the trivial representation")
            }
        }
        FactorTag::Sub { i, .. } => {
            if i == a {
                say(true, "subrepresentation with i = a_sigma")
            } else {
                say(false, "subrepresentation with i different from a_sigma")
            }
        }
        FactorTag::Quotient { i, j } => {
            if i == a && j == 0 {
                say(true, "quotient with i = a_sigma and j = 0")
            } else {
                say(false, "quotient needs i = a_sigma and j = 0")
            }
        }
    }
}

/// Classifies a principal series point.
pub fn classify(p: &PrincipalSeriesPoint) -> Result<Classification> {
    let factors = composition_factors(p)?;
    if factors.len() > 1 {
        let verdicts = factors
            .into_iter()
            .map(|f| {
                let (unitarizable, reason) = factor_unitarizable(&f)?;
                Ok(FactorVerdict {
                    factor: f,
                    unitarizable,
                    reason,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Classification::ReduciblePoint(verdicts));
    }
    if p.lambda.is_imaginary_axis() {
        Ok(Classification::UnitaryPrincipal)
    } else if in_complementary_range(p) {
        Ok(Classification::ComplementarySeries)
    } else {
        Ok(Classification::IrreducibleNonUnitary)
    }
}

/// One irreducible unitary representation, or a continuous family of them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DualItem {
    /// `I(sigma, i nu)`; `nu >= 0` when sigma is Weyl-invariant, all real `nu`
    /// otherwise. Only the representative with `sigma_m >= 0` is listed.
    PrincipalFamily { sigma: HighestWeight, nu_nonnegative: bool },
    /// `I(sigma, lambda)` for `lower < lambda < upper`.
    ComplementaryInterval {
        sigma: HighestWeight,
        lower: Rational,
        upper: Rational,
    },
    Sub(CompositionFactor),
    Quotient(CompositionFactor),
}

/// JSON form of a [`DualItem`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DualItemRecord {
    PrincipalFamily { sigma: String, nu_range: String },
    ComplementaryInterval { sigma: String, lower: Rational, upper: Rational },
    Sub { factor: FactorRecord },
    Quotient { factor: FactorRecord },
}

impl DualItem {
    pub fn record(&self) -> DualItemRecord {
        match self {
            DualItem::PrincipalFamily { sigma, nu_nonnegative } => DualItemRecord::PrincipalFamily {
                sigma: sigma.to_csv(),
                nu_range: if *nu_nonnegative { "[0,inf)" } else { "(-inf,inf)" }.to_string(),
            },
            DualItem::ComplementaryInterval { sigma, lower, upper } => {
                DualItemRecord::ComplementaryInterval {
                    sigma: sigma.to_csv(),
                    lower: lower.clone(),
                    upper: upper.clone(),
                }
            }
            DualItem::Sub(f) => DualItemRecord::Sub { factor: f.record() },
            DualItem::Quotient(f) => DualItemRecord::Quotient { factor: f.record() },
        }
    }
}

fn factor_at(ctx: ParamContext, sigma: HighestWeight, lambda: Rational, tag: FactorTag) -> Result<CompositionFactor> {
    let base = PrincipalSeriesPoint::real(ctx, sigma, lambda)?;
    let f = composition_factors(&base)?
        .into_iter()
        .find(|f| f.tag == tag)
        .ok_or_else(|| Error::NotReducible(base.lambda.to_string()))?;
    Ok(f)
}

/// Irreducible unitary representations with `sigma_1 <= sigma_bound` and
/// `j <= j_bound`, each equivalence class listed once.
///
/// Subrepresentations with `i = a_sigma < m - 1` are listed through their
/// equivalent quotient, and for even `n` the ones with `i = m - 1` through
/// the unitary principal series at `lambda = 0`.
pub fn enumerate_unitary_dual(ctx: &ParamContext, sigma_bound: i64, j_bound: i64) -> Result<Vec<DualItem>> {
    let mut items = Vec::new();
    let m = ctx.m();
    let rho = ctx.rho();
    for sigma in enumerate_sigmas(ctx, sigma_bound) {
        let self_dual = ctx.has_intertwiner(&sigma);
        if !ctx.is_even() || sigma.get(m) >= 0 {
            items.push(DualItem::PrincipalFamily {
                sigma: sigma.clone(),
                nu_nonnegative: self_dual,
            });
        }
        if !self_dual {
            continue;
        }
        let a = ctx.a_sigma(&sigma);
        items.push(DualItem::ComplementaryInterval {
            sigma: sigma.clone(),
            lower: Rational::zero(),
            upper: &rho - a as i64,
        });
        if !ctx.is_even() && a == m - 1 {
            for j in 0..sigma.get(a).min(j_bound + 1) {
                let lambda = &rho - a as i64 + j;
                for tag in [FactorTag::SubPlus { i: a, j }, FactorTag::SubMinus { i: a, j }] {
                    items.push(DualItem::Sub(factor_at(*ctx, sigma.clone(), lambda.clone(), tag)?));
                }
            }
        }
        let lambda = if a == 0 { rho.clone() } else { &rho - a as i64 };
        items.push(DualItem::Quotient(factor_at(
            *ctx,
            sigma.clone(),
            lambda,
            FactorTag::Quotient { i: a, j: 0 },
        )?));
    }
    Ok(items)
}

/// Other realizations of the same representation.
pub fn equivalent_realizations(f: &CompositionFactor) -> Result<Vec<CompositionFactor>> {
    if f.dual {
        return Err(Error::NotCovered("negative lambda".into()));
    }
    let p = &f.base;
    let ctx = p.ctx;
    let m = ctx.m();
    let rho = ctx.rho();
    let sigma = &p.sigma;
    let (i, j) = match f.tag {
        FactorTag::Sub { i, j } | FactorTag::SubPlus { i, j } | FactorTag::SubMinus { i, j } => (i, j),
        _ => return Ok(Vec::new()),
    };
    if i + 1 < m {
        let shifted = sigma.shifted(i + 1, j + 1)?;
        let j2 = sigma.get(i + 1) - sigma.get(i + 2).abs();
        let lambda = &rho - (i as i64 + 1) + shifted.get(i + 2).abs() + j2;
        return Ok(vec![factor_at(ctx, shifted, lambda, FactorTag::Quotient { i: i + 1, j: j2 })?]);
    }
    if ctx.is_even() && i + 1 == m {
        let sm = sigma.get(m);
        let full = |s: HighestWeight, l: Rational| -> Result<CompositionFactor> {
            Ok(CompositionFactor {
                base: PrincipalSeriesPoint::real(ctx, s, l)?,
                tag: FactorTag::FullIrreducible,
                dual: false,
            })
        };
        if sm != 0 {
            let s = sigma.shifted(m, sm.signum() * (j + 1))?;
            return Ok(vec![full(s, Rational::from_int(sm))?]);
        }
        return Ok(vec![
            full(sigma.shifted(m, j + 1)?, Rational::zero())?,
            full(sigma.shifted(m, -(j + 1))?, Rational::zero())?,
        ]);
    }
    Ok(Vec::new())
}

/// Infinitesimal character of a constituent as a vector of rank
/// `rank so(n+2)`: the values `sigma_k + rho - k` with `lambda` inserted
/// after position `i`.
pub fn infinitesimal_character(f: &CompositionFactor) -> Result<Vec<Rational>> {
    if f.dual {
        return Err(Error::NotCovered("negative lambda".into()));
    }
    let (i, _) = f
        .tag
        .indices()
        .ok_or_else(|| Error::NotCovered("irreducible principal series".into()))?;
    let ctx = f.base.ctx;
    if ctx.is_even() && i == 0 {
        return Err(Error::NotCovered("even n with i = 0".into()));
    }
    let lambda = f.base.real_lambda()?.clone();
    let mut gamma = principal_series_parameter(&ctx, &f.base.sigma);
    gamma.insert(i, lambda);
    Ok(gamma)
}

/// `sigma + rho_M` as a vector, with `rho_M = (rho - 1, rho - 2, ...)`.
pub fn principal_series_parameter(ctx: &ParamContext, sigma: &HighestWeight) -> Vec<Rational> {
    let rho = ctx.rho();
    (1..=sigma.rank())
        .map(|k| &rho + (sigma.get(k) - k as i64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compact_picture::LambdaSpec;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn point(n: usize, sigma: &str, lambda: &str) -> PrincipalSeriesPoint {
        let ctx = ParamContext::new(n).unwrap();
        let s = ctx.sigma(sigma).unwrap();
        PrincipalSeriesPoint::new(ctx, s, lambda.parse::<LambdaSpec>().unwrap()).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&point(3, "1", "i1")).unwrap(), Classification::UnitaryPrincipal);
        assert_eq!(classify(&point(3, "1", "0")).unwrap(), Classification::UnitaryPrincipal);
        assert_eq!(classify(&point(3, "1", "1/4")).unwrap(), Classification::ComplementarySeries);
        assert_eq!(classify(&point(3, "1", "-1/4")).unwrap(), Classification::ComplementarySeries);
        assert_eq!(classify(&point(3, "1", "3/4")).unwrap(), Classification::IrreducibleNonUnitary);
        assert_eq!(classify(&point(4, "1,1", "1/2")).unwrap(), Classification::IrreducibleNonUnitary);
        match classify(&point(3, "1", "1/2")).unwrap() {
            Classification::ReduciblePoint(v) => {
                assert_eq!(v.len(), 3);
                assert!(v.iter().all(|x| x.unitarizable));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unitarizability_examples() {
        let f = &composition_factors(&point(3, "0", "3/2")).unwrap()[0];
        assert!(factor_unitarizable(f).unwrap().0);
        let quo = &composition_factors(&point(3, "0", "3/2")).unwrap()[1];
        assert!(factor_unitarizable(quo).unwrap().0);
        let quo1 = &composition_factors(&point(3, "0", "5/2")).unwrap()[1];
        assert!(!factor_unitarizable(quo1).unwrap().0);
        // n = 5, sigma = (2,1): a_sigma = 2, so the i = 1 family is not unitarizable.
        let f = &composition_factors(&point(5, "2,1", "5/2")).unwrap()[0];
        assert_eq!(f.tag, FactorTag::Sub { i: 1, j: 0 });
        assert!(!factor_unitarizable(f).unwrap().0);
        let g = composition_factors(&point(4, "1,1", "3")).unwrap();
        assert!(g.iter().all(|f| !factor_unitarizable(f).unwrap().0));
        let h = composition_factors(&point(3, "1", "5/2")).unwrap();
        assert!(!factor_unitarizable(&h[0]).unwrap().0);
        assert!(!factor_unitarizable(&h[1]).unwrap().0);
    }

    #[test]
    fn dual_for_n3() {
        let ctx = ParamContext::new(3).unwrap();
        let items = enumerate_unitary_dual(&ctx, 1, 1).unwrap();
        let families: Vec<_> = items
            .iter()
            .filter_map(|d| match d {
                DualItem::PrincipalFamily { sigma, .. } => Some(sigma.to_csv()),
                _ => None,
            })
            .collect();
        assert_eq!(families, vec!["0", "1"]);
        let intervals: Vec<_> = items
            .iter()
            .filter_map(|d| match d {
                DualItem::ComplementaryInterval { upper, .. } => Some(upper.clone()),
                _ => None,
            })
            .collect();
        assert_eq!(intervals, vec![q("3/2"), q("1/2")]);
        let trivial: Vec<_> = items
            .iter()
            .filter(|d| matches!(d, DualItem::Quotient(f) if f.base.sigma.is_zero()))
            .collect();
        assert_eq!(trivial.len(), 1);
        let subs = items.iter().filter(|d| matches!(d, DualItem::Sub(_))).count();
        assert_eq!(subs, 2);
    }

    #[test]
    fn dual_items_are_unitary_and_distinct() {
        for n in 3..=8 {
            let ctx = ParamContext::new(n).unwrap();
            let items = enumerate_unitary_dual(&ctx, 3, 3).unwrap();
            for (k, it) in items.iter().enumerate() {
                assert!(!items[..k].contains(it));
                let ok = match it {
                    DualItem::PrincipalFamily { sigma, .. } => {
                        let p = PrincipalSeriesPoint::new(ctx, sigma.clone(), "i1".parse().unwrap()).unwrap();
                        classify(&p).unwrap() == Classification::UnitaryPrincipal
                    }
                    DualItem::ComplementaryInterval { sigma, lower, upper } => {
                        let mid = (lower + upper) * Rational::half(1);
                        let p = PrincipalSeriesPoint::real(ctx, sigma.clone(), mid).unwrap();
                        classify(&p).unwrap() == Classification::ComplementarySeries
                    }
                    DualItem::Sub(f) | DualItem::Quotient(f) => match classify(&f.base).unwrap() {
                        Classification::ReduciblePoint(v) => {
                            v.iter().any(|x| x.factor == *f && x.unitarizable)
                        }
                        _ => false,
                    },
                };
                assert!(ok, "n={n} {it:?}");
            }
        }
        assert!(ParamContext::new(2).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let f = &composition_factors(&point(5, "1,0", "7/2")).unwrap()[0];
        assert_eq!(f.tag, FactorTag::Sub { i: 0, j: 0 });
        let eq = equivalent_realizations(f).unwrap();
        assert_eq!(eq.len(), 1);
        assert_eq!(eq[0].base.sigma.to_csv(), "2,0");
        assert_eq!(eq[0].tag, FactorTag::Quotient { i: 1, j: 1 });
        assert_eq!(infinitesimal_character(f).unwrap(), infinitesimal_character(&eq[0]).unwrap());

        let f = &composition_factors(&point(4, "1,0", "1")).unwrap()[0];
        assert_eq!(f.tag, FactorTag::Sub { i: 1, j: 0 });
        let eq = equivalent_realizations(f).unwrap();
        let sig: Vec<_> = eq.iter().map(|g| g.base.sigma.to_csv()).collect();
        assert_eq!(sig, vec!["1,1", "1,-1"]);
        assert!(eq.iter().all(|g| g.base.lambda == LambdaSpec::RealRational(q("0"))));

        let quo = &composition_factors(&point(4, "1,0", "1")).unwrap()[1];
        assert!(equivalent_realizations(quo).unwrap().is_empty());
    }

    #[test]
    fn infinitesimal_character_examples() {
        let f = &composition_factors(&point(3, "1", "1/2")).unwrap()[0];
        assert_eq!(infinitesimal_character(f).unwrap(), vec![q("3/2"), q("1/2")]);
        let f = &composition_factors(&point(3, "0", "3/2")).unwrap()[0];
        assert_eq!(infinitesimal_character(f).unwrap(), vec![q("3/2"), q("1/2")]);
        let f = &composition_factors(&point(4, "2,0", "1")).unwrap()[0];
        assert_eq!(infinitesimal_character(f).unwrap(), vec![q("3"), q("1"), q("0")]);
        let f = &composition_factors(&point(4, "0,0", "2")).unwrap()[0];
        assert!(infinitesimal_character(f).is_err());
    }
}
