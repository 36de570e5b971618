//! Restriction of constituents to the minimal parabolic and their spaces of
//! Whittaker vectors.

use serde::{Deserialize, Serialize};

use crate::compact_picture::{composition_factors, CompositionFactor, FactorRecord, FactorTag, PrincipalSeriesPoint};
use crate::error::{Error, Result};
use crate::exact_arith::Rational;
use crate::fourier_picture::f_picture_factor_tau_set;
use crate::unitary_dual::factor_unitarizable;
use crate::weight_lattice::{enumerate_tau, weyl_dim, HighestWeight, ParamContext};

/// Decomposition of a unitary constituent restricted to `P-bar`: each `tau`
/// labels the irreducible representation induced from `M_xi N-bar`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PbarBranching {
    pub factor: CompositionFactor,
    pub constituents: Vec<(HighestWeight, u32)>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WhittakerSpace {
    pub factor: CompositionFactor,
    pub taus: Vec<HighestWeight>,
    pub total_dim: u64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ConstituentRecord {
    pub tau: String,
    pub mult: u32,
}

/// JSON form of a restriction together with the Whittaker dimension.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RestrictionRecord {
    pub factor: FactorRecord,
    pub constituents: Vec<ConstituentRecord>,
    pub whittaker_dim: u64,
}

fn reject_dual(f: &CompositionFactor) -> Result<()> {
    if f.dual {
        return Err(Error::NotCovered("negative lambda; use the contragredient point".into()));
    }
    Ok(())
}

/// Restriction of a unitarizable constituent to `P-bar`.
pub fn branch_to_pbar(f: &CompositionFactor) -> Result<PbarBranching> {
    reject_dual(f)?;
    let (ok, reason) = factor_unitarizable(f)?;
    if !ok {
        return Err(Error::NotUnitarizable(reason));
    }
    let p = &f.base;
    let all = enumerate_tau(&p.sigma, &p.ctx)?;
    let taus: Vec<HighestWeight> = match f.tag {
        FactorTag::FullIrreducible => all,
        FactorTag::Sub { i: 0, .. } => all,
        FactorTag::Quotient { i: 0, .. } => {
            return Err(Error::NotCovered("the trivial representation is finite-dimensional".into()))
        }
        FactorTag::Sub { i, j } | FactorTag::SubPlus { i, j } => {
            all.into_iter().filter(|t| t.get(i) > j).collect()
        }
        FactorTag::SubMinus { i, j } => all.into_iter().filter(|t| -t.get(i) > j).collect(),
        FactorTag::Quotient { i, .. } => all.into_iter().filter(|t| t.get(i) == 0).collect(),
    };
    Ok(PbarBranching {
        factor: f.clone(),
        constituents: taus.into_iter().map(|t| (t, 1)).collect(),
    })
}

/// Whittaker vectors of a constituent for a generic character of `N-bar`,
/// described by the `M_xi`-types they transform under.
pub fn whittaker_space(f: &CompositionFactor) -> Result<WhittakerSpace> {
    reject_dual(f)?;
    let p = &f.base;
    let sigma = &p.sigma;
    let all = enumerate_tau(sigma, &p.ctx)?;
    let odd = !p.ctx.is_even();
    let last = p.ctx.m() - 1;
    let edge = |i: usize, j: i64| sigma.get(i + 1).abs() + j;
    let taus: Vec<HighestWeight> = match f.tag {
        FactorTag::FullIrreducible => all,
        FactorTag::Sub { i: 0, .. } => all,
        FactorTag::Quotient { i: 0, .. } => Vec::new(),
        FactorTag::Sub { i, j } | FactorTag::SubPlus { i, j } => {
            all.into_iter().filter(|t| t.get(i) > edge(i, j)).collect()
        }
        FactorTag::SubMinus { i, j } => all.into_iter().filter(|t| -t.get(i) > edge(i, j)).collect(),
        FactorTag::Quotient { i, j } => {
            if odd && i == last {
                all.into_iter().filter(|t| t.get(i).abs() <= edge(i, j)).collect()
            } else {
                all.into_iter().filter(|t| t.get(i) <= edge(i, j)).collect()
            }
        }
    };
    let total_dim = taus.iter().map(weyl_dim).sum();
    Ok(WhittakerSpace {
        factor: f.clone(),
        taus,
        total_dim,
    })
}

/// Builds the JSON record for a unitarizable constituent.
pub fn restriction_record(f: &CompositionFactor) -> Result<RestrictionRecord> {
    let b = branch_to_pbar(f)?;
    let w = whittaker_space(f)?;
    Ok(RestrictionRecord {
        factor: f.record(),
        constituents: b
            .constituents
            .iter()
            .map(|(t, m)| ConstituentRecord {
                tau: t.to_csv(),
                mult: *m,
            })
            .collect(),
        whittaker_dim: w.total_dim,
    })
}

/// At a reducibility point seen by the Fourier picture, checks that the
/// `M_xi`-types of the constituents partition those of sigma.
pub fn pbar_partition_check(sigma: &HighestWeight, lambda: &Rational, ctx: &ParamContext) -> Result<bool> {
    let p = PrincipalSeriesPoint::real(*ctx, sigma.clone(), lambda.clone())?;
    let factors = composition_factors(&p)?;
    if factors.len() < 2 {
        return Err(Error::NotReducible(lambda.to_string()));
    }
    let mut seen: Vec<HighestWeight> = Vec::new();
    for f in &factors {
        for t in f_picture_factor_tau_set(f)? {
            if seen.contains(&t) {
                return Ok(false);
            }
            seen.push(t);
        }
    }
    seen.sort();
    Ok(seen == enumerate_tau(sigma, ctx)?)
}

/// `sum over tau in sigma of dim tau == dim sigma`.
pub fn branching_dimension_check(sigma: &HighestWeight, ctx: &ParamContext) -> Result<bool> {
    let total: u64 = enumerate_tau(sigma, ctx)?.iter().map(weyl_dim).sum();
    Ok(total == weyl_dim(sigma))
}
