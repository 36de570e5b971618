//! Highest weights of SO(k), interlacing branching, Weyl dimensions and
//! Casimir eigenvalues.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_arith::Rational;

/// Highest weight of SO(k), stored with exactly `floor(k/2)` entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HighestWeight {
    group_order: usize,
    entries: Vec<i64>,
}

impl HighestWeight {
    pub fn new(group_order: usize, entries: Vec<i64>) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidWeight {
            group: group_order,
            reason: reason.to_string(),
        };
        if group_order < 2 {
            return Err(invalid("group order must be at least 2"));
        }
        let rank = group_order / 2;
        if entries.len() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: entries.len(),
            });
        }
        if group_order > 2 {
            for w in entries.windows(2).take(rank.saturating_sub(2)) {
                if w[0] < w[1] {
                    return Err(invalid("entries must be nonincreasing"));
                }
            }
            let last = entries[rank - 1];
            if group_order % 2 == 1 {
                if rank >= 2 && entries[rank - 2] < last {
                    return Err(invalid("entries must be nonincreasing"));
                }
                if last < 0 {
                    return Err(invalid("last entry must be nonnegative"));
                }
            } else if entries[rank - 2] < last.abs() {
                return Err(invalid("second to last entry must dominate |last|"));
            }
        }
        Ok(HighestWeight {
            group_order,
            entries,
        })
    }

    pub fn zero(group_order: usize) -> Result<Self> {
        Self::new(group_order, vec![0; group_order / 2])
    }

    /// Parses a comma separated list such as `2,1` or `1,-1`.
    pub fn parse(group_order: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let entries = if s.is_empty() {
            Vec::new()
        } else {
            s.split(',')
                .map(|t| {
                    let t = t.trim().replace('\u{2212}', "-");
                    t.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Self::new(group_order, entries)
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// 1-based entry; zero beyond the rank.
    pub fn get(&self, k: usize) -> i64 {
        if k == 0 || k > self.entries.len() {
            0
        } else {
            self.entries[k - 1]
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Adds `delta` to the 1-based entry `k`, failing if the result is not dominant.
    pub fn shifted(&self, k: usize, delta: i64) -> Result<Self> {
        if k == 0 || k > self.rank() {
            return Err(Error::InvalidParameter(format!("index {k} out of range")));
        }
        let mut e = self.entries.clone();
        e[k - 1] += delta;
        Self::new(self.group_order, e)
    }

    /// Weight of the contragredient: the last sign flips for SO(4r+2).
    pub fn dual(&self) -> Self {
        let mut e = self.entries.clone();
        if self.group_order % 4 == 2 {
            if let Some(last) = e.last_mut() {
                *last = -*last;
            }
        }
        HighestWeight {
            group_order: self.group_order,
            entries: e,
        }
    }

    /// Comma separated form used in CLI and JSON output.
    pub fn to_csv(&self) -> String {
        self.entries
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv())
    }
}

impl fmt::Debug for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SO({}){}", self.group_order, self)
    }
}

/// The rank-one data attached to `G = SO0(n+1,1)`: `M = SO(n)`, `K = SO(n+1)`,
/// `M_xi = SO(n-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ParamContext {
    n: usize,
}

impl ParamContext {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "n = {n} is not supported; n must be at least 3"
            )));
        }
        Ok(ParamContext { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `floor((n+1)/2)`, the rank of K.
    pub fn m(&self) -> usize {
        (self.n + 1) / 2
    }

    /// Half the dimension of N.
    pub fn rho(&self) -> Rational {
        Rational::half(self.n as i64)
    }

    pub fn is_even(&self) -> bool {
        self.n % 2 == 0
    }

    /// Parses a weight of M.
    pub fn sigma(&self, s: &str) -> Result<HighestWeight> {
        HighestWeight::parse(self.n, s)
    }

    pub fn check_sigma(&self, sigma: &HighestWeight) -> Result<()> {
        check_group(sigma, self.n)
    }

    /// True when the standard intertwiner exists, i.e. sigma is fixed by the
    /// long Weyl element.
    pub fn has_intertwiner(&self, sigma: &HighestWeight) -> bool {
        !self.is_even() || sigma.get(self.m()) == 0
    }

    /// `min{k : sigma_{k+1} = 0}` with the padding convention.
    pub fn a_sigma(&self, sigma: &HighestWeight) -> usize {
        (0..=sigma.rank())
            .find(|&k| sigma.get(k + 1) == 0)
            .unwrap_or(sigma.rank())
    }
}

fn check_group(w: &HighestWeight, order: usize) -> Result<()> {
    if w.group_order() != order {
        return Err(Error::RankMismatch {
            expected: order / 2,
            found: w.rank(),
        });
    }
    Ok(())
}

/// Whether the K-type `alpha` contains the M-type `sigma`.
pub fn k_contains_sigma(alpha: &HighestWeight, sigma: &HighestWeight, ctx: &ParamContext) -> Result<bool> {
    check_group(alpha, ctx.n() + 1)?;
    check_group(sigma, ctx.n())?;
    let m = ctx.m();
    if alpha.get(1) < sigma.get(1) {
        return Ok(false);
    }
    for k in 2..=m {
        let upper = sigma.get(k - 1);
        let a = alpha.get(k);
        let ok = if ctx.is_even() {
            if k == m {
                upper >= a && a >= sigma.get(m).abs()
            } else {
                upper >= a && a >= sigma.get(k)
            }
        } else if k == m {
            upper >= a.abs()
        } else {
            upper >= a && a >= sigma.get(k)
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the M-type `sigma` contains the `M_xi`-type `tau`.
pub fn sigma_contains_tau(sigma: &HighestWeight, tau: &HighestWeight, ctx: &ParamContext) -> Result<bool> {
    check_group(sigma, ctx.n())?;
    check_group(tau, ctx.n() - 1)?;
    let r = tau.rank();
    for i in 1..=r {
        let t = tau.get(i);
        let ok = if ctx.is_even() {
            if i == r {
                sigma.get(i) >= t && t >= sigma.get(i + 1).abs()
            } else {
                sigma.get(i) >= t && t >= sigma.get(i + 1)
            }
        } else if i == r {
            sigma.get(i) >= t.abs()
        } else {
            sigma.get(i) >= t && t >= sigma.get(i + 1)
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

fn cartesian(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in ranges {
        let mut next = Vec::new();
        for prefix in &out {
            for v in lo..=hi {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// All `M_xi`-types in `sigma`, in lexicographic order.
pub fn enumerate_tau(sigma: &HighestWeight, ctx: &ParamContext) -> Result<Vec<HighestWeight>> {
    ctx.check_sigma(sigma)?;
    let r = (ctx.n() - 1) / 2;
    let ranges: Vec<(i64, i64)> = (1..=r)
        .map(|i| {
            if ctx.is_even() {
                let lo = if i == r { sigma.get(i + 1).abs() } else { sigma.get(i + 1) };
                (lo, sigma.get(i))
            } else if i == r {
                (-sigma.get(i), sigma.get(i))
            } else {
                (sigma.get(i + 1), sigma.get(i))
            }
        })
        .collect();
    cartesian(&ranges)
        .into_iter()
        .map(|e| HighestWeight::new(ctx.n() - 1, e))
        .collect()
}

/// All K-types containing `sigma` with first entry at most `bound`,
/// in lexicographic order.
pub fn enumerate_ktypes(sigma: &HighestWeight, ctx: &ParamContext, bound: i64) -> Result<Vec<HighestWeight>> {
    ctx.check_sigma(sigma)?;
    let m = ctx.m();
    let mut ranges = vec![(sigma.get(1), bound)];
    for k in 2..=m {
        let upper = sigma.get(k - 1);
        let r = if ctx.is_even() {
            if k == m {
                (sigma.get(m).abs(), upper)
            } else {
                (sigma.get(k), upper)
            }
        } else if k == m {
            (-upper, upper)
        } else {
            (sigma.get(k), upper)
        };
        ranges.push(r);
    }
    if bound < sigma.get(1) {
        return Ok(Vec::new());
    }
    cartesian(&ranges)
        .into_iter()
        .map(|e| HighestWeight::new(ctx.n() + 1, e))
        .collect()
}

/// All M-types with first entry at most `bound`, in lexicographic order.
pub fn enumerate_sigmas(ctx: &ParamContext, bound: i64) -> Vec<HighestWeight> {
    let r = ctx.n() / 2;
    let mut ranges = Vec::new();
    for k in 0..r {
        let lo = if k == r - 1 && ctx.is_even() { -bound } else { 0 };
        ranges.push((lo, bound));
    }
    cartesian(&ranges)
        .into_iter()
        .filter_map(|e| HighestWeight::new(ctx.n(), e).ok())
        .collect()
}

/// Dimension of the irreducible SO(k) representation with highest weight `w`.
pub fn weyl_dim(w: &HighestWeight) -> u64 {
    let k = w.group_order();
    let r = w.rank();
    if k == 2 {
        return 1;
    }
    let odd = k % 2 == 1;
    let rho: Vec<Rational> = (1..=r)
        .map(|i| {
            if odd {
                Rational::half(2 * (r - i) as i64 + 1)
            } else {
                Rational::from_int((r - i) as i64)
            }
        })
        .collect();
    let l: Vec<Rational> = (0..r)
        .map(|i| Rational::from_int(w.entries()[i]) + &rho[i])
        .collect();
    let mut num = Rational::one();
    let mut den = Rational::one();
    for i in 0..r {
        for j in (i + 1)..r {
            num *= &l[i] * &l[i] - &l[j] * &l[j];
            den *= &rho[i] * &rho[i] - &rho[j] * &rho[j];
        }
        if odd {
            num *= &l[i];
            den *= &rho[i];
        }
    }
    let d = num.checked_div(&den).expect("Weyl denominator is nonzero");
    d.to_i64().expect("Weyl dimension is an integer") as u64
}

/// Half sum of positive roots of so(k), as a vector of rank length.
pub fn rho_so(k: usize) -> Vec<Rational> {
    (1..=k / 2)
        .map(|i| Rational::half(k as i64 - 2 * i as i64))
        .collect()
}

/// Casimir eigenvalue `<tau + 2 rho, tau>`.
pub fn casimir_eigenvalue(tau: &HighestWeight) -> Rational {
    let rho = rho_so(tau.group_order());
    tau.entries()
        .iter()
        .zip(rho.iter())
        .map(|(&t, r)| {
            let t = Rational::from_int(t);
            (&t + r * 2) * t
        })
        .fold(Rational::zero(), |a, b| a + b)
}
