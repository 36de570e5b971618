use rankone_core::compact_picture::{
    c_minus, c_plus, check_compact_recurrence, composition_factors, factor_contains_ktype, kernel_ktypes,
    kernel_matches_factor, reducibility_family, reducibility_points, scaled_compact_eigenvalue,
};
use rankone_core::fourier_picture::{a_f, check_f_recursion, f_picture_factor_tau_set, Step};
use rankone_core::weight_lattice::{enumerate_ktypes, enumerate_sigmas, enumerate_tau};
use rankone_core::{HighestWeight, ParamContext, PrincipalSeriesPoint, Rational};

fn half_grid(lo: &Rational, hi: &Rational) -> Vec<Rational> {
    let a = (lo * 2).ceil();
    let b = (hi * 2).floor();
    let a: i64 = a.try_into().unwrap();
    let b: i64 = b.try_into().unwrap();
    (a..=b).map(Rational::half).collect()
}

/// Reducibility detected from a vanishing step coefficient between two
/// K-types, independent of the closed-form lists.
fn step_oracle_reducible(p: &PrincipalSeriesPoint, bound: i64) -> bool {
    let lambda = p.real_lambda().unwrap();
    let ks = enumerate_ktypes(&p.sigma, &p.ctx, bound).unwrap();
    for a in &ks {
        for k in 1..=p.ctx.m() {
            if let Ok(up) = a.shifted(k, 1) {
                if ks.contains(&up) && c_plus(&p.ctx, lambda, a, k).unwrap().is_zero() {
                    return true;
                }
            }
            if let Ok(down) = a.shifted(k, -1) {
                if ks.contains(&down) && c_minus(&p.ctx, lambda, a, k).unwrap().is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

#[test]
fn reducibility_matches_step_oracle() {
    for n in 3..=8 {
        let ctx = ParamContext::new(n).unwrap();
        for sigma in enumerate_sigmas(&ctx, 3) {
            let rho = ctx.rho();
            for lambda in half_grid(&-(&rho + 6), &(&rho + 6)) {
                let p = PrincipalSeriesPoint::real(ctx, sigma.clone(), lambda.clone()).unwrap();
                let reducible = composition_factors(&p).unwrap().len() > 1;
                let oracle = step_oracle_reducible(&p, sigma.get(1) + 10);
                assert_eq!(reducible, oracle, "n={n} sigma={sigma} lambda={lambda}");
            }
        }
    }
}

#[test]
fn listed_points_match_families() {
    for n in 3..=9 {
        let ctx = ParamContext::new(n).unwrap();
        for sigma in enumerate_sigmas(&ctx, 4) {
            let listed = reducibility_points(&sigma, &ctx, 8).unwrap();
            let top = ctx.rho() - ctx.a_sigma(&sigma) as i64 + 8;
            for lambda in half_grid(&Rational::half(1), &top) {
                let fam = reducibility_family(&sigma, &ctx, &lambda).is_some();
                assert_eq!(listed.contains(&lambda), fam, "n={n} sigma={sigma} lambda={lambda}");
            }
        }
    }
}

#[test]
fn zero_is_never_listed_for_the_even_non_self_dual_case() {
    let ctx = ParamContext::new(4).unwrap();
    let sigma = ctx.sigma("1,1").unwrap();
    let p = PrincipalSeriesPoint::real(ctx, sigma.clone(), Rational::zero()).unwrap();
    assert_eq!(composition_factors(&p).unwrap().len(), 1);
    assert!(!reducibility_points(&sigma, &ctx, 4).unwrap().contains(&Rational::zero()));
}

#[test]
fn compact_recurrence_sweep() {
    for n in 3..=7 {
        let ctx = ParamContext::new(n).unwrap();
        for sigma in enumerate_sigmas(&ctx, 2) {
            if !ctx.has_intertwiner(&sigma) {
                continue;
            }
            let span = ctx.rho() + sigma.get(1) + 2;
            for lambda in half_grid(&-&span, &span) {
                let p = PrincipalSeriesPoint::real(ctx, sigma.clone(), lambda.clone()).unwrap();
                let ks = enumerate_ktypes(&sigma, &ctx, sigma.get(1) + 3).unwrap();
                for a in &ks {
                    for k in 1..=ctx.m() {
                        let Ok(up) = a.shifted(k, 1) else { continue };
                        if ks.contains(&up) {
                            assert!(check_compact_recurrence(&p, a, k).unwrap(), "{p:?} {a} {k}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn f_recursion_sweep() {
    for n in 3..=8 {
        let ctx = ParamContext::new(n).unwrap();
        for sigma in enumerate_sigmas(&ctx, 3) {
            if !ctx.has_intertwiner(&sigma) {
                continue;
            }
            let span = ctx.rho() + sigma.get(1) + 2;
            for lambda in half_grid(&-&span, &span) {
                let p = PrincipalSeriesPoint::real(ctx, sigma.clone(), lambda.clone()).unwrap();
                let taus = enumerate_tau(&sigma, &ctx).unwrap();
                for t in &taus {
                    for i in 1..=t.rank() {
                        for step in [Step::Up, Step::Down] {
                            let Ok(next) = t.shifted(i, step.sign()) else { continue };
                            if taus.contains(&next) {
                                assert!(check_f_recursion(&p, t, i, step).unwrap(), "{p:?} {t} {i}");
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn kernels_match_subrepresentations_in_both_pictures() {
    for n in 3..=8 {
        let ctx = ParamContext::new(n).unwrap();
        for sigma in enumerate_sigmas(&ctx, 3) {
            if !ctx.has_intertwiner(&sigma) {
                continue;
            }
            let span = ctx.rho() + sigma.get(1) + 2;
            for lambda in half_grid(&-&span, &span) {
                let p = PrincipalSeriesPoint::real(ctx, sigma.clone(), lambda.clone()).unwrap();
                let factors = composition_factors(&p).unwrap();
                if factors.len() < 2 {
                    continue;
                }
                assert!(kernel_matches_factor(&p, sigma.get(1) + 4).unwrap(), "{p:?}");
                if factors[0].tag.indices().unwrap().0 == 0 {
                    continue;
                }
                let zeros: Vec<HighestWeight> = enumerate_tau(&sigma, &ctx)
                    .unwrap()
                    .into_iter()
                    .filter(|t| a_f(&p, t).unwrap().is_zero())
                    .collect();
                let mut subs = Vec::new();
                for f in factors.iter().filter(|f| f.is_subrepresentation()) {
                    subs.extend(f_picture_factor_tau_set(f).unwrap());
                }
                subs.sort();
                assert_eq!(zeros, subs, "{p:?}");
                let compact_kernel = kernel_ktypes(&p, sigma.get(1) + 4).unwrap();
                assert_eq!(compact_kernel.is_empty(), zeros.is_empty());
            }
        }
    }
}

#[test]
fn constituents_partition_the_ktypes() {
    for n in 3..=7 {
        let ctx = ParamContext::new(n).unwrap();
        for sigma in enumerate_sigmas(&ctx, 3) {
            for lambda in half_grid(&-(ctx.rho() + 5), &(ctx.rho() + 5)) {
                let p = PrincipalSeriesPoint::real(ctx, sigma.clone(), lambda).unwrap();
                let fs = composition_factors(&p).unwrap();
                for a in enumerate_ktypes(&sigma, &ctx, sigma.get(1) + 3).unwrap() {
                    let hits = fs.iter().filter(|f| factor_contains_ktype(f, &a).unwrap()).count();
                    assert_eq!(hits, 1, "{p:?} {a}");
                }
            }
        }
    }
}

#[test]
fn dual_point_swaps_kernel_and_quotient() {
    // The kernel at -lambda consists of the K-types outside the kernel at lambda
    // whenever the series has length two.
    for n in 3..=7 {
        let ctx = ParamContext::new(n).unwrap();
        for sigma in enumerate_sigmas(&ctx, 3) {
            if !ctx.has_intertwiner(&sigma) {
                continue;
            }
            for lambda in reducibility_points(&sigma, &ctx, 3).unwrap().positive_points {
                let p = PrincipalSeriesPoint::real(ctx, sigma.clone(), lambda.clone()).unwrap();
                if composition_factors(&p).unwrap().len() != 2 {
                    continue;
                }
                let bound = sigma.get(1) + 4;
                let ks = enumerate_ktypes(&sigma, &ctx, bound).unwrap();
                let plus = kernel_ktypes(&p, bound).unwrap();
                let q = PrincipalSeriesPoint::real(ctx, sigma.clone(), -lambda).unwrap();
                let minus = kernel_ktypes(&q, bound).unwrap();
                let complement: Vec<HighestWeight> = ks.into_iter().filter(|a| !plus.contains(a)).collect();
                assert_eq!(minus, complement, "{p:?}");
            }
        }
    }
}

#[test]
fn eigenvalues_positive_at_zero() {
    for n in 3..=8 {
        let ctx = ParamContext::new(n).unwrap();
        for sigma in enumerate_sigmas(&ctx, 3) {
            if !ctx.has_intertwiner(&sigma) {
                continue;
            }
            let p = PrincipalSeriesPoint::real(ctx, sigma.clone(), Rational::zero()).unwrap();
            for a in enumerate_ktypes(&sigma, &ctx, sigma.get(1) + 3).unwrap() {
                assert!(scaled_compact_eigenvalue(&p, &a).unwrap().is_positive());
            }
            let vals: Vec<Rational> = enumerate_tau(&sigma, &ctx)
                .unwrap()
                .iter()
                .map(|t| a_f(&p, t).unwrap())
                .collect();
            assert!(vals.iter().all(|v| v == &vals[0] && v.is_positive()));
        }
    }
}
