use std::process::Command;

use proptest::prelude::*;
use rankone::{
    branch_record, classify_record, eigenvalue_record, factors_record, whittaker_record, ClassifyRecord, Envelope,
    EigenvalueRecord, Picture, Render,
};
use rankone_core::weight_lattice::enumerate_sigmas;
use rankone_core::{LambdaSpec, ParamContext, PrincipalSeriesPoint, Rational};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

fn bin(args: &[&str]) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_rankone")).args(args).output().unwrap();
    (
        o.status.code().unwrap(),
        String::from_utf8(o.stdout).unwrap(),
        String::from_utf8(o.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out, err) = bin(&a);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn classify_complementary() {
    let v = json(&["classify", "--n", "3", "--sigma", "1", "--lambda", "1/4"]);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["result"]["classification"], "ComplementarySeries");
}

#[test]
fn fourier_table_for_n4() {
    let v = json(&["eigenvalues", "--picture", "fourier", "--n", "4", "--sigma", "2,0", "--lambda", "1"]);
    assert_eq!(v["result"]["values"], serde_json::json!({"0": "6", "1": "0", "2": "0"}));
}

#[test]
fn single_tau_and_alpha() {
    let v = json(&["eigenvalues", "--picture", "fourier", "--n", "4", "--sigma", "2,0", "--lambda", "1", "--tau", "0"]);
    assert_eq!(v["result"]["values"], serde_json::json!({"0": "6"}));
    let v = json(&["eigenvalues", "--n", "3", "--sigma", "1", "--lambda", "1/2", "--alpha", "1,0"]);
    assert_eq!(v["result"]["values"].as_object().unwrap().len(), 1);
}

#[test]
fn validation_errors_exit_2() {
    let cases: &[(&[&str], &str)] = &[
        (&["classify", "--n", "3", "--sigma", "1", "--lambda", "x"], "--lambda"),
        (&["classify", "--n", "2", "--lambda", "0"], "n must be at least 3"),
        (&["classify", "--n", "4", "--sigma", "1,2", "--lambda", "0"], "dominate"),
        (&["classify", "--n", "5", "--sigma", "1", "--lambda", "0"], "expected 2"),
        (&["eigenvalues", "--n", "4", "--sigma", "1,1", "--lambda", "1/2"], "self-dual"),
        (&["eigenvalues", "--n", "3", "--sigma", "1", "--lambda", "i1"], "real"),
        (&["verify", "--suite", "everything"], "unknown suite"),
        (&["frobnicate"], "unrecognized"),
    ];
    for (args, needle) in cases {
        let (code, _, err) = bin(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(err.contains(needle), "{args:?}: {err}");
    }
}

#[test]
fn verify_streams_reports() {
    let (code, out, _) = bin(&["verify", "--suite", "decomposition", "--seed", "7", "--json"]);
    assert_eq!(code, 0);
    let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 12);
    for l in &lines {
        assert_eq!(l["schema"], "1");
        assert_eq!(l["result"]["pass"], true);
        assert_eq!(l["result"]["params"]["seed"], 7);
    }
    let (_, again, _) = bin(&["verify", "--suite", "decomposition", "--seed", "7", "--json"]);
    assert_eq!(out, again);
}

#[test]
fn verify_full_suite_passes() {
    let (code, out, _) = bin(&["verify"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.starts_with("PASS")), "{out}");
    assert!(out.contains("multiplier_ratio"));
    assert!(out.contains("projection_recursion"));
}

#[test]
fn other_commands_render() {
    let (code, out, _) = bin(&["dual", "--n", "5", "--bound", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("complementary"));
    let v = json(&["branch", "--n", "3", "--sigma", "1", "--lambda", "1/2"]);
    assert_eq!(v["result"]["constituents"].as_array().unwrap().len(), 3);
    let v = json(&["whittaker", "--n", "3", "--lambda", "3/2"]);
    let c = v["result"]["constituents"].as_array().unwrap();
    assert!(c.iter().any(|e| e["total_dim"] == 1));
    let (code, out, _) = bin(&["factors", "--n", "4", "--sigma", "1,0", "--lambda", "-2"]);
    assert_eq!(code, 0);
    assert!(out.contains('*'));
}

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(r: &T) {
    let env = Envelope {
        schema: "1".to_string(),
        command: "x".to_string(),
        result: r,
    };
    let s = serde_json::to_string(&env).unwrap();
    let back: Envelope<T> = serde_json::from_str(&s).unwrap();
    assert_eq!(&back.result, r);
}

fn point_strategy() -> impl Strategy<Value = PrincipalSeriesPoint> {
    (3usize..=7, any::<prop::sample::Index>(), -24i64..=24, any::<bool>()).prop_map(|(n, pick, twice, imag)| {
        let ctx = ParamContext::new(n).unwrap();
        let sigmas = enumerate_sigmas(&ctx, 2);
        let sigma = pick.get(&sigmas).clone();
        let q = Rational::half(twice);
        let lambda = if imag { LambdaSpec::PureImaginary(q) } else { LambdaSpec::RealRational(q) };
        PrincipalSeriesPoint::new(ctx, sigma, lambda).unwrap()
    })
}

proptest! {
    #[test]
    fn records_round_trip(p in point_strategy()) {
        round_trip(&classify_record(&p).unwrap());
        round_trip(&factors_record(&p).unwrap());
        if p.lambda.as_real().is_some() {
            round_trip(&branch_record(&p).unwrap());
            round_trip(&whittaker_record(&p).unwrap());
            if p.ctx.has_intertwiner(&p.sigma) {
                round_trip(&eigenvalue_record(&p, Picture::Fourier, None, None).unwrap());
                round_trip(&eigenvalue_record(&p, Picture::Compact, None, Some(p.sigma.get(1) + 2)).unwrap());
            }
        }
    }

    #[test]
    fn table_and_json_carry_the_same_values(p in point_strategy()) {
        prop_assume!(p.lambda.as_real().is_some() && p.ctx.has_intertwiner(&p.sigma));
        let r: EigenvalueRecord = eigenvalue_record(&p, Picture::Fourier, None, None).unwrap();
        let text = r.render();
        let rows: Vec<(String, String)> = text
            .lines()
            .skip(3)
            .map(|l| {
                let mut it = l.split_whitespace();
                (it.next().unwrap().to_string(), it.next().unwrap().to_string())
            })
            .collect();
        let expect: Vec<(String, String)> = r.values.iter().map(|(k, v)| (k.clone(), v.to_string())).collect();
        prop_assert_eq!(rows, expect);
        let c: ClassifyRecord = classify_record(&p).unwrap();
        prop_assert!(c.render().contains(&c.classification));
        for v in &c.constituents {
            prop_assert!(c.render().contains(&v.reason));
        }
    }
}
