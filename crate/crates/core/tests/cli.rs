use std::process::{Command, Output};

use serde_json::Value;

fn apolar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apolar")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = apolar(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn census_row() {
    let o = apolar(&["census", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "19 9\n");
}

#[test]
fn product_quartic_is_quadratic_ci() {
    let o = apolar(&["check-ci", "-v", "w,x,y,z", "(w-x)*(y-z)*(w^2+x^2+y^2+z^2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("verdict quadratic-CI"));
    let v = json(&["check-ci", "-v", "w,x,y,z", "(w-x)*(y-z)*(w^2+x^2+y^2+z^2)"]);
    assert_eq!(v["result"]["verdict"], "quadratic-CI");
    assert_eq!(v["witnesses"]["fill_dim"], 56);
}

#[test]
fn exit_codes_follow_failure_classes() {
    // parse errors
    assert_eq!(apolar(&["hilbert", "x^-1"]).status.code(), Some(1));
    assert_eq!(apolar(&["hilbert", "-v", "x", "x*y"]).status.code(), Some(1));
    assert_eq!(apolar(&["hilbert", "2x"]).status.code(), Some(1));
    assert_eq!(apolar(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(apolar(&["substitute", "x*y", "--matrix", "1,0;0,q"]).status.code(), Some(1));
    // precondition violations
    assert_eq!(apolar(&["--char", "6", "hilbert", "x^2"]).status.code(), Some(2));
    assert_eq!(apolar(&["--char", "3", "hilbert", "x^3"]).status.code(), Some(2));
    assert_eq!(apolar(&["hilbert", "x^2 + y"]).status.code(), Some(2));
    assert_eq!(apolar(&["substitute", "x*y", "--matrix", "0,1"]).status.code(), Some(2));
    assert_eq!(apolar(&["substitute", "x*y", "--matrix", "1,1;2,2"]).status.code(), Some(2));
    assert_eq!(apolar(&["dp", "from-divided", "--char", "2", "x^2"]).status.code(), Some(2));
    // success
    assert_eq!(apolar(&["--char", "5", "hilbert", "x^3"]).status.code(), Some(0));
}

#[test]
fn json_is_byte_identical_across_runs() {
    for args in [
        &["--json", "--seed", "17", "hessian", "--order", "1", "x^3 + y^3 + z^3 + x*y*z"][..],
        &["--json", "--seed", "3", "slp", "v^3*w*x + v*w^3*y + y^2*z^3"][..],
        &["--json", "binomial-survey", "3", "--coeffs", "1,-1,2"][..],
        &["--json", "ann", "x^2*y + y^2*z"][..],
    ] {
        let (a, b) = (apolar(args), apolar(args));
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn json_envelope_has_the_published_fields() {
    let v = json(&["--seed", "9", "hilbert", "(w*x)^2 - (y*z)^2"]);
    let obj = v.as_object().unwrap();
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "config", "inputs", "result", "schema", "seed", "witnesses"]);
    assert_eq!(v["schema"], "apolar-ci/1");
    assert_eq!(v["command"], "hilbert");
    assert_eq!(v["seed"], 9);
    assert_eq!(v["config"]["char"], 0);
    assert_eq!(v["config"]["action"], "diff");
    assert_eq!(v["result"]["hilbert"], serde_json::json!([1, 4, 6, 4, 1]));
}

#[test]
fn json_errors_carry_the_exit_code() {
    let o = apolar(&["--json", "hilbert", "x^-1"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["error"]["code"], 1);
}

#[test]
fn declaration_order_is_kept() {
    let o = apolar(&["-v", "z,y,x", "qspace", "x*y*z"]);
    let text = stdout(&o);
    assert!(text.starts_with("dim 3\n"));
    assert!(text.contains("z^2"), "{text}");
}

#[test]
fn substitution_commands() {
    let o = apolar(&["substitute", "x^3 + y^3 + z^3 + x*y*z", "--matrix", "1,0,0;0,1,2", "--new-vars", "r,s"]);
    assert_eq!(stdout(&o), "r^3 + 2*r*s^2 + 9*s^3\n");
    let o = apolar(&["substitute", "x*y*z", "--young", "2,1"]);
    assert_eq!(stdout(&o), "y0^2*y1\n");
    assert_eq!(apolar(&["substitute", "x*y*z", "--young", "2,2"]).status.code(), Some(2));
}

#[test]
fn dual_from_ideal_recovers_ternary_cubic() {
    let v = json(&["dual-from-ideal", "--socle-degree", "3", "x^2 - 6*y*z", "y^2 - 6*x*z", "z^2 - 6*x*y"]);
    assert_eq!(v["result"]["dim"], 1);
    assert_eq!(v["result"]["basis"][0], "x^3 + x*y*z + y^3 + z^3");
}

#[test]
fn divided_power_calculator() {
    assert_eq!(stdout(&apolar(&["dp", "mul", "x", "x"])), "2*x^(2)\n");
    assert_eq!(stdout(&apolar(&["--char", "2", "dp", "mul", "x", "x"])), "0\n");
    assert_eq!(stdout(&apolar(&["dp", "to-divided", "x^2*y"])), "2*x^(2)*y^(1)\n");
    assert_eq!(stdout(&apolar(&["dp", "from-divided", "2*x^2*y"])), "x^2*y\n");
    assert_eq!(stdout(&apolar(&["dp", "contract", "-v", "x,y", "x", "x^3"])), "x^(2)\n");
    let o = apolar(&["--char", "5", "dp", "ann", "-v", "x,y,z", "(x+y+z)^3", "--degree", "2"]);
    assert!(stdout(&o).starts_with("Ann_2: dim 3 of 6"), "{}", stdout(&o));
}

#[test]
fn contraction_action_flag() {
    let diff = stdout(&apolar(&["--action", "diff", "hilbert", "x^2*y"]));
    let contract = stdout(&apolar(&["--action", "contract", "hilbert", "x^2*y"]));
    assert_eq!(diff, "(1,2,2,1)\n");
    assert_eq!(contract, diff);
    // over F_2 only contraction makes sense in degree 3
    assert_eq!(apolar(&["--char", "2", "hilbert", "x^2*y"]).status.code(), Some(2));
    assert_eq!(stdout(&apolar(&["--char", "2", "--action", "contract", "hilbert", "x^2*y"])), "(1,2,2,1)\n");
}

#[test]
fn verify_examples_reports_every_example() {
    let o = apolar(&["verify-examples"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.contains("FAIL"));
    assert!(text.lines().last().unwrap().ends_with(" 0 failed"));
}

#[test]
fn uniform_and_general_ci() {
    let o = apolar(&["check-ci-uniform", "--degree", "3", "x^2*y^2"]);
    assert!(stdout(&o).starts_with("verdict CI"));
    let o = apolar(&["check-ci", "--general", "x^2*y"]);
    assert!(stdout(&o).starts_with("verdict CI"), "{}", stdout(&o));
}

mod round_trip {
    use proptest::prelude::*;

    use super::apolar;

    proptest! {
        #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

        /// Printing the parsed input and feeding it back gives the same text.
        #[test]
        fn printed_forms_reparse(terms in prop::collection::vec((0u32..=3, -9i64..=9), 1..5)) {
            let mut input = String::from("0");
            for (a, c) in &terms {
                let sign = if *c < 0 { '-' } else { '+' };
                input += &format!(" {sign} {}*x^{a}*y^{}", c.abs(), 3 - a);
            }
            let once = apolar(&["--json", "-v", "x,y", "qspace", &input]);
            prop_assume!(once.status.code() != Some(2));
            prop_assert!(once.status.success());
            let v: serde_json::Value = serde_json::from_slice(&once.stdout).unwrap();
            let printed = v["inputs"]["form"].as_str().unwrap().to_string();
            let twice = apolar(&["--json", "-v", "x,y", "qspace", &printed]);
            let w: serde_json::Value = serde_json::from_slice(&twice.stdout).unwrap();
            prop_assert_eq!(w["inputs"]["form"].as_str().unwrap(), printed.as_str());
            prop_assert_eq!(&w["result"], &v["result"]);
        }
    }
}
