use super::*;
use crate::testkit;

fn load(name: &str) -> Result<Instance, InstanceError> {
    Instance::from_json(bundled_text(name).unwrap())
}

#[test]
fn bundled_instances_load() {
    for (name, text) in bundled() {
        let r = Instance::from_json(text);
        if *name == "s3-trivial-action" {
            continue;
        }
        let inst = r.unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(inst.name, *name);
        assert!(!inst.reps.is_empty());
    }
}

#[test]
fn trivial_action_on_s3_fails_peiffer() {
    let Err(InstanceError::Violations(vs)) = load("s3-trivial-action") else { panic!("expected violations") };
    assert!(vs.iter().any(|v| matches!(v, InstanceViolation::CrossedModule { violation: CrossedModuleViolation::Peiffer { .. } })));
    assert!(!InstanceError::Violations(vs).is_input_error());
}

#[test]
fn corpus_matches_the_fixtures() {
    let z2 = load("z2-identity").unwrap();
    let fixture = testkit::z2_unipotent();
    let rep = &z2.rep("unipotent").unwrap().rep;
    assert_eq!(rep.xm(), fixture.xm());
    for h in 0..2 {
        assert_eq!(rep.rho00(h), fixture.rho00(h));
        assert_eq!(rep.rho1(h), fixture.rho1(h));
    }
    let s3 = load("s3-conjugation").unwrap();
    let fixture = testkit::s3_sign();
    let rep = &s3.rep("sign").unwrap().rep;
    assert_eq!(rep.xm(), fixture.xm());
    for h in 0..6 {
        assert_eq!(rep.rho00(h), fixture.rho00(h));
        assert_eq!(rep.rho1(h), fixture.rho1(h));
    }
    assert!(s3.rep("1").is_some() && s3.rep("7").is_none());
}

fn with(text: &str, from: &str, to: &str) -> String {
    assert!(text.contains(from), "{from}");
    text.replacen(from, to, 1)
}

#[test]
fn bad_scalars_report_their_position() {
    let base = bundled_text("z2-identity").unwrap();
    let text = with(base, r#"[["1"], ["0"]]"#, r#"[["1/0"], ["0"]]"#);
    let e = Instance::from_json(&text).unwrap_err();
    let InstanceError::Syntax { line, column, ref message } = e else { panic!("{e:?}") };
    let want = text.lines().position(|l| l.contains("1/0")).unwrap() + 1;
    assert_eq!(line, want);
    assert!(column > 0 && message.contains("1/0"), "{message}");
    assert!(e.is_input_error());

    let text = with(base, r#"[["1"], ["0"]]"#, r#"[[1], ["0"]]"#);
    assert!(matches!(Instance::from_json(&text), Err(InstanceError::Syntax { .. })));
}

#[test]
fn malformed_documents_are_input_errors() {
    let base = bundled_text("z2-identity").unwrap();
    let cases = [
        with(base, "\"format_version\": 1", "\"format_version\": 7"),
        with(base, "\"F2\"", "\"F4\""),
        with(base, "\"cyclic(2)\"", "\"cyclic(x)\""),
        with(base, "\"dim_v\": 2", "\"dim_v\": 3"),
        with(base, "\"action\": \"trivial\"", "\"action\": \"twisted\""),
        with(base, "\"name\": \"z2-identity\"", "\"name\": \"z2-identity\", \"extra\": 1"),
        base[..base.len() / 2].to_string(),
    ];
    for text in cases {
        let e = Instance::from_json(&text).unwrap_err();
        assert!(e.is_input_error(), "{e}");
    }
}

#[test]
fn axiom_failures_are_collected() {
    let base = bundled_text("z2-identity").unwrap();
    // a table that is not associative-with-identity: row 0 is not the identity row
    let text = with(base, "\"G\": \"cyclic(2)\"", "\"G\": [[1, 0], [0, 1]]");
    let Err(InstanceError::Violations(vs)) = Instance::from_json(&text) else { panic!() };
    assert!(matches!(vs[0], InstanceViolation::Group { which: "G", .. }));

    let text = with(base, r#"[["0", "1"]]"#, r#"[["1", "1"]]"#);
    let Err(InstanceError::Violations(vs)) = Instance::from_json(&text) else { panic!() };
    assert!(vs.iter().all(|v| matches!(v, InstanceViolation::Representation { name, .. } if name == "unipotent")));
}

#[test]
fn conjugation_pulls_back_along_an_inclusion() {
    let text = r#"{
        "format_version": 1, "name": "z3-in-s3", "field": "F5",
        "G": "cyclic(3)", "H": "symmetric(3)", "i": [0, 2, 5], "action": "conjugation"
    }"#;
    let inst = Instance::from_json(text).unwrap();
    assert_eq!(inst.xm, testkit::z3_in_s3());
    let bad = text.replace("[0, 2, 5]", "\"trivial\"");
    assert!(Instance::from_json(&bad).unwrap_err().is_input_error());
}

#[test]
fn tuples_parse_with_defaults() {
    let inst = load("z2-identity").unwrap();
    let rep = &inst.rep("unipotent").unwrap().rep;
    let zero = inst.parse_tuple(rep, "{}").unwrap();
    assert_eq!(zero, ExtensionTuple::zero(rep));
    let t = inst.parse_tuple(rep, r#"{"omega1": [[["0"], ["0"]], [["0"], ["1"]]]}"#).unwrap();
    assert!(t.omega1[1][1][0].is_one());
    assert!(inst.parse_tuple(rep, r#"{"omega1": [[["0"]]]}"#).unwrap_err().is_input_error());
    assert!(matches!(inst.parse_tuple(rep, r#"{"omega1": [[["x"]]]}"#), Err(InstanceError::Syntax { .. })));
}
