use super::*;
use crate::analysis::Point;

const FREDHOLM: &str = r#"{"q":2,"matrix":[["1","z"],["0","1"]],"seeds":{"0":["0","1"]},"distinguished":0}"#;
const CUBE: &str = r#"{"q":3,"matrix":[["1","z"],["0","1"]],"seeds":{"0":["0","1"]},"distinguished":0}"#;

fn entry(system: &str, point: &str, attested: bool) -> String {
    let att = if attested {
        r#","attestation":{"notInField":true,"provenance":"test"}"#
    } else {
        ""
    };
    format!(r#"{{"system":{system},"point":"{point}"{att}}}"#)
}

fn input(entries: &[String]) -> CertInput {
    serde_json::from_str(&format!(r#"{{"entries":[{}]}}"#, entries.join(","))).unwrap()
}

fn intro(attest: [bool; 3]) -> CertInput {
    input(&[
        entry(FREDHOLM, "1/2", attest[0]),
        entry(FREDHOLM, "1/5", attest[1]),
        entry(FREDHOLM, "1/10", attest[2]),
    ])
}

#[test]
fn intro_example() {
    let c = certify(&intro([true; 3])).unwrap();
    assert_eq!(c.status, CertStatus::Complete, "{:?}", c.failure);
    assert_eq!(c.classes.len(), 1);
    let d = c.classes[0].decomposition.as_ref().unwrap();
    assert_eq!(d.generators[0], Point::parse("1/2").unwrap().modulus);
    assert_eq!(d.generators[1], Point::parse("1/5").unwrap().modulus);
    assert_eq!(d.exponents, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    let concl = c.conclusion.as_ref().unwrap();
    assert_eq!(concl.kind, ConclusionKind::Full);
    assert_eq!(concl.transcendence_degree, 3);
    assert_eq!(c.global_relations.len(), 1);
    assert_eq!(c.global_relations[0].rendered, "1/10 = (1/2)(1/5)");
    let md = render_certificate(&c, Format::Markdown);
    assert!(md.contains("1/10 = (1/2)(1/5)"));
    assert!(md.contains("Noted but allowed"));
    let json = render_certificate(&c, Format::Json);
    assert_eq!(parse_certificate(&json).unwrap(), c);
    let v = validate_certificate(&json);
    assert!(v.valid, "{:?}", v.problems);
}

#[test]
fn two_classes() {
    let c = certify(&input(&[entry(FREDHOLM, "1/2", true), entry(CUBE, "1/3", true)])).unwrap();
    assert_eq!(c.status, CertStatus::Complete, "{:?}", c.failure);
    assert_eq!(c.classes.len(), 2);
    let x = c.cross_class.as_ref().unwrap();
    assert_eq!(x.radii, vec![2, 3]);
    assert!(x.report.independent);
    assert_eq!(c.conclusion.as_ref().unwrap().transcendence_degree, 2);
    assert!(validate_certificate(&render_certificate(&c, Format::Json)).valid);
}

#[test]
fn dependent_points_fail_first() {
    let c = certify(&input(&[entry(FREDHOLM, "1/2", true), entry(FREDHOLM, "1/4", true)])).unwrap();
    assert_eq!(c.status, CertStatus::Partial);
    assert_eq!(c.failed_step(), Some("pairwiseIndependence"));
    assert_eq!(c.failure.as_ref().unwrap().witness.as_deref(), Some("2·e1 = e2"));
    assert!(c.conclusion.is_none());
    let md = render_certificate(&c, Format::Markdown);
    assert!(md.contains("pairwiseIndependence"));
    let json = render_certificate(&c, Format::Json);
    assert_eq!(parse_certificate(&json).unwrap(), c);
    assert!(validate_certificate(&json).valid);
}

#[test]
fn missing_attestation_is_conditional() {
    let c = certify(&intro([true, false, true])).unwrap();
    assert_eq!(c.status, CertStatus::Conditional);
    let concl = c.conclusion.as_ref().unwrap();
    assert_eq!(concl.kind, ConclusionKind::Conditional);
    assert_eq!(concl.statement, "conditional: tr.deg = 3 if value 2 ∉ 𝕂");
    assert!(validate_certificate(&render_certificate(&c, Format::Json)).valid);
}

#[test]
fn pole_on_orbit_is_partial() {
    let pole = r#"{"q":2,"matrix":[["1/(1 - 4z)"]],"seeds":{"0":["1"]},"distinguished":0}"#;
    let c = certify(&input(&[entry(pole, "1/2", true)])).unwrap();
    assert_eq!(c.failed_step(), Some("regularity"));
}

#[test]
fn torsion_point_is_twisted() {
    let c = certify(&input(&[entry(FREDHOLM, "-1/2", true), entry(CUBE, "1/3", true)])).unwrap();
    assert_eq!(c.status, CertStatus::Complete, "{:?}", c.failure);
    assert_eq!(c.classes[0].blocks[0].dim, 4);
}

#[test]
fn deterministic_and_tamper_evident() {
    let a = render_certificate(&certify(&intro([true; 3])).unwrap(), Format::Json);
    let b = render_certificate(&certify(&intro([true; 3])).unwrap(), Format::Json);
    assert_eq!(a, b);
    let tampered = a.replacen("\"attested\": true", "\"attested\": false", 1);
    assert!(!validate_certificate(&tampered).valid);
    let mut v: serde_json::Value = serde_json::from_str(&a).unwrap();
    v["classes"][0]["spectralRadius"] = 4.into();
    assert!(!validate_certificate(&v.to_string()).valid);
}

#[test]
fn malformed_input_is_an_error() {
    let bad = input(&[entry(FREDHOLM, "3/2", true)]);
    assert!(certify(&bad).is_err());
    let mut inp = intro([true; 3]);
    inp.entries[0].q = Some(3);
    assert!(certify(&inp).is_err());
}
