//! Independent re-check of a serialized certificate. Works on the raw JSON
//! tree and recomputes the arithmetic facts from the recorded points.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::multlat::{factorize, pairwise_independent, LvdPDecomposition, MultiplicativeCoordinates};
use crate::numbers::{parse_rat, Rat, RootOfUnity};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub problems: Vec<String>,
}

fn get<'a>(v: &'a Value, path: &[&str]) -> &'a Value {
    path.iter().fold(v, |acc, k| &acc[*k])
}

fn array(v: &Value) -> &[Value] {
    v.as_array().map(|a| a.as_slice()).unwrap_or(&[])
}

fn point_coords(entry: &Value) -> Option<MultiplicativeCoordinates> {
    let text = entry["point"].as_str()?;
    let torsion: RootOfUnity = serde_json::from_value(entry["torsion"].clone()).ok()?;
    let value = match text.rsplit_once('*') {
        Some((_, v)) => v,
        None => text,
    };
    let mut c = factorize(&parse_rat(value).ok()?).ok()?;
    c.torsion = torsion;
    Some(c)
}

/// Checks the soundness gate of a certificate given as JSON text.
pub fn validate_certificate(json: &str) -> ValidationReport {
    let mut problems = Vec::new();
    match serde_json::from_str::<Value>(json) {
        Ok(v) => check(&v, &mut problems),
        Err(e) => problems.push(format!("not valid JSON: {e}")),
    }
    ValidationReport {
        valid: problems.is_empty(),
        problems,
    }
}

fn check(v: &Value, problems: &mut Vec<String>) {
    let mut bad = |cond: bool, msg: String| {
        if !cond {
            problems.push(msg);
        }
    };
    let entries = array(&v["entries"]);
    let r = entries.len();
    let status = v["status"].as_str().unwrap_or("");
    let conclusion = &v["conclusion"];
    let failed = !v["failure"].is_null();
    let checks = array(&v["checks"]);
    let failed_checks = checks.iter().filter(|c| c["passed"] == Value::Bool(false)).count();

    if conclusion.is_null() {
        bad(status == "partial", format!("status {status} without a conclusion"));
        bad(failed, "partial certificate without a named failing step".into());
        return;
    }
    bad(!failed, "conclusion present alongside a failure".into());
    let kind = conclusion["kind"].as_str().unwrap_or("");

    let coords: Vec<Option<MultiplicativeCoordinates>> = entries.iter().map(point_coords).collect();
    if coords.iter().all(|c| c.is_some()) {
        let cs: Vec<MultiplicativeCoordinates> = coords.iter().flatten().cloned().collect();
        bad(
            pairwise_independent(&cs).independent,
            "recorded points are not pairwise multiplicatively independent".into(),
        );
        for (i, c) in cs.iter().enumerate() {
            bad(
                c.abs_less_than_one(),
                format!("point {} is not inside the unit disk", i + 1),
            );
        }
    } else {
        bad(false, "unreadable point in entries".into());
    }
    bad(
        get(v, &["pairwiseIndependence", "independent"]) == &Value::Bool(true),
        "pairwise independence not recorded as passed".into(),
    );

    let attested = entries.iter().filter(|e| e["attested"] == Value::Bool(true)).count();
    let missing: Vec<u64> = array(&conclusion["missingAttestations"])
        .iter()
        .filter_map(|x| x.as_u64())
        .collect();
    let unattested: Vec<u64> = entries
        .iter()
        .enumerate()
        .filter(|(_, e)| e["attested"] != Value::Bool(true))
        .map(|(i, _)| i as u64)
        .collect();
    bad(
        missing == unattested,
        "missing attestations do not match the entries".into(),
    );
    match kind {
        "full" => {
            bad(attested == r, "full conclusion without every attestation".into());
            bad(status == "complete", format!("full conclusion with status {status}"));
            bad(failed_checks == 0, "full conclusion with failed checks".into());
        }
        "conditional" => {
            bad(
                attested < r,
                "conditional conclusion although every value is attested".into(),
            );
            bad(
                status == "conditional",
                format!("conditional conclusion with status {status}"),
            );
            let statement = conclusion["statement"].as_str().unwrap_or("");
            bad(
                statement.starts_with("conditional:"),
                "conditional statement not marked".into(),
            );
            let non_attestation = checks
                .iter()
                .filter(|c| c["passed"] == Value::Bool(false) && c["step"] != "attestations")
                .count();
            bad(non_attestation == 0, "conditional conclusion with failed checks".into());
        }
        other => bad(false, format!("unknown conclusion kind {other:?}")),
    }

    let classes = array(&v["classes"]);
    let mut seen = vec![false; r];
    let mut card_sum = 0;
    let mut radii = Vec::new();
    for c in classes {
        let k = c["class"].as_u64().unwrap_or(0);
        let members: Vec<usize> = array(&c["members"])
            .iter()
            .filter_map(|m| m.as_u64())
            .map(|m| m as usize)
            .collect();
        card_sum += members.len();
        for &m in &members {
            if m < r {
                bad(!seen[m], format!("value {} appears in two classes", m + 1));
                seen[m] = true;
            } else {
                bad(false, format!("class {k} names a missing value"));
            }
        }
        let radix = c["radix"].as_u64().unwrap_or(0);
        radii.push(radix);
        bad(
            c["spectralRadius"].as_u64() == Some(radix),
            format!("class {k}: spectral radius differs from the radix"),
        );
        bad(
            get(c, &["exponentIndependence", "independent"]) == &Value::Bool(true),
            format!("class {k}: exponent vectors not independent"),
        );
        bad(
            get(c, &["admissibility", "admissible"]) == &Value::Bool(true),
            format!("class {k}: admissibility not passed"),
        );
        let regs = array(&c["regularity"]);
        bad(
            regs.len() == members.len(),
            format!("class {k}: regularity reports missing"),
        );
        for reg in regs {
            bad(
                get(reg, &["report", "verdict", "verdict"]) == "regular",
                format!(
                    "class {k}: value {} not certified regular",
                    reg["member"].as_u64().unwrap_or(0) + 1
                ),
            );
        }
        match serde_json::from_value::<LvdPDecomposition>(c["decomposition"].clone()) {
            Ok(d) => {
                let pts: Option<Vec<MultiplicativeCoordinates>> =
                    members.iter().map(|&m| coords.get(m).cloned().flatten()).collect();
                if let Some(pts) = pts {
                    if let Err(what) = d.verify(&pts) {
                        bad(false, format!("class {k}: decomposition fails {what}"));
                    }
                }
                for (j, b) in array(&c["blocks"]).iter().enumerate() {
                    let mu: Vec<u64> = array(&b["mu"]).iter().filter_map(|x| x.as_u64()).collect();
                    bad(
                        d.exponents.get(j) == Some(&mu),
                        format!(
                            "class {k}: block {} exponent vector differs from the decomposition",
                            j + 1
                        ),
                    );
                }
            }
            Err(_) => bad(false, format!("class {k}: unreadable decomposition")),
        }
    }
    bad(seen.iter().all(|s| *s), "classes do not cover every value".into());
    let degree = conclusion["transcendenceDegree"].as_u64().unwrap_or(0) as usize;
    bad(
        degree == r,
        format!("transcendence degree {degree} differs from {r} values"),
    );
    bad(card_sum == r, "class cardinalities do not add up".into());

    let radius_coords: Option<Vec<MultiplicativeCoordinates>> = radii
        .iter()
        .map(|x| factorize(&Rat::from_integer((*x).into())).ok())
        .collect();
    match radius_coords {
        Some(rc) => bad(
            pairwise_independent(&rc).independent,
            "spectral radii are not pairwise multiplicatively independent".into(),
        ),
        None => bad(false, "unreadable spectral radius".into()),
    }
}
