//! Subcommand implementations. Each returns the JSON document to print and
//! whether every check it performs passed.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use mahler_core::analysis::{
    eval_value, linear_independence_qz, parse_decimal, purity_check, regular_point_check, value_relation_search,
    EvalOptions, IndependenceUpTo, Point, PurityInstance, RegularityVerdict,
};
use mahler_core::certify::{
    certify as run_certify, render_certificate, validate_certificate, CertInput, CertStatus, Format, PointSpec,
};
use mahler_core::cones::{
    bound_bd_check, cone_basis, cone_member, line_cone_intersection, LineConeInstance, RationalCone,
};
use mahler_core::mahler::{build_block_system, MahlerSystem};
use mahler_core::multlat::{lvdp_decompose, mult_kernel, pairwise_independent, MultiplicativeCoordinates};
use mahler_core::numbers::{parse_rat, rat_to_string, Rat};
use mahler_core::selfcheck::selfcheck as run_selfcheck;
use mahler_core::Error as CoreError;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::Config;
use crate::input::{base_dir, inline_or_file, load_system, parse_root, read_json, resolve_system, system_value, typed};
use crate::{
    BuildArgs, CertifyArgs, ConeCommand, DecomposeArgs, EvalArgs, ExpandArgs, IndependenceArgs, IterateArgs,
    PurityArgs, RegularArgs, RelationsArgs, SelfcheckArgs, TwistArgs,
};

pub struct Outcome {
    pub json: Value,
    pub ok: bool,
    pub note: Option<String>,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Self {
            json,
            ok: true,
            note: None,
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

/// Pretty JSON with a trailing newline, to a file or standard output.
pub fn emit(json: &Value, out: Option<&Path>) -> Result<()> {
    let text = format!("{}\n", serde_json::to_string_pretty(json)?);
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn point_of(value: &str, torsion: Option<&str>) -> Result<Point> {
    let spec = match torsion {
        None => PointSpec::Plain(value.to_string()),
        Some(t) => PointSpec::Tagged {
            value: value.to_string(),
            torsion: parse_root(t)?,
        },
    };
    Ok(spec.to_point()?)
}

pub fn decompose(a: &DecomposeArgs) -> Result<Outcome> {
    let (v, _) = inline_or_file(&a.points)?;
    let specs: Vec<PointSpec> = typed(v, "points list")?;
    if specs.is_empty() {
        bail!("no points given");
    }
    let coords: Vec<MultiplicativeCoordinates> = specs
        .iter()
        .map(|s| s.coordinates())
        .collect::<std::result::Result<_, _>>()?;
    let names: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
    let pairwise = pairwise_independent(&coords);
    let relations: Vec<Value> = mult_kernel(&coords)
        .iter()
        .map(|k| json!({"coefficients": k.coefficients, "rendered": k.render_multiplicative(&names)}))
        .collect();
    let decomposition = lvdp_decompose(&coords)?;
    let verified = decomposition.verify(&coords).is_ok();
    Ok(Outcome {
        json: json!({
            "points": names,
            "pairwise": to_value(&pairwise)?,
            "relations": relations,
            "decomposition": to_value(&decomposition)?,
            "verified": verified,
        }),
        ok: verified,
        note: None,
    })
}

fn rat_value(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => Ok(parse_rat(s)?),
        Value::Number(n) => Ok(parse_rat(&n.to_string())?),
        other => bail!("expected a rational, got {other}"),
    }
}

fn rat_vector(v: &Value) -> Result<Vec<Rat>> {
    v.as_array()
        .ok_or_else(|| anyhow!("expected a vector, got {v}"))?
        .iter()
        .map(rat_value)
        .collect()
}

fn cone_of(v: &Value) -> Result<RationalCone> {
    let gens: Vec<Vec<Rat>> = v["generators"]
        .as_array()
        .ok_or_else(|| anyhow!("missing generators"))?
        .iter()
        .map(rat_vector)
        .collect::<Result<_>>()?;
    let dim = gens.first().map(|g| g.len()).ok_or_else(|| anyhow!("no generators"))?;
    Ok(RationalCone::new(dim, gens)?)
}

fn strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

#[derive(Deserialize)]
struct IntersectInput {
    lambda: Vec<i64>,
    mu: Vec<i64>,
    gammas: Vec<Vec<i64>>,
    generators: Vec<Vec<i64>>,
}

pub fn cone(c: &ConeCommand) -> Result<Outcome> {
    match c {
        ConeCommand::Member(a) => {
            let (v, _) = inline_or_file(&a.input)?;
            let cone = cone_of(&v)?;
            let x = rat_vector(&v["point"])?;
            let m = cone_member(&x, &cone)?;
            let verified = m.verify(&x, &cone);
            let mut out = to_value(&m)?;
            out["verified"] = verified.into();
            Ok(Outcome {
                json: out,
                ok: verified,
                note: None,
            })
        }
        ConeCommand::Basis(a) => {
            let (v, _) = inline_or_file(&a.input)?;
            let cone = cone_of(&v)?;
            let b = cone_basis(&cone.generators)?;
            let mut out = to_value(&b)?;
            out["basis"] = b
                .generators(&cone.generators)
                .iter()
                .map(|g| strings(g))
                .collect::<Vec<_>>()
                .into();
            Ok(Outcome::ok(out))
        }
        ConeCommand::Intersect(a) => {
            let (v, _) = inline_or_file(&a.input)?;
            let raw: IntersectInput = typed(v, "line/cone instance")?;
            let dim = raw.lambda.len();
            let inst = LineConeInstance {
                cone: RationalCone::from_ints(dim, &raw.generators)?,
                lambda: raw.lambda,
                mu: raw.mu,
                gammas: raw.gammas,
            };
            match line_cone_intersection(&inst) {
                Ok(ks) => {
                    let bound = bound_bd_check(&inst).ok();
                    let holds = bound.as_ref().is_none_or(|b| b.holds);
                    Ok(Outcome {
                        json: json!({"unbounded": false, "ks": ks, "bound": to_value(&bound)?}),
                        ok: holds,
                        note: None,
                    })
                }
                Err(CoreError::UnboundedIntersection) => Ok(Outcome::ok(
                    json!({"unbounded": true, "ks": Vec::<u64>::new(), "bound": Value::Null}),
                )),
                Err(e) => Err(e.into()),
            }
        }
    }
}

pub fn expand(a: &ExpandArgs, cfg: &Config) -> Result<Outcome> {
    let s = load_system(&a.system)?;
    let e = s.expand(a.order.unwrap_or(cfg.truncation))?;
    Ok(Outcome::ok(to_value(&e)?))
}

pub fn iterate(a: &IterateArgs) -> Result<Outcome> {
    let s = load_system(&a.system)?;
    Ok(Outcome::ok(to_value(&s.iterate(a.times)?)?))
}

pub fn twist(a: &TwistArgs) -> Result<Outcome> {
    let s = load_system(&a.system)?;
    Ok(Outcome::ok(to_value(&s.twist(&parse_root(&a.root)?)?)?))
}

#[derive(Deserialize)]
struct BlockInput {
    system: Value,
    mu: Vec<u32>,
}

pub fn build(a: &BuildArgs) -> Result<Outcome> {
    let base = base_dir(&a.blocks);
    let blocks: Vec<BlockInput> = typed(read_json(&a.blocks)?, "blocks list")?;
    let inputs: Vec<(MahlerSystem, Vec<u32>)> = blocks
        .into_iter()
        .map(|b| Ok((system_value(b.system, &base)?, b.mu)))
        .collect::<Result<_>>()?;
    Ok(Outcome::ok(to_value(&build_block_system(&inputs)?)?))
}

pub fn regular(a: &RegularArgs, cfg: &Config) -> Result<Outcome> {
    let s = load_system(&a.system)?;
    let p = point_of(&a.point, a.torsion.as_deref())?;
    if !p.in_unit_disk() {
        bail!("point {p} does not satisfy 0 < |x| < 1");
    }
    let r = regular_point_check(&s, &p, a.kmax.unwrap_or(cfg.k_max))?;
    let ok = matches!(r.verdict, RegularityVerdict::Regular);
    Ok(Outcome {
        note: (!ok).then(|| format!("point {} is not certified regular", a.point)),
        json: to_value(&r)?,
        ok,
    })
}

pub fn eval(a: &EvalArgs, cfg: &Config) -> Result<Outcome> {
    let s = load_system(&a.system)?;
    let p = point_of(&a.point, a.torsion.as_deref())?;
    let opts = EvalOptions {
        digits: a.digits.unwrap_or(cfg.digits),
        depth: a.depth,
        tail: a.tail,
    };
    Ok(Outcome::ok(to_value(&eval_value(&s, &p, &opts)?)?))
}

#[derive(Serialize)]
struct IndependenceOut<'a> {
    independent: bool,
    series: usize,
    #[serde(flatten)]
    report: &'a IndependenceUpTo,
}

pub fn independence(a: &IndependenceArgs, cfg: &Config) -> Result<Outcome> {
    let order = a.order.unwrap_or(cfg.truncation);
    let mut series = Vec::new();
    for path in &a.systems {
        let s = load_system(path)?;
        let e = s.expand(order)?;
        if a.distinguished {
            series.push(e.component(s.distinguished).to_vec());
        } else {
            series.extend(e.series);
        }
    }
    let r = linear_independence_qz(&series, a.degree.unwrap_or(cfg.degree_bound))?;
    let out = IndependenceOut {
        independent: r.independent(),
        series: series.len(),
        report: &r,
    };
    Ok(Outcome::ok(to_value(&out)?))
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct PurityInput {
    series: Vec<Value>,
    mus: Vec<Vec<u32>>,
    truncation: u64,
    support: u64,
}

pub fn purity(a: &PurityArgs) -> Result<Outcome> {
    let base = base_dir(&a.input);
    let raw: PurityInput = typed(read_json(&a.input)?, "purity instance")?;
    let series = raw
        .series
        .into_iter()
        .map(|v| {
            let s = system_value(v, &base)?;
            Ok(s.expand(raw.truncation as usize)?.component(s.distinguished).to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    let inst = PurityInstance {
        series,
        mus: raw.mus,
        truncation: raw.truncation,
        support: raw.support,
        check_preconditions: !a.no_preconditions,
    };
    Ok(Outcome::ok(to_value(&purity_check(&inst)?)?))
}

fn fractional_digits(text: &str) -> u32 {
    text.trim()
        .split_once('.')
        .map(|(_, f)| f.chars().take_while(|c| c.is_ascii_digit()).count() as u32)
        .unwrap_or(0)
}

pub fn relations(a: &RelationsArgs) -> Result<Outcome> {
    let texts: Vec<String> = typed(read_json(&a.values)?, "values list")?;
    let values: Vec<Rat> = texts
        .iter()
        .map(|t| parse_decimal(t))
        .collect::<std::result::Result<_, _>>()?;
    let precision = a
        .precision
        .unwrap_or_else(|| texts.iter().map(|t| fractional_digits(t)).min().unwrap_or(0));
    Ok(Outcome::ok(to_value(&value_relation_search(
        &values, a.degree, precision,
    )?)?))
}

/// Reads a certification input, inlining system files named by relative path
/// and layering options: configuration, then the file, then flags.
fn certify_input(a: &CertifyArgs, path: &Path, cfg: &Config) -> Result<CertInput> {
    let base = base_dir(path);
    let mut v = read_json(path)?;
    let entries = v
        .get_mut("entries")
        .and_then(Value::as_array_mut)
        .ok_or_else(|| anyhow!("input has no entries list"))?;
    for e in entries {
        if let Some(s) = e.get_mut("system") {
            resolve_system(s, &base)?;
        }
    }
    let mut options = json!({
        "truncation": cfg.truncation,
        "degreeBound": cfg.degree_bound,
        "kMax": cfg.k_max,
    });
    if let Some(given) = v.get("options").and_then(Value::as_object) {
        for (k, x) in given {
            options[k] = x.clone();
        }
    }
    if let Some(n) = a.truncation {
        options["truncation"] = n.into();
    }
    if let Some(d) = a.degree {
        options["degreeBound"] = d.into();
    }
    if a.no_evidence {
        options["evidence"] = false.into();
    }
    v["options"] = options;
    typed(v, "certification input")
}

pub fn certify(a: &CertifyArgs, cfg: &Config, out: Option<&Path>) -> Result<Outcome> {
    if let Some(check) = &a.check {
        let text = std::fs::read_to_string(check).with_context(|| format!("reading {}", check.display()))?;
        let report = validate_certificate(&text);
        return Ok(Outcome {
            ok: report.valid,
            note: (!report.valid).then(|| format!("certificate rejected: {}", report.problems.join("; "))),
            json: to_value(&report)?,
        });
    }
    let path = a.input.as_deref().ok_or_else(|| anyhow!("--input is required"))?;
    let input = certify_input(a, path, cfg)?;
    let cert = run_certify(&input)?;
    let json_text = render_certificate(&cert, Format::Json);
    let validation = validate_certificate(&json_text);
    let report_path = match (&a.report, out) {
        (Some(r), _) => r.clone(),
        (None, Some(o)) => o.with_extension("md"),
        (None, None) => "cert.md".into(),
    };
    std::fs::write(&report_path, render_certificate(&cert, Format::Markdown))
        .with_context(|| format!("writing {}", report_path.display()))?;
    let mut note = None;
    if let Some(f) = &cert.failure {
        note = Some(format!(
            "certificate is partial: step {} failed ({}){}",
            f.step,
            f.message,
            f.witness.as_ref().map(|w| format!(", witness {w}")).unwrap_or_default()
        ));
    } else if cert.status == CertStatus::Conditional {
        note = cert.conclusion.as_ref().map(|c| c.statement.clone());
    }
    if !validation.valid {
        note = Some(format!(
            "validator rejected the certificate: {}",
            validation.problems.join("; ")
        ));
    }
    Ok(Outcome {
        json: serde_json::from_str(&json_text)?,
        ok: cert.status != CertStatus::Partial && validation.valid,
        note,
    })
}

pub fn selfcheck(a: &SelfcheckArgs, cfg: &Config) -> Result<Outcome> {
    let r = run_selfcheck(a.seed.unwrap_or(cfg.seed));
    let failed: Vec<&str> = r.items.iter().filter(|i| !i.passed).map(|i| i.name.as_str()).collect();
    Ok(Outcome {
        ok: r.passed,
        note: (!failed.is_empty()).then(|| format!("failed: {}", failed.join(", "))),
        json: to_value(&r)?,
    })
}
