//! JSON and Markdown renderings of a certificate.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::certificate::{CertStatus, IndependenceCertificate};
use crate::analysis::RegularityVerdict;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(Error::Invalid(format!("unknown format {s}"))),
        }
    }
}

pub fn render_certificate(cert: &IndependenceCertificate, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(cert).expect("certificate serializes");
            s.push('\n');
            s
        }
        Format::Markdown => markdown(cert),
    }
}

pub fn parse_certificate(json: &str) -> Result<IndependenceCertificate> {
    serde_json::from_str(json).map_err(|e| Error::Invalid(format!("certificate: {e}")))
}

fn status_line(cert: &IndependenceCertificate) -> String {
    match cert.status {
        CertStatus::Complete => "complete".into(),
        CertStatus::Conditional => "conditional (some attestations missing)".into(),
        CertStatus::Partial => format!("partial, failed at step `{}`", cert.failed_step().unwrap_or("unknown")),
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn markdown(cert: &IndependenceCertificate) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "# Independence certificate\n");
    let _ = writeln!(w, "Format: `{}`  ", cert.format);
    let _ = writeln!(w, "Status: **{}**\n", status_line(cert));

    let _ = writeln!(w, "## Values\n");
    let _ = writeln!(w, "| # | q | point | attested | provenance |");
    let _ = writeln!(w, "|---|---|---|---|---|");
    for e in &cert.entries {
        let _ = writeln!(
            w,
            "| {} | {} | {} | {} | {} |",
            e.index + 1,
            e.q,
            cell(&e.point),
            if e.attested { "yes" } else { "no" },
            cell(&e.provenance)
        );
    }

    let _ = writeln!(w, "\n## Checks\n");
    let _ = writeln!(w, "| step | scope | result | detail |");
    let _ = writeln!(w, "|---|---|---|---|");
    for c in &cert.checks {
        let _ = writeln!(
            w,
            "| {} | {} | {} | {} |",
            c.step,
            c.scope,
            if c.passed { "pass" } else { "FAIL" },
            cell(&c.detail)
        );
    }

    if let Some(f) = &cert.failure {
        let _ = writeln!(w, "\n## Failure\n");
        let _ = writeln!(w, "Step `{}` ({}): {}", f.step, f.scope, f.message);
        if let Some(wit) = &f.witness {
            let _ = writeln!(w, "\nWitness: `{wit}`");
        }
    }

    if !cert.global_relations.is_empty() {
        let _ = writeln!(w, "\n## Global multiplicative relations\n");
        let _ = writeln!(
            w,
            "Noted but allowed: only pairwise independence of the points is required.\n"
        );
        for g in &cert.global_relations {
            let _ = writeln!(w, "- {}", g.rendered);
        }
    }

    for c in &cert.classes {
        let members: Vec<String> = c.members.iter().map(|m| (m + 1).to_string()).collect();
        let _ = writeln!(w, "\n## Class {} (values {})\n", c.class, members.join(", "));
        let _ = writeln!(w, "- radix: {}", c.radix);
        if let Some(d) = &c.decomposition {
            let gens: Vec<String> = d.generators.iter().map(|g| g.to_string()).collect();
            let _ = writeln!(w, "- generators beta: ({})", gens.join(", "));
            for (m, row) in c.members.iter().zip(&d.exponents) {
                let mu: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(w, "- mu for value {}: ({})", m + 1, mu.join(", "));
            }
        }
        if let Some(t) = &c.transformation {
            let rows: Vec<String> = t
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            let _ = writeln!(w, "- transformation T: [{}]", rows.join("; "));
        }
        if let Some(r) = c.spectral_radius {
            let _ = writeln!(w, "- spectral radius: {r}");
        }
        for r in &c.regularity {
            let verdict = match (&r.report, &r.error) {
                (Some(rep), _) => match rep.verdict {
                    RegularityVerdict::Regular => "regular".to_string(),
                    RegularityVerdict::NotRegular { k } => format!("not regular (step {k})"),
                    RegularityVerdict::Inconclusive { k } => format!("inconclusive (step {k})"),
                },
                (None, Some(e)) => e.clone(),
                (None, None) => "not checked".into(),
            };
            let _ = writeln!(w, "- regularity of value {} at {}: {verdict}", r.member + 1, r.point);
        }
        if let Some(a) = &c.admissibility {
            let _ = writeln!(w, "- admissible: {}", if a.admissible { "yes" } else { "no" });
        }
    }

    if let Some(x) = &cert.cross_class {
        let radii: Vec<String> = x.radii.iter().map(|r| r.to_string()).collect();
        let _ = writeln!(w, "\n## Spectral radii\n");
        let _ = writeln!(
            w,
            "{}: {}",
            radii.join(", "),
            if x.report.independent {
                "pairwise multiplicatively independent"
            } else {
                "dependent"
            }
        );
    }

    if let Some(ev) = &cert.evidence {
        let _ = writeln!(w, "\n## Truncation-level evidence\n");
        for f in &ev.functions {
            let _ = writeln!(w, "- value {}: {}", f.member + 1, f.verdict);
        }
        for p in &ev.purity {
            let text = match (&p.report, &p.note) {
                (Some(r), _) => r.verdict.clone(),
                (None, Some(n)) => n.clone(),
                (None, None) => String::new(),
            };
            let _ = writeln!(w, "- purity, class {} value {}: {text}", p.class, p.member + 1);
        }
        if let Some(vs) = &ev.value_search {
            let text = match (&vs.report, &vs.note) {
                (Some(r), _) if r.candidates.is_empty() => "no candidate relation (heuristic)".to_string(),
                (Some(r), _) => {
                    let rels: Vec<&str> = r.candidates.iter().map(|c| c.relation.as_str()).collect();
                    format!("candidates (heuristic): {}", rels.join("; "))
                }
                (None, Some(n)) => n.clone(),
                (None, None) => String::new(),
            };
            let _ = writeln!(w, "- value relation search: {text}");
        }
    }

    if !cert.assumptions.is_empty() {
        let _ = writeln!(w, "\n## Assumptions\n");
        for a in &cert.assumptions {
            let _ = writeln!(w, "- {a}");
        }
    }

    if !cert.trusted_steps.is_empty() {
        let _ = writeln!(w, "\n## Trusted steps\n");
        for t in &cert.trusted_steps {
            let _ = writeln!(
                w,
                "- **{}** (applied to {}; hypotheses checked: {}): {}",
                t.name,
                t.applied_to,
                t.hypotheses_checked.join(", "),
                t.statement
            );
        }
    }

    let _ = writeln!(w, "\n## Conclusion\n");
    match &cert.conclusion {
        Some(c) => {
            for id in &c.identities {
                let _ = writeln!(w, "- {id}");
            }
            let _ = writeln!(w, "\n**{}**", c.statement);
        }
        None => {
            let _ = writeln!(w, "No conclusion: the run stopped at a failing check.");
        }
    }
    out
}
