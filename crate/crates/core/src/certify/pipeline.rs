//! The certification pipeline. Checks run in a fixed order; the first failing
//! check stops the run and leaves a partial certificate.

use rayon::prelude::*;

use super::certificate::*;
use super::input::{CertEntry, CertInput, CertOptions};
use crate::analysis::{
    admissibility_check, eval_value, linear_independence_qz, purity_check, regular_point_check, value_relation_search,
    EvalOptions, Point, PurityInstance, RegularityVerdict,
};
use crate::error::{Error, Result};
use crate::mahler::multi::dependent;
use crate::mahler::{build_block_system, MahlerSystem};
use crate::multlat::{
    factorize, lvdp_decompose, mult_kernel, pairwise_independent, partition_bases, BaseClass, MultiplicativeCoordinates,
};
use crate::numbers::rat::to_decimal;
use crate::numbers::{CycloElem, RadicalReal, Rat};

pub const STEP_WELL_POSED: &str = "wellPosedness";
pub const STEP_PAIRWISE: &str = "pairwiseIndependence";
pub const STEP_GLOBAL_RELATIONS: &str = "globalRelations";
pub const STEP_PARTITION: &str = "basePartition";
pub const STEP_ALIGNMENT: &str = "radixAlignment";
pub const STEP_DECOMPOSITION: &str = "decomposition";
pub const STEP_TWIST: &str = "twist";
pub const STEP_EXPONENTS: &str = "exponentIndependence";
pub const STEP_BLOCKS: &str = "blockAssembly";
pub const STEP_REGULARITY: &str = "regularity";
pub const STEP_ADMISSIBILITY: &str = "admissibility";
pub const STEP_SPECTRAL: &str = "spectralRadius";
pub const STEP_CROSS_CLASS: &str = "crossClassIndependence";
pub const STEP_ATTESTATIONS: &str = "attestations";

struct Run {
    cert: IndependenceCertificate,
}

impl Run {
    fn check(&mut self, step: &str, scope: &str, passed: bool, detail: impl Into<String>) {
        self.cert.checks.push(CheckRecord {
            step: step.into(),
            scope: scope.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn fail(mut self, step: &str, scope: &str, message: String, witness: Option<String>) -> IndependenceCertificate {
        self.check(step, scope, false, message.clone());
        self.cert.failure = Some(Failure {
            step: step.into(),
            scope: scope.into(),
            message,
            witness,
        });
        self.cert.status = CertStatus::Partial;
        self.cert
    }
}

fn entry_q(e: &CertEntry) -> Result<u64> {
    match e.q {
        Some(q) if q != e.system.q => Err(Error::RadixMismatch(q, e.system.q)),
        Some(q) => Ok(q),
        None => Ok(e.system.q),
    }
}

fn class_scope(k: usize) -> String {
    format!("class {}", k + 1)
}

fn exponent_of(root: u64, radix: u64) -> u32 {
    let (mut x, mut l) = (radix, 0);
    while x > 1 && x % root == 0 {
        x /= root;
        l += 1;
    }
    l
}

/// Runs every hypothesis check and assembles the certificate. Malformed
/// input is an error; a failing check yields a partial certificate.
pub fn certify(input: &CertInput) -> Result<IndependenceCertificate> {
    if input.entries.is_empty() {
        return Err(Error::Invalid("no entries".into()));
    }
    let opts = &input.options;
    let mut qs = Vec::with_capacity(input.entries.len());
    let mut coords = Vec::with_capacity(input.entries.len());
    let mut records = Vec::with_capacity(input.entries.len());
    for (i, e) in input.entries.iter().enumerate() {
        let q = entry_q(e)?;
        let c = e.point.coordinates()?;
        if !c.abs_less_than_one() {
            return Err(Error::NotInUnitDisk(c.to_string()));
        }
        records.push(EntryRecord {
            index: i,
            q,
            point: c.to_string(),
            torsion: c.torsion,
            attested: e.attested(),
            provenance: e.attestation.as_ref().map(|a| a.provenance.clone()).unwrap_or_default(),
        });
        qs.push(q);
        coords.push(c);
    }
    let mut run = Run {
        cert: IndependenceCertificate {
            format: FORMAT.into(),
            status: CertStatus::Partial,
            entries: records,
            options: opts.clone(),
            checks: Vec::new(),
            failure: None,
            pairwise_independence: None,
            global_relations: Vec::new(),
            decomposition: None,
            class_partition: None,
            classes: Vec::new(),
            cross_class: None,
            evidence: None,
            trusted_steps: Vec::new(),
            assumptions: assumptions(),
            conclusion: None,
        },
    };

    let mut expansions = Vec::with_capacity(input.entries.len());
    for (i, e) in input.entries.iter().enumerate() {
        let scope = format!("entry {}", i + 1);
        match e.system.expand(opts.truncation) {
            Ok(x) => {
                run.check(
                    STEP_WELL_POSED,
                    &scope,
                    true,
                    format!("expanded to order {}", opts.truncation),
                );
                expansions.push(x);
            }
            Err(err) => return Ok(run.fail(STEP_WELL_POSED, &scope, err.to_string(), None)),
        }
    }

    let pairwise = pairwise_independent(&coords);
    run.cert.pairwise_independence = Some(pairwise.clone());
    if let Some(w) = &pairwise.witness {
        let message = format!(
            "points {} and {} are multiplicatively dependent",
            run.cert.entries[w.i].point, run.cert.entries[w.j].point
        );
        return Ok(run.fail(STEP_PAIRWISE, "global", message, Some(w.rendered.clone())));
    }
    run.check(
        STEP_PAIRWISE,
        "global",
        true,
        "every pair of points is multiplicatively independent",
    );

    let names: Vec<String> = run.cert.entries.iter().map(|e| e.point.clone()).collect();
    run.cert.global_relations = mult_kernel(&coords)
        .into_iter()
        .map(|k| GlobalRelation {
            rendered: k.render_multiplicative(&names),
            coefficients: k.coefficients,
        })
        .collect();
    let detail = if run.cert.global_relations.is_empty() {
        "none".to_string()
    } else {
        let rs: Vec<&str> = run.cert.global_relations.iter().map(|g| g.rendered.as_str()).collect();
        format!("noted, allowed: {}", rs.join("; "))
    };
    run.check(STEP_GLOBAL_RELATIONS, "global", true, detail);

    match lvdp_decompose(&coords) {
        Ok(d) => run.cert.decomposition = Some(d),
        Err(err) => return Ok(run.fail(STEP_DECOMPOSITION, "global", err.to_string(), None)),
    }

    let classes = match partition_bases(&qs) {
        Ok(c) => c,
        Err(err) => return Ok(run.fail(STEP_PARTITION, "global", err.to_string(), None)),
    };
    run.cert.class_partition = Some(
        classes
            .iter()
            .enumerate()
            .map(|(k, c)| ClassPartitionRecord {
                class: k + 1,
                members: c.members.clone(),
                root: c.root,
                exponent: exponent_of(c.root, c.radix),
                radix: c.radix,
                alignment: c.alignment.clone(),
            })
            .collect(),
    );
    run.check(
        STEP_PARTITION,
        "global",
        true,
        format!("{} class(es) of multiplicatively dependent radices", classes.len()),
    );

    let outcomes: Vec<ClassOutcome> = classes
        .par_iter()
        .enumerate()
        .map(|(k, c)| process_class(k, c, &input.entries, &coords, opts))
        .collect();
    let mut failure = None;
    for o in outcomes {
        run.cert.checks.extend(o.checks);
        run.cert.classes.push(o.record);
        if failure.is_none() {
            failure = o.failure;
        }
    }
    if let Some(f) = failure {
        run.cert.failure = Some(f);
        return Ok(run.cert);
    }

    let radii: Vec<u64> = classes.iter().map(|c| c.radix).collect();
    let radius_coords = radii
        .iter()
        .map(|r| factorize(&Rat::from_integer((*r).into())))
        .collect::<Result<Vec<_>>>()?;
    let report = pairwise_independent(&radius_coords);
    run.cert.cross_class = Some(CrossClassRecord {
        radii: radii.clone(),
        report: report.clone(),
    });
    if let Some(w) = &report.witness {
        let message = format!("spectral radii {} and {} are dependent", radii[w.i], radii[w.j]);
        return Ok(run.fail(STEP_CROSS_CLASS, "global", message, Some(w.rendered.clone())));
    }
    let listed: Vec<String> = radii.iter().map(|r| r.to_string()).collect();
    run.check(
        STEP_CROSS_CLASS,
        "global",
        true,
        format!(
            "spectral radii ({}) pairwise multiplicatively independent",
            listed.join(", ")
        ),
    );

    run.cert.trusted_steps = trusted_steps(classes.len());
    if opts.evidence {
        run.cert.evidence = Some(evidence(&input.entries, &expansions, &run.cert.classes, opts));
    }

    let missing: Vec<usize> = input
        .entries
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.attested())
        .map(|(i, _)| i)
        .collect();
    let detail = if missing.is_empty() {
        "every value is attested to lie outside the field of the data".to_string()
    } else {
        format!("missing for value(s) {}", one_based(&missing))
    };
    run.check(STEP_ATTESTATIONS, "global", missing.is_empty(), detail);
    run.cert.conclusion = Some(conclude(&classes, input.entries.len(), missing));
    run.cert.status = match run.cert.conclusion.as_ref().map(|c| c.kind) {
        Some(ConclusionKind::Full) => CertStatus::Complete,
        _ => CertStatus::Conditional,
    };
    Ok(run.cert)
}

fn one_based(xs: &[usize]) -> String {
    xs.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(", ")
}

struct ClassOutcome {
    record: ClassRecord,
    checks: Vec<CheckRecord>,
    failure: Option<Failure>,
}

struct ClassRun {
    scope: String,
    out: ClassOutcome,
}

impl ClassRun {
    fn pass(&mut self, step: &str, detail: impl Into<String>) {
        self.out.checks.push(CheckRecord {
            step: step.into(),
            scope: self.scope.clone(),
            passed: true,
            detail: detail.into(),
        });
    }

    fn fail(mut self, step: &str, message: String, witness: Option<String>) -> ClassOutcome {
        self.out.checks.push(CheckRecord {
            step: step.into(),
            scope: self.scope.clone(),
            passed: false,
            detail: message.clone(),
        });
        self.out.failure = Some(Failure {
            step: step.into(),
            scope: self.scope,
            message,
            witness,
        });
        self.out
    }
}

fn modulus_of(generators: &[RadicalReal], mu: &[u64]) -> RadicalReal {
    generators.iter().zip(mu).fold(RadicalReal::one(), |acc, (b, m)| {
        acc.mul(&b.pow(&Rat::from_integer((*m).into())))
    })
}

fn process_class(
    k: usize,
    class: &BaseClass,
    entries: &[CertEntry],
    coords: &[MultiplicativeCoordinates],
    opts: &CertOptions,
) -> ClassOutcome {
    let mut run = ClassRun {
        scope: class_scope(k),
        out: ClassOutcome {
            record: ClassRecord {
                class: k + 1,
                members: class.members.clone(),
                radix: class.radix,
                decomposition: None,
                exponent_independence: None,
                blocks: Vec::new(),
                transformation: None,
                spectral_radius: None,
                regularity: Vec::new(),
                admissibility: None,
            },
            checks: Vec::new(),
            failure: None,
        },
    };

    let mut aligned: Vec<MahlerSystem> = Vec::new();
    for (&m, &a) in class.members.iter().zip(&class.alignment) {
        match entries[m].system.iterate(a) {
            Ok(s) if s.q == class.radix => aligned.push(s),
            Ok(s) => {
                let msg = format!("value {}: iterated radix {} differs from {}", m + 1, s.q, class.radix);
                return run.fail(STEP_ALIGNMENT, msg, None);
            }
            Err(e) => return run.fail(STEP_ALIGNMENT, format!("value {}: {e}", m + 1), None),
        }
    }
    let alignments: Vec<String> = class.alignment.iter().map(|a| a.to_string()).collect();
    run.pass(
        STEP_ALIGNMENT,
        format!(
            "radix {} reached with iteration counts {}",
            class.radix,
            alignments.join(", ")
        ),
    );

    let class_coords: Vec<MultiplicativeCoordinates> = class.members.iter().map(|&m| coords[m].clone()).collect();
    let dec = match lvdp_decompose(&class_coords) {
        Ok(d) => d,
        Err(e) => return run.fail(STEP_DECOMPOSITION, e.to_string(), None),
    };
    run.out.record.decomposition = Some(dec.clone());
    if let Err(what) = dec.verify(&class_coords) {
        return run.fail(STEP_DECOMPOSITION, format!("invariant violated: {what}"), None);
    }
    let gens: Vec<String> = dec.generators.iter().map(|g| g.to_string()).collect();
    run.pass(STEP_DECOMPOSITION, format!("generators {}", gens.join(", ")));

    let mut twisted = Vec::with_capacity(aligned.len());
    for (j, s) in aligned.iter().enumerate() {
        match s.twist(&dec.torsions[j]) {
            Ok(t) => twisted.push(t),
            Err(e) => return run.fail(STEP_TWIST, format!("value {}: {e}", class.members[j] + 1), None),
        }
    }
    let orders: Vec<String> = dec.torsions.iter().map(|z| z.order().to_string()).collect();
    run.pass(STEP_TWIST, format!("root-of-unity orders {}", orders.join(", ")));

    let mus: Vec<Vec<u32>> = match dec
        .exponents
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| u32::try_from(x))
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .collect::<std::result::Result<Vec<_>, _>>()
    {
        Ok(m) => m,
        Err(_) => return run.fail(STEP_EXPONENTS, "exponent exceeds 32 bits".into(), None),
    };
    let mut pair = None;
    'outer: for i in 0..mus.len() {
        for j in i + 1..mus.len() {
            if dependent(&mus[i], &mus[j]) {
                pair = Some((i, j));
                break 'outer;
            }
        }
    }
    run.out.record.exponent_independence = Some(ExponentIndependence {
        independent: pair.is_none(),
        dependent_pair: pair,
    });
    if let Some((i, j)) = pair {
        let (a, b) = (class.members[i] + 1, class.members[j] + 1);
        return run.fail(
            STEP_EXPONENTS,
            format!("exponent vectors of values {a} and {b} are proportional"),
            Some(format!("mu{a} ∥ mu{b}")),
        );
    }
    run.pass(STEP_EXPONENTS, "exponent vectors are pairwise linearly independent");

    let inputs: Vec<(MahlerSystem, Vec<u32>)> = twisted.iter().cloned().zip(mus.iter().cloned()).collect();
    run.out.record.blocks = class
        .members
        .iter()
        .enumerate()
        .map(|(j, &m)| BlockRecord {
            member: m,
            alignment: class.alignment[j],
            torsion: dec.torsions[j],
            mu: dec.exponents[j].clone(),
            dim: twisted[j].dim(),
            system: twisted[j].clone(),
        })
        .collect();
    let multi = match build_block_system(&inputs) {
        Ok(s) => s,
        Err(e) => return run.fail(STEP_BLOCKS, e.to_string(), None),
    };
    run.out.record.transformation = Some(multi.transformation());
    run.pass(
        STEP_BLOCKS,
        format!(
            "{} block(s), total dimension {}, {} variable(s)",
            multi.blocks.len(),
            multi.dim(),
            multi.nvars
        ),
    );

    for (j, &m) in class.members.iter().enumerate() {
        let point = Point::new(dec.torsions[j], modulus_of(&dec.generators, &dec.exponents[j]));
        let outcome = regular_point_check(&aligned[j], &point, opts.k_max);
        let (report, error) = match outcome {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let verdict = report.as_ref().map(|r| r.verdict);
        run.out.record.regularity.push(RegularityRecord {
            member: m,
            point: point.clone(),
            report,
            error: error.clone(),
        });
        let msg = match (verdict, error) {
            (Some(RegularityVerdict::Regular), _) => None,
            (Some(RegularityVerdict::NotRegular { k }), _) => Some(format!("not regular at orbit step {k}")),
            (Some(RegularityVerdict::Inconclusive { k }), _) => Some(format!("inconclusive at orbit step {k}")),
            (None, Some(e)) => Some(e),
            (None, None) => Some("no report".into()),
        };
        if let Some(msg) = msg {
            return run.fail(STEP_REGULARITY, format!("value {} at {point}: {msg}", m + 1), None);
        }
        run.pass(STEP_REGULARITY, format!("value {}: {point} is regular", m + 1));
    }

    let t = multi.transformation();
    match admissibility_check(&t, &dec.generators) {
        Ok(r) => {
            let ok = r.admissible;
            run.out.record.admissibility = Some(r);
            if !ok {
                return run.fail(
                    STEP_ADMISSIBILITY,
                    "generators fail the admissibility conditions".into(),
                    None,
                );
            }
            run.pass(STEP_ADMISSIBILITY, "generators independent and of modulus below one");
        }
        Err(e) => return run.fail(STEP_ADMISSIBILITY, e.to_string(), None),
    }

    let radius = multi.spectral_radius();
    run.out.record.spectral_radius = Some(radius);
    if radius != class.radix {
        let msg = format!("spectral radius {radius} differs from the class radix {}", class.radix);
        return run.fail(STEP_SPECTRAL, msg, None);
    }
    run.pass(
        STEP_SPECTRAL,
        format!("{radius} = {}^{}", class.root, exponent_of(class.root, class.radix)),
    );
    run.out
}

fn series_one(n: usize) -> Vec<CycloElem> {
    let mut v = vec![CycloElem::from_int(0); n + 1];
    v[0] = CycloElem::from_int(1);
    v
}

fn evidence(
    entries: &[CertEntry],
    expansions: &[crate::mahler::Expansion],
    classes: &[ClassRecord],
    opts: &CertOptions,
) -> EvidenceRecord {
    let (d, n) = (opts.degree_bound, opts.truncation);
    let functions: Vec<FunctionEvidence> = entries
        .par_iter()
        .enumerate()
        .map(|(i, e)| {
            let f = expansions[i].component(e.system.distinguished).to_vec();
            match linear_independence_qz(&[series_one(n), f], d) {
                Ok(r) => FunctionEvidence {
                    member: i,
                    verdict: if r.independent() {
                        format!("not a rational function up to (D = {d}, N = {})", r.truncation_order)
                    } else {
                        format!("rational up to (D = {d}, N = {})", r.truncation_order)
                    },
                    independence: Some(r),
                },
                Err(err) => FunctionEvidence {
                    member: i,
                    independence: None,
                    verdict: err.to_string(),
                },
            }
        })
        .collect();

    let mut jobs = Vec::new();
    for c in classes.iter().filter(|c| c.blocks.len() > 1) {
        for (j, b) in c.blocks.iter().enumerate() {
            let mut mus = vec![to_u32(&b.mu)];
            mus.extend(
                c.blocks
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != j)
                    .map(|(_, o)| to_u32(&o.mu)),
            );
            jobs.push((c.class, b, mus));
        }
    }
    let purity: Vec<PurityEvidence> = jobs
        .par_iter()
        .map(|(class, b, mus)| {
            let n = opts.purity_truncation;
            let series = b
                .system
                .expand(n as usize)
                .map(|x| x.component(b.system.distinguished).to_vec());
            let outcome = series.and_then(|g| {
                purity_check(&PurityInstance {
                    series: vec![series_one(n as usize), g],
                    mus: mus.clone(),
                    truncation: n,
                    support: opts.purity_support,
                    check_preconditions: true,
                })
            });
            let (report, note) = match outcome {
                Ok(r) => (Some(r), None),
                Err(e) => (None, Some(format!("skipped: {e}"))),
            };
            PurityEvidence {
                class: *class,
                member: b.member,
                mus: mus.clone(),
                report,
                note,
            }
        })
        .collect();

    let value_search = opts
        .value_search
        .as_ref()
        .map(|vs| value_search(entries, vs.degree, vs.digits));
    EvidenceRecord {
        degree_bound: d,
        truncation: n,
        functions,
        purity,
        value_search,
    }
}

fn to_u32(v: &[u64]) -> Vec<u32> {
    v.iter().map(|&x| x as u32).collect()
}

fn value_search(entries: &[CertEntry], degree: u32, digits: u32) -> ValueSearchEvidence {
    let eval_opts = EvalOptions {
        digits: digits + 10,
        ..EvalOptions::default()
    };
    let mut values = Vec::new();
    let mut reals = Vec::new();
    for e in entries {
        let point = match e.point.to_point() {
            Ok(p) => p,
            Err(err) => return note(values, err.to_string()),
        };
        match eval_value(&e.system, &point, &eval_opts) {
            Ok(r) => {
                let (re, im) = r.distinguished_parts().clone();
                if !num_traits::Zero::is_zero(&im) {
                    return note(values, "skipped: complex values".into());
                }
                values.push(to_decimal(&re, digits as usize));
                reals.push(re);
            }
            Err(err) => return note(values, format!("evaluation failed: {err}")),
        }
    }
    match value_relation_search(&reals, degree, digits) {
        Ok(r) => ValueSearchEvidence {
            values,
            report: Some(r),
            note: None,
        },
        Err(err) => note(values, err.to_string()),
    }
}

fn note(values: Vec<String>, text: String) -> ValueSearchEvidence {
    ValueSearchEvidence {
        values,
        report: None,
        note: Some(text),
    }
}

fn assumptions() -> Vec<String> {
    [
        "Regular point (operational reconstruction): the orbit of the point under z -> z^q avoids the zeros and \
         poles of det A and the poles of the entries of A.",
        "Admissible pair (operational reconstruction, T = rho I only): the coordinates of beta are \
         multiplicatively independent and of modulus below one.",
        "For a point zeta beta^mu with a nontrivial root of unity zeta, regularity is checked on the \
         radix-aligned system at zeta beta^mu; this is the orbit the twisted block sees.",
        "Independence evidence is truncation-level only and holds up to the stated (D, N).",
        "An attested value is taken to lie outside the field generated by the coefficients and the points.",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

fn trusted_steps(classes: usize) -> Vec<TrustedStep> {
    let step = |name: &str, statement: &str, applied_to: String, hyps: &[&str]| TrustedStep {
        name: name.into(),
        statement: statement.into(),
        applied_to,
        hypotheses_checked: hyps.iter().map(|h| h.to_string()).collect(),
    };
    vec![
        step(
            "individualTranscendence",
            "A value of a Mahler function with algebraic coefficients, taken at an algebraic point of the \
             punctured unit disk where the function is defined, lies in the field of the data or is transcendental.",
            "each attested value".into(),
            &[STEP_WELL_POSED, STEP_ATTESTATIONS],
        ),
        step(
            "crossClassSplitting",
            "For finitely many Mahler systems with admissible pairs, regular points and pairwise multiplicatively \
             independent spectral radii, the transcendence degree of all their values is the sum of the \
             transcendence degrees of the values of each system.",
            format!("the {classes} block system(s)"),
            &[STEP_REGULARITY, STEP_ADMISSIBILITY, STEP_SPECTRAL, STEP_CROSS_CLASS],
        ),
        step(
            "regularValueLifting",
            "At a regular point of a Mahler system with an admissible pair, the values have the same transcendence \
             degree over the algebraic numbers as the functions have over the rational functions.",
            "each block system and each univariate block".into(),
            &[STEP_REGULARITY, STEP_ADMISSIBILITY],
        ),
        step(
            "monomialPurity",
            "Functions of one variable composed with pairwise linearly independent monomials z^mu have a joint \
             transcendence degree equal to the sum of the separate ones.",
            "the blocks of each class".into(),
            &[STEP_EXPONENTS],
        ),
        step(
            "subfamilyAdditivity",
            "When the transcendence degree of a union of families is the sum over the families, the same \
             additivity holds for any choice of one element from each family.",
            "the distinguished value of each block".into(),
            &[STEP_BLOCKS],
        ),
    ]
}

fn conclude(classes: &[BaseClass], r: usize, missing: Vec<usize>) -> Conclusion {
    let class_sums: Vec<ClassSum> = classes
        .iter()
        .enumerate()
        .map(|(k, c)| ClassSum {
            class: k + 1,
            members: c.members.clone(),
            card: c.members.len(),
        })
        .collect();
    let mut identities: Vec<String> = class_sums
        .iter()
        .map(|c| {
            let ones = vec!["1"; c.card].join(" + ");
            format!(
                "class {} (values {}): tr.deg = {ones} = {}",
                c.class,
                one_based(&c.members),
                c.card
            )
        })
        .collect();
    let cards: Vec<String> = class_sums.iter().map(|c| c.card.to_string()).collect();
    identities.push(format!("all values: tr.deg = {} = {r}", cards.join(" + ")));
    let (kind, statement) = if missing.is_empty() {
        (
            ConclusionKind::Full,
            format!("tr.deg = {r}: the {r} values are algebraically independent over the algebraic numbers"),
        )
    } else {
        let noun = if missing.len() == 1 { "value" } else { "values" };
        (
            ConclusionKind::Conditional,
            format!("conditional: tr.deg = {r} if {noun} {} ∉ 𝕂", one_based(&missing)),
        )
    };
    Conclusion {
        kind,
        transcendence_degree: r,
        class_sums,
        identities,
        missing_attestations: missing,
        statement,
    }
}
