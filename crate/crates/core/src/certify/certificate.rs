//! The independence certificate and its parts.

use serde::{Deserialize, Serialize};

use super::input::CertOptions;
use crate::analysis::{
    AdmissibilityReport, IndependenceUpTo, Point, PurityReport, RegularityReport, RelationSearchReport,
};
use crate::mahler::MahlerSystem;
use crate::multlat::{LvdPDecomposition, PairwiseReport};
use crate::numbers::RootOfUnity;

pub const FORMAT: &str = "mahler-kit/independence-certificate/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertStatus {
    /// Every check passed and every value is attested.
    Complete,
    /// Every check passed; some attestations are missing.
    Conditional,
    /// A check failed; see `failure`.
    Partial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EntryRecord {
    pub index: usize,
    pub q: u64,
    pub point: String,
    pub torsion: RootOfUnity,
    pub attested: bool,
    pub provenance: String,
}

/// One row of the check table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub step: String,
    pub scope: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub step: String,
    pub scope: String,
    pub message: String,
    pub witness: Option<String>,
}

/// A multiplicative relation among all points: allowed, only recorded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalRelation {
    pub coefficients: Vec<i64>,
    pub rendered: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPartitionRecord {
    pub class: usize,
    pub members: Vec<usize>,
    pub root: u64,
    /// `radix = root^exponent`.
    pub exponent: u32,
    pub radix: u64,
    pub alignment: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BlockRecord {
    pub member: usize,
    pub alignment: u32,
    pub torsion: RootOfUnity,
    pub mu: Vec<u64>,
    pub dim: usize,
    /// Aligned and twisted system carried by this block.
    pub system: MahlerSystem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentIndependence {
    pub independent: bool,
    pub dependent_pair: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityRecord {
    pub member: usize,
    /// `zeta_i beta^{mu_i}`, checked against the aligned system.
    pub point: Point,
    pub report: Option<RegularityReport>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassRecord {
    pub class: usize,
    pub members: Vec<usize>,
    pub radix: u64,
    pub decomposition: Option<LvdPDecomposition>,
    pub exponent_independence: Option<ExponentIndependence>,
    pub blocks: Vec<BlockRecord>,
    pub transformation: Option<Vec<Vec<u64>>>,
    pub spectral_radius: Option<u64>,
    pub regularity: Vec<RegularityRecord>,
    pub admissibility: Option<AdmissibilityReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossClassRecord {
    pub radii: Vec<u64>,
    pub report: PairwiseReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FunctionEvidence {
    pub member: usize,
    /// Relations among `{1, f_i}` up to the stated bounds.
    pub independence: Option<IndependenceUpTo>,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PurityEvidence {
    pub class: usize,
    pub member: usize,
    pub mus: Vec<Vec<u32>>,
    pub report: Option<PurityReport>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueSearchEvidence {
    pub values: Vec<String>,
    pub report: Option<RelationSearchReport>,
    pub note: Option<String>,
}

/// Truncation-level evidence; never a gate for the conclusion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EvidenceRecord {
    pub degree_bound: usize,
    pub truncation: usize,
    pub functions: Vec<FunctionEvidence>,
    pub purity: Vec<PurityEvidence>,
    pub value_search: Option<ValueSearchEvidence>,
}

/// An external result whose hypotheses were checked but whose proof is not
/// mechanized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TrustedStep {
    pub name: String,
    pub statement: String,
    pub applied_to: String,
    pub hypotheses_checked: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConclusionKind {
    Full,
    Conditional,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSum {
    pub class: usize,
    pub members: Vec<usize>,
    pub card: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Conclusion {
    pub kind: ConclusionKind,
    pub transcendence_degree: usize,
    pub class_sums: Vec<ClassSum>,
    pub identities: Vec<String>,
    /// 0-based indices of entries without an attestation.
    pub missing_attestations: Vec<usize>,
    pub statement: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IndependenceCertificate {
    pub format: String,
    pub status: CertStatus,
    pub entries: Vec<EntryRecord>,
    pub options: CertOptions,
    pub checks: Vec<CheckRecord>,
    pub failure: Option<Failure>,
    pub pairwise_independence: Option<PairwiseReport>,
    pub global_relations: Vec<GlobalRelation>,
    pub decomposition: Option<LvdPDecomposition>,
    pub class_partition: Option<Vec<ClassPartitionRecord>>,
    pub classes: Vec<ClassRecord>,
    pub cross_class: Option<CrossClassRecord>,
    pub evidence: Option<EvidenceRecord>,
    pub trusted_steps: Vec<TrustedStep>,
    pub assumptions: Vec<String>,
    pub conclusion: Option<Conclusion>,
}

impl IndependenceCertificate {
    pub fn failed_step(&self) -> Option<&str> {
        self.failure.as_ref().map(|f| f.step.as_str())
    }
}
