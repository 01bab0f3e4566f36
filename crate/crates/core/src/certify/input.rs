//! Certification input: one entry per value `f_i(alpha_i)`.

use serde::{Deserialize, Serialize};

use crate::analysis::Point;
use crate::error::Result;
use crate::mahler::MahlerSystem;
use crate::multlat::{factorize, MultiplicativeCoordinates};
use crate::numbers::{parse_rat, RootOfUnity};

fn trivial_root() -> RootOfUnity {
    RootOfUnity::ONE
}

/// A rational point, optionally multiplied by a root of unity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Plain(String),
    Tagged {
        value: String,
        #[serde(default = "trivial_root", skip_serializing_if = "RootOfUnity::is_one")]
        torsion: RootOfUnity,
    },
}

impl PointSpec {
    pub fn coordinates(&self) -> Result<MultiplicativeCoordinates> {
        match self {
            PointSpec::Plain(v) => factorize(&parse_rat(v)?),
            PointSpec::Tagged { value, torsion } => Ok(factorize(&parse_rat(value)?)?.with_torsion(torsion)),
        }
    }

    pub fn to_point(&self) -> Result<Point> {
        let c = self.coordinates()?;
        Ok(Point::new(c.torsion, c.abs_radical()))
    }
}

/// The user's statement that the value lies outside the field of the data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Attestation {
    pub not_in_field: bool,
    #[serde(default)]
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertEntry {
    /// Radix; defaults to the radix of `system`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    pub system: MahlerSystem,
    pub point: PointSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attestation: Option<Attestation>,
}

impl CertEntry {
    pub fn attested(&self) -> bool {
        self.attestation.as_ref().is_some_and(|a| a.not_in_field)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueSearchOptions {
    pub degree: u32,
    pub digits: u32,
}

/// Parameters of the truncation-level evidence and of the orbit scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct CertOptions {
    pub truncation: usize,
    pub degree_bound: usize,
    pub k_max: usize,
    pub purity_truncation: u64,
    pub purity_support: u64,
    pub evidence: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_search: Option<ValueSearchOptions>,
}

impl Default for CertOptions {
    fn default() -> Self {
        Self {
            truncation: 128,
            degree_bound: 8,
            k_max: 64,
            purity_truncation: 12,
            purity_support: 6,
            evidence: true,
            value_search: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertInput {
    pub entries: Vec<CertEntry>,
    #[serde(default)]
    pub options: CertOptions,
}
