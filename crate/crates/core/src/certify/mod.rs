//! End-to-end certification: hypothesis checks, class bookkeeping and the
//! transcendence-degree conclusion, with rendering and an independent validator.

pub mod certificate;
pub mod input;
pub mod pipeline;
pub mod render;
pub mod validate;

pub use certificate::*;
pub use input::{Attestation, CertEntry, CertInput, CertOptions, PointSpec, ValueSearchOptions};
pub use pipeline::certify;
pub use render::{parse_certificate, render_certificate, Format};
pub use validate::{validate_certificate, ValidationReport};

#[cfg(test)]
mod tests;
