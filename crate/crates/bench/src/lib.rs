//! Benchmark fixtures.

use mahler_core::certify::CertInput;
use mahler_core::cones::{LineConeInstance, RationalCone};
use mahler_core::mahler::MahlerSystem;
use mahler_core::multlat::{factorize, MultiplicativeCoordinates};
use mahler_core::numbers::rat;
use mahler_core::selfcheck::{intro_input, system, FREDHOLM, THUE_MORSE};

pub fn fredholm() -> MahlerSystem {
    system(FREDHOLM)
}

pub fn thue_morse() -> MahlerSystem {
    system(THUE_MORSE)
}

/// Factored points `n_i / d_i`.
pub fn points(pairs: &[(i64, i64)]) -> Vec<MultiplicativeCoordinates> {
    pairs
        .iter()
        .map(|&(n, d)| factorize(&rat(n, d)).expect("nonzero"))
        .collect()
}

pub fn line_cone() -> LineConeInstance {
    LineConeInstance {
        lambda: vec![0, 5, 1],
        mu: vec![1, 0, 0],
        gammas: vec![vec![0, 0, 0], vec![0, 3, 1], vec![1, 1, 1]],
        cone: RationalCone::from_ints(3, &[vec![0, 1, 0], vec![1, 3, 0], vec![0, 1, 1], vec![1, 4, 2]]).expect("cone"),
    }
}

pub fn intro() -> CertInput {
    let mut input = intro_input();
    input.options.evidence = false;
    input
}
