use mahler_core::multlat::{factorize, lvdp_decompose, pairwise_independent};
use mahler_core::numbers::{field::rank, rat, Rat};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn random_tuples_decompose_and_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let len = rng.gen_range(1..=5);
        let pts: Vec<_> = (0..len)
            .map(|_| {
                let d = rng.gen_range(2..=50);
                let n = rng.gen_range(1..d);
                factorize(&rat(n, d)).unwrap()
            })
            .collect();
        let dec = lvdp_decompose(&pts).unwrap();
        dec.verify(&pts).unwrap();
        if pairwise_independent(&pts).independent {
            for i in 0..len {
                for j in i + 1..len {
                    let rows: Vec<Vec<Rat>> = [i, j]
                        .iter()
                        .map(|&k| {
                            dec.exponents[k]
                                .iter()
                                .map(|m| Rat::from_integer(BigInt::from(*m)))
                                .collect()
                        })
                        .collect();
                    assert_eq!(rank(&rows), 2);
                }
            }
        }
    }
}
