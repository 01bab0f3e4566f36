use mahler_core::analysis::{eval_value, regular_point_check, EvalOptions, Point, RegularityVerdict};
use mahler_core::certify::{certify, render_certificate, validate_certificate, CertInput, CertStatus, Format};
use mahler_core::cones::{cone_member, RationalCone};
use mahler_core::mahler::MahlerSystem;
use mahler_core::multlat::{factorize, pairwise_independent};
use mahler_core::numbers::{rat, Rat};
use mahler_core::{CycloElem, RootOfUnity};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn poly_text(coeffs: &[i64]) -> String {
    let mut s = String::from("1");
    for (k, c) in coeffs.iter().enumerate().filter(|(_, c)| **c != 0) {
        let sign = if *c < 0 { "-" } else { "+" };
        s.push_str(&format!(" {sign} {}z^{}", c.abs(), k + 1));
    }
    s
}

/// Scalar system `f(z) = p(z) f(z^q)` with `p(0) = 1`.
fn scalar(q: u64, coeffs: &[i64]) -> MahlerSystem {
    let json = format!(
        r#"{{"q":{q},"matrix":[["{}"]],"seeds":{{"0":["1"]}},"distinguished":0}}"#,
        poly_text(coeffs)
    );
    serde_json::from_str(&json).unwrap()
}

fn pow(x: &Rat, k: i64) -> Rat {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

/// Coefficients of `prod_k p(z^{q^k})` by direct multiplication.
fn product_oracle(q: u64, coeffs: &[i64], n: usize) -> Vec<i64> {
    let mut f = vec![0i64; n + 1];
    f[0] = 1;
    let mut step = 1usize;
    while step <= n {
        let mut g = vec![0i64; n + 1];
        for (i, fi) in f.iter().enumerate() {
            g[i] += fi;
            for (k, c) in coeffs.iter().enumerate() {
                let j = i + (k + 1) * step;
                if j <= n {
                    g[j] += fi * c;
                }
            }
        }
        f = g;
        step *= q as usize;
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn expansion_matches_infinite_product(q in 2u64..=3, coeffs in prop::collection::vec(-2i64..=2, 1..=3)) {
        let n = 60;
        let s = scalar(q, &coeffs);
        let e = s.expand(n).unwrap();
        let want = product_oracle(q, &coeffs, n);
        for (k, c) in e.component(0).iter().enumerate() {
            prop_assert_eq!(c.clone(), CycloElem::from_int(want[k]));
        }
    }

    #[test]
    fn iteration_preserves_expansion(q in 2u64..=3, coeffs in prop::collection::vec(-2i64..=2, 1..=3), l in 1u32..=3) {
        let s = scalar(q, &coeffs);
        let it = s.iterate(l).unwrap();
        prop_assert_eq!(it.q, q.pow(l));
        prop_assert_eq!(it.expand(80).unwrap().series, s.expand(80).unwrap().series);
    }

    #[test]
    fn twist_multiplies_coefficients(coeffs in prop::collection::vec(-2i64..=2, 1..=3), k in 0i64..12, n in 1u64..=12) {
        let s = scalar(2, &coeffs);
        let zeta = RootOfUnity::new(k, n).unwrap();
        let tw = s.twist(&zeta).unwrap();
        let base = s.expand(48).unwrap();
        let got = tw.expand(48).unwrap();
        for (m, c) in base.component(0).iter().enumerate() {
            let want = CycloElem::root(&zeta.pow_u(m as u64)) * c.clone();
            prop_assert_eq!(got.component(tw.distinguished)[m].clone(), want);
        }
    }

    #[test]
    fn cone_certificates_verify(
        gens in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 1..=4),
        x in prop::collection::vec(-6i64..=6, 3),
    ) {
        let cone = RationalCone::from_ints(3, &gens).unwrap();
        let xr: Vec<Rat> = x.iter().map(|v| rat(*v, 1)).collect();
        let m = cone_member(&xr, &cone).unwrap();
        prop_assert!(m.verify(&xr, &cone));
    }

    #[test]
    fn pairwise_witness_is_a_relation(a in 2i64..30, b in 2i64..30, e in 1u32..4) {
        let xs = [rat(1, a), rat(1, a.pow(e) * b), rat(1, b)];
        let coords: Vec<_> = xs.iter().map(|x| factorize(x).unwrap()).collect();
        let r = pairwise_independent(&coords);
        if let Some(w) = &r.witness {
            let c = &w.relation.coefficients;
            let product = pow(&xs[w.i], c[0]) * pow(&xs[w.j], c[1]);
            prop_assert!(product == rat(1, 1) || product == rat(-1, 1));
        } else {
            for i in 0..3 {
                for j in i + 1..3 {
                    for p in -6i64..=6 {
                        for q in -6i64..=6 {
                            if p != 0 || q != 0 {
                                prop_assert_ne!(pow(&xs[i], p) * pow(&xs[j], q), rat(1, 1));
                            }
                        }
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn geometric_evaluation(num in 1i64..=4, den in 5i64..=9, negative in any::<bool>()) {
        let s = scalar(2, &[1]);
        let x = if negative { rat(-num, den) } else { rat(num, den) };
        let r = eval_value(&s, &Point::from_rat(&x).unwrap(), &EvalOptions { digits: 30, ..EvalOptions::default() }).unwrap();
        let want = (rat(1, 1) / (rat(1, 1) - &x)).to_f64().unwrap();
        let got: f64 = r.values[0].re.parse().unwrap();
        prop_assert!((got - want).abs() < 1e-12, "{} vs {}", got, want);
    }

    #[test]
    fn poles_on_the_orbit_are_found(k in 0u32..3, a in 2i64..5) {
        // pole of 1/(1 - a^{2^k} z) hits the orbit of 1/a at step k
        let c = a.pow(1 << k);
        let json = format!(r#"{{"q":2,"matrix":[["1/(1 - {c}z)"]],"seeds":{{"0":["1"]}},"distinguished":0}}"#);
        let s: MahlerSystem = serde_json::from_str(&json).unwrap();
        let r = regular_point_check(&s, &Point::parse(&format!("1/{a}")).unwrap(), 64).unwrap();
        prop_assert_eq!(r.verdict, RegularityVerdict::NotRegular { k: k as usize });
    }

    #[test]
    fn certificates_pass_the_validator(p in prop::sample::select(vec![2i64, 3, 5, 7]), r in prop::sample::select(vec![11i64, 13, 17]), attest in any::<bool>()) {
        let fred = r#"{"q":2,"matrix":[["1","z"],["0","1"]],"seeds":{"0":["0","1"]},"distinguished":0}"#;
        let att = if attest { r#","attestation":{"notInField":true}"# } else { "" };
        let json = format!(
            r#"{{"entries":[{{"system":{fred},"point":"1/{p}"{att}}},{{"system":{fred},"point":"1/{r}","attestation":{{"notInField":true}}}}],"options":{{"evidence":false}}}}"#
        );
        let input: CertInput = serde_json::from_str(&json).unwrap();
        let c = certify(&input).unwrap();
        let want = if attest { CertStatus::Complete } else { CertStatus::Conditional };
        prop_assert_eq!(c.status, want);
        let text = render_certificate(&c, Format::Json);
        prop_assert!(validate_certificate(&text).valid);
    }
}
