//! Embedded oracle suite: reduced versions of the acceptance checks, run from
//! a seed so that failures can be replayed.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    eval_value, purity_check, regular_point_check, EvalOptions, Point, PurityInstance, RegularityVerdict,
};
use crate::certify::{certify, render_certificate, CertInput, Format};
use crate::cones::{bound_bd_check, cone_basis, cone_member, line_cone_intersection, LineConeInstance, RationalCone};
use crate::mahler::MahlerSystem;
use crate::multlat::{factorize, lvdp_decompose, MultiplicativeCoordinates};
use crate::numbers::{rat, CycloElem, Rat, RootOfUnity};

pub const FREDHOLM: &str = r#"{"q":2,"matrix":[["1","z"],["0","1"]],"seeds":{"0":["0","1"]},"distinguished":0}"#;
pub const THUE_MORSE: &str = r#"{"q":2,"matrix":[["1 - z"]],"seeds":{"0":["1"]},"distinguished":0}"#;
pub const CUBE_LACUNARY: &str = r#"{"q":3,"matrix":[["1","z"],["0","1"]],"seeds":{"0":["0","1"]},"distinguished":0}"#;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfcheckItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfcheckReport {
    pub seed: u64,
    pub passed: bool,
    pub items: Vec<SelfcheckItem>,
}

type Outcome = std::result::Result<String, String>;
type Check = (&'static str, fn(&mut ChaCha8Rng) -> Outcome);

pub fn system(json: &str) -> MahlerSystem {
    serde_json::from_str(json).expect("built-in system parses")
}

/// Runs every check; never panics on a failing check.
pub fn selfcheck(seed: u64) -> SelfcheckReport {
    let checks: [Check; 10] = [
        ("lvdpRoundtrip", lvdp_roundtrip),
        ("coneIntersection", cone_intersection),
        ("coneBasisFarkas", cone_basis_farkas),
        ("twist", twist),
        ("iterate", iterate),
        ("evaluation", evaluation),
        ("purity", purity),
        ("certify", certify_examples),
        ("negativePaths", negative_paths),
        ("determinism", determinism),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<SelfcheckItem> = checks
        .iter()
        .map(|(name, f)| {
            let (passed, detail) = match f(&mut rng) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            SelfcheckItem {
                name: name.to_string(),
                passed,
                detail,
            }
        })
        .collect();
    SelfcheckReport {
        seed,
        passed: items.iter().all(|i| i.passed),
        items,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn coords(points: &[(i64, i64)]) -> Vec<MultiplicativeCoordinates> {
    points.iter().map(|&(n, d)| factorize(&rat(n, d)).unwrap()).collect()
}

fn lvdp_roundtrip(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..100 {
        let len = rng.gen_range(1..=4);
        let pts: Vec<(i64, i64)> = (0..len)
            .map(|_| {
                let d = rng.gen_range(2..=50);
                (rng.gen_range(1..d), d)
            })
            .collect();
        let a = coords(&pts);
        let d = lvdp_decompose(&a).map_err(|e| format!("{pts:?}: {e}"))?;
        d.verify(&a).map_err(|e| format!("{pts:?}: {e}"))?;
    }
    let d = lvdp_decompose(&coords(&[(1, 2), (1, 5), (1, 10)])).map_err(|e| e.to_string())?;
    ensure(d.exponents == vec![vec![1, 0], vec![0, 1], vec![1, 1]], || {
        "intro decomposition".into()
    })?;
    let d = lvdp_decompose(&coords(&[(3, 4), (2, 9), (1, 2)])).map_err(|e| e.to_string())?;
    ensure(
        d.scale == 3 && d.exponents == vec![vec![3, 0], vec![0, 3], vec![2, 1]],
        || "radical decomposition".into(),
    )?;
    Ok("100 random tuples and 2 fixed cases".into())
}

fn dependent(a: &[i64], b: &[i64]) -> bool {
    (0..a.len()).all(|i| (i + 1..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
}

/// `r` random nonnegative, nonzero, pairwise independent vectors in `N^t`.
pub fn random_generators(rng: &mut impl Rng, t: usize, r: usize, max: i64) -> Option<Vec<Vec<i64>>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut tries = 0;
    while out.len() < r {
        tries += 1;
        if tries > 200 {
            return None;
        }
        let v: Vec<i64> = (0..t).map(|_| rng.gen_range(0..=max)).collect();
        if v.iter().all(|x| *x == 0) || out.iter().any(|w| dependent(w, &v)) {
            continue;
        }
        out.push(v);
    }
    Some(out)
}

fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(BigInt::from(*x))).collect()
}

fn random_instance(rng: &mut ChaCha8Rng) -> LineConeInstance {
    loop {
        let t = rng.gen_range(1..=4);
        let r = rng.gen_range(2..=4);
        let Some(gens) = random_generators(rng, t, r, 6) else {
            continue;
        };
        let cone = RationalCone::from_ints(t, &gens[1..]).unwrap();
        if cone_member(&ints(&gens[0]), &cone).unwrap().member {
            continue;
        }
        let lambda: Vec<i64> = (0..t).map(|_| rng.gen_range(0..=6)).collect();
        let gammas: Vec<Vec<i64>> = (0..rng.gen_range(1..=3))
            .map(|_| (0..t).map(|_| rng.gen_range(0..=6)).collect())
            .collect();
        return LineConeInstance {
            lambda,
            mu: gens[0].clone(),
            gammas,
            cone,
        };
    }
}

fn cone_intersection(rng: &mut ChaCha8Rng) -> Outcome {
    for n in 0..40 {
        let inst = random_instance(rng);
        let got = line_cone_intersection(&inst).map_err(|e| e.to_string())?;
        let mut brute = Vec::new();
        for k in 0..=100u64 {
            let hit = inst.gammas.iter().any(|g| {
                let x: Vec<i64> = (0..inst.cone.dim)
                    .map(|d| inst.lambda[d] + k as i64 * inst.mu[d] - g[d])
                    .collect();
                cone_member(&ints(&x), &inst.cone).map(|m| m.member).unwrap_or(false)
            });
            if hit {
                brute.push(k);
            }
        }
        ensure(got == brute, || format!("instance {n}: {got:?} vs {brute:?}"))?;
        let b = bound_bd_check(&inst).map_err(|e| e.to_string())?;
        ensure(b.holds, || format!("instance {n}: distance bound fails"))?;
    }
    Ok("40 random instances match enumeration over k <= 100".into())
}

fn cone_basis_farkas(rng: &mut ChaCha8Rng) -> Outcome {
    let mut done = 0;
    while done < 40 {
        let t = rng.gen_range(2..=4);
        let r = rng.gen_range(2..=5);
        let Some(gens) = random_generators(rng, t, r, 6) else {
            continue;
        };
        let rats: Vec<Vec<Rat>> = gens.iter().map(|g| ints(g)).collect();
        let basis = cone_basis(&rats).map_err(|e| e.to_string())?;
        let i = basis.kept[0];
        let others: Vec<Vec<Rat>> = (0..r).filter(|&j| j != i).map(|j| rats[j].clone()).collect();
        let cone = RationalCone::new(t, others).map_err(|e| e.to_string())?;
        let m = cone_member(&rats[i], &cone).map_err(|e| e.to_string())?;
        ensure(!m.member && m.verify(&rats[i], &cone), || {
            format!("{gens:?}: retained generator {i}")
        })?;
        done += 1;
    }
    Ok("40 random generator sets".into())
}

fn twist(_: &mut ChaCha8Rng) -> Outcome {
    let n = 200;
    for (name, json) in [("Fredholm", FREDHOLM), ("Thue-Morse", THUE_MORSE)] {
        let s = system(json);
        let base = s.expand(n).map_err(|e| e.to_string())?;
        let c = base.component(s.distinguished);
        for order in [1u64, 2, 3, 4, 6, 8] {
            let zeta = RootOfUnity::primitive(order);
            let tw = s.twist(&zeta).map_err(|e| e.to_string())?;
            let x = tw.expand(n).map_err(|e| e.to_string())?;
            let got = x.component(tw.distinguished);
            for k in 0..=n {
                let want = CycloElem::root(&zeta.pow_u(k as u64)) * c[k].clone();
                ensure(got[k] == want, || format!("{name}, order {order}, coefficient {k}"))?;
            }
        }
    }
    Ok("orders 1, 2, 3, 4, 6, 8 up to n = 200".into())
}

fn iterate(_: &mut ChaCha8Rng) -> Outcome {
    for json in [FREDHOLM, THUE_MORSE, CUBE_LACUNARY] {
        let s = system(json);
        let base = s.expand(200).map_err(|e| e.to_string())?;
        for l in 1..=3 {
            let it = s.iterate(l).map_err(|e| e.to_string())?;
            let x = it.expand(200).map_err(|e| e.to_string())?;
            ensure(x.series == base.series, || format!("q = {}, l = {l}", s.q))?;
        }
    }
    Ok("l = 1, 2, 3 to order 200".into())
}

fn evaluation(_: &mut ChaCha8Rng) -> Outcome {
    let opts = EvalOptions::default();
    let half = Point::parse("1/2").map_err(|e| e.to_string())?;
    let f_oracle: Rat = (0..=7)
        .map(|n| Rat::new(BigInt::one(), BigInt::one() << (1usize << n)))
        .sum();
    let f = eval_value(&system(FREDHOLM), &half, &opts).map_err(|e| e.to_string())?;
    ensure(
        (&f.distinguished_parts().0 - &f_oracle).abs() < rat(1, 1_000_000_000_000),
        || "Fredholm".into(),
    )?;
    let tm_oracle: Rat = (0..=7)
        .map(|n| Rat::one() - Rat::new(BigInt::one(), BigInt::one() << (1usize << n)))
        .product();
    let tm = eval_value(&system(THUE_MORSE), &half, &opts).map_err(|e| e.to_string())?;
    ensure(
        (&tm.distinguished_parts().0 - &tm_oracle).abs() < rat(1, 100_000_000),
        || "Thue-Morse".into(),
    )?;
    let tw = system(FREDHOLM)
        .twist(&RootOfUnity::MINUS_ONE)
        .map_err(|e| e.to_string())?;
    let neg = eval_value(&tw, &half, &opts).map_err(|e| e.to_string())?;
    let want = &f.distinguished_parts().0 - Rat::one();
    ensure(
        (&neg.distinguished_parts().0 - want).abs() < rat(1, 1_000_000_000_000),
        || "twist at -1/2".into(),
    )?;
    Ok("Fredholm, Thue-Morse and twisted values match their oracles".into())
}

fn purity(_: &mut ChaCha8Rng) -> Outcome {
    let n = 12;
    let f = system(FREDHOLM).expand(n).map_err(|e| e.to_string())?.series[0].clone();
    let geometric = vec![CycloElem::from_int(1); n + 1];
    let mut inst = PurityInstance {
        series: vec![geometric, f.clone()],
        mus: vec![vec![1, 0], vec![0, 1]],
        truncation: n as u64,
        support: 6,
        check_preconditions: true,
    };
    let r = purity_check(&inst).map_err(|e| e.to_string())?;
    ensure(r.relation.is_none(), || "relation in the independent case".into())?;
    let mut one = vec![CycloElem::zero(); n + 1];
    one[0] = CycloElem::from_int(1);
    inst.series = vec![one, f];
    inst.mus = vec![vec![1, 0], vec![1, 0]];
    inst.support = 2;
    inst.check_preconditions = false;
    let r = purity_check(&inst).map_err(|e| e.to_string())?;
    ensure(r.verified, || "degenerate case has no verified relation".into())?;
    Ok("independent pair clean, proportional pair related".into())
}

fn entry(system: &str, point: &str) -> String {
    format!(r#"{{"system":{system},"point":"{point}","attestation":{{"notInField":true,"provenance":"selfcheck"}}}}"#)
}

pub fn intro_input() -> CertInput {
    let e = [entry(FREDHOLM, "1/2"), entry(FREDHOLM, "1/5"), entry(FREDHOLM, "1/10")];
    serde_json::from_str(&format!(r#"{{"entries":[{}]}}"#, e.join(","))).expect("intro input")
}

pub fn two_class_input() -> CertInput {
    let e = [entry(FREDHOLM, "1/2"), entry(CUBE_LACUNARY, "1/3")];
    serde_json::from_str(&format!(r#"{{"entries":[{}]}}"#, e.join(","))).expect("two-class input")
}

fn certify_examples(_: &mut ChaCha8Rng) -> Outcome {
    let c = certify(&intro_input()).map_err(|e| e.to_string())?;
    let concl = c.conclusion.as_ref().ok_or("intro example has no conclusion")?;
    ensure(concl.transcendence_degree == 3 && c.classes.len() == 1, || {
        "intro conclusion".into()
    })?;
    ensure(
        c.global_relations.iter().any(|g| g.rendered == "1/10 = (1/2)(1/5)"),
        || "intro global relation".into(),
    )?;
    let c = certify(&two_class_input()).map_err(|e| e.to_string())?;
    let concl = c.conclusion.as_ref().ok_or("two-class example has no conclusion")?;
    ensure(concl.transcendence_degree == 2 && c.classes.len() == 2, || {
        "two-class conclusion".into()
    })?;
    Ok("intro example tr.deg 3, two-class example tr.deg 2".into())
}

fn negative_paths(_: &mut ChaCha8Rng) -> Outcome {
    let e = [entry(FREDHOLM, "1/2"), entry(FREDHOLM, "1/4")];
    let input: CertInput =
        serde_json::from_str(&format!(r#"{{"entries":[{}]}}"#, e.join(","))).map_err(|e| e.to_string())?;
    let c = certify(&input).map_err(|e| e.to_string())?;
    let f = c.failure.as_ref().ok_or("dependent points passed")?;
    ensure(
        f.step == "pairwiseIndependence" && f.witness.as_deref() == Some("2·e1 = e2"),
        || format!("unexpected failure {f:?}"),
    )?;
    let pole = system(r#"{"q":2,"matrix":[["1/(1 - 2z)"]],"seeds":{"0":["1"]},"distinguished":0}"#);
    let r =
        regular_point_check(&pole, &Point::parse("1/2").map_err(|e| e.to_string())?, 64).map_err(|e| e.to_string())?;
    ensure(r.verdict == RegularityVerdict::NotRegular { k: 0 }, || {
        format!("{:?}", r.verdict)
    })?;
    Ok("dependent points and pole-at-point rejected".into())
}

fn determinism(_: &mut ChaCha8Rng) -> Outcome {
    for input in [intro_input(), two_class_input()] {
        let a = certify(&input).map_err(|e| e.to_string())?;
        let b = certify(&input).map_err(|e| e.to_string())?;
        ensure(
            render_certificate(&a, Format::Json) == render_certificate(&b, Format::Json),
            || "certificates differ between runs".into(),
        )?;
    }
    Ok("repeated certificates are byte-identical".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let r = selfcheck(1);
        for i in &r.items {
            assert!(i.passed, "{}: {}", i.name, i.detail);
        }
        assert!(r.passed);
    }

    #[test]
    fn generators_are_pairwise_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = random_generators(&mut rng, 3, 4, 6).unwrap();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                assert!(!dependent(&g[i], &g[j]));
            }
        }
    }
}
