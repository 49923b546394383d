mod common;

use common::{q, r};
use rand::Rng;
use sdnb_core::brauer::restricts_trivially_to_quadratic;
use sdnb_core::poly::quartic_family_polynomial;
use sdnb_core::sdnb::{
    c_invariants, d_top, elementary_criterion, embedding_obstruction, h1_condition, invariants,
    Elementary, Site,
};
use sdnb_core::{
    arith, decide_global, decide_local, FactorKind, GaloisAlgebraSpec, GroupDescriptor, Place,
    Rational, Verdict,
};

fn random_c8_quadratic(rng: &mut impl Rng) -> GaloisAlgebraSpec {
    let z = Rational::from(common::random_nonsquare(rng, 500)) * common::small_rational(rng, 6).square();
    GaloisAlgebraSpec::cyclic_quadratic(3, z).unwrap()
}

fn random_c8_quartic(rng: &mut impl Rng) -> GaloisAlgebraSpec {
    let (a, b, c, eps) = common::quartic_params(rng, false);
    GaloisAlgebraSpec::cyclic_quartic(3, a, b, c, eps).unwrap()
}

/// Whether some prime `p ≡ 7 (mod 8)` divides `x` to an odd power.
fn has_odd_seven_mod_eight(x: &Rational) -> bool {
    let f = arith::factor(x).unwrap();
    f.factors.iter().any(|(&p, &e)| p % 8 == 7 && e % 2 != 0)
}

fn elementary_argument(spec: &GaloisAlgebraSpec) -> Rational {
    match spec.family() {
        sdnb_core::Family::CyclicQuadratic { z } => z.clone(),
        sdnb_core::Family::CyclicQuartic { a, .. } => a.clone(),
        _ => unreachable!(),
    }
}

fn agrees(v: Verdict, e: Elementary) -> bool {
    matches!((v, e), (Verdict::Yes, Elementary::Yes) | (Verdict::No, Elementary::No))
}

#[test]
fn cor_6_5_route_agrees() {
    let mut rng = common::rng(21);
    for i in 0..200 {
        let spec = if i % 2 == 0 { random_c8_quadratic(&mut rng) } else { random_c8_quartic(&mut rng) };
        let verdict = decide_global(&spec).unwrap().verdict;
        let route = h1_condition(&spec)
            && restricts_trivially_to_quadratic(&d_top(&spec).unwrap(), &q(2)).unwrap();
        assert_eq!(verdict == Verdict::Yes, route, "{spec}");
    }
}

#[test]
fn elementary_route_agrees_away_from_seven_mod_eight() {
    let mut rng = common::rng(22);
    let mut checked = [0, 0];
    while checked.iter().any(|&c| c < 100) {
        let which = rng.gen_range(0..2);
        let spec = if which == 0 { random_c8_quadratic(&mut rng) } else { random_c8_quartic(&mut rng) };
        if has_odd_seven_mod_eight(&elementary_argument(&spec)) {
            continue;
        }
        let verdict = decide_global(&spec).unwrap().verdict;
        assert!(agrees(verdict, elementary_criterion(&spec).unwrap()), "{spec}");
        checked[which] += 1;
    }
}

#[test]
fn sums_of_squares_miss_primes_seven_mod_eight() {
    // (z, −1) ramifies at a prime p ≡ 7 (mod 8); p splits in Q(√2), so the
    // restriction stays nontrivial although z > 0 is a sum of four squares
    for z in [7i64, 14, 23, 28, 31, 47, 105] {
        let spec = GaloisAlgebraSpec::cyclic_quadratic(3, q(z)).unwrap();
        assert_eq!(decide_global(&spec).unwrap().verdict, Verdict::No, "{z}");
        assert_eq!(elementary_criterion(&spec).unwrap(), Elementary::Yes, "{z}");
    }
    let spec = GaloisAlgebraSpec::cyclic_quartic(3, q(7), r("7/2"), r("7/2"), q(2)).unwrap();
    assert_eq!(decide_global(&spec).unwrap().verdict, Verdict::No);
    assert_eq!(elementary_criterion(&spec).unwrap(), Elementary::Yes);
}

#[test]
fn global_yes_implies_local_yes() {
    let mut rng = common::rng(23);
    for n in 2..=5u32 {
        for _ in 0..30 {
            let z = Rational::from(common::random_nonsquare(&mut rng, 300));
            let spec = GaloisAlgebraSpec::cyclic_quadratic(n, z).unwrap();
            let global = decide_global(&spec).unwrap();
            let support = d_top(&spec).unwrap();
            for &v in support.ramified().iter().filter(|v| **v != Place::Real) {
                let local = decide_local(&spec, v).unwrap();
                if global.verdict == Verdict::Yes {
                    assert_eq!(local.verdict, Verdict::Yes, "{spec} at {v}");
                }
                let failed_here = global.failures().any(|e| e.place == Site::At(v));
                assert_eq!(failed_here, local.verdict == Verdict::No, "{spec} at {v}");
            }
        }
    }
}

#[test]
fn only_top_unitary_factor_is_nonzero() {
    let mut rng = common::rng(24);
    for _ in 0..50 {
        let n = rng.gen_range(2..=6);
        let spec = if n >= 3 && rng.gen_bool(0.3) {
            let (a, b, c, e) = common::quartic_params(&mut rng, false);
            GaloisAlgebraSpec::cyclic_quartic(n, a, b, c, e).unwrap()
        } else {
            GaloisAlgebraSpec::cyclic_quadratic(n, Rational::from(common::random_nonsquare(&mut rng, 300))).unwrap()
        };
        let report = invariants(&spec).unwrap();
        for f in &report.factors {
            if f.factor.kind == FactorKind::Unitary && f.factor.id != format!("A({n})") {
                assert!(f.value.is_zero(), "{spec}: {}", f.factor.id);
            }
        }
    }
}

#[test]
fn split_algebra_always_has_self_dual_basis() {
    for g in ["C2", "C4", "C8", "C16", "C2xC6", "D4", "A4", "A5"] {
        let spec = GaloisAlgebraSpec::split(g.parse().unwrap());
        let d = decide_global(&spec).unwrap();
        assert_eq!(d.verdict, Verdict::Yes, "{g}");
    }
}

#[test]
fn trivial_embedding_obstruction_gives_yes() {
    let f = "2,0,-4,0,1".parse().unwrap();
    assert!(embedding_obstruction(&f).unwrap().is_trivial());
    let spec = GaloisAlgebraSpec::cyclic_poly(3, f).unwrap();
    assert_eq!(decide_global(&spec).unwrap().verdict, Verdict::Yes);

    let mut rng = common::rng(25);
    let mut trivial = 0;
    for _ in 0..20 {
        let (a, b, c, eps) = common::quartic_params(&mut rng, true);
        let f = quartic_family_polynomial(&a, &b, &eps).unwrap();
        let spec = GaloisAlgebraSpec::cyclic_quartic(3, a, b, c, eps).unwrap();
        let obstruction = embedding_obstruction(&f).unwrap();
        assert_eq!(obstruction, d_top(&spec).unwrap());
        if obstruction.is_trivial() {
            trivial += 1;
            assert_eq!(decide_global(&spec).unwrap().verdict, Verdict::Yes, "{spec}");
        }
    }
    assert!(trivial > 0);
}

#[test]
fn certificates_explain_verdicts() {
    let mut rng = common::rng(26);
    for _ in 0..100 {
        let spec = random_c8_quadratic(&mut rng);
        let d = decide_global(&spec).unwrap();
        match d.verdict {
            Verdict::No => assert!(d.failures().next().is_some()),
            Verdict::Yes => assert!(d.certificate.iter().all(|e| e.passed)),
            Verdict::Unknown => panic!("cyclic specs are decided"),
        }
        let json = serde_json::to_string(&d).unwrap();
        let back: sdnb_core::Decision = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
    }
}

#[test]
fn nonabelian_examples() {
    // (z, −1) for D₄ with E = Q: every finite ramified place binds
    let d4 = GaloisAlgebraSpec::d4_quadratic(q(21)).unwrap();
    let d = decide_global(&d4).unwrap();
    assert_eq!(d.verdict, Verdict::No);
    assert!(d.failures().any(|e| e.place == Site::At(Place::finite(3).unwrap())));

    // (−1, 5) is trivial over Q
    let a5 = GaloisAlgebraSpec::a5_quadratic(q(5)).unwrap();
    let c = c_invariants(&a5).unwrap();
    assert!(c[0].value.class().unwrap().is_trivial());
    assert!(restricts_trivially_to_quadratic(c[0].value.class().unwrap(), &q(5)).unwrap());

    let a4 = GaloisAlgebraSpec::a4_quartic("1,1,0,0,1".parse().unwrap()).unwrap();
    let d = decide_global(&a4).unwrap();
    assert_eq!(d.verdict, Verdict::Unknown);
    assert!(invariants(&a4).unwrap().conditional.is_some());
}

#[test]
fn h1_failures_are_reported() {
    let c4 = GaloisAlgebraSpec::cyclic_poly(2, "2,0,-4,0,1".parse().unwrap()).unwrap();
    let d = decide_global(&c4).unwrap();
    assert_eq!(d.verdict, Verdict::No);
    assert_eq!(d.certificate.len(), 1);
    assert_eq!(d.certificate[0].place, Site::H1);
    assert!(c_invariants(&c4).is_err());
    assert!(GroupDescriptor::cyclic(4).is_ok());
}
