mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use sdnb_core::forms::{self, diagonalize, trace_form, DiagonalForm, GramMatrix};
use sdnb_core::poly::quartic_family_polynomial;
use sdnb_core::{cup, Polynomial, Rational};

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn transpose(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].clone()).collect()).collect()
}

/// Unimodular upper-triangular matrix times a random permutation.
fn random_change_of_basis(rng: &mut impl Rng, n: usize) -> Vec<Vec<Rational>> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let col = perm[j];
                    if col == i {
                        Rational::one()
                    } else if col > i {
                        Rational::from(rng.gen_range(-3..=3))
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

#[test]
fn diagonalize_preserves_congruence_invariants() {
    let mut rng = common::rng(3);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let entries: Vec<Rational> = (0..n).map(|_| common::small_rational(&mut rng, 9)).collect();
        let d = DiagonalForm::new(entries.clone()).unwrap();
        let diag: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { entries[i].clone() } else { Rational::zero() }).collect())
            .collect();
        let p = random_change_of_basis(&mut rng, n);
        let g = GramMatrix::new(mat_mul(&transpose(&p), &mat_mul(&diag, &p))).unwrap();
        let out = diagonalize(&g).unwrap();
        assert_eq!(out.det_class().unwrap(), d.det_class().unwrap());
        assert_eq!(out.signature(), d.signature());
        assert_eq!(out.hasse_witt().unwrap(), d.hasse_witt().unwrap());
    }
}

#[test]
fn zero_diagonal_pivot() {
    let g = GramMatrix::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
    let d = diagonalize(&g).unwrap();
    assert_eq!(d.signature(), (1, 1));
    assert_eq!(d.det_square_class().unwrap(), common::q(-1));
}

proptest! {
    #[test]
    fn hasse_witt_ignores_squares_and_order(
        entries in prop::collection::vec((-40i64..=40).prop_filter("nz", |x| *x != 0), 1..6),
        scales in prop::collection::vec(1i64..=12, 6),
        seed in any::<u64>(),
    ) {
        let base = DiagonalForm::from_i64(&entries).unwrap();
        let scaled: Vec<Rational> = entries
            .iter()
            .zip(&scales)
            .map(|(&e, &s)| Rational::from(e) * Rational::new(s, 7).unwrap().square())
            .collect();
        let mut permuted = scaled.clone();
        permuted.shuffle(&mut common::rng(seed));
        let other = DiagonalForm::new(permuted).unwrap();
        prop_assert_eq!(other.hasse_witt().unwrap(), base.hasse_witt().unwrap());
        prop_assert_eq!(other.det_class().unwrap(), base.det_class().unwrap());
    }
}

#[test]
fn quartic_family_gram_route() {
    let mut rng = common::rng(7);
    let mut checked = 0;
    for _ in 0..100 {
        let (a, b, c, eps) = common::quartic_params(&mut rng, false);
        let closed = forms::quartic_family_form(&a, &b, &c, &eps).unwrap();
        assert_eq!(closed.hasse_witt().unwrap(), cup(&common::q(-1), &a).unwrap());
        let f = quartic_family_polynomial(&a, &b, &eps).unwrap();
        let gram = diagonalize(&trace_form(&f).unwrap()).unwrap();
        assert_eq!(gram.hasse_witt().unwrap(), closed.hasse_witt().unwrap(), "({a},{b},{c},{eps})");
        assert_eq!(gram.det_class().unwrap(), closed.det_class().unwrap());
        checked += 1;
    }
    assert_eq!(checked, 100);
}

type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

fn rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    while r.len() >= b.len() {
        let lead = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &lead * bi;
        }
        r.pop();
    }
    if r.is_empty() {
        r.push(BigRational::zero());
    }
    trim(r)
}

fn sign_changes(seq: &[i32]) -> usize {
    let nz: Vec<i32> = seq.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots via a Sturm sequence.
fn real_roots(f: &Polynomial) -> usize {
    let p0: Poly = f.coeffs().iter().map(|c| BigRational::from(c.clone())).collect();
    let p1: Poly = (1..p0.len())
        .map(|i| &p0[i] * BigRational::from(BigInt::from(i)))
        .collect();
    let mut seq = vec![p0, p1];
    loop {
        let n = seq.len();
        let r = rem(&seq[n - 2], &seq[n - 1]);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let sign = |c: &BigRational| if c.is_positive() { 1 } else if c.is_negative() { -1 } else { 0 };
    let at_pos: Vec<i32> = seq.iter().map(|p| sign(p.last().unwrap())).collect();
    let at_neg: Vec<i32> = seq
        .iter()
        .map(|p| sign(p.last().unwrap()) * if (p.len() - 1) % 2 == 0 { 1 } else { -1 })
        .collect();
    sign_changes(&at_neg) - sign_changes(&at_pos)
}

#[test]
fn positive_definite_iff_totally_real() {
    let polys = [
        "-3,0,1", "3,0,1", "1,1,1", "-1,-1,1", "6,-7,0,1", "-2,0,0,1", "1,-3,0,1", "-1,-2,1,1",
        "2,0,-4,0,1", "1,0,0,0,1", "-1,-1,0,0,1", "1,1,0,0,1", "72,0,-24,0,1", "1,0,-4,0,1",
        "-5,0,0,0,1", "2,0,-2,0,0,0,1", "-1,3,0,-4,0,1", "1,-5,0,5,0,-1,1", "-2,0,0,0,0,0,0,0,1",
        "2,0,-16,0,20,0,-8,0,1",
    ];
    let mut totally_real = 0;
    for s in polys {
        let f: Polynomial = s.parse().unwrap();
        let form = diagonalize(&trace_form(&f).unwrap()).unwrap();
        let all_real = real_roots(&f) == f.degree();
        assert_eq!(form.signature() == (f.degree(), 0), all_real, "{f}");
        // Sylvester: the number of negative entries counts pairs of complex roots
        assert_eq!(form.signature().1 * 2, f.degree() - real_roots(&f), "{f}");
        totally_real += all_real as usize;
    }
    assert!(totally_real >= 5);
}

fn is_square(n: i64) -> bool {
    n >= 0 && {
        let r = common::isqrt(n as u64) as i64;
        r * r == n
    }
}

fn ternary_witness(e: [i64; 3], height: i64) -> Option<[i64; 3]> {
    let [a, b, c] = e;
    for x in 0..=height {
        for y in 0..=height {
            if x == 0 && y == 0 {
                continue;
            }
            let num = -(a * x * x + b * y * y);
            if num % c == 0 && is_square(num / c) {
                return Some([x, y, common::isqrt((num / c) as u64) as i64]);
            }
        }
    }
    None
}

#[test]
fn hasse_minkowski_small_ternaries() {
    for a in (-6i64..=6).filter(|&x| x != 0) {
        for b in (a..=6).filter(|&x| x != 0) {
            for c in (b..=6).filter(|&x| x != 0) {
                let form = DiagonalForm::from_i64(&[a, b, c]).unwrap();
                if form.isotropic_over_q().unwrap() {
                    assert!(ternary_witness([a, b, c], 60).is_some(), "<{a}, {b}, {c}>");
                } else {
                    let v = form.anisotropic_place().unwrap().unwrap();
                    assert!(!form.isotropic_over_qp(v).unwrap());
                    assert!(ternary_witness([a, b, c], 60).is_none());
                }
            }
        }
    }
}

#[test]
fn four_squares_cross_check() {
    let sums: std::collections::BTreeSet<i64> = (0..12i64)
        .flat_map(|x| (0..12).flat_map(move |y| (0..12).map(move |z| x * x + y * y + z * z)))
        .collect();
    for n in 1..100i64 {
        let three = forms::DiagonalForm::from_i64(&[1, 1, 1]).unwrap();
        assert_eq!(three.represents(&common::q(n)).unwrap(), {
            // over Q, three squares represent n iff −n is not a local square at 2 in the 4^a(8b+7) sense
            let mut m = n;
            while m % 4 == 0 {
                m /= 4;
            }
            m % 8 != 7
        }, "{n}");
        assert!(sums.contains(&n) == (three.represents(&common::q(n)).unwrap()), "{n}");
        assert!(forms::sum_of_four_squares(&common::q(n)).unwrap());
    }
}
