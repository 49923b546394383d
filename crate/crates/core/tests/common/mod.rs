#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sdnb_core::Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Rational {
    Rational::from(n)
}

pub fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

/// Squarefree part of a positive integer by trial division.
pub fn squarefree_u64(mut n: u64) -> u64 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out * n
}

pub fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn nonzero(rng: &mut impl Rng, bound: i64) -> i64 {
    loop {
        let x = rng.gen_range(-bound..=bound);
        if x != 0 {
            return x;
        }
    }
}

pub fn small_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    Rational::new(nonzero(rng, bound), rng.gen_range(1..=bound)).unwrap()
}

/// Random `(a, b, c, ε)` with `a² − b²ε = c²ε`, `ε` a nonsquare.
///
/// Picks `b² + c² = f·s²` with `f > 1` squarefree, then `ε = f·r²`,
/// `a = ±f·r·s`, and finally scales `a, b, c` by a common rational.
pub fn quartic_params(rng: &mut impl Rng, positive_a: bool) -> (Rational, Rational, Rational, Rational) {
    loop {
        let b = nonzero(rng, 12);
        let c = nonzero(rng, 12);
        let n = (b * b + c * c) as u64;
        let f = squarefree_u64(n);
        if f == 1 {
            continue;
        }
        let s = isqrt(n / f) as i64;
        let f = f as i64;
        let rr = rng.gen_range(1..=3);
        let sign = if positive_a || rng.gen_bool(0.5) { 1 } else { -1 };
        let t = Rational::new(rng.gen_range(1..=4), rng.gen_range(1..=4)).unwrap();
        let a = Rational::from(sign * f * rr * s) * t.clone();
        return (a, Rational::from(b) * t.clone(), Rational::from(c) * t, Rational::from(f * rr * rr));
    }
}

/// Nonzero integer in `[-bound, bound]` that is not a rational square.
pub fn random_nonsquare(rng: &mut impl Rng, bound: i64) -> i64 {
    loop {
        let z = nonzero(rng, bound);
        let sf = squarefree_u64(z.unsigned_abs());
        if !(z > 0 && sf == 1) {
            return z;
        }
    }
}
