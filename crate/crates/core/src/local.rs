//! Places of Q and local Hilbert symbols.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{Rational, SquareClass};
use crate::error::{Error, Result};
use crate::primes;

/// A place of Q: the real place or a finite prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Finite(Prime),
}

/// A verified rational prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if primes::is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p.to_string()))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl Place {
    pub fn finite(p: u64) -> Result<Self> {
        Ok(Place::Finite(Prime::new(p)?))
    }

    pub fn prime(self) -> Option<u64> {
        match self {
            Place::Real => None,
            Place::Finite(p) => Some(p.0),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => f.write_str("real"),
            Place::Finite(p) => write!(f, "{}", p.0),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("real") || s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Place::Real);
        }
        let p: u64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("not a place: {s:?}")))?;
        Place::finite(p)
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Place::Real => serializer.serialize_str("real"),
            Place::Finite(p) => serializer.serialize_u64(p.0),
        }
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u64),
            Str(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Num(p) => Place::finite(p).map_err(serde::de::Error::custom),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

fn eps(u: u64) -> u64 {
    // (u - 1)/2 mod 2 for odd u given mod 8
    ((u % 8) - 1) / 2 % 2
}

fn omega(u: u64) -> u64 {
    // (u^2 - 1)/8 mod 2
    let u = u % 8;
    (u * u - 1) / 8 % 2
}

/// Symbol at a finite prime from the parities of the valuations and the
/// unit parts, reduced mod 8 when `p = 2` and mod `p` otherwise.
fn finite_symbol(p: u64, alpha: bool, u: u64, beta: bool, w: u64) -> i8 {
    if p == 2 {
        let e = eps(u) * eps(w) + alpha as u64 * omega(w) + beta as u64 * omega(u);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let mut s = 1i8;
    if alpha && beta && p % 4 == 3 {
        s = -s;
    }
    if beta {
        s *= primes::jacobi(u, p);
    }
    if alpha {
        s *= primes::jacobi(w, p);
    }
    s
}

/// Hilbert symbol of two square classes at `v`.
pub fn hilbert_sq(a: &SquareClass, b: &SquareClass, v: Place) -> i8 {
    match v {
        Place::Real => {
            if a.negative && b.negative {
                -1
            } else {
                1
            }
        }
        Place::Finite(p) => {
            let p = p.0;
            let m = if p == 2 { 8 } else { p };
            finite_symbol(
                p,
                a.contains(p),
                a.residue_without(p, m),
                b.contains(p),
                b.residue_without(p, m),
            )
        }
    }
}

/// Parity of `v_p(q)` and the unit part of `q` modulo `m`, up to squares.
fn unit_at(q: &Rational, p: u64, m: u64) -> (bool, u64) {
    let big_p = BigInt::from(p);
    let strip = |n: &BigInt| {
        let mut n = n.abs();
        let mut e = 0u32;
        loop {
            let (d, r) = n.div_rem(&big_p);
            if !r.is_zero() {
                return (n, e);
            }
            n = d;
            e += 1;
        }
    };
    let (num, e1) = strip(q.numer());
    let (den, e2) = strip(q.denom());
    // den⁻¹ and den differ by a square, so the product represents the class
    let mut unit = (num * den) % BigInt::from(m);
    if q.is_negative() {
        unit = BigInt::from(m) - unit;
    }
    let unit = unit.to_u64().unwrap_or(0) % m;
    ((e1 + e2) % 2 == 1, unit)
}

/// Hilbert symbol `(a, b)_v` of nonzero rationals. Only the valuations at
/// `v` and the unit residues are needed, so no factorization is done.
pub fn hilbert(a: &Rational, b: &Rational, v: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Zero("hilbert"));
    }
    Ok(match v {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Finite(p) => {
            let p = p.0;
            let m = if p == 2 { 8 } else { p };
            let (alpha, u) = unit_at(a, p, m);
            let (beta, w) = unit_at(b, p, m);
            finite_symbol(p, alpha, u, beta, w)
        }
    })
}

/// Whether the square class is a square in the completion `Q_v`.
pub fn is_local_square(a: &SquareClass, v: Place) -> bool {
    match v {
        Place::Real => !a.negative,
        Place::Finite(p) if p.0 == 2 => !a.contains(2) && a.residue_without(2, 8) == 1,
        Place::Finite(p) => !a.contains(p.0) && primes::jacobi(a.residue_without(p.0, p.0), p.0) == 1,
    }
}

/// Places at which a symbol with arguments in the given square classes can
/// be nontrivial: the real place, 2, and every prime in the classes.
pub fn support_of_classes<'a>(classes: impl IntoIterator<Item = &'a SquareClass>) -> BTreeSet<Place> {
    let mut out = BTreeSet::from([Place::Real, Place::Finite(Prime(2))]);
    for c in classes {
        out.extend(c.primes.iter().map(|&p| Place::Finite(Prime(p))));
    }
    out
}

/// Real place, 2 and every prime dividing a numerator or denominator.
pub fn support_places(pairs: &[(Rational, Rational)]) -> Result<BTreeSet<Place>> {
    let mut out = BTreeSet::from([Place::Real, Place::Finite(Prime(2))]);
    for (a, b) in pairs {
        for q in [a, b] {
            let f = crate::arith::factor(q)?;
            out.extend(f.factors.keys().map(|&p| Place::Finite(Prime(p))));
        }
    }
    Ok(out)
}

/// Largest modulus `p^N` the brute-force oracle will search.
pub const ORACLE_MODULUS_LIMIT: u64 = 1 << 24;

/// Decides `(a, b)_p` by searching for a primitive solution of
/// `z² ≡ a·x² + b·y² (mod p^N)` with `N = v_p(4ab) + 3`, after reducing `a`
/// and `b` to squarefree representatives. Independent of the closed formulas
/// used by [`hilbert`].
pub fn hilbert_oracle(a: i64, b: i64, p: u64) -> Result<i8> {
    if a == 0 || b == 0 {
        return Err(Error::Zero("hilbert_oracle"));
    }
    if !primes::is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let a = squarefree_i64(a);
    let b = squarefree_i64(b);
    let val = |n: i64| {
        let mut n = n.unsigned_abs();
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        e
    };
    let n_exp = val(a) + val(b) + if p == 2 { 2 } else { 0 } + 3;
    let modulus = (p as u128).pow(n_exp);
    if modulus > ORACLE_MODULUS_LIMIT as u128 {
        return Err(Error::SearchBudgetExceeded(format!("{p}^{n_exp}")));
    }
    let modulus = modulus as u64;
    let am = (a as i128).rem_euclid(modulus as i128) as u64;
    let bm = (b as i128).rem_euclid(modulus as i128) as u64;
    let search = ConicSearch { a: am, b: bm, p, exp: n_exp };
    Ok(if search.has_primitive_solution() { 1 } else { -1 })
}

fn squarefree_i64(n: i64) -> i64 {
    let mut m = n.unsigned_abs();
    let mut out = 1u64;
    let mut d = 2u64;
    while d * d <= m {
        let mut e = 0;
        while m % d == 0 {
            m /= d;
            e += 1;
        }
        if e % 2 == 1 {
            out *= d;
        }
        d += 1;
    }
    out *= m;
    if n < 0 {
        -(out as i64)
    } else {
        out as i64
    }
}

/// Depth-first Hensel-style search over the three affine charts
/// (x = 1), (p | x, y = 1), (p | x, p | y, z = 1).
struct ConicSearch {
    a: u64,
    b: u64,
    p: u64,
    exp: u32,
}

impl ConicSearch {
    fn residual(&self, x: u64, y: u64, z: u64, m: u64) -> u64 {
        let lhs = primes::mul_mod(z, z, m);
        let rhs = (primes::mul_mod(self.a % m, primes::mul_mod(x, x, m), m)
            + primes::mul_mod(self.b % m, primes::mul_mod(y, y, m), m))
            % m;
        (lhs + m - rhs) % m
    }

    fn has_primitive_solution(&self) -> bool {
        let p = self.p;
        // chart 0: x = 1; chart 1: x ≡ 0, y = 1; chart 2: x, y ≡ 0, z = 1
        for chart in 0..3 {
            for u in 0..p {
                for w in 0..p {
                    let (x, y, z) = match chart {
                        0 => (1, u, w),
                        1 => (0, 1, w),
                        _ => (0, 0, 1),
                    };
                    if chart == 1 && u > 0 {
                        continue;
                    }
                    if chart == 2 && (u > 0 || w > 0) {
                        continue;
                    }
                    if self.residual(x, y, z, p) == 0 && self.lift(chart, x, y, z, 1) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Extends a solution modulo `p^level` to one modulo `p^exp`.
    fn lift(&self, chart: u8, x: u64, y: u64, z: u64, level: u32) -> bool {
        if level == self.exp {
            return true;
        }
        let p = self.p;
        let step = p.pow(level);
        let m = step * p;
        // the fixed unit coordinate of the chart is never perturbed
        for i in 0..p {
            for j in 0..p {
                let (nx, ny, nz) = match chart {
                    0 => (x, y + i * step, z + j * step),
                    1 => (x + i * step, y, z + j * step),
                    _ => (x + i * step, y + j * step, z),
                };
                if self.residual(nx, ny, nz, m) == 0 && self.lift(chart, nx, ny, nz, level + 1) {
                    return true;
                }
            }
        }
        false
    }
}
