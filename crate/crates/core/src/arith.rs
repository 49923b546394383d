//! Exact rationals, signed prime factorizations and square classes.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::primes;

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let d: BigInt = denom.into();
        if d.is_zero() {
            return Err(Error::Zero("denominator"));
        }
        Ok(Rational(BigRational::new(numer.into(), d)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Zero("reciprocal"));
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn square(&self) -> Self {
        Rational(&self.0 * &self.0)
    }

    pub fn pow(&self, e: i32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, e))
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    /// The value as an `i64`, if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Self {
        Rational(q)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division by zero panics, as for the underlying type.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse_int(n)?, parse_int(d)?),
            None => Ok(Rational::integer(parse_int(s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Int(n) => Ok(Rational::from(n)),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// A nonzero rational as a sign and a map from primes to nonzero exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredRational {
    pub negative: bool,
    pub factors: BTreeMap<u64, i32>,
}

impl FactoredRational {
    pub fn reconstruct(&self) -> Rational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (&p, &e) in &self.factors {
            let pe = BigInt::from(p).pow(e.unsigned_abs());
            if e > 0 {
                num *= pe;
            } else {
                den *= pe;
            }
        }
        if self.negative {
            num = -num;
        }
        Rational(BigRational::new(num, den))
    }

    pub fn exponent(&self, p: u64) -> i32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn square_class(&self) -> SquareClass {
        SquareClass {
            negative: self.negative,
            primes: self
                .factors
                .iter()
                .filter(|(_, e)| *e % 2 != 0)
                .map(|(&p, _)| p)
                .collect(),
        }
    }
}

fn factor_magnitude(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    let mag: BigUint = n.magnitude().clone();
    primes::factor_biguint(&mag)
}

/// Signed prime factorization of a nonzero rational.
pub fn factor(q: &Rational) -> Result<FactoredRational> {
    if q.is_zero() {
        return Err(Error::Zero("factor"));
    }
    let mut factors = BTreeMap::new();
    for (p, e) in factor_magnitude(q.numer())? {
        factors.insert(p, e as i32);
    }
    for (p, e) in factor_magnitude(q.denom())? {
        factors.insert(p, -(e as i32));
    }
    Ok(FactoredRational {
        negative: q.is_negative(),
        factors,
    })
}

/// The class of a nonzero rational in Q^×/Q^×², stored as its sign and the
/// sorted primes of odd exponent. The squarefree integer representative is
/// `±Π primes`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SquareClass {
    pub negative: bool,
    pub primes: Vec<u64>,
}

impl SquareClass {
    pub fn of(q: &Rational) -> Result<Self> {
        Ok(factor(q)?.square_class())
    }

    pub fn one() -> Self {
        SquareClass::default()
    }

    pub fn minus_one() -> Self {
        SquareClass {
            negative: true,
            primes: Vec::new(),
        }
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    /// Product in Q^×/Q^×² (symmetric difference of prime sets).
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        let mut primes = Vec::with_capacity(self.primes.len() + other.primes.len());
        let (mut i, mut j) = (0, 0);
        while i < self.primes.len() || j < other.primes.len() {
            match (self.primes.get(i), other.primes.get(j)) {
                (Some(a), Some(b)) if a == b => {
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    primes.push(*a);
                    i += 1;
                }
                (Some(a), None) => {
                    primes.push(*a);
                    i += 1;
                }
                (_, Some(b)) => {
                    primes.push(*b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SquareClass {
            negative: self.negative != other.negative,
            primes,
        }
    }

    /// Residue modulo `m` of the representative with the prime `skip` removed.
    pub(crate) fn residue_without(&self, skip: u64, m: u64) -> u64 {
        let mut r = 1 % m;
        for &q in &self.primes {
            if q != skip {
                r = primes::mul_mod(r, q % m, m);
            }
        }
        if self.negative && r != 0 {
            r = m - r;
        }
        r
    }

    pub fn representative(&self) -> BigInt {
        let mut n = BigInt::one();
        for &p in &self.primes {
            n *= p;
        }
        if self.negative {
            -n
        } else {
            n
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative())
    }
}

/// The squarefree integer `s` with `q = s · (square)`.
pub fn squarefree_part(q: &Rational) -> Result<Rational> {
    Ok(Rational::integer(SquareClass::of(q)?.representative()))
}

/// Legendre symbol `(a | p)` for an odd prime `p`.
pub fn legendre(a: &BigInt, p: u64) -> Result<i8> {
    if p % 2 == 0 || !primes::is_prime(p) {
        return Err(Error::NotOddPrime(p.to_string()));
    }
    let r = a.mod_floor(&BigInt::from(p)).to_u64().unwrap_or(0);
    Ok(primes::jacobi(r, p))
}

fn check_coprime(a: i64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::Zero("modulus"));
    }
    let r = (a as i128).rem_euclid(m as i128) as u64;
    if r.gcd(&m) != 1 && m != 1 {
        return Err(Error::NotCoprime(a.to_string(), m.to_string()));
    }
    Ok(r)
}

/// Multiplicative order of `a` in (Z/m)^×.
pub fn mult_order(a: i64, m: u64) -> Result<u64> {
    let r = check_coprime(a, m)?;
    if m <= 2 {
        return Ok(1);
    }
    let mut x = r;
    let mut k = 1;
    while x != 1 {
        x = primes::mul_mod(x, r, m);
        k += 1;
    }
    Ok(k)
}

/// Order of the image of `a` in (Z/m)^× / {±1}.
pub fn mult_order_mod_pm1(a: i64, m: u64) -> Result<u64> {
    let r = check_coprime(a, m)?;
    if m <= 2 {
        return Ok(1);
    }
    let mut x = r;
    let mut k = 1;
    while x != 1 && x != m - 1 {
        x = primes::mul_mod(x, r, m);
        k += 1;
    }
    Ok(k)
}

/// `p`-adic valuation of a nonzero rational.
pub fn valuation(q: &Rational, p: u64) -> Result<i32> {
    if q.is_zero() {
        return Err(Error::Zero("valuation"));
    }
    let big_p = BigInt::from(p);
    let count = |n: &BigInt| {
        let mut n = n.clone();
        let mut e = 0;
        loop {
            let (d, r) = n.div_rem(&big_p);
            if !r.is_zero() {
                return e;
            }
            n = d;
            e += 1;
        }
    };
    Ok(count(q.numer()) - count(q.denom()))
}
