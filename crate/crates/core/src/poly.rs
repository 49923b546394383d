//! Monic integer polynomials: power sums of roots and a bounded
//! irreducibility test.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::primes;

/// Integer polynomial, coefficients listed constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

/// Cap on candidate factors examined by [`Polynomial::is_irreducible`].
pub const IRREDUCIBILITY_BUDGET: u64 = 5_000_000;

impl Polynomial {
    /// Builds a monic polynomial of degree ≥ 1 from constant-first coefficients.
    pub fn monic(coeffs: Vec<BigInt>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::Invalid("polynomial must have degree at least 1".into()));
        }
        if !coeffs.last().is_some_and(One::is_one) {
            return Err(Error::Invalid("polynomial must be monic".into()));
        }
        Ok(Polynomial { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::monic(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Power sums `s_0, …, s_{count-1}` of the roots, by Newton's identities.
    pub fn power_sums(&self, count: usize) -> Vec<BigInt> {
        let n = self.degree();
        // f = x^n + c_{n-1} x^{n-1} + ... + c_0; e_i = (-1)^i c_{n-i}
        let c = |i: usize| -> &BigInt { &self.coeffs[i] };
        let mut s: Vec<BigInt> = Vec::with_capacity(count);
        for k in 0..count {
            if k == 0 {
                s.push(BigInt::from(n));
                continue;
            }
            // s_k + c_{n-1} s_{k-1} + ... + c_{n-k+1} s_1 + k c_{n-k} = 0  (k ≤ n)
            // s_k + c_{n-1} s_{k-1} + ... + c_0 s_{k-n} = 0               (k > n)
            let mut acc = BigInt::zero();
            for j in 1..=k.min(n) {
                let coeff = c(n - j);
                if k - j == 0 {
                    continue;
                }
                acc += coeff * &s[k - j];
            }
            if k <= n {
                acc += c(n - k) * BigInt::from(k);
            }
            s.push(-acc);
        }
        s
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Irreducibility over Q. Linear factors come from the rational root
    /// test, quadratic factors of quartics are solved for exactly, and higher
    /// degrees fall back to a search over monic integer factors of degree
    /// ≤ n/2 with coefficients under the Mignotte bound.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = self.degree();
        if n == 1 {
            return Ok(true);
        }
        if self.coeffs[0].is_zero() {
            return Ok(false);
        }
        let divisors = signed_divisors(&self.coeffs[0])?;
        if divisors.iter().any(|d| self.eval(d).is_zero()) {
            return Ok(false);
        }
        match n {
            2 | 3 => Ok(true),
            4 => Ok(!self.has_quadratic_factor(&divisors)),
            _ => self.search_factors(&divisors),
        }
    }

    /// Whether the quartic `self` is a product of two monic integer quadratics.
    fn has_quadratic_factor(&self, divisors: &[BigInt]) -> bool {
        let [f0, f1, f2, f3, _] = &self.coeffs[..] else {
            unreachable!("quartic")
        };
        // (X² + g1 X + g0)(X² + h1 X + h0) with h1 = f3 − g1, h0 = f0 / g0
        divisors.iter().any(|g0| {
            let h0 = f0 / g0;
            let matches = |g1: &BigInt| {
                let h1 = f3 - g1;
                &(g0 + &h0 + g1 * &h1) == f2 && &(g1 * &h0 + g0 * &h1) == f1
            };
            if &h0 != g0 {
                let (num, den) = (f1 - g0 * f3, &h0 - g0);
                num.is_multiple_of(&den) && matches(&(num / den))
            } else {
                let disc: BigInt = f3 * f3 - BigInt::from(4) * (f2 - g0 * BigInt::from(2));
                if disc.is_negative() {
                    return false;
                }
                let root = disc.sqrt();
                &root * &root == disc
                    && [f3 + &root, f3 - &root]
                        .iter()
                        .any(|t| t.is_even() && matches(&(t / 2)))
            }
        })
    }

    fn search_factors(&self, divisors: &[BigInt]) -> Result<bool> {
        let n = self.degree();
        let norm = {
            let sq: BigInt = self.coeffs.iter().map(|c| c * c).sum();
            sq.sqrt() + 1u32
        };
        let norm = norm
            .to_i64()
            .ok_or_else(|| Error::SearchBudgetExceeded("coefficient norm too large".into()))?;
        let mut budget = IRREDUCIBILITY_BUDGET;
        for k in 2..=n / 2 {
            let bounds: Vec<i64> = (1..k)
                .map(|i| (binomial(k, i) as i64).saturating_mul(norm))
                .collect();
            for g0 in divisors {
                let mut middle: Vec<i64> = bounds.iter().map(|b| -b).collect();
                loop {
                    if budget == 0 {
                        return Err(Error::SearchBudgetExceeded(
                            "irreducibility search".into(),
                        ));
                    }
                    budget -= 1;
                    let mut g = Vec::with_capacity(k + 1);
                    g.push(g0.clone());
                    g.extend(middle.iter().map(|&c| BigInt::from(c)));
                    g.push(BigInt::one());
                    if divides_monic(&g, &self.coeffs) {
                        return Ok(false);
                    }
                    // odometer over middle coefficients
                    let mut idx = 0;
                    while idx < middle.len() && middle[idx] == bounds[idx] {
                        middle[idx] = -bounds[idx];
                        idx += 1;
                    }
                    if idx == middle.len() {
                        break;
                    }
                    middle[idx] += 1;
                }
            }
        }
        Ok(true)
    }
}

/// All divisors of `n ≠ 0`, with both signs.
fn signed_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut divisors = vec![BigInt::one()];
    for (p, e) in primes::factor_biguint(n.magnitude())? {
        let p = BigInt::from(p);
        let mut next = Vec::with_capacity(divisors.len() * (e as usize + 1));
        for d in &divisors {
            let mut x = d.clone();
            for _ in 0..=e {
                next.push(x.clone());
                x *= &p;
            }
        }
        divisors = next;
    }
    let negatives: Vec<BigInt> = divisors.iter().map(|d| -d).collect();
    divisors.extend(negatives);
    Ok(divisors)
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Exact division test of `f` by the monic `g` over Z.
fn divides_monic(g: &[BigInt], f: &[BigInt]) -> bool {
    let dg = g.len() - 1;
    let mut rem: Vec<BigInt> = f.to_vec();
    while rem.len() > dg {
        let lead = rem.last().cloned().unwrap_or_default();
        let shift = rem.len() - 1 - dg;
        if !lead.is_zero() {
            for (i, gi) in g.iter().enumerate() {
                rem[shift + i] -= &lead * gi;
            }
        }
        rem.pop();
    }
    rem.iter().all(Zero::is_zero)
}

impl TryFrom<Vec<i64>> for Polynomial {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Polynomial::from_i64(&v)
    }
}

impl From<Polynomial> for Vec<i64> {
    fn from(p: Polynomial) -> Self {
        p.coeffs.iter().map(|c| c.to_i64().unwrap_or(i64::MAX)).collect()
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Comma- or space-separated integer coefficients, constant term first.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let coeffs = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                BigInt::from_str(t).map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Polynomial::monic(coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("X")?,
                (1, false) => write!(f, "{mag}X")?,
                (_, true) => write!(f, "X^{i}")?,
                (_, false) => write!(f, "{mag}X^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// The quartic `X⁴ − 2aX² + (a² − b²ε)` whose roots are `±√(a ± b√ε)`,
/// scaled to an integer monic polynomial by substituting `X = Y/t`.
pub fn quartic_family_polynomial(a: &Rational, b: &Rational, eps: &Rational) -> Result<Polynomial> {
    let c2 = Rational::from(-2) * a.clone();
    let c0 = a.square() - b.square() * eps.clone();
    // Y = tX turns coefficients (1, 0, c2, 0, c0) into (1, 0, t² c2, 0, t⁴ c0).
    let t = c2.denom().lcm(c0.denom());
    let t = Rational::integer(t);
    let c2s = c2 * t.square();
    let c0s = c0 * t.pow(4);
    debug_assert!(c2s.is_integer() && c0s.is_integer());
    Polynomial::monic(vec![
        c0s.numer().clone(),
        BigInt::zero(),
        c2s.numer().clone(),
        BigInt::zero(),
        BigInt::one(),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn power_sums_real_cyclotomic_16() {
        let f: Polynomial = "2,0,-4,0,1".parse().unwrap();
        assert_eq!(f.power_sums(7), big(&[4, 0, 8, 0, 24, 0, 80]));
    }

    #[test]
    fn power_sums_match_numeric_roots() {
        // (x-1)(x-2)(x+3) = x^3 - 7x + 6
        let f = Polynomial::from_i64(&[6, -7, 0, 1]).unwrap();
        let roots = [1i64, 2, -3];
        let expected: Vec<BigInt> = (0..8u32)
            .map(|k| BigInt::from(roots.iter().map(|r| r.pow(k)).sum::<i64>()))
            .collect();
        assert_eq!(f.power_sums(8), expected);
    }

    #[test]
    fn irreducibility() {
        let yes = [
            "2,0,-4,0,1",
            "-3,0,1",
            "1,1,0,0,1",
            "1,0,1",
            "-2,0,0,0,0,0,0,0,1",
            "72,0,-24,0,1",
            "1,0,0,0,0,1,1",
        ];
        for s in yes {
            assert!(s.parse::<Polynomial>().unwrap().is_irreducible().unwrap(), "{s}");
        }
        // x^4 + 4 = (x^2+2x+2)(x^2-2x+2); x^4 - 1; x^2 - 4; (x^2+1)^2;
        // (x^2+x+3)(x^2-x+5); a product of a quadratic and a quartic
        let no = [
            "4,0,0,0,1",
            "-1,0,0,0,1",
            "-4,0,1",
            "0,1,1",
            "1,0,2,0,1",
            "15,2,7,0,1",
            "2,0,4,0,3,0,1",
        ];
        for s in no {
            assert!(!s.parse::<Polynomial>().unwrap().is_irreducible().unwrap(), "{s}");
        }
    }

    #[test]
    fn parse_rejects_non_monic() {
        assert!("1,2".parse::<Polynomial>().is_err());
        assert!("5".parse::<Polynomial>().is_err());
        assert!("1,x,1".parse::<Polynomial>().is_err());
    }

    #[test]
    fn display() {
        let f: Polynomial = "2,0,-4,0,1".parse().unwrap();
        assert_eq!(f.to_string(), "X^4 - 4X^2 + 2");
    }

    #[test]
    fn quartic_family_scaling() {
        let r = |s: &str| s.parse::<Rational>().unwrap();
        let f = quartic_family_polynomial(&r("2"), &r("1"), &r("2")).unwrap();
        assert_eq!(f, "2,0,-4,0,1".parse().unwrap());
        // a = 3, b = 3/2, eps = 2: X^4 - 6X^2 + 9/2 → Y^4 - 24Y^2 + 72 with t = 2
        let f = quartic_family_polynomial(&r("3"), &r("3/2"), &r("2")).unwrap();
        assert_eq!(f, "72,0,-24,0,1".parse().unwrap());
    }
}
