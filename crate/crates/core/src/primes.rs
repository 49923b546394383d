//! Machine-word primality and factorization.
//!
//! Primality is deterministic Miller–Rabin over the first twelve primes,
//! which is exact for every `u64`. Composite cofactors are split with
//! Brent's variant of Pollard rho, bounded by a process-wide iteration
//! budget so that factoring never runs unbounded.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default number of rho iterations allowed per split attempt.
pub const DEFAULT_FACTOR_BUDGET: u64 = 1 << 22;

static FACTOR_BUDGET: AtomicU64 = AtomicU64::new(DEFAULT_FACTOR_BUDGET);

/// Caps the rho iterations spent on any single composite cofactor.
pub fn set_factor_budget(iterations: u64) {
    FACTOR_BUDGET.store(iterations.max(1), Ordering::Relaxed);
}

pub fn factor_budget() -> u64 {
    FACTOR_BUDGET.load(Ordering::Relaxed)
}

/// Trial-division bound for arbitrary-precision inputs.
const BIG_TRIAL_BOUND: u32 = 1 << 16;

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Finds a nontrivial divisor of an odd composite `n`.
fn split(n: u64, budget: u64) -> Option<u64> {
    let r = isqrt(n);
    if r * r == n {
        return Some(r);
    }
    let mut spent = 0u64;
    for c in 1..u64::MAX {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut ys, mut x) = (2u64, 2u64, 2u64);
        let mut q = 1u64;
        let mut g = 1u64;
        let mut power = 1u64;
        const BLOCK: u64 = 64;
        while g == 1 {
            x = y;
            for _ in 0..power {
                y = f(y);
            }
            let mut k = 0;
            while k < power && g == 1 {
                ys = y;
                let steps = BLOCK.min(power - k);
                for _ in 0..steps {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += steps;
                spent += steps;
            }
            power *= 2;
            if spent > budget {
                return None;
            }
        }
        if g == n {
            // Backtrack one step at a time from the last saved point.
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

/// Prime factorization of a nonzero `u64`, as sorted `(prime, exponent)` pairs.
pub fn factor_u64(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::Zero("factor"));
    }
    let mut primes: Vec<u64> = Vec::new();
    let mut rest = n;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while rest % p == 0 {
            primes.push(p);
            rest /= p;
        }
    }
    let mut p = 53u64;
    while p < 1000 && p * p <= rest {
        while rest % p == 0 {
            primes.push(p);
            rest /= p;
        }
        p += 2;
    }
    let budget = factor_budget();
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            primes.push(m);
            continue;
        }
        let d = split(m, budget).ok_or_else(|| Error::FactorBudgetExceeded(n.to_string()))?;
        stack.push(d);
        stack.push(m / d);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    Ok(out)
}

/// Factors an arbitrary-precision positive integer. Inputs beyond 64 bits
/// are trial-divided up to 2^16; the cofactor must then fit in a `u64`.
pub fn factor_biguint(n: &BigUint) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::Zero("factor"));
    }
    if let Some(small) = n.to_u64() {
        return factor_u64(small);
    }
    let mut rest = n.clone();
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut p = 2u32;
    while p < BIG_TRIAL_BOUND {
        let big_p = BigUint::from(p);
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&big_p);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((p as u64, e));
        }
        if rest.is_one() {
            return Ok(out);
        }
        if let Some(small) = rest.to_u64() {
            let tail = factor_u64(small)?;
            out.extend(tail);
            return Ok(out);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // a large cofactor is still tractable when it is a perfect power
    for k in [2u32, 3, 5, 7] {
        let root = rest.nth_root(k);
        if root.pow(k) == rest {
            let mut merged: std::collections::BTreeMap<u64, u32> = out.into_iter().collect();
            for (q, e) in factor_biguint(&root)? {
                *merged.entry(q).or_default() += e * k;
            }
            return Ok(merged.into_iter().collect());
        }
    }
    Err(Error::FactorBudgetExceeded(n.to_string()))
}

/// Jacobi symbol `(a | n)` for odd positive `n`.
pub fn jacobi(a: u64, n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut a = a % n;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn perfect_power_beyond_u64() {
        let p = BigUint::from(4_294_967_311u64);
        let n = p.pow(3) * BigUint::from(12u32);
        assert_eq!(
            factor_biguint(&n).unwrap(),
            vec![(2, 2), (3, 1), (4_294_967_311, 3)]
        );
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000 {
            assert_eq!(is_prime(n), naive_is_prime(n), "n = {n}");
        }
        // strong pseudoprimes to several small bases
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(3_825_123_056_546_413_051));
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn factors_semiprimes() {
        let p = 4_294_967_291u64;
        let q = 4_294_967_279u64;
        assert_eq!(factor_u64(p * q).unwrap(), vec![(q, 1), (p, 1)]);
        assert_eq!(factor_u64(1).unwrap(), vec![]);
        assert_eq!(factor_u64(360).unwrap(), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor_u64(1_000_003 * 1_000_003).unwrap(), vec![(1_000_003, 2)]);
    }

    #[test]
    fn factors_beyond_u64_with_small_part() {
        let n = BigUint::from(u64::MAX - 58) * BigUint::from(6u32); // (2^64 - 59) is prime
        assert_eq!(
            factor_biguint(&n).unwrap(),
            vec![(2, 1), (3, 1), (u64::MAX - 58, 1)]
        );
        let huge = BigUint::from(u64::MAX - 58) * BigUint::from(u64::MAX - 82);
        assert!(matches!(
            factor_biguint(&huge),
            Err(Error::FactorBudgetExceeded(_))
        ));
    }

    #[test]
    fn jacobi_small() {
        for p in [3u64, 5, 7, 11, 13] {
            let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
            for a in 1..p {
                let expected = if squares.contains(&a) { 1 } else { -1 };
                assert_eq!(jacobi(a, p), expected);
            }
            assert_eq!(jacobi(0, p), 0);
        }
    }
}
