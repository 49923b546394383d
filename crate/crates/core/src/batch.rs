//! Batch drivers. With the `parallel` feature (on by default) the work is
//! spread over the rayon pool; every driver has a `_seq` twin that always
//! runs on the calling thread.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::arith::Rational;
use crate::brauer;
use crate::error::Result;
use crate::forms::DiagonalForm;
use crate::sdnb::{self, Decision, GaloisAlgebraSpec};

fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

pub fn decide_all(specs: &[GaloisAlgebraSpec]) -> Vec<Result<Decision>> {
    map(specs, sdnb::decide_global)
}

pub fn decide_all_seq(specs: &[GaloisAlgebraSpec]) -> Vec<Result<Decision>> {
    specs.iter().map(sdnb::decide_global).collect()
}

/// Whether `(a, b)` has an even number of ramified places.
fn product_formula(pair: &(Rational, Rational)) -> Result<bool> {
    Ok(brauer::cup(&pair.0, &pair.1)?.ramified().len() % 2 == 0)
}

pub fn product_formula_all(pairs: &[(Rational, Rational)]) -> Vec<Result<bool>> {
    map(pairs, product_formula)
}

pub fn product_formula_all_seq(pairs: &[(Rational, Rational)]) -> Vec<Result<bool>> {
    pairs.iter().map(product_formula).collect()
}

/// Every ternary diagonal form `<a, b, c>` with `1 ≤ |a| ≤ |b| ≤ |c| ≤ bound`
/// (up to permutation of the entries) paired with its isotropy over Q.
pub fn ternary_isotropy(bound: i64) -> Vec<([i64; 3], Result<bool>)> {
    map(&ternary_forms(bound), |e| (*e, ternary_isotropic(e)))
}

pub fn ternary_isotropy_seq(bound: i64) -> Vec<([i64; 3], Result<bool>)> {
    ternary_forms(bound)
        .iter()
        .map(|e| (*e, ternary_isotropic(e)))
        .collect()
}

fn ternary_isotropic(e: &[i64; 3]) -> Result<bool> {
    DiagonalForm::from_i64(e)?.isotropic_over_q()
}

fn ternary_forms(bound: i64) -> Vec<[i64; 3]> {
    let values: Vec<i64> = (-bound..=bound).filter(|&x| x != 0).collect();
    let mut out = Vec::new();
    for (i, &a) in values.iter().enumerate() {
        for (j, &b) in values.iter().enumerate().skip(i) {
            for &c in &values[j..] {
                out.push([a, b, c]);
            }
        }
    }
    out
}
