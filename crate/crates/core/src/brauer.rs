//! Two-torsion Brauer classes over Q, stored as their sets of ramified places.
//!
//! A class in Br₂(Q) is determined by the places where its local invariant
//! is nontrivial. The group law is symmetric difference, so identities such
//! as `(z, z) = (z, -1)` hold by construction.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::arith::{Rational, SquareClass};
use crate::error::{Error, Result};
use crate::local::{self, Place};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BrauerClass {
    ramified: BTreeSet<Place>,
}

impl BrauerClass {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Builds a class from a ramification set, which must have even size.
    pub fn from_places(ramified: impl IntoIterator<Item = Place>) -> Result<Self> {
        let ramified: BTreeSet<Place> = ramified.into_iter().collect();
        if ramified.len() % 2 != 0 {
            return Err(Error::Invalid(
                "a Brauer class over Q ramifies at an even number of places".into(),
            ));
        }
        Ok(BrauerClass { ramified })
    }

    /// Class of the quaternion symbol on two square classes.
    pub fn cup_classes(a: &SquareClass, b: &SquareClass) -> Self {
        let ramified = local::support_of_classes([a, b])
            .into_iter()
            .filter(|&v| local::hilbert_sq(a, b, v) == -1)
            .collect();
        BrauerClass { ramified }
    }

    pub fn ramified(&self) -> &BTreeSet<Place> {
        &self.ramified
    }

    pub fn is_trivial(&self) -> bool {
        self.ramified.is_empty()
    }

    /// Local invariant as ±1.
    pub fn local_invariant(&self, v: Place) -> i8 {
        if self.ramified.contains(&v) {
            -1
        } else {
            1
        }
    }
}

/// Class of the quaternion algebra `(a, b)`.
pub fn cup(a: &Rational, b: &Rational) -> Result<BrauerClass> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Zero("cup"));
    }
    Ok(BrauerClass::cup_classes(
        &SquareClass::of(a)?,
        &SquareClass::of(b)?,
    ))
}

impl Add<&BrauerClass> for &BrauerClass {
    type Output = BrauerClass;

    fn add(self, rhs: &BrauerClass) -> BrauerClass {
        BrauerClass {
            ramified: self
                .ramified
                .symmetric_difference(&rhs.ramified)
                .copied()
                .collect(),
        }
    }
}

impl Add for BrauerClass {
    type Output = BrauerClass;

    fn add(self, rhs: BrauerClass) -> BrauerClass {
        &self + &rhs
    }
}

impl std::iter::Sum for BrauerClass {
    fn sum<I: Iterator<Item = BrauerClass>>(iter: I) -> Self {
        iter.fold(BrauerClass::trivial(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for BrauerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.ramified.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// Whether `x` becomes trivial in Br₂(Q(√d)).
///
/// A local invariant survives restriction exactly when the place splits in
/// Q(√d), i.e. when `d` is a square in the completion. At the real place this
/// means `d > 0`.
pub fn restricts_trivially_to_quadratic(x: &BrauerClass, d: &Rational) -> Result<bool> {
    if d.is_zero() {
        return Err(Error::Zero("restriction field"));
    }
    let dc = SquareClass::of(d)?;
    if dc.is_one() {
        return Err(Error::Invalid(format!("{d} is a square; Q(√{d}) is not a field")));
    }
    Ok(x.ramified.iter().all(|&v| !local::is_local_square(&dc, v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn places(list: &[u64]) -> BTreeSet<Place> {
        list.iter().map(|&p| Place::finite(p).unwrap()).collect()
    }

    #[test]
    fn cup_examples() {
        assert_eq!(cup(&q(-1), &q(3)).unwrap().ramified(), &places(&[2, 3]));
        assert!(cup(&q(-1), &q(5)).unwrap().is_trivial());
        assert!(cup(&q(1), &q(-7)).unwrap().is_trivial());
        let mut both = places(&[2]);
        both.insert(Place::Real);
        assert_eq!(cup(&q(-1), &q(-1)).unwrap().ramified(), &both);
        assert!(cup(&q(0), &q(1)).is_err());
    }

    #[test]
    fn group_law() {
        let x = cup(&q(-1), &q(7)).unwrap();
        assert!((&x + &x).is_trivial());
        let sum = &cup(&q(-1), &q(3)).unwrap() + &cup(&q(2), &q(3)).unwrap();
        assert_eq!(sum, cup(&q(-2), &q(3)).unwrap());
        assert_eq!(&BrauerClass::trivial() + &x, x);
    }

    #[test]
    fn restriction_examples() {
        let x = cup(&q(-1), &q(5)).unwrap();
        assert!(restricts_trivially_to_quadratic(&x, &q(5)).unwrap());
        let x = cup(&q(3), &q(-1)).unwrap();
        assert!(restricts_trivially_to_quadratic(&x, &q(2)).unwrap());
        let x = cup(&q(-1), &q(-1)).unwrap();
        assert!(!restricts_trivially_to_quadratic(&x, &q(2)).unwrap());
        // an imaginary quadratic field kills the real invariant
        assert!(restricts_trivially_to_quadratic(&x, &q(-1)).unwrap());
        assert!(restricts_trivially_to_quadratic(&x, &q(4)).is_err());
        assert!(restricts_trivially_to_quadratic(&x, &q(0)).is_err());
    }

    #[test]
    fn odd_ramification_rejected() {
        assert!(BrauerClass::from_places([Place::Real]).is_err());
        assert!(BrauerClass::from_places([Place::Real, Place::finite(2).unwrap()]).is_ok());
    }

    #[test]
    fn serializes_as_place_list() {
        let x = cup(&q(-1), &q(-3)).unwrap();
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"["real",3]"#);
    }
}
