//! Involution-stable simple factors of Q[G] for the supported groups, and
//! local splitting data of their centers.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{Rational, SquareClass};
use crate::error::{Error, Result};
use crate::local::{self, Place};
use crate::primes;

/// Groups with a known factor table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    /// Abelian group given by invariant factors `n₁ | n₂ | …`.
    Abelian(Vec<u64>),
    D4,
    A4,
    /// Only the degree-3 orthogonal factor of Q[A₅] is modelled.
    A5Demo,
}

const MAX_ABELIAN_ORDER: u64 = 1 << 20;

impl GroupDescriptor {
    /// Abelian group from arbitrary cyclic factors, normalized to invariant factors.
    pub fn abelian(cyclic_factors: &[u64]) -> Result<Self> {
        if cyclic_factors.contains(&0) {
            return Err(Error::Invalid("cyclic factors must be positive".into()));
        }
        let order: u64 = cyclic_factors.iter().product();
        if order > MAX_ABELIAN_ORDER {
            return Err(Error::Unsupported(format!("abelian group of order {order}")));
        }
        // primary decomposition, then recombine largest prime powers
        let mut by_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
        for &n in cyclic_factors {
            for (p, e) in primes::factor_u64(n)? {
                by_prime.entry(p).or_default().push(p.pow(e));
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut invariants = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, q) in invariants.iter_mut().rev().zip(powers.iter()) {
                *slot *= q;
            }
        }
        if invariants.is_empty() {
            return Err(Error::Invalid("trivial group".into()));
        }
        Ok(GroupDescriptor::Abelian(invariants))
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::abelian(&[n])
    }

    pub fn order(&self) -> u64 {
        match self {
            GroupDescriptor::Abelian(f) => f.iter().product(),
            GroupDescriptor::D4 => 8,
            GroupDescriptor::A4 => 12,
            GroupDescriptor::A5Demo => 60,
        }
    }

    /// `Some(n)` when the group is cyclic of order `2^n`.
    pub fn cyclic_two_power_exponent(&self) -> Option<u32> {
        match self {
            GroupDescriptor::Abelian(f) if f.len() == 1 && f[0].is_power_of_two() => {
                Some(f[0].trailing_zeros())
            }
            _ => None,
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Abelian(inv) => {
                let parts: Vec<String> = inv.iter().map(|n| format!("C{n}")).collect();
                f.write_str(&parts.join("x"))
            }
            GroupDescriptor::D4 => f.write_str("D4"),
            GroupDescriptor::A4 => f.write_str("A4"),
            GroupDescriptor::A5Demo => f.write_str("A5"),
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    /// `C8`, `C2xC6`, `D4`, `A4`, `A5`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_uppercase().as_str() {
            "D4" => return Ok(GroupDescriptor::D4),
            "A4" => return Ok(GroupDescriptor::A4),
            "A5" | "A5DEMO" => return Ok(GroupDescriptor::A5Demo),
            _ => {}
        }
        let factors = t
            .split(['x', 'X', '×'])
            .map(|part| {
                part.trim()
                    .strip_prefix(['C', 'c'])
                    .and_then(|n| n.parse::<u64>().ok())
                    .filter(|&n| n >= 2)
                    .ok_or_else(|| Error::Parse(format!("unknown group {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        GroupDescriptor::abelian(&factors)
    }
}

impl Serialize for GroupDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorKind {
    /// A copy of Q on which G acts through a character of order ≤ 2.
    DegreeOne,
    Orthogonal,
    Unitary,
}

/// Center `F_A` of a factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Center {
    /// Q(ζ_m).
    Cyclotomic(u64),
    /// Named center of a nonabelian matrix factor.
    Tagged(String),
}

/// Fixed field `E_A` of the involution on the center.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FixedField {
    Rationals,
    /// Q(ζ_m)⁺ of degree φ(m)/2 ≥ 2.
    RealCyclotomic(u64),
    /// Q(√d), `d` squarefree.
    Quadratic(i64),
}

impl FixedField {
    pub fn degree(&self) -> u64 {
        match self {
            FixedField::Rationals => 1,
            FixedField::RealCyclotomic(m) => euler_phi(*m) / 2,
            FixedField::Quadratic(_) => 2,
        }
    }
}

impl fmt::Display for FixedField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixedField::Rationals => f.write_str("Q"),
            FixedField::RealCyclotomic(m) => write!(f, "Q(zeta{m})+"),
            FixedField::Quadratic(d) => write!(f, "Q(sqrt({d}))"),
        }
    }
}

impl Serialize for FixedField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FixedField {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let bad = || serde::de::Error::custom(format!("unknown field descriptor {s:?}"));
        if s == "Q" {
            return Ok(FixedField::Rationals);
        }
        if let Some(m) = s.strip_prefix("Q(zeta").and_then(|r| r.strip_suffix(")+")) {
            return m.parse().map(FixedField::RealCyclotomic).map_err(|_| bad());
        }
        if let Some(d) = s.strip_prefix("Q(sqrt(").and_then(|r| r.strip_suffix("))")) {
            return d.parse().map(FixedField::Quadratic).map_err(|_| bad());
        }
        Err(bad())
    }
}

/// One involution-stable simple factor `A` of Q[G].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDescriptor {
    pub id: String,
    pub kind: FactorKind,
    #[serde(rename = "conductor")]
    pub center: Center,
    #[serde(rename = "E")]
    pub fixed_field: FixedField,
    /// A is a matrix algebra over its center.
    pub split: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl FactorDescriptor {
    fn cyclotomic(id: String, m: u64) -> Self {
        let (kind, fixed_field) = match m {
            1 | 2 => (FactorKind::DegreeOne, FixedField::Rationals),
            3 | 4 | 6 => (FactorKind::Unitary, FixedField::Rationals),
            _ => (FactorKind::Unitary, FixedField::RealCyclotomic(m)),
        };
        FactorDescriptor {
            id,
            kind,
            center: Center::Cyclotomic(m),
            fixed_field,
            split: true,
            note: None,
        }
    }

    /// Dimension over Q of the center.
    pub fn center_degree(&self) -> u64 {
        match &self.center {
            Center::Cyclotomic(m) => euler_phi(*m),
            Center::Tagged(_) => self.fixed_field.degree(),
        }
    }
}

pub fn euler_phi(m: u64) -> u64 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u64
}

fn element_orders(invariants: &[u64]) -> Vec<u64> {
    let mut orders = vec![1u64];
    for &n in invariants {
        let mut next = Vec::with_capacity(orders.len() * n as usize);
        for o in &orders {
            for k in 0..n {
                let ok = n / k.gcd(&n);
                next.push(o.lcm(&ok));
            }
        }
        orders = next;
    }
    orders
}

/// Involution-stable simple factors of Q[G].
pub fn decompose(group: &GroupDescriptor) -> Result<Vec<FactorDescriptor>> {
    match group {
        GroupDescriptor::Abelian(inv) => {
            if let Some(n) = group.cyclic_two_power_exponent() {
                let mut out = vec![FactorDescriptor::cyclotomic("Q".into(), 1)];
                for i in 1..=n {
                    out.push(FactorDescriptor::cyclotomic(format!("A({i})"), 1 << i));
                }
                return Ok(out);
            }
            // one factor Q(ζ_m) per Galois orbit of characters of order m;
            // the dual group is isomorphic to G, so count elements by order
            let orders = element_orders(inv);
            let mut counts: std::collections::BTreeMap<u64, u64> = Default::default();
            for o in orders {
                *counts.entry(o).or_default() += 1;
            }
            let mut out = Vec::new();
            for (m, count) in counts {
                let copies = count / euler_phi(m);
                for j in 0..copies {
                    let id = if m == 1 {
                        "Q".to_string()
                    } else if copies == 1 {
                        format!("Q(zeta{m})")
                    } else {
                        format!("Q(zeta{m})#{j}")
                    };
                    out.push(FactorDescriptor::cyclotomic(id, m));
                }
            }
            Ok(out)
        }
        GroupDescriptor::D4 => {
            let mut out = vec![FactorDescriptor::cyclotomic("Q".into(), 1)];
            for j in 1..=3 {
                out.push(FactorDescriptor::cyclotomic(format!("sign{j}"), 2));
            }
            out.push(FactorDescriptor {
                id: "M2(Q)".into(),
                kind: FactorKind::Orthogonal,
                center: Center::Tagged("D4-degree-2".into()),
                fixed_field: FixedField::Rationals,
                split: true,
                note: None,
            });
            Ok(out)
        }
        GroupDescriptor::A4 => {
            let hypothesis = "table assumes the base field contains the third roots of unity; \
                              over Q the two order-3 characters form one unitary factor Q(zeta3)";
            let mut zeta3 = FactorDescriptor::cyclotomic("Q(zeta3)".into(), 3);
            zeta3.note = Some(hypothesis.into());
            Ok(vec![
                FactorDescriptor::cyclotomic("Q".into(), 1),
                zeta3,
                FactorDescriptor {
                    id: "M3(Q)".into(),
                    kind: FactorKind::Orthogonal,
                    center: Center::Tagged("A4-degree-3".into()),
                    fixed_field: FixedField::Rationals,
                    split: true,
                    note: Some(hypothesis.into()),
                },
            ])
        }
        GroupDescriptor::A5Demo => Ok(vec![FactorDescriptor {
            id: "M3(Q(sqrt5))".into(),
            kind: FactorKind::Orthogonal,
            center: Center::Tagged("A5-degree-3".into()),
            fixed_field: FixedField::Quadratic(5),
            split: true,
            note: Some("only the degree-3 orthogonal factor is modelled".into()),
        }]),
    }
}

/// Parity of the local degree `n_A^v` of `E_A` and the bit `ε_A^v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalData {
    pub n_odd: bool,
    /// 1 when the places of `E_A` over `v` stay inert or ramify in `F_A`.
    pub epsilon: u8,
}

/// Decomposition group of `p` in `(Z/m)^×`, as a list of residues.
fn decomposition_group(m: u64, p: u64) -> Vec<u64> {
    let mut rest = m;
    while rest % p == 0 {
        rest /= p;
    }
    // inertia is everything modulo the p-part; Frobenius generates the rest
    let mut frob = vec![1 % rest];
    let mut x = p % rest;
    while rest > 1 && x != 1 {
        frob.push(x);
        x = primes::mul_mod(x, p, rest);
    }
    (1..m.max(2))
        .filter(|u| u.gcd(&m) == 1 && frob.contains(&(u % rest)))
        .collect()
}

/// Local data at a finite prime for the center `Q(ζ_m)` (when
/// `real_subfield` is false) or for `E = Q(ζ_m)⁺` inside `F = Q(ζ_m)`.
pub fn local_data(m: u64, real_subfield: bool, v: Place) -> Result<LocalData> {
    let Some(p) = v.prime() else {
        return Err(Error::Invalid(
            "local data is defined at finite places; the real place uses the split-at-real test".into(),
        ));
    };
    if m == 0 {
        return Err(Error::Zero("conductor"));
    }
    let group = decomposition_group(m, p);
    let full = group.len() as u64;
    if !real_subfield || m <= 2 {
        return Ok(LocalData {
            n_odd: full % 2 == 1,
            epsilon: 0,
        });
    }
    let conj_in = group.contains(&(m - 1));
    let e_degree = if conj_in { full / 2 } else { full };
    Ok(LocalData {
        n_odd: e_degree % 2 == 1,
        epsilon: conj_in as u8,
    })
}

/// Whether the local degree of `E` at `v` is odd, for a factor's fixed field.
pub fn fixed_field_degree_odd(e: &FixedField, v: Place) -> Result<bool> {
    match e {
        FixedField::Rationals => Ok(true),
        FixedField::RealCyclotomic(m) => Ok(local_data(*m, true, v)?.n_odd),
        FixedField::Quadratic(d) => {
            let class = SquareClass::of(&Rational::from(*d))?;
            Ok(local::is_local_square(&class, v))
        }
    }
}
