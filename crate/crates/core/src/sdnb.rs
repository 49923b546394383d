//! G-Galois algebra families, their degree-2 invariants, and the local and
//! global self-dual normal basis decisions.
//!
//! Every supported algebra is induced from an étale algebra `K` (a quadratic
//! or cyclic 2-power field, or the quartic of an A₄ extension) through a
//! homomorphism from the absolute Galois group with image `H ⊆ G`. The
//! invariants `c_A(L)` (orthogonal factors) and `d_A(L)` (unitary factors)
//! are computed from closed forms in terms of the trace form of `K`, and the
//! global decision evaluates the real-place condition plus the place-wise
//! conditions at the finitely many places where an invariant ramifies.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{Rational, SquareClass};
use crate::brauer::{self, BrauerClass};
use crate::error::{Error, Result};
use crate::forms::{self, DiagonalForm};
use crate::groups::{self, Center, FactorDescriptor, FactorKind, FixedField, GroupDescriptor};
use crate::local::Place;
use crate::poly::Polynomial;

/// How the algebra arises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// The split algebra (trivial homomorphism).
    Split,
    /// Induced from `Q(√z)` into `C_{2^n}`.
    CyclicQuadratic { z: Rational },
    /// Induced from `Q(√(a + b√ε))` with `a² − b²ε = c²ε`, cyclic quartic.
    CyclicQuartic {
        a: Rational,
        b: Rational,
        c: Rational,
        epsilon: Rational,
    },
    /// Induced from `Q[X]/(f)`, asserted cyclic of 2-power degree.
    CyclicPoly { f: Polynomial },
    /// D₄ algebra induced from `Q(√z)` along a subgroup of order 2.
    D4Quadratic { z: Rational },
    /// A₄ algebra whose quartic subalgebra (fixed by A₃) is `Q[X]/(f)`.
    A4Quartic { f: Polynomial },
    /// A₅ algebra induced from `Q(√z)` along a product of two transpositions.
    A5Quadratic { z: Rational },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Split => "split",
            Family::CyclicQuadratic { .. } => "cyclic-quadratic",
            Family::CyclicQuartic { .. } => "cyclic-quartic",
            Family::CyclicPoly { .. } => "cyclic-poly",
            Family::D4Quadratic { .. } => "d4-quadratic",
            Family::A4Quartic { .. } => "a4-quartic",
            Family::A5Quadratic { .. } => "a5-quadratic",
        }
    }
}

/// A validated G-Galois algebra specification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecWire", into = "SpecWire")]
pub struct GaloisAlgebraSpec {
    group: GroupDescriptor,
    family: Family,
}

fn nonsquare(z: &Rational, what: &str) -> Result<SquareClass> {
    if z.is_zero() {
        return Err(Error::Invalid(format!("{what} must be nonzero")));
    }
    let class = SquareClass::of(z)?;
    if class.is_one() {
        return Err(Error::Invalid(format!("{what} = {z} must be a nonsquare")));
    }
    Ok(class)
}

impl GaloisAlgebraSpec {
    pub fn new(group: GroupDescriptor, family: Family) -> Result<Self> {
        let two_power = group.cyclic_two_power_exponent();
        let need_cyclic = |min_n: u32| match two_power {
            Some(n) if n >= min_n => Ok(n),
            _ => Err(Error::Invalid(format!(
                "family {} needs a cyclic group of order 2^n with n ≥ {min_n}, got {group}",
                family.name()
            ))),
        };
        match &family {
            Family::Split => {}
            Family::CyclicQuadratic { z } => {
                need_cyclic(2)?;
                nonsquare(z, "z")?;
            }
            Family::CyclicQuartic { a, b, c, epsilon } => {
                need_cyclic(3)?;
                forms::validate_quartic_family(a, b, c, epsilon)?;
            }
            Family::CyclicPoly { f } => {
                let n = need_cyclic(1)?;
                let m = f.degree() as u64;
                if !m.is_power_of_two() || m > 1 << n {
                    return Err(Error::Invalid(format!(
                        "degree {m} must be a power of two dividing {}",
                        1u64 << n
                    )));
                }
                if !f.is_irreducible()? {
                    return Err(Error::Invalid(format!("{f} is reducible")));
                }
            }
            Family::D4Quadratic { z } | Family::A5Quadratic { z } => {
                let expected = if matches!(family, Family::D4Quadratic { .. }) {
                    GroupDescriptor::D4
                } else {
                    GroupDescriptor::A5Demo
                };
                if group != expected {
                    return Err(Error::Invalid(format!(
                        "family {} needs group {expected}",
                        family.name()
                    )));
                }
                if z.is_zero() {
                    return Err(Error::Invalid("z must be nonzero".into()));
                }
            }
            Family::A4Quartic { f } => {
                if group != GroupDescriptor::A4 {
                    return Err(Error::Invalid("family a4-quartic needs group A4".into()));
                }
                if f.degree() != 4 {
                    return Err(Error::Invalid("a4-quartic needs a quartic polynomial".into()));
                }
                forms::trace_form(f)?;
            }
        }
        Ok(GaloisAlgebraSpec { group, family })
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn cyclic_quadratic(n: u32, z: Rational) -> Result<Self> {
        Self::new(GroupDescriptor::cyclic(1 << n)?, Family::CyclicQuadratic { z })
    }

    pub fn cyclic_quartic(
        n: u32,
        a: Rational,
        b: Rational,
        c: Rational,
        epsilon: Rational,
    ) -> Result<Self> {
        Self::new(
            GroupDescriptor::cyclic(1 << n)?,
            Family::CyclicQuartic { a, b, c, epsilon },
        )
    }

    pub fn cyclic_poly(n: u32, f: Polynomial) -> Result<Self> {
        Self::new(GroupDescriptor::cyclic(1 << n)?, Family::CyclicPoly { f })
    }

    pub fn split(group: GroupDescriptor) -> Self {
        GaloisAlgebraSpec {
            group,
            family: Family::Split,
        }
    }

    pub fn d4_quadratic(z: Rational) -> Result<Self> {
        Self::new(GroupDescriptor::D4, Family::D4Quadratic { z })
    }

    pub fn a4_quartic(f: Polynomial) -> Result<Self> {
        Self::new(GroupDescriptor::A4, Family::A4Quartic { f })
    }

    pub fn a5_quadratic(z: Rational) -> Result<Self> {
        Self::new(GroupDescriptor::A5Demo, Family::A5Quadratic { z })
    }

    /// Degree over Q of the field `K` the algebra is induced from, which is
    /// also the order of the image `H`.
    pub fn image_order(&self) -> u64 {
        match &self.family {
            Family::Split => 1,
            Family::CyclicQuadratic { .. } => 2,
            Family::CyclicQuartic { .. } => 4,
            Family::CyclicPoly { f } => f.degree() as u64,
            Family::D4Quadratic { z } | Family::A5Quadratic { z } => {
                if SquareClass::of(z).map(|c| c.is_one()).unwrap_or(false) {
                    1
                } else {
                    2
                }
            }
            // image is A₄ or a subgroup acting transitively on the quartic roots
            Family::A4Quartic { .. } => 12,
        }
    }

    /// Trace form of the induced-from field `K` (of `E` for A₄), diagonalized.
    pub fn trace_form_of_k(&self) -> Result<DiagonalForm> {
        match &self.family {
            Family::Split => DiagonalForm::from_i64(&[1]),
            Family::CyclicQuadratic { z } | Family::D4Quadratic { z } | Family::A5Quadratic { z } => {
                DiagonalForm::new(vec![Rational::from(2), Rational::from(2) * z.clone()])
            }
            Family::CyclicQuartic { a, b, c, epsilon } => forms::quartic_family_form(a, b, c, epsilon),
            Family::CyclicPoly { f } | Family::A4Quartic { f } => {
                forms::diagonalize(&forms::trace_form(f)?)
            }
        }
    }
}

/// JSON layout: `{"group": "C8", "family": "cyclic-quadratic", "z": "3"}`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecWire {
    pub group: String,
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<Polynomial>,
}

impl TryFrom<SpecWire> for GaloisAlgebraSpec {
    type Error = Error;

    fn try_from(w: SpecWire) -> Result<Self> {
        let group: GroupDescriptor = w.group.parse()?;
        let need = |v: Option<Rational>, name: &str| {
            v.ok_or_else(|| Error::Invalid(format!("family {} requires {name}", w.family)))
        };
        let family = match w.family.as_str() {
            "split" => Family::Split,
            "cyclic-quadratic" => Family::CyclicQuadratic { z: need(w.z.clone(), "z")? },
            "cyclic-quartic" => Family::CyclicQuartic {
                a: need(w.a.clone(), "a")?,
                b: need(w.b.clone(), "b")?,
                c: need(w.c.clone(), "c")?,
                epsilon: need(w.epsilon.clone(), "epsilon")?,
            },
            "cyclic-poly" => Family::CyclicPoly {
                f: w.poly.clone().ok_or_else(|| Error::Invalid("cyclic-poly requires poly".into()))?,
            },
            "d4-quadratic" => Family::D4Quadratic { z: need(w.z.clone(), "z")? },
            "a4-quartic" => Family::A4Quartic {
                f: w.poly.clone().ok_or_else(|| Error::Invalid("a4-quartic requires poly".into()))?,
            },
            "a5-quadratic" => Family::A5Quadratic { z: need(w.z.clone(), "z")? },
            other => return Err(Error::Invalid(format!("unknown family {other:?}"))),
        };
        GaloisAlgebraSpec::new(group, family)
    }
}

impl From<GaloisAlgebraSpec> for SpecWire {
    fn from(s: GaloisAlgebraSpec) -> Self {
        let mut w = SpecWire {
            group: s.group.to_string(),
            family: s.family.name().to_string(),
            ..Default::default()
        };
        match s.family {
            Family::Split => {}
            Family::CyclicQuadratic { z } | Family::D4Quadratic { z } | Family::A5Quadratic { z } => {
                w.z = Some(z)
            }
            Family::CyclicQuartic { a, b, c, epsilon } => {
                w.a = Some(a);
                w.b = Some(b);
                w.c = Some(c);
                w.epsilon = Some(epsilon);
            }
            Family::CyclicPoly { f } | Family::A4Quartic { f } => w.poly = Some(f),
        }
        w
    }
}

impl fmt::Display for GaloisAlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.group, self.family.name())?;
        match &self.family {
            Family::Split => Ok(()),
            Family::CyclicQuadratic { z } | Family::D4Quadratic { z } | Family::A5Quadratic { z } => {
                write!(f, " z={z}")
            }
            Family::CyclicQuartic { a, b, c, epsilon } => {
                write!(f, " a={a} b={b} c={c} epsilon={epsilon}")
            }
            Family::CyclicPoly { f: p } | Family::A4Quartic { f: p } => write!(f, " f={p}"),
        }
    }
}

/// `φ(Γ) ⊆ G²`.
pub fn h1_condition(spec: &GaloisAlgebraSpec) -> bool {
    match (&spec.family, spec.group.cyclic_two_power_exponent()) {
        (Family::Split, _) => true,
        (Family::D4Quadratic { .. }, _) => spec.image_order() <= 2,
        (Family::A4Quartic { .. } | Family::A5Quadratic { .. }, _) => true,
        // G² is the subgroup of index 2, of order 2^{n-1}
        (_, Some(n)) => spec.image_order() <= 1 << (n - 1),
        (_, None) => false,
    }
}

/// Top unitary invariant `d_{A(n)}(L)` of a cyclic 2-power algebra.
///
/// For `[K:Q] = 2` this is `(z, −1)`; the general expression
/// `w₂(q_K) + (2)(D_K)` is only valid for `[K:Q] ≥ 4` and would give
/// `(2, −1) = 0` here.
pub fn d_top(spec: &GaloisAlgebraSpec) -> Result<BrauerClass> {
    if spec.group.cyclic_two_power_exponent().is_none() {
        return Err(Error::Unsupported(format!(
            "d_top needs a cyclic 2-power group, got {}",
            spec.group
        )));
    }
    if !h1_condition(spec) {
        return Err(Error::H1Violated("d_A(L)"));
    }
    let qk = spec.trace_form_of_k()?;
    match spec.image_order() {
        1 => Ok(BrauerClass::trivial()),
        2 => Ok(BrauerClass::cup_classes(
            &qk.det_class()?,
            &SquareClass::minus_one(),
        )),
        _ => lifting_obstruction(&qk),
    }
}

/// `w₂(q_K) + (2)(D_K)`.
fn lifting_obstruction(qk: &DiagonalForm) -> Result<BrauerClass> {
    let two = SquareClass::of(&Rational::from(2))?;
    Ok(&qk.hasse_witt()? + &BrauerClass::cup_classes(&two, &qk.det_class()?))
}

/// Obstruction to embedding the cyclic field `Q[X]/(f)` of 2-power degree
/// `m ≥ 4` into a cyclic extension of degree `2m`.
pub fn embedding_obstruction(f: &Polynomial) -> Result<BrauerClass> {
    let m = f.degree();
    if !m.is_power_of_two() || m < 4 {
        return Err(Error::Invalid(format!(
            "degree {m} must be a power of two and at least 4"
        )));
    }
    if !f.is_irreducible()? {
        return Err(Error::Invalid(format!("{f} is reducible")));
    }
    lifting_obstruction(&forms::diagonalize(&forms::trace_form(f)?)?)
}

/// Trace form data of `K` carried in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceFormData {
    pub diagonal: DiagonalForm,
    pub det_class: Rational,
    pub signature: (usize, usize),
    pub hasse_witt: BrauerClass,
}

/// Value of the invariant attached to one factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum InvariantValue {
    Class { class: BrauerClass },
    Zero { reason: String },
    NotComputed { reason: String },
}

impl InvariantValue {
    pub fn class(&self) -> Option<&BrauerClass> {
        match self {
            InvariantValue::Class { class } => Some(class),
            _ => None,
        }
    }

    /// Zero in Br₂(Q), either by vanishing or as a trivial class.
    pub fn is_zero(&self) -> bool {
        match self {
            InvariantValue::Class { class } => class.is_trivial(),
            InvariantValue::Zero { .. } => true,
            InvariantValue::NotComputed { .. } => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorInvariant {
    pub factor: FactorDescriptor,
    /// `c` for orthogonal and degree-one factors, `d` for unitary ones.
    pub invariant: char,
    pub value: InvariantValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub spec: GaloisAlgebraSpec,
    pub h1: bool,
    pub trace_form: TraceFormData,
    pub factors: Vec<FactorInvariant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditional: Option<String>,
}

const A4_HYPOTHESIS: &str =
    "computed under the hypothesis that the base field contains the third roots of unity";

/// All factor invariants of `spec`.
pub fn invariants(spec: &GaloisAlgebraSpec) -> Result<InvariantReport> {
    let qk = spec.trace_form_of_k()?;
    let trace_form = TraceFormData {
        det_class: qk.det_square_class()?,
        signature: qk.signature(),
        hasse_witt: qk.hasse_witt()?,
        diagonal: qk,
    };
    let h1 = h1_condition(spec);
    let table = groups::decompose(&spec.group)?;
    let top_id = spec
        .group
        .cyclic_two_power_exponent()
        .map(|n| format!("A({n})"));
    let mut conditional = None;
    let mut factors = Vec::with_capacity(table.len());
    for factor in table {
        let invariant = if factor.kind == FactorKind::Unitary { 'd' } else { 'c' };
        let zero = |reason: &str| InvariantValue::Zero { reason: reason.into() };
        let value = if !h1 {
            InvariantValue::NotComputed {
                reason: "H1-condition fails; the invariants are undefined".into(),
            }
        } else if matches!(spec.family, Family::Split) {
            zero("split algebra")
        } else if factor.kind == FactorKind::DegreeOne {
            zero("degree-one factor: its unitary group has order 2 and the H1-condition trivializes it")
        } else {
            match &spec.family {
                Family::CyclicQuadratic { .. }
                | Family::CyclicQuartic { .. }
                | Family::CyclicPoly { .. } => {
                    if Some(&factor.id) == top_id.as_ref() {
                        InvariantValue::Class { class: d_top(spec)? }
                    } else {
                        zero("unitary factor other than the top one A(n): the extension of the image splits")
                    }
                }
                Family::D4Quadratic { z } => InvariantValue::Class {
                    class: brauer::cup(z, &Rational::from(-1))?,
                },
                Family::A5Quadratic { z } => InvariantValue::Class {
                    class: brauer::cup(&Rational::from(-1), z)?,
                },
                Family::A4Quartic { .. } => {
                    conditional = Some(A4_HYPOTHESIS.to_string());
                    if factor.kind == FactorKind::Orthogonal {
                        InvariantValue::Class {
                            class: trace_form.hasse_witt.clone(),
                        }
                    } else {
                        InvariantValue::NotComputed {
                            reason: "over a field with third roots of unity this factor splits into degree-one factors".into(),
                        }
                    }
                }
                Family::Split => unreachable!(),
            }
        };
        factors.push(FactorInvariant {
            factor,
            invariant,
            value,
        });
    }
    Ok(InvariantReport {
        spec: spec.clone(),
        h1,
        trace_form,
        factors,
        conditional,
    })
}

/// Orthogonal-factor invariants `c_A(L)`, including the degree-one factors.
pub fn c_invariants(spec: &GaloisAlgebraSpec) -> Result<Vec<FactorInvariant>> {
    if !h1_condition(spec) {
        return Err(Error::H1Violated("c_A(L)"));
    }
    Ok(invariants(spec)?
        .factors
        .into_iter()
        .filter(|f| f.factor.kind != FactorKind::Unitary)
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "Yes",
            Verdict::No => "No",
            Verdict::Unknown => "Unknown",
        })
    }
}

/// Where a certificate condition was evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Site {
    H1,
    /// A statement about a class over Q rather than at one place.
    Global,
    At(Place),
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::H1 => f.write_str("H1"),
            Site::Global => f.write_str("global"),
            Site::At(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Site {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Site::H1 => s.serialize_str("H1"),
            Site::Global => s.serialize_str("global"),
            Site::At(v) => v.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Site {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Str(s) if s == "H1" => Ok(Site::H1),
            Repr::Str(s) if s == "global" => Ok(Site::Global),
            Repr::Str(s) => s.parse().map(Site::At).map_err(serde::de::Error::custom),
            Repr::Num(p) => Place::finite(p).map(Site::At).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    H1,
    RealSplit,
    /// Vanishing of `c_A(L)` at a place.
    Orthogonal,
    /// Vanishing of `d_A(L)` at a place.
    Unitary,
    /// An invariant that vanishes globally.
    Vanishing,
    /// Informational entry; the decision is not derived from it.
    Note,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub condition: Condition,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<String>,
    pub place: Site,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub spec: GaloisAlgebraSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub place: Option<Place>,
    pub certificate: Vec<CertificateEntry>,
}

impl Decision {
    /// Entries that failed.
    pub fn failures(&self) -> impl Iterator<Item = &CertificateEntry> {
        self.certificate.iter().filter(|e| !e.passed)
    }
}

/// Whether a finite place binds the condition for `factor`, with a short
/// explanation of the filter.
fn binding_at(factor: &FactorDescriptor, v: Place) -> Result<(bool, String)> {
    match factor.kind {
        FactorKind::Unitary => {
            let Center::Cyclotomic(m) = factor.center else {
                return Err(Error::Unsupported(format!("unitary factor {}", factor.id)));
            };
            let data = groups::local_data(m, true, v)?;
            let bind = data.n_odd && data.epsilon == 1;
            let why = format!(
                "n_A^v {} for E = {}, epsilon_A^v = {}",
                if data.n_odd { "odd" } else { "even" },
                factor.fixed_field,
                data.epsilon
            );
            Ok((bind, why))
        }
        FactorKind::Orthogonal | FactorKind::DegreeOne => {
            let odd = groups::fixed_field_degree_odd(&factor.fixed_field, v)?;
            let bind = odd && factor.split;
            let why = format!(
                "n_A^v {} for E = {}, A^v {}",
                if odd { "odd" } else { "even" },
                factor.fixed_field,
                if factor.split { "split" } else { "not split" }
            );
            Ok((bind, why))
        }
    }
}

fn condition_for(kind: FactorKind) -> Condition {
    match kind {
        FactorKind::Unitary => Condition::Unitary,
        _ => Condition::Orthogonal,
    }
}

/// Place-wise evaluation of every factor invariant at the given finite places
/// (all ramified finite places when `only` is `None`).
fn factor_entries(report: &InvariantReport, only: Option<Place>) -> Result<Vec<CertificateEntry>> {
    let mut out = Vec::new();
    for fi in &report.factors {
        let id = Some(fi.factor.id.clone());
        match &fi.value {
            InvariantValue::Zero { reason } => out.push(CertificateEntry {
                condition: Condition::Vanishing,
                factor: id,
                place: Site::Global,
                passed: true,
                detail: format!("{}_A(L) = 0: {reason}", fi.invariant),
            }),
            InvariantValue::NotComputed { reason } => out.push(CertificateEntry {
                condition: Condition::Note,
                factor: id,
                place: Site::Global,
                passed: true,
                detail: format!("{}_A(L) not computed: {reason}", fi.invariant),
            }),
            InvariantValue::Class { class } => {
                if class.is_trivial() {
                    out.push(CertificateEntry {
                        condition: Condition::Vanishing,
                        factor: id.clone(),
                        place: Site::Global,
                        passed: true,
                        detail: format!("{}_A(L) is the trivial class", fi.invariant),
                    });
                }
                let places: Vec<Place> = match only {
                    Some(v) => vec![v],
                    None => class.ramified().iter().copied().collect(),
                };
                for v in places {
                    if v == Place::Real {
                        out.push(CertificateEntry {
                            condition: Condition::Note,
                            factor: id.clone(),
                            place: Site::At(v),
                            passed: true,
                            detail: format!(
                                "{}_A(L) ramifies at the real place; governed by the real-split condition",
                                fi.invariant
                            ),
                        });
                        continue;
                    }
                    let local = class.local_invariant(v);
                    let (binds, why) = binding_at(&fi.factor, v)?;
                    let passed = !binds || local == 1;
                    let detail = if binds {
                        format!("{why}: condition binds; local invariant {local:+}")
                    } else {
                        format!("{why}: filtered; local invariant {local:+}")
                    };
                    out.push(CertificateEntry {
                        condition: condition_for(fi.factor.kind),
                        factor: id.clone(),
                        place: Site::At(v),
                        passed,
                        detail,
                    });
                }
            }
        }
    }
    Ok(out)
}

fn h1_entry(spec: &GaloisAlgebraSpec, h1: bool) -> CertificateEntry {
    CertificateEntry {
        condition: Condition::H1,
        factor: None,
        place: Site::H1,
        passed: h1,
        detail: format!(
            "image of order {} {} G² in {}",
            spec.image_order(),
            if h1 { "lies in" } else { "is not contained in" },
            spec.group
        ),
    }
}

fn verdict_of(entries: &[CertificateEntry]) -> Verdict {
    if entries.iter().all(|e| e.passed) {
        Verdict::Yes
    } else {
        Verdict::No
    }
}

/// Global decision over Q: H1-condition, splitting at the real place, and
/// the place-wise conditions on `c_A` and `d_A` at finite places.
pub fn decide_global(spec: &GaloisAlgebraSpec) -> Result<Decision> {
    let report = invariants(spec)?;
    let mut certificate = vec![h1_entry(spec, report.h1)];
    if report.h1 {
        let (pos, neg) = report.trace_form.signature;
        certificate.push(CertificateEntry {
            condition: Condition::RealSplit,
            factor: None,
            place: Site::At(Place::Real),
            passed: neg == 0,
            detail: format!(
                "trace form {} has signature ({pos}, {neg})",
                report.trace_form.diagonal
            ),
        });
        certificate.extend(factor_entries(&report, None)?);
    }
    let verdict = if report.conditional.is_some() {
        Verdict::Unknown
    } else {
        verdict_of(&certificate)
    };
    Ok(Decision {
        verdict,
        spec: spec.clone(),
        place: None,
        certificate,
    })
}

/// Decision for the completion at a finite place.
pub fn decide_local(spec: &GaloisAlgebraSpec, v: Place) -> Result<Decision> {
    if v == Place::Real {
        return Err(Error::Invalid(
            "decide_local takes a finite place; use the real-split condition at the real place".into(),
        ));
    }
    let report = invariants(spec)?;
    let mut certificate = vec![h1_entry(spec, report.h1)];
    if report.h1 {
        certificate.extend(factor_entries(&report, Some(v))?);
    }
    let verdict = if report.conditional.is_some() {
        Verdict::Unknown
    } else {
        verdict_of(&certificate)
    };
    Ok(Decision {
        verdict,
        spec: spec.clone(),
        place: Some(v),
        certificate,
    })
}

/// Degree-one invariant `x_L` for the nontrivial character `x` of a cyclic
/// 2-power group: the square class of the quadratic subfield of `K` when
/// the image is all of `G`, and trivial otherwise.
fn degree_one_invariant(spec: &GaloisAlgebraSpec) -> Result<SquareClass> {
    let n = spec.group.cyclic_two_power_exponent().unwrap_or(0);
    if spec.image_order() == 1 << n && spec.image_order() > 1 {
        spec.trace_form_of_k()?.det_class()
    } else {
        Ok(SquareClass::one())
    }
}

/// Whether two algebras for the same cyclic 2-power group have
/// G-isomorphic trace forms: equal degree-one invariants and equal
/// discriminants at every unitary factor. Under the H1-condition only the
/// top factor contributes, and its discriminant is the restriction of
/// `d_{A(n)}` to `E_{A(n)}`.
pub fn trace_forms_isomorphic(s1: &GaloisAlgebraSpec, s2: &GaloisAlgebraSpec) -> Result<bool> {
    let Some(n) = s1.group.cyclic_two_power_exponent() else {
        return Err(Error::Unsupported("trace form comparison needs a cyclic 2-power group".into()));
    };
    if s1.group != s2.group {
        return Err(Error::Invalid(format!(
            "groups differ: {} vs {}",
            s1.group, s2.group
        )));
    }
    if !h1_condition(s1) || !h1_condition(s2) {
        return Err(Error::H1Violated("disc_A(q_L)"));
    }
    if degree_one_invariant(s1)? != degree_one_invariant(s2)? {
        return Ok(false);
    }
    if n < 2 {
        return Ok(true);
    }
    let diff = &d_top(s1)? + &d_top(s2)?;
    if n == 3 {
        return brauer::restricts_trivially_to_quadratic(&diff, &Rational::from(2));
    }
    let top = FactorDescriptor {
        id: format!("A({n})"),
        kind: FactorKind::Unitary,
        center: Center::Cyclotomic(1 << n),
        fixed_field: if n == 2 {
            FixedField::Rationals
        } else {
            FixedField::RealCyclotomic(1 << n)
        },
        split: true,
        note: None,
    };
    for &v in diff.ramified() {
        let survives = match v {
            // E is totally real and F is totally imaginary
            Place::Real => true,
            _ => binding_at(&top, v)?.0,
        };
        if survives {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Elementary {
    Yes,
    No,
    NotApplicable,
}

/// Sums-of-squares criteria stated for the C₈ and D₄ families.
pub fn elementary_criterion(spec: &GaloisAlgebraSpec) -> Result<Elementary> {
    let n = spec.group.cyclic_two_power_exponent();
    let verdict = match (&spec.family, n) {
        (Family::CyclicQuadratic { z }, Some(3)) => forms::sum_of_four_squares(z)?,
        (Family::CyclicQuartic { a, .. }, Some(3)) => forms::sum_of_four_squares(a)?,
        (Family::D4Quadratic { z }, _) => forms::sum_of_two_squares(z)?,
        _ => return Ok(Elementary::NotApplicable),
    };
    Ok(if verdict { Elementary::Yes } else { Elementary::No })
}
