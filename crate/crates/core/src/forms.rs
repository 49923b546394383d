//! Rational quadratic forms: Gram matrices, diagonalization, classical
//! invariants, local and global isotropy, and trace forms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{Rational, SquareClass};
use crate::brauer::BrauerClass;
use crate::error::{Error, Result};
use crate::local::{self, Place};
use crate::poly::Polynomial;

/// Symmetric matrix of rationals with nonzero determinant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl GramMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Invalid("Gram matrix must be square and nonempty".into()));
        }
        for i in 0..dim {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::Invalid("Gram matrix must be symmetric".into()));
                }
            }
        }
        let g = GramMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        };
        if g.determinant().is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(g)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.dim).map(<[Rational]>::to_vec).collect()
    }

    /// Exact determinant by Gaussian elimination over Q.
    pub fn determinant(&self) -> Rational {
        let n = self.dim;
        let mut m = self.rows();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Rational::zero();
            };
            if piv != col {
                m.swap(piv, col);
                det = -det;
            }
            let p = m[col][col].clone();
            det = &det * &p;
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] / &p;
                for c in col..n {
                    let delta = &factor * &m[col][c];
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
        det
    }
}

/// Nondegenerate diagonal form `⟨a₁, …, a_n⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct DiagonalForm {
    entries: Vec<Rational>,
}

impl TryFrom<Vec<Rational>> for DiagonalForm {
    type Error = Error;
    fn try_from(v: Vec<Rational>) -> Result<Self> {
        DiagonalForm::new(v)
    }
}

impl From<DiagonalForm> for Vec<Rational> {
    fn from(f: DiagonalForm) -> Self {
        f.entries
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(">")
    }
}

impl DiagonalForm {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Invalid("a form needs at least one entry".into()));
        }
        if entries.iter().any(Rational::is_zero) {
            return Err(Error::Degenerate);
        }
        Ok(DiagonalForm { entries })
    }

    pub fn from_i64(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&a| Rational::from(a)).collect())
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Orthogonal sum.
    pub fn perp(&self, other: &DiagonalForm) -> DiagonalForm {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        DiagonalForm { entries }
    }

    fn classes(&self) -> Result<Vec<SquareClass>> {
        self.entries.iter().map(SquareClass::of).collect()
    }

    pub fn det_class(&self) -> Result<SquareClass> {
        Ok(self
            .classes()?
            .iter()
            .fold(SquareClass::one(), |acc, c| acc.mul(c)))
    }

    /// Squarefree representative of the determinant.
    pub fn det_square_class(&self) -> Result<Rational> {
        Ok(Rational::integer(self.det_class()?.representative()))
    }

    /// `(positive, negative)` entry counts.
    pub fn signature(&self) -> (usize, usize) {
        let pos = self.entries.iter().filter(|a| a.is_positive()).count();
        (pos, self.rank() - pos)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature().1 == 0
    }

    /// Hasse–Witt invariant `Σ_{i<j} (aᵢ)(a_j)`.
    pub fn hasse_witt(&self) -> Result<BrauerClass> {
        let cls = self.classes()?;
        let mut total = BrauerClass::trivial();
        for i in 0..cls.len() {
            for j in i + 1..cls.len() {
                total = &total + &BrauerClass::cup_classes(&cls[i], &cls[j]);
            }
        }
        Ok(total)
    }

    /// Finite set of places outside which the form is locally hyperbolic
    /// enough that isotropy is decided: real, 2 and primes in the entries.
    pub fn support(&self) -> Result<Vec<Place>> {
        let cls = self.classes()?;
        Ok(local::support_of_classes(cls.iter()).into_iter().collect())
    }

    pub fn isotropic_over_qp(&self, v: Place) -> Result<bool> {
        let cls = self.classes()?;
        Ok(isotropic_local(&cls, v))
    }

    /// First place (in place order) where the form is anisotropic, if any.
    pub fn anisotropic_place(&self) -> Result<Option<Place>> {
        let cls = self.classes()?;
        Ok(local::support_of_classes(cls.iter())
            .into_iter()
            .find(|&v| !isotropic_local(&cls, v)))
    }

    /// Hasse–Minkowski: isotropic over Q iff isotropic at every place.
    pub fn isotropic_over_q(&self) -> Result<bool> {
        Ok(self.anisotropic_place()?.is_none())
    }

    /// Whether the form represents `c ≠ 0` over Q.
    pub fn represents(&self, c: &Rational) -> Result<bool> {
        if c.is_zero() {
            return Err(Error::Zero("represents"));
        }
        let aug = DiagonalForm::new(vec![-c])?;
        self.perp(&aug).isotropic_over_q()
    }
}

fn isotropic_local(cls: &[SquareClass], v: Place) -> bool {
    let n = cls.len();
    if v == Place::Real {
        let neg = cls.iter().filter(|c| c.negative).count();
        return neg > 0 && neg < n;
    }
    let det = cls.iter().fold(SquareClass::one(), |acc, c| acc.mul(c));
    let hasse = {
        let mut h = 1i8;
        for i in 0..n {
            for j in i + 1..n {
                h *= local::hilbert_sq(&cls[i], &cls[j], v);
            }
        }
        h
    };
    let minus_one = SquareClass::minus_one();
    match n {
        1 => false,
        2 => local::is_local_square(&det.mul(&minus_one), v),
        3 => local::hilbert_sq(&minus_one, &det.mul(&minus_one), v) == hasse,
        4 => !local::is_local_square(&det, v) || hasse == local::hilbert_sq(&minus_one, &minus_one, v),
        _ => true,
    }
}

/// Congruence diagonalization by symmetric elimination. When every
/// remaining diagonal entry vanishes, the first nonzero off-diagonal pair
/// `(i, j)` is used through `e_i ← e_i + e_j`.
pub fn diagonalize(g: &GramMatrix) -> Result<DiagonalForm> {
    let n = g.dim();
    let mut m = g.rows();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if let Some(i) = (k..n).find(|&i| !m[i][i].is_zero()) {
            swap_basis(&mut m, k, i);
        } else {
            let pair = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].is_zero());
            let Some((i, j)) = pair else {
                return Err(Error::Degenerate);
            };
            // e_i ← e_i + e_j: row i += row j, then column i += column j
            for c in 0..n {
                let add = m[j][c].clone();
                m[i][c] = &m[i][c] + &add;
            }
            for r in 0..n {
                let add = m[r][j].clone();
                m[r][i] = &m[r][i] + &add;
            }
            swap_basis(&mut m, k, i);
        }
        let pivot = m[k][k].clone();
        // Schur complement of the pivot; rows and columns k+1.. only
        let col: Vec<Rational> = (k + 1..n).map(|r| &m[r][k] / &pivot).collect();
        for r in k + 1..n {
            let f = &col[r - k - 1];
            if f.is_zero() {
                continue;
            }
            for c in k + 1..n {
                let delta = f * &m[k][c];
                m[r][c] = &m[r][c] - &delta;
            }
        }
        out.push(pivot);
    }
    DiagonalForm::new(out)
}

fn swap_basis(m: &mut [Vec<Rational>], a: usize, b: usize) {
    if a == b {
        return;
    }
    m.swap(a, b);
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// z is a sum of two rational squares.
pub fn sum_of_two_squares(z: &Rational) -> Result<bool> {
    if z.is_zero() {
        return Err(Error::Zero("sum_of_two_squares"));
    }
    if z.is_negative() {
        return Ok(false);
    }
    let f = crate::arith::factor(z)?;
    Ok(f.factors.iter().all(|(&p, &e)| p % 4 != 3 || e % 2 == 0))
}

/// z is a sum of four rational squares (Lagrange).
pub fn sum_of_four_squares(z: &Rational) -> Result<bool> {
    if z.is_zero() {
        return Err(Error::Zero("sum_of_four_squares"));
    }
    Ok(z.is_positive())
}

/// Gram matrix `(s_{i+j})` of the trace form of `Q[X]/(f)` in the power basis.
pub fn trace_form(f: &Polynomial) -> Result<GramMatrix> {
    let n = f.degree();
    let s = f.power_sums(2 * n - 1);
    let rows = (0..n)
        .map(|i| (0..n).map(|j| Rational::integer(s[i + j].clone())).collect())
        .collect();
    GramMatrix::new(rows).map_err(|e| match e {
        Error::Degenerate => Error::Invalid(format!("{f} has repeated roots")),
        other => other,
    })
}

/// The diagonal trace form `⟨1, ε, a, a⟩` of `k(√(a + b√ε))` for parameters
/// with `a² − b²ε = c²ε`, `c ≠ 0` and `ε` a nonsquare.
pub fn quartic_family_form(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    eps: &Rational,
) -> Result<DiagonalForm> {
    validate_quartic_family(a, b, c, eps)?;
    DiagonalForm::new(vec![Rational::one(), eps.clone(), a.clone(), a.clone()])
}

pub(crate) fn validate_quartic_family(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    eps: &Rational,
) -> Result<()> {
    if c.is_zero() {
        return Err(Error::Invalid("c must be nonzero".into()));
    }
    if eps.is_zero() || SquareClass::of(eps)?.is_one() {
        return Err(Error::Invalid(format!("ε = {eps} must be a nonsquare")));
    }
    let lhs = a.square() - b.square() * eps.clone();
    let rhs = c.square() * eps.clone();
    if lhs != rhs {
        return Err(Error::Invalid(format!(
            "a² − b²ε = {lhs} differs from c²ε = {rhs}"
        )));
    }
    Ok(())
}
