//! States on Weyl algebras, described by their values on Weyl symbols, and
//! Gram-matrix positivity reports.
//!
//! A linear functional `ω` on the algebra is fixed by `u ↦ ω(W_u)`. It is
//! positive only if, for every finite witness set `u_1..u_k`, the matrix
//! `G[i][j] = ω(W_{u_i}* W_{u_j}) = e^{iℏ τ(u_i,u_j)} ω(W_{u_j − u_i})` is
//! positive semidefinite. [`State::gram`] builds that matrix and
//! [`PositivityReport`] records its spectrum.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::action;
use crate::error::{Error, Result};
use crate::presymplectic::{GroupElement, GroupHom};
use crate::tolerance::Tolerances;
use crate::weyl::{phase_of, InducedHom, WeylAlgebra, WeylElement};

/// Symmetric positive-semidefinite real form `μ` of a Gaussian state.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianForm {
    matrix: DMatrix<f64>,
}

impl GaussianForm {
    pub fn new(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed("gaussian form must be square".into()));
        }
        let matrix = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
        if matrix.iter().any(|x| !x.is_finite()) {
            return Err(Error::Malformed("gaussian form has non-finite entries".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if (matrix[(i, j)] - matrix[(j, i)]).abs() > Tolerances::DEFAULT.hermitian {
                    return Err(Error::Malformed(format!(
                        "gaussian form is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let form = GaussianForm { matrix };
        if let Some(min) = form.min_eigenvalue() {
            if min < -Tolerances::DEFAULT.psd {
                return Err(Error::Precondition(format!(
                    "gaussian form is not positive semidefinite (eigenvalue {min})"
                )));
            }
        }
        Ok(form)
    }

    pub fn identity(n: usize) -> Self {
        GaussianForm {
            matrix: DMatrix::identity(n, n),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn min_eigenvalue(&self) -> Option<f64> {
        if self.rank() == 0 {
            return None;
        }
        SymmetricEigen::new(self.matrix.clone())
            .eigenvalues
            .iter()
            .copied()
            .reduce(f64::min)
    }

    /// `uᵀ μ u`.
    pub fn quadratic(&self, u: &GroupElement) -> f64 {
        let c = u.coords();
        let mut acc = 0.0;
        for i in 0..c.len() {
            for j in 0..c.len() {
                acc += c[i] as f64 * self.matrix[(i, j)] * c[j] as f64;
            }
        }
        acc
    }
}

/// How a partial table answers queries for vectors it does not list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosureRule {
    /// Only the listed vectors are determined.
    Literal,
    /// On the standard rank-2 group, `v` takes the value of `(gcd(v), 0)`.
    GcdOrbit,
}

#[derive(Clone, Debug)]
pub enum StateKind {
    /// `ω(W_u) = 1` if `u = 0`, else `0`.
    Delta,
    /// `ω(W_u) = e^{−uᵀμu}`.
    Gaussian(GaussianForm),
    Partial {
        table: BTreeMap<GroupElement, Complex64>,
        rule: ClosureRule,
    },
    /// `ω(W_u) = inner(W_{f u})`.
    PulledBack { inner: Box<State>, hom: GroupHom },
}

#[derive(Clone, Debug)]
pub struct State {
    algebra: Arc<WeylAlgebra>,
    kind: StateKind,
}

impl State {
    pub fn delta(algebra: &Arc<WeylAlgebra>) -> Self {
        State {
            algebra: Arc::clone(algebra),
            kind: StateKind::Delta,
        }
    }

    pub fn gaussian(algebra: &Arc<WeylAlgebra>, form: GaussianForm) -> Result<Self> {
        if form.rank() != algebra.rank() {
            return Err(Error::DimensionMismatch {
                expected: algebra.rank(),
                found: form.rank(),
            });
        }
        Ok(State {
            algebra: Arc::clone(algebra),
            kind: StateKind::Gaussian(form),
        })
    }

    /// A state known only on the listed vectors. The table must send `0` to `1`.
    pub fn partial(
        algebra: &Arc<WeylAlgebra>,
        table: impl IntoIterator<Item = (GroupElement, Complex64)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (u, value) in table {
            algebra.group().check_member(&u)?;
            if let Some(previous) = map.insert(u.clone(), value) {
                if (previous - value).norm() > Tolerances::DEFAULT.compare {
                    return Err(Error::Inconsistent {
                        first: u.clone(),
                        first_value: previous.to_string(),
                        second: u,
                        second_value: value.to_string(),
                    });
                }
            }
        }
        let zero = algebra.group().zero();
        match map.get(&zero) {
            Some(v) if (v - Complex64::new(1.0, 0.0)).norm() <= Tolerances::DEFAULT.compare => {}
            Some(v) => {
                return Err(Error::Precondition(format!(
                    "partial table sends 0 to {v}, not 1"
                )))
            }
            None => {
                return Err(Error::Precondition(
                    "partial table must contain the zero vector".into(),
                ))
            }
        }
        Ok(State {
            algebra: Arc::clone(algebra),
            kind: StateKind::Partial {
                table: map,
                rule: ClosureRule::Literal,
            },
        })
    }

    pub(crate) fn with_kind(algebra: &Arc<WeylAlgebra>, kind: StateKind) -> Self {
        State {
            algebra: Arc::clone(algebra),
            kind,
        }
    }

    pub fn algebra(&self) -> &Arc<WeylAlgebra> {
        &self.algebra
    }

    pub fn kind(&self) -> &StateKind {
        &self.kind
    }

    /// `ω(W_u)`.
    pub fn value(&self, u: &GroupElement) -> Result<Complex64> {
        self.algebra.group().check_member(u)?;
        match &self.kind {
            StateKind::Delta => Ok(if u.is_zero() {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }),
            StateKind::Gaussian(form) => Ok(Complex64::new((-form.quadratic(u)).exp(), 0.0)),
            StateKind::PulledBack { inner, hom } => inner.value(&hom.apply(u)?),
            StateKind::Partial { table, rule } => {
                if let Some(v) = table.get(u) {
                    return Ok(*v);
                }
                match rule {
                    ClosureRule::Literal => Err(Error::Undetermined(u.clone())),
                    ClosureRule::GcdOrbit => {
                        let rep = action::orbit_representative(u)?;
                        table
                            .get(&rep)
                            .copied()
                            .ok_or_else(|| Error::Undetermined(u.clone()))
                    }
                }
            }
        }
    }

    /// `ω(Σ α_u W_u) = Σ α_u ω(W_u)`.
    pub fn evaluate(&self, a: &WeylElement) -> Result<Complex64> {
        if !a.algebra().same_as(&self.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        a.terms()
            .iter()
            .map(|(u, c)| Ok(c * self.value(u)?))
            .sum()
    }

    /// `ω ∘ 𝒜(f)`, a state on the source algebra of `f`.
    pub fn pull_back(&self, f: &InducedHom) -> Result<State> {
        if !f.target().same_as(&self.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(State {
            algebra: Arc::clone(f.source()),
            kind: StateKind::PulledBack {
                inner: Box::new(self.clone()),
                hom: f.hom().clone(),
            },
        })
    }

    /// Gram matrix `ω(W_{u_i}* W_{u_j})` over `witness`, with its spectrum.
    pub fn gram(&self, witness: &[GroupElement], tol: &Tolerances) -> Result<PositivityReport> {
        let group = self.algebra.group();
        for u in witness {
            group.check_member(u)?;
        }
        let hbar = self.algebra.hbar();
        let n = witness.len();
        let mut gram = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
        for i in 0..n {
            for j in 0..n {
                let pairing = group.pair_unchecked(&witness[i], &witness[j]);
                let diff = &witness[j] - &witness[i];
                gram[(i, j)] = phase_of(hbar, -pairing) * self.value(&diff)?;
            }
        }
        PositivityReport::from_matrix(hbar, witness.to_vec(), gram, tol)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PSD")]
    Psd,
    #[serde(rename = "NOT_PSD")]
    NotPsd,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Psd => "PSD",
            Verdict::NotPsd => "NOT_PSD",
        })
    }
}

/// A Hermitian Gram matrix with its ascending spectrum and PSD verdict.
#[derive(Clone, Debug)]
pub struct PositivityReport {
    pub hbar: f64,
    pub witness: Vec<GroupElement>,
    pub gram: DMatrix<Complex64>,
    pub eigenvalues: Vec<f64>,
    pub determinant: Complex64,
    pub verdict: Verdict,
    /// The PSD cutoff the verdict was taken at.
    pub tolerance: f64,
}

pub fn hermitian_defect(m: &DMatrix<Complex64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigenvalues of a Hermitian matrix, ascending. The input is symmetrised
/// first so round-off in the off-diagonal cannot leak imaginary parts.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let sym = (m + m.adjoint()).scale(0.5);
    let mut eig: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    eig
}

impl PositivityReport {
    pub fn from_matrix(
        hbar: f64,
        witness: Vec<GroupElement>,
        gram: DMatrix<Complex64>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::MalformedMatrix(format!(
                "gram matrix is {}x{}",
                gram.nrows(),
                gram.ncols()
            )));
        }
        let defect = hermitian_defect(&gram);
        if defect > tol.hermitian {
            return Err(Error::MalformedMatrix(format!(
                "not Hermitian: defect {defect:e} exceeds {:e}",
                tol.hermitian
            )));
        }
        let eigenvalues = hermitian_eigenvalues(&gram);
        let determinant = gram.determinant();
        let verdict = verdict_for(&eigenvalues, tol.psd);
        Ok(PositivityReport {
            hbar,
            witness,
            gram,
            eigenvalues,
            determinant,
            verdict,
            tolerance: tol.psd,
        })
    }

    pub fn min_eigenvalue(&self) -> Option<f64> {
        self.eigenvalues.first().copied()
    }

    pub fn to_document(&self) -> ReportDocument<'_> {
        let n = self.gram.nrows();
        let part = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..n)
                .map(|i| (0..n).map(|j| f(&self.gram[(i, j)])).collect())
                .collect()
        };
        ReportDocument {
            hbar: self.hbar,
            witness: &self.witness,
            gram_re: part(|c| c.re),
            gram_im: part(|c| c.im),
            eigenvalues: &self.eigenvalues,
            determinant: ComplexDocument::from(self.determinant),
            verdict: self.verdict,
            tolerance: self.tolerance,
        }
    }

    /// Canonical JSON: fixed key order, no insignificant whitespace.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("report serialises")
    }
}

fn verdict_for(eigenvalues: &[f64], cutoff: f64) -> Verdict {
    match eigenvalues.first() {
        Some(&min) if min < -cutoff => Verdict::NotPsd,
        _ => Verdict::Psd,
    }
}

/// Re-validates a report and returns its verdict.
pub fn check_psd(report: &PositivityReport, tol: &Tolerances) -> Result<Verdict> {
    let defect = hermitian_defect(&report.gram);
    if !report.gram.is_square() || defect > tol.hermitian {
        return Err(Error::MalformedMatrix(format!(
            "not Hermitian: defect {defect:e} exceeds {:e}",
            tol.hermitian
        )));
    }
    if report.eigenvalues.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::MalformedMatrix("eigenvalues are not sorted".into()));
    }
    Ok(verdict_for(&report.eigenvalues, report.tolerance))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexDocument {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexDocument {
    fn from(c: Complex64) -> Self {
        ComplexDocument { re: c.re, im: c.im }
    }
}

/// Serialised form of a [`PositivityReport`]; field order is the wire order.
#[derive(Debug, Serialize)]
pub struct ReportDocument<'a> {
    pub hbar: f64,
    pub witness: &'a [GroupElement],
    pub gram_re: Vec<Vec<f64>>,
    pub gram_im: Vec<Vec<f64>>,
    pub eigenvalues: &'a [f64],
    pub determinant: ComplexDocument,
    pub verdict: Verdict,
    pub tolerance: f64,
}
