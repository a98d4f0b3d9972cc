//! Replays the argument that no natural state exists.
//!
//! The diagram `S² ← R×T → T²` forces values on the torus: the sphere's
//! algebra is `C`, so its only state pulls back to the constant 1 on the
//! cylinder; pushing along the cylinder's embedding in the torus fixes
//! `ω(W_{(n,0)}) = 1`, and invariance under SL(2, Z) spreads that value over
//! each orbit. A Gram matrix on a small witness set then fails to be
//! positive semidefinite whenever `ℏ ∉ 2πZ`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::action::{close_under_orbit, orbit_representative};
use crate::error::{Error, Result};
use crate::presymplectic::GroupElement;
use crate::states::{ComplexDocument, PositivityReport, State, Verdict};
use crate::surfaces::{catalog_embedding, EmbeddingName, EmbeddingSpec, Surface};
use crate::tolerance::Tolerances;
use crate::weyl::{InducedHom, WeylAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Pulled back from the sphere's unique state along `R×T → S²`.
    SpherePullback,
    /// Transported along `R×T → T²`, `n ↦ (n, 0)`.
    #[serde(rename = "pushforward-f2")]
    PushforwardF2,
    /// Spread over an SL(2, Z)-orbit by invariance.
    OrbitClosure,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ForcedConstraint {
    pub surface: String,
    pub vector: GroupElement,
    pub value: ComplexDocument,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Conclusion {
    #[serde(rename = "NO_NATURAL_STATE")]
    NoNaturalState,
    /// The witness failed to refute positivity; nothing is claimed.
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::NoNaturalState => "NO_NATURAL_STATE",
            Conclusion::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessChoice {
    /// `{0, (1,1), (0,1)}`.
    Paper,
    /// Every 3-element set with coordinates in `[−radius, radius]`; the one
    /// with the least minimal eigenvalue is certified.
    Search { radius: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifyOptions {
    pub boundary_override: bool,
    pub witness: WitnessChoice,
    pub tolerances: Tolerances,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            boundary_override: false,
            witness: WitnessChoice::Paper,
            tolerances: Tolerances::DEFAULT,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SearchSummary {
    pub candidates: usize,
    pub radius: i64,
}

#[derive(Clone, Debug)]
pub struct NoGoCertificate {
    pub hbar: f64,
    pub forced_constraints: Vec<ForcedConstraint>,
    pub witness: Vec<GroupElement>,
    pub report: PositivityReport,
    pub conclusion: Conclusion,
    pub search: Option<SearchSummary>,
}

pub fn paper_witness() -> Vec<GroupElement> {
    vec![[0, 0].into(), [1, 1].into(), [0, 1].into()]
}

fn differences(witness: &[GroupElement]) -> BTreeSet<GroupElement> {
    witness
        .iter()
        .flat_map(|ui| witness.iter().map(move |uj| uj - ui))
        .collect()
}

fn algebra_for(surface: &Surface, hbar: f64, boundary_override: bool) -> Result<Arc<WeylAlgebra>> {
    if boundary_override {
        WeylAlgebra::with_boundary_override(surface.resolve(), hbar)
    } else {
        WeylAlgebra::new(surface.resolve(), hbar)
    }
}

fn induced(spec: EmbeddingSpec, hbar: f64, boundary_override: bool) -> Result<InducedHom> {
    let source = algebra_for(&spec.source, hbar, boundary_override)?;
    let target = algebra_for(&spec.target, hbar, boundary_override)?;
    InducedHom::new(spec.hom, source, target)
}

fn witness_candidates(radius: i64) -> Vec<Vec<GroupElement>> {
    let mut points: Vec<GroupElement> = crate::action::box_vectors(2, radius);
    points.sort();
    let n = points.len();
    let mut sets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                sets.push(vec![points[i].clone(), points[j].clone(), points[k].clone()]);
            }
        }
    }
    sets
}

/// Runs the full constraint propagation and positivity check at `hbar`.
pub fn certify(hbar: f64, options: &CertifyOptions) -> Result<NoGoCertificate> {
    let over = options.boundary_override;
    let tol = &options.tolerances;

    // (1) the sphere's algebra is C and carries exactly one state
    let f1 = induced(catalog_embedding(&EmbeddingName::CylIntoSphere)?, hbar, over)?;
    let sphere_state = State::delta(f1.target());

    // (2) naturality along R×T → S²
    let cylinder_state = sphere_state.pull_back(&f1)?;

    let candidates = match options.witness {
        WitnessChoice::Paper => vec![paper_witness()],
        WitnessChoice::Search { radius } => witness_candidates(radius),
    };
    let mut classes = BTreeSet::new();
    for set in &candidates {
        for d in differences(set) {
            classes.insert(orbit_representative(&d)?.coords()[0]);
        }
    }

    let mut constraints = Vec::new();
    let f2 = induced(catalog_embedding(&EmbeddingName::CylIntoTorus)?, hbar, over)?;
    let mut table = Vec::new();
    for &n in &classes {
        let on_cylinder = GroupElement::new(vec![n]);
        let value = cylinder_state.value(&on_cylinder)?;
        constraints.push(ForcedConstraint {
            surface: Surface::cylinder().label(),
            vector: on_cylinder.clone(),
            value: value.into(),
            provenance: Provenance::SpherePullback,
        });
        table.push((f2.hom().apply(&on_cylinder)?, value));
    }

    // (3) naturality along R×T → T²
    for (u, value) in &table {
        constraints.push(ForcedConstraint {
            surface: Surface::torus().label(),
            vector: u.clone(),
            value: (*value).into(),
            provenance: Provenance::PushforwardF2,
        });
    }
    let forced = State::partial(f2.target(), table)?;

    // (4) invariance under the mapping class group, acting through SL(2, Z)
    let torus_state = close_under_orbit(&forced)?;

    // (5) Gram matrix on the witness set
    let internal = |e: Error| match e {
        Error::Undetermined(u) => {
            Error::Internal(format!("value at {u} not forced by the propagation steps"))
        }
        other => other,
    };
    let mut best: Option<PositivityReport> = None;
    for set in &candidates {
        let report = torus_state.gram(set, tol).map_err(internal)?;
        let better = match &best {
            None => true,
            Some(b) => report.min_eigenvalue() < b.min_eigenvalue(),
        };
        if better {
            best = Some(report);
        }
    }
    let report = best.ok_or_else(|| Error::Internal("no witness candidates".into()))?;
    let witness = report.witness.clone();
    for d in differences(&witness) {
        let value = torus_state.value(&d).map_err(internal)?;
        constraints.push(ForcedConstraint {
            surface: Surface::torus().label(),
            vector: d,
            value: value.into(),
            provenance: Provenance::OrbitClosure,
        });
    }

    // (6) verdict
    let verdict = crate::states::check_psd(&report, tol)?;
    let conclusion = match verdict {
        Verdict::NotPsd => Conclusion::NoNaturalState,
        Verdict::Psd => Conclusion::Inconclusive,
    };
    let search = match options.witness {
        WitnessChoice::Paper => None,
        WitnessChoice::Search { radius } => Some(SearchSummary {
            candidates: candidates.len(),
            radius,
        }),
    };
    Ok(NoGoCertificate {
        hbar,
        forced_constraints: constraints,
        witness,
        report,
        conclusion,
        search,
    })
}

impl NoGoCertificate {
    /// Checks that every difference the Gram matrix reads has a torus
    /// constraint with the same value, and that the conclusion matches the
    /// verdict.
    pub fn audit(&self) -> Result<()> {
        let torus = Surface::torus().label();
        for d in differences(&self.witness) {
            let found = self
                .forced_constraints
                .iter()
                .any(|c| c.surface == torus && c.vector == d);
            if !found {
                return Err(Error::Internal(format!("difference {d} has no provenance")));
            }
        }
        let expected = match self.report.verdict {
            Verdict::NotPsd => Conclusion::NoNaturalState,
            Verdict::Psd => Conclusion::Inconclusive,
        };
        if expected != self.conclusion {
            return Err(Error::Internal("conclusion disagrees with verdict".into()));
        }
        Ok(())
    }

    pub fn to_document(&self) -> CertificateDocument<'_> {
        let r = self.report.to_document();
        CertificateDocument {
            hbar: r.hbar,
            witness: r.witness,
            gram_re: r.gram_re,
            gram_im: r.gram_im,
            eigenvalues: r.eigenvalues,
            determinant: r.determinant,
            verdict: r.verdict,
            tolerance: r.tolerance,
            forced_constraints: &self.forced_constraints,
            conclusion: self.conclusion,
            search: self.search,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("certificate serialises")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("certificate serialises")
    }
}

/// Report fields first, in report order, then the certificate fields.
#[derive(Debug, Serialize)]
pub struct CertificateDocument<'a> {
    pub hbar: f64,
    pub witness: &'a [GroupElement],
    pub gram_re: Vec<Vec<f64>>,
    pub gram_im: Vec<Vec<f64>>,
    pub eigenvalues: &'a [f64],
    pub determinant: ComplexDocument,
    pub verdict: Verdict,
    pub tolerance: f64,
    pub forced_constraints: &'a [ForcedConstraint],
    pub conclusion: Conclusion,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchSummary>,
}

/// One line of a sweep; failures are kept in `error` rather than aborting.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub hbar: f64,
    pub verdict: Option<Verdict>,
    pub min_eigenvalue: Option<f64>,
    pub determinant: Option<ComplexDocument>,
    pub conclusion: Option<Conclusion>,
    pub error: Option<String>,
}

impl SweepRow {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("row serialises")
    }
}

pub fn sweep(hbars: &[f64], options: &CertifyOptions) -> Vec<SweepRow> {
    hbars
        .par_iter()
        .map(|&hbar| match certify(hbar, options) {
            Ok(cert) => SweepRow {
                hbar,
                verdict: Some(cert.report.verdict),
                min_eigenvalue: cert.report.min_eigenvalue(),
                determinant: Some(cert.report.determinant.into()),
                conclusion: Some(cert.conclusion),
                error: None,
            },
            Err(e) => SweepRow {
                hbar,
                verdict: None,
                min_eigenvalue: None,
                determinant: None,
                conclusion: None,
                error: Some(e.to_string()),
            },
        })
        .collect()
}

/// `steps` evenly spaced values from `from` to `to`, both ends included.
pub fn grid(from: f64, to: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => vec![],
        1 => vec![from],
        _ => (0..steps)
            .map(|i| from + (to - from) * i as f64 / (steps - 1) as f64)
            .collect(),
    }
}

/// `2 cos ℏ − 2`, the determinant of the Gram matrix on the default witness.
pub fn expected_determinant(hbar: f64) -> f64 {
    2.0 * hbar.cos() - 2.0
}
