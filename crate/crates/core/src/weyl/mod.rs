//! The *-algebra of finite Weyl sums over a presymplectic group.
//!
//! Symbols multiply by `W_u W_v = e^{−iℏ τ(u,v)} W_{u+v}` and the involution
//! is `W_u* = W_{−u}`. Elements are kept in a normal form: one coefficient
//! per group element, terms ordered by coordinates, and no coefficient with
//! modulus below the pruning threshold.

pub mod exact;
mod parse;

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::presymplectic::{GroupElement, GroupHom, PresymplecticGroup};
use crate::tolerance::Tolerances;

pub use parse::{parse_element, parse_vectors};

/// Minimum distance from `2πZ` for an admissible `ℏ`.
pub const HBAR_MARGIN: f64 = 1e-9;

/// Distance from `hbar` to the nearest integer multiple of `2π`.
pub fn distance_to_2pi_z(hbar: f64) -> f64 {
    (hbar - TAU * (hbar / TAU).round()).abs()
}

/// A presymplectic group together with the deformation parameter `ℏ`.
#[derive(Clone, PartialEq, Debug)]
pub struct WeylAlgebra {
    group: PresymplecticGroup,
    hbar: f64,
    boundary_override: bool,
}

impl WeylAlgebra {
    /// Rejects `ℏ` within [`HBAR_MARGIN`] of `2πZ`, where the algebra
    /// degenerates to a commutative one.
    pub fn new(group: PresymplecticGroup, hbar: f64) -> Result<Arc<Self>> {
        Self::build(group, hbar, false)
    }

    /// Like [`WeylAlgebra::new`] but accepts `ℏ ∈ 2πZ`.
    pub fn with_boundary_override(group: PresymplecticGroup, hbar: f64) -> Result<Arc<Self>> {
        Self::build(group, hbar, true)
    }

    fn build(group: PresymplecticGroup, hbar: f64, boundary_override: bool) -> Result<Arc<Self>> {
        if !hbar.is_finite() {
            return Err(Error::Malformed(format!("hbar must be finite, got {hbar}")));
        }
        let distance = distance_to_2pi_z(hbar);
        if !boundary_override && distance <= HBAR_MARGIN {
            return Err(Error::InadmissibleHbar { hbar, distance });
        }
        Ok(Arc::new(WeylAlgebra {
            group,
            hbar,
            boundary_override,
        }))
    }

    pub fn group(&self) -> &PresymplecticGroup {
        &self.group
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn boundary_override(&self) -> bool {
        self.boundary_override
    }

    /// `e^{−iℏ τ(u,v)}`.
    pub fn phase(&self, u: &GroupElement, v: &GroupElement) -> Complex64 {
        phase_of(self.hbar, self.group.pair_unchecked(u, v))
    }

    pub fn same_as(&self, other: &WeylAlgebra) -> bool {
        std::ptr::eq(self, other)
            || (self.hbar.to_bits() == other.hbar.to_bits() && self.group == other.group)
    }
}

pub(crate) fn phase_of(hbar: f64, pairing: i64) -> Complex64 {
    if pairing == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::from_polar(1.0, -hbar * pairing as f64)
    }
}

/// A finite complex combination `Σ α_u W_u` in normal form.
#[derive(Clone)]
pub struct WeylElement {
    algebra: Arc<WeylAlgebra>,
    terms: BTreeMap<GroupElement, Complex64>,
}

impl WeylElement {
    pub fn zero(algebra: &Arc<WeylAlgebra>) -> Self {
        WeylElement {
            algebra: Arc::clone(algebra),
            terms: BTreeMap::new(),
        }
    }

    /// `𝟙 = W_0`.
    pub fn unit(algebra: &Arc<WeylAlgebra>) -> Self {
        let zero = algebra.group().zero();
        Self::from_normalised(algebra, BTreeMap::from([(zero, Complex64::new(1.0, 0.0))]))
    }

    /// The single Weyl symbol `W_u`.
    pub fn symbol(algebra: &Arc<WeylAlgebra>, u: GroupElement) -> Result<Self> {
        algebra.group().check_member(&u)?;
        Ok(Self::from_normalised(
            algebra,
            BTreeMap::from([(u, Complex64::new(1.0, 0.0))]),
        ))
    }

    /// Sums repeated keys and prunes negligible coefficients.
    pub fn from_terms(
        algebra: &Arc<WeylAlgebra>,
        terms: impl IntoIterator<Item = (GroupElement, Complex64)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (u, c) in terms {
            algebra.group().check_member(&u)?;
            *map.entry(u).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        Ok(Self::from_normalised(algebra, map))
    }

    fn from_normalised(
        algebra: &Arc<WeylAlgebra>,
        mut terms: BTreeMap<GroupElement, Complex64>,
    ) -> Self {
        terms.retain(|_, c| c.norm() >= Tolerances::DEFAULT.prune);
        WeylElement {
            algebra: Arc::clone(algebra),
            terms,
        }
    }

    pub fn algebra(&self) -> &Arc<WeylAlgebra> {
        &self.algebra
    }

    pub fn terms(&self) -> &BTreeMap<GroupElement, Complex64> {
        &self.terms
    }

    pub fn coefficient(&self, u: &GroupElement) -> Complex64 {
        self.terms.get(u).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_same(&self, other: &WeylElement) -> Result<()> {
        if self.algebra.same_as(&other.algebra) {
            Ok(())
        } else if self.algebra.group() == other.algebra.group() {
            Err(Error::HbarMismatch {
                left: self.algebra.hbar(),
                right: other.algebra.hbar(),
            })
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (u, c) in &other.terms {
            *terms.entry(u.clone()).or_default() += c;
        }
        Ok(Self::from_normalised(&self.algebra, terms))
    }

    pub fn sub(&self, other: &WeylElement) -> Result<WeylElement> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> WeylElement {
        let terms = self.terms.iter().map(|(u, a)| (u.clone(), a * c)).collect();
        Self::from_normalised(&self.algebra, terms)
    }

    /// Bilinear extension of `W_u W_v = e^{−iℏ τ(u,v)} W_{u+v}`.
    pub fn mul(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check_same(other)?;
        let mut terms: BTreeMap<GroupElement, Complex64> = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let c = a * b * self.algebra.phase(u, v);
                *terms.entry(u + v).or_default() += c;
            }
        }
        Ok(Self::from_normalised(&self.algebra, terms))
    }

    /// `(Σ α_u W_u)* = Σ conj(α_u) W_{−u}`.
    pub fn star(&self) -> WeylElement {
        let terms = self.terms.iter().map(|(u, a)| (-u, a.conj())).collect();
        Self::from_normalised(&self.algebra, terms)
    }

    /// Largest coefficient difference over the union of supports.
    pub fn distance(&self, other: &WeylElement) -> Result<f64> {
        self.check_same(other)?;
        let mut worst: f64 = 0.0;
        for (u, a) in &self.terms {
            worst = worst.max((a - other.coefficient(u)).norm());
        }
        for (u, b) in &other.terms {
            if !self.terms.contains_key(u) {
                worst = worst.max(b.norm());
            }
        }
        Ok(worst)
    }

    pub fn approx_eq(&self, other: &WeylElement, tol: f64) -> bool {
        self.distance(other).is_ok_and(|d| d <= tol)
    }

    /// Relabels every term through `map`, summing collisions.
    pub(crate) fn map_keys(
        &self,
        algebra: &Arc<WeylAlgebra>,
        mut map: impl FnMut(&GroupElement) -> Result<GroupElement>,
    ) -> Result<WeylElement> {
        let mut terms: BTreeMap<GroupElement, Complex64> = BTreeMap::new();
        for (u, a) in &self.terms {
            *terms.entry(map(u)?).or_default() += a;
        }
        Ok(Self::from_normalised(algebra, terms))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement[ℏ={}]({self})", self.algebra.hbar())
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (u, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({},{})*W[", c.re, c.im)?;
            for (i, x) in u.coords().iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// The algebra map `W_u ↦ W'_{f u}` induced by a pairing-preserving group hom.
#[derive(Clone, Debug)]
pub struct InducedHom {
    hom: GroupHom,
    source: Arc<WeylAlgebra>,
    target: Arc<WeylAlgebra>,
}

impl InducedHom {
    pub fn new(hom: GroupHom, source: Arc<WeylAlgebra>, target: Arc<WeylAlgebra>) -> Result<Self> {
        if source.hbar().to_bits() != target.hbar().to_bits() {
            return Err(Error::HbarMismatch {
                left: source.hbar(),
                right: target.hbar(),
            });
        }
        if hom.source() != source.group() || hom.target() != target.group() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(InducedHom {
            hom,
            source,
            target,
        })
    }

    pub fn identity(algebra: &Arc<WeylAlgebra>) -> Self {
        InducedHom {
            hom: GroupHom::identity(algebra.group()),
            source: Arc::clone(algebra),
            target: Arc::clone(algebra),
        }
    }

    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn source(&self) -> &Arc<WeylAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<WeylAlgebra> {
        &self.target
    }

    pub fn apply(&self, a: &WeylElement) -> Result<WeylElement> {
        if !a.algebra().same_as(&self.source) {
            return Err(Error::AlgebraMismatch);
        }
        a.map_keys(&self.target, |u| self.hom.apply(u))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &InducedHom) -> Result<InducedHom> {
        if !inner.target.same_as(&self.source) {
            return Err(Error::AlgebraMismatch);
        }
        InducedHom::new(
            self.hom.compose(&inner.hom)?,
            Arc::clone(&inner.source),
            Arc::clone(&self.target),
        )
    }
}
