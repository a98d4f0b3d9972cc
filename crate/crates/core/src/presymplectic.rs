//! Finitely generated free abelian groups with an antisymmetric integer
//! pairing, and the pairing-preserving homomorphisms between them.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// `Zⁿ` together with an antisymmetric, possibly degenerate, pairing `τ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PresymplecticGroup {
    pairing: IntMatrix,
}

impl PresymplecticGroup {
    pub fn new(pairing: IntMatrix) -> Result<Self> {
        if !pairing.is_square() {
            return Err(Error::Malformed(format!(
                "pairing must be square, got {}x{}",
                pairing.rows(),
                pairing.cols()
            )));
        }
        if !pairing.is_antisymmetric() {
            return Err(Error::Malformed("pairing is not antisymmetric".into()));
        }
        Ok(PresymplecticGroup { pairing })
    }

    /// The group with a single element.
    pub fn trivial() -> Self {
        PresymplecticGroup {
            pairing: IntMatrix::zeros(0, 0),
        }
    }

    /// `Zⁿ` with the zero pairing.
    pub fn degenerate(rank: usize) -> Self {
        PresymplecticGroup {
            pairing: IntMatrix::zeros(rank, rank),
        }
    }

    /// `Z²ᵍ` with `g` diagonal blocks `[[0, 1], [−1, 0]]`, padded with `extra`
    /// coordinates on which the pairing vanishes.
    pub fn standard_symplectic(genus: usize, extra: usize) -> Self {
        let n = 2 * genus + extra;
        let mut pairing = IntMatrix::zeros(n, n);
        for k in 0..genus {
            pairing[(2 * k, 2 * k + 1)] = 1;
            pairing[(2 * k + 1, 2 * k)] = -1;
        }
        PresymplecticGroup { pairing }
    }

    pub fn rank(&self) -> usize {
        self.pairing.rows()
    }

    pub fn pairing(&self) -> &IntMatrix {
        &self.pairing
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::zero(self.rank())
    }

    pub fn element(&self, coords: impl Into<Vec<i64>>) -> Result<GroupElement> {
        let u = GroupElement(coords.into());
        self.check_member(&u)?;
        Ok(u)
    }

    pub fn check_member(&self, u: &GroupElement) -> Result<()> {
        if u.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: u.rank(),
            });
        }
        Ok(())
    }

    /// `uᵀ τ v`.
    pub fn pair(&self, u: &GroupElement, v: &GroupElement) -> Result<i64> {
        self.check_member(u)?;
        self.check_member(v)?;
        Ok(self.pair_unchecked(u, v))
    }

    pub(crate) fn pair_unchecked(&self, u: &GroupElement, v: &GroupElement) -> i64 {
        let mut acc = 0;
        for (i, &ui) in u.0.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (j, &vj) in v.0.iter().enumerate() {
                acc += ui * self.pairing[(i, j)] * vj;
            }
        }
        acc
    }
}

impl fmt::Debug for PresymplecticGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PresymplecticGroup(rank {}, τ = {})", self.rank(), self.pairing)
    }
}

/// A vector of integer coordinates in some `PresymplecticGroup`.
///
/// Ordering is lexicographic on the coordinates, which gives Weyl sums a
/// canonical term order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        GroupElement(coords.into())
    }

    pub fn zero(rank: usize) -> Self {
        GroupElement(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl From<Vec<i64>> for GroupElement {
    fn from(v: Vec<i64>) -> Self {
        GroupElement(v)
    }
}

impl<const N: usize> From<[i64; N]> for GroupElement {
    fn from(v: [i64; N]) -> Self {
        GroupElement(v.to_vec())
    }
}

impl Add for &GroupElement {
    type Output = GroupElement;

    fn add(self, rhs: &GroupElement) -> GroupElement {
        debug_assert_eq!(self.rank(), rhs.rank());
        GroupElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;

    fn sub(self, rhs: &GroupElement) -> GroupElement {
        debug_assert_eq!(self.rank(), rhs.rank());
        GroupElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;

    fn neg(self) -> GroupElement {
        GroupElement(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A homomorphism `source → target` given by an integer matrix of shape
/// `target.rank × source.rank` that pulls `τ_target` back to `τ_source`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupHom {
    source: PresymplecticGroup,
    target: PresymplecticGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Validates shape and pairing compatibility `Mᵀ τ_target M = τ_source`.
    pub fn new(
        source: PresymplecticGroup,
        target: PresymplecticGroup,
        matrix: IntMatrix,
    ) -> Result<Self> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::Malformed(format!(
                "hom matrix must be {}x{}, got {}x{}",
                target.rank(),
                source.rank(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        let pulled = matrix.transpose().mul(target.pairing())?.mul(&matrix)?;
        for i in 0..source.rank() {
            for j in 0..source.rank() {
                if pulled[(i, j)] != source.pairing()[(i, j)] {
                    return Err(Error::PairingViolation {
                        row: i,
                        col: j,
                        expected: source.pairing()[(i, j)],
                        found: pulled[(i, j)],
                    });
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(group: &PresymplecticGroup) -> Self {
        GroupHom {
            source: group.clone(),
            target: group.clone(),
            matrix: IntMatrix::identity(group.rank()),
        }
    }

    pub fn source(&self) -> &PresymplecticGroup {
        &self.source
    }

    pub fn target(&self) -> &PresymplecticGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, u: &GroupElement) -> Result<GroupElement> {
        self.source.check_member(u)?;
        Ok(GroupElement(self.matrix.mul_vec(u.coords())?))
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.target != self.source {
            return Err(Error::Malformed(
                "composition: inner target differs from outer source".into(),
            ));
        }
        GroupHom::new(
            inner.source.clone(),
            self.target.clone(),
            self.matrix.mul(&inner.matrix)?,
        )
    }
}
