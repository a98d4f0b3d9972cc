//! Exact Weyl products at rational `ℏ/2π`.
//!
//! When `ℏ = 2π p/q` with `p/q` in lowest terms, every phase
//! `e^{−iℏ τ(u,v)}` is a power of the primitive root `ζ = e^{−2πi/q}`.
//! Coefficients then live in `Q(i)[x]/Φ_q(x)`, evaluated at `x = ζ`, and the
//! product can be computed without rounding. This path exists to
//! cross-check the floating-point algebra.
//!
//! Zero tests are exact in the quotient ring. For `4 | q` the ring is not a
//! field (`Φ_q` splits over `Q(i)`), so a nonzero reduced coefficient can
//! still evaluate to zero; such terms survive until [`ExactWeylElement::to_float`].

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{WeylAlgebra, WeylElement};
use crate::error::{Error, Result};
use crate::presymplectic::{GroupElement, PresymplecticGroup};

pub type GaussianRational = Complex<BigRational>;

/// Integer coefficients of the `q`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(q: u32) -> Vec<i64> {
    assert!(q >= 1, "cyclotomic polynomial of order 0");
    // x^q − 1 = Π_{d | q} Φ_d(x)
    let mut num = vec![0i64; q as usize + 1];
    num[0] = -1;
    num[q as usize] = 1;
    for d in (1..q).filter(|d| q.is_multiple_of(*d)) {
        num = divide_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

/// Exact quotient of `num` by the monic `den`; the remainder must vanish.
fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// An element of `Q(i)[x]/Φ_q(x)`, stored as its reduced coefficient vector.
#[derive(Clone, PartialEq, Debug)]
pub struct Cyclotomic {
    coeffs: Vec<GaussianRational>,
}

/// Arithmetic context for one order `q`.
#[derive(Clone, Debug)]
pub struct CyclotomicRing {
    order: u32,
    modulus: Vec<i64>,
}

impl CyclotomicRing {
    pub fn new(order: u32) -> Self {
        CyclotomicRing {
            order,
            modulus: cyclotomic_polynomial(order),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn zero(&self) -> Cyclotomic {
        Cyclotomic {
            coeffs: vec![GaussianRational::zero(); self.degree()],
        }
    }

    pub fn constant(&self, c: GaussianRational) -> Cyclotomic {
        self.reduce(vec![c])
    }

    /// `x^k` for any integer `k`.
    pub fn root_power(&self, k: i64) -> Cyclotomic {
        let k = k.rem_euclid(self.order as i64) as usize;
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = one();
        self.reduce(coeffs)
    }

    fn reduce(&self, mut coeffs: Vec<GaussianRational>) -> Cyclotomic {
        let deg = self.degree();
        for i in (deg..coeffs.len()).rev() {
            let lead = std::mem::take(&mut coeffs[i]);
            if lead.is_zero() {
                continue;
            }
            for (j, &m) in self.modulus[..deg].iter().enumerate() {
                if m != 0 {
                    let scaled = lead.clone() * integer(m);
                    coeffs[i - deg + j] = coeffs[i - deg + j].clone() - scaled;
                }
            }
        }
        coeffs.resize(deg, GaussianRational::zero());
        Cyclotomic { coeffs }
    }

    pub fn add(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        Cyclotomic {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x.clone() + y.clone())
                .collect(),
        }
    }

    pub fn mul(&self, a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut prod = vec![GaussianRational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] = prod[i + j].clone() + x.clone() * y.clone();
                }
            }
        }
        self.reduce(prod)
    }

    /// Value at `x = e^{−2πi/q}`.
    pub fn evaluate(&self, a: &Cyclotomic) -> Complex64 {
        a.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let root = Complex64::from_polar(1.0, -TAU * k as f64 / self.order as f64);
                Complex64::new(to_f64(&c.re), to_f64(&c.im)) * root
            })
            .sum()
    }
}

impl Cyclotomic {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

fn integer(m: i64) -> GaussianRational {
    Complex::new(BigRational::from_integer(BigInt::from(m)), BigRational::zero())
}

fn one() -> GaussianRational {
    integer(1)
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Builds the Gaussian rational `(a/b) + i (c/d)`.
pub fn gaussian_rational(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
    Complex::new(
        BigRational::new(re.0.into(), re.1.into()),
        BigRational::new(im.0.into(), im.1.into()),
    )
}

/// The Weyl algebra at `ℏ = 2π p/q` with exact coefficients.
#[derive(Clone, Debug)]
pub struct ExactWeylAlgebra {
    group: PresymplecticGroup,
    numerator: i64,
    ring: CyclotomicRing,
}

impl ExactWeylAlgebra {
    /// `ℏ = 2π · numerator/denominator`; the fraction is reduced first.
    pub fn new(group: PresymplecticGroup, numerator: i64, denominator: i64) -> Result<Arc<Self>> {
        if denominator <= 0 {
            return Err(Error::Malformed(format!(
                "denominator must be positive, got {denominator}"
            )));
        }
        let g = numerator.gcd(&denominator);
        let order = u32::try_from(denominator / g)
            .map_err(|_| Error::Malformed("denominator too large".into()))?;
        Ok(Arc::new(ExactWeylAlgebra {
            group,
            numerator: numerator / g,
            ring: CyclotomicRing::new(order),
        }))
    }

    pub fn group(&self) -> &PresymplecticGroup {
        &self.group
    }

    pub fn ring(&self) -> &CyclotomicRing {
        &self.ring
    }

    pub fn hbar(&self) -> f64 {
        TAU * self.numerator as f64 / self.ring.order() as f64
    }

    /// `e^{−iℏ k} = ζ^{p k}`.
    fn phase(&self, pairing: i64) -> Cyclotomic {
        self.ring.root_power(self.numerator * pairing)
    }

    /// The floating-point algebra at the same `ℏ`.
    pub fn float_algebra(&self) -> Result<Arc<WeylAlgebra>> {
        WeylAlgebra::with_boundary_override(self.group.clone(), self.hbar())
    }
}

#[derive(Clone, Debug)]
pub struct ExactWeylElement {
    algebra: Arc<ExactWeylAlgebra>,
    terms: BTreeMap<GroupElement, Cyclotomic>,
}

impl ExactWeylElement {
    pub fn from_terms(
        algebra: &Arc<ExactWeylAlgebra>,
        terms: impl IntoIterator<Item = (GroupElement, GaussianRational)>,
    ) -> Result<Self> {
        let ring = algebra.ring();
        let mut map: BTreeMap<GroupElement, Cyclotomic> = BTreeMap::new();
        for (u, c) in terms {
            algebra.group().check_member(&u)?;
            let c = ring.constant(c);
            let slot = map.entry(u).or_insert_with(|| ring.zero());
            *slot = ring.add(slot, &c);
        }
        map.retain(|_, c| !c.is_zero());
        Ok(ExactWeylElement {
            algebra: Arc::clone(algebra),
            terms: map,
        })
    }

    pub fn terms(&self) -> &BTreeMap<GroupElement, Cyclotomic> {
        &self.terms
    }

    pub fn mul(&self, other: &ExactWeylElement) -> Result<ExactWeylElement> {
        if !Arc::ptr_eq(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let alg = &self.algebra;
        let ring = alg.ring();
        let mut terms: BTreeMap<GroupElement, Cyclotomic> = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let phase = alg.phase(alg.group().pair_unchecked(u, v));
                let c = ring.mul(&ring.mul(a, b), &phase);
                let slot = terms.entry(u + v).or_insert_with(|| ring.zero());
                *slot = ring.add(slot, &c);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(ExactWeylElement {
            algebra: Arc::clone(alg),
            terms,
        })
    }

    /// Evaluates every coefficient at `ζ`.
    pub fn to_float(&self, algebra: &Arc<WeylAlgebra>) -> Result<WeylElement> {
        if algebra.group() != self.algebra.group() {
            return Err(Error::AlgebraMismatch);
        }
        let ring = self.algebra.ring();
        WeylElement::from_terms(
            algebra,
            self.terms.iter().map(|(u, c)| (u.clone(), ring.evaluate(c))),
        )
    }
}
