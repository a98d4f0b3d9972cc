//! The symplectic group acting on Weyl algebras, SL(2, Z) orbits on the
//! torus lattice, and invariance of states under that action.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::presymplectic::{GroupElement, GroupHom, PresymplecticGroup};
use crate::states::{ClosureRule, GaussianForm, State, StateKind};
use crate::tolerance::Tolerances;
use crate::weyl::{WeylAlgebra, WeylElement};

/// Entry bound beyond which word enumeration drops a matrix.
pub const WORD_ENTRY_BOUND: i64 = 1_000_000;

/// An integer matrix `T` with `Tᵀ τ T = τ` and `det T = ±1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticElement {
    group: PresymplecticGroup,
    matrix: IntMatrix,
}

impl SymplecticElement {
    pub fn new(group: &PresymplecticGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != group.rank() || !matrix.is_square() {
            return Err(Error::Malformed(format!(
                "symplectic matrix must be {0}x{0}",
                group.rank()
            )));
        }
        // reuse the pairing check and its error reporting
        GroupHom::new(group.clone(), group.clone(), matrix.clone())?;
        let det = matrix.det()?;
        if det.abs() != 1 {
            return Err(Error::NotUnimodular { det });
        }
        Ok(SymplecticElement {
            group: group.clone(),
            matrix,
        })
    }

    pub fn identity(group: &PresymplecticGroup) -> Self {
        SymplecticElement {
            group: group.clone(),
            matrix: IntMatrix::identity(group.rank()),
        }
    }

    pub fn group(&self) -> &PresymplecticGroup {
        &self.group
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, u: &GroupElement) -> Result<GroupElement> {
        self.group.check_member(u)?;
        Ok(GroupElement::new(self.matrix.mul_vec(u.coords())?))
    }

    /// `self · other`.
    pub fn compose(&self, other: &SymplecticElement) -> Result<SymplecticElement> {
        if self.group != other.group {
            return Err(Error::AlgebraMismatch);
        }
        Ok(SymplecticElement {
            group: self.group.clone(),
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    pub fn to_hom(&self) -> GroupHom {
        GroupHom::new(self.group.clone(), self.group.clone(), self.matrix.clone())
            .expect("symplectic elements preserve the pairing")
    }
}

pub fn torus_group() -> PresymplecticGroup {
    PresymplecticGroup::standard_symplectic(1, 0)
}

/// `S = [[0, −1], [1, 0]]`.
pub fn generator_s() -> SymplecticElement {
    SymplecticElement {
        group: torus_group(),
        matrix: IntMatrix::from_2x2([[0, -1], [1, 0]]),
    }
}

/// `T = [[1, 1], [0, 1]]`.
pub fn generator_t() -> SymplecticElement {
    SymplecticElement {
        group: torus_group(),
        matrix: IntMatrix::from_2x2([[1, 1], [0, 1]]),
    }
}

/// `κ_T`: relabels every term `W_u` as `W_{T u}`.
pub fn act(t: &SymplecticElement, a: &WeylElement) -> Result<WeylElement> {
    if a.algebra().group() != &t.group {
        return Err(Error::AlgebraMismatch);
    }
    let algebra: Arc<WeylAlgebra> = Arc::clone(a.algebra());
    a.map_keys(&algebra, |u| t.apply(u))
}

/// Result of an orbit query: `realizing · representative = vector`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitMembership {
    pub vector: GroupElement,
    pub member: bool,
    pub representative: GroupElement,
    pub realizing_matrix: IntMatrix,
}

fn require_rank_two(v: &GroupElement) -> Result<(i64, i64)> {
    match v.coords() {
        &[a, b] => Ok((a, b)),
        other => Err(Error::UnsupportedRank(other.len())),
    }
}

/// `(gcd(|a|, |b|), 0)` for `v = (a, b)`.
pub fn orbit_representative(v: &GroupElement) -> Result<GroupElement> {
    let (a, b) = require_rank_two(v)?;
    Ok(GroupElement::new(vec![a.gcd(&b), 0]))
}

/// Decides whether `v` lies in the SL(2, Z)-orbit of `Z × 0` and produces a
/// certificate. Every vector does: `v = d·(x, y)` with `d = gcd` and `(x, y)`
/// primitive, and the extended Euclidean algorithm completes `(x, y)` to a
/// unimodular matrix `[[x, −t], [y, s]]`. Among the solutions `t` is chosen
/// of least absolute value, preferring `t ≥ 0` on ties.
pub fn orbit_member(v: &GroupElement) -> Result<OrbitMembership> {
    let (a, b) = require_rank_two(v)?;
    let d = a.gcd(&b);
    if d == 0 {
        return Ok(OrbitMembership {
            vector: v.clone(),
            member: true,
            representative: GroupElement::new(vec![0, 0]),
            realizing_matrix: IntMatrix::identity(2),
        });
    }
    let (x, y) = (a / d, b / d);
    let (s, t) = if x == 0 {
        // y = ±1
        (0, y)
    } else {
        let egcd = x.extended_gcd(&y);
        debug_assert_eq!(egcd.gcd, 1);
        let m = x.abs();
        let mut t = egcd.y.rem_euclid(m);
        if 2 * t > m {
            t -= m;
        }
        ((1 - y * t) / x, t)
    };
    let realizing = IntMatrix::from_2x2([[x, -t], [y, s]]);
    debug_assert_eq!(realizing.det().ok(), Some(1));
    Ok(OrbitMembership {
        vector: v.clone(),
        member: true,
        representative: GroupElement::new(vec![d, 0]),
        realizing_matrix: realizing,
    })
}

/// Extends a partial torus state to every vector whose gcd class is listed.
///
/// All listed vectors sharing a class must agree (within the comparison
/// tolerance); each class's value is also stored at its representative
/// `(d, 0)`.
pub fn close_under_orbit(s: &State) -> Result<State> {
    let StateKind::Partial { table, .. } = s.kind() else {
        return Err(Error::Precondition("orbit closure needs a partial state".into()));
    };
    if s.algebra().group() != &torus_group() {
        return Err(Error::UnsupportedRank(s.algebra().rank()));
    }
    let tol = Tolerances::DEFAULT.compare;
    let mut classes: BTreeMap<GroupElement, (GroupElement, num_complex::Complex64)> =
        BTreeMap::new();
    for (u, value) in table {
        let rep = orbit_representative(u)?;
        match classes.get(&rep) {
            Some((first, first_value)) if (first_value - value).norm() > tol => {
                return Err(Error::Inconsistent {
                    first: first.clone(),
                    first_value: first_value.to_string(),
                    second: u.clone(),
                    second_value: value.to_string(),
                });
            }
            Some(_) => {}
            None => {
                classes.insert(rep, (u.clone(), *value));
            }
        }
    }
    let mut closed = table.clone();
    for (rep, (_, value)) in classes {
        closed.entry(rep).or_insert(value);
    }
    Ok(State::with_kind(
        s.algebra(),
        StateKind::Partial {
            table: closed,
            rule: ClosureRule::GcdOrbit,
        },
    ))
}

/// A vector `u` and generator index with `ω(W_{T u}) ≠ ω(W_u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub generator: usize,
    pub vector: GroupElement,
    pub value: num_complex::Complex64,
    pub image_value: num_complex::Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceOutcome {
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl InvarianceOutcome {
    pub fn is_invariant(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Every vector with `max |u_i| ≤ radius`, shell by shell outward; within a
/// shell, coordinates compare as `0 < 1 < −1 < 2 < −2 < …`.
pub fn box_vectors(rank: usize, radius: i64) -> Vec<GroupElement> {
    let side: Vec<i64> = (-radius..=radius).collect();
    let mut all: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..rank {
        all = all
            .into_iter()
            .flat_map(|prefix| {
                side.iter().map(move |&x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    let zigzag = |x: i64| 2 * x.abs() - i64::from(x > 0);
    all.sort_by_key(|v| {
        let shell = v.iter().map(|x| x.abs()).max().unwrap_or(0);
        (shell, v.iter().map(|&x| zigzag(x)).collect::<Vec<_>>())
    });
    all.into_iter().map(GroupElement::new).collect()
}

/// Checks `ω(W_{T u}) = ω(W_u)` for each generator and every `u` in the box
/// of the given radius, stopping at the first failure.
pub fn invariance_check(
    s: &State,
    generators: &[SymplecticElement],
    radius: i64,
) -> Result<InvarianceOutcome> {
    let group = s.algebra().group();
    if generators.iter().any(|t| t.group() != group) {
        return Err(Error::AlgebraMismatch);
    }
    let tol = Tolerances::DEFAULT.compare;
    let mut checked = 0;
    for u in box_vectors(group.rank(), radius) {
        let value = s.value(&u)?;
        for (k, t) in generators.iter().enumerate() {
            let image_value = s.value(&t.apply(&u)?)?;
            checked += 1;
            if (image_value - value).norm() > tol {
                return Ok(InvarianceOutcome {
                    checked,
                    counterexample: Some(Counterexample {
                        generator: k,
                        vector: u,
                        value,
                        image_value,
                    }),
                });
            }
        }
    }
    Ok(InvarianceOutcome {
        checked,
        counterexample: None,
    })
}

/// A word in the generators together with its matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub letters: String,
    pub matrix: IntMatrix,
}

/// Distinct matrices reachable by words of length `≤ max_len` in `S` and
/// `T`, in length-lexicographic order (`S < T`). Each matrix is kept with
/// the first word that reaches it; matrices with an entry above
/// [`WORD_ENTRY_BOUND`] are dropped.
pub fn enumerate_words(max_len: usize) -> Vec<Word> {
    let letters = [('S', generator_s().matrix), ('T', generator_t().matrix)];
    let identity = IntMatrix::identity(2);
    let mut seen: HashSet<IntMatrix> = HashSet::from([identity.clone()]);
    let mut out = vec![Word {
        letters: String::new(),
        matrix: identity,
    }];
    let mut frontier_start = 0;
    for _ in 0..max_len {
        let frontier_end = out.len();
        for idx in frontier_start..frontier_end {
            for (name, letter) in &letters {
                let matrix = out[idx].matrix.mul(letter).expect("2x2 product");
                if matrix.max_abs_entry() > WORD_ENTRY_BOUND || !seen.insert(matrix.clone()) {
                    continue;
                }
                let mut word = out[idx].letters.clone();
                word.push(*name);
                out.push(Word {
                    letters: word,
                    matrix,
                });
            }
        }
        frontier_start = frontier_end;
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaussianWitness {
    pub word: Word,
    pub vector: GroupElement,
    /// `μ(u, u)`.
    pub form_at_vector: f64,
    /// `μ(W u, W u)`.
    pub form_at_image: f64,
}

/// Searches for `(W, u)` with `μ(W u, W u) ≠ μ(u, u)`, i.e. a symplectic
/// word that is not orthogonal for `μ`. Probes `u ∈ {(1,0), (0,1), (1,1)}`,
/// which suffices because a symmetric form vanishing on all three is zero.
pub fn gaussian_witness(form: &GaussianForm, max_len: usize) -> Result<Option<GaussianWitness>> {
    if form.rank() != 2 {
        return Err(Error::UnsupportedRank(form.rank()));
    }
    match form.min_eigenvalue() {
        Some(min) if min > Tolerances::DEFAULT.psd => {}
        _ => {
            return Err(Error::Precondition(
                "gaussian form must be positive definite".into(),
            ))
        }
    }
    let probes: [GroupElement; 3] = [[1, 0].into(), [0, 1].into(), [1, 1].into()];
    let tol = Tolerances::DEFAULT.compare;
    for word in enumerate_words(max_len) {
        if word.letters.is_empty() {
            continue;
        }
        for u in &probes {
            let image = GroupElement::new(word.matrix.mul_vec(u.coords())?);
            let before = form.quadratic(u);
            let after = form.quadratic(&image);
            if (after - before).abs() > tol {
                return Ok(Some(GaussianWitness {
                    word,
                    vector: u.clone(),
                    form_at_vector: before,
                    form_at_image: after,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::Surface;
    use num_complex::Complex64;
    use std::f64::consts::E;

    fn v(x: &[i64]) -> GroupElement {
        GroupElement::new(x.to_vec())
    }

    fn torus(hbar: f64) -> Arc<WeylAlgebra> {
        WeylAlgebra::new(Surface::torus().resolve(), hbar).unwrap()
    }

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn symplectic_validation() {
        let g = torus_group();
        assert!(SymplecticElement::new(&g, IntMatrix::from_2x2([[2, 1], [1, 1]])).is_ok());
        assert!(matches!(
            SymplecticElement::new(&g, IntMatrix::from_2x2([[0, 1], [1, 0]])),
            Err(Error::PairingViolation { .. })
        ));
        // On the degenerate cylinder group every matrix preserves τ = 0.
        let cyl = Surface::cylinder().resolve();
        assert!(SymplecticElement::new(&cyl, IntMatrix::from_rows(&[vec![-1]], 1).unwrap()).is_ok());
        assert_eq!(
            SymplecticElement::new(&cyl, IntMatrix::from_rows(&[vec![2]], 1).unwrap()).unwrap_err(),
            Error::NotUnimodular { det: 2 }
        );
    }

    #[test]
    fn act_examples() {
        let alg = torus(1.0);
        let w01 = WeylElement::symbol(&alg, v(&[0, 1])).unwrap();
        let moved = act(&generator_t(), &w01).unwrap();
        assert_eq!(moved.terms(), WeylElement::symbol(&alg, v(&[1, 1])).unwrap().terms());
        let id = SymplecticElement::identity(&torus_group());
        assert_eq!(act(&id, &w01).unwrap().terms(), w01.terms());
        let cyl = WeylAlgebra::new(Surface::cylinder().resolve(), 1.0).unwrap();
        assert!(act(&generator_t(), &WeylElement::unit(&cyl)).is_err());
    }

    #[test]
    fn orbit_examples() {
        let m = orbit_member(&v(&[1, 1])).unwrap();
        assert!(m.member);
        assert_eq!(m.representative, v(&[1, 0]));
        assert_eq!(m.realizing_matrix, IntMatrix::from_2x2([[1, 0], [1, 1]]));

        let z = orbit_member(&v(&[0, 0])).unwrap();
        assert_eq!(z.representative, v(&[0, 0]));
        assert_eq!(z.realizing_matrix, IntMatrix::identity(2));

        let m = orbit_member(&v(&[4, 6])).unwrap();
        assert_eq!(m.representative, v(&[2, 0]));
        assert_eq!(m.realizing_matrix.mul_vec(&[2, 0]).unwrap(), vec![4, 6]);

        assert_eq!(orbit_member(&v(&[0, 1])).unwrap().realizing_matrix, generator_s().matrix);
        assert_eq!(orbit_member(&v(&[1, 2, 3])).unwrap_err(), Error::UnsupportedRank(3));
    }

    #[test]
    fn realizing_matrices_are_certificates() {
        for a in -12..=12 {
            for b in -12..=12 {
                let m = orbit_member(&v(&[a, b])).unwrap();
                assert_eq!(m.realizing_matrix.det().unwrap(), 1);
                assert_eq!(m.realizing_matrix.mul_vec(m.representative.coords()).unwrap(), vec![a, b]);
            }
        }
    }

    #[test]
    fn closure_examples() {
        let alg = torus(1.0);
        let forced = State::partial(&alg, [(v(&[0, 0]), one()), (v(&[1, 0]), one())]).unwrap();
        let closed = close_under_orbit(&forced).unwrap();
        assert_eq!(closed.value(&v(&[1, 1])).unwrap(), one());
        assert_eq!(closed.value(&v(&[-3, 7])).unwrap(), one());
        assert_eq!(closed.value(&v(&[2, 4])).unwrap_err(), Error::Undetermined(v(&[2, 4])));

        let bare = State::partial(&alg, [(v(&[0, 0]), one())]).unwrap();
        let closed = close_under_orbit(&bare).unwrap();
        assert_eq!(closed.value(&v(&[1, 1])).unwrap_err(), Error::Undetermined(v(&[1, 1])));

        let clash = State::partial(
            &alg,
            [(v(&[0, 0]), one()), (v(&[1, 0]), one()), (v(&[1, 1]), -one())],
        )
        .unwrap();
        match close_under_orbit(&clash).unwrap_err() {
            Error::Inconsistent { first, second, .. } => {
                assert_eq!(first, v(&[1, 0]));
                assert_eq!(second, v(&[1, 1]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn closure_requires_partial_torus_state() {
        assert!(close_under_orbit(&State::delta(&torus(1.0))).is_err());
        let cyl = WeylAlgebra::new(Surface::cylinder().resolve(), 1.0).unwrap();
        let s = State::partial(&cyl, [(v(&[0]), one())]).unwrap();
        assert!(close_under_orbit(&s).is_err());
    }

    #[test]
    fn box_order_starts_with_nonnegative_coordinates() {
        let vs = box_vectors(2, 1);
        assert_eq!(vs.len(), 9);
        assert_eq!(vs[0], v(&[0, 0]));
        assert_eq!(vs[1], v(&[0, 1]));
        assert_eq!(vs[2], v(&[0, -1]));
        assert_eq!(vs[3], v(&[1, 0]));
        assert_eq!(box_vectors(0, 3), vec![v(&[])]);
    }

    #[test]
    fn invariance_examples() {
        let alg = torus(1.0);
        let gens = [generator_s(), generator_t()];
        assert!(invariance_check(&State::delta(&alg), &gens, 10).unwrap().is_invariant());

        let g = State::gaussian(&alg, GaussianForm::identity(2)).unwrap();
        let out = invariance_check(&g, &[generator_t()], 2).unwrap();
        let ce = out.counterexample.unwrap();
        assert_eq!(ce.vector, v(&[0, 1]));
        assert!((ce.value.re - E.recip()).abs() < 1e-15);
        assert!((ce.image_value.re - E.powi(-2)).abs() < 1e-15);

        let table = (0..=10).map(|n| (v(&[n, 0]), one()));
        let ones = close_under_orbit(&State::partial(&alg, table).unwrap()).unwrap();
        assert!(invariance_check(&ones, &gens, 5).unwrap().is_invariant());
    }

    #[test]
    fn word_enumeration_is_length_lex() {
        let words = enumerate_words(2);
        let names: Vec<&str> = words.iter().map(|w| w.letters.as_str()).collect();
        assert_eq!(names, ["", "S", "T", "SS", "ST", "TS", "TT"]);
        assert_eq!(words[4].matrix, IntMatrix::from_2x2([[0, -1], [1, 1]]));
        // S⁴ = 1 is deduplicated at length 4.
        assert!(!enumerate_words(4).iter().any(|w| w.letters == "SSSS"));
    }

    #[test]
    fn gaussian_witness_examples() {
        let w = gaussian_witness(&GaussianForm::identity(2), 2).unwrap().unwrap();
        assert_eq!(w.word.letters, "T");
        assert_eq!(w.word.matrix, generator_t().matrix);
        assert_eq!(w.vector, v(&[0, 1]));
        assert_eq!((w.form_at_vector, w.form_at_image), (1.0, 2.0));

        let diag = GaussianForm::new(&[vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap();
        let w = gaussian_witness(&diag, 2).unwrap().unwrap();
        assert!(w.word.letters.len() <= 2);

        let zero = GaussianForm::new(&[vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(gaussian_witness(&zero, 3), Err(Error::Precondition(_))));
        assert!(matches!(
            gaussian_witness(&GaussianForm::identity(3), 3),
            Err(Error::UnsupportedRank(3))
        ));
    }
}
