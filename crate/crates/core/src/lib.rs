//! Abelian Chern-Simons theory on oriented surfaces, encoded as data.
//!
//! The crate assigns to each surface of a small catalog its compactly
//! supported first cohomology with the integer intersection pairing
//! ([`presymplectic`], [`surfaces`]), quantizes it to the *-algebra of finite
//! Weyl sums ([`weyl`]), and analyses states on those algebras ([`states`],
//! [`action`]). The [`nogo`] module chains these pieces into a replayable
//! certificate showing that no family of states can be compatible with every
//! embedding of the catalog.

pub mod action;
pub mod error;
pub mod matrix;
pub mod nogo;
pub mod presymplectic;
pub mod states;
pub mod surfaces;
pub mod tolerance;
pub mod weyl;

pub use error::{Error, Result};
pub use matrix::IntMatrix;
pub use presymplectic::{GroupElement, GroupHom, PresymplecticGroup};
pub use tolerance::Tolerances;
