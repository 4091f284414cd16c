//! Weyl characters of simple Lie algebras from special-root tuples.

#![allow(clippy::needless_range_loop)]

pub mod characters;
pub mod error;
pub mod expr;
pub mod golden;
pub mod integer;
pub mod laurent;
pub mod rootsys;
pub mod specialroots;
pub mod tensor;
pub mod verify;
pub mod weyloracle;

pub use characters::{CharacterResult, Engine};
pub use error::{Error, PolyError, Result};
pub use integer::Integer;
pub use laurent::{LaurentPolynomial, Monomial, Specialization};
pub use rootsys::{CartanDatum, Rational, RootVector, WeightVector};
pub use specialroots::{GammaSystem, GammaTable};
pub use tensor::{tensor_decompose, Decomposition};
