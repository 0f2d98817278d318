//! Finite monoids, finite S-acts and the tensor-product machinery used to
//! decide flatness-related interpolation conditions.
//!
//! Everything here is pure and allocation-only: no IO, no threads. The `actalab`
//! crate layers JSON formats, reports and the command line on top.
//!
//! Elements are addressed by index internally. Monoid elements are `usize`
//! indices into [`FiniteMonoid`]'s element list; act elements are indices into
//! an [`Act`]'s carrier.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod act;
pub mod axioms;
pub mod conditions;
pub mod congruence;
pub mod enumerate;
pub mod error;
pub mod flatness;
pub mod generation;
pub mod monoid;
pub mod replacement;
pub mod standard;
pub mod tensor;
pub mod unionfind;
pub mod zoo;

pub use act::{Act, Side};
pub use congruence::{ActCongruence, ActMorphism};
pub use error::{ActError, MonoidError, TensorError};
pub use generation::Generators;
pub use monoid::{FiniteMonoid, PairSubact, RightIdeal};
pub use tensor::{Skeleton, TensorProduct, Tossing};
