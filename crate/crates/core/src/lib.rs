//! Finite multi-relational Kripke frames, neighborhood frames and complete
//! atomic modal algebras.
//!
//! Objects are small and explicit: worlds and atoms are labelled index sets,
//! subsets are bit masks, and every algebra carries its full box table. The
//! crate provides the structural validators for each kind of object, the
//! homomorphism checkers, the functors between the three categories, and the
//! natural maps that witness the dualities, each checked by brute force.
//!
//! ```
//! use modal_duality::{fixtures, functor, model::{validate_algebra, Kappa}};
//!
//! let fork = fixtures::fx4_fork();
//! let a = functor::functor_g_obj(&fork).unwrap();
//! let class = validate_algebra(&a, Kappa::All);
//! assert!(class.monotone && !class.binary_additive);
//! assert_eq!(class.additive_witness, Some((0b010, 0b100)));
//! ```

pub mod bits;
pub mod duality;
pub mod error;
pub mod fixtures;
pub mod functor;
pub mod generate;
pub mod model;
pub mod morphism;
pub mod order;

pub use error::{Error, Result};

/// Largest atom base of a [`model::BoxAlgebra`].
pub const MAX_ATOMS: usize = 5;
/// Largest world set.
pub const MAX_WORLDS: usize = 6;
/// Largest relation set of a [`model::MRFrame`] after deduplication.
pub const MAX_RELATIONS: usize = 8192;
/// Largest number of selectors the `H` construction will enumerate.
pub const MAX_SELECTORS: usize = 4096;
