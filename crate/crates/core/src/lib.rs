//! Matroids and two combinatorial Hopf algebras on their isomorphism classes.
//!
//! The restriction-contraction coproduct `Σ_A M|A ⊗ M/A` and the
//! restriction-deletion coproduct `Σ_A M|A ⊗ M\A` are computed exactly over
//! canonical isomorphism classes, together with the antipode of the
//! restriction-deletion Hopf algebra, the dendriform splittings of both
//! reduced coproducts, and the polynomial `P_M` obtained from convolution
//! exponentials of the loop and coloop infinitesimal characters.

pub mod algebra;
pub mod canonical;
pub mod catalog;
pub mod characters;
pub mod dendriform;
pub mod error;
pub mod expr;
pub mod hopf;
pub mod io;
pub mod matroid;
pub mod poly;
pub mod verify;

pub use algebra::{ModuleElement, Monomial, TensorElement};
pub use canonical::{canonical_key, is_isomorphic, IsoKey};
pub use error::{Axiom, Error, Result};
pub use hopf::CoproductMode;
pub use matroid::{Matroid, SubsetMask};
pub use poly::{Polynomial, Substitution};
