//! Computations with finite tensor categories at the Grothendieck level.
//!
//! The data of a category here is its Grothendieck shadow: simple-object
//! labels, the fusion tensor, the duality permutation and the Cartan
//! matrix. On top of that the crate provides
//!
//! - axiom validation and Grothendieck/K₀ arithmetic ([`category`]),
//! - Frobenius–Perron dimensions, the regular element and the
//!   pointed/integral/weakly-integral/fusion predicates ([`fpdim`]),
//! - tensor-subcategory embeddings, product closures and the decision
//!   procedure for exact factorizations `B = A • C` ([`factor`]),
//! - finite groups as Cayley tables with subgroup enumeration and exact
//!   factorizations `G = G₁G₂` ([`groups`]),
//! - integral group cohomology `H⁴(G,Z) ≅ H³(G,Q/Z)` with generator
//!   cocycles, coboundary certificates, restriction maps and the kernel
//!   classification of pointed exact factorizations ([`cohomology`]),
//! - canonical constructors for pointed data, the one-simple local family,
//!   a pointed nonsemisimple family, Deligne products and opposites
//!   ([`builders`]).
//!
//! Everything that decides a yes/no question does so with exact integer or
//! rational arithmetic; floating point only enters for Frobenius–Perron
//! eigenvector data, always with explicit tolerances.

pub mod builders;
pub mod category;
pub mod cohomology;
pub mod factor;
pub mod fpdim;
pub mod groups;
pub mod io;
pub mod linalg;

pub use category::{CategoryData, GrVector, K0Vector, ValidationReport};
pub use cohomology::{CohomologyGroup, IntCochain, QZCochain};
pub use factor::{Embedding, FactorizationVerdict};
pub use fpdim::FpProfile;
pub use groups::{FiniteGroup, Subgroup};
