//! Computing with finite semigroups equipped with apartness relations.
//!
//! The crate provides a dense packed relation algebra (unions, composition,
//! the filled product, closures), the kernel operators that carve the
//! greatest cotransitive / coequivalence / co-congruence subrelation out of
//! a relation, validated semigroups-with-apartness with quotients and Rees
//! factors, free-semigroup word machinery, and both the classical and the
//! apartness-based ("co-") Green's relations. Every structural theorem the
//! library relies on is cross-checked against brute-force oracles in the
//! test and acceptance suites.
//!
//! ```
//! use sgap_core::document::generate_family;
//! use sgap_core::green::green_relations;
//! use sgap_core::kernels::cotransitive_kernel;
//! use sgap_core::relations::FiniteRelation;
//!
//! let z4 = generate_family("cyclic:4").unwrap().to_semigroup().unwrap();
//! let green = green_relations(&z4);
//! assert_eq!(green.d, FiniteRelation::full(4)); // a group is one D-class
//!
//! let chain = FiniteRelation::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
//! let kernel = cotransitive_kernel(&chain);
//! assert!(kernel.kernel.is_empty()); // no cotransitive core
//! assert_eq!(kernel.fixpoint_step, 2);
//! ```

pub mod corpus;
pub mod document;
pub mod error;
pub mod free;
pub mod green;
pub mod kernels;
pub mod relations;
pub mod semigroup;
pub mod suites;

pub use error::{Error, Result};
pub use relations::{FiniteRelation, FiniteSetoid, FiniteSubset, RelationReport};
pub use semigroup::{Morphism, SemigroupWithApartness};
