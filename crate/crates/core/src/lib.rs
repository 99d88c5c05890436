//! Exact symbolic computation on planar rooted trees and their relatives.
//!
//! The crate implements, over exact rational coefficients:
//!
//! - canonical planar rooted trees with post-order convex subtrees and
//!   partitions ([`tree`]);
//! - the coproduct, hash/star products, antipode and dual structure on
//!   unlabelled and labelled trees ([`hopf`]);
//! - standardized structures on n-trees with the increasing and sorted
//!   subfamilies ([`labelled`]);
//! - the projection onto primitives and dimension series ([`primitives`]);
//! - treed/Stirling permutation words, the Euler-tour bijection and the
//!   shifted-shuffle algebra of permutations ([`words`]);
//! - planar binary trees, the over/under products and the planar↔binary
//!   correspondence ([`binary`]);
//! - runnable verification suites over all of the above ([`verify`]).
//!
//! All values are immutable and all operations pure; every enumeration and
//! combination iterates in a canonical deterministic order.
//!
//! ```
//! use planar_hopf::hopf;
//! use planar_hopf::tree::PlanarTree;
//!
//! let single = PlanarTree::parse("(())").unwrap();
//! let product = hopf::product(&single, &single);
//! assert_eq!(product.to_string(), "1*tree:((())) + 1*tree:(()())");
//! ```

pub mod binary;
pub mod combinat;
pub mod hopf;
pub mod labelled;
pub mod linalg;
pub mod primitives;
pub mod tree;
pub mod verify;
pub mod words;

pub use linalg::{Coeff, Combination};
pub use tree::PlanarTree;
