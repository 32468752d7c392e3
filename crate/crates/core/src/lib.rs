//! Exact ℓ¹-seminorms of simplicial homology classes.
//!
//! The crate computes `‖α‖₁ = inf { ‖c‖₁ : [c] = α }` for classes on finite
//! simplicial complexes by exact rational linear programming, and returns with
//! each value a bounded cocycle `φ` with `⟨φ, α⟩ = 1` and `1/‖φ‖∞ = ‖α‖₁` that
//! can be re-checked without the solver. Alongside it models finitely supported
//! measure chains (total variation, pushforward, integration pairing) and
//! sections of simplicial covering maps.
//!
//! Everything is exact: there is no floating point in any computation.
//!
//! ```
//! use l1hom::{corpus, homology::{fundamental_cycle, HomologyClass}, seminorm};
//!
//! let sphere = corpus::tetrahedron_boundary();
//! let class = HomologyClass::new(&sphere, fundamental_cycle(&sphere).unwrap()).unwrap();
//! let (value, _) = seminorm::l1_seminorm(&class).unwrap();
//! assert_eq!(l1hom::rational::to_string(&value), "4/1");
//! ```

pub mod cli;
pub mod complex;
pub mod corpus;
pub mod covering;
pub mod homology;
pub mod json;
pub mod linalg;
pub mod lp;
pub mod measure;
pub mod random;
pub mod rational;
pub mod seminorm;
pub mod subdivision;

pub use complex::{boundary, l1_norm, Chain, ComplexError, Simplex, SimplicialComplex, SimplicialMap};
pub use homology::HomologyClass;
pub use rational::Rational;
