//! Classification of prism manifolds realizable by positive integer surgery
//! on knots, through changemaker-lattice embeddings.
//!
//! A prism manifold `P(p,q)` (coprime `p > 1`, here `q < 0`) bounds a
//! positive definite D-type lattice `Δ(p,q)` determined by a negative
//! continued fraction of `−q/p`. `P(p,q)` can arise from positive integer
//! surgery only if `Δ(p,q)` is isomorphic to the orthogonal complement of a
//! changemaker vector in `Z^{n+4}`; this crate decides that embedding
//! condition by exhaustive search, reproduces the closed-form membership
//! tables it is known to match, computes the Alexander polynomial any
//! realizing knot must have, and evaluates the surface-slope arithmetic of
//! the primitive/Seifert-fibered knot families that realize every listed
//! manifold.

pub mod alexander;
pub mod bergekang;
pub mod changemaker;
pub mod classify;
pub mod contfrac;
pub mod dtype;
pub mod embed;
pub mod error;
pub mod families;
pub mod lattice;
pub mod scan;
pub mod tables;

pub use changemaker::{enum_changemakers, is_changemaker, standard_basis, Changemaker};
pub use dtype::{dtype_from_pq, pq_from_norms, DTypeLattice, PrismParams};
pub use embed::{embed_dtype, find_vertex_basis, realizable, Embedding, SearchMode};
pub use error::{Error, Result};
