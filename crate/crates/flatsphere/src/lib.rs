//! Exact-arithmetic oriented matroids, weak-map posets, and flattening
//! spaces of simplicial spheres.
//!
//! The crate models vector configurations combinatorially as chirotopes,
//! orders them by weak maps, and certifies structural facts about the posets
//! of oriented matroid flattenings of small spheres: singleton posets, unique
//! minima, homology-trivial order complexes, duality, and closure witnesses
//! between strata. All geometry is exact rational arithmetic; nothing is
//! floating point.
//!
//! Start with the guide (`book/`, mirrored as doc-tested chapters in
//! [`guide`]) or the `flatsphere` CLI.

pub mod chirotope;
pub mod duality;
pub mod flat_poset;
pub mod flattening;
pub mod homology;
pub mod linalg;
pub mod poset;
pub mod report;
pub mod run;
pub mod sign;
pub mod sphere;
pub mod witness;

pub use chirotope::{Chirotope, ChirotopeError, OrientedMatroid, SignedCircuit};
pub use flat_poset::{enumerate_p, enumerate_rank2_oms, is_om_flattening, FlatteningPoset};
pub use flattening::{sample_flattenings, Flattening};
pub use homology::{HomologyResult, SimplicialComplex};
pub use poset::{weak_leq, FinitePoset};
pub use sign::{permutation_sign, sign_leq, BasisIndexer, Sign};
pub use sphere::{SimplicialSphere, SphereSpec};
