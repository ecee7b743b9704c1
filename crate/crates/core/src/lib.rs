//! Exact intersection theory on products of projective spaces, applied to
//! complete-intersection K3 surfaces of every genus.
//!
//! The modules build on one another:
//!
//! * [`chow_ring`]: the truncated polynomial ring `A(P)` with rational coefficients.
//! * [`char_classes`]: Chern classes, Chern characters and the ambient Todd class.
//! * [`riemann_roch`]: Euler characteristics by three independent routes.
//! * [`k3_families`]: K3 checks, pairings, genus, moduli counts and certificates.
//! * [`cli`]: the `k3chow` command-line front end and its renderers.

pub mod char_classes;
pub mod chow_ring;
pub mod cli;
pub mod error;
pub mod k3_families;
pub mod render;
pub mod riemann_roch;

pub use char_classes::{Multidegree, SplitBundle};
pub use chow_ring::{AmbientSpace, ChowClass, ExponentVector};
pub use error::{Error, Result};
pub use k3_families::{Certificate, FamilySpec, RestrictedPairing, VerificationReport};
pub use riemann_roch::CompleteIntersection;
