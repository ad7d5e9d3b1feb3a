//! Property tests for Galois groups of rational polynomials.
//!
//! The crate decides whether `Gal(f)` is nilpotent, whether it lies in the
//! class Γ_d (every nonabelian composition factor embeds in S_d), and which
//! primes divide its order. The deciding algorithms work with the tower of
//! fixed fields of a chain of blocks inside Q(α) and never build the Galois
//! group; an independent splitting-field oracle builds the group explicitly
//! so both routes can be compared.

pub mod blocktower;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod galois_oracle;
mod modular;
pub mod numfield;
pub mod permgroup;
pub mod props;
pub mod report;

pub use error::{Error, Result};
