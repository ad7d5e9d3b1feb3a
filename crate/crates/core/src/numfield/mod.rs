//! Number fields Q(η) = Q[x]/(μ) with μ monic, integral and irreducible.

mod factor;
mod field;
mod linalg;
mod poly;
mod primitive;
mod subfield;
mod tower;

pub(crate) use factor::achievable;
pub use factor::{factor_over_k, roots_in};
pub use field::{nf_arith, FieldRef, NFElt, NfOp, NumberField};
pub(crate) use linalg::rank;
pub use poly::NFPoly;
pub use primitive::{compositum, is_primitive, minimal_poly, Compositum};
pub use subfield::{is_normal_extension, min_poly_over_subfield, Subfield, SubfieldJson};
