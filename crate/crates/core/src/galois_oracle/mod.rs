//! Splitting fields by iterated root adjunction and their Galois groups as
//! permutation groups on the roots.

mod automorphism;
mod splitting;

pub use automorphism::{apply_automorphism, automorphism_image, fixed_field_degree, galois_group};
pub use splitting::{
    splitting_field, splitting_field_over_q, PrimitiveForm, RootExpr, SplittingFieldData,
};

use crate::error::Result;
use crate::exact::QPoly;
use crate::permgroup::PermGroup;

/// Gal(f) over Q for squarefree-reduced f, within a degree budget.
pub fn galois_group_of(f: &QPoly, budget: u64) -> Result<(SplittingFieldData, PermGroup)> {
    let s = splitting_field_over_q(f, budget)?;
    let g = galois_group(&s, &s.poly)?;
    Ok((s, g))
}
