//! Exact arithmetic over Q and Q[x].

mod factor;
pub(crate) mod fp;
mod gcd;
mod parse;
mod poly;
pub(crate) mod zpoly;

pub(crate) use factor::factor_squarefree;
pub use factor::{factor_over_q, is_irreducible, RECOMBINATION_CAP};
pub use gcd::{poly_gcd, poly_lcm, squarefree_decomposition, squarefree_part};
pub use parse::{parse_coeffs, parse_poly, parse_rational};
pub use poly::{rat, ratio, QPoly, Rat};
pub use zpoly::ZPoly;

/// Polynomial ring operations selectable at runtime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivRem,
}

/// Result of [`poly_arith`]: a single polynomial, or quotient and remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyArith {
    Single(QPoly),
    QuotRem(QPoly, QPoly),
}

pub fn poly_arith(a: &QPoly, b: &QPoly, op: PolyOp) -> crate::Result<PolyArith> {
    Ok(match op {
        PolyOp::Add => PolyArith::Single(a + b),
        PolyOp::Sub => PolyArith::Single(a - b),
        PolyOp::Mul => PolyArith::Single(a * b),
        PolyOp::DivRem => {
            let (q, r) = a.divrem(b)?;
            PolyArith::QuotRem(q, r)
        }
    })
}
